"""Finite fields F_q for prime powers q <= 16.

Elements are encoded as integers ``0 .. q-1``.  For q = p^e the code of
``c_0 + c_1 x + ... + c_{e-1} x^{e-1}`` is ``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``,
so for prime q the code is the residue itself.

Multiplication goes through exp/log tables built from one fixed primitive
polynomial per order (coefficients listed from the constant term up):

    q=2   x + 1            q=3   x + 1           q=4   x^2 + x + 1
    q=5   x + 3            q=7   x + 4           q=8   x^3 + x + 1
    q=9   x^2 + x + 2      q=11  x + 9           q=13  x + 11
    q=16  x^4 + x + 1

For prime q the degree-one polynomial ``x - g`` names the primitive root g
(1, 2, 2, 3, 2, 2 respectively).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DivisionByZero, NotPrimePower, UnsupportedOrder

PRIMITIVE_POLYS: dict[int, tuple[int, ...]] = {
    2: (1, 1),
    3: (1, 1),
    4: (1, 1, 1),
    5: (3, 1),
    7: (4, 1),
    8: (1, 1, 0, 1),
    9: (2, 1, 1),
    11: (9, 1),
    13: (11, 1),
    16: (1, 1, 0, 0, 1),
}

MAX_ORDER = 16


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, e)`` with ``q == p**e`` and p prime, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


@dataclass(frozen=True, eq=False)
class FieldSpec:
    q: int
    p: int
    e: int
    primitive_poly: tuple[int, ...]
    exp_table: tuple[int, ...]
    log_table: tuple[int, ...]  # log_table[0] is unused (-1)
    add_table: tuple[tuple[int, ...], ...]
    mul_table: tuple[tuple[int, ...], ...]
    neg_table: tuple[int, ...]
    inv_table: tuple[int, ...]  # inv_table[0] is unused (0)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.q))

    def __repr__(self) -> str:
        return f"FieldSpec(q={self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add_table[a][self.neg_table[b]]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0 in F_%d" % self.q)
        return self.inv_table[a]

    def exp(self, i: int) -> int:
        return self.exp_table[i % (self.q - 1)]

    def log(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("log of 0 in F_%d" % self.q)
        return self.log_table[a]


def _digits(a: int, p: int, e: int) -> list[int]:
    out = []
    for _ in range(e):
        a, r = divmod(a, p)
        out.append(r)
    return out


def _code(digits: list[int], p: int) -> int:
    return sum(d * p**i for i, d in enumerate(digits))


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldSpec:
    """Build (and cache) the field of order q.

    >>> F = field_new(4)
    >>> F.mul(2, 2)   # a*a = a + 1 for the root a of x^2 + x + 1
    3
    """
    pe = prime_power(q)
    if pe is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_ORDER:
        raise UnsupportedOrder(f"field order {q} exceeds the supported maximum {MAX_ORDER}")
    p, e = pe
    poly = PRIMITIVE_POLYS[q]
    assert len(poly) == e + 1 and poly[-1] == 1

    add_table = tuple(
        tuple(_code([(x + y) % p for x, y in zip(_digits(a, p, e), _digits(b, p, e))], p) for b in range(q))
        for a in range(q)
    )
    neg_table = tuple(_code([(-x) % p for x in _digits(a, p, e)], p) for a in range(q))

    # powers of the root of poly; x^e = -(c_0 + ... + c_{e-1} x^{e-1})
    exp_table: list[int] = []
    cur = [1] + [0] * (e - 1)
    for _ in range(q - 1):
        exp_table.append(_code(cur, p))
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * poly[i]) % p for i, c in enumerate(cur)]
    if sorted(exp_table) != list(range(1, q)):
        raise AssertionError(f"polynomial {poly} is not primitive over F_{p}")
    log_table = [-1] * q
    for i, a in enumerate(exp_table):
        log_table[a] = i

    def _mul(a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return exp_table[(log_table[a] + log_table[b]) % (q - 1)]

    mul_table = tuple(tuple(_mul(a, b) for b in range(q)) for a in range(q))
    inv_table = tuple([0] + [exp_table[(-log_table[a]) % (q - 1)] for a in range(1, q)])

    return FieldSpec(
        q=q,
        p=p,
        e=e,
        primitive_poly=poly,
        exp_table=tuple(exp_table),
        log_table=tuple(log_table),
        add_table=add_table,
        mul_table=mul_table,
        neg_table=neg_table,
        inv_table=inv_table,
    )


SUPPORTED_ORDERS = tuple(sorted(PRIMITIVE_POLYS))
