"""Subspaces of F_q^n in canonical form, lattice operations and enumeration.

A :class:`Subspace` is identified by its RREF basis.  When ``q**n`` is small
(at most ``MASK_LIMIT`` vectors) every subspace also carries a point-set
bitmask: bit ``c`` is set iff the vector with base-q code ``c`` lies in the
subspace.  Intersections then reduce to a bitwise AND and a popcount, which is
what makes exhaustive family checks affordable.

Enumeration order for a Grassmannian is fixed: pivot-column sets in colex
order, then the free entries in odometer order (row-major free positions, last
position varying fastest).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import AmbientMismatch, DimensionMismatch, FormatError, PreconditionViolated
from .gf import FieldSpec, field_new
from .linalg import Row, nullspace_rows, rref_rows

MASK_LIMIT = 1 << 16
DIGITS = "0123456789abcdef"


@dataclass(frozen=True)
class Subspace:
    field: FieldSpec
    n: int
    basis: tuple[Row, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient_dim(self) -> int:
        return self.n

    @property
    def q(self) -> int:
        return self.field.q

    def __repr__(self) -> str:
        return f"Subspace(q={self.field.q}, n={self.n}, '{to_text(self)}')"

    def sort_key(self) -> tuple:
        return (self.dim, self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self.sort_key() < other.sort_key()

    @cached_property
    def mask(self) -> int | None:
        """Point-set bitmask, or None when the ambient space is too large."""
        q, n = self.field.q, self.n
        if q**n > MASK_LIMIT:
            return None
        add, mul = self.field.add_table, self.field.mul_table
        pts = {(0,) * n}
        for b in self.basis:
            multiples = [tuple(mul[c][x] for x in b) for c in range(1, q)]
            pts |= {tuple(add[x][y] for x, y in zip(p, m)) for p in pts for m in multiples}
        out = 0
        for p in pts:
            out |= 1 << vector_code(p, q)
        return out


def vector_code(v: Sequence[int], q: int) -> int:
    c = 0
    for x in v:
        c = c * q + x
    return c


def _check_same(a: Subspace, b: Subspace) -> None:
    if a.field != b.field or a.n != b.n:
        raise AmbientMismatch(f"subspaces over F_{a.q}^{a.n} and F_{b.q}^{b.n}")


def span(field: FieldSpec, n: int, vectors: Iterable[Sequence[int]]) -> Subspace:
    vecs = [tuple(v) for v in vectors]
    for v in vecs:
        if len(v) != n:
            raise DimensionMismatch(f"vector {v} is not of length {n}")
    red, _ = rref_rows(field, vecs, n)
    return Subspace(field, n, tuple(tuple(r) for r in red))


def zero_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, ())


def whole_space(field: FieldSpec, n: int) -> Subspace:
    return Subspace(field, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def coordinate_space(field: FieldSpec, n: int, coords: Iterable[int]) -> Subspace:
    """Span of the standard basis vectors e_i for i in ``coords``."""
    return span(field, n, [tuple(int(i == c) for i in range(n)) for c in coords])


def join(a: Subspace, b: Subspace) -> Subspace:
    _check_same(a, b)
    return span(a.field, a.n, a.basis + b.basis)


def join_all(spaces: Iterable[Subspace], field: FieldSpec, n: int) -> Subspace:
    rows: list[Row] = []
    for s in spaces:
        if s.field != field or s.n != n:
            raise AmbientMismatch("join over mixed ambient spaces")
        rows.extend(s.basis)
    return span(field, n, rows)


def meet(a: Subspace, b: Subspace) -> Subspace:
    """Intersection via the Zassenhaus construction.

    Row reduce ``[[A, A], [B, 0]]``; the rows whose left half vanishes carry a
    basis of the intersection in their right half.
    """
    _check_same(a, b)
    n, F = a.n, a.field
    if a.dim == 0 or b.dim == 0:
        return zero_space(F, n)
    rows = [r + r for r in a.basis] + [r + (0,) * n for r in b.basis]
    red, _ = rref_rows(F, rows, 2 * n)
    inter = [r[n:] for r in red if not any(r[:n])]
    return span(F, n, inter)


def meet_all(spaces: Sequence[Subspace]) -> Subspace:
    if not spaces:
        raise ValueError("meet of an empty collection")
    out = spaces[0]
    for s in spaces[1:]:
        if out.dim == 0:
            break
        out = meet(out, s)
    return out


_LOG_CACHE: dict[int, dict[int, int]] = {}


def _log_q(count: int, q: int) -> int:
    table = _LOG_CACHE.setdefault(q, {})
    d = table.get(count)
    if d is None:
        d, c = 0, 1
        while c < count:
            c *= q
            d += 1
        if c != count:
            raise AssertionError(f"{count} is not a power of {q}")
        table[count] = d
    return d


def meet_dim(a: Subspace, b: Subspace) -> int:
    """dim(a ∩ b), through point masks when available."""
    _check_same(a, b)
    ma, mb = a.mask, b.mask
    if ma is not None:
        return _log_q((ma & mb).bit_count(), a.field.q)
    return a.dim + b.dim - join(a, b).dim


def meet_dim_many(spaces: Sequence[Subspace]) -> int:
    """dim of the intersection of all ``spaces``."""
    m = spaces[0].mask
    if m is not None:
        for s in spaces[1:]:
            m &= s.mask
        return _log_q(m.bit_count(), spaces[0].field.q)
    return meet_all(spaces).dim


def contains(a: Subspace, b: Subspace) -> bool:
    """True iff b ⊆ a."""
    _check_same(a, b)
    if b.dim > a.dim:
        return False
    if a.mask is not None:
        return a.mask & b.mask == b.mask
    return join(a, b).dim == a.dim


def contains_vector(a: Subspace, v: Sequence[int]) -> bool:
    if len(v) != a.n:
        raise DimensionMismatch(f"vector of length {len(v)} in F_q^{a.n}")
    return len(rref_rows(a.field, list(a.basis) + [tuple(v)], a.n)[1]) == a.dim


def complement_basis(s: Subspace) -> list[Row]:
    """Standard basis vectors on the non-pivot columns of s (a complement of s)."""
    piv = {next(i for i, x in enumerate(r) if x) for r in s.basis}
    return [tuple(int(i == c) for i in range(s.n)) for c in range(s.n) if c not in piv]


def orthogonal_basis(s: Subspace) -> list[list[int]]:
    """Basis of the annihilator {x : <x, b> = 0 for every basis row b}."""
    if s.dim == 0:
        return [list(r) for r in whole_space(s.field, s.n).basis]
    return nullspace_rows(s.field, s.basis, s.n)


# --- text format -----------------------------------------------------------


def to_text(s: Subspace) -> str:
    """RREF rows as digit strings joined by ';' (digits 0-9a-f); '' for the zero space."""
    return ";".join("".join(DIGITS[x] for x in r) for r in s.basis)


def from_text(field: FieldSpec, text: str, n: int | None = None) -> Subspace:
    """Parse the text format; rows need not be reduced, the result is canonical."""
    text = text.strip()
    if not text:
        if n is None:
            raise FormatError("the zero subspace needs an explicit ambient dimension")
        return zero_space(field, n)
    rows: list[Row] = []
    pos = 0
    for chunk in text.split(";"):
        row = []
        for ch in chunk.strip():
            v = DIGITS.find(ch.lower())
            if v < 0 or v >= field.q:
                raise FormatError(f"invalid digit {ch!r} for F_{field.q}", pos)
            row.append(v)
            pos += 1
        pos += 1
        rows.append(tuple(row))
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise FormatError(f"rows of unequal length in {text!r}")
    if n is not None and width != n:
        raise FormatError(f"expected rows of length {n}, got {width}")
    return span(field, width, rows)


# --- enumeration -----------------------------------------------------------


def colex_combinations(n: int, k: int) -> list[tuple[int, ...]]:
    return sorted(itertools.combinations(range(n), k), key=lambda c: c[::-1])


def enumerate_grassmannian(field: FieldSpec, n: int, k: int) -> Iterator[Subspace]:
    """Every k-subspace of F_q^n exactly once, in the canonical order."""
    if not 0 <= k <= n:
        raise PreconditionViolated(f"need 0 <= k <= n, got k={k}, n={n}")
    q = field.q
    for pivots in colex_combinations(n, k):
        pset = set(pivots)
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pset]
        template = [[0] * n for _ in range(k)]
        for i, p in enumerate(pivots):
            template[i][p] = 1
        for values in itertools.product(range(q), repeat=len(free)):
            for (i, j), v in zip(free, values):
                template[i][j] = v
            yield Subspace(field, n, tuple(tuple(r) for r in template))


def _combine(field: FieldSpec, coeffs: Sequence[int], rows: Sequence[Row], n: int) -> Row:
    add, mul = field.add_table, field.mul_table
    out = [0] * n
    for c, r in zip(coeffs, rows):
        if c:
            mc = mul[c]
            out = [add[o][mc[x]] for o, x in zip(out, r)]
    return tuple(out)


def enumerate_superspaces(s: Subspace, k: int) -> Iterator[Subspace]:
    """All k-subspaces containing s, via the Grassmannian of a complement."""
    if not s.dim <= k <= s.n:
        raise PreconditionViolated(f"need dim S <= k <= n, got dim S={s.dim}, k={k}, n={s.n}")
    comp = complement_basis(s)
    m = len(comp)
    for u in enumerate_grassmannian(s.field, m, k - s.dim):
        lifted = [_combine(s.field, r, comp, s.n) for r in u.basis]
        yield span(s.field, s.n, s.basis + tuple(lifted))


def enumerate_subspaces_of(w: Subspace, j: int) -> Iterator[Subspace]:
    """All j-subspaces of w, as coordinates against w's basis."""
    if not 0 <= j <= w.dim:
        raise PreconditionViolated(f"need 0 <= j <= dim W, got j={j}, dim W={w.dim}")
    for u in enumerate_grassmannian(w.field, w.dim, j):
        yield span(w.field, w.n, [_combine(w.field, r, w.basis, w.n) for r in u.basis])


# --- indexed Grassmannian --------------------------------------------------


class Grassmannian:
    """All k-subspaces of F_q^n, materialized with an index and packed masks.

    ``words`` holds each member's point mask as little-endian uint64 words so
    that meet dimensions against one subspace are a single vectorized pass.
    """

    ADJACENCY_LIMIT = 20000

    def __init__(self, field: FieldSpec, n: int, k: int):
        self.field, self.n, self.k = field, n, k
        self.members: list[Subspace] = list(enumerate_grassmannian(field, n, k))
        self.index: dict[Subspace, int] = {s: i for i, s in enumerate(self.members)}
        q = field.q
        if q**n > MASK_LIMIT:
            raise PreconditionViolated(f"F_{q}^{n} is too large for an indexed Grassmannian")
        nwords = (q**n + 63) // 64
        buf = b"".join(s.mask.to_bytes(nwords * 8, "little") for s in self.members)
        self.words = np.frombuffer(buf, dtype="<u8").reshape(len(self.members), nwords)
        self._powers = np.array([q**d for d in range(n + 1)], dtype=np.int64)
        self._adjacency: dict[int, np.ndarray] = {}

    def __len__(self) -> int:
        return len(self.members)

    def mask_words(self, s: Subspace) -> np.ndarray:
        return np.frombuffer(s.mask.to_bytes(self.words.shape[1] * 8, "little"), dtype="<u8")

    def meet_dims(self, s: Subspace) -> np.ndarray:
        """dim(M ∩ s) for every member M, as an int array in member order."""
        counts = np.bitwise_count(self.words & self.mask_words(s)).sum(axis=1, dtype=np.int64)
        return np.searchsorted(self._powers, counts)

    def at_least(self, s: Subspace, t: int) -> np.ndarray:
        counts = np.bitwise_count(self.words & self.mask_words(s)).sum(axis=1, dtype=np.int64)
        return counts >= self.field.q**t

    def adjacency(self, t: int) -> np.ndarray:
        """Packed rows: bit j of row i set iff dim(M_i ∩ M_j) >= t."""
        if t not in self._adjacency:
            N = len(self.members)
            if N > self.ADJACENCY_LIMIT:
                raise PreconditionViolated(f"{N} members is past the adjacency limit")
            thr = self.field.q**t
            rows = np.empty((N, (N + 7) // 8), dtype=np.uint8)
            # point-incidence Gram matrix; counts stay far below 2^24 so float32 is exact
            inc = np.unpackbits(self.words.view(np.uint8), axis=1, bitorder="little")
            inc = inc[:, : self.field.q**self.n].astype(np.float32)
            step = 1024
            for lo in range(0, N, step):
                hit = inc[lo : lo + step] @ inc.T >= thr - 0.5
                rows[lo : lo + step] = np.packbits(hit, axis=1, bitorder="little")
            self._adjacency[t] = rows
        return self._adjacency[t]

    def indices(self, members: Iterable[Subspace]) -> list[int]:
        return [self.index[m] for m in members]


@lru_cache(maxsize=8)
def grassmannian(q: int, n: int, k: int) -> Grassmannian:
    return Grassmannian(field_new(q), n, k)
