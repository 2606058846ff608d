"""Exact closed-form quantities: Gaussian binomials and the family-size bounds.

Every value is a Python ``int`` or :class:`fractions.Fraction`; nothing is ever
rounded.  ``q`` may be any integer >= 2 here, prime power or not, so grids can
sweep it freely.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

ExactScalar = int | Fraction


@lru_cache(maxsize=1 << 16)
def gauss_binom(n: int, k: int, q: int) -> int:
    """Number of k-subspaces of an n-dimensional space over F_q.

    ``prod_{0<=i<k} (q^{n-i} - 1) / (q^{k-i} - 1)``, with value 1 for k = 0
    and 0 for k < 0 or k > n.

    >>> gauss_binom(4, 2, 2)
    35
    """
    if q < 2:
        raise ValueError(f"q must be >= 2, got {q}")
    if k < 0 or n < 0 or k > n:
        return 0
    k = min(k, n - k)
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    out, rem = divmod(num, den)
    assert rem == 0
    return out


def qint(m: int, q: int) -> int:
    """[m choose 1]_q = 1 + q + ... + q^{m-1}."""
    return gauss_binom(m, 1, q)


def h_bound(n: int, k: int, t: int, x: int, q: int) -> int:
    """[x t] * [k-t+1 1]^(x-t) * [n-x k-x]."""
    if not (t >= 1 and t <= x and k >= t):
        raise ValueError(f"h needs 1 <= t <= x and k >= t, got t={t}, x={x}, k={k}")
    return gauss_binom(x, t, q) * qint(k - t + 1, q) ** (x - t) * gauss_binom(n - x, k - x, q)


def _check_ft(k: int, t: int) -> None:
    if not k >= t + 1 >= 2:
        raise ValueError(f"need k >= t + 1 >= 2, got k={k}, t={t}")


def f_bound(n: int, k: int, t: int, q: int) -> Fraction:
    """([k-t+1 1]^2 - q^-4) * [n-t-1 k-t-1]^2."""
    _check_ft(k, t)
    return (qint(k - t + 1, q) ** 2 - Fraction(1, q**4)) * gauss_binom(n - t - 1, k - t - 1, q) ** 2


def g_bound(n: int, k: int, t: int, q: int) -> Fraction:
    """([t+2 1]^2 - q^-4) * [n-t-1 k-t-1]^2."""
    _check_ft(k, t)
    return (qint(t + 2, q) ** 2 - Fraction(1, q**4)) * gauss_binom(n - t - 1, k - t - 1, q) ** 2


def h2_size(n: int, k: int, t: int, q: int) -> int:
    """Size of {F : dim(F ∩ Z) >= t+1} for a fixed (t+2)-space Z."""
    if k < t + 1:
        raise ValueError(f"need k >= t + 1, got k={k}, t={t}")
    return qint(t + 2, q) * gauss_binom(n - t - 1, k - t - 1, q) - q * qint(t + 1, q) * gauss_binom(
        n - t - 2, k - t - 2, q
    )


def meet_profile_count(n: int, m: int, k: int, j: int, q: int) -> int:
    """Number of k-subspaces meeting a fixed m-subspace of F_q^n in exactly j dimensions."""
    if j < 0 or j > min(m, k) or k - j > n - m:
        return 0
    return q ** ((m - j) * (k - j)) * gauss_binom(m, j, q) * gauss_binom(n - m, k - j, q)


def h1_profile(n: int, k: int, t: int, q: int) -> dict[int, int]:
    """|{F ⊇ T : dim(F ∩ M) = j}| for j = t..k, dim M = k+1, T ⊆ M, dim T = t.

    Quotienting by T turns this into the exact-meet count for a (k+1-t)-space
    inside an (n-t)-space.
    """
    return {j: meet_profile_count(n - t, k + 1 - t, k - t, j - t, q) for j in range(t, k + 1)}


def h1_size(n: int, k: int, t: int, q: int) -> int:
    """Size of the Hilton–Milner type family built on (M, T).

    Superspaces of T meeting M in at least t+1 dimensions, plus the
    k-subspaces of M that miss T.  The second part has
    ``[k+1 1] - [k-t+1 1]`` members.
    """
    if k < t + 1 or n < k + 1:
        raise ValueError(f"need k >= t + 1 and n >= k + 1, got n={n}, k={k}, t={t}")
    through_t = sum(c for j, c in h1_profile(n, k, t, q).items() if j >= t + 1)
    return through_t + qint(k + 1, q) - qint(k - t + 1, q)


def b_bound(n: int, k: int, t: int, q: int) -> Fraction:
    """(1 + q^{-k-t-2}) * [n-t-1 k-t-1]."""
    return (1 + Fraction(1, q ** (k + t + 2))) * gauss_binom(n - t - 1, k - t - 1, q)


def ekr_product(n: int, k: int, t: int, q: int, r: int = 2) -> int:
    """Product of r copies of the trivial family size [n-t k-t]."""
    return gauss_binom(n - t, k - t, q) ** r


def hm_pair_product(n: int, k: int, t: int, q: int) -> int:
    return max(h1_size(n, k, t, q), h2_size(n, k, t, q)) ** 2


def hm_r_product(n: int, k: int, t: int, q: int, r: int) -> int:
    """max(h1, h2)^r evaluated at the shifted intersection parameter t + r - 2."""
    s = t + r - 2
    return max(h1_size(n, k, s, q), h2_size(n, k, s, q)) ** r
