"""Families of equal-dimension subspaces, the extremal constructions, and the
predicates quantified over them (cross intersection, covers, covering number).

Constructions scan the whole Grassmannian against the defining condition
whenever the ambient space is small enough to index; that keeps them an
independent check on the closed-form sizes in :mod:`qcross.qbinom`.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import EmptyFamily, FormatError, NoCoverWithinBound, PreconditionViolated
from .gf import FieldSpec, field_new
from .grassmann import (
    MASK_LIMIT,
    Grassmannian,
    Subspace,
    contains,
    enumerate_grassmannian,
    enumerate_subspaces_of,
    enumerate_superspaces,
    from_text,
    grassmannian,
    join_all,
    meet,
    meet_dim,
    meet_dim_many,
    to_text,
)
from .qbinom import gauss_binom

INDEX_LIMIT = 200_000


@dataclass(frozen=True)
class Family:
    field: FieldSpec
    n: int
    k: int
    members: tuple[Subspace, ...] = ()

    def __post_init__(self) -> None:
        uniq = set(self.members)
        for m in uniq:
            if m.field != self.field or m.n != self.n or m.dim != self.k:
                raise PreconditionViolated(
                    f"member {m!r} does not live in the {self.k}-subspaces of F_{self.field.q}^{self.n}"
                )
        object.__setattr__(self, "members", tuple(sorted(uniq, key=Subspace.sort_key)))

    @classmethod
    def of(cls, members: Iterable[Subspace], field: FieldSpec | None = None, n: int | None = None, k: int | None = None) -> "Family":
        members = list(members)
        if members:
            field = field or members[0].field
            n = members[0].n if n is None else n
            k = members[0].dim if k is None else k
        if field is None or n is None or k is None:
            raise EmptyFamily("an empty family needs explicit field, n and k")
        return cls(field, n, k, tuple(members))

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def ambient_dim(self) -> int:
        return self.n

    @property
    def member_dim(self) -> int:
        return self.k

    @cached_property
    def _set(self) -> frozenset[Subspace]:
        return frozenset(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[Subspace]:
        return iter(self.members)

    def __contains__(self, s: object) -> bool:
        return s in self._set

    def __le__(self, other: "Family") -> bool:
        return self._set <= other._set

    def __repr__(self) -> str:
        return f"Family(q={self.q}, n={self.n}, k={self.k}, size={len(self)})"

    def with_members(self, members: Iterable[Subspace]) -> "Family":
        return Family(self.field, self.n, self.k, tuple(members))

    # family file format
    def to_dict(self) -> dict:
        return {"q": self.q, "n": self.n, "k": self.k, "members": [to_text(m) for m in self.members]}

    @classmethod
    def from_dict(cls, d: dict) -> "Family":
        try:
            q, n, k = int(d["q"]), int(d["n"]), int(d["k"])
            texts = d["members"]
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"family header needs q, n, k and members: {exc}") from None
        F = field_new(q)
        members = []
        for i, s in enumerate(texts):
            try:
                m = from_text(F, s, n)
            except FormatError as exc:
                raise FormatError(f"member {i}: {exc}") from None
            if m.dim != k:
                raise FormatError(f"member {i} ({s!r}) has dimension {m.dim}, expected {k}")
            members.append(m)
        return cls(F, n, k, tuple(members))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Family":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", exc.pos) from None
        return cls.from_dict(d)


def save_family(fam: Family, path) -> None:
    with open(path, "w") as fh:
        fh.write(fam.to_json() + "\n")


def load_family(path) -> Family:
    with open(path) as fh:
        return Family.from_json(fh.read())


def _index(field: FieldSpec, n: int, k: int) -> Grassmannian | None:
    if field.q**n > MASK_LIMIT or gauss_binom(n, k, field.q) > INDEX_LIMIT:
        return None
    return grassmannian(field.q, n, k)


def select(field: FieldSpec, n: int, k: int, keep: np.ndarray) -> Family:
    G = grassmannian(field.q, n, k)
    return Family(field, n, k, tuple(G.members[i] for i in np.flatnonzero(keep)))


# --- constructions ---------------------------------------------------------


def trivial_family(T: Subspace, k: int) -> Family:
    """All k-subspaces containing T."""
    if not T.dim <= k <= T.n:
        raise PreconditionViolated(f"need dim T <= k <= n, got {T.dim}, {k}, {T.n}")
    return Family(T.field, T.n, k, tuple(enumerate_superspaces(T, k)))


def construct_h1(L: Subspace, M: Subspace, T: Subspace, k: int, t: int) -> Family:
    """{F ⊇ T : dim(F ∩ L) >= t+1}  ∪  {F ⊆ M : T ⊄ F}, all of dimension k."""
    if M.dim != k + 1 or L.dim != k + 1:
        raise PreconditionViolated(f"M and L must have dimension k+1={k + 1}")
    if T.dim != t:
        raise PreconditionViolated(f"T must have dimension t={t}, got {T.dim}")
    if not (contains(M, T) and contains(L, T)):
        raise PreconditionViolated("T must lie in M ∩ L")
    idx = _index(T.field, T.n, k)
    if idx is not None:
        through_t = idx.at_least(T, t)
        keep = (through_t & idx.at_least(L, t + 1)) | (idx.at_least(M, k) & ~through_t)
        return select(T.field, T.n, k, keep)
    members = [F for F in enumerate_superspaces(T, k) if meet_dim(F, L) >= t + 1]
    members += [F for F in enumerate_subspaces_of(M, k) if not contains(F, T)]
    return Family(T.field, T.n, k, tuple(members))


def construct_h2(Z: Subspace, k: int, threshold: int) -> Family:
    """{F : dim(F ∩ Z) >= threshold}, all of dimension k."""
    if not (threshold <= Z.dim <= Z.n and threshold <= k <= Z.n and threshold >= 0):
        raise PreconditionViolated(f"bad threshold {threshold} for dim Z={Z.dim}, k={k}, n={Z.n}")
    idx = _index(Z.field, Z.n, k)
    if idx is not None:
        return select(Z.field, Z.n, k, idx.at_least(Z, threshold))
    return Family(Z.field, Z.n, k, tuple(F for F in enumerate_grassmannian(Z.field, Z.n, k) if meet_dim(F, Z) >= threshold))


def full_family(field: FieldSpec, n: int, k: int) -> Family:
    idx = _index(field, n, k)
    members = idx.members if idx is not None else enumerate_grassmannian(field, n, k)
    return Family(field, n, k, tuple(members))


# --- predicates ------------------------------------------------------------


@dataclass
class IntersectionResult:
    """Minimum r-wise intersection dimension over the product of families."""

    min_dim: int
    witness: tuple[Subspace, ...]
    exact: bool
    tuples_checked: int
    seed: int | None = None

    @property
    def partial(self) -> bool:
        return not self.exact


def _check_families(families: Sequence[Family]) -> None:
    if len(families) < 2:
        raise PreconditionViolated("need at least two families")
    f0 = families[0]
    for f in families:
        if f.field != f0.field or f.n != f0.n:
            raise PreconditionViolated("families live in different ambient spaces")
        if not len(f):
            raise EmptyFamily("intersection over an empty family")


def min_r_wise_intersection(families: Sequence[Family], sample_budget: int = 10**7, seed: int = 0) -> IntersectionResult:
    """Minimum of dim(F_1 ∩ ... ∩ F_r) over all choices F_i in families[i].

    Exhaustive (depth-first in product order, first minimum kept as witness)
    when the product of sizes is within ``sample_budget``; otherwise
    ``sample_budget`` seeded random tuples are drawn and the result is marked
    partial.
    """
    _check_families(families)
    total = 1
    for f in families:
        total *= len(f)
    q = families[0].q
    if total > sample_budget:
        rng = random.Random(seed)
        best: tuple[int, tuple[Subspace, ...]] | None = None
        for _ in range(sample_budget):
            tup = tuple(rng.choice(f.members) for f in families)
            d = meet_dim_many(tup)
            if best is None or d < best[0]:
                best = (d, tup)
        return IntersectionResult(best[0], best[1], False, sample_budget, seed)

    masks_ok = families[0].members[0].mask is not None
    r = len(families)
    best_dim = families[0].n + 1
    best_tup: tuple[Subspace, ...] = ()
    checked = 0

    if masks_ok:
        mask_lists = [[m.mask for m in f.members] for f in families]
        powers = {q**d: d for d in range(families[0].n + 1)}
        last = mask_lists[-1]
        pick = [0] * r

        def dfs(level: int, acc: int) -> bool:
            nonlocal best_dim, best_tup, checked
            if level == r - 1:
                for j, m in enumerate(last):
                    d = powers[(acc & m).bit_count()]
                    if d < best_dim:
                        pick[level] = j
                        best_dim = d
                        best_tup = tuple(families[i].members[pick[i]] for i in range(r))
                        if d == 0:
                            checked += j + 1
                            return True
                checked += len(last)
                return False
            for j, m in enumerate(mask_lists[level]):
                pick[level] = j
                if dfs(level + 1, acc & m):
                    return True
            return False

        full = (1 << (q ** families[0].n)) - 1
        dfs(0, full)
    else:
        for tup in itertools.product(*(f.members for f in families)):
            checked += 1
            d = meet_dim_many(tup)
            if d < best_dim:
                best_dim, best_tup = d, tup
                if d == 0:
                    break
    return IntersectionResult(best_dim, best_tup, True, checked, None)


def cross_intersecting(families: Sequence[Family], t: int, sample_budget: int = 10**7) -> tuple[bool, tuple[Subspace, ...] | None]:
    """Whether the families are r-cross t-intersecting, with a violating tuple if not."""
    res = min_r_wise_intersection(families, sample_budget)
    if not res.exact:
        raise PreconditionViolated("cross intersection can only be certified exhaustively")
    return res.min_dim >= t, (None if res.min_dim >= t else res.witness)


def is_t_intersecting(fam: Family, t: int) -> bool:
    """Every two members (including a member with itself) meet in dimension >= t."""
    if not len(fam):
        raise EmptyFamily("t-intersection of an empty family")
    ms = fam.members
    return all(meet_dim(a, b) >= t for i, a in enumerate(ms) for b in ms[i + 1 :]) and fam.k >= t


def common_intersection(fam: Family) -> Subspace:
    if not len(fam):
        raise EmptyFamily("common intersection of an empty family")
    out = fam.members[0]
    for m in fam.members[1:]:
        if out.dim == 0:
            break
        if not contains(m, out):
            out = meet(out, m)
    return out


def is_t_cover(S: Subspace, fam: Family, t: int) -> bool:
    if not len(fam):
        raise EmptyFamily("cover of an empty family")
    if S.dim < t:
        return False
    return all(meet_dim(S, F) >= t for F in fam.members)


@dataclass
class CoverReport:
    tau: int
    witness: Subspace
    cover_set: Family
    spanned: Subspace
    rejected: dict[int, int] = field(default_factory=dict)  # dimension -> candidates ruled out

    @property
    def certificate(self) -> str:
        parts = [f"dim {d}: all {c} candidates fail" for d, c in sorted(self.rejected.items())]
        return "; ".join(parts) or "minimal by definition"


def covering_number(fam: Family, t: int, max_dim: int | None = None) -> CoverReport:
    """Smallest dimension of a t-cover, with every cover at that dimension.

    Dimensions t, t+1, ... are searched exhaustively.  Within a dimension,
    the member that rejected the previous candidate is tried first, which
    makes non-covers fail after one or two meets in practice.
    """
    if not len(fam):
        raise EmptyFamily("covering number of an empty family")
    n = fam.n
    max_dim = n if max_dim is None else max_dim
    if not t <= max_dim <= n:
        raise PreconditionViolated(f"need t <= max_dim <= n, got t={t}, max_dim={max_dim}, n={n}")
    q = fam.q
    masks_ok = fam.members[0].mask is not None
    rejected: dict[int, int] = {}
    for d in range(t, max_dim + 1):
        order = list(fam.members)
        order_masks = [m.mask for m in order] if masks_ok else None
        thr = q**t
        covers = []
        count = 0
        for X in enumerate_grassmannian(fam.field, n, d):
            count += 1
            ok = True
            if masks_ok:
                xm = X.mask
                for i, m in enumerate(order_masks):
                    if (xm & m).bit_count() < thr:
                        if i:
                            order_masks.insert(0, order_masks.pop(i))
                        ok = False
                        break
            else:
                for i, m in enumerate(order):
                    if meet_dim(X, m) < t:
                        if i:
                            order.insert(0, order.pop(i))
                        ok = False
                        break
            if ok:
                covers.append(X)
        if covers:
            cover_set = Family(fam.field, n, d, tuple(covers))
            return CoverReport(d, covers[0], cover_set, join_all(covers, fam.field, n), rejected)
        rejected[d] = count
    raise NoCoverWithinBound(f"no {t}-cover of dimension <= {max_dim}")


def nontriviality_dim(fam: Family) -> int:
    return common_intersection(fam).dim


def restrict_containing(fam: Family, S: Subspace) -> Family:
    """F_S: the members containing S."""
    return fam.with_members(m for m in fam.members if contains(m, S))


def intersection_profile(M: Subspace, T: Subspace, k: int) -> dict[int, int]:
    """|{F ⊇ T, dim F = k : dim(F ∩ M) = j}| for j = dim T .. k, by enumeration."""
    if not contains(M, T):
        raise PreconditionViolated("T must be contained in M")
    counts = {j: 0 for j in range(T.dim, k + 1)}
    for F in enumerate_superspaces(T, k):
        counts[meet_dim(F, M)] += 1
    return counts
