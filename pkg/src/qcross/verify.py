"""Exhaustive checks of the structural statements about t-covers.

Each checker evaluates its statement's hypotheses first.  A clause whose
hypotheses fail is reported as ``not applicable``; it is never folded into a
pass.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyFamily, HypothesisViolated, NoWitness, NotMaximal, PreconditionViolated
from .families import (
    CoverReport,
    Family,
    common_intersection,
    covering_number,
    cross_intersecting,
    is_t_cover,
    is_t_intersecting,
    restrict_containing,
)
from .grassmann import (
    Subspace,
    contains,
    enumerate_subspaces_of,
    enumerate_superspaces,
    join_all,
    meet,
    meet_dim,
    to_text,
)
from .qbinom import b_bound, gauss_binom, qint
from .search import closure

PASS, FAIL, NA = "pass", "fail", "not applicable"


@dataclass
class ClauseResult:
    statement: str
    clause: str
    status: str
    detail: str = ""
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "statement": self.statement,
            "clause": self.clause,
            "status": self.status,
            "detail": self.detail,
            "witnesses": self.witnesses,
        }


@dataclass
class StructureReport:
    t: int
    tau: tuple[int, int]
    clauses: list[ClauseResult]

    @property
    def failures(self) -> list[ClauseResult]:
        return [c for c in self.clauses if c.status == FAIL]

    @property
    def ok(self) -> bool:
        return not self.failures

    def by_status(self, status: str) -> list[ClauseResult]:
        return [c for c in self.clauses if c.status == status]

    def to_dict(self) -> dict:
        return {"t": self.t, "tau": list(self.tau), "clauses": [c.to_dict() for c in self.clauses]}


def _status(ok: bool) -> str:
    return PASS if ok else FAIL


def _covers_cross(T1: Family, T2: Family, t: int) -> tuple[bool, tuple | None]:
    for a in T1.members:
        for b in T2.members:
            if meet_dim(a, b) < t:
                return False, (a, b)
    return True, None


def _span_clauses(label: str, fam: Family, rep: CoverReport, t: int) -> list[ClauseResult]:
    """Covers through a fixed t-space T span M; check M's relation to fam."""
    n, k, q = fam.n, fam.k, fam.q
    stmt = "cover-span"
    if not (n >= 2 * k >= 2 * t):
        return [ClauseResult(stmt, f"{label}:*", NA, "needs n >= 2k >= 2t")]
    if rep.tau != t + 1:
        return [ClauseResult(stmt, f"{label}:*", NA, f"needs tau_t = t+1, got {rep.tau}")]
    covers = rep.cover_set.members
    seen: set[Subspace] = set()
    Ts = []
    for S in covers:
        for T in enumerate_subspaces_of(S, t):
            if T not in seen:
                seen.add(T)
                Ts.append(T)
    bad_meet = bad_dim = bad_count = None
    for T in Ts:
        through = [S for S in covers if contains(S, T)]
        M = join_all(through, fam.field, n)
        if bad_meet is None:
            for F in fam.members:
                if not contains(F, T) and meet_dim(M, F) != M.dim - 1:
                    bad_meet = (T, M, F)
                    break
        if bad_dim is None and not (t + 1 <= M.dim <= k + 1):
            bad_dim = (T, M)
        if bad_count is None and not (len(through) <= qint(M.dim - t, q) <= qint(k - t + 1, q)):
            bad_count = (T, M, len(through))
    det = f"{len(Ts)} choices of T checked"
    out = [
        ClauseResult(stmt, f"{label}:meet-codim-1", _status(bad_meet is None), det,
                     {} if bad_meet is None else {"T": to_text(bad_meet[0]), "M": to_text(bad_meet[1]), "F": to_text(bad_meet[2])}),
        ClauseResult(stmt, f"{label}:span-dim", _status(bad_dim is None), det,
                     {} if bad_dim is None else {"T": to_text(bad_dim[0]), "M": to_text(bad_dim[1])}),
        ClauseResult(stmt, f"{label}:cover-count", _status(bad_count is None), det,
                     {} if bad_count is None else {"T": to_text(bad_count[0]), "count": bad_count[2]}),
    ]
    return out


def _pair_clauses(label: str, T1: Family, T2: Family, k: int, t: int, n: int) -> list[ClauseResult]:
    """Case split on the covering numbers of the two cover families."""
    q = T1.q
    stmt = "cover-pairs"
    tau1 = covering_number(T1, t).tau
    if tau1 != t + 1:
        return [ClauseResult(stmt, f"{label}:*", NA, f"needs tau_t(T1) = t+1, got {tau1}")]
    rep2 = covering_number(T2, t)
    tau2 = rep2.tau
    s1, s2 = len(T1), len(T2)
    out = []
    if tau2 == t and s2 >= 2:
        ok = s1 <= qint(k - t + 1, q) + q * q * qint(t, q) and s2 <= qint(2, q)
        out.append(ClauseResult(stmt, f"{label}:i", _status(ok), f"|T1|={s1}, |T2|={s2}"))
    else:
        out.append(ClauseResult(stmt, f"{label}:i", NA, f"tau_t(T2)={tau2}, |T2|={s2}"))
    t1_int = is_t_intersecting(T1, t)
    if tau2 == t + 1 and t1_int:
        Z = join_all(list(T1.members) + list(T2.members), T1.field, n)
        ok = is_t_intersecting(T2, t) and Z.dim <= t + 2
        out.append(ClauseResult(stmt, f"{label}:ii", _status(ok), f"span of all covers has dim {Z.dim}", {"Z": to_text(Z)}))
    else:
        out.append(ClauseResult(stmt, f"{label}:ii", NA, f"tau_t(T2)={tau2}, T1 t-intersecting={t1_int}"))
    if tau2 == t + 1 and not t1_int:
        b = qint(2, q) ** 2
        ok = s1 <= b and s2 <= b and (s1 + 1) * (s2 + 1) < qint(t + 2, q) ** 2
        out.append(ClauseResult(stmt, f"{label}:iii", _status(ok), f"|T1|={s1}, |T2|={s2}"))
    else:
        out.append(ClauseResult(stmt, f"{label}:iii", NA, f"tau_t(T2)={tau2}, T1 t-intersecting={t1_int}"))
    return out


def check_cover_structure(F: Family, G: Family, t: int) -> StructureReport:
    """Run the cover-set statements on a maximal cross t-intersecting pair.

    Statements checked:

    * ``cover-sets``: the minimum-dimension t-covers of F and of G form cross
      t-intersecting families (needs n >= 2k >= 2t).
    * ``cover-span``: for tau_t = t+1 and a t-space T, the (t+1)-covers
      through T span M with dim(M ∩ F) = dim M - 1 off F_T,
      t+1 <= dim M <= k+1 and #covers <= [dim M - t, 1] <= [k-t+1, 1].
    * ``cover-pairs``: the three-way case split on tau_t of the two cover
      families when both covering numbers equal t+1 (needs n >= 2k >= 2t+2).
    """
    if not len(F) or not len(G):
        raise EmptyFamily("structure checks need non-empty families")
    if closure(F, t) != G or closure(G, t) != F:
        raise NotMaximal("closure changes the pair; it is not maximal cross t-intersecting")
    n, k = F.n, F.k
    rf, rg = covering_number(F, t), covering_number(G, t)
    T1, T2 = rf.cover_set, rg.cover_set
    clauses: list[ClauseResult] = []

    if n >= 2 * k >= 2 * t:
        ok, bad = _covers_cross(T1, T2, t)
        clauses.append(ClauseResult("cover-sets", "cross", _status(ok), f"|T1|={len(T1)}, |T2|={len(T2)}",
                                    {} if ok else {"pair": [to_text(bad[0]), to_text(bad[1])]}))
    else:
        clauses.append(ClauseResult("cover-sets", "cross", NA, "needs n >= 2k >= 2t"))

    clauses += _span_clauses("F", F, rf, t)
    clauses += _span_clauses("G", G, rg, t)

    if not n >= 2 * k >= 2 * t + 2:
        clauses.append(ClauseResult("cover-pairs", "*", NA, "needs n >= 2k >= 2t+2"))
    elif (rf.tau, rg.tau) != (t + 1, t + 1):
        clauses.append(ClauseResult("cover-pairs", "*", NA, f"needs both tau_t = t+1, got {(rf.tau, rg.tau)}"))
    else:
        clauses += _pair_clauses("T1=F", T1, T2, k, t, n)
        clauses += _pair_clauses("T1=G", T2, T1, k, t, n)
    return StructureReport(t, (rf.tau, rg.tau), clauses)


@dataclass
class PushupResult:
    witness: Subspace
    ratio_ok: bool
    strong_ok: bool
    size_s: int
    size_r: int
    factor: int

    def __iter__(self):
        # unpacks as (R, ratio_ok)
        yield self.witness
        yield self.ratio_ok


def verify_pushup(fam: Family, X: Subspace, S: Subspace, t: int) -> PushupResult:
    """Find R ⊇ S of dimension s+t-y with |F_S| <= [x-t+1, 1]^(t-y) |F_R|.

    y = dim(X ∩ S) for a t-cover X of dimension x.  All candidates R are
    searched; the first one (in enumeration order) meeting the bound is
    returned.  ``strong_ok`` additionally records whether that R meets the
    sharper factor [x-y, t-y].
    """
    n, k, q = fam.n, fam.k, fam.q
    x, s = X.dim, S.dim
    y = meet_dim(X, S)
    if x < t or y >= t:
        raise PreconditionViolated(f"need dim X >= t and dim(X ∩ S) < t, got x={x}, y={y}")
    if n < k + x:
        raise PreconditionViolated(f"need n >= k + x, got n={n}, k={k}, x={x}")
    if len(fam) and not is_t_cover(X, fam, t):
        raise PreconditionViolated("X is not a t-cover of the family")
    size_s = len(restrict_containing(fam, S))
    factor = qint(x - t + 1, q) ** (t - y)
    strong = gauss_binom(x - y, t - y, q)
    target = s + t - y
    if target > n:
        raise PreconditionViolated(f"no subspace of dimension {target} in F_q^{n}")
    for R in enumerate_superspaces(S, target):
        size_r = len(restrict_containing(fam, R)) if size_s else 0
        if size_s <= factor * size_r:
            return PushupResult(R, True, size_s <= strong * size_r, size_s, size_r, factor)
    raise NoWitness(f"no {target}-dimensional R ⊇ S satisfies the push-up bound")


def size_bound_value(n: int, k: int, t: int, tau_f: int, tau_g: int, q: int) -> int:
    return gauss_binom(tau_f, t, q) * qint(k - t + 1, q) ** (tau_g - t) * gauss_binom(n - tau_g, k - tau_g, q)


def verify_size_bound(F: Family, G: Family, t: int) -> bool:
    """|F| <= [tau(F), t] [k-t+1, 1]^(tau(G)-t) [n-tau(G), k-tau(G)]."""
    n, k, q = F.n, F.k, F.q
    if not (n >= 2 * k - t + 1 >= t + 3):
        raise HypothesisViolated(f"need n >= 2k-t+1 >= t+3, got n={n}, k={k}, t={t}")
    ok, _ = cross_intersecting([F, G], t)
    if not ok:
        raise HypothesisViolated("families are not cross t-intersecting")
    tf, tg = covering_number(F, t).tau, covering_number(G, t).tau
    return len(F) <= size_bound_value(n, k, t, tf, tg, q)


def b_family(F: Family, G: Family, t: int) -> Family:
    """Members of G containing none of the (t+1)-dimensional t-covers of F."""
    if not len(G):
        return G
    rf = covering_number(F, t)
    rg = covering_number(G, t)
    if rf.tau != t + 1 or rg.tau != t + 1:
        raise HypothesisViolated(f"need tau_t(F) = tau_t(G) = t+1, got {rf.tau}, {rg.tau}")
    covers = rf.cover_set.members
    return G.with_members(g for g in G.members if not any(contains(g, S) for S in covers))


def b_family_report(F: Family, G: Family, t: int) -> dict:
    """|B| against its bound; asserted only when n >= 4k+6."""
    B = b_family(F, G, t)
    n, k, q = F.n, F.k, F.q
    bound = b_bound(n, k, t, q)
    asserted = n >= 4 * k + 6
    holds = Fraction(len(B)) <= bound
    return {
        "size": len(B),
        "bound": f"{bound.numerator}/{bound.denominator}",
        "holds": holds,
        "status": (PASS if holds else FAIL) if asserted else "exploratory",
    }


def double_counting_sides(M: Subspace, T: Subspace, k: int, profile: dict[int, int]) -> dict[int, tuple[int, int]]:
    """Both sides of the flag count for each j in t+1..k.

    Left: [k-t+1, j-t][n-j, k-j] pairs (I, F) with T ⊆ I ⊆ M, I ⊆ F.
    Right: sum over i >= j of [i-t, j-t] |A_i| with A_i taken from ``profile``.
    """
    n, q, t = M.n, M.q, T.dim
    out = {}
    for j in range(t + 1, k + 1):
        lhs = gauss_binom(M.dim - t, j - t, q) * gauss_binom(n - j, k - j, q)
        rhs = sum(gauss_binom(i - t, j - t, q) * profile.get(i, 0) for i in range(j, k + 1))
        out[j] = (lhs, rhs)
    return out


def count_flags(M: Subspace, T: Subspace, j: int, k: int) -> int:
    """|{(I, F) : T ⊆ I ⊆ M, dim I = j, I ⊆ F, dim F = k}| by enumeration."""
    total = 0
    for I in enumerate_superspaces(T, j):
        if contains(M, I):
            total += sum(1 for _ in enumerate_superspaces(I, k))
    return total
