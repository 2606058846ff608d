"""Exact grid scans of the numeric inequalities.

A scan walks a raw parameter grid, drops points that fail a check's
hypotheses (counting them), and evaluates every remaining point with
``int``/``Fraction`` arithmetic.  One row is emitted per inequality tested.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator

from .errors import InfeasibleGrid, UnknownClaim
from .qbinom import (
    f_bound,
    g_bound,
    gauss_binom,
    h1_size,
    h2_size,
    h_bound,
    qint,
)

RELATIONS: dict[str, Callable[[Fraction, Fraction], bool]] = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    ">": lambda a, b: a > b,
}


def fraction_text(v: int | Fraction) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


@dataclass(frozen=True)
class ScanRow:
    lemma_id: str
    grid_point: dict
    lhs: Fraction
    rhs: Fraction
    relation: str
    status: str

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "grid_point": self.grid_point,
            "lhs": fraction_text(self.lhs),
            "rhs": fraction_text(self.rhs),
            "relation": self.relation,
            "status": self.status,
        }


def _row(lemma_id: str, point: dict, lhs, rhs, relation: str) -> ScanRow:
    lhs, rhs = Fraction(lhs), Fraction(rhs)
    ok = RELATIONS[relation](lhs, rhs)
    return ScanRow(lemma_id, point, lhs, rhs, relation, "pass" if ok else "fail")


@dataclass(frozen=True)
class ScanGrid:
    """Raw parameter ranges.

    ``m_max`` bounds the (m, i) grid of the ratio checks.  For (n, k, t)
    checks, k runs over 1..k_max and t over 1..k.  n either runs over the
    absolute ``n_range`` or, when that is None, from each check's own lower
    threshold up to threshold + ``n_extra``.
    """

    checks: tuple[str, ...]
    q: tuple[int, ...] = (2, 3, 4, 5)
    m_max: int = 40
    k_max: int = 8
    n_extra: int = 20
    n_range: tuple[int, int] | None = None

    def __post_init__(self):
        object.__setattr__(self, "checks", resolve_checks(self.checks))
        if any(q < 2 for q in self.q):
            raise ValueError("every q must be >= 2")
        if self.m_max < 1 or self.k_max < 1 or self.n_extra < 0:
            raise ValueError("grid bounds must be positive")


# -- individual checks --------------------------------------------------------
# Each check is (raw point generator, hypothesis, row builder).


def _mi_points(grid: ScanGrid, q: int) -> Iterator[dict]:
    for m in range(1, grid.m_max + 1):
        for i in range(1, m + 1):
            yield {"q": q, "m": m, "i": i}


def _mi_hyp(p: dict) -> bool:
    return 1 <= p["i"] < p["m"]


def _ratio_rows(p: dict) -> list[ScanRow]:
    q, m, i = p["q"], p["m"], p["i"]
    up = Fraction(q**m - 1, q**i - 1)
    down = 1 / up
    return [
        _row("ratio_bounds/up-lower", p, Fraction(q) ** (m - i), up, "<"),
        _row("ratio_bounds/up-upper", p, up, Fraction(q) ** (m - i + 1), "<"),
        _row("ratio_bounds/down-lower", p, Fraction(q) ** (i - m - 1), down, "<"),
        _row("ratio_bounds/down-upper", p, down, Fraction(q) ** (i - m), "<"),
    ]


def _gauss_rows(p: dict) -> list[ScanRow]:
    q, m, i = p["q"], p["m"], p["i"]
    g = gauss_binom(m, i, q)
    return [
        _row("gauss_bounds/lower", p, q ** (i * (m - i)), g, "<"),
        _row("gauss_bounds/upper", p, g, q ** (i * (m - i + 1)), "<"),
    ]


def _nkt_points(threshold: Callable[[int, int], int]):
    def gen(grid: ScanGrid, q: int) -> Iterator[dict]:
        for k in range(1, grid.k_max + 1):
            for t in range(1, k + 1):
                if grid.n_range is not None:
                    lo, hi = grid.n_range
                else:
                    lo = threshold(k, t)
                    hi = lo + grid.n_extra
                for n in range(lo, hi + 1):
                    yield {"q": q, "n": n, "k": k, "t": t}

    return gen


def _hyp(threshold: Callable[[int, int], int]):
    def ok(p: dict) -> bool:
        return p["k"] >= p["t"] + 1 and p["t"] >= 1 and p["n"] >= threshold(p["k"], p["t"])

    return ok


def _monotone_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    rows = []
    for x in range(t, k + 1):
        pt = dict(p, x=x)
        rows.append(_row("h_monotone", pt, h_bound(n, k, t, x, q), h_bound(n, k, t, x + 1, q), ">="))
    return rows


def _ratio_step_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    rows = []
    for a in range(0, k):
        pt = dict(p, a=a)
        quot = Fraction(gauss_binom(n - a, k - a, q), gauss_binom(n - a - 1, k - a - 1, q))
        ratio = Fraction(q ** (n - a) - 1, q ** (k - a) - 1)
        rows += [
            _row("ratio_step/identity", pt, quot, ratio, "="),
            _row("ratio_step/first", pt, ratio, q ** (n - k), ">="),
            _row("ratio_step/second", pt, q ** (n - k), q ** (k - t + 1), ">="),
            _row("ratio_step/third", pt, q ** (k - t + 1), qint(k - t + 1, q), ">="),
        ]
    return rows


def _product_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    f = f_bound(n, k, t, q)
    rows = []
    for x1 in range(t + 1, k + 1):
        for x2 in range(t + 1, k + 1):
            if (x1, x2) == (t + 1, t + 1):
                continue
            pt = dict(p, x1=x1, x2=x2)
            rows.append(_row("product_vs_f", pt, h_bound(n, k, t, x1, q) * h_bound(n, k, t, x2, q), f, "<"))
    return rows


def _h1f_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    return [_row("h1_vs_f", p, h1_size(n, k, t, q) ** 2, f_bound(n, k, t, q), ">")]


def _h2g_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    return [_row("h2_vs_g", p, h2_size(n, k, t, q) ** 2, g_bound(n, k, t, q), ">")]


def expected_h1_h2_relation(k: int, t: int) -> str:
    if k > 2 * t + 1:
        return ">"
    return "=" if (k, t) == (3, 1) else "<"


def _h1h2_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    rel = expected_h1_h2_relation(k, t)
    return [_row("h1_vs_h2", p, h1_size(n, k, t, q) ** 2, h2_size(n, k, t, q) ** 2, rel)]


def _b_bound_rows(p: dict) -> list[ScanRow]:
    q, n, k, t = p["q"], p["n"], p["k"], p["t"]
    lhs = qint(t + 1, q) * qint(k - t + 2, q) * qint(k - t + 1, q) * gauss_binom(n - t - 2, k - t - 2, q)
    rhs = Fraction(gauss_binom(n - t - 1, k - t - 1, q), q ** (k + t + 2))
    return [_row("b_bound_formula", p, lhs, rhs, "<=")]


def _big(k: int, t: int) -> int:
    return 4 * k + 6


@dataclass(frozen=True)
class Check:
    name: str
    points: Callable
    hypothesis: Callable[[dict], bool]
    rows: Callable[[dict], list[ScanRow]]
    hypothesis_text: str
    uses_h1: bool = False


CHECKS: dict[str, Check] = {
    c.name: c
    for c in [
        Check("ratio_bounds", _mi_points, _mi_hyp, _ratio_rows, "1 <= i < m"),
        Check("gauss_bounds", _mi_points, _mi_hyp, _gauss_rows, "1 <= i < m"),
        Check("h_monotone", _nkt_points(lambda k, t: 2 * k + 2), _hyp(lambda k, t: 2 * k + 2),
              _monotone_rows, "n >= 2k+2, k >= t+1, t <= x <= k"),
        Check("ratio_step", _nkt_points(lambda k, t: 2 * k - t + 1), _hyp(lambda k, t: 2 * k - t + 1),
              _ratio_step_rows, "n >= 2k-t+1, k >= t+1, 0 <= a <= k-1"),
        Check("product_vs_f", _nkt_points(_big), _hyp(_big), _product_rows,
              "n >= 4k+6, k >= t+1, t+1 <= x1, x2 <= k, (x1, x2) != (t+1, t+1)"),
        Check("h1_vs_f", _nkt_points(_big), _hyp(_big), _h1f_rows, "n >= 4k+6, k >= t+1", uses_h1=True),
        Check("h2_vs_g", _nkt_points(_big), _hyp(_big), _h2g_rows, "n >= 4k+6, k >= t+1"),
        Check("h1_vs_h2", _nkt_points(_big), _hyp(_big), _h1h2_rows, "n >= 4k+6, k >= t+1", uses_h1=True),
        Check("b_bound_formula", _nkt_points(_big), _hyp(_big), _b_bound_rows, "n >= 4k+6, k >= t+1"),
    ]
}

# Short numeric names accepted on the command line.
ALIASES: dict[str, tuple[str, ...]] = {
    "2.1": ("ratio_bounds", "gauss_bounds"),
    "2.4": ("h_monotone",),
    "eq1": ("ratio_step",),
    "2.5": ("product_vs_f",),
    "2.6": ("h1_vs_f", "h2_vs_g", "h1_vs_h2"),
    "4.1": ("b_bound_formula",),
    "all": tuple(CHECKS),
}


def resolve_checks(names) -> tuple[str, ...]:
    out: list[str] = []
    for name in names:
        expanded = ALIASES.get(name, (name,))
        for c in expanded:
            if c not in CHECKS:
                raise UnknownClaim(f"unknown check {name!r}; known: {sorted(CHECKS) + sorted(ALIASES)}")
            if c not in out:
                out.append(c)
    return tuple(out)


# -- the enumeration gate for h1_size ---------------------------------------

H1_GATE_POINTS = ((2, 5, 2, 1), (2, 7, 3, 1), (3, 5, 2, 1))


def h1_gate_rows() -> list[ScanRow]:
    """Compare h1_size with brute-force |H1(M, M, T)| on small instances."""
    from .families import construct_h1
    from .gf import field_new
    from .grassmann import coordinate_space

    rows = []
    for q, n, k, t in H1_GATE_POINTS:
        fld = field_new(q)
        M = coordinate_space(fld, n, range(k + 1))
        T = coordinate_space(fld, n, range(t))
        size = len(construct_h1(M, M, T, k, t))
        rows.append(_row("h1_gate", {"q": q, "n": n, "k": k, "t": t}, h1_size(n, k, t, q), size, "="))
    return rows


# -- the report ----------------------------------------------------------------


@dataclass
class ScanReport:
    rows: list[ScanRow]
    coverage: dict[str, dict] = field(default_factory=dict)
    gate: list[ScanRow] = field(default_factory=list)

    @property
    def violations(self) -> list[ScanRow]:
        return [r for r in self.gate + self.rows if r.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> dict[str, dict]:
        out: dict[str, dict] = {}
        for r in self.gate + self.rows:
            s = out.setdefault(r.lemma_id, {"rows": 0, "fail": 0})
            s["rows"] += 1
            s["fail"] += r.status == "fail"
        return out

    def to_dict(self) -> dict:
        return {
            "coverage": self.coverage,
            "summary": self.summary(),
            "violations": len(self.violations),
            "rows": [r.to_dict() for r in self.gate + self.rows],
        }

    def to_json(self, **extra) -> str:
        return json.dumps({**extra, **self.to_dict()}, sort_keys=True, indent=1)

    def to_csv(self, header_lines: list[str] = ()) -> str:
        buf = io.StringIO()
        for line in header_lines:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["lemma_id", "grid_point", "lhs", "rhs", "relation", "status"])
        for r in self.gate + self.rows:
            d = r.to_dict()
            gp = ";".join(f"{k}={v}" for k, v in r.grid_point.items())
            w.writerow([d["lemma_id"], gp, d["lhs"], d["rhs"], d["relation"], d["status"]])
        return buf.getvalue()


def _scan_unit(args: tuple[str, int, ScanGrid]) -> tuple[list[ScanRow], int, int]:
    name, q, grid = args
    chk = CHECKS[name]
    rows: list[ScanRow] = []
    checked = filtered = 0
    for p in chk.points(grid, q):
        if not chk.hypothesis(p):
            filtered += 1
            continue
        checked += 1
        rows.extend(chk.rows(p))
    return rows, checked, filtered


def scan_numeric_lemmas(grid: ScanGrid, workers: int = 1) -> ScanReport:
    """Evaluate every requested check over the grid.

    Work units are (check, q) pairs; with ``workers > 1`` they run in a
    process pool and are merged back in submission order, so the report does
    not depend on the worker count.
    """
    units = [(name, q, grid) for name in grid.checks for q in grid.q]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_scan_unit, units))
    else:
        results = [_scan_unit(u) for u in units]

    rows: list[ScanRow] = []
    coverage: dict[str, dict] = {
        name: {"points_checked": 0, "points_filtered": 0, "hypothesis": CHECKS[name].hypothesis_text}
        for name in grid.checks
    }
    for (name, _q, _g), (r, checked, filtered) in zip(units, results):
        rows.extend(r)
        coverage[name]["points_checked"] += checked
        coverage[name]["points_filtered"] += filtered
    if not rows:
        raise InfeasibleGrid("no grid point satisfies the hypotheses of any requested check")

    gate = h1_gate_rows() if any(CHECKS[n].uses_h1 for n in grid.checks) else []
    if any(r.status == "fail" for r in gate):
        # an ungated h1 formula must not certify anything
        rows = [
            ScanRow(r.lemma_id, r.grid_point, r.lhs, r.rhs, r.relation, "fail") if CHECKS[r.lemma_id.split("/")[0]].uses_h1 else r
            for r in rows
        ]
    return ScanReport(rows, coverage, gate)
