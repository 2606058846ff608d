"""Command-line front end: ``qcross <subcommand> ...``.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage
or input errors.  Every run carries a provenance block (tool version, the
echoed configuration, the seed and a timestamp).  In JSON output it is the
``provenance`` key, in CSV it is a run of ``#`` lines, and in text mode it
goes to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .errors import FormatError, NoWitness, QCrossError
from .families import (
    Family,
    construct_h1,
    construct_h2,
    covering_number,
    cross_intersecting,
    is_t_cover,
    is_t_intersecting,
    load_family,
    save_family,
    trivial_family,
)
from .gf import field_new
from .grassmann import coordinate_space, enumerate_grassmannian, from_text, to_text
from .qbinom import gauss_binom
from .scan import ScanGrid, scan_numeric_lemmas
from .search import (
    CLAIMS,
    MODES,
    SearchConfig,
    SearchRecord,
    compare_to_theorem,
    exhaustive_closed_pairs,
    stochastic_improve,
)
from .verify import b_family_report, check_cover_structure, verify_pushup, verify_size_bound


class UsageError(Exception):
    pass


# -- helpers --------------------------------------------------------------------


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _subspace(args, text: str, flag: str):
    """Parse a subspace literal: ``100;010`` rows, or ``@0,1`` for coordinate axes."""
    fld = field_new(args.q)
    try:
        if text.startswith("@"):
            return coordinate_space(fld, args.n, _int_list(text[1:]))
        return from_text(fld, text, args.n)
    except FormatError as e:
        raise UsageError(f"{flag}: {e}") from None
    except (argparse.ArgumentTypeError, ValueError) as e:
        raise UsageError(f"{flag}: {e}") from None


def _load(path: str) -> Family:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{path}: no such file")
    try:
        return load_family(p)
    except FormatError as e:
        raise UsageError(f"{path}: {e}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None


def _load_record(path: str) -> SearchRecord:
    p = Path(path)
    if not p.exists():
        raise UsageError(f"{path}: no such file")
    try:
        return SearchRecord.from_json(p.read_text())
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    except (KeyError, TypeError, ValueError) as e:
        raise UsageError(f"{path}: malformed record ({e})") from None


def _check(name: str, ok: bool) -> dict:
    return {"name": name, "status": "pass" if ok else "fail"}


class Outcome:
    """What a subcommand produced: a JSON-able result, check rows and text."""

    def __init__(self, result, checks=(), text: str | None = None, csv_rows: list[list] | None = None):
        self.result = result
        self.checks = list(checks)
        self.text = text
        self.csv_rows = csv_rows

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)


# -- subcommands ------------------------------------------------------------------


def cmd_qbinom(args) -> Outcome:
    v = gauss_binom(args.n, args.k, args.q)
    return Outcome({"n": args.n, "k": args.k, "q": args.q, "value": str(v)}, text=str(v),
                   csv_rows=[["n", "k", "q", "value"], [args.n, args.k, args.q, v]])


def cmd_scan(args) -> Outcome:
    n_range = None
    if args.n_min is not None or args.n_max is not None:
        if args.n_min is None or args.n_max is None:
            raise UsageError("--n-min and --n-max go together")
        n_range = (args.n_min, args.n_max)
    try:
        grid = ScanGrid(checks=tuple(args.lemmas.split(",")), q=args.q, m_max=args.m_max,
                        k_max=args.k_max, n_extra=args.n_extra, n_range=n_range)
    except ValueError as e:
        raise UsageError(f"--q/--k-max/--m-max/--n-extra: {e}") from None
    rep = scan_numeric_lemmas(grid, workers=args.workers)
    checks = [{"name": r.lemma_id, "status": r.status} for r in rep.gate + rep.rows]
    summary = rep.summary()
    lines = [f"{name:28s} rows={s['rows']:7d} fail={s['fail']}" for name, s in summary.items()]
    lines.append(f"violations: {len(rep.violations)}")
    for v in rep.violations[:20]:
        d = v.to_dict()
        lines.append(f"  FAIL {d['lemma_id']} {d['grid_point']}: {d['lhs']} {d['relation']} {d['rhs']}")
    out = Outcome(rep.to_dict(), checks, "\n".join(lines))
    out.csv_text = rep.to_csv
    return out


def cmd_enum(args) -> Outcome:
    fld = field_new(args.q)
    total = gauss_binom(args.n, args.k, args.q)
    members = []
    for i, S in enumerate(enumerate_grassmannian(fld, args.n, args.k)):
        if args.limit is not None and i >= args.limit:
            break
        members.append(to_text(S))
    res = {"q": args.q, "n": args.n, "k": args.k, "count": total, "listed": len(members), "members": members}
    return Outcome(res, text="\n".join(members), csv_rows=[["subspace"]] + [[m] for m in members])


def cmd_construct(args) -> Outcome:
    kind = args.kind
    need = {"h1": ("M", "T"), "h2": ("Z",), "trivial": ("T",)}[kind]
    for name in need:
        if getattr(args, name) is None:
            raise UsageError(f"construct {kind} needs --{name}")
    if kind == "h1":
        M = _subspace(args, args.M, "--M")
        L = _subspace(args, args.L, "--L") if args.L else M
        T = _subspace(args, args.T, "--T")
        if args.t is None:
            raise UsageError("construct h1 needs --t")
        fam = construct_h1(L, M, T, args.k, args.t)
    elif kind == "h2":
        Z = _subspace(args, args.Z, "--Z")
        thr = args.threshold if args.threshold is not None else Z.dim - 1
        fam = construct_h2(Z, args.k, thr)
    else:
        fam = trivial_family(_subspace(args, args.T, "--T"), args.k)
    if args.family_out:
        save_family(fam, args.family_out)
    res = {"kind": kind, "size": len(fam), "family": fam.to_dict()}
    return Outcome(res, text=f"{kind}: {len(fam)} members" + (f" -> {args.family_out}" if args.family_out else ""))


def cmd_verify(args) -> Outcome:
    fams = [_load(p) for p in args.files]
    pred = args.predicate
    t = args.t

    def need(count: int):
        if len(fams) != count:
            raise UsageError(f"verify {pred} takes {count} family file(s), got {len(fams)}")

    if pred == "cross-t":
        r = args.r
        if len(fams) == 1:
            fams = fams * r
        elif len(fams) != r:
            raise UsageError(f"--r {r} needs {r} family files (or one, reused)")
        ok, wit = cross_intersecting(fams, t)
        res = {"predicate": pred, "t": t, "r": r, "holds": ok,
               "witness": [to_text(w) for w in wit] if wit else None}
        text = "cross-intersecting" if ok else "NOT cross-intersecting; witness " + " | ".join(res["witness"])
        return Outcome(res, [_check("cross-t", ok)], text)
    if pred == "t-intersecting":
        need(1)
        ok = is_t_intersecting(fams[0], t)
        return Outcome({"predicate": pred, "t": t, "holds": ok}, [_check(pred, ok)], f"t-intersecting: {ok}")
    if pred == "cover":
        need(1)
        if args.S is None:
            raise UsageError("verify cover needs --S")
        args.q, args.n = fams[0].q, fams[0].n
        ok = is_t_cover(_subspace(args, args.S, "--S"), fams[0], t)
        return Outcome({"predicate": pred, "t": t, "holds": ok}, [_check(pred, ok)], f"t-cover: {ok}")
    if pred == "structure":
        need(2)
        rep = check_cover_structure(fams[0], fams[1], t)
        checks = [{"name": f"{c.statement}:{c.clause}", "status": c.status} for c in rep.clauses]
        text = "\n".join(f"{c.statement:12s} {c.clause:22s} {c.status:15s} {c.detail}" for c in rep.clauses)
        return Outcome(rep.to_dict(), checks, text)
    if pred == "pushup":
        need(1)
        if args.X is None or args.S is None:
            raise UsageError("verify pushup needs --X and --S")
        args.q, args.n = fams[0].q, fams[0].n
        X, S = _subspace(args, args.X, "--X"), _subspace(args, args.S, "--S")
        try:
            res = verify_pushup(fams[0], X, S, t)
        except NoWitness as e:
            return Outcome({"predicate": pred, "holds": False, "error": str(e)}, [_check(pred, False)], str(e))
        d = {"predicate": pred, "holds": res.ratio_ok, "R": to_text(res.witness), "strong_ok": res.strong_ok,
             "size_S": res.size_s, "size_R": res.size_r, "factor": res.factor}
        return Outcome(d, [_check(pred, res.ratio_ok)], f"R = {d['R']}  |F_S|={res.size_s} <= {res.factor}*{res.size_r}")
    if pred == "size-bound":
        need(2)
        ok = verify_size_bound(fams[0], fams[1], t)
        return Outcome({"predicate": pred, "t": t, "holds": ok}, [_check(pred, ok)], f"size bound holds: {ok}")
    if pred == "b-family":
        need(2)
        d = b_family_report(fams[0], fams[1], t)
        checks = [_check(pred, d["holds"])] if d["status"] != "exploratory" else []
        return Outcome(d, checks, f"|B| = {d['size']}, bound {d['bound']}, holds={d['holds']} ({d['status']})")
    raise UsageError(f"unknown predicate {pred!r}")


def cmd_covers(args) -> Outcome:
    fam = _load(args.file)
    rep = covering_number(fam, args.t, args.max_dim)
    res = {
        "t": args.t,
        "tau": rep.tau,
        "witness": to_text(rep.witness),
        "covers_at_tau": [to_text(s) for s in rep.cover_set.members],
        "span_of_covers": to_text(rep.spanned),
        "rejected_per_dimension": {str(d): c for d, c in rep.rejected.items()},
        "certificate": rep.certificate,
    }
    return Outcome(res, text=f"tau_{args.t} = {rep.tau}; witness {res['witness']}; {rep.certificate}")


def _search_config(args) -> SearchConfig:
    if args.budget is None:
        args.budget = 10**8 if args.strategy == "exhaustive" else 2000
    return SearchConfig(q=args.q, n=args.n, k=args.k, t=args.t, r=args.r, mode=args.mode,
                        seed_size=args.seed_size, rng_seed=args.seed, iteration_budget=args.budget)


def cmd_search(args) -> Outcome:
    start = None
    if args.resume:
        prev = _load_record(args.resume)
        p = prev.provenance
        for key in ("q", "n", "k", "t", "r"):
            setattr(args, key, p[key])
        args.mode = p.get("mode", args.mode)
        start = prev.families or None
        if args.strategy != "stochastic":
            raise UsageError("--resume continues a record with the stochastic strategy")
    for key in ("q", "n", "k", "t"):
        if getattr(args, key) is None:
            raise UsageError(f"search needs --{key} (or --resume)")
    cfg = _search_config(args)
    rec = exhaustive_closed_pairs(cfg) if args.strategy == "exhaustive" else stochastic_improve(cfg, start)
    if args.record_out:
        Path(args.record_out).write_text(rec.to_json())
    checks = [_check("certificates", rec.certificates["cross_intersecting"] or not rec.families)]
    text = f"best product {rec.best_product}; sizes {[len(f) for f in rec.families]}; certificates {rec.certificates}"
    return Outcome(rec.to_dict(), checks, text)


def cmd_report(args) -> Outcome:
    rec = _load_record(args.record)
    rep = compare_to_theorem(rec, args.claim)
    d = rep.to_dict()
    text = (f"{d['claim']}: best {d['best_product']} vs claimed max {d['claim_value']} "
            f"-> {d['status']}" + (f" (structure {d['structure']})" if d["structure"] else ""))
    for note in d["notes"]:
        text += f"\n  note: {note}"
    return Outcome(d, [_check(args.claim, rep.status != "fail")], text)


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qcross", description="Cross t-intersecting families of subspaces over F_q.")
    ap.add_argument("--version", action="version", version=f"qcross {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), help="default: text for qbinom, json otherwise")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--workers", type=int, default=1)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("qbinom", parents=[common], help="Gaussian binomial [n k]_q")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.set_defaults(func=cmd_qbinom)

    p = sub.add_parser("scan", parents=[common], help="exact grid scan of the numeric inequalities")
    p.add_argument("--lemmas", default="all", help="comma-separated check names or aliases")
    p.add_argument("--q", type=_int_list, default=(2, 3, 4, 5))
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--m-max", type=int, default=40)
    p.add_argument("--n-extra", type=int, default=20, help="n runs from each check's threshold to threshold + this")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("enum", parents=[common], help="list k-subspaces of F_q^n in canonical order")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--limit", type=int)
    p.set_defaults(func=cmd_enum)

    p = sub.add_parser("construct", parents=[common], help="build H1, H2 or a trivial family")
    p.add_argument("kind", choices=("h1", "h2", "trivial"))
    for flag in ("-q", "-n", "-k"):
        p.add_argument(flag, type=int, required=True)
    p.add_argument("-t", type=int)
    p.add_argument("--M")
    p.add_argument("--L")
    p.add_argument("--T")
    p.add_argument("--Z")
    p.add_argument("--threshold", type=int)
    p.add_argument("--family-out", help="also save the family file here")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", parents=[common], help="check a predicate on family files")
    p.add_argument("predicate", choices=("cross-t", "t-intersecting", "cover", "structure", "pushup", "size-bound", "b-family"))
    p.add_argument("files", nargs="+")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--S")
    p.add_argument("--X")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("covers", parents=[common], help="t-covering number with certificate")
    p.add_argument("file")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--max-dim", type=int)
    p.set_defaults(func=cmd_covers)

    p = sub.add_parser("search", parents=[common], help="closure-based search for large products")
    for flag in ("-q", "-n", "-k", "-t"):
        p.add_argument(flag, type=int)
    p.add_argument("-r", type=int, default=2)
    p.add_argument("--mode", choices=MODES, default="unconstrained")
    p.add_argument("--strategy", choices=("exhaustive", "stochastic"), default="exhaustive")
    p.add_argument("--seed-size", type=int, default=2)
    p.add_argument("--budget", type=int, help="iteration budget (default: 10^8 exhaustive, 2000 stochastic)")
    p.add_argument("--resume", help="record file to continue from")
    p.add_argument("--record-out", help="also save the search record here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("report", parents=[common], help="compare a search record with an extremal claim")
    p.add_argument("record")
    p.add_argument("--claim", choices=CLAIMS, required=True)
    p.set_defaults(func=cmd_report)
    return ap


def _provenance(args) -> dict:
    config = {k: (list(v) if isinstance(v, tuple) else v) for k, v in sorted(vars(args).items())
              if k not in ("func", "format", "out")}
    return {
        "tool": {"name": "qcross", "version": __version__},
        "command": args.command,
        "config": config,
        "seed": args.seed,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }


def _render(args, prov: dict, out: Outcome) -> tuple[str, str]:
    """Return (stdout payload, stderr payload)."""
    if args.format == "json":
        return json.dumps({"provenance": prov, "result": out.result}, indent=1, sort_keys=True) + "\n", ""
    if args.format == "csv":
        header = [f"{k}: {json.dumps(v, sort_keys=True)}" for k, v in prov.items()]
        if hasattr(out, "csv_text"):
            return out.csv_text(header), ""
        buf = io.StringIO()
        for line in header:
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        rows = out.csv_rows or [["key", "value"]] + [[k, json.dumps(v, sort_keys=True)] for k, v in sorted(out.result.items())]
        w.writerows(rows)
        return buf.getvalue(), ""
    return (out.text or json.dumps(out.result, indent=1)) + "\n", json.dumps(prov, sort_keys=True) + "\n"


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command == "qbinom" else "json"
    try:
        out = args.func(args)
    except UsageError as e:
        print(f"qcross {args.command}: {e}", file=sys.stderr)
        return 2
    except QCrossError as e:
        print(f"qcross {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    payload, err = _render(args, _provenance(args), out)
    if args.out:
        Path(args.out).write_text(payload)
    else:
        sys.stdout.write(payload)
    if err:
        sys.stderr.write(err)
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
