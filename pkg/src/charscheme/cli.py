"""Command-line front end.

    python3 -m charscheme analyze --seifert -1/2,-1/3,1/5
    python3 -m charscheme verify-suite --p-max 3 --q-max 1

Exit status: 0 when every cross-check passes, 2 on an anomaly or failed check,
1 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .presentation import SeifertParams, parse_seifert

EXIT_OK, EXIT_USAGE, EXIT_ANOMALY = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    seifert: Optional[SeifertParams] = None
    word: Optional[str] = None
    source: str = "hardcoded"
    order: str = "degrevlex"
    fmt: str = "text"
    skip_groebner: bool = False
    dim: bool = False
    p_max: int = 0
    q_max: int = 0
    budget: Optional[int] = None
    output: Optional[str] = None


def _seifert(text: str) -> SeifertParams:
    parts = [t.strip() for t in text.split(",")]
    if len(parts) != 3:
        raise UsageError(f"expected three fibers a1/b1,a2/b2,a3/b3, got {len(parts)}")
    try:
        s = parse_seifert(text)
    except ValueError as e:
        raise UsageError(str(e)) from None
    return s


def _check_euler(text: str) -> None:
    from fractions import Fraction

    total = sum(Fraction(t.strip()) for t in text.split(","))
    if total == 0:
        raise UsageError("Euler number must be nonzero: e(M) = 0 gives infinitely many characters")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="charscheme", description="SL2(C) character schemes of small Seifert manifolds")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seifert=True):
        if seifert:
            sp.add_argument("--seifert", required=True, help="a1/b1,a2/b2,a3/b3")
        sp.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
        sp.add_argument("--budget", type=int, default=None, help="Groebner pair budget")
        sp.add_argument("--output", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("trace", help="trace polynomial of a word in h, c1, c2")
    sp.add_argument("--word", required=True)
    common(sp, seifert=False)
    sp = sub.add_parser("ideal", help="generators of the character scheme ideal")
    common(sp)
    sp.add_argument("--source", choices=("hardcoded", "generic"), default="hardcoded")
    sp = sub.add_parser("census", help="closed points and the count formula")
    common(sp)
    sp = sub.add_parser("groebner", help="Groebner basis of the ideal")
    common(sp)
    sp.add_argument("--source", choices=("hardcoded", "generic"), default="hardcoded")
    sp.add_argument("--order", choices=("degrevlex", "deglex", "lex"), default="degrevlex")
    sp.add_argument("--dim", action="store_true", help="print only the quotient dimension")
    sp = sub.add_parser("analyze", help="full scheme report")
    common(sp)
    sp.add_argument("--skip-groebner", action="store_true")
    sp = sub.add_parser("verify-suite", help="scheme reports over a parameter sweep")
    sp.add_argument("--p-max", type=int, required=True)
    sp.add_argument("--q-max", type=int, required=True)
    sp.add_argument("--skip-groebner", action="store_true")
    common(sp, seifert=False)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    # "--seifert -1/2,..." would be read by argparse as an option
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--seifert", "--word") and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def parse_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(_join_negative_values(list(argv)))
    cfg = RunConfig(command=ns.command, fmt=ns.fmt, budget=ns.budget, output=ns.output)
    if hasattr(ns, "seifert"):
        cfg.seifert = _seifert(ns.seifert)
        _check_euler(ns.seifert)
    cfg.word = getattr(ns, "word", None)
    cfg.source = getattr(ns, "source", "hardcoded")
    cfg.order = getattr(ns, "order", "degrevlex")
    cfg.dim = getattr(ns, "dim", False)
    cfg.skip_groebner = getattr(ns, "skip_groebner", False)
    if ns.command == "verify-suite":
        if ns.p_max < 2 or ns.q_max < 1:
            raise UsageError("empty sweep: need --p-max >= 2 and --q-max >= 1")
        cfg.p_max, cfg.q_max = ns.p_max, ns.q_max
    if cfg.budget is not None and cfg.budget < 1:
        raise UsageError("--budget must be positive")
    return cfg


# --------------------------------------------------------------------------
# text rendering


def _fmt_cyclo(c) -> str:
    z = complex(c)
    return f"{z.real:+.6f}{z.imag:+.6f}i"


def census_text(cen) -> str:
    s = cen.params
    lines = [
        f"M = S^2({s.label()})  internal p={list(s.p)} q={list(s.q)}  e = {s.euler}",
        f"H1 invariant factors {cen.homology.invariant_factors}  |H1| = {cen.homology.order}"
        f"  |H1(Z/2)| = {cen.homology.order_mod2}",
        f"abelian {len(cen.abelian)}  irreducible {len(cen.irreducible)}  x_M = {cen.x_M}",
        f"count_formula_lhs = {cen.count_formula_lhs}  count_formula_rhs = {cen.count_formula_rhs}"
        f"  count_formula_rhs_symmetric = {cen.count_formula_rhs_symmetric}",
    ]
    for pt in cen.points:
        tag = pt.kind + (" exceptional" if pt.exceptional else "")
        lines.append(f"  [{tag}] N={pt.N} " + " ".join(_fmt_cyclo(c) for c in pt.coords))
    return "\n".join(lines)


def report_text(rep) -> str:
    lines = [census_text(rep.census).split("\n", 1)[0]]
    row = rep.summary_row()
    lines.append(
        f"|H1| = {row['H1']}  |X(M)| = {row['X']}  x_M = {row['x_M']}  dim = {row['dim']}"
        f"  ({rep.groebner_status})  reduced = {row['reduced']}"
    )
    lines.append(f"multiplicity_sum = {rep.multiplicity_sum}  dim_formula = {rep.dim_formula}"
                 f"  dim_formula_symmetric = {rep.dim_formula_symmetric}")
    for k, v in rep.checks.items():
        lines.append(f"  {'PASS' if v else 'FAIL'} {k}")
    for tr in rep.points:
        if tr.point.exceptional or tr.anomaly:
            lines.append(f"  exceptional point N={tr.point.N}: rank {tr.jacobian_rank}, "
                         f"obstruction solvable {tr.obstruction_solvable}, multiplicity {tr.multiplicity}"
                         + (f", ANOMALY {tr.anomaly}" if tr.anomaly else ""))
    return "\n".join(lines)


SUMMARY_COLUMNS = ("params", "H1", "X", "x_M", "dim", "reduced", "status")


def summary_table(rows: list[dict]) -> str:
    head = ["params", "|H1|", "|X(M)|", "x_M", "dim C[X]", "reduced?", "status"]
    body = [[str(r[c]) for c in SUMMARY_COLUMNS] for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h) for i, h in enumerate(head)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return "\n".join([fmt.format(*head)] + [fmt.format(*b) for b in body])


# --------------------------------------------------------------------------


def _emit(cfg: RunConfig, text: str, data) -> None:
    out = json.dumps(data, indent=2, sort_keys=True) if cfg.fmt == "json" else text
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def run(cfg: RunConfig) -> int:
    from .analysis import scheme_report
    from .characters import census
    from .groebner import GroebnerBudgetExceeded, groebner_compute, quotient_dimension
    from .presentation import build_ideal
    from .trace import trace_reduce

    if cfg.command == "trace":
        try:
            p = trace_reduce(cfg.word)
        except ValueError as e:
            raise UsageError(str(e)) from None
        _emit(cfg, p.render(), {"word": cfg.word, "trace": p.render()})
        return EXIT_OK
    if cfg.command == "ideal":
        ideal = build_ideal(cfg.seifert, cfg.source)
        text = "\n".join(f"{g.name()}: {g.poly.render()}" for g in ideal.generators)
        _emit(cfg, text, ideal.to_json())
        return EXIT_OK
    if cfg.command == "census":
        cen = census(cfg.seifert)
        _emit(cfg, census_text(cen), cen.to_json())
        return EXIT_OK
    if cfg.command == "groebner":
        try:
            gb = groebner_compute(build_ideal(cfg.seifert, cfg.source), order=cfg.order, budget=cfg.budget)
        except GroebnerBudgetExceeded as e:
            print(f"groebner: {e}", file=sys.stderr)
            return EXIT_ANOMALY
        d = quotient_dimension(gb)
        dim = None if d == float("inf") else int(d)
        data = {"params": cfg.seifert.to_json(), "order": cfg.order, "dim": dim,
                "basis": [] if cfg.dim else [p.render(cfg.order) for p in gb.basis]}
        text = f"dim = {dim}" if cfg.dim else "\n".join(p.render(cfg.order) for p in gb.basis) + f"\ndim = {dim}"
        _emit(cfg, text, data)
        return EXIT_OK
    if cfg.command == "analyze":
        rep = scheme_report(cfg.seifert, run_groebner=not cfg.skip_groebner, budget=cfg.budget)
        _emit(cfg, report_text(rep), rep.to_json())
        return EXIT_OK if rep.passed else EXIT_ANOMALY
    if cfg.command == "verify-suite":
        return run_verify_suite(cfg)
    raise UsageError(f"unknown command {cfg.command}")  # pragma: no cover


def run_verify_suite(cfg: RunConfig) -> int:
    from .analysis import scheme_report
    from .suite import sweep

    rows = []
    failed = 0
    for s in sweep(cfg.p_max, cfg.q_max):
        try:
            rep = scheme_report(s, run_groebner=not cfg.skip_groebner, budget=cfg.budget)
            row = rep.summary_row()
            bad = [k for k, v in rep.checks.items() if not v]
            if rep.anomaly:
                bad.append("anomaly")
            row["status"] = "pass" if not bad else "FAIL:" + ",".join(bad)
        except Exception as e:  # recorded, the sweep goes on
            row = {"params": s.label(), "H1": None, "X": None, "x_M": None, "dim": None,
                   "reduced": None, "status": f"ERROR:{type(e).__name__}:{e}"}
        failed += row["status"] != "pass"
        rows.append(row)
    text = summary_table(rows) + f"\n{len(rows) - failed}/{len(rows)} manifolds pass"
    _emit(cfg, text, {"p_max": cfg.p_max, "q_max": cfg.q_max, "rows": rows, "failed": failed})
    return EXIT_OK if failed == 0 else EXIT_ANOMALY


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
        return run(cfg)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
