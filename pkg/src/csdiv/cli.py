"""Command-line front end: ``csdiv invariants|classify|equiv|dual|enumerate``.

Exit codes: 0 success, 2 parse error, 3 precondition error, 4 inconclusive.
Positions in rendered traces are 1-based.
"""
from __future__ import annotations

import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import click

from .classify import (
    anticanonical_search,
    classify_fillability,
    rigidity_report,
    strictly_semidefinite_report,
)
from .convexity import gs_feasible, trichotomy
from .divisor import (
    Divisor,
    canonical_tuple,
    charge,
    format_divisor,
    nonnegative_count,
    parse_divisor,
    self_intersection_square,
)
from .equiv import SearchBudget, decide_equivalence, default_budget
from .errors import DivisorSyntaxError, PreconditionError
from .fillings import cap_invariants, dual_cusp, minimal_filling_homology, stein_geography, CuspCycle
from .lattice import boundary_h1, divisor_signature
from .sl2z import boundary_class, negative_boundary_class

EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INCONCLUSIVE = 4


# ---------------------------------------------------------------------------
# reports


def invariants_report(d: Divisor) -> dict:
    sig = divisor_signature(d)
    return {
        "input": format_divisor(d),
        "invariants": {
            "q": charge(d),
            "D2": self_intersection_square(d),
            "r": d.r,
            "r_nonneg": nonnegative_count(d),
            "signature": sig.to_json(),
            "H1": boundary_h1(d).to_json(),
            "bundle_class": boundary_class(d).to_json(),
            "negative_bundle_class": negative_boundary_class(d).to_json(),
        },
    }


def classify_report(d: Divisor, budget: SearchBudget | None = None) -> dict:
    report = invariants_report(d)
    kind = trichotomy(d)
    verdicts: dict = {"trichotomy": kind}
    fillings: dict = {}
    if kind == "concave":
        verdicts["gs"] = gs_feasible(d, "concave").to_json()
        f = classify_fillability(d, budget)
        verdicts["fillability"] = f.to_json()
        verdicts["rigidity"] = rigidity_report(d, f)
        if f.status == "fillable":
            fillings["minimal_filling"] = minimal_filling_homology(d, f).to_json()
            if f.trace is not None and len(f.trace):
                report["traces"] = {"to_representative": f.trace.render()}
    elif kind == "convex":
        verdicts["gs"] = gs_feasible(d, "convex").to_json()
        ac = anticanonical_search(d, budget)
        verdicts["anti_canonical"] = ac.to_json()
        rig = rigidity_report(d, budget=budget)
        verdicts["rigidity"] = rig
        fillings["cap"] = cap_invariants(d).to_json()
        fillings["stein_geography"] = stein_geography(
            d, anti_canonical={"anti_canonical": True, "not_anti_canonical": False}.get(ac.status)
        ).to_json()
        if ac.witness is not None:
            report["traces"] = {"from_minimal_model": ac.witness.render()}
    else:
        ac = strictly_semidefinite_report(d)
        verdicts["anti_canonical"] = ac.to_json()
        verdicts["rigidity"] = rigidity_report(d)
    report["verdicts"] = verdicts
    if fillings:
        report["fillings"] = fillings
    return report


def _report_inconclusive(report: dict) -> bool:
    v = report.get("verdicts", {})
    return v.get("fillability", {}).get("status") == "inconclusive" or v.get(
        "anti_canonical", {}
    ).get("status") == "inconclusive"


# ---------------------------------------------------------------------------
# text rendering


def _text_invariants(report: dict) -> list[str]:
    inv = report["invariants"]
    sig = inv["signature"]
    h1 = inv["H1"]
    group = " + ".join(
        (["Z" if h1["free_rank"] == 1 else f"Z^{h1['free_rank']}"] if h1["free_rank"] else [])
        + [f"Z/{t}" for t in h1["torsion"]]
    ) or "0"
    neg = inv["negative_bundle_class"]
    return [
        f"divisor      {report['input']}",
        f"q            {inv['q']}",
        f"D^2          {inv['D2']}",
        f"r            {inv['r']}  (non-negative entries: {inv['r_nonneg']})",
        f"signature    b+={sig['b_plus']} b-={sig['b_minus']} b0={sig['b_zero']}",
        f"H1(Y_D)      {group}",
        f"-Y_D class   {neg['kind']} {neg['data']}",
    ]


def _text_classify(report: dict) -> list[str]:
    lines = _text_invariants(report)
    v = report["verdicts"]
    lines.append(f"trichotomy   {v['trichotomy']}")
    if "fillability" in v:
        f = v["fillability"]
        fam = f" family {f['family']}" if f.get("family") else ""
        rep = f" via {tuple(f['representative'])}" if f.get("representative") else ""
        lines.append(f"fillability  {f['status']} ({f['reason']}){fam}{rep}")
        if f.get("detail"):
            lines.append(f"             {f['detail']}")
    if "anti_canonical" in v:
        ac = v["anti_canonical"]
        extra = f" ({ac['obstruction']})" if ac.get("obstruction") else ""
        lines.append(f"anti-canon.  {ac['status']}{extra}")
    rig = v.get("rigidity", {})
    flags = ", ".join(f"{k}={rig[k]}" for k in ("symplectically_embeddable", "anti_canonical", "rigid") if k in rig)
    if flags:
        lines.append(f"rigidity     {flags}")
    for note in rig.get("notes", []):
        lines.append(f"note         {note}")
    fill = report.get("fillings", {})
    if "minimal_filling" in fill:
        h = fill["minimal_filling"]
        lines.append(
            f"filling      b1={h['b1']} b2={h['b2']} b-={h['b_minus']} euler={h['euler']} sigma={h['sigma']} c1=0"
        )
    if "stein_geography" in fill:
        for c in fill["stein_geography"]["cases"]:
            bm = "" if c["b_minus"] is None else f" b-={c['b_minus']}"
            lines.append(
                f"stein case {c['case']} (b+,b0,b1)=({c['b_plus']},{c['b_zero']},{c['b1']}){bm}"
            )
    for name, tr in report.get("traces", {}).items():
        lines.append(f"trace        {tr}")
    return lines


def _emit(ctx_format: str, obj: dict, text: Callable[[dict], list[str]]) -> None:
    if ctx_format == "json":
        click.echo(json.dumps(obj, sort_keys=True))
    else:
        click.echo("\n".join(text(obj)))


# ---------------------------------------------------------------------------
# argument handling


def _parse(text: str) -> Divisor:
    try:
        return parse_divisor(text)
    except DivisorSyntaxError as exc:
        click.echo(f"parse error: {exc}", err=True)
        click.echo(f"  {text}\n  {' ' * exc.pos}^", err=True)
        sys.exit(EXIT_PARSE)


def _budget(divisors: list[Divisor], max_nodes, max_length, min_entry) -> SearchBudget | None:
    if max_nodes is None and max_length is None and min_entry is None:
        return None
    base = default_budget(divisors[0], divisors[-1])
    return SearchBudget(
        max_length=base.max_length if max_length is None else max_length,
        min_entry=base.min_entry if min_entry is None else min_entry,
        max_nodes=base.max_nodes if max_nodes is None else max_nodes,
    )


def _format_option(f):
    return click.option(
        "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True,
        help="Output format.",
    )(f)


def _budget_options(f):
    f = click.option("--min-entry", type=int, envvar="MIN_ENTRY", help="Lowest entry the search may create.")(f)
    f = click.option("--max-length", type=int, envvar="MAX_LENGTH", help="Longest divisor the search may visit.")(f)
    f = click.option("--max-bfs-nodes", type=int, envvar="MAX_BFS_NODES", help="Search node budget.")(f)
    return f


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except PreconditionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PRECONDITION)


@click.group(cls=_Group)
def main():
    """Invariants, equivalence and fillability of circular spherical divisors."""


@main.command()
@click.argument("divisor")
@_format_option
def invariants(divisor, fmt):
    """Charge, signature, H1 and bundle class of DIVISOR, e.g. "(1,-2,-3)"."""
    d = _parse(divisor)
    _emit(fmt, invariants_report(d), _text_invariants)


@main.command()
@click.argument("divisor")
@_format_option
@_budget_options
def classify(divisor, fmt, max_bfs_nodes, max_length, min_entry):
    """Full report: trichotomy, fillability, anti-canonicity, fillings."""
    d = _parse(divisor)
    budget = _budget([d], max_bfs_nodes, max_length, min_entry)
    report = classify_report(d, budget)
    _emit(fmt, report, _text_classify)
    if _report_inconclusive(report):
        sys.exit(EXIT_INCONCLUSIVE)


@main.command()
@click.argument("first")
@click.argument("second")
@_format_option
@_budget_options
def equiv(first, second, fmt, max_bfs_nodes, max_length, min_entry):
    """Decide whether FIRST and SECOND are toric equivalent."""
    d1, d2 = _parse(first), _parse(second)
    budget = _budget([d1, d2], max_bfs_nodes, max_length, min_entry)
    verdict = decide_equivalence(d1, d2, budget)
    obj = {"first": format_divisor(d1), "second": format_divisor(d2), **verdict.to_json()}
    if verdict.trace is not None:
        obj["rendered"] = verdict.trace.render()

    def text(o):
        lines = [f"{o['first']} vs {o['second']}: {o['kind']}"]
        if "rendered" in o:
            lines.append(o["rendered"])
        if "witness" in o:
            w = o["witness"]
            lines.append(f"differs in {w['invariant']}: {w['left']} vs {w['right']}")
        if o["kind"] == "inconclusive":
            lines.append(f"search budget exhausted after {o['nodes']} nodes: {o['budget']}")
        return lines

    _emit(fmt, obj, text)
    if verdict.kind == "inconclusive":
        sys.exit(EXIT_INCONCLUSIVE)


@main.command()
@click.argument("cycle")
@_format_option
def dual(cycle, fmt):
    """Dual cusp cycle of CYCLE (all entries <= -2, some <= -3)."""
    d = _parse_cycle(cycle)
    out = dual_cusp(d)
    obj = {"input": list(d.entries), "dual": out.to_json()}
    _emit(fmt, obj, lambda o: [str(out)])


def _parse_cycle(text: str) -> CuspCycle:
    # cusp cycles may have length 1, which the divisor grammar rejects
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")") and "," not in stripped:
        try:
            return CuspCycle([int(stripped[1:-1])])
        except ValueError:
            pass
    return CuspCycle(_parse(text).entries)


def _entry_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = text.split("..")
        lo_i, hi_i = int(lo), int(hi)
    except ValueError:
        raise click.BadParameter(f"expected a..b, got {text!r}")
    if lo_i > hi_i:
        raise click.BadParameter(f"empty range {text!r}")
    return lo_i, hi_i


def canonical_divisors(max_length: int, lo: int, hi: int, min_length: int = 2):
    """Every canonical divisor with length in [min_length, max_length] and entries in [lo, hi], sorted."""
    out = []
    for r in range(min_length, max_length + 1):
        for t in itertools.product(range(lo, hi + 1), repeat=r):
            if canonical_tuple(t) == t:
                out.append(t)
    out.sort()
    return out


def _enumerate_one(args) -> str:
    t, invariants_only = args
    d = Divisor(t)
    report = invariants_report(d) if invariants_only else classify_report(d)
    return json.dumps(report, sort_keys=True)


@main.command(name="enumerate")
@click.option("--max-length", type=int, required=True, help="Longest divisor to list.")
@click.option("--min-length", type=int, default=2, show_default=True)
@click.option("--entries", "entries", required=True, help="Entry range a..b, e.g. -4..2.")
@click.option("--output", type=click.Path(dir_okay=False, writable=True), default="-", show_default=True)
@click.option("--invariants-only", is_flag=True, help="Skip the classification verdicts.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes.")
def enumerate_cmd(max_length, min_length, entries, output, invariants_only, jobs):
    """Write one JSON report per canonical divisor, sorted by canonical form."""
    lo, hi = _entry_range(entries)
    if min_length < 2 or max_length < min_length:
        raise click.BadParameter("need 2 <= min-length <= max-length")
    items = [(t, invariants_only) for t in canonical_divisors(max_length, lo, hi, min_length)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            lines = list(pool.map(_enumerate_one, items, chunksize=16))
    else:
        lines = [_enumerate_one(x) for x in items]
    with click.open_file(output, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line + "\n")


if __name__ == "__main__":
    main()
