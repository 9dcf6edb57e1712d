"""Command-line interface.  Every command prints one JSON document (schema 1)
unless ``--table`` asks for a plain-text table.

Exit codes: 0 success, 2 invalid input, 3 unknown verdict under
``--require-decision``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import graphkit, groupres, liecrit, sl2
from .koszul import DEFAULT_QMAX, TwoFormSubspace, w_dims_scan
from .resonance import UNKNOWN, Covector, in_resonance, resonance_partner, vanishing_decision
from .rootsys import weight_to_json
from .scan import run_scan

SCHEMA = 1
EXIT_INVALID = 2
EXIT_UNKNOWN = 3


class InvalidInput(Exception):
    pass


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def _load_K(path: str) -> TwoFormSubspace:
    return TwoFormSubspace.from_json(_load_json(path))


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(h) for h in headers]] + [["" if c is None else str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(headers))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _dims_rows(dims: dict) -> list[list]:
    return [[q, d] for q, d in enumerate(dims["dims"])]


def _decision_text(d: dict) -> str:
    parts = [d["verdict"]]
    if "degree" in d:
        parts.append(f"degree {d['degree']}")
    if "reason" in d:
        parts.append(d["reason"])
    if "witness" in d:
        a, b = d["witness"]["a"]["coords"], d["witness"]["b"]["coords"]
        parts.append(f"a=({', '.join(a)}) b=({', '.join(b)})")
    if "cap" in d:
        parts.append(f"cap {d['cap']}")
    return "; ".join(parts)


# --- commands --------------------------------------------------------------


def cmd_koszul_dims(args):
    K = _load_K(args.file)
    dims = w_dims_scan(K, args.qmax).to_json()
    out = {"n": K.n, "dim_K": K.dim, **dims}
    table = _table(["q", "dim W_q"], _dims_rows(dims))
    return out, table


def cmd_resonance_decide(args):
    K = _load_K(args.file)
    d = vanishing_decision(K, args.qmax).to_json()
    return {"n": K.n, "dim_K": K.dim, "decision": d}, _decision_text(d)


def cmd_resonance_member(args):
    K = _load_K(args.file)
    coords = [c for c in args.covector.split(",") if c.strip()]
    a = Covector(coords)
    member = in_resonance(K, a)
    out = {"covector": a.to_json(), "in_resonance": member}
    if member:
        out["partner"] = resonance_partner(K, a).to_json()
    return out, f"in resonance: {member}"


def _lie_report(p: liecrit.LieResonanceProblem) -> dict:
    beta = liecrit.corollary_obstruction(p)
    return {
        "problem": p.to_json(),
        "vanishes_by_theorem": liecrit.vanishes_by_theorem(p),
        "vanishes_by_corollary": beta is None,
        "obstruction": None if beta is None else weight_to_json(p.rs, beta),
        "decision": liecrit.lie_decision(p).to_json(),
    }


def _lie_table(rep: dict) -> str:
    return _table(
        ["system", "lambda*", "theorem", "corollary", "obstruction"],
        [[
            f"{rep['problem']['family']}{rep['problem']['rank']}",
            rep["problem"]["lambda_star"],
            rep["vanishes_by_theorem"],
            rep["vanishes_by_corollary"],
            None if rep["obstruction"] is None else rep["obstruction"]["coords"],
        ]],
    )


def cmd_lie_criterion(args):
    p = liecrit.LieResonanceProblem.from_json(_load_json(args.file))
    rep = _lie_report(p)
    return rep, _lie_table(rep)


def cmd_lie_preset(args):
    sizes = args.size or list(range(3, 13))
    reports = []
    for s in sizes:
        rep = _lie_report(liecrit.PRESETS[args.name](s))
        rep["size"] = s
        reports.append(rep)
    table = _table(
        ["size", "theorem", "corollary"],
        [[r["size"], r["vanishes_by_theorem"], r["vanishes_by_corollary"]] for r in reports],
    )
    return {"preset": args.name, "reports": reports}, table


def cmd_sl2_decompose(args):
    hw = sl2.clebsch_gordan_wedge(args.n)
    out = {
        "n": args.n,
        "summands": [{"index": j, "highest_weight": w, "dim": w + 1} for j, w in enumerate(hw)],
        "dim_wedge2": (args.n + 1) * args.n // 2,
    }
    table = _table(["j", "highest weight", "dim"], [[j, w, w + 1] for j, w in enumerate(hw)])
    return out, table


def _sl2_report(n: int, selected, q_max: int) -> dict:
    sel = sl2.SummandSelection(n, selected)
    K = sl2.submodule_from_summands(sel)
    d = vanishing_decision(K, q_max)
    out = {
        "n": n,
        "selected": sorted(sel.selected),
        "dim_K": K.dim,
        "findim_criterion": sl2.findim_criterion(sel),
        "decision": d.to_json(),
    }
    if d.is_vanishing:
        out.update(w_dims_scan(K, q_max).to_json())
    return out


def cmd_sl2_weyman(args):
    out = _sl2_report(args.n, {0}, args.qmax)
    dims = {"dims": out.get("dims", []), "vanished_at": out.get("vanished_at")}
    return out, _table(["q", "dim W_q(n)"], _dims_rows(dims))


def cmd_sl2_submodule(args):
    try:
        selected = [int(x) for x in args.summands.split(",") if x.strip()]
    except ValueError as exc:
        raise InvalidInput(f"bad summand list {args.summands!r}") from exc
    out = _sl2_report(args.n, selected, args.qmax)
    text = _decision_text(out["decision"])
    if "dims" in out:
        text += "\n" + _table(["q", "dim W_q"], _dims_rows(out))
    return out, text


def cmd_graph_dims(args):
    g = graphkit.Graph.read(args.file)
    cut = graphkit.cut_polynomial(g)
    dims = graphkit.hilbert_dims_from_graph(g, args.qmax).to_json()
    out = {
        "vertices": g.vertex_count,
        "edges": [list(e) for e in g.sorted_edges()],
        "cut_polynomial": {str(j): c for j, c in cut.items()},
        **dims,
    }
    if args.check:
        direct = w_dims_scan(graphkit.monomial_K(g), args.qmax).to_json()
        out["direct"] = direct
        out["agree"] = direct == dims
    return out, _table(["q", "dim W_q"], _dims_rows(dims))


def cmd_group_resonance(args):
    p = groupres.read_presentation(args.file)
    rep = groupres.group_resonance(p, args.qmax).to_json()
    text = "\n".join(
        [
            f"b1 = {rep['b1']}, dim K = {rep['dim_K']}",
            _decision_text(rep["decision"]),
            f"deficiency bound: {rep['deficiency_bound']}",
            _table(["q", "dim W_q"], _dims_rows(rep["dims"])),
        ]
    )
    return rep, text


def cmd_scan(args):
    records = run_scan(args.n, args.m, args.samples, args.seed, args.qmax, jobs=args.jobs)
    out = {
        "n": args.n,
        "m": args.m,
        "samples": args.samples,
        "seed": args.seed,
        "qmax": args.qmax,
        "records": [r.to_json() for r in records],
    }
    table = _table(
        ["sample", "verdict", "degree", "reason"],
        [
            [r.sample_index, r.decision.verdict, r.min_vanishing_degree, r.decision.reason]
            for r in records
        ],
    )
    return out, table


# --- parser ----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--table", action="store_true", help="print a human-readable table")
    common.add_argument(
        "--require-decision",
        action="store_true",
        help="exit with status 3 when a verdict is unknown",
    )
    qmax = argparse.ArgumentParser(add_help=False)
    qmax.add_argument("--qmax", type=int, default=DEFAULT_QMAX, help="degree cap (default 10)")

    parser = argparse.ArgumentParser(
        prog="koszulres",
        description="Koszul modules and resonance varieties in exact arithmetic",
    )
    top = parser.add_subparsers(dest="group", required=True)

    kz = top.add_parser("koszul").add_subparsers(dest="cmd", required=True)
    p = kz.add_parser("dims", parents=[common, qmax], help="graded dimensions of W(V,K)")
    p.add_argument("--file", required=True, help="TwoFormSubspace JSON")
    p.set_defaults(func=cmd_koszul_dims)

    rs = top.add_parser("resonance").add_subparsers(dest="cmd", required=True)
    p = rs.add_parser("decide", parents=[common, qmax], help="decide whether R(V,K) = {0}")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_resonance_decide)
    p = rs.add_parser("member", parents=[common], help="test a covector for membership")
    p.add_argument("--file", required=True)
    p.add_argument("--covector", required=True, help="comma-separated rationals")
    p.set_defaults(func=cmd_resonance_member)

    lie = top.add_parser("lie").add_subparsers(dest="cmd", required=True)
    p = lie.add_parser("criterion", parents=[common], help="weight criteria for a problem file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_lie_criterion)
    p = lie.add_parser("preset", parents=[common], help="Torelli presets")
    p.add_argument("name", choices=sorted(liecrit.PRESETS))
    p.add_argument("--size", type=int, action="append", help="n or g (repeatable; default 3..12)")
    p.set_defaults(func=cmd_lie_preset)

    s2 = top.add_parser("sl2").add_subparsers(dest="cmd", required=True)
    p = s2.add_parser("decompose", parents=[common], help="summands of Λ²V_n")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_sl2_decompose)
    p = s2.add_parser("weyman", parents=[common, qmax], help="Weyman module W(n)")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_sl2_weyman)
    p = s2.add_parser("submodule", parents=[common, qmax], help="K from chosen summands")
    p.add_argument("n", type=int)
    p.add_argument("--summands", required=True, help="comma-separated indices j")
    p.set_defaults(func=cmd_sl2_submodule)

    gr = top.add_parser("graph").add_subparsers(dest="cmd", required=True)
    p = gr.add_parser("dims", parents=[common, qmax], help="Hilbert series from the cut polynomial")
    p.add_argument("--file", required=True)
    p.add_argument("--check", action="store_true", help="also compute the dims directly")
    p.set_defaults(func=cmd_graph_dims)

    gp = top.add_parser("group").add_subparsers(dest="cmd", required=True)
    p = gp.add_parser("resonance", parents=[common, qmax], help="R(G) of a commutator-relators group")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_group_resonance)

    p = top.add_parser("scan", parents=[common, qmax], help="random subspaces of Λ²V")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_scan)
    return parser


def _has_unknown(obj) -> bool:
    if isinstance(obj, dict):
        if obj.get("verdict") == UNKNOWN:
            return True
        return any(_has_unknown(v) for v in obj.values())
    if isinstance(obj, list):
        return any(_has_unknown(v) for v in obj)
    return False


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "qmax", 0) < 0:
        parser.error("--qmax must be non-negative")
    try:
        out, table = args.func(args)
    except (InvalidInput, ValueError, IndexError, KeyError, TypeError, OSError) as exc:
        print(f"koszulres: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    doc = {"schema": SCHEMA, "command": f"{args.group} {getattr(args, 'cmd', '')}".strip(), **out}
    if args.table:
        print(table)
    else:
        print(json.dumps(doc, indent=2))
    if args.require_decision and _has_unknown(doc):
        return EXIT_UNKNOWN
    return 0


if __name__ == "__main__":
    sys.exit(main())
