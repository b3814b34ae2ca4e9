"""Command-line entry point: ``mcturan <command> ...``.

Exit codes: 0 definitive answer, 2 budget exhausted (interval answer),
1 usage or ingest error. Rationals are printed as "p/q" strings.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import atlas
from .classifier import bounds_report, classify, exact_turan, pq
from .hypercore import CapExceeded, Hypergraph, HypergraphError
from .morphisms import chromatic_number, copies_through, enumerate_copies, find_homomorphism
from .packing import default_threads, fractional_packing, integral_packing
from .rainbow import (
    CopyFamily,
    count_non_rainbow_copies,
    count_rainbow_copies,
    exact_multicolor_turan,
    find_rainbow_copy,
)

BUDGET_ENV = "MCTURAN_NODE_BUDGET"
CSV_COLUMNS = ("n", "ex_turan", "upper13_pq", "lower13", "exF_exact_or_interval", "verdict")
EXIT_OK, EXIT_USAGE, EXIT_INTERVAL = 0, 1, 2


class IngestError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunManifest:
    command: str
    inputs: dict[str, str]
    params: dict
    budgets: dict
    result: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def to_dict(self) -> dict:
        return asdict(self)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise IngestError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def load_hypergraph(path: str) -> Hypergraph:
    data = _read_json(path)
    try:
        return Hypergraph.from_dict(data)
    except HypergraphError as exc:
        raise IngestError(f"{path}: {exc}") from None


def load_family(path: str) -> CopyFamily:
    data = _read_json(path)
    try:
        return CopyFamily.from_dict(data)
    except HypergraphError as exc:
        raise IngestError(f"{path}: {exc}") from None


def _digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _budget(args):
    if getattr(args, "node_budget", None) is not None:
        return args.node_budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            val = int(env)
        except ValueError:
            raise IngestError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
        if val < 1:
            raise IngestError(f"{BUDGET_ENV} must be positive")
        return val
    return None


def _positive_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {val}")
    return val


def _nonneg_int(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if val < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {val}")
    return val


def _positive_float(text: str) -> float:
    try:
        val = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number of seconds, got {text!r}") from None
    if val <= 0:
        raise argparse.ArgumentTypeError("time budget must be positive")
    return val


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _n_range(text: str) -> list[int]:
    if ":" in text:
        a, _, b = text.partition(":")
        try:
            lo, hi = int(a), int(b)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected N or A:B, got {text!r}") from None
        if lo < 0 or hi < lo:
            raise argparse.ArgumentTypeError(f"empty range {text!r}")
        return list(range(lo, hi + 1))
    return [_nonneg_int(text)]


def _copies_json(copies) -> list:
    return [[list(e) for e in c.edges] for c in copies]


def _add_budget_flags(p, threads=True):
    p.add_argument("--node-budget", type=_positive_int, default=None, help=f"search node budget (default: ${BUDGET_ENV} or unlimited)")
    p.add_argument("--time-budget", type=_positive_float, default=None, help="wall-clock budget in seconds")
    if threads:
        p.add_argument("--threads", type=_positive_int, default=None, help="worker processes (default: $MCTURAN_THREADS or 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mcturan", description="Multicolor Turán computations on k-uniform hypergraphs.")
    parser.add_argument("--manifest", metavar="PATH", help="write a run manifest (inputs, digests, budgets, result) here")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a named construction or an expansion")
    p.add_argument("name", choices=atlas.NAMES + ("expansion",))
    for flag in ("k", "s", "n", "t", "x", "r"):
        p.add_argument(f"--{flag}", type=_nonneg_int)
    p.add_argument("--sizes", type=_int_list, help="part sizes for completeMultipartite, e.g. 2,2,3")
    p.add_argument("--from", dest="source", help="r-uniform input for expansion")
    p.add_argument("--family", help="where to write the expansion's CopyFamily JSON")
    p.add_argument("-o", "--output", help="write the Hypergraph JSON here instead of stdout")

    p = sub.add_parser("hom", help="find a homomorphism G -> F")
    p.add_argument("G")
    p.add_argument("F")

    p = sub.add_parser("copies", help="enumerate copies of F in H")
    p.add_argument("F")
    p.add_argument("H")
    p.add_argument("--through", type=_int_list, help="count only copies through this edge, e.g. 0,1,2")
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("chrom", help="weak or strong chromatic number")
    p.add_argument("H")
    p.add_argument("--mode", choices=("weak", "strong"), default="weak")

    p = sub.add_parser("pack", help="integral or fractional F-packing of H")
    p.add_argument("F")
    p.add_argument("H")
    p.add_argument("--fractional", action="store_true")
    p.add_argument("--cap", type=_positive_int, default=10**6, help="refuse hosts with more candidate copies")
    _add_budget_flags(p)

    p = sub.add_parser("rainbow-check", help="look for a rainbow copy of G in a copy family")
    p.add_argument("family")
    p.add_argument("G")

    p = sub.add_parser("solve", help="exact multicolor Turán number")
    p.add_argument("what", choices=("exF",))
    p.add_argument("F")
    p.add_argument("G")
    p.add_argument("--n", type=_nonneg_int, required=True)
    _add_budget_flags(p)

    p = sub.add_parser("classify", help="decide whether the upper bound is attained for a named G")
    p.add_argument("F")
    p.add_argument("--target", choices=("fano", "c3", "book3", "book4"), required=True)
    p.add_argument("--k", type=_positive_int, help="half-uniformity for --target c3")

    p = sub.add_parser("turan", help="exact Turán number and extremal graphs")
    p.add_argument("G")
    p.add_argument("--n", type=_nonneg_int, required=True)
    p.add_argument("--list-extremals", action="store_true")
    p.add_argument("--labeled", action="store_true", help="list every labelled extremal graph (small n only)")
    _add_budget_flags(p, threads=False)

    p = sub.add_parser("report", help="bounds report for (F, G) at one n or a range A:B")
    p.add_argument("F")
    p.add_argument("G")
    p.add_argument("--n", type=_n_range, required=True, help="N or A:B")
    p.add_argument("--csv", help="write the fixed-column CSV summary here")
    p.add_argument("--exf-budget", type=_nonneg_int, default=200_000, help="node budget for the exact ex_F solve (0 skips it)")
    p.add_argument("--threads", type=_positive_int, default=None)
    return parser


# -- commands ---------------------------------------------------------------------


def _threads(args) -> int:
    return args.threads if getattr(args, "threads", None) else default_threads()


def cmd_gen(args, inputs):
    if args.name == "expansion":
        if not args.source or args.k is None:
            raise IngestError("gen expansion needs --from H.json and --k K")
        inputs["from"] = args.source
        H = load_hypergraph(args.source)
        Hstar, family = atlas.expansion(H, args.k)
        out = {"hypergraph": Hstar.to_dict(), "family": family.to_dict()}
        if args.family:
            with open(args.family, "w", encoding="utf-8") as fh:
                json.dump(family.to_dict(), fh)
                fh.write("\n")
        if args.output:
            _write_json(args.output, Hstar.to_dict())
            return {"written": args.output, "family": args.family, "e": Hstar.e, "copies": len(family)}, EXIT_OK
        return out, EXIT_OK
    params = {f: getattr(args, f) for f in ("k", "s", "n", "t", "x", "r") if getattr(args, f) is not None}
    if args.sizes is not None:
        params["sizes"] = args.sizes
    H = atlas.make_named(args.name, **params)
    if args.output:
        _write_json(args.output, H.to_dict())
        return {"written": args.output, "k": H.k, "n": H.n, "e": H.e}, EXIT_OK
    return H.to_dict(), EXIT_OK


def _write_json(path, data):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh)
        fh.write("\n")


def cmd_hom(args, inputs):
    inputs.update(G=args.G, F=args.F)
    G, F = load_hypergraph(args.G), load_hypergraph(args.F)
    emb = find_homomorphism(G, F)
    return {"homomorphism": None if emb is None else list(emb.map)}, EXIT_OK


def cmd_copies(args, inputs):
    inputs.update(F=args.F, H=args.H)
    F, H = load_hypergraph(args.F), load_hypergraph(args.H)
    if args.through is not None:
        return {"through": args.through, "count": copies_through(F, H, args.through)}, EXIT_OK
    copies = enumerate_copies(F, H)
    out = {"count": len(copies)}
    if not args.count_only:
        out["copies"] = _copies_json(copies)
    return out, EXIT_OK


def cmd_chrom(args, inputs):
    inputs["H"] = args.H
    H = load_hypergraph(args.H)
    c, col = chromatic_number(H, args.mode)
    return {"mode": args.mode, "chi": c, "coloring": col}, EXIT_OK


def cmd_pack(args, inputs):
    inputs.update(F=args.F, H=args.H)
    F, H = load_hypergraph(args.F), load_hypergraph(args.H)
    if args.fractional:
        sol = fractional_packing(F, H, cap=args.cap)
        weights = [{"edges": [list(e) for e in c.edges], "weight": pq(w)} for c, w in sol.weights.items() if w]
        prices = [{"edge": list(e), "price": pq(p)} for e, p in sorted(sol.prices.items())]
        return {"value": pq(sol.value), "witness": weights, "prices": prices}, EXIT_OK
    sol = integral_packing(F, H, cap=args.cap, node_budget=_budget(args), time_budget=args.time_budget, threads=_threads(args))
    out = {"witness": _copies_json(sol.copies), "nodes": sol.nodes}
    if sol.exact:
        out["value"] = sol.value
        return out, EXIT_OK
    out["interval"] = list(sol.interval)
    return out, EXIT_INTERVAL


def cmd_rainbow(args, inputs):
    inputs.update(family=args.family, G=args.G)
    fam, G = load_family(args.family), load_hypergraph(args.G)
    w = find_rainbow_copy(fam, G)
    return {
        "rainbow": None if w is None else w.to_dict(),
        "rainbow_count": count_rainbow_copies(fam, G),
        "non_rainbow_count": count_non_rainbow_copies(fam, G),
    }, EXIT_OK


def cmd_solve(args, inputs):
    inputs.update(F=args.F, G=args.G)
    F, G = load_hypergraph(args.F), load_hypergraph(args.G)
    res = exact_multicolor_turan(F, G, args.n, node_budget=_budget(args), time_budget=args.time_budget, threads=_threads(args))
    out = {"n": args.n, "witness": res.witness.to_dict(), "nodes": res.nodes}
    if res.exact:
        out["value"] = res.value
        return out, EXIT_OK
    out["interval"] = list(res.interval)
    return out, EXIT_INTERVAL


def cmd_classify(args, inputs):
    inputs["F"] = args.F
    F = load_hypergraph(args.F)
    if args.target != "c3" and args.k is not None:
        raise IngestError("--k applies only to --target c3")
    return classify(F, args.target, args.k).to_dict(), EXIT_OK


def cmd_turan(args, inputs):
    inputs["G"] = args.G
    G = load_hypergraph(args.G)
    res = exact_turan(G, args.n, node_budget=_budget(args), time_budget=args.time_budget)
    out = {"n": args.n, "nodes": res.nodes}
    if not res.exact:
        out["interval"] = [res.lower, res.upper]
        return out, EXIT_INTERVAL
    out["value"] = res.value
    out["extremal_classes"] = len(res.extremals)
    if args.list_extremals or args.labeled:
        graphs = res.labeled_extremals() if args.labeled else res.extremals
        out["extremals"] = [H.to_dict() for H in graphs]
    return out, EXIT_OK


def _exf_cell(rep) -> str:
    if rep.exF is not None:
        return str(rep.exF)
    if rep.exF_interval is not None:
        return f"[{rep.exF_interval[0]},{rep.exF_interval[1]}]"
    return ""


def cmd_report(args, inputs):
    inputs.update(F=args.F, G=args.G)
    F, G = load_hypergraph(args.F), load_hypergraph(args.G)
    exf_budget = args.exf_budget if args.exf_budget else 0
    reports = [bounds_report(F, G, n, exf_budget=exf_budget, threads=_threads(args)) for n in args.n]
    if args.csv:
        with open(args.csv, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in reports:
                w.writerow([r.n, "" if r.ex_turan is None else r.ex_turan, pq(r.upper13) or "", "" if r.lower13 is None else r.lower13, _exf_cell(r), r.verdict])
    interval = any(r.ex_turan is None or (r.exF is None and r.exF_interval is not None) for r in reports)
    docs = []
    for r in reports:
        d = r.to_dict()
        d["verdict"] = r.verdict
        docs.append(d)
    out = docs[0] if len(docs) == 1 else {"reports": docs, "density_estimates": [d["density_estimate"] for d in docs]}
    return out, EXIT_INTERVAL if interval else EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "hom": cmd_hom,
    "copies": cmd_copies,
    "chrom": cmd_chrom,
    "pack": cmd_pack,
    "rainbow-check": cmd_rainbow,
    "solve": cmd_solve,
    "classify": cmd_classify,
    "turan": cmd_turan,
    "report": cmd_report,
}


def _json_default(obj):
    if isinstance(obj, Fraction):
        return pq(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def run(argv=None, stdout=None) -> int:
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    inputs: dict[str, str] = {}
    start = time.monotonic()
    try:
        result, code = COMMANDS[args.command](args, inputs)
    except (IngestError, HypergraphError, CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    json.dump(result, stdout, default=_json_default)
    stdout.write("\n")
    if args.manifest:
        params = {k: v for k, v in vars(args).items() if k not in ("manifest", "node_budget", "time_budget") and not callable(v)}
        manifest = RunManifest(
            command=args.command,
            inputs={k: _digest(v) for k, v in inputs.items()},
            params=params,
            budgets={"node_budget": getattr(args, "node_budget", None), "time_budget": getattr(args, "time_budget", None)},
            result=result,
            wall_time=round(time.monotonic() - start, 3),
        )
        with open(args.manifest, "w", encoding="utf-8") as fh:
            json.dump(manifest.to_dict(), fh, default=_json_default, indent=2)
            fh.write("\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
