"""Batch command-line front end.

Exit codes: 0 success, 1 domain error (an error object is still emitted),
2 I/O error. Epsilon is always parsed exactly ("1/4" or "0.25").
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import graph as gmod
from .errors import DomainError
from .oracles import OracleConfig, all_partitions, brute_regular_pair, brute_triangles, max_ap_free
from .partition import VertexPartition, mean_square_density, read_partition, to_partition_text
from .rational import parse_rational, to_json
from .regular import DEFAULT_SIZE_CAP, irregular_set, is_regular_partition, szemeredi_partition
from .reports import REPORT_SCHEMA, default_report_path, dumps, make_report
from .roth import build_roth_graph
from .triangles import census, triangle_removal


def _eps(text: str):
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _vertex_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    return [int(t) for t in text.replace(",", " ").split()]


def parse_a_spec(spec: str) -> list[int]:
    """Comma list (``"0,1,3"``) or ``file:<path>`` holding whitespace/comma separated ints."""
    if spec.startswith("file:"):
        text = Path(spec[5:]).read_text()
    else:
        text = spec
    try:
        return _vertex_list(text)
    except ValueError:
        raise DomainError(f"malformed A-spec {spec!r}") from None


def _write(path, text: str) -> None:
    Path(path).write_text(text)


def _graph_inputs(G) -> dict:
    return {"n": G.n, "m": G.m}


# -- commands: each returns (inputs, results, exact_values) ----------------------

def cmd_gen(args):
    kind = args.kind
    if kind == "random":
        if args.n is None or args.p is None:
            raise DomainError("random needs --n and --p")
        G = gmod.random_graph(args.n, args.p, args.seed)
        params = {"n": args.n, "p": str(args.p), "seed": args.seed}
    elif kind in ("complete", "bipartite_half"):
        if args.n is None:
            raise DomainError(f"{kind} needs --n")
        G = gmod.generate(kind, n=args.n)
        params = {"n": args.n}
    else:
        if None in (args.a, args.b, args.c):
            raise DomainError("complete_tripartite needs --a --b --c")
        G = gmod.complete_tripartite(args.a, args.b, args.c)
        params = {"a": args.a, "b": args.b, "c": args.c}
    _write(args.out, gmod.to_edge_list(G))
    if args.dot:
        _write(args.dot, gmod.to_dot(G))
    return {"kind": kind, **params, "out": str(args.out)}, _graph_inputs(G), {}


def cmd_partition(args):
    G = gmod.read_edge_list(args.graph)
    initial = read_partition(args.initial, G) if args.initial else None
    res = szemeredi_partition(G, args.eps, initial=initial, size_cap=args.size_cap)
    if args.out_partition:
        _write(args.out_partition, to_partition_text(res.partition))
    if args.dot:
        _write(args.dot, gmod.to_dot(G, res.partition.parts))
    inputs = {"graph": str(args.graph), "epsilon": str(args.eps), "initial": args.initial, "size_cap": args.size_cap}
    exact = {"final_energy": to_json(res.energy_trajectory[-1]), "defect": to_json(res.defect)}
    return inputs, {**_graph_inputs(G), **res.to_report()}, exact


def cmd_check(args):
    G = gmod.read_edge_list(args.graph)
    P = read_partition(args.partition, G)
    ok, defect = is_regular_partition(args.eps, G, P, args.size_cap)
    irr = sorted((sorted(R), sorted(S)) for R, S in irregular_set(args.eps, G, P, args.size_cap))
    if args.dot:
        _write(args.dot, gmod.to_dot(G, P.parts))
    energy = mean_square_density(G, P)
    limit = args.eps * G.n**2
    results = {
        **_graph_inputs(G),
        "parts": len(P),
        "regular_partition": ok,
        "defect": to_json(defect),
        "defect_limit": to_json(limit),
        "irregular_pairs": [[R, S] for R, S in irr],
        "mean_square_density": to_json(energy),
    }
    inputs = {"graph": str(args.graph), "partition": str(args.partition), "epsilon": str(args.eps)}
    return inputs, results, {"defect": to_json(defect), "mean_square_density": to_json(energy)}


def cmd_triangles(args):
    G = gmod.read_edge_list(args.graph)
    c = census(G)
    return {"graph": str(args.graph)}, {**_graph_inputs(G), **c.to_report()}, {}


def cmd_clean(args):
    G = gmod.read_edge_list(args.graph)
    res = triangle_removal(G, args.eps, args.size_cap)
    if args.out:
        _write(args.out, gmod.to_edge_list(res.cleaned))
    if args.dot:
        parts = res.clean.partition_used.parts if res.clean else None
        _write(args.dot, gmod.to_dot(res.cleaned, parts))
    inputs = {"graph": str(args.graph), "epsilon": str(args.eps), "out": args.out}
    exact = {"bound": to_json(res.bound)}
    if res.delta is not None:
        exact["delta"] = to_json(res.delta)
    return inputs, {**_graph_inputs(G), **res.to_report()}, exact


def cmd_roth(args):
    A = parse_a_spec(args.a_spec)
    inst = build_roth_graph(args.N, A)
    if args.out:
        _write(args.out, gmod.to_edge_list(inst.graph))
    if args.dot:
        _write(args.dot, gmod.to_dot(inst.graph, inst.parts))
    return {"N": args.N, "A": sorted(A)}, inst.to_report(), {}


def cmd_oracle(args):
    cfg = OracleConfig(args.cap_subset, args.cap_partition, args.cap_ap)
    sub = args.sub
    if sub == "regular-pair":
        G = gmod.read_edge_list(args.graph)
        X, Y = _vertex_list(args.x), _vertex_list(args.y)
        out = brute_regular_pair(X, Y, G, args.eps, strict=args.strict, config=cfg)
        res = {"verdict": out.verdict}
        if out.witness is not None:
            w = out.witness
            res["witness"] = {"A": sorted(w.A), "B": sorted(w.B), "deviation": to_json(w.deviation)}
        inputs = {"graph": str(args.graph), "X": X, "Y": Y, "epsilon": str(args.eps), "strict": args.strict}
        return {"sub": sub, **inputs}, res, {}
    if sub == "partitions":
        parts = [VertexPartition.of(p, range(args.n)).as_lists() for p in all_partitions(range(args.n), cfg)]
        parts.sort()
        return {"sub": sub, "n": args.n}, {"count": len(parts), "partitions": parts}, {}
    if sub == "triangles":
        G = gmod.read_edge_list(args.graph)
        tris = sorted(sorted(t) for t in brute_triangles(G))
        return {"sub": sub, "graph": str(args.graph)}, {"triangles": len(tris), "list": tris}, {}
    size, wit = max_ap_free(args.N, cfg)
    return {"sub": sub, "N": args.N}, {"size": size, "witness": sorted(wit)}, {}


COMMANDS = {
    "gen": cmd_gen,
    "partition": cmd_partition,
    "check": cmd_check,
    "triangles": cmd_triangles,
    "clean": cmd_clean,
    "roth": cmd_roth,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--report", help="write the JSON report here (default: stdout or $REGULARITY_REPORT_DIR)")
    common.add_argument("--dot", help="write a Graphviz rendering here")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--size-cap", type=int, default=DEFAULT_SIZE_CAP, help="exact-checker part size cap")
    common.add_argument("--cap-subset", type=int, default=6)
    common.add_argument("--cap-partition", type=int, default=7)
    common.add_argument("--cap-ap", type=int, default=20)

    parser = argparse.ArgumentParser(prog="regularity", description=__doc__.splitlines()[0])
    sp = parser.add_subparsers(dest="command", required=True)

    p = sp.add_parser("gen", parents=[common], help="generate a graph as an edge list")
    p.add_argument("kind", choices=sorted(gmod.GENERATORS))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=_eps)
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--c", type=int)
    p.add_argument("--out", required=True)

    p = sp.add_parser("partition", parents=[common], help="compute a certified eps-regular partition")
    p.add_argument("graph")
    p.add_argument("--eps", type=_eps, required=True)
    p.add_argument("--initial", help="starting partition file")
    p.add_argument("--out-partition")

    p = sp.add_parser("check", parents=[common], help="check a partition for eps-regularity")
    p.add_argument("graph")
    p.add_argument("partition")
    p.add_argument("--eps", type=_eps, required=True)

    p = sp.add_parser("triangles", parents=[common], help="triangle census")
    p.add_argument("graph")

    p = sp.add_parser("clean", parents=[common], help="clean the graph and report the removal certificate")
    p.add_argument("graph")
    p.add_argument("--eps", type=_eps, required=True)
    p.add_argument("--out", help="cleaned edge list")

    p = sp.add_parser("roth", parents=[common], help="build the tripartite graph for (N, A)")
    p.add_argument("N", type=int)
    p.add_argument("a_spec", metavar="A-SPEC", help='comma list like "0,1" or file:<path>')
    p.add_argument("--out", help="edge list of the constructed graph")

    p = sp.add_parser("oracle", help="brute-force reference computations")
    osp = p.add_subparsers(dest="sub", required=True)
    q = osp.add_parser("regular-pair", parents=[common])
    q.add_argument("graph")
    q.add_argument("--x", required=True)
    q.add_argument("--y", required=True)
    q.add_argument("--eps", type=_eps, required=True)
    q.add_argument("--strict", action="store_true")
    q = osp.add_parser("partitions", parents=[common])
    q.add_argument("--n", type=int, required=True)
    q = osp.add_parser("triangles", parents=[common])
    q.add_argument("graph")
    q = osp.add_parser("max-ap-free", parents=[common])
    q.add_argument("N", type=int)

    sp.add_parser("schema", help="print the report JSON schema")
    return parser


def _inputs_echo(args) -> dict:
    return {k: v for k, v in vars(args).items() if k not in ("report",)}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "schema":
        sys.stdout.write(json.dumps(REPORT_SCHEMA, indent=2, sort_keys=True) + "\n")
        return 0

    start = time.perf_counter()
    code = 0
    try:
        inputs, results, exact = COMMANDS[args.command](args)
        report = make_report(args.command, inputs, results, exact_values=exact)
    except DomainError as exc:
        code = 1
        report = make_report(args.command, _jsonable(_inputs_echo(args)),
                             error={"kind": exc.kind, "message": str(exc)})
    except OSError as exc:
        code = 2
        report = make_report(args.command, _jsonable(_inputs_echo(args)),
                             error={"kind": "io_error", "message": str(exc)})
    report["timing_ms"] = round((time.perf_counter() - start) * 1000, 3)

    text = dumps(report)
    path = args.report or default_report_path(args.command)
    if path:
        try:
            Path(path).parent.mkdir(parents=True, exist_ok=True)
            Path(path).write_text(text)
        except OSError as exc:
            sys.stderr.write(f"cannot write report: {exc}\n")
            return 2
    else:
        sys.stdout.write(text)
    if code:
        sys.stderr.write(f"error: {report['error']['message']}\n")
    return code


def _jsonable(d: dict) -> dict:
    return {k: (v if isinstance(v, (int, str, bool, type(None), list)) else str(v)) for k, v in d.items()}


if __name__ == "__main__":
    sys.exit(main())
