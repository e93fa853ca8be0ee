"""Command-line front end: ``gtpoly <command> [options]``.

Every command prints a JSON report ``{"schema", "command", "result"}`` with
sorted keys, so identical invocations give identical bytes.  ``--timing``
adds wall-clock seconds (and is the only non-deterministic field).
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__
from .core import (DomainError, GTPattern, MalformedInput, SkewShape, SkewTableau,
                   format_rational, parse_young, young_rows)
from .decomposition import (ContingencyMatrix, column_split, from_contingency,
                            hook_decompose_full, reverse_hook_decompose_full,
                            to_contingency)
from .polytope import (PolytopeSpec, dimension, enumerate_lattice_points, enumerate_vertices,
                       idp_check, is_empty, is_integral, is_unimodular_simplex,
                       nonintegral_vertices, pulling_is_unimodular, pulling_triangulation,
                       vertex_order, count_lattice_points)
from .refinement import build_poset
from .shapes import classify_shape, normalize_shape
from .tiling import compute_tiling, face_dimension, kernel_dimension, tiling_matrix

SCHEMA = "gtpoly-report/1"
COMMANDS = ("classify", "tiling", "points", "vertices", "analyze", "idp", "triangulate",
            "poset", "decompose", "repro")


class AnalysisFailure(Exception):
    """Raised when a command ran but its verdict is a failure (exit code 1)."""

    def __init__(self, result):
        super().__init__("analysis failed")
        self.result = result


# input parsing --------------------------------------------------------------------

def _int_list(text: str | None, what: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise MalformedInput(f"--{what} expects a comma separated list of integers") from None


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path} is not valid JSON: {exc.msg}") from None


def _settings(args) -> dict:
    """Merge --spec/--shape file values with inline flags; inline flags win."""
    out: dict = {}
    if getattr(args, "spec", None):
        obj = _read_json(args.spec)
        if not isinstance(obj, dict):
            raise MalformedInput("--spec file must hold a JSON object")
        shape = obj.get("shape", obj)
        if isinstance(shape, dict):
            for key in ("lambda", "mu"):
                if key in shape:
                    out[key] = tuple(shape[key])
        for key in ("weight", "rows", "k", "max_k"):
            if obj.get(key) is not None:
                out[key] = tuple(obj[key]) if key == "weight" else obj[key]
    if getattr(args, "shape", None):
        s = SkewShape.from_json(_read_json(args.shape))
        out["lambda"], out["mu"] = s.lam, s.mu
    for key, attr in (("lambda", "lam"), ("mu", "mu"), ("weight", "weight")):
        val = _int_list(getattr(args, attr, None), key)
        if val is not None:
            out[key] = val
    for key in ("rows", "k", "max_k"):
        val = getattr(args, key, None)
        if val is not None:
            out[key] = val
    return out


def _shape(cfg) -> SkewShape:
    if "lambda" not in cfg:
        raise MalformedInput("a shape is required (--lambda, --shape or --spec)")
    return SkewShape(tuple(cfg["lambda"]), tuple(cfg.get("mu", ())))


def _polytope(cfg) -> PolytopeSpec:
    shape = _shape(cfg)
    k = int(cfg.get("k", 1))
    if k < 1:
        raise MalformedInput("--k must be positive")
    if "weight" in cfg:
        return PolytopeSpec(shape, tuple(cfg["weight"]), k)
    if "rows" not in cfg:
        raise MalformedInput("give --weight, or --rows for the weightless polytope")
    return PolytopeSpec(shape, None, k, int(cfg["rows"]))


def _pattern(obj) -> GTPattern:
    if isinstance(obj, dict) and "pattern" in obj:
        obj = obj["pattern"]
    return GTPattern.from_json(obj)


def _tableau(obj, n=None) -> SkewTableau:
    if isinstance(obj, list) and all(isinstance(r, str) for r in obj):
        return parse_young(obj, n)
    if isinstance(obj, dict) and "young" in obj:
        return parse_young(obj["young"], obj.get("n"))
    if isinstance(obj, dict):
        return SkewTableau.from_json(obj)
    raise MalformedInput("a tableau is a list of row strings or {shape, rows}")


def _tableau_json(t: SkewTableau):
    out = t.to_json()
    if t.max_content() <= 9:
        out["young"] = young_rows(t)
    return out


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("GTPOLY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise MalformedInput("GTPOLY_THREADS must be an integer") from None
    return 1


def _order(args):
    if args.order == "file":
        if not args.order_file:
            raise MalformedInput("--order file needs --order-file")
        obj = _read_json(args.order_file)
        if not isinstance(obj, list):
            raise MalformedInput("an order file holds a JSON list of vertex indices")
        return obj
    return args.order


def _patterns(ps) -> list:
    return [p.to_json() for p in ps]


# commands -------------------------------------------------------------------------

def cmd_classify(args, cfg):
    shape = _shape(cfg)
    norm, _ = normalize_shape(shape)
    out = classify_shape(shape).to_json()
    out["shape"] = shape.to_json()
    out["normalized"] = norm.to_json()
    return out


def cmd_tiling(args, cfg):
    if not args.pattern:
        raise MalformedInput("tiling needs --pattern FILE.json")
    p = _pattern(_read_json(args.pattern))
    t = compute_tiling(p)
    M = tiling_matrix(t)
    nullity = kernel_dimension(M, len(t.free))
    return {"pattern": p.to_json(), "tiles": t.to_json(),
            "free_contents": [format_rational(t.tiles[k].content) for k in t.free],
            "matrix": [list(r) for r in M], "nullity": nullity,
            "is_vertex": face_dimension(p, not args.unweighted) == 0}


def cmd_points(args, cfg):
    spec = _polytope(cfg)
    if args.count_only:
        return {"spec": spec.to_json(), "count": count_lattice_points(spec)}
    pts = enumerate_lattice_points(spec)
    return {"spec": spec.to_json(), "count": len(pts), "points": _patterns(pts)}


def cmd_vertices(args, cfg):
    spec = _polytope(cfg)
    vs = enumerate_vertices(spec)
    bad = [v for v in vs if not v.is_integral()]
    return {"spec": spec.to_json(), "count": len(vs), "integral": not bad and bool(vs),
            "vertices": _patterns(vs), "nonintegral": _patterns(bad)}


def _idp_up_to(spec, max_k) -> int:
    if max_k < 2:
        return max_k
    v = idp_check(spec, max_k)
    return max_k if v.holds else v.k - 1


def cmd_analyze(args, cfg):
    spec = _polytope(cfg)
    max_k = int(cfg.get("max_k", 2))
    base = PolytopeSpec(spec.shape, spec.weight, 1, spec.rows)
    empty = is_empty(spec)
    out = {"spec": spec.to_json(), "empty": empty, "integral": False,
           "unimodular_simplex": False, "num_points": 0, "num_vertices": 0,
           "idp_up_to": None, "dimension": None, "nonintegral_witnesses": []}
    if empty:
        return out
    integral = is_integral(spec)
    out.update(integral=integral, num_points=count_lattice_points(spec),
               num_vertices=len(enumerate_vertices(spec)), dimension=dimension(spec),
               unimodular_simplex=is_unimodular_simplex(spec))
    if integral:
        if spec.dilation == 1:
            out["idp_up_to"] = _idp_up_to(base, max_k)
    else:
        out["nonintegral_witnesses"] = _patterns(nonintegral_vertices(spec))
    return out


def cmd_idp(args, cfg):
    spec = _polytope(cfg)
    if spec.dilation != 1:
        raise DomainError("idp checks the undilated polytope; drop --k and use --max-k")
    verdict = idp_check(spec, int(cfg.get("max_k", 3)))
    return {"spec": spec.to_json(), **verdict.to_json()}


def cmd_triangulate(args, cfg):
    spec = _polytope(cfg)
    order = _order(args)
    perm = vertex_order(spec, order, args.seed)
    out = {"spec": spec.to_json(), "order": perm}
    if args.check_only:
        chk = pulling_is_unimodular(spec, order, args.seed)
        out.update(unimodular=chk.unimodular, faces_visited=chk.faces_visited)
        return out
    simplices = pulling_triangulation(spec, order, args.seed)
    out.update(simplices=[{"vertices": _patterns(s.vertices),
                           "normalized_volume": s.normalized_volume} for s in simplices],
               normalized_volume=sum(s.normalized_volume for s in simplices),
               unimodular=all(s.normalized_volume == 1 for s in simplices))
    return out


def cmd_poset(args, cfg):
    shape = _shape(cfg)
    poset = build_poset(shape.lam, shape.mu, int(cfg.get("max_k", 1)),
                        args.permutations, _threads(args))
    if args.dot:
        _emit(args.dot, poset.to_dot())
    return poset.to_json()


def cmd_decompose(args, cfg):
    if not args.input:
        raise MalformedInput("decompose needs --input FILE.json")
    obj = _read_json(args.input)
    k = int(cfg.get("k", 1))
    if args.mode == "contingency":
        if isinstance(obj, dict) and "entries" in obj:
            try:
                c = ContingencyMatrix(tuple(tuple(int(x) for x in r) for r in obj["entries"]),
                                      tuple(obj.get("mu", [0] * len(obj["entries"]))),
                                      int(obj.get("columns", len(obj["entries"][0]))))
            except (TypeError, ValueError, IndexError):
                raise MalformedInput("a contingency matrix is {entries, mu, columns}") from None
            p = from_contingency(c, obj.get("n"))
            return {"mode": "contingency", "matrix": c.to_json(), "pattern": p.to_json()}
        p = _pattern(obj)
        return {"mode": "contingency", "pattern": p.to_json(), "matrix": to_contingency(p).to_json()}
    t = _tableau(obj)
    if args.mode == "hook":
        parts = hook_decompose_full(t, k)
    elif args.mode == "reverse-hook":
        parts = reverse_hook_decompose_full(t, k)
    else:
        parts = column_split(t, k)
    return {"mode": args.mode, "k": k, "tableau": _tableau_json(t),
            "components": [_tableau_json(x) for x in parts]}


def cmd_repro(args, cfg):
    from .repro import run_fixtures
    results = run_fixtures(args.case or None, slow=args.slow)
    out = {"cases": [r.to_json() for r in results],
           "passed": sum(r.ok and not r.skipped for r in results),
           "failed": sum(not r.ok for r in results),
           "skipped": sum(r.skipped for r in results)}
    if not args.timing:
        for c in out["cases"]:
            c.pop("seconds")
    if out["failed"]:
        raise AnalysisFailure(out)
    return out


HANDLERS = {name: globals()["cmd_" + name.replace("-", "_")] for name in COMMANDS}


# plumbing -------------------------------------------------------------------------

def _emit(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", metavar="L", help="outer shape, e.g. 4,3,1")
    common.add_argument("--mu", help="inner shape, e.g. 2,1")
    common.add_argument("--weight", help="composition, e.g. 2,2,1,2,1")
    common.add_argument("--rows", type=int, help="row count of the weightless polytope")
    common.add_argument("--k", type=int, help="dilation factor")
    common.add_argument("--max-k", dest="max_k", type=int, help="largest dilation for IDP checks")
    common.add_argument("--spec", help="JSON file with shape/weight/rows/k (inline flags win)")
    common.add_argument("--shape", help="JSON file holding a skew shape")
    common.add_argument("--json", metavar="PATH", nargs="?", const="-",
                        help="write the JSON report to PATH (default stdout)")
    common.add_argument("--threads", type=int, help="worker threads (falls back to GTPOLY_THREADS)")
    common.add_argument("--seed", type=int, default=0, help="seed for shuffled orders")
    common.add_argument("--timing", action="store_true", help="report wall-clock seconds")

    parser = argparse.ArgumentParser(prog="gtpoly", description="Skew Gelfand-Tsetlin polytopes.")
    parser.add_argument("--version", action="version", version=f"gtpoly {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("classify", parents=[common], help="integrality class of a skew shape")
    p = sub.add_parser("tiling", parents=[common], help="tiles and tiling matrix of a pattern")
    p.add_argument("--pattern", help="JSON pattern file (rows bottom first)")
    p.add_argument("--unweighted", action="store_true", help="do not fix the row sums")
    p = sub.add_parser("points", parents=[common], help="lattice points")
    p.add_argument("--count-only", action="store_true")
    sub.add_parser("vertices", parents=[common], help="exact vertex enumeration")
    sub.add_parser("analyze", parents=[common], help="summary report of one polytope")
    sub.add_parser("idp", parents=[common], help="bounded integer decomposition check")
    p = sub.add_parser("triangulate", parents=[common], help="pulling triangulation")
    p.add_argument("--order", choices=("lex", "revlex", "shuffle", "file"), default="lex")
    p.add_argument("--order-file", help="JSON list of vertex indices, last pulled first")
    p.add_argument("--check-only", action="store_true",
                   help="only decide unimodularity, without listing simplices")
    p = sub.add_parser("poset", parents=[common], help="refinement poset of weights")
    p.add_argument("--dot", metavar="PATH", help="write DOT to PATH ('-' for stdout)")
    p.add_argument("--permutations", action="store_true", help="use all compositions")
    p = sub.add_parser("decompose", parents=[common], help="constructive decompositions")
    p.add_argument("--mode", choices=("hook", "reverse-hook", "columns", "contingency"),
                   required=True)
    p.add_argument("--input", help="JSON tableau, pattern or matrix file")
    p = sub.add_parser("repro", parents=[common], help="replay the reference fixtures")
    p.add_argument("--case", action="append", help="run only this fixture id (repeatable)")
    p.add_argument("--slow", action="store_true", help="include the slow sweeps")
    return parser


def _report(command, result, seconds=None) -> str:
    doc = {"schema": SCHEMA, "command": command, "result": result}
    if seconds is not None:
        doc["timing"] = {"seconds": round(seconds, 3)}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    code = 0
    try:
        cfg = _settings(args)
        result = HANDLERS[args.command](args, cfg)
    except (MalformedInput, DomainError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except AnalysisFailure as exc:
        result, code = exc.result, 1
    seconds = time.perf_counter() - t0 if args.timing else None
    text = _report(args.command, result, seconds)
    # DOT on stdout replaces the JSON there unless a JSON path was requested
    dot_on_stdout = getattr(args, "dot", None) == "-"
    if args.json is not None:
        _emit(args.json, text)
    elif not dot_on_stdout:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
