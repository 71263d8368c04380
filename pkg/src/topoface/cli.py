"""Command-line front door.

Subcommands wrap the library one-to-one: generate / validate / planarize /
faces / find4 / z2 / heilbronn / render.  Machine-readable JSON (schema 1)
goes to stdout or --out, a short human summary to stderr.  Exit codes:
0 success, 1 invalid input, 2 construction or lemma/invariant violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import arrangement, drawing, facefinder, generators, homology, render
from .errors import (
    ConstructionError,
    InvariantViolation,
    LemmaViolation,
    ParseError,
    TopofaceError,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_VIOLATION = 2


def _frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _point_str(p) -> list:
    return [_frac_str(p[0]), _frac_str(p[1])]


def parse_cycle(text: str):
    """Edge-list cycle syntax: "0-1,1-2,2-0" -> [(0, 1), (1, 2), (0, 2)]."""
    edges = []
    for part in text.split(","):
        bits = part.strip().split("-")
        if len(bits) != 2:
            raise ParseError(f"bad edge {part!r}, expected i-j")
        try:
            u, v = int(bits[0]), int(bits[1])
        except ValueError as exc:
            raise ParseError(f"bad edge {part!r}") from exc
        edges.append(drawing.edge_key(u, v))
    return edges


def _edge_loop_order(edges):
    """Order an edge-set cycle into a vertex sequence, for rendering."""
    adj = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    if any(len(ns) != 2 for ns in adj.values()):
        raise ParseError("cycle edges do not form a single closed loop")
    start = min(adj)
    loop = [start, min(adj[start])]
    while True:
        a, b = loop[-2], loop[-1]
        nxt = adj[b][0] if adj[b][0] != a else adj[b][1]
        if nxt == start:
            break
        loop.append(nxt)
        if len(loop) > len(adj):
            raise ParseError("cycle edges do not form a single closed loop")
    if len(loop) != len(adj):
        raise ParseError("cycle edges do not form a single closed loop")
    return loop


def _default_seed() -> int:
    return int(os.environ.get("TOPOFACE_SEED", "0"))


def _load(path: str) -> drawing.TopoDrawing:
    try:
        return drawing.read_drawing(path)
    except FileNotFoundError as exc:
        raise ParseError(str(exc)) from exc


def _emit(report: dict, args, summary: str) -> int:
    text = json.dumps(report, indent=2, sort_keys=True)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)
    return EXIT_OK


def _report(command: str, params: dict, seed=None) -> dict:
    return {
        "schema": 1,
        "command": command,
        "parameters": params,
        "seed": seed,
        "outputs": {},
        "timings": {},
        "checks": {},
    }


# ---------------------------------------------------------------- commands


def cmd_generate(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    t0 = time.perf_counter()
    try:
        d, probe, mode = _build_drawing(args, seed)
    except TopofaceError as exc:
        raise ConstructionError(str(exc)) from exc
    rep = drawing.validate(d, mode=mode)
    if not rep.ok:
        raise ConstructionError(f"generated drawing failed validation: {rep.violations}")
    out = args.out or f"{args.kind}.stg.json"
    drawing.write_drawing(d, out)
    report = _report("generate", {"kind": args.kind, "n": d.n, "out": out}, seed)
    report["outputs"] = {
        "file": out,
        "n": d.n,
        "edges": len(d.edge_keys),
        "probe": _point_str(probe) if probe else None,
    }
    report["checks"]["valid"] = rep.ok
    report["timings"]["total_s"] = round(time.perf_counter() - t0, 6)
    args.out = None  # report goes to stdout; the drawing already went to `out`
    return _emit(report, args, f"wrote {out}: n={d.n}, {len(d.edge_keys)} edges, valid")


def _build_drawing(args, seed):
    if args.kind == "twisted":
        d = generators.gen_twisted(args.n)
        probe = generators.twisted_probe(args.n)
        mode = drawing.SIMPLE
    elif args.kind == "twisted-square":
        d, probe = generators.gen_twisted_square(args.n, Fraction(args.eps))
        mode = drawing.SIMPLE
    elif args.kind == "straightline":
        if args.points:
            with open(args.points) as fh:
                raw = json.load(fh)
            pts = [(Fraction(x), Fraction(y)) for x, y in raw]
            d = generators.gen_straightline(pts)
        else:
            d = generators.random_point_drawing(args.n, seed)
        probe = None
        mode = drawing.SIMPLE
    elif args.kind == "z2rect":
        d = generators.gen_z2_rect(generators.Z2RectSpec(args.n, args.m, seed))
        probe = None
        mode = drawing.GENERIC
    else:  # pragma: no cover - argparse restricts choices
        raise ParseError(f"unknown kind {args.kind}")
    return d, probe, mode


def cmd_validate(args) -> int:
    d = _load(args.file)
    t0 = time.perf_counter()
    rep = drawing.validate(d, mode=args.mode)
    report = _report("validate", {"file": args.file, "mode": args.mode})
    report["outputs"] = {
        "valid": rep.ok,
        "violations": [
            {"subject": str(s), "kind": k, "point": _point_str(p) if p else None}
            for s, k, p in rep.violations
        ],
    }
    report["timings"]["total_s"] = round(time.perf_counter() - t0, 6)
    code = _emit(report, args, f"{args.file}: {'valid' if rep.ok else 'INVALID'} ({args.mode})")
    return code if rep.ok else EXIT_INVALID


def cmd_planarize(args) -> int:
    d = _load(args.file)
    t0 = time.perf_counter()
    arr = arrangement.planarize(d)
    bounded = [c for c in arr.cells if c.area is not None]
    report = _report("planarize", {"file": args.file})
    report["outputs"] = {
        "nodes": len(arr.nodes),
        "arcs": len(arr.arcs),
        "cells": len(arr.cells),
        "crossings": len(arr.nodes) - d.n,
        "total_bounded_area": _frac_str(sum(c.area for c in bounded)),
    }
    euler = len(arr.nodes) - len(arr.arcs) + len(arr.cells) == 2
    report["checks"]["euler"] = euler
    report["timings"]["total_s"] = round(time.perf_counter() - t0, 6)
    code = _emit(
        report,
        args,
        f"{args.file}: V={len(arr.nodes)} E={len(arr.arcs)} F={len(arr.cells)}"
        f" euler={'ok' if euler else 'FAIL'}",
    )
    return code if euler else EXIT_VIOLATION


def cmd_faces(args) -> int:
    d = _load(args.file)
    edges = parse_cycle(args.edges)
    H = arrangement.faces_of(d, edges)
    faces = []
    for f in H.bounded_faces():
        faces.append(
            {
                "size": f.size,
                "walks": [list(w.vertices) for w in f.walks],
                "isolated": sorted(f.isolated),
            }
        )
    report = _report("faces", {"file": args.file, "edges": args.edges})
    report["outputs"] = {"bounded_faces": faces, "count": len(faces)}
    return _emit(report, args, f"{args.file}: {len(faces)} bounded faces of the plane subgraph")


def _find4_one(path: str) -> dict:
    d = _load(path)
    t0 = time.perf_counter()
    faces, trace, d2 = facefinder.extract_with_trace(d)
    disjoint = facefinder.verify_disjoint(d2, faces)
    return {
        "file": path,
        "n": d.n,
        "count": len(faces),
        "floor": facefinder.pipeline_floor(d.n),
        "cycles": [list(f.cycle) for f in faces],
        "areas": [_frac_str(f.area) for f in faces],
        "disjoint": disjoint,
        "trace": trace,
        "seconds": round(time.perf_counter() - t0, 3),
    }


def cmd_find4(args) -> int:
    jobs = max(1, args.jobs)
    if jobs > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_find4_one, args.files))
    else:
        results = [_find4_one(p) for p in args.files]
    report = _report("find4", {"files": args.files, "jobs": jobs})
    report["outputs"]["runs"] = results
    report["checks"]["all_disjoint"] = all(r["disjoint"] for r in results)
    report["timings"]["total_s"] = round(sum(r["seconds"] for r in results), 3)
    if args.trace:
        with open(args.trace, "w") as fh:
            json.dump([r["trace"] for r in results], fh, indent=2)
    summary = "; ".join(
        f"{r['file']}: {r['count']} faces (floor {r['floor']}),"
        f" disjoint={r['disjoint']}" for r in results
    )
    code = _emit(report, args, summary)
    # below n = 40 the pipeline is best-effort: validity yes, count no
    bad = [
        r
        for r in results
        if not r["disjoint"] or (r["n"] >= 40 and r["count"] < r["floor"])
    ]
    return EXIT_VIOLATION if bad else code


def cmd_z2(args) -> int:
    report = _report("z2", {"op": args.op})
    t0 = time.perf_counter()
    if args.op == "enumerate":
        cycles = [sorted(z) for z in homology.cycle_space(args.n)]
        report["parameters"]["n"] = args.n
        report["outputs"] = {
            "count": len(cycles),
            "cycles": [[f"{u}-{v}" for u, v in z] for z in cycles],
        }
        summary = f"n={args.n}: {len(cycles)} nonzero Z2 cycles"
    elif args.op == "simulate":
        seed = args.seed if args.seed is not None else _default_seed()
        rep = homology.simulate_rect_areas(args.n, args.m, args.trials, seed)
        report["parameters"].update({"n": args.n, "m": args.m, "trials": args.trials})
        report["seed"] = seed
        report["outputs"] = {
            "grand_mean": float(rep.grand_mean),
            "min_per_trial": [int(x) for x in rep.min_per_trial],
            "tail_freq": float(rep.tail_freq),
            "tail_bound": float(rep.tail_bound),
        }
        summary = (
            f"bit model n={args.n} m={args.m}: mean {rep.grand_mean:.2f}"
            f" (m/2 = {args.m / 2}), min {min(rep.min_per_trial)}"
        )
    else:  # area / inside need a drawing and a cycle
        d = _load(args.file)
        z = homology.as_chain(parse_cycle(args.cycle))
        if homology.boundary(z):
            raise ParseError(f"{args.cycle!r} is not a Z2 cycle (nonzero boundary)")
        report["parameters"].update({"file": args.file, "cycle": args.cycle})
        if args.op == "area":
            a = homology.z2_area(d, z)
            report["outputs"] = {"area": _frac_str(a), "area_float": float(a)}
            summary = f"z2 area = {_frac_str(a)} ≈ {float(a):.6g}"
        else:
            cells = sorted(homology.inside_chain(d, z))
            arr = arrangement.planarize(d)
            bnd = homology.cell_boundary(arr, cells)
            report["outputs"] = {"cells": cells, "count": len(cells)}
            report["checks"]["boundary_matches"] = bnd == homology.push_forward(d, z)
            summary = f"{len(cells)} cells inside; boundary check {report['checks']['boundary_matches']}"
    report["timings"]["total_s"] = round(time.perf_counter() - t0, 6)
    return _emit(report, args, summary)


def cmd_heilbronn(args) -> int:
    d = _load(args.file)
    t0 = time.perf_counter()
    area, cycle = facefinder.heilbronn_min_area(d, args.k)
    report = _report("heilbronn", {"file": args.file, "k": args.k})
    report["outputs"] = {
        "min_area": _frac_str(area),
        "min_area_float": float(area),
        "cycle": list(cycle),
    }
    report["timings"]["total_s"] = round(time.perf_counter() - t0, 6)
    return _emit(
        report, args, f"min {args.k}-gon area {_frac_str(area)} ≈ {float(area):.6g} at {cycle}"
    )


def cmd_render(args) -> int:
    d = _load(args.file)
    highlight = [_edge_loop_order(parse_cycle(c)) for c in args.highlight or []]
    fill = [_edge_loop_order(parse_cycle(c)) for c in args.fill or []]
    probes = []
    for spec in args.probe or []:
        x, _, y = spec.partition(",")
        try:
            probes.append((Fraction(x), Fraction(y)))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad probe point {spec!r}, expected x,y") from exc
    svg = render.render_svg(d, highlight_cycles=highlight, fill_cycles=fill, probe_points=probes)
    out = args.out or (os.path.splitext(args.file)[0] + ".svg")
    with open(out, "w") as fh:
        fh.write(svg)
    print(f"wrote {out} ({len(svg)} bytes)", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topoface", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="construct a drawing and write it to disk")
    g.add_argument("kind", choices=["twisted", "twisted-square", "straightline", "z2rect"])
    g.add_argument("--n", type=int, default=5)
    g.add_argument("--m", type=int, default=12)
    g.add_argument("--eps", default="1/10")
    g.add_argument("--seed", type=int, default=None)
    g.add_argument("--points", help="JSON file with [[x, y], ...] rational strings")
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("validate", help="check simplicity / general position")
    v.add_argument("file")
    v.add_argument("--mode", choices=[drawing.SIMPLE, drawing.GENERIC], default=drawing.SIMPLE)
    v.add_argument("--out", "-o", dest="out")
    v.set_defaults(func=cmd_validate)

    pl = sub.add_parser("planarize", help="build the arrangement and report V/E/F")
    pl.add_argument("file")
    pl.add_argument("--out", "-o", dest="out")
    pl.set_defaults(func=cmd_planarize)

    fa = sub.add_parser("faces", help="faces of a non-crossing edge subset")
    fa.add_argument("file")
    fa.add_argument("--edges", required=True, help='edge list "i-j,k-l,..."')
    fa.add_argument("--out", "-o", dest="out")
    fa.set_defaults(func=cmd_faces)

    f4 = sub.add_parser("find4", help="extract pairwise disjoint 4-faces")
    f4.add_argument("files", nargs="+")
    f4.add_argument("--jobs", type=int, default=1)
    f4.add_argument("--trace", help="write pipeline traces to this JSON file")
    f4.add_argument("--out", "-o", dest="out")
    f4.set_defaults(func=cmd_find4)

    z2 = sub.add_parser("z2", help="Z2 cycle-space queries and experiments")
    z2.add_argument("op", choices=["area", "inside", "enumerate", "simulate"])
    z2.add_argument("file", nargs="?")
    z2.add_argument("--cycle", help='cycle as edge list "i-j,k-l,..."')
    z2.add_argument("--n", type=int, default=4)
    z2.add_argument("--m", type=int, default=1600)
    z2.add_argument("--trials", type=int, default=20)
    z2.add_argument("--seed", type=int, default=None)
    z2.add_argument("--jobs", type=int, default=1)
    z2.add_argument("--out", "-o", dest="out")
    z2.set_defaults(func=cmd_z2)

    hb = sub.add_parser("heilbronn", help="minimum k-face area of a drawing")
    hb.add_argument("file")
    hb.add_argument("--k", type=int, default=4, choices=[3, 4])
    hb.add_argument("--out", "-o", dest="out")
    hb.set_defaults(func=cmd_heilbronn)

    rd = sub.add_parser("render", help="deterministic SVG picture")
    rd.add_argument("file")
    rd.add_argument("--highlight", action="append", metavar="CYCLE")
    rd.add_argument("--fill", action="append", metavar="CYCLE")
    rd.add_argument("--probe", action="append", metavar="X,Y")
    rd.add_argument("--out", "-o", dest="out")
    rd.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "z2" and args.op in ("area", "inside"):
            if not args.file or not args.cycle:
                raise ParseError(f"z2 {args.op} needs a drawing file and --cycle")
        return args.func(args)
    except (LemmaViolation, InvariantViolation, ConstructionError) as exc:
        print(f"violation: {exc}", file=sys.stderr)
        if isinstance(exc, LemmaViolation) and exc.witness is not None:
            trace_path = getattr(args, "trace", None) or "violation.trace.json"
            with open(trace_path, "w") as fh:
                json.dump(exc.witness, fh, indent=2, default=str)
            print(f"witness written to {trace_path}", file=sys.stderr)
        return EXIT_VIOLATION
    except TopofaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
