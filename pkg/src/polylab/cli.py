"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import constructors as C
from .classification import (
    Unclassified,
    classify_epimorphism,
    role_names,
    thin_polygon_theorem_check,
    verify_classification_theorem,
)
from .errors import (
    ContractViolation,
    DescriptorError,
    DomainError,
    NotPolygon,
    ParseError,
    PolylabError,
    Truncated,
)
from .free import check_free_invariants, run_free, seed_from_target, write_snapshot
from .hyperplanes import classify_hyperplane, enumerate_hyperplanes
from .incidence import dual
from .io import geometry_digest, load_geometry, read_morphism, save_geometry, write_morphism
from .polygon import classify_polygon
from .report import Report
from .search import enumerate_epimorphisms

OK, MATH_FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.name} needs --{' --'.join(missing)}")


def _construct(args):
    name = args.name
    builders = {
        "ordinary-polygon": (("m",), lambda a: C.ordinary_polygon(a.m)),
        "digon": (("r", "c"), lambda a: C.digon(a.r, a.c)),
        "grid": (("r", "c"), lambda a: C.grid(a.r, a.c)),
        "dual-grid": (("r", "c"), lambda a: C.dual_grid(a.r, a.c)),
        "projective-plane": (("q",), lambda a: C.projective_plane(a.q, validate=True)),
        "q4": (("q",), lambda a: C.q4(a.q)),
        "w": (("q",), lambda a: C.symplectic_quadrangle(a.q)),
        "split-cayley": (("q",), lambda a: C.split_cayley_hexagon(a.q)),
        "t2-conic": (("q",), lambda a: C.t2_of_oval(a.q, C.conic(a.q))),
        "thin-hexagon": (("q",), lambda a: C.thin_hexagon_from_plane(
            C.projective_plane(a.q) if a.q > 1 else C.ordinary_polygon(3))),
        "double-plane": (("q",), lambda a: C.double(
            C.projective_plane(a.q) if a.q > 1 else C.ordinary_polygon(3))),
    }
    if name not in builders:
        raise UsageError(f"unknown construction {name!r}; choose from {', '.join(sorted(builders))}")
    needed, build = builders[name]
    _need(args, *needed)
    G = build(args)
    save_geometry(G, args.output)
    return OK, f"wrote {args.output}: {G.num_points} points, {G.num_lines} lines, {classify_polygon(G).describe()}\n"


def _validate(args):
    G = load_geometry(args.file)
    try:
        verdict = classify_polygon(G)
    except NotPolygon as exc:
        return MATH_FAIL, f"CHECK polygon FAIL {exc}\n"
    return OK, f"CHECK polygon PASS {verdict.describe()}\n"


def _epi_search(args):
    S, T = load_geometry(args.src), load_geometry(args.tgt)
    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    save_geometry(S, out / "source.ig")
    save_geometry(T, out / "target.ig")
    rep = Report(f"epimorphisms {args.src} -> {args.tgt}")
    try:
        maps = enumerate_epimorphisms(S, T, limit=args.limit, up_to_target_automorphism=args.up_to_target_auto,
                                      jobs=args.jobs)
    except Truncated as exc:
        rep.complete = False
        maps = exc.partial
        rep.add("search", False, f"truncated: {exc}")
    else:
        rep.add("search", True, f"count={len(maps)}")
    for k, phi in enumerate(maps):
        (out / f"epi_{k:06d}.igmap").write_bytes(write_morphism(phi, "source.ig", "target.ig"))
    return (OK if rep.ok else MATH_FAIL), rep.render()


def _target_for(S, ref, base):
    m = classify_polygon(S).gonality
    if ref.startswith("sha256:"):
        cand = C.ordinary_polygon(m)
        for T in (cand, dual(cand)):
            if geometry_digest(T) == ref:
                return T
        raise UsageError("target given by digest only and it is not the standard ordinary polygon")
    return load_geometry(Path(base) / ref)


def _describe_descriptor(d) -> str:
    first, second = (sorted(b) for b in d.partition)
    labels = role_names(d.theorem)
    roles = " ".join(f"{labels[i]}={e!r}" for i, e in enumerate(d.traversal))
    return (f"theorem={d.theorem} case={d.case} base={d.base} "
            f"partition={','.join(map(str, first))}|{','.join(map(str, second))} {roles}")


def _epi_classify(args):
    S = load_geometry(args.src)
    raw = Path(args.mapfile).read_bytes()
    from .io import parse_morphism

    rec = parse_morphism(raw)
    T = _target_for(S, rec.target, Path(args.mapfile).parent)
    phi = read_morphism(raw, S, T)
    verdict = classify_epimorphism(phi)
    if isinstance(verdict, Unclassified):
        return MATH_FAIL, f"CHECK classified FAIL {verdict.reason} witness={verdict.witness}\n"
    return OK, f"CHECK classified PASS {_describe_descriptor(verdict)}\n"


_THEOREM_GONALITY = {"gt": 3, "jatgq": 4, "jatgh": 6}


def _theorem(args):
    S = load_geometry(args.src)
    m = _THEOREM_GONALITY[args.which]
    rep = verify_classification_theorem(S, m, jobs=args.jobs)
    if rep.ok:
        rep.summary = "2-class match" + (", s'>1 searches empty" if m != 3 else "")
    return (OK if rep.ok else MATH_FAIL), rep.render()


def _thin_theorem(args):
    rep = thin_polygon_theorem_check(args.m, args.s, args.sp, jobs=args.jobs)
    return (OK if rep.ok else MATH_FAIL), rep.render()


def _free_run(args):
    T = load_geometry(args.target)
    state = run_free(seed_from_target(T), args.stages)
    write_snapshot(state, args.output)
    rep = check_free_invariants(state)
    return (OK if rep.ok else MATH_FAIL), rep.render()


def _parse_points(text):
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"--points expects comma-separated integers, got {text!r}") from None


def _hyperplane_classify(args):
    S = load_geometry(args.geom)
    pts = _parse_points(args.points)
    try:
        verdict = classify_hyperplane(S, pts)
    except IndexError as exc:
        raise UsageError(str(exc)) from None
    passed = verdict.kind != "NotHyperplane"
    return (OK if passed else MATH_FAIL), f"CHECK hyperplane {'PASS' if passed else 'FAIL'} kind={verdict.describe()}\n"


def _hyperplane_enum(args):
    S = load_geometry(args.geom)
    rep = Report(f"hyperplanes of {args.geom}")
    hs = enumerate_hyperplanes(S)
    counts = {"A": 0, "B": 0, "C": 0}
    lines = []
    for H, v in hs:
        counts[v.kind] = counts.get(v.kind, 0) + 1
        lines.append(f"HYPERPLANE {v.describe()} points={','.join(map(str, sorted(H)))}")
    rep.add("kinds", set(counts) == {"A", "B", "C"}, " ".join(f"{k}={counts[k]}" for k in sorted(counts)))
    rep.add("type-B-count", counts["B"] == S.num_points, f"B={counts['B']} points={S.num_points}")
    return (OK if rep.ok else MATH_FAIL), rep.render() + "\n".join(lines) + ("\n" if lines else "")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polylab", description="Epimorphisms between finite generalized polygons.")
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: available CPUs)")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named geometry")
    c.add_argument("name")
    for flag in ("q", "m", "r", "c"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("-o", "--output", required=True)
    c.set_defaults(func=_construct)

    v = sub.add_parser("validate", help="classify a geometry file as a polygon")
    v.add_argument("file")
    v.set_defaults(func=_validate)

    e = sub.add_parser("epi", help="epimorphism search and classification")
    esub = e.add_subparsers(dest="epi_command", required=True)
    es = esub.add_parser("search")
    es.add_argument("src")
    es.add_argument("tgt")
    es.add_argument("--limit", type=int)
    es.add_argument("--up-to-target-auto", action="store_true")
    es.add_argument("-o", "--output", required=True)
    es.set_defaults(func=_epi_search)
    ec = esub.add_parser("classify")
    ec.add_argument("src")
    ec.add_argument("mapfile")
    ec.set_defaults(func=_epi_classify)

    t = sub.add_parser("theorem", help="exhaustive two-class check for one source")
    t.add_argument("which", choices=sorted(_THEOREM_GONALITY))
    t.add_argument("src")
    t.set_defaults(func=_theorem)

    th = sub.add_parser("thin-theorem", help="epimorphisms between thin polygons come from doubling")
    th.add_argument("--m", type=int, required=True, choices=(4, 6))
    th.add_argument("--s", type=int, required=True)
    th.add_argument("--sp", type=int, required=True)
    th.set_defaults(func=_thin_theorem)

    f = sub.add_parser("free", help="free completion of a grid")
    fsub = f.add_subparsers(dest="free_command", required=True)
    fr = fsub.add_parser("run")
    fr.add_argument("target")
    fr.add_argument("--stages", type=int, required=True)
    fr.add_argument("-o", "--output", required=True)
    fr.set_defaults(func=_free_run)

    h = sub.add_parser("hyperplane", help="geometric hyperplanes of a thick GQ")
    hsub = h.add_subparsers(dest="hyperplane_command", required=True)
    hc = hsub.add_parser("classify")
    hc.add_argument("geom")
    hc.add_argument("--points", required=True)
    hc.set_defaults(func=_hyperplane_classify)
    he = hsub.add_parser("enum")
    he.add_argument("geom")
    he.set_defaults(func=_hyperplane_enum)
    return p


def run_command(argv) -> tuple[int, str]:
    """Run one command; returns ``(exit code, output text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (USAGE if exc.code else OK), ""
    if args.jobs is None:
        args.jobs = os.cpu_count() or 1
    try:
        return args.func(args)
    except (UsageError, ParseError, DomainError, DescriptorError, ContractViolation) as exc:
        return USAGE, f"error: {exc}\n"
    except (FileNotFoundError, IsADirectoryError) as exc:
        return USAGE, f"error: {exc}\n"
    except NotPolygon as exc:
        return MATH_FAIL, f"CHECK polygon FAIL {exc}\n"
    except Truncated as exc:
        return MATH_FAIL, f"# truncated: {exc}\n"
    except PolylabError as exc:
        return MATH_FAIL, f"error: {exc}\n"


def main(argv=None) -> int:
    code, text = run_command(sys.argv[1:] if argv is None else argv)
    stream = sys.stdout if code != USAGE else sys.stderr
    stream.write(text)
    stream.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
