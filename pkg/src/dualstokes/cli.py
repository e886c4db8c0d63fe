"""Command-line front end.

Exit codes: 0 when every check passes, 1 on an identity failure and 2
on unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .alexander import cell_indices, compute_alexander, dump_alexander
from .derham import check_stokes_curve
from .diagram import CurveDiagram, DiagramError, natural_key, parse_diagram, serialize_diagram
from .geometry import SamplingExhausted, random_sample
from .invariants import base_sweep, per_vertex_ledger, st1, st_original
from .movie import Movie, format_movie, parse_movie, slice_formula_check, st2_of_movie
from .report import (
    curve_suite,
    exit_code,
    findiff_suite,
    q,
    render,
    surface_suite,
    verify_all,
)
from .signs import epsilon, gleams, untwisted_signs

OK, FAIL, INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None


def _curve(path: str) -> CurveDiagram:
    try:
        return parse_diagram(_read(path))
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from None


def _movie(path: str) -> Movie:
    try:
        return parse_movie(_read(path))
    except DiagramError as exc:
        raise InputError(f"{path}: {exc}") from None


def _table(rows: Sequence[Sequence]) -> str:
    cells = [[q(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(cells[0]))]
    return "\n".join(
        "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells
    ) + "\n"


def _flag(ok: bool) -> str:
    return "pass" if ok else "FAIL"


# ----------------------------------------------------------------------
# curve


def cmd_curve_parse(a) -> int:
    d = _curve(a.file)
    sys.stdout.write(serialize_diagram(d))
    sys.stdout.write(f"# V={d.V} E={d.E} F={d.F} pieces={len(d.pieces)}\n")
    return OK


def cmd_curve_alexander(a) -> int:
    d = _curve(a.file)
    phi = compute_alexander(d, a.convention)
    ind = cell_indices(d, phi)
    rows = [("cell", "id", "value")]
    rows += [("region", r, v) for r, v in dump_alexander(d, phi)]
    rows += [("edge", e, ind.edges[e]) for e in d.edges]
    rows += [("vertex", v, ind.vertices[v]) for v in d.crossings]
    sys.stdout.write(_table(rows))
    return OK


def cmd_curve_stokes(a) -> int:
    d = _curve(a.file)
    rep = check_stokes_curve(d, all_germs=a.all_germs)
    if a.format == "records":
        check = "stokes-all-germs" if a.all_germs else "stokes"
        recs = [r for r in curve_suite(d) if r.check == check]
        sys.stdout.write(render(recs, "records"))
        return exit_code(recs)
    rows = [("vertex", "ind", "d2/6", "d1/2", "status")]
    rows += [(r.vertex, r.index, r.lhs, r.rhs, _flag(r.passed)) for r in rep.rows]
    sys.stdout.write(f"# {d.name}: {len(rep.rows)} double points\n")
    sys.stdout.write(_table(rows))
    return OK if rep.passed else FAIL


def cmd_curve_signs(a) -> int:
    d = _curve(a.file)
    phi = compute_alexander(d)
    u = untwisted_signs(d, phi)
    rows = [("vertex", "germ", "incoming", "edge", "region")]
    for (v, h), s in sorted(u.edge.items(), key=lambda kv: (natural_key(kv[0][0]), natural_key(kv[0][1]))):
        rows.append((v, h, "yes" if (v, h) in u.incoming else "no", s, u.region[(v, h)]))
    out = _table(rows) if d.crossings else "# no double points\n"
    if d.crossings and len(d.pieces) == 1:
        eps = epsilon(d, a.base, a.epsilon_convention)
        tw = gleams(d, phi, eps, u)
        out += "\n" + _table([("vertex", "epsilon")] + [(v, eps[v]) for v in d.crossings])
        out += "\n" + _table([("region", "gleam")] + [(r, tw.gleam[r]) for r in sorted(tw.gleam, key=natural_key)])
    sys.stdout.write(out)
    return OK


def cmd_curve_invariants(a) -> int:
    d = _curve(a.file)
    if a.format == "records":
        recs = curve_suite(d, convention=a.epsilon_convention)
        sys.stdout.write(render(recs, "records"))
        return exit_code(recs)
    phi = compute_alexander(d)
    u = st1(d, phi)
    rows = [("family", "point", "edge", "region", "status"),
            ("St1", u.point, u.edge, u.region, _flag(u.passed))]
    ok = u.passed
    out = []
    if len(d.pieces) == 1:
        st = st_original(d, phi, base=a.base, convention=a.epsilon_convention)
        rows.append(("St", st.point, st.edge, st.region, _flag(st.passed)))
        ok &= st.passed
        sweep = base_sweep(d, phi, a.epsilon_convention)
        srows = [("base", "point", "edge", "region", "status")]
        srows += [(b, r.point, r.edge, r.region, _flag(r.passed)) for b, r in sweep.items()]
        invariant = len({x for r in sweep.values() for x in (r.point, r.edge, r.region)}) == 1
        ok &= invariant
        out.append(f"\n# base-edge sweep: {_flag(invariant)}\n" + _table(srows))
        if d.crossings:
            eps = epsilon(d, a.base, a.epsilon_convention)
            led = per_vertex_ledger(d, phi, gleams(d, phi, eps))
            lrows = [("vertex", "eps", "ind", "point", "edge", "region", "status")]
            lrows += [(r.vertex, r.epsilon, r.index, r.point, r.edge, r.region, _flag(r.passed))
                      for r in led]
            ok &= all(r.passed for r in led)
            out.append("\n# per-vertex ledger\n" + _table(lrows))
    sys.stdout.write(f"# {d.name} (epsilon convention {a.epsilon_convention})\n")
    sys.stdout.write(_table(rows) + "".join(out))
    return OK if ok else FAIL


# ----------------------------------------------------------------------
# local sweeps and movies


def _emit(recs, a) -> int:
    sys.stdout.write(render(recs, a.format, verbose=getattr(a, "verbose", False)))
    return exit_code(recs)


def cmd_surface_local_check(a) -> int:
    return _emit(surface_suite(a.range), a)


def cmd_findiff_sweep(a) -> int:
    return _emit(findiff_suite(a.range), a)


def cmd_movie_st2(a) -> int:
    m = _movie(a.file)
    total, records = st2_of_movie(m)
    rows = [("event", "before", "after", "sectors", "ind", "cube")]
    rows += [(r.event, r.triangle_before, r.triangle_after, ",".join(q(s) for s in r.sectors),
              r.ind, _flag(r.matches_ball)) for r in records]
    sys.stdout.write(f"# {m.name}: shift {q(m.shift)}, {len(m.events)} events\n")
    if records:
        sys.stdout.write(_table(rows))
    sys.stdout.write(f"St2 = {q(total)}\n")
    return OK if all(r.matches_ball for r in records) else FAIL


def cmd_movie_compare(a) -> int:
    before, after = _movie(a.before), _movie(a.after)
    label: str | int = a.event if a.event is not None else "given"
    try:
        dst1 = Fraction(a.dst1) if a.dst1 is not None else None
    except ValueError:
        raise InputError(f"bad --dst1 value {a.dst1!r}") from None
    chk = slice_formula_check(before, after, label, a.sigma, dst1)
    rows = [("St2 before", chk.st2_before), ("St2 after", chk.st2_after),
            ("dSt2", chk.dst2), ("dSt1", chk.dst1), ("sigma", chk.sigma),
            ("dSt2 = dSt1 + sigma", _flag(chk.passed))]
    sys.stdout.write(_table(rows))
    return OK if chk.passed else FAIL


def cmd_verify(a) -> int:
    if not (a.paths or a.corpus or a.random):
        raise InputError("nothing to verify: give files, --corpus or --random N")
    recs = verify_all(a.paths, corpus=a.corpus, random_count=a.random, max_n=a.max_n,
                      seed=a.seed, convention=a.epsilon_convention)
    return _emit(recs, a)


def cmd_gen(a) -> int:
    if a.n < 1:
        raise InputError("random diagrams need at least one crossing")
    try:
        poly, d = random_sample(a.n, a.seed)
    except SamplingExhausted as exc:
        raise InputError(str(exc)) from None
    if a.coords:
        sys.stdout.write("# " + " ".join(f"{x},{y}" for x, y in poly) + "\n")
    sys.stdout.write(serialize_diagram(d))
    return OK


def cmd_movie_format(a) -> int:
    sys.stdout.write(format_movie(_movie(a.file), frames=not a.events_only))
    return OK


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dualstokes", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    conv = argparse.ArgumentParser(add_help=False)
    conv.add_argument("--epsilon-convention", choices=("paper", "opposite"), default="paper")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "records"), default="text")
    rng = argparse.ArgumentParser(add_help=False)
    rng.add_argument("--range", type=int, default=21, help="sweep x = k/2 for |k| <= RANGE")
    rng.add_argument("-v", "--verbose", action="store_true")

    curve = sub.add_parser("curve", help="single curve diagrams").add_subparsers(
        dest="action", required=True)
    c = curve.add_parser("parse", help="validate and print in canonical form")
    c.add_argument("file")
    c.set_defaults(func=cmd_curve_parse)
    c = curve.add_parser("alexander", help="Alexander numbering and cell indices")
    c.add_argument("file")
    c.add_argument("--convention", choices=("curve", "surface"), default="curve")
    c.set_defaults(func=cmd_curve_alexander)
    c = curve.add_parser("stokes", parents=[fmt], help="per double point Stokes check")
    c.add_argument("file")
    c.add_argument("--all-germs", action="store_true")
    c.set_defaults(func=cmd_curve_stokes)
    c = curve.add_parser("signs", parents=[conv], help="untwisted and twisted signs")
    c.add_argument("file")
    c.add_argument("--base")
    c.set_defaults(func=cmd_curve_signs)
    c = curve.add_parser("invariants", parents=[conv, fmt], help="St1 and St at three levels")
    c.add_argument("file")
    c.add_argument("--base")
    c.set_defaults(func=cmd_curve_invariants)

    surface = sub.add_parser("surface", help="triple point ball").add_subparsers(
        dest="action", required=True)
    c = surface.add_parser("local-check", parents=[fmt, rng])
    c.set_defaults(func=cmd_surface_local_check)

    findiff = sub.add_parser("findiff", help="finite differences").add_subparsers(
        dest="action", required=True)
    c = findiff.add_parser("sweep", parents=[fmt, rng])
    c.set_defaults(func=cmd_findiff_sweep)

    movie = sub.add_parser("movie", help="surfaces as movies").add_subparsers(
        dest="action", required=True)
    c = movie.add_parser("st2", help="St2 as a sum over triangle flips")
    c.add_argument("file")
    c.set_defaults(func=cmd_movie_st2)
    c = movie.add_parser("compare", help="dSt2 = dSt1 + sigma on a movie pair")
    c.add_argument("before")
    c.add_argument("after")
    c.add_argument("--sigma", type=int, choices=(1, -1), required=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--event", type=int, help="take dSt1 from this event of AFTER")
    g.add_argument("--dst1", help="explicit slice jump, e.g. -1/2")
    c.set_defaults(func=cmd_movie_compare)
    c = movie.add_parser("format", help="replay and print with all frames")
    c.add_argument("file")
    c.add_argument("--events-only", action="store_true")
    c.set_defaults(func=cmd_movie_format)

    c = sub.add_parser("verify", parents=[conv, fmt], help="run every identity suite")
    c.add_argument("paths", nargs="*")
    c.add_argument("--corpus", action="store_true")
    c.add_argument("--random", type=int, default=0, metavar="N")
    c.add_argument("--max-n", type=int, default=12, metavar="K")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("-v", "--verbose", action="store_true")
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("gen", help="random curve with N crossings")
    c.add_argument("n", type=int)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--coords", action="store_true", help="also print the polyline")
    c.set_defaults(func=cmd_gen)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "max_n", 1) < 1:
        print("error: --max-n must be at least 1", file=sys.stderr)
        return INPUT
    try:
        return args.func(args)
    except (InputError, DiagramError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT


if __name__ == "__main__":
    sys.exit(main())
