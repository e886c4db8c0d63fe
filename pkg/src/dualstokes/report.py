"""Identity suites and their reports.

Every check produces one :class:`Record`.  Records render either as a
human-readable line or as one JSON object per line; both forms are
deterministic so reports can be diffed.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Iterable, Literal, Mapping, Sequence

from .alexander import compute_alexander
from .corpus import CURVES, movie_corpus, single_riii_movie
from .derham import check_stokes_curve, d2_curve
from .diagram import (
    CurveDiagram,
    DiagramError,
    DiagramSyntaxError,
    NonRealizableError,
    OuterFaceError,
    parse_diagram,
    reverse,
)
from .findiff import central_difference, monomial, normalization
from .geometry import SamplingExhausted, random_sample, sector_probes, winding_number
from .invariants import base_sweep, per_vertex_ledger, st1
from .movie import Movie, MovieError, TriplePointRecord, parse_movie, reverse_movie, st2_of_movie
from .signs import EpsilonConvention, epsilon, gleams
from .triplelocal import (
    build_ball,
    check_stokes_surface,
    d1_surface_eval,
    d2_surface_eval,
    d3_surface_eval,
    flip_coorientation,
    region_coefficients,
    shumakovitch_surface,
)

__all__ = [
    "Record",
    "curve_suite",
    "exit_code",
    "findiff_suite",
    "load_path",
    "movie_suite",
    "q",
    "render",
    "surface_suite",
    "verify_all",
]

Status = Literal["pass", "fail", "error", "skip"]

# exact values of 1/(m (r+1)!) for the five tabulated (r, m) pairs
NORMALIZATION_TABLE = {
    (1, 1): Fraction(1, 2),
    (2, 1): Fraction(1, 6),
    (1, 3): Fraction(1, 6),
    (2, 3): Fraction(1, 18),
    (3, 1): Fraction(1, 24),
}


def q(x) -> str:
    """Rationals as ``a/b``, integers bare."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (tuple, list)):
        return " ".join(q(v) for v in x)
    return str(x)


@dataclass(frozen=True)
class Record:
    suite: str
    subject: str
    check: str
    status: Status
    values: tuple[tuple[str, str], ...] = ()
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.status in ("pass", "skip")

    def as_json(self) -> str:
        obj = {
            "suite": self.suite,
            "subject": self.subject,
            "check": self.check,
            "status": self.status,
            "values": dict(self.values),
        }
        if self.message:
            obj["message"] = self.message
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def as_text(self) -> str:
        parts = [f"{self.status.upper():5}", f"{self.suite}/{self.subject}", self.check]
        parts += [f"{k}={v}" for k, v in self.values]
        if self.message:
            parts.append(f"-- {self.message}")
        return " ".join(parts)


def _rec(suite: str, subject: str, check: str, ok: bool, message: str = "", **values) -> Record:
    return Record(suite, subject, check, "pass" if ok else "fail",
                  tuple((k, q(v)) for k, v in values.items()), message)


def _err(suite: str, subject: str, check: str, exc: BaseException | str) -> Record:
    return Record(suite, subject, check, "error", (), str(exc))


# ----------------------------------------------------------------------
# curves


def curve_suite(
    d: CurveDiagram,
    *,
    polyline: Sequence[Sequence] | None = None,
    expected: Mapping[str, Fraction] | None = None,
    convention: EpsilonConvention = "paper",
) -> list[Record]:
    name = d.name
    rec = lambda check, ok, message="", **kw: _rec("curve", name, check, ok, message, **kw)  # noqa: E731
    try:
        phi = compute_alexander(d)
    except DiagramError as exc:
        return [_err("curve", name, "alexander", exc)]
    out = [rec("structure", True, V=d.V, E=d.E, F=d.F, pieces=len(d.pieces))]

    if polyline is not None:
        probes = sector_probes(polyline, d)
        bad = [r for r, p in probes if winding_number(polyline, p) != phi[r]]
        out.append(rec("winding-oracle", not bad, probes=len(probes), mismatches=len(bad)))

    for all_germs, check in ((False, "stokes"), (True, "stokes-all-germs")):
        for row in check_stokes_curve(d, phi, all_germs=all_germs).rows:
            out.append(rec(check, row.passed, vertex=row.vertex, ind=row.index,
                           d2=row.lhs, d1=row.rhs))

    u = st1(d, phi)
    out.append(rec("st1", u.passed, point=u.point, edge=u.edge, region=u.region))

    dr = reverse(d)
    phir = compute_alexander(dr)
    ur = st1(dr, phir)
    flipped = [v for v in d.crossings if d2_curve(dr, phir, v) != -d2_curve(d, phi, v)]
    out.append(rec("reversal", ur.point == -u.point and not flipped,
                   st1=u.point, st1_reversed=ur.point, d2_unflipped=len(flipped)))

    actual: dict[str, Fraction] = {"st1": u.point}
    if len(d.pieces) != 1:
        out.append(Record("curve", name, "st", "skip", (), "St needs a single closed curve"))
    else:
        sweep = base_sweep(d, phi, convention)
        for b, rep in sweep.items():
            out.append(rec("st", rep.passed, base=b, point=rep.point, edge=rep.edge,
                           region=rep.region))
        totals = {x for rep in sweep.values() for x in (rep.point, rep.edge, rep.region)}
        value = next(iter(totals)) if len(totals) == 1 else None
        out.append(rec("st-base-invariance", value is not None, bases=len(sweep),
                       value=value if value is not None else "mixed"))
        if value is not None:
            actual["st"] = value
        if d.crossings:
            eps = epsilon(d, None, convention)
            for row in per_vertex_ledger(d, phi, gleams(d, phi, eps)):
                out.append(rec("ledger", row.passed, vertex=row.vertex, eps=row.epsilon,
                               ind=row.index, point=row.point, edge=row.edge, region=row.region))

    for key, want in sorted((expected or {}).items()):
        got = actual.get(key)
        out.append(rec(f"expected-{key}", got == want, expected=want,
                       actual=got if got is not None else "none"))
    return out


# ----------------------------------------------------------------------
# local sweeps


def findiff_suite(r_range: int = 21) -> list[Record]:
    out = []
    xs = [Fraction(k, 2) for k in range(-r_range, r_range + 1)]
    for r in (1, 2, 3):
        bad = [x for x in xs if central_difference(r, 1, monomial(r + 1), x) != factorial(r + 1) * x]
        out.append(_rec("findiff", f"D{r}", "monomial", not bad, points=len(xs), failures=len(bad)))
    for (r, m), want in NORMALIZATION_TABLE.items():
        got = normalization(r, m)
        out.append(_rec("findiff", f"r={r},m={m}", "normalization", got == want,
                        expected=want, actual=got))
    return out


def surface_suite(r_range: int = 21) -> list[Record]:
    out = []
    balls = []
    for k in range(-r_range, r_range + 1):
        ball = build_ball(Fraction(k, 2))
        balls.append(ball)
        subject = f"x={q(ball.x)}"
        levels = [d1_surface_eval(ball), d2_surface_eval(ball), d3_surface_eval(ball)]
        st = check_stokes_surface(ball)
        out.append(_rec("surface", subject, "levels", all(c.passed for c in levels) and st.passed,
                        point=ball.x, edge=levels[0].value, face=levels[1].value,
                        region=levels[2].value, stokes=st.paired))
        flipped = flip_coorientation(ball)
        neg = [d1_surface_eval(flipped).value, d2_surface_eval(flipped).value,
               d3_surface_eval(flipped).value]
        out.append(_rec("surface", subject, "coorientation-flip",
                        neg == [-c.value for c in levels], edge=neg[0], face=neg[1], region=neg[2]))
        coeffs = list(region_coefficients(ball).values())
        out.append(_rec("surface", subject, "region-coefficients", coeffs == [1, -3, 3, -1],
                        coefficients=tuple(coeffs)))
    tot = shumakovitch_surface(balls)
    out.append(_rec("surface", "all", "totals", tot.passed, point=tot.point, edge=tot.edge,
                    face=tot.face, region=tot.region))
    return out


# ----------------------------------------------------------------------
# movies


def region_level_of_record(rec: TriplePointRecord) -> Fraction:
    """(1/24) sum of sign * value^4 over the eight values around a flip.

    In the cube pattern the octant sign is fixed by the offset of the
    value from the centre: +1 at +3/2 and -1/2, -1 at +1/2 and -3/2.
    """
    x = rec.recovered_x
    sign = {Fraction(3, 2): 1, Fraction(1, 2): -1, Fraction(-1, 2): 1, Fraction(-3, 2): -1}
    raw = sum((sign[v - x] * v**4 for v in rec.values), Fraction(0))
    return normalization(3, 1) * raw


def movie_suite(m: Movie, expected_st2: Fraction | None = None) -> list[Record]:
    name = m.name
    try:
        total, records = st2_of_movie(m)
    except MovieError as exc:
        return [_err("movie", name, "st2", exc)]
    out = [_rec("movie", name, "st2", True, value=total, flips=len(records),
                closed=m.closed)]
    for r in records:
        out.append(_rec("movie", name, "triple-point", r.matches_ball, event=r.event, ind=r.ind,
                        values=tuple(sorted(r.values))))
        lvl = region_level_of_record(r)
        out.append(_rec("movie", name, "ball-region-level", lvl == r.ind, event=r.event,
                        region=lvl, ind=r.ind))
    try:
        back, _ = st2_of_movie(reverse_movie(m))
    except MovieError as exc:
        out.append(_err("movie", name, "time-reversal", exc))
    else:
        out.append(_rec("movie", name, "time-reversal", back == total, st2=total, reversed=back))
    if expected_st2 is not None:
        out.append(_rec("movie", name, "expected-st2", total == expected_st2,
                        expected=expected_st2, actual=total))
    return out


# surfaces without triple points; the value is forced
MOVIE_EXPECTED = {"sphere": Fraction(0), "torus": Fraction(0), "two-spheres-tubed": Fraction(0)}


# ----------------------------------------------------------------------
# driver


def load_path(path: str | Path) -> CurveDiagram | Movie:
    """A ``.curve`` diagram or a movie, told apart by the first record."""
    text = Path(path).read_text()
    first = next((ln.split("#", 1)[0].split() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), [""])
    if first[0] == "movie":
        return parse_movie(text)
    return parse_diagram(text)


def verify_all(
    paths: Iterable[str | Path] = (),
    *,
    corpus: bool = False,
    random_count: int = 0,
    max_n: int = 12,
    seed: int = 0,
    convention: EpsilonConvention = "paper",
    local_range: int = 21,
) -> list[Record]:
    out: list[Record] = []
    out += findiff_suite(local_range)
    out += surface_suite(local_range)
    if corpus:
        for e in CURVES:
            out += curve_suite(e.diagram, polyline=e.polyline, expected=e.expected,
                               convention=convention)
        for name, m in movie_corpus().items():
            out += movie_suite(m, MOVIE_EXPECTED.get(name))
        out += movie_suite(single_riii_movie())
    for i in range(random_count):
        n = 1 + i % max_n
        s = seed * 1_000_000 + i
        try:
            poly, d = random_sample(n, s)
        except SamplingExhausted as exc:
            out.append(_err("random", f"n{n}-s{s}", "sample", exc))
            continue
        out += curve_suite(d, polyline=poly, convention=convention)
    for p in paths:
        try:
            obj = load_path(p)
        except (OSError, DiagramError) as exc:
            out.append(_err("input", str(p), _input_check(exc), exc))
            continue
        if isinstance(obj, Movie):
            out += movie_suite(obj)
        else:
            out += curve_suite(obj, convention=convention)
    return out


def _input_check(exc: BaseException) -> str:
    """Name of the check an input error comes from."""
    if isinstance(exc, OSError):
        return "read"
    if isinstance(exc, MovieError):
        return "movie"
    if isinstance(exc, NonRealizableError):
        return "euler"
    if isinstance(exc, OuterFaceError):
        return "outer-face"
    if isinstance(exc, DiagramSyntaxError):
        return "syntax"
    return "diagram"


def exit_code(records: Iterable[Record]) -> int:
    status = Counter(r.status for r in records)
    if status["error"]:
        return 2
    return 1 if status["fail"] else 0


def render(records: Sequence[Record], fmt: Literal["text", "records"] = "text",
           verbose: bool = False) -> str:
    if fmt == "records":
        return "".join(r.as_json() + "\n" for r in records)
    lines = [r.as_text() for r in records if verbose or not r.ok]
    tally: dict[str, Counter] = {}
    for r in records:
        tally.setdefault(r.suite, Counter())[r.status] += 1
    for suite, c in tally.items():
        lines.append(f"{suite}: " + ", ".join(f"{c[s]} {s}" for s in ("pass", "fail", "error", "skip")
                                              if c[s]))
    code = exit_code(records)
    lines.append({0: "all checks passed", 1: "identity failures", 2: "input errors"}[code])
    return "\n".join(lines) + "\n"
