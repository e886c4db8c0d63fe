"""End-to-end acceptance criteria.  Every comparison is exact."""

import subprocess
import sys
import time
from fractions import Fraction

import pytest

from dualstokes.alexander import cell_indices, compute_alexander
from dualstokes.corpus import CURVES, movie_corpus, single_riii_movie
from dualstokes.derham import check_stokes_curve, d2_curve
from dualstokes.diagram import reverse
from dualstokes.findiff import central_difference, monomial, normalization
from dualstokes.geometry import random_sample, sector_probes, winding_number
from dualstokes.invariants import base_sweep, per_vertex_ledger, st1
from dualstokes.movie import st2_of_movie
from dualstokes.signs import epsilon, gleams
from dualstokes.triplelocal import (
    build_ball,
    check_stokes_surface,
    d1_surface_eval,
    d2_surface_eval,
    d3_surface_eval,
    region_coefficients,
)
from helpers import criterion

SWEEP = [Fraction(k, 2) for k in range(-21, 22)]
RANDOM_COUNT, MAX_N, SEED = 200, 12, 7


@pytest.fixture(scope="module")
def random_set():
    t0 = time.perf_counter()
    out = []
    for i in range(RANDOM_COUNT):
        poly, d = random_sample(1 + i % MAX_N, SEED * 1_000_000 + i)
        out.append((poly, d))
    return out, time.perf_counter() - t0


def _all_diagrams(random_set):
    return [e.diagram for e in CURVES] + [d for _, d in random_set[0]]


def test_criterion_1_finite_differences():
    with criterion(1, "finite-difference backbone"):
        t0 = time.perf_counter()
        for x in SWEEP:
            assert central_difference(1, 1, monomial(2), x) == 2 * x
            assert central_difference(2, 1, monomial(3), x) == 6 * x
            assert central_difference(3, 1, monomial(4), x) == 24 * x
        got = [normalization(1, 1), normalization(2, 1), normalization(1, 3),
               normalization(2, 3), normalization(3, 1)]
        assert got == [Fraction(1, 2), Fraction(1, 6), Fraction(1, 6), Fraction(1, 18),
                       Fraction(1, 24)]
        assert time.perf_counter() - t0 < 1


def test_criterion_2_curve_stokes(random_set):
    with criterion(2, "curve Stokes at every double point"):
        t0 = time.perf_counter()
        diagrams = _all_diagrams(random_set)
        assert len(random_set[0]) >= 200
        assert max(d.V for _, d in random_set[0]) == 12
        for d in diagrams:
            phi = compute_alexander(d)
            ind = cell_indices(d, phi).vertices
            for row in check_stokes_curve(d, phi).rows:
                assert row.lhs == row.rhs == row.index == ind[row.vertex]
        assert random_set[1] + time.perf_counter() - t0 < 10


def test_criterion_3_untwisted_identity(random_set):
    with criterion(3, "St_(1) at point, edge and region level"):
        for d in _all_diagrams(random_set):
            r = st1(d)
            assert r.point == r.edge == r.region
        values = {e.name: st1(e.diagram) for e in CURVES}
        assert values["circle"].point == 0
        assert values["figure-eight"].point == 0
        assert values["one-kink"].point == 1
        # the same two values from the ray-casting numbering alone
        for name, want in (("figure-eight", 0), ("one-kink", 1)):
            e = next(c for c in CURVES if c.name == name)
            d = e.diagram
            wind = {}
            for region, p in sector_probes(e.polyline, d):
                wind.setdefault(region, winding_number(e.polyline, p))
            total = sum((sum(Fraction(wind[d.region(h)]) for h in d.sectors(v)) / 4
                         for v in d.crossings), Fraction(0))
            assert total == want == values[name].edge == values[name].region


def test_criterion_4_original_identity(random_set):
    with criterion(4, "St at three levels, base-edge invariance and ledger"):
        for d in _all_diagrams(random_set):
            phi = compute_alexander(d)
            sweep = base_sweep(d, phi)
            assert sweep
            assert len({x for r in sweep.values() for x in (r.point, r.edge, r.region)}) == 1
            if d.crossings:
                rows = per_vertex_ledger(d, phi, gleams(d, phi, epsilon(d)))
                for row in rows:
                    assert row.point == row.edge == row.region == row.epsilon * row.index


def test_criterion_5_surface_identities():
    with criterion(5, "surface identities on the triple point ball"):
        t0 = time.perf_counter()
        for x in SWEEP:
            ball = build_ball(x)
            assert d1_surface_eval(ball).value == x
            assert d2_surface_eval(ball).value == x
            assert d3_surface_eval(ball).value == x
            s = check_stokes_surface(ball)
            assert s.value == s.paired == x
            assert sorted(region_coefficients(ball).values()) == sorted([1, -3, 3, -1])
            assert list(region_coefficients(ball).values()) == [1, -3, 3, -1]
        assert time.perf_counter() - t0 < 1


def test_criterion_6_movie_engine():
    with criterion(6, "movie engine and St_(2)"):
        t0 = time.perf_counter()
        movies = movie_corpus()
        assert st2_of_movie(movies["sphere"]) == (0, [])
        assert st2_of_movie(movies["torus"]) == (0, [])
        single = single_riii_movie()
        for m in list(movies.values()) + [single]:
            _, recs = st2_of_movie(m)
            for r in recs:
                assert r.matches_ball
        total, (rec,) = st2_of_movie(single)
        ball = build_ball(rec.recovered_x)
        assert sorted(rec.values) == sorted(o.value for o in ball.octants)
        assert total == d3_surface_eval(ball).value == rec.recovered_x
        assert time.perf_counter() - t0 < 5


def test_criterion_7_reversal():
    with criterion(7, "orientation reversal negates st1-point and d2"):
        for e in CURVES:
            d = e.diagram
            r = reverse(d)
            a, b = compute_alexander(d), compute_alexander(r)
            assert st1(r).point == -st1(d).point
            for v in d.crossings:
                assert d2_curve(r, b, v) == -d2_curve(d, a, v)


def test_criterion_8_determinism():
    with criterion(8, "byte-identical verify records"):
        cmd = [sys.executable, "-m", "dualstokes", "verify", "--corpus", "--format", "records"]
        runs = [subprocess.run(cmd, capture_output=True) for _ in range(2)]
        assert all(r.returncode == 0 for r in runs)
        assert runs[0].stdout == runs[1].stdout
        assert runs[0].stdout
