"""Exact de Rham style Stokes identities for Arnold and Shumakovitch type
invariants of plane curves and of surfaces given as movies."""

from .alexander import SURFACE_SHIFT, AlexanderCochain, cell_indices, compute_alexander
from .derham import StokesReport, check_stokes_curve
from .diagram import (
    CurveDiagram,
    DiagramError,
    DiagramSyntaxError,
    NonRealizableError,
    OuterFaceError,
    is_isomorphic,
    mirror,
    parse_diagram,
    reverse,
    serialize_diagram,
)
from .dual import build_dual
from .findiff import central_difference, normalization
from .geometry import diagram_from_polyline, random_diagram
from .invariants import base_sweep, per_vertex_ledger, st1, st_original
from .movie import Movie, SliceEvent, parse_movie, run_movie, slice_formula_check, st2_of_movie
from .report import verify_all
from .signs import epsilon, gleams, untwisted_signs
from .triplelocal import build_ball, check_stokes_surface

__version__ = "0.1.0"

__all__ = [
    "SURFACE_SHIFT",
    "AlexanderCochain",
    "CurveDiagram",
    "DiagramError",
    "DiagramSyntaxError",
    "Movie",
    "NonRealizableError",
    "OuterFaceError",
    "SliceEvent",
    "StokesReport",
    "base_sweep",
    "build_ball",
    "build_dual",
    "cell_indices",
    "central_difference",
    "check_stokes_curve",
    "check_stokes_surface",
    "compute_alexander",
    "diagram_from_polyline",
    "epsilon",
    "gleams",
    "is_isomorphic",
    "mirror",
    "normalization",
    "parse_diagram",
    "parse_movie",
    "per_vertex_ledger",
    "random_diagram",
    "reverse",
    "run_movie",
    "serialize_diagram",
    "slice_formula_check",
    "st1",
    "st2_of_movie",
    "st_original",
    "untwisted_signs",
    "verify_all",
]
