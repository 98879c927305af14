"""Exact valuation-level spectra of representations over a Puiseux field."""

from .charvar import (
    MinimalityReport,
    TraceCoordinates,
    closed_point_witness,
    minimality_residual,
    minimize_real,
    trace_coordinates,
    trace_inequality_ratio,
)
from .crossratio import Flag, cr_k, fixed_flags, period, sym_log_cr
from .degeneration import (
    LengthFunction,
    cone_consistency,
    length_function,
    pinch_twist_demo,
    projectivize,
    theta,
)
from .errors import BudgetExceeded, DomainError, ValconeError
from .kernels import BACKEND
from .matrix import FieldMatrix, GroupWord, Representation, load_representation, plucker, top_form
from .puiseux import T, FieldElem, PuiseuxPoly, compare, field, log_big, parse, specialize, sqrt_exact, val
from .spectra import (
    NewtonPolygon,
    Proximality,
    WeylNorm,
    WeylVector,
    cartan_vector,
    distance,
    is_proximal,
    jordan_vector,
    newton_polygon,
    translation_length,
)

__version__ = "0.1.0"
