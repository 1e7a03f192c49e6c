"""Exact RO(C2)-graded Bredon cohomology of Rep(C2)-complexes."""
from .attach import AttachResult, CaseTag, ShiftReport, attach_cell, classify, kronholm_shifts
from .errors import (
    DegreeMismatch,
    InvalidOrdering,
    KronholmError,
    NoTopImage,
    NotRealizable,
    ParseError,
    PreconditionViolated,
    UnknownLabel,
    ValidationError,
)
from .modules import (
    Differential,
    FreeModule,
    Generator,
    GradedMap,
    ModuleElem,
    apply_map,
    compose_change,
    differential,
    matrix_at,
    mod_dim,
)
from .pipeline import CellComplexSpec, CellSpec, Trace, compute, query_finite_type, validate
from .ring import (
    ONE,
    RHO,
    TAU,
    THETA,
    ZERO,
    Bidegree,
    Bottom,
    Top,
    m2_dim,
    m2_mul,
    parse_monomial,
    format_monomial,
)
from .settings import APP_VERSION

__version__ = APP_VERSION
