"""Run the attach step over an ordered cell list, and answer finite-type queries."""
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

from .attach import AttachResult, CaseTag, attach_cell
from .errors import (
    DegreeMismatch,
    InvalidOrdering,
    KronholmError,
    NotRealizable,
    PreconditionViolated,
    UnknownLabel,
    ValidationError,
)
from .log import get_logger
from .modules import Differential, FreeModule, as_bidegree, differential, mod_dim
from .oracle import DimTable, Window, localization_check, verify_stage
from .ring import Bidegree, M2Elem

logger = get_logger(__name__)


@dataclass(frozen=True)
class CellSpec:
    """One representation cell and the images of the previous stage's generators."""
    deg: Bidegree
    images: Tuple[Tuple[str, M2Elem], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "deg", as_bidegree(self.deg))
        raw = self.images.items() if isinstance(self.images, Mapping) else self.images
        object.__setattr__(self, "images", tuple((str(label), c) for label, c in raw))

    def images_dict(self) -> Dict[str, M2Elem]:
        return dict(self.images)


@dataclass(frozen=True)
class CellComplexSpec:
    name: str
    cells: Tuple[CellSpec, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "cells", tuple(self.cells))

    @property
    def dimension(self) -> int:
        return max((c.deg.p for c in self.cells), default=0)


@dataclass(frozen=True)
class Stage:
    index: int              # 1-based
    cell: CellSpec
    basis: FreeModule       # input basis of this stage
    differential: Differential
    result: AttachResult


@dataclass(frozen=True)
class Trace:
    name: str
    stages: Tuple[Stage, ...]
    final: FreeModule
    aborted_at: Optional[int] = None


@dataclass(frozen=True)
class Violation:
    kind: str
    index: int
    message: str

    def __str__(self):
        return f"{self.kind} at index {self.index}: {self.message}"


def cell_label(stage: int) -> str:
    return f"g{stage}"


def _ordering_violations(cells: Sequence[CellSpec]) -> List[Violation]:
    found = []
    for i, cell in enumerate(cells):
        p, q = cell.deg.p, cell.deg.q
        if not (0 <= q <= p):
            found.append(Violation("InvalidCell", i, f"{cell.deg} is not a representation bidegree (need 0 <= q <= p)"))
        if i and cell.deg.as_tuple() < cells[i - 1].deg.as_tuple():
            found.append(Violation("InvalidOrdering", i,
                                   f"{cell.deg} listed after {cells[i - 1].deg}"))
    return found


def _stage_differential(basis: FreeModule, cell: CellSpec, stage: int) -> Differential:
    for label, _ in cell.images:
        if label not in basis:
            raise UnknownLabel(label, stage=stage)
    try:
        return differential(basis, cell.deg, cell.images_dict(), target_label=cell_label(stage))
    except DegreeMismatch as e:
        raise DegreeMismatch(f"stage {stage}: {e.message}")


def validate(spec: CellComplexSpec) -> List[Violation]:
    """Report-valued check; label scopes come from dry-running the engine."""
    violations = _ordering_violations(spec.cells)
    if violations:
        return violations
    basis = FreeModule()
    for i, cell in enumerate(spec.cells):
        stage = i + 1
        local = []
        for label, c in cell.images:
            if label not in basis:
                local.append(Violation("UnknownLabel", i, f"'{label}' is not in the stage {stage - 1} basis"))
                continue
            expected = basis.deg_of(label) + Bidegree(1, 0) - cell.deg
            if c and c.deg != expected:
                local.append(Violation("DegreeMismatch", i,
                                       f"image {c} of {label} has bidegree {c.deg}, expected {expected}"))
        if local:
            violations.extend(local)
            break
        try:
            d = _stage_differential(basis, cell, stage)
            basis = attach_cell(basis, cell.deg, d, stage=stage).new_module
        except KronholmError as e:
            # not a document error; compute reports it
            logger.debug("validate: dry run stopped at stage %d: %s", stage, e)
            break
    return violations


def _check_cells(cells: Sequence[CellSpec], where: str = "") -> None:
    bad = _ordering_violations(cells)
    invalid = [v for v in bad if v.kind == "InvalidCell"]
    if invalid:
        raise ValidationError(invalid)
    if bad:
        raise InvalidOrdering(f"{where}{bad[0]}", index=bad[0].index)


def compute(spec: CellComplexSpec, algebraic: bool = False) -> Trace:
    """Attach the cells one at a time starting from the base point."""
    _check_cells(spec.cells)
    basis = FreeModule()
    stages: List[Stage] = []
    for i, cell in enumerate(spec.cells):
        stage = i + 1
        d = _stage_differential(basis, cell, stage)
        try:
            result = attach_cell(basis, cell.deg, d, stage=stage)
        except NotRealizable as e:
            e.stage = stage
            if not algebraic:
                raise
            logger.warning("stage %d aborted: %s", stage, e.message)
            return Trace(spec.name, tuple(stages), basis, aborted_at=stage)
        stages.append(Stage(stage, cell, basis, d, result))
        basis = result.new_module
    logger.info("%s: %d stage(s), %d generator(s)", spec.name, len(stages), len(basis))
    return Trace(spec.name, tuple(stages), basis)


class CellStream(Protocol):
    """Pull-based cell source with the finite-type contract."""
    name: str

    def __iter__(self) -> Iterator[CellSpec]:
        ...

    def cells_with_fix_at_most(self, i: int) -> List[CellSpec]:
        """Finite prefix containing every cell with p - q <= i."""
        ...


class FiniteStream:
    def __init__(self, spec: CellComplexSpec):
        self.spec = spec
        self.name = spec.name

    def __iter__(self) -> Iterator[CellSpec]:
        return iter(self.spec.cells)

    def cells_with_fix_at_most(self, i: int) -> List[CellSpec]:
        last = -1
        for index, cell in enumerate(self.spec.cells):
            if cell.deg.fix <= i:
                last = index
        return list(self.spec.cells[:last + 1])


def truncation_bound(p: int, q: int) -> int:
    return max(p, p - q - 2) + 1


def _prefix_trace(stream: CellStream, i: int) -> Trace:
    cells = stream.cells_with_fix_at_most(i)
    _check_cells(cells, f"stream {stream.name}: ")
    return compute(CellComplexSpec(f"{stream.name}[fix<={i}]", tuple(cells)))


def query_finite_type(stream: Union[CellStream, CellComplexSpec], p: int, q: int,
                      truncation: Optional[int] = None) -> int:
    if isinstance(stream, CellComplexSpec):
        stream = FiniteStream(stream)
    bound = truncation_bound(p, q)
    i = bound if truncation is None else truncation
    if i < bound:
        raise PreconditionViolated(f"truncation {i} is below the bound {bound} for ({p},{q})")
    trace = _prefix_trace(stream, i)
    return mod_dim(trace.final, p, q)


def _window_trace(stream: Union[CellStream, CellComplexSpec], window: Window) -> Trace:
    """One truncation large enough for every bidegree of the window."""
    if isinstance(stream, CellComplexSpec):
        stream = FiniteStream(stream)
    return _prefix_trace(stream, truncation_bound(window.p_max, window.q_min))


def query_table(stream: Union[CellStream, CellComplexSpec], window: Window) -> DimTable:
    final = _window_trace(stream, window).final
    return DimTable(window, tuple((pt, mod_dim(final, *pt)) for pt in window.points()))


def window_generators(stream: Union[CellStream, CellComplexSpec], window: Window) -> List[Bidegree]:
    """Generators of the truncated computation that lie inside the window."""
    final = _window_trace(stream, window).final
    return sorted(g.deg for g in final.gens if g.deg.as_tuple() in window)


@dataclass(frozen=True)
class StageCheck:
    index: int
    discrepancies: int
    localization_ok: Optional[bool]   # None unless the stage closed a ramp

    @property
    def ok(self) -> bool:
        return self.discrepancies == 0 and self.localization_ok is not False


@dataclass(frozen=True)
class TraceCheck:
    stages: Tuple[StageCheck, ...]
    window: Optional[Window]

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.stages)


def verify_trace(trace: Trace, margin: int = 4) -> TraceCheck:
    """Run the LES oracle (and the localization check for ramps) on every stage."""
    checks = []
    degs: List[Bidegree] = []
    for st in trace.stages:
        table = verify_stage(st.basis, st.cell.deg, st.differential, st.result, margin)
        loc = None
        if st.result.case is CaseTag.BOTTOM_CONE_RAMP:
            loc = localization_check(st.basis, st.cell.deg, st.result)
        checks.append(StageCheck(st.index, len(table), loc))
        degs.extend(g.deg for g in st.basis.gens)
        degs.append(st.cell.deg)
    window = Window.around(degs + [g.deg for g in trace.final.gens], margin) if trace.stages else None
    return TraceCheck(tuple(checks), window)
