"""One inductive step: attach a representation cell and read off the new free basis."""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import NotRealizable, PreconditionViolated
from .log import get_logger
from .modules import (
    Differential,
    FreeModule,
    Generator,
    ModuleElem,
    apply_map,
    as_bidegree,
    gen_elem,
    zero_elem,
)
from .reduction import RampReduction, check_hypothesis, reduce_bottom_cone, reduce_top_cone
from .ring import Bidegree, Top, is_theta_survivor

logger = get_logger(__name__)


class CaseTag(str, Enum):
    ZERO_DIFFERENTIAL = "ZeroDifferential"
    TOP_CONE_KILL = "TopConeKill"
    BOTTOM_CONE_RAMP = "BottomConeRamp"


@dataclass(frozen=True)
class ShiftReport:
    ramp: Tuple[str, ...]
    exponents: Tuple[Tuple[int, int], ...]
    shifts: Tuple[int, ...]
    nu_shift: int


@dataclass(frozen=True)
class AttachResult:
    """``chart`` sends each new label to the element of the OLD basis it restricts to."""
    case: CaseTag
    new_module: FreeModule
    chart: Tuple[Tuple[str, ModuleElem], ...]
    shift_report: Optional[ShiftReport] = None
    pi_star: Tuple[str, ...] = ()
    theta_survivors: Tuple[str, ...] = ()
    removed: Optional[str] = None

    def chart_elem(self, label: str) -> ModuleElem:
        for l, elem in self.chart:
            if l == label:
                return elem
        raise KeyError(label)


def classify(d: Differential) -> CaseTag:
    check_hypothesis(d)
    if d.is_zero:
        return CaseTag.ZERO_DIFFERENTIAL
    if any(isinstance(c, Top) for c in d.images().values()):
        red = reduce_top_cone(d)
        if red.k0 > 0:
            raise NotRealizable(
                f"top-cone image tau^{red.k0} on {red.lambda_label} is not onto the new cell")
        return CaseTag.TOP_CONE_KILL
    return CaseTag.BOTTOM_CONE_RAMP


def kronholm_shifts(k: Sequence[int]) -> List[int]:
    """Weight shifts of the ramp generators: s1 = k1 + 1, s_i = k_i - k_(i-1)."""
    k = list(k)
    if not k:
        return []
    if k[0] < 0:
        raise PreconditionViolated(f"tau exponents must be nonnegative, got {k}")
    for prev, cur in zip(k, k[1:]):
        if cur <= prev:
            raise PreconditionViolated(f"tau exponents must be strictly increasing, got {k}")
    return [k[0] + 1] + [cur - prev for prev, cur in zip(k, k[1:])]


def _theta_survivors(chart: Sequence[Tuple[str, ModuleElem]], skip: Sequence[str]) -> Tuple[str, ...]:
    return tuple(label for label, elem in chart
                 if label not in skip and is_theta_survivor(c for _, c in elem.coeffs))


def _ramp_chart(red: RampReduction, cell: Bidegree, stage: int):
    """New generators a_0..a_n of the bottom-cone case, in the reduced basis."""
    basis = red.new_basis
    steps = red.ramp
    n = len(steps)
    shifts = kronholm_shifts([s.k for s in steps])
    omega = [basis.deg_of(s.label) for s in steps]

    elems: List[ModuleElem] = []
    expected: List[Bidegree] = []
    # a_0 = tau^(k_1 + 1) w_1
    elems.append(ModuleElem(basis, omega[0] + Top(0, steps[0].k + 1).deg,
                            {steps[0].label: Top(0, steps[0].k + 1)}))
    expected.append(omega[0] + Bidegree(0, shifts[0]))
    # a_i = rho^(j_i - j_(i+1)) w_i + tau^(k_(i+1) - k_i) w_(i+1)
    for i in range(n - 1):
        left, right = steps[i], steps[i + 1]
        rho_part = Top(left.j - right.j, 0)
        tau_part = Top(0, right.k - left.k)
        elems.append(ModuleElem(basis, omega[i] + rho_part.deg,
                                {left.label: rho_part, right.label: tau_part}))
        expected.append(omega[i + 1] + Bidegree(0, shifts[i + 1]))
    # a_n = rho^(j_n + 1) w_n
    last = Top(steps[-1].j + 1, 0)
    elems.append(ModuleElem(basis, omega[-1] + last.deg, {steps[-1].label: last}))
    expected.append(cell - Bidegree(0, steps[-1].k + 1))

    for i, (elem, deg) in enumerate(zip(elems, expected)):
        if elem.deg != deg:
            raise AssertionError(f"a_{i} lands in {elem.deg}, shift formula gives {deg}")
        if not apply_map(red.reduced, elem).is_zero:
            raise AssertionError(f"a_{i} is not in the kernel of the differential")

    labels = [f"a{stage}_{i}" for i in range(n + 1)]
    report = ShiftReport(
        ramp=tuple(s.label for s in steps),
        exponents=tuple((s.j, s.k) for s in steps),
        shifts=tuple(shifts),
        nu_shift=sum(shifts),
    )
    return labels, elems, report


def attach_cell(basis: FreeModule, cell, d: Differential, stage: int = 1) -> AttachResult:
    """Cohomology of the next stage from the old basis and the attaching differential."""
    cell = as_bidegree(cell)
    if d.source != basis:
        raise PreconditionViolated("differential source is not the current basis")
    if d.nu.deg != cell:
        raise PreconditionViolated(f"differential target sits in {d.nu.deg}, cell is {cell}")

    case = classify(d)
    prefix = f"chi{stage}"
    chart: List[Tuple[str, ModuleElem]] = []

    if case is CaseTag.ZERO_DIFFERENTIAL:
        new_module = FreeModule(basis.gens + (Generator(d.nu.label, cell),))
        chart = [(g.label, gen_elem(basis, g.label)) for g in basis.gens]
        chart.append((d.nu.label, zero_elem(basis, cell)))
        result = AttachResult(case, new_module, tuple(chart), pi_star=(d.nu.label,),
                              theta_survivors=_theta_survivors(chart, (d.nu.label,)))
        logger.info("stage %d: cell %s attached with zero differential", stage, cell)
        return result

    if case is CaseTag.TOP_CONE_KILL:
        red = reduce_top_cone(d, label_prefix=prefix)
        kept = tuple(g for g in red.new_basis.gens if g.label != red.lambda_label)
        new_module = FreeModule(kept)
        chart = [(g.label, apply_map(red.embed, gen_elem(red.new_basis, g.label))) for g in kept]
        for label, elem in chart:
            if not apply_map(d, elem).is_zero:
                raise AssertionError(f"{label} is not in the kernel of the differential")
        logger.info("stage %d: cell %s cancels generator %s", stage, cell, red.lambda_label)
        return AttachResult(case, new_module, tuple(chart),
                            theta_survivors=_theta_survivors(chart, ()),
                            removed=red.lambda_label)

    red = reduce_bottom_cone(d, label_prefix=prefix)
    a_labels, a_elems, report = _ramp_chart(red, cell, stage)
    slot = {step.label: i for i, step in enumerate(red.ramp)}
    gens: List[Generator] = []
    reduced_elems: Dict[str, ModuleElem] = {}
    for g in red.new_basis.gens:
        if g.label in slot:
            i = slot[g.label]
            gens.append(Generator(a_labels[i], a_elems[i].deg))
            reduced_elems[a_labels[i]] = a_elems[i]
        else:
            gens.append(g)
            reduced_elems[g.label] = gen_elem(red.new_basis, g.label)
    gens.append(Generator(a_labels[-1], a_elems[-1].deg))
    reduced_elems[a_labels[-1]] = a_elems[-1]

    new_module = FreeModule(tuple(gens))
    chart = [(g.label, apply_map(red.embed, reduced_elems[g.label])) for g in gens]
    for label, elem in chart:
        if not apply_map(d, elem).is_zero:
            raise AssertionError(f"{label} is not in the kernel of the differential")
    logger.info("stage %d: cell %s closes a ramp of length %d, shifts %s",
                stage, cell, len(red.ramp), list(report.shifts))
    return AttachResult(case, new_module, tuple(chart), shift_report=report,
                        theta_survivors=_theta_survivors(chart, ()))
