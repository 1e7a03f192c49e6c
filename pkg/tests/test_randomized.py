"""Randomized attachments and complexes checked against the LES count."""
import pytest
from hypothesis import HealthCheck, event, find, given, settings, strategies as st

from kronholm.attach import CaseTag, attach_cell, classify
from kronholm.gf2 import gf2_is_invertible
from kronholm.modules import FreeModule, apply_map, compose_change, maps_equal, matrix_at
from kronholm.oracle import (
    Window,
    localization_check,
    module_table,
    reconstruct_generators,
    vanishing_violations,
    verify_stage,
)
from kronholm.pipeline import CellComplexSpec, CellSpec, cell_label, compute, verify_trace
from kronholm.reduction import reduce_bottom_cone, reduce_top_cone
from kronholm.ring import Bidegree, Top, monomial_at

from strategies import attachments

SUITE = settings(max_examples=1000, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@SUITE
@given(attachments())
def test_engine_matches_oracle(case):
    basis, cell, d = case
    result = attach_cell(basis, cell, d)
    event(result.case.value)
    for g in result.new_module.gens:
        assert g.deg.p < cell.p or (g.deg.p == cell.p and g.deg.q <= cell.q), g
    assert verify_stage(basis, cell, d, result, margin=4).is_empty
    for _, elem in result.chart:
        assert apply_map(d, elem).is_zero
    if result.case is CaseTag.BOTTOM_CONE_RAMP:
        assert localization_check(basis, cell, result)
    w = Window.around([g.deg for g in result.new_module.gens] + [cell], 4)
    assert reconstruct_generators(module_table(result.new_module, w)) == result.new_module.bidegrees()


@SUITE
@given(attachments())
def test_normal_forms(case):
    basis, cell, d = case
    case_tag = classify(d)
    if case_tag is CaseTag.ZERO_DIFFERENTIAL:
        return
    if case_tag is CaseTag.TOP_CONE_KILL:
        red = reduce_top_cone(d)
        assert list(red.reduced.images()) == [red.lambda_label]
    else:
        red = reduce_bottom_cone(d)
        assert sorted(red.reduced.images()) == sorted(red.ramp_labels)
        for left, right in zip(red.ramp, red.ramp[1:]):
            assert left.j > right.j and left.k < right.k
    assert maps_equal(compose_change(red.change, red.reduced), d)
    for p, q in Window.around([g.deg for g in basis.gens], 1).points():
        assert gf2_is_invertible(matrix_at(red.change, p, q))


@st.composite
def complexes(draw, max_cells=5, max_p=5):
    """Random cell lists whose images are drawn against the basis the engine reports."""
    cells = []
    degs = sorted({draw(st.tuples(st.integers(0, max_p), st.integers(0, max_p)).filter(lambda t: t[1] <= t[0]))
                   for _ in range(draw(st.integers(1, max_cells)))})

    basis = FreeModule()
    for p, q in degs:
        cell = Bidegree(p, q)
        images = {}
        for g in basis.gens:
            off = g.deg + Bidegree(1, 0) - cell
            m = monomial_at(off.p, off.q)
            if m and draw(st.booleans()):
                images[g.label] = m
        tops = [label for label, c in images.items() if isinstance(c, Top)]
        if tops and all(images[label].b > 0 for label in tops):
            for label in tops:
                del images[label]
        spec = CellSpec(cell, images)
        cells.append(spec)
        basis = compute(CellComplexSpec("random", tuple(cells))).final
    return CellComplexSpec("random", tuple(cells))


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(complexes())
def test_triangle_and_vanishing(spec):
    trace = compute(spec)
    m = spec.dimension
    for g in trace.final.gens:
        assert 0 <= g.deg.q <= g.deg.p <= m
    assert vanishing_violations(trace.final, m, Window(-6, m + 6, -8, m + 6)) == []
    assert verify_trace(trace, margin=3).ok
    assert [s.cell.deg for s in trace.stages] == [c.deg for c in spec.cells]
    assert trace.stages[-1].differential.nu.label == cell_label(len(spec.cells))


@pytest.mark.parametrize("tag", list(CaseTag))
def test_attachments_reach_every_case(tag):
    basis, cell, d = find(attachments(), lambda c: classify(c[2]) is tag,
                          settings=settings(max_examples=2000, database=None))
    assert attach_cell(basis, cell, d).case is tag
