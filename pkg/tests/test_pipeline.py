import json
import timeit

import pytest

from kronholm.attach import CaseTag
from kronholm.documents import read_complex, report_to_dict, serialize_report, trace_report
from kronholm.errors import InvalidOrdering, NotRealizable, PreconditionViolated, UnknownLabel, ValidationError
from kronholm.families import (
    LineStream,
    grassmannian_gr1_r3_1,
    resolve_family,
    sphere,
    twisted_projective,
)
from kronholm.modules import mod_dim
from kronholm.oracle import Window
from kronholm.pipeline import (
    CellComplexSpec,
    CellSpec,
    FiniteStream,
    compute,
    query_finite_type,
    query_table,
    truncation_bound,
    validate,
    verify_trace,
    window_generators,
)
from kronholm.ring import THETA, Bidegree, Bottom, Top, m2_dim


def _degs(module):
    return [g.deg.as_tuple() for g in module.gens]


def test_rp2_twisted(rp2_spec):
    trace = compute(rp2_spec)
    assert sorted(_degs(trace.final)) == [(1, 1), (2, 1)]
    assert [st.result.case for st in trace.stages] == [CaseTag.ZERO_DIFFERENTIAL, CaseTag.BOTTOM_CONE_RAMP]
    assert trace.stages[1].basis.labels == ("g1",)
    assert verify_trace(trace).ok


def test_rp2_twisted_is_fast(rp2_spec):
    compute(rp2_spec)
    best = min(timeit.repeat(lambda: compute(rp2_spec), number=1, repeat=25))
    assert best < 1e-3


@pytest.mark.parametrize("p, q", [(0, 0), (3, 1), (4, 4)])
def test_sphere(p, q):
    trace = compute(sphere(p, q))
    assert _degs(trace.final) == [(p, q)]


def test_grassmannian_golden(data_path):
    with open(data_path("grassmannian.golden.json"), encoding="utf-8") as f:
        golden = json.load(f)
    trace = compute(grassmannian_gr1_r3_1())
    check = verify_trace(trace)
    assert check.ok
    assert all(s.discrepancies == 0 for s in check.stages)

    report = report_to_dict(trace_report(trace))
    assert report["name"] == golden["name"]
    assert report["generators"] == golden["generators"]
    for got, want in zip(report["stages"], golden["stages"]):
        assert got["index"] == want["index"]
        assert got["cell"] == want["cell"]
        assert got["case"] == want["case"]
        assert got["shifts"] == want["shifts"]
        assert [g["label"] for g in got["basis"]] == want["basis"]
        if "chart" in want:
            assert {c["label"]: c["coeffs"] for c in got["chart"]} == want["chart"]
    assert len(report["stages"]) == len(golden["stages"])


def test_grassmannian_corpus_matches_builtin(corpus_path):
    spec = read_complex(corpus_path("grassmannian.json"))
    assert compute(spec).final == compute(grassmannian_gr1_r3_1()).final


def test_ramp5_corpus(corpus_path):
    trace = compute(read_complex(corpus_path("ramp5.json")))
    last = trace.stages[-1].result
    assert last.shift_report.shifts == (1, 3, 1, 1, 3)
    assert _degs(trace.final) == [(3, 3), (5, 4), (6, 2), (8, 3), (9, 3), (11, 2)]
    assert verify_trace(trace).ok


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_twisted_projective(n):
    trace = compute(twisted_projective(n))
    assert _degs(trace.final) == [(i, 1) for i in range(1, n)]
    assert verify_trace(trace).ok


def test_twisted_projective_rp2_matches(rp2_spec):
    assert compute(twisted_projective(3)).final == compute(rp2_spec).final


def test_validate_examples(rp2_spec):
    assert validate(rp2_spec) == []
    bad = CellComplexSpec("bad", (CellSpec((2, 2)), CellSpec((1, 0))))
    violations = validate(bad)
    assert [(v.kind, v.index) for v in violations] == [("InvalidOrdering", 1)]
    wrong = CellComplexSpec("wrong", (CellSpec((1, 0)), CellSpec((2, 2), {"g1": Top(0, 1)})))
    assert [v.kind for v in validate(wrong)] == ["DegreeMismatch"]
    unknown = CellComplexSpec("unknown", (CellSpec((1, 0)), CellSpec((2, 2), {"g7": THETA})))
    assert [v.kind for v in validate(unknown)] == ["UnknownLabel"]
    assert [v.kind for v in validate(CellComplexSpec("neg", (CellSpec((1, 2)),)))] == ["InvalidCell"]


def test_validate_uses_engine_labels():
    # the second stage's basis is a2_0, a2_1; g1 is gone
    spec = CellComplexSpec("x", (
        CellSpec((1, 0)),
        CellSpec((2, 2), {"g1": THETA}),
        CellSpec((3, 3), {"g1": Bottom(0, 1)}),
    ))
    assert [v.kind for v in validate(spec)] == ["UnknownLabel"]
    with pytest.raises(UnknownLabel) as info:
        compute(spec)
    assert info.value.stage == 3


def test_compute_rejects_bad_order():
    with pytest.raises(InvalidOrdering) as info:
        compute(CellComplexSpec("bad", (CellSpec((2, 2)), CellSpec((1, 0)))))
    assert info.value.index == 1


def _not_realizable(k):
    return CellComplexSpec(f"tau^{k}", (CellSpec((k, k)), CellSpec((k + 1, 0), {"g1": Top(0, k)})))


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_not_realizable_stage(k):
    spec = _not_realizable(k)
    assert validate(spec) == []
    with pytest.raises(NotRealizable) as info:
        compute(spec)
    assert info.value.stage == 2
    assert info.value.exit_code == 3


def test_algebraic_mode_stops_at_bad_stage():
    trace = compute(_not_realizable(2), algebraic=True)
    assert trace.aborted_at == 2
    assert len(trace.stages) == 1
    assert _degs(trace.final) == [(2, 2)]
    assert trace_report(trace).aborted_at == 2


def test_deterministic():
    first = serialize_report(trace_report(compute(grassmannian_gr1_r3_1())))
    second = serialize_report(trace_report(compute(grassmannian_gr1_r3_1())))
    assert first == second


def _line_direct(p, q):
    return sum(m2_dim(p - n, q) for n in range(1, 60))


def test_line_query_example():
    assert query_finite_type(LineStream(), 3, 2) == 3


def test_line_finite_type_stability():
    stream = LineStream()
    for p in range(-5, 11):
        for q in range(-5, 11):
            i = truncation_bound(p, q)
            value = query_finite_type(stream, p, q)
            assert value == query_finite_type(stream, p, q, truncation=i + 1)
            assert value == _line_direct(p, q)


def test_truncation_below_bound_rejected():
    with pytest.raises(PreconditionViolated):
        query_finite_type(LineStream(), 3, 2, truncation=2)


@pytest.mark.parametrize("p, q", [(-1, 0), (-3, -4), (-2, 5)])
def test_left_vanishing_region(p, q):
    assert query_finite_type(LineStream(), p, q) == 0
    assert query_finite_type(grassmannian_gr1_r3_1(), p, q) == 0


def test_finite_stream_agrees_with_compute(rp2_spec):
    for spec in (rp2_spec, grassmannian_gr1_r3_1()):
        final = compute(spec).final
        for p, q in Window(-4, 5, -5, 5).points():
            assert query_finite_type(spec, p, q) == mod_dim(final, p, q)


def test_finite_stream_prefix():
    spec = CellComplexSpec("x", (CellSpec((1, 0)), CellSpec((3, 0)), CellSpec((3, 3))))
    stream = FiniteStream(spec)
    assert [c.deg for c in stream.cells_with_fix_at_most(2)] == [Bidegree(1, 0), Bidegree(3, 0), Bidegree(3, 3)]
    assert [c.deg for c in stream.cells_with_fix_at_most(1)] == [Bidegree(1, 0), Bidegree(3, 0), Bidegree(3, 3)]
    assert stream.cells_with_fix_at_most(-1) == []


def test_query_table_and_window_generators():
    w = Window(-2, 6, -3, 6)
    table = query_table(LineStream(), w)
    assert table.get(3, 2) == 3
    assert window_generators(LineStream(), w) == [Bidegree(n, 0) for n in range(1, 7)]


@pytest.mark.parametrize("window, expected", [
    (Window(1, 6, -3, 6), [(n, 0) for n in range(1, 7)]),
    (Window(1, 1, 0, 0), [(1, 0)]),
    (Window(3, 5, 0, 2), [(3, 0), (4, 0), (5, 0)]),
    (Window(2, 6, 1, 6), []),
])
def test_window_generators_on_generator_columns(window, expected):
    assert [d.as_tuple() for d in window_generators(LineStream(), window)] == expected


def test_window_generators_finite_complex():
    spec = twisted_projective(5)
    assert window_generators(spec, Window(1, 2, 0, 1)) == [Bidegree(1, 1), Bidegree(2, 1)]
    assert window_generators(spec, Window(-3, 8, -3, 8)) == compute(spec).final.bidegrees()


def test_invalid_cell_is_reported_as_such():
    spec = CellComplexSpec("neg", (CellSpec((1, 2)),))
    with pytest.raises(ValidationError) as info:
        compute(spec)
    assert [v.kind for v in info.value.violations] == ["InvalidCell"]
    assert info.value.exit_code == 2
    with pytest.raises(ValidationError):
        query_finite_type(spec, 0, 0)


def test_reduced_grassmannian():
    spec = grassmannian_gr1_r3_1(reduced=True)
    final = compute(spec).final
    assert _degs(final) == [(1, 1), (2, 1), (3, 1)]
    assert final.bidegrees() == compute(twisted_projective(4)).final.bidegrees()
    unreduced = compute(grassmannian_gr1_r3_1()).final.bidegrees()
    assert unreduced == [Bidegree(0, 0)] + final.bidegrees()
    assert verify_trace(compute(spec)).ok


def test_resolve_family():
    assert resolve_family("grassmannian:reduced") == grassmannian_gr1_r3_1(reduced=True)
    assert resolve_family("sphere:2,1") == sphere(2, 1)
    assert resolve_family("projective:4") == twisted_projective(4)
    assert isinstance(resolve_family("line"), LineStream)
