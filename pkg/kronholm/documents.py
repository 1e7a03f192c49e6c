"""JSON documents: complex input files and computation reports."""
import json
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

from .errors import KronholmError, ParseError, ValidationError
from .modules import FreeModule, Generator, ModuleElem
from .oracle import Window
from .pipeline import CellComplexSpec, CellSpec, Trace, validate
from .ring import Bidegree, M2Elem, format_monomial, parse_monomial


def _line_col(text: str, position: int) -> Tuple[int, int]:
    line = text.count("\n", 0, position) + 1
    column = position - (text.rfind("\n", 0, position) + 1) + 1
    return line, column


def _schema_error(text: str, message: str, position: int = 0) -> ParseError:
    line, column = _line_col(text, position)
    return ParseError(message, position, line, column)


def _require_int(text: str, value: Any, where: str, position: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise _schema_error(text, f"{where} must be an integer", position)
    return value


def parse_complex(text: str, check: bool = True) -> CellComplexSpec:
    """Parse a complex document; with ``check`` the result is also validated."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos, e.lineno, e.colno)
    if not isinstance(data, dict):
        raise _schema_error(text, "document must be a JSON object")
    name = data.get("name", "")
    if not isinstance(name, str):
        raise _schema_error(text, "'name' must be a string")
    cells_raw = data.get("cells")
    if not isinstance(cells_raw, list):
        raise _schema_error(text, "'cells' must be a list")

    # json gives no offsets for values, so walk the text alongside the cells
    cursor = 0
    cells: List[CellSpec] = []
    for i, raw in enumerate(cells_raw):
        found = text.find("{", cursor)
        cursor = found if found >= 0 else cursor
        if not isinstance(raw, dict):
            raise _schema_error(text, f"cells[{i}] must be an object", cursor)
        p = _require_int(text, raw.get("p"), f"cells[{i}].p", cursor)
        q = _require_int(text, raw.get("q"), f"cells[{i}].q", cursor)
        d_raw = raw.get("d", {})
        if not isinstance(d_raw, dict):
            raise _schema_error(text, f"cells[{i}].d must be an object", cursor)
        images: List[Tuple[str, M2Elem]] = []
        for label, mono in d_raw.items():
            if not isinstance(mono, str):
                raise _schema_error(text, f"cells[{i}].d[{label!r}] must be a string", cursor)
            literal = json.dumps(mono, ensure_ascii=False)
            at = text.find(literal, cursor)
            start = at + 1 if at >= 0 else cursor
            if at >= 0:
                cursor = at + len(literal)
            try:
                images.append((label, parse_monomial(mono, offset=start)))
            except ParseError as e:
                line, column = _line_col(text, e.position)
                raise ParseError(f"cells[{i}].d[{label!r}]: {e.message}", e.position, line, column)
        cells.append(CellSpec(Bidegree(p, q), tuple(images)))

    spec = CellComplexSpec(name, tuple(cells))
    if check:
        violations = validate(spec)
        if violations:
            raise ValidationError(violations)
    return spec


def complex_to_dict(spec: CellComplexSpec) -> Dict[str, Any]:
    cells = []
    for cell in spec.cells:
        entry: Dict[str, Any] = {"p": cell.deg.p, "q": cell.deg.q}
        if cell.images:
            entry["d"] = {label: format_monomial(c) for label, c in cell.images}
        cells.append(entry)
    return {"name": spec.name, "cells": cells}


def serialize_complex(spec: CellComplexSpec) -> str:
    return json.dumps(complex_to_dict(spec), indent=2, ensure_ascii=False) + "\n"


def read_complex(path: str, check: bool = True) -> CellComplexSpec:
    with open(path, "r", encoding="utf-8") as f:
        return parse_complex(f.read(), check=check)


# ------------------------------------------------------------------ reports

@dataclass(frozen=True)
class ChartEntry:
    label: str
    deg: Bidegree
    coeffs: Tuple[Tuple[str, M2Elem], ...]


@dataclass(frozen=True)
class StageRecord:
    index: int
    cell: Bidegree
    case: str
    basis: FreeModule                 # output basis; the next cell's "d" keys
    chart: Tuple[ChartEntry, ...]
    shifts: Optional[Tuple[int, ...]] = None
    nu_shift: Optional[int] = None
    ramp: Tuple[str, ...] = ()
    exponents: Tuple[Tuple[int, int], ...] = ()
    pi_star: Tuple[str, ...] = ()
    theta_survivors: Tuple[str, ...] = ()
    removed: Optional[str] = None


@dataclass(frozen=True)
class ReportDocument:
    name: str
    generators: FreeModule
    stages: Tuple[StageRecord, ...]
    verified: Optional[bool] = None
    window: Optional[Window] = None
    aborted_at: Optional[int] = None


def _chart_entry(label: str, elem: ModuleElem) -> ChartEntry:
    return ChartEntry(label, elem.deg, elem.coeffs)


def trace_report(trace: Trace, verified: Optional[bool] = None,
                 window: Optional[Window] = None) -> ReportDocument:
    stages = []
    for st in trace.stages:
        res = st.result
        sr = res.shift_report
        stages.append(StageRecord(
            index=st.index,
            cell=st.cell.deg,
            case=res.case.value,
            basis=res.new_module,
            chart=tuple(_chart_entry(label, elem) for label, elem in res.chart),
            shifts=tuple(sr.shifts) if sr else None,
            nu_shift=sr.nu_shift if sr else None,
            ramp=sr.ramp if sr else (),
            exponents=sr.exponents if sr else (),
            pi_star=res.pi_star,
            theta_survivors=res.theta_survivors,
            removed=res.removed,
        ))
    return ReportDocument(trace.name, trace.final, tuple(stages), verified, window, trace.aborted_at)


def _gens_to_list(module: FreeModule) -> List[Dict[str, Any]]:
    return [{"label": g.label, "p": g.deg.p, "q": g.deg.q} for g in module.gens]


def _gens_from_list(raw: Any, where: str) -> FreeModule:
    if not isinstance(raw, list):
        raise KronholmError(f"{where} must be a list")
    try:
        return FreeModule(tuple(Generator(str(g["label"]), Bidegree(int(g["p"]), int(g["q"]))) for g in raw))
    except (KeyError, TypeError, ValueError) as e:
        raise KronholmError(f"{where}: malformed generator entry ({e})")


def report_to_dict(report: ReportDocument) -> Dict[str, Any]:
    stages = []
    for st in report.stages:
        stages.append({
            "index": st.index,
            "cell": {"p": st.cell.p, "q": st.cell.q},
            "case": st.case,
            "shifts": list(st.shifts) if st.shifts is not None else None,
            "nu_shift": st.nu_shift,
            "ramp": list(st.ramp),
            "exponents": [list(e) for e in st.exponents],
            "basis": _gens_to_list(st.basis),
            "chart": [
                {"label": c.label, "p": c.deg.p, "q": c.deg.q,
                 "coeffs": {label: format_monomial(m) for label, m in c.coeffs}}
                for c in st.chart
            ],
            "pi_star": list(st.pi_star),
            "theta_survivors": list(st.theta_survivors),
            "removed": st.removed,
        })
    return {
        "name": report.name,
        "generators": _gens_to_list(report.generators),
        "stages": stages,
        "verified": report.verified,
        "window": report.window.as_dict() if report.window else None,
        "aborted_at": report.aborted_at,
    }


def serialize_report(report: ReportDocument) -> str:
    return json.dumps(report_to_dict(report), indent=2, ensure_ascii=False) + "\n"


def report_from_dict(data: Dict[str, Any]) -> ReportDocument:
    try:
        stages = []
        for st in data.get("stages", []):
            chart = tuple(
                ChartEntry(c["label"], Bidegree(c["p"], c["q"]),
                           tuple((label, parse_monomial(m)) for label, m in c["coeffs"].items()))
                for c in st["chart"]
            )
            stages.append(StageRecord(
                index=st["index"],
                cell=Bidegree(st["cell"]["p"], st["cell"]["q"]),
                case=st["case"],
                basis=_gens_from_list(st["basis"], f"stage {st['index']} basis"),
                chart=chart,
                shifts=tuple(st["shifts"]) if st.get("shifts") is not None else None,
                nu_shift=st.get("nu_shift"),
                ramp=tuple(st.get("ramp", ())),
                exponents=tuple(tuple(e) for e in st.get("exponents", ())),
                pi_star=tuple(st.get("pi_star", ())),
                theta_survivors=tuple(st.get("theta_survivors", ())),
                removed=st.get("removed"),
            ))
        window = Window(**data["window"]) if data.get("window") else None
        return ReportDocument(
            name=data.get("name", ""),
            generators=_gens_from_list(data["generators"], "generators"),
            stages=tuple(stages),
            verified=data.get("verified"),
            window=window,
            aborted_at=data.get("aborted_at"),
        )
    except (KeyError, TypeError, AttributeError) as e:
        raise KronholmError(f"malformed report: {e}")


def parse_report(text: str) -> ReportDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.pos, e.lineno, e.colno)
    if not isinstance(data, dict):
        raise KronholmError("report must be a JSON object")
    return report_from_dict(data)


def is_report(data: Any) -> bool:
    return isinstance(data, dict) and "generators" in data and "stages" in data
