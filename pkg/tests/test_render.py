import pytest

from kronholm.modules import FreeModule
from kronholm.render import chart_window, render_ascii, render_png, render_svg

RP2 = FreeModule.of(("a2_0", (1, 1)), ("a2_1", (2, 1)))
M2 = FreeModule.of(("g1", (0, 0)))


def _at(text, window, p, q):
    for line in text.splitlines():
        if line.startswith(f"{q:>4} "):
            return line[5 + (p - window.p_min) * 3 + 1]
    raise AssertionError(f"row {q} not drawn")


def test_single_copy_of_m2():
    w = chart_window(M2)
    text = render_ascii(M2)
    assert _at(text, w, 0, 0) == "o"
    assert _at(text, w, 0, -2) == "x"
    assert _at(text, w, 0, 2) == "|"
    assert _at(text, w, 2, 2) == "/"
    assert _at(text, w, -1, -3) == "/"
    assert _at(text, w, 0, -4) == "|"
    assert _at(text, w, 1, 0) == "-"
    assert _at(text, w, 0, -1) == ":"


def test_rp2_chart():
    w = chart_window(RP2)
    text = render_ascii(RP2, "RP2_tw")
    assert text.splitlines()[0] == "RP2_tw"
    assert _at(text, w, 1, 1) == "o"
    assert _at(text, w, 2, 1) == "o"
    assert _at(text, w, 2, -1) == "x"
    assert "o a2_1" in text


def test_empty_module_draws_axes_only():
    text = render_ascii(FreeModule())
    assert "(zero module)" in text
    grid = [line[5:] for line in text.splitlines() if line[:4].strip().lstrip("-").isdigit()]
    assert grid
    assert not any(ch in row for row in grid for ch in "ox|/+")


def test_ascii_is_deterministic():
    assert render_ascii(RP2, "t") == render_ascii(RP2, "t")


def test_svg():
    svg = render_svg(RP2, "RP2_tw")
    assert svg.startswith("<?xml")
    assert svg.rstrip().endswith("</svg>")
    assert svg.count("<circle") == 2 * len(RP2)
    assert "a2_1" in svg
    assert svg == render_svg(RP2, "RP2_tw")


def test_svg_unit_scales():
    small = render_svg(M2, unit=10)
    w = chart_window(M2)
    width = (w.p_max - w.p_min + 2) * 10
    assert f'width="{width}"' in small


def test_svg_escapes_title():
    assert "&lt;b&gt;" in render_svg(M2, "<b>")


def test_png(tmp_path):
    pytest.importorskip("PySide6.QtGui")
    out = tmp_path / "rp2.png"
    assert render_png(RP2, str(out), "RP2_tw") == str(out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
