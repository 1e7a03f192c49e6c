"""Brute-force dimension counts that check the attach engine independently.

The long exact sequence of a cell attachment forces

    dim H(X_{k+1})^{p,q} = dim coker(d: slice (p-1,q) -> (p,q)) + dim ker(d: slice (p,q))

whatever the extension is. Nothing here looks at the engine's answer except
for the final comparison.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from .attach import AttachResult
from .errors import PreconditionViolated
from .gf2 import gf2_cokernel_dim, gf2_kernel_dim
from .log import get_logger
from .modules import Differential, FreeModule, bounding_box, matrix_at, mod_dim
from .ring import Bidegree, Localization, localized_dim

logger = get_logger(__name__)

Point = Tuple[int, int]


@dataclass(frozen=True)
class Window:
    p_min: int
    p_max: int
    q_min: int
    q_max: int

    @classmethod
    def around(cls, bidegrees: Iterable[Bidegree], margin: int) -> "Window":
        box = bounding_box(bidegrees)
        if box is None:
            box = (0, 0, 0, 0)
        p_min, p_max, q_min, q_max = box
        return cls(p_min - margin, p_max + margin, q_min - margin, q_max + margin)

    def points(self) -> Iterator[Point]:
        for p in range(self.p_min, self.p_max + 1):
            for q in range(self.q_min, self.q_max + 1):
                yield (p, q)

    def __contains__(self, point: Point) -> bool:
        p, q = point
        return self.p_min <= p <= self.p_max and self.q_min <= q <= self.q_max

    def as_dict(self) -> Dict[str, int]:
        return {"p_min": self.p_min, "p_max": self.p_max,
                "q_min": self.q_min, "q_max": self.q_max}


@dataclass(frozen=True)
class DimTable:
    window: Window
    values: Tuple[Tuple[Point, int], ...]

    def get(self, p: int, q: int) -> int:
        return dict(self.values).get((p, q), 0)

    def as_dict(self) -> Dict[Point, int]:
        return dict(self.values)


@dataclass(frozen=True)
class Discrepancy:
    p: int
    q: int
    engine: int
    oracle: int


@dataclass(frozen=True)
class DiscrepancyTable:
    window: Window
    rows: Tuple[Discrepancy, ...] = ()

    @property
    def is_empty(self) -> bool:
        return not self.rows

    def __len__(self) -> int:
        return len(self.rows)


def les_dim(basis: FreeModule, d: Differential, p: int, q: int) -> int:
    if d.source != basis:
        raise PreconditionViolated("differential source is not the given basis")
    incoming = matrix_at(d, p - 1, q)
    outgoing = matrix_at(d, p, q)
    return gf2_cokernel_dim(incoming) + gf2_kernel_dim(outgoing)


def module_table(module: FreeModule, window: Window) -> DimTable:
    return DimTable(window, tuple((pt, mod_dim(module, *pt)) for pt in window.points()))


def les_table(basis: FreeModule, d: Differential, window: Window) -> DimTable:
    return DimTable(window, tuple((pt, les_dim(basis, d, *pt)) for pt in window.points()))


def stage_window(basis: FreeModule, cell: Bidegree, result: Optional[AttachResult],
                 margin: int) -> Window:
    degs = [g.deg for g in basis.gens] + [cell]
    if result is not None:
        degs += [g.deg for g in result.new_module.gens]
    return Window.around(degs, margin)


def verify_stage(basis: FreeModule, cell: Bidegree, d: Differential, result: AttachResult,
                 margin: int = 4) -> DiscrepancyTable:
    window = stage_window(basis, cell, result, margin)
    rows = []
    for p, q in window.points():
        engine = mod_dim(result.new_module, p, q)
        oracle = les_dim(basis, d, p, q)
        if engine != oracle:
            rows.append(Discrepancy(p, q, engine, oracle))
    if rows:
        logger.warning("oracle found %d discrepancy(ies) for cell %s", len(rows), cell)
    return DiscrepancyTable(window, tuple(rows))


def localization_check(old: FreeModule, cell: Bidegree, result: AttachResult) -> bool:
    """Top degrees and fixed-set degrees are each preserved, plus the new cell's."""
    new_top = Counter(g.deg.p for g in result.new_module.gens)
    new_fix = Counter(g.deg.fix for g in result.new_module.gens)
    old_top = Counter(g.deg.p for g in old.gens)
    old_fix = Counter(g.deg.fix for g in old.gens)
    old_top[cell.p] += 1
    old_fix[cell.fix] += 1
    return new_top == old_top and new_fix == old_fix


def localized_module_dim(kind: Union[Localization, str], module: FreeModule, p: int, q: int) -> int:
    return sum(localized_dim(kind, g.deg, p, q) for g in module.gens)


def vanishing_violations(module: FreeModule, m: int, window: Window) -> List[Point]:
    """Points of the two vanishing regions where the module is nonzero."""
    bad = []
    for p, q in window.points():
        in_left = p < 0 and q > p - 2
        in_right = p > m and q < p - m
        if (in_left or in_right) and mod_dim(module, p, q):
            bad.append((p, q))
    return bad


def reconstruct_generators(table: DimTable) -> List[Bidegree]:
    """Free generators whose dimension function matches ``table``.

    The combination f(p,q) - f(p,q-1) - f(p-1,q-1) + f(p-1,q-2) turns one
    copy of M2 at g into two points, g and g + (1,0); a running difference
    along p peels them apart. Only generators with p > p_min and
    q >= q_min + 2 are recovered; the table must be free of generators in
    the column p = p_min.
    """
    w = table.window
    f = table.as_dict()
    found: List[Bidegree] = []
    for q in range(w.q_min + 2, w.q_max + 1):
        carry = 0
        for p in range(w.p_min + 1, w.p_max + 1):
            second = (f.get((p, q), 0) - f.get((p, q - 1), 0)
                      - f.get((p - 1, q - 1), 0) + f.get((p - 1, q - 2), 0))
            count = second - carry
            if count < 0:
                raise ValueError(f"dimension table is not that of a free module near ({p},{q})")
            found.extend([Bidegree(p, q)] * count)
            carry = count
    return sorted(found)
