"""Free bigraded M2-modules, homogeneous elements and graded maps."""
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import DegreeMismatch, PreconditionViolated, UnknownLabel
from .ring import (
    ONE,
    ZERO,
    Bidegree,
    M2Elem,
    m2_add,
    m2_dim,
    m2_mul,
    monomial_at,
)

DegreeLike = Union[Bidegree, Tuple[int, int]]


def as_bidegree(deg: DegreeLike) -> Bidegree:
    if isinstance(deg, Bidegree):
        return deg
    p, q = deg
    return Bidegree(int(p), int(q))


@dataclass(frozen=True)
class Generator:
    label: str
    deg: Bidegree

    def __post_init__(self):
        object.__setattr__(self, "deg", as_bidegree(self.deg))


@dataclass(frozen=True)
class FreeModule:
    """Ordered list of labeled generators; the order is used by every report."""
    gens: Tuple[Generator, ...] = ()
    _index: Dict[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(self.gens)
        object.__setattr__(self, "gens", gens)
        index = {}
        for i, g in enumerate(gens):
            if g.label in index:
                raise PreconditionViolated(f"duplicate generator label '{g.label}'")
            index[g.label] = i
        object.__setattr__(self, "_index", index)

    @classmethod
    def of(cls, *pairs: Tuple[str, DegreeLike]) -> "FreeModule":
        """FreeModule.of(("g1", (1, 0)), ("g2", (2, 1)))"""
        return cls(tuple(Generator(label, as_bidegree(deg)) for label, deg in pairs))

    def __len__(self) -> int:
        return len(self.gens)

    def __iter__(self) -> Iterator[Generator]:
        return iter(self.gens)

    def __contains__(self, label: str) -> bool:
        return label in self._index

    @property
    def labels(self) -> Tuple[str, ...]:
        return tuple(g.label for g in self.gens)

    def position(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label)

    def gen(self, label: str) -> Generator:
        return self.gens[self.position(label)]

    def deg_of(self, label: str) -> Bidegree:
        return self.gen(label).deg

    def bidegrees(self) -> List[Bidegree]:
        """Sorted multiset of generator bidegrees."""
        return sorted(g.deg for g in self.gens)


def mod_dim(module: FreeModule, p: int, q: int) -> int:
    return sum(m2_dim(p - g.deg.p, q - g.deg.q) for g in module.gens)


def slice_basis(module: FreeModule, p: int, q: int) -> List[Tuple[str, M2Elem]]:
    """F2 basis of the (p, q) slice: one monomial multiple per contributing generator."""
    basis = []
    for g in module.gens:
        m = monomial_at(p - g.deg.p, q - g.deg.q)
        if m:
            basis.append((g.label, m))
    return basis


@dataclass(frozen=True)
class ModuleElem:
    """Homogeneous element sum(coeff * generator) of bidegree ``deg``.

    ``coeffs`` may be given as any mapping; it is stored as a tuple of
    nonzero (label, coefficient) pairs in generator order.
    """
    home: FreeModule
    deg: Bidegree
    coeffs: Tuple[Tuple[str, M2Elem], ...] = ()

    def __post_init__(self):
        deg = as_bidegree(self.deg)
        object.__setattr__(self, "deg", deg)
        raw = self.coeffs.items() if isinstance(self.coeffs, Mapping) else self.coeffs
        kept = {}
        for label, c in raw:
            gen = self.home.gen(label)
            if not c:
                continue
            if c.deg + gen.deg != deg:
                raise DegreeMismatch(
                    f"coefficient {c} on {label}{gen.deg} lands in {c.deg + gen.deg}, expected {deg}")
            kept[label] = m2_add(kept.get(label, ZERO), c)
        ordered = tuple((g.label, kept[g.label]) for g in self.home.gens if kept.get(g.label))
        object.__setattr__(self, "coeffs", ordered)

    def coeff(self, label: str) -> M2Elem:
        for l, c in self.coeffs:
            if l == label:
                return c
        if label not in self.home:
            raise UnknownLabel(label)
        return ZERO

    def as_dict(self) -> Dict[str, M2Elem]:
        return dict(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "ModuleElem") -> "ModuleElem":
        if other.home != self.home or other.deg != self.deg:
            raise DegreeMismatch(f"cannot add elements of {self.deg} and {other.deg}")
        acc = self.as_dict()
        for label, c in other.coeffs:
            acc[label] = m2_add(acc.get(label, ZERO), c)
        return ModuleElem(self.home, self.deg, acc)


def zero_elem(module: FreeModule, deg: DegreeLike) -> ModuleElem:
    return ModuleElem(module, as_bidegree(deg), ())


def gen_elem(module: FreeModule, label: str) -> ModuleElem:
    return ModuleElem(module, module.deg_of(label), {label: ONE})


def coordinates(x: ModuleElem) -> np.ndarray:
    """Coordinate vector of x in the slice basis of its bidegree."""
    basis = slice_basis(x.home, x.deg.p, x.deg.q)
    vec = np.zeros(len(basis), dtype=np.uint8)
    for i, (label, _) in enumerate(basis):
        if x.coeff(label):
            vec[i] = 1
    return vec


@dataclass(frozen=True)
class GradedMap:
    """M2-linear map; entry (g, n) is the coefficient of n in the image of g."""
    source: FreeModule
    target: FreeModule
    shift: Bidegree
    entries: Tuple[Tuple[Tuple[str, str], M2Elem], ...] = ()
    _lookup: Dict[Tuple[str, str], M2Elem] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        shift = as_bidegree(self.shift)
        object.__setattr__(self, "shift", shift)
        raw = self.entries.items() if isinstance(self.entries, Mapping) else self.entries
        kept = {}
        for (src, tgt), e in raw:
            g = self.source.gen(src)
            n = self.target.gen(tgt)
            if not e:
                continue
            expected = g.deg + shift - n.deg
            if e.deg != expected:
                raise DegreeMismatch(
                    f"entry {e} for ({src}, {tgt}) has bidegree {e.deg}, expected {expected}")
            kept[(src, tgt)] = m2_add(kept.get((src, tgt), ZERO), e)
        ordered = tuple(
            ((g.label, n.label), kept[(g.label, n.label)])
            for g in self.source.gens for n in self.target.gens
            if kept.get((g.label, n.label))
        )
        object.__setattr__(self, "entries", ordered)
        object.__setattr__(self, "_lookup", dict(ordered))

    def entry(self, src: str, tgt: str) -> M2Elem:
        return self._lookup.get((src, tgt), ZERO)

    def image(self, label: str) -> ModuleElem:
        deg = self.source.deg_of(label) + self.shift
        return ModuleElem(self.target, deg,
                          {tgt: e for (src, tgt), e in self.entries if src == label})

    @property
    def is_zero(self) -> bool:
        return not self.entries


@dataclass(frozen=True)
class Differential(GradedMap):
    """Attaching differential: shift (1,0) into the rank-1 module of the new cell."""

    def __post_init__(self):
        super().__post_init__()
        if len(self.target) != 1:
            raise PreconditionViolated(f"differential target must have rank 1, got {len(self.target)}")
        if self.shift != Bidegree(1, 0):
            raise PreconditionViolated(f"differential shift must be (1,0), got {self.shift}")

    @property
    def nu(self) -> Generator:
        return self.target.gens[0]

    def coefficient(self, label: str) -> M2Elem:
        return self.entry(label, self.nu.label)

    def images(self) -> Dict[str, M2Elem]:
        return {src: e for (src, _), e in self.entries}


def differential(source: FreeModule, cell: DegreeLike, images: Optional[Mapping[str, M2Elem]] = None,
                 target_label: str = "nu") -> Differential:
    target = FreeModule((Generator(target_label, as_bidegree(cell)),))
    entries = {(label, target_label): c for label, c in (images or {}).items()}
    return Differential(source, target, Bidegree(1, 0), entries)


def identity_map(module: FreeModule) -> GradedMap:
    return GradedMap(module, module, Bidegree(0, 0), {(g.label, g.label): ONE for g in module.gens})


def apply_map(f: GradedMap, x: ModuleElem) -> ModuleElem:
    if x.home != f.source:
        raise DegreeMismatch("element does not live in the source of the map")
    acc: Dict[str, M2Elem] = {}
    for (src, tgt), e in f.entries:
        c = x.coeff(src)
        if c:
            acc[tgt] = m2_add(acc.get(tgt, ZERO), m2_mul(c, e))
    return ModuleElem(f.target, x.deg + f.shift, acc)


def matrix_at(f: GradedMap, p: int, q: int) -> np.ndarray:
    """F2 matrix of f from the (p, q) source slice; column j is the image of basis vector j."""
    source_basis = slice_basis(f.source, p, q)
    tp, tq = p + f.shift.p, q + f.shift.q
    target_basis = slice_basis(f.target, tp, tq)
    mat = np.zeros((len(target_basis), len(source_basis)), dtype=np.uint8)
    for j, (src, m) in enumerate(source_basis):
        for i, (tgt, _) in enumerate(target_basis):
            if m2_mul(m, f.entry(src, tgt)):
                mat[i, j] = 1
    return mat


def compose_change(f: GradedMap, g: GradedMap) -> GradedMap:
    """g after f (apply f first)."""
    if f.target != g.source:
        raise DegreeMismatch("cannot compose: target of the first map is not the source of the second")
    acc: Dict[Tuple[str, str], M2Elem] = {}
    for (a, b), fe in f.entries:
        for (b2, c), ge in g.entries:
            if b2 != b:
                continue
            acc[(a, c)] = m2_add(acc.get((a, c), ZERO), m2_mul(fe, ge))
    return GradedMap(f.source, g.target, f.shift + g.shift, acc)


def bounding_box(bidegrees: Iterable[Bidegree]) -> Optional[Tuple[int, int, int, int]]:
    """(p_min, p_max, q_min, q_max) or None when empty."""
    degs: Sequence[Bidegree] = list(bidegrees)
    if not degs:
        return None
    return (min(d.p for d in degs), max(d.p for d in degs),
            min(d.q for d in degs), max(d.q for d in degs))


def maps_equal(f: GradedMap, g: GradedMap) -> bool:
    """Equality as graded maps, ignoring the Python class (GradedMap vs Differential)."""
    return (f.source == g.source and f.target == g.target
            and f.shift == g.shift and f.entries == g.entries)
