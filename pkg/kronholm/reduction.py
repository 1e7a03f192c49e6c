"""Change of basis that puts an attaching differential into normal form.

Two reductions exist. Top-cone reduction applies when some image has a
coefficient rho^0 tau^k: one generator keeps its image and all the others
are moved into the kernel. Bottom-cone reduction applies when every image
lies in the theta cone: comparable supporters are cancelled until the ones
left over form a ramp.

Every new generator is "old generator + multiple of an untouched pivot", so
the old->new change uses the same coefficients as the new->old embedding.
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import NoTopImage, PreconditionViolated
from .log import get_logger
from .modules import (
    Differential,
    FreeModule,
    Generator,
    GradedMap,
    compose_change,
)
from .ring import ONE, Bidegree, Bottom, M2Elem, Top

logger = get_logger(__name__)

# pivot label and the coefficient put in front of it
Substitution = Tuple[str, M2Elem]


@dataclass(frozen=True)
class TopConeReduction:
    new_basis: FreeModule
    change: GradedMap       # old -> new
    embed: GradedMap        # new -> old
    reduced: Differential   # the differential on new_basis
    lambda_label: str
    k0: int


@dataclass(frozen=True)
class RampStep:
    label: str
    j: int
    k: int


@dataclass(frozen=True)
class RampReduction:
    new_basis: FreeModule
    change: GradedMap
    embed: GradedMap
    reduced: Differential
    ramp: Tuple[RampStep, ...]

    @property
    def ramp_labels(self) -> Tuple[str, ...]:
        return tuple(step.label for step in self.ramp)


def check_hypothesis(d: Differential) -> None:
    """Every source generator has Top <= p, and Top = p forces weight <= q."""
    nu = d.nu.deg
    for g in d.source:
        if g.deg.p > nu.p or (g.deg.p == nu.p and g.deg.q > nu.q):
            raise PreconditionViolated(
                f"generator {g.label}{g.deg} is not below the new cell {nu}")


def _substitute(d: Differential, subs: Dict[str, Substitution], label_prefix: str):
    """Replace each generator g in ``subs`` by g + coeff * pivot."""
    old = d.source
    relabel = {}
    gens = []
    for i, g in enumerate(old.gens, start=1):
        label = f"{label_prefix}_{i}" if g.label in subs else g.label
        relabel[g.label] = label
        gens.append(Generator(label, g.deg))
    new = FreeModule(tuple(gens))

    embed_entries: Dict[Tuple[str, str], M2Elem] = {}
    change_entries: Dict[Tuple[str, str], M2Elem] = {}
    for g in old.gens:
        new_label = relabel[g.label]
        embed_entries[(new_label, g.label)] = ONE
        change_entries[(g.label, new_label)] = ONE
        if g.label in subs:
            pivot, coeff = subs[g.label]
            # pivot is never substituted itself
            embed_entries[(new_label, pivot)] = coeff
            change_entries[(g.label, relabel[pivot])] = coeff
    embed = GradedMap(new, old, Bidegree(0, 0), embed_entries)
    change = GradedMap(old, new, Bidegree(0, 0), change_entries)
    conjugated = compose_change(embed, d)
    reduced = Differential(new, d.target, d.shift, conjugated.entries)
    return new, change, embed, reduced


def reduce_top_cone(d: Differential, label_prefix: str = "chi") -> TopConeReduction:
    check_hypothesis(d)
    images = d.images()
    top = [(label, c) for label, c in images.items() if isinstance(c, Top)]
    if not top:
        raise NoTopImage("no image has a top-cone coefficient")
    for label, c in top:
        if c.a != 0:
            raise PreconditionViolated(
                f"image {c} of {label} contains rho; the source generator sits above the cell")

    # minimal weight, earliest in basis order on ties
    lam, lam_coeff = min(top, key=lambda item: (d.source.deg_of(item[0]).q,
                                                 d.source.position(item[0])))
    k0 = lam_coeff.b
    subs: Dict[str, Substitution] = {}
    for label, c in images.items():
        if label == lam:
            continue
        if isinstance(c, Top):
            subs[label] = (lam, Top(0, c.b - k0))
        else:
            subs[label] = (lam, Bottom(c.c, c.d + k0))
    new, change, embed, reduced = _substitute(d, subs, label_prefix)
    logger.debug("top-cone reduction: lambda=%s k0=%d, %d generator(s) moved to the kernel",
                 lam, k0, len(subs))
    return TopConeReduction(new, change, embed, reduced, lam, k0)


@dataclass(frozen=True)
class _Supporter:
    label: str
    position: int
    top: int
    fix: int
    j: int
    k: int


def reduce_bottom_cone(d: Differential, label_prefix: str = "chi") -> RampReduction:
    check_hypothesis(d)
    supporters: List[_Supporter] = []
    for label, c in d.images().items():
        if isinstance(c, Top):
            raise PreconditionViolated(f"image {c} of {label} touches the top cone")
        g = d.source.gen(label)
        supporters.append(_Supporter(label, d.source.position(label), g.deg.p, g.deg.fix, c.c, c.d))

    # Dominating supporters (larger j and k) come first in this order.
    supporters.sort(key=lambda s: (s.top, -s.fix, s.position))
    kept: List[_Supporter] = []
    subs: Dict[str, Substitution] = {}
    for s in supporters:
        dom: Optional[_Supporter] = next((a for a in kept if a.j >= s.j and a.k >= s.k), None)
        if dom is None:
            kept.append(s)
        else:
            subs[s.label] = (dom.label, Top(dom.j - s.j, dom.k - s.k))

    for left, right in zip(kept, kept[1:]):
        if not (left.j > right.j and left.k < right.k):
            raise AssertionError(f"ramp is not strict at {left.label}, {right.label}")

    new, change, embed, reduced = _substitute(d, subs, label_prefix)
    ramp = tuple(RampStep(s.label, s.j, s.k) for s in kept)
    logger.debug("bottom-cone reduction: ramp of length %d, %d generator(s) cancelled",
                 len(ramp), len(subs))
    return RampReduction(new, change, embed, reduced, ramp)
