"""Built-in cell complexes used by the command line, the docs and the tests."""
import itertools
from typing import Callable, Dict, Iterator, List, Union

from .errors import KronholmError
from .pipeline import CellComplexSpec, CellSpec, CellStream, FiniteStream
from .ring import THETA, Bottom


def sphere(p: int, q: int) -> CellComplexSpec:
    """S^{p,q}: one cell on top of the base point."""
    return CellComplexSpec(f"S^{p},{q}", (CellSpec((p, q)),))


def rp2_twisted() -> CellComplexSpec:
    return CellComplexSpec("RP2_tw", (
        CellSpec((1, 0)),
        CellSpec((2, 2), {"g1": THETA}),
    ))


def twisted_projective(n: int) -> CellComplexSpec:
    """P(R^{n,1}), reduced: cells (1,0), ..., (n-2,0), then (n-1,n-1).

    The (i,0) cells carry the trivial action and attach with zero
    differential. The top cell hits the generator of the (i,0) cell with
    theta/(rho^(n-2-i) tau^(i-1)), which makes all of them one ramp.
    n = 3 is RP2_tw.
    """
    if n < 2:
        raise KronholmError(f"projective space P(R^{{n,1}}) needs n >= 2, got {n}")
    cells: List[CellSpec] = [CellSpec((i, 0)) for i in range(1, n - 1)]
    images = {f"g{i}": Bottom(n - 2 - i, i - 1) for i in range(1, n - 1)}
    cells.append(CellSpec((n - 1, n - 1), images))
    return CellComplexSpec(f"P(R^{n},1)", tuple(cells))


def grassmannian_gr1_r3_1(reduced: bool = False) -> CellComplexSpec:
    """Gr_1(R^{+++-}) = P(R^{4,1}).

    By default the 0-cell is kept as an extra fixed point disjoint from the
    base point, so the result is the cohomology of the space itself (one
    extra M2 at the origin). With ``reduced`` the 0-cell is the base point
    and the answer is the reduced cohomology, (1,1), (2,1), (3,1).
    """
    if reduced:
        return CellComplexSpec("Gr1(R^{+++-}) reduced", (
            CellSpec((1, 0)),
            CellSpec((2, 0)),
            CellSpec((3, 3), {"g1": Bottom(1, 0), "g2": Bottom(0, 1)}),
        ))
    return CellComplexSpec("Gr1(R^{+++-})", (
        CellSpec((0, 0)),
        CellSpec((1, 0)),
        CellSpec((2, 0)),
        CellSpec((3, 3), {"g2": Bottom(1, 0), "g3": Bottom(0, 1)}),
    ))


class LineStream:
    """Infinite complex with one (n,0) cell for every n >= 1 and no differentials."""
    name = "line"

    def __iter__(self) -> Iterator[CellSpec]:
        return (CellSpec((n, 0)) for n in itertools.count(1))

    def cells_with_fix_at_most(self, i: int) -> List[CellSpec]:
        # fix of (n,0) is n
        return [CellSpec((n, 0)) for n in range(1, i + 1)]


def trivial_line() -> LineStream:
    return LineStream()


FAMILIES: Dict[str, str] = {
    "rp2tw": "RP2 with the twisted action, cells (1,0), (2,2)",
    "grassmannian": "Gr1(R^{+++-}), cells (0,0), (1,0), (2,0), (3,3)",
    "grassmannian:reduced": "Gr1(R^{+++-}) with the 0-cell as base point, cells (1,0), (2,0), (3,3)",
    "projective:N": "P(R^{N,1}), cells (1,0)..(N-2,0), (N-1,N-1)",
    "sphere:P,Q": "S^{P,Q}, a single cell",
    "line": "infinite finite-type complex, cells (n,0) for n >= 1",
}


def _int_args(name: str, raw: str, count: int) -> List[int]:
    try:
        values = [int(x) for x in raw.split(",")]
    except ValueError:
        raise KronholmError(f"family '{name}' needs integer arguments, got '{raw}'")
    if len(values) != count:
        raise KronholmError(f"family '{name}' needs {count} argument(s), got '{raw}'")
    return values


def resolve_family(name: str) -> Union[CellComplexSpec, CellStream]:
    """Look up a family by its command-line name (see FAMILIES)."""
    base, _, args = name.partition(":")
    builders: Dict[str, Callable[[], Union[CellComplexSpec, CellStream]]] = {
        "rp2tw": rp2_twisted,
        "grassmannian": grassmannian_gr1_r3_1,
        "line": trivial_line,
    }
    if base in builders and not args:
        return builders[base]()
    if base == "grassmannian" and args == "reduced":
        return grassmannian_gr1_r3_1(reduced=True)
    if base == "projective":
        (n,) = _int_args(base, args, 1)
        return twisted_projective(n)
    if base == "sphere":
        p, q = _int_args(base, args, 2)
        return sphere(p, q)
    raise KronholmError(f"unknown family '{name}'; known: {', '.join(FAMILIES)}")


def as_stream(source: Union[CellComplexSpec, CellStream]) -> CellStream:
    if isinstance(source, CellComplexSpec):
        return FiniteStream(source)
    return source
