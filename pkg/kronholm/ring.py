"""Exact arithmetic in the coefficient ring M2 and its dimension functions.

Every bidegree of M2 holds at most one nonzero element, so a homogeneous
element is either ``ZERO`` or a single monomial:

* ``Top(a, b)``    = rho^a tau^b,          bidegree (a, a+b)
* ``Bottom(c, d)`` = theta / (rho^c tau^d), bidegree (-c, -2-c-d)
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Tuple, Union

from .errors import DegreeMismatch, ParseError


@dataclass(frozen=True, order=True)
class Bidegree:
    p: int
    q: int

    @property
    def fix(self) -> int:
        """Fixed-set dimension p - q."""
        return self.p - self.q

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p - other.p, self.q - other.q)

    def __str__(self):
        return f"({self.p},{self.q})"

    def as_tuple(self) -> Tuple[int, int]:
        return (self.p, self.q)


ORIGIN = Bidegree(0, 0)


def _check_exponents(name: str, *values: int) -> None:
    for v in values:
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise ValueError(f"{name} exponents must be nonnegative integers, got {values}")


@dataclass(frozen=True)
class Zero:
    def __bool__(self):
        return False

    @property
    def deg(self) -> Optional[Bidegree]:
        return None

    def __str__(self):
        return "0"


@dataclass(frozen=True)
class Top:
    """rho^a tau^b"""
    a: int = 0
    b: int = 0

    def __post_init__(self):
        _check_exponents("Top", self.a, self.b)

    @property
    def deg(self) -> Bidegree:
        return Bidegree(self.a, self.a + self.b)

    def __str__(self):
        return format_monomial(self)


@dataclass(frozen=True)
class Bottom:
    """theta / (rho^c tau^d)"""
    c: int = 0
    d: int = 0

    def __post_init__(self):
        _check_exponents("Bottom", self.c, self.d)

    @property
    def deg(self) -> Bidegree:
        return Bidegree(-self.c, -2 - self.c - self.d)

    def __str__(self):
        return format_monomial(self)


M2Monomial = Union[Top, Bottom]
M2Elem = Union[Zero, Top, Bottom]

ZERO = Zero()
ONE = Top(0, 0)
RHO = Top(1, 0)
TAU = Top(0, 1)
THETA = Bottom(0, 0)


def bidegree(x: M2Elem) -> Optional[Bidegree]:
    """Bidegree of a nonzero element; None for zero."""
    return x.deg


def m2_mul(x: M2Elem, y: M2Elem) -> M2Elem:
    if not x or not y:
        return ZERO
    if isinstance(x, Bottom) and isinstance(y, Top):
        x, y = y, x
    if isinstance(x, Top):
        if isinstance(y, Top):
            return Top(x.a + y.a, x.b + y.b)
        if y.c >= x.a and y.d >= x.b:
            return Bottom(y.c - x.a, y.d - x.b)
        return ZERO
    # theta^2 = 0
    return ZERO


def m2_add(x: M2Elem, y: M2Elem) -> M2Elem:
    """Sum of two homogeneous elements of the same bidegree."""
    if not x:
        return y
    if not y:
        return x
    if x.deg != y.deg:
        raise DegreeMismatch(f"cannot add {x} in {x.deg} to {y} in {y.deg}")
    # same bidegree means same monomial, and 1 + 1 = 0
    return ZERO


def m2_dim(p: int, q: int) -> int:
    if p >= 0 and q >= p:
        return 1
    if p <= 0 and q <= p - 2:
        return 1
    return 0


def monomial_at(p: int, q: int) -> M2Elem:
    """The basis monomial of M2 in bidegree (p, q), or ZERO if there is none."""
    if p >= 0 and q >= p:
        return Top(p, q - p)
    if p <= 0 and q <= p - 2:
        return Bottom(-p, p - q - 2)
    return ZERO


def an_dim(n: int, p: int, q: int) -> int:
    """Dimension of A_n = F2[tau, 1/tau, rho]/(rho^(n+1)) at (p, q)."""
    return 1 if 0 <= p <= n else 0


class Localization(str, Enum):
    TAU_INVERSE = "tau-inverse"
    RHO_INVERSE = "rho-inverse"


def localized_dim(kind: Union[Localization, str], generator: Bidegree, p: int, q: int) -> int:
    kind = Localization(kind)
    if kind is Localization.TAU_INVERSE:
        return 1 if p >= generator.p else 0
    return 1 if q - p >= -generator.fix else 0


def is_theta_survivor(coeffs: Iterable[M2Elem]) -> bool:
    return any(m2_mul(THETA, c) for c in coeffs)


# ---------------------------------------------------------------- text form

def _format_top(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("rho" if a == 1 else f"rho^{a}")
    if b:
        parts.append("tau" if b == 1 else f"tau^{b}")
    return "*".join(parts)


def format_monomial(x: M2Elem) -> str:
    if not x:
        return "0"
    if isinstance(x, Top):
        if x.a == 0 and x.b == 0:
            return "1"
        return _format_top(x.a, x.b)
    if x.c == 0 and x.d == 0:
        return "theta"
    return f"theta/({_format_top(x.c, x.d)})"


_UINT = re.compile(r"[0-9]+")


class _Scanner:
    def __init__(self, text: str, offset: int):
        self.text = text
        self.pos = 0
        self.offset = offset

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.offset + self.pos)

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def take(self, literal: str) -> bool:
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str) -> None:
        if not self.take(literal):
            found = repr(self.text[self.pos]) if not self.at_end() else "end of input"
            raise self.error(f"expected '{literal}', found {found}")

    def uint(self) -> int:
        m = _UINT.match(self.text, self.pos)
        if not m:
            raise self.error("expected an unsigned integer exponent")
        self.pos = m.end()
        return int(m.group(0))

    def power(self, name: str) -> Optional[int]:
        if not self.take(name):
            return None
        return self.uint() if self.take("^") else 1

    def top(self) -> Tuple[int, int]:
        a = self.power("rho")
        if a is not None and self.take("*") and not self.text.startswith("tau", self.pos):
            raise self.error("expected 'tau' after '*'")
        b = self.power("tau")
        if a is None and b is None:
            raise self.error("expected 'rho' or 'tau'")
        return a or 0, b or 0


def parse_monomial(text: str, offset: int = 0) -> M2Elem:
    """Parse the monomial grammar; ``offset`` shifts reported error positions."""
    if text == "0":
        return ZERO
    if text == "1":
        return ONE
    scanner = _Scanner(text, offset)
    if scanner.take("theta"):
        if scanner.at_end():
            return THETA
        scanner.expect("/(")
        c, d = scanner.top()
        scanner.expect(")")
        result: M2Elem = Bottom(c, d)
    else:
        a, b = scanner.top()
        result = Top(a, b)
    if not scanner.at_end():
        raise scanner.error(f"unexpected {text[scanner.pos]!r}")
    return result
