"""Kodaira singular-fiber catalogue.

Symbols, Euler numbers, lattice ranks, associated root lattices and the
group of simple components of each reducible fiber.  Component indices
follow a fixed numbering: 0 is the component meeting the zero section;
for I_b* index 1 is the simple component at the near end and indices 2, 3
are the two at the far end; for I_b the indices walk around the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Optional

from .lattices import DynkinLabel


class FiberError(ValueError):
    """Raised for malformed fiber symbols or invalid component data."""


_PLAIN_KINDS = ("II", "III", "IV", "II*", "III*", "IV*")


@dataclass(frozen=True)
class FiberType:
    """A Kodaira fiber symbol: I(n), I(n)*, II, III, IV, II*, III*, IV*."""

    kind: str
    n: int = 0

    def __post_init__(self) -> None:
        if self.kind in ("I", "I*"):
            if self.n < 0:
                raise FiberError(f"{self.kind} requires n >= 0")
        elif self.kind in _PLAIN_KINDS:
            if self.n != 0:
                raise FiberError(f"{self.kind} does not take an index")
        else:
            raise FiberError(f"unknown fiber kind {self.kind!r}")

    @property
    def symbol(self) -> str:
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}*"
        return self.kind

    def __str__(self) -> str:
        return self.symbol

    @classmethod
    def parse(cls, text: str) -> "FiberType":
        """Parse a symbol such as I4, I0*, II, III* (case-sensitive)."""
        s = text.strip()
        if s in _PLAIN_KINDS:
            return cls(s)
        body, star = (s[:-1], True) if s.endswith("*") else (s, False)
        if len(body) >= 2 and body[0] == "I" and body[1:].isdigit():
            n = int(body[1:])
            if str(n) != body[1:]:
                raise FiberError(f"non-canonical fiber symbol {text!r}")
            return cls("I*" if star else "I", n)
        raise FiberError(f"unknown fiber symbol {text!r}")

    @property
    def sort_key(self) -> tuple[int, int, str]:
        """Canonical order: descending rank, descending Euler number, symbol."""
        return (-lattice_rank(self), -euler_number(self), self.symbol)


def euler_number(f: FiberType) -> int:
    """Euler number of the fiber as a reduced divisor."""
    if f.kind == "I":
        return f.n
    if f.kind == "I*":
        return f.n + 6
    return {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10}[f.kind]


def lattice_rank(f: FiberType) -> int:
    """Rank of the sublattice of the Neron-Severi group spanned by the fiber."""
    if f.kind == "I":
        return max(f.n - 1, 0)
    if f.kind == "I*":
        return f.n + 4
    return {"II": 0, "III": 1, "IV": 2, "IV*": 6, "III*": 7, "II*": 8}[f.kind]


def root_label(f: FiberType) -> Optional[DynkinLabel]:
    """ADE label of the root lattice spanned by components off the zero section."""
    if f.kind == "I":
        return DynkinLabel("A", f.n - 1) if f.n >= 2 else None
    if f.kind == "I*":
        return DynkinLabel("D", f.n + 4)
    return {
        "II": None,
        "III": DynkinLabel("A", 1),
        "IV": DynkinLabel("A", 2),
        "IV*": DynkinLabel("E", 6),
        "III*": DynkinLabel("E", 7),
        "II*": DynkinLabel("E", 8),
    }[f.kind]


def is_reducible(f: FiberType) -> bool:
    return root_label(f) is not None


@dataclass(frozen=True)
class ComponentGroup:
    """Simple components of a fiber modulo the identity component.

    Elements are component indices 0..size-1 (0 is the identity
    component); ``factors`` is the abstract invariant-factor shape and
    ``coords`` maps each index to its coordinates in that presentation.
    """

    factors: tuple[int, ...]
    coords: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.coords)

    def elements(self) -> range:
        return range(self.size)

    def add(self, i: int, j: int) -> int:
        summed = tuple((a + b) % d
                       for a, b, d in zip(self.coords[i], self.coords[j], self.factors))
        return self.coords.index(summed)

    def neg(self, i: int) -> int:
        inv = tuple((-a) % d for a, d in zip(self.coords[i], self.factors))
        return self.coords.index(inv)

    def order_of(self, i: int) -> int:
        o = 1
        for a, d in zip(self.coords[i], self.factors):
            o = lcm(o, d // gcd(d, a))
        return o


@lru_cache(maxsize=None)
def component_group(f: FiberType) -> ComponentGroup:
    """Group structure on simple components (index 0 = identity component)."""
    if f.kind == "I" and f.n >= 2:
        return ComponentGroup((f.n,), tuple((i,) for i in range(f.n)))
    if f.kind == "I*":
        if f.n % 2 == 1:
            # cyclic of order 4: the near component is the unique involution
            return ComponentGroup((4,), ((0,), (2,), (1,), (3,)))
        return ComponentGroup((2, 2), ((0, 0), (1, 0), (0, 1), (1, 1)))
    if f.kind in ("III", "III*"):
        return ComponentGroup((2,), ((0,), (1,)))
    if f.kind in ("IV", "IV*"):
        return ComponentGroup((3,), ((0,), (1,), (2,)))
    return ComponentGroup((), ((),))


def simple_component_nodes(f: FiberType) -> tuple[int, ...]:
    """Root-lattice node index (1-based) of each nonzero component index.

    The canonical Dynkin numbering in ``lattices`` places the simple
    components first, so this is the identity on the leading nodes.
    """
    g = component_group(f)
    return tuple(range(1, g.size))
