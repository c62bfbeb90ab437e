"""Height pairing and torsion-section search.

The height of a section is 2*chi + 2(P.O) minus local contributions read
off the component it meets in each reducible fiber; torsion sections are
exactly the zero-height ones.  The search enumerates component choices,
keeps the zero-height set and extracts the largest subgroup on which all
pairwise heights also vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import combinations, product
from math import lcm
from typing import Iterable, Sequence

from .configurations import Configuration, PreconditionError
from .kodaira import FiberType, component_group, root_label
from .lattices import (
    LatticeError,
    QVector,
    abelian_invariants,
    direct_sum,
    gram_of,
    hyperbolic_u,
    solve_linear,
)

CHI = 2  # arithmetic genus of a K3 surface


class HeightError(ValueError):
    """Raised for invalid section assignments."""


def contribution(f: FiberType, i: int) -> Q:
    """Local height correction for a section meeting component i."""
    g = component_group(f)
    if not 0 <= i < g.size:
        raise HeightError(f"component {i} out of range for {f.symbol}")
    if i == 0:
        return Q(0)
    if f.kind == "III":
        return Q(1, 2)
    if f.kind == "III*":
        return Q(3, 2)
    if f.kind == "IV":
        return Q(2, 3)
    if f.kind == "IV*":
        return Q(4, 3)
    if f.kind == "I":
        return Q(i * (f.n - i), f.n)
    if f.kind == "I*":
        return Q(1) if i == 1 else 1 + Q(f.n, 4)
    raise HeightError(f"{f.symbol} has no non-identity components")


def pair_contribution(f: FiberType, i: int, j: int) -> Q:
    """Local correction for two sections meeting components i and j."""
    if i == j:
        return contribution(f, i)
    g = component_group(f)
    if not (0 <= i < g.size and 0 <= j < g.size):
        raise HeightError(f"components ({i},{j}) out of range for {f.symbol}")
    if i == 0 or j == 0:
        return Q(0)
    if f.kind == "IV":
        return Q(1, 3)
    if f.kind == "IV*":
        return Q(2, 3)
    if f.kind == "I":
        lo, hi = min(i, j), max(i, j)
        return Q(lo * (f.n - hi), f.n)
    if f.kind == "I*":
        if i == 1 or j == 1:
            return Q(1, 2)
        return Q(2 + f.n, 4)
    raise HeightError(f"{f.symbol} has at most one non-identity component")


def max_contribution(f: FiberType) -> Q:
    g = component_group(f)
    return max((contribution(f, i) for i in g.elements()), default=Q(0))


@dataclass(frozen=True)
class SectionAssignment:
    """A component choice per reducible fiber plus the pairing with O."""

    components: tuple[int, ...]
    po: int = 0

    def __post_init__(self) -> None:
        if self.po < 0:
            raise HeightError("(P.O) must be non-negative")


def _check_assignment(c: Configuration, p: SectionAssignment) -> None:
    reducible = c.reducible_fibers
    if len(p.components) != len(reducible):
        raise HeightError(
            f"assignment length {len(p.components)} != {len(reducible)} reducible fibers"
        )
    for f, i in zip(reducible, p.components):
        if not 0 <= i < component_group(f).size:
            raise HeightError(f"component {i} out of range for {f.symbol}")


def height(c: Configuration, p: SectionAssignment) -> Q:
    """Self height 2*chi + 2(P.O) - sum of local contributions."""
    _check_assignment(c, p)
    total = Q(2 * CHI + 2 * p.po)
    for f, i in zip(c.reducible_fibers, p.components):
        total -= contribution(f, i)
    return total


def pair_height(c: Configuration, p: SectionAssignment, q: SectionAssignment,
                pq: int = 0) -> Q:
    """Height pairing chi + (P.O) + (Q.O) - (P.Q) - sum of pair corrections."""
    _check_assignment(c, p)
    _check_assignment(c, q)
    if pq < 0:
        raise HeightError("(P.Q) must be non-negative")
    total = Q(CHI + p.po + q.po - pq)
    for f, i, j in zip(c.reducible_fibers, p.components, q.components):
        total -= pair_contribution(f, i, j)
    return total


# ---------------------------------------------------------------------------
# Torsion search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TorsionReport:
    """Result of the torsion search on an extremal configuration."""

    configuration: Configuration
    maximal_group: tuple[int, ...]
    zero_height_elements: tuple[SectionAssignment, ...]
    discarded: tuple[SectionAssignment, ...]
    fast_path: bool = False

    @property
    def order(self) -> int:
        n = 1
        for d in self.maximal_group:
            n *= d
        return n


def _group_add(c: Configuration, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(component_group(f).add(i, j)
                 for f, i, j in zip(c.reducible_fibers, a, b))


def _closure(c: Configuration, gens: Iterable[tuple[int, ...]],
             zero: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    seen = {zero}
    frontier = [zero]
    gens = list(gens)
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = _group_add(c, cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def _require_extremal(c: Configuration) -> None:
    if not c.is_extremal_k3():
        raise PreconditionError(
            f"{c}: Euler sum {c.euler_sum}, rank sum {c.rank_sum}; "
            "torsion search requires an extremal K3 configuration"
        )


def torsion_search(c: Configuration) -> TorsionReport:
    """Maximal group of zero-height component assignments.

    Every subgroup of the product of component groups whose nonzero
    elements all have height zero and pairwise height zero (with P.O =
    P.Q = 0) is a candidate torsion group; the report carries the largest
    one.  Zero-height assignments that survive no subgroup (killed by a
    multiple or by a pairwise check) are reported as discarded.
    """
    _require_extremal(c)
    bound = Q(2 * CHI) - sum((max_contribution(f) for f in c.reducible_fibers), Q(0))
    if bound > 0:
        zero = tuple(0 for _ in c.reducible_fibers)
        return TorsionReport(c, (), (SectionAssignment(zero),), (), fast_path=True)
    report = _torsion_search_exhaustive(c)
    return report


def _torsion_search_exhaustive(c: Configuration) -> TorsionReport:
    reducible = c.reducible_fibers
    zero = tuple(0 for _ in reducible)
    zero_set: set[tuple[int, ...]] = set()
    for combo in product(*[component_group(f).elements() for f in reducible]):
        if combo == zero:
            continue
        if height(c, SectionAssignment(combo)) == 0:
            zero_set.add(combo)

    def pair_ok(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return pair_height(c, SectionAssignment(a), SectionAssignment(b)) == 0

    best: frozenset[tuple[int, ...]] = frozenset({zero})
    seen_subgroups: set[frozenset[tuple[int, ...]]] = {best}
    stack = [best]
    while stack:
        current = stack.pop()
        for cand in sorted(zero_set - current):
            grown = _closure(c, current | {cand}, zero)
            if grown in seen_subgroups:
                continue
            seen_subgroups.add(grown)
            if not (grown - {zero}) <= zero_set:
                continue
            members = sorted(grown - {zero})
            if any(not pair_ok(a, b) for a, b in _pairs(members)):
                continue
            stack.append(grown)
            if len(grown) > len(best):
                best = grown
    orders = [1] + [_element_order(c, e) for e in sorted(best - {zero})]
    invariants = abelian_invariants(orders)
    elements = tuple(SectionAssignment(e) for e in sorted(best))
    discarded = tuple(SectionAssignment(e) for e in sorted(zero_set - best))
    return TorsionReport(c, invariants, elements, discarded)


def _pairs(items: Sequence[tuple[int, ...]]):
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            yield items[i], items[j]


def _element_order(c: Configuration, e: tuple[int, ...]) -> int:
    o = 1
    for f, i in zip(c.reducible_fibers, e):
        g = component_group(f)
        o = lcm(o, g.order_of(i))
    return o


def subgroups_of(report: TorsionReport) -> list[tuple[tuple[int, ...], tuple[SectionAssignment, ...]]]:
    """All subgroups of the report's maximal group.

    Returns (invariant_factors, elements) pairs, sorted by order then by
    element lists, with one entry per subgroup (not per isomorphism class).
    """
    c = report.configuration
    zero = tuple(0 for _ in c.reducible_fibers)
    members = [a.components for a in report.zero_height_elements]
    subgroups: set[frozenset[tuple[int, ...]]] = set()
    for r in range(len(members) + 1):
        for gens in combinations(members, r):
            subgroups.add(_closure(c, gens, zero))
    out = []
    for sub in subgroups:
        orders = [_element_order(c, e) if e != zero else 1 for e in sub]
        invariants = abelian_invariants(orders)
        elements = tuple(SectionAssignment(e) for e in sorted(sub))
        out.append((invariants, elements))
    out.sort(key=lambda item: (len(item[1]), item[0], [e.components for e in item[1]]))
    return out


# ---------------------------------------------------------------------------
# Section correction vectors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SectionCorrection:
    """Coefficients of a torsion section class on the trivial lattice.

    ``fiber_coefficients`` aligns with the configuration's reducible
    fibers; flattening prepends the zero-section and fiber coefficients.
    """

    o_coefficient: Q
    f_coefficient: Q
    fiber_coefficients: tuple[QVector, ...]

    def flatten(self) -> QVector:
        flat: list[Q] = [self.o_coefficient, self.f_coefficient]
        for coeffs in self.fiber_coefficients:
            flat.extend(coeffs)
        return tuple(flat)


def section_correction(c: Configuration, p: SectionAssignment) -> SectionCorrection:
    """Solve for the class of a zero-height section in the trivial lattice.

    The class X = a*O + b*F + sum of fiber-component coefficients is pinned
    by requiring X to meet every trivial-lattice generator the way the
    section does: X.O = (P.O), X.F = 1, and X.component is 1 exactly on
    the component the section passes through.
    """
    if height(c, p) != 0:
        raise PreconditionError(f"assignment {p.components} has nonzero height")
    lattices = [hyperbolic_u()]
    for f in c.reducible_fibers:
        label = root_label(f)
        assert label is not None
        lattices.append(gram_of(label))
    trivial = direct_sum(lattices)
    rhs: list[Q] = [Q(p.po), Q(1)]
    for lat, i in zip(lattices[1:], p.components):
        block = [Q(0)] * lat.rank
        if i != 0:
            block[i - 1] = Q(1)
        rhs.extend(block)
    try:
        solution = solve_linear(trivial.gram, rhs)
    except LatticeError as exc:  # pragma: no cover - trivial lattice is never degenerate
        raise PreconditionError(f"degenerate trivial lattice for {c}") from exc
    coeffs: list[QVector] = []
    offset = 2
    for lat in lattices[1:]:
        coeffs.append(tuple(solution[offset:offset + lat.rank]))
        offset += lat.rank
    return SectionCorrection(solution[0], solution[1], tuple(coeffs))
