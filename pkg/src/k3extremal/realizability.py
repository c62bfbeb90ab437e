"""Realizability of (configuration, torsion) pairs by lattice gluing.

A candidate Picard lattice is the hyperbolic plane plus the fiber root
lattices, extended by one glue vector per torsion generator.  A pair is
realizable exactly when some positive definite even binary form with the
right determinant has discriminant form anti-isometric to the candidate's;
the search over reduced forms is exhaustive.  The module also houses the
brute-force quotient oracle for coordinate-model D lattices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import product
from typing import Optional, Sequence

from .configurations import Configuration, PreconditionError, case_a_type
from .kodaira import root_label
from .lattices import (
    DiscriminantForm,
    GramLattice,
    LatticeError,
    Matrix,
    QVector,
    anti_isometry_exists,
    coset_norms,
    d_coordinate_basis,
    direct_sum,
    discriminant_form,
    gram_of,
    hyperbolic_u,
    inverse,
    mod1,
    mod2,
    overlattice_with_basis,
    pairing,
    smith_normal_form,
)
from .mordell_weil import (
    SectionAssignment,
    TorsionReport,
    section_correction,
    subgroups_of,
    torsion_search,
)

# Types whose existence rests on published explicit surfaces rather than
# on the gluing construction carried out here.
LITERATURE_TYPES = frozenset({1, 3, 4, 7})

# The seven (type, torsion) pairs settled by the gluing construction.
CONSTRUCTED_PAIRS: dict[int, tuple[int, ...]] = {
    2: (),
    5: (),
    6: (2,),
    8: (),
    9: (),
    10: (2,),
    11: (2, 2),
}

# Transcendental lattices of the seven constructed pairs.
PUBLISHED_T_GRAMS: dict[int, Matrix] = {
    2: ((2, 1), (1, 2)),
    5: ((2, 0), (0, 12)),
    6: ((2, 0), (0, 4)),
    8: ((6, 0), (0, 6)),
    9: ((4, 0), (0, 12)),
    10: ((4, 0), (0, 4)),
    11: ((2, 0), (0, 2)),
}

# Generator images (g_1, g_2) = (eps_1, eps_2) B for the constructed pairs.
PUBLISHED_B_MATRICES: dict[int, tuple[tuple[int, ...], ...]] = {
    2: ((1,),),
    5: ((1, 1), (6, 1)),
    6: ((1, 1), (2, 1)),
    8: ((2, 5), (1, 2)),
    9: ((3, 2), (2, 1)),
    10: ((2, 1), (1, 2)),
    11: ((1, 0), (0, 1)),
}

# Published values of -q on the generators eps_i of the candidate Picard
# discriminant group, as (order, value) pairs.
PUBLISHED_NEG_Q_S: dict[int, tuple[tuple[int, Q], ...]] = {
    2: ((3, Q(2, 3)),),
    5: ((2, Q(3, 2)), (12, Q(7, 12))),
    6: ((2, Q(3, 2)), (4, Q(3, 4))),
    8: ((6, Q(5, 6)), (6, Q(5, 6))),
    9: ((12, Q(7, 12)), (4, Q(7, 4))),
    10: ((4, Q(5, 4)), (4, Q(5, 4))),
    11: ((2, Q(1, 2)), (2, Q(1, 2))),
}


class RealizabilityError(ValueError):
    """Pipeline inconsistency between torsion bounds and gluing evidence."""


# ---------------------------------------------------------------------------
# Fiber lattices and Picard candidates
# ---------------------------------------------------------------------------

def fiber_root_sum(c: Configuration) -> GramLattice:
    """Direct sum of the root lattices of the configuration's fibers."""
    lattices = []
    for f in c.reducible_fibers:
        label = root_label(f)
        assert label is not None
        lattices.append(gram_of(label))
    return direct_sum(lattices)


@dataclass(frozen=True)
class PicardCandidate:
    """Rank-20 candidate Picard lattice for a type and assumed torsion."""

    m: int
    torsion: tuple[int, ...]
    lattice: GramLattice
    glue: tuple[QVector, ...]
    basis: tuple[QVector, ...]

    @property
    def det(self) -> int:
        return abs(self.lattice.determinant())


def _torsion_order(factors: Sequence[int]) -> int:
    n = 1
    for d in factors:
        n *= d
    return n


def _minimal_generators(
    c: Configuration, elements: Sequence[SectionAssignment],
) -> list[SectionAssignment]:
    from .mordell_weil import _closure  # noqa: PLC2701 - shared search helper
    zero = tuple(0 for _ in c.reducible_fibers)
    target = {a.components for a in elements}
    gens: list[SectionAssignment] = []
    span = {zero}
    for a in elements:
        if a.components == zero:
            continue
        if a.components in span:
            continue
        gens.append(a)
        span = set(_closure(c, [g.components for g in gens], zero))
        if span == target:
            break
    return gens


def picard_candidate(
    m: int,
    torsion: Sequence[int] = (),
    report: Optional[TorsionReport] = None,
    subgroup: Optional[Sequence[SectionAssignment]] = None,
) -> PicardCandidate:
    """Glue torsion sections into U + fiber roots for Case A type m.

    The requested torsion must be a subgroup of the type's zero-height
    group; each generator contributes one glue vector, the class of the
    section on the trivial lattice.  ``subgroup`` pins a specific set of
    zero-height elements; by default the first subgroup of the requested
    shape is used.
    """
    config = case_a_type(m)
    base = direct_sum([hyperbolic_u(), fiber_root_sum(config)])
    factors = tuple(int(d) for d in torsion)
    if not factors:
        basis = tuple(
            tuple(Q(int(i == j)) for j in range(base.rank)) for i in range(base.rank)
        )
        return PicardCandidate(m, (), base, (), basis)
    if subgroup is None:
        if report is None:
            report = torsion_search(config)
        subgroup = next(
            (elems for inv, elems in subgroups_of(report) if inv == factors), None
        )
        if subgroup is None:
            raise PreconditionError(
                f"type {m} admits no zero-height subgroup of shape {factors}"
            )
    gens = _minimal_generators(config, subgroup)
    glue = tuple(section_correction(config, g).flatten() for g in gens)
    for s, gen in zip(glue, gens):
        _check_glue_pattern(config, base, s, gen)
    lat, basis = overlattice_with_basis(base, glue)
    expected = abs(base.determinant()) // (_torsion_order(factors) ** 2)
    if abs(lat.determinant()) != expected:
        raise RealizabilityError(
            f"det {abs(lat.determinant())} violates the index-square law ({expected})"
        )
    return PicardCandidate(m, factors, lat, glue, basis)


def _check_glue_pattern(config: Configuration, base: GramLattice,
                        s: QVector, gen: SectionAssignment) -> None:
    """Glue vectors must look like sections: norm -2, F once, one component."""
    if pairing(base.gram, s, s) != -2:
        raise RealizabilityError("glue vector does not have norm -2")
    expected: list[Q] = [Q(gen.po), Q(1)]
    for f, i in zip(config.reducible_fibers, gen.components):
        label = root_label(f)
        assert label is not None
        block = [Q(0)] * gram_of(label).rank
        if i != 0:
            block[i - 1] = Q(1)
        expected.extend(block)
    n = base.rank
    for idx in range(n):
        val = sum((s[j] * base.gram[idx][j] for j in range(n)), Q(0))
        if val != expected[idx]:
            raise RealizabilityError("glue vector has the wrong intersection pattern")


# ---------------------------------------------------------------------------
# Reduced binary forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class BinaryEvenForm:
    """Reduced positive definite even binary form [[b11, b12], [b12, b22]]."""

    b11: int
    b22: int
    b12: int

    def __post_init__(self) -> None:
        ok = (self.b11 > 0 and self.b11 % 2 == 0 and self.b22 % 2 == 0
              and -self.b11 < 2 * self.b12 <= self.b11 <= self.b22
              and self.b11 * self.b22 - self.b12 ** 2 > 0
              and (self.b12 >= 0 or self.b11 != self.b22))
        if not ok:
            raise LatticeError(f"not a reduced even form: {self}")

    @property
    def det(self) -> int:
        return self.b11 * self.b22 - self.b12 ** 2

    def gram(self) -> GramLattice:
        return GramLattice(((self.b11, self.b12), (self.b12, self.b22)))


def reduced_binary_forms(det_target: int) -> list[BinaryEvenForm]:
    """All reduced positive definite even binary forms of a given determinant."""
    if det_target < 1:
        raise LatticeError("determinant must be positive")
    out = []
    b11 = 2
    while 3 * b11 * b11 <= 4 * det_target:
        for b12 in range(-(b11 // 2) + 1, b11 // 2 + 1):
            num = det_target + b12 * b12
            if num % b11 != 0:
                continue
            b22 = num // b11
            if b22 % 2 != 0 or b22 < b11:
                continue
            if b11 == b22 and b12 < 0:
                continue
            out.append(BinaryEvenForm(b11, b22, b12))
        b11 += 2
    return sorted(out)


def reduce_binary_form(b11: int, b12: int, b22: int) -> BinaryEvenForm:
    """Gauss-reduce an arbitrary positive definite even binary form."""
    a, b, c = int(b11), int(b12), int(b22)
    if a <= 0 or a * c - b * b <= 0 or a % 2 or c % 2:
        raise LatticeError("input is not positive definite even")
    while True:
        # translate b into (-a/2, a/2], then sort the diagonal
        t = round(Q(b, a))
        if 2 * (b - t * a) <= -a:
            t -= 1
        elif 2 * (b - t * a) > a:
            t += 1
        c = a * t * t - 2 * b * t + c
        b = b - t * a
        if a > c:
            a, c = c, a
            b = -b
            continue
        break
    if a == c and b < 0:
        b = -b
    return BinaryEvenForm(a, c, b)


# ---------------------------------------------------------------------------
# Anti-isometry evidence and exclusions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GluingEvidence:
    """Outcome of the transcendental-lattice search for one Picard candidate."""

    m: int
    torsion: tuple[int, ...]
    picard_det: int
    candidates: tuple[BinaryEvenForm, ...]
    transcendental: Optional[BinaryEvenForm]
    witness: Optional[tuple[tuple[int, ...], ...]]

    @property
    def realizable(self) -> bool:
        return self.transcendental is not None


def gluing_evidence(m: int, torsion: Sequence[int] = (),
                    report: Optional[TorsionReport] = None,
                    subgroup: Optional[Sequence[SectionAssignment]] = None,
                    ) -> GluingEvidence:
    """Search all reduced forms of the right determinant for an anti-isometry."""
    cand = picard_candidate(m, torsion, report, subgroup)
    q_s = discriminant_form(cand.lattice)
    forms = tuple(reduced_binary_forms(cand.det))
    for form in forms:
        q_t = discriminant_form(form.gram())
        images = anti_isometry_exists(q_t, q_s)
        if images is not None:
            return GluingEvidence(m, cand.torsion, cand.det, forms, form, images)
    return GluingEvidence(m, cand.torsion, cand.det, forms, None, None)


def exclude_trivial_mw(m: int, assumed: Sequence[int] = ()) -> bool:
    """True when no transcendental lattice glues to the assumed torsion."""
    return not gluing_evidence(m, assumed).realizable


# ---------------------------------------------------------------------------
# Full realization of a Case A type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Realization:
    """Final Mordell-Weil group of a type with supporting evidence."""

    m: int
    configuration: Configuration
    possible_torsion: tuple[tuple[int, ...], ...]
    final_mw: Optional[tuple[int, ...]]
    provenance: str  # literature | constructed | excluded
    evidence: tuple[GluingEvidence, ...]

    @property
    def transcendental(self) -> Optional[BinaryEvenForm]:
        if self.final_mw is None:
            return None
        for ev in self.evidence:
            if ev.torsion == self.final_mw:
                return ev.transcendental
        return None


def realize(m: int) -> Realization:
    """Combine torsion bounds and gluing evidence into the final group.

    Exactly one subgroup of the zero-height group may admit a
    transcendental partner; none at all means the type does not occur.
    """
    config = case_a_type(m)
    report = torsion_search(config)
    seen: dict[tuple[int, ...], GluingEvidence] = {}
    for factors, elements in subgroups_of(report):
        ev = gluing_evidence(m, factors, report, elements)
        if factors in seen:
            # conjugate subgroup instances must tell the same story
            if seen[factors].realizable != ev.realizable:
                raise RealizabilityError(
                    f"type {m}: subgroup instances of shape {factors} disagree"
                )
            continue
        seen[factors] = ev
    evidence = tuple(seen[f] for f in sorted(seen))
    survivors = [ev.torsion for ev in evidence if ev.realizable]
    possible = tuple(sorted(seen))
    if not survivors:
        return Realization(m, config, possible, None, "excluded", evidence)
    if len(survivors) > 1:
        raise RealizabilityError(
            f"type {m}: several torsion groups admit gluings: {survivors}"
        )
    provenance = "literature" if m in LITERATURE_TYPES else "constructed"
    return Realization(m, config, possible, survivors[0], provenance, evidence)


def realize_all() -> tuple[Realization, ...]:
    return tuple(realize(m) for m in range(1, 14))


# ---------------------------------------------------------------------------
# Verification of the published witnesses
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WitnessCheck:
    m: int
    picard_det: int
    neg_q_values: tuple[Q, ...]
    epsilon_found: bool
    published_map_valid: bool
    search_witness: Optional[tuple[tuple[int, ...], ...]]


def _find_epsilon_generators(
    form: DiscriminantForm, targets: Sequence[tuple[int, Q]],
) -> Optional[tuple[tuple[int, ...], ...]]:
    """Locate orthogonal generators with prescribed orders and -q values."""
    pools = []
    for order, neg_q in targets:
        want = mod2(-neg_q)
        pools.append([e for e in sorted(form.elements())
                      if form.order_of(e) == order and form.q_of(e) == want])
    for combo in product(*pools):
        if any(form.b_of(x, y) != 0
               for idx, x in enumerate(combo) for y in combo[idx + 1:]):
            continue
        span = {form.zero()}
        frontier = [form.zero()]
        while frontier:
            cur = frontier.pop()
            for g in combo:
                nxt = form.add(cur, g)
                if nxt not in span:
                    span.add(nxt)
                    frontier.append(nxt)
        if len(span) == form.order:
            return tuple(combo)
    return None


def verify_published_witness(m: int) -> WitnessCheck:
    """Check the published (T_m, S_m, B_m) data for a constructed pair.

    Confirms the candidate Picard determinant, locates generators eps_i
    with the published orders and -q values, validates the published
    generator-image matrix as an anti-isometry, and reruns the
    independent witness search.
    """
    if m not in PUBLISHED_T_GRAMS:
        raise PreconditionError(f"type {m} has no published gluing witness")
    final = CONSTRUCTED_PAIRS[m]
    cand = picard_candidate(m, final)
    t_gram = GramLattice(PUBLISHED_T_GRAMS[m])
    if cand.det != t_gram.determinant():
        raise RealizabilityError(
            f"type {m}: |det S| = {cand.det} but det T = {t_gram.determinant()}"
        )
    q_s = discriminant_form(cand.lattice)
    targets = PUBLISHED_NEG_Q_S[m]
    eps = _find_epsilon_generators(q_s, targets)
    published_ok = False
    if eps is not None:
        published_ok = _published_map_is_anti_isometry(t_gram, q_s, eps, PUBLISHED_B_MATRICES[m])
    search = anti_isometry_exists(discriminant_form(t_gram), q_s)
    return WitnessCheck(
        m=m,
        picard_det=cand.det,
        neg_q_values=tuple(v for _, v in targets),
        epsilon_found=eps is not None,
        published_map_valid=published_ok,
        search_witness=search,
    )


def _published_map_is_anti_isometry(
    t_gram: GramLattice,
    q_s: DiscriminantForm,
    eps: Sequence[tuple[int, ...]],
    b_matrix: Sequence[Sequence[int]],
) -> bool:
    """Check (g_1..g_k) -> (eps_1..eps_k) B against all dual classes of T.

    The g_i are the dual-basis columns of the transcendental Gram; the map
    must be well defined on classes, bijective, and negate the quadratic
    form everywhere.
    """
    from math import lcm as _lcm

    n = t_gram.rank
    t_inv = inverse(t_gram.gram)
    k = len(b_matrix[0])
    gens = [tuple(t_inv[r][i] for r in range(n)) for i in range(k)]
    orders = []
    for g in gens:
        den = 1
        for x in g:
            den = _lcm(den, x.denominator)
        orders.append(den)
    class_to_image: dict[tuple[Q, ...], tuple[int, ...]] = {}
    for exps in product(*[range(o) for o in orders]):
        vec = tuple(sum((Q(exps[i]) * gens[i][r] for i in range(k)), Q(0))
                    for r in range(n))
        cls = tuple(mod1(x) for x in vec)
        image = q_s.zero()
        for i, eps_i in enumerate(eps):
            coeff = sum(b_matrix[i][j] * exps[j] for j in range(k))
            scaled = tuple((coeff * x) % d for x, d in zip(eps_i, q_s.factors))
            image = q_s.add(image, scaled)
        if cls in class_to_image:
            if class_to_image[cls] != image:
                return False
            continue
        class_to_image[cls] = image
        q_t_val = mod2(pairing(t_gram.gram, vec, vec))
        if q_s.q_of(image) != mod2(-q_t_val):
            return False
    if len(class_to_image) != q_s.order:
        return False
    images = set(class_to_image.values())
    return len(images) == q_s.order


# ---------------------------------------------------------------------------
# Fiber-span check for the glued lattices
# ---------------------------------------------------------------------------

def fiber_span_is_exact(m: int) -> bool:
    """No root orthogonal to the fiber class escapes Z F + fiber roots.

    Roots of the glued lattice that pair to zero with F decompose as a
    multiple of F plus a vector in some glue-class coset of the fiber root
    sum; the check enumerates every nonzero coset for vectors of norm -2.
    """
    config = case_a_type(m)
    final = CONSTRUCTED_PAIRS.get(m, ())
    if not final:
        return True
    report = torsion_search(config)
    match = next(elems for inv, elems in subgroups_of(report) if inv == final)
    gens = _minimal_generators(config, match)
    roots = fiber_root_sum(config)
    shifts = []
    for g in gens:
        corr = section_correction(config, g)
        flat: list[Q] = []
        for block in corr.fiber_coefficients:
            flat.extend(block)
        shifts.append(tuple(flat))
    zero = tuple(Q(0) for _ in range(roots.rank))
    classes = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for s in shifts:
            nxt = tuple(mod1(a + b) for a, b in zip(cur, s))
            if nxt not in classes:
                classes.add(nxt)
                frontier.append(nxt)
    blocks = []
    offset = 0
    for f in config.reducible_fibers:
        lab = root_label(f)
        assert lab is not None
        r = gram_of(lab).rank
        blocks.append((gram_of(lab).gram, offset, r))
        offset += r
    for cls in sorted(classes):
        if cls == zero:
            continue
        achievable: list[set[int]] = []
        for gram, off, r in blocks:
            shift = cls[off:off + r]
            norms = {int(norm) for _, norm in coset_norms(gram, shift, 2)}
            achievable.append(norms)
        for combo in product(*achievable):
            if sum(combo) == -2:
                return False
    return True


# ---------------------------------------------------------------------------
# D-lattice quotients in the coordinate model
# ---------------------------------------------------------------------------

def d_lattice_quotient(parts: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of D_m modulo the block sum of D_{n_i}.

    Uses the coordinate model: the block lattices sit inside D_m by
    splitting the m coordinates, and the quotient is read off the Smith
    normal form of the embedding matrix.
    """
    parts = [int(n) for n in parts]
    if not parts or any(n < 3 for n in parts):
        raise LatticeError("every part must be at least 3")
    m = sum(parts)
    big = d_coordinate_basis(m)
    big_inv = inverse(big)
    rows = []
    offset = 0
    for n in parts:
        for brow in d_coordinate_basis(n):
            vec = [0] * m
            vec[offset:offset + n] = brow
            coords = [sum(Q(vec[j]) * big_inv[j][i] for j in range(m)) for i in range(m)]
            if any(x.denominator != 1 for x in coords):
                raise LatticeError("block vector is not in D_m")
            rows.append([int(x) for x in coords])
        offset += n
    d, _, _ = smith_normal_form(rows)
    return tuple(x for x in d if x > 1)
