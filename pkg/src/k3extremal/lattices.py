"""Exact-arithmetic integer lattice engine.

Gram matrices with integer entries, determinants, duals, discriminant
groups carrying a Q/2Z-valued quadratic form, direct sums, finite-index
overlattice extensions, and the even coordinate-sum model of D_n.  All
arithmetic is exact (Python ints and fractions); no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from itertools import product
from math import gcd, isqrt, lcm
from typing import Iterable, Iterator, Optional, Sequence

Matrix = tuple[tuple[int, ...], ...]
QVector = tuple[Q, ...]


class LatticeError(ValueError):
    """Raised when an operation is applied to an inadmissible lattice."""


def _freeze(rows: Iterable[Iterable[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def mod2(x: Q) -> Q:
    """Reduce a rational into the canonical interval [0, 2)."""
    return Q(x) % 2


def mod1(x: Q) -> Q:
    """Reduce a rational into the canonical interval [0, 1)."""
    return Q(x) % 1


# ---------------------------------------------------------------------------
# Dynkin labels and Gram matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DynkinLabel:
    """An ADE root-lattice label such as A5, D6 or E7."""

    family: str
    index: int

    def __post_init__(self) -> None:
        if self.family == "A":
            ok = self.index >= 1
        elif self.family == "D":
            ok = self.index >= 3
        elif self.family == "E":
            ok = self.index in (6, 7, 8)
        else:
            ok = False
        if not ok:
            raise LatticeError(f"invalid Dynkin label {self.family}{self.index}")

    def __str__(self) -> str:
        return f"{self.family}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "DynkinLabel":
        if len(text) < 2 or text[0] not in "ADE" or not text[1:].isdigit():
            raise LatticeError(f"cannot parse Dynkin label {text!r}")
        return cls(text[0], int(text[1:]))


# Node numbering of each diagram is pinned so that the simple fiber
# components occupy the leading indices (see kodaira's component tables)
# and the dual-basis columns reproduce the published section coefficients.
# For D_n the interior chain is listed from the node next to vertex 1 out
# to the fork; D7's irregular order matches the printed type-12 data.
_D_CHAIN: dict[int, tuple[int, ...]] = {
    4: (4,),
    5: (5, 4),
    6: (6, 5, 4),
    7: (7, 4, 5, 6),
}

_E_EDGES: dict[int, tuple[tuple[int, int], ...]] = {
    6: ((1, 4), (4, 3), (2, 5), (5, 3), (6, 3)),
    7: ((1, 7), (7, 6), (6, 3), (3, 4), (4, 5), (2, 3)),
    8: ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)),
}


def dynkin_edges(label: DynkinLabel) -> tuple[tuple[int, int], ...]:
    """Edges of the Dynkin diagram in the package's canonical numbering."""
    n = label.index
    if label.family == "A":
        return tuple((i, i + 1) for i in range(1, n))
    if label.family == "E":
        return _E_EDGES[n]
    if n == 3:
        return ((1, 2), (1, 3))
    chain = _D_CHAIN.get(n, tuple(range(n, 3, -1)))
    edges = [(1, chain[0])]
    edges.extend(zip(chain, chain[1:]))
    edges.append((chain[-1], 2))
    edges.append((chain[-1], 3))
    return tuple(edges)


@dataclass(frozen=True)
class GramLattice:
    """An integer symmetric bilinear form given by its Gram matrix."""

    gram: Matrix

    def __post_init__(self) -> None:
        n = len(self.gram)
        for row in self.gram:
            if len(row) != n:
                raise LatticeError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.gram[i][j] != self.gram[j][i]:
                    raise LatticeError("Gram matrix must be symmetric")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def determinant(self) -> int:
        return det_int(self.gram)

    def signature(self) -> tuple[int, int]:
        return signature(self.gram)

    def pairing(self, v: Sequence[Q], w: Sequence[Q]) -> Q:
        return pairing(self.gram, v, w)

    def norm(self, v: Sequence[Q]) -> Q:
        return pairing(self.gram, v, v)

    def to_json(self) -> dict:
        return {"rank": self.rank, "gram": [x for row in self.gram for x in row]}

    @classmethod
    def from_json(cls, data: dict) -> "GramLattice":
        n = int(data["rank"])
        flat = [int(x) for x in data["gram"]]
        if len(flat) != n * n:
            raise LatticeError("gram array length does not match rank")
        return cls(_freeze(flat[i * n:(i + 1) * n] for i in range(n)))


def gram_of(label: DynkinLabel) -> GramLattice:
    """Negative-definite even Gram matrix of an ADE root lattice."""
    n = label.index
    rows = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for a, b in dynkin_edges(label):
        rows[a - 1][b - 1] = 1
        rows[b - 1][a - 1] = 1
    return GramLattice(_freeze(rows))


def hyperbolic_u() -> GramLattice:
    """Rank-2 hyperbolic plane in the basis O, F with O*O = -2, O*F = 1."""
    return GramLattice(((-2, 1), (1, 0)))


def direct_sum(lattices: Sequence[GramLattice]) -> GramLattice:
    """Orthogonal direct sum; the empty sum is the rank-0 lattice."""
    n = sum(lat.rank for lat in lattices)
    rows = [[0] * n for _ in range(n)]
    offset = 0
    for lat in lattices:
        for i in range(lat.rank):
            for j in range(lat.rank):
                rows[offset + i][offset + j] = lat.gram[i][j]
        offset += lat.rank
    return GramLattice(_freeze(rows))


# ---------------------------------------------------------------------------
# Exact linear algebra
# ---------------------------------------------------------------------------

def det_int(mat: Sequence[Sequence[int]]) -> int:
    """Integer determinant via fraction-free Bareiss elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[int(x) for x in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def signature(mat: Sequence[Sequence[int]]) -> tuple[int, int]:
    """(positive, negative) inertia of a non-degenerate symmetric matrix.

    Symmetric Gaussian elimination over exact rationals; a vanishing
    diagonal block is repaired by a congruence (adding a row and the
    matching column), which preserves inertia.
    """
    n = len(mat)
    a = [[Q(x) for x in row] for row in mat]

    def swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    pos = neg = 0
    for k in range(n):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if pivot is not None:
                swap(k, pivot)
            else:
                found = next(((i, j) for i in range(k, n)
                              for j in range(i + 1, n) if a[i][j] != 0), None)
                if found is None:
                    raise LatticeError("degenerate form has no signature")
                i, j = found
                for t in range(n):
                    a[i][t] += a[j][t]
                for t in range(n):
                    a[t][i] += a[t][j]
                if i != k:
                    swap(k, i)
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        # pivot row k stays intact until the pass over lower rows is complete
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / d
                for j in range(k + 1, n):
                    a[i][j] -= f * a[k][j]
                a[i][k] = Q(0)
    return pos, neg


def inverse(mat: Sequence[Sequence[int]]) -> tuple[QVector, ...]:
    """Exact inverse of a non-singular matrix, as rows of fractions."""
    n = len(mat)
    a = [[Q(x) for x in row] + [Q(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise LatticeError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        d = a[col][col]
        a[col] = [x / d for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def solve_linear(mat: Sequence[Sequence[int]], rhs: Sequence[Q]) -> QVector:
    """Solve mat * x = rhs exactly; raises LatticeError if singular."""
    inv = inverse(mat)
    n = len(mat)
    return tuple(sum((inv[i][j] * Q(rhs[j]) for j in range(n)), Q(0))
                 for i in range(n))


def pairing(gram: Matrix, v: Sequence[Q], w: Sequence[Q]) -> Q:
    n = len(gram)
    total = Q(0)
    for i in range(n):
        vi = Q(v[i])
        if vi == 0:
            continue
        row = gram[i]
        total += vi * sum((Q(w[j]) * row[j] for j in range(n) if row[j]), Q(0))
    return total


def smith_normal_form(
    mat: Sequence[Sequence[int]],
) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Smith normal form: returns (d, U, V) with U*mat*V = diag(d).

    U and V are unimodular; the diagonal is non-negative with each entry
    dividing the next.
    """
    a = [[int(x) for x in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_add(i: int, j: int, k: int) -> None:
        a[i] = [x + k * y for x, y in zip(a[i], a[j])]
        U[i] = [x + k * y for x, y in zip(U[i], U[j])]

    def col_add(i: int, j: int, k: int) -> None:
        for r in a:
            r[i] += k * r[j]
        for r in V:
            r[i] += k * r[j]

    def row_swap(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (pivot is None or
                                     abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        row_swap(t, pivot[0])
        col_swap(t, pivot[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_add(i, t, -q)
                    if a[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_add(j, t, -q)
                    if a[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
            if dirty:
                continue
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % a[t][t] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    d = [a[i][i] for i in range(min(rows, cols))]
    return d, U, V


def hermite_normal_form(rows_in: Sequence[Sequence[int]]) -> list[list[int]]:
    """Row-style Hermite normal form; returns the nonzero basis rows."""
    a = [[int(x) for x in row] for row in rows_in]
    if not a:
        return []
    rows, cols = len(a), len(a[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, rows):
            while a[i][c] != 0:
                q = a[r][c] // a[i][c]
                a[r] = [x - q * y for x, y in zip(a[r], a[i])]
                a[r], a[i] = a[i], a[r]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == rows:
            break
    return a[:r]


# ---------------------------------------------------------------------------
# Discriminant forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscriminantForm:
    """A finite abelian group with a Q/2Z-valued quadratic form.

    ``factors`` is the invariant-factor presentation (each > 1, dividing
    the next); ``q_matrix`` holds q on the generators along the diagonal
    (reduced into [0,2)) and the bilinear form b off the diagonal
    (reduced into [0,1)).
    """

    factors: tuple[int, ...]
    q_matrix: tuple[QVector, ...]

    @property
    def order(self) -> int:
        n = 1
        for d in self.factors:
            n *= d
        return n

    @property
    def is_trivial(self) -> bool:
        return not self.factors

    def elements(self) -> Iterator[tuple[int, ...]]:
        return product(*[range(d) for d in self.factors])

    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.factors)

    def add(self, x: Sequence[int], y: Sequence[int]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def order_of(self, x: Sequence[int]) -> int:
        o = 1
        for a, d in zip(x, self.factors):
            o = lcm(o, d // gcd(d, a))
        return o

    def q_of(self, x: Sequence[int]) -> Q:
        k = len(self.factors)
        total = Q(0)
        for i in range(k):
            total += x[i] * x[i] * self.q_matrix[i][i]
            for j in range(i + 1, k):
                total += 2 * x[i] * x[j] * self.q_matrix[i][j]
        return mod2(total)

    def b_of(self, x: Sequence[int], y: Sequence[int]) -> Q:
        k = len(self.factors)
        total = Q(0)
        for i in range(k):
            for j in range(k):
                bij = self.q_matrix[i][j] if i != j else mod1(self.q_matrix[i][i])
                total += x[i] * y[j] * bij
        return mod1(total)

    def neg(self) -> "DiscriminantForm":
        rows = tuple(
            tuple(mod2(-x) if i == j else mod1(-x) for j, x in enumerate(row))
            for i, row in enumerate(self.q_matrix)
        )
        return DiscriminantForm(self.factors, rows)

    @classmethod
    def cyclic(cls, order: int, q: Q) -> "DiscriminantForm":
        if order <= 1:
            raise LatticeError("cyclic factor must have order > 1")
        return cls((order,), ((mod2(Q(q)),),))

    @classmethod
    def orthogonal_sum(cls, forms: Sequence["DiscriminantForm"]) -> "DiscriminantForm":
        factors: list[int] = []
        blocks: list[QVector] = []
        k = sum(len(f.factors) for f in forms)
        rows = [[Q(0)] * k for _ in range(k)]
        offset = 0
        for f in forms:
            for i, d in enumerate(f.factors):
                factors.append(d)
                for j in range(len(f.factors)):
                    rows[offset + i][offset + j] = f.q_matrix[i][j]
            offset += len(f.factors)
        return cls(tuple(factors), tuple(tuple(r) for r in rows))

    def order_statistics(self) -> dict[int, int]:
        stats: dict[int, int] = {}
        for e in self.elements():
            o = self.order_of(e)
            stats[o] = stats.get(o, 0) + 1
        return stats

    def to_json(self) -> dict:
        return {
            "factors": list(self.factors),
            "q_generators": [[str(x) for x in row] for row in self.q_matrix],
        }


def discriminant_form(lat: GramLattice) -> DiscriminantForm:
    """The finite quadratic form on dual-lattice classes of an even lattice."""
    form, _ = discriminant_form_with_generators(lat)
    return form


def discriminant_form_with_generators(
    lat: GramLattice,
) -> tuple[DiscriminantForm, tuple[QVector, ...]]:
    """Discriminant form plus generator lifts in dual coordinates.

    A lift is a rational coefficient vector in the basis of the lattice;
    its pairings with all basis vectors are integers.
    """
    if not lat.is_even:
        raise LatticeError("discriminant form requires an even lattice")
    if lat.determinant() == 0:
        raise LatticeError("discriminant form requires a non-degenerate lattice")
    n = lat.rank
    d, _, V = smith_normal_form(lat.gram)
    factors: list[int] = []
    gens: list[QVector] = []
    for i in range(n):
        if d[i] > 1:
            factors.append(d[i])
            gens.append(tuple(Q(V[r][i], d[i]) for r in range(n)))
    k = len(factors)
    rows = [[Q(0)] * k for _ in range(k)]
    for i in range(k):
        rows[i][i] = mod2(pairing(lat.gram, gens[i], gens[i]))
        for j in range(i + 1, k):
            rows[i][j] = rows[j][i] = mod1(pairing(lat.gram, gens[i], gens[j]))
    form = DiscriminantForm(tuple(factors), tuple(tuple(r) for r in rows))
    return form, tuple(gens)


# ---------------------------------------------------------------------------
# Overlattices
# ---------------------------------------------------------------------------

def overlattice_with_basis(
    lat: GramLattice, glue: Sequence[Sequence[Q]],
) -> tuple[GramLattice, tuple[QVector, ...]]:
    """Extend by glue vectors; returns the new Gram and its basis rows.

    Basis rows are rational coefficient vectors in the original basis.
    Each glue vector must pair integrally with the lattice and with the
    other glue vectors and have even integer self-pairing, so that the
    extension is again an even integral lattice of the same rank.
    """
    n = lat.rank
    glue_vecs = [tuple(Q(x) for x in g) for g in glue]
    for g in glue_vecs:
        if len(g) != n:
            raise LatticeError("glue vector has wrong length")
        for i in range(n):
            val = sum((g[j] * lat.gram[i][j] for j in range(n)), Q(0))
            if val.denominator != 1:
                raise LatticeError("glue vector does not pair integrally with the lattice")
        norm = pairing(lat.gram, g, g)
        if norm.denominator != 1 or int(norm) % 2 != 0:
            raise LatticeError("glue vector must have even integral self-pairing")
    for i, g in enumerate(glue_vecs):
        for h in glue_vecs[i + 1:]:
            if pairing(lat.gram, g, h).denominator != 1:
                raise LatticeError("glue vectors must pair integrally with each other")
    den = 1
    for g in glue_vecs:
        for x in g:
            den = lcm(den, x.denominator)
    rows = [[den * int(i == j) for j in range(n)] for i in range(n)]
    for g in glue_vecs:
        rows.append([int(x * den) for x in g])
    basis_rows = hermite_normal_form(rows)
    if len(basis_rows) != n:
        raise LatticeError("overlattice extension changed the rank")
    basis = tuple(tuple(Q(x, den) for x in row) for row in basis_rows)
    gram_rows = []
    for u in basis:
        gram_rows.append([pairing(lat.gram, u, v) for v in basis])
    for row in gram_rows:
        for x in row:
            if x.denominator != 1:
                raise LatticeError("extension is not integral")
    out = GramLattice(_freeze([int(x) for x in row] for row in gram_rows))
    if not out.is_even:
        raise LatticeError("extension is not even")
    return out, basis


def overlattice_extend(lat: GramLattice, glue: Sequence[Sequence[Q]]) -> GramLattice:
    """Finite-index even overlattice generated by the lattice and glue vectors."""
    out, _ = overlattice_with_basis(lat, glue)
    return out


def index_of_sublattice(lat: GramLattice, overlattice_det: int) -> int:
    """Index n with |det L| = n^2 |det M| for a finite-index extension."""
    big = abs(lat.determinant())
    small = abs(int(overlattice_det))
    if small == 0 or big % small != 0:
        raise LatticeError("determinant ratio is not integral")
    ratio = big // small
    root = isqrt(ratio)
    if root * root != ratio:
        raise LatticeError(
            "not a finite-index sublattice of an even overlattice with that determinant"
        )
    return root


# ---------------------------------------------------------------------------
# Form isometries
# ---------------------------------------------------------------------------

def anti_isometry_exists(
    source: DiscriminantForm, target: DiscriminantForm,
) -> Optional[tuple[tuple[int, ...], ...]]:
    """Search for an isomorphism phi with q_target(phi(x)) = -q_source(x).

    Returns the images of the source generators (as element tuples of the
    target) in a deterministic canonical order, or None.  The search is
    exhaustive over generator images filtered by element order and q-value.
    """
    if source.order != target.order:
        return None
    if source.is_trivial:
        return ()
    elems = sorted(target.elements())
    k = len(source.factors)
    candidates: list[list[tuple[int, ...]]] = []
    for i in range(k):
        d = source.factors[i]
        want = mod2(-source.q_matrix[i][i])
        pool = [e for e in elems
                if d % target.order_of(e) == 0 and target.q_of(e) == want]
        if not pool:
            return None
        candidates.append(pool)
    for images in product(*candidates):
        ok = True
        for i in range(k):
            for j in range(i + 1, k):
                if target.b_of(images[i], images[j]) != mod1(-source.q_matrix[i][j]):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        if _span_size(target, images) != target.order:
            continue
        return tuple(images)
    return None


def form_isometry_exists(
    source: DiscriminantForm, target: DiscriminantForm,
) -> Optional[tuple[tuple[int, ...], ...]]:
    """Search for a q-preserving isomorphism between two finite forms."""
    return anti_isometry_exists(source.neg(), target)


def _span_size(form: DiscriminantForm, images: Sequence[tuple[int, ...]]) -> int:
    seen = {form.zero()}
    frontier = [form.zero()]
    while frontier:
        cur = frontier.pop()
        for img in images:
            nxt = form.add(cur, img)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return len(seen)


# ---------------------------------------------------------------------------
# Abelian invariants from order statistics
# ---------------------------------------------------------------------------

def abelian_invariants(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group from its element orders.

    The multiset of element orders determines a finite abelian group up to
    isomorphism; the input must contain one entry per group element.
    """
    n = len(orders)
    if n == 0:
        raise LatticeError("order list must include the identity")
    target = sorted(orders)
    if target[0] != 1:
        raise LatticeError("missing identity element")
    for chain in _factor_chains(n):
        stats = _chain_order_statistics(chain)
        if stats == target:
            return chain
    raise LatticeError(f"order statistics {target} match no abelian group")


def _factor_chains(n: int, cap: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    if n == 1:
        yield ()
        return
    for d in range(2, n + 1):
        if n % d == 0 and (cap is None or cap % d == 0):
            for rest in _factor_chains(n // d, d):
                yield rest + (d,)


def _chain_order_statistics(chain: Sequence[int]) -> list[int]:
    orders = [1]
    for d in chain:
        orders = [lcm(o, d // gcd(d, a)) for o in orders for a in range(d)]
    return sorted(orders)


# ---------------------------------------------------------------------------
# Short vectors in cosets (negative definite forms)
# ---------------------------------------------------------------------------

def coset_norms(
    gram: Matrix, shift: Sequence[Q], bound: int,
) -> list[tuple[QVector, Q]]:
    """All vectors shift + Z^n of a negative definite form with |norm| <= bound.

    Returns (vector, norm) pairs sorted lexicographically.
    """
    n = len(gram)
    if n == 0:
        return [((), Q(0))]
    pos = [[-Q(x) for x in row] for row in gram]
    # rational Cholesky: pos = R^T D R with unit upper-triangular R
    D = [Q(0)] * n
    R = [[Q(0)] * n for _ in range(n)]
    work = [row[:] for row in pos]
    for i in range(n):
        D[i] = work[i][i]
        if D[i] <= 0:
            raise LatticeError("form is not negative definite")
        R[i][i] = Q(1)
        for j in range(i + 1, n):
            R[i][j] = work[i][j] / D[i]
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                work[r][c] -= work[r][i] * work[i][c] / D[i]
    out: list[tuple[QVector, Q]] = []
    shift_q = [Q(x) for x in shift]
    coords = [Q(0)] * n

    def recurse(i: int, remaining: Q) -> None:
        if i < 0:
            vec = tuple(coords[j] + shift_q[j] for j in range(n))
            norm = pairing(gram, vec, vec)
            if -norm <= bound:
                out.append((vec, norm))
            return
        center = shift_q[i] + sum(R[i][j] * (coords[j] + shift_q[j])
                                  for j in range(i + 1, n))
        # d_i * (x_i + center)^2 <= remaining
        limit = remaining / D[i]
        approx = float(limit) ** 0.5
        lo = int(-float(center) - approx) - 2
        hi = int(-float(center) + approx) + 2
        for x in range(lo, hi + 1):
            t = x + center
            used = D[i] * t * t
            if used <= remaining:
                coords[i] = Q(x)
                recurse(i - 1, remaining - used)
        coords[i] = Q(0)

    recurse(n - 1, Q(bound))
    return sorted(out)


# ---------------------------------------------------------------------------
# The coordinate model of D_n
# ---------------------------------------------------------------------------

def d_coordinate_contains(vec: Sequence[int], n: int) -> bool:
    """Membership in D_n: integer vectors with even coordinate sum."""
    if len(vec) != n:
        return False
    return all(isinstance(x, int) or Q(x).denominator == 1 for x in vec) and \
        sum(int(x) for x in vec) % 2 == 0


def d_coordinate_basis(n: int) -> list[list[int]]:
    """A basis of D_n inside Z^n: e1+e2 and e_{i-1}-e_i for i = 2..n."""
    if n < 3:
        raise LatticeError("D_n requires n >= 3")
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = 1
    rows[0][1] = 1
    for i in range(1, n):
        rows[i][i - 1] = 1
        rows[i][i] = -1
    return rows


def d_block_embedding_rows(parts: Sequence[int]) -> list[list[int]]:
    """Basis rows of the block-diagonal embedding of each D_{n_i} in Z^m."""
    m = sum(parts)
    rows: list[list[int]] = []
    offset = 0
    for n in parts:
        block = d_coordinate_basis(n)
        for brow in block:
            row = [0] * m
            row[offset:offset + n] = brow
            rows.append(row)
        offset += n
    return rows
