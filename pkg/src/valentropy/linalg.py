"""Exact linear algebra over the Puiseux-fraction field and its valuation ring.

Two layers live here.  Over the field: characteristic polynomials, kernels,
inverses, ranks.  Over the valuation ring R: lattices (finitely generated
R-submodules of Q^n held as generator matrices), their echelon normal form,
membership, Smith invariants and quotient lengths.

The single structural fact doing all the work over R: the entry of minimal
valuation in a matrix divides every other entry, so choosing it as the pivot
keeps every elimination coefficient inside R.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    NonSquare,
    NotASubmodule,
    PreconditionFailed,
    SingularMap,
)
from .field import ONE, ZERO, FieldElement, format_element
from .rationals import INF, ExtRational, ext_min, ext_sum

Vector = tuple  # tuple[FieldElement, ...]


def _as_element(x) -> FieldElement:
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElement.from_rational(x)
    if isinstance(x, str):
        from .field import parse_element

        return parse_element(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to a field element")


def vec(entries: Iterable) -> Vector:
    return tuple(_as_element(x) for x in entries)


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(a: Vector, c: FieldElement) -> Vector:
    return tuple(c * x for x in a)


def vec_is_zero(a: Vector) -> bool:
    return all(x.is_zero for x in a)


class MatrixQ:
    """Immutable matrix over the Puiseux-fraction field, row-major entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(_as_element(x) for x in row) for row in entries]
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if any(len(r) != self.cols for r in rows):
            raise DimensionMismatch("ragged matrix rows")
        self.entries = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls([[ZERO] * cols for _ in range(rows)])

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int | None = None) -> "MatrixQ":
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(n)])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(self.entries[i][j] for i in range(self.rows))

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"matrix is {self.rows}x{self.cols}, vector has {len(v)}")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for j in range(self.cols):
                e = self.entries[i][j]
                if not e.is_zero:
                    acc = acc + e * v[j]
            out.append(acc)
        return tuple(out)

    def __mul__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        cols = [self.apply(other.column(j)) for j in range(other.cols)]
        return MatrixQ.from_columns(cols, rows=self.rows)

    def __add__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return MatrixQ(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ]
        )

    def __sub__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return self + other.scale(-1)

    def scale(self, c) -> "MatrixQ":
        c = _as_element(c)
        return MatrixQ([[c * x for x in row] for row in self.entries])

    def trace(self) -> FieldElement:
        if not self.is_square:
            raise NonSquare("trace of a non-square matrix")
        acc = ZERO
        for i in range(self.rows):
            acc = acc + self.entries[i][i]
        return acc

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "MatrixQ":
        return MatrixQ([list(self.entries[i][c0:c1]) for i in range(r0, r1)])

    def __eq__(self, other):
        if not isinstance(other, MatrixQ):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(
            ", ".join(format_element(x) for x in row) for row in self.entries
        )
        return f"MatrixQ[{body}]"


class PolynomialQ:
    """Polynomial over the field, coefficients c_0..c_d low to high."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = [_as_element(c) for c in coeffs]
        while cs and cs[-1].is_zero:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> FieldElement:
        if self.is_zero:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading_coefficient == ONE

    def content_valuation(self) -> ExtRational:
        """Minimum valuation over the coefficients; INF for the zero polynomial."""
        return ext_min(c.valuation for c in self.coeffs)

    def scale(self, s) -> "PolynomialQ":
        s = _as_element(s)
        return PolynomialQ([s * c for c in self.coeffs])

    def primitive_scaling(self):
        """Minimal-valuation s in R with s*p over R; returns (s, s*p).

        The scaled polynomial has content valuation exactly 0 (is primitive).
        """
        from .field import monomial

        if self.is_zero:
            return ONE, self
        v = self.content_valuation()
        s = monomial(max(Fraction(0), -v))
        return s, self.scale(s)

    def apply_to_vector(self, a: MatrixQ, x: Vector) -> Vector:
        """Evaluate p(a) applied to x, via iterated images of x."""
        acc = tuple(ZERO for _ in x)
        power = x
        for c in self.coeffs:
            if not c.is_zero:
                acc = vec_add(acc, vec_scale(power, c))
            power = a.apply(power)
        return acc

    def __eq__(self, other):
        if not isinstance(other, PolynomialQ):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        if self.is_zero:
            return "PolynomialQ(0)"
        body = " + ".join(
            f"({format_element(c)})*X^{i}" for i, c in enumerate(self.coeffs) if not c.is_zero
        )
        return f"PolynomialQ({body})"


def char_poly(a: MatrixQ) -> PolynomialQ:
    """Monic characteristic polynomial det(X*I - a), by Faddeev-LeVerrier.

    The recursion only ever divides by the integers 1..n, which is exact here.
    """
    if not a.is_square:
        raise NonSquare("characteristic polynomial of a non-square matrix")
    n = a.rows
    coeffs = [ZERO] * n + [ONE]
    m = MatrixQ.identity(n)
    for k in range(1, n + 1):
        am = a * m
        c = am.trace() / FieldElement.from_rational(-k)
        coeffs[n - k] = c
        if k < n:
            m = am + MatrixQ.identity(n).scale(c)
    return PolynomialQ(coeffs)


def _rref_rows(a: MatrixQ):
    """Reduced row echelon form over the field.

    Returns (pivots, rows) where pivots is a list of (row, col) pairs and the
    pivot entries are 1 with zeros elsewhere in their columns.
    """
    rows = [list(r) for r in a.entries]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(a.cols):
        sel = None
        for i in range(r, a.rows):
            if not rows[i][c].is_zero:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(a.rows):
            if i != r and not rows[i][c].is_zero:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == a.rows:
            break
    return pivots, rows


def matrix_rank(a: MatrixQ) -> int:
    if a.rows == 0 or a.cols == 0:
        return 0
    return len(_rref_rows(a)[0])


def kernel(a: MatrixQ) -> list[Vector]:
    """Exact basis of the null space over the field."""
    if a.cols == 0:
        return []
    if a.rows == 0:
        return list(MatrixQ.identity(a.cols).columns())
    pivots, rows = _rref_rows(a)
    pivot_cols = {c: r for (r, c) in pivots}
    basis: list[Vector] = []
    for j in range(a.cols):
        if j in pivot_cols:
            continue
        x = [ZERO] * a.cols
        x[j] = ONE
        for (r, c) in pivots:
            if not rows[r][j].is_zero:
                x[c] = -rows[r][j]
        basis.append(tuple(x))
    return basis


def solve(a: MatrixQ, b: Vector) -> Vector | None:
    """One solution x of a x = b over the field, or None when inconsistent."""
    n, m = a.rows, a.cols
    aug = [list(a.row(i)) + [b[i]] for i in range(n)]
    pivot_cols: list[tuple[int, int]] = []
    row = 0
    for col in range(m):
        sel = None
        for i in range(row, n):
            if not aug[i][col].is_zero:
                sel = i
                break
        if sel is None:
            continue
        aug[row], aug[sel] = aug[sel], aug[row]
        inv = aug[row][col].inverse()
        aug[row] = [inv * x for x in aug[row]]
        for i in range(n):
            if i != row and not aug[i][col].is_zero:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
        pivot_cols.append((row, col))
        row += 1
        if row == n:
            break
    for i in range(row, n):
        if not aug[i][m].is_zero:
            return None
    x = [ZERO] * m
    for (r, c) in pivot_cols:
        x[c] = aug[r][m]
    return tuple(x)


def inverse(a: MatrixQ) -> MatrixQ:
    """Exact inverse; raises SingularMap when the matrix is singular."""
    if not a.is_square:
        raise NonSquare("inverse of a non-square matrix")
    n = a.rows
    aug = [list(a.row(i)) + [ONE if j == i else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        sel = None
        for i in range(col, n):
            if not aug[i][col].is_zero:
                sel = i
                break
        if sel is None:
            raise SingularMap("matrix is singular")
        aug[col], aug[sel] = aug[sel], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [inv * x for x in aug[col]]
        for i in range(n):
            if i != col and not aug[i][col].is_zero:
                f = aug[i][col]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[col])]
    return MatrixQ([row[n:] for row in aug])


def determinant(a: MatrixQ) -> FieldElement:
    """Exact determinant via fraction-free-ish Gaussian elimination."""
    if not a.is_square:
        raise NonSquare("determinant of a non-square matrix")
    n = a.rows
    rows = [list(a.row(i)) for i in range(n)]
    det = ONE
    for col in range(n):
        sel = None
        for i in range(col, n):
            if not rows[i][col].is_zero:
                sel = i
                break
        if sel is None:
            return ZERO
        if sel != col:
            rows[col], rows[sel] = rows[sel], rows[col]
            det = -det
        pivot = rows[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for i in range(col + 1, n):
            if not rows[i][col].is_zero:
                f = rows[i][col] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


# --------------------------------------------------------------------------
# Lattices: finitely generated R-submodules of Q^n
# --------------------------------------------------------------------------


class Lattice:
    """A finitely generated R-submodule of Q^n, held as generator columns.

    Normalized form is a column echelon over R: columns are emitted in pivot
    order, each pivot is the minimal-valuation entry of its column, and every
    later column vanishes at the pivot rows of earlier ones.  That triangular
    shape makes membership coefficients forced, one pivot row at a time.
    Lattice equality is semantic (mutual membership), not representational.
    """

    __slots__ = ("ambient_dim", "columns", "pivots")

    def __init__(self, ambient_dim: int, columns: Sequence[Vector], pivots=None):
        self.ambient_dim = ambient_dim
        self.columns = tuple(tuple(c) for c in columns)
        for c in self.columns:
            if len(c) != ambient_dim:
                raise DimensionMismatch("generator length differs from ambient dimension")
        self.pivots = tuple(pivots) if pivots is not None else None

    @classmethod
    def from_columns(cls, ambient_dim: int, columns: Iterable[Iterable]) -> "Lattice":
        return cls(ambient_dim, [vec(c) for c in columns])

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        """R^n with the standard generators."""
        eye = MatrixQ.identity(n)
        return cls(n, eye.columns(), pivots=range(n))

    @classmethod
    def scaled_standard(cls, n: int, q) -> "Lattice":
        """t^q * R^n."""
        from .field import monomial

        s = monomial(q)
        cols = [
            tuple(s if i == j else ZERO for i in range(n)) for j in range(n)
        ]
        return cls(n, cols, pivots=range(n))

    @classmethod
    def zero(cls, n: int) -> "Lattice":
        return cls(n, [], pivots=())

    @property
    def is_normalized(self) -> bool:
        return self.pivots is not None

    @property
    def rank(self) -> int:
        return len(normalize_lattice(self).columns)

    def __repr__(self):
        cols = ["(" + ", ".join(format_element(x) for x in c) + ")" for c in self.columns]
        return f"Lattice(dim={self.ambient_dim}, gens=[{'; '.join(cols)}])"

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return lattices_equal(self, other)

    def __hash__(self):
        raise TypeError("lattices compare semantically; not hashable")


def normalize_lattice(lattice: Lattice) -> Lattice:
    """Column echelon form over R; same R-span, idempotent.

    Pivot rule: entry of minimal valuation, ties by lowest row then lowest
    column.  Minimal valuation divides everything, so the eliminations that
    clear its row from the still-active columns have coefficients in R.
    """
    if lattice.is_normalized:
        return lattice
    n = lattice.ambient_dim
    active = [list(c) for c in lattice.columns if not vec_is_zero(c)]
    frozen: list[tuple] = []
    pivot_rows: list[int] = []
    used_rows: set[int] = set()
    while active:
        best = None  # (valuation, row, active_index)
        for idx, col in enumerate(active):
            for i in range(n):
                if i in used_rows:
                    continue
                e = col[i]
                if e.is_zero:
                    continue
                key = (e.valuation, i, idx)
                if best is None or key < best:
                    best = key
        if best is None:
            break  # only zero entries left outside used rows (cannot happen)
        _, prow, pidx = best
        pivot_col = active.pop(pidx)
        pivot = pivot_col[prow]
        inv_pivot = pivot.inverse()
        next_active = []
        for col in active:
            e = col[prow]
            if not e.is_zero:
                f = e * inv_pivot
                col = [x - f * y for x, y in zip(col, pivot_col)]
            if any(not x.is_zero for x in col):
                next_active.append(list(col))
        active = next_active
        frozen.append(tuple(pivot_col))
        pivot_rows.append(prow)
        used_rows.add(prow)
    return Lattice(n, frozen, pivots=pivot_rows)


def _coordinates(x: Vector, lattice: Lattice, over_ring: bool):
    """Coefficients of x against a normalized lattice's columns.

    Returns the coefficient list, or None when x is outside the span (or, with
    over_ring=True, outside the R-span).
    """
    lat = normalize_lattice(lattice)
    residual = list(x)
    coeffs = []
    for col, prow in zip(lat.columns, lat.pivots):
        c = residual[prow] / col[prow]
        if over_ring and not c.is_zero and c.valuation < 0:
            return None
        coeffs.append(c)
        if not c.is_zero:
            for i in range(lat.ambient_dim):
                if not col[i].is_zero:
                    residual[i] = residual[i] - c * col[i]
    if any(not r.is_zero for r in residual):
        return None
    return coeffs


def lattice_membership(x: Iterable, lattice: Lattice) -> bool:
    """Whether x is an R-linear combination of the lattice generators."""
    x = vec(x)
    if len(x) != lattice.ambient_dim:
        raise DimensionMismatch("vector length differs from ambient dimension")
    return _coordinates(x, lattice, over_ring=True) is not None


def lattice_contains(outer: Lattice, inner: Lattice) -> bool:
    outer = normalize_lattice(outer)
    return all(
        _coordinates(c, outer, over_ring=True) is not None for c in inner.columns
    )


def lattices_equal(a: Lattice, b: Lattice) -> bool:
    if a.ambient_dim != b.ambient_dim:
        return False
    return lattice_contains(a, b) and lattice_contains(b, a)


def lattice_join(*lattices: Lattice) -> Lattice:
    """Sum of lattices (R-span of all generators), normalized."""
    dims = {lat.ambient_dim for lat in lattices}
    if len(dims) != 1:
        raise DimensionMismatch("joining lattices of different ambient dimension")
    cols: list[Vector] = []
    for lat in lattices:
        cols.extend(lat.columns)
    return normalize_lattice(Lattice(dims.pop(), cols))


def lattice_image(a: MatrixQ, lattice: Lattice) -> Lattice:
    """The lattice spanned by a * (each generator)."""
    if a.cols != lattice.ambient_dim:
        raise DimensionMismatch("matrix does not act on the ambient space")
    return normalize_lattice(
        Lattice(a.rows, [a.apply(c) for c in lattice.columns])
    )


def smith_valuations(rows: list[list[FieldElement]]) -> list[Fraction]:
    """Diagonal valuations of the Smith form over R of a full-rank matrix.

    Row/column operations subtract R-multiples or swap, so the product of the
    diagonal equals the determinant up to sign: the returned values sum to the
    valuation of the determinant.  Returned sorted ascending.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    out: list[Fraction] = []
    top = 0
    while top < min(nrows, ncols):
        best = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                e = m[i][j]
                if e.is_zero:
                    continue
                key = (e.valuation, i, j)
                if best is None or key < best:
                    best = key
        if best is None:
            break
        _, bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        pivot = m[top][top]
        inv = pivot.inverse()
        for i in range(top + 1, nrows):
            e = m[i][top]
            if not e.is_zero:
                f = e * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[top])]
        for j in range(top + 1, ncols):
            e = m[top][j]
            if not e.is_zero:
                f = e * inv
                for i in range(top, nrows):
                    m[i][j] = m[i][j] - f * m[i][top]
        out.append(pivot.valuation)
        top += 1
    return sorted(out)


def _relative_coordinates(outer: Lattice, inner: Lattice):
    """Matrix of inner's generators in outer's echelon basis (entries in R).

    Raises NotASubmodule if some generator of inner is outside outer.
    """
    outer = normalize_lattice(outer)
    inner = normalize_lattice(inner)
    cols = []
    for c in inner.columns:
        coeffs = _coordinates(c, outer, over_ring=True)
        if coeffs is None:
            raise NotASubmodule("generator lies outside the alleged ambient lattice")
        cols.append(coeffs)
    # cols are coordinate columns; present as rows x cols matrix
    r = len(outer.columns)
    return [[cols[j][i] for j in range(len(cols))] for i in range(r)], r, len(cols)


def relative_coordinate_matrix(outer: Lattice, inner: Lattice) -> MatrixQ:
    """Change-of-basis matrix: inner's generators in outer's echelon basis."""
    rows, _, _ = _relative_coordinates(outer, inner)
    return MatrixQ(rows)


def smith_invariants(outer: Lattice, inner: Lattice) -> list[Fraction]:
    """Valuations d_1 <= ... <= d_r with outer/inner isomorphic to + R/(t^d_i).

    Requires inner a submodule of outer of equal rank.
    """
    rows, r, m = _relative_coordinates(outer, inner)
    if m != r:
        raise PreconditionFailed(
            f"equal ranks required for Smith invariants (got {r} vs {m})"
        )
    vals = smith_valuations(rows)
    if len(vals) != r:
        raise PreconditionFailed("inner lattice does not have full rank in outer")
    return vals


def quotient_length(outer: Lattice, inner: Lattice) -> ExtRational:
    """Valuation length of outer/inner: sum of the Smith invariant valuations.

    INF when the ranks differ (the quotient then contains a copy of R and any
    non-torsion module has infinite valuation length).
    """
    rows, r, m = _relative_coordinates(outer, inner)
    if m < r:
        return INF
    vals = smith_valuations(rows)
    if len(vals) < r:
        return INF
    return ext_sum(vals)


def preimage_lattice(a: MatrixQ, lattice: Lattice) -> Lattice:
    """The lattice {x : a x in N} for an injective square map and full-rank N."""
    if not a.is_square:
        raise NonSquare("preimage requires a square matrix")
    if a.rows != lattice.ambient_dim:
        raise DimensionMismatch("matrix does not act on the ambient space")
    if kernel(a):
        raise SingularMap(
            "preimage under a singular map is not a lattice; reduce by the hyperkernel first"
        )
    lat = normalize_lattice(lattice)
    if len(lat.columns) != lattice.ambient_dim:
        raise PreconditionFailed("preimage requires a full-rank lattice")
    ainv = inverse(a)
    return normalize_lattice(
        Lattice(lattice.ambient_dim, [ainv.apply(c) for c in lat.columns])
    )


def rank(obj) -> int:
    """Rank over the field of a lattice's generators or a matrix."""
    if isinstance(obj, Lattice):
        return len(normalize_lattice(obj).columns)
    if isinstance(obj, MatrixQ):
        return matrix_rank(obj)
    raise TypeError("rank expects a Lattice or a MatrixQ")


def _unit_scaled_echelon(columns: list[Vector], n: int) -> list[Vector]:
    """Echelon basis of a Q-subspace scaled so each pivot has valuation 0.

    For a subspace W spanned by the columns, the returned vectors generate
    R^n intersect W over R: pivot rows force the coefficients, and valuation-0
    pivots make membership in R^n equivalent to R-coefficients.
    """
    from .field import monomial

    lat = normalize_lattice(Lattice(n, columns))
    out = []
    for col, prow in zip(lat.columns, lat.pivots):
        v = col[prow].valuation
        if v != 0:
            col = vec_scale(col, monomial(-v))
        out.append(col)
    return out


def intersect_coordinate_subspace(lattice: Lattice, keep: int) -> Lattice:
    """Intersection of a lattice with the subspace of the first `keep` coordinates."""
    lat = normalize_lattice(lattice)
    n = lat.ambient_dim
    k = len(lat.columns)
    if k == 0 or keep >= n:
        return lat
    # coefficient vectors c with (G c) vanishing outside the kept coordinates
    proj = MatrixQ([[lat.columns[j][i] for j in range(k)] for i in range(keep, n)])
    null = kernel(proj)
    if not null:
        return Lattice.zero(n)
    unit_basis = _unit_scaled_echelon(null, k)
    g = MatrixQ.from_columns(list(lat.columns), rows=n)
    cols = [g.apply(c) for c in unit_basis]
    return normalize_lattice(Lattice(n, cols))
