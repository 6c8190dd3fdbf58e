"""Module-with-endomorphism objects and their trajectory machinery.

Four concrete shapes are supported: finite-dimensional vector spaces over the
fraction field with a square matrix acting (optionally carrying a
distinguished full-rank lattice), finitely generated torsion modules presented
as a direct sum of cyclics R/(a_i) with a compatible endomorphism matrix, a
symbolic Bernoulli shift on countably many copies of a finite-length cell, and
finite direct sums of the above.  A separate symbolic marker represents a free
cyclic shift module of infinite rank, whose entropy is infinite by the rank
criterion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import CompatibilityError, DimensionMismatch, PreconditionFailed
from .field import ZERO, FieldElement
from .linalg import (
    Lattice,
    MatrixQ,
    Vector,
    kernel,
    lattice_join,
    matrix_rank,
    normalize_lattice,
    quotient_length,
    rank,
    solve,
    vec,
)
from .rationals import INF, ExtRational, ext_sum


@dataclass(frozen=True)
class VectorSpaceModule:
    """Q^n with a linear action, optionally a distinguished full-rank lattice."""

    dim: int
    matrix: MatrixQ
    lattice: Optional[Lattice] = None

    def __post_init__(self):
        if self.matrix.rows != self.dim or self.matrix.cols != self.dim:
            raise DimensionMismatch("action matrix must be dim x dim")
        if self.lattice is not None:
            if self.lattice.ambient_dim != self.dim:
                raise DimensionMismatch("distinguished lattice has wrong ambient dimension")
            if rank(self.lattice) != self.dim:
                raise PreconditionFailed("distinguished lattice must have full rank")

    def starting_lattice(self) -> Lattice:
        return self.lattice if self.lattice is not None else Lattice.standard(self.dim)


@dataclass(frozen=True)
class TorsionModule:
    """Direct sum of cyclics R/(a_i), each a_i of finite positive valuation,
    with an endomorphism matrix over R compatible with the annihilators."""

    annihilators: tuple
    matrix: MatrixQ

    def __post_init__(self):
        anns = tuple(self.annihilators)
        object.__setattr__(self, "annihilators", anns)
        k = len(anns)
        for a in anns:
            v = a.valuation
            if v is INF or v <= 0:
                raise CompatibilityError(
                    "annihilators must be nonzero non-units (finite positive valuation)"
                )
        if self.matrix.rows != k or self.matrix.cols != k:
            raise DimensionMismatch("endomorphism matrix must match the number of cyclics")
        for i in range(k):
            vi = anns[i].valuation
            for j in range(k):
                e = self.matrix[i, j]
                if e.is_zero:
                    continue
                if e.valuation < 0:
                    raise CompatibilityError("endomorphism entries must lie in R")
                if e.valuation + anns[j].valuation < vi:
                    raise CompatibilityError(
                        f"entry ({i},{j}) does not respect the annihilators: "
                        f"v={e.valuation}, needs >= {vi - anns[j].valuation}"
                    )

    @property
    def k(self) -> int:
        return len(self.annihilators)


@dataclass(frozen=True)
class BernoulliModule:
    """Right shift on countably many copies of a finite-length cell.

    The cell is given by the annihilators of its cyclic summands; an empty
    tuple is the zero cell.
    """

    cell_annihilators: tuple

    def __post_init__(self):
        anns = tuple(self.cell_annihilators)
        object.__setattr__(self, "cell_annihilators", anns)
        for a in anns:
            v = a.valuation
            if v is INF or v <= 0:
                raise CompatibilityError(
                    "cell annihilators must be nonzero non-units (finite positive valuation)"
                )

    def cell_length(self) -> ExtRational:
        return ext_sum(a.valuation for a in self.cell_annihilators)


@dataclass(frozen=True)
class FreeCyclicModule:
    """Symbolic free cyclic shift module (infinite rank; infinite entropy)."""


@dataclass(frozen=True)
class DirectSumModule:
    """Finite direct sum with the block-diagonal action."""

    summands: tuple

    def __post_init__(self):
        if not self.summands:
            raise ValueError("direct sum needs at least one summand")
        object.__setattr__(self, "summands", tuple(self.summands))


Module = Union[
    VectorSpaceModule, TorsionModule, BernoulliModule, DirectSumModule, FreeCyclicModule
]


def direct_sum(summands: Sequence[Module]):
    """One summand stays itself; several become a DirectSumModule."""
    summands = list(summands)
    if not summands:
        raise ValueError("direct sum needs at least one summand")
    if len(summands) == 1:
        return summands[0]
    return DirectSumModule(tuple(summands))


def length(m) -> ExtRational:
    """Valuation length: additive over the cyclic pieces, INF off torsion."""
    if isinstance(m, TorsionModule):
        return ext_sum(a.valuation for a in m.annihilators)
    if isinstance(m, BernoulliModule):
        # countably many copies of the cell
        return Fraction(0) if m.cell_length() == 0 else INF
    if isinstance(m, VectorSpaceModule):
        return Fraction(0) if m.dim == 0 else INF
    if isinstance(m, FreeCyclicModule):
        return INF
    if isinstance(m, DirectSumModule):
        return ext_sum(length(s) for s in m.summands)
    raise TypeError(f"no valuation length for {type(m).__name__}")


# --------------------------------------------------------------------------
# Trajectories
# --------------------------------------------------------------------------


def trajectory(m: VectorSpaceModule, start: Lattice, n: int) -> Lattice:
    """The partial trajectory K + phi K + ... + phi^(n-1) K, normalized."""
    if n < 1:
        raise ValueError("trajectory index must be >= 1")
    if start.ambient_dim != m.dim:
        raise DimensionMismatch("starting lattice has wrong ambient dimension")
    current = normalize_lattice(start)
    newest = list(start.columns)
    for _ in range(n - 1):
        newest = [m.matrix.apply(c) for c in newest]
        current = lattice_join(current, Lattice(m.dim, newest))
    return current


def trajectory_steps(m: VectorSpaceModule, start: Lattice, horizon: int):
    """Yield T_1, T_2, ..., T_(horizon+1) incrementally."""
    current = normalize_lattice(start)
    yield current
    newest = list(start.columns)
    for _ in range(horizon):
        newest = [m.matrix.apply(c) for c in newest]
        current = lattice_join(current, Lattice(m.dim, newest))
        yield current


def is_inert(m: VectorSpaceModule, lattice: Lattice) -> bool:
    """No rank growth in one step: rank(K + phi K) == rank(K).

    The one-step quotient is then finitely generated torsion, hence of finite
    valuation length, and the same follows for every later step.
    """
    if lattice.ambient_dim != m.dim:
        raise DimensionMismatch("lattice has wrong ambient dimension")
    base = normalize_lattice(lattice)
    image = Lattice(m.dim, [m.matrix.apply(c) for c in base.columns])
    return rank(lattice_join(base, image)) == len(base.columns)


# --------------------------------------------------------------------------
# Torsion submodules: lattice realization in R^k with the relation columns
# --------------------------------------------------------------------------


def _relation_lattice(m: TorsionModule) -> Lattice:
    cols = []
    for i, a in enumerate(m.annihilators):
        cols.append(tuple(a if r == i else ZERO for r in range(m.k)))
    return Lattice(m.k, cols)


def _reduce_mod_annihilators(m: TorsionModule, v: Vector) -> Vector:
    # entries divisible by the annihilator vanish in R/(a_i); zeroing them
    # keeps lifted generators small and never changes the span + relations
    return tuple(
        ZERO if (not e.is_zero and e.valuation >= a.valuation) else e
        for a, e in zip(m.annihilators, v)
    )


@dataclass(frozen=True)
class TorsionSubmodule:
    """Finitely generated submodule of a torsion presentation.

    Realized as the lattice in R^k spanned by lifted generators together with
    the relation columns a_i e_i; quotients of nested submodules then have the
    same invariants as the corresponding lattice quotients.
    """

    module: TorsionModule
    generators: tuple
    lattice: Lattice

    def contains(self, residue_vector) -> bool:
        from .linalg import lattice_membership

        return lattice_membership(vec(residue_vector), self.lattice)

    def valuation_length(self) -> ExtRational:
        return quotient_length(self.lattice, _relation_lattice(self.module))


def torsion_submodule(m: TorsionModule, gens: Sequence) -> TorsionSubmodule:
    gen_vecs = [_standard_gen(m, g) if isinstance(g, int) else vec(g) for g in gens]
    cols = list(_relation_lattice(m).columns) + [
        _reduce_mod_annihilators(m, g) for g in gen_vecs
    ]
    return TorsionSubmodule(m, tuple(gen_vecs), normalize_lattice(Lattice(m.k, cols)))


def _standard_gen(m: TorsionModule, i: int) -> Vector:
    from .field import ONE

    if not 0 <= i < m.k:
        raise DimensionMismatch(f"no standard generator {i} in a rank-{m.k} presentation")
    return tuple(ONE if r == i else ZERO for r in range(m.k))


def torsion_trajectory(m: TorsionModule, gens: Sequence, n: int) -> TorsionSubmodule:
    """Submodule generated by gens and their first n-1 images, reduced mod a_i."""
    if n < 1:
        raise ValueError("trajectory index must be >= 1")
    if not gens:
        raise ValueError("need at least one generator")
    gen_vecs = [_standard_gen(m, g) if isinstance(g, int) else vec(g) for g in gens]
    all_gens = list(gen_vecs)
    newest = gen_vecs
    for _ in range(n - 1):
        newest = [_reduce_mod_annihilators(m, m.matrix.apply(v)) for v in newest]
        all_gens.extend(newest)
    return torsion_submodule(m, all_gens)


def torsion_trajectory_steps(m: TorsionModule, gens: Sequence, horizon: int):
    """Yield the lattice realizations of T_1, ..., T_(horizon+1)."""
    gen_vecs = [_standard_gen(m, g) if isinstance(g, int) else vec(g) for g in gens]
    rel = list(_relation_lattice(m).columns)
    current = normalize_lattice(
        Lattice(m.k, rel + [_reduce_mod_annihilators(m, g) for g in gen_vecs])
    )
    yield current
    newest = gen_vecs
    for _ in range(horizon):
        newest = [_reduce_mod_annihilators(m, m.matrix.apply(v)) for v in newest]
        current = lattice_join(current, Lattice(m.k, newest))
        yield current


# --------------------------------------------------------------------------
# Bernoulli truncation: a concrete finite window of the shift
# --------------------------------------------------------------------------


def bernoulli_truncation(b: BernoulliModule, cells: int) -> Optional[TorsionModule]:
    """First `cells` copies of the cell with the (truncated) right shift.

    Trajectories of the first cell up to step `cells - 1` agree with the
    honest infinite shift, so the truncation is an exact window oracle.
    Returns None for the zero cell.
    """
    anns = b.cell_annihilators
    w = len(anns)
    if w == 0:
        return None
    k = w * cells
    all_anns = tuple(anns[i % w] for i in range(k))
    entries = [[ZERO] * k for _ in range(k)]
    from .field import ONE

    for c in range(cells - 1):
        for i in range(w):
            entries[(c + 1) * w + i][c * w + i] = ONE
    return TorsionModule(all_anns, MatrixQ(entries))


def bernoulli_first_cell_gens(b: BernoulliModule) -> list[int]:
    return list(range(len(b.cell_annihilators)))


# --------------------------------------------------------------------------
# Hyperkernel reduction
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class HyperkernelReduction:
    """Result of quotienting out the union of the kernels of all powers."""

    kernel_dim: int
    reduced: VectorSpaceModule
    chain_dims: tuple  # dim ker(phi), dim ker(phi^2), ... up to stabilization


def hyperkernel_reduce(m: VectorSpaceModule) -> HyperkernelReduction:
    """Quotient by the hyperkernel; the induced action is injective.

    The kernel chain ker(phi) <= ker(phi^2) <= ... is strictly increasing in
    dimension until it stabilizes, which happens within dim(M) steps.
    """
    n = m.dim
    a = m.matrix
    chain: list[int] = []
    power = a
    basis = kernel(power)
    chain.append(len(basis))
    while len(basis) not in (0, n):
        power = power * a
        nxt = kernel(power)
        if len(nxt) == len(basis):
            break
        basis = nxt
        chain.append(len(basis))
    d = len(basis)
    if d == 0:
        return HyperkernelReduction(0, m, tuple(chain))
    if d == n:
        reduced = VectorSpaceModule(0, MatrixQ([]))
        return HyperkernelReduction(n, reduced, tuple(chain))
    # complete the hyperkernel basis with standard vectors
    complement: list[int] = []
    cols = [list(b) for b in basis]
    current_rank = d
    for i in range(n):
        e = tuple(FieldElement.from_rational(1) if r == i else ZERO for r in range(n))
        trial = MatrixQ.from_columns([tuple(c) for c in cols] + [e], rows=n)
        if matrix_rank(trial) > current_rank:
            cols.append(list(e))
            complement.append(i)
            current_rank += 1
            if current_rank == n:
                break
    basis_matrix = MatrixQ.from_columns([tuple(c) for c in cols], rows=n)
    from .linalg import inverse

    binv = inverse(basis_matrix)
    reduced_cols = []
    for i in complement:
        e = tuple(FieldElement.from_rational(1) if r == i else ZERO for r in range(n))
        coords = binv.apply(a.apply(e))
        reduced_cols.append(tuple(coords[d:]))
    reduced = VectorSpaceModule(n - d, MatrixQ.from_columns(reduced_cols, rows=n - d))
    return HyperkernelReduction(d, reduced, tuple(chain))
