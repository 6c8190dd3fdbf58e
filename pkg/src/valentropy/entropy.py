"""Intrinsic valuation entropy: closed forms, trajectory oracles, theorem checks.

Two independent routes to the same number are kept deliberately separate:

* the closed form for linear actions on Q^n reads the entropy off the
  characteristic polynomial (the valuation of the minimal scalar making it
  integral: the intrinsic algebraic Yuzvinski formula), and

* the trajectory oracle measures the growth of partial trajectories
  T_k = K + phi K + ... + phi^(k-1) K through the successive quotient lengths
  d_k = L(T_(k+1)/T_k), whose infimum is the entropy.

Everything else here (anti-trajectories, the limit-free evaluation, the
Bernoulli closed form, cyclic trajectory analysis, the addition check) gives
further cross-checkable routes.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import (
    DimensionMismatch,
    NotBlockTriangular,
    NotInert,
    PreconditionFailed,
    SingularMap,
    ZeroVector,
)
from .field import FieldElement, ONE, ZERO, monomial
from .linalg import (
    Lattice,
    MatrixQ,
    PolynomialQ,
    Vector,
    char_poly,
    kernel,
    lattice_contains,
    lattice_join,
    matrix_rank,
    normalize_lattice,
    preimage_lattice,
    quotient_length,
    rank,
    smith_invariants,
    solve,
    vec,
    vec_is_zero,
)
from .modules import (
    BernoulliModule,
    DirectSumModule,
    FreeCyclicModule,
    HyperkernelReduction,
    TorsionModule,
    VectorSpaceModule,
    bernoulli_first_cell_gens,
    bernoulli_truncation,
    hyperkernel_reduce,
    is_inert,
    length,
    torsion_trajectory_steps,
    trajectory_steps,
)
from .rationals import INF, ExtRational, ext_sum, is_inf


def default_horizon(dim: int) -> int:
    """Oracle horizon for an ambient rank: 2*dim + 4 steps."""
    return 2 * dim + 4


def stabilization_window(dim: int) -> int:
    """Trailing constant run needed to declare stabilization: dim + 1."""
    return dim + 1


@dataclass(frozen=True)
class EntropyReport:
    """Computed entropy with its certificate.

    growth holds d_k = L(T_(k+1)/T_k) for k = 1..horizon; stabilized_at is the
    first index of the trailing constant run when that run is at least the
    stabilization window, else None (the last d_k is then only an upper
    estimate, the true value being the infimum of a non-increasing sequence).
    """

    value: ExtRational
    method: str
    growth: tuple = ()
    stabilized_at: Optional[int] = None
    horizon: int = 0
    rank: Optional[int] = None
    scale: Optional[FieldElement] = None
    primitive: Optional[PolynomialQ] = None
    kernel_dim: Optional[int] = None
    summands: tuple = ()

    def __post_init__(self):
        for earlier, later in zip(self.growth, self.growth[1:]):
            if later > earlier:
                raise AssertionError(
                    f"growth sequence must be non-increasing, got {self.growth}"
                )
        if self.stabilized_at is not None:
            tail = self.growth[self.stabilized_at - 1 :]
            if any(d != self.value for d in tail):
                raise AssertionError("stabilized certificate must be constant at the value")

    @property
    def certified(self) -> bool:
        return self.stabilized_at is not None


def _detect_stabilization(growth: Sequence[ExtRational], window: int):
    """(value, stabilized_at) from the trailing constant run, or (last, None)."""
    if not growth:
        return Fraction(0), None
    last = growth[-1]
    run = 0
    for d in reversed(growth):
        if d == last:
            run += 1
        else:
            break
    if run >= window:
        return last, len(growth) - run + 1
    return last, None


def _growth_from_steps(steps) -> list:
    growth = []
    prev = None
    for lat in steps:
        if prev is not None:
            growth.append(quotient_length(lat, prev))
        prev = lat
    return growth


# --------------------------------------------------------------------------
# Closed form for linear actions on Q^n
# --------------------------------------------------------------------------


def ent_iayf(m: VectorSpaceModule) -> EntropyReport:
    """Closed-form entropy of a linear action: valuation of the minimal s in R
    making s * charpoly integral (the scaled polynomial is then primitive)."""
    p = char_poly(m.matrix)
    s, primitive = p.primitive_scaling()
    value = s.valuation
    assert primitive.content_valuation() == 0
    return EntropyReport(
        value=value,
        method="iayf",
        rank=m.dim,
        scale=s,
        primitive=primitive,
    )


# --------------------------------------------------------------------------
# Trajectory oracle
# --------------------------------------------------------------------------


def trajectory_growth(m, start=None, horizon: int | None = None) -> EntropyReport:
    """Entropy via successive quotient lengths of partial trajectories.

    For vector-space modules `start` is an inert lattice (default: the
    distinguished one, or R^n).  For torsion modules `start` is a list of
    generators (default: all standard generators).  For Bernoulli modules the
    start is the first cell and the growth table is produced from an exact
    finite truncation of the shift.
    """
    if isinstance(m, VectorSpaceModule):
        start = m.starting_lattice() if start is None else start
        if horizon is None:
            horizon = default_horizon(m.dim)
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        if not is_inert(m, start):
            raise NotInert("starting lattice is not inert (rank grows in one step)")
        growth = _growth_from_steps(trajectory_steps(m, start, horizon))
        value, k0 = _detect_stabilization(growth, stabilization_window(m.dim))
        return EntropyReport(
            value=value,
            method="trajectory_oracle",
            growth=tuple(growth),
            stabilized_at=k0,
            horizon=horizon,
            rank=m.dim,
        )
    if isinstance(m, TorsionModule):
        gens = list(range(m.k)) if start is None else list(start)
        if horizon is None:
            horizon = default_horizon(0)
        if horizon < 1:
            raise ValueError("horizon must be >= 1")
        growth = _growth_from_steps(torsion_trajectory_steps(m, gens, horizon))
        value, k0 = _detect_stabilization(growth, stabilization_window(0))
        return EntropyReport(
            value=value,
            method="trajectory_oracle",
            growth=tuple(growth),
            stabilized_at=k0,
            horizon=horizon,
            rank=0,
        )
    if isinstance(m, BernoulliModule):
        if horizon is None:
            horizon = 8
        return bernoulli_entropy(m, horizon)
    raise TypeError(f"no trajectory oracle for {type(m).__name__}")


# --------------------------------------------------------------------------
# Anti-trajectories and the limit-free route
# --------------------------------------------------------------------------


def _require_injective(m: VectorSpaceModule):
    if m.dim and kernel(m.matrix):
        raise SingularMap(
            "action is not injective; apply hyperkernel reduction first"
        )


def anti_trajectory(m: VectorSpaceModule, start: Lattice, n: int) -> Lattice:
    """A_1 = K and A_(j+1) = K + phi^(-1) A_j, for injective actions and
    full-rank K (preimages of full-rank lattices stay full rank)."""
    if n < 1:
        raise ValueError("anti-trajectory index must be >= 1")
    _require_injective(m)
    if rank(start) != m.dim:
        raise PreconditionFailed("anti-trajectory requires a full-rank starting lattice")
    base = normalize_lattice(start)
    current = base
    for _ in range(n - 1):
        current = lattice_join(base, preimage_lattice(m.matrix, current))
    return current


def antitrajectory_length_check(m: VectorSpaceModule, start: Lattice, horizon: int):
    """Per-step equality of the trajectory and anti-trajectory quotients:
    L(T_(n+1)/T_n) against L(A_(n+1)/phi^(-1) A_n).

    Returns (all_equal, rows), each row (n, trajectory side, anti side).
    """
    _require_injective(m)
    if rank(start) != m.dim:
        raise PreconditionFailed("anti-trajectory requires a full-rank starting lattice")
    base = normalize_lattice(start)
    rows = []
    ok = True
    t_iter = trajectory_steps(m, base, horizon)
    t_prev = next(t_iter)
    a_prev = base
    for n in range(1, horizon + 1):
        t_next = next(t_iter)
        lhs = quotient_length(t_next, t_prev)
        pre = preimage_lattice(m.matrix, a_prev)
        a_next = lattice_join(base, pre)
        rhs = quotient_length(a_next, pre)
        rows.append((n, lhs, rhs))
        if lhs != rhs:
            ok = False
        t_prev, a_prev = t_next, a_next
    return ok, rows


def limit_free_value(m: VectorSpaceModule, n_lattice: Lattice) -> ExtRational:
    """L(N / phi^(-1) N) for an inert N with phi^(-1) N contained in N.

    For such N no limit is needed: each trajectory quotient of N is already
    isomorphic to N / phi^(-1) N.
    """
    _require_injective(m)
    if not is_inert(m, n_lattice):
        raise PreconditionFailed("limit-free evaluation requires an inert lattice")
    if rank(n_lattice) != m.dim:
        raise PreconditionFailed("limit-free evaluation requires a full-rank lattice")
    pre = preimage_lattice(m.matrix, n_lattice)
    if not lattice_contains(n_lattice, pre):
        raise PreconditionFailed(
            "limit-free evaluation requires phi^(-1) N contained in N"
        )
    return quotient_length(n_lattice, pre)


# --------------------------------------------------------------------------
# Bernoulli shift
# --------------------------------------------------------------------------


def bernoulli_entropy(b: BernoulliModule, horizon: int = 8) -> EntropyReport:
    """Closed form: the cell length; certified by an exact truncation oracle."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    value = b.cell_length()
    truncated = bernoulli_truncation(b, horizon + 2)
    if truncated is None:
        growth = [Fraction(0)] * horizon
    else:
        gens = bernoulli_first_cell_gens(b)
        growth = _growth_from_steps(torsion_trajectory_steps(truncated, gens, horizon))
    if any(d != value for d in growth):
        raise AssertionError(
            f"Bernoulli oracle disagrees with the cell length: {growth} vs {value}"
        )
    return EntropyReport(
        value=value,
        method="bernoulli_closed_form",
        growth=tuple(growth),
        stabilized_at=1,
        horizon=horizon,
        rank=0,
    )


# --------------------------------------------------------------------------
# Cyclic trajectories
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CyclicTrajectoryAnalysis:
    """Shape of the trajectory of a single vector.

    rank: rank n of the full trajectory (the first n images are free).
    relation: polynomial f over R, primitive, of degree n, with f(phi)x = 0.
    scale_valuation: valuation of f's leading coefficient s; successive
        trajectory quotients are R/(s) from step n on.
    quotient_invariants: the checked Smith invariant lists for those steps.
    diagnostic: classification of T(phi, x)/T_n(phi, x).
    """

    rank: int
    relation: PolynomialQ
    scale_valuation: Fraction
    quotient_invariants: tuple
    diagnostic: str


def cyclic_trajectory_analysis(
    m: VectorSpaceModule, x, extra_steps: int = 3
) -> CyclicTrajectoryAnalysis:
    """Analyze the trajectory of one vector under the action."""
    x = vec(x)
    if len(x) != m.dim:
        raise DimensionMismatch("vector length differs from the module dimension")
    if vec_is_zero(x):
        raise ZeroVector("cyclic trajectory of the zero vector")
    a = m.matrix
    powers = [x]
    while True:
        span = MatrixQ.from_columns(powers, rows=m.dim)
        nxt = a.apply(powers[-1])
        coeffs = solve(span, nxt)
        if coeffs is not None:
            break
        powers.append(nxt)
    n = len(powers)
    # monic relation X^n - sum q_i X^i, made primitive over R
    p = PolynomialQ([-c for c in coeffs] + [ONE])
    s, f = p.primitive_scaling()
    vs = s.valuation
    assert vec_is_zero(f.apply_to_vector(a, x))
    free_rank = matrix_rank(MatrixQ.from_columns(powers, rows=m.dim))
    assert free_rank == n
    # successive quotients from step n on are R/(s)
    checks = []
    traj = normalize_lattice(Lattice(m.dim, powers))
    newest = powers[-1]
    current = traj
    for k in range(n, n + extra_steps + 1):
        newest = a.apply(newest)
        bigger = lattice_join(current, Lattice(m.dim, [newest]))
        inv = smith_invariants(bigger, current)
        expected = [Fraction(0)] * (n - 1) + [Fraction(vs)]
        if inv != expected:
            raise AssertionError(
                f"trajectory quotient at step {k} has invariants {inv}, expected {expected}"
            )
        checks.append(tuple(inv))
        current = bigger
    if vs == 0:
        diagnostic = (
            f"leading coefficient is a unit: the full trajectory is free of rank {n} "
            "and equals its n-th partial trajectory"
        )
    else:
        diagnostic = (
            f"successive quotients are R/(t^{vs}); the full trajectory over its "
            "n-th partial trajectory is uniserial divisible (a copy of Q/R)"
        )
    return CyclicTrajectoryAnalysis(
        rank=n,
        relation=f,
        scale_valuation=Fraction(vs),
        quotient_invariants=tuple(checks),
        diagnostic=diagnostic,
    )


# --------------------------------------------------------------------------
# Entropy dispatch and the addition check
# --------------------------------------------------------------------------


def entropy(m, horizon: int | None = None) -> EntropyReport:
    """Entropy of any supported module object, with an oracle certificate.

    Vector spaces: hyperkernel reduction followed by the closed form, with the
    trajectory oracle run on the original action as the certificate.  Torsion
    modules: 0 (the whole module is a finite-length starting submodule).
    Bernoulli: the cell-length closed form.  Direct sums: sum of the summand
    entropies.  The symbolic free cyclic module has infinite rank, hence
    infinite entropy.
    """
    if isinstance(m, FreeCyclicModule):
        return EntropyReport(value=INF, method="infinite_rank", rank=None)
    if isinstance(m, VectorSpaceModule):
        if horizon is None:
            horizon = default_horizon(m.dim)
        red = hyperkernel_reduce(m)
        closed = ent_iayf(red.reduced)
        oracle = trajectory_growth(m, horizon=horizon) if m.dim else None
        return EntropyReport(
            value=closed.value,
            method="iayf",
            growth=oracle.growth if oracle else (),
            stabilized_at=oracle.stabilized_at if oracle else None,
            horizon=horizon if m.dim else 0,
            rank=m.dim,
            scale=closed.scale,
            primitive=closed.primitive,
            kernel_dim=red.kernel_dim,
        )
    if isinstance(m, TorsionModule):
        report = trajectory_growth(m, horizon=horizon)
        if report.value != 0:
            raise AssertionError(
                "finitely generated torsion module reported nonzero entropy"
            )
        return report
    if isinstance(m, BernoulliModule):
        return bernoulli_entropy(m, horizon if horizon is not None else 8)
    if isinstance(m, DirectSumModule):
        parts = [entropy(s, horizon=horizon) for s in m.summands]
        value = ext_sum(p.value for p in parts)
        growths = [p.growth for p in parts if p.growth]
        common = min((len(g) for g in growths), default=0)
        growth = tuple(
            ext_sum(g[k] for g in growths) for k in range(common)
        )
        if all(p.stabilized_at is not None for p in parts) and common:
            k0 = max(p.stabilized_at for p in parts)
            k0 = min(k0, common)
        else:
            k0 = None
        return EntropyReport(
            value=value,
            method="additivity",
            growth=growth,
            stabilized_at=k0,
            horizon=common,
            rank=None,
            summands=tuple(parts),
        )
    raise TypeError(f"no entropy dispatch for {type(m).__name__}")


@dataclass(frozen=True)
class AdditionCheck:
    """Three entropies around an invariant coordinate subspace."""

    full: EntropyReport
    restriction: EntropyReport
    quotient: EntropyReport

    @property
    def holds(self) -> bool:
        return self.full.value == self.restriction.value + self.quotient.value


def addition_check(m: VectorSpaceModule, split: int, horizon: int | None = None) -> AdditionCheck:
    """Additivity across an invariant subspace of the first `split` coordinates.

    The matrix must be block upper triangular at the split; the entropy of the
    whole action must equal the sum of the entropies of the diagonal blocks.
    """
    n = m.dim
    if not 0 < split < n:
        raise NotBlockTriangular(f"split {split} is not interior to dimension {n}")
    a = m.matrix
    for i in range(split, n):
        for j in range(split):
            if not a[i, j].is_zero:
                raise NotBlockTriangular(
                    f"entry ({i},{j}) below the split is nonzero"
                )
    top = VectorSpaceModule(split, a.block(0, split, 0, split))
    bottom = VectorSpaceModule(n - split, a.block(split, n, split, n))
    result = AdditionCheck(
        full=entropy(m, horizon=horizon),
        restriction=entropy(top, horizon=horizon),
        quotient=entropy(bottom, horizon=horizon),
    )
    if not result.holds:
        raise AssertionError(
            "additivity failed: "
            f"{result.full.value} != {result.restriction.value} + {result.quotient.value}"
        )
    return result
