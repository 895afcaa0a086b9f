"""Composites of automata with one clock per part.

A composite wave carries one clock index and one dof index per part.
Because the symmetric clock difference f(n+1) - f(n-1) violates the
product rule, a shared-clock composite of non-interacting parts picks
up spurious cross correlations; giving each part its own clock removes
them.  The per-axis equations verified here read, at every interior
lattice point and every multi-index,

    sum_k [Psi(.., n_k+1, ..) - Psi(.., n_k-1, ..)]
        = -i * ( sum_k H_k Psi + I Psi )

with H_k contracting only the k-th dof index and the interaction I
contracting all of them.  Products of single-part solutions solve this
exactly when I = 0, superpositions of solutions stay solutions, and an
antisymmetrized two-part product gives an exactly entangled state whose
fixed-clock slice is certified by a nonzero 2x2 minor.

No propagation scheme is offered for I != 0 on the many-clock lattice
(the per-point equations underdetermine a layer-by-layer fill); the
residual check accepts arbitrary supplied fields instead, and the
shared-clock evolution on the flattened product space covers the
interacting single-time case.

Multi-index flattening is row-major throughout: (a_1, ..., a_m) maps to
a_1*D_2*...*D_m + ... + a_m, and clock tuples flatten the same way.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .automaton import Trajectory, evolve
from .gaussian import GaussianInt, GIMatrix, GIVector, HermitianIntMatrix, ZERO

__all__ = [
    "MultiWave",
    "InteractionTensor",
    "FactorizedState",
    "ManyTimeResidual",
    "LeibnizRow",
    "LeibnizDemo",
    "FactorizabilityWitness",
    "product_wave",
    "many_time_residual",
    "evolve_factorized",
    "leibniz_failure_demo",
    "kron_sum",
    "total_hamiltonian",
    "evolve_synchronized",
    "bell_state",
    "factorizability_witness",
]


def flatten_index(index: Sequence[int], shape: Sequence[int]) -> int:
    flat = 0
    for i, d in zip(index, shape):
        if not 0 <= i < d:
            raise IndexError(f"index {tuple(index)} outside shape {tuple(shape)}")
        flat = flat * d + i
    return flat


class MultiWave:
    """Exact field over a product clock box and product dof indices."""

    __slots__ = ("dims", "clock_shape", "values")

    def __init__(self, dims: Sequence[int], clock_shape: Sequence[int],
                 values: Optional[list] = None):
        self.dims = tuple(int(d) for d in dims)
        self.clock_shape = tuple(int(c) for c in clock_shape)
        if len(self.dims) != len(self.clock_shape) or not self.dims:
            raise ValueError("need one dof dimension and one clock range per part")
        if any(d < 1 for d in self.dims) or any(c < 1 for c in self.clock_shape):
            raise ValueError("dimensions and clock ranges must be >= 1")
        size = self._size()
        if values is None:
            values = [ZERO] * size
        if len(values) != size:
            raise ValueError(f"expected {size} values, got {len(values)}")
        self.values = list(values)

    def _size(self) -> int:
        n = 1
        for c in self.clock_shape:
            n *= c
        for d in self.dims:
            n *= d
        return n

    @property
    def parts(self) -> int:
        return len(self.dims)

    def _flat(self, clocks: Sequence[int], alphas: Sequence[int]) -> int:
        return (flatten_index(clocks, self.clock_shape) * _prod(self.dims)
                + flatten_index(alphas, self.dims))

    def get(self, clocks: Sequence[int], alphas: Sequence[int]) -> GaussianInt:
        return self.values[self._flat(clocks, alphas)]

    def set(self, clocks: Sequence[int], alphas: Sequence[int], value: GaussianInt):
        self.values[self._flat(clocks, alphas)] = value

    def clock_points(self) -> Iterable[tuple]:
        return itertools.product(*(range(c) for c in self.clock_shape))

    def interior_clock_points(self) -> Iterable[tuple]:
        return itertools.product(*(range(1, c - 1) for c in self.clock_shape))

    def dof_indices(self) -> Iterable[tuple]:
        return itertools.product(*(range(d) for d in self.dims))

    def alpha_vector(self, clocks: Sequence[int]) -> GIVector:
        """All dof components at one clock point, flattened row-major."""
        base = flatten_index(clocks, self.clock_shape) * _prod(self.dims)
        return GIVector(self.values[base:base + _prod(self.dims)])

    def scale(self, a) -> "MultiWave":
        ga = a if isinstance(a, GaussianInt) else GaussianInt(a)
        return MultiWave(self.dims, self.clock_shape, [ga * v for v in self.values])

    def __add__(self, other):
        if not isinstance(other, MultiWave):
            return NotImplemented
        if self.dims != other.dims or self.clock_shape != other.clock_shape:
            raise ValueError("field shapes disagree")
        return MultiWave(self.dims, self.clock_shape,
                         [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        if not isinstance(other, MultiWave):
            return NotImplemented
        if self.dims != other.dims or self.clock_shape != other.clock_shape:
            raise ValueError("field shapes disagree")
        return MultiWave(self.dims, self.clock_shape,
                         [a - b for a, b in zip(self.values, other.values)])

    def __eq__(self, other):
        if not isinstance(other, MultiWave):
            return NotImplemented
        return (self.dims == other.dims and self.clock_shape == other.clock_shape
                and self.values == other.values)

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def bipartite_slice(self, clocks: Sequence[int]) -> tuple:
        """D_1 x D_2 coefficient matrix at fixed clocks (two parts only)."""
        if self.parts != 2:
            raise ValueError("slice extraction is for two-part fields")
        d1, d2 = self.dims
        return tuple(tuple(self.get(clocks, (a, b)) for b in range(d2))
                     for a in range(d1))

    def __repr__(self):
        return f"MultiWave(dims={self.dims}, clock_shape={self.clock_shape})"

    def to_json_obj(self) -> dict:
        return {
            "parts": self.parts,
            "dims": list(self.dims),
            "clock_box": [[0, c - 1] for c in self.clock_shape],
            "values": [
                [list(clocks), list(alphas), self.get(clocks, alphas).to_pair()]
                for clocks in self.clock_points()
                for alphas in self.dof_indices()
            ],
        }

    @classmethod
    def from_json_obj(cls, obj) -> "MultiWave":
        if not isinstance(obj, dict):
            raise ValueError("bad field JSON object")
        for key in ("dims", "clock_box", "values"):
            if key not in obj:
                raise ValueError(f"field JSON is missing {key!r}")
        dims = obj["dims"]
        clock_shape = [hi - lo + 1 for lo, hi in obj["clock_box"]]
        wave = cls(dims, clock_shape)
        for rec in obj["values"]:
            if not isinstance(rec, (list, tuple)) or len(rec) != 3:
                raise ValueError(f"bad field record {rec!r}")
            clocks, alphas, pair = rec
            wave.set(clocks, alphas, GaussianInt.from_pair(pair, "field value"))
        return wave


def _prod(xs: Sequence[int]) -> int:
    n = 1
    for x in xs:
        n *= x
    return n


class InteractionTensor:
    """Self-adjoint coupling of all parts, stored on the product space.

    Entry access uses per-part multi-indices; storage is the flattened
    self-adjoint matrix (row-major flattening as documented above).
    """

    __slots__ = ("dims", "matrix")

    def __init__(self, dims: Sequence[int], matrix: GIMatrix):
        self.dims = tuple(int(d) for d in dims)
        if matrix.dim != _prod(self.dims):
            raise ValueError("matrix size does not match the product of dims")
        if not matrix.is_hermitian():
            raise ValueError("interaction must be self-adjoint")
        self.matrix = matrix

    @classmethod
    def zero(cls, dims: Sequence[int]) -> "InteractionTensor":
        return cls(dims, GIMatrix.zeros(_prod(dims)))

    @classmethod
    def from_entries(cls, dims: Sequence[int], entries: dict) -> "InteractionTensor":
        """Build from {(alphas, betas): GaussianInt}; unspecified entries are 0."""
        size = _prod(dims)
        rows = [[ZERO] * size for _ in range(size)]
        for (alphas, betas), v in entries.items():
            rows[flatten_index(alphas, dims)][flatten_index(betas, dims)] = v
        return cls(dims, GIMatrix(rows))

    def entry(self, alphas: Sequence[int], betas: Sequence[int]) -> GaussianInt:
        return self.matrix.entry(flatten_index(alphas, self.dims),
                                 flatten_index(betas, self.dims))

    def is_zero(self) -> bool:
        return self.matrix.is_zero()


@dataclass(frozen=True)
class FactorizedState:
    """Independent single-part histories, one per clock axis."""

    factors: tuple

    def __post_init__(self):
        if not self.factors:
            raise ValueError("need at least one factor")
        for f in self.factors:
            if not isinstance(f, Trajectory):
                raise ValueError("factors must be trajectories")


def product_wave(factors: Sequence[Trajectory]) -> MultiWave:
    """Outer product of single-part histories over the full clock box."""
    factors = list(factors)
    dims = [f.dim for f in factors]
    clock_shape = [len(f) for f in factors]
    wave = MultiWave(dims, clock_shape)
    for clocks in wave.clock_points():
        for alphas in wave.dof_indices():
            v = GaussianInt(1)
            for f, n, a in zip(factors, clocks, alphas):
                v = v * f[n][a]
            wave.set(clocks, alphas, v)
    return wave


@dataclass(frozen=True)
class ManyTimeResidual:
    """Exact equation residuals at every interior lattice point."""

    field: MultiWave          # indexed by interior clocks shifted down by 1
    clock_offset: tuple

    @property
    def is_zero(self) -> bool:
        return self.field.is_zero()

    def value(self, clocks: Sequence[int], alphas: Sequence[int]) -> GaussianInt:
        shifted = tuple(n - o for n, o in zip(clocks, self.clock_offset))
        return self.field.get(shifted, alphas)

    def nonzero(self) -> list:
        out = []
        for clocks in self.field.clock_points():
            for alphas in self.field.dof_indices():
                v = self.field.get(clocks, alphas)
                if v:
                    absolute = tuple(n + o for n, o in
                                     zip(clocks, self.clock_offset))
                    out.append((absolute, alphas, v))
        return out

    def to_csv(self) -> str:
        m = self.field.parts
        header = ([f"n{k + 1}" for k in range(m)]
                  + [f"alpha{k + 1}" for k in range(m)] + ["re", "im"])
        lines = [",".join(header)]
        for clocks in self.field.clock_points():
            absolute = tuple(n + o for n, o in zip(clocks, self.clock_offset))
            for alphas in self.field.dof_indices():
                v = self.field.get(clocks, alphas)
                cells = list(absolute) + list(alphas) + [v.re, v.im]
                lines.append(",".join(str(c) for c in cells))
        return "\n".join(lines) + "\n"


def many_time_residual(psi: MultiWave, hams: Sequence[HermitianIntMatrix],
                       interaction: Optional[InteractionTensor] = None
                       ) -> ManyTimeResidual:
    """Exact residual of the per-axis equations at interior lattice points.

    Zero everywhere iff the supplied field solves the equations there.
    """
    m = psi.parts
    if len(hams) != m:
        raise ValueError(f"need {m} coupling matrices, got {len(hams)}")
    for k, h in enumerate(hams):
        if h.dim != psi.dims[k]:
            raise ValueError(f"part {k}: matrix dim {h.dim} != dof dim {psi.dims[k]}")
    if interaction is not None and interaction.dims != psi.dims:
        raise ValueError("interaction dims do not match the field")
    if any(c < 3 for c in psi.clock_shape):
        raise ValueError("every clock axis needs at least one interior site")
    interior_shape = tuple(c - 2 for c in psi.clock_shape)
    out = MultiWave(psi.dims, interior_shape)
    for clocks in psi.interior_clock_points():
        ivec = None
        if interaction is not None:
            ivec = interaction.matrix.apply(psi.alpha_vector(clocks))
        for alphas in psi.dof_indices():
            lhs = GaussianInt(0)
            rhs = GaussianInt(0)
            for k in range(m):
                up = list(clocks)
                up[k] += 1
                down = list(clocks)
                down[k] -= 1
                lhs = lhs + psi.get(up, alphas) - psi.get(down, alphas)
                row = hams[k].matrix.rows[alphas[k]]
                contracted = list(alphas)
                for beta in range(psi.dims[k]):
                    contracted[k] = beta
                    rhs = rhs + row[beta] * psi.get(clocks, contracted)
            if ivec is not None:
                rhs = rhs + ivec[flatten_index(alphas, psi.dims)]
            res = lhs + rhs.mul_i()
            if res:
                out.set(tuple(n - 1 for n in clocks), alphas, res)
    return ManyTimeResidual(field=out, clock_offset=(1,) * m)


def evolve_factorized(hams: Sequence[HermitianIntMatrix],
                      seed_pairs: Sequence, steps: Sequence[int]):
    """Evolve each part on its own clock and assemble the product field.

    Non-interacting by construction; the assembled field is certified to
    have zero residual before being returned.
    """
    if not (len(hams) == len(seed_pairs) == len(steps)):
        raise ValueError("need one coupling, seed pair and step count per part")
    factors = []
    for h, (s0, s1), n in zip(hams, seed_pairs, steps):
        factors.append(evolve(s0, s1, h, n))
    wave = product_wave(factors)
    res = many_time_residual(wave, list(hams), None)
    if not res.is_zero:
        raise AssertionError("product of solutions has nonzero residual; "
                             "this indicates a bug, not bad input")
    return FactorizedState(factors=tuple(factors)), wave


# -- product-rule failure of the symmetric difference -------------------


@dataclass(frozen=True)
class LeibnizRow:
    n: int
    product_rate: int          # [A B]dot at n
    split_form: Fraction       # Adot*(B_+ + B_-)/2 + (A_+ + A_-)/2*Bdot
    naive: int                 # Adot*B + A*Bdot
    naive_matches: bool


@dataclass(frozen=True)
class LeibnizDemo:
    rows: tuple
    identity_ok: bool
    failure_sites: tuple


def leibniz_failure_demo(a_seq: Sequence[int], b_seq: Sequence[int]) -> LeibnizDemo:
    """Compare the symmetric difference of a product with the product rule.

    At each interior n the exact identity

        [A B]dot = Adot*(B_{n+1}+B_{n-1})/2 + (A_{n+1}+A_{n-1})/2*Bdot

    holds, while the naive rule Adot*B + A*Bdot generally does not; the
    returned rows exhibit both.  The halves are evaluated as exact
    rationals so the identity check is literal.
    """
    if len(a_seq) != len(b_seq) or len(a_seq) < 3:
        raise ValueError("need two equal-length sequences with >= 3 entries")
    rows = []
    failures = []
    for n in range(1, len(a_seq) - 1):
        am, a0, ap = a_seq[n - 1], a_seq[n], a_seq[n + 1]
        bm, b0, bp = b_seq[n - 1], b_seq[n], b_seq[n + 1]
        rate = ap * bp - am * bm
        split = (Fraction((ap - am) * (bp + bm), 2)
                 + Fraction((ap + am) * (bp - bm), 2))
        naive = (ap - am) * b0 + a0 * (bp - bm)
        rows.append(LeibnizRow(n=n, product_rate=rate, split_form=split,
                               naive=naive, naive_matches=naive == rate))
        if naive != rate:
            failures.append(n)
    identity_ok = all(r.split_form == r.product_rate for r in rows)
    return LeibnizDemo(rows=tuple(rows), identity_ok=identity_ok,
                       failure_sites=tuple(failures))


# -- shared-clock composite on the flattened product space --------------


def kron_sum(hams: Sequence[HermitianIntMatrix]) -> GIMatrix:
    """sum_k 1 x ... x H_k x ... x 1 on the flattened product space."""
    if not hams:
        raise ValueError("need at least one part")
    dims = [h.dim for h in hams]
    total = GIMatrix.zeros(_prod(dims))
    for k, h in enumerate(hams):
        term = GIMatrix.identity(1)
        for j, d in enumerate(dims):
            factor = h.matrix if j == k else GIMatrix.identity(d)
            term = term.kron(factor)
        total = total + term
    return total


def total_hamiltonian(hams: Sequence[HermitianIntMatrix],
                      interaction: Optional[InteractionTensor] = None
                      ) -> HermitianIntMatrix:
    total = kron_sum(hams)
    if interaction is not None:
        if interaction.dims != tuple(h.dim for h in hams):
            raise ValueError("interaction dims do not match the parts")
        total = total + interaction.matrix
    return HermitianIntMatrix(total)


def evolve_synchronized(seed_prev: GIVector, seed_curr: GIVector,
                        hams: Sequence[HermitianIntMatrix],
                        interaction: Optional[InteractionTensor],
                        steps: int) -> Trajectory:
    """Single shared clock on the flattened product space.

    This is the interacting single-time model; for non-interacting parts
    it deviates from the product of independent evolutions (the product
    rule failure above), which the suite exhibits as exact inequality.
    """
    h_tot = total_hamiltonian(hams, interaction)
    if seed_prev.dim != h_tot.dim or seed_curr.dim != h_tot.dim:
        raise ValueError("seed slices do not match the product-space dimension")
    return evolve(seed_prev, seed_curr, h_tot, steps)


# -- antisymmetric two-part state and the factorizability test ----------


def bell_state(psi_traj: Trajectory, phi_traj: Trajectory) -> MultiWave:
    """Antisymmetrized two-part product psi x phi - phi x psi.

    Both parts must have two dofs.  When both histories solve the
    single-part equations of a common coupling matrix, each product term
    is a solution of the two-clock equations and so is the difference;
    the fixed-clock slices are exactly non-factorizable whenever the two
    histories are not proportional.

    The swapped term assigns each history to the other part's clock, so
    the field lives on the common clock box: histories of unequal length
    are truncated to the shorter one.
    """
    if psi_traj.dim != 2 or phi_traj.dim != 2:
        raise ValueError("antisymmetric pair state needs two dofs per part")
    length = min(len(psi_traj), len(phi_traj))
    wave = MultiWave((2, 2), (length, length))
    for n1 in range(length):
        for n2 in range(length):
            for a in range(2):
                for b in range(2):
                    v = (psi_traj[n1][a] * phi_traj[n2][b]
                         - phi_traj[n1][a] * psi_traj[n2][b])
                    wave.set((n1, n2), (a, b), v)
    return wave


@dataclass(frozen=True)
class FactorizabilityWitness:
    """Outcome of the exact rank test on a bipartite coefficient slice.

    Entangled slices carry a nonzero 2x2 minor; factorizable ones carry
    a rank-one factorization over the fraction field (Gaussian
    rationals: pairs of Fractions).  Rank one over the fraction field is
    the implemented criterion; a Gaussian-integer factorization may
    still fail to exist for content reasons.
    """

    entangled: bool
    minor_rows: Optional[tuple] = None
    minor_cols: Optional[tuple] = None
    minor_value: Optional[GaussianInt] = None
    factor_left: Optional[tuple] = None   # pairs (Fraction re, Fraction im)
    factor_right: Optional[tuple] = None  # GaussianInt row

    def verify(self, rows: Sequence[Sequence[GaussianInt]]) -> bool:
        """Re-check the certificate against the slice it was issued for."""
        if self.entangled:
            (i, k), (j, l) = self.minor_rows, self.minor_cols
            minor = rows[i][j] * rows[k][l] - rows[i][l] * rows[k][j]
            return bool(minor) and minor == self.minor_value
        for i, (ure, uim) in enumerate(self.factor_left):
            for j, v in enumerate(self.factor_right):
                # (ure + i*uim) * v over exact rationals
                pre = ure * v.re - uim * v.im
                pim = ure * v.im + uim * v.re
                if pre != rows[i][j].re or pim != rows[i][j].im:
                    return False
        return True


def factorizability_witness(rows: Sequence[Sequence[GaussianInt]]
                            ) -> FactorizabilityWitness:
    """Exact entanglement test of a bipartite slice via 2x2 minors.

    All minors zero means rank <= 1, hence factorizable over the
    fraction field; any nonzero minor certifies entanglement.
    """
    rows = [list(r) for r in rows]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("slice must be a nonempty rectangular matrix")
    n_r, n_c = len(rows), len(rows[0])
    for i in range(n_r):
        for k in range(i + 1, n_r):
            for j in range(n_c):
                for l in range(j + 1, n_c):
                    minor = rows[i][j] * rows[k][l] - rows[i][l] * rows[k][j]
                    if minor:
                        return FactorizabilityWitness(
                            entangled=True, minor_rows=(i, k),
                            minor_cols=(j, l), minor_value=minor)
    pivot = None
    for i in range(n_r):
        for j in range(n_c):
            if rows[i][j]:
                pivot = (i, j)
                break
        if pivot:
            break
    if pivot is None:
        left = tuple((Fraction(0), Fraction(0)) for _ in range(n_r))
        right = tuple(GaussianInt(0) for _ in range(n_c))
        return FactorizabilityWitness(entangled=False, factor_left=left,
                                      factor_right=right)
    i0, j0 = pivot
    denom = rows[i0][j0]
    norm = denom.norm2()
    left = []
    for i in range(n_r):
        z = rows[i][j0]
        # z / denom over the fraction field
        left.append((Fraction(z.re * denom.re + z.im * denom.im, norm),
                     Fraction(z.im * denom.re - z.re * denom.im, norm)))
    right = tuple(rows[i0])
    return FactorizabilityWitness(entangled=False, factor_left=tuple(left),
                                  factor_right=right)
