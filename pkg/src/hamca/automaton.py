"""Two-step dynamics of a single integer-valued automaton.

The state is a Gaussian-integer vector psi_n advanced by the reversible
recurrence

    psi_{n+1} = psi_{n-1} - i*H*psi_n

for a self-adjoint integer matrix H.  The same dynamics follows from
requiring the lattice action

    S = sum_n [ Im(psi_n^* . (psi_{n+1} - psi_{n-1})) + psi_n^* H psi_n ]

to be stationary under arbitrary integer shifts of any single real
component, with psi and its starred partner varied independently.  This
module provides the recurrence (complex and split real/imaginary form),
the action, the symmetric-difference variation operator, and the
stationarity audit.

Boundary convention: `action_evaluate` sums over interior clock sites
only (end slices are fixed data).  The stationarity audit differences
the action with all terms that couple to the varied site included;
out-of-range neighbor slices contribute zero.  With that bookkeeping a
variation vanishes at an interior site exactly when the recurrence
holds there.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

from .gaussian import (
    GaussianInt,
    GIVector,
    GIMatrix,
    HermitianIntMatrix,
    ZERO,
    int_matrix_apply,
    int_matrix_is_antisymmetric,
    int_matrix_is_symmetric,
)

__all__ = [
    "Trajectory",
    "PhaseTrajectory",
    "ActionValue",
    "VariationSpec",
    "StationarityViolation",
    "StationarityReport",
    "VARIATION_PARTS",
    "step_forward",
    "step_backward",
    "evolve",
    "evolve_phase_space",
    "recurrence_residual",
    "first_recurrence_violation",
    "is_solution",
    "action_evaluate",
    "discrete_variation",
    "varied_action_doubled",
    "stationarity_variation",
    "verify_stationarity",
]


class Trajectory:
    """Clock-indexed sequence of exact state vectors psi_0 ... psi_N."""

    __slots__ = ("states",)

    def __init__(self, states: Iterable[GIVector]):
        sts = tuple(states)
        if len(sts) < 2:
            raise ValueError("trajectory needs at least two slices")
        d = sts[0].dim
        if any(s.dim != d for s in sts):
            raise ValueError("all slices must share one dimension")
        self.states = sts

    @property
    def dim(self) -> int:
        return self.states[0].dim

    @property
    def last(self) -> int:
        """Largest clock index N."""
        return len(self.states) - 1

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, n):
        return self.states[n]

    def __eq__(self, other):
        if not isinstance(other, Trajectory):
            return NotImplemented
        return self.states == other.states

    def __repr__(self):
        return f"Trajectory(dim={self.dim}, slices={len(self.states)})"

    def replace(self, n: int, state: GIVector) -> "Trajectory":
        """Copy with slice n replaced (used to study corrupted histories)."""
        if state.dim != self.dim:
            raise ValueError("replacement slice has wrong dimension")
        sts = list(self.states)
        sts[n] = state
        return Trajectory(sts)

    # -- serialization ------------------------------------------------

    def to_csv(self) -> str:
        lines = ["n,alpha,re,im"]
        for n, state in enumerate(self.states):
            for a, z in enumerate(state):
                lines.append(f"{n},{a},{z.re},{z.im}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv(cls, text: str) -> "Trajectory":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].split(",") != ["n", "alpha", "re", "im"]:
            raise ValueError("bad trajectory CSV header")
        cells = {}
        for ln in lines[1:]:
            parts = ln.split(",")
            if len(parts) != 4:
                raise ValueError(f"bad trajectory CSV row: {ln!r}")
            n, a, re, im = (int(p) for p in parts)
            cells[(n, a)] = GaussianInt(re, im)
        if not cells:
            raise ValueError("empty trajectory CSV")
        n_max = max(k[0] for k in cells)
        dim = max(k[1] for k in cells) + 1
        states = []
        for n in range(n_max + 1):
            try:
                states.append(GIVector(cells[(n, a)] for a in range(dim)))
            except KeyError as exc:
                raise ValueError(f"trajectory CSV is missing cell {exc}") from exc
        return cls(states)

    def to_json_obj(self) -> dict:
        return {"dim": self.dim, "states": [s.to_pairs() for s in self.states]}

    @classmethod
    def from_json_obj(cls, obj) -> "Trajectory":
        if not isinstance(obj, dict) or "states" not in obj:
            raise ValueError("bad trajectory JSON object")
        states = [GIVector.from_pairs(s, f"states[{i}]")
                  for i, s in enumerate(obj["states"])]
        traj = cls(states)
        if "dim" in obj and obj["dim"] != traj.dim:
            raise ValueError("trajectory JSON dim field disagrees with states")
        return traj


class PhaseTrajectory:
    """Real/imaginary split of a trajectory: psi_n = x_n + i*p_n."""

    __slots__ = ("xs", "ps")

    def __init__(self, xs: Iterable[Sequence[int]], ps: Iterable[Sequence[int]]):
        self.xs = tuple(tuple(x) for x in xs)
        self.ps = tuple(tuple(p) for p in ps)
        if len(self.xs) != len(self.ps) or len(self.xs) < 2:
            raise ValueError("phase trajectory needs matching x and p histories")
        d = len(self.xs[0])
        if any(len(x) != d for x in self.xs) or any(len(p) != d for p in self.ps):
            raise ValueError("all phase slices must share one dimension")

    @property
    def dim(self) -> int:
        return len(self.xs[0])

    def __len__(self):
        return len(self.xs)

    def to_trajectory(self) -> Trajectory:
        return Trajectory(
            GIVector(GaussianInt(x, p) for x, p in zip(xs, ps))
            for xs, ps in zip(self.xs, self.ps)
        )

    @classmethod
    def from_trajectory(cls, traj: Trajectory) -> "PhaseTrajectory":
        return cls(
            (tuple(z.re for z in s) for s in traj),
            (tuple(z.im for z in s) for s in traj),
        )


# -- evolution ---------------------------------------------------------


def _check_step_dims(a: GIVector, b: GIVector, h: HermitianIntMatrix):
    if a.dim != b.dim or a.dim != h.dim:
        raise ValueError(
            f"dimension mismatch: states {a.dim}/{b.dim}, matrix {h.dim}")


def step_forward(psi_prev: GIVector, psi_curr: GIVector,
                 h: HermitianIntMatrix) -> GIVector:
    """One exact forward step: psi_next = psi_prev - i*H*psi_curr."""
    _check_step_dims(psi_prev, psi_curr, h)
    w = h.apply(psi_curr)
    return GIVector(GaussianInt(p.re + a.im, p.im - a.re)
                    for p, a in zip(psi_prev, w))


def step_backward(psi_next: GIVector, psi_curr: GIVector,
                  h: HermitianIntMatrix) -> GIVector:
    """Exact inverse step: psi_prev = psi_next + i*H*psi_curr."""
    _check_step_dims(psi_next, psi_curr, h)
    w = h.apply(psi_curr)
    return GIVector(GaussianInt(p.re - a.im, p.im + a.re)
                    for p, a in zip(psi_next, w))


def evolve(seed0: GIVector, seed1: GIVector, h: HermitianIntMatrix,
           steps: int) -> Trajectory:
    """Iterate the forward step; returns a trajectory of steps+2 slices."""
    _check_step_dims(seed0, seed1, h)
    if steps < 0:
        raise ValueError("steps must be >= 0")
    rows = [[(z.re, z.im) for z in row] for row in h.matrix.rows]
    prev = [(z.re, z.im) for z in seed0]
    curr = [(z.re, z.im) for z in seed1]
    out = [prev, curr]
    for _ in range(steps):
        nxt = []
        for i, row in enumerate(rows):
            are = 0
            aim = 0
            for (hre, him), (xre, xim) in zip(row, curr):
                are += hre * xre - him * xim
                aim += hre * xim + him * xre
            pre, pim = prev[i]
            nxt.append((pre + aim, pim - are))
        prev, curr = curr, nxt
        out.append(nxt)
    return Trajectory(GIVector(GaussianInt(re, im) for re, im in s) for s in out)


def evolve_phase_space(x0: Sequence[int], p0: Sequence[int],
                       x1: Sequence[int], p1: Sequence[int],
                       hs: Sequence[Sequence[int]],
                       ha: Sequence[Sequence[int]],
                       steps: int) -> PhaseTrajectory:
    """Evolve the split form:

        x_{n+1} = x_{n-1} + hS p_n + hA x_n
        p_{n+1} = p_{n-1} - hS x_n + hA p_n

    Equals the real/imaginary split of `evolve` with H = hS + i*hA.
    """
    if not int_matrix_is_symmetric(hs):
        raise ValueError("hS must be symmetric")
    if not int_matrix_is_antisymmetric(ha):
        raise ValueError("hA must be antisymmetric")
    d = len(hs)
    for name, v in (("x0", x0), ("p0", p0), ("x1", x1), ("p1", p1)):
        if len(v) != d or len(ha) != d:
            raise ValueError(f"dimension mismatch for {name}")
    if steps < 0:
        raise ValueError("steps must be >= 0")
    xs = [tuple(x0), tuple(x1)]
    ps = [tuple(p0), tuple(p1)]
    for _ in range(steps):
        xp, pp = xs[-2], ps[-2]
        xc, pc = xs[-1], ps[-1]
        sx = int_matrix_apply(hs, xc)
        sp = int_matrix_apply(hs, pc)
        ax = int_matrix_apply(ha, xc)
        ap = int_matrix_apply(ha, pc)
        xs.append(tuple(xp[i] + sp[i] + ax[i] for i in range(d)))
        ps.append(tuple(pp[i] - sx[i] + ap[i] for i in range(d)))
    return PhaseTrajectory(xs, ps)


# -- recurrence residuals ----------------------------------------------


def recurrence_residual(traj: Trajectory, h: HermitianIntMatrix, n: int) -> GIVector:
    """psi_{n+1} - psi_{n-1} + i*H*psi_n; zero iff the rule holds at n."""
    if not 1 <= n <= traj.last - 1:
        raise ValueError(f"site {n} is not interior")
    if traj.dim != h.dim:
        raise ValueError("dimension mismatch")
    w = h.apply(traj[n])
    return GIVector(
        GaussianInt(a.re - b.re - c.im, a.im - b.im + c.re)
        for a, b, c in zip(traj[n + 1], traj[n - 1], w)
    )


def first_recurrence_violation(traj: Trajectory, h: HermitianIntMatrix) -> Optional[int]:
    for n in range(1, traj.last):
        if not recurrence_residual(traj, h, n).is_zero():
            return n
    return None


def is_solution(traj: Trajectory, h: HermitianIntMatrix) -> bool:
    return first_recurrence_violation(traj, h) is None


# -- action ------------------------------------------------------------


@dataclass(frozen=True)
class ActionValue:
    """Exact action value; real for self-adjoint couplings."""

    value: GaussianInt

    def __post_init__(self):
        if self.value.im != 0:
            raise ValueError(f"action came out non-real: {self.value}")

    @property
    def as_int(self) -> int:
        return self.value.re


def action_evaluate(traj: Trajectory, h: HermitianIntMatrix) -> ActionValue:
    """Exact action over interior sites; zero on every solution.

    Per interior site the summand is Im(psi_n^* . (psi_{n+1}-psi_{n-1}))
    plus the real bilinear psi_n^* H psi_n.
    """
    if len(traj) < 3:
        raise ValueError("action needs at least three slices")
    if traj.dim != h.dim:
        raise ValueError("dimension mismatch")
    total = GaussianInt(0, 0)
    for n in range(1, traj.last):
        psi = traj[n]
        dot = traj[n + 1] - traj[n - 1]
        kin = psi.inner(dot).im
        pot = psi.inner(h.apply(psi))
        total = total + pot + kin
    return ActionValue(total)


# -- variation operator ------------------------------------------------


def discrete_variation(g: Callable[[int], object], at: int, delta: int):
    """Symmetric difference quotient [g(at+delta) - g(at-delta)] / (2*delta).

    Exact: raises if 2*delta does not divide the difference (it always
    does for polynomials of degree <= 2 in the varied variable).  By
    convention the variation for delta == 0 is 0, reported without
    attempting the division.
    """
    if delta == 0:
        return 0
    num = g(at + delta) - g(at - delta)
    if isinstance(num, GaussianInt):
        return num.divide_exact(2 * delta)
    q, r = divmod(num, 2 * delta)
    if r:
        raise ValueError(f"difference {num} is not divisible by {2 * delta}")
    return q


VARIATION_PARTS = ("psi_re", "psi_im", "star_re", "star_im")


@dataclass(frozen=True)
class VariationSpec:
    """One elementary variation: which site, dof, real component, and shift."""

    site: int
    dof: int
    part: str
    delta: int

    def __post_init__(self):
        if self.part not in VARIATION_PARTS:
            raise ValueError(f"unknown variation part {self.part!r}")
        if self.delta == 0:
            raise ValueError("variation needs a nonzero integer delta")


def _doubled_action(psis, stars, h: HermitianIntMatrix) -> GaussianInt:
    """Twice the action over independent psi / star families, all sites.

    Families are lists of (re, im) pair lists.  Neighbor slices beyond
    either end contribute zero.  Doubling keeps every intermediate value
    a Gaussian integer even off the star == conj(psi) slice.
    """
    d = len(psis[0])
    zero = [(0, 0)] * d
    last = len(psis) - 1
    rows = [[(z.re, z.im) for z in row] for row in h.matrix.rows]
    tot_re = 0
    tot_im = 0
    for n in range(last + 1):
        sp = stars[n]
        pp = psis[n]
        p_next = psis[n + 1] if n + 1 <= last else zero
        p_prev = psis[n - 1] if n - 1 >= 0 else zero
        s_next = stars[n + 1] if n + 1 <= last else zero
        s_prev = stars[n - 1] if n - 1 >= 0 else zero
        # w = star_n . (psi_{n+1} - psi_{n-1}) - (star_{n+1} - star_{n-1}) . psi_n
        wre = 0
        wim = 0
        for a in range(d):
            sre, sim = sp[a]
            dre = p_next[a][0] - p_prev[a][0]
            dim_ = p_next[a][1] - p_prev[a][1]
            wre += sre * dre - sim * dim_
            wim += sre * dim_ + sim * dre
            tre = s_next[a][0] - s_prev[a][0]
            tim = s_next[a][1] - s_prev[a][1]
            pre, pim = pp[a]
            wre -= tre * pre - tim * pim
            wim -= tre * pim + tim * pre
        # kinetic contribution: -i * w
        tot_re += wim
        tot_im -= wre
        # potential contribution: 2 * star_n . H . psi_n
        for a, row in enumerate(rows):
            are = 0
            aim = 0
            for (hre, him), (xre, xim) in zip(row, pp):
                are += hre * xre - him * xim
                aim += hre * xim + him * xre
            sre, sim = sp[a]
            tot_re += 2 * (sre * are - sim * aim)
            tot_im += 2 * (sre * aim + sim * are)
    return GaussianInt(tot_re, tot_im)


def _families(traj: Trajectory):
    psis = [[(z.re, z.im) for z in s] for s in traj]
    stars = [[(z.re, -z.im) for z in s] for s in traj]
    return psis, stars


def _apply_variation(psis, stars, spec: VariationSpec, value: int):
    """Families with the designated real component replaced by `value`."""
    psis = [list(s) for s in psis]
    stars = [list(s) for s in stars]
    family = psis if spec.part.startswith("psi") else stars
    re, im = family[spec.site][spec.dof]
    if spec.part.endswith("_re"):
        family[spec.site][spec.dof] = (value, im)
    else:
        family[spec.site][spec.dof] = (re, value)
    return psis, stars


def varied_action_doubled(traj: Trajectory, h: HermitianIntMatrix,
                          spec: VariationSpec) -> Callable[[int], GaussianInt]:
    """Twice the action as an exact function of one real component.

    The returned callable feeds `discrete_variation`; halve its output
    to get the variation of the action itself.
    """
    if not 1 <= spec.site <= traj.last - 1:
        raise ValueError(f"variation site {spec.site} is not interior")
    if not 0 <= spec.dof < traj.dim:
        raise ValueError(f"dof {spec.dof} out of range")
    base_psis, base_stars = _families(traj)

    def g(f: int) -> GaussianInt:
        psis, stars = _apply_variation(base_psis, base_stars, spec, f)
        return _doubled_action(psis, stars, h)

    return g


def stationarity_variation(traj: Trajectory, h: HermitianIntMatrix,
                           spec: VariationSpec) -> GaussianInt:
    """Exact variation of the action for one elementary variation.

    Composes `discrete_variation` with the doubled-action closure and
    halves the result (exactly).  Zero for every elementary variation at
    a site iff the recurrence and its starred partner hold there.
    """
    g = varied_action_doubled(traj, h, spec)
    family = traj[spec.site][spec.dof]
    if spec.part == "psi_re":
        f0 = family.re
    elif spec.part == "psi_im":
        f0 = family.im
    elif spec.part == "star_re":
        f0 = family.re
    else:
        f0 = -family.im
    doubled = discrete_variation(g, f0, spec.delta)
    return doubled.divide_exact(2)


@dataclass(frozen=True)
class StationarityViolation:
    site: int
    dof: int
    part: str
    delta: int
    value: GaussianInt


@dataclass(frozen=True)
class StationarityReport:
    dim: int
    sites_checked: int
    deltas: tuple
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def violating_sites(self) -> tuple:
        return tuple(sorted({v.site for v in self.violations}))

    def to_json_obj(self) -> dict:
        return {
            "dim": self.dim,
            "sites_checked": self.sites_checked,
            "deltas": list(self.deltas),
            "ok": self.ok,
            "violations": [
                {"site": v.site, "dof": v.dof, "part": v.part,
                 "delta": v.delta, "value": v.value.to_pair()}
                for v in self.violations
            ],
        }


def _site_variation_coefficients(traj: Trajectory, h_t: GIMatrix,
                                 w: GIVector, m: int):
    """Per-dof variation coefficients at site m for all four parts.

    Returns (c_star, c_psi) where c_star[a] is the variation of the
    action under a unit shift of star_m^a's real part and c_psi[a] the
    analogue for psi_m^a.  Imaginary-part shifts multiply these by i.
    Takes the transposed coupling matrix and w = H psi_m precomputed.
    Derived from the same doubled action the direct path differences;
    the two paths are asserted equal in the test suite.
    """
    d = traj.dim
    zero = GIVector.zero(d)
    p_next = traj[m + 1] if m + 1 <= traj.last else zero
    p_prev = traj[m - 1] if m - 1 >= 0 else zero
    psi_dot = p_next - p_prev
    star_dot = GIVector(z.conjugate() for z in psi_dot.entries)
    u = h_t.apply(traj[m].conjugate())                   # H^T star_m
    c_star = tuple(GaussianInt(wv.im, -wv.re) + hv
                   for wv, hv in zip(psi_dot, w))        # -i psi_dot + w
    c_psi = tuple(GaussianInt(-sv.im, sv.re) + hv
                  for sv, hv in zip(star_dot, u))        # i star_dot + u
    return c_star, c_psi


def verify_stationarity(traj: Trajectory, h: HermitianIntMatrix,
                        deltas: Sequence[int] = (1, 2, 3),
                        method: str = "fast") -> StationarityReport:
    """Check that every elementary variation of the action vanishes.

    Covers every interior site, dof, all four real components, and the
    given deltas.  `method="direct"` differences the doubled action for
    each variation; `method="fast"` evaluates the equivalent per-site
    coefficients once and replays the quotient per delta.  Both produce
    identical reports (asserted in tests); the direct path is the
    independent oracle, the fast path makes long histories affordable.
    """
    if len(traj) < 3:
        raise ValueError("stationarity needs at least three slices")
    if traj.dim != h.dim:
        raise ValueError("dimension mismatch")
    if any(d == 0 for d in deltas):
        raise ValueError("deltas must be nonzero")
    violations = []
    if method == "direct":
        for m in range(1, traj.last):
            for a in range(traj.dim):
                for part in VARIATION_PARTS:
                    for delta in deltas:
                        spec = VariationSpec(m, a, part, delta)
                        val = stationarity_variation(traj, h, spec)
                        if val:
                            violations.append(
                                StationarityViolation(m, a, part, delta, val))
    elif method == "fast":
        i_unit = GaussianInt(0, 1)
        h_t = h.matrix.transpose()
        for m in range(1, traj.last):
            c_star, c_psi = _site_variation_coefficients(traj, h_t, h.apply(traj[m]), m)
            for a in range(traj.dim):
                for part, coeff in (
                    ("psi_re", c_psi[a]),
                    ("psi_im", i_unit * c_psi[a]),
                    ("star_re", c_star[a]),
                    ("star_im", i_unit * c_star[a]),
                ):
                    if not coeff:
                        continue
                    for delta in deltas:
                        # replay the quotient the direct path would take
                        diff = (2 * delta) * coeff
                        val = diff.divide_exact(2 * delta)
                        violations.append(
                            StationarityViolation(m, a, part, delta, val))
    else:
        raise ValueError(f"unknown method {method!r}")
    return StationarityReport(
        dim=traj.dim,
        sites_checked=max(traj.last - 1, 0),
        deltas=tuple(deltas),
        violations=tuple(violations),
    )
