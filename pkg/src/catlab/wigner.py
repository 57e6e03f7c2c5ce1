"""Phase-space diagnostics: Wigner function, negativity volume, and
thermal-channel decoherence.

Conventions.  Phase-space points are gamma = (q + i p)/sqrt(2); the
Wigner function is normalized so that integrating over dq dp gives 1,
which puts the coherent-state peak at 1/pi.  The catalyzed state's
Wigner function factorizes as

    W(gamma) = W0(gamma) * F(gamma),
    W0(gamma) = (1/pi) exp(-2 |gamma - zbar|^2),

with F a double Hermite sum carrying all the non-Gaussian structure.
Under a thermal channel of dimensionless decay time kt and occupation
nbar, with

    T = 1 - exp(-2 kt),  A = 2 nbar T + 1,  B = exp(-2 kt) - (2 nbar + 1) T,

the same factorized shape survives with rescaled arguments; for B < 0
the square roots below turn imaginary, but taking the principal branch
consistently in both sqrt(B/A) and sqrt(A*B) leaves the result real,
because every summand carries only integer powers of B.
"""

import math
from dataclasses import dataclass

import numpy as np

from ._parallel import ordered_map, thread_count
from .catalysis import CatalysisParams, normalization
from .polynomials import hermite2, laguerre
from .sweep import golden_section_min

_RESIDUE_TOL = 1e-10
_NORM_DEFECT_TOL = 5e-3
DEFAULT_HALF_WIDTH = 6.0
DEFAULT_POINTS = 301


class GridDomainError(ValueError):
    """Grid bounds truncate the state; carries suggested bounds."""


class ConvergenceError(RuntimeError):
    """Refinement or search failed to converge within its hard cap."""


@dataclass(frozen=True)
class ThermalChannel:
    """Thermal channel with dimensionless decay time kt and mean bath
    occupation nbar."""

    kt: float
    nbar: float = 0.0

    def __post_init__(self):
        if self.kt < 0.0:
            raise ValueError(f"kt={self.kt} must be non-negative")
        if self.nbar < 0.0:
            raise ValueError(f"nbar={self.nbar} must be non-negative")

    @property
    def decay(self):
        """Amplitude decay factor exp(-kt)."""
        return math.exp(-self.kt)

    @property
    def T(self):
        return 1.0 - math.exp(-2.0 * self.kt)

    @property
    def A(self):
        return 2.0 * self.nbar * self.T + 1.0

    @property
    def B(self):
        return math.exp(-2.0 * self.kt) - (2.0 * self.nbar + 1.0) * self.T


IDENTITY_CHANNEL = ThermalChannel(kt=0.0, nbar=0.0)


@dataclass(frozen=True)
class GridSpec:
    q_min: float
    q_max: float
    p_min: float
    p_max: float
    n_q: int = DEFAULT_POINTS
    n_p: int = DEFAULT_POINTS

    def __post_init__(self):
        if not (self.q_min < self.q_max and self.p_min < self.p_max):
            raise ValueError(f"empty grid bounds {self}")
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError(f"grid needs at least 2 points per axis: {self}")

    @property
    def qs(self):
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @property
    def ps(self):
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dq(self):
        return (self.q_max - self.q_min) / (self.n_q - 1)

    @property
    def dp(self):
        return (self.p_max - self.p_min) / (self.n_p - 1)


@dataclass(frozen=True)
class WignerGrid:
    """Wigner values on a rectangular (q, p) lattice, values[i, j] at
    (q_i, p_j), with the grid-sum normalization defect recorded."""

    spec: GridSpec
    values: np.ndarray
    norm_defect: float

    @property
    def qs(self):
        return self.spec.qs

    @property
    def ps(self):
        return self.spec.ps

    @property
    def dq(self):
        return self.spec.dq

    @property
    def dp(self):
        return self.spec.dp


def _real_values(raw, what):
    raw = np.asarray(raw)
    scale = max(float(np.max(np.abs(raw))), 1.0)
    residue = float(np.max(np.abs(raw.imag)))
    if residue > _RESIDUE_TOL * scale:
        raise ArithmeticError(f"{what} has imaginary residue {residue:.3e}")
    return raw.real


def _nongaussian_factor(params, x, y, scale=1.0):
    """N^2 * sum_{l,j} mu^l mu*^j / (l! j!) C(m,j) C(m,l) scale^(l+j)
    * H_{l,j}(x, y), broadcast over arrays x, y."""
    m, mu = params.m, params.mu
    nbar_sq = normalization(params).nbar_sq
    shape = np.broadcast(np.asarray(x), np.asarray(y)).shape
    total = np.zeros(shape, dtype=complex)
    for l in range(m + 1):
        cl = math.comb(m, l) * (mu * scale) ** l / math.factorial(l)
        for j in range(m + 1):
            cj = math.comb(m, j) * (mu.conjugate() * scale) ** j / math.factorial(j)
            total = total + cl * cj * hermite2(l, j, x, y)
    return nbar_sq * total


def wigner_value(params: CatalysisParams, gamma):
    """Wigner function of the catalyzed state at gamma (scalar or
    array); real up to an asserted residue."""
    gamma = np.asarray(gamma, dtype=complex)
    zbar = params.zbar
    w0 = np.exp(-2.0 * np.abs(gamma - zbar) ** 2) / math.pi
    factor = _nongaussian_factor(
        params,
        np.conj(zbar) - 2.0 * np.conj(gamma),
        zbar - 2.0 * gamma,
    )
    values = _real_values(w0 * factor, "Wigner value")
    if values.ndim == 0:
        return float(values)
    return values


def decohered_wigner(params: CatalysisParams, ch: ThermalChannel, beta):
    """Wigner function after evolution in the thermal channel, at beta
    (scalar or array).

    Uses complex principal square roots of B/A and A*B taken from the
    same B, so the B < 0 regime needs no special casing.  At exactly
    B = 0 the scaled Hermite sum collapses to a product of Laguerre
    polynomials (only the fully contracted term of each H survives).
    """
    beta = np.asarray(beta, dtype=complex)
    zbar = params.zbar
    eps = ch.decay
    a_coef, b_coef = ch.A, ch.B
    center = zbar * eps
    w0 = np.exp(-2.0 * np.abs(beta - center) ** 2 / a_coef) / (math.pi * a_coef)
    if b_coef == 0.0:
        mu = params.mu
        nbar_sq = normalization(params).nbar_sq
        factor = nbar_sq * (
            laguerre(params.m, 2.0 * mu * np.conj(beta) * eps / a_coef)
            * laguerre(params.m, 2.0 * mu.conjugate() * beta * eps / a_coef)
        )
    else:
        root_ba = np.sqrt(complex(b_coef / a_coef))
        root_ab = np.sqrt(complex(a_coef * b_coef))
        factor = _nongaussian_factor(
            params,
            (np.conj(zbar) * b_coef - 2.0 * np.conj(beta) * eps) / root_ab,
            (zbar * b_coef - 2.0 * beta * eps) / root_ab,
            scale=root_ba,
        )
    values = _real_values(w0 * factor, "decohered Wigner value")
    if values.ndim == 0:
        return float(values)
    return values


def _grid_center(params, ch=None):
    center = params.zbar * (ch.decay if ch is not None else 1.0)
    return math.sqrt(2.0) * center.real, math.sqrt(2.0) * center.imag


def default_grid_spec(params, ch=None, half_width=DEFAULT_HALF_WIDTH,
                      n_points=DEFAULT_POINTS) -> GridSpec:
    q0, p0 = _grid_center(params, ch)
    return GridSpec(
        q_min=q0 - half_width, q_max=q0 + half_width,
        p_min=p0 - half_width, p_max=p0 + half_width,
        n_q=n_points, n_p=n_points,
    )


def _expand_to_cover(spec, params, ch=None):
    """Widen the bounds, if needed, to cover the displaced center plus
    four vacuum standard widths per side."""
    q0, p0 = _grid_center(params, ch)
    margin = 4.0 / math.sqrt(2.0)
    bounds = (
        min(spec.q_min, q0 - margin), max(spec.q_max, q0 + margin),
        min(spec.p_min, p0 - margin), max(spec.p_max, p0 + margin),
    )
    if bounds == (spec.q_min, spec.q_max, spec.p_min, spec.p_max):
        return spec
    return GridSpec(*bounds, spec.n_q, spec.n_p)


def _evaluate_lattice(params, ch, qs, ps):
    """Wigner values W[i, j] at gamma = (qs[i] + i ps[j])/sqrt(2).

    Rows are evaluated in index-ordered chunks (threaded when
    CATLAB_THREADS > 1); each cell's value never depends on the
    chunking, so grids are bit-identical for any thread count.
    """
    sqrt2 = math.sqrt(2.0)
    if ch is None:
        evaluate = lambda q: wigner_value(params, (q + 1j * ps) / sqrt2)
    else:
        evaluate = lambda q: decohered_wigner(params, ch, (q + 1j * ps) / sqrt2)
    n_chunks = min(thread_count() * 4, qs.size)
    chunks = np.array_split(np.arange(qs.size), n_chunks)
    rows = ordered_map(lambda idx: np.vstack([evaluate(qs[i]) for i in idx]), chunks)
    return np.vstack(rows)


def wigner_grid(params: CatalysisParams, spec: GridSpec | None = None,
                ch: ThermalChannel | None = None) -> WignerGrid:
    """Evaluate the (possibly decohered) Wigner function on a lattice;
    raises GridDomainError when the bounds truncate the state."""
    spec = spec if spec is not None else default_grid_spec(params, ch)
    spec = _expand_to_cover(spec, params, ch)
    values = _evaluate_lattice(params, ch, spec.qs, spec.ps)
    if not np.all(np.isfinite(values)):
        raise ArithmeticError("non-finite Wigner values on the grid")
    integral = float(values.sum()) * spec.dq * spec.dp
    defect = abs(integral - 1.0)
    if defect > _NORM_DEFECT_TOL:
        q0, p0 = _grid_center(params, ch)
        half = max(spec.q_max - q0, q0 - spec.q_min,
                   spec.p_max - p0, p0 - spec.p_min) + 2.0
        raise GridDomainError(
            f"grid integral defect {defect:.3e} exceeds {_NORM_DEFECT_TOL}; "
            f"suggest bounds ({q0 - half:.2f}, {q0 + half:.2f}) x "
            f"({p0 - half:.2f}, {p0 + half:.2f})"
        )
    return WignerGrid(spec=spec, values=values, norm_defect=defect)


def _midpoint_integrals(params, ch, half_width, n_cells, center):
    """(signed, absolute) midpoint-rule integrals of W over the square
    of the given half-width around center."""
    q0, p0 = center
    h = 2.0 * half_width / n_cells
    qs = q0 - half_width + h * (np.arange(n_cells) + 0.5)
    ps = p0 - half_width + h * (np.arange(n_cells) + 0.5)
    values = _evaluate_lattice(params, ch, qs, ps)
    cell = h * h
    return float(values.sum()) * cell, float(np.abs(values).sum()) * cell


def negative_volume(params: CatalysisParams, ch: ThermalChannel | None = None,
                    half_width=DEFAULT_HALF_WIDTH, n_cells=300,
                    tol=1e-4) -> float:
    """Negative volume delta = [integral |W| dq dp - 1] / 2.

    Midpoint rule around the displaced center; the mesh is halved until
    delta stabilizes within tol, then the domain is widened once to
    prove it no longer matters.  Raises ConvergenceError past the hard
    caps.
    """
    center = _grid_center(params, ch)
    for _ in range(3):  # domain expansions
        cells = math.ceil(n_cells * half_width / DEFAULT_HALF_WIDTH)
        signed, absolute = _midpoint_integrals(params, ch, half_width, cells, center)
        delta = 0.5 * (absolute - 1.0)
        for _ in range(4):  # mesh halvings
            cells *= 2
            signed, absolute = _midpoint_integrals(params, ch, half_width, cells, center)
            refined = 0.5 * (absolute - 1.0)
            converged = abs(refined - delta) < tol
            delta = refined
            if converged:
                break
        else:
            raise ConvergenceError(
                f"negative-volume mesh did not converge at half_width={half_width}"
            )
        wide = half_width + 2.0
        _, wide_abs = _midpoint_integrals(
            params, ch, wide, math.ceil(cells * wide / half_width), center
        )
        if abs(0.5 * (wide_abs - 1.0) - delta) < tol:
            if abs(signed - 1.0) > _NORM_DEFECT_TOL:
                raise ConvergenceError(
                    f"negative-volume grid normalization defect "
                    f"{abs(signed - 1.0):.3e} at half_width={half_width}"
                )
            return max(delta, 0.0)
        half_width = wide
    raise ConvergenceError(
        f"negative-volume domain did not converge for z={params.z}, "
        f"theta={params.theta}, m={params.m}"
    )


def min_wigner(params: CatalysisParams, ch: ThermalChannel | None = None,
               half_width=DEFAULT_HALF_WIDTH, n_points=DEFAULT_POINTS):
    """Global minimum of the (decohered) Wigner function on the search
    domain: lattice scan, then coordinate descent (alternating 1-D
    golden-section line searches) to 1e-5 resolution.

    Returns (value, location) with the location as complex gamma.
    """
    grid = wigner_grid(
        params,
        default_grid_spec(params, ch, half_width=half_width, n_points=n_points),
        ch,
    )
    i, j = np.unravel_index(np.argmin(grid.values), grid.values.shape)
    q, p = float(grid.qs[i]), float(grid.ps[j])

    sqrt2 = math.sqrt(2.0)
    if ch is None:
        point = lambda q_, p_: wigner_value(params, (q_ + 1j * p_) / sqrt2)
    else:
        point = lambda q_, p_: decohered_wigner(params, ch, (q_ + 1j * p_) / sqrt2)

    window = 2.0 * grid.dq
    for _ in range(60):
        q_new, _ = golden_section_min(lambda t: point(t, p), q - window, q + window, tol=1e-6)
        p_new, _ = golden_section_min(lambda t: point(q_new, t), p - window, p + window, tol=1e-6)
        moved = max(abs(q_new - q), abs(p_new - p))
        q, p = q_new, p_new
        if moved < 1e-5:
            break
        window = max(2.0 * moved, 1e-4)
    location = (q + 1j * p) / sqrt2
    return point(q, p), location


def characteristic_time(params: CatalysisParams, nbar: float = 0.0,
                        resolution=1e-3, kt_max=5.0) -> float:
    """Decay time at which the last Wigner negativity vanishes in the
    thermal channel; 0 when the state starts nonnegative.  Bisection on
    the sign of the minimum Wigner value."""
    value_at = lambda kt: min_wigner(params, ThermalChannel(kt=kt, nbar=nbar))[0]
    if value_at(0.0) >= 0.0:
        return 0.0
    lo, hi = 0.0, None
    probe = 0.1
    while probe <= kt_max:
        if value_at(probe) >= 0.0:
            hi = probe
            break
        lo = probe
        probe *= 2.0
    if hi is None:
        raise ConvergenceError(
            f"no sign change of the minimum Wigner value on [0, {kt_max}]"
        )
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if value_at(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
