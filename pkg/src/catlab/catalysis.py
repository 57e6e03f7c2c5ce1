"""Analytic construction of the catalyzed coherent state.

An input coherent state |z> interferes with an m-photon Fock state at a
beam splitter of angle theta (transmissivity t = cos(theta)); detecting
m photons at the herald output leaves the signal mode in

    |out> = Nbar * L_m(mu * b^dag) |z cos(theta)>,

a Laguerre-polynomial excitation of the attenuated coherent state, with
mu = z cos(theta) tan^2(theta).  This module evaluates that state's
normalization, its Fock amplitudes, and the anti-normally-ordered
moments <b^q b^dag^p> that every downstream diagnostic consumes.

All three quantities are finite double sums over the two-variable
Hermite polynomials H_{k,l} evaluated at (zbar^*, -zbar).
"""

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .fockvec import FockVector, TruncationError
from .polynomials import ORDER_CAP, OrderCapError, hermite2

_REAL_RESIDUE_TOL = 1e-10
_TAIL_TARGET = 1e-14


@dataclass(frozen=True)
class CatalysisParams:
    """The triple (z, theta, m): input amplitude, beam-splitter angle in
    [0, pi/2), and catalysis photon number."""

    z: complex
    theta: float
    m: int

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "theta", float(self.theta))
        if not 0.0 <= self.theta < math.pi / 2:
            raise ValueError(f"theta={self.theta} outside [0, pi/2)")
        if not isinstance(self.m, (int, np.integer)) or self.m < 0:
            raise ValueError(f"m={self.m} must be a non-negative integer")
        object.__setattr__(self, "m", int(self.m))

    @property
    def t(self):
        """Transmissivity amplitude cos(theta)."""
        return math.cos(self.theta)

    @property
    def r(self):
        """Reflectivity amplitude sin(theta)."""
        return math.sin(self.theta)

    @property
    def zbar(self):
        """Attenuated coherent amplitude z*cos(theta)."""
        return self.z * self.t

    @property
    def mu(self):
        """Excitation strength z*cos(theta)*tan^2(theta)."""
        return self.z * self.t * math.tan(self.theta) ** 2


@dataclass(frozen=True)
class NormalizationResult:
    nbar_inv_sq: float  # squared inverse of the normalization factor
    nbar_sq: float      # its reciprocal

    @property
    def nbar(self):
        return math.sqrt(self.nbar_sq)


def _real_or_raise(value, what):
    value = complex(value)
    scale = max(abs(value), 1.0)
    if abs(value.imag) > _REAL_RESIDUE_TOL * scale:
        raise ArithmeticError(
            f"{what} has imaginary residue {value.imag!r} (value {value!r})"
        )
    return value.real


def _hermite_double_sum(params, q, p):
    """sum_{l,k=0}^{m} C(m,l) C(m,k) (-1)^(q+k) mu^k mu*^l / (l! k!)
    * H_{k+p, l+q}(zbar^*, -zbar)."""
    m, mu, zbar = params.m, params.mu, params.zbar
    x, y = zbar.conjugate(), -zbar
    total = 0.0 + 0.0j
    for k in range(m + 1):
        ck = math.comb(m, k) * (-1) ** (q + k) * mu**k / math.factorial(k)
        for l in range(m + 1):
            cl = math.comb(m, l) * mu.conjugate() ** l / math.factorial(l)
            total += ck * cl * hermite2(k + p, l + q, x, y)
    return total


@lru_cache(maxsize=4096)
def normalization(params: CatalysisParams) -> NormalizationResult:
    """Normalization of the catalyzed state: Nbar^(-2) as the Hermite
    double sum, strictly positive real."""
    raw = _hermite_double_sum(params, 0, 0)
    nbar_inv_sq = _real_or_raise(raw, "normalization sum")
    if nbar_inv_sq <= 0.0:
        raise ArithmeticError(f"normalization {nbar_inv_sq} not positive")
    return NormalizationResult(nbar_inv_sq=nbar_inv_sq, nbar_sq=1.0 / nbar_inv_sq)


@dataclass
class MomentTable:
    """Memoized anti-normally-ordered moments <b^q b^dag^p>.

    Fills are idempotent (pure recomputation yields the same value), so
    concurrent readers may race on the dict without torn results.
    """

    params: CatalysisParams
    entries: dict = field(default_factory=dict)

    def entry(self, q: int, p: int) -> complex:
        if q < 0 or p < 0:
            raise ValueError(f"moment orders q={q}, p={p} must be non-negative")
        if q + p + 2 * self.params.m > ORDER_CAP:
            raise OrderCapError(
                f"moment (q={q}, p={p}) with m={self.params.m} exceeds "
                f"polynomial order cap {ORDER_CAP}"
            )
        key = (q, p)
        if key not in self.entries:
            nbar_sq = normalization(self.params).nbar_sq
            self.entries[key] = nbar_sq * _hermite_double_sum(self.params, q, p)
        return self.entries[key]


@lru_cache(maxsize=4096)
def moment_table(params: CatalysisParams) -> MomentTable:
    """Shared per-parameter moment cache (exact-equality keyed)."""
    return MomentTable(params)


def moments(params: CatalysisParams, q: int, p: int) -> complex:
    """<b^q b^dag^p> for the catalyzed state (annihilators left)."""
    return moment_table(params).entry(q, p)


def default_n_max(params: CatalysisParams) -> int:
    """Poisson 10-sigma tail bound plus polynomial-degree margin."""
    nbar_photon = abs(params.zbar) ** 2
    return max(
        math.ceil(nbar_photon + 10.0 * math.sqrt(nbar_photon + 1.0)) + params.m,
        20,
    )


def _raw_amplitudes(params, n_max):
    """Unnormalized amplitudes exp(-|zbar|^2/2) / sqrt(n!) *
    sum_l C(m,l) C(n,l) (-mu)^l zbar^(n-l), for n = 0..n_max."""
    m, mu, zbar = params.m, params.mu, params.zbar
    prefactor = math.exp(-0.5 * abs(zbar) ** 2)
    raw = np.zeros(n_max + 1, dtype=complex)
    inv_sqrt_fact = 1.0
    for n in range(n_max + 1):
        if n > 0:
            inv_sqrt_fact /= math.sqrt(n)
        bracket = 0.0 + 0.0j
        for l in range(min(m, n) + 1):
            bracket += (
                math.comb(m, l) * math.comb(n, l) * (-mu) ** l * zbar ** (n - l)
            )
        raw[n] = prefactor * inv_sqrt_fact * bracket
    return raw


def _tail_estimate(weights):
    """Geometric bound on the truncated probability tail, or None when
    the top of the vector is not yet decaying.  Uses the last three
    weights so an accidental zero of the amplitude polynomial near the
    cut cannot fake convergence."""
    w3, w2, w1 = weights[-3], weights[-2], weights[-1]
    if w1 == w2 == w3 == 0.0:
        return 0.0
    ratios = [b / a for a, b in ((w3, w2), (w2, w1)) if a > 0.0]
    if not ratios:
        return None
    ratio = max(ratios)
    if ratio >= 0.5:
        return None
    return max(w1, w2 * ratio) * ratio / (1.0 - ratio)


def output_amplitudes(params: CatalysisParams, n_max: int | None = None) -> FockVector:
    """Normalized Fock amplitudes c_n of the catalyzed state.

    When n_max is omitted it starts from the Poisson-tail default and
    grows geometrically until the truncated tail falls below 1e-14 of
    the total weight; a user-pinned n_max that fails the tail test
    raises TruncationError with a suggestion instead.
    """
    pinned = n_max is not None
    n_max = n_max if pinned else default_n_max(params)
    if n_max < max(params.m, 2):
        raise TruncationError(
            f"n_max={n_max} below minimum {max(params.m, 2)} for m={params.m}"
        )
    for _ in range(8):
        raw = _raw_amplitudes(params, n_max)
        weights = np.abs(raw) ** 2
        tail = _tail_estimate(weights)
        total = float(weights.sum())
        if tail is not None and tail <= _TAIL_TARGET * total:
            nbar = normalization(params).nbar
            return FockVector.from_raw(nbar * raw)
        if pinned:
            raise TruncationError(
                f"n_max={n_max} insufficient for z={params.z}, "
                f"theta={params.theta}, m={params.m}; "
                f"suggest n_max>={2 * n_max}"
            )
        n_max *= 2
    raise TruncationError(
        f"amplitude tail did not converge by n_max={n_max} for {params}"
    )
