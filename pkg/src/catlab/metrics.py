"""Scalar nonclassicality diagnostics of the catalyzed state.

Every quantity is assembled from the anti-normally-ordered moments
M(q, p) = <b^q b^dag^p> supplied by the catalysis module, converted to
normally-ordered combinations through the commutator [b, b^dag] = 1:

    <b^dag b>       = M(1,1) - 1
    <b^dag^2 b^2>   = M(2,2) - 4 M(1,1) + 2

The canonical definitions (Mandel Q from number-operator variance, g2
as <b^dag^2 b^2>/<b^dag b>^2) are the primary implementations; the
purely anti-normal rewrites are kept only as audit forms.
"""

import math
import warnings
from dataclasses import dataclass

from .catalysis import CatalysisParams, moments, normalization
from .sweep import ScanSpec, scan

_RESIDUE_TOL = 1e-10
VACUUM_VARIANCE = 0.5


class DegenerateStateError(ValueError):
    """Metric undefined for the zero-mean-photon (vacuum) state."""


@dataclass(frozen=True)
class QuadratureVariances:
    """Variances of Q = (b + b^dag)/sqrt(2) and P = (b - b^dag)/(i sqrt(2)),
    and their dB values relative to the vacuum level 1/2."""

    var_q: float
    var_p: float

    @property
    def db_q(self):
        return 10.0 * math.log10(self.var_q / VACUUM_VARIANCE)

    @property
    def db_p(self):
        return 10.0 * math.log10(self.var_p / VACUUM_VARIANCE)


@dataclass(frozen=True)
class SqueezeOptimum:
    db_best: float
    theta_star: float
    var_at_star: float


def _real(value, what):
    value = complex(value)
    if abs(value.imag) > _RESIDUE_TOL * max(abs(value), 1.0):
        raise ArithmeticError(f"{what} has imaginary residue: {value!r}")
    return value.real


def mean_photon(params: CatalysisParams) -> float:
    """<b^dag b>."""
    return _real(moments(params, 1, 1), "<b b^dag>") - 1.0


def _normal_second_order(params):
    """(<b^dag b>, <b^dag^2 b^2>) via commutator shifts."""
    m11 = _real(moments(params, 1, 1), "<b b^dag>")
    m22 = _real(moments(params, 2, 2), "<b^2 b^dag^2>")
    return m11 - 1.0, m22 - 4.0 * m11 + 2.0


def _require_photons(nbar, params):
    if nbar <= 1e-14:
        raise DegenerateStateError(
            f"mean photon number {nbar} is zero for z={params.z}, "
            f"theta={params.theta}, m={params.m}"
        )


def mandel_q(params: CatalysisParams) -> float:
    """(<n^2> - <n>^2)/<n> - 1 for n = b^dag b; negative means
    sub-Poissonian statistics."""
    nbar, n2ord = _normal_second_order(params)
    _require_photons(nbar, params)
    number_variance = n2ord + nbar - nbar**2
    return number_variance / nbar - 1.0


def g2(params: CatalysisParams) -> float:
    """Second-order correlation <b^dag^2 b^2> / <b^dag b>^2."""
    nbar, n2ord = _normal_second_order(params)
    _require_photons(nbar, params)
    return n2ord / nbar**2


def classify_g2(value: float) -> str:
    if value < 1.0:
        return "antibunched"
    if value == 1.0:
        return "poissonian"
    if value <= 2.0:
        return "bunched"
    return "super-bunched"


def mandel_q_antinormal(params: CatalysisParams) -> float:
    """Audit form of Mandel Q written purely in anti-normal moments:
    (<b^2 b^dag^2> - <b b^dag>^2 - 2 <b b^dag> + 1) / (<b b^dag> - 1)."""
    m11 = _real(moments(params, 1, 1), "<b b^dag>")
    m22 = _real(moments(params, 2, 2), "<b^2 b^dag^2>")
    _require_photons(m11 - 1.0, params)
    return (m22 - m11**2 - 2.0 * m11 + 1.0) / (m11 - 1.0)


def g2_antinormal(params: CatalysisParams) -> float:
    """Audit form of g2: <b^2 b^dag^2 - 4 b b^dag + 2> / (<b b^dag> - 1)^2."""
    m11 = _real(moments(params, 1, 1), "<b b^dag>")
    m22 = _real(moments(params, 2, 2), "<b^2 b^dag^2>")
    _require_photons(m11 - 1.0, params)
    return (m22 - 4.0 * m11 + 2.0) / (m11 - 1.0) ** 2


def pnd(params: CatalysisParams, n: int) -> float:
    """Probability of finding n photons in the catalyzed state."""
    if n < 0:
        raise ValueError(f"photon number n={n} must be non-negative")
    m, mu, zbar = params.m, params.mu, params.zbar
    bracket = 0.0 + 0.0j
    for l in range(min(m, n) + 1):
        bracket += math.comb(m, l) * math.comb(n, l) * (-mu) ** l * zbar ** (n - l)
    nbar_sq = normalization(params).nbar_sq
    log_weight = -abs(zbar) ** 2 - math.lgamma(n + 1)
    return nbar_sq * math.exp(log_weight) * abs(bracket) ** 2


def quadrature_variances(params: CatalysisParams) -> QuadratureVariances:
    """Variances from first and second field moments:

    (dQ)^2 = ( <b^2> - <b>^2 + <b^dag^2> - <b^dag>^2
               + 2 <b b^dag> - 2 <b><b^dag> - 1 ) / 2

    and the same with flipped signs on the first four terms for P.
    """
    b = moments(params, 1, 0)
    bdag = moments(params, 0, 1)
    b2 = moments(params, 2, 0)
    bdag2 = moments(params, 0, 2)
    bbdag = moments(params, 1, 1)
    symmetric = 2.0 * bbdag - 2.0 * b * bdag - 1.0
    skew = b2 - b**2 + bdag2 - bdag**2
    var_q = _real(0.5 * (symmetric + skew), "(dQ)^2")
    var_p = _real(0.5 * (symmetric - skew), "(dP)^2")
    return QuadratureVariances(var_q=var_q, var_p=var_p)


def s_opt(params: CatalysisParams) -> float:
    """Phase-optimized normally-ordered quadrature variance:

        -2 |<b^dag^2> - <b^dag>^2| + 2 <b b^dag> - 2 |<b^dag>|^2 - 2

    Values in [-1, 0) certify squeezing; 0 for any coherent state.
    """
    bdag = moments(params, 0, 1)
    bdag2 = moments(params, 0, 2)
    bbdag = _real(moments(params, 1, 1), "<b b^dag>")
    return -2.0 * abs(bdag2 - bdag**2) + 2.0 * bbdag - 2.0 * abs(bdag) ** 2 - 2.0


DEFAULT_THETA_SCAN = ScanSpec(
    variable="theta",
    lo=1e-3,
    hi=math.pi / 2 - 1e-3,
    n_points=2000,
    refine=True,
)


def optimal_squeezing(z: complex, m: int, scan_spec: ScanSpec | None = None) -> SqueezeOptimum:
    """Minimize the Q-quadrature noise in dB over the beam-splitter
    angle: coarse scan, then golden-section refinement of each bracketed
    minimum; returns the global optimum on the scanned interval.

    A phase of z only rotates the output state in phase space (the
    beam splitter commutes with rotations), so the depth is evaluated
    in the amplitude-aligned frame: only |z| enters, and the result is
    invariant under z -> z e^(i phi).
    """
    spec = scan_spec if scan_spec is not None else DEFAULT_THETA_SCAN
    magnitude = abs(z)

    def db_q_at(theta):
        return quadrature_variances(
            CatalysisParams(z=magnitude, theta=theta, m=m)
        ).db_q

    result = scan(db_q_at, spec, skip_exceptions=(DegenerateStateError,))
    if result.skipped:
        warnings.warn(
            f"optimal_squeezing skipped {result.skipped} scan points",
            stacklevel=2,
        )
    candidates = [
        (ext.value, ext.location) for ext in result.extrema if ext.kind == "min"
    ]
    finite = [
        (v, x)
        for v, x in zip(result.values, result.abscissas)
        if math.isfinite(v)
    ]
    if not finite:
        raise DegenerateStateError(
            f"no finite quadrature variance on the scan for z={z}, m={m}"
        )
    candidates.append(min(finite))
    db_best, theta_star = min(candidates)
    var_at_star = VACUUM_VARIANCE * 10.0 ** (db_best / 10.0)
    return SqueezeOptimum(
        db_best=db_best, theta_star=float(theta_star), var_at_star=var_at_star
    )
