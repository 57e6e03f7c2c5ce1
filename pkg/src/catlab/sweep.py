"""1-D parameter scans with extremum refinement and zero-crossing
extraction."""

import math
from dataclasses import dataclass, field

import numpy as np

from ._parallel import ordered_map

VARIABLES = ("theta", "z_real", "kt")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0


@dataclass(frozen=True)
class ScanSpec:
    variable: str
    lo: float
    hi: float
    n_points: int = 500
    refine: bool = True

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise ValueError(
                f"variable {self.variable!r} not one of {VARIABLES}"
            )
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.n_points < 2:
            raise ValueError(f"n_points={self.n_points} must be >= 2")


@dataclass(frozen=True)
class Extremum:
    location: float
    value: float
    kind: str  # "min" | "max"


@dataclass
class ScanResult:
    abscissas: np.ndarray
    values: np.ndarray
    extrema: list = field(default_factory=list)
    zero_crossings: np.ndarray = field(default_factory=lambda: np.empty(0))
    skipped: int = 0


def golden_section_min(f, a, b, tol=1e-6):
    """Golden-section minimization on [a, b]; returns (x, f(x))."""
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n_steps = math.ceil(math.log(tol / h) / math.log(_INV_PHI))
    c = a + _INV_PHI_SQ * h
    d = a + _INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(n_steps - 1):
        h *= _INV_PHI
        if yc < yd:
            b, d, yd = d, c, yc
            c = a + _INV_PHI_SQ * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + _INV_PHI * h
            yd = f(d)
    return (c, yc) if yc < yd else (d, yd)


def _bisect_zero(f, a, b, fa, fb, xtol=1e-8):
    while b - a > xtol:
        mid = 0.5 * (a + b)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fa < 0.0) != (fm < 0.0):
            b, fb = mid, fm
        else:
            a, fa = mid, fm
    return 0.5 * (a + b)


def scan(f, spec: ScanSpec, skip_exceptions=()) -> ScanResult:
    """Evaluate f on the uniform grid of spec, refine every strict local
    extremum by golden section (inside its coarse bracket), and locate
    zero crossings by bisection.

    Exceptions of the listed types, and non-finite values, mark the
    point as skipped (NaN) instead of aborting the scan.
    """
    xs = np.linspace(spec.lo, spec.hi, spec.n_points)

    def evaluate(x):
        try:
            v = float(f(x))
        except skip_exceptions:
            return math.nan
        return v if math.isfinite(v) else math.nan

    values = np.array(ordered_map(evaluate, xs))
    skipped = int(np.sum(~np.isfinite(values)))

    extrema = []
    for i in range(1, spec.n_points - 1):
        triple = values[i - 1 : i + 2]
        if not np.all(np.isfinite(triple)):
            continue
        left, mid, right = triple
        if mid < left and mid < right:
            kind = "min"
        elif mid > left and mid > right:
            kind = "max"
        else:
            continue
        if spec.refine:
            sign = 1.0 if kind == "min" else -1.0
            x_star, v_star = golden_section_min(
                lambda x: sign * f(x), xs[i - 1], xs[i + 1]
            )
            extrema.append(Extremum(x_star, sign * v_star, kind))
        else:
            extrema.append(Extremum(float(xs[i]), float(mid), kind))

    crossings = []
    for i in range(spec.n_points - 1):
        a, b = values[i], values[i + 1]
        if not (math.isfinite(a) and math.isfinite(b)):
            continue
        if a * b < 0.0:
            crossings.append(_bisect_zero(f, xs[i], xs[i + 1], a, b))
        elif a == 0.0 and b != 0.0:
            # exact grid zero counts once, when the sign actually flips
            prev = values[i - 1] if i > 0 else math.nan
            if not math.isfinite(prev) or prev * b < 0.0:
                crossings.append(float(xs[i]))

    return ScanResult(
        abscissas=xs,
        values=values,
        extrema=extrema,
        zero_crossings=np.array(crossings),
        skipped=skipped,
    )


def find_peak(f, bracket, tol=1e-6):
    """Golden-section maximization of f inside bracket = (lo, hi).

    Raises if the maximum sits at the bracket edge (no interior peak).
    """
    lo, hi = bracket
    if not lo < hi:
        raise ValueError(f"bad bracket {bracket}")
    x, neg = golden_section_min(lambda t: -f(t), lo, hi, tol=tol)
    if min(x - lo, hi - x) < 2.0 * tol:
        raise ValueError(f"no interior maximum in bracket {bracket}")
    return x, -neg
