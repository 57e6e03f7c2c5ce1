"""Laguerre and two-variable Hermite polynomials for complex arguments.

Both families are evaluated by direct summation with coefficients
precomputed in exact integer/rational arithmetic and accumulated
Horner-style in complex floating point.  The orders needed here are
small (single digits in practice), so cancellation is mild; a hard cap
keeps the factorial-scale coefficients representable.

Conventions:

    L_m(x)      = sum_{l=0}^{m} C(m,l) (-1)^l x^l / l!

    H_{m,n}(x,y) = sum_{k=0}^{min(m,n)} (-1)^k m! n! x^(m-k) y^(n-k)
                                         / (k! (m-k)! (n-k)!)

which together satisfy (-1)^m / m! * H_{m,m}(x, y) = L_m(x*y).

Both functions broadcast over numpy arrays in the polynomial arguments.
"""

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

# Factorial-scale coefficients stay finite in float64 up to this order.
ORDER_CAP = 64


class OrderCapError(ValueError):
    """Polynomial order is negative or exceeds the supported cap."""


def _check_order(m, name="m"):
    if not isinstance(m, (int, np.integer)):
        raise OrderCapError(f"order {name} must be an integer, got {m!r}")
    if m < 0 or m > ORDER_CAP:
        raise OrderCapError(
            f"order {name}={m} outside supported range 0..{ORDER_CAP}"
        )
    return int(m)


@lru_cache(maxsize=None)
def _laguerre_coeffs(m):
    # Coefficient of x^l is (-1)^l C(m,l) / l!, exact, highest power first.
    coeffs = [
        Fraction((-1) ** l * math.comb(m, l), math.factorial(l))
        for l in range(m, -1, -1)
    ]
    return tuple(float(c) for c in coeffs)


@lru_cache(maxsize=None)
def _hermite2_coeffs(m, n):
    # Coefficient of x^(m-k) y^(n-k) is (-1)^k m! n! / (k! (m-k)! (n-k)!),
    # exact integers; returned for k = 0..min(m,n).
    s = min(m, n)
    fm, fn = math.factorial(m), math.factorial(n)
    coeffs = [
        (-1) ** k * fm * fn
        // (math.factorial(k) * math.factorial(m - k) * math.factorial(n - k))
        for k in range(s + 1)
    ]
    return tuple(float(c) for c in coeffs)


def _as_complex(x):
    arr = np.asarray(x, dtype=complex)
    return arr


def _unwrap(value):
    if value.ndim == 0:
        return complex(value)
    return value


def laguerre(m, x):
    """Laguerre polynomial L_m(x) for complex scalar or array x."""
    m = _check_order(m)
    x = _as_complex(x)
    coeffs = _laguerre_coeffs(m)
    acc = np.full_like(x, coeffs[0])
    for c in coeffs[1:]:
        acc = acc * x + c
    return _unwrap(acc)


def hermite2(m, n, x, y):
    """Two-variable Hermite polynomial H_{m,n}(x, y).

    Accepts complex scalars or broadcastable arrays for x and y.  The
    sum over k is folded into a Horner evaluation in the product x*y:

        H_{m,n}(x,y) = x^(m-s) y^(n-s) * sum_{k=0}^{s} c_k (xy)^(s-k),
        s = min(m, n).
    """
    m = _check_order(m, "m")
    n = _check_order(n, "n")
    x = _as_complex(x)
    y = _as_complex(y)
    s = min(m, n)
    coeffs = _hermite2_coeffs(m, n)
    u = x * y
    acc = np.full(np.broadcast(x, y).shape, coeffs[0], dtype=complex)
    for c in coeffs[1:]:
        acc = acc * u + c
    if m > s:
        acc = acc * x ** (m - s)
    elif n > s:
        acc = acc * y ** (n - s)
    return _unwrap(acc)
