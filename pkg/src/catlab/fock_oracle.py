"""Brute-force ground truth in a truncated two-mode Fock space.

Everything here is built from ladder-operator matrices and matrix
exponentials only — no closed-form results from the analytic modules —
so these routines serve as an independent oracle for every formula in
catalysis, metrics, and wigner.

Mode convention (fixed project-wide): mode a is the herald (Fock input,
projective m-photon measurement), mode b is the signal.  Product basis
index = n_a * (n_trunc + 1) + n_b.  The beam-splitter unitary is
B(theta) = exp{theta (a^dag b - a b^dag)}, so a single herald photon
transforms as B|1,0> = cos(theta)|1,0> - sin(theta)|0,1>.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm

from .fockvec import FockVector, TruncationError

_TAIL_WARN = 1e-10


@dataclass(frozen=True)
class TwoModeOperator:
    """Dense two-mode operator on the truncated product space.

    For the photon-number-conserving beam-splitter generator the matrix
    is real orthogonal; it is stored as float64 and applied to complex
    vectors without loss.
    """

    matrix: np.ndarray
    theta: float
    n_trunc: int

    @property
    def dim(self):
        return (self.n_trunc + 1) ** 2


def beam_splitter(theta: float, n_trunc: int) -> TwoModeOperator:
    """exp{theta (a^dag b - a b^dag)} on the truncated product space.

    The generator conserves total photon number, so the exponential is
    computed exactly per invariant sector of fixed n_a + n_b and
    scattered back into the dense matrix (identical to exponentiating
    the full truncated generator, sector by sector).
    """
    if n_trunc < 1:
        raise ValueError(f"n_trunc={n_trunc} must be >= 1")
    dim1 = n_trunc + 1
    u = np.zeros((dim1 * dim1, dim1 * dim1))
    for n_tot in range(2 * n_trunc + 1):
        lo = max(0, n_tot - n_trunc)
        hi = min(n_trunc, n_tot)
        na = np.arange(lo, hi + 1)
        size = na.size
        gen = np.zeros((size, size))
        if size > 1:
            # a^dag b raises n_a: <n_a+1, n_b-1| G |n_a, n_b>
            hop = theta * np.sqrt((na[:-1] + 1.0) * (n_tot - na[:-1]))
            gen[np.arange(1, size), np.arange(size - 1)] = hop
            gen[np.arange(size - 1), np.arange(1, size)] = -hop
        idx = na * dim1 + (n_tot - na)
        u[np.ix_(idx, idx)] = expm(gen) if size > 1 else 1.0
    return TwoModeOperator(matrix=u, theta=float(theta), n_trunc=int(n_trunc))


def coherent_amplitudes(z: complex, n_trunc: int) -> np.ndarray:
    """exp(-|z|^2/2) z^n / sqrt(n!) for n = 0..n_trunc."""
    z = complex(z)
    amps = np.zeros(n_trunc + 1, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(z) ** 2)
    for n in range(1, n_trunc + 1):
        amps[n] = amps[n - 1] * z / math.sqrt(n)
    return amps


def default_n_trunc(z: complex, m: int) -> int:
    return 12 + math.ceil(4.0 * (abs(z) ** 2 + m))


def _top_tail_fraction(weights, count=3):
    total = float(weights.sum())
    if total == 0.0:
        return 0.0
    return float(weights[-count:].sum()) / total


def catalyze(z: complex, theta: float, m: int, n_trunc: int | None = None):
    """Simulate the catalysis circuit and herald on m photons.

    Builds |m>_a (x) |z>_b, applies the beam splitter, projects mode a
    onto <m|, and returns (normalized signal state, success probability
    = squared norm of the projected vector).  The truncation is doubled
    until the conditional state's top-of-ladder weight is negligible;
    a user-pinned n_trunc that fails the test raises TruncationError.
    """
    if m < 0:
        raise ValueError(f"m={m} must be non-negative")
    pinned = n_trunc is not None
    n_trunc = n_trunc if pinned else default_n_trunc(z, m)
    for _ in range(4):
        if n_trunc < m:
            raise TruncationError(f"n_trunc={n_trunc} cannot hold herald m={m}")
        dim1 = n_trunc + 1
        signal_in = coherent_amplitudes(z, n_trunc)
        bs = beam_splitter(theta, n_trunc).matrix
        # Rows/columns with herald occupation m; input lives entirely there.
        block = bs[m * dim1 : (m + 1) * dim1, m * dim1 : (m + 1) * dim1]
        raw = block @ signal_in.real + 1j * (block @ signal_in.imag)
        p_succ = float(np.vdot(raw, raw).real)
        in_tail = _top_tail_fraction(np.abs(signal_in) ** 2)
        out_tail = (
            _top_tail_fraction(np.abs(raw) ** 2) if p_succ > 0.0 else 0.0
        )
        if in_tail < 1e-16 and out_tail < 1e-13:
            state = FockVector(
                amps=raw / math.sqrt(p_succ),
                n_trunc=n_trunc,
                norm_defect=out_tail,
            )
            return state, p_succ
        if pinned:
            raise TruncationError(
                f"n_trunc={n_trunc} insufficient for z={z}, theta={theta}, "
                f"m={m}; suggest n_trunc>={2 * n_trunc}"
            )
        n_trunc *= 2
    raise TruncationError(f"catalysis truncation did not converge (z={z}, m={m})")


def _raise_powers(amps, count):
    """Apply b^dag count times, extending the ladder as needed."""
    out = np.concatenate([amps, np.zeros(count, dtype=complex)])
    for _ in range(count):
        shifted = np.zeros_like(out)
        n = np.arange(1, out.size)
        shifted[1:] = np.sqrt(n) * out[:-1]
        out = shifted
    return out


def oracle_moment(state: FockVector, q: int, p: int) -> complex:
    """<b^q b^dag^p> by direct ladder action on the amplitudes.

    Evaluated as the inner product of b^dag^q |state> with
    b^dag^p |state>, which never needs amplitudes beyond the stored
    ladder plus max(q, p) rungs.
    """
    if q < 0 or p < 0:
        raise ValueError(f"moment orders q={q}, p={p} must be non-negative")
    ext = max(q, p)
    left = _raise_powers(state.amps, q)
    right = _raise_powers(state.amps, p)
    left = np.concatenate([left, np.zeros(ext - q, dtype=complex)])
    right = np.concatenate([right, np.zeros(ext - p, dtype=complex)])
    terms = left.conjugate() * right
    total = complex(terms.sum())
    top = abs(complex(terms[-3:].sum()))
    if top > _TAIL_WARN * max(abs(total), 1.0):
        warnings.warn(
            f"oracle_moment(q={q}, p={p}): top-of-ladder terms contribute "
            f"{top:.3e}; increase n_trunc",
            stacklevel=2,
        )
    return total


def displacement(gamma: complex, dim: int) -> np.ndarray:
    """Dense D(gamma) = exp(gamma b^dag - gamma^* b) on dim levels."""
    n = np.arange(1, dim)
    ladder = np.zeros((dim, dim), dtype=complex)
    ladder[np.arange(1, dim), np.arange(dim - 1)] = np.sqrt(n)  # b^dag
    gen = gamma * ladder - np.conj(gamma) * ladder.conj().T
    return expm(gen)


def oracle_wigner(state: FockVector, gamma: complex) -> float:
    """Wigner value at gamma from the displaced-parity sum.

    Returns (1/pi) * sum_n (-1)^n |<n| D(-gamma) |state>|^2, the
    normalization in which integrating over the quadrature plane
    (dq dp, with gamma = (q + i p)/sqrt(2)) gives 1 and a coherent
    state peaks at 1/pi — the same convention as wigner_value.
    """
    gamma = complex(gamma)
    pad = math.ceil(4.0 * abs(gamma) ** 2 + 8.0 * abs(gamma) * math.sqrt(state.n_trunc + 1)) + 10
    dim = state.n_trunc + 1 + pad
    psi = np.concatenate([state.amps, np.zeros(pad, dtype=complex)])
    displaced = displacement(-gamma, dim) @ psi
    weights = np.abs(displaced) ** 2
    if _top_tail_fraction(weights) > _TAIL_WARN:
        warnings.warn(
            f"oracle_wigner(gamma={gamma}): displaced state touches the "
            f"truncation boundary; increase n_trunc",
            stacklevel=2,
        )
    signs = np.where(np.arange(dim) % 2 == 0, 1.0, -1.0)
    return float(np.sum(signs * weights) / math.pi)
