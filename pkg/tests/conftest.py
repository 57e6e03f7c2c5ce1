"""Shared test fixtures and independent numerical oracles."""

import math

import numpy as np
import pytest

from catlab import CatalysisParams, wigner_value

# z magnitudes x phases, theta, m: the standard cross-validation lattice
LATTICE_Z = [0.5, 1.0, 2.0]
LATTICE_PHASES = [0.0, math.pi / 7]
LATTICE_THETA = [math.pi / 6, math.pi / 4, math.pi / 3]
LATTICE_M = [0, 1, 2, 3, 4]


def standard_lattice():
    for mag in LATTICE_Z:
        for phase in LATTICE_PHASES:
            for theta in LATTICE_THETA:
                for m in LATTICE_M:
                    yield CatalysisParams(
                        z=mag * complex(math.cos(phase), math.sin(phase)),
                        theta=theta,
                        m=m,
                    )


@pytest.fixture
def rng():
    return np.random.default_rng(20210914)


def hermite2_by_quadrature(m, n, xi, eta, half=8.0, cells=800):
    """Midpoint quadrature of the Gaussian integral representation
    (-1)^n e^(xi eta) int d^2z/pi z^n z*^m e^(-|z|^2 + xi z - eta z*)."""
    h = 2.0 * half / cells
    u = -half + h * (np.arange(cells) + 0.5)
    z = u[:, None] + 1j * u[None, :]
    integrand = z**n * np.conj(z) ** m * np.exp(-np.abs(z) ** 2 + xi * z - eta * np.conj(z))
    integral = integrand.sum() * h * h / math.pi
    return (-1) ** n * np.exp(xi * eta) * integral


def thermal_convolution(params, ch, beta, half=7.0, cells=600):
    """Decohered Wigner value by direct 2-D convolution of the initial
    Wigner function with the thermal Gaussian kernel (independent of the
    closed-form implementation)."""
    eps = ch.decay
    tau = (2.0 * ch.nbar + 1.0) * ch.T
    if tau == 0.0:
        raise ValueError("convolution oracle needs kt > 0")
    h = 2.0 * half / cells
    c = params.zbar
    g_re = c.real - half + h * (np.arange(cells) + 0.5)
    g_im = c.imag - half + h * (np.arange(cells) + 0.5)
    gammas = g_re[:, None] + 1j * g_im[None, :]
    values = wigner_value(params, gammas)
    kernel = np.exp(-2.0 * np.abs(beta - gammas * eps) ** 2 / tau)
    return float((2.0 / (tau * math.pi)) * np.sum(values * kernel) * h * h)
