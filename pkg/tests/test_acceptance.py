"""Acceptance suite: every release criterion at its stated tolerance,
one printed pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as
they complete.  Criterion 7's characteristic-time targets are a known
honest failure; see the analysis printed by the test.
"""

import math

import numpy as np
import pytest

from catlab import (
    CatalysisParams,
    ThermalChannel,
    catalyze,
    characteristic_time,
    decohered_wigner,
    g2,
    g2_antinormal,
    mandel_q,
    mandel_q_antinormal,
    moments,
    negative_volume,
    normalization,
    optimal_squeezing,
    oracle_moment,
    oracle_wigner,
    output_amplitudes,
    pnd,
    quadrature_variances,
    s_opt,
    wigner_grid,
    wigner_value,
)
from catlab.sweep import find_peak
from conftest import standard_lattice, thermal_convolution


def finish(criterion, failures, detail=""):
    status = "PASS" if not failures else "FAIL"
    suffix = f" — {detail}" if detail else ""
    print(f"[criterion {criterion}] {status}{suffix}")
    assert not failures, f"criterion {criterion}: " + "; ".join(failures)


def test_criterion_1_normalization_closed_form():
    # Nbar^-2 at m=1 equals (1-|z|^2 sin^2)^2 + |z|^2 cos^2 tan^4, 1e-12 rel
    rng = np.random.default_rng(1)
    failures = []
    worst = 0.0
    for _ in range(200):
        r = 3.0 * math.sqrt(rng.uniform())
        phi = rng.uniform(0, 2 * math.pi)
        z = r * complex(math.cos(phi), math.sin(phi))
        theta = rng.uniform(1e-3, math.pi / 2 - 1e-3)
        got = normalization(CatalysisParams(z=z, theta=theta, m=1)).nbar_inv_sq
        zsq = abs(z) ** 2
        expected = (1 - zsq * math.sin(theta) ** 2) ** 2 + zsq * math.cos(
            theta
        ) ** 2 * math.tan(theta) ** 4
        rel = abs(got - expected) / abs(expected)
        worst = max(worst, rel)
        if rel > 1e-12:
            failures.append(f"z={z:.3f}, theta={theta:.3f}: rel {rel:.2e}")
    finish(1, failures, f"worst relative deviation {worst:.2e} over 200 draws")


def test_criterion_2_oracle_equivalence():
    rng = np.random.default_rng(2)
    failures = []
    worst_amp = worst_mom = worst_wig = 0.0
    for params in standard_lattice():
        state, _ = catalyze(params.z, params.theta, params.m)
        analytic = output_amplitudes(params)
        n = min(state.n_trunc, analytic.n_trunc) + 1
        amp_diff = float(np.max(np.abs(state.amps[:n] - analytic.amps[:n])))
        worst_amp = max(worst_amp, amp_diff)
        if amp_diff > 1e-8:
            failures.append(f"{params}: amplitude diff {amp_diff:.2e}")
        for q, p in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (2, 2)]:
            reference = oracle_moment(state, q, p)
            diff = abs(moments(params, q, p) - reference)
            rel = diff / max(abs(reference), 1.0)
            worst_mom = max(worst_mom, rel)
            if rel > 1e-8:
                failures.append(f"{params}: moment ({q},{p}) rel {rel:.2e}")
        for _ in range(25):
            gamma = params.zbar + complex(*rng.uniform(-2, 2, 2))
            diff = abs(wigner_value(params, gamma) - oracle_wigner(state, gamma))
            worst_wig = max(worst_wig, diff)
            if diff > 1e-7:
                failures.append(f"{params}: Wigner diff {diff:.2e} at {gamma:.3f}")
    finish(2, failures,
           f"worst: amplitudes {worst_amp:.2e}, moments {worst_mom:.2e}, "
           f"Wigner {worst_wig:.2e}")


def test_criterion_3_optimal_squeezing():
    failures = []
    depths = {z: optimal_squeezing(z, 1).db_best for z in (0.5, 1.0, 2.5)}
    for z, db in depths.items():
        if abs(db - (-1.249)) > 0.005:
            failures.append(f"m=1, z={z}: {db:.4f} dB not -1.249 +- 0.005")
    spread = max(depths.values()) - min(depths.values())
    if spread > 0.005:
        failures.append(f"m=1 depth varies {spread:.4f} dB across z")
    ladder = [optimal_squeezing(1.0, m).db_best for m in (1, 2, 3, 4)]
    if not all(a > b for a, b in zip(ladder, ladder[1:])):
        failures.append(f"db_best not strictly decreasing in m: {ladder}")
    finish(3, failures,
           f"m=1 depth {depths[1.0]:.4f} dB, z-spread {spread:.1e}, "
           f"m=1..4 ladder {[f'{v:.4f}' for v in ladder]}")


def test_criterion_4_g2_peaks():
    failures = []
    targets = {1: (0.68, 6.93), 2: (0.53, 6.83), 3: (0.45, 6.76), 4: (0.39, 6.72)}
    found = {}
    for m, (theta_exp, g_exp) in targets.items():
        loc, val = find_peak(
            lambda th: g2(CatalysisParams(z=1.0, theta=th, m=m)),
            (theta_exp - 0.15, theta_exp + 0.15),
        )
        found[m] = (loc, val)
        if abs(loc - theta_exp) > 0.01:
            failures.append(f"m={m}: peak at {loc:.4f}, expected {theta_exp}")
        if abs(val - g_exp) > 0.05:
            failures.append(f"m={m}: peak value {val:.4f}, expected {g_exp}")
    # theta is capped where <n> = cos^2(theta) stays above ~1e-2: beyond
    # that the coherent-state identity g2 = 1 is assembled from moments
    # of order one divided by <n>^2, so double precision cannot hold
    # 1e-10 (the deviation there is pure rounding, not physics)
    flat = max(
        abs(g2(CatalysisParams(z=1.0, theta=th, m=0)) - 1.0)
        for th in np.linspace(1e-3, 1.45, 200)
    )
    if flat > 1e-10:
        failures.append(f"m=0 deviates from g2=1 by {flat:.2e}")
    finish(4, failures,
           "peaks " + ", ".join(f"m={m}: ({loc:.3f}, {val:.3f})"
                                for m, (loc, val) in found.items())
           + f"; m=0 flatness {flat:.1e}")


def test_criterion_5_pnd_targets():
    failures = []
    targets = [
        (1.0, math.pi / 4, 3, 0.57),
        (1.0, math.pi / 3, 2, 0.80),
        (1.0, math.pi / 3, 3, 0.72),
        (0.5, math.pi / 3, 2, 0.61),
        (0.5, math.pi / 3, 3, 0.77),
    ]
    results = []
    for z, theta, m, expected in targets:
        p1 = pnd(CatalysisParams(z=z, theta=theta, m=m), 1)
        results.append(p1)
        if abs(p1 - expected) > 0.005:
            failures.append(
                f"z={z}, theta={theta:.3f}, m={m}: p_1={p1:.4f} != {expected}"
            )
    finish(5, failures, "p_1 = " + ", ".join(f"{v:.4f}" for v in results))


TABLE_TARGETS = {
    (1, 1.0): (0.023, 0.115, 0.205),
    (2, 1.0): (0.116, 0.180, 0.207),
    (3, 1.0): (0.164, 0.188, 0.212),
    (1, 2.0): (0.163, 0.115, 0.122),
    (2, 2.0): (0.149, 0.271, 0.297),
    (3, 2.0): (0.242, 0.307, 0.412),
}


def test_criterion_6_negative_volume_table():
    failures = []
    worst = 0.0
    thetas = (math.pi / 5, math.pi / 4, math.pi / 3)
    for (m, z), row in TABLE_TARGETS.items():
        for theta, expected in zip(thetas, row):
            delta = negative_volume(CatalysisParams(z=z, theta=theta, m=m))
            worst = max(worst, abs(delta - expected))
            if abs(delta - expected) > 0.01:
                failures.append(
                    f"m={m}, z={z}, theta={theta:.3f}: {delta:.4f} != {expected}"
                )
    gaussian = negative_volume(CatalysisParams(z=1.0, theta=math.pi / 4, m=0))
    if abs(gaussian) > 1e-6:
        failures.append(f"m=0 delta {gaussian:.2e} not 0 +- 1e-6")
    finish(6, failures,
           f"worst table deviation {worst:.4f} (tolerance 0.01), "
           f"m=0 delta {gaussian:.1e}")


def test_criterion_7_decoherence():
    failures = []
    # (a) characteristic times -- known honest failure: the minimum of
    # the evolved Wigner function stays strictly negative until the
    # universal 50%-loss point kt = ln(2)/2 ~ 0.3466 for every theta
    # (for m=1 the global minimum of the non-Gaussian factor is
    # -Nbar^2 |mu|^2 B/A, which only reaches zero when B does), so a
    # sign-change search cannot land on the quoted per-theta values;
    # those correspond to where the published minimum-value curves
    # become visually indistinguishable from zero.
    times = {}
    for theta, expected in [(math.pi / 5, 0.20), (math.pi / 4, 0.27),
                            (math.pi / 3, 0.30)]:
        kt_c = characteristic_time(CatalysisParams(z=1.0, theta=theta, m=1),
                                   nbar=0.0)
        times[expected] = kt_c
        if abs(kt_c - expected) > 0.02:
            failures.append(
                f"theta={theta:.3f}: kt_c={kt_c:.4f} != {expected} +- 0.02 "
                f"(sign change sits at ln(2)/2 = {0.5 * math.log(2):.4f})"
            )
    # (b) exact reduction at kt = 0
    p = CatalysisParams(z=1.0, theta=math.pi / 3, m=1)
    ch0 = ThermalChannel(kt=0.0, nbar=0.0)
    reduction = max(
        abs(decohered_wigner(p, ch0, beta) - wigner_value(p, beta))
        for beta in (0.3 - 0.2j, 0.9, -0.5 + 0.4j)
    )
    if reduction > 1e-10:
        failures.append(f"kt=0 reduction deviates by {reduction:.2e}")
    # (c) convolution-oracle agreement, including B < 0
    worst_conv = 0.0
    for kt, nbar in [(0.05, 0.0), (0.2, 0.0), (0.2, 1.0), (0.5, 0.0)]:
        ch = ThermalChannel(kt=kt, nbar=nbar)
        for beta in (0.2 + 0.1j, 0.6, -0.3 + 0.4j, 1.0 + 0.5j):
            diff = abs(decohered_wigner(p, ch, beta)
                       - thermal_convolution(p, ch, beta))
            worst_conv = max(worst_conv, diff)
            if diff > 1e-6:
                failures.append(
                    f"kt={kt}, nbar={nbar} (B={ch.B:+.3f}): "
                    f"convolution diff {diff:.2e}"
                )
    finish(7, failures,
           f"kt_c measured {[f'{v:.4f}' for v in times.values()]} vs "
           f"quoted [0.20, 0.27, 0.30]; kt=0 reduction {reduction:.1e}; "
           f"convolution worst {worst_conv:.1e}")


def test_criterion_8_property_suite():
    failures = []
    # Wigner grid normalization and the global bound on every emitted grid
    grid_cases = [
        (CatalysisParams(z=1.0, theta=math.pi / 5, m=1), None),
        (CatalysisParams(z=2.0, theta=math.pi / 3, m=3), None),
        (CatalysisParams(z=0.5 * np.exp(1j * math.pi / 7), theta=math.pi / 6, m=2), None),
        (CatalysisParams(z=1.0, theta=math.pi / 3, m=1),
         ThermalChannel(kt=0.2, nbar=0.0)),
    ]
    for params, channel in grid_cases:
        grid = wigner_grid(params, None, channel)
        if grid.norm_defect > 5e-3:
            failures.append(f"{params}: grid defect {grid.norm_defect:.2e}")
        bound = float(np.max(np.abs(grid.values)))
        if bound > 2.0 / math.pi + 1e-9:
            failures.append(f"{params}: |W| reaches {bound:.4f} > 2/pi")
    # photon-number distribution completeness
    for params in (CatalysisParams(z=1.0, theta=math.pi / 4, m=3),
                   CatalysisParams(z=2.0, theta=math.pi / 6, m=4)):
        vec = output_amplitudes(params)
        total = sum(pnd(params, n) for n in range(vec.n_trunc + 1))
        if abs(total - 1.0) > 1e-10:
            failures.append(f"{params}: pnd sums to {total}")
    # Heisenberg bound across the lattice
    for params in standard_lattice():
        v = quadrature_variances(params)
        if v.var_q * v.var_p < 0.25 - 1e-10:
            failures.append(f"{params}: uncertainty product {v.var_q * v.var_p}")
    # phase covariance of every scalar metric
    phi = 0.77
    for mag, theta, m in [(1.0, 0.8, 1), (2.0, math.pi / 5, 3)]:
        base = CatalysisParams(z=mag, theta=theta, m=m)
        rot = CatalysisParams(z=mag * np.exp(1j * phi), theta=theta, m=m)
        checks = {
            "Q": (mandel_q(base), mandel_q(rot)),
            "g2": (g2(base), g2(rot)),
            "s_opt": (s_opt(base), s_opt(rot)),
            "p_1": (pnd(base, 1), pnd(rot, 1)),
        }
        for name, (a, b) in checks.items():
            if abs(a - b) > 1e-10:
                failures.append(f"{name} not phase covariant: {a} vs {b}")
    db_a = optimal_squeezing(1.0, 1).db_best
    db_b = optimal_squeezing(np.exp(1j * phi), 1).db_best
    if abs(db_a - db_b) > 1e-10:
        failures.append(f"optimal squeezing not phase covariant: {db_a} vs {db_b}")
    # anti-normally-ordered rewrites agree with the primary definitions
    worst_audit = 0.0
    for params in standard_lattice():
        if abs(params.zbar) == 0.0:
            continue
        dq = abs(mandel_q(params) - mandel_q_antinormal(params))
        dg = abs(g2(params) - g2_antinormal(params))
        worst_audit = max(worst_audit,
                          dq / max(abs(mandel_q(params)), 1.0),
                          dg / max(abs(g2(params)), 1.0))
        if dq > 1e-10 * max(abs(mandel_q(params)), 1.0):
            failures.append(f"{params}: Mandel Q audit gap {dq:.2e}")
        if dg > 1e-10 * max(abs(g2(params)), 1.0):
            failures.append(f"{params}: g2 audit gap {dg:.2e}")
    finish(8, failures, f"identity-audit worst relative gap {worst_audit:.2e}")
