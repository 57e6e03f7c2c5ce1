"""Numerical laboratory for coherent states transformed by multiphoton
catalysis at an unbalanced beam splitter: state construction, photon
statistics, quadrature squeezing, Wigner-function negativity, and
thermal-channel decoherence, with an independent truncated-Fock
brute-force oracle for cross-validation."""

from .catalysis import (
    CatalysisParams,
    MomentTable,
    NormalizationResult,
    default_n_max,
    moment_table,
    moments,
    normalization,
    output_amplitudes,
)
from .fock_oracle import (
    TwoModeOperator,
    beam_splitter,
    catalyze,
    coherent_amplitudes,
    oracle_moment,
    oracle_wigner,
)
from .fockvec import FockVector, TruncationError
from .metrics import (
    DegenerateStateError,
    QuadratureVariances,
    SqueezeOptimum,
    classify_g2,
    g2,
    g2_antinormal,
    mandel_q,
    mandel_q_antinormal,
    mean_photon,
    optimal_squeezing,
    pnd,
    quadrature_variances,
    s_opt,
)
from .polynomials import ORDER_CAP, OrderCapError, hermite2, laguerre
from .sweep import Extremum, ScanResult, ScanSpec, find_peak, golden_section_min, scan
from .wigner import (
    ConvergenceError,
    GridDomainError,
    GridSpec,
    ThermalChannel,
    WignerGrid,
    characteristic_time,
    decohered_wigner,
    default_grid_spec,
    min_wigner,
    negative_volume,
    wigner_grid,
    wigner_value,
)

__version__ = "0.1.0"
