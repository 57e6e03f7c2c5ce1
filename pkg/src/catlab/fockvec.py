"""Truncated Fock-basis state vector shared by the analytic and
brute-force construction routes."""

from dataclasses import dataclass

import numpy as np


class TruncationError(RuntimeError):
    """Photon-number truncation too small for the requested state."""


@dataclass(frozen=True)
class FockVector:
    """Normalized amplitudes over |0>..|n_trunc> for a single mode.

    norm_defect records how far the raw (pre-normalization) vector was
    from unit norm: truncation leakage plus rounding.
    """

    amps: np.ndarray
    n_trunc: int
    norm_defect: float = 0.0

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        object.__setattr__(self, "amps", amps)
        if amps.shape != (self.n_trunc + 1,):
            raise ValueError(
                f"amps has shape {amps.shape}, expected ({self.n_trunc + 1},)"
            )

    @classmethod
    def from_raw(cls, raw):
        """Normalize a raw amplitude vector that should already be close
        to unit norm; the deviation is recorded as norm_defect."""
        raw = np.asarray(raw, dtype=complex)
        norm_sq = float(np.vdot(raw, raw).real)
        if norm_sq <= 0.0:
            raise ValueError("cannot normalize a zero vector")
        return cls(
            amps=raw / np.sqrt(norm_sq),
            n_trunc=raw.size - 1,
            norm_defect=abs(1.0 - norm_sq),
        )

    @property
    def probabilities(self):
        return np.abs(self.amps) ** 2

    def mean_photon(self):
        return float(np.sum(np.arange(self.n_trunc + 1) * self.probabilities))
