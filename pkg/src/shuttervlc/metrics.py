"""Link quality metrics: BER, PER, SNR and goodput."""

from dataclasses import dataclass, asdict
from typing import Sequence

import numpy as np

from .channel import received_snr_db
from .modem import SampleBlock


class MetricsError(ValueError):
    """Raised for inconsistent metric inputs."""


@dataclass
class LinkReport:
    ber: float
    per_percent: float
    snr_db: float
    goodput_bps: float
    bits_compared: int
    packets_expected: int
    packets_detected_valid: int

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "LinkReport":
        return cls(**d)


def bit_error_rate(tx: Sequence[int], rx: Sequence[int]) -> float:
    """Hamming distance over length; inputs must be aligned and equal-length."""
    tx = np.asarray(tx, dtype=int)
    rx = np.asarray(rx, dtype=int)
    if tx.shape != rx.shape:
        raise MetricsError("tx/rx length mismatch")
    if tx.size == 0:
        raise MetricsError("empty bit streams")
    return float(np.mean(tx != rx))


def packet_error_rate(detections, expected: int) -> float:
    """Percentage of expected packets not validly detected.

    `detections` is either a list of valid detections or their count.
    A packet counts as valid by header detection alone; payload bit errors
    do not invalidate it.
    """
    if expected <= 0:
        raise MetricsError("expected packet count must be positive")
    valid = detections if isinstance(detections, int) else len(detections)
    per = 100.0 * (1.0 - valid / expected)
    return float(min(max(per, 0.0), 100.0))


def goodput(ber: float, code_rate: float, symbol_rate: float,
            bits_per_symbol: float) -> float:
    """(1 - BER) * code_rate * symbol_rate * bits_per_symbol, in bits/s."""
    if not (0.0 <= ber <= 1.0):
        raise MetricsError("ber must be in [0, 1]")
    if not (0.0 < code_rate <= 1.0):
        raise MetricsError("code_rate must be in (0, 1]")
    return (1.0 - ber) * code_rate * symbol_rate * bits_per_symbol


def snr_from_trace(signal_dwell: SampleBlock, noise_dwell: SampleBlock) -> float:
    """SNR of a (signal dwell, noise dwell) trace pair, in dB."""
    return received_snr_db(signal_dwell, noise_dwell)
