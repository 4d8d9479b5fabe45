"""BER, PER, goodput and report serialization."""

import numpy as np
import pytest

from shuttervlc.metrics import (LinkReport, MetricsError, bit_error_rate,
                                goodput, packet_error_rate)


def test_bit_error_rate_hamming():
    assert bit_error_rate([0, 1, 0, 1], [0, 1, 0, 1]) == 0.0
    assert bit_error_rate([0, 1, 0, 1], [1, 1, 0, 0]) == 0.5
    assert bit_error_rate([1], [0]) == 1.0


def test_bit_error_rate_random_oracle():
    rng = np.random.default_rng(4)
    for _ in range(50):
        n = int(rng.integers(1, 5000))
        tx = rng.integers(0, 2, n)
        flips = rng.random(n) < 0.1
        rx = tx ^ flips.astype(int)
        assert bit_error_rate(tx, rx) == pytest.approx(flips.sum() / n)


def test_bit_error_rate_validation():
    with pytest.raises(MetricsError):
        bit_error_rate([0, 1], [0])
    with pytest.raises(MetricsError):
        bit_error_rate([], [])


def test_packet_error_rate_examples():
    # 449 of 477 expected packets detected -> 5.87 %
    assert packet_error_rate(449, 477) == pytest.approx(5.87, abs=0.005)
    assert packet_error_rate(477, 477) == 0.0
    assert packet_error_rate(0, 10) == 100.0
    # detections beyond the expectation clamp at zero
    assert packet_error_rate(12, 10) == 0.0
    assert packet_error_rate([object()] * 3, 4) == 25.0
    with pytest.raises(MetricsError):
        packet_error_rate(1, 0)


def test_goodput_formula():
    assert goodput(0.0, 1.0, 1e6, 1) == 1e6
    assert goodput(0.015, 1 / 3, 2e6, 2) == pytest.approx(1.313333e6, rel=1e-6)
    assert goodput(1.0, 1.0, 1e6, 1) == 0.0
    with pytest.raises(MetricsError):
        goodput(1.5, 1.0, 1e6, 1)
    with pytest.raises(MetricsError):
        goodput(0.1, 0.0, 1e6, 1)


def test_link_report_dict_roundtrip():
    rep = LinkReport(ber=1e-3, per_percent=5.87, snr_db=19.97,
                     goodput_bps=1.3e6, bits_compared=10000,
                     packets_expected=477, packets_detected_valid=449)
    assert LinkReport.from_dict(rep.to_dict()) == rep
