"""Shutter-gated single-photodiode channel."""

import numpy as np
import pytest

from shuttervlc.channel import (ChannelConfig, ChannelError, PixelMask,
                                receive, received_snr_db)
from shuttervlc.modem import SampleBlock


def _blocks(*arrays, rate=1000.0):
    return [SampleBlock(np.asarray(a, dtype=float), rate) for a in arrays]


def test_mask_constructors():
    assert PixelMask.all_open(3).open_pixels == (True, True, True)
    assert PixelMask.all_closed(2).open_pixels == (False, False)
    assert PixelMask.single_open(4, 2).open_indices == (2,)
    assert PixelMask.open_set(4, [0, 3]).open_indices == (0, 3)
    assert len(PixelMask.all_open(5)) == 5


def test_receive_sums_open_pixels():
    cfg = ChannelConfig(emitter_gain=(1.0, 2.0), emitter_pixel=(0, 1),
                        ambient_dc=(0.0, 0.0))
    blocks = _blocks([1.0, 1.0], [0.5, 0.5])
    out = receive(blocks, PixelMask.all_open(2), cfg)
    np.testing.assert_allclose(out.samples, [2.0, 2.0])
    assert out.sample_rate == 1000.0


def test_closed_pixel_gates_with_leakage():
    cfg = ChannelConfig(emitter_gain=(1.0, 1.0), emitter_pixel=(0, 1),
                        ambient_dc=(0.0, 0.0), closed_leakage=0.1)
    blocks = _blocks([4.0], [2.0])
    out = receive(blocks, PixelMask.single_open(2, 0), cfg)
    np.testing.assert_allclose(out.samples, [4.0 + 0.2])
    out = receive(blocks, PixelMask.all_closed(2), cfg)
    np.testing.assert_allclose(out.samples, [0.6])


def test_ambient_dc_follows_its_pixel_gate():
    cfg = ChannelConfig(emitter_gain=(), emitter_pixel=(),
                        ambient_dc=(3.0, 5.0))
    out = receive([], PixelMask.single_open(2, 1), cfg)
    assert out.samples.size == 0   # no emitter blocks -> zero-length output
    cfg2 = ChannelConfig(emitter_gain=(1.0,), emitter_pixel=(0,),
                         ambient_dc=(3.0, 5.0))
    out = receive(_blocks([0.0, 0.0]), PixelMask.single_open(2, 1), cfg2)
    np.testing.assert_allclose(out.samples, [5.0, 5.0])


def test_saturation_clips_and_floor_at_zero():
    cfg = ChannelConfig(emitter_gain=(1.0,), emitter_pixel=(0,),
                        ambient_dc=(0.0,), saturation_level=2.0)
    out = receive(_blocks([-1.0, 1.0, 5.0]), PixelMask.all_open(1), cfg)
    np.testing.assert_allclose(out.samples, [0.0, 1.0, 2.0])


def test_noise_is_deterministic_per_seed():
    cfg = ChannelConfig(emitter_gain=(1.0,), emitter_pixel=(0,),
                        ambient_dc=(0.0,), noise_sigma=0.5, rng_seed=11)
    blocks = _blocks(np.ones(256))
    a = receive(blocks, PixelMask.all_open(1), cfg)
    b = receive(blocks, PixelMask.all_open(1), cfg)
    np.testing.assert_array_equal(a.samples, b.samples)
    # an explicit generator advances across calls instead
    rng = np.random.default_rng(11)
    c = receive(blocks, PixelMask.all_open(1), cfg, rng=rng)
    d = receive(blocks, PixelMask.all_open(1), cfg, rng=rng)
    assert not np.array_equal(c.samples, d.samples)


def test_receive_validation():
    cfg = ChannelConfig(emitter_gain=(1.0,), emitter_pixel=(0,),
                        ambient_dc=(0.0,))
    with pytest.raises(ChannelError):
        receive([], PixelMask.all_open(1), cfg)          # missing block
    with pytest.raises(ChannelError):
        receive(_blocks([1.0]), PixelMask.all_open(2), cfg)  # mask mismatch
    bad = _blocks([1.0], [1.0])
    bad[1].sample_rate = 999.0
    cfg2 = ChannelConfig(emitter_gain=(1.0, 1.0), emitter_pixel=(0, 0),
                         ambient_dc=(0.0,))
    with pytest.raises(ChannelError):
        receive(bad, PixelMask.all_open(1), cfg2)
    with pytest.raises(ChannelError):
        ChannelConfig(emitter_gain=(-1.0,), emitter_pixel=(0,),
                      ambient_dc=(0.0,))
    with pytest.raises(ChannelError):
        ChannelConfig(emitter_gain=(1.0,), emitter_pixel=(0,),
                      ambient_dc=(0.0,), closed_leakage=1.0)


def test_snr_variance_ratio():
    rng = np.random.default_rng(0)
    sig = SampleBlock(np.sin(np.linspace(0, 200 * np.pi, 20000)), 1000.0)
    noise = SampleBlock(rng.normal(0, 0.1, 20000), 1000.0)
    snr = received_snr_db(sig, noise)
    expected = 10 * np.log10(np.var(sig.samples) / np.var(noise.samples))
    assert snr == pytest.approx(expected, abs=1e-9)
    assert 16 < snr < 18   # ~0.5/0.01 -> 17 dB


def test_snr_sentinels():
    flat = SampleBlock(np.ones(100), 1000.0)
    wiggly = SampleBlock(np.array([0.0, 1.0] * 50), 1000.0)
    assert received_snr_db(wiggly, flat) == float("inf")
    assert received_snr_db(flat, wiggly) == float("-inf")
    with pytest.raises(ChannelError):
        received_snr_db(SampleBlock(np.zeros(0), 1.0), flat)


def test_snr_monotone_in_noise_power():
    rng = np.random.default_rng(8)
    sig = SampleBlock(rng.normal(0, 1.0, 50000), 1000.0)
    snrs = [received_snr_db(sig, SampleBlock(rng.normal(0, s, 50000), 1000.0))
            for s in (0.1, 0.2, 0.4, 0.8)]
    assert snrs == sorted(snrs, reverse=True)
