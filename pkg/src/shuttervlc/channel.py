"""Single-photodiode optical channel with a pixelated shutter in front.

The photodiode sums every intensity reaching it; each shutter pixel gates
the emitters (and ambient light) mapped to it with a factor of 1 when OPEN
or `closed_leakage` when CLOSED. AWGN and a hard saturation clip model the
amplifier front end.
"""

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .modem import SampleBlock


class ChannelError(ValueError):
    """Raised for inconsistent channel inputs."""


@dataclass(frozen=True)
class PixelMask:
    """OPEN/CLOSED state of every shutter pixel at an instant."""

    open_pixels: Tuple[bool, ...]

    def __post_init__(self):
        object.__setattr__(self, "open_pixels",
                           tuple(bool(b) for b in self.open_pixels))

    @classmethod
    def all_open(cls, n: int) -> "PixelMask":
        return cls((True,) * n)

    @classmethod
    def all_closed(cls, n: int) -> "PixelMask":
        return cls((False,) * n)

    @classmethod
    def single_open(cls, n: int, pixel: int) -> "PixelMask":
        return cls(tuple(i == pixel for i in range(n)))

    @classmethod
    def open_set(cls, n: int, pixels) -> "PixelMask":
        pixels = set(pixels)
        return cls(tuple(i in pixels for i in range(n)))

    def __len__(self) -> int:
        return len(self.open_pixels)

    @property
    def open_indices(self) -> Tuple[int, ...]:
        return tuple(i for i, b in enumerate(self.open_pixels) if b)


@dataclass(frozen=True)
class ChannelConfig:
    emitter_gain: Tuple[float, ...]
    emitter_pixel: Tuple[int, ...]
    ambient_dc: Tuple[float, ...]       # per pixel
    noise_sigma: float = 0.0
    closed_leakage: float = 0.0
    saturation_level: float = float("inf")
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "emitter_gain", tuple(float(g) for g in self.emitter_gain))
        object.__setattr__(self, "emitter_pixel", tuple(int(p) for p in self.emitter_pixel))
        object.__setattr__(self, "ambient_dc", tuple(float(a) for a in self.ambient_dc))
        if any(g < 0 for g in self.emitter_gain):
            raise ChannelError("gains must be nonnegative")
        if not (0 <= self.closed_leakage < 1):
            raise ChannelError("closed_leakage must be in [0, 1)")
        if self.noise_sigma < 0:
            raise ChannelError("noise_sigma must be nonnegative")
        if not self.saturation_level > 0:
            raise ChannelError("saturation_level must be positive")
        if len(self.emitter_gain) != len(self.emitter_pixel):
            raise ChannelError("one gain per emitter required")


def receive(emitter_blocks: Sequence[SampleBlock], mask: PixelMask,
            cfg: ChannelConfig, rng: np.random.Generator | None = None) -> SampleBlock:
    """Superpose gated emitter waveforms, ambient DC and AWGN; clip to
    [0, saturation_level].

    All emitter blocks must share one sample rate and length. Noise comes
    from `rng` if given (lets a simulation thread one generator through
    many calls), else from a fresh generator seeded with cfg.rng_seed.
    """
    if len(emitter_blocks) != len(cfg.emitter_gain):
        raise ChannelError("one block per configured emitter required")
    if len(mask) != len(cfg.ambient_dc):
        raise ChannelError("mask length must match pixel count")
    if any(not (0 <= p < len(mask)) for p in cfg.emitter_pixel):
        raise ChannelError("emitter mapped to an invalid pixel")
    rates = {b.sample_rate for b in emitter_blocks}
    lengths = {len(b) for b in emitter_blocks}
    if len(rates) > 1 or len(lengths) > 1:
        raise ChannelError("emitter blocks must share sample rate and length")

    def gate(pixel: int) -> float:
        return 1.0 if mask.open_pixels[pixel] else cfg.closed_leakage

    n = lengths.pop() if lengths else 0
    rate = rates.pop() if rates else 0.0
    out = np.zeros(n)
    for block, gain, pixel in zip(emitter_blocks, cfg.emitter_gain, cfg.emitter_pixel):
        out += gain * gate(pixel) * block.samples
    out += sum(a * gate(p) for p, a in enumerate(cfg.ambient_dc))
    if cfg.noise_sigma > 0:
        if rng is None:
            rng = np.random.default_rng(cfg.rng_seed)
        out += rng.normal(0.0, cfg.noise_sigma, size=n)
    np.clip(out, 0.0, cfg.saturation_level, out=out)
    return SampleBlock(out, rate)


def received_snr_db(signal_only: SampleBlock, noise_only: SampleBlock) -> float:
    """AC-coupled power ratio in dB: 10*log10(var(signal)/var(noise)).

    Returns +inf when the noise block has zero AC power.
    """
    if len(signal_only) == 0 or len(noise_only) == 0:
        raise ChannelError("SNR needs nonempty blocks")
    p_sig = float(np.var(signal_only.samples))
    p_noise = float(np.var(noise_only.samples))
    if p_noise == 0.0:
        return float("inf")
    if p_sig == 0.0:
        return float("-inf")
    return float(10.0 * np.log10(p_sig / p_noise))
