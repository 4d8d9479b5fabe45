"""Bit <-> intensity-waveform conversion: OOK and GMSK schemes.

Both schemes emit nonnegative intensity samples of the form
dc_bias + modulation_depth * m(t) with m(t) in [-1, 1]. For OOK m(t) is the
NRZ bit level; for GMSK m(t) is a constant-envelope FM waveform riding on a
subcarrier (a real baseband cos(phi) cannot carry the sign of the frequency
deviation, so an intensity channel needs the subcarrier to make the
frequency discriminator work).
"""

import enum
from dataclasses import dataclass

import numpy as np
from scipy.signal import hilbert


class ModemError(ValueError):
    """Raised for invalid modem configuration or undecodable input."""


class Scheme(enum.Enum):
    OOK = "OOK"
    GMSK = "GMSK"


class PhaseOffset(enum.Enum):
    IN_PHASE = "IN_PHASE"
    INVERTED = "INVERTED"


@dataclass(frozen=True)
class ModemConfig:
    scheme: Scheme
    symbol_rate: float
    samples_per_symbol: int = 4
    bits_per_symbol: int = 1
    gmsk_bt: float = 0.35
    gmsk_span: int = 4              # Gaussian pulse span in symbols
    gmsk_carrier_cycles: float = 1.0  # subcarrier cycles per symbol
    dc_bias: float = 1.0
    modulation_depth: float = 0.5

    def __post_init__(self):
        if self.symbol_rate <= 0:
            raise ModemError("symbol_rate must be positive")
        if self.samples_per_symbol < 2:
            raise ModemError("samples_per_symbol must be >= 2")
        if not (0 < self.modulation_depth <= 1):
            raise ModemError("modulation_depth must be in (0, 1]")
        if self.dc_bias < self.modulation_depth:
            raise ModemError("dc_bias must cover modulation_depth "
                             "(intensity must stay nonnegative)")
        if self.scheme is Scheme.GMSK:
            if self.samples_per_symbol < 4:
                raise ModemError("GMSK needs samples_per_symbol >= 4")
            # keep carrier + peak deviation below Nyquist
            if self.gmsk_carrier_cycles + 0.5 >= self.samples_per_symbol / 2:
                raise ModemError("GMSK subcarrier too high for sample rate")

    @property
    def sample_rate(self) -> float:
        return self.symbol_rate * self.samples_per_symbol


@dataclass
class SampleBlock:
    """A finite run of real intensity samples at a fixed sample rate."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=float)

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration_s(self) -> float:
        return len(self.samples) / self.sample_rate


def _gmsk_frequency_pulse(cfg: ModemConfig) -> np.ndarray:
    """Discrete frequency pulse: Gaussian-filtered rectangle, unit area."""
    sps = cfg.samples_per_symbol
    t = np.arange(-cfg.gmsk_span * sps / 2, cfg.gmsk_span * sps / 2 + 1) / sps
    k = np.sqrt(2 * np.pi / np.log(2)) * cfg.gmsk_bt
    gauss = k * np.exp(-2 * (np.pi * cfg.gmsk_bt * t) ** 2 / np.log(2))
    pulse = np.convolve(gauss, np.ones(sps))
    return pulse / pulse.sum()


def gmsk_data_phase(bits, cfg: ModemConfig) -> np.ndarray:
    """Full (untrimmed) data phase trajectory, pi/2 net shift per bit.

    Includes the filter tails, so an isolated bit accumulates exactly
    +-pi/2 in total. Used by modulate() after trimming to the symbol grid.
    """
    bits = np.asarray(bits, dtype=int)
    sps = cfg.samples_per_symbol
    nrz = 2.0 * bits - 1.0
    impulses = np.zeros(len(bits) * sps)
    impulses[::sps] = nrz
    pulse = _gmsk_frequency_pulse(cfg)
    freq = np.convolve(impulses, pulse)   # per-sample phase increments / (pi/2)
    return (np.pi / 2.0) * np.cumsum(freq)


def modulate(bits, cfg: ModemConfig,
             phase_offset: PhaseOffset = PhaseOffset.IN_PHASE) -> SampleBlock:
    """Map a bit sequence to intensity samples (samples_per_symbol per bit)."""
    bits = np.asarray(bits, dtype=int)
    if bits.size == 0:
        raise ModemError("bits must be nonempty")
    sps = cfg.samples_per_symbol
    if cfg.scheme is Scheme.OOK:
        levels = cfg.dc_bias + cfg.modulation_depth * (2.0 * bits - 1.0)
        m = np.repeat(2.0 * bits - 1.0, sps)
    else:
        phase = gmsk_data_phase(bits, cfg)
        # trim so each symbol's frequency mass is centered in its window
        pulse_len = len(_gmsk_frequency_pulse(cfg))
        delay = (pulse_len - sps) // 2
        phase = phase[delay:delay + len(bits) * sps]
        n = np.arange(len(phase))
        carrier = 2 * np.pi * cfg.gmsk_carrier_cycles / sps * n
        m = np.cos(carrier + phase)
    if phase_offset is PhaseOffset.INVERTED:
        m = -m
    samples = cfg.dc_bias + cfg.modulation_depth * m
    return SampleBlock(samples, cfg.sample_rate)


def demodulate(block: SampleBlock, cfg: ModemConfig,
               threshold: float | None = None) -> np.ndarray:
    """Recover bits from an intensity block.

    OOK: integrate-and-dump per symbol against a fixed `threshold` level, or
    the block mean when `threshold` is None (adaptive). GMSK: noncoherent
    frequency discrimination on the analytic signal; `threshold` is ignored.
    Returns exactly floor(len / samples_per_symbol) bits.
    """
    sps = cfg.samples_per_symbol
    x = np.asarray(block.samples, dtype=float)
    nsym = len(x) // sps
    if nsym < 1:
        raise ModemError("block shorter than one symbol")
    x = x[:nsym * sps]
    if cfg.scheme is Scheme.OOK:
        means = x.reshape(nsym, sps).mean(axis=1)
        level = float(np.mean(x)) if threshold is None else float(threshold)
        return (means > level).astype(int)
    return _demodulate_gmsk(x, cfg, nsym)


def _demodulate_gmsk(x: np.ndarray, cfg: ModemConfig, nsym: int) -> np.ndarray:
    sps = cfg.samples_per_symbol
    x = x - x.mean()
    n = len(x)
    # mirror-pad so the FFT hilbert edge ringing lands outside the data
    pad = min(8 * sps, n - 1)
    padded = np.concatenate([x[pad:0:-1], x, x[-2:-pad - 2:-1]])
    psi = np.unwrap(np.angle(hilbert(padded)))[pad:pad + n]
    psi = psi - 2 * np.pi * cfg.gmsk_carrier_cycles / sps * np.arange(n)
    if n >= 3:
        # the final sample's analytic-phase estimate is unreliable (the
        # mirror pad reverses the frequency there); extrapolate it locally
        psi[-1] = 2 * psi[-2] - psi[-3]
    ends = np.minimum(np.arange(1, nsym + 1) * sps, n - 1)
    starts = np.arange(nsym) * sps
    return (psi[ends] > psi[starts]).astype(int)
