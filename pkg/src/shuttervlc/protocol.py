"""Automated shutter control: Discovery/Identification state machine,
latency estimation and per-slot packet arithmetic.

Discovery scans the pixels one at a time (all others closed) and records
per-pixel SNR against a threshold; Identification re-opens each candidate
pixel, decodes, and keeps only pixels whose packet headers match a
registered transmitter ID. The controller loops Discovery after a failed
Identification and gives up after a retry budget.
"""

import enum
from dataclasses import dataclass, replace, field
from typing import Callable, Dict, List, Optional, Sequence

from .channel import PixelMask, received_snr_db
from .framing import IdLookupTable, TransmitterId, detect_packets


class ProtocolError(ValueError):
    """Raised when a step is applied in the wrong phase."""


class Phase(enum.Enum):
    INIT = "INIT"
    DISCOVERY = "DISCOVERY"
    IDENTIFICATION = "IDENTIFICATION"
    LOCKED = "LOCKED"
    RESET = "RESET"


@dataclass(frozen=True)
class ShutterControllerState:
    phase: Phase
    mask: PixelMask
    T_s: float
    snr_threshold_db: float
    id_table: IdLookupTable
    pixel_snr_db: Dict[int, float] = field(default_factory=dict)
    candidate_pixels: frozenset = frozenset()
    locked_pixels: frozenset = frozenset()

    @property
    def n_pixels(self) -> int:
        return len(self.mask)


def initial_state(n_pixels: int, T_s: float, snr_threshold_db: float,
                  id_table: IdLookupTable) -> ShutterControllerState:
    """INIT state with all pixels open, ready to enter Discovery."""
    return ShutterControllerState(
        phase=Phase.INIT,
        mask=PixelMask.all_open(n_pixels),
        T_s=T_s,
        snr_threshold_db=snr_threshold_db,
        id_table=id_table,
    )


def step_discovery(state: ShutterControllerState,
                   snr_probe: Callable[[int], float]) -> ShutterControllerState:
    """Scan every pixel through `snr_probe` (one T_s dwell each, that pixel
    open and all others closed). Pixels at or above the SNR threshold become
    candidates and are opened for Identification; if none qualify, all
    pixels close and the phase falls to RESET."""
    if state.phase is not Phase.DISCOVERY:
        raise ProtocolError(f"step_discovery in phase {state.phase.name}")
    n = state.n_pixels
    snrs = {p: float(snr_probe(p)) for p in range(n)}
    candidates = frozenset(p for p, s in snrs.items() if s >= state.snr_threshold_db)
    if candidates:
        return replace(state,
                       phase=Phase.IDENTIFICATION,
                       mask=PixelMask.open_set(n, candidates),
                       pixel_snr_db=snrs,
                       candidate_pixels=candidates)
    return replace(state,
                   phase=Phase.RESET,
                   mask=PixelMask.all_closed(n),
                   pixel_snr_db=snrs,
                   candidate_pixels=frozenset())


def step_identification(
        state: ShutterControllerState,
        decoded_detections: Callable[[int], Sequence[TransmitterId]],
) -> ShutterControllerState:
    """Check each candidate pixel's decoded headers against the ID table.

    Pixels with at least one registered detection lock in and stay open;
    with no match anywhere, all pixels close and the phase returns to
    DISCOVERY."""
    if state.phase is not Phase.IDENTIFICATION:
        raise ProtocolError(f"step_identification in phase {state.phase.name}")
    if not state.candidate_pixels:
        raise ProtocolError("identification with no candidate pixels")
    n = state.n_pixels
    locked = set()
    for p in sorted(state.candidate_pixels):
        for tid in decoded_detections(p):
            if state.id_table.lookup(tid.id_bits) is not None:
                locked.add(p)
                break
    if locked:
        return replace(state,
                       phase=Phase.LOCKED,
                       mask=PixelMask.open_set(n, locked),
                       locked_pixels=frozenset(locked))
    return replace(state,
                   phase=Phase.DISCOVERY,
                   mask=PixelMask.all_closed(n),
                   locked_pixels=frozenset())


@dataclass(frozen=True)
class LatencyModel:
    grid_pixels: int
    n_transmitters: int
    packet_bits: int
    bit_time: float     # seconds per bit
    T_s: float

    def __post_init__(self):
        if min(self.grid_pixels, self.n_transmitters, self.packet_bits) < 1 \
                or self.bit_time <= 0 or self.T_s <= 0:
            raise ProtocolError("latency model fields must be positive")


@dataclass(frozen=True)
class LatencyEstimate:
    step1_s: float
    step2_s: float
    total_s: float


def estimate_latency(model: LatencyModel) -> LatencyEstimate:
    """Step 1 scans every pixel for T_s; Step 2 decodes one packet per
    transmitter at the bit time."""
    step1 = model.grid_pixels * model.T_s
    step2 = model.n_transmitters * model.packet_bits * model.bit_time
    return LatencyEstimate(step1, step2, step1 + step2)


def packets_per_slot(symbol_rate: float, bits_per_symbol: int,
                     T_s: float, packet_bits: int) -> int:
    """Whole packets that fit in one dwell slot."""
    if min(symbol_rate, bits_per_symbol, T_s, packet_bits) <= 0:
        raise ProtocolError("packets_per_slot arguments must be positive")
    return int(symbol_rate * bits_per_symbol * T_s // packet_bits)


@dataclass
class ControllerResult:
    state: ShutterControllerState
    events: List[dict]
    converged: bool
    cycles_used: int


def run_controller(sim, T_s: float, snr_threshold_db: float,
                   id_table: IdLookupTable, corr_threshold: int = 11,
                   retry_budget: int = 3,
                   select_target: Optional[TransmitterId] = None) -> ControllerResult:
    """Drive the state machine against a link simulation.

    `sim` supplies the physical side: `n_pixels`, `sim_time_s`,
    `dwell(mask, duration_s) -> SampleBlock` (advancing its clock),
    `decode(block) -> bits` and `identification_window_s` (long enough to
    contain a whole packet at any alignment). Each Discovery scan takes one
    extra all-closed dwell as the noise reference for the SNR probes.

    With `select_target`, only the pixel carrying that ID may lock;
    detections of other registered IDs send the controller back to
    Discovery. Non-convergence after `retry_budget` full cycles is reported
    in the result, not raised.
    """
    n = sim.n_pixels
    state = initial_state(n, T_s, snr_threshold_db, id_table)
    events: List[dict] = []

    def log(event: str, **extra):
        rec = {"sim_time_s": round(sim.sim_time_s, 9),
               "event": event,
               "phase": state.phase.value,
               "mask": [int(b) for b in state.mask.open_pixels]}
        rec.update(extra)
        events.append(rec)

    log("init")
    cycles = 0
    for cycle in range(retry_budget):
        cycles = cycle + 1
        state = replace(state, phase=Phase.DISCOVERY)
        noise_ref = sim.dwell(PixelMask.all_closed(n), T_s)
        log("noise_reference_dwell")

        def probe(pixel: int) -> float:
            block = sim.dwell(PixelMask.single_open(n, pixel), T_s)
            snr = received_snr_db(block, noise_ref)
            log("discovery_dwell", pixel=pixel, pixel_snr_db=round(snr, 4))
            return snr

        state = step_discovery(state, probe)
        log("discovery_done",
            pixel_snr_db={p: round(s, 4) for p, s in state.pixel_snr_db.items()})
        if state.phase is Phase.RESET:
            log("reset")
            continue

        detections_by_pixel: Dict[int, List[TransmitterId]] = {}
        for p in sorted(state.candidate_pixels):
            block = sim.dwell(PixelMask.single_open(n, p), sim.identification_window_s)
            bits = sim.decode(block)
            dets = detect_packets(bits, id_table, corr_threshold)
            detections_by_pixel[p] = [
                TransmitterId(tuple(bits[d.offset:d.offset + 13]), d.label)
                for d in dets
            ]
            log("identification_dwell", pixel=p,
                detected_ids=sorted({d.label for d in dets}))
        state = step_identification(state, lambda p: detections_by_pixel[p])

        if state.phase is Phase.LOCKED and select_target is not None:
            matching = {
                p for p in state.locked_pixels
                if any(t.id_bits == select_target.id_bits
                       for t in detections_by_pixel[p])
            }
            if matching:
                state = replace(state,
                                mask=PixelMask.open_set(n, matching),
                                locked_pixels=frozenset(matching))
            else:
                state = replace(state, phase=Phase.DISCOVERY,
                                mask=PixelMask.all_closed(n),
                                locked_pixels=frozenset())
        if state.phase is Phase.LOCKED:
            log("locked", locked_pixels=sorted(state.locked_pixels))
            return ControllerResult(state, events, True, cycles)
        log("identification_failed")

    state = replace(state, phase=Phase.RESET, mask=PixelMask.all_closed(n))
    log("gave_up")
    return ControllerResult(state, events, False, cycles)
