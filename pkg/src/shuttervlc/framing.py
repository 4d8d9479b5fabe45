"""Packetization with Barker-code transmitter IDs and correlation detection.

Packets are fixed 2096-bit frames: a 13-bit header identifying the
transmitter followed by a 2083-bit payload. Detection slides each
registered header over a decoded bit stream and thresholds the bipolar
correlation score (agreements minus disagreements over the 13 bits).
"""

import enum
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np

HEADER_BITS = 13
PACKET_BITS = 2096
PAYLOAD_BITS = PACKET_BITS - HEADER_BITS

# canonical Barker codes, bipolar +1/-1 mapped to bits 1/0
BARKER_13 = (1, 1, 1, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1)
BARKER_11 = (1, 1, 1, 0, 0, 0, 1, 0, 0, 1, 0)


class FramingError(ValueError):
    """Raised for malformed packets or an unusable lookup table."""


class IdKind(enum.Enum):
    BARKER13 = "BARKER13"
    BARKER11_PADDED = "BARKER11_PADDED"


@dataclass(frozen=True)
class TransmitterId:
    id_bits: Tuple[int, ...]
    label: int

    def __post_init__(self):
        bits = tuple(int(b) for b in self.id_bits)
        object.__setattr__(self, "id_bits", bits)
        if len(bits) != HEADER_BITS or any(b not in (0, 1) for b in bits):
            raise FramingError(f"header must be exactly {HEADER_BITS} bits")


def make_id(kind: IdKind, label: int = 1) -> TransmitterId:
    """Build a header ID: the 13-chip Barker code, or the 11-chip code
    padded with '11' to 13 bits."""
    if kind is IdKind.BARKER13:
        return TransmitterId(BARKER_13, label)
    return TransmitterId(BARKER_11 + (1, 1), label)


@dataclass(frozen=True)
class Packet:
    header: TransmitterId
    payload: Tuple[int, ...]

    def __post_init__(self):
        payload = tuple(int(b) for b in self.payload)
        object.__setattr__(self, "payload", payload)
        if len(payload) != PAYLOAD_BITS:
            raise FramingError(f"payload must be exactly {PAYLOAD_BITS} bits")

    @property
    def bits(self) -> np.ndarray:
        return np.asarray(self.header.id_bits + self.payload, dtype=int)


def frame(payload: Sequence[int], tid: TransmitterId) -> Packet:
    """Prepend the transmitter header to a 2083-bit payload."""
    return Packet(tid, tuple(int(b) for b in payload))


def deframe(bits: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Split a 2096-bit frame back into (header_bits, payload)."""
    bits = tuple(int(b) for b in bits)
    if len(bits) != PACKET_BITS:
        raise FramingError(f"frame must be exactly {PACKET_BITS} bits")
    return bits[:HEADER_BITS], bits[HEADER_BITS:]


class IdLookupTable:
    """Registered transmitter IDs, fixed before the link runs."""

    def __init__(self, ids: Sequence[TransmitterId] = ()):
        self._entries: Dict[Tuple[int, ...], int] = {}
        for tid in ids:
            self.register(tid)

    def register(self, tid: TransmitterId) -> None:
        if tid.id_bits in self._entries:
            raise FramingError("duplicate id_bits in lookup table")
        self._entries[tid.id_bits] = tid.label

    def lookup(self, bits: Sequence[int]) -> int | None:
        return self._entries.get(tuple(int(b) for b in bits))

    @property
    def ids(self) -> List[TransmitterId]:
        return [TransmitterId(b, lab) for b, lab in self._entries.items()]

    def __len__(self) -> int:
        return len(self._entries)


@dataclass(frozen=True)
class Detection:
    offset: int
    label: int
    payload: Tuple[int, ...]
    score: int


def correlation_scores(bits: np.ndarray, id_bits: Sequence[int]) -> np.ndarray:
    """Bipolar sliding correlation of a header over a bit stream."""
    bip = 2.0 * np.asarray(bits, dtype=float) - 1.0
    ref = 2.0 * np.asarray(id_bits, dtype=float) - 1.0
    if len(bip) < len(ref):
        return np.zeros(0)
    return np.round(np.correlate(bip, ref, mode="valid")).astype(int)


def detect_packets(bits: Sequence[int], table: IdLookupTable,
                   corr_threshold: int = 11) -> List[Detection]:
    """Find packets in a decoded bit stream by header correlation.

    Packets are fixed-length and back-to-back, so all true headers share
    one offset modulo the packet length. Header-shaped patterns also occur
    inside random payload, so instead of taking matches greedily the
    detector picks the packet-grid alignment with the most above-threshold
    hits (ties: higher total score, then lower offset) and emits detections
    along that lattice; at each hit the highest-scoring registered ID wins.
    Only offsets where the complete 2096-bit packet fits are reported.
    """
    if len(table) == 0:
        raise FramingError("empty lookup table")
    if not (1 <= corr_threshold <= HEADER_BITS):
        raise FramingError("corr_threshold must be in [1, 13]")
    bits = np.asarray(bits, dtype=int)
    if len(bits) < PACKET_BITS:
        return []
    ids = table.ids
    scores = np.stack([correlation_scores(bits, tid.id_bits) for tid in ids])
    last = len(bits) - PACKET_BITS
    best_id = np.argmax(scores[:, :last + 1], axis=0)
    best_score = scores[best_id, np.arange(last + 1)]
    hits = np.nonzero(best_score >= corr_threshold)[0]
    if hits.size == 0:
        return []
    residues = hits % PACKET_BITS
    counts: dict = {}
    for off, res in zip(hits, residues):
        cnt, tot = counts.get(res, (0, 0))
        counts[res] = (cnt + 1, tot + int(best_score[off]))
    lattice = min(counts, key=lambda r: (-counts[r][0], -counts[r][1], r))
    detections: List[Detection] = []
    for off in hits[residues == lattice]:
        tid = ids[int(best_id[off])]
        payload = tuple(int(b) for b in bits[off + HEADER_BITS:off + PACKET_BITS])
        detections.append(Detection(int(off), tid.label, payload,
                                    int(best_score[off])))
    return detections
