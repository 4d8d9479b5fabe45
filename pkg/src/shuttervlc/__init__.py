"""Link-level simulator and control protocol for multiple-access VLC on a
single photodiode behind a pixelated LCD shutter."""

from .channel import ChannelConfig, PixelMask, receive, received_snr_db
from .framing import (BARKER_11, BARKER_13, Detection, IdKind, IdLookupTable,
                      Packet, TransmitterId, deframe, detect_packets, frame,
                      make_id)
from .geometry import (EmitterPlacement, MappingResult, OpticalSetup,
                       default_placement, map_emitters_to_pixels, min_angle,
                       min_separation)
from .metrics import (LinkReport, bit_error_rate, goodput, packet_error_rate,
                      snr_from_trace)
from .modem import (ModemConfig, PhaseOffset, SampleBlock, Scheme, demodulate,
                    modulate)
from .protocol import (ControllerResult, LatencyEstimate, LatencyModel, Phase,
                       ShutterControllerState, estimate_latency, initial_state,
                       packets_per_slot, run_controller, step_discovery,
                       step_identification)
from .scenario import (Scenario, TraceRecord, bundled_scenario,
                       bundled_scenario_names, load_scenario, replay_trace,
                       run_scenario, scenario_from_dict)
from .tables import TABLE_NAMES, reproduce_table

__version__ = "0.1.0"
