"""Atom-optics delta-kicked rotor: split-step simulation and closed forms."""
from .errors import (AOKRError, ConfigurationError, DomainError, GridMismatchError,
                     NyquistOverflowError)
from .units import (DEFAULT_CONSTANTS, KickSchedule, PhysicalConstants, aom_offset_to_momentum,
                    effective_rabi, kbar_to_period, kick_strength, momentum_to_ladder,
                    period_to_kbar)
from .wavepacket import (MomentumDistribution, SpatialGrid, WavePacket, init_gaussian,
                         init_plane_wave, kinetic_energy, momentum_distribution, momentum_moment)
from .evolution import FloquetStepPlan, apply_free, apply_kick, build_plan, run_kicks
from .analysis import EnsembleSpec, ScanResult, energy_scan, ensemble_average, fit_orders

__version__ = "0.1.0"
