"""Physical constants and conversions between lab and simulation units.

Conventions used throughout the package:

* single-photon recoil ``p_rec = hbar k_L`` is the momentum unit, and
  ``E_rec = hbar**2 k_L**2 / 2m`` the energy unit of every reported energy;
* quasimomentum ``beta`` is measured in two-photon units ``2 hbar k_L``;
* the effective Planck constant is ``kbar = 8 omega_rec T`` so that the
  Talbot time gives ``kbar = 4 pi``.
"""
import math
from dataclasses import dataclass, field

from scipy.constants import hbar

from .errors import ConfigurationError, DomainError

RB87_MASS = 1.44316e-25  # kg
D2_WAVELENGTH = 780e-9  # m


@dataclass(frozen=True)
class PhysicalConstants:
    wavelength: float = D2_WAVELENGTH
    atom_mass: float = RB87_MASS
    k_L: float = field(init=False)
    omega_rec: float = field(init=False)
    p_rec: float = field(init=False)
    E_rec: float = field(init=False)
    T_talbot: float = field(init=False)

    def __post_init__(self):
        if not (self.wavelength > 0 and math.isfinite(self.wavelength)):
            raise ConfigurationError("must be a positive length", "wavelength")
        if not (self.atom_mass > 0 and math.isfinite(self.atom_mass)):
            raise ConfigurationError("must be a positive mass", "atom_mass")
        k_L = 2.0 * math.pi / self.wavelength
        omega_rec = hbar * k_L**2 / (2.0 * self.atom_mass)
        object.__setattr__(self, "k_L", k_L)
        object.__setattr__(self, "omega_rec", omega_rec)
        object.__setattr__(self, "p_rec", hbar * k_L)
        object.__setattr__(self, "E_rec", hbar * omega_rec)
        object.__setattr__(self, "T_talbot", math.pi / (2.0 * omega_rec))

    @property
    def f_rec(self):
        """Recoil frequency in Hz."""
        return self.omega_rec / (2.0 * math.pi)


DEFAULT_CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class KickSchedule:
    """Parameters of one kick sequence.

    The initial momentum is ``2 * (ladder_offset + beta)`` recoils; the
    kicking potential never changes ``beta``.
    """

    phi_d: float
    period_T: float
    num_kicks: int
    beta: float = 0.0
    pulse_width_tau: float = 0.0
    ladder_offset: int = 0
    constants: PhysicalConstants = DEFAULT_CONSTANTS

    def __post_init__(self):
        if not (math.isfinite(self.phi_d) and self.phi_d >= 0):
            raise ConfigurationError("kick strength must be finite and >= 0", "phi_d")
        if not (math.isfinite(self.period_T) and self.period_T > 0):
            raise ConfigurationError("kick period must be positive", "period_T")
        if int(self.num_kicks) != self.num_kicks or self.num_kicks < 0:
            raise ConfigurationError("number of kicks must be a non-negative integer", "num_kicks")
        if not (0.0 <= self.beta < 1.0):
            raise ConfigurationError("quasimomentum must lie in [0, 1)", "beta")
        if not (0.0 <= self.pulse_width_tau < self.period_T):
            raise ConfigurationError("pulse width must satisfy 0 <= tau < T", "pulse_width_tau")
        if int(self.ladder_offset) != self.ladder_offset:
            raise ConfigurationError("ladder offset must be an integer", "ladder_offset")
        object.__setattr__(self, "num_kicks", int(self.num_kicks))
        object.__setattr__(self, "ladder_offset", int(self.ladder_offset))

    @property
    def kbar(self):
        return period_to_kbar(self.period_T, self.constants)

    @property
    def kappa(self):
        """Classical stochasticity parameter, ``phi_d * kbar``."""
        return self.phi_d * self.kbar

    @property
    def initial_momentum(self):
        """Initial momentum in units of p_rec."""
        return 2.0 * (self.ladder_offset + self.beta)

    @classmethod
    def from_momentum(cls, phi_d, period_T, num_kicks, p_i, **kw):
        """Build a schedule whose initial momentum is ``p_i`` recoils."""
        offset, beta = momentum_to_ladder(p_i)
        return cls(phi_d, period_T, num_kicks, beta=beta, ladder_offset=offset, **kw)


def effective_rabi(rabi, detuning):
    """Two-photon effective Rabi frequency ``rabi**2 / detuning`` (signed)."""
    if detuning == 0:
        raise DomainError("detuning must be non-zero")
    return rabi * rabi / detuning


def kick_strength(effective_rabi, tau):
    """Pulse area of a square pulse of length ``tau``."""
    if tau < 0:
        raise DomainError("pulse length must be >= 0")
    return effective_rabi * tau


def aom_offset_to_momentum(delta_omega, constants=DEFAULT_CONSTANTS):
    """Initial momentum (p_rec units) imparted by a moving lattice.

    ``delta_omega`` is the angular frequency difference between the two
    lattice beams.
    """
    return delta_omega / (4.0 * constants.omega_rec)


def period_to_kbar(period_T, constants=DEFAULT_CONSTANTS):
    if not period_T > 0:
        raise DomainError("kick period must be positive")
    return 8.0 * constants.omega_rec * period_T


def kbar_to_period(kbar, constants=DEFAULT_CONSTANTS):
    if not kbar > 0:
        raise DomainError("kbar must be positive")
    return kbar / (8.0 * constants.omega_rec)


def momentum_to_ladder(p_i):
    """Split a momentum in p_rec units into ``(ladder_offset, beta)``.

    ``p_i / 2 == ladder_offset + beta`` with ``0 <= beta < 1``.
    """
    half = p_i / 2.0
    offset = math.floor(half)
    beta = half - offset
    if beta >= 1.0:  # rounding of tiny negative inputs
        offset += 1
        beta = 0.0
    return int(offset), beta
