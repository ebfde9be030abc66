"""Wave packets on a periodic position grid and their momentum observables.

Momenta are reported in units of the single-photon recoil ``p_rec``.  The
position-to-momentum transform is the unitary *inverse* DFT, so a packet
carrying the plane-wave factor ``exp(-i k_i x)`` sits at momentum
``+hbar k_i``.
"""
import csv
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.fft

from . import _kernels
from .errors import ConfigurationError, DomainError
from .units import DEFAULT_CONSTANTS, PhysicalConstants, momentum_to_ladder

DEFAULT_NUM_POINTS = 2**16
DEFAULT_NUM_PERIODS = 256


@dataclass(frozen=True, eq=False)
class SpatialGrid:
    """Uniform periodic grid spanning ``num_periods`` standing-wave periods.

    The standing-wave (grating) period is ``wavelength / 2``, so the momentum
    bins are spaced by ``2 / num_periods`` recoils and every even multiple of
    ``p_rec`` falls exactly on a bin.
    """

    num_points: int = DEFAULT_NUM_POINTS
    num_periods: int = DEFAULT_NUM_PERIODS
    constants: PhysicalConstants = DEFAULT_CONSTANTS
    x: np.ndarray = field(init=False, repr=False)
    p: np.ndarray = field(init=False, repr=False)
    high_p: np.ndarray = field(init=False, repr=False)
    _p_sorted: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        n, m = self.num_points, self.num_periods
        if int(n) != n or n < 4 or (int(n) & (int(n) - 1)):
            raise ConfigurationError("must be a power of two >= 4", "num_points")
        if int(m) != m or m < 1:
            raise ConfigurationError("must be a positive integer", "num_periods")
        if n < 4 * m:
            raise ConfigurationError("need at least 4 points per grating period", "num_points")
        x = (np.arange(n) - n // 2) * self.dx
        # DFT frequencies in p_rec units; k_m / k_L = m * 2 / num_periods
        p = scipy.fft.fftfreq(n, d=1.0 / n) * (2.0 / m)
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        ps = scipy.fft.fftshift(p)
        ps.setflags(write=False)
        object.__setattr__(self, "_p_sorted", ps)
        # bins beyond half the Nyquist momentum
        object.__setattr__(self, "high_p", np.flatnonzero(np.abs(p) > 0.5 * self.p_max))

    @property
    def length(self):
        return self.num_periods * self.constants.wavelength / 2.0

    @property
    def dx(self):
        return self.length / self.num_points

    @property
    def dp(self):
        """Momentum bin width in p_rec."""
        return 2.0 / self.num_periods

    @property
    def p_max(self):
        """Nyquist momentum in p_rec."""
        return self.num_points / self.num_periods

    def p_sorted(self):
        """Momentum bins in ascending order (read-only)."""
        return self._p_sorted

    def key(self):
        return (int(self.num_points), int(self.num_periods), self.constants)

    def same_as(self, other):
        return self is other or self.key() == other.key()

    def on_grid(self, p_i, tol=1e-9):
        """True when ``p_i`` (p_rec units) coincides with a momentum bin."""
        r = p_i / self.dp
        return abs(r - round(r)) < tol

    def snap(self, p_i):
        """Nearest momentum bin to ``p_i``."""
        return round(p_i / self.dp) * self.dp


@dataclass(frozen=True, eq=False)
class WavePacket:
    """State on a grid; ``amplitudes`` satisfy ``sum |psi|^2 dx == 1``."""

    grid: SpatialGrid
    amplitudes: np.ndarray
    quasimomentum_tag: float = 0.0

    def norm(self):
        return float(np.sum(_kernels.abs2(self.amplitudes)) * self.grid.dx)

    def momentum_amplitudes(self):
        """Probability amplitudes per momentum bin, in DFT order."""
        return scipy.fft.ifft(self.amplitudes, norm="ortho") * math.sqrt(self.grid.dx)

    def copy(self):
        return WavePacket(self.grid, self.amplitudes.copy(), self.quasimomentum_tag)


def _normalized(grid, psi):
    psi = np.ascontiguousarray(psi, dtype=np.complex128)
    psi /= math.sqrt(float(np.sum(_kernels.abs2(psi))) * grid.dx)
    return psi


def init_gaussian(grid, sigma_w, k_i=0.0):
    """Gaussian packet ``exp(-x^2 / 2 sigma_w^2) exp(-i k_i x)``, unit norm.

    ``sigma_w`` is a length in metres and ``k_i`` a wavenumber in rad/m.  The
    width must cover at least two grating periods and stay below an eighth
    of the box so the tails do not wrap around.
    """
    period = grid.constants.wavelength / 2.0
    if not (sigma_w >= 2.0 * period * (1 - 1e-12)):
        raise ConfigurationError("packet narrower than two grating periods", "sigma_w")
    if not (sigma_w <= grid.length / 8.0 * (1 + 1e-12)):
        raise ConfigurationError("packet wider than L/8 would wrap around the box", "sigma_w")
    x = grid.x
    psi = np.exp(-(x * x) / (2.0 * sigma_w**2) - 1j * k_i * x)
    _, beta = momentum_to_ladder(k_i / grid.constants.k_L)
    return WavePacket(grid, _normalized(grid, psi), beta)


def init_plane_wave(grid, p_i=0.0, snap=False):
    """Momentum eigenstate at ``p_i`` recoils (the infinite-width limit).

    ``p_i`` must lie on a momentum bin unless ``snap`` is set, in which case
    it is moved to the nearest bin.
    """
    if not grid.on_grid(p_i):
        if not snap:
            raise ConfigurationError(
                f"momentum {p_i!r} is not a multiple of the bin width {grid.dp!r}", "p_i")
        p_i = grid.snap(p_i)
    k = p_i * grid.constants.k_L
    psi = np.exp(-1j * k * grid.x)
    _, beta = momentum_to_ladder(p_i)
    return WavePacket(grid, _normalized(grid, psi), beta)


def sigma_from_periods(n_periods, constants=DEFAULT_CONSTANTS):
    """Packet width in metres for a width given in grating periods."""
    return n_periods * constants.wavelength / 2.0


@dataclass(frozen=True, eq=False)
class MomentumDistribution:
    """Probability per momentum bin, sorted by momentum (p_rec units).

    ``order_populations[j]`` is the mass in ``[2j + 2 beta - 1, 2j + 2 beta + 1)``.
    """

    momenta: np.ndarray
    probability: np.ndarray
    beta: float = 0.0
    order_populations: dict = field(default=None)

    def __post_init__(self):
        if self.order_populations is None:
            object.__setattr__(self, "order_populations",
                               _order_windows(self.momenta, self.probability, self.beta))

    @classmethod
    def from_probability(cls, momenta, probability, beta=0.0, renormalize=True):
        prob = np.asarray(probability, dtype=np.float64)
        if renormalize:
            prob = prob / prob.sum()
        return cls(np.asarray(momenta, dtype=np.float64), prob, beta)

    def total(self):
        return float(self.probability.sum())

    def orders(self):
        """Order indices and populations as two arrays."""
        js = np.array(sorted(self.order_populations), dtype=np.int64)
        return js, np.array([self.order_populations[j] for j in js])

    def window_mass(self):
        return float(sum(self.order_populations.values()))


def _order_windows(momenta, prob, beta):
    offset = 2.0 * beta
    jmin = math.floor((momenta[0] - offset + 1.0) / 2.0)
    jmax = math.floor((momenta[-1] - offset + 1.0) / 2.0)
    nwin = jmax - jmin + 1
    sums = _kernels.window_sums(np.ascontiguousarray(prob), np.ascontiguousarray(momenta),
                                offset, jmin, nwin)
    return {int(jmin + i): float(s) for i, s in enumerate(sums)}


def momentum_distribution(psi):
    """Normalized momentum distribution of a packet, with order populations."""
    phi = psi.momentum_amplitudes()
    prob = scipy.fft.fftshift(_kernels.abs2(phi))
    momenta = psi.grid.p_sorted()
    prob = prob / prob.sum()
    return MomentumDistribution(momenta, np.ascontiguousarray(prob), psi.quasimomentum_tag)


def momentum_moment(dist, q):
    """``sum P(p) (p/p_rec)**q`` for q in 1..4."""
    if q not in (1, 2, 3, 4):
        raise DomainError("moment order must be 1, 2, 3 or 4")
    return _kernels.power_sum(dist.probability, dist.momenta, q)


def kinetic_energy(dist):
    """Mean kinetic energy ``<p^2>/2m`` in units of E_rec."""
    return momentum_moment(dist, 2)


def write_distribution_csv(dist, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["p_over_prec", "probability"])
        for p, pr in zip(dist.momenta.tolist(), dist.probability.tolist()):
            w.writerow([repr(p), repr(pr)])


def write_orders_csv(dist, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["order", "population"])
        for j in sorted(dist.order_populations):
            w.writerow([j, repr(dist.order_populations[j])])


def read_distribution_csv(path, beta=0.0):
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    return MomentumDistribution(np.ascontiguousarray(data[:, 0]),
                                np.ascontiguousarray(data[:, 1]), beta)
