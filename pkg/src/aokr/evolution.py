"""Split-step Floquet propagation of the kicked rotor.

One Floquet period is a kick (diagonal in position) followed by free flight
(diagonal in momentum).  The state is carried between the two
representations with unitary FFTs, so no norm bookkeeping is needed.
"""
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import scipy.fft

from . import _kernels
from .errors import GridMismatchError, NyquistOverflowError
from .units import KickSchedule
from .wavepacket import MomentumDistribution, SpatialGrid, WavePacket

# probability allowed beyond half the Nyquist momentum before a run aborts
OVERFLOW_TOLERANCE = 1e-10


@dataclass(frozen=True, eq=False)
class FloquetStepPlan:
    """Precomputed phase factors for one kick sequence on one grid."""

    schedule: KickSchedule
    grid: SpatialGrid
    finite_pulse_substeps: int = 1
    kick_phase: np.ndarray = field(init=False, repr=False)
    free_phase: np.ndarray = field(init=False, repr=False)
    sub_kick_phase: np.ndarray = field(init=False, repr=False, default=None)
    sub_free_phase: np.ndarray = field(init=False, repr=False, default=None)
    half_sub_free_phase: np.ndarray = field(init=False, repr=False, default=None)

    def __post_init__(self):
        s = self.finite_pulse_substeps
        if int(s) != s or s < 1:
            raise ValueError("finite_pulse_substeps must be an integer >= 1")
        sched, grid = self.schedule, self.grid
        if sched.constants != grid.constants:
            raise GridMismatchError("schedule and grid use different physical constants")
        cos2 = np.cos(2.0 * grid.constants.k_L * grid.x)
        set_ = lambda name, val: object.__setattr__(self, name, _frozen(val))
        set_("kick_phase", np.exp(-1j * sched.phi_d * cos2))
        set_("free_phase", self.free_phase_for(sched.period_T - sched.pulse_width_tau))
        if s > 1:
            tau = sched.pulse_width_tau
            set_("sub_kick_phase", np.exp(-1j * (sched.phi_d / s) * cos2))
            set_("sub_free_phase", self.free_phase_for(tau / s))
            set_("half_sub_free_phase", self.free_phase_for(tau / (2 * s)))

    @property
    def T_free(self):
        return self.schedule.period_T - self.schedule.pulse_width_tau

    def free_phase_for(self, t):
        """``exp(-i p^2 t / 2 m hbar)`` over the DFT momentum bins."""
        w = self.grid.constants.omega_rec * t
        return np.exp(-1j * w * self.grid.p**2)


def _frozen(a):
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


def build_plan(schedule, grid=None, finite_pulse_substeps=1):
    if grid is None:
        grid = SpatialGrid(constants=schedule.constants)
    return FloquetStepPlan(schedule, grid, finite_pulse_substeps)


def _check_grid(psi, plan):
    if not psi.grid.same_as(plan.grid):
        raise GridMismatchError("wave packet and plan are defined on different grids")


def _to_p(psi):
    return scipy.fft.ifft(psi, norm="ortho", overwrite_x=True)


def _to_x(phi):
    return scipy.fft.fft(phi, norm="ortho", overwrite_x=True)


def _free_inplace(psi, phase):
    phi = _to_p(psi)
    _kernels.mul_inplace(phi, phase)
    return _to_x(phi)


def _kick_inplace(psi, plan):
    if plan.finite_pulse_substeps == 1:
        return _kernels.mul_inplace(psi, plan.kick_phase)
    # symmetric block pulse: half drift, (kick, drift) x (s-1), kick, half drift
    s = plan.finite_pulse_substeps
    psi = _free_inplace(psi, plan.half_sub_free_phase)
    for i in range(s):
        _kernels.mul_inplace(psi, plan.sub_kick_phase)
        psi = _free_inplace(psi, plan.sub_free_phase if i < s - 1 else plan.half_sub_free_phase)
    return psi


def apply_kick(psi, plan):
    """Return the packet after one kick of strength ``phi_d``."""
    _check_grid(psi, plan)
    out = _kick_inplace(psi.amplitudes.copy(), plan)
    return WavePacket(psi.grid, out, psi.quasimomentum_tag)


def apply_free(psi, plan):
    """Return the packet after free flight for ``T - tau``."""
    _check_grid(psi, plan)
    out = _free_inplace(psi.amplitudes.copy(), plan.free_phase)
    return WavePacket(psi.grid, out, psi.quasimomentum_tag)


class KickRecord(NamedTuple):
    kick: int
    distribution: MomentumDistribution
    energy: float


def _distribution(grid, prob_dft, beta):
    prob = scipy.fft.fftshift(prob_dft)
    prob = prob / prob.sum()
    return MomentumDistribution(grid.p_sorted(), np.ascontiguousarray(prob), beta)


def overflow_mass(grid, prob_dft):
    """Probability beyond half the Nyquist momentum."""
    return float(prob_dft[grid.high_p].sum())


def run_kicks(psi0, plan, record="per-kick", overflow_tolerance=OVERFLOW_TOLERANCE):
    """Apply ``num_kicks`` Floquet periods (kick, then free flight).

    Returns a list of :class:`KickRecord`.  With ``record="per-kick"`` there
    is one record after every kick; with ``"final"`` only the last.  With no
    kicks the single record describes the initial state.

    Raises :class:`NyquistOverflowError` once more than ``overflow_tolerance``
    of the probability lies beyond half the Nyquist momentum.
    """
    if record not in ("per-kick", "final"):
        raise ValueError("record must be 'per-kick' or 'final'")
    _check_grid(psi0, plan)
    grid, beta = plan.grid, psi0.quasimomentum_tag
    n = plan.schedule.num_kicks
    if n == 0:
        prob = _kernels.abs2(psi0.momentum_amplitudes())
        dist = _distribution(grid, prob, beta)
        return [KickRecord(0, dist, _kernels.power_sum(dist.probability, dist.momenta, 2))]

    scale = math.sqrt(grid.dx)
    psi = psi0.amplitudes * scale  # unit l2 norm inside the loop
    records = []
    for k in range(1, n + 1):
        psi = _kick_inplace(psi, plan)
        phi = _to_p(psi)
        _kernels.mul_inplace(phi, plan.free_phase)
        prob = _kernels.abs2(phi)
        spill = overflow_mass(grid, prob)
        if spill > overflow_tolerance:
            raise NyquistOverflowError(
                f"kick {k}: {spill:.3g} of the probability lies beyond "
                f"{0.5 * grid.p_max:g} p_rec; enlarge num_points or reduce num_periods")
        if record == "per-kick" or k == n:
            dist = _distribution(grid, prob, beta)
            energy = _kernels.power_sum(dist.probability, dist.momenta, 2)
            records.append(KickRecord(k, dist, energy))
        if k < n:
            psi = _to_x(phi)
    return records


def evolve_state(psi0, plan):
    """Packet after all kicks (for inspection of the full wavefunction)."""
    _check_grid(psi0, plan)
    psi = psi0.amplitudes.copy()
    for _ in range(plan.schedule.num_kicks):
        psi = _kick_inplace(psi, plan)
        psi = _free_inplace(psi, plan.free_phase)
    return WavePacket(psi0.grid, psi, psi0.quasimomentum_tag)


def final_energy(psi0, plan):
    return run_kicks(psi0, plan, record="final")[-1].energy
