"""Closed-form results for kick periods at half-integer multiples of T_T.

Everything here works on the two-photon momentum ladder ``p = 2 (j + beta)``
recoils, so moments come out in powers of ``2 hbar k_L``.  Multiply a
second moment by 4 to get an energy in E_rec.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import _kernels
from .errors import DomainError
from .units import DEFAULT_CONSTANTS

MAX_ORDER = 200
MAX_ARGUMENT = 100.0


def bessel_j(order, argument):
    """Bessel function of the first kind ``J_order(argument)``.

    Evaluated by Miller's downward recurrence normalized with
    ``J_0 + 2 sum J_2k = 1``; valid for ``|order| <= 200`` and
    ``|argument| <= 100``.
    """
    if int(order) != order or abs(order) > MAX_ORDER:
        raise DomainError(f"order must be an integer with |order| <= {MAX_ORDER}")
    if not (math.isfinite(argument) and abs(argument) <= MAX_ARGUMENT):
        raise DomainError(f"argument must satisfy |x| <= {MAX_ARGUMENT}")
    n = abs(int(order))
    val = float(_kernels.bessel_table(n, [argument])[0, n])
    return -val if (order < 0 and n % 2) else val


def bessel_orders(jmax, argument):
    """``J_j(argument)`` for ``j = -jmax..jmax`` as an array."""
    row = _kernels.bessel_table(jmax, [argument])[0]
    neg = row[:0:-1] * np.where(np.arange(jmax, 0, -1) % 2 == 1, -1.0, 1.0)
    return np.concatenate([neg, row])


@dataclass(frozen=True)
class ResonanceContext:
    """Kicking at ``T = l T_T / 2`` with quasimomentum ``beta``."""

    l: int
    beta: float
    phi_d: float
    n: int

    def __post_init__(self):
        if int(self.l) != self.l or self.l < 1:
            raise DomainError("l must be a positive integer")
        if not (0.0 <= self.beta < 1.0):
            raise DomainError("beta must lie in [0, 1)")
        if int(self.n) != self.n or self.n < 0:
            raise DomainError("n must be a non-negative integer")
        if not (math.isfinite(self.phi_d) and self.phi_d >= 0):
            raise DomainError("phi_d must be finite and >= 0")

    @property
    def Upsilon(self):
        return 0.5 * math.pi * (1.0 + 2.0 * self.beta) * self.l

    def _reduced(self):
        # Upsilon = pi * (m + d) with integer m and |d| <= 1/2, computed without
        # multiplying through by pi first
        half = 0.5 * (1.0 + 2.0 * self.beta) * self.l
        m = round(half)
        return int(m), half - m

    def is_resonant(self):
        """True when ``sin(Upsilon) == 0``."""
        return self._reduced()[1] == 0.0


def context_from_period(period_T, beta, phi_d, n, constants=DEFAULT_CONSTANTS, tol=1e-6):
    """Context for a period that must be a half-integer multiple of T_T."""
    ratio = 2.0 * period_T / constants.T_talbot
    l = round(ratio)
    if l < 1 or abs(ratio - l) > tol:
        raise DomainError(
            f"period {period_T!r} s is {ratio / 2:.6g} T_T; the closed forms hold only "
            "at half-integer multiples of the Talbot time")
    return ResonanceContext(int(l), beta, phi_d, n)


def _ratio(ctx):
    """``sin(n Upsilon) / sin(Upsilon)``, with its limit ``n cos(Upsilon)^(n-1)``."""
    m, d = ctx._reduced()
    n = ctx.n
    sign = -1.0 if (m * (n - 1)) % 2 else 1.0
    if d == 0.0:
        return sign * n
    if n * d == round(n * d):  # exact zero of sin(n pi d)
        return 0.0
    return sign * math.sin(n * math.pi * d) / math.sin(math.pi * d)


def effective_argument(ctx):
    """Bessel argument ``phi_d sin(n Upsilon) / sin(Upsilon)``."""
    return ctx.phi_d * _ratio(ctx)


def ladder_window(argument):
    x = abs(argument)
    return int(math.ceil(x + 20.0 + 10.0 * math.sqrt(x)))


@dataclass(frozen=True, eq=False)
class LadderAmplitudes:
    orders: np.ndarray
    amplitudes: np.ndarray
    context: ResonanceContext

    @property
    def populations(self):
        return np.abs(self.amplitudes) ** 2

    def population(self, j):
        idx = j - int(self.orders[0])
        if 0 <= idx < self.orders.size:
            return float(self.populations[idx])
        return 0.0


def ladder_amplitudes(ctx):
    """Ladder amplitudes ``c_j`` after ``n`` kicks, on a symmetric window.

    Phases follow the propagator's kick ``exp(-i phi_d cos 2 k_L x)``, which
    contributes ``(-i)**j``; the opposite kick sign would give ``i**j``.
    """
    arg = effective_argument(ctx)
    jmax = ladder_window(arg)
    j = np.arange(-jmax, jmax + 1)
    ups = ctx.Upsilon
    phase = (1j) ** (-j % 4) * np.exp(-1j * j * (ctx.n + 1) * ups) \
        * np.exp(-1j * ctx.n * math.pi * ctx.beta**2 * ctx.l)
    return LadderAmplitudes(j, bessel_orders(jmax, arg) * phase, ctx)


def momentum_moment(ctx, q, k=0):
    """q-th momentum moment in units of ``(2 hbar k_L)**q``.

    ``k`` is the integer ladder index of the initial momentum state.
    """
    if q not in (1, 2, 3, 4):
        raise DomainError("moment order must be 1, 2, 3 or 4")
    arg = effective_argument(ctx)
    jmax = ladder_window(arg)
    s = np.arange(-jmax, jmax + 1)
    w = bessel_orders(jmax, arg) ** 2
    return float(np.sum(w * (s + k + ctx.beta) ** q))


def energy_erec(ctx, k=0):
    """Mean kinetic energy in E_rec after ``n`` kicks."""
    return 4.0 * momentum_moment(ctx, 2, k)


def resonant_populations(phi_d, n, orders):
    """Order populations ``J_j(n phi_d)**2`` at exact resonance from p = 0."""
    orders = np.asarray(orders)
    jmax = int(np.abs(orders).max()) if orders.size else 0
    row = _kernels.bessel_table(jmax, [n * phi_d])[0]
    return row[np.abs(orders)] ** 2


def resonant_energy(phi_d, n):
    """Energy after ``n`` resonant kicks from p = 0, in two-photon units."""
    return 0.5 * (phi_d * n) ** 2


def second_moment_vs_beta(l, n, phi_d, beta_grid):
    """``sum_j |c_j|^2 (j + beta)^2`` for each beta, in ``(2 hbar k_L)^2`` units."""
    betas = np.asarray(beta_grid, dtype=np.float64)
    if np.any((betas < 0) | (betas >= 1)):
        raise DomainError("beta values must lie in [0, 1)")
    args = np.array([effective_argument(ResonanceContext(l, float(b), phi_d, n)) for b in betas])
    jmax = ladder_window(float(np.abs(args).max()) if args.size else 0.0)
    table = _kernels.bessel_table(jmax, args) ** 2  # J_j^2 for j >= 0
    j = np.arange(jmax + 1, dtype=np.float64)
    out = np.empty(betas.size)
    for i, b in enumerate(betas):
        # J_{-j}^2 == J_j^2
        out[i] = np.sum(table[i] * (j + b) ** 2) + np.sum(table[i, 1:] * (b - j[1:]) ** 2)
    return out


def fractional_times(max_denominator, constants=DEFAULT_CONSTANTS, max_ratio=1.0):
    """Reduced fractions ``l/m <= max_ratio`` with ``m <= max_denominator``.

    Returns ``(l, m, time_s)`` tuples sorted by time.
    """
    if int(max_denominator) != max_denominator or max_denominator < 2:
        raise DomainError("max_denominator must be an integer >= 2")
    out = []
    for m in range(1, int(max_denominator) + 1):
        for l in range(1, int(math.floor(max_ratio * m)) + 1):
            if gcd(l, m) == 1:
                out.append((l, m, l / m * constants.T_talbot))
    out.sort(key=lambda t: (Fraction(t[0], t[1]), t[1]))
    return out
