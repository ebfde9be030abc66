"""Experiment-style analysis: ensemble averages, order fits and scans."""
import csv
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import NamedTuple

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit
from scipy.signal import find_peaks, peak_widths

from .errors import AOKRError, ConfigurationError
from .evolution import build_plan, run_kicks
from .units import momentum_to_ladder
from .wavepacket import (MomentumDistribution, init_gaussian, init_plane_wave,
                         momentum_moment)

BEC_MOMENTUM_WIDTH = 0.18  # p_rec
MIN_ORDER_MASS = 2e-3


@dataclass(frozen=True)
class EnsembleSpec:
    """Discrete Gaussian spread of initial momenta (all in p_rec).

    ``sigma == 0`` collapses the ensemble to a single member at the center.
    """

    center_momentum: float = 0.0
    sigma: float = BEC_MOMENTUM_WIDTH
    num_samples: int = 21
    span: float = 3.0

    def __post_init__(self):
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ConfigurationError("must be finite and >= 0", "sigma")
        if self.sigma > 0 and (int(self.num_samples) != self.num_samples
                               or self.num_samples < 9 or self.num_samples % 2 == 0):
            raise ConfigurationError("must be an odd integer >= 9", "num_samples")
        if not self.span > 0:
            raise ConfigurationError("must be positive", "span")

    def samples(self):
        """Sampled momenta and their normalized weights."""
        if self.sigma == 0:
            return np.array([self.center_momentum]), np.array([1.0])
        d = np.linspace(-self.span * self.sigma, self.span * self.sigma, int(self.num_samples))
        w = np.exp(-0.5 * (d / self.sigma) ** 2)
        return self.center_momentum + d, w / w.sum()


class EnsembleResult(NamedTuple):
    distribution: MomentumDistribution
    energy: float
    uncertainty: float
    momenta: np.ndarray
    weights: np.ndarray
    member_energies: np.ndarray


def initial_state(grid, p_i, sigma_w=None):
    """Plane wave (``sigma_w`` None) or Gaussian packet at ``p_i`` recoils."""
    if sigma_w is None:
        return init_plane_wave(grid, p_i, snap=True)
    return init_gaussian(grid, sigma_w, p_i * grid.constants.k_L)


def _pmap(fn, items, threads):
    items = list(items)
    if threads is None or threads <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(fn, items))


def _ensemble_momenta(spec, grid, sigma_w):
    momenta, _ = spec.samples()
    if sigma_w is None:
        momenta = np.array([grid.snap(p) for p in momenta])
    if spec.sigma == 0:
        return momenta, np.array([1.0])
    weights = np.exp(-0.5 * ((momenta - spec.center_momentum) / spec.sigma) ** 2)
    return momenta, weights / weights.sum()


def ensemble_records(spec, plan, sigma_w=None, threads=1, record="per-kick"):
    """Incoherent, Gaussian-weighted average over initial momenta.

    Returns one :class:`EnsembleResult` per recorded kick (see
    :func:`~aokr.evolution.run_kicks` for the meaning of ``record``).
    Plane-wave members are moved to the nearest momentum bin and weighted
    at the bin they actually occupy.
    """
    grid = plan.grid
    momenta, weights = _ensemble_momenta(spec, grid, sigma_w)

    def member(p):
        return run_kicks(initial_state(grid, p, sigma_w), plan, record=record)

    runs = _pmap(member, momenta, threads)
    _, beta = momentum_to_ladder(spec.center_momentum)
    out = []
    for k in range(len(runs[0])):
        prob = np.zeros(grid.num_points)
        for w, run in zip(weights, runs):
            prob += w * run[k].distribution.probability
        energies = np.array([run[k].energy for run in runs])
        # a lone member is passed through untouched
        dist = MomentumDistribution.from_probability(grid.p_sorted(), prob, beta,
                                                     renormalize=len(runs) > 1)
        energy = momentum_moment(dist, 2)
        spread = math.sqrt(max(float(np.dot(weights, (energies - energy) ** 2)), 0.0))
        out.append(EnsembleResult(dist, energy, spread, momenta, weights, energies))
    return out


def ensemble_average(spec, plan, sigma_w=None, threads=1):
    """Ensemble-averaged distribution and energy after the last kick."""
    return ensemble_records(spec, plan, sigma_w, threads, record="final")[-1]


def sample_convergence(spec, plan, sigma_w=None, threads=1):
    """Relative energy change when the sample spacing is halved.

    Below 0.005 the ensemble is considered converged.
    """
    if spec.sigma == 0:
        return 0.0
    fine = replace(spec, num_samples=2 * spec.num_samples - 1)
    e0 = ensemble_average(spec, plan, sigma_w, threads).energy
    e1 = ensemble_average(fine, plan, sigma_w, threads).energy
    return abs(e1 - e0) / abs(e1) if e1 != 0 else abs(e0)


# -- multi-Gaussian fit -----------------------------------------------------

@dataclass(frozen=True)
class OrderFit:
    order: int
    center: float
    amplitude: float
    width: float
    weight: float
    converged: bool = True

    @property
    def energy(self):
        return self.weight * (self.center**2 + self.width**2)


@dataclass(frozen=True)
class FitReport:
    orders: list
    residual_norm: float
    energy: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "energy", float(sum(o.energy for o in self.orders)))

    @property
    def total_weight(self):
        return float(sum(o.weight for o in self.orders))

    @property
    def flagged(self):
        return [o.order for o in self.orders if not o.converged]


def _gauss(p, amp, width, center):
    return amp * np.exp(-0.5 * ((p - center) / width) ** 2)


def fit_orders(dist, beta=None):
    """Fit one Gaussian per diffraction order, centers fixed on the ladder.

    Only orders holding more than 0.2 % of the probability are fitted.  Each
    fit uses the bins of that order's window; the weight of an order is the
    fitted model summed over those bins.  A window whose fit fails falls back
    to its raw second moment and is flagged.
    """
    if beta is None:
        beta = dist.beta
    p, prob = dist.momenta, dist.probability
    dp = float(p[1] - p[0])
    offset = 2.0 * beta
    win = np.floor((p - offset + 1.0) / 2.0).astype(np.int64)
    fits, resid2 = [], 0.0
    for j, mass in sorted(MomentumDistribution(p, prob, beta).order_populations.items()):
        if mass <= MIN_ORDER_MASS:
            continue
        sel = win == j
        pw, yw = p[sel], prob[sel]
        c = 2.0 * j + offset
        var = float(np.dot(yw, (pw - c) ** 2) / mass)
        s0 = max(math.sqrt(var), 0.25 * dp)
        a0 = float(yw.max())
        try:
            with warnings.catch_warnings():
                # covariance warnings are expected for single-bin peaks
                warnings.simplefilter("ignore", OptimizeWarning)
                popt, _ = curve_fit(lambda x, a, s: _gauss(x, a, s, c), pw, yw, p0=(a0, s0),
                                    bounds=([0.0, 1e-6 * dp], [np.inf, 1.0]), maxfev=2000)
            a, s = float(popt[0]), float(popt[1])
            model = _gauss(pw, a, s, c)
            if not np.all(np.isfinite(model)):
                raise RuntimeError("non-finite fit")
            resid2 += float(np.sum((model - yw) ** 2))
            fits.append(OrderFit(j, c, a, s, float(model.sum())))
        except (RuntimeError, ValueError):
            # raw second moment: weight * (c^2 + s^2) == sum P p^2 over the window
            m2 = float(np.dot(yw, pw**2))
            fits.append(OrderFit(j, c, a0, math.sqrt(max(m2 / mass - c * c, 0.0)), mass, False))
    return FitReport(fits, math.sqrt(resid2))


def write_fit_csv(report, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["order", "center_prec", "amplitude", "width_prec", "weight"])
        for o in report.orders:
            w.writerow([o.order, repr(o.center), repr(o.amplitude), repr(o.width), repr(o.weight)])


# -- scans ------------------------------------------------------------------

AXES = ("period_T", "num_kicks", "beta", "center_momentum")
ESTIMATORS = ("direct-variance", "gaussian-fit")
_CSV_AXIS = {"period_T": ("period_us", 1e6), "num_kicks": ("num_kicks", 1),
             "beta": ("beta", 1), "center_momentum": ("center_momentum_prec", 1)}


@dataclass
class ScanResult:
    axis: str
    values: np.ndarray
    energies: np.ndarray
    uncertainties: np.ndarray
    failures: dict = field(default_factory=dict)

    def rows(self):
        label, scale = _CSV_AXIS[self.axis]
        for v, e, u in zip(self.values.tolist(), self.energies.tolist(), self.uncertainties.tolist()):
            if self.axis == "num_kicks":
                v = int(v)
            elif scale != 1:
                v = float(f"{v * scale:.12g}")  # drop s -> us conversion noise
            yield label, v, e, u

    def to_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["axis", "value", "energy_Erec", "uncertainty_Erec"])
            for label, v, e, u in self.rows():
                w.writerow([label, repr(v), repr(e), repr(u)])


def _schedule_at(schedule, axis, value):
    if axis == "period_T":
        return replace(schedule, period_T=float(value))
    if axis == "num_kicks":
        return replace(schedule, num_kicks=int(value))
    if axis == "beta":
        return replace(schedule, beta=float(value))
    offset, beta = momentum_to_ladder(float(value))
    return replace(schedule, beta=beta, ladder_offset=offset)


def _estimate(dist, estimator):
    if estimator == "direct-variance":
        return momentum_moment(dist, 2)
    return fit_orders(dist).energy


def scan_point(schedule, grid, ensemble=None, estimator="direct-variance", sigma_w=None,
               substeps=1, threads=1):
    """Energy (E_rec) and ensemble spread for one schedule."""
    plan = build_plan(schedule, grid, substeps)
    if ensemble is None:
        rec = run_kicks(initial_state(grid, schedule.initial_momentum, sigma_w), plan,
                        record="final")[-1]
        return _estimate(rec.distribution, estimator), math.nan
    ens = replace(ensemble, center_momentum=schedule.initial_momentum)
    res = ensemble_average(ens, plan, sigma_w, threads)
    if estimator == "direct-variance":
        return res.energy, res.uncertainty
    return _estimate(res.distribution, estimator), res.uncertainty


def energy_scan(axis, values, schedule, grid, ensemble=None, estimator="direct-variance",
                sigma_w=None, substeps=1, threads=1):
    """Energy against one swept parameter.

    The initial momentum always follows the (swept) schedule; an ensemble,
    when given, is centered on it.  A point that fails records ``nan`` and
    its error message in ``failures``; the scan carries on.
    """
    if axis not in AXES:
        raise ConfigurationError(f"unknown axis, expected one of {AXES}", "axis")
    if estimator not in ESTIMATORS:
        raise ConfigurationError(f"unknown estimator, expected one of {ESTIMATORS}", "estimator")
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise ConfigurationError("axis values must be finite", "values")
    if np.any(np.diff(values) < 0):
        raise ConfigurationError("axis values must be sorted", "values")

    def point(v):
        try:
            sched = _schedule_at(schedule, axis, v)
            # parallelism lives at the scan level; members stay serial
            return scan_point(sched, grid, ensemble, estimator, sigma_w, substeps, 1) + (None,)
        except AOKRError as exc:
            return math.nan, math.nan, f"{type(exc).__name__}: {exc}"

    out = _pmap(point, values, threads)
    failures = {i: msg for i, (_, _, msg) in enumerate(out) if msg is not None}
    return ScanResult(axis, values, np.array([o[0] for o in out]),
                      np.array([o[1] for o in out]), failures)


def read_scan_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return (np.array([float(r["value"]) for r in rows]),
            np.array([float(r["energy_Erec"]) for r in rows]))


# -- curve features -----------------------------------------------------------

def local_maxima(values, periodic=False):
    """Indices of strict local maxima (interior only unless ``periodic``)."""
    y = np.asarray(values, dtype=np.float64)
    n = y.size
    if periodic:
        return [i for i in range(n) if y[i] > y[i - 1] and y[i] > y[(i + 1) % n]]
    return [i for i in range(1, n - 1) if y[i] > y[i - 1] and y[i] > y[i + 1]]


def peak_near(x, y, target, window):
    """Index of the highest local maximum with ``|x - target| <= window``."""
    x, y = np.asarray(x), np.asarray(y)
    idx, _ = find_peaks(y)
    idx = [i for i in idx if abs(x[i] - target) <= window]
    if not idx:
        return None
    return max(idx, key=lambda i: y[i])


def peak_fwhm(x, y, index):
    """Full width at half prominence of the peak at ``index``, in x units.

    Assumes uniformly spaced ``x``.
    """
    x, y = np.asarray(x, dtype=np.float64), np.asarray(y, dtype=np.float64)
    widths = peak_widths(y, [index], rel_height=0.5)[0]
    return float(widths[0] * (x[1] - x[0]))
