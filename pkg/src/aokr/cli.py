"""Command-line front end.

Three subcommands write CSV artifacts into an output directory:

``evolve``  per-kick momentum distributions and energies
``scan``    energy against kick period, kick number, quasimomentum or
            initial momentum
``oracle``  closed-form ladder populations, moments and fractional times

Settings come from an INI file (``--config``) and are overridden by flags.
Every output directory receives the resolved ``config.ini`` and a
``manifest.json`` with SHA-256 checksums.
"""
import argparse
import configparser
import csv
import hashlib
import json
import logging
import math
import os
import re
import sys
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from . import oracle
from .analysis import (AXES, ESTIMATORS, EnsembleSpec, energy_scan, ensemble_records,
                       fit_orders, initial_state, write_fit_csv)
from .errors import AOKRError, ConfigurationError, DomainError, NyquistOverflowError
from .evolution import build_plan, run_kicks
from .units import KickSchedule, PhysicalConstants, kbar_to_period
from .wavepacket import SpatialGrid, sigma_from_periods, write_distribution_csv, write_orders_csv

log = logging.getLogger("aokr")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PHYSICS = 3
EXIT_IO = 4

_TIME_UNITS = {"s": 1.0, "ms": 1e-3, "us": 1e-6, "µs": 1e-6, "ns": 1e-9}
_TT_RE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*TT\s*(?:/\s*([0-9.eE+-]+))?\s*$")
_PI_RE = re.compile(r"^\s*([0-9.eE+-]*)\s*\*?\s*pi\s*(?:/\s*([0-9.eE+-]+))?\s*$", re.I)
_NUM_RE = re.compile(r"^\s*([0-9.eE+-]+)\s*([a-zµ]*)\s*$")


def parse_time(text, constants, field_name="time"):
    """Seconds from ``66.3us``, ``33`` (bare numbers are microseconds), ``TT/2``, ``3TT/2``."""
    text = str(text).strip()
    m = _TT_RE.match(text)
    try:
        if m:
            num = float(m.group(1)) if m.group(1) not in ("", "+") else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            return num / den * constants.T_talbot
        m = _NUM_RE.match(text)
        if m and (m.group(2) or "us") in _TIME_UNITS:
            return float(m.group(1)) * _TIME_UNITS[m.group(2) or "us"]
    except ValueError:
        pass
    raise ConfigurationError(f"cannot parse time {text!r} (use e.g. 66.3us, TT/2)", field_name)


def parse_kbar(text, field_name="kbar"):
    """Number or multiple of pi: ``4pi``, ``pi/2``, ``12.566``."""
    text = str(text).strip()
    m = _PI_RE.match(text)
    try:
        if m:
            num = float(m.group(1)) if m.group(1) not in ("", "+") else 1.0
            den = float(m.group(2)) if m.group(2) else 1.0
            return num / den * math.pi
        return float(text)
    except ValueError:
        raise ConfigurationError(f"cannot parse {text!r} (use e.g. 4pi, 2pi)", field_name) from None


def _bool(text):
    return str(text).strip().lower() in ("1", "true", "yes", "on")


@dataclass
class RunConfig:
    """Fully resolved settings for one invocation (SI units unless noted)."""

    wavelength: float = 780e-9
    atom_mass: float = 1.44316e-25
    num_points: int = 2**16
    num_periods: int = 256
    sigma_w_periods: float = 0.0  # 0 selects a plane-wave initial state
    phi_d: float = 1.5
    period: float = float("nan")  # defaults to the Talbot time
    kicks: int = 1
    p_i: float = 0.0  # p_rec
    tau: float = 0.0
    substeps: int = 1
    ensemble: bool = False
    ensemble_sigma: float = 0.18
    ensemble_samples: int = 21
    ensemble_span: float = 3.0
    axis: str = "period_T"
    scan_from: str = ""
    scan_to: str = ""
    scan_step: str = ""
    scan_steps: int = 0
    estimator: str = "direct-variance"
    oracle_l: int = 0
    oracle_beta: float = 0.0
    oracle_offset: int = 0
    fractions: int = 0
    record: str = "per-kick"
    out: str = "aokr-output"
    json: bool = False
    threads: int = field(default_factory=lambda: os.cpu_count() or 1)

    @property
    def constants(self):
        return PhysicalConstants(self.wavelength, self.atom_mass)

    def grid(self):
        return SpatialGrid(self.num_points, self.num_periods, self.constants)

    def sigma_w(self):
        if self.sigma_w_periods == 0:
            return None
        return sigma_from_periods(self.sigma_w_periods, self.constants)

    def schedule(self):
        return KickSchedule.from_momentum(self.phi_d, self.period, self.kicks, self.p_i,
                                          pulse_width_tau=self.tau, constants=self.constants)

    def ensemble_spec(self):
        if not self.ensemble:
            return None
        return EnsembleSpec(self.p_i, self.ensemble_sigma, self.ensemble_samples, self.ensemble_span)


# INI (section, key) -> RunConfig field
_INI_KEYS = {
    ("constants", "wavelength"): "wavelength",
    ("constants", "atom_mass"): "atom_mass",
    ("grid", "num_points"): "num_points",
    ("grid", "num_periods"): "num_periods",
    ("grid", "sigma_w_periods"): "sigma_w_periods",
    ("kicks", "phi_d"): "phi_d",
    ("kicks", "period"): "period",
    ("kicks", "kbar"): "kbar",
    ("kicks", "kicks"): "kicks",
    ("kicks", "beta"): "beta",
    ("kicks", "p_i"): "p_i",
    ("kicks", "tau"): "tau",
    ("kicks", "substeps"): "substeps",
    ("ensemble", "enabled"): "ensemble",
    ("ensemble", "sigma"): "ensemble_sigma",
    ("ensemble", "samples"): "ensemble_samples",
    ("ensemble", "span"): "ensemble_span",
    ("scan", "axis"): "axis",
    ("scan", "from"): "scan_from",
    ("scan", "to"): "scan_to",
    ("scan", "step"): "scan_step",
    ("scan", "steps"): "scan_steps",
    ("scan", "estimator"): "estimator",
    ("oracle", "l"): "oracle_l",
    ("oracle", "beta"): "oracle_beta",
    ("oracle", "ladder_offset"): "oracle_offset",
    ("oracle", "fractions"): "fractions",
    ("output", "dir"): "out",
    ("output", "record"): "record",
    ("output", "json"): "json",
    ("output", "threads"): "threads",
}
_AXIS_ALIASES = {"period": "period_T", "period_t": "period_T", "kicks": "num_kicks",
                 "num_kicks": "num_kicks", "beta": "beta", "momentum": "center_momentum",
                 "center_momentum": "center_momentum", "p_i": "center_momentum"}


def _read_ini(path):
    parser = configparser.ConfigParser()
    try:
        with open(path) as fh:
            parser.read_file(fh)
    except OSError as exc:
        raise OSError(f"cannot read config {path}: {exc.strerror}") from exc
    except configparser.Error as exc:
        raise ConfigurationError(str(exc), "config") from exc
    raw = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            name = _INI_KEYS.get((section, key))
            if name is None:
                raise ConfigurationError(f"unknown setting [{section}] {key}", f"{section}.{key}")
            raw[name] = value
    return raw


def resolve_config(raw, command):
    """Validate raw string/number settings into a :class:`RunConfig`."""
    cfg = RunConfig()
    raw = {k: v for k, v in raw.items() if v is not None}

    def num(name, cast=float, check=None, msg=""):
        if name not in raw:
            return
        try:
            val = cast(raw[name]) if cast is not int else int(float(raw[name]))
            if cast is int and float(raw[name]) != int(float(raw[name])):
                raise ValueError
        except (TypeError, ValueError):
            raise ConfigurationError(f"invalid value {raw[name]!r}", name) from None
        if check is not None and not check(val):
            raise ConfigurationError(msg or f"invalid value {raw[name]!r}", name)
        setattr(cfg, name, val)

    num("wavelength", float, lambda v: v > 0, "must be positive")
    num("atom_mass", float, lambda v: v > 0, "must be positive")
    num("num_points", int)
    num("num_periods", int)
    if "sigma_w_periods" in raw and str(raw["sigma_w_periods"]).strip().lower() in ("plane", "inf", ""):
        raw["sigma_w_periods"] = 0.0
    num("sigma_w_periods", float, lambda v: v >= 0, "must be >= 0 (0 or 'plane' for a plane wave)")
    num("phi_d", float, lambda v: v >= 0 and math.isfinite(v), "must be finite and >= 0")
    num("kicks", int, lambda v: v >= 0, "must be >= 0")
    num("substeps", int, lambda v: v >= 1, "must be >= 1")
    num("ensemble_sigma", float, lambda v: v >= 0, "must be >= 0")
    num("ensemble_samples", int)
    num("ensemble_span", float, lambda v: v > 0, "must be positive")
    num("scan_steps", int, lambda v: v >= 2, "must be >= 2")
    num("oracle_l", int, lambda v: v >= 1, "must be a positive integer")
    num("oracle_beta", float, lambda v: 0 <= v < 1, "must lie in [0, 1)")
    num("oracle_offset", int)
    num("fractions", int, lambda v: v >= 2, "must be >= 2")
    num("threads", int, lambda v: v >= 1, "must be >= 1")
    for name in ("ensemble", "json"):
        if name in raw:
            setattr(cfg, name, _bool(raw[name]))
    for name in ("scan_from", "scan_to", "scan_step", "out"):
        if name in raw:
            setattr(cfg, name, str(raw[name]))
    if "record" in raw:
        if raw["record"] not in ("per-kick", "final"):
            raise ConfigurationError("must be 'per-kick' or 'final'", "record")
        cfg.record = raw["record"]
    if "estimator" in raw:
        if raw["estimator"] not in ESTIMATORS:
            raise ConfigurationError(f"must be one of {ESTIMATORS}", "estimator")
        cfg.estimator = raw["estimator"]
    if "axis" in raw:
        axis = _AXIS_ALIASES.get(str(raw["axis"]).lower())
        if axis not in AXES:
            raise ConfigurationError(f"unknown axis {raw['axis']!r}", "axis")
        cfg.axis = axis

    constants = cfg.constants
    if "period" in raw and "kbar" in raw:
        raise ConfigurationError("give either a period or kbar, not both", "period")
    if "period" in raw:
        cfg.period = parse_time(raw["period"], constants, "period")
    elif "kbar" in raw:
        kbar = parse_kbar(raw["kbar"])
        if not kbar > 0:
            raise ConfigurationError("must be positive", "kbar")
        cfg.period = kbar_to_period(kbar, constants)
    else:
        cfg.period = constants.T_talbot
    if "tau" in raw:
        cfg.tau = parse_time(raw["tau"], constants, "tau")
    if "p_i" in raw and "beta" in raw:
        raise ConfigurationError("give either p_i or beta, not both", "p_i")
    if "p_i" in raw:
        num("p_i", float, math.isfinite, "must be finite")
    elif "beta" in raw:
        try:
            beta = float(raw["beta"])
        except ValueError:
            raise ConfigurationError(f"invalid value {raw['beta']!r}", "beta") from None
        if not 0 <= beta < 1:
            raise ConfigurationError("must lie in [0, 1)", "beta")
        cfg.p_i = 2.0 * beta

    # building the domain objects runs their own validation
    cfg.grid()
    cfg.schedule()
    cfg.ensemble_spec()
    if cfg.sigma_w() is not None:
        initial_state(cfg.grid(), cfg.p_i, cfg.sigma_w())
    elif not cfg.grid().on_grid(cfg.p_i) and not cfg.ensemble:
        raise ConfigurationError(
            f"a plane-wave state needs p_i on a momentum bin (multiple of {cfg.grid().dp:g})", "p_i")
    if command == "scan":
        scan_values(cfg)
    if command == "oracle" and not (cfg.oracle_l or cfg.fractions or "period" in raw or "kbar" in raw):
        raise ConfigurationError("give --l, --period/--kbar or --fractions", "l")
    return cfg


def _axis_value(cfg, text, name):
    if cfg.axis == "period_T":
        return parse_time(text, cfg.constants, name)
    try:
        return float(text)
    except ValueError:
        raise ConfigurationError(f"invalid value {text!r}", name) from None


def scan_values(cfg):
    """Axis values: ``--step`` includes the end point, ``--steps`` on the beta
    axis excludes it (the axis is periodic)."""
    if not cfg.scan_from or not cfg.scan_to:
        raise ConfigurationError("scan needs --from and --to", "from")
    lo = _axis_value(cfg, cfg.scan_from, "from")
    hi = _axis_value(cfg, cfg.scan_to, "to")
    if hi < lo:
        raise ConfigurationError("--to must not be below --from", "to")
    if bool(cfg.scan_step) == bool(cfg.scan_steps):
        raise ConfigurationError("give exactly one of --step or --steps", "step")
    if cfg.scan_step:
        step = _axis_value(cfg, cfg.scan_step, "step")
        if not step > 0:
            raise ConfigurationError("must be positive", "step")
        n = int(math.floor((hi - lo) / step * (1 + 1e-12) + 1e-9)) + 1
        values = lo + step * np.arange(n)
    else:
        values = np.linspace(lo, hi, cfg.scan_steps, endpoint=cfg.axis != "beta")
    if cfg.axis == "num_kicks":
        if np.any(values != np.round(values)) or np.any(values < 0):
            raise ConfigurationError("kick numbers must be non-negative integers", "from")
    if cfg.axis == "beta" and (np.any(values < 0) or np.any(values >= 1)):
        raise ConfigurationError("beta values must lie in [0, 1)", "from")
    if cfg.axis == "period_T" and np.any(values <= cfg.tau):
        raise ConfigurationError("periods must exceed the pulse width", "from")
    return values


_UNSET_ZERO = ("scan_steps", "oracle_l", "fractions")


def _config_ini(cfg):
    parser = configparser.ConfigParser()
    inverse = {v: k for k, v in _INI_KEYS.items()}
    values = asdict(cfg)
    for f in fields(cfg):
        sec_key = inverse.get(f.name)
        if sec_key is None:
            continue
        section, key = sec_key
        if not parser.has_section(section):
            parser.add_section(section)
        v = values[f.name]
        if v == "" or (f.name in _UNSET_ZERO and v == 0):
            continue
        if f.name in ("period", "tau"):
            text = f"{v!r}s"  # bare numbers would read back as microseconds
        else:
            text = repr(v) if isinstance(v, float) else str(v)
        parser.set(section, key, text)
    return parser


class _Writer:
    """Tracks written artifacts for the manifest."""

    def __init__(self, out):
        self.out = out
        self.files = []
        try:
            os.makedirs(out, exist_ok=True)
        except OSError as exc:
            raise OSError(f"cannot create output directory {out}: {exc.strerror}") from exc

    def path(self, name):
        self.files.append(name)
        return os.path.join(self.out, name)

    def rows(self, name, header, rows):
        with open(self.path(name), "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(header)
            w.writerows(rows)

    def json(self, name, obj):
        with open(self.path(name), "w") as fh:
            json.dump(obj, fh, indent=1, sort_keys=True)
            fh.write("\n")

    def finish(self, cfg):
        with open(self.path("config.ini"), "w") as fh:
            _config_ini(cfg).write(fh)
        entries = []
        for name in sorted(set(self.files)):
            with open(os.path.join(self.out, name), "rb") as fh:
                entries.append({"path": name, "sha256": hashlib.sha256(fh.read()).hexdigest()})
        with open(os.path.join(self.out, "manifest.json"), "w") as fh:
            json.dump({"files": entries}, fh, indent=1, sort_keys=True)
            fh.write("\n")


def _f(x):
    return repr(float(x))


def cmd_evolve(cfg):
    grid, sched = cfg.grid(), cfg.schedule()
    plan = build_plan(sched, grid, cfg.substeps)
    spec = cfg.ensemble_spec()
    if spec is None:
        recs = run_kicks(initial_state(grid, cfg.p_i, cfg.sigma_w()), plan, record=cfg.record)
        rows = [(r.kick, r.distribution, r.energy, math.nan) for r in recs]
    else:
        recs = ensemble_records(spec, plan, cfg.sigma_w(), cfg.threads, record=cfg.record)
        first = sched.num_kicks if cfg.record == "final" else 1
        kicks = [0] if sched.num_kicks == 0 else range(first, sched.num_kicks + 1)
        rows = [(k, r.distribution, r.energy, r.uncertainty) for k, r in zip(kicks, recs)]

    w = _Writer(cfg.out)
    summary = []
    fit = cfg.estimator == "gaussian-fit"
    for kick, dist, energy, unc in rows:
        write_distribution_csv(dist, w.path(f"dist_kick_{kick:03d}.csv"))
        write_orders_csv(dist, w.path(f"orders_kick_{kick:03d}.csv"))
        row = [kick, _f(energy), _f(unc)]
        if fit:
            report = fit_orders(dist)
            write_fit_csv(report, w.path(f"fit_kick_{kick:03d}.csv"))
            row.append(_f(report.energy))
        summary.append(row)
    header = ["kick", "energy_Erec", "uncertainty_Erec"] + (["fit_energy_Erec"] if fit else [])
    w.rows("summary.csv", header, summary)
    if cfg.json:
        w.json("summary.json", {"kbar": sched.kbar, "phi_d": sched.phi_d,
                                "period_us": sched.period_T * 1e6,
                                "kicks": [r[0] for r in summary],
                                "energy_Erec": [float(r[1]) for r in summary]})
    w.finish(cfg)
    for r in summary:
        log.info("kick %d: energy %s E_rec", r[0], r[1])
    return EXIT_OK


def cmd_scan(cfg):
    grid, sched = cfg.grid(), cfg.schedule()
    values = scan_values(cfg)
    result = energy_scan(cfg.axis, values, sched, grid, ensemble=cfg.ensemble_spec(),
                         estimator=cfg.estimator, sigma_w=cfg.sigma_w(), substeps=cfg.substeps,
                         threads=cfg.threads)
    w = _Writer(cfg.out)
    result.to_csv(w.path("scan.csv"))
    if result.failures:
        w.rows("failures.csv", ["index", "value", "error"],
               [(i, _f(values[i]), msg) for i, msg in sorted(result.failures.items())])
    if cfg.axis == "beta":
        try:
            probe = oracle.context_from_period(sched.period_T, 0.0, sched.phi_d, sched.num_kicks,
                                               cfg.constants)
        except DomainError:
            probe = None
        if probe is not None:
            rows = []
            for b in values:
                ctx = oracle.ResonanceContext(probe.l, float(b), sched.phi_d, sched.num_kicks)
                rows.append((_f(b), _f(oracle.energy_erec(ctx, sched.ladder_offset))))
            w.rows("overlay.csv", ["beta", "energy_Erec"], rows)
    if cfg.json:
        label = {"period_T": "period_us"}.get(cfg.axis, cfg.axis)
        w.json("scan.json", {"axis": label,
                             "value": [r[1] for r in result.rows()],
                             "energy_Erec": [None if math.isnan(e) else e
                                             for e in result.energies.tolist()]})
    w.finish(cfg)
    for i, msg in sorted(result.failures.items()):
        log.warning("point %d failed: %s", i, msg)
    return EXIT_PHYSICS if len(result.failures) == len(values) else EXIT_OK


def cmd_oracle(cfg, period_given):
    w = _Writer(cfg.out)
    if cfg.oracle_l or period_given:
        if period_given:
            probe = oracle.context_from_period(cfg.period, cfg.oracle_beta, cfg.phi_d, cfg.kicks,
                                               cfg.constants)
            l = probe.l
        else:
            l = cfg.oracle_l
        ctx = oracle.ResonanceContext(l, cfg.oracle_beta, cfg.phi_d, cfg.kicks)
        amps = oracle.ladder_amplitudes(ctx)
        k = cfg.oracle_offset
        w.rows("populations.csv", ["order", "population"],
               [(int(j) + k, _f(p)) for j, p in zip(amps.orders, amps.populations)])
        w.rows("moments.csv", ["q", "moment_2hbarkL_q"],
               [(q, _f(oracle.momentum_moment(ctx, q, k))) for q in (1, 2, 3, 4)])
        w.rows("summary.csv", ["l", "beta", "kicks", "phi_d", "Upsilon", "argument", "energy_Erec"],
               [(l, _f(ctx.beta), ctx.n, _f(ctx.phi_d), _f(ctx.Upsilon),
                 _f(oracle.effective_argument(ctx)), _f(oracle.energy_erec(ctx, k)))])
    if cfg.fractions:
        w.rows("fractions.csv", ["l", "m", "time_us"],
               [(l, m, _f(t * 1e6)) for l, m, t in oracle.fractional_times(cfg.fractions, cfg.constants)])
    w.finish(cfg)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("common")
    g.add_argument("--config", help="INI file with [constants] [grid] [kicks] [ensemble] [scan] [oracle] [output]")
    g.add_argument("--out", help="output directory")
    g.add_argument("--threads", help="worker threads (default: all cores)")
    g.add_argument("--json", action="store_const", const="true", help="also write plot-ready JSON")
    g.add_argument("-v", "--verbose", action="store_true")
    g.add_argument("--wavelength", help="laser wavelength in metres")
    g.add_argument("--mass", dest="atom_mass", help="atom mass in kg")
    g.add_argument("--num-points", help="grid points (power of two)")
    g.add_argument("--num-periods", help="standing-wave periods spanned by the grid")
    g.add_argument("--sigma-w", dest="sigma_w_periods",
                   help="initial packet width in grating periods, or 'plane'")
    g.add_argument("--phi-d", help="kick strength")
    g.add_argument("--period", help="kick period: 66.3us, 33 (us), TT, TT/2, 3TT/2")
    g.add_argument("--kbar", help="effective Planck constant: 4pi, 2pi, ...")
    g.add_argument("--kicks", help="number of kicks")
    g.add_argument("--beta", help="quasimomentum in [0, 1)")
    g.add_argument("--p-i", help="initial momentum in p_rec")
    g.add_argument("--tau", help="pulse width (e.g. 300ns); 0 for delta kicks")
    g.add_argument("--substeps", help="sub-kicks per finite-width pulse")
    g.add_argument("--ensemble", action="store_const", const="true",
                   help="average over the initial momentum spread")
    g.add_argument("--ensemble-sigma", help="momentum spread in p_rec (default 0.18)")
    g.add_argument("--ensemble-samples", help="odd number of ensemble members")
    g.add_argument("--estimator", help="direct-variance or gaussian-fit")
    g.add_argument("--record", help="per-kick or final")

    parser = argparse.ArgumentParser(prog="aokr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("evolve", parents=[common], help="per-kick distributions and energies")
    sp = sub.add_parser("scan", parents=[common], help="energy against a swept parameter")
    sp.add_argument("--axis", help="period, kicks, beta or momentum")
    sp.add_argument("--from", dest="scan_from")
    sp.add_argument("--to", dest="scan_to")
    sp.add_argument("--step", dest="scan_step", help="step; end point included")
    sp.add_argument("--steps", dest="scan_steps", help="number of points")
    op = sub.add_parser("oracle", parents=[common], help="closed-form ladder results")
    op.add_argument("--l", dest="oracle_l", help="T = l T_T / 2")
    op.add_argument("--ladder-offset", dest="oracle_offset", help="initial ladder index")
    op.add_argument("--fractions", help="largest denominator for fractional Talbot times")
    return parser


_NOT_SETTINGS = {"command", "config", "verbose"}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        raw = _read_ini(args.config) if args.config else {}
        flags = {k: v for k, v in vars(args).items() if k not in _NOT_SETTINGS and v is not None}
        if args.command == "oracle" and "beta" in flags:
            flags["oracle_beta"] = flags.pop("beta")
        if "period" in flags or "kbar" in flags:
            raw.pop("period", None)
            raw.pop("kbar", None)
        if "p_i" in flags or "beta" in flags:
            raw.pop("p_i", None)
            raw.pop("beta", None)
        raw.update(flags)
        cfg = resolve_config(raw, args.command)
        if args.command == "evolve":
            return cmd_evolve(cfg)
        if args.command == "scan":
            return cmd_scan(cfg)
        return cmd_oracle(cfg, period_given="period" in raw or "kbar" in raw)
    except (ConfigurationError, DomainError) as exc:
        print(f"aokr: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NyquistOverflowError as exc:
        print(f"aokr: physics abort: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except AOKRError as exc:
        print(f"aokr: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"aokr: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
