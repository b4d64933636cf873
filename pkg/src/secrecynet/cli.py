"""Command-line interface: single-point analysis, simulation, and parameter
sweeps that produce the curve files behind the standard figures.

Curve points are serialized with 12 significant digits; values are rounded the
same way at construction, so CSV and JSON files round-trip exactly.
"""

from __future__ import annotations

import argparse
import configparser
import csv
import io
import json
import sys
from dataclasses import dataclass, fields

from .analytics import (asym_ergodic, asym_prob_nonzero, asym_sop,
                        ergodic_secrecy_capacity, prob_nonzero_secrecy,
                        secrecy_outage_prob)
from .model import (FadingParams, Scheme, SystemConfig, db_to_linear,
                    power_budget)
from .montecarlo import MCConfig, estimate
from .os_numeric import QuadSpec, os_prob_nonzero_secrecy, os_secrecy_outage

METRICS = ("prob_nonzero", "sop", "ergodic_capacity")

# mean channel gains in dB shared by all standard scenarios; the
# eavesdropper gain is scenario-specific
BASE_GAINS_DB = {"sd": 3.0, "sr": -3.0, "td": -6.0, "te": 6.0, "tr": 3.0}


def fading_from_gains_db(se: float, sd: float = 3.0, sr: float = -3.0,
                         td: float = -6.0, te: float = 6.0, tr: float = 3.0) -> FadingParams:
    """FadingParams from mean channel gains in dB (rate = 1/mean gain)."""
    return FadingParams(lambda_sd=db_to_linear(-sd), lambda_se=db_to_linear(-se),
                        lambda_sr=db_to_linear(-sr), lambda_td=db_to_linear(-td),
                        lambda_te=db_to_linear(-te), lambda_tr=db_to_linear(-tr))


def _round12(x: float | None) -> float | None:
    if x is None:
        return None
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class SweepSpec:
    """A family of curves: cartesian product of the listed parameters."""

    schemes: tuple
    metric: str
    gamma_T_dB: tuple
    k_values: tuple
    backhaul: tuple
    phi: tuple
    beta: float
    r_th: float
    fading: FadingParams
    n_trials: int = 0
    seed: int = 1
    workers: int = 1

    def __post_init__(self) -> None:
        if not self.schemes or not all(isinstance(s, Scheme) for s in self.schemes):
            raise ValueError("schemes must be a nonempty tuple of Scheme members")
        if self.metric not in METRICS:
            raise ValueError(f"metric must be one of {METRICS}, got {self.metric!r}")
        if self.metric == "ergodic_capacity" and Scheme.OS in self.schemes:
            raise ValueError("the optimal scheme has no ergodic-capacity analytics")
        if self.metric == "sop" and self.r_th <= 0.0:
            raise ValueError("sop sweeps require r_th > 0")
        if not self.gamma_T_dB:
            raise ValueError("gamma_T_dB must be nonempty")
        if not self.k_values or not all(isinstance(k, int) and k >= 1 for k in self.k_values):
            raise ValueError("k_values must be a nonempty tuple of integers >= 1")
        if not self.backhaul or not all(0.0 <= v <= 1.0 for v in self.backhaul):
            raise ValueError("backhaul values must lie in [0, 1]")
        if not self.phi or not all(0.0 < v < 1.0 for v in self.phi):
            raise ValueError("phi values must lie in (0, 1)")
        if not (isinstance(self.n_trials, int) and self.n_trials >= 0):
            raise ValueError("n_trials must be an integer >= 0 (0 disables simulation)")


@dataclass(frozen=True)
class CurvePoint:
    """One operating point of one curve, with every value that the standard
    figures need. Missing values (inapplicable or not computed) are None."""

    scheme: str
    metric: str
    gamma_T_dB: float
    K: int
    Lambda: float
    Phi: float
    R_th: float
    analytic: float | None
    asymptotic: float | None
    mc_mean: float | None
    mc_stderr: float | None
    n_trials: int
    seed: int

    def __post_init__(self) -> None:
        for name in ("gamma_T_dB", "Lambda", "Phi", "R_th", "analytic",
                     "asymptotic", "mc_mean", "mc_stderr"):
            object.__setattr__(self, name, _round12(getattr(self, name)))


CSV_COLUMNS = tuple(f.name for f in fields(CurvePoint))


def _analytic_value(scheme: Scheme, metric: str, cfg: SystemConfig,
                    quad: QuadSpec) -> float:
    if metric == "prob_nonzero":
        if scheme is Scheme.OS:
            return os_prob_nonzero_secrecy(cfg, quad)
        return prob_nonzero_secrecy(scheme, cfg)
    if metric == "sop":
        if scheme is Scheme.OS:
            return os_secrecy_outage(cfg, quad)
        return secrecy_outage_prob(scheme, cfg)
    return ergodic_secrecy_capacity(scheme, cfg)


def _asymptotic_value(scheme: Scheme, metric: str, cfg: SystemConfig) -> float:
    if metric == "prob_nonzero":
        return asym_prob_nonzero(scheme, cfg)
    if metric == "sop":
        return asym_sop(scheme, cfg)
    return asym_ergodic(scheme, cfg)


def run_sweep(spec: SweepSpec, quad: QuadSpec = QuadSpec()) -> list[CurvePoint]:
    """All curve points of a sweep, in deterministic order."""
    points = []
    for scheme in spec.schemes:
        for k in spec.k_values:
            for lam in spec.backhaul:
                for phi in spec.phi:
                    for g_db in spec.gamma_T_dB:
                        cfg = SystemConfig(
                            K=k, backhaul_reliability=lam, primary_qos=phi,
                            primary_rate=spec.beta, secrecy_threshold=spec.r_th,
                            gamma_T=db_to_linear(g_db), fading=spec.fading)
                        mc_mean = mc_stderr = None
                        if spec.n_trials > 0:
                            mc = estimate(scheme, cfg, MCConfig(
                                n_trials=spec.n_trials, seed=spec.seed,
                                workers=spec.workers))
                            est = getattr(mc, spec.metric)
                            mc_mean, mc_stderr = est.mean, est.stderr
                        points.append(CurvePoint(
                            scheme=scheme.value, metric=spec.metric,
                            gamma_T_dB=g_db, K=k, Lambda=lam, Phi=phi,
                            R_th=spec.r_th,
                            analytic=_analytic_value(scheme, spec.metric, cfg, quad),
                            asymptotic=_asymptotic_value(scheme, spec.metric, cfg),
                            mc_mean=mc_mean, mc_stderr=mc_stderr,
                            n_trials=spec.n_trials, seed=spec.seed))
    return points


def presets() -> dict:
    """Standard sweeps reproducing the reference figures.

    fig2-fig4: nonzero-secrecy rate over gamma_T, varying backhaul
    reliability, transmitter count, and primary constraint; fig5-fig7 the
    same three studies for the outage probability; fig8 and fig11 the ergodic
    capacity studies; fig9 and fig10 the optimal scheme under improved
    cross-network channel qualities (with -td, -te, -sr variants).
    """
    gammas = tuple(float(g) for g in range(0, 41, 5))
    all_schemes = (Scheme.STS, Scheme.MIS, Scheme.MES, Scheme.OS)
    erg_schemes = (Scheme.STS, Scheme.MIS, Scheme.MES)
    nz_fading = fading_from_gains_db(se=30.0)
    strong_eaves = fading_from_gains_db(se=-3.0)

    def spec(**kw):
        base = dict(gamma_T_dB=gammas, k_values=(6,), backhaul=(0.99,),
                    phi=(0.1,), beta=0.5, r_th=0.5, n_trials=200_000, seed=1)
        base.update(kw)
        return SweepSpec(**base)

    out = {
        "fig2": spec(schemes=all_schemes, metric="prob_nonzero",
                     backhaul=(0.8, 0.99), fading=nz_fading),
        "fig3": spec(schemes=all_schemes, metric="prob_nonzero",
                     k_values=(2, 6), fading=nz_fading),
        "fig4": spec(schemes=all_schemes, metric="prob_nonzero",
                     phi=(0.01, 0.1), fading=nz_fading),
        "fig5": spec(schemes=all_schemes, metric="sop",
                     backhaul=(0.8, 0.99), fading=strong_eaves),
        "fig6": spec(schemes=all_schemes, metric="sop",
                     k_values=(2, 6), fading=strong_eaves),
        "fig7": spec(schemes=all_schemes, metric="sop",
                     phi=(0.01, 0.1), fading=strong_eaves),
        "fig8": spec(schemes=erg_schemes, metric="ergodic_capacity",
                     backhaul=(0.8, 0.99), fading=strong_eaves),
        "fig9": spec(schemes=(Scheme.OS,), metric="prob_nonzero", fading=nz_fading),
        "fig10": spec(schemes=(Scheme.OS,), metric="sop", fading=strong_eaves),
        "fig11": spec(schemes=erg_schemes, metric="ergodic_capacity",
                      k_values=(2, 6), fading=strong_eaves),
    }
    # improved cross-network channel qualities for the fig9/fig10 studies
    for tag, gains in (("td", {"td": -3.0}), ("te", {"te": 0.0}), ("sr", {"sr": 3.0})):
        out[f"fig9-{tag}"] = spec(schemes=(Scheme.OS,), metric="prob_nonzero",
                                  fading=fading_from_gains_db(se=30.0, **gains))
        out[f"fig10-{tag}"] = spec(schemes=(Scheme.OS,), metric="sop",
                                   fading=fading_from_gains_db(se=-3.0, **gains))
    return out


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


def write_curve_csv(points: list, stream) -> None:
    """CSV with the fixed column set, 12 significant digits, one header row."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for p in points:
        writer.writerow([_format_cell(getattr(p, col)) for col in CSV_COLUMNS])


def read_curve_csv(stream) -> list:
    """Inverse of write_curve_csv."""
    reader = csv.reader(stream)
    header = next(reader)
    if tuple(header) != CSV_COLUMNS:
        raise ValueError(f"unexpected curve file header: {header!r}")
    points = []
    for row in reader:
        rec = dict(zip(CSV_COLUMNS, row))
        points.append(CurvePoint(
            scheme=rec["scheme"], metric=rec["metric"],
            gamma_T_dB=float(rec["gamma_T_dB"]), K=int(rec["K"]),
            Lambda=float(rec["Lambda"]), Phi=float(rec["Phi"]),
            R_th=float(rec["R_th"]),
            analytic=float(rec["analytic"]) if rec["analytic"] else None,
            asymptotic=float(rec["asymptotic"]) if rec["asymptotic"] else None,
            mc_mean=float(rec["mc_mean"]) if rec["mc_mean"] else None,
            mc_stderr=float(rec["mc_stderr"]) if rec["mc_stderr"] else None,
            n_trials=int(rec["n_trials"]), seed=int(rec["seed"])))
    return points


def write_curve_json(points: list, stream) -> None:
    json.dump([{col: getattr(p, col) for col in CSV_COLUMNS} for p in points],
              stream, indent=2)
    stream.write("\n")


def read_curve_json(stream) -> list:
    return [CurvePoint(**rec) for rec in json.load(stream)]


def load_sweep_config(path: str) -> SweepSpec:
    """SweepSpec from an INI file with a [sweep] and optional [fading] section."""
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_file(fh)
    if "sweep" not in parser:
        raise ValueError(f"config file {path!r} has no [sweep] section")
    sw = parser["sweep"]
    fd = parser["fading"] if "fading" in parser else {}

    def floats(key, default=None):
        if key not in sw:
            if default is None:
                raise ValueError(f"config is missing required key {key!r}")
            return default
        return tuple(float(v) for v in sw[key].replace(",", " ").split())

    schemes = tuple(Scheme(v.strip().upper())
                    for v in sw.get("schemes", "STS,MIS,MES,OS").replace(",", " ").split())
    gains = dict(BASE_GAINS_DB)
    gains["se"] = 30.0
    for key in ("sd", "se", "sr", "td", "te", "tr"):
        if f"{key}_db" in fd:
            gains[key] = float(fd[f"{key}_db"])
    return SweepSpec(
        schemes=schemes,
        metric=sw.get("metric", "prob_nonzero"),
        gamma_T_dB=floats("gamma_t_db"),
        k_values=tuple(int(v) for v in sw.get("k", "6").replace(",", " ").split()),
        backhaul=floats("backhaul", (0.99,)),
        phi=floats("phi", (0.1,)),
        beta=float(sw.get("beta", "0.5")),
        r_th=float(sw.get("rth", "0.5")),
        fading=fading_from_gains_db(**gains),
        n_trials=int(sw.get("trials", "0")),
        seed=int(sw.get("seed", "1")),
        workers=int(sw.get("workers", "1")))


def _point_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--scheme", required=True,
                     type=lambda s: Scheme(s.upper()),
                     help="transmitter selection: sts, mis, mes, or os")
    sub.add_argument("--k", type=int, default=6, help="number of transmitters")
    sub.add_argument("--backhaul", type=float, default=0.99,
                     help="backhaul delivery probability")
    sub.add_argument("--phi", type=float, default=0.1,
                     help="primary outage probability cap")
    sub.add_argument("--beta", type=float, default=0.5,
                     help="protected primary rate, bits/s/Hz")
    sub.add_argument("--rth", type=float, default=0.5,
                     help="secrecy rate threshold, bits/s/Hz")
    sub.add_argument("--gamma-t-db", type=float, default=20.0,
                     help="primary transmit SNR in dB")
    sub.add_argument("--se-db", type=float, default=30.0,
                     help="mean eavesdropper channel gain in dB")


def _cfg_from_args(args) -> SystemConfig:
    return SystemConfig(K=args.k, backhaul_reliability=args.backhaul,
                        primary_qos=args.phi, primary_rate=args.beta,
                        secrecy_threshold=args.rth,
                        gamma_T=db_to_linear(args.gamma_t_db),
                        fading=fading_from_gains_db(se=args.se_db))


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _cmd_analyze(args) -> int:
    cfg = _cfg_from_args(args)
    quad = QuadSpec(rel_tol=args.tol)
    budget = power_budget(args.scheme, cfg)
    result = {
        "scheme": args.scheme.value,
        "gamma_T_dB": args.gamma_t_db,
        "power_budget": {"xi": budget.xi, "gamma_S": budget.gamma_S,
                         "active": budget.active},
        "prob_nonzero": _analytic_value(args.scheme, "prob_nonzero", cfg, quad),
        "sop": _analytic_value(args.scheme, "sop", cfg, quad),
        "ergodic_capacity": (None if args.scheme is Scheme.OS
                             else ergodic_secrecy_capacity(args.scheme, cfg)),
        "asym_prob_nonzero": asym_prob_nonzero(args.scheme, cfg),
        "asym_sop": asym_sop(args.scheme, cfg),
        "asym_ergodic": (None if args.scheme is Scheme.OS
                         else asym_ergodic(args.scheme, cfg)),
    }
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    return 0


def _cmd_simulate(args) -> int:
    cfg = _cfg_from_args(args)
    mc = estimate(args.scheme, cfg,
                  MCConfig(n_trials=args.trials, seed=args.seed, workers=args.workers))
    result = {"scheme": args.scheme.value, "gamma_T_dB": args.gamma_t_db}
    for name in ("prob_nonzero", "sop", "ergodic_capacity", "primary_outage"):
        est = getattr(mc, name)
        result[name] = {"mean": est.mean, "stderr": est.stderr,
                        "n": est.n, "seed": est.seed}
    _emit(json.dumps(result, indent=2) + "\n", args.out)
    return 0


def _write_points(points: list, args) -> None:
    buf = io.StringIO()
    if args.format == "csv":
        write_curve_csv(points, buf)
    else:
        write_curve_json(points, buf)
    _emit(buf.getvalue(), args.out)


def _override_spec(spec: SweepSpec, args) -> SweepSpec:
    kw = {}
    if args.trials is not None:
        kw["n_trials"] = args.trials
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.workers is not None:
        kw["workers"] = args.workers
    if not kw:
        return spec
    current = {f.name: getattr(spec, f.name) for f in fields(SweepSpec)}
    current.update(kw)
    return SweepSpec(**current)


def _cmd_sweep(args, parser) -> int:
    if (args.config is None) == (args.preset is None):
        parser.error("sweep needs exactly one of --config or --preset")
    if args.preset is not None:
        table = presets()
        if args.preset not in table:
            parser.error(f"unknown preset {args.preset!r}; "
                         f"available: {', '.join(sorted(table))}")
        spec = table[args.preset]
    else:
        spec = load_sweep_config(args.config)
    spec = _override_spec(spec, args)
    _write_points(run_sweep(spec), args)
    return 0


def _cmd_figure(args, parser) -> int:
    table = presets()
    if args.preset not in table:
        parser.error(f"unknown preset {args.preset!r}; "
                     f"available: {', '.join(sorted(table))}")
    spec = _override_spec(table[args.preset], args)
    _write_points(run_sweep(spec), args)
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="secrecynet",
        description="Secrecy performance of a spectrum-sharing small-cell "
                    "downlink with unreliable wireless backhaul.")
    subs = parser.add_subparsers(dest="command", required=True)

    p_analyze = subs.add_parser("analyze", help="closed-form metrics at one point")
    _point_args(p_analyze)
    p_analyze.add_argument("--tol", type=float, default=1e-8,
                           help="relative tolerance of the optimal-scheme quadrature")
    p_analyze.add_argument("--out", default=None, help="output file (default stdout)")

    p_sim = subs.add_parser("simulate", help="Monte Carlo estimates at one point")
    _point_args(p_sim)
    p_sim.add_argument("--trials", type=int, default=1_000_000)
    p_sim.add_argument("--seed", type=int, default=1)
    p_sim.add_argument("--workers", type=int, default=1)
    p_sim.add_argument("--out", default=None, help="output file (default stdout)")

    p_sweep = subs.add_parser("sweep", help="curve family from a config or preset")
    p_sweep.add_argument("--config", default=None, help="INI sweep description")
    p_sweep.add_argument("--preset", default=None, help="named standard sweep")
    p_sweep.add_argument("--trials", type=int, default=None)
    p_sweep.add_argument("--seed", type=int, default=None)
    p_sweep.add_argument("--workers", type=int, default=None)
    p_sweep.add_argument("--out", default=None, help="output file (default stdout)")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")

    p_fig = subs.add_parser("figure", help="write the curve file of one standard figure")
    p_fig.add_argument("--preset", required=True)
    p_fig.add_argument("--trials", type=int, default=None)
    p_fig.add_argument("--seed", type=int, default=None)
    p_fig.add_argument("--workers", type=int, default=None)
    p_fig.add_argument("--out", default=None, help="output file (default stdout)")
    p_fig.add_argument("--format", choices=("csv", "json"), default="csv")

    args = parser.parse_args(argv)
    if args.command == "analyze":
        return _cmd_analyze(args)
    if args.command == "simulate":
        return _cmd_simulate(args)
    if args.command == "sweep":
        return _cmd_sweep(args, parser)
    return _cmd_figure(args, parser)


if __name__ == "__main__":
    sys.exit(main())
