"""Load curve CSV files and render metric-versus-SNR comparison figures."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

# column contract of the curve files produced by the analytics CLI
REQUIRED_COLUMNS = ("scheme", "metric", "gamma_T_dB", "K", "Lambda", "Phi",
                    "R_th", "analytic", "asymptotic", "mc_mean", "mc_stderr",
                    "n_trials", "seed")

Y_LABELS = {
    "prob_nonzero": "Probability of non-zero secrecy rate",
    "sop": "Secrecy outage probability",
    "ergodic_capacity": "Ergodic secrecy capacity (bits/s/Hz)",
}
LOG_METRICS = frozenset({"sop"})

_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
           "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")

# grouping keys and titles of the standard figures; the curve CSV of each
# preset holds exactly one metric, so no metric filter is needed here
FIGURE_PRESETS = {
    "fig2": (("scheme", "Lambda"), "Non-zero secrecy rate vs backhaul reliability"),
    "fig3": (("scheme", "K"), "Non-zero secrecy rate vs transmitter count"),
    "fig4": (("scheme", "Phi"), "Non-zero secrecy rate vs primary QoS target"),
    "fig5": (("scheme", "Lambda"), "Secrecy outage vs backhaul reliability"),
    "fig6": (("scheme", "K"), "Secrecy outage vs transmitter count"),
    "fig7": (("scheme", "Phi"), "Secrecy outage vs primary QoS target"),
    "fig8": (("scheme", "Lambda"), "Ergodic secrecy capacity vs backhaul reliability"),
    "fig9": (("scheme",), "Optimal scheme, baseline channel qualities"),
    "fig10": (("scheme",), "Optimal scheme, baseline channel qualities"),
    "fig11": (("scheme", "K"), "Ergodic secrecy capacity vs transmitter count"),
    "fig9-td": (("scheme",), "Optimal scheme, improved destination link"),
    "fig9-te": (("scheme",), "Optimal scheme, weaker eavesdropper interference"),
    "fig9-sr": (("scheme",), "Optimal scheme, improved primary-protection link"),
    "fig10-td": (("scheme",), "Optimal scheme, improved destination link"),
    "fig10-te": (("scheme",), "Optimal scheme, weaker eavesdropper interference"),
    "fig10-sr": (("scheme",), "Optimal scheme, improved primary-protection link"),
}


@dataclass(frozen=True)
class FigureSpec:
    """What to plot from one curve CSV and where to write the image."""

    input_path: str
    output_path: str
    metric: str | None = None
    group_keys: tuple = ("scheme",)
    title: str = ""
    x_label: str = "Primary transmit SNR (dB)"
    y_label: str | None = None
    dpi: int = 150

    def __post_init__(self) -> None:
        if not self.group_keys:
            raise ValueError("group_keys must name at least one CSV column")


@dataclass(frozen=True)
class RenderResult:
    """Where the image went and what it contains."""

    output_path: str
    metric: str
    curves: tuple
    y_scale: str


def load_rows(path: str) -> list:
    """Rows of a curve CSV as dicts; numeric fields parsed, blanks as None."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = tuple(reader.fieldnames or ())
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise ValueError(f"curve file {path!r} lacks columns: {missing}")
        rows = []
        for raw in reader:
            row = dict(raw)
            for col in ("gamma_T_dB", "Lambda", "Phi", "R_th", "analytic",
                        "asymptotic", "mc_mean", "mc_stderr"):
                row[col] = float(raw[col]) if raw[col] else None
            for col in ("K", "n_trials", "seed"):
                row[col] = int(raw[col])
            rows.append(row)
    return rows


def _group_label(keys: tuple, values: tuple) -> str:
    parts = []
    for key, value in zip(keys, values):
        parts.append(str(value) if key == "scheme" else f"{key}={value}")
    return ", ".join(parts)


def render(spec: FigureSpec) -> RenderResult:
    """Draw one figure: a curve per group with the analytic line, the high-SNR
    asymptote as a horizontal guide, and simulation markers with 3-stderr bars."""
    rows = load_rows(spec.input_path)
    for key in spec.group_keys:
        if rows and key not in rows[0]:
            raise ValueError(f"grouping key {key!r} is not a CSV column")

    metrics = sorted({row["metric"] for row in rows})
    metric = spec.metric
    if metric is None:
        if len(metrics) != 1:
            raise ValueError(f"curve file holds metrics {metrics}; "
                             "pick one with the metric filter")
        metric = metrics[0]
    rows = [row for row in rows if row["metric"] == metric]
    if not rows:
        raise ValueError(f"no rows with metric {metric!r} in {spec.input_path!r}")

    groups: dict = {}
    for row in rows:  # appearance order; the CLI writes a deterministic order
        key = tuple(row[k] for k in spec.group_keys)
        groups.setdefault(key, []).append(row)

    y_scale = "log" if metric in LOG_METRICS else "linear"
    with plt.rc_context({"font.family": "DejaVu Sans", "figure.figsize": (7.0, 5.0)}):
        fig, ax = plt.subplots()
        labels = []
        for i, (key, members) in enumerate(groups.items()):
            members.sort(key=lambda row: row["gamma_T_dB"])
            color = _COLORS[i % len(_COLORS)]
            label = _group_label(spec.group_keys, key)
            labels.append(label)

            line = [(r["gamma_T_dB"], r["analytic"]) for r in members
                    if r["analytic"] is not None]
            if line:
                xs, ys = zip(*line)
                ax.plot(xs, ys, color=color, label=label,
                        marker="." if len(xs) == 1 else None)
            asym = next((r["asymptotic"] for r in reversed(members)
                         if r["asymptotic"] is not None), None)
            if asym is not None and (y_scale == "linear" or asym > 0.0):
                ax.axhline(asym, color=color, linestyle="--", linewidth=0.9,
                           alpha=0.6)
            bars = [(r["gamma_T_dB"], r["mc_mean"], 3.0 * r["mc_stderr"])
                    for r in members if r["mc_mean"] is not None]
            if bars:
                xs, ys, errs = zip(*bars)
                ax.errorbar(xs, ys, yerr=errs, color=color, linestyle="none",
                            marker="o", markersize=3.5, capsize=2.5,
                            markerfacecolor="none")

        ax.set_yscale(y_scale)
        ax.set_xlabel(spec.x_label)
        ax.set_ylabel(spec.y_label or Y_LABELS.get(metric, metric))
        if spec.title:
            ax.set_title(spec.title)
        ax.grid(True, alpha=0.3)
        ax.legend(fontsize=9, framealpha=0.9)
        fig.savefig(spec.output_path, dpi=spec.dpi,
                    metadata={"Software": "secrecyfig"})
        plt.close(fig)
    return RenderResult(output_path=spec.output_path, metric=metric,
                        curves=tuple(labels), y_scale=y_scale)
