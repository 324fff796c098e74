"""Figure rendering for the CLI report paths.

Figures are saved next to the delimited tables; the tables stay the
authoritative output, the figures are a convenience view.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def save_prediction_figure(series, predictions, path):
    """Observed series with the predicted horizon appended."""
    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(series.times(), series.values(), lw=0.8, color="0.3", label="observed")
    ax.plot(
        [p.t for p in predictions],
        [p.value for p in predictions],
        lw=1.2,
        color="tab:red",
        label="predicted",
    )
    ax.set_xlabel("time (s)")
    ax.set_ylabel(f"{series.component} (m)")
    ax.set_title(f"{series.station_id} {series.component}: {len(predictions)}-step prediction")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_outlier_figure(series, flags, path):
    """Series with flagged epochs marked."""
    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(series.times(), series.values(), lw=0.8, color="0.3", label="series")
    if flags:
        ax.scatter(
            [f.epoch for f in flags],
            [f.observed for f in flags],
            marker="x",
            color="tab:red",
            zorder=3,
            label=f"{len(flags)} flagged",
        )
    ax.set_xlabel("time (s)")
    ax.set_ylabel(f"{series.component} (m)")
    ax.set_title(f"{series.station_id} {series.component}: outlier detection")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_event_figure(series, predictions, report, path):
    """Series, predicted horizon, and the predicted event onset."""
    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(series.times(), series.values(), lw=0.8, color="0.3", label="observed")
    ax.plot(
        [p.t for p in predictions],
        [p.value for p in predictions],
        lw=1.2,
        color="tab:red",
        label="predicted",
    )
    ax.axvline(report.predicted_event_time, color="tab:blue", ls="--", lw=1.0, label="predicted onset")
    ax.set_xlabel("time (s)")
    ax.set_ylabel(f"{series.component} (m)")
    ax.set_title(f"{series.station_id} {series.component}: event prediction")
    ax.legend(loc="best", frameon=False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_metrics_figure(report, path):
    """Bar chart of the four error criteria."""
    fig, ax = plt.subplots(figsize=(6, 4))
    names = ["sMAPE (%)", "MASE", "StD (m)", "MAE (m)"]
    values = [report.smape, report.mase, report.std, report.mae]
    ax.bar(names, values, color="0.5")
    for i, v in enumerate(values):
        ax.text(i, v, f"{v:.3g}", ha="center", va="bottom", fontsize=9)
    ax.set_title(f"prediction errors over q={report.q} steps")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
