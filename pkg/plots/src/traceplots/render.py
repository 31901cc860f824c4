"""Figure regeneration from simulation trace CSVs and metrics JSON files.

Reads only the documented file schemas; nothing here imports or reruns the
simulator.  Every renderer returns the exact arrays it plotted, which is
the equality surface the tests check (pixel output varies by backend).

Trace CSV columns: t, then per-agent blocks a{i}_sigma1..3, a{i}_omega1..3,
a{i}_tau1..3, a{i}_delta1..3, a{i}_delta_norm, a{i}_u1..3, a{i}_y,
a{i}_event, a{i}_w_norm, a{i}_cost, a{i}_msgs.  The companion trigger CSV
carries a{i}_e_norm, a{i}_delta_bound, a{i}_threshold.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("norm_lines", "component_lines", "raster", "bound_vs_error",
         "compare_bars")


class SchemaError(ValueError):
    """Raised when an input file does not match its documented schema."""


@dataclass
class FigureSpec:
    """One figure to render: what kind, from which files, to which image."""

    kind: str
    inputs: list
    output: Path
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r}")
        self.inputs = [Path(p) for p in self.inputs]
        self.output = Path(self.output)
        for p in self.inputs:
            if not p.exists():
                raise SchemaError(f"input {p} does not exist")


def read_csv_columns(path) -> dict:
    """Parse a trace-style CSV into {column name: float array}."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise SchemaError(f"{path}: empty file") from None
        rows = [[float(v) for v in row] for row in reader]
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    data = np.array(rows)
    if data.shape[1] != len(header):
        raise SchemaError(f"{path}: ragged rows")
    return {name: data[:, k] for k, name in enumerate(header)}


def agent_count(columns: dict) -> int:
    ids = {int(m.group(1)) for name in columns
           if (m := re.match(r"a(\d+)_", name))}
    if not ids or ids != set(range(1, max(ids) + 1)):
        raise SchemaError("agent columns are not a contiguous a1..aN block")
    return max(ids)


def _need(columns: dict, name: str) -> np.ndarray:
    if name not in columns:
        raise SchemaError(f"missing column {name}")
    return columns[name]


def _vec3(columns, i, fieldname):
    return np.stack([_need(columns, f"a{i}_{fieldname}{c}") for c in (1, 2, 3)],
                    axis=1)


def read_metrics(path) -> dict:
    with open(path) as fh:
        doc = json.load(fh)
    for key in ("mode", "per_agent", "totals"):
        if key not in doc:
            raise SchemaError(f"{path}: missing key {key!r}")
    return doc


def render(spec: FigureSpec) -> dict:
    """Render one figure, write the image, return the plotted arrays."""
    renderer = {
        "norm_lines": _render_norm_lines,
        "component_lines": _render_component_lines,
        "raster": _render_raster,
        "bound_vs_error": _render_bound_vs_error,
        "compare_bars": _render_compare_bars,
    }[spec.kind]
    spec.output.parent.mkdir(parents=True, exist_ok=True)
    return renderer(spec)


def _finish(fig, spec):
    fig.savefig(spec.output, dpi=120)
    plt.close(fig)


def _render_norm_lines(spec):
    """Error norms over time: attitude/rate disagreement with agent 1, or a
    logged per-agent scalar column (w_norm, delta_norm, y, cost)."""
    columns = read_csv_columns(spec.inputs[0])
    n = agent_count(columns)
    t = _need(columns, "t")
    which = spec.options.get("field", "attitude")
    out = {"t": t}
    if which == "attitude":
        fig, (ax1, ax2) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
        s1 = _vec3(columns, 1, "sigma")
        w1 = _vec3(columns, 1, "omega")
        for i in range(2, n + 1):
            att = np.linalg.norm(_vec3(columns, i, "sigma") - s1, axis=1)
            rate = np.linalg.norm(_vec3(columns, i, "omega") - w1, axis=1)
            out[f"attitude_error_{i}"] = att
            out[f"rate_error_{i}"] = rate
            ax1.plot(t, att, label=f"agent {i}", color=f"C{i-1}")
            ax2.plot(t, rate, color=f"C{i-1}")
        ax1.set_ylabel("attitude error norm (-)")
        ax2.set_ylabel("rate error norm (rad/s)")
        ax2.set_xlabel("time (s)")
        ax1.legend(loc="upper right", fontsize=8)
        _finish(fig, spec)
        return out
    fig, ax = plt.subplots(figsize=(7, 4))
    for i in range(1, n + 1):
        series = _need(columns, f"a{i}_{which}")
        out[f"{which}_{i}"] = series
        ax.plot(t, series, label=f"agent {i}", color=f"C{i-1}")
    ax.set_xlabel("time (s)")
    ax.set_ylabel(which)
    ax.legend(loc="upper right", fontsize=8)
    _finish(fig, spec)
    return out


def _render_component_lines(spec):
    """Three stacked panels, one per vector component, all agents."""
    columns = read_csv_columns(spec.inputs[0])
    n = agent_count(columns)
    t = _need(columns, "t")
    fieldname = spec.options.get("field", "delta")
    labels = {"delta": "consensus error (-)", "tau": "torque (N m)",
              "u": "compensator input (-)"}
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)
    out = {"t": t}
    for c in range(3):
        for i in range(1, n + 1):
            series = _need(columns, f"a{i}_{fieldname}{c + 1}")
            out[f"{fieldname}{c + 1}_{i}"] = series
            axes[c].plot(t, series, label=f"agent {i}" if c == 0 else None,
                         color=f"C{i-1}", linewidth=0.9)
        axes[c].set_ylabel(f"{labels.get(fieldname, fieldname)} [{c + 1}]")
    axes[0].legend(loc="upper right", fontsize=8)
    axes[2].set_xlabel("time (s)")
    _finish(fig, spec)
    return out


def _render_raster(spec):
    """Event instants per agent, one row of ticks per agent."""
    columns = read_csv_columns(spec.inputs[0])
    n = agent_count(columns)
    t = _need(columns, "t")
    out = {}
    fig, ax = plt.subplots(figsize=(7, 4))
    for i in range(1, n + 1):
        times = t[_need(columns, f"a{i}_event") > 0.5]
        out[f"event_times_{i}"] = times
        ax.eventplot(times, lineoffsets=i, linelengths=0.8, colors=f"C{i-1}")
    ax.set_xlabel("time (s)")
    ax.set_ylabel("agent")
    ax.set_yticks(range(1, n + 1))
    _finish(fig, spec)
    return out


def _render_bound_vs_error(spec):
    """Measurement-error growth bound against the trigger threshold (and the
    realized error norm) per agent, from the companion trigger CSV."""
    columns = read_csv_columns(spec.inputs[0])
    n = agent_count(columns)
    t = _need(columns, "t")
    rows = (n + 2) // 3
    fig, axes = plt.subplots(rows, 3, figsize=(11, 3 * rows),
                             sharex=True, squeeze=False)
    out = {"t": t}
    for i in range(1, n + 1):
        ax = axes[(i - 1) // 3][(i - 1) % 3]
        bound = _need(columns, f"a{i}_delta_bound")
        err = _need(columns, f"a{i}_e_norm")
        thr = _need(columns, f"a{i}_threshold")
        out[f"bound_{i}"] = bound
        out[f"e_norm_{i}"] = err
        out[f"threshold_{i}"] = thr
        ax.plot(t, bound, label="growth bound", color="C0", linewidth=0.9)
        ax.plot(t, err, label="measured error", color="C2", linewidth=0.9)
        if np.any(np.isfinite(thr)):
            ax.plot(t, thr, label="threshold", color="C3", linewidth=0.9)
        ax.set_title(f"agent {i}", fontsize=9)
        if i == 1:
            ax.legend(fontsize=7)
    for ax in axes[-1]:
        ax.set_xlabel("time (s)")
    _finish(fig, spec)
    return out


def _render_compare_bars(spec):
    """Grouped bars of per-agent event counts and minimum intervals for two
    runs (e.g. dynamic vs self-triggered)."""
    if len(spec.inputs) != 2:
        raise SchemaError("compare_bars needs exactly two metrics files")
    rep_a = read_metrics(spec.inputs[0])
    rep_b = read_metrics(spec.inputs[1])
    agents_a = [int(a["agent"]) for a in rep_a["per_agent"]]
    agents_b = [int(a["agent"]) for a in rep_b["per_agent"]]
    if agents_a != agents_b:
        raise SchemaError("metrics files cover different agent sets")
    events_a = np.array([a["events"] for a in rep_a["per_agent"]], dtype=float)
    events_b = np.array([a["events"] for a in rep_b["per_agent"]], dtype=float)
    mins_a = np.array([a["min_interval_s"] for a in rep_a["per_agent"]])
    mins_b = np.array([a["min_interval_s"] for a in rep_b["per_agent"]])
    x = np.arange(len(agents_a))
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
    ax1.bar(x - 0.2, events_a, width=0.4, label=rep_a["mode"])
    ax1.bar(x + 0.2, events_b, width=0.4, label=rep_b["mode"])
    ax1.set_xticks(x, [str(a) for a in agents_a])
    ax1.set_xlabel("agent")
    ax1.set_ylabel("event count")
    ax1.legend(fontsize=8)
    ax2.bar(x - 0.2, mins_a, width=0.4, label=rep_a["mode"])
    ax2.bar(x + 0.2, mins_b, width=0.4, label=rep_b["mode"])
    ax2.set_xticks(x, [str(a) for a in agents_a])
    ax2.set_xlabel("agent")
    ax2.set_ylabel("min inter-event interval (s)")
    _finish(fig, spec)
    return {"agents": np.array(agents_a, dtype=float),
            "events_a": events_a, "events_b": events_b,
            "min_intervals_a": mins_a, "min_intervals_b": mins_b}


def default_figure_set(run_dir, out_dir=None, compare_with=None) -> list:
    """The standard figure set for one run directory (trace.csv,
    trigger_trace.csv, metrics.json), optionally with a second metrics file
    for the comparison bars."""
    run_dir = Path(run_dir)
    out_dir = Path(out_dir) if out_dir is not None else run_dir / "figures"
    trace = run_dir / "trace.csv"
    trig = run_dir / "trigger_trace.csv"
    specs = [
        FigureSpec("norm_lines", [trace], out_dir / "error_norms.png"),
        FigureSpec("norm_lines", [trace], out_dir / "critic_weight_norms.png",
                   {"field": "w_norm"}),
        FigureSpec("component_lines", [trace], out_dir / "consensus_error.png",
                   {"field": "delta"}),
        FigureSpec("component_lines", [trace], out_dir / "torque_inputs.png",
                   {"field": "tau"}),
        FigureSpec("component_lines", [trace], out_dir / "learned_inputs.png",
                   {"field": "u"}),
        FigureSpec("raster", [trace], out_dir / "event_raster.png"),
        FigureSpec("bound_vs_error", [trig], out_dir / "bound_vs_error.png"),
    ]
    if compare_with is not None:
        specs.append(FigureSpec(
            "compare_bars", [run_dir / "metrics.json", compare_with],
            out_dir / "mode_comparison.png"))
    return specs
