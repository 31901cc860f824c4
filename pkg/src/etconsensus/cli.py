"""Command-line front end: scenario loading, runs, sweeps, comparisons.

Scenario files are hierarchical YAML; every key a run depends on lives in
the file (plus the documented defaults), so one file and one seed fully
determine a run.  Keys carrying units say so in their name (dt_s,
t_final_s).
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
import yaml

from .graph import build_topology
from .dynamics import InertiaMatrix
from .sim import (AgentInitial, ConfigError, MetricsReport, SimConfig,
                  SimulationAbort, metrics, read_metrics_json, run, sweep,
                  write_metrics, write_trace_csv, write_trigger_trace_csv)
from .trigger import TriggerParams

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_RUNTIME = 3

_TRIGGER_KEYS = ("y0", "gamma", "kappa", "varpi", "theta", "lipschitz_p",
                 "x_m", "y_m")


@dataclass
class Scenario:
    """A named, fully validated run configuration plus its output location."""

    name: str
    config: SimConfig
    output_dir: Path


def _fail(path: str, msg: str) -> ConfigError:
    return ConfigError(f"{path}: {msg}")


def _matrix(raw, path: str, shape) -> np.ndarray:
    try:
        m = np.array(raw, dtype=float)
    except (TypeError, ValueError) as err:
        raise _fail(path, f"not a numeric matrix: {err}") from None
    if m.shape != shape:
        raise _fail(path, f"expected shape {shape}, got {m.shape}")
    return m


def _cost_matrix(block: dict, key: str, path: str, dim: int) -> np.ndarray:
    diag_key = f"{key}_diag"
    if diag_key in block:
        d = np.array(block[diag_key], dtype=float)
        if d.shape != (dim,):
            raise _fail(f"{path}.{diag_key}", f"expected {dim} entries")
        return np.diag(d)
    if key in block:
        return _matrix(block[key], f"{path}.{key}", (dim, dim))
    raise _fail(path, f"missing {key} (or {diag_key})")


def _trigger_params(merged: dict, path: str, mode: str) -> TriggerParams:
    unknown = set(merged) - set(_TRIGGER_KEYS)
    if unknown:
        raise _fail(path, f"unknown trigger keys {sorted(unknown)}")
    kwargs = {k: float(merged[k]) for k in merged}
    if mode == "self":
        # the self-triggered rule is the kappa = 0, varpi = 0 specialization
        kwargs["kappa"] = 0.0
        kwargs["varpi"] = 0.0
    try:
        return TriggerParams(**kwargs)
    except (TypeError, ValueError) as err:
        raise _fail(path, str(err)) from None


def load_scenario(path, mode_override=None, seed_override=None,
                  dt_override=None, t_final_override=None,
                  out_override=None) -> Scenario:
    """Load and fully validate a scenario file.

    ``path`` may be a file path or the bare name of a packaged scenario
    (e.g. ``paper_default``).  Overrides are applied before validation, so
    switching to self mode re-forces kappa = varpi = 0.
    """
    text, origin = _read_scenario_text(path)
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as err:
        where = ""
        mark = getattr(err, "problem_mark", None)
        if mark is not None:
            where = f" (line {mark.line + 1}, column {mark.column + 1})"
        raise ConfigError(f"{origin}: YAML parse error{where}: {err}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{origin}: scenario must be a mapping")

    name = str(raw.get("name", "")).strip()
    if not name:
        raise _fail("name", "scenario name must be nonempty")

    mode = str(mode_override or raw.get("mode", "dynamic"))
    seed = int(seed_override if seed_override is not None else raw.get("seed", 0))
    dt = float(dt_override if dt_override is not None else raw.get("dt_s", 0.01))
    t_final = float(t_final_override if t_final_override is not None
                    else raw.get("t_final_s", 40.0))
    integrator = str(raw.get("integrator", "rk4"))
    weight_init = float(raw.get("weight_init", 0.0))
    update_steps = int(raw.get("update_steps", 1))

    topo_block = raw.get("topology")
    if not isinstance(topo_block, dict) or "adjacency" not in topo_block:
        raise _fail("topology", "missing topology.adjacency")
    adj = np.array(topo_block["adjacency"], dtype=float)
    try:
        topology = build_topology(adj)
    except ValueError as err:
        raise _fail("topology.adjacency", str(err)) from None

    agents = raw.get("agents")
    if not isinstance(agents, list) or len(agents) != topology.n:
        raise _fail("agents", f"expected a list of {topology.n} agent blocks")
    defaults = raw.get("defaults", {}) or {}

    inertia, alphas, qs, rs, trigs, inits, rates = [], [], [], [], [], [], []
    init_weight_rows = []
    for idx, block in enumerate(agents):
        path_i = f"agents[{idx}]"
        if not isinstance(block, dict):
            raise _fail(path_i, "agent block must be a mapping")
        merged = {**defaults, **block}
        if "inertia" not in merged:
            raise _fail(path_i, "missing inertia")
        try:
            inertia.append(InertiaMatrix.from_matrix(
                _matrix(merged["inertia"], f"{path_i}.inertia", (3, 3))))
        except ValueError as err:
            raise _fail(f"{path_i}.inertia", str(err)) from None
        alphas.append(float(merged.get("alpha", 0.5)))
        rates.append(float(merged.get("learning_rate", 0.6)))
        qs.append(_cost_matrix(merged, "q", path_i, 6))
        rs.append(_cost_matrix(merged, "r", path_i, 3))
        trig_merged = {**(defaults.get("trigger") or {}),
                       **(block.get("trigger") or {})}
        trigs.append(_trigger_params(trig_merged, f"{path_i}.trigger", mode))
        init_block = merged.get("initial")
        if not isinstance(init_block, dict) or "sigma" not in init_block:
            raise _fail(path_i, "missing initial.sigma")
        inits.append(AgentInitial(
            sigma=np.array(init_block["sigma"], dtype=float),
            omega=np.array(init_block.get("omega", [0.0, 0.0, 0.0]), dtype=float),
            tau=np.array(init_block.get("tau", [0.0, 0.0, 0.0]), dtype=float)))
        w_init = merged.get("initial_weights")
        if w_init is not None:
            w_init = np.array(w_init, dtype=float)
            if w_init.shape != (21,):
                raise _fail(f"{path_i}.initial_weights", "expected 21 entries")
        init_weight_rows.append(w_init)

    if any(w is not None for w in init_weight_rows):
        initial_weights = np.stack([
            w if w is not None else np.zeros(21) for w in init_weight_rows])
    else:
        initial_weights = None

    config = SimConfig(
        topology=topology, inertia=inertia, alpha=np.array(alphas),
        q=qs, r=rs, trigger=trigs, trigger_mode=mode, dt=dt,
        t_final=t_final, integrator=integrator, seed=seed, initial=inits,
        learning_rate=np.array(rates), weight_init=weight_init,
        initial_weights=initial_weights, update_steps=update_steps)

    if out_override is not None:
        out = Path(out_override)
    else:
        out = Path(raw.get("output_dir", f"runs/{name}")) / mode
    return Scenario(name=name, config=config, output_dir=out)


def _read_scenario_text(path):
    p = Path(path)
    if p.exists():
        return p.read_text(), str(p)
    # bare name of a packaged scenario
    pkg_file = resources.files("etconsensus").joinpath(f"scenarios/{path}.yaml")
    if pkg_file.is_file():
        return pkg_file.read_text(), f"builtin scenario {path!r}"
    raise ConfigError(f"scenario {path!r}: no such file or builtin scenario")


def cmd_run(scenario: Scenario) -> int:
    """Run one scenario and write trace CSVs plus metrics JSON/text."""
    out = scenario.output_dir
    out.mkdir(parents=True, exist_ok=True)
    try:
        trace = run(scenario.config)
    except SimulationAbort as err:
        print(f"simulation aborted: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    report = metrics(trace)
    write_trace_csv(trace, out / "trace.csv")
    write_trigger_trace_csv(trace, out / "trigger_trace.csv")
    write_metrics(report, out / "metrics.json", out / "metrics.txt")
    for msg in trace.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    print(report.render_text(), end="")
    print(f"outputs written to {out}")
    return EXIT_OK


def compare_reports(a: MetricsReport, b: MetricsReport) -> str:
    """Side-by-side table of two runs over the same agent set."""
    ids_a = [ag.agent for ag in a.agents]
    ids_b = [ag.agent for ag in b.agents]
    if ids_a != ids_b:
        raise ConfigError(
            f"mismatched agent sets: {ids_a} vs {ids_b}")
    lines = [
        f"A: mode={a.mode} seed={a.seed}  B: mode={b.mode} seed={b.seed}",
        "agent  events_A  events_B  min_int_A  min_int_B"
        "  cost_A      cost_B      msgs_A  msgs_B",
    ]
    for ag_a, ag_b in zip(a.agents, b.agents):
        lines.append(
            f"{ag_a.agent:5d}  {ag_a.events:8d}  {ag_b.events:8d}  "
            f"{ag_a.min_interval_s:9.4g}  {ag_b.min_interval_s:9.4g}  "
            f"{ag_a.total_cost:10.5g}  {ag_b.total_cost:10.5g}  "
            f"{ag_a.messages_sent:6d}  {ag_b.messages_sent:6d}")
    lines.append(
        f"totals messages: A={a.total_messages} B={b.total_messages}  "
        f"neighbor reads: A={a.neighbor_state_reads} "
        f"B={b.neighbor_state_reads}  events: A={a.total_events} "
        f"B={b.total_events}")
    return "\n".join(lines) + "\n"


def cmd_compare(path_a, path_b) -> int:
    report = compare_reports(read_metrics_json(path_a),
                             read_metrics_json(path_b))
    print(report, end="")
    return EXIT_OK


def _add_overrides(parser):
    parser.add_argument("--mode", choices=("dynamic", "self", "periodic"))
    parser.add_argument("--seed", type=int)
    parser.add_argument("--out")
    parser.add_argument("--dt", type=float, help="step size override (s)")
    parser.add_argument("--t-final", type=float, help="horizon override (s)")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="etconsensus",
        description="Event-triggered attitude consensus simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one scenario")
    p_run.add_argument("scenario")
    _add_overrides(p_run)

    p_sweep = sub.add_parser("sweep", help="run several scenarios")
    p_sweep.add_argument("scenarios", nargs="+")
    _add_overrides(p_sweep)

    p_cmp = sub.add_parser("compare", help="compare two metrics files")
    p_cmp.add_argument("metrics_a")
    p_cmp.add_argument("metrics_b")

    p_val = sub.add_parser("validate", help="validate a scenario file")
    p_val.add_argument("scenario")

    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            scen = load_scenario(args.scenario, mode_override=args.mode,
                                 seed_override=args.seed, dt_override=args.dt,
                                 t_final_override=args.t_final,
                                 out_override=args.out)
            return cmd_run(scen)
        if args.command == "sweep":
            scens = [load_scenario(s, mode_override=args.mode,
                                   seed_override=args.seed,
                                   dt_override=args.dt,
                                   t_final_override=args.t_final,
                                   out_override=None)
                     for s in args.scenarios]
            if args.out is not None:
                base = Path(args.out)
                for s in scens:
                    s.output_dir = base / s.name / s.config.trigger_mode
            status = EXIT_OK
            for s in scens:
                code = cmd_run(s)
                status = status or code
            return status
        if args.command == "compare":
            return cmd_compare(args.metrics_a, args.metrics_b)
        if args.command == "validate":
            scen = load_scenario(args.scenario)
            cfg = scen.config
            print(f"scenario {scen.name!r}: valid "
                  f"({cfg.n_agents} agents, mode={cfg.trigger_mode}, "
                  f"dt={cfg.dt} s, t_final={cfg.t_final} s)")
            return EXIT_OK
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationAbort as err:
        print(f"simulation aborted: {err}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
