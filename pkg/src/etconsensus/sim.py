"""Closed-loop network simulation with asynchronous per-agent triggering.

One run integrates the physical states of every agent with a fixed step,
checks each agent's trigger once per step in ascending index order, and at
events performs the critic update, replaces the held control and pushes it
to the out-neighbors.  Consensus errors are derived algebraically from the
physical states every step; nothing in the control path evaluates the
plant model.

A control pushed at step k is visible to every receiver from step k onward
(same-step for lower-index senders, next step for higher); the induced
asymmetry is below integrator error at the default step size.
"""

from __future__ import annotations

import concurrent.futures
import csv
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .critic import CriticState, PHI_DIM, policy_iteration_step, value
from .dynamics import consensus_error
from .graph import Topology, is_strongly_connected
from .trigger import (TriggerState, dynamic_condition_holds,
                      measurement_error, self_condition_holds,
                      self_measurement_bound, self_threshold, y_step,
                      zeno_lower_bound)

logger = logging.getLogger(__name__)

MODES = ("dynamic", "self", "periodic")
INTEGRATORS = ("euler", "rk4")


class ConfigError(ValueError):
    """Raised when a simulation configuration violates an invariant."""


class SimulationAbort(RuntimeError):
    """Raised when a run produces a non-finite state."""


class SweepError(RuntimeError):
    """Raised after a sweep finishes if any member run failed."""


@dataclass
class AgentInitial:
    """Initial physical state of one agent."""

    sigma: np.ndarray
    omega: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        self.sigma = np.array(self.sigma, dtype=float).reshape(3)
        self.omega = np.array(self.omega, dtype=float).reshape(3)
        self.tau = np.array(self.tau, dtype=float).reshape(3)


@dataclass
class SimConfig:
    """Everything one deterministic run needs.

    ``weight_init`` is the half-width of the seeded uniform initial critic
    weights; zero keeps the all-zero initialization.
    """

    topology: Topology
    inertia: list
    alpha: np.ndarray
    q: list
    r: list
    trigger: list
    trigger_mode: str
    dt: float
    t_final: float
    integrator: str
    seed: int
    initial: list
    learning_rate: np.ndarray
    weight_init: float = 0.0
    initial_weights: np.ndarray | None = None
    update_steps: int = 1

    def __post_init__(self):
        n = self.topology.n
        self.alpha = np.array(self.alpha, dtype=float).reshape(n)
        self.learning_rate = np.array(self.learning_rate, dtype=float).reshape(n)
        if self.initial_weights is None:
            self.initial_weights = np.zeros((n, PHI_DIM))
        else:
            w = np.array(self.initial_weights, dtype=float)
            if w.shape == (PHI_DIM,):
                w = np.tile(w, (n, 1))
            if w.shape != (n, PHI_DIM):
                raise ConfigError(
                    f"initial_weights must have shape ({PHI_DIM},) or "
                    f"({n}, {PHI_DIM}), got {w.shape}")
            self.initial_weights = w
        if self.trigger_mode not in MODES:
            raise ConfigError(f"unknown trigger mode {self.trigger_mode!r}")
        if self.integrator not in INTEGRATORS:
            raise ConfigError(f"unknown integrator {self.integrator!r}")
        if self.dt <= 0.0:
            raise ConfigError("dt must be positive")
        if self.t_final < self.dt:
            raise ConfigError("t_final must be at least one step")
        if not is_strongly_connected(self.topology):
            raise ConfigError("communication topology must be strongly connected")
        for name, seq in (("inertia", self.inertia), ("q", self.q),
                          ("r", self.r), ("trigger", self.trigger),
                          ("initial", self.initial)):
            if len(seq) != n:
                raise ConfigError(f"{name} must have one entry per agent ({n})")
        if np.any(self.alpha <= 0.0):
            raise ConfigError("alpha must be positive for every agent")
        if np.any(self.learning_rate <= 0.0):
            raise ConfigError("learning rate must be positive for every agent")
        if self.weight_init < 0.0:
            raise ConfigError("weight_init must be nonnegative")
        if self.update_steps < 1:
            raise ConfigError("update_steps must be >= 1")
        if self.trigger_mode == "self":
            for i, p in enumerate(self.trigger):
                if p.kappa != 0.0 or p.varpi != 0.0:
                    raise ConfigError(
                        f"self-triggered mode forces kappa = 0 and varpi = 0 "
                        f"(agent {i + 1} has kappa={p.kappa}, varpi={p.varpi})")

    @property
    def n_agents(self) -> int:
        return self.topology.n

    @property
    def n_steps(self) -> int:
        return int(round(self.t_final / self.dt))


@dataclass
class Trace:
    """Dense per-step history of one run plus the per-event log.

    Arrays hold one row per integrator step and a terminal row at the
    horizon; times are strictly increasing.  ``cost`` and ``msgs`` are
    cumulative up to each row's time.
    """

    mode: str
    dt: float
    t_final: float
    seed: int
    t: np.ndarray
    sigma: np.ndarray
    omega: np.ndarray
    tau: np.ndarray
    delta: np.ndarray
    delta_norm: np.ndarray
    u: np.ndarray
    y: np.ndarray
    event: np.ndarray
    w_norm: np.ndarray
    cost: np.ndarray
    msgs: np.ndarray
    e_norm: np.ndarray
    bound: np.ndarray
    threshold: np.ndarray
    event_times: list
    event_weights: list
    event_values: list
    event_zeno_bounds: list
    neighbor_reads: int
    warnings: list = field(default_factory=list)

    @property
    def n_agents(self) -> int:
        return self.sigma.shape[1]


class _AgentView:
    """Row views into the packed state array, attribute-compatible with
    RigidBodyState for the per-agent error operations."""

    __slots__ = ("sigma", "omega", "tau")

    def __init__(self, packed_row):
        self.sigma = packed_row[0:3]
        self.omega = packed_row[3:6]
        self.tau = packed_row[6:9]


def _batched_derivative(s, held_u, j_stack, j_inv_stack, lap_diag, adjacency):
    """Network derivative of the packed state (n, 9): sigma, omega, tau."""
    sigma = s[:, 0:3]
    omega = s[:, 3:6]
    tau = s[:, 6:9]
    n = s.shape[0]

    sk = np.zeros((n, 3, 3))
    sk[:, 0, 1] = -sigma[:, 2]
    sk[:, 0, 2] = sigma[:, 1]
    sk[:, 1, 0] = sigma[:, 2]
    sk[:, 1, 2] = -sigma[:, 0]
    sk[:, 2, 0] = -sigma[:, 1]
    sk[:, 2, 1] = sigma[:, 0]
    outer = sigma[:, :, None] * sigma[:, None, :]
    coef = 0.5 * (1.0 - np.einsum("ni,ni->n", sigma, sigma))
    g_kin = 0.5 * (sk + outer + coef[:, None, None] * np.eye(3))

    out = np.empty_like(s)
    out[:, 0:3] = np.einsum("nij,nj->ni", g_kin, omega)
    j_omega = np.einsum("nij,nj->ni", j_stack, omega)
    torque = -np.cross(omega, j_omega) + tau
    out[:, 3:6] = np.einsum("nij,nj->ni", j_inv_stack, torque)
    gain_u = np.cos(tau) ** 2 * held_u
    out[:, 6:9] = -2.0 * tau + lap_diag[:, None] * gain_u - adjacency @ gain_u
    return out


def accumulate_cost(prev: float, e, u, q, r, dt: float) -> float:
    """Left-endpoint quadrature of the running cost e'Qe + u'Ru."""
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    e = np.asarray(e, dtype=float)
    u = np.asarray(u, dtype=float)
    return prev + (float(e @ q @ e) + float(u @ r @ u)) * dt


def run(cfg: SimConfig) -> Trace:
    """Execute one deterministic closed-loop run and return its trace."""
    topo = cfg.topology
    n = topo.n
    dt = cfg.dt
    n_steps = cfg.n_steps
    mode = cfg.trigger_mode

    j_stack = np.stack([jm.j for jm in cfg.inertia])
    j_inv_stack = np.stack([jm.j_inv for jm in cfg.inertia])
    lap_diag = np.diag(topo.laplacian).copy()
    adjacency = topo.adjacency
    q_min = np.array([np.linalg.eigvalsh(q)[0] for q in cfg.q])
    r_max = np.array([np.linalg.eigvalsh(r)[-1] for r in cfg.r])

    # packed physical state, one row per agent: [sigma, omega, tau]
    state = np.zeros((n, 9))
    for i, init in enumerate(cfg.initial):
        state[i, 0:3] = init.sigma
        state[i, 3:6] = init.omega
        state[i, 6:9] = init.tau
    views = [_AgentView(state[i]) for i in range(n)]

    rng = np.random.default_rng(cfg.seed)
    w0 = cfg.initial_weights.copy()
    if cfg.weight_init > 0.0:
        w0 += rng.uniform(-cfg.weight_init, cfg.weight_init, size=(n, PHI_DIM))
    critics = [
        CriticState(weights=w0[i], learning_rate=cfg.learning_rate[i],
                    held_control=np.zeros(3), q=cfg.q[i], r=cfg.r[i],
                    l_ii=lap_diag[i], update_steps=cfg.update_steps)
        for i in range(n)
    ]
    triggers = [
        TriggerState.initial(
            {int(j): adjacency[i, j] for j in topo.neighbors[i]},
            cfg.trigger[i].y0)
        for i in range(n)
    ]
    held_u = np.zeros((n, 3))

    m = n_steps + 1
    tr = Trace(
        mode=mode, dt=dt, t_final=n_steps * dt, seed=cfg.seed,
        t=np.zeros(m),
        sigma=np.zeros((m, n, 3)), omega=np.zeros((m, n, 3)),
        tau=np.zeros((m, n, 3)), delta=np.zeros((m, n, 3)),
        delta_norm=np.zeros((m, n)), u=np.zeros((m, n, 3)),
        y=np.zeros((m, n)), event=np.zeros((m, n), dtype=bool),
        w_norm=np.zeros((m, n)), cost=np.zeros((m, n)),
        msgs=np.zeros((m, n), dtype=np.int64), e_norm=np.zeros((m, n)),
        bound=np.zeros((m, n)), threshold=np.full((m, n), np.nan),
        event_times=[[] for _ in range(n)],
        event_weights=[[] for _ in range(n)],
        event_values=[[] for _ in range(n)],
        event_zeno_bounds=[[] for _ in range(n)],
        neighbor_reads=0,
    )

    cost = np.zeros(n)
    msgs_sent = np.zeros(n, dtype=np.int64)
    e_prev = None
    warned = np.zeros(n, dtype=bool)

    def derivative(s):
        return _batched_derivative(s, held_u, j_stack, j_inv_stack,
                                   lap_diag, adjacency)

    def record(row, t, e_all, events_now):
        tr.t[row] = t
        tr.sigma[row] = state[:, 0:3]
        tr.omega[row] = state[:, 3:6]
        tr.tau[row] = state[:, 6:9]
        tr.delta[row] = e_all[:, 0:3]
        tr.delta_norm[row] = np.linalg.norm(e_all[:, 0:3], axis=1)
        tr.u[row] = held_u
        tr.event[row] = events_now
        tr.cost[row] = cost
        tr.msgs[row] = msgs_sent
        for i in range(n):
            ts = triggers[i]
            p = cfg.trigger[i]
            tr.y[row, i] = ts.y
            tr.w_norm[row, i] = float(np.linalg.norm(critics[i].weights))
            tr.e_norm[row, i] = float(
                np.linalg.norm(measurement_error(ts, e_all[i])))
            tr.bound[row, i] = self_measurement_bound(ts, p, t)
            if mode == "self":
                tr.threshold[row, i] = self_threshold(p, r_max[i], t)

    for k in range(n_steps):
        t = k * dt
        e_all = np.concatenate(
            [np.concatenate([consensus_error(i, views, topo, cfg.alpha[i]),
                             state[i, 6:9]])[None, :]
             for i in range(n)], axis=0)

        events_now = np.zeros(n, dtype=bool)
        for i in range(n):
            ts = triggers[i]
            p = cfg.trigger[i]
            if k == 0:
                fire = True  # scheduled initial event for every agent
            elif mode == "periodic":
                fire = True
            elif mode == "dynamic":
                fire = not dynamic_condition_holds(ts, p, q_min[i], r_max[i],
                                                   e_all[i])
            else:
                fire = not self_condition_holds(ts, p, q_min[i], r_max[i], t)
            if not fire:
                continue
            e_dot = (e_all[i] - e_prev[i]) / dt if k > 0 else np.zeros(6)
            critics[i], u_new = policy_iteration_step(critics[i], e_all[i],
                                                      e_dot)
            held_u[i] = u_new
            ts.record_event(t, e_all[i], u_new)
            for rcv in topo.out_neighbors[i]:
                triggers[int(rcv)].receive(i, u_new)
            msgs_sent[i] += len(topo.out_neighbors[i])
            events_now[i] = True
            tr.event_times[i].append(t)
            tr.event_weights[i].append(critics[i].weights.copy())
            tr.event_values[i].append(value(critics[i], e_all[i]))
            tr.event_zeno_bounds[i].append(
                zeno_lower_bound(ts, p, r_max[i]))

        record(k, t, e_all, events_now)

        # advance physical states over [t, t + dt] under the held controls;
        # overflow saturates to inf and is caught by the finiteness check
        with np.errstate(over="ignore", invalid="ignore"):
            if cfg.integrator == "euler":
                state[:] = state + dt * derivative(state)
            else:
                k1 = derivative(state)
                k2 = derivative(state + 0.5 * dt * k1)
                k3 = derivative(state + 0.5 * dt * k2)
                k4 = derivative(state + dt * k3)
                state[:] = state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(state)):
            bad = int(np.flatnonzero(~np.isfinite(state).all(axis=1))[0])
            raise SimulationAbort(
                f"non-finite state for agent {bad + 1} after step {k} "
                f"(t = {t + dt:.4f} s)")
        for i in range(n):
            if not warned[i] and float(state[i, 0:3] @ state[i, 0:3]) >= 1.0:
                warned[i] = True
                msg = (f"agent {i + 1}: ||sigma|| >= 1 at t = {t + dt:.4f} s; "
                       "no shadow-set switch is applied")
                tr.warnings.append(msg)
                logger.warning(msg)

        for i in range(n):
            ts = triggers[i]
            big_e = measurement_error(ts, e_all[i])
            ts.y = y_step(ts, cfg.trigger[i], q_min[i], r_max[i], e_all[i],
                          big_e, dt)
            cost[i] = accumulate_cost(cost[i], e_all[i], held_u[i],
                                      cfg.q[i], cfg.r[i], dt)
        e_prev = e_all

    # terminal row at the horizon: final states, no trigger evaluation
    t_end = n_steps * dt
    e_final = np.concatenate(
        [np.concatenate([consensus_error(i, views, topo, cfg.alpha[i]),
                         state[i, 6:9]])[None, :]
         for i in range(n)], axis=0)
    record(n_steps, t_end, e_final, np.zeros(n, dtype=bool))

    tr.event_times = [np.array(ts) for ts in tr.event_times]
    tr.event_weights = [np.array(ws).reshape(-1, PHI_DIM)
                        for ws in tr.event_weights]
    tr.event_values = [np.array(vs) for vs in tr.event_values]
    tr.event_zeno_bounds = [np.array(zs) for zs in tr.event_zeno_bounds]
    if mode in ("dynamic", "periodic"):
        tr.neighbor_reads = n_steps * int(sum(len(nb) for nb in topo.neighbors))
    return tr


@dataclass
class AgentMetrics:
    """Per-agent summary of one run.

    ``zeno_bound_first_s`` is the analytic inter-event lower bound
    evaluated at the agent's first event; diagnostic only.
    """

    agent: int
    events: int
    min_interval_s: float
    final_delta_norm: float
    final_attitude_error_norm: float
    total_cost: float
    messages_sent: int
    zeno_bound_first_s: float = math.inf


@dataclass
class MetricsReport:
    """Run summary: triggering, consensus and communication accounting."""

    mode: str
    dt_s: float
    t_final_s: float
    seed: int
    agents: list
    total_messages: int
    total_events: int
    neighbor_state_reads: int

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "dt_s": self.dt_s,
            "t_final_s": self.t_final_s,
            "seed": self.seed,
            "per_agent": [
                {
                    "agent": a.agent,
                    "events": a.events,
                    "min_interval_s": a.min_interval_s,
                    "final_delta_norm": a.final_delta_norm,
                    "final_attitude_error_norm": a.final_attitude_error_norm,
                    "total_cost": a.total_cost,
                    "messages_sent": a.messages_sent,
                    # null encodes an unbounded interval (exact consensus)
                    "zeno_bound_first_s": (a.zeno_bound_first_s
                                           if math.isfinite(a.zeno_bound_first_s)
                                           else None),
                }
                for a in self.agents
            ],
            "totals": {
                "messages": self.total_messages,
                "events": self.total_events,
                "neighbor_state_reads": self.neighbor_state_reads,
            },
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MetricsReport":
        agents = [AgentMetrics(
            agent=int(a["agent"]), events=int(a["events"]),
            min_interval_s=float(a["min_interval_s"]),
            final_delta_norm=float(a["final_delta_norm"]),
            final_attitude_error_norm=float(a["final_attitude_error_norm"]),
            total_cost=float(a["total_cost"]),
            messages_sent=int(a["messages_sent"]),
            zeno_bound_first_s=(math.inf if a.get("zeno_bound_first_s") is None
                                else float(a["zeno_bound_first_s"])),
        ) for a in d["per_agent"]]
        return cls(mode=d["mode"], dt_s=float(d["dt_s"]),
                   t_final_s=float(d["t_final_s"]), seed=int(d["seed"]),
                   agents=agents,
                   total_messages=int(d["totals"]["messages"]),
                   total_events=int(d["totals"]["events"]),
                   neighbor_state_reads=int(d["totals"]["neighbor_state_reads"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_text(self) -> str:
        lines = [
            f"mode: {self.mode}",
            f"dt_s: {self.dt_s!r}",
            f"t_final_s: {self.t_final_s!r}",
            f"seed: {self.seed}",
            f"total_messages: {self.total_messages}",
            f"total_events: {self.total_events}",
            f"neighbor_state_reads: {self.neighbor_state_reads}",
            "agent  events  min_interval_s  final_delta_norm  "
            "final_attitude_error_norm  total_cost  messages_sent  "
            "zeno_bound_first_s",
        ]
        for a in self.agents:
            lines.append(
                f"{a.agent:5d}  {a.events:6d}  {a.min_interval_s:14.6g}  "
                f"{a.final_delta_norm:16.6g}  {a.final_attitude_error_norm:25.6g}  "
                f"{a.total_cost:10.6g}  {a.messages_sent:13d}  "
                f"{a.zeno_bound_first_s:18.6g}")
        return "\n".join(lines) + "\n"


def metrics(trace: Trace) -> MetricsReport:
    """Summarize a trace; the minimum interval of an agent with fewer than
    two events is reported as the full horizon."""
    if trace.t.size == 0:
        raise ValueError("empty trace")
    n = trace.n_agents
    horizon = float(trace.t[-1] - trace.t[0])
    agents = []
    for i in range(n):
        times = trace.event_times[i]
        if times.size >= 2:
            min_int = float(np.diff(times).min())
        else:
            min_int = horizon
        zeno = trace.event_zeno_bounds[i]
        agents.append(AgentMetrics(
            agent=i + 1,
            events=int(times.size),
            min_interval_s=min_int,
            final_delta_norm=float(trace.delta_norm[-1, i]),
            final_attitude_error_norm=float(
                np.linalg.norm(trace.sigma[-1, 0] - trace.sigma[-1, i])),
            total_cost=float(trace.cost[-1, i]),
            messages_sent=int(trace.msgs[-1, i]),
            zeno_bound_first_s=float(zeno[0]) if zeno.size else math.inf,
        ))
    return MetricsReport(
        mode=trace.mode, dt_s=trace.dt, t_final_s=trace.t_final,
        seed=trace.seed, agents=agents,
        total_messages=int(trace.msgs[-1].sum()),
        total_events=int(sum(a.events for a in agents)),
        neighbor_state_reads=int(trace.neighbor_reads),
    )


def sweep(cfgs, max_workers: int = 1) -> list:
    """Run each config independently and return reports in input order.

    Member failures do not abort sibling runs; if any run failed, a
    SweepError naming every failure is raised after all runs finished.
    """
    results = [None] * len(cfgs)
    failures = []

    def one(idx_cfg):
        idx, cfg = idx_cfg
        return idx, metrics(run(cfg))

    if max_workers <= 1:
        for idx, cfg in enumerate(cfgs):
            try:
                results[idx] = metrics(run(cfg))
            except Exception as err:  # noqa: BLE001 - reported per run
                failures.append((idx, err))
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers) as pool:
            futs = {pool.submit(one, (idx, cfg)): idx
                    for idx, cfg in enumerate(cfgs)}
            for fut in concurrent.futures.as_completed(futs):
                idx = futs[fut]
                try:
                    _, rep = fut.result()
                    results[idx] = rep
                except Exception as err:  # noqa: BLE001
                    failures.append((idx, err))
    if failures:
        failures.sort(key=lambda f: f[0])
        msg = "; ".join(f"run {idx}: {err}" for idx, err in failures)
        raise SweepError(msg)
    return results


# --- trace and metrics serialization ---------------------------------------

def _fmt(x: float) -> str:
    return repr(float(x))


def trace_columns(n: int) -> list:
    """Column names of the trace CSV, in emission order."""
    cols = ["t"]
    for i in range(1, n + 1):
        cols += [f"a{i}_sigma{c}" for c in (1, 2, 3)]
        cols += [f"a{i}_omega{c}" for c in (1, 2, 3)]
        cols += [f"a{i}_tau{c}" for c in (1, 2, 3)]
        cols += [f"a{i}_delta{c}" for c in (1, 2, 3)]
        cols += [f"a{i}_delta_norm"]
        cols += [f"a{i}_u{c}" for c in (1, 2, 3)]
        cols += [f"a{i}_y", f"a{i}_event", f"a{i}_w_norm", f"a{i}_cost",
                 f"a{i}_msgs"]
    return cols


def write_trace_csv(trace: Trace, path) -> None:
    """Emit the per-step trace, one row per record, header first."""
    n = trace.n_agents
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(trace_columns(n))
        for row in range(trace.t.size):
            out = [_fmt(trace.t[row])]
            for i in range(n):
                out += [_fmt(v) for v in trace.sigma[row, i]]
                out += [_fmt(v) for v in trace.omega[row, i]]
                out += [_fmt(v) for v in trace.tau[row, i]]
                out += [_fmt(v) for v in trace.delta[row, i]]
                out.append(_fmt(trace.delta_norm[row, i]))
                out += [_fmt(v) for v in trace.u[row, i]]
                out.append(_fmt(trace.y[row, i]))
                out.append(str(int(trace.event[row, i])))
                out.append(_fmt(trace.w_norm[row, i]))
                out.append(_fmt(trace.cost[row, i]))
                out.append(str(int(trace.msgs[row, i])))
            writer.writerow(out)


def read_trace_csv(path) -> dict:
    """Parse a trace CSV back into {column name: float array}."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = [[float(v) for v in row] for row in reader]
    data = np.array(rows)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise ValueError(f"malformed trace CSV {path}")
    return {name: data[:, idx] for idx, name in enumerate(header)}


def trigger_trace_columns(n: int) -> list:
    """Column names of the companion triggering CSV."""
    cols = ["t"]
    for i in range(1, n + 1):
        cols += [f"a{i}_e_norm", f"a{i}_delta_bound", f"a{i}_threshold"]
    return cols


def write_trigger_trace_csv(trace: Trace, path) -> None:
    """Emit per-step measurement error norms, their closed-form bound and,
    in self mode, the decaying threshold (NaN otherwise)."""
    n = trace.n_agents
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(trigger_trace_columns(n))
        for row in range(trace.t.size):
            out = [_fmt(trace.t[row])]
            for i in range(n):
                out += [_fmt(trace.e_norm[row, i]),
                        _fmt(trace.bound[row, i]),
                        _fmt(trace.threshold[row, i])]
            writer.writerow(out)


def write_metrics(report: MetricsReport, json_path, text_path) -> None:
    with open(json_path, "w") as fh:
        fh.write(report.to_json())
    with open(text_path, "w") as fh:
        fh.write(report.render_text())


def read_metrics_json(path) -> MetricsReport:
    with open(path) as fh:
        return MetricsReport.from_dict(json.load(fh))
