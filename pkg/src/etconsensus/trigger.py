"""Event decision logic: dynamic and self-triggered conditions, Zeno diagnostics.

The dynamic condition compares the measurement error against the current
error magnitude relaxed by a nonnegative auxiliary variable y.  The
self-triggered condition replaces the measured error with a closed-form
bound grown from last-event data only, so between its own events an agent
needs no neighbor measurements at all.  Conditions are checked once per
integrator step; an event is declared at the first violating sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class TriggerParams:
    """Gains of the triggering rule plus the asserted growth bounds.

    ``x_m`` bounds the drift magnitude relative to the error norm and
    ``y_m`` bounds the input-matrix norm (unity suffices: the gain matrix
    is diagonal with entries in [0, 1]).  ``lipschitz_p`` is the asserted
    Lipschitz constant of the control law.
    """

    gamma: float
    kappa: float
    varpi: float
    theta: float
    lipschitz_p: float = 1.0
    y0: float = 0.0
    x_m: float = 10.0
    y_m: float = 1.0

    def __post_init__(self):
        if self.gamma <= 0.0:
            raise ValueError("gamma must be positive")
        if not 0.0 <= self.kappa <= 0.5:
            raise ValueError("kappa must lie in [0, 1/2]")
        if not 0.0 <= self.varpi <= 1.0:
            raise ValueError("varpi must lie in [0, 1]")
        stability_floor = (1.0 - self.kappa) / self.gamma
        if self.theta < stability_floor:
            raise ValueError(
                f"theta = {self.theta} violates the stability bound "
                f"theta >= (1 - kappa)/gamma = {stability_floor}")
        if self.lipschitz_p <= 0.0:
            raise ValueError("lipschitz_p must be positive")
        if self.y0 < 0.0:
            raise ValueError("y0 must be nonnegative")
        if self.x_m <= 0.0 or self.y_m <= 0.0:
            raise ValueError("x_m and y_m must be positive")


@dataclass
class _NeighborControl:
    """Last control received from one in-neighbor and its peak norm."""

    weight: float            # a_ij
    u: np.ndarray            # most recent control received
    max_norm: float          # running max of ||u_j|| since the last own event


@dataclass
class TriggerState:
    """Per-agent snapshot of the last event and the auxiliary variable y."""

    t_last: float
    e_held: np.ndarray
    y: float
    neighbor_controls: dict = field(default_factory=dict)
    own_control_norm: float = 0.0
    event_count: int = 0
    min_interval: float = math.inf

    def __post_init__(self):
        self.e_held = np.array(self.e_held, dtype=float).reshape(6)

    @classmethod
    def initial(cls, weights_by_neighbor: dict, y0: float) -> "TriggerState":
        nbrs = {
            int(j): _NeighborControl(weight=float(w), u=np.zeros(3), max_norm=0.0)
            for j, w in sorted(weights_by_neighbor.items())
        }
        return cls(t_last=0.0, e_held=np.zeros(6), y=float(y0),
                   neighbor_controls=nbrs)

    def receive(self, j: int, u) -> None:
        """Deliver a control pushed by in-neighbor j at its event."""
        rec = self.neighbor_controls[int(j)]
        rec.u = np.array(u, dtype=float).reshape(3)
        rec.max_norm = max(rec.max_norm, float(np.linalg.norm(rec.u)))

    def record_event(self, t_now: float, e_now, own_u) -> None:
        """Reset the snapshot at an own event: hold e, restart the peak norms."""
        if self.event_count > 0:
            self.min_interval = min(self.min_interval, t_now - self.t_last)
        self.t_last = float(t_now)
        self.e_held = np.array(e_now, dtype=float).reshape(6)
        self.own_control_norm = float(np.linalg.norm(own_u))
        for rec in self.neighbor_controls.values():
            rec.max_norm = float(np.linalg.norm(rec.u))
        self.event_count += 1


def measurement_error(ts: TriggerState, e_now) -> np.ndarray:
    """Held-minus-current augmented error, zero right after an own event."""
    return ts.e_held - np.asarray(e_now, dtype=float).reshape(6)


def y_step(ts: TriggerState, p: TriggerParams, q_min: float, r_max: float,
           e_now, big_e, dt: float) -> float:
    """Advance y over one step of y' = -gamma y + kappa (varpi q_min |e|^2 - r_max P^2 |E|^2).

    With kappa = 0 the exact exponential decay is used instead of an Euler
    step.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    if p.kappa == 0.0:
        return ts.y * math.exp(-p.gamma * dt)
    e_now = np.asarray(e_now, dtype=float)
    big_e = np.asarray(big_e, dtype=float)
    bracket = (p.varpi * q_min * float(e_now @ e_now)
               - r_max * p.lipschitz_p ** 2 * float(big_e @ big_e))
    return ts.y + dt * (-p.gamma * ts.y + p.kappa * bracket)


def dynamic_condition_holds(ts: TriggerState, p: TriggerParams, q_min: float,
                            r_max: float, e_now) -> bool:
    """True while no event is due; an event fires when this returns False."""
    e_now = np.asarray(e_now, dtype=float).reshape(6)
    big_e = ts.e_held - e_now
    margin = ts.y + p.theta * (
        p.varpi * q_min * float(e_now @ e_now)
        - r_max * p.lipschitz_p ** 2 * float(big_e @ big_e))
    return margin >= 0.0


def control_activity(ts: TriggerState, p: TriggerParams) -> float:
    """Neighbor-weighted control magnitude term of the growth bound.

    Theta = sum_j a_ij Y_M (||u_i(t_last)|| + max over controls received
    from j since the last own event).
    """
    total = 0.0
    for rec in ts.neighbor_controls.values():
        total += rec.weight * p.y_m * (ts.own_control_norm + rec.max_norm)
    return total


def self_measurement_bound(ts: TriggerState, p: TriggerParams,
                           t_now: float) -> float:
    """Closed-form bound on ||E(t)|| grown from last-event data only.

    ((X_M ||e_held|| + Theta) / (2 X_M)) * (exp(X_M (t - t_last)) - 1).
    """
    if t_now < ts.t_last:
        raise ValueError("t_now precedes the last event")
    e_norm = float(np.linalg.norm(ts.e_held))
    coef = (p.x_m * e_norm + control_activity(ts, p)) / (2.0 * p.x_m)
    if coef == 0.0:
        return 0.0
    # np.expm1 saturates to inf instead of raising on long intervals
    with np.errstate(over="ignore"):
        return float(coef * np.expm1(p.x_m * (t_now - ts.t_last)))


def self_threshold(p: TriggerParams, r_max: float, t_now: float) -> float:
    """Decaying envelope the growth bound is compared against.

    sqrt(y0 / (theta r_max P^2)) * exp(-gamma t / 2); the decay rate of the
    kappa = 0 auxiliary variable is its own gamma.
    """
    amp = math.sqrt(p.y0 / (p.theta * r_max * p.lipschitz_p ** 2))
    return amp * math.exp(-0.5 * p.gamma * t_now)


def self_condition_holds(ts: TriggerState, p: TriggerParams, q_min: float,
                         r_max: float, t_now: float) -> bool:
    """True while no event is due under the self-triggered rule.

    Uses only quantities frozen at the last trigger instants; valid only in
    the kappa = 0, varpi = 0 mode.
    """
    if p.kappa != 0.0 or p.varpi != 0.0:
        raise ValueError("self-triggered mode requires kappa = 0 and varpi = 0")
    return self_measurement_bound(ts, p, t_now) <= self_threshold(p, r_max, t_now)


def zeno_lower_bound(ts: TriggerState, p: TriggerParams, r_max: float) -> float:
    """Analytic lower bound on the next inter-event interval, diagnostic only.

    Evaluated at the event just recorded (the exponential factor uses the
    event time itself).  Returns +inf when the agent sits exactly at
    consensus with all controls zero.
    """
    denom = ((p.x_m * float(np.linalg.norm(ts.e_held)) + control_activity(ts, p))
             * math.sqrt(p.theta * r_max * p.lipschitz_p ** 2))
    if denom == 0.0:
        return math.inf
    rate = 0.5 * (p.gamma + p.kappa / p.theta)
    num = 2.0 * p.x_m * math.sqrt(p.y0) * math.exp(-rate * ts.t_last)
    return math.log1p(num / denom) / p.x_m
