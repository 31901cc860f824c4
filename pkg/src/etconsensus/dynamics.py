"""Rigid-body attitude dynamics under Modified Rodriguez Parameters.

Each agent carries an MRP attitude ``sigma``, an angular velocity ``omega``
and a control torque ``tau``.  The torque is not commanded directly: it is
the state of a designer-chosen compensator whose input is the learned
control, which makes the stacked error ``e = [delta, tau]`` input-affine
without knowledge of the inertia.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Topology


def cross(a, b) -> np.ndarray:
    """Right-handed cross product of two 3-vectors."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.array([
        a[1] * b[2] - b[1] * a[2],
        b[0] * a[2] - a[0] * b[2],
        a[0] * b[1] - b[0] * a[1],
    ])


def skew(v) -> np.ndarray:
    """3x3 skew-symmetric matrix such that ``skew(v) @ w == cross(v, w)``."""
    v = np.asarray(v, dtype=float)
    return np.array([
        [0.0, -v[2], v[1]],
        [v[2], 0.0, -v[0]],
        [-v[1], v[0], 0.0],
    ])


def mrp_kinematics_matrix(sigma) -> np.ndarray:
    """Kinematics matrix G(sigma) mapping body rates to MRP rates.

    G(s) = 1/2 (s^x + s s^T + (1 - s^T s)/2 * I3).
    """
    s = np.asarray(sigma, dtype=float)
    return 0.5 * (skew(s) + np.outer(s, s) + 0.5 * (1.0 - s @ s) * np.eye(3))


@dataclass
class RigidBodyState:
    """Physical state of one agent: MRP attitude, body rate, torque."""

    sigma: np.ndarray
    omega: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        self.sigma = np.array(self.sigma, dtype=float).reshape(3)
        self.omega = np.array(self.omega, dtype=float).reshape(3)
        self.tau = np.array(self.tau, dtype=float).reshape(3)
        stacked = np.concatenate([self.sigma, self.omega, self.tau])
        if not np.all(np.isfinite(stacked)):
            raise ValueError("rigid body state has non-finite components")


class InertiaError(ValueError):
    """Raised when an inertia matrix is not symmetric positive definite."""


@dataclass(frozen=True)
class InertiaMatrix:
    """Symmetric positive-definite 3x3 inertia, validated at construction.

    The inverse is formed once from the Cholesky factor and reused for
    every J^-1 application.
    """

    j: np.ndarray
    j_inv: np.ndarray

    @classmethod
    def from_matrix(cls, j) -> "InertiaMatrix":
        j = np.array(j, dtype=float)
        if j.shape != (3, 3):
            raise InertiaError(f"inertia must be 3x3, got {j.shape}")
        if not np.allclose(j, j.T, rtol=0.0, atol=1e-12):
            raise InertiaError("inertia matrix is not symmetric")
        try:
            chol = np.linalg.cholesky(j)
        except np.linalg.LinAlgError as err:
            raise InertiaError("inertia matrix is not positive definite") from err
        chol_inv = np.linalg.inv(chol)
        j_inv = chol_inv.T @ chol_inv
        j.setflags(write=False)
        j_inv.setflags(write=False)
        return cls(j=j, j_inv=j_inv)


@dataclass
class AugmentedError:
    """Stacked per-agent error [delta, tau] driving learning and triggering."""

    delta: np.ndarray
    tau: np.ndarray

    def __post_init__(self):
        self.delta = np.asarray(self.delta, dtype=float).reshape(3)
        self.tau = np.asarray(self.tau, dtype=float).reshape(3)

    @property
    def e(self) -> np.ndarray:
        return np.concatenate([self.delta, self.tau])


def _as_error_vector(e) -> np.ndarray:
    if isinstance(e, AugmentedError):
        return e.e
    return np.asarray(e, dtype=float).reshape(6)


def body_derivative(s: RigidBodyState, j: InertiaMatrix):
    """Attitude kinematics and Euler rotational dynamics of one body.

    sigma_dot = G(sigma) omega
    omega_dot = J^-1 (-omega x (J omega) + tau)
    """
    sigma_dot = mrp_kinematics_matrix(s.sigma) @ s.omega
    omega_dot = j.j_inv @ (-cross(s.omega, j.j @ s.omega) + s.tau)
    return sigma_dot, omega_dot


def consensus_error(i: int, states, t: Topology, alpha: float) -> np.ndarray:
    """Weighted disagreement of agent i with its in-neighbors.

    delta_i = sum_j a_ij (omega_i - omega_j) + alpha * sum_j a_ij (sigma_i - sigma_j),
    neighbors iterated in ascending index order.
    """
    if not 0 <= i < t.n:
        raise IndexError(f"agent index {i} out of range for n={t.n}")
    if alpha <= 0.0:
        raise ValueError("alpha must be positive")
    si = states[i]
    nbrs = t.neighbors[i]
    if len(nbrs) == 0:
        return np.zeros(3)
    w = t.adjacency[i, nbrs][:, None]
    d_omega = si.omega[None, :] - np.stack([states[j].omega for j in nbrs])
    d_sigma = si.sigma[None, :] - np.stack([states[j].sigma for j in nbrs])
    return (w * (d_omega + alpha * d_sigma)).sum(axis=0)


def compensator_terms(tau):
    """Drift and input gain of the torque compensator.

    f(tau) = -2 tau, g(tau) = diag(cos^2 tau_k); every diagonal entry of g
    lies in [0, 1], so the input gain never exceeds unity.
    """
    tau = np.asarray(tau, dtype=float)
    return -2.0 * tau, np.diag(np.cos(tau) ** 2)


def augmented_input_matrix(e) -> np.ndarray:
    """6x3 input matrix of the augmented error system: [0; g(tau)]."""
    ev = _as_error_vector(e)
    y = np.zeros((6, 3))
    _, g = compensator_terms(ev[3:6])
    y[3:6, :] = g
    return y


def compensator_step_input(i: int, held_u, states, t: Topology) -> np.ndarray:
    """Torque derivative of agent i under zero-order-hold controls.

    tau_dot_i = f(tau_i) + l_ii g(tau_i) u_i - sum_j a_ij g(tau_j) u_j
    with u taken from the held-control map (one entry per agent needed:
    i itself and each in-neighbor).
    """
    if i not in held_u:
        raise KeyError(f"missing held control for agent {i}")
    tau_i = states[i].tau
    f_i, g_i = compensator_terms(tau_i)
    out = f_i + t.laplacian[i, i] * (g_i @ np.asarray(held_u[i], dtype=float))
    for j in t.neighbors[i]:
        j = int(j)
        if j not in held_u:
            raise KeyError(f"missing held control for neighbor {j} of agent {i}")
        _, g_j = compensator_terms(states[j].tau)
        out = out - t.adjacency[i, j] * (g_j @ np.asarray(held_u[j], dtype=float))
    return out
