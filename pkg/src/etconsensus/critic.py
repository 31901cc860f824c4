"""Quadratic critic over the 6-dim augmented error and its trigger-time update.

The value estimate is linear in the weights, V(e) = w . phi(e), with phi the
21 quadratic monomials of e taken row-major over the upper triangle of
e e^T.  Weights move only at an agent's own trigger instants, by one
normalized-gradient step on the Hamiltonian residual; between events both
the weights and the agent's held control are frozen.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .dynamics import _as_error_vector, augmented_input_matrix

# monomial index pairs (a, b), a <= b, row-major over the upper triangle:
# (e1)^2, e1e2, ..., e1e6, (e2)^2, e2e3, ..., (e6)^2
PHI_PAIRS = tuple((a, b) for a in range(6) for b in range(a, 6))
PHI_DIM = len(PHI_PAIRS)  # 21
_PHI_A = np.array([p[0] for p in PHI_PAIRS])
_PHI_B = np.array([p[1] for p in PHI_PAIRS])


def phi(e) -> np.ndarray:
    """The 21 quadratic monomials of a 6-vector, in the fixed ordering."""
    ev = _as_error_vector(e)
    return ev[_PHI_A] * ev[_PHI_B]


def grad_phi(e) -> np.ndarray:
    """Exact 21x6 Jacobian of phi; each row has at most two nonzeros."""
    ev = _as_error_vector(e)
    jac = np.zeros((PHI_DIM, 6))
    rows = np.arange(PHI_DIM)
    np.add.at(jac, (rows, _PHI_A), ev[_PHI_B])
    np.add.at(jac, (rows, _PHI_B), ev[_PHI_A])
    return jac


@dataclass
class CriticState:
    """Per-agent critic weights, held control and learning hyperparameters."""

    weights: np.ndarray
    learning_rate: float
    held_control: np.ndarray
    q: np.ndarray
    r: np.ndarray
    l_ii: float
    update_steps: int = 1

    def __post_init__(self):
        self.weights = np.array(self.weights, dtype=float).reshape(PHI_DIM)
        self.held_control = np.array(self.held_control, dtype=float).reshape(3)
        self.q = np.array(self.q, dtype=float).reshape(6, 6)
        self.r = np.array(self.r, dtype=float).reshape(3, 3)
        if self.learning_rate <= 0.0:
            raise ValueError("learning rate must be positive")
        if self.update_steps < 1:
            raise ValueError("update_steps must be >= 1")
        if not np.allclose(self.q, self.q.T, atol=1e-12):
            raise ValueError("Q must be symmetric")
        if not np.allclose(self.r, self.r.T, atol=1e-12):
            raise ValueError("R must be symmetric")
        q_eigs = np.linalg.eigvalsh(self.q)
        r_eigs = np.linalg.eigvalsh(self.r)
        if q_eigs[0] < -1e-12:
            raise ValueError("Q must be positive semidefinite")
        if r_eigs[0] <= 0.0:
            raise ValueError("R must be positive definite")


def value(c: CriticState, e) -> float:
    """Estimated value w . phi(e); exactly quadratic in e."""
    return float(c.weights @ phi(e))


def control_from_critic(c: CriticState, e) -> np.ndarray:
    """Control reconstructed from the critic gradient.

    u = -1/2 l_ii R^-1 Y(e)^T grad_phi(e)^T w.  Linear in the weights and
    zero whenever e = 0 (the gradient of a quadratic vanishes at the origin).
    """
    y = augmented_input_matrix(e)
    grad_v = grad_phi(e).T @ c.weights
    return -0.5 * c.l_ii * np.linalg.solve(c.r, y.T @ grad_v)


def critic_update(c: CriticState, e, e_dot, u) -> CriticState:
    """One normalized-gradient step on the Hamiltonian residual.

    k1 = grad_phi(e) e_dot, k = k1 / (k1.k1 + 1)^2,
    w+ = w - l_c k (k1.w + e'Qe + u'Ru).
    A zero e_dot leaves the weights unchanged.
    """
    ev = _as_error_vector(e)
    e_dot = np.asarray(e_dot, dtype=float).reshape(6)
    u = np.asarray(u, dtype=float).reshape(3)
    # numpy scalars throughout: absurd magnitudes saturate to inf and make
    # the normalized step a no-op instead of raising OverflowError
    w = c.weights
    with np.errstate(over="ignore", invalid="ignore"):
        stage = ev @ c.q @ ev + u @ c.r @ u
        for _ in range(c.update_steps):
            k1 = grad_phi(ev) @ e_dot
            k = k1 / (k1 @ k1 + 1.0) ** 2
            residual = k1 @ w + stage
            step = c.learning_rate * residual * k
            if not np.all(np.isfinite(step)):
                break
            w = w - step
    return replace(c, weights=w)


def policy_iteration_step(c: CriticState, e, e_dot):
    """Policy evaluation then improvement at a trigger instant.

    Evaluates the residual with the control held over the interval that just
    ended, then rebuilds the held control from the updated weights.
    Returns the new critic state and the new control.
    """
    updated = critic_update(c, e, e_dot, c.held_control)
    u_new = control_from_critic(updated, e)
    return replace(updated, held_control=u_new), u_new
