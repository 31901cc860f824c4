"""Why the shipped initial critic weights look the way they do.

The all-zero start is a stationary point of the whole closed loop: zero
weights give zero controls, the plant starts at rest so nothing moves, the
measured error derivative stays zero, and the normalized-gradient update
direction vanishes - forever.  The learning therefore has to start from an
admissible (stabilizing) value function.

The shipped start is V0(e) = c_d |delta|^2 + c_x delta.tau + c_t |tau|^2.
Only the tau-gradient block reaches the controller, so c_x sets the
error-opposing feedback and c_t the torque damping.  This script checks
positive definiteness and the linearized closed-loop spectrum around the
consensus manifold, reproducing the analysis used to pick the numbers.
"""

import numpy as np

from etconsensus import load_scenario

cfg = load_scenario("paper_default").config
w0 = cfg.initial_weights[0]
c_d, c_x, c_t = w0[0], w0[3], w0[15]
print(f"shipped coefficients: c_d={c_d}, c_x={c_x}, c_t={c_t}")

# positive definiteness of V0 per (delta_k, tau_k) pair
pair = np.array([[c_d, c_x / 2], [c_x / 2, c_t]])
eigs = np.linalg.eigvalsh(pair)
print(f"value-function block eigenvalues: {eigs.round(4).tolist()} "
      f"(positive definite: {bool(eigs[0] > 0)})")

# linearized closed loop per vector component around rest:
#   sigma' = G(0) omega = omega / 4
#   omega' ~ J^-1 tau ~ tau          (inertias are near identity)
#   tau'   = -2 tau - (L Ld)(c_x delta + 2 c_t tau) / 2,  delta = L(omega + alpha sigma)
lap = cfg.topology.laplacian
ld = np.diag(np.diag(lap))
n = cfg.n_agents
alpha = float(cfg.alpha[0])
eye = np.eye(n)
zero = np.zeros((n, n))
k_net = lap @ ld
a_block = np.block([
    [zero, 0.25 * eye, zero],
    [zero, zero, eye],
    [-0.5 * c_x * k_net @ (alpha * lap), -0.5 * c_x * k_net @ lap,
     -2.0 * eye - 2.0 * c_t * 0.5 * k_net],
])
eigvals = np.linalg.eigvals(a_block)
# the consensus manifold contributes neutral modes; everything else must decay
nontrivial = eigvals[np.abs(eigvals) > 1e-6]
print(f"closed-loop modes: {eigvals.size} total, "
      f"{eigvals.size - nontrivial.size} neutral (consensus directions)")
print(f"max real part of the non-neutral spectrum: {nontrivial.real.max():.4f} "
      f"(stable: {bool(nontrivial.real.max() < 1e-6)})")

slowest = nontrivial[np.argsort(nontrivial.real)][-3:]
print("slowest decaying modes:", np.round(slowest, 3).tolist())
