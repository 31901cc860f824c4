"""Directed weighted communication topology between agents.

Edge convention: ``adjacency[i, j] = a_ij > 0`` means agent i receives data
from agent j, i.e. the directed edge runs j -> i.  The in-degree of agent i
is ``d_i = sum_j a_ij`` and the Laplacian is ``L = D - A``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class TopologyError(ValueError):
    """Raised when an adjacency matrix violates a topology invariant."""


@dataclass(frozen=True)
class Topology:
    """Immutable directed weighted graph over ``n`` agents."""

    adjacency: np.ndarray
    in_degree: np.ndarray
    laplacian: np.ndarray
    # neighbor index arrays, ascending, cached for deterministic iteration
    neighbors: tuple = field(repr=False, default=())
    out_neighbors: tuple = field(repr=False, default=())

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]


def build_topology(adjacency) -> Topology:
    """Validate an n-by-n weight matrix and assemble the Topology.

    Rejects non-square input, negative weights and nonzero diagonal
    entries, each with its own error message.
    """
    a = np.array(adjacency, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise TopologyError(f"adjacency must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise TopologyError("adjacency contains non-finite entries")
    if np.any(a < 0.0):
        i, j = np.argwhere(a < 0.0)[0]
        raise TopologyError(f"negative weight a[{i},{j}] = {a[i, j]}")
    if np.any(np.diag(a) != 0.0):
        i = int(np.flatnonzero(np.diag(a))[0])
        raise TopologyError(f"self-loop: nonzero diagonal entry a[{i},{i}]")

    d = a.sum(axis=1)
    lap = np.diag(d) - a
    nbrs = tuple(np.flatnonzero(a[i] > 0.0) for i in range(a.shape[0]))
    out = tuple(np.flatnonzero(a[:, i] > 0.0) for i in range(a.shape[0]))
    a.setflags(write=False)
    d.setflags(write=False)
    lap.setflags(write=False)
    return Topology(adjacency=a, in_degree=d, laplacian=lap,
                    neighbors=nbrs, out_neighbors=out)


def is_strongly_connected(t: Topology) -> bool:
    """True iff every agent reaches every other along directed edges.

    Double reachability sweep: one forward pass over the edge set
    {j -> i : a_ij > 0} from node 0 and one pass over the reversed edges.
    """
    n = t.n
    if n == 1:
        return True

    def reaches_all(receivers_of) -> bool:
        seen = np.zeros(n, dtype=bool)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for w in receivers_of(v):
                if not seen[w]:
                    seen[w] = True
                    stack.append(int(w))
        return bool(seen.all())

    # forward: from sender v to every receiver (column v of A)
    forward = reaches_all(lambda v: t.out_neighbors[v])
    # reverse: from receiver v back to its senders (row v of A)
    backward = reaches_all(lambda v: t.neighbors[v])
    return forward and backward
