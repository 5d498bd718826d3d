"""Strictly positive node weights used to bias neighbour influence."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    Disconnected,
    LengthMismatch,
    NonConvergence,
    PositivityViolation,
    ValidationError,
)
from .graph import Graph, degree_vector, is_connected

KINDS = ("degree", "uniform", "eigenvector", "custom")


@dataclass(frozen=True, eq=False)
class CentralityVector:
    values: np.ndarray
    kind: str
    # Perron eigenvalue of the adjacency matrix, set only for kind="eigenvector".
    eigenvalue: float | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1:
            raise LengthMismatch("centrality must be a vector")
        if not np.all(np.isfinite(v)) or np.any(v <= 0):
            raise PositivityViolation("centrality values must be finite and > 0")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


def degree_centrality(g: Graph) -> CentralityVector:
    d = degree_vector(g)
    if np.any(d <= 0):
        isolated = [g.labels[i] for i in np.flatnonzero(d <= 0)]
        raise PositivityViolation(f"zero degree at nodes {isolated}")
    return CentralityVector(d, "degree")


def uniform_centrality(g: Graph) -> CentralityVector:
    return CentralityVector(np.ones(g.n), "uniform")


def eigenvector_centrality(
    g: Graph, tol: float = 1e-10, max_iter: int = 100_000
) -> CentralityVector:
    """Perron vector of the adjacency matrix, scaled to unit sum.

    Power iteration runs on ``A + I``: same eigenvectors, but the Perron root
    is strictly dominant even for bipartite graphs, where plain iteration on
    ``A`` would oscillate. Stops once the relative eigen-residual
    ``|A x - lam x| / |x|`` drops to ``tol``.
    """
    if not is_connected(g):
        raise Disconnected("eigenvector centrality needs a connected graph")
    a = g.adjacency
    x = np.full(g.n, 1.0 / g.n)
    for _ in range(max_iter):
        ax = a @ x
        lam = float(x @ ax / (x @ x))
        if np.linalg.norm(ax - lam * x) <= tol * np.linalg.norm(x):
            break
        x = ax + x
        x /= x.sum()
    else:
        raise NonConvergence(
            f"power iteration did not converge in {max_iter} steps", iterate=x
        )
    return CentralityVector(x, "eigenvector", eigenvalue=lam)


def custom_centrality(g: Graph, values) -> CentralityVector:
    v = np.asarray(values, dtype=float)
    if v.shape != (g.n,):
        raise LengthMismatch(f"expected {g.n} centrality values, got {v.size}")
    return CentralityVector(v, "custom")


def parse_centrality_file(g: Graph, text: str) -> CentralityVector:
    """Read ``label value`` lines; every node of ``g`` must appear once."""
    values: dict[str, float] = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        label, value = line.split()
        values[label] = float(value)
    missing = [lab for lab in g.labels if lab not in values]
    extra = [lab for lab in values if lab not in g.labels]
    if missing or extra:
        raise LengthMismatch(f"centrality file: missing {missing}, unknown {extra}")
    return custom_centrality(g, [values[lab] for lab in g.labels])


def centrality(g: Graph, kind: str = "degree", values=None) -> CentralityVector:
    if kind == "degree":
        return degree_centrality(g)
    if kind == "uniform":
        return uniform_centrality(g)
    if kind == "eigenvector":
        return eigenvector_centrality(g)
    if kind == "custom":
        return custom_centrality(g, values)
    raise ValidationError(f"unknown centrality kind {kind!r}; expected one of {KINDS}")
