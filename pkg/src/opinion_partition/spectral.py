"""Centrality-weighted influence matrix and its eigensystem.

The influence matrix ``abar = diag(h)^-1 A diag(rho)`` with ``h = A rho`` is
row-stochastic but not symmetric. With ``P = diag(sqrt(rho * h))`` it is
similar to the symmetric matrix ``S = Q A Q``, ``Q = diag(sqrt(rho / h))``:

    P abar P^-1 = S

so every eigenpair comes from a symmetric eigensolve of ``S``: if
``S w = mu w`` then ``P^-1 w`` is a right and ``P w`` a left eigenvector of
``abar`` for ``mu``. Eigenvalues of the Laplacian ``lbar = I - abar`` are
``1 - mu``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .centrality import CentralityVector
from .errors import Degenerate, Disconnected, LengthMismatch, ValidationError
from .graph import Graph, is_connected

DEFAULT_EPS_MULT = 1e-8
# Relative tolerance for deciding that two entries tie for largest magnitude
# during sign canonicalisation.
_SIGN_TIE_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class InfluenceSystem:
    graph: Graph
    rho: np.ndarray
    abar: np.ndarray
    lbar: np.ndarray
    h: np.ndarray
    p_diag: np.ndarray
    q_diag: np.ndarray
    s_matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.graph.n


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Ascending eigenvalues of ``lbar`` with biorthonormal eigenvectors.

    Column ``i`` of ``right_vectors`` is ``u_i`` (unit norm) and column ``i``
    of ``left_vectors`` is ``v_i``, scaled so that ``v_i . u_j = delta_ij``.
    """

    eigenvalues: np.ndarray
    right_vectors: np.ndarray
    left_vectors: np.ndarray
    groups: tuple[tuple[int, ...], ...]
    eps_mult: float = DEFAULT_EPS_MULT

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    @property
    def lambda2(self) -> float:
        return float(self.eigenvalues[self.lambda2_group[0]])

    @property
    def lambda2_group(self) -> tuple[int, ...]:
        """Indices of every eigenvalue equal (within tolerance) to lambda_2."""
        if self.n < 2:
            raise Degenerate("a single node has no second eigenvalue")
        for grp in self.groups:
            if 1 in grp:
                # Index 0 can share a group with 1 only for disconnected input.
                return tuple(i for i in grp if i != 0)
        raise AssertionError("index 1 missing from eigenvalue groups")

    @property
    def multiplicity2(self) -> int:
        return len(self.lambda2_group)

    @property
    def abar_eigenvalues(self) -> np.ndarray:
        return 1.0 - self.eigenvalues


def _freeze(*arrays):
    for a in arrays:
        a.setflags(write=False)


def build_influence(g: Graph, rho: CentralityVector | np.ndarray) -> InfluenceSystem:
    """Assemble ``abar``, ``lbar`` and the similarity factors for ``g``."""
    rho = np.asarray(getattr(rho, "values", rho), dtype=float)
    if rho.shape != (g.n,):
        raise LengthMismatch(f"centrality has length {rho.size}, graph has {g.n} nodes")
    if np.any(rho <= 0):
        raise ValidationError("centrality must be strictly positive")
    if not is_connected(g):
        raise Disconnected("influence matrix needs a connected graph")
    a = g.adjacency
    h = a @ rho
    if np.any(h <= 0):
        raise Degenerate("weighted neighbour sum h is zero at some node")

    abar = a * rho[None, :] / h[:, None]
    lbar = np.eye(g.n) - abar
    p_diag = np.sqrt(rho * h)
    q_diag = np.sqrt(rho / h)
    # outer(q, q) is bitwise symmetric, so S is too.
    s_matrix = np.outer(q_diag, q_diag) * a
    rho = rho.copy()
    _freeze(rho, abar, lbar, h, p_diag, q_diag, s_matrix)
    return InfluenceSystem(g, rho, abar, lbar, h, p_diag, q_diag, s_matrix)


def canonical_sign(u: np.ndarray) -> float:
    """+1 or -1 so that ``sign * u`` has a positive largest-magnitude entry.

    Entries within a relative 1e-9 of the maximum magnitude count as tied;
    the lowest index among them decides.
    """
    mag = np.abs(u)
    top = mag.max()
    if top == 0:
        return 1.0
    first = int(np.flatnonzero(mag >= top * (1 - _SIGN_TIE_RTOL))[0])
    return 1.0 if u[first] > 0 else -1.0


def group_eigenvalues(values: np.ndarray, eps: float = DEFAULT_EPS_MULT):
    """Cluster sorted eigenvalues whose gaps are within ``eps * max(1, radius)``.

    Consecutive values closer than the tolerance are chained into one group,
    so groups are contiguous index runs in ascending eigenvalue order.
    """
    if eps <= 0:
        raise ValidationError("eps must be positive")
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return ()
    tol = eps * max(1.0, float(np.max(np.abs(values))))
    groups, current = [], [0]
    for i in range(1, len(values)):
        if abs(values[i] - values[i - 1]) <= tol:
            current.append(i)
        else:
            groups.append(tuple(current))
            current = [i]
    groups.append(tuple(current))
    return tuple(groups)


def eigendecompose(
    system: InfluenceSystem, eps_mult: float = DEFAULT_EPS_MULT
) -> SpectralDecomposition:
    """Biorthonormal eigensystem of ``lbar`` via the symmetric matrix ``S``."""
    mu, w = np.linalg.eigh(system.s_matrix)
    order = np.argsort(-mu, kind="stable")
    mu, w = mu[order], w[:, order]
    p = system.p_diag

    u = w / p[:, None]
    norms = np.linalg.norm(u, axis=0)
    u = u / norms
    # v_i . u_i = (w_i . w_i) / |P^-1 w_i| = 1 / norms_i before rescaling.
    v = w * p[:, None] * norms

    n = system.n
    # The zero mode is known in closed form: abar 1 = 1 and the left vector
    # is proportional to rho * h.
    u[:, 0] = 1.0 / np.sqrt(n)
    v1 = system.rho * system.h
    v[:, 0] = v1 * np.sqrt(n) / v1.sum()

    for i in range(1, n):
        if canonical_sign(u[:, i]) < 0:
            u[:, i] = -u[:, i]
            v[:, i] = -v[:, i]

    lam = 1.0 - mu
    _freeze(lam, u, v)
    return SpectralDecomposition(lam, u, v, group_eigenvalues(lam, eps_mult), eps_mult)


def eigenvalue_groups(dec: SpectralDecomposition, eps: float | None = None):
    """Equal-eigenvalue index groups, recomputed when ``eps`` is given."""
    if eps is None:
        return dec.groups
    return group_eigenvalues(dec.eigenvalues, eps)


def laplacian_of_graph(g: Graph) -> np.ndarray:
    """Combinatorial Laplacian ``diag(A 1) - A``."""
    a = g.adjacency
    return np.diag(a.sum(axis=1)) - a


def spectral_system(g: Graph, rho, eps_mult: float = DEFAULT_EPS_MULT):
    """Convenience wrapper returning ``(system, decomposition)``."""
    system = build_influence(g, rho)
    return system, eigendecompose(system, eps_mult)
