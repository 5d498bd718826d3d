"""Opinion evolution, disagreement, diversity measures and the Markov view."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from collections import deque

import numpy as np

from .errors import DivergentDiversity, LengthMismatch, ValidationError
from .graph import Graph
from .spectral import DEFAULT_EPS_MULT, InfluenceSystem, SpectralDecomposition, laplacian_of_graph

_UNIT_NORM_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class OpinionState:
    x: np.ndarray
    t: float


@dataclass(frozen=True, eq=False)
class OpinionTrajectory:
    times: np.ndarray
    states: list[OpinionState]

    def as_array(self) -> np.ndarray:
        """Opinions stacked as a ``(len(times), n)`` array."""
        return np.array([s.x for s in self.states])


@dataclass(frozen=True, eq=False)
class ProbabilityState:
    p: np.ndarray
    k: int

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.ndim != 1:
            raise LengthMismatch("probability state must be a vector")
        if np.any(p < 0) or np.any(p > 1) or not np.all(np.isfinite(p)):
            raise ValidationError("probabilities must lie in [0, 1]")
        object.__setattr__(self, "p", p)


@dataclass(frozen=True, eq=False)
class MarkovRun:
    states: list[ProbabilityState]
    entropies: list[float] = field(default_factory=list)
    diversities: list[float] = field(default_factory=list)


def _vector(x, n: int, name: str = "x") -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.shape != (n,):
        raise LengthMismatch(f"{name} has shape {x.shape}, expected ({n},)")
    return x


def solve_opinions(
    dec: SpectralDecomposition, x0, tau: float = 1.0, times=(0.0,)
) -> OpinionTrajectory:
    """Evaluate the closed-form solution of ``tau x' = -lbar x`` at ``times``.

    ``x(t) = sum_i exp(-t lambda_i / tau) u_i (v_i . x0)``; no integration.
    """
    if not tau > 0:
        raise ValidationError("tau must be positive")
    x0 = _vector(x0, dec.n, "x0")
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if times.size > 1 and np.any(np.diff(times) <= 0):
        raise ValidationError("times must be strictly increasing")
    coeffs = dec.left_vectors.T @ x0
    decay = np.exp(-np.outer(times, dec.eigenvalues) / tau)
    xs = (decay * coeffs) @ dec.right_vectors.T
    return OpinionTrajectory(times, [OpinionState(x, float(t)) for x, t in zip(xs, times)])


def agreement_limit(dec: SpectralDecomposition, x0) -> np.ndarray:
    """Long-run consensus ``u_1 (v_1 . x0)``."""
    x0 = _vector(x0, dec.n, "x0")
    u1, v1 = dec.right_vectors[:, 0], dec.left_vectors[:, 0]
    return u1 * (v1 @ x0)


def disagreement_state(dec: SpectralDecomposition, x) -> np.ndarray:
    """Component of ``x`` outside the agreement direction."""
    x = _vector(x, dec.n)
    return x - agreement_limit(dec, x)


def diversity_energy(g: Graph, z) -> float:
    """``z' L z`` with the combinatorial Laplacian of the raw adjacency."""
    z = _vector(z, g.n, "z")
    return float(z @ laplacian_of_graph(g) @ z)


def projected_mode(dec: SpectralDecomposition, x0, tau: float = 1.0, t: float = 0.0) -> np.ndarray:
    """Opinion component along the lambda_2 eigenspace at time ``t``."""
    if not tau > 0:
        raise ValidationError("tau must be positive")
    x0 = _vector(x0, dec.n, "x0")
    idx = list(dec.lambda2_group)
    u, v = dec.right_vectors[:, idx], dec.left_vectors[:, idx]
    decay = np.exp(-t * dec.eigenvalues[idx] / tau)
    return u @ (decay * (v.T @ x0))


def _check_unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    if abs(np.linalg.norm(u) - 1.0) > _UNIT_NORM_TOL:
        raise ValidationError("diversity measures need a unit-norm vector")
    return u


def _entropy(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz))) + 0.0  # no -0.0


def entropy_diversity(u) -> tuple[float, float]:
    """Entropy ``H`` of the squared entries of ``u`` and diversity ``1 / H``.

    Natural log, with ``0 log 0 = 0``. Raises DivergentDiversity when ``H``
    is zero (all mass on one node).
    """
    sq = _check_unit(u) ** 2
    h = _entropy(sq)
    if h <= 0:
        raise DivergentDiversity("entropy is zero; diversity 1/H diverges")
    return h, 1.0 / h


def inverse_simpson_diversity(u) -> float:
    u = _check_unit(u)
    return float(1.0 / np.sum(u**4))


def markov_trajectory(system: InfluenceSystem, p0, steps: int) -> MarkovRun:
    """Iterate ``p_{k+1} = p_k abar^T`` for ``steps`` steps.

    Also reports the entropy ``E_k = -sum p log p`` and diversity
    ``D_k = 1 / E_k`` at each step (``inf`` when ``E_k = 0``).
    """
    if steps < 0:
        raise ValidationError("steps must be non-negative")
    state = p0 if isinstance(p0, ProbabilityState) else ProbabilityState(p0, 0)
    p = _vector(state.p, system.n, "p0")
    states, entropies, diversities = [], [], []
    for k in range(steps + 1):
        if k:
            # Averaging can overshoot [0, 1] by an ulp.
            p = np.clip(system.abar @ p, 0.0, 1.0)
        states.append(ProbabilityState(p, state.k + k))
        e = _entropy(p)
        entropies.append(e)
        diversities.append(1.0 / e if e > 0 else math.inf)
    return MarkovRun(states, entropies, diversities)


def markov_limit(system: InfluenceSystem, p0) -> np.ndarray:
    """Limit of the Markov iteration for an aperiodic chain.

    Every coordinate converges to the same consensus value, the average of
    ``p0`` weighted by ``rho * h``; it equals ``1/n`` only in special cases.
    """
    p0 = _vector(p0, system.n, "p0")
    pi = system.rho * system.h
    return np.full(system.n, pi @ p0 / pi.sum())


def markov_classify(system: InfluenceSystem, eps: float = DEFAULT_EPS_MULT) -> dict:
    """Irreducibility and aperiodicity of the chain driven by ``abar^T``.

    A connected graph always gives an irreducible chain; it is aperiodic
    exactly when -1 is not an eigenvalue of ``abar``.
    """
    mu = np.linalg.eigvalsh(system.s_matrix)
    return {
        "irreducible": True,
        "aperiodic": bool(mu.min() > -1.0 + eps),
        "min_eigenvalue": float(mu.min()),
    }


def _bfs_levels(m: np.ndarray) -> np.ndarray:
    level = np.full(m.shape[0], -1)
    level[0] = 0
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for j in np.flatnonzero(m[i]):
            if level[j] < 0:
                level[j] = level[i] + 1
                queue.append(j)
    return level


def chain_period(matrix) -> int:
    """Period of an irreducible nonnegative matrix, found combinatorially.

    Runs BFS from node 0 over the support of ``matrix`` and returns the gcd
    of ``level[i] + 1 - level[j]`` over all edges ``i -> j``, which equals
    the gcd of all cycle lengths.
    """
    m = np.asarray(matrix) > 0
    level = _bfs_levels(m)
    if np.any(level < 0) or np.any(_bfs_levels(m.T) < 0):
        raise ValidationError("matrix is not irreducible")
    rows, cols = np.nonzero(m)
    diffs = (level[rows] + 1 - level[cols]).tolist()
    return reduce(math.gcd, diffs, 0)
