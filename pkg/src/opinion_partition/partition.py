"""Sign-based bipartition, recursive and K-means multi-way partitions."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .centrality import centrality
from .errors import (
    DegenerateClusters,
    Disconnected,
    IndecisivePartition,
    InitialStateRequired,
    LengthMismatch,
    ValidationError,
)
from .graph import Graph, connected_components, induced_subgraph, is_connected
from .spectral import (
    DEFAULT_EPS_MULT,
    SpectralDecomposition,
    canonical_sign,
    group_eigenvalues,
    laplacian_of_graph,
    spectral_system,
)

# Entries of s below this fraction of max|s| are rounding noise and count as 0.
ZERO_RTOL = 1e-10

STOP_REASONS = ("multiplicity_gt_1", "too_small", "disconnected_split", "max_depth")


@dataclass(frozen=True, eq=False)
class PartitionResult:
    s: np.ndarray
    cluster1: tuple[int, ...]
    cluster2: tuple[int, ...]
    multiplicity_used: int
    used_initial_state: np.ndarray | None = None

    @property
    def strengths(self) -> np.ndarray:
        return np.abs(self.s)

    @property
    def clusters(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.cluster1, self.cluster2

    def labelled(self, g: Graph) -> tuple[list[str], list[str]]:
        return [g.labels[i] for i in self.cluster1], [g.labels[i] for i in self.cluster2]


def split_by_sign(s, zero_rtol: float = ZERO_RTOL):
    """``({i: s_i > 0}, {i: s_i <= 0})`` with near-zero entries treated as 0."""
    s = np.asarray(s, dtype=float)
    cut = zero_rtol * np.max(np.abs(s)) if s.size else 0.0
    pos = s > cut
    return tuple(np.flatnonzero(pos).tolist()), tuple(np.flatnonzero(~pos).tolist())


def _project(u, v, x0, n: int) -> tuple[np.ndarray, np.ndarray]:
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (n,):
        raise LengthMismatch(f"x0 has shape {x0.shape}, expected ({n},)")
    coeffs = v.T @ x0
    if not np.any(np.abs(coeffs) > 1e-12 * max(np.linalg.norm(x0), 1e-300)):
        raise IndecisivePartition("x0 has no component in the lambda_2 eigenspace")
    return u @ coeffs, x0


def bipartition(dec: SpectralDecomposition, x0=None) -> PartitionResult:
    """Split nodes by the sign of the lambda_2 disagreement direction.

    With a simple lambda_2 the direction is ``u_2`` itself and ``x0`` is
    ignored. With multiplicity ``m > 1`` it is the projection of ``x0`` onto
    the eigenspace, ``sum_l u_l (v_l . x0)``, so ``x0`` is mandatory.
    """
    group = list(dec.lambda2_group)
    m = len(group)
    used = None
    if m == 1:
        s = np.array(dec.right_vectors[:, group[0]])
    else:
        if x0 is None:
            raise InitialStateRequired(
                f"lambda_2 has multiplicity {m}; an initial opinion state is required"
            )
        s, used = _project(dec.right_vectors[:, group], dec.left_vectors[:, group], x0, dec.n)
    c1, c2 = split_by_sign(s)
    return PartitionResult(s, c1, c2, m, used)


def fiedler_baseline(
    g: Graph, x0=None, eps_mult: float = DEFAULT_EPS_MULT
) -> PartitionResult:
    """Same sign rule applied to the Fiedler vector of ``diag(A 1) - A``."""
    if not is_connected(g):
        raise Disconnected("Fiedler partition needs a connected graph")
    if g.n < 2:
        raise ValidationError("Fiedler partition needs at least two nodes")
    lam, w = np.linalg.eigh(laplacian_of_graph(g))
    group = next(grp for grp in group_eigenvalues(lam, eps_mult) if 1 in grp)
    group = [i for i in group if i != 0]
    used = None
    if len(group) == 1:
        s = w[:, group[0]] * canonical_sign(w[:, group[0]])
    else:
        if x0 is None:
            raise InitialStateRequired(
                f"Fiedler value has multiplicity {len(group)}; x0 required"
            )
        wg = w[:, group]
        s, used = _project(wg, wg, x0, g.n)
    c1, c2 = split_by_sign(s)
    return PartitionResult(s, c1, c2, len(group), used)


def membership_strengths(res: PartitionResult) -> list[tuple[int, float]]:
    """``(node, |s_i|)`` pairs: cluster 1 then cluster 2, strongest first in each."""
    out = []
    for cluster in res.clusters:
        ranked = sorted(cluster, key=lambda i: (-abs(res.s[i]), i))
        out.extend((i, float(abs(res.s[i]))) for i in ranked)
    return out


# -- recursive bipartition ---------------------------------------------------

@dataclass(eq=False)
class PartitionTree:
    """Node of a recursive partition.

    ``nodes`` are indices into the root graph. Internal nodes either carry
    the ``result`` of bipartitioning their induced subgraph, or have
    ``reason == "disconnected_split"`` when their children are the connected
    components. Leaves have no children and a stop ``reason``.
    """

    nodes: tuple[int, ...]
    result: PartitionResult | None = None
    children: list[PartitionTree] = field(default_factory=list)
    reason: str | None = None
    depth: int = 0

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def leaves(self) -> list[PartitionTree]:
        if self.is_leaf:
            return [self]
        return [leaf for child in self.children for leaf in child.leaves()]

    def clusters(self) -> list[tuple[int, ...]]:
        return [leaf.nodes for leaf in self.leaves()]

    def to_dict(self, labels=None) -> dict:
        d = {
            "nodes": [labels[i] for i in self.nodes] if labels else list(self.nodes),
            "depth": self.depth,
        }
        if self.reason:
            d["reason"] = self.reason
        if self.result is not None:
            d["multiplicity"] = self.result.multiplicity_used
        if self.children:
            d["children"] = [c.to_dict(labels) for c in self.children]
        return d


def iterative_partition(
    g: Graph,
    centrality_kind: str = "degree",
    min_size: int = 3,
    max_depth: int = 16,
    x0=None,
    centrality_values=None,
    eps_mult: float = DEFAULT_EPS_MULT,
) -> PartitionTree:
    """Bipartition recursively until lambda_2 stops being simple.

    A subgraph becomes a leaf when it has fewer than ``min_size`` nodes, at
    ``max_depth``, or when its lambda_2 is repeated and no ``x0`` is given.
    Disconnected induced subgraphs are first split into their components.
    Centralities are recomputed on each subgraph; custom ``centrality_values``
    (root-indexed) are restricted instead.
    """
    if not is_connected(g):
        raise Disconnected("iterative partition needs a connected graph")
    if min_size < 1 or max_depth < 0:
        raise ValidationError("min_size must be >= 1 and max_depth >= 0")
    if x0 is not None:
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (g.n,):
            raise LengthMismatch(f"x0 has shape {x0.shape}, expected ({g.n},)")
    if centrality_values is not None:
        centrality_values = np.asarray(centrality_values, dtype=float)

    def grow(nodes: np.ndarray, depth: int) -> PartitionTree:
        key = tuple(int(i) for i in nodes)
        if len(nodes) < min_size or len(nodes) < 2:
            return PartitionTree(key, reason="too_small", depth=depth)
        if depth >= max_depth:
            return PartitionTree(key, reason="max_depth", depth=depth)
        sub, _ = induced_subgraph(g, nodes)
        comps = connected_components(sub)
        if len(comps) > 1:
            children = [grow(nodes[c], depth + 1) for c in comps]
            return PartitionTree(key, children=children, reason="disconnected_split", depth=depth)

        values = None if centrality_values is None else centrality_values[nodes]
        rho = centrality(sub, centrality_kind, values)
        _, dec = spectral_system(sub, rho, eps_mult)
        if dec.multiplicity2 > 1 and x0 is None:
            return PartitionTree(key, reason="multiplicity_gt_1", depth=depth)
        try:
            res = bipartition(dec, None if x0 is None else x0[nodes])
        except IndecisivePartition:
            return PartitionTree(key, reason="multiplicity_gt_1", depth=depth)
        parts = [nodes[list(c)] for c in res.clusters]
        parts.sort(key=lambda p: p.min())
        children = [grow(p, depth + 1) for p in parts]
        return PartitionTree(key, result=res, children=children, depth=depth)

    return grow(np.arange(g.n), 0)


# -- K-means on the disagreement values ---------------------------------------

def _kmeans_pp(values: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    centers = [values[rng.integers(len(values))]]
    for _ in range(1, k):
        d2 = np.min((values[:, None] - np.array(centers)[None, :]) ** 2, axis=1)
        centers.append(values[rng.choice(len(values), p=d2 / d2.sum())])
    return np.array(centers)


def kmeans_partition(s, k: int, seed: int = 0, max_iter: int = 1000) -> list[tuple[int, ...]]:
    """One-dimensional K-means of the values ``s`` (k-means++ seeding, Lloyd).

    Deterministic for a given ``seed``. Clusters are returned ordered by
    their smallest node index.
    """
    s = np.asarray(s, dtype=float)
    if s.ndim != 1 or s.size == 0:
        raise ValidationError("s must be a non-empty vector")
    if not 1 <= k <= s.size:
        raise ValidationError(f"k must be in [1, {s.size}]")
    if k > np.unique(s).size:
        raise DegenerateClusters(f"k={k} exceeds the number of distinct values")
    rng = np.random.default_rng(seed)
    centers = _kmeans_pp(s, k, rng)
    labels = None
    for _ in range(max_iter):
        # argmin picks the lowest center index on exact ties.
        new = np.argmin(np.abs(s[:, None] - centers[None, :]), axis=1)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        for c in range(k):
            members = s[labels == c]
            if members.size:
                centers[c] = members.mean()
            else:
                far = np.argmax(np.min(np.abs(s[:, None] - centers[None, :]), axis=1))
                centers[c] = s[far]
    clusters = [tuple(np.flatnonzero(labels == c).tolist()) for c in range(k)]
    return sorted((c for c in clusters if c), key=min)
