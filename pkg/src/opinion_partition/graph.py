"""Undirected weighted graphs and the built-in benchmark networks."""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import (
    ConflictingEdge,
    EmptyNodeSet,
    LengthMismatch,
    NegativeWeight,
    ParseError,
    SelfLoop,
    UnknownDataset,
    ValidationError,
)


@dataclass(frozen=True, eq=False)
class Graph:
    """Dense undirected graph with labelled nodes.

    The adjacency array is copied and frozen on construction, so a Graph can
    be shared freely.
    """

    labels: tuple[str, ...]
    adjacency: np.ndarray

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValidationError(f"adjacency must be square, got shape {a.shape}")
        labels = tuple(str(x) for x in self.labels)
        if len(labels) != a.shape[0]:
            raise LengthMismatch(f"{len(labels)} labels for {a.shape[0]} nodes")
        if len(set(labels)) != len(labels):
            raise ValidationError("node labels must be unique")
        if not np.all(np.isfinite(a)):
            raise ValidationError("adjacency contains non-finite weights")
        if np.any(a < 0):
            raise NegativeWeight("adjacency contains negative weights")
        if np.any(np.diag(a) != 0):
            raise SelfLoop("adjacency has a nonzero diagonal")
        if not np.array_equal(a, a.T):
            raise ValidationError("adjacency is not symmetric")
        a.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ValidationError(f"unknown node label {label!r}") from None

    def __repr__(self):
        m = int(np.count_nonzero(np.triu(self.adjacency)))
        return f"Graph(n={self.n}, edges={m})"


def parse_edge_list(text: str) -> Graph:
    """Parse ``u v [w]`` lines into an undirected Graph.

    Blank lines and lines starting with ``#`` are skipped. Nodes are numbered
    in order of first appearance. A repeated edge is accepted only when it
    repeats the same weight.
    """
    labels: dict[str, int] = {}
    weights: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise ParseError(f"line {lineno}: expected 'u v [w]', got {raw!r}")
        u, v = parts[0], parts[1]
        try:
            w = float(parts[2]) if len(parts) == 3 else 1.0
        except ValueError:
            raise ParseError(f"line {lineno}: bad weight {parts[2]!r}") from None
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop on node {u!r}")
        if not np.isfinite(w):
            raise ParseError(f"line {lineno}: non-finite weight")
        if w < 0:
            raise NegativeWeight(f"line {lineno}: negative weight {w}")
        i = labels.setdefault(u, len(labels))
        j = labels.setdefault(v, len(labels))
        key = (min(i, j), max(i, j))
        if key in weights and weights[key] != w:
            raise ConflictingEdge(
                f"line {lineno}: edge {u}-{v} given weights {weights[key]} and {w}"
            )
        weights[key] = w

    n = len(labels)
    a = np.zeros((n, n))
    for (i, j), w in weights.items():
        a[i, j] = a[j, i] = w
    return Graph(tuple(labels), a)


def from_adjacency(adjacency, labels=None) -> Graph:
    adjacency = np.asarray(adjacency, dtype=float)
    if labels is None:
        labels = [str(i + 1) for i in range(adjacency.shape[0])]
    return Graph(tuple(labels), adjacency)


def connected_components(g: Graph) -> list[list[int]]:
    """Components as sorted index lists, ordered by smallest member."""
    seen = np.zeros(g.n, dtype=bool)
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        queue = deque([start])
        comp = []
        while queue:
            i = queue.popleft()
            comp.append(i)
            for j in np.flatnonzero(g.adjacency[i] > 0):
                if not seen[j]:
                    seen[j] = True
                    queue.append(j)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(connected_components(g)) == 1


def degree_vector(g: Graph) -> np.ndarray:
    return g.adjacency.sum(axis=1)


def _check_nodes(g: Graph, nodes) -> np.ndarray:
    idx = np.asarray(list(nodes), dtype=int)
    if idx.size == 0:
        raise EmptyNodeSet("node set is empty")
    if np.any(idx < 0) or np.any(idx >= g.n):
        raise ValidationError(f"node index out of range [0, {g.n})")
    if len(np.unique(idx)) != idx.size:
        raise ValidationError("node set contains duplicates")
    return idx


def induced_subgraph(g: Graph, nodes) -> tuple[Graph, np.ndarray]:
    """Restrict ``g`` to ``nodes`` (parent indices).

    Returns the subgraph and the array mapping each subgraph index back to
    its parent index.
    """
    idx = _check_nodes(g, nodes)
    sub = Graph(tuple(g.labels[i] for i in idx), g.adjacency[np.ix_(idx, idx)])
    return sub, idx


# -- built-in datasets -------------------------------------------------------

def _read_resource(name: str) -> str:
    return resources.files(__package__).joinpath("data", name).read_text("utf-8")


def reorder(g: Graph, labels) -> Graph:
    """Same graph with nodes listed in the order of ``labels``."""
    idx = [g.index(lab) for lab in labels]
    if sorted(idx) != list(range(g.n)):
        raise ValidationError("reorder needs every label exactly once")
    return Graph(tuple(g.labels[i] for i in idx), g.adjacency[np.ix_(idx, idx)])


def karate() -> Graph:
    """Zachary karate club; node i (0-based) carries label ``str(i + 1)``."""
    g = parse_edge_list(_read_resource("karate.txt"))
    return reorder(g, [str(i) for i in range(1, g.n + 1)])


def southern_women_attendance() -> tuple[list[str], list[str], np.ndarray]:
    """The 18 x 14 women-by-events incidence matrix with its row/column names."""
    women, rows = [], []
    for line in _read_resource("southern_women.txt").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, *events = line.split()
        women.append(name)
        rows.append(events)
    events = [f"E{k}" for k in range(1, 15)]
    incidence = np.zeros((len(women), len(events)))
    for i, attended in enumerate(rows):
        for e in attended:
            incidence[i, events.index(e)] = 1.0
    return women, events, incidence


def southern_women() -> Graph:
    """Co-attendance network: weight = number of events two women both attended."""
    women, _, b = southern_women_attendance()
    a = b @ b.T
    np.fill_diagonal(a, 0.0)
    return Graph(tuple(women), a)


def path_graph(n: int = 3) -> Graph:
    a = np.zeros((n, n))
    for i in range(n - 1):
        a[i, i + 1] = a[i + 1, i] = 1.0
    return from_adjacency(a)


def star_graph(n: int = 4) -> Graph:
    """Star on ``n`` nodes with node 1 at the centre."""
    a = np.zeros((n, n))
    a[0, 1:] = a[1:, 0] = 1.0
    return from_adjacency(a)


def complete_graph(k: int) -> Graph:
    if k < 1:
        raise ValidationError("complete graph needs k >= 1")
    return from_adjacency(np.ones((k, k)) - np.eye(k))


def builtin_dataset(name: str) -> Graph:
    """Look up a built-in graph.

    Known names: ``karate``, ``southern_women``, ``path3``, ``star4`` and
    ``complete(k)`` (also spelled ``completeK``).
    """
    key = name.strip().lower()
    if key == "karate":
        return karate()
    if key == "southern_women":
        return southern_women()
    if key == "path3":
        return path_graph(3)
    if key == "star4":
        return star_graph(4)
    m = re.fullmatch(r"complete\(?(\d+)\)?", key)
    if m:
        return complete_graph(int(m.group(1)))
    raise UnknownDataset(f"unknown dataset {name!r}")


BUILTIN_NAMES = ("karate", "southern_women", "path3", "star4", "complete(k)")
