"""JSON, CSV and Graphviz DOT serialisation of results.

Floats are written with Python's shortest round-trip repr, so parsing the
JSON back reproduces every value bit for bit. Non-finite values become null.
"""
from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .dynamics import MarkovRun, OpinionTrajectory
from .graph import Graph
from .partition import PartitionResult, PartitionTree, membership_strengths
from .spectral import InfluenceSystem, SpectralDecomposition


def _clean(obj):
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (list, tuple)):
        return [_clean(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), indent=2, allow_nan=False)


def partition_dict(g: Graph, res: PartitionResult) -> dict:
    c1, c2 = res.labelled(g)
    d = {
        "clusters": [c1, c2],
        "s": res.s,
        "strengths": res.strengths,
        "multiplicity": res.multiplicity_used,
        "membership": [
            {"node": g.labels[i], "strength": w} for i, w in membership_strengths(res)
        ],
    }
    if res.used_initial_state is not None:
        d["x0"] = res.used_initial_state
    return d


def spectrum_dict(g: Graph, system: InfluenceSystem, dec: SpectralDecomposition) -> dict:
    return {
        "labels": list(g.labels),
        "eigenvalues": dec.eigenvalues,
        "groups": [list(grp) for grp in dec.groups],
        "multiplicity2": dec.multiplicity2 if dec.n > 1 else 0,
        # Column i of each matrix is written as row i here.
        "right_vectors": dec.right_vectors.T,
        "left_vectors": dec.left_vectors.T,
        "rho": system.rho,
        "abar": system.abar,
        "lbar": system.lbar,
    }


def trajectory_dict(g: Graph, traj: OpinionTrajectory) -> dict:
    return {"labels": list(g.labels), "times": traj.times, "states": traj.as_array()}


def trajectory_csv(g: Graph, traj: OpinionTrajectory) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t", *g.labels])
    for state in traj.states:
        writer.writerow([repr(float(state.t)), *(repr(float(x)) for x in state.x)])
    return buf.getvalue()


def markov_dict(g: Graph, run: MarkovRun) -> dict:
    return {
        "labels": list(g.labels),
        "steps": [st.k for st in run.states],
        "p": [st.p for st in run.states],
        "entropy": run.entropies,
        "diversity": run.diversities,
    }


def markov_csv(g: Graph, run: MarkovRun) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", *g.labels])
    for st in run.states:
        writer.writerow([st.k, *(repr(float(x)) for x in st.p)])
    return buf.getvalue()


def tree_dict(g: Graph, tree: PartitionTree) -> dict:
    return {
        "clusters": [[g.labels[i] for i in c] for c in tree.clusters()],
        "tree": tree.to_dict(g.labels),
    }


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def partition_dot(g: Graph, res: PartitionResult, name: str = "partition") -> str:
    """Undirected DOT graph: cluster 1 as squares, cluster 2 as circles.

    Node width grows linearly with membership strength |s_i|, from 0.3 for
    the weakest possible member to 1.5 for the strongest.
    """
    strengths = res.strengths
    top = strengths.max() if strengths.size and strengths.max() > 0 else 1.0
    in_c1 = set(res.cluster1)
    lines = [f"graph {_quote(name)} {{", "  node [fixedsize=true, style=filled];"]
    for i, label in enumerate(g.labels):
        shape, color = ("square", "lightblue") if i in in_c1 else ("circle", "lightsalmon")
        width = 0.3 + 1.2 * strengths[i] / top
        lines.append(
            f"  {_quote(label)} [shape={shape}, fillcolor={color}, "
            f"width={width:.4f}, cluster={1 if i in in_c1 else 2}];"
        )
    a = g.adjacency
    for i, j in zip(*np.nonzero(np.triu(a))):
        attr = "" if a[i, j] == 1 else f" [label={_quote(f'{a[i, j]:g}')}]"
        lines.append(f"  {_quote(g.labels[i])} -- {_quote(g.labels[j])}{attr};")
    lines.append("}")
    return "\n".join(lines) + "\n"
