"""Command-line front end.

Usage: ``opinion-partition COMMAND --input SOURCE [options]`` where SOURCE
is an edge-list file or ``builtin:<name>``. Results go to stdout; errors are
written to stderr as JSON with exit code 1 (bad input) or 2 (computation).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import export
from .centrality import KINDS, centrality, parse_centrality_file
from .dynamics import (
    disagreement_state,
    diversity_energy,
    entropy_diversity,
    inverse_simpson_diversity,
    markov_classify,
    markov_limit,
    markov_trajectory,
    projected_mode,
    solve_opinions,
)
from .errors import (
    DivergentDiversity,
    OpinionPartitionError,
    ValidationError,
)
from .graph import Graph, builtin_dataset, parse_edge_list
from .partition import bipartition, iterative_partition, kmeans_partition
from .spectral import DEFAULT_EPS_MULT, spectral_system
from .verify import run_all

COMMANDS = ("partition", "tree", "kmeans", "simulate", "markov", "diversity", "spectrum", "verify")
FORMATS = ("json", "csv", "dot")


@dataclass
class RunConfig:
    command: str
    input: str
    centrality: str = "degree"
    centrality_file: str | None = None
    tau: float = 1.0
    x0: str | None = None
    k: int | None = None
    seed: int = 0
    eps_mult: float = DEFAULT_EPS_MULT
    format: str = "json"
    times: str | None = None
    p0: str | None = None
    steps: int = 10
    min_size: int = 3
    max_depth: int = 16

    def validate(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ValidationError(f"unknown format {self.format!r}")
        allowed = {
            "partition": ("json", "dot"),
            "simulate": ("json", "csv"),
            "markov": ("json", "csv"),
        }.get(self.command, ("json",))
        if self.format not in allowed:
            raise ValidationError(f"{self.command} supports formats {allowed}")
        if self.command == "kmeans" and self.k is None:
            raise ValidationError("kmeans needs --k")
        if self.command == "simulate" and self.x0 is None:
            raise ValidationError("simulate needs --x0")
        if self.command == "markov" and self.p0 is None:
            raise ValidationError("markov needs --p0")
        if not self.tau > 0:
            raise ValidationError("--tau must be positive")
        if not self.eps_mult > 0:
            raise ValidationError("--eps-mult must be positive")


def load_graph(source: str) -> Graph:
    if source.startswith("builtin:"):
        return builtin_dataset(source[len("builtin:"):])
    path = Path(source)
    if not path.is_file():
        raise ValidationError(f"input file not found: {source}")
    return parse_edge_list(path.read_text("utf-8"))


def _parse_floats(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.replace(",", " ").split()])
    except ValueError:
        raise ValidationError(f"could not parse numbers from {text!r}") from None


def parse_vector(source: str, n: int, seed: int = 0, name: str = "x0") -> np.ndarray:
    """Vector from ``random``, an inline ``a,b,c`` list, or a file (one value per line)."""
    if source == "random":
        return np.random.default_rng(seed).standard_normal(n)
    path = Path(source)
    text = path.read_text("utf-8") if path.is_file() else source
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    x = _parse_floats(" ".join(lines))
    if x.shape != (n,):
        raise ValidationError(f"{name} has {x.size} values, graph has {n} nodes")
    return x


def _times(cfg: RunConfig) -> np.ndarray:
    if cfg.times is None:
        return np.linspace(0.0, 5.0 * cfg.tau, 11)
    return _parse_floats(cfg.times)


def _system(cfg: RunConfig, g: Graph):
    if cfg.centrality_file:
        rho = parse_centrality_file(g, Path(cfg.centrality_file).read_text("utf-8"))
    else:
        rho = centrality(g, cfg.centrality)
    return spectral_system(g, rho, cfg.eps_mult)


def _x0(cfg: RunConfig, g: Graph):
    return None if cfg.x0 is None else parse_vector(cfg.x0, g.n, cfg.seed)


def run(cfg: RunConfig) -> tuple[int, str]:
    """Execute ``cfg`` and return ``(exit_code, stdout_text)``.

    Library errors propagate; :func:`main` turns them into exit codes.
    """
    cfg.validate()
    g = load_graph(cfg.input)
    cmd = cfg.command

    if cmd == "tree":
        values = None
        if cfg.centrality_file:
            values = parse_centrality_file(g, Path(cfg.centrality_file).read_text("utf-8")).values
        kind = "custom" if values is not None else cfg.centrality
        tree = iterative_partition(
            g, kind, cfg.min_size, cfg.max_depth, _x0(cfg, g), values, cfg.eps_mult
        )
        return 0, export.dumps(export.tree_dict(g, tree))

    system, dec = _system(cfg, g)

    if cmd == "spectrum":
        return 0, export.dumps(export.spectrum_dict(g, system, dec))

    if cmd == "verify":
        checks = run_all(system, dec)
        lines = [
            f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in checks
        ]
        return (0 if all(c.passed for c in checks) else 2), "\n".join(lines) + "\n"

    if cmd == "partition":
        res = bipartition(dec, _x0(cfg, g))
        if cfg.format == "dot":
            return 0, export.partition_dot(g, res)
        return 0, export.dumps(export.partition_dict(g, res))

    if cmd == "kmeans":
        res = bipartition(dec, _x0(cfg, g))
        clusters = kmeans_partition(res.s, cfg.k, cfg.seed)
        out = {"k": cfg.k, "seed": cfg.seed, "s": res.s,
               "clusters": [[g.labels[i] for i in c] for c in clusters]}
        return 0, export.dumps(out)

    if cmd == "simulate":
        traj = solve_opinions(dec, _x0(cfg, g), cfg.tau, _times(cfg))
        if cfg.format == "csv":
            return 0, export.trajectory_csv(g, traj)
        return 0, export.dumps(export.trajectory_dict(g, traj))

    if cmd == "markov":
        p0 = parse_vector(cfg.p0, g.n, cfg.seed, name="p0")
        run_ = markov_trajectory(system, p0, cfg.steps)
        if cfg.format == "csv":
            return 0, export.markov_csv(g, run_)
        out = export.markov_dict(g, run_)
        out.update(markov_classify(system, cfg.eps_mult))
        out["limit"] = markov_limit(system, p0) if out["aperiodic"] else None
        return 0, export.dumps(out)

    if cmd == "diversity":
        x0 = _x0(cfg, g)
        res = bipartition(dec, x0)
        u = res.s / np.linalg.norm(res.s)
        out = {"labels": list(g.labels), "direction": u,
               "inverse_simpson": inverse_simpson_diversity(u),
               "energy": diversity_energy(g, u)}
        try:
            out["entropy"], out["entropy_diversity"] = entropy_diversity(u)
        except DivergentDiversity:
            out["entropy"], out["entropy_diversity"] = 0.0, None
        if x0 is not None:
            times = _times(cfg)
            traj = solve_opinions(dec, x0, cfg.tau, times)
            out["times"] = times
            out["disagreement_energy"] = [
                diversity_energy(g, disagreement_state(dec, st.x)) for st in traj.states
            ]
            out["mode_energy"] = [
                diversity_energy(g, projected_mode(dec, x0, cfg.tau, t)) for t in times
            ]
        return 0, export.dumps(out)

    raise ValidationError(f"unknown command {cmd!r}")  # unreachable after validate()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        _emit_error("UsageError", message)
        sys.exit(1)


def _emit_error(code: str, message: str):
    sys.stderr.write(json.dumps({"error": code, "message": message}) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="opinion-partition", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--input", required=True, help="edge-list file or builtin:<name>")
    p.add_argument("--centrality", default="degree", choices=[k for k in KINDS if k != "custom"])
    p.add_argument("--centrality-file", help="'label value' lines; overrides --centrality")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--x0", help="'random', inline comma list, or file with one value per line")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--eps-mult", type=float, default=DEFAULT_EPS_MULT)
    p.add_argument("--format", default="json", choices=FORMATS)
    p.add_argument("--times", help="comma-separated evaluation times (default 0..5 tau)")
    p.add_argument("--p0", help="initial probabilities: inline list or file")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--min-size", type=int, default=3)
    p.add_argument("--max-depth", type=int, default=16)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(args).items()})
    try:
        code, text = run(cfg)
    except ValidationError as exc:
        _emit_error(exc.code, str(exc))
        return 1
    except OpinionPartitionError as exc:
        _emit_error(exc.code, str(exc))
        return 2
    except np.linalg.LinAlgError as exc:
        _emit_error("LinAlgError", str(exc))
        return 2
    sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
