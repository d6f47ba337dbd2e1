"""Random instances and the sparse-vs-dense timing sweep.

Graphs are Erdos-Renyi style; connected generation lays a uniform random
spanning tree (random Prufer sequence) first and adds extra edges up to the
requested density. Timing covers the solve call only, never parsing or
generation, and solver agreement is cross-checked on every instance.
"""
from __future__ import annotations

import csv
import heapq
import math
import sys
import time
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .graph import Gamble, Graph, _make_gamble, build_graph
from .solver import Solution, solve_iterative, solve_priority, times_close

GAMBLE_MODES = ("uniform", "dirichlet", "sparse_support")

CSV_FIELDS = (
    "n",
    "m",
    "gamble_mode",
    "algorithm",
    "wall_time_ns",
    "iterations",
    "max_residual",
    "agreement",
)

_SOLVERS = {"iterative": solve_iterative, "priority": solve_priority}


@dataclass(frozen=True)
class BenchConfig:
    sizes: tuple[int, ...]
    densities: tuple[object, ...]  # float = edge probability, int = edge count, "4n" = count scaled by n
    gamble_modes: tuple[str, ...] = ("uniform", "dirichlet")
    repetitions: int = 1
    seed: int = 0
    algorithms: tuple[str, ...] = ("iterative", "priority")
    ensure_connected: bool = True


@dataclass(frozen=True)
class BenchRow:
    n: int
    m: int
    gamble_mode: str
    algorithm: str
    wall_time_ns: int
    iterations: int
    max_residual: float
    agreement: bool | None


def _random_tree_edges(n, rng):
    """Uniform random labeled spanning tree, decoded from a Prufer sequence."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    prufer = [int(x) for x in rng.integers(0, n, size=n - 2)]
    degree = [1] * n
    for x in prufer:
        degree[x] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in prufer:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x) if leaf < x else (x, leaf))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((u, v) if u < v else (v, u))
    return edges


def gen_random_graph(n, density, ensure_connected=False, seed=0) -> Graph:
    """Random undirected graph, deterministic for a given seed.

    density: a float in [0, 1] is an edge probability, an int is the exact
    total edge count. With ensure_connected a spanning tree is laid first;
    probability mode then adds each remaining pair independently, count mode
    draws the remaining edges uniformly from the non-tree pairs.
    """
    if n < 1:
        raise ValidationError(f"need at least one vertex, got n={n}")
    rng = np.random.default_rng(seed)
    pairs = set(_random_tree_edges(n, rng)) if ensure_connected else set()

    if isinstance(density, bool):
        raise ValidationError("density must be an edge probability or edge count")
    if isinstance(density, (int, np.integer)):
        m = int(density)
        max_m = n * (n - 1) // 2
        if m > max_m:
            raise ValidationError(f"edge count {m} exceeds the {max_m} possible pairs")
        if m < len(pairs):
            raise ValidationError(
                f"edge count {m} cannot keep n={n} connected (needs at least {n - 1})"
            )
        extra = m - len(pairs)
        if extra > 0:
            iu, iv = np.triu_indices(n, k=1)
            codes = iu.astype(np.int64) * n + iv
            taken = np.fromiter((u * n + v for u, v in pairs), dtype=np.int64, count=len(pairs))
            free = np.nonzero(~np.isin(codes, taken))[0]
            chosen = rng.choice(free.size, size=extra, replace=False)
            for k in free[chosen]:
                pairs.add((int(iu[k]), int(iv[k])))
    elif isinstance(density, (float, np.floating)):
        prob = float(density)
        if not 0.0 <= prob <= 1.0:
            raise ValidationError(f"edge probability {prob} outside [0, 1]")
        if n > 1:
            iu, iv = np.triu_indices(n, k=1)
            mask = rng.random(iu.size) < prob
            for a, b in zip(iu[mask], iv[mask]):
                pairs.add((int(a), int(b)))
    else:
        raise ValidationError(f"unsupported density {density!r}")

    return build_graph(False, n, sorted(pairs))


def gen_random_gamble(n, mode, seed=0) -> Gamble:
    """Random strict gamble: uniform, Dirichlet(1), or a sparse-support draw.

    Dirichlet(1) comes from normalized exponentials so any uniform rng
    reproduces it; sparse_support puts a Dirichlet draw on a random
    ceil(n/4)-subset and 0 elsewhere, exercising the infinite-time paths.
    """
    if n < 1:
        raise ValidationError(f"need at least one vertex, got n={n}")
    rng = np.random.default_rng(seed)
    if mode == "uniform":
        values = [1.0 / n] * n
    elif mode == "dirichlet":
        draws = -np.log1p(-rng.random(n))
        values = list(draws / draws.sum())
    elif mode == "sparse_support":
        k = math.ceil(n / 4)
        support = rng.choice(n, size=k, replace=False)
        draws = -np.log1p(-rng.random(k))
        draws /= draws.sum()
        values = [0.0] * n
        for v, x in zip(support, draws):
            values[int(v)] = float(x)
    else:
        raise ValidationError(f"unknown gamble mode {mode!r}")
    return _make_gamble(n, values, "strict")


def _resolve_density(density, n):
    """The "4n" form scales an edge count with the sweep's vertex count."""
    if isinstance(density, str):
        token = density.strip()
        if token.endswith("n"):
            return int(round(float(token[:-1] or "1") * n))
        if "." in token or "e" in token or "E" in token:
            return float(token)
        return int(token)
    return density


def run_benchmark(config: BenchConfig) -> list[BenchRow]:
    """Generate, solve, time, and cross-check every cell of the sweep.

    One row per (instance, algorithm). Disagreements beyond the 1e-9
    tolerance set agreement=False on the affected rows and are reported on
    stderr; they are data, not exceptions, so a sweep always completes.
    """
    for algorithm in config.algorithms:
        if algorithm not in _SOLVERS:
            raise ValidationError(f"unknown algorithm {algorithm!r}")
    if config.repetitions < 1:
        raise ValidationError("repetitions must be positive")
    rows = []
    master = np.random.default_rng(config.seed)
    for n in config.sizes:
        for density in config.densities:
            resolved = _resolve_density(density, n)
            for mode in config.gamble_modes:
                for _ in range(config.repetitions):
                    graph_seed = int(master.integers(2**63))
                    gamble_seed = int(master.integers(2**63))
                    g = gen_random_graph(
                        n, resolved, ensure_connected=config.ensure_connected, seed=graph_seed
                    )
                    gamble = gen_random_gamble(n, mode, seed=gamble_seed)
                    solved: list[tuple[str, Solution, int]] = []
                    for algorithm in config.algorithms:
                        t0 = time.perf_counter_ns()
                        sol = _SOLVERS[algorithm](g, gamble)
                        elapsed = time.perf_counter_ns() - t0
                        solved.append((algorithm, sol, elapsed))
                    agreement = None
                    if len(solved) >= 2:
                        agreement = all(
                            times_close(solved[0][1].times, other.times)
                            for _, other, _ in solved[1:]
                        )
                        if not agreement:
                            print(
                                f"copchase bench: solver disagreement on n={n} "
                                f"m={g.edge_count} mode={mode} seed={graph_seed}",
                                file=sys.stderr,
                            )
                    for algorithm, sol, elapsed in solved:
                        rows.append(
                            BenchRow(
                                n=n,
                                m=g.edge_count,
                                gamble_mode=mode,
                                algorithm=algorithm,
                                wall_time_ns=elapsed,
                                iterations=sol.iterations,
                                max_residual=sol.max_residual,
                                agreement=agreement,
                            )
                        )
    return rows


def write_csv(rows, fileobj) -> None:
    """Write rows with the fixed header; agreement is blank for single-solver runs."""
    writer = csv.writer(fileobj, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        agreement = "" if row.agreement is None else ("true" if row.agreement else "false")
        writer.writerow(
            [
                row.n,
                row.m,
                row.gamble_mode,
                row.algorithm,
                row.wall_time_ns,
                row.iterations,
                repr(row.max_residual),
                agreement,
            ]
        )
