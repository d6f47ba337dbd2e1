"""Graph and gamble data model: construction, validation, neighborhood queries.

Vertices are dense integer ids 0..n-1; display labels live in an optional
side table and only matter at the I/O boundary.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ValidationError

#: Absolute tolerance on the gamble sum check.
GAMBLE_SUM_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable adjacency structure.

    ``out_adj[v]`` lists out-neighbors ascending, deduplicated, without
    self-loops (the vertex itself is implicit in its closed neighborhood).
    ``in_adj`` is the transpose, materialized because the settlement solver
    relaxes along incoming edges.
    """

    directed: bool
    vertex_count: int
    out_adj: tuple[tuple[int, ...], ...]
    in_adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None

    @property
    def edge_count(self) -> int:
        total = sum(len(nbrs) for nbrs in self.out_adj)
        return total if self.directed else total // 2

    @cached_property
    def closed_adj(self) -> tuple[tuple[int, ...], ...]:
        """Closed neighborhoods: out-neighbors plus the vertex itself, ascending."""
        return tuple(
            tuple(sorted((*nbrs, v))) for v, nbrs in enumerate(self.out_adj)
        )

    @cached_property
    def closed_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr, indices) CSR layout of closed_adj for vectorized passes."""
        indptr = np.zeros(self.vertex_count + 1, dtype=np.int64)
        for v, nbrs in enumerate(self.closed_adj):
            indptr[v + 1] = indptr[v] + len(nbrs)
        indices = np.fromiter(
            (u for nbrs in self.closed_adj for u in nbrs),
            dtype=np.int64,
            count=int(indptr[-1]),
        )
        indptr.setflags(write=False)
        indices.setflags(write=False)
        return indptr, indices

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)


@dataclass(frozen=True)
class Gamble:
    """The gambler's time-independent vertex distribution.

    Entries are used exactly as validated; permissive instances may sum to
    less than 1 (see :func:`validate_gamble`).
    """

    p: tuple[float, ...]

    @cached_property
    def p_array(self) -> np.ndarray:
        arr = np.array(self.p, dtype=np.float64)
        arr.setflags(write=False)
        return arr

    @cached_property
    def total(self) -> float:
        return math.fsum(self.p)


def build_graph(directed, vertex_count, edges, labels=None) -> Graph:
    """Build a validated Graph from an edge list.

    Duplicate edges collapse, explicit self-loops are dropped (self-membership
    of the closed neighborhood is implicit), and undirected input is
    symmetrized. Raises ValidationError on out-of-range endpoints or an empty
    instance.
    """
    if vertex_count == 0:
        raise ValidationError("empty instance: vertex_count is 0")
    if vertex_count < 0:
        raise ValidationError(f"vertex_count must be positive, got {vertex_count}")
    if labels is not None:
        labels = tuple(str(x) for x in labels)
        if len(labels) != vertex_count:
            raise ValidationError(
                f"got {len(labels)} labels for {vertex_count} vertices"
            )
        if len(set(labels)) != len(labels):
            raise ValidationError("vertex labels must be unique")

    out_sets: list[set[int]] = [set() for _ in range(vertex_count)]
    for edge in edges:
        u, v = edge
        for x in (u, v):
            if not 0 <= x < vertex_count:
                raise ValidationError(
                    f"edge ({u}, {v}) has endpoint {x} outside [0, {vertex_count})"
                )
        if u == v:
            continue
        out_sets[u].add(v)
        if not directed:
            out_sets[v].add(u)

    out_adj = tuple(tuple(sorted(s)) for s in out_sets)
    if directed:
        in_sets: list[set[int]] = [set() for _ in range(vertex_count)]
        for u, nbrs in enumerate(out_adj):
            for v in nbrs:
                in_sets[v].add(u)
        in_adj = tuple(tuple(sorted(s)) for s in in_sets)
    else:
        in_adj = out_adj

    return Graph(
        directed=bool(directed),
        vertex_count=vertex_count,
        out_adj=out_adj,
        in_adj=in_adj,
        labels=labels,
    )


def closed_neighborhood(g: Graph, v: int) -> list[int]:
    """N(v): out-neighbors of v plus v itself, ascending."""
    if not 0 <= v < g.vertex_count:
        raise ValidationError(f"vertex {v} outside [0, {g.vertex_count})")
    return list(g.closed_adj[v])


def _make_gamble(n, values, mode) -> Gamble:
    if mode not in ("strict", "permissive"):
        raise ValueError(f"mode must be 'strict' or 'permissive', got {mode!r}")
    values = [float(x) for x in values]
    if len(values) != n:
        raise ValidationError(
            f"gamble has {len(values)} entries for {n} vertices"
        )
    for v, x in enumerate(values):
        if not 0.0 <= x <= 1.0:
            raise ValidationError(f"gamble entry for vertex {v} is {x!r}, outside [0, 1]")
    total = math.fsum(values)
    if mode == "strict":
        if abs(total - 1.0) > GAMBLE_SUM_TOL:
            raise ValidationError(
                f"gamble sums to {total!r}; strict mode requires 1 within {GAMBLE_SUM_TOL}"
            )
    elif total > 1.0 + GAMBLE_SUM_TOL:
        raise ValidationError(
            f"gamble sums to {total!r}; permissive mode allows at most 1"
        )
    return Gamble(p=tuple(values))


def validate_gamble(g: Graph, values, mode: str = "strict") -> Gamble:
    """Check per-entry range and the mode's sum constraint; no renormalization."""
    return _make_gamble(g.vertex_count, values, mode)
