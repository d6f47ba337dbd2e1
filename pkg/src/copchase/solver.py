"""Optimal stationary cop strategies against a known gamble.

Two algorithms compute, for every start vertex, the optimal expected number
of rounds T(v) to capture and the move map pi(v):

* :func:`solve_iterative` relaxes all vertices per round until a fixpoint
  of T(v) = 1 + (1 - p_v) * min over the closed neighborhood, Bellman-Ford
  style. O(V*E), at most n + 1 rounds.
* :func:`solve_priority` settles vertices in ascending T order with a
  decrease-key heap, Dijkstra style. O(E log V) with the binary heap used
  here.

Expected times are extended reals: float('inf') is the explicit
"never captures" state. The conventions (1 - p) * inf = inf for p < 1 and
= 0 for p = 1 apply throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InternalInvariantError, ValidationError
from .graph import Gamble, Graph
from .heap import IndexedMinHeap

#: Strict-improvement threshold. Exact reals need none; with floats a
#: relaxation must beat the incumbent by more than this to count, which
#: guarantees termination and keeps the strategy's functional graph acyclic.
IMPROVE_EPS = 1e-12

#: Coordinate-wise tolerance when comparing time vectors across solvers.
AGREEMENT_TOL = 1e-9


@dataclass(frozen=True)
class Strategy:
    """Stationary move map: from v the cop goes to next[v], a member of N(v).

    Fixed points next[u] == u mean "stay forever"; every other vertex leads
    to a fixed point in fewer than n steps.
    """

    next: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Solution:
    times: np.ndarray
    strategy: Strategy
    iterations: int
    max_residual: float
    algorithm: str


def identity_strategy(n: int) -> Strategy:
    """The all-stay strategy, also both solvers' starting point."""
    return Strategy(next=tuple(range(n)))


def validate_strategy(g: Graph, strategy: Strategy) -> None:
    nxt = strategy.next
    if len(nxt) != g.vertex_count:
        raise ValidationError(
            f"strategy has {len(nxt)} entries for {g.vertex_count} vertices"
        )
    for v, u in enumerate(nxt):
        if u != v and u not in g.out_adj[v]:
            raise ValidationError(
                f"strategy moves {v} -> {u}, not in the closed neighborhood"
            )


def evaluate_stay_forever(gamble: Gamble, v: int) -> float:
    """Expected capture time for a cop who never leaves v: 1/p_v, inf if p_v = 0."""
    if not 0 <= v < len(gamble.p):
        raise ValidationError(f"vertex {v} outside [0, {len(gamble.p)})")
    pv = gamble.p[v]
    return 1.0 / pv if pv > 0.0 else math.inf


def _stay_vector(p: np.ndarray) -> np.ndarray:
    out = np.full(p.shape, np.inf)
    np.divide(1.0, p, out=out, where=p > 0.0)
    return out


def _relax_all(indptr, indices, p, prev):
    """One synchronous relaxation pass over all closed neighborhoods.

    Returns (next, argmin, improve, changed). argmin[v] is the smallest-id
    vertex attaining min over N(v) of prev (only computed when something
    improved; None otherwise).
    """
    vals = prev[indices]
    starts = indptr[:-1]
    mins = np.minimum.reduceat(vals, starts)
    with np.errstate(invalid="ignore"):
        cand = 1.0 + (1.0 - p) * mins
    # 0 * inf: a certain-capture vertex has T = 1 no matter its neighbors.
    bad = np.isnan(cand)
    if bad.any():
        cand = np.where(bad, 1.0, cand)
    improve = cand < prev - IMPROVE_EPS
    nxt = np.minimum(prev, cand)
    changed = bool(improve.any())
    if not changed:
        return nxt, None, improve, False
    pos = np.arange(indices.size, dtype=np.int64)
    hit = np.where(vals == np.repeat(mins, np.diff(indptr)), pos, indices.size)
    first = np.minimum.reduceat(hit, starts)
    argmin = indices[first]
    return nxt, argmin, improve, True


def bellman_update(g: Graph, gamble: Gamble, prev):
    """Apply next[v] = min(prev[v], 1 + (1 - p_v) * min_{u in N(v)} prev[u]).

    Returns (next, improved, changed). improved[v] is the argmin vertex when
    v improved by more than IMPROVE_EPS (ties to the smallest id), else None;
    changed reports whether any vertex improved that way.
    """
    prev = np.asarray(prev, dtype=np.float64)
    if prev.shape != (g.vertex_count,):
        raise ValidationError(
            f"prev has shape {prev.shape}, expected ({g.vertex_count},)"
        )
    indptr, indices = g.closed_csr
    nxt, argmin, improve, changed = _relax_all(indptr, indices, gamble.p_array, prev)
    improved = [
        int(argmin[v]) if improve[v] else None for v in range(g.vertex_count)
    ]
    return nxt, improved, changed


def solve_iterative(g: Graph, gamble: Gamble) -> Solution:
    """All-starts optimum by repeated relaxation (Bellman-Ford analogue).

    Starts from the stay-forever values T(v) = 1/p_v with pi(v) = v and
    relaxes every vertex each round until a round changes nothing. The
    reported iteration count includes that final no-change round and never
    exceeds n + 1.
    """
    indptr, indices = g.closed_csr
    p = gamble.p_array
    times = _stay_vector(p)
    pi = np.arange(g.vertex_count, dtype=np.int64)
    iterations = 0
    while True:
        times, argmin, improve, changed = _relax_all(indptr, indices, p, times)
        iterations += 1
        if not changed:
            break
        pi[improve] = argmin[improve]
    times.setflags(write=False)
    strategy = Strategy(next=tuple(int(x) for x in pi))
    return Solution(
        times=times,
        strategy=strategy,
        iterations=iterations,
        max_residual=bellman_residual(g, gamble, times),
        algorithm="iterative",
    )


def _priority_run(g: Graph, gamble: Gamble):
    """Settlement loop shared by solve_priority and its tests.

    Returns (times, pi, settle_order) as plain lists; the order is exposed
    so tests can assert it is non-decreasing in t.
    """
    n = g.vertex_count
    p = gamble.p
    t = [1.0 / p[v] if p[v] > 0.0 else math.inf for v in range(n)]
    pi = list(range(n))
    settled = [False] * n
    order = []
    heap = IndexedMinHeap(t)
    while heap:
        u, tu = heap.pop_min()
        settled[u] = True
        order.append(u)
        if math.isinf(tu):
            # Nothing can improve through an infinite time; the rest of the
            # queue is infinite as well, so only the pops remain.
            continue
        for w in g.in_adj[u]:
            if settled[w]:
                continue
            cand = 1.0 + (1.0 - p[w]) * tu
            if t[w] - cand > IMPROVE_EPS:
                t[w] = cand
                pi[w] = u
                heap.decrease(w, cand)
    return t, pi, order


def solve_priority(g: Graph, gamble: Gamble) -> Solution:
    """All-starts optimum by ascending-time settlement (Dijkstra analogue).

    Repeatedly extracts the unsettled vertex u with the smallest tentative
    time (ties to the smallest id) and relaxes each unsettled in-neighbor w
    to 1 + (1 - p_w) * t(u) via decrease-key. Settled values are final.
    """
    t, pi, _ = _priority_run(g, gamble)
    times = np.array(t, dtype=np.float64)
    times.setflags(write=False)
    return Solution(
        times=times,
        strategy=Strategy(next=tuple(pi)),
        iterations=g.vertex_count,
        max_residual=bellman_residual(g, gamble, times),
        algorithm="priority",
    )


def bellman_residual(g: Graph, gamble: Gamble, times) -> float:
    """Max over v of |times(v) - (1 + (1 - p_v) * min_{u in N(v)} times(u))|.

    Terms where both sides are infinite contribute 0; terms where exactly
    one side is infinite contribute inf. Zero exactly at the optimal
    fixpoint.
    """
    times = np.asarray(times, dtype=np.float64)
    if times.shape != (g.vertex_count,):
        raise ValidationError(
            f"times has shape {times.shape}, expected ({g.vertex_count},)"
        )
    indptr, indices = g.closed_csr
    p = gamble.p_array
    mins = np.minimum.reduceat(times[indices], indptr[:-1])
    with np.errstate(invalid="ignore"):
        rhs = 1.0 + (1.0 - p) * mins
    rhs = np.where(np.isnan(rhs), 1.0, rhs)
    with np.errstate(invalid="ignore"):
        gap = np.abs(times - rhs)
    gap = np.where(np.isnan(gap), 0.0, gap)  # inf - inf: both sides agree
    return float(gap.max())


def chase_path(g: Graph, sol: Solution, start: int) -> list[int]:
    """Follow the solved strategy from start to its stay-forever vertex.

    The returned path includes both endpoints, never revisits a vertex, and
    has at most n vertices. A longer walk means the strategy's functional
    graph has a cycle, which is a solver bug, not bad input.
    """
    n = g.vertex_count
    if not 0 <= start < n:
        raise ValidationError(f"vertex {start} outside [0, {n})")
    nxt = sol.strategy.next
    path = [start]
    v = start
    while nxt[v] != v:
        v = nxt[v]
        path.append(v)
        if len(path) > n:
            raise InternalInvariantError(
                f"strategy walk from {start} exceeds {n} vertices; cycle in pi"
            )
    return path


def times_close(a, b, tol: float = AGREEMENT_TOL) -> bool:
    """Coordinate-wise agreement within tol, with inf required to match inf."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        return False
    a_inf = np.isinf(a)
    b_inf = np.isinf(b)
    if not np.array_equal(a_inf, b_inf):
        return False
    finite = ~a_inf
    return bool(np.all(np.abs(a[finite] - b[finite]) <= tol))
