"""Brute-force ground truth: enumerate and evaluate every stationary strategy.

A fixed strategy's functional graph is a set of cycles (including stay-put
fixed points) with trees hanging off them, so its expected times solve in
closed form: one scalar equation per cycle, back-substitution everywhere
else. No linear-algebra machinery, exact up to float rounding, and entirely
independent of the solvers it checks.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import EnumerationCapError, InternalInvariantError
from .graph import Gamble, Graph
from .solver import Strategy, validate_strategy

#: Default bound on the number of strategies a brute-force scan may visit.
ENUMERATION_CAP = 10**7

_ATTAIN_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StrategyEvaluation:
    times: np.ndarray
    strategy: Strategy


def strategy_space_size(g: Graph) -> int:
    """Number of stationary strategies: the product of |N(v)| over vertices."""
    size = 1
    for nbrs in g.closed_adj:
        size *= len(nbrs)
    return size


def _follow_step(pv: float, t_next: float) -> float:
    # T(v) = 1 + (1 - p_v) * T(next), with (1 - p) * inf = 0 when p = 1.
    if math.isinf(t_next):
        return 1.0 if pv == 1.0 else math.inf
    return 1.0 + (1.0 - pv) * t_next


def _strategy_times(nxt, p) -> list[float]:
    """Exact expected times under a fixed move map, by cycle decomposition."""
    n = len(nxt)
    times = [0.0] * n
    state = [0] * n  # 0 unvisited, 1 on the current walk, 2 resolved
    for s in range(n):
        if state[s] == 2:
            continue
        path = []
        v = s
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = nxt[v]
        if state[v] == 1:
            # new cycle: the tail of path from v onward
            ci = path.index(v)
            cycle = path[ci:]
            if len(cycle) == 1:
                pv = p[v]
                t0 = 1.0 / pv if pv > 0.0 else math.inf
            else:
                # unroll once around: T(c0) = A + B * T(c0)
                a = 0.0
                b = 1.0
                for c in cycle:
                    a += b
                    b *= 1.0 - p[c]
                t0 = math.inf if b == 1.0 else a / (1.0 - b)
            times[v] = t0
            cur = t0
            for c in reversed(cycle[1:]):
                cur = _follow_step(p[c], cur)
                times[c] = cur
            for c in cycle:
                state[c] = 2
            tree = path[:ci]
        else:
            tree = path
        for w in reversed(tree):
            times[w] = _follow_step(p[w], times[nxt[w]])
            state[w] = 2
    return times


def evaluate_stationary_strategy(
    g: Graph, gamble: Gamble, strategy: Strategy
) -> StrategyEvaluation:
    """Expected capture times for the cop who always moves v -> strategy.next[v]."""
    validate_strategy(g, strategy)
    times = np.array(_strategy_times(strategy.next, gamble.p), dtype=np.float64)
    times.setflags(write=False)
    return StrategyEvaluation(times=times, strategy=strategy)


def enumerate_strategies(g: Graph, cap: int = ENUMERATION_CAP):
    """Yield every stationary strategy in lexicographic choice order.

    Raises EnumerationCapError up front when the strategy space exceeds cap.
    """
    size = strategy_space_size(g)
    if size > cap:
        raise EnumerationCapError(size, cap)
    for nxt in itertools.product(*g.closed_adj):
        yield Strategy(next=nxt)


def oracle_optimal(g: Graph, gamble: Gamble, cap: int = ENUMERATION_CAP):
    """True per-vertex optimum over all stationary strategies.

    Returns (times, best) where times[v] is the minimum over every strategy
    of its expected time at v and best is the first strategy in enumeration
    order attaining that minimum at every vertex simultaneously. One always
    exists (per-vertex optimal moves compose); its absence would be a bug.
    """
    size = strategy_space_size(g)
    if size > cap:
        raise EnumerationCapError(size, cap)
    p = gamble.p
    choices = g.closed_adj
    best_times: list[float] | None = None
    for nxt in itertools.product(*choices):
        t = _strategy_times(nxt, p)
        if best_times is None:
            best_times = t
        else:
            for v in range(len(t)):
                if t[v] < best_times[v]:
                    best_times[v] = t[v]
    assert best_times is not None
    for nxt in itertools.product(*choices):
        t = _strategy_times(nxt, p)
        if all(
            tv <= bv + _ATTAIN_TOL if math.isfinite(bv) else math.isinf(tv)
            for tv, bv in zip(t, best_times)
        ):
            times = np.array(best_times, dtype=np.float64)
            times.setflags(write=False)
            return times, Strategy(next=nxt)
    raise InternalInvariantError(
        "no single strategy attains the per-vertex optimum everywhere"
    )
