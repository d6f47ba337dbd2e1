import numpy as np
import pytest

from copchase import build_graph, gen_random_gamble, gen_random_graph, validate_gamble

CHAIN_LABELS = ("v0", "v1", "v2", "v3")
CHAIN_EDGES = [(0, 1), (1, 2), (2, 3)]
CHAIN_P = [0.3, 0.7, 0.0, 0.0]
# Optimal expected times for the chain, hand-unrolled from the fixpoint
# recurrence and confirmed by the brute-force oracle in test_oracle.py.
CHAIN_T = (2.0, 10 / 7, 17 / 7, 24 / 7)
CHAIN_PI = (1, 1, 1, 2)

CHAIN_JSON = (
    '{"directed": false, "vertices": ["v0","v1","v2","v3"], '
    '"edges": [["v0","v1"],["v1","v2"],["v2","v3"]], '
    '"gamble": {"v0":0.3,"v1":0.7,"v2":0.0,"v3":0.0}}'
)

CHAIN_EDGE_LIST = """\
# four-vertex chain
undirected
e v0 v1
e v1 v2
e v2 v3
p v0 0.3
p v1 0.7
p v2 0.0
p v3 0.0
"""

GAMBLE_MODES = ("uniform", "dirichlet", "sparse_support")


@pytest.fixture
def chain():
    g = build_graph(False, 4, CHAIN_EDGES, labels=CHAIN_LABELS)
    gamble = validate_gamble(g, CHAIN_P)
    return g, gamble


def make_instance(index, base_seed, max_n=50, connected=True, modes=GAMBLE_MODES):
    """Deterministic random instance number `index` of a seeded family."""
    rng = np.random.default_rng([base_seed, index])
    n = int(rng.integers(1, max_n + 1))
    prob = float(rng.random())
    mode = modes[index % len(modes)]
    g = gen_random_graph(
        n, prob, ensure_connected=connected, seed=int(rng.integers(2**63))
    )
    gamble = gen_random_gamble(n, mode, seed=int(rng.integers(2**63)))
    return g, gamble


def make_directed_instance(index, base_seed, max_n=6):
    """Small random directed instance (edge-probability model, dense ids)."""
    rng = np.random.default_rng([base_seed, index, 7])
    n = int(rng.integers(1, max_n + 1))
    prob = float(rng.uniform(0.1, 0.9))
    edges = [
        (u, v)
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < prob
    ]
    g = build_graph(True, n, edges)
    mode = GAMBLE_MODES[index % 3]
    gamble = gen_random_gamble(n, mode, seed=int(rng.integers(2**63)))
    return g, gamble
