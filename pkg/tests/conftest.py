import networkx as nx
import numpy as np
import pytest

from laborflow import EconomyParams, build_from_edge_list


@pytest.fixture
def fig2_params():
    """The reference calibration used across the comparative experiments."""
    return EconomyParams(lam=0.05, v=0.8, c=0.1, kappa=0.5, y=1.0, b=1.0, H=4000)


@pytest.fixture
def edge_net():
    """Two firms joined by a single edge."""
    return build_from_edge_list([(0, 1)], 2)


@pytest.fixture
def path3_net():
    return build_from_edge_list([(0, 1), (1, 2)], 3)


def random_connected_net(rng, n_max=8, max_degree=7):
    """Small random connected graph for oracle cross-checks."""
    while True:
        n = int(rng.integers(2, n_max + 1))
        p = float(rng.uniform(0.3, 0.9))
        g = nx.gnp_random_graph(n, p, seed=int(rng.integers(2 ** 32)))
        if g.number_of_edges() == 0 or not nx.is_connected(g):
            continue
        if max(dict(g.degree()).values()) > max_degree:
            continue
        return build_from_edge_list(list(g.edges()), n)


@pytest.fixture
def announce(capfd):
    """Print a line straight to the terminal, bypassing pytest capture."""

    def _print(line: str) -> None:
        with capfd.disabled():
            print(line, flush=True)

    return _print
