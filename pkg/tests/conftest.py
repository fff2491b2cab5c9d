import pytest

from mecmc.amo import build_orientation_space
from mecmc.graphs import (
    UndirectedGraph,
    complete_graph,
    glued_clique_chain,
    path_graph,
    star_graph,
)


def _caterpillar():
    return UndirectedGraph(7, {(0, 1), (1, 2), (2, 3), (1, 4), (2, 5), (3, 6)})


# fixed chordal suite; every space has at most 5000 states so exact spectra
# and mixing times stay cheap
SUITE = {
    "k3": complete_graph(3),
    "k4": complete_graph(4),
    "k5": complete_graph(5),
    "path3": path_graph(3),
    "path4": path_graph(4),
    "path6": path_graph(6),
    "path8": path_graph(8),
    "star4": star_graph(4),
    "star6": star_graph(6),
    "caterpillar7": _caterpillar(),
    "two_k3_edge": glued_clique_chain([3, 3], [2]),
    "two_k4_share2": glued_clique_chain([4, 4], [2]),
    "two_k4_share3": glued_clique_chain([4, 4], [3]),
    "two_k5_share3": glued_clique_chain([5, 5], [3]),
    "three_k3_chain": glued_clique_chain([3, 3, 3], [2, 2]),
    "k4_k3_chain": glued_clique_chain([4, 3], [2]),
    "k5_k4_share2": glued_clique_chain([5, 4], [2]),
}

TREE_NAMES = ("path3", "path4", "path6", "path8", "star4", "star6", "caterpillar7")


@pytest.fixture(scope="session")
def suite():
    return dict(SUITE)


@pytest.fixture(scope="session")
def suite_spaces():
    spaces = {name: build_orientation_space(g) for name, g in SUITE.items()}
    assert all(sp.size <= 5000 for sp in spaces.values())
    return spaces
