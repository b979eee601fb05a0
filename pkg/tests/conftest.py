import pytest

from satcomp.diagram import DynkinDiagram, NodeMap
from satcomp.index import TwoLevelIndex


def b3_pair_diagram() -> DynkinDiagram:
    return DynkinDiagram.build(
        "a1 a2 a3 b1 b2 b3",
        [("a1", "a2"), ("a2", "a3", 4, "a3"),
         ("b1", "b2"), ("b2", "b3", 4, "b3")])


def ex1_index() -> TwoLevelIndex:
    """Two B3 rows, one black short root, boxed short-root column, row swap."""
    diagram = b3_pair_diagram()
    swap = NodeMap.from_cycles(diagram.nodes,
                               [("a1", "b1"), ("a2", "b2"), ("a3", "b3")])
    return TwoLevelIndex(diagram, {"a3"}, {"a3", "b3"},
                         NodeMap.identity(diagram.nodes), (swap,))


def split_b2_pair_index() -> TwoLevelIndex:
    diagram = DynkinDiagram.build(
        "a1 a2 b1 b2", [("a1", "a2", 4, "a2"), ("b1", "b2", 4, "b2")])
    swap = NodeMap.from_cycles(diagram.nodes, [("a1", "b1"), ("a2", "b2")])
    return TwoLevelIndex(diagram, (), (), NodeMap.identity(diagram.nodes), (swap,))


@pytest.fixture
def ex1():
    return ex1_index()


@pytest.fixture
def ex1_diagram():
    return b3_pair_diagram()
