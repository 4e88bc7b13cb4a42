"""Host-tree index arithmetic against an explicitly built tree."""

import pytest
from hypothesis import given, strategies as st

from treearrange import (
    HostTree,
    InvalidInputError,
    VertexAddress,
    derived_sizes,
    leaf_distance,
    leaves_under,
    most_recent_common_ancestor_level,
)


def explicit_leaf_paths(degree, height):
    """BFS distances between all leaf pairs of a materialised tree."""
    # vertices: (level, rank); edges father-child
    adjacency = {}
    for level in range(height):
        for rank in range(1, degree**level + 1):
            children = [
                (level + 1, degree * (rank - 1) + i) for i in range(1, degree + 1)
            ]
            adjacency.setdefault((level, rank), []).extend(children)
            for child in children:
                adjacency.setdefault(child, []).append((level, rank))
    leaves = [(height, r) for r in range(1, degree**height + 1)]
    dist = {}
    for source in leaves:
        seen = {source: 0}
        queue = [source]
        while queue:
            node = queue.pop(0)
            for other in adjacency.get(node, []):
                if other not in seen:
                    seen[other] = seen[node] + 1
                    queue.append(other)
        for target in leaves:
            dist[source[1], target[1]] = seen[target]
    return dist


@pytest.mark.parametrize(
    "degree,height",
    [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (3, 4)],
)
def test_leaf_distance_matches_explicit_tree(degree, height):
    tree = HostTree(degree, height)
    oracle = explicit_leaf_paths(degree, height)
    for i in range(1, tree.leaf_count + 1):
        for j in range(1, tree.leaf_count + 1):
            assert leaf_distance(tree, i, j) == oracle[i, j]


def test_distance_examples():
    assert leaf_distance(HostTree(2, 2), 1, 1) == 0
    assert leaf_distance(HostTree(2, 2), 1, 2) == 2
    assert leaf_distance(HostTree(2, 4), 1, 16) == 8
    assert leaf_distance(HostTree(3, 2), 1, 4) == 4


def test_ancestor_level_examples():
    assert most_recent_common_ancestor_level(HostTree(2, 3), 1, 2) == 2
    assert most_recent_common_ancestor_level(HostTree(2, 3), 1, 8) == 0
    assert most_recent_common_ancestor_level(HostTree(2, 3), 3, 5) == 0


def test_ancestor_level_matches_distance():
    tree = HostTree(2, 4)
    for i in range(1, 17):
        for j in range(i + 1, 17):
            level = most_recent_common_ancestor_level(tree, i, j)
            assert leaf_distance(tree, i, j) == 2 * (tree.height - level)


def test_ancestor_level_rejects_equal_leaves():
    with pytest.raises(InvalidInputError):
        most_recent_common_ancestor_level(HostTree(2, 3), 4, 4)


@given(
    st.integers(min_value=2, max_value=4),
    st.integers(min_value=1, max_value=5),
    st.data(),
)
def test_distance_properties(degree, height, data):
    tree = HostTree(degree, height)
    i = data.draw(st.integers(min_value=1, max_value=tree.leaf_count))
    j = data.draw(st.integers(min_value=1, max_value=tree.leaf_count))
    k = data.draw(st.integers(min_value=1, max_value=tree.leaf_count))
    d = leaf_distance(tree, i, j)
    assert d == leaf_distance(tree, j, i)
    assert d % 2 == 0 and 0 <= d <= 2 * height
    assert (d == 0) == (i == j)
    assert d <= leaf_distance(tree, i, k) + leaf_distance(tree, k, j)


def test_leaf_index_range_checked():
    tree = HostTree(2, 3)
    with pytest.raises(InvalidInputError):
        leaf_distance(tree, 0, 1)
    with pytest.raises(InvalidInputError):
        leaf_distance(tree, 1, 9)


def test_derived_sizes():
    assert derived_sizes(0) == (1, 1, 2)
    assert derived_sizes(3) == (15, 4, 16)
    assert derived_sizes(6) == (127, 7, 128)
    with pytest.raises(InvalidInputError):
        derived_sizes(-1)
    with pytest.raises(InvalidInputError):
        derived_sizes(70)  # past 64-bit counts


def test_constructor_validation():
    with pytest.raises(InvalidInputError):
        HostTree(1, 3)
    with pytest.raises(InvalidInputError):
        HostTree(2, -1)
    with pytest.raises(InvalidInputError):
        HostTree(2, 64)
    assert HostTree(2, 0).leaf_count == 1
    assert HostTree(3, 2).vertex_count == 13


def test_children_blocks_are_ordered():
    # Leaves under child c_i all precede leaves under c_j for i < j.
    tree = HostTree(3, 3)
    for level in range(tree.height):
        for rank in range(1, tree.degree**level + 1):
            children = VertexAddress(level, rank).children(tree.degree)
            spans = [leaves_under(tree, child) for child in children]
            for first, second in zip(spans, spans[1:]):
                assert first.stop == second.start


def test_vertex_address_relations():
    child = VertexAddress(2, 5)
    assert child.father() == VertexAddress(1, 3)
    assert VertexAddress(1, 3).children(2) == [VertexAddress(2, 5), VertexAddress(2, 6)]
    with pytest.raises(InvalidInputError):
        VertexAddress(0, 1).father()
    with pytest.raises(InvalidInputError):
        leaves_under(HostTree(2, 2), VertexAddress(3, 1))
