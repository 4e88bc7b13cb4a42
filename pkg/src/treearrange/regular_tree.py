"""Complete d-regular host trees as pure index arithmetic.

A host tree is never materialised: vertices are addressed by (level, rank)
and leaves by their 1-based position in the canonical left-to-right order.
Distances between leaves come from a closed formula, so every operation is
O(height) at worst.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError

# Constructors reject sizes past this so downstream consumers can rely on
# counts fitting 64-bit signed integers even though Python ints are unbounded.
_MAX_COUNT = 2**63 - 1


@dataclass(frozen=True)
class HostTree:
    """Complete d-regular tree of a given height, leaves indexed 1..d^h."""

    degree: int
    height: int

    def __post_init__(self):
        if self.degree < 2:
            raise InvalidInputError(f"degree must be >= 2, got {self.degree}")
        if self.height < 0:
            raise InvalidInputError(f"height must be >= 0, got {self.height}")
        if self.degree ** (self.height + 1) > _MAX_COUNT:
            raise InvalidInputError(
                f"host tree d={self.degree}, h={self.height} overflows 64-bit counts"
            )

    @property
    def leaf_count(self) -> int:
        return self.degree**self.height

    @property
    def vertex_count(self) -> int:
        return (self.degree ** (self.height + 1) - 1) // (self.degree - 1)

    def check_leaf(self, index: int) -> None:
        if not 1 <= index <= self.leaf_count:
            raise InvalidInputError(
                f"leaf index {index} out of range 1..{self.leaf_count}"
            )


@dataclass(frozen=True)
class VertexAddress:
    """Vertex of a host tree located by level (root = 0) and 1-based rank."""

    level: int
    rank: int

    def __post_init__(self):
        if self.level < 0 or self.rank < 1:
            raise InvalidInputError(f"bad vertex address ({self.level}, {self.rank})")

    def father(self) -> "VertexAddress":
        if self.level == 0:
            raise InvalidInputError("the root has no father")
        return VertexAddress(self.level - 1, (self.rank - 1) // 2 + 1)

    def children(self, degree: int) -> list["VertexAddress"]:
        first = degree * (self.rank - 1) + 1
        return [VertexAddress(self.level + 1, first + i) for i in range(degree)]


def validate_address(tree: HostTree, address: VertexAddress) -> None:
    if address.level > tree.height:
        raise InvalidInputError(f"level {address.level} exceeds height {tree.height}")
    if address.rank > tree.degree**address.level:
        raise InvalidInputError(
            f"rank {address.rank} exceeds width of level {address.level}"
        )


def leaves_under(tree: HostTree, address: VertexAddress) -> range:
    """1-based leaf indices of the complete subtree rooted at `address`."""
    validate_address(tree, address)
    width = tree.degree ** (tree.height - address.level)
    start = (address.rank - 1) * width + 1
    return range(start, start + width)


def leaf_distance(tree: HostTree, i: int, j: int) -> int:
    """Path length between canonical leaves i and j; always even.

    Two distinct leaves are 2l apart where l is the smallest k such that
    floor((i-1)/d^k) == floor((j-1)/d^k), i.e. the depth one must climb
    until both leaves fall into a common subtree.
    """
    tree.check_leaf(i)
    tree.check_leaf(j)
    if i == j:
        return 0
    return 2 * _climb(tree, i, j)


def most_recent_common_ancestor_level(tree: HostTree, i: int, j: int) -> int:
    """Level of the deepest common ancestor of two distinct leaves."""
    tree.check_leaf(i)
    tree.check_leaf(j)
    if i == j:
        raise InvalidInputError("common ancestor level is undefined for i == j")
    return tree.height - _climb(tree, i, j)


def _climb(tree: HostTree, i: int, j: int) -> int:
    d = tree.degree
    a, b = i - 1, j - 1
    l = 0
    while a != b:
        a //= d
        b //= d
        l += 1
    return l


def derived_sizes(guest_height: int) -> tuple[int, int, int]:
    """(n, h, b) for a complete binary guest of the given height.

    n guest vertices, h host height, b host leaves; the host is the smallest
    binary tree whose leaves can take all guest vertices, so b = n + 1.
    """
    if guest_height < 0:
        raise InvalidInputError(f"guest height must be >= 0, got {guest_height}")
    n = 2 ** (guest_height + 1) - 1
    if n + 1 > _MAX_COUNT:
        raise InvalidInputError(f"guest height {guest_height} overflows 64-bit counts")
    return n, guest_height + 1, n + 1
