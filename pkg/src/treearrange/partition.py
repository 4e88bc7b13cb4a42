"""Balanced partitioning of complete binary trees into 2^k' blocks.

The optimal construction cuts e horizontal bands of height t - 1 off the
tree, splits every band tree into a root-plus-left-subtree block and a
right subtree, tops the right subtrees up to full block size with vertices
from shattered siblings, and handles the remaining top part the same way;
the single unpaired right subtree is the one undersized block.  Closed
forms predict the block structure and the cut count exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .arrangement import GuestTree
from .errors import InvalidInputError


@dataclass(frozen=True)
class BalancedPartition:
    """Partition of guest vertices into blocks 1..k of near-equal size."""

    guest: GuestTree
    k: int
    block_of: tuple[int, ...]  # block_of[v-1] is the block of vertex v

    def __post_init__(self):
        if self.k < 2:
            raise InvalidInputError(f"need at least 2 blocks, got {self.k}")
        if len(self.block_of) != self.guest.n:
            raise InvalidInputError("block assignment does not cover all vertices")
        sizes = self.block_sizes()
        if len(sizes) != self.k or any(b < 1 or b > self.k for b in self.block_of):
            raise InvalidInputError(f"blocks must be exactly 1..{self.k}, all non-empty")
        cap = -(-self.guest.n // self.k)
        oversized = [b for b, size in sizes.items() if size > cap]
        if oversized:
            raise InvalidInputError(f"blocks {oversized} exceed the size cap {cap}")

    def block(self, vertex: int) -> int:
        return self.block_of[vertex - 1]

    def block_sizes(self) -> dict[int, int]:
        sizes: dict[int, int] = {}
        for b in self.block_of:
            sizes[b] = sizes.get(b, 0) + 1
        return sizes

    def members(self, block: int) -> list[int]:
        return [v for v in range(1, self.guest.n + 1) if self.block(v) == block]


def cut_count(part: BalancedPartition) -> int:
    """Number of guest edges whose endpoints lie in different blocks."""
    return sum(1 for u, v in part.guest.edges if part.block(u) != part.block(v))


def component_count_profile(part: BalancedPartition) -> dict[int, int]:
    """n_i = number of blocks inducing exactly i connected components."""
    profile: dict[int, int] = {}
    for block in range(1, part.k + 1):
        members = set(part.members(block))
        components = 0
        unvisited = set(members)
        while unvisited:
            components += 1
            stack = [unvisited.pop()]
            while stack:
                v = stack.pop()
                for w in part.guest.adjacency[v]:
                    if w in unvisited:
                        unvisited.discard(w)
                        stack.append(w)
        profile[components] = profile.get(components, 0) + 1
    return profile


@dataclass(frozen=True)
class ConstructionParams:
    """Derived quantities of the band construction for (h, k')."""

    height: int
    k_prime: int
    t: int
    e: int
    p: int
    q: int

    @property
    def k(self) -> int:
        return 2**self.k_prime

    @property
    def big_size(self) -> int:
        return 2 ** (self.height - self.k_prime + 1)

    @property
    def small_size(self) -> int:
        return self.big_size - 1


def _check_range(height: int, k_prime: int) -> None:
    if height < 1:
        raise InvalidInputError(f"height must be >= 1, got {height}")
    if not 1 <= k_prime <= height:
        raise InvalidInputError(f"k' must satisfy 1 <= k' <= {height}, got {k_prime}")


def construction_params(height: int, k_prime: int) -> ConstructionParams:
    _check_range(height, k_prime)
    t = height - k_prime + 2
    e = (height + 1) // t - 1
    p = sum(2 ** (height - i * t + 1) for i in range(1, e + 1))
    big = 2 ** (height - k_prime + 1)
    q, remainder = divmod((big - 1) * p, big)
    if remainder:
        raise AssertionError(f"q = (n_b - 1) p / n_b is not integral for ({height},{k_prime})")
    return ConstructionParams(height, k_prime, t, e, p, q)


def _truncated_subtree(root: int, depth: int) -> list[int]:
    """Vertices of the heap subtree of `root` within `depth` extra levels."""
    vertices = [root]
    frontier = [root]
    for _ in range(depth):
        frontier = [c for v in frontier for c in (2 * v, 2 * v + 1)]
        vertices.extend(frontier)
    return vertices


def construct_optimal(height: int, k_prime: int) -> BalancedPartition:
    """Optimal 2^k'-balanced partition with deterministic tie-breaking.

    Blocks are numbered in creation order: band blocks bottom-up and left to
    right, then the topped-up right subtrees, then the top part, with the
    undersized block last.  Where the construction leaves a choice (which
    right subtrees to shatter, how to pair), the canonically last subtrees
    are shattered and pairing follows canonical vertex order.
    """
    params = construction_params(height, k_prime)
    t, e = params.t, params.e
    blocks: list[list[int]] = []

    right_roots: list[int] = []
    for i in range(1, e + 1):
        level = height - i * t + 1
        for root in range(2**level, 2 ** (level + 1)):
            blocks.append([root] + _truncated_subtree(2 * root, t - 2))
            right_roots.append(2 * root + 1)

    right_roots.sort()
    shatter = right_roots[len(right_roots) - (params.p - params.q):] if params.p else []
    intact = right_roots[: params.q]
    isolated = sorted(v for root in shatter for v in _truncated_subtree(root, t - 2))
    if len(isolated) != len(intact):
        raise AssertionError("isolated vertices and intact right subtrees mismatch")
    for root, vertex in zip(intact, isolated):
        blocks.append(_truncated_subtree(root, t - 2) + [vertex])

    cut_level = height - (e + 1) * t + 1
    cut_vertices = list(range(2**cut_level, 2 ** (cut_level + 1)))
    for u in cut_vertices:
        blocks.append([u] + _truncated_subtree(2 * u, t - 2))
    top_right = [_truncated_subtree(2 * u + 1, t - 2) for u in cut_vertices]
    upper = list(range(1, 2**cut_level))
    if len(top_right) != len(upper) + 1:
        raise AssertionError("top right subtrees must outnumber upper vertices by one")
    for subtree, vertex in zip(top_right, upper):
        blocks.append(subtree + [vertex])
    blocks.append(top_right[-1])  # the undersized block, always last

    guest = GuestTree.complete_binary(height)
    if len(blocks) != params.k:
        raise AssertionError(f"constructed {len(blocks)} blocks, expected {params.k}")
    block_of = [0] * guest.n
    for block_id, members in enumerate(blocks, start=1):
        for v in members:
            if block_of[v - 1]:
                raise AssertionError(f"vertex {v} assigned twice")
            block_of[v - 1] = block_id
    return BalancedPartition(guest, params.k, tuple(block_of))


def n1_of_construction(height: int, k_prime: int) -> int:
    """Closed-form count of one-component blocks in the construction."""
    params = construction_params(height, k_prime)
    return 1 + sum(
        2 ** (height - i * params.t + 1) for i in range(1, params.e + 2)
    )


def optimal_value(height: int, k_prime: int) -> int:
    """Minimum cut count over all 2^k'-balanced partitions."""
    _check_range(height, k_prime)
    return 2 ** (k_prime + 1) - n1_of_construction(height, k_prime) - 1


@dataclass(frozen=True)
class BoundCase:
    """One applicable case of the cut-count bound, as an exact rational."""

    label: str
    value: Fraction
    is_equality: bool


def lower_bound_cases(height: int, k_prime: int) -> list[BoundCase]:
    """Every case formula applicable to (h, k'); cases may overlap."""
    _check_range(height, k_prime)
    k = 2**k_prime
    cases = []
    if k_prime <= height - 1:
        cases.append(
            BoundCase("k_prime <= h-1", Fraction(10, 7) * k - 2, is_equality=False)
        )
    if k_prime == height:
        sign = -1 if k_prime % 2 else 1
        cases.append(
            BoundCase(
                "k_prime == h",
                Fraction(4, 3) * k - Fraction(3, 2) + Fraction(sign, 6),
                is_equality=True,
            )
        )
    if k_prime <= height // 2 + 1:
        cases.append(
            BoundCase("k_prime <= floor(h/2)+1", Fraction(3, 2) * k - 2, is_equality=True)
        )
    return cases


# --- JSON partition documents ----------------------------------------------
#
# {"height": h, "k_prime": k', "block_of": {"1": id, ...}}


def partition_to_json(part: BalancedPartition, k_prime: int) -> str:
    doc = {
        "height": part.guest.height,
        "k_prime": k_prime,
        "block_of": {str(v): part.block(v) for v in range(1, part.guest.n + 1)},
    }
    return json.dumps(doc, indent=2) + "\n"


def partition_from_json(text: str) -> tuple[BalancedPartition, int]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON: {exc}") from exc
    for key in ("height", "k_prime", "block_of"):
        if key not in doc:
            raise InvalidInputError(f"partition document needs '{key}'")
    guest = GuestTree.complete_binary(doc["height"])
    k_prime = doc["k_prime"]
    mapping = doc["block_of"]
    block_of = []
    for v in range(1, guest.n + 1):
        key = str(v)
        if key not in mapping:
            raise InvalidInputError(f"vertex {v} missing from block_of")
        block_of.append(int(mapping[key]))
    return BalancedPartition(guest, 2**k_prime, tuple(block_of)), k_prime
