"""Recursive arrangement of complete binary guests and its closed forms.

The solver places the two half-trees on the left and right leaf blocks,
roots the guest at the middle leaf, and for odd heights >= 3 swaps the
occupants of leaves b/4 - 1 and b/2 (the pair exchange).  Every quantity it
produces (objective, profile, number of exchanges) also has an exact
integer closed form; the two routes are cross-checked in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, DistanceProfile, GuestTree, objective_value
from .errors import InvalidInputError
from .regular_tree import derived_sizes


@dataclass(frozen=True)
class PairExchange:
    """One executed swap: the two global leaf positions it exchanged."""

    low_leaf: int
    high_leaf: int


def _exact_div(numerator: int, denominator: int) -> int:
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise AssertionError(f"{numerator} not divisible by {denominator}")
    return quotient


def _relabel(local_id: int, subtree_root: int) -> int:
    # Heap labels: local vertex l of the subtree rooted at g has global label
    # g * 2^level(l) + (l - 2^level(l)).
    level_bit = 1 << (local_id.bit_length() - 1)
    return subtree_root * level_bit + (local_id - level_bit)


def _solve(height: int, trace: list[PairExchange], offset: int) -> list[int | None]:
    """Leaf occupants (local heap ids) for one recursive run.

    `offset` locates the block inside the full host so recorded exchanges
    carry global leaf positions.
    """
    if height == 0:
        return [1, None]
    b = 2 ** (height + 1)
    left = _solve(height - 1, trace, offset)
    right = _solve(height - 1, trace, offset + b // 2)
    occupants: list[int | None] = [
        None if v is None else _relabel(v, 2) for v in left
    ] + [None if v is None else _relabel(v, 3) for v in right]
    middle = b // 2 - 1
    assert occupants[middle] is None, "middle leaf must be free before rooting"
    occupants[middle] = 1
    if height % 2 == 1 and height >= 3:
        lo = b // 4 - 2  # 0-based position of leaf b/4 - 1
        occupants[lo], occupants[middle] = occupants[middle], occupants[lo]
        trace.append(PairExchange(offset + lo + 1, offset + middle + 1))
    return occupants


def approx_arrangement_with_trace(
    guest_height: int,
) -> tuple[Arrangement, list[PairExchange]]:
    """Arrangement plus the pair exchanges in execution order (bottom-up)."""
    if guest_height < 0:
        raise InvalidInputError(f"guest height must be >= 0, got {guest_height}")
    derived_sizes(guest_height)  # overflow guard
    trace: list[PairExchange] = []
    occupants = _solve(guest_height, trace, 0)
    guest = GuestTree.complete_binary(guest_height)
    host = guest.smallest_host(2)
    leaf_of = [0] * guest.n
    for position, vertex in enumerate(occupants, start=1):
        if vertex is not None:
            leaf_of[vertex - 1] = position
    return Arrangement(guest, host, tuple(leaf_of)), trace


def approx_arrangement(guest_height: int) -> Arrangement:
    return approx_arrangement_with_trace(guest_height)[0]


def closed_form_objective(guest_height: int) -> int:
    """Objective value of the solver's arrangement, in exact integers."""
    if guest_height < 0:
        raise InvalidInputError(f"guest height must be >= 0, got {guest_height}")
    if guest_height == 0:
        return 0
    sign = -1 if guest_height % 2 else 1
    return _exact_div(29 * 2**guest_height + sign, 3) - 4 * guest_height - 9


def pair_exchange_count(guest_height: int) -> int:
    """Total pair exchanges across all recursive runs."""
    if guest_height < 1:
        raise InvalidInputError(f"guest height must be >= 1, got {guest_height}")
    sign = -1 if guest_height % 2 else 1
    return _exact_div(2**guest_height - 3 - sign, 6)


def closed_form_coefficients(guest_height: int) -> DistanceProfile:
    """Distance profile of the solver's arrangement from the case formulas."""
    if guest_height < 1:
        raise InvalidInputError(f"guest height must be >= 1, got {guest_height}")
    h = guest_height + 1
    sign = -1 if guest_height % 2 else 1
    a = []
    for i in range(1, h + 1):
        if i == h:
            a.append(1)
        elif i == 1:
            a.append(_exact_div(4 * 2**guest_height - 3 - sign, 6))
        elif i == 2:
            a.append(_exact_div(7 * 2**guest_height + 6 + 2 * sign, 12))
        else:
            a.append(3 * 2 ** (guest_height - i))
    return DistanceProfile(tuple(a))


def pair_exchange_delta(before: Arrangement, after: Arrangement) -> int:
    """Objective improvement between two arrangements differing by one swap.

    Returns 0 for identical arrangements; raises unless the two maps differ
    on exactly two vertices whose leaves are exchanged.
    """
    if before.guest.n != after.guest.n or before.host != after.host:
        raise InvalidInputError("arrangements are not over the same instance")
    moved = [
        v
        for v in range(1, before.guest.n + 1)
        if before.leaf(v) != after.leaf(v)
    ]
    if not moved:
        return 0
    if len(moved) != 2:
        raise InvalidInputError(f"{len(moved)} vertices moved; expected a single swap")
    u, w = moved
    if before.leaf(u) != after.leaf(w) or before.leaf(w) != after.leaf(u):
        raise InvalidInputError("moved vertices do not exchange their leaves")
    return objective_value(before) - objective_value(after)


def undo_exchange(arr: Arrangement, exchange: PairExchange) -> Arrangement:
    """Arrangement with one recorded swap reverted (occupants traded back)."""
    leaf_of = list(arr.leaf_of)
    occupants = {leaf: vertex for vertex, leaf in enumerate(leaf_of, start=1)}
    u = occupants.get(exchange.low_leaf)
    w = occupants.get(exchange.high_leaf)
    if u is None or w is None:
        raise InvalidInputError("recorded swap leaves are not both occupied")
    leaf_of[u - 1], leaf_of[w - 1] = leaf_of[w - 1], leaf_of[u - 1]
    return Arrangement(arr.guest, arr.host, tuple(leaf_of))
