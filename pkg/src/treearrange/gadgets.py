"""Star optima and the matching-with-target-sums reduction gadget.

A star's optimal arrangement cost has a closed form, and so does the cost
of three disjoint stars filling a host exactly.  The reduction wraps a
numerical-matching instance into one big tree whose optimal arrangement
cost hits a precomputed target exactly when the instance is solvable; the
witness builder realises that optimum for a given solution.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .arrangement import Arrangement, GuestTree
from .errors import InvalidInputError
from .regular_tree import HostTree


def _ceil_log(base: int, value: int) -> int:
    h = 0
    power = 1
    while power < value:
        power *= base
        h += 1
    return h


def _star_term(size: int, height: int, degree: int) -> int:
    """Arrangement cost of a star of `size` vertices on a height-h subtree."""
    if size <= 1:
        return 0
    return 2 * (height * size - (degree**height - 1) // (degree - 1))


def star_optimum(n: int, d: int) -> int:
    """Minimum arrangement cost of an n-vertex star on its smallest host."""
    if n < 2:
        raise InvalidInputError(f"star optimum needs n >= 2, got {n}")
    if not 2 <= d <= n:
        raise InvalidInputError(f"degree must satisfy 2 <= d <= n, got d={d}, n={n}")
    return _star_term(n, _ceil_log(d, n), d)


def three_star_optimum(n1: int, n2: int, n3: int, d: int) -> int:
    """Minimum total cost of three disjoint stars that exactly fill a host.

    Size-1 stars have no edges and contribute 0.
    """
    problems = []
    if d < 2:
        problems.append(f"degree must be >= 2, got {d}")
    if not n1 >= n2 >= n3 >= 1:
        problems.append(f"sizes must satisfy n1 >= n2 >= n3 >= 1, got ({n1},{n2},{n3})")
    n = n1 + n2 + n3
    if d >= 2 and d ** _ceil_log(d, n) != n:
        problems.append(f"total size {n} is not a power of {d}")
    if d >= 2 and n % d == 0 and n1 < n // d:
        problems.append(f"largest star {n1} is smaller than n/d = {n // d}")
    if problems:
        raise InvalidInputError("; ".join(problems))
    return sum(_star_term(size, _ceil_log(d, size), d) for size in (n1, n2, n3))


@dataclass(frozen=True)
class NmtsInstance:
    """Numerical matching with target sums: find permutations j, k with
    z_i = x_{j_i} + y_{k_i} for all i."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        n = len(self.x)
        if n < 2:
            raise InvalidInputError(f"instance needs n >= 2, got n = {n}")
        if len(self.y) != n or len(self.z) != n:
            raise InvalidInputError("x, y, z must have equal length")
        for name, values in (("x", self.x), ("y", self.y), ("z", self.z)):
            if any(v < 1 for v in values):
                raise InvalidInputError(f"{name} must be positive integers")
        if sum(self.z) != sum(self.x) + sum(self.y):
            raise InvalidInputError("sum(z) must equal sum(x) + sum(y)")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class ReductionOutput:
    """Guest tree, parameters and target value of one reduction instance.

    The guest is a hub vertex adjacent to filler vertices and to the centers
    of three sized star families; `target` is the optimal arrangement cost
    exactly when the source instance is solvable.
    """

    instance: NmtsInstance
    degree: int
    l_x: int
    l_y: int
    l_z: int
    l: int
    L: int
    plain_count: int  # vertices hanging off the hub besides star centers
    filler_count: int
    hub_star_size: int  # hub plus all its neighbours
    x_sizes: tuple[int, ...]
    y_sizes: tuple[int, ...]
    z_sizes: tuple[int, ...]
    guest: GuestTree
    target: int
    # vertex ids, center first, for witness construction
    hub: int
    plain_ids: tuple[int, ...]
    filler_stars: tuple[tuple[int, ...], ...]
    x_stars: tuple[tuple[int, ...], ...]
    y_stars: tuple[tuple[int, ...], ...]
    z_stars: tuple[tuple[int, ...], ...]


def build_reduction(inst: NmtsInstance, d: int) -> ReductionOutput:
    """Construct the gadget tree and its target optimal value."""
    if d < 2:
        raise InvalidInputError(f"degree must be >= 2, got {d}")
    n = inst.n
    l_y = 4 + _ceil_log(d, max(inst.y))
    worst_pair = max(inst.x) + max(inst.y) + (d - 1) * d ** (l_y - 4)
    l_x = max(4, 2 + _ceil_log(d, worst_pair + 1))
    l_z = 4
    while max(inst.z) > d**l_z - (d - 1) * d ** (l_z - 4) - (d - 1) * d ** (l_z - 2):
        l_z += 1
    l = max(l_x, l_y, l_z)
    L = l + _ceil_log(d, n) + 1
    plain_count = d ** (L - 1) - 1
    filler_count = (d - 1) * d ** (L - 1 - l) - n
    if filler_count < 0:
        raise AssertionError("filler count negative despite minimal host choice")

    x_sizes = tuple((d - 1) * d ** (l - 2) + xi for xi in inst.x)
    y_sizes = tuple((d - 1) * d ** (l - 4) + yi for yi in inst.y)
    z_sizes = tuple(
        d**l - (d - 1) * d ** (l - 4) - (d - 1) * d ** (l - 2) - zi for zi in inst.z
    )
    if any(s < 1 for s in z_sizes):
        raise InvalidInputError("a z-value is too large for the derived subtree size")

    next_id = 1
    hub = next_id
    next_id += 1
    plain_ids = tuple(range(next_id, next_id + plain_count))
    next_id += plain_count

    def make_star(size: int) -> tuple[int, ...]:
        nonlocal next_id
        ids = tuple(range(next_id, next_id + size))
        next_id += size
        return ids

    filler_stars = tuple(make_star(d**l) for _ in range(filler_count))
    x_stars = tuple(make_star(s) for s in x_sizes)
    y_stars = tuple(make_star(s) for s in y_sizes)
    z_stars = tuple(make_star(s) for s in z_sizes)
    total = next_id - 1
    if total != d**L:
        raise AssertionError(f"gadget has {total} vertices, expected d^L = {d ** L}")

    edges = [(hub, u) for u in plain_ids]
    for star in filler_stars + x_stars + y_stars + z_stars:
        center = star[0]
        edges.append((hub, center))
        edges.extend((center, member) for member in star[1:])
    guest = GuestTree(total, edges, root=hub)

    hub_star_size = d ** (L - 1) + 3 * n + filler_count
    target = 2 * (L * hub_star_size - (d**L - 1) // (d - 1))
    target += filler_count * _star_term(d**l, l, d)
    for sx, sy, sz in zip(x_sizes, y_sizes, z_sizes):
        target += _star_term(sz, l, d)
        target += _star_term(sx, l - 1, d)
        target += _star_term(sy, l - 3, d)

    return ReductionOutput(
        instance=inst,
        degree=d,
        l_x=l_x,
        l_y=l_y,
        l_z=l_z,
        l=l,
        L=L,
        plain_count=plain_count,
        filler_count=filler_count,
        hub_star_size=hub_star_size,
        x_sizes=x_sizes,
        y_sizes=y_sizes,
        z_sizes=z_sizes,
        guest=guest,
        target=target,
        hub=hub,
        plain_ids=plain_ids,
        filler_stars=filler_stars,
        x_stars=x_stars,
        y_stars=y_stars,
        z_stars=z_stars,
    )


def _check_permutation(perm, n: int, name: str) -> None:
    if sorted(perm) != list(range(1, n + 1)):
        raise InvalidInputError(f"{name} is not a permutation of 1..{n}")


def witness_arrangement(red: ReductionOutput, perm_j, perm_k) -> Arrangement:
    """Optimal arrangement realising the target for a solving permutation pair.

    Hub and plain vertices fill the leftmost basic subtree; the i-th matched
    star triple fills the i-th rightmost block of d^l leaves; fillers take
    the blocks in between.
    """
    inst, d, l, L = red.instance, red.degree, red.l, red.L
    n = inst.n
    perm_j = tuple(perm_j)
    perm_k = tuple(perm_k)
    _check_permutation(perm_j, n, "perm_j")
    _check_permutation(perm_k, n, "perm_k")
    for i in range(n):
        triple_size = (
            red.x_sizes[perm_j[i] - 1] + red.y_sizes[perm_k[i] - 1] + red.z_sizes[i]
        )
        if triple_size != d**l:
            raise InvalidInputError(
                f"subtree capacity mismatch: triple {i + 1} holds {triple_size} "
                f"vertices, block holds {d ** l}"
            )

    leaf_of = [0] * (red.guest.n + 1)
    leaf_of[red.hub] = 1
    for offset, u in enumerate(red.plain_ids, start=2):
        leaf_of[u] = offset

    block_size = d**l
    total_blocks = d ** (L - l)
    first_free_block = d ** (L - 1 - l)  # blocks below this hold hub and plain ids

    def fill(ids, positions) -> None:
        for vertex, pos in zip(ids, positions):
            leaf_of[vertex] = pos

    for f, star in enumerate(red.filler_stars):
        start = (first_free_block + f) * block_size
        fill(star, range(start + 1, start + block_size + 1))

    for i in range(n):
        start = (total_blocks - 1 - i) * block_size
        z_star = red.z_stars[i]
        x_star = red.x_stars[perm_j[i] - 1]
        y_star = red.y_stars[perm_k[i] - 1]
        nx, ny = len(x_star), len(y_star)
        # largest star: center block is the first basic subtree
        head = block_size // d
        fill(z_star[:head], range(start + 1, start + head + 1))
        middle = range(start + head + ny + 1, start + block_size - nx + 1)
        fill(z_star[head:], middle)
        # middle star right after the first basic subtree
        fill(y_star, range(start + head + 1, start + head + ny + 1))
        # smallest-height block for the x star is the final d^(l-2) leaves
        x_head = d ** (l - 2)
        fill(x_star[:x_head], range(start + block_size - x_head + 1, start + block_size + 1))
        fill(x_star[x_head:], range(start + block_size - nx + 1, start + block_size - x_head + 1))

    return Arrangement(red.guest, HostTree(d, L), tuple(leaf_of[1:]))


# --- JSON documents ---------------------------------------------------------


def nmts_from_json(text: str) -> NmtsInstance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON: {exc}") from exc
    for key in ("x", "y", "z"):
        if key not in doc:
            raise InvalidInputError(f"instance document needs '{key}'")
    return NmtsInstance(tuple(doc["x"]), tuple(doc["y"]), tuple(doc["z"]))


def nmts_to_json(inst: NmtsInstance) -> str:
    doc = {"x": list(inst.x), "y": list(inst.y), "z": list(inst.z)}
    return json.dumps(doc, indent=2) + "\n"


def reduction_to_json(red: ReductionOutput) -> str:
    doc = {
        "degree": red.degree,
        "params": {
            "l_x": red.l_x,
            "l_y": red.l_y,
            "l_z": red.l_z,
            "l": red.l,
            "L": red.L,
            "plain_count": red.plain_count,
            "filler_count": red.filler_count,
            "hub_star_size": red.hub_star_size,
        },
        "star_sizes": {
            "x": list(red.x_sizes),
            "y": list(red.y_sizes),
            "z": list(red.z_sizes),
        },
        "target": red.target,
        "guest": {
            "n": red.guest.n,
            "edges": [list(e) for e in red.guest.edges],
        },
    }
    return json.dumps(doc, indent=2) + "\n"
