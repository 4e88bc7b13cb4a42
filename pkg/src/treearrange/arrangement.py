"""Guest trees, arrangements onto host leaves, and distance profiles.

An arrangement maps every guest vertex injectively to a host leaf; its cost
is the sum of leaf-to-leaf distances over the guest edges.  The distance
profile counts, for each i, the edges at distance exactly 2i (`a`) and at
least 2i (`s`); both vectors run over i = 1..h so tables line up across
arrangements of the same host.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .errors import InvalidArrangementError, InvalidInputError
from .regular_tree import HostTree, leaf_distance


def _ceil_log(base: int, value: int) -> int:
    h = 0
    power = 1
    while power < value:
        power *= base
        h += 1
    return h


class GuestTree:
    """Finite tree with vertices 1..n given as an edge list.

    `complete_binary` builds the canonically ordered binary tree whose
    vertex labels follow the level-by-level, left-to-right order, so vertex
    v has children 2v and 2v+1.
    """

    def __init__(self, n: int, edges, root: int | None = None, *, forest: bool = False):
        if n < 1:
            raise InvalidInputError(f"vertex count must be >= 1, got {n}")
        self.n = n
        self.edges = tuple((min(u, v), max(u, v)) for u, v in edges)
        self.root = root
        self.height: int | None = None  # set by complete_binary
        self._validate(forest)
        adjacency: list[list[int]] = [[] for _ in range(n + 1)]
        for u, v in self.edges:
            adjacency[u].append(v)
            adjacency[v].append(u)
        self.adjacency = adjacency

    def _validate(self, forest: bool) -> None:
        seen = set()
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidInputError(f"edge ({u},{v}) out of vertex range 1..{self.n}")
            if u == v:
                raise InvalidInputError(f"self-loop at vertex {u}")
            if (u, v) in seen:
                raise InvalidInputError(f"duplicate edge ({u},{v})")
            seen.add((u, v))
            ru, rv = find(u), find(v)
            if ru == rv:
                raise InvalidInputError(f"edge ({u},{v}) closes a cycle")
            parent[ru] = rv
        if not forest and len(self.edges) != self.n - 1:
            raise InvalidInputError(
                f"tree on {self.n} vertices needs {self.n - 1} edges, got {len(self.edges)}"
            )

    @classmethod
    def complete_binary(cls, height: int) -> "GuestTree":
        if height < 0:
            raise InvalidInputError(f"height must be >= 0, got {height}")
        n = 2 ** (height + 1) - 1
        edges = [(v, child) for v in range(1, 2**height) for child in (2 * v, 2 * v + 1)]
        tree = cls(n, edges, root=1)
        tree.height = height
        return tree

    @classmethod
    def star(cls, n: int) -> "GuestTree":
        """Star with center 1 and leaves 2..n."""
        if n < 1:
            raise InvalidInputError(f"star needs n >= 1, got {n}")
        return cls(n, [(1, i) for i in range(2, n + 1)], root=1)

    @classmethod
    def forest(cls, n: int, edges) -> "GuestTree":
        """Acyclic graph that may have several components (oracle input only)."""
        return cls(n, edges, forest=True)

    @property
    def is_connected(self) -> bool:
        return len(self.edges) == self.n - 1

    def smallest_host(self, degree: int) -> HostTree:
        """Smallest d-regular host whose leaves fit all n vertices.

        Height never drops below 1: a proper d-regular tree needs a root
        of degree d, so a single guest vertex still gets a height-1 host.
        """
        return HostTree(degree, max(1, _ceil_log(degree, self.n)))

    def __eq__(self, other):
        return (
            isinstance(other, GuestTree)
            and self.n == other.n
            and sorted(self.edges) == sorted(other.edges)
        )

    def __repr__(self):
        return f"GuestTree(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class DistanceProfile:
    """Edge counts by half-distance (a) and their tail sums (s), i = 1..h."""

    a: tuple[int, ...]
    s: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if any(x < 0 for x in self.a):
            raise InvalidInputError("profile counts must be non-negative")
        tail = []
        total = 0
        for value in reversed(self.a):
            total += value
            tail.append(total)
        object.__setattr__(self, "s", tuple(reversed(tail)))

    @property
    def height(self) -> int:
        return len(self.a)

    def objective_value(self) -> int:
        return 2 * sum(i * count for i, count in enumerate(self.a, start=1))


@dataclass(frozen=True)
class Arrangement:
    """Injective map from guest vertices to host leaves (1-based tuple)."""

    guest: GuestTree
    host: HostTree
    leaf_of: tuple[int, ...]  # leaf_of[v-1] is the leaf of vertex v

    def leaf(self, vertex: int) -> int:
        return self.leaf_of[vertex - 1]

    def leaf_sequence(self) -> list[int | None]:
        """Occupant vertex per leaf position, None for free leaves."""
        occupants: list[int | None] = [None] * self.host.leaf_count
        for vertex, leaf in enumerate(self.leaf_of, start=1):
            if 1 <= leaf <= self.host.leaf_count and occupants[leaf - 1] is None:
                occupants[leaf - 1] = vertex
        return occupants


def validate(arr: Arrangement) -> list[str]:
    """Diagnostic check; returns human-readable violations (empty = ok)."""
    violations = []
    if len(arr.leaf_of) != arr.guest.n:
        violations.append(
            f"map covers {len(arr.leaf_of)} vertices, guest has {arr.guest.n}"
        )
    if arr.host.leaf_count < arr.guest.n:
        violations.append(
            f"host has {arr.host.leaf_count} leaves for {arr.guest.n} vertices"
        )
    seen: dict[int, int] = {}
    for vertex, leaf in enumerate(arr.leaf_of, start=1):
        if not 1 <= leaf <= arr.host.leaf_count:
            violations.append(f"vertex {vertex}: leaf {leaf} out of range")
            continue
        if leaf in seen:
            violations.append(
                f"not injective: vertices {seen[leaf]} and {vertex} share leaf {leaf}"
            )
        else:
            seen[leaf] = vertex
    return violations


def _require_valid(arr: Arrangement) -> None:
    violations = validate(arr)
    if violations:
        raise InvalidArrangementError(violations)


def objective_value(arr: Arrangement) -> int:
    """Total leaf distance over guest edges."""
    _require_valid(arr)
    return sum(
        leaf_distance(arr.host, arr.leaf(u), arr.leaf(v)) for u, v in arr.guest.edges
    )


def distance_profile(arr: Arrangement) -> DistanceProfile:
    _require_valid(arr)
    counts = [0] * arr.host.height
    for u, v in arr.guest.edges:
        d = leaf_distance(arr.host, arr.leaf(u), arr.leaf(v))
        counts[d // 2 - 1] += 1
    return DistanceProfile(tuple(counts))


# --- JSON arrangement documents -------------------------------------------
#
# {"degree": d, "guest_height": h_G, "map": {"1": leaf, ...}}  or
# {"degree": d, "edges": [[u, v], ...], "map": {"1": leaf, ...}}
#
# The writer emits keys in that order with map keys in numeric order, so a
# read/write cycle reproduces the document byte for byte.


def arrangement_to_json(arr: Arrangement) -> str:
    doc: dict = {"degree": arr.host.degree}
    if arr.guest.height is not None:
        doc["guest_height"] = arr.guest.height
    else:
        doc["edges"] = [list(e) for e in arr.guest.edges]
    doc["map"] = {str(v): arr.leaf(v) for v in range(1, arr.guest.n + 1)}
    return json.dumps(doc, indent=2) + "\n"


def arrangement_from_json(text: str) -> Arrangement:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInputError(f"bad JSON: {exc}") from exc
    if not isinstance(doc, dict) or "map" not in doc or "degree" not in doc:
        raise InvalidInputError("arrangement document needs 'degree' and 'map'")
    degree = doc["degree"]
    if "guest_height" in doc:
        guest = GuestTree.complete_binary(doc["guest_height"])
    elif "edges" in doc:
        edges = [tuple(e) for e in doc["edges"]]
        n = max((max(e) for e in edges), default=1)
        guest = GuestTree(n, edges)
    else:
        raise InvalidInputError("arrangement document needs 'guest_height' or 'edges'")
    mapping = doc["map"]
    leaf_of = []
    for v in range(1, guest.n + 1):
        key = str(v)
        if key not in mapping:
            raise InvalidInputError(f"vertex {v} missing from map")
        leaf_of.append(int(mapping[key]))
    host = guest.smallest_host(degree)
    return Arrangement(guest, host, tuple(leaf_of))
