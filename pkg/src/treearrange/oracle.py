"""Exhaustive ground truth for small arrangement and partition instances.

Both searches are depth-first branch and bound with symmetry reduction and
a hard node-visit budget.  Parallel runs split the search space into
independent prefix tasks that never share pruning state, so visit totals,
the optimum and the witness are identical for any thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .arrangement import Arrangement, GuestTree
from .errors import BudgetExceededError, InvalidInputError
from .partition import BalancedPartition
from .regular_tree import HostTree, leaf_distance

DEFAULT_BUDGET = 10**8


def _bfs_order(guest: GuestTree) -> list[int]:
    """Vertices ordered so each one (per component) touches a placed one."""
    order = []
    seen = [False] * (guest.n + 1)
    for start in range(1, guest.n + 1):
        if seen[start]:
            continue
        seen[start] = True
        queue = [start]
        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            order.append(v)
            for w in sorted(guest.adjacency[v]):
                if not seen[w]:
                    seen[w] = True
                    queue.append(w)
    return order


@dataclass
class _PlacementState:
    host: HostTree
    counts: list[list[int]]  # occupied-leaf count per (level, rank)
    leaf_of: list[int]  # 0 = unplaced, indexed by vertex
    cost: int
    edges_left: int

    def clone(self) -> "_PlacementState":
        return _PlacementState(
            self.host,
            [row[:] for row in self.counts],
            self.leaf_of[:],
            self.cost,
            self.edges_left,
        )


def _candidate_leaves(state: _PlacementState) -> list[int]:
    """Unused leaves with interchangeable host subtrees collapsed.

    Descending from the root, a fresh (empty) child subtree is entered only
    once per node and only through its leftmost leaf; partially filled
    children are explored in full.
    """
    host = state.host
    d = host.degree
    result: list[int] = []

    def walk(level: int, rank: int) -> None:
        if level == host.height:
            if state.counts[level][rank - 1] == 0:
                result.append(rank)
            return
        capacity = d ** (host.height - level - 1)
        fresh_seen = False
        first_child = d * (rank - 1) + 1
        for child in range(first_child, first_child + d):
            count = state.counts[level + 1][child - 1]
            if count == 0:
                if not fresh_seen:
                    fresh_seen = True
                    result.append((child - 1) * capacity + 1)
            elif count < capacity:
                walk(level + 1, child)

    walk(0, 1)
    return result


def _place(state: _PlacementState, guest, dist, vertex: int, leaf: int) -> int:
    added = 0
    for w in guest.adjacency[vertex]:
        other = state.leaf_of[w]
        if other:
            added += dist[leaf][other]
            state.edges_left -= 1
    state.cost += added
    state.leaf_of[vertex] = leaf
    level, rank = state.host.height, leaf
    while True:
        state.counts[level][rank - 1] += 1
        if level == 0:
            break
        level, rank = level - 1, (rank - 1) // state.host.degree + 1
    return added


def _unplace(state: _PlacementState, guest, vertex: int, leaf: int, added: int) -> None:
    state.cost -= added
    state.leaf_of[vertex] = 0
    for w in guest.adjacency[vertex]:
        if state.leaf_of[w]:
            state.edges_left += 1
    level, rank = state.host.height, leaf
    while True:
        state.counts[level][rank - 1] -= 1
        if level == 0:
            break
        level, rank = level - 1, (rank - 1) // state.host.degree + 1


def _run_tasks(run_task, tasks, threads):
    if threads <= 1 or len(tasks) <= 1:
        return [run_task(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run_task, tasks))


def exact_dapt(
    guest: GuestTree,
    degree: int,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> tuple[int, Arrangement]:
    """Global minimum arrangement cost with a canonical witness.

    The witness is the lexicographically smallest optimal mapping
    (leaf of v_1, ..., leaf of v_n) that the symmetry-reduced search visits.
    """
    if degree < 2:
        raise InvalidInputError(f"degree must be >= 2, got {degree}")
    host = guest.smallest_host(degree)
    order = _bfs_order(guest)
    b = host.leaf_count
    dist = [[0] * (b + 1) for _ in range(b + 1)]
    for i in range(1, b + 1):
        for j in range(i + 1, b + 1):
            dist[i][j] = dist[j][i] = leaf_distance(host, i, j)
    counts = [[0] * (degree**level) for level in range(host.height + 1)]
    root_state = _PlacementState(host, counts, [0] * (guest.n + 1), 0, len(guest.edges))

    fanout_depth = min(2, guest.n)
    tasks: list[_PlacementState] = []
    prefix_visits = 0

    def expand(state: _PlacementState, depth: int) -> None:
        nonlocal prefix_visits
        if depth == fanout_depth:
            tasks.append(state.clone())
            return
        vertex = order[depth]
        for leaf in _candidate_leaves(state):
            prefix_visits += 1
            added = _place(state, guest, dist, vertex, leaf)
            expand(state, depth + 1)
            _unplace(state, guest, vertex, leaf, added)

    expand(root_state, 0)
    if prefix_visits > budget:
        raise BudgetExceededError(budget, prefix_visits)
    task_limit = budget - prefix_visits

    def run_task(state: _PlacementState) -> tuple[int | None, tuple[int, ...] | None, int]:
        best_value: int | None = None
        best_map: tuple[int, ...] | None = None
        visits = 0

        def dfs(depth: int) -> None:
            nonlocal best_value, best_map, visits
            if depth == guest.n:
                mapping = tuple(state.leaf_of[1:])
                if (
                    best_value is None
                    or state.cost < best_value
                    or (state.cost == best_value and mapping < best_map)
                ):
                    best_value = state.cost
                    best_map = mapping
                return
            vertex = order[depth]
            for leaf in _candidate_leaves(state):
                visits += 1
                if visits > task_limit:
                    raise BudgetExceededError(budget, prefix_visits + visits)
                added = _place(state, guest, dist, vertex, leaf)
                if best_value is None or state.cost + 2 * state.edges_left <= best_value:
                    dfs(depth + 1)
                _unplace(state, guest, vertex, leaf, added)

        dfs(fanout_depth)
        return best_value, best_map, visits

    results = _run_tasks(run_task, tasks, threads)
    total_visits = prefix_visits + sum(r[2] for r in results)
    if total_visits > budget:
        raise BudgetExceededError(budget, total_visits)
    candidates = [(v, m) for v, m, _ in results if v is not None]
    if not candidates:
        raise InvalidInputError("no feasible placement (host too small)")
    value, mapping = min(candidates)
    return value, Arrangement(guest, host, mapping)


def exact_kbpp(
    guest: GuestTree,
    k: int,
    *,
    budget: int = DEFAULT_BUDGET,
    threads: int = 1,
) -> tuple[int, BalancedPartition]:
    """Global minimum cut over k-balanced partitions with canonical witness.

    Enumerates block assignments with blocks labelled by their smallest
    member (restricted-growth strings), so symmetric relabellings are seen
    once.  The witness is the lexicographically smallest optimal labelling.
    Requires vertices in heap order: every non-root vertex's single smaller
    neighbour is its father.
    """
    if k < 2 or k > guest.n:
        raise InvalidInputError(f"k must satisfy 2 <= k <= {guest.n}, got {k}")
    n = guest.n
    cap = -(-n // k)
    parent_of = [0] * (n + 1)
    for u, v in guest.edges:
        child, parent = max(u, v), min(u, v)
        if parent_of[child]:
            raise InvalidInputError("kbpp oracle expects a heap-ordered tree")
        parent_of[child] = parent
    children_of: list[list[int]] = [[] for _ in range(n + 1)]
    for child in range(2, n + 1):
        if parent_of[child]:
            children_of[parent_of[child]].append(child)

    # Per-suffix limits on future uncut father edges: edges fully inside the
    # suffix {v..n}, and for pair blocks the maximum matching of that suffix
    # forest (greedy leaf matching is exact on forests).
    suffix_edges = [0] * (n + 2)
    for v in range(n, 0, -1):
        suffix_edges[v] = suffix_edges[v + 1] + sum(1 for c in children_of[v] if c >= v)
    suffix_matching = [0] * (n + 2)
    if cap == 2:
        for v in range(n, 0, -1):
            matched = set()
            size = 0
            for u in range(n, v - 1, -1):
                if u in matched:
                    continue
                for c in children_of[u]:
                    if c not in matched:
                        matched.add(u)
                        matched.add(c)
                        size += 1
                        break
            suffix_matching[v] = size

    fanout_depth = min(4, n)
    tasks: list[list[int]] = []
    prefix_visits = 0

    def expand(assign: list[int], used: int) -> None:
        nonlocal prefix_visits
        if len(assign) == fanout_depth:
            tasks.append(assign[:])
            return
        sizes = [0] * (k + 2)
        for blk in assign:
            sizes[blk] += 1
        v = len(assign) + 1
        for blk in range(1, min(used + 1, k) + 1):
            if sizes[blk] >= cap:
                continue
            prefix_visits += 1
            new_used = max(used, blk)
            if n - v >= k - new_used:
                assign.append(blk)
                expand(assign, new_used)
                assign.pop()

    expand([], 0)
    if prefix_visits > budget:
        raise BudgetExceededError(budget, prefix_visits)
    task_limit = budget - prefix_visits

    def run_task(prefix: list[int]) -> tuple[int | None, tuple[int, ...] | None, int]:
        block_of = [0] * (n + 1)
        sizes = [0] * (k + 2)
        members: list[list[int]] = [[] for _ in range(k + 2)]
        unassigned_children = [0] * (k + 2)  # per block, children of members
        cut = 0
        pending = 0  # unassigned vertices whose father sits in a full block
        absorb = 0  # future vertices that open blocks can still take without a cut
        visits = 0
        best_value: int | None = None
        best_seq: tuple[int, ...] | None = None

        def _block_absorb(blk: int) -> int:
            return min(cap - sizes[blk], unassigned_children[blk])

        def assign(v: int, blk: int) -> tuple[int, int, int, int]:
            nonlocal cut, pending, absorb
            cut_add = 0
            pending_sub = 0
            pending_add = 0
            p = parent_of[v]
            parent_blk = block_of[p] if p else 0
            touched = {blk, parent_blk} - {0}
            absorb_before = sum(_block_absorb(b) for b in touched)
            if p and parent_blk != blk:
                cut_add = 1
                if sizes[parent_blk] == cap:
                    pending_sub = 1
            if p:
                unassigned_children[parent_blk] -= 1
            block_of[v] = blk
            sizes[blk] += 1
            members[blk].append(v)
            unassigned_children[blk] += len(children_of[v])
            if sizes[blk] == cap:
                for m in members[blk]:
                    for c in children_of[m]:
                        if not block_of[c]:
                            pending_add += 1
            absorb_delta = sum(_block_absorb(b) for b in touched) - absorb_before
            cut += cut_add
            pending += pending_add - pending_sub
            absorb += absorb_delta
            return cut_add, pending_sub, pending_add, absorb_delta

        def unassign(v: int, blk: int, log: tuple[int, int, int, int]) -> None:
            nonlocal cut, pending, absorb
            cut_add, pending_sub, pending_add, absorb_delta = log
            cut -= cut_add
            pending -= pending_add - pending_sub
            absorb -= absorb_delta
            unassigned_children[blk] -= len(children_of[v])
            members[blk].pop()
            sizes[blk] -= 1
            block_of[v] = 0
            p = parent_of[v]
            if p:
                unassigned_children[block_of[p]] += 1

        used = 0
        for v, blk in enumerate(prefix, start=1):
            assign(v, blk)
            used = max(used, blk)

        # Future cuts are at least `remaining - saved`: every remaining vertex
        # pays for its father edge unless it sits next to its father.  Saves
        # split into open-block slots (for pairs, `absorb` counts blocks that
        # still have an unassigned child of a member, and joins cannot chain;
        # for larger caps only pure capacity is safe) and father edges inside
        # still-unopened blocks (at most cap-1 each, never more than the
        # suffix graph has edges, and for pairs at most its max matching).
        # `pending` (fathers in full blocks) and the unopened-block count are
        # independent lower bounds; take the max.
        def lower_bound(next_vertex: int, remaining: int, used_blocks: int) -> int:
            unopened = k - used_blocks
            if cap == 2:
                open_saves = absorb
                future_saves = min(unopened, suffix_matching[next_vertex])
            else:
                open_saves = cap * used_blocks - (n - remaining)
                future_saves = min((cap - 1) * unopened, suffix_edges[next_vertex])
            return max(pending, unopened, remaining - open_saves - future_saves)

        def dfs(v: int, used: int) -> None:
            nonlocal best_value, best_seq, visits
            if v > n:
                if used == k and (best_value is None or cut < best_value):
                    best_value = cut
                    best_seq = tuple(block_of[1:])
                return
            if n - v + 1 < k - used:
                return
            for blk in range(1, min(used + 1, k) + 1):
                if sizes[blk] >= cap:
                    continue
                visits += 1
                if visits > task_limit:
                    raise BudgetExceededError(budget, prefix_visits + visits)
                log = assign(v, blk)
                new_used = max(used, blk)
                bound = cut + lower_bound(v + 1, n - v, new_used)
                if best_value is None or bound < best_value:
                    dfs(v + 1, new_used)
                unassign(v, blk, log)

        dfs(len(prefix) + 1, used)
        return best_value, best_seq, visits

    results = _run_tasks(run_task, tasks, threads)
    total_visits = prefix_visits + sum(r[2] for r in results)
    if total_visits > budget:
        raise BudgetExceededError(budget, total_visits)
    candidates = [(v, s) for v, s, _ in results if v is not None]
    if not candidates:
        raise InvalidInputError(f"no {k}-balanced partition exists")
    value, seq = min(candidates)
    return value, BalancedPartition(guest, k, seq)
