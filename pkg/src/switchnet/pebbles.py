"""The reversible pebble game: legal moves, minimum pebble number, the
recursive-halving strategy for paths, state-set covers, and the standard
translation of a state set into a switching network.

A game state is the frozenset of pebbled vertices among {1..n} plus
possibly 't'; s always carries a pebble.  A pebble may be added to or
removed from w exactly when some pebbled vertex (or s) has an edge to w,
so the move relation is symmetric.
"""

from collections import deque
from math import ceil, log2

from .graphs import InputGraph
from .networks import NetEdge, SwitchingNetwork

STATE_CAP = 20  # search state spaces are 2**n; refuse beyond this


def _pebbled_with_s(state):
    return set(state) | {"s"}


def middle_count(state) -> int:
    return sum(1 for v in state if v != "t")


def is_winning(state) -> bool:
    return "t" in state


def toggle_justifiers(graph: InputGraph, state, w):
    """Pebbled vertices (s included) with an edge to w, excluding w itself."""
    return [v for v in _pebbled_with_s(state) if v != w and graph.has_edge(v, w)]


def moves(graph: InputGraph, state):
    """All states one legal toggle away."""
    out = set()
    targets = list(graph.middle_vertices()) + ["t"]
    for w in targets:
        if toggle_justifiers(graph, state, w):
            out.add(frozenset(set(state) ^ {w}))
    return out


def _search_win(graph: InputGraph, budget: int):
    """BFS over states with at most `budget` middle pebbles; returns the
    state path from the empty state to the first winning state, or None."""
    if graph.n > STATE_CAP:
        raise ValueError(f"state search refused for n={graph.n} > {STATE_CAP}")
    start = frozenset()
    prev = {start: None}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for nxt in moves(graph, st):
            if nxt in prev:
                continue
            if middle_count(nxt) > budget:
                continue
            prev[nxt] = st
            if is_winning(nxt):
                path = [nxt]
                while prev[path[-1]] is not None:
                    path.append(prev[path[-1]])
                return path[::-1]
            queue.append(nxt)
    return None


def winning_play(graph: InputGraph, budget: int):
    """A winning state sequence within the pebble budget, or None."""
    if not graph.has_st_path():
        return None
    return _search_win(graph, budget)


def min_pebble_number(graph: InputGraph) -> int:
    """Minimum simultaneous middle-vertex pebbles over winning plays,
    by iterative deepening over the budget."""
    if not graph.has_st_path():
        raise ValueError("no s->t path; the game cannot be won")
    for budget in range(0, graph.n + 1):
        if _search_win(graph, budget) is not None:
            return budget
    raise AssertionError("unreachable: full budget always wins when an s->t path exists")


def savitch_sequence(graph: InputGraph, path):
    """Winning state sequence along an s->t path by recursive halving,
    using at most ceil(lg(path length)) middle pebbles at once."""
    if path[0] != "s" or path[-1] != "t" or len(path) < 2:
        raise ValueError("need an s...t vertex path")
    for a, b in zip(path, path[1:]):
        if not graph.has_edge(a, b):
            raise ValueError(f"({a!r},{b!r}) is not a graph edge")

    toggles = []

    def pebble_segment(i, j):
        # produce a pebble on path[j] given a pebble on path[i]
        if j == i + 1:
            toggles.append(path[j])
            return
        mid = i + (j - i + 1) // 2
        pebble_segment(i, mid)
        pebble_segment(mid, j)
        unpebble_segment(i, mid)

    def unpebble_segment(i, j):
        if j == i + 1:
            toggles.append(path[j])
            return
        mid = i + (j - i + 1) // 2
        pebble_segment(i, mid)
        unpebble_segment(mid, j)
        unpebble_segment(i, mid)

    pebble_segment(0, len(path) - 1)
    states = [frozenset()]
    for w in toggles:
        states.append(frozenset(set(states[-1]) ^ {w}))
    # sanity: every step must be a legal move
    for st, nxt in zip(states, states[1:]):
        if nxt not in moves(graph, st):
            raise AssertionError("halving scheme produced an illegal move")
    if not is_winning(states[-1]):
        raise AssertionError("halving scheme did not win")
    return states


def max_middle_pebbles(states) -> int:
    return max(middle_count(st) for st in states)


def savitch_bound(length: int) -> int:
    return ceil(log2(length)) if length > 1 else 0


def can_win_through(graph: InputGraph, allowed) -> bool:
    """Win from the empty state visiting only `allowed` intermediate states
    (the start and any winning state are exempt)."""
    start = frozenset()
    seen = {start}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for nxt in moves(graph, st):
            if nxt in seen:
                continue
            if is_winning(nxt):
                return True
            if nxt in allowed:
                seen.add(nxt)
                queue.append(nxt)
    return False


def greedy_state_cover(family, k: int, *, candidate_batches=None, rng=None, max_rounds=10_000):
    """Batches of game states whose union lets every family member win while
    passing only through covered states.

    Candidates default to each uncovered member's own minimal winning play;
    a builder may supply richer batches (e.g. nested vertex-order prefixes).
    Each round adds the batch newly covering the most members, re-scored
    exactly; coverage must strictly improve every round.
    """
    family = list(family)
    for g in family:
        if winning_play(g, k) is None:
            raise ValueError(f"family member not winnable within {k} pebbles: {g!r}")

    chosen = []
    covered_states = set()
    uncovered = [g for g in family]
    rounds = 0
    while uncovered:
        rounds += 1
        if rounds > max_rounds:
            raise RuntimeError("cover did not converge")
        if candidate_batches is not None:
            cands = list(candidate_batches(uncovered, rng))
        else:
            cands = []
            for g in uncovered:
                play = winning_play(g, k)
                cands.append(frozenset(st for st in play if st and not is_winning(st)))
        best_batch, best_score = None, -1
        for batch in cands:
            trial = covered_states | set(batch)
            score = sum(1 for g in uncovered if can_win_through(g, trial))
            if score > best_score:
                best_batch, best_score = batch, score
        if not best_batch or best_score <= 0:
            raise RuntimeError("no candidate batch makes progress")
        chosen.append(frozenset(best_batch))
        covered_states |= set(best_batch)
        uncovered = [g for g in uncovered if not can_win_through(g, covered_states)]
    return chosen


def network_from_states(states, n: int) -> SwitchingNetwork:
    """One network node per state plus s' (the empty state) and t' (winning,
    collapsed); edges are the legal toggles between represented states, one
    per justifying vertex, labeled by the justifying input edge."""
    start = frozenset()
    interior = sorted(
        {frozenset(st) for st in states if not is_winning(st)} - {start},
        key=lambda st: sorted(map(str, st)),
    )
    t_node = "WIN"
    s_node = "START"
    name = {start: s_node}
    for i, st in enumerate(interior):
        name[st] = i
    vertices = [s_node, t_node] + list(range(len(interior)))

    # generic input graph over which toggles are labeled: any vertex pair may
    # justify a move; the *labels* are what acceptance later filters on
    edges = []
    seen = set()
    all_states = [start] + interior
    state_set = set(all_states)
    for st in all_states:
        pebbled = _pebbled_with_s(st)
        # winning toggles: add a pebble on t
        for v in pebbled:
            if v != "t":
                key = (name[st], t_node, (v, "t"))
                if key not in seen:
                    seen.add(key)
                    edges.append(NetEdge(name[st], t_node, (v, "t")))
        for w in range(1, n + 1):
            nxt = frozenset(set(st) ^ {w})
            if nxt not in state_set:
                continue
            for v in pebbled - {w}:
                key = (name[st], name[nxt], (v, w))
                rkey = (name[nxt], name[st], (v, w))
                if key in seen or rkey in seen:
                    continue
                seen.add(key)
                edges.append(NetEdge(name[st], name[nxt], (v, w)))
    return SwitchingNetwork(n, vertices, s_node, t_node, edges)
