"""Parity-knowledge functions and the explicit network builders.

A K-function over a multiset of signed characters takes the value 1 on a
cut exactly when some factor does, encoding accumulated deductions about
a hypothetical uncrossed cut.  Legal steps multiply one factor by a
singleton character (justified by a lollipop edge) or adjoin a singleton
implied by an edge between two known-left vertices.  The two builders
wire these functions into switching networks: nested prefix state sets
cover a chain with lollipops, and block partitions plus recursive-halving
reduction gadgets cover a general core subgraph embedded among lollipops.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations, product

from .cuts import (
    CutFunction,
    crossing_mask,
    edge_crosses,
    full_cut_mask,
    iter_cuts,
    parity_mask,
)
from .graphs import InputGraph
from .networks import NetEdge, SwitchingNetwork
from .pebbles import can_win_through, is_winning, network_from_states, winning_play

ONE = "ONE"  # canonical form of the constant +1 function


def _char(sign, vertices):
    return (sign, tuple(sorted(vertices)))


def canonical_chars(factors):
    """Canonical factor set: drop constant -1 factors, collapse to ONE when a
    factor is the constant +1 or both signs of a character are present."""
    out = set()
    for sign, V in factors:
        V = tuple(sorted(V))
        if not V:
            if sign > 0:
                return ONE
            continue
        if (-sign, V) in out:
            return ONE
        out.add((sign, V))
    return tuple(sorted(out))


class KFunction:
    """K_F for a multiset F of signed characters; value 1 on a cut iff some
    factor evaluates to 1 there, else -1."""

    def __init__(self, factors=()):
        self.chars = tuple((s, tuple(sorted(V))) for s, V in factors)

    @classmethod
    def from_chars(cls, chars):
        k = cls.__new__(cls)
        k.chars = tuple(chars)
        return k

    def value(self, cut: int):
        for sign, V in self.chars:
            parity = bin(sum(1 << (v - 1) for v in V) & cut).count("1") % 2
            if sign * (-1 if parity else 1) == 1:
                return 1
        return -1

    def posmask(self, n: int) -> int:
        """Bitmask over cuts where the function equals +1."""
        full = full_cut_mask(n)
        m = 0
        for sign, V in self.chars:
            vmask = sum(1 << (v - 1) for v in V)
            pm = parity_mask(n, vmask)
            m |= pm if sign < 0 else (full ^ pm)
        return m

    def to_cut_function(self, n: int) -> CutFunction:
        pos = self.posmask(n)
        return CutFunction.from_values(
            n, [Fraction(1) if (pos >> c) & 1 else Fraction(-1) for c in iter_cuts(n)]
        )

    def __eq__(self, other):
        return isinstance(other, KFunction) and canonical_chars(self.chars) == canonical_chars(other.chars)

    def __repr__(self):
        return f"KFunction({list(self.chars)})"


def kf_value(kfun: KFunction, cut: int):
    return kfun.value(cut)


def can_go(f, g, edge, n=None) -> bool:
    """(f - g) vanishes on every cut the edge does not cross (all-cuts sweep)."""
    if isinstance(f, CutFunction):
        n = f.n
    if n is None:
        raise ValueError("need n for K-function arguments")
    if isinstance(f, KFunction) and isinstance(g, KFunction):
        agree_needed = full_cut_mask(n) ^ crossing_mask(n, tuple(edge))
        return (f.posmask(n) ^ g.posmask(n)) & agree_needed == 0
    fv = f.to_cut_function(n).values if isinstance(f, KFunction) else f.values
    gv = g.to_cut_function(n).values if isinstance(g, KFunction) else g.values
    return all(fv[c] == gv[c] for c in iter_cuts(n) if not edge_crosses(tuple(edge), c))


def step_lollipop(kfun: KFunction, index: int, edge) -> KFunction:
    """Multiply factor `index` by -e_{v} (edge s->v) or by e_{v} (edge v->t)."""
    tail, head = edge
    if tail == "s" and head not in ("s", "t"):
        v, flip = head, -1
    elif head == "t" and tail not in ("s", "t"):
        v, flip = tail, 1
    else:
        raise ValueError(f"lollipop steps need an edge s->v or v->t, got {edge!r}")
    sign, V = kfun.chars[index]
    newV = tuple(sorted(set(V) ^ {v}))
    chars = list(kfun.chars)
    chars[index] = (sign * flip, newV)
    return KFunction.from_chars(chars)


def step_implication(kfun: KFunction, edge) -> KFunction:
    """Adjoin the factor e_{w} using edge v->w; requires the factor e_{v}."""
    v, w = edge
    if v in ("s", "t") or w in ("s", "t"):
        raise ValueError("implication steps need a middle-vertex edge")
    if (1, (v,)) not in kfun.chars:
        raise ValueError(f"factor e_{{{v}}} not present")
    return KFunction.from_chars(kfun.chars + ((1, (w,)),))


# ---------------------------------------------------------------------------
# reduction gadgets


def _halves(seq):
    h = (len(seq) + 1) // 2
    return seq[:h], seq[h:]


def reduction_char_sets(block) -> set:
    """Vertex sets of the recursive-halving gadget for a block (sizes >= 2)."""
    out = set()

    def rec(seq):
        if len(seq) <= 1:
            return
        left, right = _halves(seq)
        for m in range(1, len(right) + 1):
            out.add(frozenset(left) | frozenset(right[:m]))
        for m in range(1, len(left) + 1):
            out.add(frozenset(right) | frozenset(left[:m]))
        rec(left)
        rec(right)

    rec(tuple(sorted(block)))
    return out


def reduction_functions(block):
    """Signed characters of the halving gadget; at most 2|V| ceil(lg |V|) of
    them, enough to walk any root at any parity down to its singleton."""
    sets = sorted(reduction_char_sets(block), key=lambda W: (len(W), sorted(W)))
    return [_char(sign, W) for W in sets for sign in (1, -1)]


def reduction_steps(block, root, graph: InputGraph):
    """The vertices stripped on the way from the full block down to {root},
    each with the lollipop label that justifies the step (s-edge preferred)."""
    seq = tuple(sorted(block))
    if root not in seq:
        raise ValueError("root must lie in the block")
    order = []
    while len(seq) > 1:
        left, right = _halves(seq)
        if root in left:
            order.extend(reversed(right))
            seq = left
        else:
            order.extend(reversed(left))
            seq = right
    steps = []
    for u in order:
        if graph.has_edge("s", u):
            steps.append((u, ("s", u)))
        elif graph.has_edge(u, "t"):
            steps.append((u, (u, "t")))
        else:
            raise ValueError(f"vertex {u} is not a lollipop in the given graph")
    return steps


def block_parity(graph: InputGraph, block, root) -> int:
    """(-1) ** number of non-root block members with an s-edge."""
    return -1 if sum(1 for v in block if v != root and graph.has_edge("s", v)) % 2 else 1


def reduction_char_path(block, root, graph: InputGraph, start_sign=None):
    """Chars visited descending from the block character to the root singleton,
    with the edge labels used; starts at the block's parity by default and
    therefore ends at +e_{root}."""
    if start_sign is None:
        start_sign = block_parity(graph, block, root)
    cur = _char(start_sign, block)
    path = [(cur, None)]
    for u, label in reduction_steps(block, root, graph):
        sign, V = cur
        if label[0] == "s":
            sign = -sign
        cur = (sign, tuple(sorted(set(V) - {u})))
        path.append((cur, label))
    return path


def match_probability_lower_bound(k: int, z: int) -> Fraction:
    return Fraction(1, (4 * k) ** z)


# ---------------------------------------------------------------------------
# chain-with-lollipops builder


def placement_graphs(n: int, k: int):
    """Every injective placement of the ordered chain vertices, as graphs."""
    out = []
    for tup in permutations(range(1, n + 1), k):
        edges = {("s", tup[0]), (tup[-1], "t")}
        edges |= {(tup[i], tup[i + 1]) for i in range(k - 1)}
        edges |= {("s", u) for u in range(1, n + 1) if u not in tup}
        out.append((tup, InputGraph(n, edges)))
    return out


def _chain_in_order(placement, position) -> bool:
    return all(position[placement[i]] < position[placement[i + 1]] for i in range(len(placement) - 1))


@dataclass
class ChainLollipopResult:
    network: SwitchingNetwork
    states: set
    orderings: list
    placements: list
    size_bound: float

    @property
    def size(self):
        return self.network.size


def build_chain_lollipop(n: int, k: int, seed: int = 0, *, sample_cap: int = 2000) -> ChainLollipopResult:
    """Greedy nested-prefix state cover for the chain-with-lollipops family,
    emitted as a switching network of size at most k! k n lg n.

    Candidate vertex orderings are enumerated exhaustively for n <= 8 and
    sampled (seeded) above that; each round keeps the ordering whose prefix
    states cover the most remaining placements, re-scored exactly.
    """
    import random

    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    rng = random.Random(seed)
    placements = placement_graphs(n, k)
    uncovered = list(range(len(placements)))
    states = set()
    orderings = []

    def prefix_states(ordering):
        return [frozenset(ordering[: j + 1]) for j in range(len(ordering))]

    while uncovered:
        if n <= 8:
            cands = list(permutations(range(1, n + 1)))
        else:
            cands = [tuple(rng.sample(range(1, n + 1), n)) for _ in range(sample_cap)]
        best, best_score = None, -1
        for ordering in cands:
            position = {v: i for i, v in enumerate(ordering)}
            score = sum(1 for i in uncovered if _chain_in_order(placements[i][0], position))
            if score > best_score:
                best, best_score = ordering, score
        if best_score <= 0:
            raise RuntimeError("no ordering covers any remaining placement")
        orderings.append(best)
        states.update(prefix_states(best))
        uncovered = [
            i for i in uncovered if not can_win_through(placements[i][1], states)
        ]

    bound = math.factorial(k) * k * n * math.log2(n)
    if len(states) > bound:
        raise AssertionError(f"cover of {len(states)} states exceeds the bound {bound:.1f}")
    network = network_from_states(states, n)
    return ChainLollipopResult(
        network=network,
        states=states,
        orderings=orderings,
        placements=[g for _, g in placements],
        size_bound=bound,
    )


# ---------------------------------------------------------------------------
# partition families


def equal_partition_count(n: int, k: int) -> int:
    b = n // k
    total = 1
    rem = n
    for _ in range(k):
        total *= math.comb(rem, b)
        rem -= b
    return total


def _iter_equal_partitions(n: int, k: int):
    """All ordered partitions of {1..n} into k blocks of n // k."""
    b = n // k

    def rec(remaining, acc):
        if not remaining:
            yield tuple(acc)
            return
        rest = sorted(remaining)
        for combo in combinations(rest, b):
            yield from rec(remaining - set(combo), acc + [frozenset(combo)])

    yield from rec(set(range(1, n + 1)), [])


def partition_matches(partition, placement, state) -> bool:
    """The partition matches a pebble state under a placement when each
    pebbled position's block meets the placed core exactly in its own vertex."""
    placed = set(placement)
    for i in state:
        block = partition[i - 1]
        if placement[i - 1] not in block or len(block & placed) != 1:
            return False
    return True


def build_partition_family(n: int, k: int, z: int, seed: int = 0, *, sample_cap: int = 4000):
    """Greedy family of ordered equal partitions such that every pebble state
    with at most z pebbled positions is matched, under every injective
    placement, by some family member.  Size is asserted against
    2 (4k)^z k lg n.
    """
    import random

    if n % k:
        raise ValueError("need k | n")
    if not 1 <= z <= k:
        raise ValueError("need 1 <= z <= k")
    rng = random.Random(seed)
    placements = list(permutations(range(1, n + 1), k))
    states = [frozenset(c) for c in combinations(range(1, k + 1), z)]
    uncovered = {(tau, st) for tau in placements for st in states}

    exhaustive = equal_partition_count(n, k) <= 50_000
    family = []
    while uncovered:
        if exhaustive:
            cands = _iter_equal_partitions(n, k)
        else:
            base = list(range(1, n + 1))
            cands = []
            b = n // k
            for _ in range(sample_cap):
                rng.shuffle(base)
                cands.append(tuple(frozenset(base[i * b : (i + 1) * b]) for i in range(k)))
        best, best_score = None, -1
        for part in cands:
            score = sum(1 for tau, st in uncovered if partition_matches(part, tau, st))
            if score > best_score:
                best, best_score = part, score
        if best_score <= 0:
            raise RuntimeError("no partition matches any remaining (placement, state) pair")
        family.append(best)
        uncovered = {(tau, st) for tau, st in uncovered if not partition_matches(best, tau, st)}

    bound = 2 * (4 * k) ** z * k * math.log2(max(n, 2))
    if len(family) > bound:
        raise AssertionError(f"family of {len(family)} partitions exceeds the bound {bound:.1f}")
    return family


# ---------------------------------------------------------------------------
# the general builder


class InfeasibleParameters(ValueError):
    pass


@dataclass
class GeneralNetworkResult:
    network: SwitchingNetwork
    graph: InputGraph
    g0_vertices: list
    z: int
    play: list  # pebble state sequence on the core, positions 1..k
    states: list  # interior position-sets
    partitions: list
    functions: dict  # node id -> canonical char tuple (or ONE / () for t', s')
    node_of: dict  # canonical char tuple -> node id
    h_bound: float

    @property
    def size(self):
        return self.network.size


def _induced_core(graph: InputGraph, g0_vertices):
    """The core subgraph on s, t and the listed vertices, relabeled 1..k."""
    index = {v: i + 1 for i, v in enumerate(g0_vertices)}
    edges = set()
    for u, v in graph.edges:
        uu = index.get(u, u if u in ("s", "t") else None)
        vv = index.get(v, v if v in ("s", "t") else None)
        if uu is not None and vv is not None:
            edges.add((uu, vv))
    return InputGraph(len(g0_vertices), edges)


def build_general_network(graph: InputGraph, g0_vertices, z: int, seed: int = 0) -> GeneralNetworkResult:
    """Network for a graph consisting of a small core plus lollipops.

    Wins of the reversible pebble game on the core (within z pebbles) are
    replayed over parity-knowledge functions: each pebbled core position is
    remembered as one signed block character of a matching partition, moves
    decode a block down to its root singleton via the halving gadget, and
    partition shifts re-encode roots into a partition matching the next
    state.  Soundness is automatic since every emitted edge is a legal step.
    """
    g0_vertices = list(g0_vertices)
    k = len(g0_vertices)
    if k < 1:
        raise ValueError("need at least one core vertex")
    if len(set(g0_vertices)) != k or any(not isinstance(v, int) for v in g0_vertices):
        raise ValueError("core vertices must be distinct middle vertices")
    for v in graph.middle_vertices():
        if v not in g0_vertices and not graph.is_lollipop(v):
            raise ValueError(f"non-core vertex {v} is not a lollipop")

    # pad with s-lollipops until k divides n (accepting the padded family is
    # at least as hard, so bounds transfer)
    n = graph.n
    if n % k:
        pad = k - (n % k)
        edges = set(graph.edges) | {("s", n + i + 1) for i in range(pad)}
        graph = InputGraph(n + pad, edges)
        n = graph.n

    core = _induced_core(graph, g0_vertices)
    if not core.has_st_path():
        raise ValueError("core subgraph has no s->t path")
    if core.has_edge("s", "t"):
        raise ValueError("core with a direct s->t edge is trivial")
    if not 1 <= z <= k:
        raise InfeasibleParameters(f"need 1 <= z <= k, got z={z}, k={k}")
    play = winning_play(core, z)
    if play is None:
        raise InfeasibleParameters(f"core pebble game has no winning play within z={z} pebbles")
    states = [st for st in play if st and not is_winning(st)]

    partitions = build_partition_family(n, k, z, seed)

    blocks_at = [sorted({part[i] for part in partitions}, key=sorted) for i in range(k)]
    chars_at = []
    for i in range(k):
        chars = set()
        for block in blocks_at[i]:
            for c in reduction_functions(block):
                chars.add(c)
            for u in block:
                chars.add(_char(1, {u}))
                chars.add(_char(-1, {u}))
            chars.add(_char(1, block))
            chars.add(_char(-1, block))
        chars_at.append(sorted(chars))

    block_chars_at = [
        [_char(s, b) for b in blocks_at[i] for s in (1, -1)] for i in range(k)
    ]
    root_chars = [_char(1, {u}) for u in range(1, n + 1)]

    h = set()

    def add_products(per_position):
        """per_position: list of (position, options); others absent."""
        opts = [options for _, options in per_position]
        for combo in product(*opts):
            node = canonical_chars(combo)
            if node is not ONE:
                h.add(node)

    h.add(())  # s' carries the constant -1, the empty K-function
    for st in states:
        pos = sorted(st)
        add_products([(i, block_chars_at[i - 1]) for i in pos])
        for active in pos:
            add_products(
                [(i, chars_at[i - 1] if i == active else block_chars_at[i - 1]) for i in pos]
            )
        if len(pos) >= 2:
            for pinned in pos:
                for active in pos:
                    if pinned == active:
                        continue
                    add_products(
                        [
                            (
                                i,
                                root_chars
                                if i == pinned
                                else (chars_at[i - 1] if i == active else block_chars_at[i - 1]),
                            )
                            for i in pos
                        ]
                    )

    s_id, t_id = "s'", "t'"
    node_of = {(): s_id, ONE: t_id}
    functions = {s_id: (), t_id: ONE}
    for idx, chars in enumerate(sorted(h - {()})):
        node_of[chars] = idx
        functions[idx] = chars

    edges = set()

    def link(a_chars, b_node, label):
        edges.add((node_of[a_chars], b_node, label))

    for chars in h:
        for fi, (sign, V) in enumerate(chars):
            vset = set(V)
            for u in range(1, n + 1):
                toggled = tuple(sorted(vset ^ {u}))
                for flip, label in ((-1, ("s", u)), (1, (u, "t"))):
                    rest = chars[:fi] + ((sign * flip, toggled),) + chars[fi + 1 :]
                    target = canonical_chars(rest)
                    tnode = node_of.get(target if target is ONE else target)
                    if tnode is not None:
                        link(chars, tnode, label)
            if sign == 1 and len(V) == 1:
                v = V[0]
                for w in range(1, n + 1):
                    if w == v:
                        continue
                    target = canonical_chars(chars + ((1, (w,)),))
                    tnode = node_of.get(target if target is ONE else target)
                    if tnode is not None:
                        link(chars, tnode, (v, w))

    net_edges = []
    seen = set()
    for a, b, label in sorted(edges, key=str):
        key = (a, b, label) if str(a) <= str(b) else (b, a, label)
        if key in seen or a == b:
            continue
        seen.add(key)
        net_edges.append(NetEdge(a, b, label))

    vertices = [s_id, t_id] + [i for i in range(len(h) - 1)]
    network = SwitchingNetwork(n, vertices, s_id, t_id, net_edges)

    x = len(partitions)
    r = max(len(states), 1)
    h_bound = 2 * z * 2**z * r * x * n * math.log2(max(n, 2)) * (2 * x + 4 + z * n)
    if network.size > h_bound:
        raise AssertionError(f"|H| = {network.size} exceeds the bound {h_bound:.1f}")

    return GeneralNetworkResult(
        network=network,
        graph=graph,
        g0_vertices=g0_vertices,
        z=z,
        play=play,
        states=states,
        partitions=partitions,
        functions=functions,
        node_of=node_of,
        h_bound=h_bound,
    )


def _edge_lookup(network: SwitchingNetwork):
    table = {}
    for e in network.edges:
        table[(e.u, e.v, e.label)] = e
        table[(e.v, e.u, e.label)] = e
    return table


def accepting_walk(result: GeneralNetworkResult, sigma) -> list:
    """Constructive completeness: the walk for sigma(G) that replays the core
    pebble win through the network, shifting partitions as needed.  Returns
    the NetEdge sequence from s' to t'; every label lies in sigma(G)."""
    gs = result.graph.permuted(sigma)
    tau = tuple(sigma(v) for v in result.g0_vertices)
    core = _induced_core(result.graph, result.g0_vertices)
    lookup = _edge_lookup(result.network)
    node_of = result.node_of

    factors = {}  # position -> current char
    walk = []

    def current_node():
        key = canonical_chars(tuple(factors[p] for p in sorted(factors)))
        return t_idn if key is ONE else node_of[key]

    t_idn = node_of[ONE]

    def move(new_factors, label):
        nonlocal factors
        a = current_node()
        factors = new_factors
        b = current_node()
        edge = lookup.get((a, b, label))
        if edge is None:
            raise AssertionError(f"missing network edge {a} -- {b} with label {label}")
        if label not in gs.edges:
            raise AssertionError(f"walk label {label} not in the permuted graph")
        walk.append(edge)

    def set_factor(pos, char, label):
        nf = dict(factors)
        nf[pos] = char
        move(nf, label)

    def drop_factor(pos, label):
        nf = dict(factors)
        del nf[pos]
        move(nf, label)

    def descend(pos, block):
        """Reduce the factor at pos from its block char to +e_{root}."""
        root = tau[pos - 1]
        path = reduction_char_path(block, root, gs, start_sign=factors[pos][0])
        for char, label in path[1:]:
            set_factor(pos, char, label)
        assert factors[pos] == _char(1, {root})

    def ascend(pos, block):
        """Build the factor at pos from +e_{root} up to the block's parity char."""
        root = tau[pos - 1]
        path = reduction_char_path(block, root, gs)
        assert path[-1][0] == factors[pos]
        for i in range(len(path) - 1, 0, -1):
            set_factor(pos, path[i - 1][0], path[i][1])
        assert factors[pos] == _char(block_parity(gs, block, root), block)

    def matching_partition(state):
        for xi, part in enumerate(result.partitions):
            if partition_matches(part, tau, state):
                return xi
        raise AssertionError(f"no partition matches state {sorted(state)}")

    def shift(state, old_x, new_x):
        for pos in sorted(state):
            descend(pos, result.partitions[old_x][pos - 1])
            ascend(pos, result.partitions[new_x][pos - 1])

    cur_x = None
    seq = result.play
    for st, nxt in zip(seq, seq[1:]):
        if is_winning(nxt):
            winner = next(p for p in st if core.has_edge(p, "t"))
            descend(winner, result.partitions[cur_x][winner - 1])
            root = tau[winner - 1]
            nf = dict(factors)
            nf[winner] = _char(1, ())
            move(nf, (root, "t"))
            break
        if len(nxt) > len(st):
            added = next(iter(nxt - st))
            if cur_x is None or not partition_matches(result.partitions[cur_x], tau, nxt):
                new_x = matching_partition(nxt)
                if cur_x is not None:
                    shift(st, cur_x, new_x)
                cur_x = new_x
            root = tau[added - 1]
            if core.has_edge("s", added):
                nf = dict(factors)
                nf[added] = _char(1, {root})
                move(nf, ("s", root))
                ascend(added, result.partitions[cur_x][added - 1])
            else:
                justifiers = [p for p in st if core.has_edge(p, added)]
                if not justifiers:
                    raise AssertionError("pebble addition without a justifying core edge")
                p = justifiers[0]
                descend(p, result.partitions[cur_x][p - 1])
                nf = dict(factors)
                nf[added] = _char(1, {root})
                move(nf, (tau[p - 1], root))
                ascend(added, result.partitions[cur_x][added - 1])
                ascend(p, result.partitions[cur_x][p - 1])
        else:
            removed = next(iter(st - nxt))
            justifiers = [p for p in nxt if core.has_edge(p, removed)]
            descend(removed, result.partitions[cur_x][removed - 1])
            root = tau[removed - 1]
            if core.has_edge("s", removed):
                drop_factor(removed, ("s", root))
            else:
                p = justifiers[0]
                descend(p, result.partitions[cur_x][p - 1])
                drop_factor(removed, (tau[p - 1], root))
                ascend(p, result.partitions[cur_x][p - 1])
    if canonical_chars(tuple(factors[p] for p in sorted(factors))) is not ONE:
        raise AssertionError("walk did not reach t'")
    return walk


# ---------------------------------------------------------------------------
# closed-form size bounds


@dataclass
class UpperBoundFormulas:
    k: int
    z: int
    n: int
    general_bound: float
    regime_threshold: float
    regime: int
    regime1_bound: float
    regime2_bound: float
    master_bound: float

    def to_json(self):
        return {
            "k": self.k,
            "z": self.z,
            "n": self.n,
            "general_bound": self.general_bound,
            "regime_threshold": self.regime_threshold,
            "regime": self.regime,
            "regime1_bound": self.regime1_bound,
            "regime2_bound": self.regime2_bound,
            "master_bound": self.master_bound,
        }


def default_z(k: int) -> int:
    return math.ceil(math.log2(k + 1))


def upper_bound_formulas(k: int, z: int, n: int) -> UpperBoundFormulas:
    """The simplified size bounds: the general construction's value, the two
    regime-split bounds with their selection threshold, and the master bound
    z^2 2^{5z+8} k^{3z+3} n^2 (lg n)^2."""
    if k < 1 or z < 1 or n < 2:
        raise ValueError("need k >= 1, z >= 1, n >= 2")
    lg = math.log2(n)
    general = 8 * z * 2**z * k**z * (4 * k) ** (z + 1) * n * lg**2 * ((4 * k) ** (z + 1) * lg + 4 + z * n)
    threshold = 2 ** (math.sqrt(max(lg - math.log2(max(lg, 1)), 0)) - 2)
    regime1 = z**2 * 2 ** (3 * z + 6) * k ** (2 * z + 1) * n**2 * lg**2
    regime2 = z**2 * 2 ** (5 * z + 8) * k ** (3 * z + 3) * n * lg**3
    master = z**2 * 2 ** (5 * z + 8) * k ** (3 * z + 3) * n**2 * lg**2
    return UpperBoundFormulas(
        k=k,
        z=z,
        n=n,
        general_bound=general,
        regime_threshold=threshold,
        regime=1 if k <= threshold else 2,
        regime1_bound=regime1,
        regime2_bound=regime2,
        master_bound=master,
    )
