import math
from fractions import Fraction

import pytest

from switchnet.cuts import CutFunction, Permutation, edge_crosses, iter_cuts
from switchnet.graphs import InputGraph, all_distinct_permuted_copies
from switchnet.parity import (
    ONE,
    InfeasibleParameters,
    KFunction,
    accepting_walk,
    block_parity,
    build_chain_lollipop,
    build_general_network,
    build_partition_family,
    can_go,
    canonical_chars,
    default_z,
    kf_value,
    match_probability_lower_bound,
    partition_matches,
    reduction_char_path,
    reduction_char_sets,
    reduction_functions,
    step_implication,
    step_lollipop,
    upper_bound_formulas,
)


class TestKFunctions:
    def test_empty_is_minus_one(self):
        k = KFunction([])
        assert all(kf_value(k, c) == -1 for c in iter_cuts(3))

    def test_single_factor_is_the_factor(self):
        k = KFunction([(1, {1})])
        e1 = CutFunction.character(3, {1})
        assert k.to_cut_function(3) == e1

    def test_adjoining_constant_minus_one_is_identity(self):
        f = KFunction([(1, {1, 2})])
        g = KFunction([(1, {1, 2}), (-1, frozenset())])
        for c in iter_cuts(3):
            assert kf_value(f, c) == kf_value(g, c)
        assert canonical_chars(f.chars) == canonical_chars(g.chars)

    def test_value_is_max_of_factors(self, rng):
        for _ in range(10):
            chars = [
                (rng.choice([1, -1]), frozenset(rng.sample(range(1, 5), rng.randint(0, 3))))
                for _ in range(3)
            ]
            k = KFunction(chars)
            for c in iter_cuts(4):
                factor_values = [
                    s * (-1 if bin(sum(1 << (v - 1) for v in V) & c).count("1") % 2 else 1)
                    for s, V in chars
                ]
                assert kf_value(k, c) == max(factor_values)

    def test_canonical_one_detection(self):
        assert canonical_chars([(1, ())]) is ONE
        assert canonical_chars([(1, (1,)), (-1, (1,))]) is ONE


class TestSteps:
    def test_can_go_reflexive(self):
        f = KFunction([(1, {1})])
        for e in [("s", 1), (2, "t"), (1, 2)]:
            assert can_go(f, f, e, n=3)

    def test_lollipop_step_contract(self):
        f = KFunction([(1, {1})])
        g = step_lollipop(f, 0, ("s", 1))
        assert g.chars == ((-1, ()),)
        assert can_go(f, g, ("s", 1), n=3)
        assert not can_go(f, g, ("s", 2), n=3)

    def test_source_step_is_involution_up_to_sign(self):
        f = KFunction([(1, {1, 2})])
        g = step_lollipop(step_lollipop(f, 0, ("s", 1)), 0, ("s", 1))
        assert g.chars == f.chars

    def test_sink_step(self):
        f = KFunction([(1, {1})])
        g = step_lollipop(f, 0, (2, "t"))
        assert g.chars == ((1, (1, 2)),)
        assert can_go(f, g, (2, "t"), n=3)

    def test_implication_step(self):
        f = KFunction([(1, {1})])
        g = step_implication(f, (1, 2))
        assert g.chars == ((1, (1,)), (1, (2,)))
        assert can_go(f, g, (1, 2), n=3)
        assert not can_go(f, g, (1, 3), n=3)

    def test_implication_requires_prerequisite(self):
        with pytest.raises(ValueError):
            step_implication(KFunction([(1, {2})]), (1, 3))

    def test_can_go_matches_value_sweep(self, rng):
        # oracle: compare the bitmask test against explicit CutFunction values
        for _ in range(20):
            chars1 = [(rng.choice([1, -1]), frozenset(rng.sample(range(1, 4), rng.randint(1, 2))))]
            chars2 = [(rng.choice([1, -1]), frozenset(rng.sample(range(1, 4), rng.randint(1, 2))))]
            f, g = KFunction(chars1), KFunction(chars2)
            e = rng.choice([("s", 1), (1, "t"), (1, 2), (2, 3)])
            direct = all(
                f.to_cut_function(3).values[c] == g.to_cut_function(3).values[c]
                for c in iter_cuts(3)
                if not edge_crosses(e, c)
            )
            assert can_go(f, g, e, n=3) == direct


class TestReductionGadget:
    def test_singleton_block_is_empty(self):
        assert reduction_functions({5}) == []

    def test_size_bound(self):
        for size in range(2, 9):
            block = set(range(1, size + 1))
            count = len(reduction_functions(block))
            assert count <= 2 * size * math.ceil(math.log2(size))

    def test_block_of_four_counts(self):
        assert len(reduction_functions({1, 2, 3, 4})) <= 16

    def test_path_stays_inside_gadget(self):
        graph = InputGraph(6, {("s", v) for v in range(1, 7)})
        block = {1, 2, 3, 4}
        emitted = reduction_char_sets(block) | {frozenset({v}) for v in block}
        for root in block:
            path = reduction_char_path(block, root, graph)
            for (sign, V), _ in path:
                assert frozenset(V) in emitted
            assert path[-1][0] == (1, (root,))

    def test_parity_bookkeeping(self, rng):
        # after stripping everything but the root, the sign equals +1 exactly
        # because each s-lollipop flip is counted by the starting parity
        for _ in range(20):
            n = 6
            types = {v: rng.choice(["s", "t"]) for v in range(1, n + 1)}
            edges = {("s", v) if t == "s" else (v, "t") for v, t in types.items()}
            graph = InputGraph(n, edges)
            block = set(rng.sample(range(1, n + 1), rng.randint(1, n)))
            root = rng.choice(sorted(block))
            path = reduction_char_path(block, root, graph)
            assert path[0][0] == (block_parity(graph, block, root), tuple(sorted(block)))
            assert path[-1][0] == (1, (root,))
            # sign at every step recomputes as parity of the remaining set
            for (sign, V), _ in path:
                assert sign == block_parity(graph, set(V), root)

    def test_mixed_lollipop_paths_are_legal_steps(self, rng):
        graph = InputGraph(4, {("s", 1), (2, "t"), ("s", 3), (4, "t"), ("s", 4)})
        block = {1, 2, 3, 4}
        for root in block:
            path = reduction_char_path(block, root, graph)
            for ((s1, V1), _), ((s2, V2), label) in zip(path, path[1:]):
                f, g = KFunction([(s1, V1)]), KFunction([(s2, V2)])
                assert can_go(f, g, label, n=4)
                assert label in graph.edges


class TestChainLollipopBuilder:
    def test_k1_single_batch(self):
        res = build_chain_lollipop(4, 1, seed=0)
        assert len(res.orderings) == 1
        assert res.network.is_sound()
        assert res.network.is_complete_for(res.placements)

    def test_k2_n6_full_verification(self):
        res = build_chain_lollipop(6, 2, seed=0)
        assert res.network.is_sound()
        assert len(res.placements) == 30
        assert res.network.is_complete_for(res.placements)
        assert res.network.size <= res.size_bound

    def test_batches_remove_expected_fraction(self):
        # with exhaustive candidate orderings the greedy beats the k!-average
        n, k = 5, 2
        res = build_chain_lollipop(n, k, seed=0)
        from switchnet.pebbles import can_win_through

        uncovered = list(range(len(res.placements)))
        states = set()
        for ordering in res.orderings:
            before = len(uncovered)
            states.update(frozenset(ordering[: j + 1]) for j in range(n))
            uncovered = [
                i for i in uncovered if not can_win_through(res.placements[i], states)
            ]
            assert before - len(uncovered) >= math.ceil(before / math.factorial(k))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            build_chain_lollipop(3, 5)


class TestPartitionFamily:
    def test_k2_z1_n4_exhaustive_coverage(self):
        family = build_partition_family(4, 2, 1, seed=0)
        from itertools import permutations

        for tau in permutations(range(1, 5), 2):
            for st in [{1}, {2}]:
                assert any(partition_matches(p, tau, st) for p in family)
        assert len(family) <= 2 * 8 * 2 * math.log2(4)

    def test_covering_z_covers_smaller_states(self):
        family = build_partition_family(6, 2, 2, seed=0)
        from itertools import permutations

        for tau in permutations(range(1, 7), 2):
            for st in [{1}, {2}, {1, 2}]:
                assert any(partition_matches(p, tau, st) for p in family)

    def test_single_partition_match_probability(self):
        # averaged over all equal partitions, matches beat (1/(4k))^z
        from switchnet.parity import _iter_equal_partitions

        n, k, z = 6, 2, 2
        from itertools import permutations

        taus = list(permutations(range(1, n + 1), k))
        state = frozenset({1, 2})
        parts = list(_iter_equal_partitions(n, k))
        for tau in taus[:10]:
            hits = sum(1 for p in parts if partition_matches(p, tau, state))
            assert Fraction(hits, len(parts)) >= match_probability_lower_bound(k, z)

    def test_halving_inequality(self):
        # (1-x)^(1/2x) >= 1/2 on (0, 1/2]
        for i in range(1, 51):
            x = i / 100
            assert (1 - x) ** (1 / (2 * x)) >= 0.5

    def test_divisibility_required(self):
        with pytest.raises(ValueError):
            build_partition_family(5, 2, 1)


class TestGeneralBuilder:
    def test_k1_degenerate_chain(self):
        graph = InputGraph(4, {("s", 1), (1, "t"), ("s", 2), ("s", 3), ("s", 4)})
        res = build_general_network(graph, [1], z=1, seed=0)
        assert res.network.is_sound()
        family = all_distinct_permuted_copies(graph)
        assert res.network.is_complete_for(family)
        assert res.network.size <= res.h_bound

    def test_k2_z2_full_verification(self):
        graph = InputGraph(
            6, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4), ("s", 5), ("s", 6)}
        )
        res = build_general_network(graph, [1, 2], z=2, seed=0)
        assert res.network.is_sound()
        family = all_distinct_permuted_copies(graph)
        assert res.network.is_complete_for(family)
        assert res.network.size <= res.h_bound

    def test_all_edges_satisfy_can_go(self):
        graph = InputGraph(4, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4)})
        res = build_general_network(graph, [1, 2], z=2, seed=0)
        masks = {}
        for node, chars in res.functions.items():
            if chars is ONE:
                masks[node] = (1 << (1 << 4)) - 1
            else:
                masks[node] = KFunction.from_chars(chars).posmask(4)
        from switchnet.cuts import crossing_mask, full_cut_mask

        full = full_cut_mask(4)
        for e in res.network.edges:
            agree = full ^ crossing_mask(4, e.label)
            assert (masks[e.u] ^ masks[e.v]) & agree == 0

    def test_walks_are_valid_accepting_paths(self):
        graph = InputGraph(4, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4)})
        res = build_general_network(graph, [1, 2], z=2, seed=0)
        for sigma in Permutation.all(4):
            walk = accepting_walk(res, sigma)
            gs = graph.permuted(sigma)
            cur = res.network.s_node
            for e in walk:
                assert e.label in gs.edges
                cur = e.v if e.u == cur else e.u
            assert cur == res.network.t_node

    def test_k3_core_with_pebble_removal(self):
        # the length-4 chain core needs a mid-play pebble removal at z=2,
        # exercising partition shifts and edge-justified additions
        graph = InputGraph(
            6, {("s", 1), (1, 2), (2, 3), (3, "t"), ("s", 4), ("s", 5), ("s", 6)}
        )
        res = build_general_network(graph, [1, 2, 3], z=2, seed=0)
        assert any(len(a) > len(b) for a, b in zip(res.play, res.play[1:]))  # a removal
        assert res.network.is_sound()
        family = all_distinct_permuted_copies(graph)
        assert len(family) == 120
        assert res.network.is_complete_for(family)
        for sigma in [Permutation.identity(6), Permutation({1: 6, 2: 4, 3: 1, 4: 2, 5: 3, 6: 5})]:
            walk = accepting_walk(res, sigma)
            gs = graph.permuted(sigma)
            assert all(e.label in gs.edges for e in walk)

    def test_tight_budget_core_with_edge_justified_removal(self):
        # at z = 3 the length-5 chain play must unpebble vertex 2 justified by
        # the edge 1->2, driving the decode-delete-restore walk choreography
        graph = InputGraph(4, {("s", 1), (1, 2), (2, 3), (3, 4), (4, "t")})
        res = build_general_network(graph, [1, 2, 3, 4], z=3, seed=0)
        core_removals = [
            next(iter(a - b))
            for a, b in zip(res.play, res.play[1:])
            if len(b) < len(a)
        ]
        assert any(not graph.has_edge("s", r) for r in core_removals)
        assert res.network.is_sound()
        assert res.network.is_complete_for(all_distinct_permuted_copies(graph))
        for sigma in Permutation.all(4):
            accepting_walk(res, sigma)

    def test_infeasible_pebble_budget(self):
        graph = InputGraph(
            6, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4), ("s", 5), ("s", 6)}
        )
        with pytest.raises(InfeasibleParameters):
            build_general_network(graph, [1, 2], z=1, seed=0)

    def test_padding_to_divisibility(self):
        graph = InputGraph(5, {("s", 1), (1, 2), (2, "t"), ("s", 3), ("s", 4), ("s", 5)})
        res = build_general_network(graph, [1, 2], z=2, seed=0)
        assert res.graph.n == 6  # padded by one s-lollipop
        assert res.network.is_sound()

    def test_non_lollipop_extra_vertex_rejected(self):
        graph = InputGraph(4, {("s", 1), (1, 2), (2, "t"), (3, 4), ("s", 3)})
        with pytest.raises(ValueError):
            build_general_network(graph, [1, 2], z=2)


class TestFormulas:
    def test_regime_selection(self):
        rec = upper_bound_formulas(2, 2, 1 << 20)
        assert rec.regime == 1  # small k at large n
        rec2 = upper_bound_formulas(64, 2, 256)
        assert rec2.regime == 2

    def test_regime_bounds_below_master(self, rng):
        for _ in range(30):
            k = rng.randint(1, 50)
            z = rng.randint(1, 8)
            n = rng.randint(4, 10**6)
            rec = upper_bound_formulas(k, z, n)
            assert rec.regime1_bound <= rec.master_bound * (1 + 1e-12)
            assert rec.regime2_bound <= rec.master_bound * (1 + 1e-12)

    def test_default_z(self):
        assert default_z(1) == 1
        assert default_z(2) == 2
        assert default_z(3) == 2
        assert default_z(7) == 3

    def test_pebble_states_below_k_power_z(self):
        # the state-count estimate used by the simplified bound
        for k in range(2, 8):
            for z in range(1, k + 1):
                states = sum(math.comb(k, j) for j in range(1, z + 1))
                assert states <= k**z
