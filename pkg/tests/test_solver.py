import json
import random

import pytest

import oracles
from pebbling import graphcore as gc
from pebbling.solver import (BudgetExceeded, Configuration, PebblingClass, PotentialVerdict,
                             RootedSolver, classify, find_solution, greedy_solution,
                             is_solvable, is_solvable_all_targets, is_solvable_oracle,
                             optimal_pebbling, pebbling_number, pebbling_number_at_most,
                             pebbling_number_rooted, potential, replay,
                             unsolvability_potential_test)

P3, C4, C5, C6 = gc.make_path(3), gc.make_cycle(4), gc.make_cycle(5), gc.make_cycle(6)


# --- configurations and moves ----------------------------------------------------

def test_configuration():
    f = Configuration([3, 0, 2])
    assert f.weight == 5
    assert Configuration([1, 0, 2]) <= f
    assert not Configuration([4, 0, 0]) <= f
    assert json.dumps(f.to_json()) == "[3, 0, 2]"
    with pytest.raises(ValueError):
        Configuration([1, -1])


def test_replay_rejects_illegal_steps():
    assert replay(P3, (4, 0, 0), [(0, 1), (0, 1), (1, 2)]) == (0, 0, 1)
    with pytest.raises(ValueError):
        replay(P3, (4, 0, 0), [(0, 2)])
    with pytest.raises(ValueError):
        replay(P3, (1, 0, 0), [(0, 1)])


# --- solvability -----------------------------------------------------------------

def test_path_solvability():
    moves = find_solution(P3, (4, 0, 0), 2)
    assert moves is not None
    assert replay(P3, (4, 0, 0), moves)[2] >= 1
    assert not is_solvable(P3, (3, 0, 0), 2)


def test_cycle_threshold():
    assert is_solvable(C6, (8, 0, 0, 0, 0, 0), 3)
    assert not is_solvable(C6, (7, 0, 0, 0, 0, 0), 3)


def test_t_fold_solution_replays():
    f = (0, 0, 0, 16, 0, 0)
    moves = find_solution(C6, f, 0, t=2)
    assert replay(C6, f, moves)[0] >= 2
    assert find_solution(C6, (0, 0, 0, 15, 0, 0), 0, t=2) is None


def test_precondition_errors():
    with pytest.raises(ValueError):
        is_solvable(P3, (1, 1), 0)
    with pytest.raises(ValueError):
        is_solvable(P3, (1, 1, 1), 5)
    with pytest.raises(ValueError):
        is_solvable(P3, (1, 1, 1), 0, t=0)


def test_all_targets():
    f13 = gc.make_friendship(3, 3)
    assert is_solvable_all_targets(f13, Configuration.single(f13.order, 0, 2))
    assert not is_solvable_all_targets(C5, (0,) * 5)
    assert is_solvable_all_targets(C4, (2, 0, 1, 0))


def test_potential_test():
    assert potential(P3, (3, 0, 0), 2) == pytest.approx(0.75)
    assert unsolvability_potential_test(P3, (3, 0, 0), 2) is PotentialVerdict.PROVEN_UNSOLVABLE
    assert unsolvability_potential_test(P3, (4, 0, 0), 2) is PotentialVerdict.INCONCLUSIVE
    assert unsolvability_potential_test(C5, (3, 0, 0, 0, 0), 2) is PotentialVerdict.PROVEN_UNSOLVABLE


def test_potential_is_sound():
    for g in oracles.atlas_graphs(2, 4):
        for f in oracles.configurations(g.order, 6):
            for r in g.vertices:
                if unsolvability_potential_test(g, f, r) is PotentialVerdict.PROVEN_UNSOLVABLE:
                    assert not is_solvable_oracle(g, f, r)


def test_oracle_examples():
    assert is_solvable_oracle(gc.make_path(2), (2, 0), 1)
    assert not is_solvable_oracle(gc.make_complete(3), (1, 1, 0), 2)
    with pytest.raises(BudgetExceeded):
        is_solvable_oracle(gc.make_complete(6), (30, 0, 0, 0, 0, 0), 5, t=15, state_limit=100)


# --- greedy ----------------------------------------------------------------------

def test_greedy_solutions():
    p4 = gc.make_path(4)
    moves = greedy_solution(p4, (8, 0, 0, 0), 3)
    assert len(moves) == 7
    d = p4.distances(3)
    assert all(d[v] < d[u] for u, v in moves)
    assert greedy_solution(C4, (0, 2, 0, 2), 0) is not None


def test_semigreedy_reaches_more():
    # on C5 the two far vertices are equidistant from the target
    f = (0, 0, 2, 3, 0)
    assert greedy_solution(C5, f, 0) is None
    assert greedy_solution(C5, f, 0, semigreedy=True) is not None


def test_trees_are_greedy():
    rng = random.Random(5)
    for _ in range(20):
        tree = oracles.random_tree(rng, rng.randint(2, 6))
        r = rng.randrange(tree.order)
        k = pebbling_number_rooted(tree, r).value
        for f in oracles.configurations(tree.order, k, k):
            assert greedy_solution(tree, f, r) is not None


# --- invariants ------------------------------------------------------------------

@pytest.mark.parametrize("g, r, t, expected", [
    (C6, 0, 1, 8), (C6, 4, 1, 8), (gc.make_friendship(2, 4), 0, 1, 7), (C5, 2, 2, 9),
])
def test_rooted_values(g, r, t, expected):
    res = pebbling_number_rooted(g, r, t)
    assert res.exhaustive and res.value == expected
    assert res.witness.weight == expected - 1
    assert not is_solvable(g, res.witness, r, t)


@pytest.mark.parametrize("g, expected", [
    (gc.make_friendship(2, 3), 6), (gc.make_triangular_chain(2), 6), (gc.make_Qnm(3, 3), 14),
])
def test_global_values(g, expected):
    res = pebbling_number(g)
    assert res.exhaustive and res.value == expected
    assert res.root is not None


def test_result_json():
    d = pebbling_number(C5).to_json()
    assert set(d) == {"value", "witness", "root", "exhaustive"}
    assert d["value"] == 5 and d["exhaustive"] is True


def test_budget_gives_sandwich():
    g = gc.make_friendship(4, 4)
    res = pebbling_number(g, budget=200)
    assert not res.exhaustive
    assert res.lower <= 22 <= res.upper
    assert res.to_json()["upper"] == res.upper


def test_at_most_decision():
    f24 = gc.make_friendship(2, 4)
    assert pebbling_number_at_most(f24, 16) is True
    assert pebbling_number_at_most(f24, 15) is False
    assert pebbling_number_at_most(gc.make_square_chain(3), 63, budget=10) in (False, None)


@pytest.mark.parametrize("g, cap, expected", [
    (gc.make_friendship(2, 4), None, 4),
    (gc.make_friendship(3, 4), 2, 5),
    (gc.make_friendship(4, 4), 2, 6),
    (C4, None, 3),
    (gc.make_friendship(2, 3), None, 2),
    (gc.make_friendship(4, 3), 2, 2),
])
def test_optimal_pebbling(g, cap, expected):
    res = optimal_pebbling(g, cap)
    assert res.exhaustive and res.value == expected
    assert is_solvable_all_targets(g, res.witness)
    if cap:
        assert max(res.witness) <= cap


def test_optimal_witness_is_minimal_and_least():
    g = gc.make_path(4)
    res = optimal_pebbling(g)
    below = [f for f in oracles.configurations(g.order, res.value - 1)
             if is_solvable_all_targets(g, f)]
    assert not below
    same = [f for f in oracles.configurations(g.order, res.value, res.value)
            if is_solvable_all_targets(g, f)]
    assert tuple(res.witness) == min(same)


def test_classify():
    assert classify(gc.make_hypercube(3)) is PebblingClass.CLASS0
    assert classify(gc.make_friendship(2, 3)) is PebblingClass.CLASS1
    assert classify(gc.make_path(4)) is PebblingClass.NEITHER


def test_disconnected_graph_rejected():
    with pytest.raises(gc.GraphError):
        pebbling_number(gc.Graph(3, [(0, 1)]))


def test_box_bound_admits_every_unsolvable_configuration():
    for g in (C5, gc.make_friendship(2, 3), gc.make_path(4)):
        for r in g.vertices:
            engine = RootedSolver(g, r)
            L, U = [0] * g.order, [6] * g.order
            heaviest = max(sum(f) for f in oracles.unsolvable_configurations(g, r, 10)
                           if all(x <= 6 for x in f))
            assert engine.box_bound(L, U) >= heaviest
