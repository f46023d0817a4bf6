import random

import networkx as nx
import pytest

import oracles
from pebbling import formulas as fm
from pebbling import graphcore as gc
from pebbling.solver import optimal_pebbling, pebbling_number, pebbling_number_rooted


@pytest.mark.parametrize("m, t, expected", [(6, 1, 8), (5, 1, 5), (7, 3, 27), (3, 1, 3), (4, 2, 8)])
def test_cycle_pi(m, t, expected):
    assert fm.cycle_pi(m, t).value == expected


def test_friendship_formulas():
    assert fm.friendship_even_pi(2, 2).value == 16
    assert fm.friendship_even_pi(3, 2).value == 19
    assert fm.friendship_hub_pi(2, 2).value == 7
    assert fm.friendship3_pi(2).value == 6
    assert fm.friendship3_pi(4).value == 10
    with pytest.raises(fm.FormulaDomainError):
        fm.friendship3_pi(1)
    with pytest.raises(fm.FormulaDomainError):
        fm.friendship_even_pi(1, 2)


@pytest.mark.parametrize("n, values", [(2, (16, 4, 4)), (3, (19, 4, 5)), (5, (25, 4, 6))])
def test_fn4_suite(n, values):
    s = fm.fn4_suite(n)
    assert (s.pi, s.pi_star, s.pi_star_2) == values


def test_chain_formulas():
    assert fm.triangular_chain_pi(1).value == 3
    assert fm.triangular_chain_pi(4).value == 20
    assert fm.triangular_chain_pi(4, pendant=True).value == 36
    assert fm.square_chain_pi(2).value == 16
    assert fm.square_chain_pi(3, "ortho").value == 34
    assert fm.square_chain_pi(1, pendant=True).value == 8
    with pytest.raises(fm.FormulaDomainError):
        fm.square_chain_pi(0)


def test_consistency_of_the_order_seven_graph():
    values = {fm.friendship_even_pi(2, 2).value, fm.square_chain_pi(2).value,
              fm.square_chain_pi(2, "ortho").value, fm.fn4_suite(2).pi}
    assert values == {16}


def test_corona_formulas():
    assert fm.corona_complete_pi(3, 2).pi == 14
    assert fm.qnm_pi(3, 4).pi == 17
    assert fm.corona_complete_pi(3, 1).pi == 11
    assert fm.qnm_pi(3, 3).pi_star == 4
    with pytest.raises(fm.FormulaDomainError):
        fm.qnm_pi(2, 3)


def test_corona_k3_k1_by_search():
    g = gc.make_corona(gc.make_complete(3), gc.make_complete(1))
    res = pebbling_number(g)
    assert res.exhaustive and res.value == 11
    assert optimal_pebbling(g).value == 4


def test_bound_value_json():
    assert fm.cycle_pi(6).to_json() == {"value": 8, "kind": "exact", "source": "cycle-even"}


# --- trees -----------------------------------------------------------------------

def test_path_partition_examples():
    assert fm.max_r_path_partition(gc.make_path(4), 0).lengths == (3,)
    star = gc.make_star(3)
    assert fm.max_r_path_partition(star, 1).lengths == (2, 1)
    spider = gc.make_tree([None, 0, 1, 2, 0, 4, 0, 6])
    part = fm.max_r_path_partition(spider, 3)
    assert part.lengths == (5, 2)
    assert part.paths[0][0] == 3


def test_path_partition_covers_edges_once():
    rng = random.Random(11)
    for _ in range(50):
        tree = oracles.random_tree(rng, rng.randint(2, 10))
        r = rng.randrange(tree.order)
        part = fm.max_r_path_partition(tree, r)
        used = [tuple(sorted(e)) for p in part.paths for e in zip(p, p[1:])]
        assert sorted(used) == sorted(tree.edges)
        assert r in (part.paths[0][0], part.paths[0][-1])
        assert list(part.lengths) == sorted(part.lengths, reverse=True)


def test_path_partition_majorizes_all_alternatives():
    for n in range(2, 8):
        for t in nx.nonisomorphic_trees(n):
            tree = gc.Graph(n, sorted(tuple(sorted(e)) for e in t.edges()))
            for r in tree.vertices:
                best = fm.max_r_path_partition(tree, r).lengths
                for other in oracles.r_path_partition_lengths(tree, r):
                    assert fm.majorizes(best, other), (tree.edges, r, best, other)


def test_path_partition_rejects_cycles():
    with pytest.raises(gc.GraphError):
        fm.max_r_path_partition(gc.make_cycle(4), 0)


@pytest.mark.parametrize("tree, r, t, expected", [
    (gc.make_path(4), 0, 1, 8),
    (gc.make_star(3), 1, 1, 5),
    (gc.make_path(3), 0, 2, 8),
])
def test_tree_pi(tree, r, t, expected):
    assert fm.tree_pi(tree, r, t).value == expected
    assert pebbling_number_rooted(tree, r, t).value == expected


def test_star_leaf_value_by_brute_force():
    assert oracles.brute_pi_rooted(gc.make_star(3), 1) == 5


def test_tree_pi_global():
    assert fm.tree_pi_global(gc.make_star(3)).value == 5
    assert fm.tree_pi_global(gc.make_path(5)).value == 16


# --- bounds ----------------------------------------------------------------------

def test_polymer_bounds():
    assert fm.product_bound([4, 4, 4]).value == 64
    assert fm.bouquet_bound([4, 4, 4, 4]).value == 22
    assert fm.product_bound([3]).value == 3
    assert fm.link_bound([4, 4]).value == 32
    assert fm.bouquet_bound([3, 5, 4]).value == 22
    with pytest.raises(fm.FormulaDomainError):
        fm.product_bound([])


def test_lower_bounds():
    assert fm.lower_bounds(gc.make_cycle(6)).value == 8
    assert fm.lower_bounds(gc.make_path(5)).value == 16
    assert fm.lower_bounds(gc.make_complete(4)).value == 4


def test_spanning_tree_bound_is_an_upper_bound():
    for g in (gc.make_cycle(5), gc.make_friendship(2, 3), gc.make_square_chain(2)):
        for r in g.vertices:
            assert pebbling_number_rooted(g, r).value <= fm.spanning_tree_bound(g, r).value


# --- total domination -------------------------------------------------------------

def test_total_domination():
    assert fm.total_domination_number(gc.make_cycle(4)) == 2
    assert fm.total_domination_number(gc.make_path(6)) == 4
    assert fm.total_domination_number(gc.make_friendship(3, 4)) == 4


@pytest.mark.parametrize("g, expected", [
    (gc.make_friendship(3, 4), True),
    (gc.make_friendship(2, 4), False),
    (gc.make_cycle(4), False),
])
def test_characterization_examples(g, expected):
    assert fm.pi_star2_eq5_characterization(g) is expected
    assert (optimal_pebbling(g, 2).value == 5) is expected


def test_characterization_domain():
    with pytest.raises(fm.FormulaDomainError):
        fm.pi_star2_eq5_characterization(gc.make_path(1))
