from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from oracles import evs as oracle_evs, winning_from_minimal
from valueshare.analysis import check_efficiency, check_sf
from valueshare.fixtures import super_complement_game
from valueshare.game import ArrivalOrder, Game, GameError, all_orders
from valueshare.mechanisms import (
    EVS,
    RFC,
    MechanismError,
    WeightFunction,
    evs_allocate,
    general_allocate,
    get_mechanism,
    layered,
    online_run,
    rfc_allocate,
    wvs,
    wvs_allocate,
)
from valueshare.structure import order_structure
from valueshare.sweep import enumerate_zero_one_monotone_games, random_monotone_game, weight_grid

F = Fraction


def alloc_of(g, mech, order):
    return mech(g, ArrivalOrder.from_labels(g, order)).as_dict()


def test_rfc_super_complement(g1):
    assert alloc_of(g1, RFC, "A,B,C") == {"A": 1, "B": 0, "C": 0}
    assert alloc_of(g1, RFC, "B,C,A") == {"A": 1, "B": 0, "C": 0}
    assert alloc_of(g1, RFC, "C,A,B") == {"A": 0, "B": 0, "C": 1}


@pytest.mark.parametrize(
    "order, expected",
    [
        ("C,A,D,B", {"A": F(2, 3), "B": F(1, 3), "C": 0, "D": 0}),
        ("C,D,A,B", {"A": F(1, 2), "B": F(1, 2), "C": 0, "D": 0}),
        ("C,A,B,D", {"A": F(1, 3), "B": F(1, 3), "C": F(1, 3), "D": 0}),
    ],
)
def test_evs_two_triples(g3, order, expected):
    assert alloc_of(g3, EVS, order) == expected


def test_evs_matches_oracle_everywhere():
    for n in (2, 3, 4):
        for sg in enumerate_zero_one_monotone_games(n):
            g = sg.game
            v = {frozenset(g.labels[i] for i in range(n) if m >> i & 1): g(m) for m in range(1 << n)}
            for order in all_orders(n):
                labels = list(order.labels(g))
                assert evs_allocate(g, order).as_dict() == oracle_evs(v, labels)


def test_evs_oracle_on_two_triples_orders(g3):
    v = winning_from_minimal("ABCD", [{"A", "B", "C"}, {"A", "B", "D"}])
    for order in all_orders(4):
        assert EVS(g3, order).as_dict() == oracle_evs(v, list(order.labels(g3)))


def test_warning_when_marginal_alone_critical(g1):
    alloc = EVS(g1, ArrivalOrder.from_labels(g1, "B,C,A"))
    assert alloc.warning
    assert alloc.as_dict() == {"A": 1, "B": 0, "C": 0}
    assert not EVS(g1, ArrivalOrder.from_labels(g1, "A,B,C")).warning


def test_wvs_decreasing_weights(g3):
    mech = wvs("1,1/2,1/4")
    # marginal B with m' = 3 gets (1/4)/(7/4); A alone takes the rest
    assert alloc_of(g3, mech, "C,A,D,B") == {"A": F(6, 7), "B": F(1, 7), "C": 0, "D": 0}
    assert alloc_of(g3, mech, "C,A,B,D") == {"A": F(2, 7), "B": F(1, 7), "C": F(4, 7), "D": 0}


def test_wvs_with_first_weight_only_is_rfc():
    for n in (2, 3, 4):
        mech = wvs([1] + [0] * (n - 1))
        for sg in enumerate_zero_one_monotone_games(n, solvable_only=True):
            for order in all_orders(n):
                assert mech(sg.game, order).values == rfc_allocate(sg.game, order).values


def test_support_and_efficiency_over_weight_grid():
    for n in (3, 4):
        for w in weight_grid(n):
            for sg in enumerate_zero_one_monotone_games(n):
                for order in all_orders(n):
                    alloc = wvs_allocate(sg.game, order, w)
                    st = order_structure(sg.game, order)
                    assert all(x >= 0 for x in alloc.values)
                    assert alloc.total == st.value_created
                    assert all(alloc.values[j] == 0 for j in range(n) if j not in st.critical)


def test_allocation_is_fast():
    g = Game.from_minimal_winning("ABCDEFGH", [["A", "B", "C"], ["D", "E"], ["F", "G", "H"]])
    order = ArrivalOrder(tuple(range(8)))
    start = time.perf_counter()
    for _ in range(10):
        EVS(g, order)
    assert (time.perf_counter() - start) / 10 < 0.01


@pytest.mark.parametrize(
    "weights, message",
    [((), "at least one"), ((0, 0), "positive"), ((1, -1), "nonnegative"), ((1, 2), "weakly decreasing")],
)
def test_weight_validation(weights, message):
    with pytest.raises(MechanismError, match=message):
        WeightFunction(tuple(F(w) for w in weights))


def test_weight_function_helpers():
    w = WeightFunction.parse("1, 1/2, 0.25")
    assert w(3) == F(1, 4) and w.total(2) == F(3, 2)
    assert w.render() == "1,1/2,1/4"
    with pytest.raises(MechanismError):
        w(4)
    assert WeightFunction.constant(3).weights == (1, 1, 1)


def test_short_weight_table_rejected_on_large_game(g3):
    with pytest.raises(MechanismError):
        wvs("1,1/2")(g3, ArrivalOrder.from_labels(g3, "C,A,B,D"))


def test_get_mechanism():
    assert get_mechanism("RFC") is RFC
    assert get_mechanism("wvs", "1,1").name == "wvs(1,1)"
    with pytest.raises(MechanismError):
        get_mechanism("wvs")
    with pytest.raises(MechanismError):
        get_mechanism("evs", "1")
    with pytest.raises(MechanismError):
        get_mechanism("nope")


def test_zero_one_mechanisms_reject_general_games():
    g = Game.from_table("AB", {"A": 2, "B": 0, "A,B": 2})
    with pytest.raises(GameError):
        RFC(g, ArrivalOrder((0, 1)))


def test_online_run_super_complement(g1):
    trace = online_run(g1, ArrivalOrder.from_labels(g1, "B,A,C"), RFC)
    assert trace.order == ("B", "A", "C")
    assert trace.cumulative("B") == [0, 1, 1]
    assert trace.cumulative("A") == [0, 0, 0]
    assert [s.local_value for s in trace.steps] == [0, 1, 1]
    assert trace.change_steps() == [2]
    assert trace.final().as_dict() == {"A": 0, "B": 1, "C": 0}


def test_online_run_shares_fixed_after_marginal(g3):
    trace = online_run(g3, ArrivalOrder.from_labels(g3, "C,A,D,B"), EVS)
    assert trace.cumulative("A") == [0, 0, 0, F(2, 3)]
    assert trace.change_steps() == [4]


def test_general_allocate_scales_layers():
    double = super_complement_game().scaled(2)
    order = ArrivalOrder.from_labels(double, "B,A,C")
    assert general_allocate(double, order, RFC).as_dict() == {"A": 0, "B": 2, "C": 0}
    assert layered(EVS).name == "layered-evs"


def test_general_allocate_on_zero_one_equals_base(g3):
    for order in all_orders(4):
        assert general_allocate(g3, order, EVS).values == EVS(g3, order).values


def test_layered_evs_is_shapley_fair_on_random_games():
    rng = random.Random(11)
    mech = layered(EVS)
    for _ in range(25):
        g = random_monotone_game(4, rng)
        assert check_sf(g, mech).holds
        assert check_efficiency(g, mech).holds

