from __future__ import annotations

import random
from fractions import Fraction

import pytest

from oracles import evs as oracle_evs, expected_sd as oracle_expected_sd, winning_from_minimal
from valueshare.analysis import (
    OrderTable,
    check_anonymity,
    check_critical_order,
    check_critical_support,
    check_efficiency,
    check_i4ea,
    check_mos,
    check_oir,
    check_sf,
    compare_mechanisms,
    egalitarian_welfare,
    expected_metrics,
    expected_shares,
    relabel,
    shapley_distance,
)
from valueshare.fixtures import (
    EQUAL_SPLIT,
    FIRST_ARRIVAL,
    last_arrival_grab,
    skewed_split_policy,
    unanimity_game,
)
from valueshare.game import ArrivalOrder, Game, GameError, all_orders
from valueshare.mechanisms import EVS, RFC, layered, wvs
from valueshare.shapley import shapley_subset
from valueshare.structure import order_structure
from valueshare.sweep import (
    enumerate_zero_one_monotone_games,
    monotone_truth_tables,
    random_monotone_game,
    run_sweep,
    weight_grid,
)

F = Fraction


def rfc_oracle(v, order):
    shares = {p: F(0) for p in order}
    seen = []
    for p in order:
        seen.append(p)
        if v[frozenset(seen)] == 1:
            first = next(j for j in seen if v[frozenset(seen) - {j}] == 0)
            shares[first] = F(1)
            break
    return shares


def test_shapley_distance_values(g1, g3):
    unanimity = unanimity_game("ABC")
    alloc = EVS(unanimity, ArrivalOrder((2, 0, 1)))
    assert shapley_distance(alloc, shapley_subset(unanimity))[1] == 0

    alloc = RFC(g1, ArrivalOrder.from_labels(g1, "B,C,A"))
    per, total = shapley_distance(alloc, shapley_subset(g1))
    assert per == (F(1, 9), F(1, 36), F(1, 36)) and total == F(1, 6)

    alloc = EVS(g3, ArrivalOrder.from_labels(g3, "C,A,B,D"))
    assert shapley_distance(alloc, shapley_subset(g3))[1] == F(1, 12)


def test_shapley_distance_label_mismatch(g1, g3):
    with pytest.raises(ValueError):
        shapley_distance(shapley_subset(g1), shapley_subset(g3))


def test_egalitarian_welfare(g3, zero3):
    order = ArrivalOrder.from_labels(g3, "C,A,B,D")
    assert egalitarian_welfare(g3, order, EVS(g3, order)) == F(1, 3)
    assert egalitarian_welfare(g3, order, RFC(g3, order)) == 0
    o = ArrivalOrder((0, 1, 2))
    assert egalitarian_welfare(zero3, o, EVS(zero3, o)) is None


def test_expected_metrics_two_triples(g3):
    v = winning_from_minimal("ABCD", [{"A", "B", "C"}, {"A", "B", "D"}])
    evs_report = expected_metrics(g3, EVS)
    rfc_report = expected_metrics(g3, RFC)
    assert evs_report.expected_sd == oracle_expected_sd(v, "ABCD", oracle_evs) == F(2, 27)
    assert rfc_report.expected_sd == oracle_expected_sd(v, "ABCD", rfc_oracle) == F(23, 36)
    assert evs_report.expected_sd < rfc_report.expected_sd
    assert sum(evs_report.expected_sd_per_player) == evs_report.expected_sd
    assert evs_report.ew_orders == 24
    assert evs_report.expected_ew == F(13, 36) and rfc_report.expected_ew == 0


def test_expected_metrics_super_complement(g1):
    v = winning_from_minimal("ABC", [{"A", "B"}, {"A", "C"}])
    assert expected_metrics(g1, EVS).expected_sd == oracle_expected_sd(v, "ABC", oracle_evs) == F(1, 6)
    assert expected_metrics(g1, RFC).expected_sd == oracle_expected_sd(v, "ABC", rfc_oracle) == F(1, 2)


def test_metric_document(g3):
    doc = expected_metrics(g3, EVS).to_document(decimals=4)
    assert doc["expected_sd"] == {"exact": "2/27", "decimal": "0.0741"}
    assert doc["orders"] == 24


def test_expected_shares_equal_shapley(g3):
    assert expected_shares(g3, EVS) == shapley_subset(g3)


def test_compare_mechanisms(g3):
    cmp = compare_mechanisms(g3, [EVS, RFC, wvs("1,1/2,1/4,1/8")])
    names = [r.mechanism for r in cmp.reports]
    assert names == ["evs", "rfc", "wvs(1,1/2,1/4,1/8)"]
    assert cmp.ew_dominates["evs"]["rfc"] and cmp.ew_dominates["evs"]["wvs(1,1/2,1/4,1/8)"]
    assert not cmp.ew_dominates["rfc"]["evs"]
    assert cmp.reports[2].expected_sd == F(1045, 5292)


# -- property checks: positive controls ------------------------------------


@pytest.mark.parametrize("mech", [EVS, RFC, wvs("1,1/2,1/4,1/8")])
def test_mechanisms_pass_all_checks_on_two_triples(g3, mech):
    table = OrderTable(g3, mech)
    for check in (check_efficiency, check_oir, check_i4ea, check_sf, check_mos, check_critical_support):
        report = check(g3, mech, table=table)
        assert report.holds, report.render()
        assert report.checked > 0
    assert check_i4ea(g3, mech, table=table, strict=True).holds


def test_critical_order_holds_for_wvs(g3):
    assert check_critical_order(g3, wvs("1,1/2,1/4,1/8")).holds
    assert check_critical_order(g3, EVS).holds


def test_evs_shapley_fair_on_unsolvable_games():
    games = [sg for n in (2, 3, 4) for sg in enumerate_zero_one_monotone_games(n) if not sg.solvable]
    assert len(games) == 96
    assert all(check_sf(sg.game, EVS).holds for sg in games)


# -- property checks: negative controls ------------------------------------


def test_last_arrival_grab_breaks_oir(g3):
    report = check_oir(g3, last_arrival_grab(4))
    assert not report.holds
    cx = report.counterexample
    assert cx.step == 4 and cx.values[1] < cx.values[0]
    assert check_efficiency(g3, last_arrival_grab(4)).holds


def test_first_arrival_breaks_sf(g1):
    report = check_sf(g1, FIRST_ARRIVAL)
    assert not report.holds
    assert [cx.values[0] for cx in report.counterexamples] == [F(1, 3)] * 3
    assert {cx.player for cx in report.counterexamples} == {"A", "B", "C"}


def test_rfc_breaks_i4ea_on_super_complement(g1):
    report = check_i4ea(g1, RFC)
    assert not report.holds
    cx = report.counterexample
    assert cx.orders == (("B", "A", "C"), ("B", "C", "A"))
    assert cx.player == "A" and cx.values == (0, 1)
    assert "B-A-C -> B-C-A" in report.render()


def test_equal_split_breaks_i4ea(g3):
    report = check_i4ea(g3, EQUAL_SPLIT, limit=None)
    assert not report.holds
    first = report.counterexample
    assert first.orders == (("A", "C", "B", "D"), ("A", "C", "D", "B"))
    named = [cx for cx in report.counterexamples if cx.orders == (("C", "A", "B", "D"), ("C", "A", "D", "B"))]
    assert named and named[0].player == "B" and named[0].values == (F(1, 3), F(1, 2))


def test_skewed_split_fair_but_not_monotone(g2):
    mech = skewed_split_policy(F(1, 10))
    assert check_efficiency(g2, mech).holds
    assert check_sf(g2, mech).holds
    mos = check_mos(g2, mech, local=False)
    assert not mos.holds
    first, second = mos.counterexample.values
    assert first < second


def test_anonymity(g3, g2):
    assert check_anonymity(g3, EVS).holds
    assert not check_anonymity(g2, skewed_split_policy(F(1, 10))).holds


def test_relabel_preserves_values(g1):
    h = relabel(g1, {"A": "Z", "B": "X", "C": "Y"})
    assert h.labels == ("X", "Y", "Z")
    assert h.value(["Z", "X"]) == 1 and h.value(["X", "Y"]) == 0


def test_table_rejects_foreign_game(g1, g3):
    with pytest.raises(ValueError):
        check_oir(g1, EVS, table=OrderTable(g3, EVS))


def test_limit_none_collects_everything(g1):
    one = check_i4ea(g1, RFC)
    every = check_i4ea(g1, RFC, limit=None, strict=True)
    assert len(one.counterexamples) == 1
    assert len(every.counterexamples) > 1 and every.name == "i4ea-strict"


# -- exhaustive families -----------------------------------------------------


def test_monotone_function_counts():
    assert [len(monotone_truth_tables(n)) for n in range(5)] == [2, 3, 6, 20, 168]


def test_monotone_tables_match_brute_force_filter():
    def monotone(t):
        return all(
            not (t >> s & 1) or t >> (s | 1 << i) & 1 for s in range(16) for i in range(4)
        )

    brute = [t for t in range(1 << 16) if monotone(t)]
    assert brute == monotone_truth_tables(4)


def test_enumeration_counts():
    assert [len(list(enumerate_zero_one_monotone_games(n))) for n in (1, 2, 3, 4)] == [1, 4, 18, 166]
    assert [len(list(enumerate_zero_one_monotone_games(n, solvable_only=True))) for n in (1, 2, 3, 4)] == [1, 4, 15, 73]


def test_sampling_is_seeded():
    a = [sg.game for sg in enumerate_zero_one_monotone_games(5, sample=5, seed=3)]
    b = [sg.game for sg in enumerate_zero_one_monotone_games(5, sample=5, seed=3)]
    assert a == b and len(a) == 5


def _critical_partition_sums(g, w):
    """Expected total over orders sharing a critical set, per class."""
    classes = {}
    for order in all_orders(g.n):
        st = order_structure(g, order)
        if st.marginal is None:
            continue
        key = frozenset(st.critical)
        classes.setdefault(key, []).append(wvs(w)(g, order))
    return {k: sum(a.total for a in v) / len(v) for k, v in classes.items()}


def test_every_critical_class_distributes_one_unit():
    for w in weight_grid(4):
        for sg in enumerate_zero_one_monotone_games(4, solvable_only=True):
            assert set(_critical_partition_sums(sg.game, w).values()) == {1}


def test_sweep_small_games_with_weight_grid():
    for n in (2, 3, 4):
        games = list(enumerate_zero_one_monotone_games(n, solvable_only=True))
        for w in weight_grid(n):
            result = run_sweep(games, wvs(w))
            assert not result.failures, [v.describe() for v in result.failures]
            assert result.counts()["games"] == len(games)


def test_sweep_flags_failing_mechanism():
    games = list(enumerate_zero_one_monotone_games(3))
    result = run_sweep(games, FIRST_ARRIVAL, ("sf",))
    assert result.failures
    assert result.counts()["sf_fail"] == len(result.failures)


def test_sd_of_random_general_games_is_nonnegative():
    rng = random.Random(5)
    for _ in range(5):
        g = random_monotone_game(3, rng)
        report = expected_metrics(g, layered(EVS))
        assert report.expected_sd >= 0 and report.expected_ew is None


def test_non_zero_one_game_rejected_by_support_check():
    g = Game.from_table("AB", {"A": 2, "B": 0, "A,B": 2})
    with pytest.raises(GameError):
        check_critical_support(g, RFC)
