from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from valueshare.game import ArrivalOrder, Game, GameError, are_symmetric, default_labels
from valueshare.shapley import (
    decompose_layers,
    marginal_contribution,
    shapley_permutation,
    shapley_subset,
)
from valueshare.sweep import random_monotone_game, random_zero_one_monotone_game

F = Fraction


def test_marginal_contribution(g1, g3):
    order = ArrivalOrder.from_labels(g1, "A,B,C")
    assert marginal_contribution(g1, order, g1.index("B")) == 1
    assert marginal_contribution(g1, order, g1.index("C")) == 0
    assert marginal_contribution(g3, ArrivalOrder.from_labels(g3, "C,D,A,B"), g3.index("B")) == 1


@pytest.mark.parametrize("method", [shapley_permutation, shapley_subset])
def test_shapley_fixtures(method, g1, g3, zero3):
    assert method(g1).values == (F(4, 6), F(1, 6), F(1, 6))
    assert method(g3).values == (F(5, 12), F(5, 12), F(1, 12), F(1, 12))
    assert method(Game.from_function("A", lambda m: m)).values == (1,)
    assert method(zero3).values == (0, 0, 0)


def test_permutation_form_size_guard():
    g = Game.from_function(default_labels(9), lambda m: int(m == 511))
    with pytest.raises(GameError):
        shapley_permutation(g)
    assert shapley_subset(g).values == (F(1, 9),) * 9


games = st.builds(
    lambda n, seed, zero_one: (random_zero_one_monotone_game if zero_one else random_monotone_game)(
        n, random.Random(seed)
    ),
    st.integers(1, 5),
    st.integers(0, 10**6),
    st.booleans(),
)


@settings(max_examples=60, deadline=None)
@given(games)
def test_oracles_agree_and_axioms_hold(g):
    sv = shapley_permutation(g)
    assert sv == shapley_subset(g)
    assert sv.total == g.values[g.grand]
    for i in range(g.n):
        null = all(g.values[s | 1 << i] == g.values[s] for s in range(1 << g.n) if not s >> i & 1)
        if null:
            assert sv.values[i] == 0
        for j in range(i + 1, g.n):
            if are_symmetric(g, i, j):
                assert sv.values[i] == sv.values[j]


@settings(max_examples=40, deadline=None)
@given(games)
def test_shapley_is_linear_across_layers(g):
    dec = decompose_layers(g)
    assert dec.recompose() == g.values if dec.layers else set(g.values) == {0}
    combined = [F(0)] * g.n
    for c, layer in dec.layers:
        assert layer.is_zero_one and layer.is_monotone
        for i, x in enumerate(shapley_subset(layer).values):
            combined[i] += c * x
    assert tuple(combined) == shapley_subset(g).values


def test_decompose_zero_one_is_identity(g3):
    dec = decompose_layers(g3)
    assert dec.coefficients == (1,)
    assert dec.layers[0][1] == g3


def test_decompose_three_values():
    g = Game.from_table("AB", {"A": 2, "B": 0, "A,B": 5})
    dec = decompose_layers(g)
    assert dec.coefficients == (2, 3)
    assert dec.recompose() == g.values


def test_decompose_random_games_reconstruct():
    rng = random.Random(7)
    for _ in range(20):
        g = random_monotone_game(4, rng)
        assert decompose_layers(g).recompose() == g.values


def test_decompose_rejects_non_monotone():
    with pytest.raises(GameError):
        decompose_layers(Game.from_table("AB", {"A": 1, "B": 0, "A,B": 0}))
