"""Small reference games and hand-built policies used as positive and negative controls."""

from __future__ import annotations

from fractions import Fraction

from .game import ArrivalOrder, Game
from .mechanisms import Allocation, Mechanism, evs_allocate
from .structure import order_structure


def super_complement_game() -> Game:
    """A wins with B or with C.  Unsolvable: A alone is worthless, yet A can
    be the only critical member of {A, B, C}."""
    return Game.from_minimal_winning("ABC", [["A", "B"], ["A", "C"]])


def two_triples_game() -> Game:
    """Winning iff {A, B, C} or {A, B, D} is present.  Solvable."""
    return Game.from_minimal_winning("ABCD", [["A", "B", "C"], ["A", "B", "D"]])


def triple_with_null_game() -> Game:
    """Unanimity of {A, B, C}; D is a null player."""
    return Game.from_minimal_winning("ABCD", [["A", "B", "C"]])


def unanimity_game(labels: str = "AB") -> Game:
    return Game.from_minimal_winning(labels, [list(labels)])


def zero_game(labels: str = "ABC") -> Game:
    return Game.from_function(labels, lambda _: 0)


def _zeros(g: Game) -> Allocation:
    return Allocation(g.labels, tuple(Fraction(0) for _ in g.labels))


def _from_dict(g: Game, shares: dict[str, Fraction]) -> Allocation:
    return Allocation(g.labels, tuple(shares.get(lab, Fraction(0)) for lab in g.labels))


def skewed_split_policy(eps: Fraction, null: str = "D") -> Mechanism:
    """Hand-made policy for :func:`triple_with_null_game`, keyed on where the
    null player arrives.  Shares of the three symmetric players by arrival:

    ========================  =====================
    null player arrives       symmetric players get
    ========================  =====================
    last (or not yet)         1-2e, e, e
    third                     1-e, 0, e
    second                    1, 0, 0
    first                     1, 0, 0
    ========================  =====================

    It is efficient and Shapley-fair but gives a later symmetric player more
    than an earlier one.
    """
    eps = Fraction(eps)
    rows = {
        3: (1 - 2 * eps, eps, eps),
        2: (1 - eps, Fraction(0), eps),
        1: (Fraction(1), Fraction(0), Fraction(0)),
        0: (Fraction(1), Fraction(0), Fraction(0)),
    }

    def rule(g: Game, order: ArrivalOrder) -> Allocation:
        if g.values[g.grand] == 0:
            return _zeros(g)
        labels = order.labels(g)
        where = labels.index(null) if null in labels else 3
        others = [lab for lab in labels if lab != null]
        return _from_dict(g, dict(zip(others, rows[where])))

    return Mechanism(f"skewed-split({eps})", rule)


def _equal_split(g: Game, order: ArrivalOrder) -> Allocation:
    crit = order_structure(g, order).critical
    if not crit:
        return _zeros(g)
    return _from_dict(g, {g.labels[j]: Fraction(1, len(crit)) for j in crit})


EQUAL_SPLIT = Mechanism("equal-split", _equal_split)
"""Equal shares for all critical players, without the minimal-prefix correction."""


def _first_arrival(g: Game, order: ArrivalOrder) -> Allocation:
    return _from_dict(g, {g.labels[order.sequence[0]]: g.values[g.grand]} if len(order) else {})


FIRST_ARRIVAL = Mechanism("first-arrival", _first_arrival)
"""The first player to arrive takes ``v(N)``."""


def last_arrival_grab(full_size: int, base: Mechanism | None = None) -> Mechanism:
    """Behaves like ``base`` (EVS by default) on local games, but once all
    ``full_size`` players are present hands everything to the last arrival."""
    base_rule = base or Mechanism("evs", evs_allocate)

    def rule(g: Game, order: ArrivalOrder) -> Allocation:
        if g.n < full_size:
            return base_rule(g, order)
        return _from_dict(g, {g.labels[order.sequence[-1]]: g.values[g.grand]})

    return Mechanism(f"last-arrival-grab({base_rule.name})", rule)
