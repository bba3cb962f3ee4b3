"""Enumerating 0-1 monotone games and sweeping property checks over them."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .analysis import (
    MechanismLike,
    OrderTable,
    PropertyReport,
    check_i4ea,
    check_mos,
    check_oir,
    check_sf,
    mechanism_name,
)
from .game import Game, GameError, SizeLimitError, default_labels, is_subset
from .mechanisms import WeightFunction
from .shapley import shapley_permutation, shapley_subset
from .structure import is_solvable

MAX_EXHAUSTIVE_PLAYERS = 5


def monotone_truth_tables(n: int) -> list[int]:
    """Truth tables (bit ``S`` = value on coalition ``S``) of all monotone
    Boolean functions of ``n`` variables, in increasing numeric order.

    A monotone function splits on its last variable into ``f0 <= f1``, both
    monotone, so the tables are built from pairs of the previous level.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    tables = [0, 1]
    for k in range(1, n + 1):
        half = 1 << (k - 1)
        tables = sorted(f0 | (f1 << half) for f0 in tables for f1 in tables if f0 & ~f1 == 0)
    return tables


def game_from_truth_table(table: int, labels: Sequence[str]) -> Game:
    return Game.from_function(labels, lambda mask: (table >> mask) & 1)


@dataclass(frozen=True)
class SweepGame:
    game: Game
    solvable: bool


def _tag(game: Game) -> SweepGame:
    return SweepGame(game, is_solvable(game).solvable)


def enumerate_zero_one_monotone_games(
    n: int,
    *,
    sample: int | None = None,
    seed: int = 0,
    solvable_only: bool = False,
) -> Iterator[SweepGame]:
    """Yield nonconstant 0-1 monotone games on ``n`` players.

    Without ``sample`` every such game is produced (``n <= 5``).  With
    ``sample`` a seeded uniform sample without replacement is drawn from the
    exhaustive list when ``n <= 5``, and from random antichains of minimal
    winning coalitions otherwise.
    """
    labels = default_labels(n)
    if n <= MAX_EXHAUSTIVE_PLAYERS:
        # f(empty) = 0 rules out the all-ones table; drop the zero game too
        games = [
            _tag(game_from_truth_table(t, labels))
            for t in monotone_truth_tables(n)
            if t and not t & 1
        ]
        if solvable_only:
            games = [sg for sg in games if sg.solvable]
        if sample is not None and sample < len(games):
            picks = sorted(random.Random(seed).sample(range(len(games)), sample))
            games = [games[i] for i in picks]
        yield from games
        return
    if sample is None:
        raise SizeLimitError(
            f"exhaustive enumeration supports n <= {MAX_EXHAUSTIVE_PLAYERS}; pass a sample size"
        )
    rng = random.Random(seed)
    produced = 0
    attempts = 0
    while produced < sample:
        attempts += 1
        if attempts > 1000 * sample:
            raise GameError("could not draw enough games with the requested constraints")
        sg = _tag(random_zero_one_monotone_game(n, rng))
        if solvable_only and not sg.solvable:
            continue
        produced += 1
        yield sg


def random_zero_one_monotone_game(n: int, rng: random.Random, max_generators: int = 4) -> Game:
    """Upward closure of a few random nonempty coalitions."""
    labels = default_labels(n)
    count = rng.randint(1, max_generators)
    gens = [rng.randrange(1, 1 << n) for _ in range(count)]
    return Game.from_function(labels, lambda s: int(any(is_subset(m, s) for m in gens)))


def random_monotone_game(n: int, rng: random.Random) -> Game:
    """Monotone game with small nonnegative rational values.

    Each coalition is worth at least the best of its one-smaller subsets plus
    a random increment, which is zero about a third of the time.
    """
    values = [Fraction(0)] * (1 << n)
    for mask in sorted(range(1, 1 << n), key=lambda m: bin(m).count("1")):
        floor = max(values[mask & ~(1 << i)] for i in range(n) if mask >> i & 1)
        bump = Fraction(0) if rng.random() < 1 / 3 else Fraction(rng.randint(1, 4), rng.randint(1, 3))
        values[mask] = floor + bump
    return Game(default_labels(n), tuple(values))


def weight_grid(n: int) -> list[WeightFunction]:
    """Weakly decreasing weight functions of length ``n`` used in sweeps."""
    n = max(n, 1)
    pad = lambda head: tuple(list(head)[:n] + [head[-1]] * max(0, n - len(head)))  # noqa: E731
    return [
        WeightFunction.constant(n),
        WeightFunction(tuple(Fraction(1, 2**k) for k in range(n))),
        WeightFunction(pad((2, 1, 1, 0))),
        WeightFunction(tuple(Fraction(1, k) for k in range(1, n + 1))),
        WeightFunction(pad((1, 0))),
    ]


@dataclass
class GameVerdict:
    game: Game
    solvable: bool
    reports: dict[str, PropertyReport] = field(default_factory=dict)
    oracle_agrees: bool = True
    i4ea_modes_agree: bool = True

    @property
    def holds(self) -> bool:
        return self.oracle_agrees and self.i4ea_modes_agree and all(r.holds for r in self.reports.values())

    def describe(self) -> str:
        return " | ".join("+".join(c) for c in self.game.minimal_winning())


@dataclass
class SweepResult:
    mechanism: str
    verdicts: list[GameVerdict] = field(default_factory=list)

    @property
    def failures(self) -> list[GameVerdict]:
        return [v for v in self.verdicts if not v.holds]

    def counts(self) -> dict[str, int]:
        out = {"games": len(self.verdicts), "failed_games": len(self.failures)}
        for v in self.verdicts:
            for name, report in v.reports.items():
                key = f"{name}_fail"
                out[key] = out.get(key, 0) + (not report.holds)
        out["oracle_mismatch"] = sum(not v.oracle_agrees for v in self.verdicts)
        out["i4ea_mode_mismatch"] = sum(not v.i4ea_modes_agree for v in self.verdicts)
        return out


SWEEP_PROPERTIES = ("sf", "oir", "i4ea", "mos")


def verify_game(
    game: Game,
    mechanism: MechanismLike,
    properties: Sequence[str] = SWEEP_PROPERTIES,
    *,
    solvable: bool | None = None,
) -> GameVerdict:
    """Run the selected checks on one game, sharing one memo table.

    Also confirms the two Shapley oracles agree and, when I4EA is checked,
    that the adjacent-swap and all-pairs variants give the same verdict.
    """
    table = OrderTable(game, mechanism)
    sv = shapley_subset(game)
    verdict = GameVerdict(game, is_solvable(game).solvable if solvable is None else solvable)
    verdict.oracle_agrees = shapley_permutation(game) == sv
    for name in properties:
        if name == "sf":
            verdict.reports[name] = check_sf(game, mechanism, table=table, sv=sv)
        elif name == "oir":
            verdict.reports[name] = check_oir(game, mechanism, table=table)
        elif name == "i4ea":
            adjacent = check_i4ea(game, mechanism, table=table)
            full = check_i4ea(game, mechanism, table=table, strict=True)
            verdict.reports[name] = adjacent
            verdict.i4ea_modes_agree = adjacent.holds == full.holds
        elif name == "mos":
            verdict.reports[name] = check_mos(game, mechanism, table=table)
        else:
            raise ValueError(f"unknown sweep property {name!r}")
    return verdict


def run_sweep(
    games: Sequence[SweepGame] | Iterator[SweepGame],
    mechanism: MechanismLike,
    properties: Sequence[str] = SWEEP_PROPERTIES,
) -> SweepResult:
    result = SweepResult(mechanism_name(mechanism))
    for sg in games:
        result.verdicts.append(verify_game(sg.game, mechanism, properties, solvable=sg.solvable))
    return result
