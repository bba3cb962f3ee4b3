"""Players, coalitions, games, arrival orders and local games.

Coalitions are plain ``int`` bitmasks: bit ``i`` is set when the player with
index ``i`` is a member.  Player indices follow the label-lexicographic order
fixed when a game is built, so ``mask_of`` / ``members`` round-trip
deterministically.
"""

from __future__ import annotations

import itertools
import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Any, Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

MAX_TABLE_PLAYERS = 16
MAX_ORDER_PLAYERS = 8


class GameError(ValueError):
    """Malformed game input or an operation applied to the wrong kind of game."""


class SizeLimitError(GameError):
    """The requested enumeration is larger than the supported bound."""


class PlayerId(NamedTuple):
    index: int
    label: str


# -- coalition helpers -------------------------------------------------------


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def size(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def submasks(mask: int) -> Iterator[int]:
    """All subsets of ``mask`` in increasing numeric order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def as_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise GameError(f"non-numeric value: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, float):
        # floats go through their shortest repr so 0.1 means 1/10
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            pass
    raise GameError(f"non-numeric value: {value!r}")


def format_fraction(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# -- games -------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class Game:
    """A characteristic-function game with an explicit table of ``2**n`` values.

    ``values[mask]`` is the worth of the coalition encoded by ``mask``.
    """

    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n > MAX_TABLE_PLAYERS:
            raise SizeLimitError(f"{n} players exceeds the table limit of {MAX_TABLE_PLAYERS}")
        if len(set(self.labels)) != n:
            raise GameError(f"duplicate player labels: {list(self.labels)}")
        if any(not isinstance(lab, str) or not lab for lab in self.labels):
            raise GameError("player labels must be nonempty strings")
        if any("," in lab for lab in self.labels):
            raise GameError("player labels may not contain commas")
        if len(self.values) != 1 << n:
            raise GameError(f"expected {1 << n} values, got {len(self.values)}")
        if self.values[0] != 0:
            raise GameError("the empty coalition must have value 0")
        if any(v < 0 for v in self.values):
            raise GameError("coalition values must be nonnegative")

    # construction

    @classmethod
    def from_function(cls, labels: Sequence[str], fn: Callable[[int], Any]) -> Game:
        """Tabulate ``fn(mask)`` for every coalition of ``labels`` (in the given order)."""
        n = len(labels)
        return cls(tuple(labels), tuple(as_fraction(fn(mask)) for mask in range(1 << n)))

    @classmethod
    def from_minimal_winning(
        cls, labels: Sequence[str], coalitions: Iterable[Iterable[str]]
    ) -> Game:
        """0-1 game worth 1 exactly on supersets of some listed coalition."""
        labels = tuple(sorted(labels))
        index = _index_map(labels)
        masks = []
        for coalition in coalitions:
            coalition = list(coalition)
            try:
                masks.append(mask_of(index[lab] for lab in coalition))
            except KeyError as exc:
                raise GameError(f"unknown player {exc.args[0]!r} in {coalition}") from None
        if any(m == 0 for m in masks):
            raise GameError("the empty coalition cannot be winning")
        for a, b in itertools.permutations(masks, 2):
            if is_subset(a, b) and a != b:
                warnings.warn(
                    "minimal winning coalitions are not an antichain: "
                    f"{_render(labels, a)} is contained in {_render(labels, b)}",
                    stacklevel=2,
                )
                break
        return cls.from_function(labels, lambda s: int(any(is_subset(m, s) for m in masks)))

    @classmethod
    def from_table(cls, labels: Sequence[str], table: Mapping[str, Any]) -> Game:
        """Build from ``{"A,B": value, ...}``; keys are comma-joined labels."""
        labels = tuple(sorted(labels))
        index = _index_map(labels)
        seen: dict[int, Fraction] = {}
        for key, value in table.items():
            parts = [p.strip() for p in key.split(",")] if key.strip() else []
            try:
                mask = mask_of(index[p] for p in parts)
            except KeyError as exc:
                raise GameError(f"unknown player {exc.args[0]!r} in table key {key!r}") from None
            if size(mask) != len(parts):
                raise GameError(f"repeated player in table key {key!r}")
            if mask in seen:
                raise GameError(f"coalition {key!r} listed twice")
            seen[mask] = as_fraction(value)
        seen.setdefault(0, Fraction(0))
        missing = [m for m in range(1 << len(labels)) if m not in seen]
        if missing:
            shown = ", ".join(repr(_render(labels, m)) for m in missing[:5])
            raise GameError(f"table is missing {len(missing)} coalition(s), e.g. {shown}")
        return cls.from_function(labels, seen.__getitem__)

    # accessors

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def grand(self) -> int:
        return (1 << self.n) - 1

    @property
    def players(self) -> tuple[PlayerId, ...]:
        return tuple(PlayerId(i, lab) for i, lab in enumerate(self.labels))

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def value(self, coalition: int | Iterable[str]) -> Fraction:
        if isinstance(coalition, int):
            return self.values[coalition]
        return self.values[self.mask(coalition)]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GameError(f"unknown player {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        return mask_of(self.index(lab) for lab in labels)

    def render(self, mask: int) -> str:
        return _render(self.labels, mask)

    @cached_property
    def _index(self) -> dict[str, int]:
        return _index_map(self.labels)

    # classification

    @cached_property
    def is_zero_one(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    @cached_property
    def is_monotone(self) -> bool:
        return is_monotone(self)

    @property
    def kind(self) -> frozenset[str]:
        flags = set()
        if self.is_monotone:
            flags.add("monotone")
        if self.is_zero_one:
            flags.add("zero_one")
        return frozenset(flags)

    def require_zero_one_monotone(self) -> None:
        if not (self.is_zero_one and self.is_monotone):
            raise GameError("operation requires a 0-1 monotone game")

    def scaled(self, factor: Any) -> Game:
        factor = as_fraction(factor)
        return Game(self.labels, tuple(v * factor for v in self.values))

    def minimal_winning(self) -> list[tuple[str, ...]]:
        """Minimal coalitions of value 1 in a 0-1 monotone game, sorted."""
        self.require_zero_one_monotone()
        out = []
        for mask in range(1 << self.n):
            if self.values[mask] == 1 and all(
                self.values[mask & ~(1 << i)] == 0 for i in members(mask)
            ):
                out.append(tuple(self.labels[i] for i in members(mask)))
        return sorted(out, key=lambda c: (len(c), c))

    def to_document(self) -> dict[str, Any]:
        """Serializable document accepted by :func:`parse_game`."""
        if self.is_zero_one and self.is_monotone:
            return {
                "players": list(self.labels),
                "form": "minimal",
                "minimal_winning": [list(c) for c in self.minimal_winning()],
            }
        return {
            "players": list(self.labels),
            "form": "table",
            "table": {
                self.render(m): format_fraction(v) for m, v in enumerate(self.values) if m
            },
        }


def _index_map(labels: Sequence[str]) -> dict[str, int]:
    return {lab: i for i, lab in enumerate(labels)}


def _render(labels: Sequence[str], mask: int) -> str:
    return ",".join(labels[i] for i in members(mask))


def default_labels(n: int) -> tuple[str, ...]:
    if n <= 26:
        return tuple(chr(ord("A") + i) for i in range(n))
    return tuple(f"P{i:02d}" for i in range(n))


def is_monotone(g: Game) -> bool:
    """True iff adding any single player never lowers the value."""
    vals = g.values
    for mask in range(1 << g.n):
        v = vals[mask]
        for i in range(g.n):
            bit = 1 << i
            if not mask & bit and vals[mask | bit] < v:
                return False
    return True


def parse_game(document: str | Mapping[str, Any]) -> Game:
    """Parse a game document (JSON text or an already-decoded mapping).

    Two forms are accepted::

        {"players": ["A", "B", "C"], "form": "minimal",
         "minimal_winning": [["A", "B"], ["A", "C"]]}
        {"players": ["A", "B"], "form": "table",
         "table": {"A": 0, "B": "1/2", "A,B": 1}}
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise GameError(f"invalid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise GameError("game document must be an object")
    players = document.get("players")
    if not isinstance(players, list) or not all(isinstance(p, str) for p in players):
        raise GameError("'players' must be a list of strings")
    if len(players) > MAX_TABLE_PLAYERS:
        raise SizeLimitError(f"{len(players)} players exceeds the table limit of {MAX_TABLE_PLAYERS}")
    if len(set(players)) != len(players):
        raise GameError(f"duplicate player labels: {players}")
    form = document.get("form", "minimal" if "minimal_winning" in document else "table")
    if form == "minimal":
        coalitions = document.get("minimal_winning")
        if not isinstance(coalitions, list) or not all(isinstance(c, list) for c in coalitions):
            raise GameError("'minimal_winning' must be a list of label lists")
        return Game.from_minimal_winning(players, coalitions)
    if form == "table":
        table = document.get("table")
        if not isinstance(table, Mapping):
            raise GameError("'table' must be an object mapping coalitions to values")
        return Game.from_table(players, table)
    raise GameError(f"unknown game form {form!r}")


def load_game(path: str | Path) -> Game:
    return parse_game(Path(path).read_text(encoding="utf-8"))


# -- arrival orders ----------------------------------------------------------


@dataclass(frozen=True)
class ArrivalOrder:
    """A permutation of player indices ``0..n-1``; ``sequence[0]`` arrives first."""

    sequence: tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.sequence) != list(range(len(self.sequence))):
            raise GameError(f"not a permutation of 0..{len(self.sequence) - 1}: {self.sequence}")

    @classmethod
    def from_labels(cls, game: Game, labels: Sequence[str] | str) -> ArrivalOrder:
        if isinstance(labels, str):
            labels = [p.strip() for p in labels.replace("-", ",").split(",") if p.strip()]
        if len(labels) != game.n or set(labels) != set(game.labels):
            raise GameError(f"order {list(labels)} is not a permutation of {list(game.labels)}")
        return cls(tuple(game.index(lab) for lab in labels))

    def __len__(self) -> int:
        return len(self.sequence)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sequence)

    @cached_property
    def position(self) -> tuple[int, ...]:
        """Inverse permutation: ``position[i]`` is player ``i``'s 0-based arrival slot."""
        pos = [0] * len(self.sequence)
        for k, i in enumerate(self.sequence):
            pos[i] = k
        return tuple(pos)

    def prefix(self, k: int) -> int:
        return mask_of(self.sequence[:k])

    def predecessors(self, i: int) -> int:
        """Players arriving no later than ``i``, including ``i`` itself."""
        return self.prefix(self.position[i] + 1)

    def precedes(self, i: int, j: int) -> bool:
        return self.position[i] < self.position[j]

    def labels(self, game: Game) -> tuple[str, ...]:
        return tuple(game.labels[i] for i in self.sequence)


def all_orders(n: int) -> Iterator[ArrivalOrder]:
    """Every arrival order of ``n`` players, in lexicographic rank."""
    if n > MAX_ORDER_PLAYERS:
        raise SizeLimitError(f"enumerating {n}! orders exceeds the limit of {MAX_ORDER_PLAYERS} players")
    for perm in itertools.permutations(range(n)):
        yield ArrivalOrder(perm)


# -- local games -------------------------------------------------------------


@dataclass(frozen=True)
class LocalGame:
    """The state after the first ``len(prefix_sequence)`` arrivals.

    ``game`` is the parent game restricted to the prefix, re-indexed over the
    prefix players in their parent index order; ``order`` is the induced
    arrival order inside that restricted game.
    """

    parent: Game
    prefix_sequence: tuple[int, ...]
    game: Game
    order: ArrivalOrder

    @property
    def prefix(self) -> int:
        return mask_of(self.prefix_sequence)

    def parent_index(self, local_index: int) -> int:
        return members(self.prefix)[local_index]


def restrict(g: Game, coalition: int) -> Game:
    """The subgame on ``coalition`` (players keep their relative index order)."""
    idx = members(coalition)
    if coalition == g.grand:
        return g
    vals = g.values
    table = []
    for local in range(1 << len(idx)):
        parent = 0
        for b, i in enumerate(idx):
            if local >> b & 1:
                parent |= 1 << i
        table.append(vals[parent])
    return Game(tuple(g.labels[i] for i in idx), tuple(table))


def local_game(g: Game, order: ArrivalOrder, k: int) -> LocalGame:
    """Local game on the first ``k`` arrivals of ``order``."""
    if not 0 <= k <= g.n:
        raise GameError(f"prefix length {k} out of range 0..{g.n}")
    if len(order) != g.n:
        raise GameError("order does not match the game's player count")
    seq = order.sequence[:k]
    return local_game_for_prefix(g, seq)


def local_game_for_prefix(g: Game, seq: Sequence[int], sub: Game | None = None) -> LocalGame:
    seq = tuple(seq)
    mask = mask_of(seq)
    if sub is None:
        sub = restrict(g, mask)
    remap = {p: li for li, p in enumerate(members(mask))}
    return LocalGame(g, seq, sub, ArrivalOrder(tuple(remap[p] for p in seq)))


# -- symmetry ----------------------------------------------------------------


def are_symmetric(g: Game, i: int, j: int) -> bool:
    if i == j:
        return True
    rest = g.grand & ~(1 << i) & ~(1 << j)
    bi, bj = 1 << i, 1 << j
    vals = g.values
    return all(vals[s | bi] == vals[s | bj] for s in submasks(rest))


def symmetric_players(g: Game) -> set[frozenset[int]]:
    """All unordered pairs of interchangeable players."""
    return {
        frozenset((i, j))
        for i, j in itertools.combinations(range(g.n), 2)
        if are_symmetric(g, i, j)
    }


# -- share vectors -----------------------------------------------------------


@dataclass(frozen=True)
class Shares:
    """Exact per-player amounts, aligned with ``labels`` (a game's player order)."""

    labels: tuple[str, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.values):
            raise ValueError("labels and values differ in length")

    def __getitem__(self, key: int | str) -> Fraction:
        if isinstance(key, str):
            try:
                key = self.labels.index(key)
            except ValueError:
                raise KeyError(key) from None
        return self.values[key]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def get(self, label: str, default: Fraction = Fraction(0)) -> Fraction:
        try:
            return self[label]
        except KeyError:
            return default

    @property
    def total(self) -> Fraction:
        return sum(self.values, Fraction(0))

    def as_dict(self) -> dict[str, Fraction]:
        return dict(zip(self.labels, self.values))

    def render(self) -> str:
        return " ".join(f"{lab}={format_fraction(v)}" for lab, v in zip(self.labels, self.values))
