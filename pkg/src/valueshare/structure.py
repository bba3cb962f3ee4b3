"""Order-dependent structure of 0-1 monotone games."""

from __future__ import annotations

from dataclasses import dataclass

from .game import ArrivalOrder, Game, GameError, mask_of, members

__all__ = [
    "OrderStructure",
    "MinimalCriticalPrefix",
    "SolvabilityResult",
    "order_structure",
    "minimal_critical_prefix",
    "minimal_critical_prefix_by_moves",
    "critical_in_prefix",
    "is_solvable",
]


@dataclass(frozen=True)
class OrderStructure:
    """Marginal and critical players of one arrival order.

    ``critical`` lists player indices by arrival; when value is created the
    marginal player is its last element.
    """

    marginal: int | None
    critical: tuple[int, ...]
    value_created: int

    @property
    def first_critical(self) -> int | None:
        return self.critical[0] if self.critical else None


@dataclass(frozen=True)
class MinimalCriticalPrefix:
    players: tuple[int, ...]
    local_critical_count: int

    @property
    def marginal(self) -> int:
        return self.players[-1]


@dataclass(frozen=True)
class SolvabilityResult:
    solvable: bool
    player: int | None = None
    coalition: int | None = None

    def __bool__(self) -> bool:
        return self.solvable


def critical_in_prefix(g: Game, seq: tuple[int, ...] | list[int]) -> tuple[int, ...]:
    """Players of ``seq`` whose removal drops the value of ``set(seq)`` to 0."""
    full = mask_of(seq)
    vals = g.values
    return tuple(j for j in seq if vals[full & ~(1 << j)] == 0)


def _marginal_position(g: Game, seq: tuple[int, ...]) -> int | None:
    vals = g.values
    mask = 0
    for k, i in enumerate(seq):
        mask |= 1 << i
        if vals[mask] == 1:
            return k
    return None


def order_structure(g: Game, order: ArrivalOrder) -> OrderStructure:
    g.require_zero_one_monotone()
    seq = order.sequence
    k = _marginal_position(g, seq)
    if k is None:
        return OrderStructure(None, (), 0)
    # players after the marginal one are never critical
    return OrderStructure(seq[k], critical_in_prefix(g, seq[: k + 1]), 1)


def minimal_critical_prefix(g: Game, order: ArrivalOrder) -> MinimalCriticalPrefix:
    """Shortest prefix ``S`` of ``order`` with ``v(S + marginal) = 1``, then the marginal player."""
    g.require_zero_one_monotone()
    seq = order.sequence
    k = _marginal_position(g, seq)
    if k is None:
        raise GameError("no value is created in this order")
    marginal = seq[k]
    vals = g.values
    mask = 1 << marginal
    cut = 0
    while vals[mask] != 1:
        mask |= 1 << seq[cut]
        cut += 1
    players = seq[:cut] + (marginal,)
    return MinimalCriticalPrefix(players, len(critical_in_prefix(g, players)))


def minimal_critical_prefix_by_moves(g: Game, order: ArrivalOrder) -> MinimalCriticalPrefix:
    """Same result as :func:`minimal_critical_prefix`, by stepping the marginal
    player forward until its predecessor is critical.  Kept as a cross-check."""
    g.require_zero_one_monotone()
    seq = order.sequence
    k = _marginal_position(g, seq)
    if k is None:
        raise GameError("no value is created in this order")
    current = list(seq[: k + 1])
    while len(current) > 1:
        before = current[-2]
        if before in critical_in_prefix(g, current):
            break
        del current[-2]
    players = tuple(current)
    return MinimalCriticalPrefix(players, len(critical_in_prefix(g, players)))


def is_solvable(g: Game) -> SolvabilityResult:
    """Search for a player who is the sole critical member of some winning
    coalition while being worthless alone.

    The witness returned is the first ``(player, coalition)`` in
    lexicographic order of player index, then sorted member tuple.
    """
    g.require_zero_one_monotone()
    vals = g.values
    witnesses = []
    for s in range(1, 1 << g.n):
        if vals[s] != 1:
            continue
        crit = [j for j in members(s) if vals[s & ~(1 << j)] == 0]
        if len(crit) == 1 and vals[1 << crit[0]] == 0:
            witnesses.append((crit[0], members(s), s))
    if not witnesses:
        return SolvabilityResult(True)
    player, _, coalition = min(witnesses)
    return SolvabilityResult(False, player, coalition)
