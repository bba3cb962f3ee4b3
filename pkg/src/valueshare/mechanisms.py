"""Online value-sharing mechanisms: RFC, WVS and EVS, plus the layered extension.

A mechanism is any callable ``(game, order) -> Allocation``.  Online
execution applies it to every local game along the order, so the cumulative
share of a player after ``k`` arrivals is the mechanism's output on the
first ``k`` players.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .game import (
    ArrivalOrder,
    Game,
    GameError,
    Shares,
    as_fraction,
    format_fraction,
    local_game,
)
from .shapley import decompose_layers
from .structure import minimal_critical_prefix, order_structure


class MechanismError(GameError):
    pass


@dataclass(frozen=True)
class Allocation(Shares):
    """Per-player shares of ``v(N)`` for one order.

    ``warning`` is set when WVS met an unsolvable configuration and fell back
    to giving the whole value to the marginal player.
    """

    warning: bool = False


def _allocation(g: Game, shares: dict[int, Fraction], warning: bool = False) -> Allocation:
    return Allocation(
        g.labels, tuple(shares.get(i, Fraction(0)) for i in range(g.n)), warning
    )


# -- weight functions --------------------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """Weakly decreasing weights ``w(1), w(2), ...`` with ``w(1) > 0``."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        w = tuple(as_fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise MechanismError("weight function needs at least one entry")
        if w[0] <= 0:
            raise MechanismError("w(1) must be positive")
        if any(x < 0 for x in w):
            raise MechanismError("weights must be nonnegative")
        if any(a < b for a, b in zip(w, w[1:])):
            raise MechanismError(f"weights must be weakly decreasing: {self.render()}")

    @classmethod
    def constant(cls, length: int, value: int | Fraction = 1) -> WeightFunction:
        return cls(tuple([Fraction(value)] * length))

    @classmethod
    def parse(cls, text: str) -> WeightFunction:
        """Parse ``"1,1,1/2"``."""
        parts = [p for p in (s.strip() for s in text.split(",")) if p]
        try:
            return cls(tuple(as_fraction(p) for p in parts))
        except GameError as exc:
            raise MechanismError(f"bad weight list {text!r}: {exc}") from None

    def __len__(self) -> int:
        return len(self.weights)

    def __call__(self, k: int) -> Fraction:
        if not 1 <= k <= len(self.weights):
            raise MechanismError(f"w({k}) requested but only w(1..{len(self.weights)}) is defined")
        return self.weights[k - 1]

    def total(self, m: int) -> Fraction:
        """``w(1) + ... + w(m)``."""
        if m > len(self.weights):
            self(m)
        return sum(self.weights[:m], Fraction(0))

    def render(self) -> str:
        return ",".join(format_fraction(x) for x in self.weights)


# -- 0-1 mechanisms ----------------------------------------------------------


def rfc_allocate(g: Game, order: ArrivalOrder) -> Allocation:
    """Give the whole unit to the first critical player."""
    st = order_structure(g, order)
    if not st.critical:
        return _allocation(g, {})
    return _allocation(g, {st.critical[0]: Fraction(1)})


def wvs_allocate(g: Game, order: ArrivalOrder, w: WeightFunction) -> Allocation:
    st = order_structure(g, order)
    if st.marginal is None:
        return _allocation(g, {})
    marginal = st.marginal
    m = len(st.critical)
    m_prime = minimal_critical_prefix(g, order).local_critical_count
    if m_prime > m == 1:
        return _allocation(g, {marginal: Fraction(1)}, warning=True)

    shares = {marginal: w(m_prime) / w.total(m_prime)}
    rest = 1 - shares[marginal]
    others = st.critical[:-1]
    if others:
        norm = w.total(m - 1)
        for t, j in enumerate(others, start=1):
            shares[j] = w(t) / norm * rest
    return _allocation(g, shares)


def evs_allocate(g: Game, order: ArrivalOrder) -> Allocation:
    """WVS with constant weights: the marginal player gets ``1/m'`` and the
    other critical players split the remainder equally."""
    return wvs_allocate(g, order, WeightFunction.constant(max(g.n, 1)))


# -- mechanism objects -------------------------------------------------------


@dataclass(frozen=True)
class Mechanism:
    """A named allocation rule; calling it allocates for ``(game, order)``."""

    name: str
    rule: Callable[[Game, ArrivalOrder], Allocation] = field(compare=False)

    def __call__(self, g: Game, order: ArrivalOrder) -> Allocation:
        return self.rule(g, order)

    def __str__(self) -> str:
        return self.name


RFC = Mechanism("rfc", rfc_allocate)
EVS = Mechanism("evs", evs_allocate)


def wvs(weights: WeightFunction | Sequence | str) -> Mechanism:
    if isinstance(weights, str):
        weights = WeightFunction.parse(weights)
    elif not isinstance(weights, WeightFunction):
        weights = WeightFunction(tuple(weights))
    return Mechanism(f"wvs({weights.render()})", lambda g, o: wvs_allocate(g, o, weights))


def get_mechanism(name: str, weights: WeightFunction | Sequence | str | None = None) -> Mechanism:
    """Look up ``rfc`` / ``evs`` / ``wvs``; weights are required for, and only for, ``wvs``."""
    name = name.lower()
    if name == "wvs":
        if weights is None:
            raise MechanismError("mechanism 'wvs' needs a weight list")
        return wvs(weights)
    if weights is not None:
        raise MechanismError(f"mechanism {name!r} takes no weights")
    if name == "rfc":
        return RFC
    if name == "evs":
        return EVS
    raise MechanismError(f"unknown mechanism {name!r} (expected rfc, evs or wvs)")


# -- general monotone games --------------------------------------------------


def general_allocate(g: Game, order: ArrivalOrder, mechanism: Mechanism) -> Allocation:
    """Apply a 0-1 mechanism to each threshold layer and sum the scaled results."""
    totals = [Fraction(0)] * g.n
    warning = False
    for coefficient, layer in decompose_layers(g).layers:
        alloc = mechanism(layer, order)
        warning = warning or alloc.warning
        for i, share in enumerate(alloc.values):
            totals[i] += coefficient * share
    return Allocation(g.labels, tuple(totals), warning)


def layered(mechanism: Mechanism) -> Mechanism:
    return Mechanism(
        f"layered-{mechanism.name}", lambda g, o: general_allocate(g, o, mechanism)
    )


# -- online execution --------------------------------------------------------


@dataclass(frozen=True)
class TraceStep:
    player: str
    allocation: Allocation
    local_value: Fraction


@dataclass(frozen=True)
class OnlineTrace:
    order: tuple[str, ...]
    steps: tuple[TraceStep, ...]

    def final(self) -> Allocation:
        return self.steps[-1].allocation

    def cumulative(self, label: str) -> list[Fraction]:
        """Share of ``label`` after each arrival (0 before it arrives)."""
        return [step.allocation.get(label) for step in self.steps]

    def change_steps(self) -> list[int]:
        """1-based steps at which some cumulative share changed."""
        out = []
        previous: dict[str, Fraction] = {}
        for k, step in enumerate(self.steps, start=1):
            current = step.allocation.as_dict()
            if any(current[lab] != previous.get(lab, 0) for lab in current):
                out.append(k)
            previous = current
        return out


def online_run(g: Game, order: ArrivalOrder, mechanism: Callable[[Game, ArrivalOrder], Allocation]) -> OnlineTrace:
    steps = []
    for k in range(1, g.n + 1):
        loc = local_game(g, order, k)
        alloc = mechanism(loc.game, loc.order)
        steps.append(TraceStep(g.labels[order.sequence[k - 1]], alloc, loc.game.values[-1]))
    return OnlineTrace(order.labels(g), tuple(steps))
