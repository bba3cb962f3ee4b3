"""Order-level metrics and exhaustive property checks.

Every check walks the ``n!`` arrival orders in lexicographic rank, so the
first counterexample reported is the minimal one in (order rank, step).
Allocations of local games are memoised per arrival prefix in an
:class:`OrderTable`; pass one table to several checks to share that work.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Any, Callable, Iterable, Sequence

from .game import (
    MAX_ORDER_PLAYERS,
    ArrivalOrder,
    Game,
    LocalGame,
    Shares,
    SizeLimitError,
    all_orders,
    format_fraction,
    local_game_for_prefix,
    mask_of,
    restrict,
    symmetric_players,
)
from .mechanisms import Allocation
from .shapley import shapley_subset
from .structure import order_structure

MechanismLike = Callable[[Game, ArrivalOrder], Allocation]


def mechanism_name(mechanism: Any) -> str:
    return getattr(mechanism, "name", None) or getattr(mechanism, "__name__", repr(mechanism))


class OrderTable:
    """Memoised allocations of ``mechanism`` on every arrival prefix of ``game``."""

    def __init__(self, game: Game, mechanism: MechanismLike):
        if game.n > MAX_ORDER_PLAYERS:
            raise SizeLimitError(
                f"exhaustive checks need n <= {MAX_ORDER_PLAYERS}, got {game.n}"
            )
        self.game = game
        self.mechanism = mechanism
        self._subgames: dict[int, Game] = {}
        self._symmetric: dict[int, set[frozenset[int]]] = {}
        self._allocations: dict[tuple[int, ...], Allocation] = {}

    def subgame(self, mask: int) -> Game:
        sub = self._subgames.get(mask)
        if sub is None:
            sub = self._subgames[mask] = restrict(self.game, mask)
        return sub

    def local(self, seq: Sequence[int]) -> LocalGame:
        return local_game_for_prefix(self.game, seq, self.subgame(mask_of(seq)))

    def allocation(self, seq: Sequence[int]) -> Allocation:
        """Mechanism output on the local game of the arrival prefix ``seq``."""
        seq = tuple(seq)
        alloc = self._allocations.get(seq)
        if alloc is None:
            if len(seq) == self.game.n:
                alloc = self.mechanism(self.game, ArrivalOrder(seq))
            else:
                loc = self.local(seq)
                alloc = self.mechanism(loc.game, loc.order)
            self._allocations[seq] = alloc
        return alloc

    def local_symmetric(self, seq: Sequence[int]) -> set[frozenset[str]]:
        mask = mask_of(seq)
        pairs = self._symmetric.get(mask)
        if pairs is None:
            pairs = self._symmetric[mask] = symmetric_players(self.subgame(mask))
        labels = self.subgame(mask).labels
        return {frozenset(labels[i] for i in p) for p in pairs}

    def orders(self) -> Iterable[ArrivalOrder]:
        return all_orders(self.game.n)


def _table(g: Game, mechanism: MechanismLike, table: OrderTable | None) -> OrderTable:
    if table is not None:
        if table.game is not g and table.game != g:
            raise ValueError("order table belongs to a different game")
        return table
    return OrderTable(g, mechanism)


# -- metrics -----------------------------------------------------------------


def shapley_distance(alloc: Shares, sv: Shares) -> tuple[tuple[Fraction, ...], Fraction]:
    """Per-player squared gaps ``(SV_i - phi_i)**2`` and their sum."""
    if tuple(alloc.labels) != tuple(sv.labels):
        raise ValueError("allocation and Shapley vector cover different players")
    per_player = tuple((s - a) ** 2 for a, s in zip(alloc.values, sv.values))
    return per_player, sum(per_player, Fraction(0))


def egalitarian_welfare(g: Game, order: ArrivalOrder, alloc: Shares) -> Fraction | None:
    """Smallest share among critical players; ``None`` when no value is created."""
    crit = order_structure(g, order).critical
    if not crit:
        return None
    return min(alloc.values[i] for i in crit)


@dataclass(frozen=True)
class OrderMetrics:
    order: tuple[str, ...]
    allocation: Allocation
    sd_per_player: tuple[Fraction, ...]
    sd: Fraction
    ew: Fraction | None


@dataclass(frozen=True)
class MetricReport:
    """Per-order SD/EW and their exact means over all orders.

    ``expected_ew`` averages only orders whose EW is defined (value created);
    ``ew_orders`` counts them.
    """

    mechanism: str
    shapley: Shares
    rows: tuple[OrderMetrics, ...]
    expected_sd: Fraction
    expected_sd_per_player: tuple[Fraction, ...]
    expected_ew: Fraction | None
    ew_orders: int

    def to_document(self, decimals: int | None = None) -> dict[str, Any]:
        return {
            "mechanism": self.mechanism,
            "shapley": rational_map(self.shapley.labels, self.shapley.values, decimals),
            "expected_sd": rational(self.expected_sd, decimals),
            "expected_sd_per_player": rational_map(
                self.shapley.labels, self.expected_sd_per_player, decimals
            ),
            "expected_ew": None if self.expected_ew is None else rational(self.expected_ew, decimals),
            "ew_convention": "mean over orders that create value",
            "ew_orders": self.ew_orders,
            "orders": len(self.rows),
        }


def expected_metrics(
    g: Game, mechanism: MechanismLike, *, table: OrderTable | None = None, sv: Shares | None = None
) -> MetricReport:
    table = _table(g, mechanism, table)
    sv = sv if sv is not None else shapley_subset(g)
    zero_one = g.is_zero_one and g.is_monotone
    rows = []
    sd_sum = Fraction(0)
    per_sum = [Fraction(0)] * g.n
    ew_sum = Fraction(0)
    ew_count = 0
    for order in table.orders():
        alloc = table.allocation(order.sequence)
        per, total = shapley_distance(alloc, sv)
        ew = egalitarian_welfare(g, order, alloc) if zero_one else None
        rows.append(OrderMetrics(order.labels(g), alloc, per, total, ew))
        sd_sum += total
        per_sum = [a + b for a, b in zip(per_sum, per)]
        if ew is not None:
            ew_sum += ew
            ew_count += 1
    count = len(rows)
    return MetricReport(
        mechanism_name(mechanism),
        sv,
        tuple(rows),
        sd_sum / count,
        tuple(p / count for p in per_sum),
        ew_sum / ew_count if ew_count else None,
        ew_count,
    )


# -- property reports --------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    """A concrete violation: the orders involved, the player(s) and their shares."""

    orders: tuple[tuple[str, ...], ...]
    players: tuple[str, ...] = ()
    values: tuple[Fraction, ...] = ()
    step: int | None = None
    detail: str = ""

    @property
    def player(self) -> str | None:
        return self.players[0] if self.players else None

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "orders": ["-".join(o) for o in self.orders],
            "players": list(self.players),
            "values": [format_fraction(v) for v in self.values],
        }
        if self.step is not None:
            doc["step"] = self.step
        if self.detail:
            doc["detail"] = self.detail
        return doc

    def render(self) -> str:
        parts = [" -> ".join("-".join(o) for o in self.orders)]
        if self.players:
            parts.append("player " + ",".join(self.players))
        if self.step is not None:
            parts.append(f"step {self.step}")
        if self.values:
            parts.append("shares " + " vs ".join(format_fraction(v) for v in self.values))
        if self.detail:
            parts.append(self.detail)
        return "; ".join(parts)


@dataclass
class PropertyReport:
    name: str
    mechanism: str
    counterexamples: list[Counterexample] = field(default_factory=list)
    checked: int = 0
    note: str = ""

    @property
    def holds(self) -> bool:
        return not self.counterexamples

    @property
    def counterexample(self) -> Counterexample | None:
        return self.counterexamples[0] if self.counterexamples else None

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "fails"

    def to_document(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "property": self.name,
            "mechanism": self.mechanism,
            "verdict": self.verdict,
            "checked": self.checked,
        }
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample.to_document()
            doc["counterexamples_found"] = len(self.counterexamples)
        if self.note:
            doc["note"] = self.note
        return doc

    def render(self) -> str:
        line = f"{self.name}: {self.verdict} ({self.checked} checks)"
        if self.counterexample is not None:
            line += f" -- {self.counterexample.render()}"
        return line


class _Collector:
    def __init__(self, report: PropertyReport, limit: int | None):
        self.report = report
        self.limit = limit

    def add(self, cx: Counterexample) -> None:
        self.report.counterexamples.append(cx)

    @property
    def full(self) -> bool:
        return self.limit is not None and len(self.report.counterexamples) >= self.limit


def _labels(g: Game, seq: Sequence[int]) -> tuple[str, ...]:
    return tuple(g.labels[i] for i in seq)


def check_efficiency(
    g: Game, mechanism: MechanismLike, *, table: OrderTable | None = None, limit: int | None = 1
) -> PropertyReport:
    """Shares are nonnegative and sum to ``v(N)`` on every order."""
    table = _table(g, mechanism, table)
    report = PropertyReport("efficiency", mechanism_name(mechanism))
    out = _Collector(report, limit)
    target = g.values[g.grand]
    for order in table.orders():
        alloc = table.allocation(order.sequence)
        report.checked += 1
        negative = [lab for lab, v in zip(alloc.labels, alloc.values) if v < 0]
        if alloc.total != target or negative:
            detail = f"total {format_fraction(alloc.total)} != {format_fraction(target)}"
            if negative:
                detail = "negative share for " + ",".join(negative)
            out.add(Counterexample((order.labels(g),), (), alloc.values, detail=detail))
            if out.full:
                break
    return report


def check_oir(
    g: Game, mechanism: MechanismLike, *, table: OrderTable | None = None, limit: int | None = 1
) -> PropertyReport:
    """Cumulative shares never decrease as further players arrive.

    Consecutive prefixes suffice: nested prefixes of one order form a chain.
    """
    table = _table(g, mechanism, table)
    report = PropertyReport("oir", mechanism_name(mechanism))
    out = _Collector(report, limit)
    for order in table.orders():
        seq = order.sequence
        prev = table.allocation(seq[:1])
        for k in range(2, g.n + 1):
            cur = table.allocation(seq[:k])
            for lab, before in zip(prev.labels, prev.values):
                report.checked += 1
                after = cur[lab]
                if after < before:
                    out.add(Counterexample((order.labels(g),), (lab,), (before, after), step=k))
                    if out.full:
                        return report
            prev = cur
    return report


def _moved(seq: tuple[int, ...], src: int, dst: int) -> tuple[int, ...]:
    rest = list(seq)
    player = rest.pop(src)
    rest.insert(dst, player)
    return tuple(rest)


def check_i4ea(
    g: Game,
    mechanism: MechanismLike,
    *,
    strict: bool = False,
    table: OrderTable | None = None,
    limit: int | None = 1,
) -> PropertyReport:
    """No player gains by arriving later while the others keep their order.

    By default only single-step delays (adjacent swaps) are compared, which
    suffices by chaining; ``strict=True`` compares every delay distance.
    """
    table = _table(g, mechanism, table)
    report = PropertyReport("i4ea" + ("-strict" if strict else ""), mechanism_name(mechanism))
    out = _Collector(report, limit)
    n = g.n
    for order in table.orders():
        seq = order.sequence
        alloc = table.allocation(seq)
        for pos, i in enumerate(seq):
            later = range(pos + 1, n) if strict else range(pos + 1, min(pos + 2, n))
            for dst in later:
                delayed = _moved(seq, pos, dst)
                report.checked += 1
                early, late = alloc.values[i], table.allocation(delayed).values[i]
                if late > early:
                    out.add(
                        Counterexample(
                            (order.labels(g), _labels(g, delayed)), (g.labels[i],), (early, late)
                        )
                    )
                    if out.full:
                        return report
    return report


def expected_shares(
    g: Game, mechanism: MechanismLike, *, table: OrderTable | None = None
) -> Shares:
    table = _table(g, mechanism, table)
    totals = [Fraction(0)] * g.n
    for order in table.orders():
        for i, share in enumerate(table.allocation(order.sequence).values):
            totals[i] += share
    count = factorial(g.n)
    return Shares(g.labels, tuple(t / count for t in totals))


def check_sf(
    g: Game,
    mechanism: MechanismLike,
    *,
    table: OrderTable | None = None,
    sv: Shares | None = None,
    limit: int | None = None,
) -> PropertyReport:
    """Average share over all orders equals the Shapley value, exactly."""
    table = _table(g, mechanism, table)
    report = PropertyReport("sf", mechanism_name(mechanism))
    out = _Collector(report, limit)
    sv = sv if sv is not None else shapley_subset(g)
    mean = expected_shares(g, mechanism, table=table)
    for lab, got, want in zip(g.labels, mean.values, sv.values):
        report.checked += 1
        if got != want:
            out.add(Counterexample((), (lab,), (got, want), detail="expected share vs Shapley value"))
            if out.full:
                break
    return report


def _prefix_lengths(n: int, local: bool) -> range:
    return range(1, n + 1) if local else range(n, n + 1)


def check_mos(
    g: Game,
    mechanism: MechanismLike,
    *,
    local: bool = True,
    table: OrderTable | None = None,
    limit: int | None = 1,
) -> PropertyReport:
    """Of two symmetric players, the earlier arrival gets a weakly larger share.

    With ``local=True`` every local game along every order is checked as a
    game in its own right (symmetry taken in that local game).
    """
    table = _table(g, mechanism, table)
    report = PropertyReport("mos", mechanism_name(mechanism))
    out = _Collector(report, limit)
    for order in table.orders():
        seq = order.sequence
        for k in _prefix_lengths(g.n, local):
            prefix = seq[:k]
            pairs = table.local_symmetric(prefix)
            if not pairs:
                continue
            alloc = table.allocation(prefix)
            labels = _labels(g, prefix)
            for a, b in itertools.combinations(range(k), 2):
                first, second = labels[a], labels[b]
                if frozenset((first, second)) not in pairs:
                    continue
                report.checked += 1
                if alloc[first] < alloc[second]:
                    out.add(
                        Counterexample(
                            (order.labels(g),), (first, second), (alloc[first], alloc[second]), step=k
                        )
                    )
                    if out.full:
                        return report
    return report


def check_critical_order(
    g: Game,
    mechanism: MechanismLike,
    *,
    local: bool = True,
    table: OrderTable | None = None,
    limit: int | None = 1,
) -> PropertyReport:
    """Earlier critical players receive weakly larger shares than later ones."""
    g.require_zero_one_monotone()
    table = _table(g, mechanism, table)
    report = PropertyReport("critical_order", mechanism_name(mechanism))
    out = _Collector(report, limit)
    for order in table.orders():
        seq = order.sequence
        for k in _prefix_lengths(g.n, local):
            loc = table.local(seq[:k])
            crit = order_structure(loc.game, loc.order).critical
            if len(crit) < 2:
                continue
            alloc = table.allocation(seq[:k])
            for a, b in zip(crit, crit[1:]):
                report.checked += 1
                if alloc.values[a] < alloc.values[b]:
                    labs = (loc.game.labels[a], loc.game.labels[b])
                    out.add(
                        Counterexample(
                            (order.labels(g),), labs, (alloc.values[a], alloc.values[b]), step=k
                        )
                    )
                    if out.full:
                        return report
    return report


def check_critical_support(
    g: Game, mechanism: MechanismLike, *, table: OrderTable | None = None, limit: int | None = 1
) -> PropertyReport:
    """On orders creating value, critical players share exactly 1, nobody else
    gets anything, and shares are fixed from the marginal player's arrival on."""
    g.require_zero_one_monotone()
    table = _table(g, mechanism, table)
    report = PropertyReport("critical_support", mechanism_name(mechanism))
    out = _Collector(report, limit)
    for order in table.orders():
        st = order_structure(g, order)
        if st.marginal is None:
            continue
        report.checked += 1
        seq = order.sequence
        alloc = table.allocation(seq)
        crit = set(st.critical)
        labels = order.labels(g)
        on_critical = sum((alloc.values[j] for j in crit), Fraction(0))
        leaked = [g.labels[j] for j in range(g.n) if j not in crit and alloc.values[j] != 0]
        problem = None
        if on_critical != 1:
            problem = Counterexample(
                (labels,), _labels(g, st.critical), (on_critical,), detail="critical shares do not sum to 1"
            )
        elif leaked:
            problem = Counterexample(
                (labels,), tuple(leaked), tuple(alloc[lab] for lab in leaked),
                detail="share given to a non-critical player",
            )
        else:
            fire = order.position[st.marginal] + 1
            for k in range(1, g.n + 1):
                step_alloc = table.allocation(seq[:k])
                if k < fire:
                    bad = any(v != 0 for v in step_alloc.values)
                else:
                    bad = any(step_alloc.values[li] != alloc[lab] for li, lab in enumerate(step_alloc.labels))
                if bad:
                    problem = Counterexample(
                        (labels,), (), step_alloc.values, step=k,
                        detail=f"shares not fixed at the marginal arrival (step {fire})",
                    )
                    break
        if problem is not None:
            out.add(problem)
            if out.full:
                break
    return report


def relabel(g: Game, mapping: dict[str, str]) -> Game:
    """Same game with every player renamed through ``mapping``."""
    new_labels = tuple(sorted(mapping[lab] for lab in g.labels))
    where = {mapping[lab]: i for i, lab in enumerate(g.labels)}
    old_index = [where[lab] for lab in new_labels]

    def value(mask: int) -> Fraction:
        return g.values[mask_of(old_index[b] for b in range(g.n) if mask >> b & 1)]

    return Game.from_function(new_labels, value)


def check_anonymity(
    g: Game,
    mechanism: MechanismLike,
    probes: Iterable[dict[str, str]] | None = None,
    *,
    limit: int | None = 1,
) -> PropertyReport:
    """Renaming players (game and order alike) renames their shares.

    Only the given relabelings are probed; the default probes reverse the
    label order and rotate it by one.
    """
    report = PropertyReport("anonymity", mechanism_name(mechanism), note="relabeling probes only")
    out = _Collector(report, limit)
    if probes is None:
        labs = list(g.labels)
        probes = [dict(zip(labs, reversed(labs))), dict(zip(labs, labs[1:] + labs[:1]))]
    base = OrderTable(g, mechanism)
    for mapping in probes:
        h = relabel(g, mapping)
        other = OrderTable(h, mechanism)
        for order in base.orders():
            renamed = ArrivalOrder.from_labels(h, [mapping[lab] for lab in order.labels(g)])
            a, b = base.allocation(order.sequence), other.allocation(renamed.sequence)
            for lab in g.labels:
                report.checked += 1
                if a[lab] != b[mapping[lab]]:
                    out.add(
                        Counterexample(
                            (order.labels(g), renamed.labels(h)), (lab, mapping[lab]), (a[lab], b[mapping[lab]])
                        )
                    )
                    if out.full:
                        return report
    return report


# -- comparisons -------------------------------------------------------------


@dataclass(frozen=True)
class Comparison:
    """Side-by-side metrics; ``ew_dominates[a][b]`` is true when ``a``'s EW is
    at least ``b``'s on every order that creates value."""

    reports: tuple[MetricReport, ...]
    ew_dominates: dict[str, dict[str, bool]]


def compare_mechanisms(g: Game, mechanisms: Sequence[MechanismLike]) -> Comparison:
    sv = shapley_subset(g)
    reports = tuple(expected_metrics(g, m, sv=sv) for m in mechanisms)
    dominates: dict[str, dict[str, bool]] = {}
    for ra in reports:
        row = dominates.setdefault(ra.mechanism, {})
        for rb in reports:
            row[rb.mechanism] = all(
                x.ew is None or y.ew is None or x.ew >= y.ew for x, y in zip(ra.rows, rb.rows)
            )
    return Comparison(reports, dominates)


# -- serialization -----------------------------------------------------------


def rational(value: Fraction, decimals: int | None = None) -> Any:
    if decimals is None:
        return format_fraction(value)
    return {"exact": format_fraction(value), "decimal": f"{float(value):.{decimals}f}"}


def rational_map(labels: Sequence[str], values: Sequence[Fraction], decimals: int | None = None) -> dict[str, Any]:
    return {lab: rational(v, decimals) for lab, v in zip(labels, values)}


ALLOCATION_CSV_COLUMNS = ("order", "player", "share", "is_critical", "is_marginal")


def allocation_rows(g: Game, mechanism: MechanismLike) -> list[dict[str, str]]:
    """Long-form per-order allocations: one row per (order, player)."""
    table = OrderTable(g, mechanism)
    rows = []
    zero_one = g.is_zero_one and g.is_monotone
    for order in table.orders():
        alloc = table.allocation(order.sequence)
        st = order_structure(g, order) if zero_one else None
        name = "-".join(order.labels(g))
        for i in order.sequence:
            rows.append(
                {
                    "order": name,
                    "player": g.labels[i],
                    "share": format_fraction(alloc.values[i]),
                    "is_critical": str(st is not None and i in st.critical).lower(),
                    "is_marginal": str(st is not None and st.marginal == i).lower(),
                }
            )
    return rows
