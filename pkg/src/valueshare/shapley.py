"""Marginal contributions, exact Shapley values and threshold-layer decomposition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .game import (
    MAX_ORDER_PLAYERS,
    ArrivalOrder,
    Game,
    GameError,
    Shares,
    SizeLimitError,
)

ShapleyVector = Shares


def marginal_contribution(g: Game, order: ArrivalOrder, i: int) -> Fraction:
    before = order.predecessors(i)
    return g.values[before] - g.values[before & ~(1 << i)]


def shapley_permutation(g: Game) -> ShapleyVector:
    """Average marginal contribution over all ``n!`` arrival orders."""
    n = g.n
    if n > MAX_ORDER_PLAYERS:
        raise SizeLimitError(f"permutation Shapley needs n <= {MAX_ORDER_PLAYERS}, got {n}")
    vals = g.values
    totals = [Fraction(0)] * n
    for perm in itertools.permutations(range(n)):
        mask = 0
        prev = vals[0]
        for i in perm:
            mask |= 1 << i
            cur = vals[mask]
            if cur != prev:
                totals[i] += cur - prev
            prev = cur
    count = factorial(n)
    return Shares(g.labels, tuple(t / count for t in totals))


def shapley_subset(g: Game) -> ShapleyVector:
    """Coalition-weighted form: sum of ``|S|!(n-|S|-1)!/n!`` times ``v(S+i) - v(S)``."""
    n = g.n
    vals = g.values
    weight = [Fraction(factorial(s) * factorial(n - s - 1), factorial(n)) for s in range(n)]
    popcount = [bin(m).count("1") for m in range(1 << n)]
    out = []
    for i in range(n):
        bit = 1 << i
        total = Fraction(0)
        for s in range(1 << n):
            if s & bit:
                continue
            diff = vals[s | bit] - vals[s]
            if diff:
                total += weight[popcount[s]] * diff
        out.append(total)
    return Shares(g.labels, tuple(out))


@dataclass(frozen=True)
class LayerDecomposition:
    """``v = sum(coefficient * layer)`` with each layer a 0-1 monotone game."""

    layers: tuple[tuple[Fraction, Game], ...]

    def recompose(self) -> tuple[Fraction, ...]:
        if not self.layers:
            return ()
        width = len(self.layers[0][1].values)
        return tuple(
            sum((c * layer.values[m] for c, layer in self.layers), Fraction(0))
            for m in range(width)
        )

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(c for c, _ in self.layers)


def decompose_layers(g: Game) -> LayerDecomposition:
    """Split a monotone game into threshold games ``1[v(S) >= t]``.

    With distinct values ``0 = t0 < t1 < ... < tm`` the ``k``-th layer has
    coefficient ``tk - t(k-1)``.  The zero game decomposes into no layers.
    """
    if not g.is_monotone:
        raise GameError("layer decomposition requires a monotone game")
    thresholds = sorted(set(g.values))
    layers = []
    for lo, hi in zip(thresholds, thresholds[1:]):
        layer = Game(g.labels, tuple(Fraction(int(v >= hi)) for v in g.values))
        layers.append((hi - lo, layer))
    return LayerDecomposition(tuple(layers))
