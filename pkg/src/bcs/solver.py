"""Fast bottom-up solver for the unit-removal bidding game.

The production recursion is the reduced one: for each Left bid only the tie
and the Right overbids are examined, which is value-preserving because the
ruleset satisfies budget monotonicity, marker monotonicity, and a one-dollar
marker worth.  Left strict-win branches are evaluated only when enumerating
equilibrium bid pairs, and independently by :mod:`bcs.oracle`, which replays
the full three-branch recursion over the complete bid matrix as a
cross-check.

Only marker-Left values are stored.  The value of a position where Right
holds the marker is the zero-sum flip ``-row[q]``.  Row ``x`` depends only
on row ``x - 1``, so open-ended sweeps stream with a two-row working set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

from .automaton import convergence_bound
from .core import (
    BidPair,
    BidWinner,
    GameError,
    InfeasibleBid,
    OutcomeRow,
    OutcomeTable,
    OutOfRange,
    RichmanPosition,
    Side,
)


class ConvergenceBoundExceeded(GameError):
    """Raised when same-parity rows still differ at the convergence bound."""


@dataclass(frozen=True)
class EquilibriumCell:
    """Value of one cell plus every bid pair that realizes it."""

    value: int
    equilibrium_bids: frozenset[BidPair]
    canonical_bid: BidPair


class UnitaryTable:
    """Solved marker-Left values for heap sizes ``0..x_max``, all budgets.

    ``row(x)[p]`` is the equilibrium score of heap ``x`` when Left holds
    ``p`` dollars and the marker.
    """

    def __init__(self, tb: int, rows: list[tuple[int, ...]]):
        self.tb = tb
        self._rows = rows

    @property
    def x_max(self) -> int:
        return len(self._rows) - 1

    def row(self, x: int) -> tuple[int, ...]:
        if not 0 <= x <= self.x_max:
            raise OutOfRange(f"heap {x} outside solved range 0..{self.x_max}")
        return self._rows[x]

    def cell(self, x: int, p: int) -> EquilibriumCell:
        """Full equilibrium cell (value plus realizing bid pairs)."""
        pos = RichmanPosition(tb=self.tb, heap=x, left_budget=p, marker=Side.LEFT)
        bids = equilibrium_bids(self, pos)
        return EquilibriumCell(
            value=self.row(x)[p],
            equilibrium_bids=bids,
            canonical_bid=min(bids),
        )

    def to_outcome_table(self) -> OutcomeTable:
        return OutcomeTable(
            tb=self.tb,
            rows=tuple(
                OutcomeRow(heap=x, marker_left_values=row)
                for x, row in enumerate(self._rows)
            ),
        )


def _next_row(tb: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    """One step of the reduced recursion.

    For Left bidding ``l`` (never more than either budget), Right either
    accepts the tie, worth ``1 - prev[q + l]`` after the payment and the
    marker change hands, or overbids with some ``r`` in ``l+1..q``, worth
    ``prev[p + r] - 1``.  Right minimizes, Left maximizes.
    """
    row = []
    for p in range(tb + 1):
        q = tb - p
        best = None
        for l in range(min(p, q) + 1):
            worst = 1 - prev[q + l]
            for r in range(l + 1, q + 1):
                worst = min(worst, prev[p + r] - 1)
            best = worst if best is None else max(best, worst)
        row.append(best)
    return tuple(row)


def iter_rows(tb: int) -> Iterator[tuple[int, ...]]:
    """Stream rows for heap sizes 0, 1, 2, ... keeping O(tb) state."""
    if tb < 0:
        raise ValueError(f"total budget must be >= 0, got {tb}")
    row = tuple([0] * (tb + 1))
    while True:
        yield row
        row = _next_row(tb, row)


def solve(tb: int, x_max: int) -> UnitaryTable:
    """Solve every heap size up to ``x_max`` for total budget ``tb``."""
    if x_max < 0:
        raise ValueError(f"x_max must be >= 0, got {x_max}")
    rows = []
    for x, row in enumerate(iter_rows(tb)):
        if x > x_max:
            break
        rows.append(row)
    return UnitaryTable(tb, rows)


def value(table: UnitaryTable, pos: RichmanPosition) -> int:
    """Equilibrium score of ``pos``, flipping the stored row when Right
    holds the marker."""
    if pos.tb != table.tb:
        raise ValueError(f"position for tb={pos.tb}, table for tb={table.tb}")
    row = table.row(pos.heap)
    if pos.left_holds_marker:
        return row[pos.left_budget]
    return -row[pos.right_budget]


def tie_conditioned_value(table: UnitaryTable, pos: RichmanPosition, l: int) -> int:
    """Score if both players bid ``l`` at ``pos`` and play on optimally.

    Left must hold the marker; the tie requires both sides to afford ``l``.
    """
    if not pos.left_holds_marker:
        raise ValueError("tie-conditioned values are defined for marker-Left positions")
    if pos.heap < 1:
        raise OutOfRange("no bidding on an empty heap")
    if l < 0 or l > pos.left_budget or l > pos.right_budget:
        raise InfeasibleBid(
            f"tie at {l} infeasible with budgets "
            f"{pos.left_budget}/{pos.right_budget}"
        )
    prev = table.row(pos.heap - 1)
    return 1 - prev[pos.right_budget + l]


def _marker_left_bids(prev: tuple[int, ...], tb: int, p: int) -> frozenset[BidPair]:
    """Equilibrium bid pairs at a marker-Left cell, from the previous row.

    Enumerates Left bids ``0..min(p, q)``; for each, Right's responses are
    the tie and every overbid.  Every maximizing Left bid is paired with
    every minimizing response.
    """
    q = tb - p
    options: dict[int, list[tuple[BidPair, int]]] = {}
    for l in range(min(p, q) + 1):
        tie = BidPair(l, l, BidWinner.LEFT_TIE)
        responses = [(tie, 1 - prev[q + l])]
        for r in range(l + 1, q + 1):
            responses.append((BidPair(l, r, BidWinner.RIGHT_STRICT), prev[p + r] - 1))
        options[l] = responses
    best = max(min(v for _, v in resp) for resp in options.values())
    pairs = set()
    for responses in options.values():
        worst = min(v for _, v in responses)
        if worst != best:
            continue
        pairs.update(bid for bid, v in responses if v == worst)
    return frozenset(pairs)


def _mirror(bid: BidPair) -> BidPair:
    flip = {
        BidWinner.LEFT_STRICT: BidWinner.RIGHT_STRICT,
        BidWinner.RIGHT_STRICT: BidWinner.LEFT_STRICT,
        BidWinner.LEFT_TIE: BidWinner.RIGHT_TIE,
        BidWinner.RIGHT_TIE: BidWinner.LEFT_TIE,
    }
    return BidPair(bid.right_bid, bid.left_bid, flip[bid.winner])


def equilibrium_bids(table: UnitaryTable, pos: RichmanPosition) -> frozenset[BidPair]:
    """All bid pairs consistent with equilibrium play at ``pos``.

    Marker-Right cells are handled by mirroring the sides, which is exact
    because the ruleset is symmetric.
    """
    if pos.tb != table.tb:
        raise ValueError(f"position for tb={pos.tb}, table for tb={table.tb}")
    if pos.heap < 1:
        raise OutOfRange("no bidding on an empty heap")
    prev = table.row(pos.heap - 1)
    if pos.left_holds_marker:
        return _marker_left_bids(prev, table.tb, pos.left_budget)
    mirrored = _marker_left_bids(prev, table.tb, pos.right_budget)
    return frozenset(_mirror(b) for b in mirrored)


class LimitRows(NamedTuple):
    even_row: tuple[int, ...]
    odd_row: tuple[int, ...]
    x_star: int


def limit_rows(tb: int) -> LimitRows:
    """Stabilized per-parity rows and the heap size where they settle.

    Solves two heap sizes past the convergence bound ``B(tb)``.  ``x_star``
    is the smallest heap size from which every same-parity pair of rows in
    the solved range agrees.  Rows still changing between ``B(tb)`` and
    ``B(tb) + 2`` are a hard error: that would contradict the quadratic
    convergence guarantee and must never be silently ignored.
    """
    bound = convergence_bound(tb)
    x_max = bound + 2
    rows = []
    for x, row in enumerate(iter_rows(tb)):
        if x > x_max:
            break
        rows.append(row)

    if rows[bound] != rows[bound + 2]:
        raise ConvergenceBoundExceeded(
            f"rows at {bound} and {bound + 2} still differ for tb={tb}"
        )

    x_star = x_max - 1
    while x_star > 0 and rows[x_star - 1] == rows[x_star + 1]:
        x_star -= 1

    even = rows[x_max] if x_max % 2 == 0 else rows[x_max - 1]
    odd = rows[x_max] if x_max % 2 == 1 else rows[x_max - 1]
    return LimitRows(even_row=even, odd_row=odd, x_star=x_star)
