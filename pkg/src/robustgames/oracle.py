"""Brute-force reference implementations used to cross-check the engine.

Everything here is written directly from the defining text of each
concept, with no cleverness and no code shared with the engine modules
beyond the core data types.  The point is an independent second route to
the same numbers, so keep these naive even where they are slow.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import AgentGame
from .errors import CapacityError

ORACLE_STEP_BUDGET = 10**7


def naive_loss_averse(game: AgentGame) -> set[str]:
    """Pure loss-averse actions, by the literal pairwise definition."""
    result = set()
    for a in game.actions:
        ok = True
        for b in game.actions:
            if a == b:
                continue
            diff = [
                j
                for j in range(len(game.states))
                if game.row(a)[j] != game.row(b)[j]
            ]
            if not diff:
                continue  # identical on every state: vacuously fine
            worst_a = min(game.row(a)[j] for j in diff)
            worst_b = min(game.row(b)[j] for j in diff)
            if worst_a < worst_b:
                ok = False
                break
        if ok:
            result.add(a)
    return result


def _strip_compare(xs: list[Fraction], ys: list[Fraction], one_copy: bool) -> int:
    """Compare two outcome collections by repeated minimum-stripping.

    Returns 1 if ``xs`` is better, -1 if ``ys`` is better, 0 if equal.
    A side that runs out of values counts as better (minimum over an
    empty set is treated as the top element).
    """
    xs = sorted(xs)
    ys = sorted(ys)
    while True:
        if not xs and not ys:
            return 0
        if not xs:
            return 1
        if not ys:
            return -1
        mx, my = xs[0], ys[0]
        if mx != my:
            return 1 if mx > my else -1
        if one_copy:
            xs.pop(0)
            ys.pop(0)
        else:
            xs = [v for v in xs if v != mx]
            ys = [v for v in ys if v != my]


def naive_leximin(game: AgentGame, with_multiplicities: bool) -> set[str]:
    """Leximin actions via the literal stripping procedure.

    ``with_multiplicities`` selects the multiset variant (strip exactly one
    copy of the minimum per round); otherwise duplicate outcome values are
    collapsed first and every copy of the minimum is stripped per round.
    """
    outcomes = {}
    for a in game.actions:
        row = list(game.row(a))
        outcomes[a] = row if with_multiplicities else list(set(row))
    result = set()
    for a in game.actions:
        if all(
            _strip_compare(outcomes[a], outcomes[b], with_multiplicities) >= 0
            for b in game.actions
            if b != a
        ):
            result.add(a)
    return result


def naive_winner_determination(
    tables: Sequence[Sequence[Fraction]], item_count: int
) -> tuple[Fraction, tuple[int, ...]]:
    """Exhaustively best assignment of ``item_count`` items to bid tables.

    ``tables[j][mask]`` is bidder ``j``'s value for the bundle coded by
    ``mask``.  Every item is assigned.  Returns the maximal total value and
    the first assignment attaining it in recursion order (item 0 varies
    slowest).  No tie-break beyond first-found; callers compare welfare.
    """
    n = len(tables)
    if n == 0:
        raise ValueError("need at least one bid table")
    if n**item_count > ORACLE_STEP_BUDGET:
        raise CapacityError(
            f"{n}^{item_count} assignments exceed the oracle budget of {ORACLE_STEP_BUDGET}"
        )
    best_val: Fraction | None = None
    best_assign: tuple[int, ...] = ()
    assign = [0] * item_count
    masks = [0] * n

    def recurse(item: int) -> None:
        nonlocal best_val, best_assign
        if item == item_count:
            total = Fraction(0)
            for j in range(n):
                total += tables[j][masks[j]]
            if best_val is None or total > best_val:
                best_val = total
                best_assign = tuple(assign)
            return
        for j in range(n):
            assign[item] = j
            masks[j] |= 1 << item
            recurse(item + 1)
            masks[j] &= ~(1 << item)

    recurse(0)
    assert best_val is not None
    return best_val, best_assign
