"""Exact data model for finite games of a single agent against nature.

All quantities are arbitrary-precision rationals (``fractions.Fraction``);
floats are rejected everywhere so results are reproducible bit for bit.

A game is serialized to a small line-oriented text document::

    agentgame v1
    type <type-label>
    actions <a1> <a2> ...
    states <s1> <s2> ...
    utilities
    <u(a1,s1)> <u(a1,s2)> ...
    <u(a2,s1)> <u(a2,s2)> ...
    end

Labels are non-empty tokens without whitespace.  Utilities are written
row-major, one action per line, each value as ``p/q`` (lowest terms,
positive denominator) or a plain integer.  ``parse_game(format_game(g))``
reproduces ``g`` exactly.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ParseError, UnknownLabelError, ValidationError

_SCALAR_RE = re.compile(r"^[+-]?[0-9]+(/[0-9]+)?$")
_LABEL_RE = re.compile(r"^\S+$")


def scalar(value: int | str | Fraction) -> Fraction:
    """Coerce ``value`` to an exact rational.  Floats are rejected."""
    if isinstance(value, bool):
        raise ValidationError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_scalar(value)
    raise ValidationError(
        f"expected an exact rational (int, Fraction or 'p/q' string), got {type(value).__name__}"
    )


def parse_scalar(text: str) -> Fraction:
    """Parse ``p/q`` or integer text into a Fraction."""
    if not _SCALAR_RE.match(text):
        raise ParseError(f"not a rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_scalar(value: Fraction) -> str:
    """Render a Fraction as ``p/q`` (or ``p`` when integral)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class _Infinite:
    """Positive-infinity top element used for minima over empty sets.

    It participates in comparisons only; any attempt to do arithmetic with
    it raises, which keeps the extended value from leaking into results.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinite)

    def __hash__(self) -> int:
        return hash("_Infinite")

    def __lt__(self, other) -> bool:
        return False

    def __le__(self, other) -> bool:
        return isinstance(other, _Infinite)

    def __gt__(self, other) -> bool:
        return not isinstance(other, _Infinite)

    def __ge__(self, other) -> bool:
        return True


INF = _Infinite()

ExtendedScalar = Fraction | _Infinite


def min_or_inf(values: Iterable[Fraction]) -> ExtendedScalar:
    """Minimum of an iterable of rationals; ``INF`` if it is empty."""
    best: Fraction | None = None
    for v in values:
        if best is None or v < best:
            best = v
    return INF if best is None else best


def format_extended(value: ExtendedScalar) -> str:
    return "inf" if isinstance(value, _Infinite) else format_scalar(value)


def _check_labels(kind: str, labels: Sequence[str]) -> None:
    if not labels:
        raise ValidationError(f"a game needs at least one {kind}")
    seen = set()
    for label in labels:
        if not isinstance(label, str) or not _LABEL_RE.match(label):
            raise ValidationError(f"bad {kind} label {label!r}: labels are non-empty tokens without whitespace")
        if label in seen:
            raise ValidationError(f"duplicate {kind} label {label!r}")
        seen.add(label)


@dataclass(frozen=True)
class AgentGame:
    """A finite agent-versus-nature game with a dense utility table.

    ``rows[i][j]`` is the agent's utility for playing ``actions[i]`` when
    nature plays ``states[j]``.  Nature has no payoff of its own.
    """

    type_label: str
    actions: tuple[str, ...]
    states: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not isinstance(self.type_label, str) or not _LABEL_RE.match(self.type_label):
            raise ValidationError(f"bad type label {self.type_label!r}")
        _check_labels("action", self.actions)
        _check_labels("state", self.states)
        if len(self.rows) != len(self.actions):
            raise ValidationError(
                f"utility table has {len(self.rows)} rows for {len(self.actions)} actions"
            )
        for row in self.rows:
            if len(row) != len(self.states):
                raise ValidationError(
                    f"utility row of length {len(row)} does not match {len(self.states)} states"
                )
            for v in row:
                if not isinstance(v, Fraction):
                    raise ValidationError(f"utility {v!r} is not an exact rational")

    @cached_property
    def _action_index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.actions)}

    @cached_property
    def _state_index(self) -> dict[str, int]:
        return {s: j for j, s in enumerate(self.states)}

    def action_index(self, action: str) -> int:
        try:
            return self._action_index[action]
        except KeyError:
            raise UnknownLabelError(f"unknown action {action!r}") from None

    def state_index(self, state: str) -> int:
        try:
            return self._state_index[state]
        except KeyError:
            raise UnknownLabelError(f"unknown state {state!r}") from None

    def utility(self, action: str, state: str) -> Fraction:
        """Exact utility of ``action`` against ``state``."""
        return self.rows[self.action_index(action)][self.state_index(state)]

    def row(self, action: str) -> tuple[Fraction, ...]:
        return self.rows[self.action_index(action)]


def game_from_function(
    type_label: str,
    actions: Sequence[str],
    states: Sequence[str],
    utility: Callable[[str, str], int | str | Fraction],
) -> AgentGame:
    """Build a game by evaluating ``utility(action, state)`` over the table."""
    rows = tuple(tuple(scalar(utility(a, s)) for s in states) for a in actions)
    return AgentGame(type_label, tuple(actions), tuple(states), rows)


def game_from_table(
    type_label: str,
    actions: Sequence[str],
    states: Sequence[str],
    table: Mapping[tuple[str, str], int | str | Fraction],
) -> AgentGame:
    """Build a game from a complete ``(action, state) -> utility`` mapping."""
    missing = [(a, s) for a in actions for s in states if (a, s) not in table]
    if missing:
        raise ValidationError(f"utility table is missing entries, first: {missing[0]!r}")
    return game_from_function(type_label, actions, states, lambda a, s: table[(a, s)])


@dataclass(frozen=True)
class MixedAction:
    """A probability distribution over action labels.

    Entries are kept sorted by label with zero-probability entries dropped,
    so two equal distributions compare equal regardless of construction
    order.  Probabilities must be non-negative rationals summing to one.
    """

    entries: tuple[tuple[str, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for label, p in self.entries:
            if not _LABEL_RE.match(label):
                raise ValidationError(f"bad action label {label!r} in mixed action")
            if label in seen:
                raise ValidationError(f"duplicate action {label!r} in mixed action")
            seen.add(label)
            if not isinstance(p, Fraction):
                raise ValidationError(f"probability {p!r} is not an exact rational")
            if p < 0:
                raise ValidationError(f"negative probability {format_scalar(p)} on {label!r}")
            total += p
        if total != 1:
            raise ValidationError(f"probabilities sum to {format_scalar(total)}, not 1")

    @staticmethod
    def from_mapping(probs: Mapping[str, int | str | Fraction]) -> "MixedAction":
        entries = tuple(
            sorted((label, scalar(p)) for label, p in probs.items() if scalar(p) != 0)
        )
        return MixedAction(entries)

    @staticmethod
    def pure(action: str) -> "MixedAction":
        return MixedAction(((action, Fraction(1)),))

    def probability(self, action: str) -> Fraction:
        for label, p in self.entries:
            if label == action:
                return p
        return Fraction(0)

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.entries)


def convex_combination(a: MixedAction, b: MixedAction, weight: Fraction) -> MixedAction:
    """``weight * a + (1 - weight) * b`` as a mixed action."""
    w = scalar(weight)
    if not (0 <= w <= 1):
        raise ValidationError(f"combination weight {format_scalar(w)} is outside [0, 1]")
    probs: dict[str, Fraction] = {}
    for label, p in a.entries:
        probs[label] = probs.get(label, Fraction(0)) + w * p
    for label, p in b.entries:
        probs[label] = probs.get(label, Fraction(0)) + (1 - w) * p
    return MixedAction.from_mapping(probs)


def mixed_utility(game: AgentGame, mixed: MixedAction, state: str) -> Fraction:
    """Expected utility of a mixed action against a fixed nature state."""
    j = game.state_index(state)
    total = Fraction(0)
    for label, p in mixed.entries:
        total += p * game.rows[game.action_index(label)][j]
    return total


def difference_set(game: AgentGame, action: str, other: str) -> tuple[str, ...]:
    """States on which the two actions' utilities differ, in state order."""
    ra = game.row(action)
    rb = game.row(other)
    return tuple(s for j, s in enumerate(game.states) if ra[j] != rb[j])


def format_game(game: AgentGame) -> str:
    """Serialize a game to the canonical text document."""
    lines = [
        "agentgame v1",
        f"type {game.type_label}",
        "actions " + " ".join(game.actions),
        "states " + " ".join(game.states),
        "utilities",
    ]
    for row in game.rows:
        lines.append(" ".join(format_scalar(v) for v in row))
    lines.append("end")
    return "\n".join(lines) + "\n"


def _expect_prefix(line: str, prefix: str, lineno: int) -> list[str]:
    parts = line.split(" ")
    if parts[0] != prefix:
        raise ParseError(f"line {lineno}: expected {prefix!r}, got {line!r}")
    return parts[1:]


def parse_game(text: str) -> AgentGame:
    """Parse the canonical text document back into a game."""
    lines = text.splitlines()
    if len(lines) < 7:
        raise ParseError("game document is truncated")
    if lines[0] != "agentgame v1":
        raise ParseError(f"unsupported header {lines[0]!r}")
    type_parts = _expect_prefix(lines[1], "type", 2)
    if len(type_parts) != 1:
        raise ParseError("type line must hold exactly one label")
    actions = _expect_prefix(lines[2], "actions", 3)
    states = _expect_prefix(lines[3], "states", 4)
    if lines[4] != "utilities":
        raise ParseError(f"line 5: expected 'utilities', got {lines[4]!r}")
    body = lines[5:]
    if len(body) != len(actions) + 1 or body[-1] != "end":
        raise ParseError("utilities block must hold one row per action followed by 'end'")
    rows = []
    for i, line in enumerate(body[:-1]):
        values = line.split(" ")
        if len(values) != len(states):
            raise ParseError(f"utility row {i + 1} has {len(values)} entries for {len(states)} states")
        rows.append(tuple(parse_scalar(v) for v in values))
    return AgentGame(type_parts[0], tuple(actions), tuple(states), tuple(rows))
