"""Solution concepts for games against nature, computed exactly.

The central family of concepts compares worst cases over *difference
sets*: the states where two actions actually disagree.  An action is
loss-averse against another if its worst utility over their difference
set is at least the other action's worst utility over the same set.
Minima over empty sets are the top element ``INF`` (two actions with
identical rows never refute each other).

All operations return plain data; ties inside any argmin or argmax are
resolved towards the first-listed label so output is deterministic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    INF,
    AgentGame,
    ExtendedScalar,
    MixedAction,
    format_extended,
    mixed_utility,
    min_or_inf,
    scalar,
)
from .errors import InternalConsistencyError, ValidationError


class Concept(enum.Enum):
    LOSS_AVERSE = "loss-averse"
    LOSS_AVERSE_STAR = "loss-averse-star"
    SAFETY_LEVEL = "safety-level"
    INDIVIDUALLY_RATIONAL = "individually-rational"
    WEAKLY_DOMINANT = "weakly-dominant"
    STRICTLY_DOMINATED = "strictly-dominated"
    LEXIMIN = "leximin"
    MULTI_LEXIMIN = "multi-leximin"
    MIN_MAX_REGRET = "min-max-regret"


@dataclass(frozen=True)
class Refutation:
    """Evidence that ``action`` violates a concept's defining inequality.

    ``competitor`` is the action it loses to (absent for individual
    rationality).  ``states`` name the nature states realizing the two
    recorded values; ``self_value``/``other_value`` are exact, with the
    top element allowed where a minimum ranges over an empty set.
    """

    action: str
    competitor: str | None
    states: tuple[str, ...]
    self_value: ExtendedScalar
    other_value: ExtendedScalar | None


@dataclass(frozen=True)
class ConceptVerdict:
    """Satisfying actions plus one refutation per relevant action.

    For every concept except ``STRICTLY_DOMINATED`` the refutations cover
    the rejected actions.  For ``STRICTLY_DOMINATED`` the satisfying
    actions are the dominated ones and each carries its domination
    certificate instead (rejection there is a universal claim with no
    single witness).
    """

    concept: Concept
    satisfying: tuple[str, ...]
    refutations: tuple[Refutation, ...]


def _argmin_state(game: AgentGame, action: str, state_indices: Sequence[int]) -> str:
    row = game.row(action)
    best = min(state_indices, key=lambda j: (row[j], j))
    return game.states[best]


def _diff_indices(game: AgentGame, a: str, b: str) -> list[int]:
    ra, rb = game.row(a), game.row(b)
    return [j for j in range(len(game.states)) if ra[j] != rb[j]]


def loss_averse_vs(game: AgentGame, action: str, other: str) -> tuple[bool, Refutation | None]:
    """Pairwise loss-aversion check with a refutation on failure."""
    diff = _diff_indices(game, action, other)
    if not diff:
        return True, None
    worst_self = min(game.row(action)[j] for j in diff)
    worst_other = min(game.row(other)[j] for j in diff)
    if worst_self >= worst_other:
        return True, None
    return False, Refutation(
        action=action,
        competitor=other,
        states=(_argmin_state(game, action, diff), _argmin_state(game, other, diff)),
        self_value=worst_self,
        other_value=worst_other,
    )


def loss_averse_actions(game: AgentGame) -> set[str]:
    """Actions that are loss-averse against every other action."""
    return {
        a
        for a in game.actions
        if all(loss_averse_vs(game, a, b)[0] for b in game.actions if b != a)
    }


def _one_sided_diff(game: AgentGame, a: str, b: str) -> list[int]:
    """States where ``a`` is strictly worse than ``b``."""
    ra, rb = game.row(a), game.row(b)
    return [j for j in range(len(game.states)) if ra[j] < rb[j]]


def _star_check(game: AgentGame, a: str, b: str) -> tuple[bool, Refutation | None]:
    down_a = _one_sided_diff(game, a, b)
    down_b = _one_sided_diff(game, b, a)
    worst_self = min_or_inf(game.row(a)[j] for j in down_a)
    worst_other = min_or_inf(game.row(b)[j] for j in down_b)
    if worst_self >= worst_other:
        return True, None
    states = []
    if down_a:
        states.append(_argmin_state(game, a, down_a))
    if down_b:
        states.append(_argmin_state(game, b, down_b))
    return False, Refutation(a, b, tuple(states), worst_self, worst_other)


def loss_averse_star_actions(game: AgentGame) -> set[str]:
    """One-sided variant: worst case only over states where each action loses.

    An action survives against another if its worst utility over the
    states where it is strictly worse is at least the other's worst
    utility over the states where *that* one is strictly worse.
    """
    return {
        a
        for a in game.actions
        if all(_star_check(game, a, b)[0] for b in game.actions if b != a)
    }


def safety_level(game: AgentGame) -> Fraction:
    """The maximal utility the agent can guarantee with a pure action."""
    return max(min(row) for row in game.rows)


def safety_level_actions(game: AgentGame) -> set[str]:
    level = safety_level(game)
    return {a for a in game.actions if min(game.row(a)) == level}


def individually_rational_actions(game: AgentGame) -> set[str]:
    return {a for a in game.actions if all(v >= 0 for v in game.row(a))}


def weakly_dominant_actions(game: AgentGame) -> set[str]:
    result = set()
    for a in game.actions:
        ra = game.row(a)
        if all(
            all(ra[j] >= game.row(b)[j] for j in range(len(game.states)))
            for b in game.actions
            if b != a
        ):
            result.add(a)
    return result


def strictly_dominated_actions(game: AgentGame) -> set[str]:
    """Actions some other action beats weakly everywhere and strictly somewhere."""
    result = set()
    for a in game.actions:
        ra = game.row(a)
        for b in game.actions:
            if b == a:
                continue
            rb = game.row(b)
            if all(rb[j] >= ra[j] for j in range(len(game.states))) and any(
                rb[j] > ra[j] for j in range(len(game.states))
            ):
                result.add(a)
                break
    return result


def _leximin_sequence(game: AgentGame, action: str, with_multiplicities: bool) -> tuple[Fraction, ...]:
    row = game.row(action)
    values = sorted(row) if with_multiplicities else sorted(set(row))
    return tuple(values)


def _sequence_compare(x: tuple[Fraction, ...], y: tuple[Fraction, ...]) -> int:
    """Lexicographic comparison of ascending outcome sequences.

    Encodes the round-by-round minimum-stripping order: at the first
    position where the sequences differ the larger value wins, and a
    sequence that is exhausted while the other still has values wins
    (its next minimum is the top element).
    """
    for vx, vy in zip(x, y):
        if vx != vy:
            return 1 if vx > vy else -1
    if len(x) == len(y):
        return 0
    return 1 if len(x) < len(y) else -1


def _leximin_set(game: AgentGame, with_multiplicities: bool) -> set[str]:
    seqs = {a: _leximin_sequence(game, a, with_multiplicities) for a in game.actions}
    return {
        a
        for a in game.actions
        if all(_sequence_compare(seqs[a], seqs[b]) >= 0 for b in game.actions if b != a)
    }


def leximin_actions(game: AgentGame) -> set[str]:
    """Leximin over the set of distinct outcome values of each action."""
    return _leximin_set(game, with_multiplicities=False)


def multi_leximin_actions(game: AgentGame) -> set[str]:
    """Leximin over the full outcome multiset (one entry per state)."""
    return _leximin_set(game, with_multiplicities=True)


def max_regret(game: AgentGame, action: str) -> Fraction:
    """Worst-case shortfall of ``action`` against the per-state best action."""
    best = [max(row[j] for row in game.rows) for j in range(len(game.states))]
    ra = game.row(action)
    return max(best[j] - ra[j] for j in range(len(game.states)))


def min_max_regret_actions(game: AgentGame) -> set[str]:
    regrets = {a: max_regret(game, a) for a in game.actions}
    floor = min(regrets.values())
    return {a for a, r in regrets.items() if r == floor}


def _ordered(game: AgentGame, actions: set[str]) -> tuple[str, ...]:
    return tuple(a for a in game.actions if a in actions)


def concept_verdict(game: AgentGame, concept: Concept) -> ConceptVerdict:
    """Compute a concept's satisfying set together with witnesses."""
    refutations: list[Refutation] = []

    if concept is Concept.LOSS_AVERSE:
        satisfying = loss_averse_actions(game)
        for a in game.actions:
            if a in satisfying:
                continue
            for b in game.actions:
                if b == a:
                    continue
                ok, ref = loss_averse_vs(game, a, b)
                if not ok:
                    refutations.append(ref)
                    break
    elif concept is Concept.LOSS_AVERSE_STAR:
        satisfying = loss_averse_star_actions(game)
        for a in game.actions:
            if a in satisfying:
                continue
            for b in game.actions:
                if b == a:
                    continue
                ok, ref = _star_check(game, a, b)
                if not ok:
                    refutations.append(ref)
                    break
    elif concept is Concept.SAFETY_LEVEL:
        satisfying = safety_level_actions(game)
        level = safety_level(game)
        anchor = next(a for a in game.actions if a in satisfying)
        for a in game.actions:
            if a in satisfying:
                continue
            worst = min(game.row(a))
            refutations.append(
                Refutation(a, anchor, (_argmin_state(game, a, range(len(game.states))),), worst, level)
            )
    elif concept is Concept.INDIVIDUALLY_RATIONAL:
        satisfying = individually_rational_actions(game)
        for a in game.actions:
            if a in satisfying:
                continue
            j = next(j for j, v in enumerate(game.row(a)) if v < 0)
            refutations.append(Refutation(a, None, (game.states[j],), game.row(a)[j], Fraction(0)))
    elif concept is Concept.WEAKLY_DOMINANT:
        satisfying = weakly_dominant_actions(game)
        for a in game.actions:
            if a in satisfying:
                continue
            found = next(
                (b, j)
                for b in game.actions
                if b != a
                for j in range(len(game.states))
                if game.row(b)[j] > game.row(a)[j]
            )
            b, j = found
            refutations.append(Refutation(a, b, (game.states[j],), game.row(a)[j], game.row(b)[j]))
    elif concept is Concept.STRICTLY_DOMINATED:
        satisfying = strictly_dominated_actions(game)
        for a in game.actions:
            if a not in satisfying:
                continue
            for b in game.actions:
                if b == a:
                    continue
                rb, ra = game.row(b), game.row(a)
                if all(rb[j] >= ra[j] for j in range(len(game.states))):
                    strict = next((j for j in range(len(game.states)) if rb[j] > ra[j]), None)
                    if strict is not None:
                        refutations.append(
                            Refutation(a, b, (game.states[strict],), ra[strict], rb[strict])
                        )
                        break
    elif concept in (Concept.LEXIMIN, Concept.MULTI_LEXIMIN):
        multi = concept is Concept.MULTI_LEXIMIN
        seqs = {a: _leximin_sequence(game, a, multi) for a in game.actions}
        satisfying = _leximin_set(game, multi)
        for a in game.actions:
            if a in satisfying:
                continue
            b = next(b for b in game.actions if b != a and _sequence_compare(seqs[a], seqs[b]) < 0)
            sa, sb = seqs[a], seqs[b]
            pos = next(
                (i for i in range(min(len(sa), len(sb))) if sa[i] != sb[i]),
                min(len(sa), len(sb)),
            )
            self_value: ExtendedScalar = sa[pos] if pos < len(sa) else INF
            other_value: ExtendedScalar = sb[pos] if pos < len(sb) else INF
            states = []
            if self_value is not INF:
                states.append(game.states[game.row(a).index(self_value)])
            if other_value is not INF:
                states.append(game.states[game.row(b).index(other_value)])
            refutations.append(Refutation(a, b, tuple(states), self_value, other_value))
    elif concept is Concept.MIN_MAX_REGRET:
        satisfying = min_max_regret_actions(game)
        floor = min(max_regret(game, a) for a in game.actions)
        anchor = next(a for a in game.actions if a in satisfying)
        best = [max(row[j] for row in game.rows) for j in range(len(game.states))]
        for a in game.actions:
            if a in satisfying:
                continue
            ra = game.row(a)
            j = max(range(len(game.states)), key=lambda j: (best[j] - ra[j], -j))
            refutations.append(Refutation(a, anchor, (game.states[j],), best[j] - ra[j], floor))
    else:  # pragma: no cover - exhaustive enum
        raise ValidationError(f"unknown concept {concept!r}")

    return ConceptVerdict(concept, _ordered(game, satisfying), tuple(refutations))


def verify_refutation(game: AgentGame, concept: Concept, ref: Refutation) -> bool:
    """Re-evaluate a refutation against the raw table.

    Returns True when the recorded values are reproduced exactly and
    constitute a genuine violation of the concept's defining inequality.
    """
    if concept is Concept.LOSS_AVERSE:
        diff = _diff_indices(game, ref.action, ref.competitor)
        if not diff:
            return False
        lo_self = min(game.row(ref.action)[j] for j in diff)
        lo_other = min(game.row(ref.competitor)[j] for j in diff)
        return lo_self == ref.self_value and lo_other == ref.other_value and lo_self < lo_other
    if concept is Concept.LOSS_AVERSE_STAR:
        lo_self = min_or_inf(
            game.row(ref.action)[j] for j in _one_sided_diff(game, ref.action, ref.competitor)
        )
        lo_other = min_or_inf(
            game.row(ref.competitor)[j] for j in _one_sided_diff(game, ref.competitor, ref.action)
        )
        return lo_self == ref.self_value and lo_other == ref.other_value and lo_self < lo_other
    if concept is Concept.SAFETY_LEVEL:
        return (
            min(game.row(ref.action)) == ref.self_value
            and safety_level(game) == ref.other_value
            and ref.self_value < ref.other_value
        )
    if concept is Concept.INDIVIDUALLY_RATIONAL:
        return game.utility(ref.action, ref.states[0]) == ref.self_value and ref.self_value < 0
    if concept is Concept.WEAKLY_DOMINANT:
        j = game.state_index(ref.states[0])
        return (
            game.row(ref.action)[j] == ref.self_value
            and game.row(ref.competitor)[j] == ref.other_value
            and ref.other_value > ref.self_value
        )
    if concept is Concept.STRICTLY_DOMINATED:
        ra, rb = game.row(ref.action), game.row(ref.competitor)
        j = game.state_index(ref.states[0])
        return (
            all(rb[k] >= ra[k] for k in range(len(game.states)))
            and rb[j] > ra[j]
            and ra[j] == ref.self_value
            and rb[j] == ref.other_value
        )
    if concept in (Concept.LEXIMIN, Concept.MULTI_LEXIMIN):
        multi = concept is Concept.MULTI_LEXIMIN
        cmp = _sequence_compare(
            _leximin_sequence(game, ref.action, multi),
            _leximin_sequence(game, ref.competitor, multi),
        )
        return cmp < 0 and ref.self_value < ref.other_value
    if concept is Concept.MIN_MAX_REGRET:
        own = max_regret(game, ref.action)
        floor = min(max_regret(game, a) for a in game.actions)
        return own == ref.self_value and floor == ref.other_value and own > floor
    raise ValidationError(f"unknown concept {concept!r}")


# Implications that must hold on every game.  Violations are engine bugs.
_HIERARCHY_ARROWS: tuple[tuple[Concept, Concept], ...] = (
    (Concept.WEAKLY_DOMINANT, Concept.LOSS_AVERSE),
    (Concept.LOSS_AVERSE, Concept.SAFETY_LEVEL),
    (Concept.MULTI_LEXIMIN, Concept.LOSS_AVERSE),
    (Concept.LEXIMIN, Concept.SAFETY_LEVEL),
    (Concept.WEAKLY_DOMINANT, Concept.MIN_MAX_REGRET),
)

_REPORT_CONCEPTS: tuple[Concept, ...] = (
    Concept.WEAKLY_DOMINANT,
    Concept.LOSS_AVERSE,
    Concept.SAFETY_LEVEL,
    Concept.LEXIMIN,
    Concept.MULTI_LEXIMIN,
    Concept.MIN_MAX_REGRET,
)


@dataclass(frozen=True)
class HierarchyReport:
    """Concept sets for one game plus the verified implication arrows.

    ``noninclusions`` lists ordered concept pairs without an implication
    arrow whose sets happened not to nest on this game; they are
    informational, never failures.
    """

    sets: tuple[tuple[Concept, tuple[str, ...]], ...]
    arrows: tuple[tuple[Concept, Concept], ...]
    noninclusions: tuple[tuple[Concept, Concept], ...]

    def actions(self, concept: Concept) -> tuple[str, ...]:
        for c, members in self.sets:
            if c is concept:
                return members
        raise ValidationError(f"{concept} not in report")


def hierarchy_report(game: AgentGame) -> HierarchyReport:
    """Compute the reported concept sets and check every implication arrow."""
    computed = {
        Concept.WEAKLY_DOMINANT: weakly_dominant_actions(game),
        Concept.LOSS_AVERSE: loss_averse_actions(game),
        Concept.SAFETY_LEVEL: safety_level_actions(game),
        Concept.LEXIMIN: leximin_actions(game),
        Concept.MULTI_LEXIMIN: multi_leximin_actions(game),
        Concept.MIN_MAX_REGRET: min_max_regret_actions(game),
    }
    for src, dst in _HIERARCHY_ARROWS:
        if not computed[src] <= computed[dst]:
            raise InternalConsistencyError(
                f"hierarchy violation on game {game.type_label!r}: "
                f"{src.value} {sorted(computed[src])} is not contained in "
                f"{dst.value} {sorted(computed[dst])}"
            )
    noninclusions = []
    for src in _REPORT_CONCEPTS:
        for dst in _REPORT_CONCEPTS:
            if src is dst or (src, dst) in _HIERARCHY_ARROWS:
                continue
            if not computed[src] <= computed[dst]:
                noninclusions.append((src, dst))
    return HierarchyReport(
        sets=tuple((c, _ordered(game, computed[c])) for c in _REPORT_CONCEPTS),
        arrows=_HIERARCHY_ARROWS,
        noninclusions=tuple(noninclusions),
    )


class FalsifyVerdict(enum.Enum):
    FALSIFIED = "falsified"
    SURVIVED_FAMILY = "survived-family"


@dataclass(frozen=True)
class FalsifyResult:
    """Outcome of testing a mixed candidate against a deviation family.

    ``SURVIVED_FAMILY`` certifies nothing beyond the family supplied; the
    check can only ever falsify.
    """

    verdict: FalsifyVerdict
    deviations_checked: int
    deviation: MixedAction | None = None
    candidate_min: Fraction | None = None
    deviation_min: Fraction | None = None
    candidate_state: str | None = None
    deviation_state: str | None = None


def mixed_loss_averse_falsify(
    game: AgentGame, candidate: MixedAction, deviations: Sequence[MixedAction]
) -> FalsifyResult:
    """Search a deviation family for a loss-aversion counterexample.

    For each deviation the difference set is taken over expected
    utilities; a deviation whose worst case strictly beats the
    candidate's falsifies it.  Deviations equal to the candidate have an
    empty difference set and are vacuously survived.
    """
    cand_u = [mixed_utility(game, candidate, s) for s in game.states]
    for dev in deviations:
        dev_u = [mixed_utility(game, dev, s) for s in game.states]
        diff = [j for j in range(len(game.states)) if cand_u[j] != dev_u[j]]
        if not diff:
            continue
        lo_c = min(cand_u[j] for j in diff)
        lo_d = min(dev_u[j] for j in diff)
        if lo_c < lo_d:
            return FalsifyResult(
                verdict=FalsifyVerdict.FALSIFIED,
                deviations_checked=len(deviations),
                deviation=dev,
                candidate_min=lo_c,
                deviation_min=lo_d,
                candidate_state=game.states[min(j for j in diff if cand_u[j] == lo_c)],
                deviation_state=game.states[min(j for j in diff if dev_u[j] == lo_d)],
            )
    return FalsifyResult(FalsifyVerdict.SURVIVED_FAMILY, len(deviations))


def _solve_linear(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination over the rationals; None if singular."""
    n = len(matrix)
    aug = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = aug[col][col]
        aug[col] = [v / inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def mixed_safety_value(game: AgentGame) -> tuple[Fraction, MixedAction]:
    """Exact max-min value over all mixed actions, with a witness mixture.

    Solved by enumerating candidate supports and tight state sets; every
    basic optimum of the underlying linear program appears among the
    square systems this visits, so the maximum over feasible candidates
    is the exact value.
    """
    n_actions = len(game.actions)
    n_states = len(game.states)
    best_value: Fraction | None = None
    best_mix: MixedAction | None = None

    def consider(probs: dict[str, Fraction]) -> None:
        nonlocal best_value, best_mix
        mix = MixedAction.from_mapping(probs)
        guarantee = min(mixed_utility(game, mix, s) for s in game.states)
        if best_value is None or guarantee > best_value:
            best_value = guarantee
            best_mix = mix

    for a in game.actions:
        consider({a: Fraction(1)})

    supports = []
    for code in range(1, 1 << n_actions):
        support = [i for i in range(n_actions) if code & (1 << i)]
        if len(support) >= 2:
            supports.append(support)
    for support in supports:
        k = len(support)
        for code in range(1, 1 << n_states):
            tight = [j for j in range(n_states) if code & (1 << j)]
            if len(tight) != k:
                continue
            # Unknowns: the k probabilities followed by the common value v.
            matrix = []
            rhs = []
            for j in tight:
                matrix.append([game.rows[i][j] for i in support] + [Fraction(-1)])
                rhs.append(Fraction(0))
            matrix.append([Fraction(1)] * k + [Fraction(0)])
            rhs.append(Fraction(1))
            solution = _solve_linear(matrix, rhs)
            if solution is None:
                continue
            probs = solution[:k]
            if any(p < 0 for p in probs):
                continue
            consider({game.actions[i]: p for i, p in zip(support, probs)})

    assert best_value is not None and best_mix is not None
    return best_value, best_mix


@dataclass(frozen=True)
class MixedSafetyVerdict:
    candidate: MixedAction
    guarantee: Fraction
    value: Fraction
    achieves_value: bool


def mixed_safety_level_verdicts(
    game: AgentGame, candidates: Sequence[MixedAction]
) -> tuple[MixedSafetyVerdict, ...]:
    """For each candidate: does it guarantee the mixed max-min value everywhere?"""
    value, _ = mixed_safety_value(game)
    out = []
    for cand in candidates:
        guarantee = min(mixed_utility(game, cand, s) for s in game.states)
        out.append(MixedSafetyVerdict(cand, guarantee, value, guarantee == value))
    return tuple(out)


def mixed_safety_level_solve_2x2(game: AgentGame) -> MixedAction:
    """Exact optimal mixture for a 2-action, 2-state game.

    Returns the equalizing interior mixture when it is needed to reach
    the mixed max-min value, otherwise the better pure action.
    """
    if len(game.actions) != 2 or len(game.states) != 2:
        raise ValidationError(
            f"solver needs a 2x2 game, got {len(game.actions)}x{len(game.states)}"
        )
    value, _ = mixed_safety_value(game)
    for a in game.actions:
        if min(game.row(a)) == value:
            return MixedAction.pure(a)
    (u11, u12), (u21, u22) = game.rows
    denom = u11 - u12 - u21 + u22
    if denom == 0:
        raise InternalConsistencyError("no pure optimum and no equalizing mixture")
    p = (u22 - u21) / denom
    mix = MixedAction.from_mapping({game.actions[0]: p, game.actions[1]: 1 - p})
    if min(mixed_utility(game, mix, s) for s in game.states) != value:
        raise InternalConsistencyError("equalizing mixture misses the solved value")
    return mix


@dataclass(frozen=True)
class MixtureAugmentation:
    """Synthetic nature states blending one state towards a floor state.

    For each weight ``eps`` a new state is added whose utility row is
    ``eps * u(., bar_state) + (1 - eps) * u(., floor_state)``.  The floor
    state must force every action's utility down to at most the game's
    safety level; weights are strictly between 0 and 1.
    """

    bar_state: str
    floor_state: str
    epsilons: tuple[Fraction, ...]


def augment_with_mixed_nature(game: AgentGame, aug: MixtureAugmentation) -> AgentGame:
    """Append the augmentation's synthetic states to the game."""
    game.state_index(aug.bar_state)
    game.state_index(aug.floor_state)
    seen: set[Fraction] = set()
    for eps in aug.epsilons:
        eps = scalar(eps)
        if not (0 < eps < 1):
            raise ValidationError(f"mixture weight {eps} is not strictly inside (0, 1)")
        if eps in seen:
            raise ValidationError(f"duplicate mixture weight {eps}")
        seen.add(eps)
    level = safety_level(game)
    for a in game.actions:
        if game.utility(a, aug.floor_state) > level:
            raise ValidationError(
                f"floor state {aug.floor_state!r} does not force action {a!r} "
                f"down to the safety level"
            )
    if not aug.epsilons:
        return AgentGame(game.type_label, game.actions, game.states, game.rows)
    bar = game.state_index(aug.bar_state)
    floor = game.state_index(aug.floor_state)
    new_labels = []
    for eps in aug.epsilons:
        label = f"mix-{scalar(eps)}"
        if label in game.states or label in new_labels:
            raise ValidationError(f"synthetic state label {label!r} collides")
        new_labels.append(label)
    states = game.states + tuple(new_labels)
    rows = tuple(
        row + tuple(scalar(eps) * row[bar] + (1 - scalar(eps)) * row[floor] for eps in aug.epsilons)
        for row in game.rows
    )
    return AgentGame(game.type_label, game.actions, states, rows)


def format_verdict(game: AgentGame, verdict: ConceptVerdict) -> str:
    """Serialize a concept verdict to the structured text schema."""
    lines = [
        "verdict v1",
        f"concept {verdict.concept.value}",
        "actions " + (" ".join(verdict.satisfying) if verdict.satisfying else "-"),
    ]
    for ref in verdict.refutations:
        parts = [
            "refutation",
            ref.action,
            "vs",
            ref.competitor if ref.competitor is not None else "-",
            "states",
            ",".join(ref.states) if ref.states else "-",
            "self",
            format_extended(ref.self_value),
            "other",
            format_extended(ref.other_value) if ref.other_value is not None else "-",
        ]
        lines.append(" ".join(parts))
    lines.append("end")
    return "\n".join(lines) + "\n"
