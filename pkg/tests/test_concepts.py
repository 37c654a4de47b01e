"""Solution concept solvers, refutations, hierarchy, and mixed machinery."""
import random
from fractions import Fraction

import pytest

from robustgames import instances
from robustgames.concepts import (
    Concept,
    FalsifyVerdict,
    MixtureAugmentation,
    augment_with_mixed_nature,
    concept_verdict,
    format_verdict,
    hierarchy_report,
    individually_rational_actions,
    leximin_actions,
    loss_averse_actions,
    loss_averse_star_actions,
    loss_averse_vs,
    max_regret,
    min_max_regret_actions,
    mixed_loss_averse_falsify,
    mixed_safety_level_solve_2x2,
    mixed_safety_value,
    multi_leximin_actions,
    safety_level,
    safety_level_actions,
    strictly_dominated_actions,
    verify_refutation,
    weakly_dominant_actions,
)
from robustgames.core import AgentGame, MixedAction
from robustgames.errors import ValidationError


def _game(rows, actions=None, states=None):
    actions = actions or tuple(f"r{i}" for i in range(len(rows)))
    states = states or tuple(f"s{j}" for j in range(len(rows[0])))
    table = tuple(tuple(Fraction(v) for v in row) for row in rows)
    return AgentGame("test", tuple(actions), tuple(states), table)


def test_loss_averse_vs_ignores_shared_states():
    # a and b agree on s0; only s1 and s2 decide, where a bottoms at 1 > 0.
    game = _game([[9, 1, 5], [9, 0, 7]], ("a", "b"))
    ok, refutation = loss_averse_vs(game, "a", "b")
    assert ok and refutation is None
    ok, refutation = loss_averse_vs(game, "b", "a")
    assert not ok
    assert refutation.states == ("s1", "s1")
    assert refutation.self_value == 0 and refutation.other_value == 1


def test_loss_averse_vacuous_on_identical_rows():
    game = _game([[3, 3], [3, 3]], ("a", "b"))
    assert loss_averse_actions(game) == {"a", "b"}
    assert loss_averse_star_actions(game) == {"a", "b"}


def test_curated_leximin_proof_game_sets():
    game = instances.curated_game("leximin-proof-game")
    assert loss_averse_actions(game) == {"a", "b"}
    assert multi_leximin_actions(game) == {"b"}
    assert leximin_actions(game) == {"b"}


def test_curated_dominant_leximin_separation():
    game = instances.curated_game("dominant-leximin")
    assert weakly_dominant_actions(game) == {"a"}
    assert leximin_actions(game) == {"b"}


def test_curated_minmaxreg_safety_separation():
    game = instances.curated_game("minmaxreg-safety")
    assert min_max_regret_actions(game) == {"b"}
    assert safety_level_actions(game) == {"a"}
    assert "b" not in safety_level_actions(game)


def test_safety_level_and_ir():
    game = _game([[2, -1], [0, 0], [5, 1]], ("a", "b", "c"))
    assert safety_level(game) == 1
    assert safety_level_actions(game) == {"c"}
    assert individually_rational_actions(game) == {"b", "c"}


def test_weakly_dominant_and_dominated():
    # Domination is weak everywhere plus strict somewhere, so both b and
    # c fall to a despite their ties.
    game = _game([[1, 2], [1, 1], [0, 2]], ("a", "b", "c"))
    assert weakly_dominant_actions(game) == {"a"}
    assert strictly_dominated_actions(game) == {"b", "c"}
    ties = _game([[1, 0], [0, 1]], ("a", "b"))
    assert weakly_dominant_actions(ties) == set()
    assert strictly_dominated_actions(ties) == set()


def test_leximin_multiset_vs_set_comparison():
    # Profiles: a -> (0, 0, 2), b -> (0, 1, 1).  As value sets {0, 2} vs
    # {0, 1}: a wins at the second distinct value.  As multisets b wins.
    game = _game([[0, 0, 2], [0, 1, 1]], ("a", "b"))
    assert leximin_actions(game) == {"a"}
    assert multi_leximin_actions(game) == {"b"}


def test_max_regret_and_min_max_regret():
    game = _game([[4, 0], [2, 3]], ("a", "b"))
    assert max_regret(game, "a") == 3
    assert max_regret(game, "b") == 2
    assert min_max_regret_actions(game) == {"b"}


def test_concept_verdicts_carry_verifiable_refutations():
    rng = random.Random(7)
    games = [instances.curated_game(name) for name in sorted(instances.CURATED_GAMES)]
    games += [instances.random_game(rng) for _ in range(40)]
    for game in games:
        for concept in Concept:
            verdict = concept_verdict(game, concept)
            text = format_verdict(game, verdict)
            assert text.startswith(f"verdict v1\nconcept {concept.value}\n")
            for refutation in verdict.refutations:
                assert verify_refutation(game, concept, refutation)


def test_hierarchy_arrows_on_random_games():
    rng = random.Random(11)
    for _ in range(60):
        report = hierarchy_report(instances.random_game(rng))
        dominant = set(report.actions(Concept.WEAKLY_DOMINANT))
        la = set(report.actions(Concept.LOSS_AVERSE))
        assert dominant <= la <= set(report.actions(Concept.SAFETY_LEVEL))
        assert set(report.actions(Concept.MULTI_LEXIMIN)) <= la
        assert set(report.actions(Concept.LEXIMIN)) <= set(report.actions(Concept.SAFETY_LEVEL))
        assert dominant <= set(report.actions(Concept.MIN_MAX_REGRET))
        assert set(report.actions(Concept.MULTI_LEXIMIN))


def test_star_refines_and_never_admits_dominated():
    rng = random.Random(13)
    for _ in range(60):
        game = instances.random_game(rng)
        assert loss_averse_star_actions(game) & strictly_dominated_actions(game) == set()


def test_aim_big_closed_forms():
    verdicts = instances.aim_big_exact_verdicts()
    assert verdicts.loss_averse == frozenset({"B", "S"})
    assert verdicts.loss_averse_star == frozenset({"S"})
    grid = instances.aim_big_grid_game()
    assert loss_averse_actions(grid) == {"S"}
    assert loss_averse_star_actions(grid) == {"S"}


def test_mixed_safety_value_beats_pure_on_wrong_monotone():
    game = instances.curated_game("safety-wrong-monotone")
    value, mixture = mixed_safety_value(game)
    assert value == Fraction(3, 4)
    assert value > safety_level(game)
    assert mixture == MixedAction.from_mapping({"a": "3/4", "b": "1/4"})
    assert mixed_safety_level_solve_2x2(game) == mixture


def test_mixed_falsification_finds_counterexample():
    game = instances.curated_game("leximin-proof-game")
    pure_a = MixedAction.from_mapping({"a": 1})
    pure_b = MixedAction.from_mapping({"b": 1})
    result = mixed_loss_averse_falsify(game, pure_a, [pure_a, pure_b])
    # a loses the multiset comparison but survives loss-aversion, so the
    # pure family cannot falsify it.
    assert result.verdict is FalsifyVerdict.SURVIVED_FAMILY
    skewed = _game([[0, 0], [1, 1]], ("a", "b"))
    result = mixed_loss_averse_falsify(
        skewed, MixedAction.from_mapping({"a": 1}), [MixedAction.from_mapping({"b": 1})]
    )
    assert result.verdict is FalsifyVerdict.FALSIFIED
    assert result.candidate_min == 0 and result.deviation_min == 1


def test_collapse_augmentation_equates_loss_averse_and_safety():
    for k in (1, 4, 9):
        game, augmentation = instances.collapse_demo_game(k)
        assert set(augmentation.epsilons) == {Fraction(1, 10), Fraction(1, 100)}
        assert loss_averse_actions(game) != safety_level_actions(game)
        bigger = augment_with_mixed_nature(game, augmentation)
        assert loss_averse_actions(bigger) == safety_level_actions(bigger)
        # The collapse hinges on the 1/100 state hitting the refuting
        # minimum exactly; the 1/10 state alone changes nothing.
        fine = MixtureAugmentation(
            augmentation.bar_state, augmentation.floor_state, (Fraction(1, 100),)
        )
        assert loss_averse_actions(
            augment_with_mixed_nature(game, fine)
        ) == safety_level_actions(game)
        coarse = MixtureAugmentation(
            augmentation.bar_state, augmentation.floor_state, (Fraction(1, 10),)
        )
        assert loss_averse_actions(
            augment_with_mixed_nature(game, coarse)
        ) == loss_averse_actions(game)


def test_augmentation_adds_labeled_states():
    game, augmentation = instances.collapse_demo_game(2)
    bigger = augment_with_mixed_nature(game, augmentation)
    added = set(bigger.states) - set(game.states)
    assert added and all(label.startswith("mix-") for label in added)
    assert set(bigger.actions) == set(game.actions)


def test_solve_2x2_pure_shortcut_and_shape_guard():
    pure = _game([[1, 1], [0, 2]], ("a", "b"))
    assert mixed_safety_level_solve_2x2(pure) == MixedAction.pure("a")
    interior = _game([[2, 0], [0, 1]], ("a", "b"))
    assert mixed_safety_level_solve_2x2(interior) == MixedAction.from_mapping(
        {"a": "1/3", "b": "2/3"}
    )
    with pytest.raises(ValidationError):
        mixed_safety_level_solve_2x2(_game([[1, 1, 1], [0, 0, 0]], ("a", "b")))
