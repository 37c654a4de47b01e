"""Exact scalars, game tables, serialization, and mixed actions."""
from fractions import Fraction

import pytest

from robustgames.core import (
    INF,
    AgentGame,
    MixedAction,
    convex_combination,
    difference_set,
    format_extended,
    format_game,
    format_scalar,
    game_from_function,
    game_from_table,
    min_or_inf,
    mixed_utility,
    parse_game,
    parse_scalar,
    scalar,
)
from robustgames.errors import ParseError, UnknownLabelError, ValidationError


def test_scalar_accepts_int_str_fraction():
    assert scalar(3) == Fraction(3)
    assert scalar("3/10") == Fraction(3, 10)
    assert scalar("-7/2") == Fraction(-7, 2)
    assert scalar(Fraction(1, 3)) == Fraction(1, 3)


def test_scalar_rejects_floats_and_junk():
    with pytest.raises(ValidationError):
        scalar(0.5)
    with pytest.raises(ValidationError):
        scalar(True)
    with pytest.raises(ParseError):
        scalar("0.5")
    with pytest.raises(ParseError):
        scalar("1/0")


def test_format_scalar_round_trips():
    for text in ("0", "5", "-5", "3/10", "-9999/10"):
        assert format_scalar(parse_scalar(text)) == text


def test_parse_scalar_rejects_whitespace():
    with pytest.raises(ParseError):
        parse_scalar(" 1/2")


def test_min_or_inf_empty_is_top_element():
    assert min_or_inf([]) is INF
    assert min_or_inf([Fraction(2), Fraction(-1)]) == Fraction(-1)
    assert INF > Fraction(10**9)
    assert not INF < INF
    assert format_extended(INF) == "inf"
    assert format_extended(Fraction(1, 2)) == "1/2"


def _toy():
    return AgentGame(
        "toy",
        ("a", "b"),
        ("x", "y"),
        ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(2))),
    )


def test_game_lookup_and_rows():
    game = _toy()
    assert game.utility("a", "x") == 1
    assert game.row("b") == (Fraction(0), Fraction(2))
    with pytest.raises(UnknownLabelError):
        game.utility("c", "x")
    with pytest.raises(UnknownLabelError):
        game.utility("a", "z")


def test_game_rejects_bad_shapes():
    with pytest.raises(ValidationError):
        AgentGame("t", ("a", "a"), ("x",), ((Fraction(0),), (Fraction(0),)))
    with pytest.raises(ValidationError):
        AgentGame("t", ("a",), ("x", "y"), ((Fraction(0),),))
    with pytest.raises(ValidationError):
        AgentGame("t", ("a",), ("x",), ())
    with pytest.raises(ValidationError):
        AgentGame("t", ("a b",), ("x",), ((Fraction(0),),))
    with pytest.raises(ValidationError):
        AgentGame("t", ("a",), ("x",), ((0.5,),))


def test_game_builders_convert_scalars():
    game = game_from_function("t", ["a"], ["x", "y"], lambda a, s: "1/2" if s == "x" else 0)
    assert game.row("a") == (Fraction(1, 2), Fraction(0))
    table = {("a", "x"): 1, ("a", "y"): "2/3"}
    assert game_from_table("t", ["a"], ["x", "y"], table).utility("a", "y") == Fraction(2, 3)
    with pytest.raises(ValidationError):
        game_from_table("t", ["a"], ["x", "y"], {("a", "x"): 1})


def test_difference_set_is_ordered_and_exact():
    game = _toy()
    assert difference_set(game, "a", "b") == ("x", "y")
    same = AgentGame("t", ("a", "b"), ("x",), ((Fraction(1),), (Fraction(1),)))
    assert difference_set(same, "a", "b") == ()


def test_game_document_round_trip():
    game = _toy()
    text = format_game(game)
    assert text.startswith("agentgame v1\ntype toy\n")
    assert parse_game(text) == game


def test_game_document_negative_and_rational_values():
    game = AgentGame(
        "t", ("a",), ("x", "y"), ((Fraction(-7, 3), Fraction(9999, 10)),)
    )
    assert parse_game(format_game(game)) == game


def test_parse_game_rejects_malformed_documents():
    good = format_game(_toy())
    with pytest.raises(ParseError):
        parse_game("agentgame v2\n" + good.split("\n", 1)[1])
    with pytest.raises(ParseError):
        parse_game(good.replace("utilities\n", ""))
    with pytest.raises(ParseError):
        parse_game(good.replace("\n1 0\n", "\n1\n"))
    with pytest.raises(ParseError):
        parse_game(good.replace("\nend\n", "\n"))
    with pytest.raises(ParseError):
        parse_game("")


def test_mixed_action_normalizes_and_validates():
    half = MixedAction.from_mapping({"b": "1/2", "a": "1/2", "c": 0})
    assert half.entries == (("a", Fraction(1, 2)), ("b", Fraction(1, 2)))
    with pytest.raises(ValidationError):
        MixedAction.from_mapping({"a": "2/3"})
    with pytest.raises(ValidationError):
        MixedAction.from_mapping({"a": "3/2", "b": "-1/2"})
    with pytest.raises(ValidationError):
        MixedAction((("a", 0.5), ("b", 0.5)))


def test_convex_combination_and_expected_utility():
    game = _toy()
    pure_a = MixedAction.from_mapping({"a": 1})
    pure_b = MixedAction.from_mapping({"b": 1})
    mix = convex_combination(pure_a, pure_b, Fraction(1, 4))
    assert mix == MixedAction.from_mapping({"a": "1/4", "b": "3/4"})
    assert mixed_utility(game, mix, "x") == Fraction(1, 4)
    assert mixed_utility(game, mix, "y") == Fraction(3, 2)
    with pytest.raises(UnknownLabelError):
        mixed_utility(game, MixedAction.from_mapping({"zzz": 1}), "x")
