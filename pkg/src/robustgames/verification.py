"""Cross-module verification battery.

Each check rebuilds its instances from scratch, drives the public API,
and reports one pass/fail line.  The battery is the acceptance surface:
the test suite asserts every check and the ``verify-all`` command prints
the same table.  Checks are deterministic for a fixed budget and seed;
details carry instance counts so a run can be compared byte for byte.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from . import concepts, instances, mechanisms, oracle, singleitem, vcg
from .concepts import FalsifyVerdict
from .core import AgentGame, MixedAction, format_scalar
from .errors import ValidationError

BUDGETS = {
    "default": {
        "random_games": 1000,
        "fpa_bids": 100,
        "collapse_cases": 20,
        "exclusion_games": 200,
        "vcg_random": 500,
        "multi_agent_profiles": 200,
        "perturbations": 50,
    },
    "tiny": {
        "random_games": 80,
        "fpa_bids": 12,
        "collapse_cases": 5,
        "exclusion_games": 25,
        "vcg_random": 30,
        "multi_agent_profiles": 15,
        "perturbations": 8,
    },
}


def _counts(budget: str) -> dict[str, int]:
    try:
        return BUDGETS[budget]
    except KeyError:
        raise ValidationError(
            f"unknown budget {budget!r}; known: {', '.join(sorted(BUDGETS))}"
        ) from None


@dataclass(frozen=True)
class CheckResult:
    """One verification line: a stable name, a verdict, and a summary."""

    name: str
    passed: bool
    detail: str


def _fail(name: str, detail: str) -> CheckResult:
    return CheckResult(name, False, detail)


def dfpa_test_grid() -> tuple[tuple[Fraction, Fraction], ...]:
    """Deterministic (value, step) pairs covering all closed-form branches.

    Per step: the zero value, two exact grid multiples, and three values
    strictly between grid points.
    """
    steps = (
        Fraction(1),
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 4),
        Fraction(1, 10),
        Fraction(3, 10),
        Fraction(2, 5),
    )
    pairs = []
    for eps in steps:
        for value in (
            Fraction(0),
            eps,
            2 * eps,
            3 * eps,
            4 * eps,
            eps / 2,
            5 * eps / 2,
            10 * eps / 3,
        ):
            pairs.append((value, eps))
    pairs.append((Fraction(1), Fraction(3, 10)))
    return tuple(pairs)


def check_dfpa_loss_averse_closed_form(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "dfpa-loss-averse-closed-form"
    branches = Counter()
    pairs = dfpa_test_grid()
    for value, eps in pairs:
        want = singleitem.dfpa_loss_averse_bid(value, eps)
        game = singleitem.dfpa_game(singleitem.default_dfpa_spec(value, eps))
        got = concepts.loss_averse_actions(game)
        if got != {format_scalar(want)}:
            return _fail(
                name,
                f"value {value} step {eps}: engine {sorted(got)} vs formula {want}",
            )
        if value == 0:
            branches["zero"] += 1
        elif singleitem.eps_net(value, eps) == value:
            branches["on-grid"] += 1
        else:
            branches["off-grid"] += 1
    if not all(branches.values()):
        return _fail(name, f"grid misses a branch: {dict(branches)}")
    detail = (
        f"{len(pairs)} pairs, singleton match on all; branches "
        f"zero={branches['zero']} on-grid={branches['on-grid']} "
        f"off-grid={branches['off-grid']}"
    )
    return CheckResult(name, True, detail)


def check_fpa_witness_battery(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "fpa-witness-battery"
    n = _counts(budget)["fpa_bids"]
    total = 0
    for value in (Fraction(1), Fraction(7, 3)):
        for k in range(n + 1):
            bid = value * Fraction(k, n)
            witness = singleitem.fpa_no_loss_averse_witness(value, bid)
            if not singleitem.verify_fpa_witness(witness):
                return _fail(name, f"witness fails re-derivation at value {value} bid {bid}")
            total += 1
    return CheckResult(name, True, f"{total} bids, every witness re-derived strictly")


def check_hierarchy_and_counterexamples(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "hierarchy-arrows-and-counterexamples"
    n = _counts(budget)["random_games"]
    rng = random.Random(seed)
    observed = set()
    for _ in range(n):
        report = concepts.hierarchy_report(instances.random_game(rng))
        observed.update(report.noninclusions)

    game = instances.leximin_proof_game()
    if concepts.loss_averse_actions(game) != {"a", "b"}:
        return _fail(name, "leximin-proof-game loss-averse set is not {a, b}")
    if concepts.multi_leximin_actions(game) != {"b"}:
        return _fail(name, "leximin-proof-game multi-leximin set is not {b}")

    game = instances.dominant_leximin_game()
    if concepts.weakly_dominant_actions(game) != {"a"}:
        return _fail(name, "dominant-leximin game dominant set is not {a}")
    if concepts.leximin_actions(game) != {"b"}:
        return _fail(name, "dominant-leximin game leximin set is not {b}")

    game = instances.minmaxreg_safety_game()
    if concepts.min_max_regret_actions(game) != {"b"}:
        return _fail(name, "minmaxreg-safety game regret set is not {b}")
    if concepts.safety_level_actions(game) != {"a"}:
        return _fail(name, "minmaxreg-safety game safety set is not {a}")

    game = instances.safety_wrong_monotone_game()
    value, mixture = concepts.mixed_safety_value(game)
    if value != Fraction(3, 4):
        return _fail(name, f"mixed safety value {value} is not 3/4")
    solved = concepts.mixed_safety_level_solve_2x2(game)
    want = MixedAction.from_mapping({"a": Fraction(3, 4), "b": Fraction(1, 4)})
    if solved != want or mixture != want:
        return _fail(name, f"mixed safety optimum {solved} is not (a: 3/4, b: 1/4)")

    grid = concepts.loss_averse_actions(instances.aim_big_grid_game())
    exact = instances.aim_big_exact_verdicts()
    if grid != {"S"} or set(exact.loss_averse) != {"B", "S"}:
        return _fail(
            name,
            f"grid loss-averse {sorted(grid)} vs closed form "
            f"{sorted(exact.loss_averse)}: expected {{S}} vs {{B, S}}",
        )
    detail = (
        f"{n} random games, zero arrow violations, "
        f"{len(observed)} permitted non-inclusions observed; "
        "5 curated separations reproduced"
    )
    return CheckResult(name, True, detail)


def check_multi_leximin_existence(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "multi-leximin-existence"
    n = _counts(budget)["random_games"]
    rng = random.Random(seed + 1)
    for i in range(n):
        game = instances.random_game(rng)
        found = concepts.multi_leximin_actions(game)
        if not found:
            return _fail(name, f"empty multi-leximin set on random game #{i}")
        if not found <= concepts.loss_averse_actions(game):
            return _fail(name, f"multi-leximin escapes loss-averse on random game #{i}")
    return CheckResult(name, True, f"{n} random games, multi-leximin nonempty on all")


def check_dfpa_min_max_regret(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "dfpa-min-max-regret"
    pairs = dfpa_test_grid()
    ties = 0
    for value, eps in pairs:
        want = singleitem.dfpa_min_max_regret_set(value, eps)
        game = singleitem.dfpa_game(singleitem.default_dfpa_spec(value, eps))
        got = concepts.min_max_regret_actions(game)
        if got != {format_scalar(b) for b in want}:
            return _fail(
                name, f"value {value} step {eps}: engine {sorted(got)} vs formula {want}"
            )
        if singleitem.dfpa_min_max_regret_bid(value, eps) not in want:
            return _fail(name, f"value {value} step {eps}: balance bid missing from {want}")
        if len(want) == 2:
            ties += 1
    return CheckResult(
        name,
        True,
        f"{len(pairs)} pairs match the argmin set exactly; "
        f"{ties} exhibit the documented half-value tie",
    )


def check_safety_collapse_family(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "safety-collapse-family"
    n = _counts(budget)["collapse_cases"]
    for k in range(1, n + 1):
        game, augmentation = instances.collapse_demo_game(k)
        if set(augmentation.epsilons) != {Fraction(1, 10), Fraction(1, 100)}:
            return _fail(name, f"k={k}: unexpected mixture weights {augmentation.epsilons}")
        before_la = concepts.loss_averse_actions(game)
        before_sl = concepts.safety_level_actions(game)
        if before_la == before_sl:
            return _fail(name, f"k={k}: sets already coincide before augmentation")
        augmented = concepts.augment_with_mixed_nature(game, augmentation)
        after_la = concepts.loss_averse_actions(augmented)
        after_sl = concepts.safety_level_actions(augmented)
        if after_la != after_sl:
            return _fail(
                name,
                f"k={k}: augmented loss-averse {sorted(after_la)} differs from "
                f"safety {sorted(after_sl)}",
            )
    return CheckResult(
        name, True, f"{n} family members collapse to the safety set under both weights"
    )


def check_aim_big_and_star_exclusions(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "aim-big-and-star-exclusions"
    verdicts = instances.aim_big_exact_verdicts()
    if set(verdicts.loss_averse) != {"B", "S"}:
        return _fail(name, f"closed-form loss-averse {sorted(verdicts.loss_averse)} is not {{B, S}}")
    if set(verdicts.loss_averse_star) != {"S"}:
        return _fail(name, f"closed-form one-sided set {sorted(verdicts.loss_averse_star)} is not {{S}}")
    n = _counts(budget)["exclusion_games"]
    rng = random.Random(seed + 2)
    for i in range(n):
        game = instances.random_game(rng)
        dominated = concepts.strictly_dominated_actions(game)
        starred = concepts.loss_averse_star_actions(game)
        overlap = dominated & starred
        if overlap:
            return _fail(
                name, f"random game #{i}: strictly dominated {sorted(overlap)} passed the one-sided test"
            )
    return CheckResult(
        name, True, f"closed forms match; {n} random games, no dominated action slips through"
    )


def _core_family(item_count: int) -> tuple[vcg.CombBid, ...]:
    """Nature states for reversal and equivalence scans, half-step levels."""
    if item_count <= 2:
        levels = tuple(Fraction(k, 2) for k in range(6))
    else:
        levels = (Fraction(0), Fraction(1), Fraction(2))
    return vcg.nature_state_family(item_count, levels)


def _handle_attack(
    valuation: vcg.CombValuation,
    bids: tuple[vcg.CombBid, ...],
    epsilon: Fraction,
    family: tuple[vcg.CombBid, ...],
    tally: Counter,
) -> str | None:
    """Run the classification-specific certificate; a string is a failure."""
    kind = vcg.classify_attack(valuation, bids).kind
    if kind is vcg.AttackKind.OVERBIDDING:
        report = vcg.overbidding_adversary(valuation, bids, epsilon=epsilon)
        if report.refuted:
            if not (report.attack_utility < 0 <= report.truth_utility):
                return (
                    f"punishment pair ({report.attack_utility}, {report.truth_utility}) "
                    "is not (<0, >=0)"
                )
            tally["overbidding-punished"] += 1
            return None
        check = vcg.claim_family_check(valuation, bids, family, extra=report.tried)
        if check.reversal:
            return (
                f"reversal state {check.zero_truth_state} on valuation "
                f"{valuation.values} attack {[b.values for b in bids]}"
            )
        if check.difference_states == 0:
            tally["overbidding-equivalent"] += 1
            return None
        if check.truth_min is not None and check.truth_min >= check.attack_min:
            tally["overbidding-dominated"] += 1
            return None
        return (
            f"unpunished overbid with truth min {check.truth_min} below attack min "
            f"{check.attack_min}: valuation {valuation.values} attack {[b.values for b in bids]}"
        )
    if kind is vcg.AttackKind.UNDERBIDDING:
        report = vcg.underbidding_adversary(valuation, bids, epsilon=epsilon)
        check = vcg.claim_family_check(valuation, bids, family, extra=report.tried)
        if check.reversal:
            return (
                f"reversal state {check.zero_truth_state} on valuation "
                f"{valuation.values} attack {[b.values for b in bids]}"
            )
        if report.refuted:
            if not (report.attack_utility == 0 and report.truth_utility > 0):
                return f"witness pair ({report.attack_utility}, {report.truth_utility}) is not (0, >0)"
            tally["underbidding-refuted"] += 1
            return None
        if check.difference_states == 0:
            tally["underbidding-equivalent"] += 1
            return None
        if check.truth_min is not None and check.truth_min >= check.attack_min:
            tally["underbidding-dominated"] += 1
            return None
        return (
            f"unrefuted underbid with truth min {check.truth_min} below attack min "
            f"{check.attack_min}: valuation {valuation.values} attack {[b.values for b in bids]}"
        )
    certificate = vcg.truth_loss_averse_witnesses(valuation, bids, family)
    tally[f"exact-{certificate.mode}"] += 1
    return None


def _random_m3_instance(
    rng: random.Random, mode: int
) -> tuple[vcg.CombValuation, tuple[vcg.CombBid, ...]]:
    item_count = 3
    size = 1 << item_count
    values = (Fraction(0),) + tuple(Fraction(rng.randint(0, 3)) for _ in range(size - 1))
    valuation = vcg.CombValuation(item_count, values)
    step = vcg.bid_grid_step(Fraction(1), item_count)
    if mode == 2:
        carried = [Fraction(0)] * size
        rest = [Fraction(0)] * size
        for mask in range(1, size):
            (carried if rng.random() < 1 / 2 else rest)[mask] = values[mask]
        attack = (
            vcg.CombBid(item_count, tuple(carried)),
            vcg.CombBid(item_count, tuple(rest)),
        )
    else:
        count = 1 if mode == 0 else 2
        attack = tuple(
            vcg.CombBid(
                item_count,
                (Fraction(0),)
                + tuple(step * rng.randint(0, 36) for _ in range(size - 1)),
            )
            for _ in range(count)
        )
    return valuation, attack


def check_vcg_attack_properties(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "vcg-attack-properties"
    tally: Counter = Counter()
    epsilon = Fraction(1)
    exact_pool: list[tuple[int, vcg.SybilProfile]] = []

    for item_count in (1, 2):
        family = _core_family(item_count)
        valuations = tuple(vcg.enumerate_valuations(item_count, epsilon, 2))
        attacks = tuple(vcg.enumerate_attacks(item_count, epsilon, 2, 2))
        for valuation in valuations:
            for bids in attacks:
                failure = _handle_attack(valuation, bids, epsilon, family, tally)
                if failure:
                    return _fail(name, failure)
                if vcg.classify_attack(valuation, bids).kind is vcg.AttackKind.EXACT_BIDDING:
                    profile = vcg.SybilProfile(valuation, bids)
                    vcg.verify_exact_bidding_optimal([profile], item_count, epsilon=epsilon)
                    exact_pool.append((item_count, profile))
                    tally["exact-welfare-single"] += 1

    rng = random.Random(seed + 3)
    pool_by_items: dict[int, list[vcg.SybilProfile]] = {}
    for item_count, profile in exact_pool:
        pool_by_items.setdefault(item_count, []).append(profile)
    for _ in range(_counts(budget)["multi_agent_profiles"]):
        item_count = rng.choice(sorted(pool_by_items))
        pool = pool_by_items[item_count]
        profiles = [rng.choice(pool) for _ in range(rng.randint(2, 3))]
        vcg.verify_exact_bidding_optimal(profiles, item_count, epsilon=epsilon)
        tally["exact-welfare-multi"] += 1

    family3 = _core_family(3)
    for i in range(_counts(budget)["vcg_random"]):
        valuation, bids = _random_m3_instance(rng, i % 3)
        failure = _handle_attack(valuation, bids, epsilon, family3, tally)
        if failure:
            return _fail(name, failure)
        tally["random-m3"] += 1

    needed = (
        "overbidding-punished",
        "underbidding-refuted",
        "exact-case-1",
        "exact-case-2",
        "exact-welfare-single",
        "exact-welfare-multi",
    )
    missing = [key for key in needed if not tally[key]]
    if missing:
        return _fail(name, f"suite never exercised: {', '.join(missing)}")
    ordered = ", ".join(f"{key}={tally[key]}" for key in sorted(tally))
    return CheckResult(name, True, ordered)


def check_split_pair_instance(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "vcg-split-pair-instance"
    for eps in (Fraction(1, 10), Fraction(1, 100)):
        report = vcg.build_split_pair_instance(eps)
        items = report.items
        got = tuple(
            vcg.bundle_label(mask, items) for mask in report.attack_bundles
        )
        if got != ("a,b", "c,d"):
            return _fail(name, f"eps {eps}: attack bundles {got}")
        if report.attack_real_welfare != 6 * eps:
            return _fail(name, f"eps {eps}: real welfare {report.attack_real_welfare}")
        if report.clarke_payments != (Fraction(18), Fraction(18)):
            return _fail(name, f"eps {eps}: pivot payments {report.clarke_payments}")
        if report.literal_payments != (Fraction(20), Fraction(20)):
            return _fail(name, f"eps {eps}: literal payments {report.literal_payments}")
        if report.truthful_welfare != 18 + 6 * eps:
            return _fail(name, f"eps {eps}: truthful optimum {report.truthful_welfare}")
        if report.truthful_agent_utility != 4 * eps:
            return _fail(name, f"eps {eps}: truthful utility {report.truthful_agent_utility}")
        if report.classification.kind is not vcg.AttackKind.OVERBIDDING:
            return _fail(name, f"eps {eps}: classified {report.classification.kind.value}")
        if len(report.discrepancies) != 4:
            return _fail(name, f"eps {eps}: {len(report.discrepancies)} discrepancy flags")
    return CheckResult(
        name,
        True,
        "both grid steps: bundles a,b / c,d, welfare 6*step, payments "
        "(18, 18) pivot and (20, 20) literal, 4 source discrepancies flagged",
    )


def check_singleton_split_instance(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "vcg-singleton-split-instance"
    eps = Fraction(1, 10)
    report = vcg.build_singleton_split_instance(eps)
    if report.classification.kind is not vcg.AttackKind.UNDERBIDDING:
        return _fail(name, f"classified {report.classification.kind.value}")
    if report.truth_utility != eps:
        return _fail(name, f"truthful utility {report.truth_utility} is not {eps}")
    if report.attack_utility != 2 * eps:
        return _fail(name, f"attack utility {report.attack_utility} is not {2 * eps}")
    return CheckResult(
        name,
        True,
        "underbidding classification, truth earns step, attack earns twice that",
    )


def check_facility_location(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "facility-location-closed-forms"
    pairs = 0
    for n in range(2, 6):
        for k in range(0, 4 * n + 1):
            theta = Fraction(k, 4 * n)
            want = format_scalar(mechanisms.facility_loss_averse_report(theta, n))
            game = mechanisms.facility_game(
                mechanisms.FacilitySpec(n, theta, Fraction(1, 4 * n))
            )
            la = concepts.loss_averse_actions(game)
            sl = concepts.safety_level_actions(game)
            if la != {want} or sl != {want}:
                return _fail(
                    name,
                    f"n={n} theta={theta}: formula {want}, engine loss-averse "
                    f"{sorted(la)}, safety {sorted(sl)}",
                )
            pairs += 1
    for n in range(2, 11):
        demo = mechanisms.facility_welfare_loss_demo(n)
        want_loss = (Fraction(1, 2) - Fraction(1, 2 * n)) * n
        if demo.welfare_loss != want_loss:
            return _fail(name, f"n={n}: welfare loss {demo.welfare_loss} is not {want_loss}")
    return CheckResult(
        name,
        True,
        f"{pairs} aligned (type, n) pairs match the formula; "
        "welfare-loss demo exact for n = 2..10",
    )


_VOTING_UTILITIES = {
    2: (Fraction(1), Fraction(0)),
    3: (Fraction(1), Fraction(1, 2), Fraction(0)),
    4: (Fraction(1), Fraction(2, 3), Fraction(1, 3), Fraction(0)),
}


def check_voting_rules(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "voting-rules"
    for n, f in _VOTING_UTILITIES.items():
        for spec in (mechanisms.plurality_spec(n, f), mechanisms.approval_spec(n, f)):
            mechanisms.voting_pareto_frontier_loss_averse(spec)

    for f in (
        (Fraction(1), Fraction(1, 2), Fraction(0)),
        (Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(0)),
        (Fraction(1), Fraction(9, 10), Fraction(1, 10), Fraction(0)),
    ):
        equalization = mechanisms.plurality_mixed_equalization(f)
        weights = sum(1 / x for x in f[:-1])
        if equalization.level != 1 / weights:
            return _fail(name, f"f={f}: pivotal level {equalization.level}")
        mechanisms.plurality_min_max_regret(f)

    rng = random.Random(seed + 4)
    n_perturb = _counts(budget)["perturbations"]
    falsified = 0
    for i in range(n_perturb):
        f = (Fraction(1), Fraction(1, 2), Fraction(0)) if i % 2 else (
            Fraction(1), Fraction(1, 2), Fraction(1, 4), Fraction(0)
        )
        game = mechanisms.psr_game(mechanisms.plurality_spec(len(f), f))
        good = mechanisms.plurality_mixed_loss_averse(f)
        entries = dict(good.entries)
        source = rng.choice(sorted(entries))
        target = rng.choice([a for a in game.actions if a != source])
        delta = entries[source] * Fraction(1, rng.randint(2, 7))
        entries[source] -= delta
        entries[target] = entries.get(target, Fraction(0)) + delta
        candidate = MixedAction.from_mapping(entries)
        result = concepts.mixed_loss_averse_falsify(game, candidate, [good])
        if result.verdict is not FalsifyVerdict.FALSIFIED:
            return _fail(name, f"perturbation #{i} of {source} survived against the optimum")
        falsified += 1

    if mechanisms.approval_min_max_regret_top_k((Fraction(1), Fraction(0))) != 1:
        return _fail(name, "two candidates: top-k is not 1")
    k = mechanisms.approval_min_max_regret_top_k(
        (Fraction(1), Fraction(9, 10), Fraction(1, 10), Fraction(0))
    )
    if k != 2:
        return _fail(name, f"regression constant moved: top-k {k} is not 2")

    aspec = mechanisms.approval_spec(3, _VOTING_UTILITIES[3])
    game = mechanisms.psr_game(aspec)
    all_but_worst = mechanisms.ballot_label((Fraction(1), Fraction(1), Fraction(0)))
    deviation = MixedAction.pure(all_but_worst)
    for ballot in game.actions:
        if ballot == all_but_worst:
            continue
        result = concepts.mixed_loss_averse_falsify(
            game, MixedAction.pure(ballot), [deviation]
        )
        if result.verdict is not FalsifyVerdict.FALSIFIED:
            return _fail(name, f"approval ballot {ballot} survived the all-but-worst test")

    return CheckResult(
        name,
        True,
        f"frontier lemma holds for both rules at 3 sizes; equalization exact; "
        f"{falsified} perturbed mixtures falsified; top-k regression stable",
    )


def _oracle_game_pool(budget: str, seed: int) -> list[AgentGame]:
    games: list[AgentGame] = []
    for value, eps in dfpa_test_grid():
        games.append(singleitem.dfpa_game(singleitem.default_dfpa_spec(value, eps)))
    for name in sorted(instances.CURATED_GAMES):
        games.append(instances.curated_game(name))
    for k in (1, 5, 20):
        game, augmentation = instances.collapse_demo_game(k)
        games.append(game)
        games.append(concepts.augment_with_mixed_nature(game, augmentation))
    for n in (2, 3):
        for k in range(0, 4 * n + 1, 2):
            games.append(
                mechanisms.facility_game(
                    mechanisms.FacilitySpec(n, Fraction(k, 4 * n), Fraction(1, 4 * n))
                )
            )
    for n, f in _VOTING_UTILITIES.items():
        games.append(mechanisms.psr_game(mechanisms.plurality_spec(n, f)))
        if n <= 3:
            games.append(mechanisms.psr_game(mechanisms.approval_spec(n, f)))
    rng = random.Random(seed)
    for _ in range(_counts(budget)["random_games"]):
        games.append(instances.random_game(rng))
    return games


def check_oracle_equivalence(budget: str = "default", seed: int = 0) -> CheckResult:
    name = "oracle-equivalence"
    games = _oracle_game_pool(budget, seed)
    for game in games:
        if oracle.naive_loss_averse(game) != concepts.loss_averse_actions(game):
            return _fail(name, f"loss-averse mismatch on a {game.type_label} game")
        if oracle.naive_leximin(game, False) != concepts.leximin_actions(game):
            return _fail(name, f"leximin mismatch on a {game.type_label} game")
        if oracle.naive_leximin(game, True) != concepts.multi_leximin_actions(game):
            return _fail(name, f"multi-leximin mismatch on a {game.type_label} game")

    compared = 0
    for item_count in (1, 2):
        nature = vcg.nature_state_family(item_count, (Fraction(0), Fraction(1), Fraction(2)))
        for bids in vcg.enumerate_attacks(item_count, Fraction(1), 2, 2):
            for extra in (None, nature[len(nature) // 2]):
                tables = [b.values for b in bids]
                if extra is not None:
                    tables.append(extra.values)
                welfare, _ = vcg.winner_determination(
                    [vcg.CombBid(item_count, tuple(t)) for t in tables], item_count
                )
                naive_welfare, _ = oracle.naive_winner_determination(tables, item_count)
                if welfare != naive_welfare:
                    return _fail(
                        name,
                        f"welfare mismatch {welfare} vs {naive_welfare} on {tables}",
                    )
                compared += 1

    split = vcg.build_split_pair_instance(Fraction(1, 10))
    split_bids = [bid for profile in split.attack_profiles for bid in profile.bids]
    single = vcg.build_singleton_split_instance(Fraction(1, 10))
    single_bids = list(single.attack_bids) + [single.nature_bid]
    for bids, item_count in ((split_bids, 4), (single_bids, 3)):
        welfare, _ = vcg.winner_determination(bids, item_count)
        naive_welfare, _ = oracle.naive_winner_determination(
            [b.values for b in bids], item_count
        )
        if welfare != naive_welfare:
            return _fail(name, "welfare mismatch on a curated auction instance")
        compared += 1

    return CheckResult(
        name,
        True,
        f"{len(games)} games agree on three concepts; "
        f"{compared} winner determinations agree with the naive search",
    )


ALL_CHECKS = (
    check_dfpa_loss_averse_closed_form,
    check_fpa_witness_battery,
    check_hierarchy_and_counterexamples,
    check_multi_leximin_existence,
    check_dfpa_min_max_regret,
    check_safety_collapse_family,
    check_aim_big_and_star_exclusions,
    check_vcg_attack_properties,
    check_split_pair_instance,
    check_singleton_split_instance,
    check_facility_location,
    check_voting_rules,
    check_oracle_equivalence,
)


def run_all(budget: str = "default", seed: int = 0) -> tuple[CheckResult, ...]:
    """Run every check, converting an unexpected exception into a failure."""
    _counts(budget)
    results = []
    for check in ALL_CHECKS:
        try:
            results.append(check(budget, seed))
        except Exception as error:  # noqa: BLE001 - report, never hide
            name = check.__name__.removeprefix("check_").replace("_", "-")
            results.append(CheckResult(name, False, f"raised {error!r}"))
    return tuple(results)
