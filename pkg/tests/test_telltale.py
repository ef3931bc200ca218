"""Tell-tale construction, condition verification, and the finite-class learner."""

from __future__ import annotations

import random

import pytest

from helpers_families import brute_verify_telltale_condition, random_finite_family
from identlim.languages import (
    Alphabet,
    FamilyValidationError,
    FiniteLanguage,
    LanguageFamily,
    build_unary_nested_family,
)
from identlim.telltale import (
    TellTaleAssignment,
    construct_telltales,
    make_finite_class_learner,
    verify_angluin_condition,
)

ABC = Alphabet(("a", "b", "c"))


def chain3() -> LanguageFamily:
    return LanguageFamily(
        (
            FiniteLanguage(ABC, frozenset({"a"})),
            FiniteLanguage(ABC, frozenset({"a", "b"})),
            FiniteLanguage(ABC, frozenset({"a", "b", "c"})),
        ),
        ("A", "AB", "ABC"),
    )


def incomparable() -> LanguageFamily:
    return LanguageFamily(
        (
            FiniteLanguage(ABC, frozenset({"a"})),
            FiniteLanguage(ABC, frozenset({"b"})),
            FiniteLanguage(ABC, frozenset({"c"})),
        ),
        ("A", "B", "C"),
    )


class TestConstruct:
    def test_three_chain(self):
        # Hand-run of the construction: for each member, one canonical witness
        # per properly contained member.
        tts = construct_telltales(chain3())
        assert tts.sets == (frozenset(), frozenset({"b"}), frozenset({"b", "c"}))
        ok, violation = verify_angluin_condition(chain3(), tts)
        assert ok and violation is None

    def test_no_containments_means_empty_sets(self):
        tts = construct_telltales(incomparable())
        assert tts.sets == (frozenset(), frozenset(), frozenset())

    def test_unary_chain_without_top(self):
        family = build_unary_nested_family(3)
        trimmed = LanguageFamily(family.languages[:3], family.names[:3])
        tts = construct_telltales(trimmed)
        assert tts.sets == (frozenset(), frozenset({"xx"}), frozenset({"xx", "xxx"}))

    def test_nested_family_with_top_has_finite_telltales(self):
        family = build_unary_nested_family(4)
        tts = construct_telltales(family)
        # The top member needs one witness per threshold below it.
        assert tts.sets[-1] == frozenset({"xx", "xxx", "xxxx", "xxxxx"})
        assert verify_angluin_condition(family, tts) == (True, None)


class TestVerify:
    def test_all_empty_fails_on_chain(self):
        family = chain3()
        empty = TellTaleAssignment((frozenset(), frozenset(), frozenset()))
        ok, violation = verify_angluin_condition(family, empty)
        assert not ok
        # First violation scanning in index order: T_1 = {} fits inside the
        # strictly smaller member at index 0.
        assert violation == (1, 0)

    def test_all_empty_passes_when_incomparable(self):
        family = incomparable()
        empty = TellTaleAssignment((frozenset(), frozenset(), frozenset()))
        assert verify_angluin_condition(family, empty) == (True, None)

    def test_telltale_outside_language_reported_as_diagonal(self):
        family = chain3()
        bad = TellTaleAssignment((frozenset({"c"}), frozenset({"b"}), frozenset({"b", "c"})))
        assert verify_angluin_condition(family, bad) == (False, (0, 0))

    def test_agrees_with_brute_force_checker(self):
        family = chain3()
        for sets in [
            construct_telltales(family).sets,
            (frozenset(), frozenset(), frozenset()),
            (frozenset({"a"}), frozenset({"a"}), frozenset({"c"})),
        ]:
            tts = TellTaleAssignment(sets)
            assert verify_angluin_condition(family, tts) == brute_verify_telltale_condition(
                family, tts
            )


class TestLearner:
    def test_hypotheses_on_chain(self):
        learner = make_finite_class_learner(chain3())
        assert learner.observe("a") == 0
        learner = make_finite_class_learner(chain3())
        learner.observe("a")
        assert learner.observe("b") == 1
        learner = make_finite_class_learner(chain3())
        assert learner.observe("c") == 2

    def test_sentinel_when_nothing_consistent(self):
        family = incomparable()
        learner = make_finite_class_learner(family)
        learner.observe("a")
        assert learner.observe("b") is None

    def test_rejects_unverified_assignment(self):
        family = chain3()
        empty = TellTaleAssignment((frozenset(), frozenset(), frozenset()))
        with pytest.raises(FamilyValidationError):
            make_finite_class_learner(family, empty)

    def test_document_form(self):
        family = chain3()
        tts = construct_telltales(family)
        doc = tts.to_document(family)
        assert doc == [
            {"name": "A", "telltale": []},
            {"name": "AB", "telltale": ["b"]},
            {"name": "ABC", "telltale": ["b", "c"]},
        ]


def test_constructed_assignments_always_verify():
    # Randomized finite families: construction must satisfy the condition and
    # agree with the enumeration-based checker.
    rng = random.Random(20250810)
    for _ in range(300):
        family = random_finite_family(rng)
        tts = construct_telltales(family)
        assert verify_angluin_condition(family, tts) == (True, None)
        assert brute_verify_telltale_condition(family, tts) == (True, None)
