"""Tell-tale set construction and verification for finite language families.

For each member L_i the constructed set collects one canonical witness string
from L_i - L_j for every family member L_j properly contained in L_i. A
finite-class learner built on such sets converges to the target member under
any fair presentation and never overgeneralizes once the target's tell-tale
has appeared.
"""

from __future__ import annotations

from dataclasses import dataclass

from .games import Learner
from .languages import (
    FamilyValidationError,
    LanguageFamily,
    difference_witness,
    is_proper_subset,
    is_subset,
)


@dataclass(frozen=True)
class TellTaleAssignment:
    """Finite witness sets, parallel to the family's member order."""

    sets: tuple[frozenset[str], ...]

    def to_document(self, family: LanguageFamily) -> list[dict]:
        """External form: [{name, telltale: [strings]}] in family order."""
        if len(self.sets) != len(family):
            raise ValueError("assignment is not parallel to the family")
        return [
            {"name": name, "telltale": sorted(tts, key=family.alphabet.sort_key)}
            for name, tts in zip(family.names, self.sets)
        ]


def construct_telltales(family: LanguageFamily) -> TellTaleAssignment:
    """Build the canonical tell-tale assignment for a finite family.

    Deterministic because each witness is the length-lex-smallest string in
    the corresponding difference. Raises FamilyValidationError when a witness
    search comes up empty, which can only happen for indistinct members.
    """
    sets: list[frozenset[str]] = []
    for i, li in enumerate(family.languages):
        witnesses: set[str] = set()
        for j, lj in enumerate(family.languages):
            if i == j or not is_proper_subset(lj, li):
                continue
            w = difference_witness(li, lj)
            if w is None:
                raise FamilyValidationError(
                    f"no witness separates {family.names[i]!r} from {family.names[j]!r};"
                    " are they distinct?"
                )
            witnesses.add(w)
        sets.append(frozenset(witnesses))
    return TellTaleAssignment(tuple(sets))


def verify_angluin_condition(
    family: LanguageFamily, telltales: TellTaleAssignment
) -> tuple[bool, tuple[int, int] | None]:
    """Check the tell-tale condition; on failure return the violating (i, j).

    Condition: every T_i is a subset of L_i, and whenever T_i fits inside
    another member L_j, that L_j is not a proper subset of L_i. A failure of
    the first clause is reported as (i, i). Indices are 0-based.
    """
    if len(telltales.sets) != len(family):
        raise ValueError("assignment is not parallel to the family")
    langs = family.languages
    for i, tts in enumerate(telltales.sets):
        if not all(langs[i].contains(s) for s in tts):
            return False, (i, i)
    for i, tts in enumerate(telltales.sets):
        for j in range(len(langs)):
            if i == j:
                continue
            if all(langs[j].contains(s) for s in tts) and is_proper_subset(langs[j], langs[i]):
                return False, (i, j)
    return True, None


class FiniteClassLearner(Learner):
    """Learner for a finite family with verified tell-tale sets.

    Hypothesis rule, on observations S: the lowest index i with T_i already
    inside S and S inside L_i; failing that, the lowest consistent index;
    failing that, the no-hypothesis sentinel (None). Consistency flags and
    outstanding tell-tale strings are maintained incrementally, so each
    update costs O(|family|).
    """

    name = "telltale"

    def __init__(self, family: LanguageFamily, telltales: TellTaleAssignment):
        super().__init__(family)
        ok, violation = verify_angluin_condition(family, telltales)
        if not ok:
            raise FamilyValidationError(f"tell-tale condition violated at pair {violation}")
        self.telltales = telltales
        self._consistent = [True] * len(family)
        self._missing: list[set[str]] = [set(tts) for tts in telltales.sets]

    def observe(self, s: str) -> int | None:
        self.family.alphabet.check_string(s)
        for i, lang in enumerate(self.family.languages):
            if self._consistent[i] and not lang.contains(s):
                self._consistent[i] = False
            self._missing[i].discard(s)
        for i in range(len(self.family)):
            if self._consistent[i] and not self._missing[i]:
                return i
        for i in range(len(self.family)):
            if self._consistent[i]:
                return i
        return None


def make_finite_class_learner(
    family: LanguageFamily, telltales: TellTaleAssignment | None = None
) -> FiniteClassLearner:
    """Build the finite-class learner, constructing tell-tales when not given."""
    if telltales is None:
        telltales = construct_telltales(family)
    return FiniteClassLearner(family, telltales)
