"""Teacher/learner simulation engine for positive-data learning games.

Teachers emit one string per step; learners fold each string into a hypothesis
(a family index, or None when no family member is consistent). The engine
audits the consistency condition at every step, counts mind-changes, and for
adversarial teachers attaches a finite certificate (a refuting completion)
instead of claiming limit behaviour.

Adversaries are deterministic functions of the learner's visible hypothesis
trace; identical inputs therefore produce byte-identical reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .languages import (
    FiniteLanguage,
    Language,
    LanguageFamily,
    RegularLanguage,
    UnaryAllLanguage,
    UnaryThresholdLanguage,
    is_subset,
    same_language,
)


class Learner:
    """Online hypothesis updater over a fixed language family.

    ``observe`` consumes one string and returns the current hypothesis: an
    index into ``family`` or None when the data contradicts every member.
    Learner instances accumulate state; use one per simulation.
    """

    name: str = "learner"

    def __init__(self, family: LanguageFamily):
        self.family = family

    def observe(self, s: str) -> int | None:
        raise NotImplementedError


class Teacher:
    """Stateful string source; may react to the learner's hypothesis trace."""

    name: str = "teacher"

    def next_string(self, hypothesis_trace: Sequence[int | None]) -> str:
        raise NotImplementedError

    def resolve(
        self, family: LanguageFamily, final_hypothesis: int | None
    ) -> tuple[str | None, bool, str | None]:
        """Post-run verdict: (declared target name, final_correct, refuting completion)."""
        raise NotImplementedError


@dataclass(frozen=True)
class SimulationReport:
    """Trace, mind-change accounting, and verdict for one finite-horizon run."""

    learner: str
    teacher: str
    horizon: int
    hypothesis_trace: tuple["int | None", ...]
    hypothesis_names: tuple["str | None", ...]
    mind_changes: int
    converged_at: int
    final_correct: bool
    target: str | None
    transcript: tuple[str, ...]
    refuting_completion: str | None = None
    escalations: int | None = None
    consistency_violations: tuple[int, ...] = ()

    def to_json_dict(self) -> dict:
        """External report document; the raw transcript stays in memory only."""
        doc = {
            "learner": self.learner,
            "teacher": self.teacher,
            "horizon": self.horizon,
            "hypothesis_trace": list(self.hypothesis_names),
            "mind_changes": self.mind_changes,
            "converged_at": self.converged_at,
            "final_correct": self.final_correct,
            "target": self.target,
            "consistency_violations": list(self.consistency_violations),
        }
        if self.refuting_completion is not None:
            doc["refuting_completion"] = self.refuting_completion
        if self.escalations is not None:
            doc["escalations"] = self.escalations
        return doc

    CSV_FIELDS = (
        "learner",
        "teacher",
        "horizon",
        "mind_changes",
        "converged_at",
        "final_correct",
        "target",
        "refuting_completion",
        "escalations",
        "consistency_violations",
    )

    def to_csv_row(self) -> dict:
        return {
            "learner": self.learner,
            "teacher": self.teacher,
            "horizon": self.horizon,
            "mind_changes": self.mind_changes,
            "converged_at": self.converged_at,
            "final_correct": self.final_correct,
            "target": self.target or "",
            "refuting_completion": self.refuting_completion or "",
            "escalations": "" if self.escalations is None else self.escalations,
            "consistency_violations": len(self.consistency_violations),
        }


def _members_of_length(lang: Language, length: int) -> list[str]:
    if isinstance(lang, (UnaryThresholdLanguage, UnaryAllLanguage)):
        s = lang.symbol * length
        return [s] if length >= 1 and lang.contains(s) else []
    if isinstance(lang, FiniteLanguage):
        return [s for s in lang.enumerate_up_to(length) if len(s) == length]
    return [s for s in lang.alphabet.strings_of_length(length) if lang.contains(s)]


def _finite_members(lang: Language) -> list[str]:
    """All members of a finite language; exact via the kind-specific length bound."""
    if isinstance(lang, FiniteLanguage):
        return lang.enumerate_up_to(max((len(s) for s in lang.strings), default=0))
    if isinstance(lang, UnaryThresholdLanguage):
        return lang.enumerate_up_to(lang.k)
    if isinstance(lang, RegularLanguage):
        # A finite regular language has no member of length >= state_count.
        return lang.enumerate_up_to(lang.dfa.state_count - 1)
    raise ValueError(f"{type(lang).__name__} is not finite")


class FairTeacher(Teacher):
    """Presents the target's members in length-lex order, level by level.

    All members of length <= m are emitted before any member of length m + 1,
    so every member appears by a computable step (``promised_step``). A finite
    target cycles after exhaustion; an infinite one streams forever.
    """

    def __init__(self, language: Language, target_name: str = "target", bound_schedule=None):
        self.language = language
        self.target_name = target_name
        self.name = f"fair({target_name})"
        if language.is_infinite():
            self._members: list[str] | None = None
        else:
            members = _finite_members(language)
            if not members:
                raise ValueError("fair teacher requires a non-empty target language")
            self._members = members
        self._schedule = bound_schedule
        self._iter = self._stream()

    def _stream(self) -> Iterator[str]:
        if self._members is not None:
            while True:
                yield from self._members
        levels = iter(self._schedule) if self._schedule is not None else itertools.count(0)
        for level in levels:
            yield from _members_of_length(self.language, level)

    def next_string(self, hypothesis_trace: Sequence[int | None]) -> str:
        return next(self._iter)

    def promised_step(self, s: str) -> int:
        """1-based step by which member ``s`` is guaranteed to have appeared."""
        if not self.language.contains(s):
            raise ValueError(f"{s!r} is not in the target language")
        key = self.language.alphabet.sort_key
        earlier = self.language.enumerate_up_to(len(s))
        return sum(1 for t in earlier if key(t) <= key(s))

    def resolve(self, family, final_hypothesis):
        if final_hypothesis is None:
            return self.target_name, False, None
        correct = same_language(family.languages[final_hypothesis], self.language)
        return self.target_name, correct, None


def fair_teacher(language: Language, target_name: str = "target", bound_schedule=None) -> FairTeacher:
    return FairTeacher(language, target_name, bound_schedule)


class MinConsistentLearner(Learner):
    """Always guesses the lowest-index family member consistent with all observations.

    The lowest consistent index is nondecreasing over time (data only shrinks
    the consistent set), so a verified pointer plus a nesting shortcut keeps
    each update near O(1) on chain families.
    """

    name = "min-consistent"

    def __init__(self, family: LanguageFamily):
        super().__init__(family)
        self._seen: set[str] = set()
        self._pointer: int | None = 0  # family[0] is vacuously consistent with no data
        self._subset_cache: dict[tuple[int, int], bool] = {}

    def _cached_subset(self, i: int, j: int) -> bool:
        key = (i, j)
        if key not in self._subset_cache:
            self._subset_cache[key] = is_subset(self.family.languages[i], self.family.languages[j])
        return self._subset_cache[key]

    def observe(self, s: str) -> int | None:
        self.family.alphabet.check_string(s)
        self._seen.add(s)
        if self._pointer is None:
            return None
        langs = self.family.languages
        if langs[self._pointer].contains(s):
            return self._pointer
        prev = self._pointer  # consistent with everything seen before s
        for cand in range(prev + 1, len(langs)):
            if self._cached_subset(prev, cand) and langs[cand].contains(s):
                self._pointer = cand
                return cand
            if all(langs[cand].contains(t) for t in self._seen):
                self._pointer = cand
                return cand
        self._pointer = None
        return None


def min_consistent_learner(family: LanguageFamily) -> MinConsistentLearner:
    return MinConsistentLearner(family)


class ConstantLearner(Learner):
    """Ignores all data and reports a fixed family index."""

    def __init__(self, family: LanguageFamily, index: int, name: str | None = None):
        super().__init__(family)
        if not 0 <= index < len(family):
            raise ValueError(f"index {index} out of range for family of size {len(family)}")
        self.index = index
        self.name = name or f"constant({family.names[index]})"

    def observe(self, s: str) -> int | None:
        return self.index


def constant_top_learner(family: LanguageFamily) -> ConstantLearner:
    """Always guesses the last family member (the top of a nested chain)."""
    return ConstantLearner(family, len(family) - 1, name="always-top")


class _ConsistencyAuditor:
    """Incremental check that each hypothesis contains everything seen so far."""

    def __init__(self, family: LanguageFamily):
        self.family = family
        self.seen: set[str] = set()
        self._prev: int | None = None
        self._prev_ok = True
        self._subset_cache: dict[tuple[int, int], bool] = {}

    def _subset(self, i: int, j: int) -> bool:
        key = (i, j)
        if key not in self._subset_cache:
            self._subset_cache[key] = is_subset(self.family.languages[i], self.family.languages[j])
        return self._subset_cache[key]

    def record(self, s: str, hypothesis: int | None) -> bool:
        """Add observation ``s``; return True when ``hypothesis`` is acceptable."""
        self.seen.add(s)
        langs = self.family.languages
        if hypothesis is None:
            # The sentinel is acceptable only when nothing in the family fits.
            ok = not any(all(lang.contains(t) for t in self.seen) for lang in langs)
        elif (
            self._prev == hypothesis
            and self._prev_ok
            and langs[hypothesis].contains(s)
        ):
            ok = True
        elif (
            self._prev is not None
            and self._prev_ok
            and self._subset(self._prev, hypothesis)
            and langs[hypothesis].contains(s)
        ):
            ok = True
        else:
            ok = all(langs[hypothesis].contains(t) for t in self.seen)
        self._prev = hypothesis
        self._prev_ok = ok if hypothesis is not None else False
        return ok


def _trace_stats(trace: Sequence[int | None]) -> tuple[int, int]:
    mind_changes = 0
    converged_at = 1
    for i in range(1, len(trace)):
        if trace[i] != trace[i - 1]:
            mind_changes += 1
            converged_at = i + 1
    return mind_changes, converged_at


def run_simulation(teacher: Teacher, learner: Learner, horizon: int) -> SimulationReport:
    """Feed exactly ``horizon`` strings from teacher to learner and report.

    Consistency violations (a hypothesis that excludes an observed string, or
    the sentinel while some member still fits) are recorded per step, never
    silently dropped.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    family = learner.family
    auditor = _ConsistencyAuditor(family)
    trace: list[int | None] = []
    transcript: list[str] = []
    violations: list[int] = []
    for step in range(1, horizon + 1):
        s = teacher.next_string(trace)  # read-only view of the trace so far
        h = learner.observe(s)
        transcript.append(s)
        trace.append(h)
        if not auditor.record(s, h):
            violations.append(step)
    mind_changes, converged_at = _trace_stats(trace)
    final_h = trace[-1]
    target, final_correct, completion = teacher.resolve(family, final_h)
    names = tuple(None if h is None else family.names[h] for h in trace)
    return SimulationReport(
        learner=learner.name,
        teacher=teacher.name,
        horizon=horizon,
        hypothesis_trace=tuple(trace),
        hypothesis_names=names,
        mind_changes=mind_changes,
        converged_at=converged_at,
        final_correct=final_correct,
        target=target,
        transcript=tuple(transcript),
        refuting_completion=completion,
        escalations=getattr(teacher, "escalations", None),
        consistency_violations=tuple(violations),
    )


def _validate_nested_family(family: LanguageFamily) -> None:
    langs = family.languages
    if not isinstance(langs[-1], UnaryAllLanguage):
        raise ValueError("nested adversary needs the full-unary language as the last member")
    for i, lang in enumerate(langs[:-1]):
        if not (isinstance(lang, UnaryThresholdLanguage) and lang.k == i + 1):
            raise ValueError("nested adversary needs thresholds L_1..L_max_k in index order")


class NestedLadderAdversary(Teacher):
    """Diagonalizes against the learner on the nested unary family.

    While the learner names a finite threshold L_k, emit one symbol more than
    k (refuting L_k yet staying consistent with every larger member and with
    the full language); while it names the full language or the sentinel,
    repeat the shortest string. Each refuting emission is an escalation.
    """

    name = "nested-adversary"

    def __init__(self, family: LanguageFamily):
        _validate_nested_family(family)
        self.family = family
        self.symbol = family.languages[-1].symbol
        self.max_emitted = 0
        self.escalations = 0

    def next_string(self, hypothesis_trace: Sequence[int | None]) -> str:
        n = 1
        if hypothesis_trace:
            h = hypothesis_trace[-1]
            if h is not None and isinstance(self.family.languages[h], UnaryThresholdLanguage):
                n = self.family.languages[h].k + 1
                self.escalations += 1
        self.max_emitted = max(self.max_emitted, n)
        return self.symbol * n

    def resolve(self, family, final_hypothesis):
        # Name a fair completion of the transcript that the final hypothesis
        # gets wrong: the observed-prefix threshold against an infinite guess,
        # or the full language against any finite guess. When the transcript
        # already exceeds every threshold, no completion refutes an infinite
        # guess; the certificate then rests on the mind-change count.
        m = max(self.max_emitted, 1)
        max_k = len(family) - 1
        finite_completion = f"L{m}" if m <= max_k else None
        if final_hypothesis is not None and isinstance(
            family.languages[final_hypothesis], UnaryThresholdLanguage
        ):
            completion = "Linf"
        elif final_hypothesis is None:
            completion = finite_completion or "Linf"
        else:  # final guess is the full language
            completion = finite_completion
        if completion is None:
            return "Linf", True, None
        return completion, False, completion


def nested_adversary(learner: Learner, family: LanguageFamily, horizon: int) -> SimulationReport:
    """Run the diagonalizing adversary against ``learner`` on the nested unary family."""
    if learner.family is not family and learner.family != family:
        raise ValueError("learner must be built over the same family as the adversary")
    teacher = NestedLadderAdversary(family)
    return run_simulation(teacher, learner, horizon)


class SupportAdversary(Teacher):
    """Presents the shared unary support of two candidates, hiding the target.

    The emission order never consults the target, so the transcript (and hence
    any deterministic learner's trace) is identical under both labelings. With
    no ``fixed_target`` the declared target is chosen post hoc as the model
    the learner did not guess, forcing an error.
    """

    def __init__(self, canonical: bool = True, fixed_target: int | None = None, symbol: str = "x"):
        self.canonical = canonical
        self.fixed_target = fixed_target
        self.symbol = symbol
        self.name = "support-adversary" if canonical else "support-adversary(swapped)"
        self._step = 0

    def next_string(self, hypothesis_trace: Sequence[int | None]) -> str:
        self._step += 1
        n = self._step
        if not self.canonical:
            # Swap adjacent lengths (2, 1, 4, 3, ...): still fair, still target-free.
            n = n + 1 if n % 2 == 1 else n - 1
        return self.symbol * n

    def resolve(self, family, final_hypothesis):
        if self.fixed_target is not None:
            target = self.fixed_target
            correct = final_hypothesis == target
        else:
            guess = final_hypothesis if final_hypothesis in (0, 1) else 0
            target = 1 - guess
            correct = False
        return family.names[target], correct, None


def support_adversary(canonical: bool = True, fixed_target: int | None = None) -> SupportAdversary:
    return SupportAdversary(canonical=canonical, fixed_target=fixed_target)
