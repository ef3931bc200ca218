"""Probabilistic formal languages over the unary alphabet and beyond.

Provides the built-in indistinguishable pair (two distributions with the same
full unary support but opposite small per-length adjustments), uniform
embeddings of deterministic languages, seeded sampling, truncated KL
divergence, an exact-arithmetic likelihood-ratio classifier, and the
support-elimination learner used in adversarial games.

Probabilities are exact rationals (powers of two for the built-in pair), so
the telescoping normalization identities hold without float tolerances.
"""

from __future__ import annotations

import bisect
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .games import Learner
from .languages import Alphabet, Language, LanguageFamily, UnaryAllLanguage

#: Sampling truncation for infinite-support unary distributions. The residual
#: mass beyond this length is below 1e-17 for the built-in pair (well under
#: double resolution) and is assigned to the final length.
DEFAULT_LENGTH_CUTOFF = 60

_UNARY = Alphabet(("x",))


def pmf_p1(n: int) -> Fraction:
    """First distribution of the built-in pair: mass of the unary string of length n.

    Odd lengths sit slightly below the geometric baseline 1/2^n, even lengths
    slightly above; the adjustments cancel telescopically so the total is 1.
    """
    if n < 1:
        raise ValueError("length must be >= 1")
    if n % 2 == 1:
        return Fraction(1, 2**n) - Fraction(1, 2 ** (n + 2))
    return Fraction(1, 2**n) + Fraction(1, 2 ** (n + 1))


def pmf_p2(n: int) -> Fraction:
    """Second distribution of the built-in pair: adjustments mirrored by parity."""
    if n < 1:
        raise ValueError("length must be >= 1")
    if n % 2 == 1:
        return Fraction(1, 2**n) + Fraction(1, 2 ** (n + 2))
    return Fraction(1, 2**n) - Fraction(1, 2 ** (n + 1))


@dataclass(frozen=True)
class Pmf:
    """A probability mass function on positive unary lengths."""

    name: str
    fn: Callable[[int], Fraction]

    def __call__(self, n: int) -> Fraction:
        return self.fn(n)


PMF_P1 = Pmf("P1", pmf_p1)
PMF_P2 = Pmf("P2", pmf_p2)


def partial_mass(pmf: Pmf | Callable[[int], Fraction], n_max: int) -> Fraction:
    """Exact total mass of lengths 1..n_max."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return sum((pmf(n) for n in range(1, n_max + 1)), Fraction(0))


class ProbLanguage:
    """A support language together with a probability mass on each member.

    ``prob`` is positive exactly on members (checked on an enumerated prefix
    at construction). ``length_cutoff`` bounds enumeration-based operations
    such as sampling.
    """

    def __init__(
        self,
        support: Language,
        prob_of: Callable[[str], Fraction],
        name: str,
        length_cutoff: int = DEFAULT_LENGTH_CUTOFF,
    ):
        if length_cutoff < 1:
            raise ValueError("length_cutoff must be >= 1")
        self.support = support
        self.name = name
        self.length_cutoff = length_cutoff
        self._prob_of = prob_of
        self._table: tuple[list[str], list[float]] | None = None
        for s in support.enumerate_up_to(min(length_cutoff, 12)):
            if prob_of(s) <= 0:
                raise ValueError(f"member {s!r} of {name} has non-positive mass")

    def __repr__(self) -> str:
        return f"ProbLanguage({self.name})"

    def prob(self, s: str) -> Fraction:
        self.support.alphabet.check_string(s)
        if not self.support.contains(s):
            return Fraction(0)
        return self._prob_of(s)

    def members(self) -> list[str]:
        return self.support.enumerate_up_to(self.length_cutoff)

    def enumerated_mass(self) -> Fraction:
        """Exact mass of all members up to the length cutoff."""
        return sum((self.prob(s) for s in self.members()), Fraction(0))


def from_length_pmf(pmf: Pmf, length_cutoff: int = DEFAULT_LENGTH_CUTOFF) -> ProbLanguage:
    """Wrap a unary length pmf as a probabilistic language with full unary support."""
    support = UnaryAllLanguage(_UNARY)
    return ProbLanguage(support, lambda s: pmf(len(s)), pmf.name, length_cutoff)


def p1_language(length_cutoff: int = DEFAULT_LENGTH_CUTOFF) -> ProbLanguage:
    return from_length_pmf(PMF_P1, length_cutoff)


def p2_language(length_cutoff: int = DEFAULT_LENGTH_CUTOFF) -> ProbLanguage:
    return from_length_pmf(PMF_P2, length_cutoff)


def embed_deterministic(lang: Language, max_len: int, name: str | None = None) -> ProbLanguage:
    """View a deterministic language as probabilistic: uniform mass over its
    members of length <= max_len."""
    members = lang.enumerate_up_to(max_len)
    if not members:
        raise ValueError("cannot embed a language with no members up to max_len")
    weight = Fraction(1, len(members))
    table = {s: weight for s in members}
    from .languages import FiniteLanguage

    support = FiniteLanguage(lang.alphabet, frozenset(members))
    return ProbLanguage(
        support,
        lambda s: table[s],
        name or f"embed({type(lang).__name__},{max_len})",
        length_cutoff=max(max_len, 1),
    )


def support_equal_up_to(p: ProbLanguage, q: ProbLanguage, n_max: int) -> bool:
    """Whether p and q give positive mass to exactly the same strings of length <= n_max."""
    positive_p = {s for s in p.support.enumerate_up_to(n_max) if p.prob(s) > 0}
    positive_q = {s for s in q.support.enumerate_up_to(n_max) if q.prob(s) > 0}
    return positive_p == positive_q


def sample(p: ProbLanguage, seed: int, count: int) -> list[str]:
    """``count`` i.i.d. draws via inverse CDF on the enumerated members.

    Reproducible given the seed. Raises when the enumerated mass at the
    cutoff falls below 1 - 1e-6; any smaller residual is assigned to the
    final member (documented truncation bias, below double resolution for
    the built-in pair).
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if p._table is None:
        mass = p.enumerated_mass()
        if mass < 1 - Fraction(1, 10**6):
            raise ValueError(
                f"{p.name} is not normalized up to its cutoff: mass {float(mass):.9f}"
            )
        members = p.members()
        cumulative: list[float] = []
        acc = Fraction(0)
        for s in members:
            acc += p.prob(s)
            cumulative.append(float(acc))
        cumulative[-1] = 1.0  # residual mass goes to the last member
        p._table = (members, cumulative)
    members, cumulative = p._table
    rng = random.Random(seed)
    return [members[bisect.bisect_left(cumulative, rng.random())] for _ in range(count)]


def kl_truncated(p: ProbLanguage, q: ProbLanguage, n_max: int) -> float:
    """Sum of p(s) * ln(p(s)/q(s)) over members of length <= n_max.

    Requires q to cover p's support on the range (otherwise the divergence is
    undefined here).
    """
    total = 0.0
    for s in p.support.enumerate_up_to(n_max):
        ps = p.prob(s)
        if ps == 0:
            continue
        qs = q.prob(s)
        if qs == 0:
            raise ValueError(f"KL undefined: {s!r} has positive mass under {p.name} only")
        total += float(ps) * math.log(ps / qs)
    return total


def likelihood_ratio_classify(samples: Sequence[str], p: ProbLanguage, q: ProbLanguage) -> int:
    """1 when the exact likelihood ratio of p against q is >= 1, else 2.

    The ratio is accumulated in exact rational arithmetic, so the tie
    convention (ratio exactly 1 -> 1) involves no float comparison.
    """
    ratio = Fraction(1)
    for s in samples:
        ps, qs = p.prob(s), q.prob(s)
        if ps == 0 and qs == 0:
            raise ValueError(f"sample {s!r} lies outside both supports")
        if qs == 0:
            return 1
        if ps == 0:
            return 2
        ratio *= Fraction(ps, qs)
    return 1 if ratio >= 1 else 2


@dataclass(frozen=True)
class HypothesisDistribution:
    """Weights over candidate indices; positive only on data-consistent ones."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if sum(self.weights) != 1:
            raise ValueError("weights must sum to 1")

    def argmax_index(self) -> int:
        best = max(self.weights)
        return self.weights.index(best)


class ProbEliminationLearner(Learner):
    """Keeps a uniform distribution over candidates whose support covers the data.

    The presentation order carries no frequency information in the
    adversarial setting, so surviving candidates stay uniformly weighted; the
    exposed hypothesis is the argmax with lowest-index tie-break.
    """

    name = "prob-elim"

    def __init__(self, candidates: Sequence[ProbLanguage]):
        if not candidates:
            raise ValueError("need at least one candidate")
        self.candidates = tuple(candidates)
        family = LanguageFamily(
            tuple(c.support for c in candidates), tuple(c.name for c in candidates)
        )
        super().__init__(family)
        self._alive = [True] * len(candidates)

    def observe(self, s: str) -> int | None:
        for i, cand in enumerate(self.candidates):
            if self._alive[i] and not cand.support.contains(s):
                self._alive[i] = False
        for i, alive in enumerate(self._alive):
            if alive:
                return i
        return None

    def hypothesis_distribution(self) -> HypothesisDistribution | None:
        survivors = [i for i, alive in enumerate(self._alive) if alive]
        if not survivors:
            return None
        weight = Fraction(1, len(survivors))
        return HypothesisDistribution(
            tuple(weight if i in survivors else Fraction(0) for i in range(len(self._alive)))
        )


def make_prob_learner(candidates: Sequence[ProbLanguage]) -> ProbEliminationLearner:
    return ProbEliminationLearner(candidates)


def accuracy_by_sample_size(
    sample_sizes: Sequence[int], trials: int, seed: int
) -> dict[int, float]:
    """Monte Carlo accuracy of the likelihood-ratio classifier on the built-in pair.

    Trials alternate the true source between the two distributions; each
    (sample size, trial) cell gets its own derived seed, so the grid is
    reproducible and rows are independent.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    p, q = p1_language(), p2_language()
    master = random.Random(seed)
    accuracies: dict[int, float] = {}
    for m in sample_sizes:
        if m < 1:
            raise ValueError("sample sizes must be >= 1")
        correct = 0
        for t in range(trials):
            trial_seed = master.randrange(2**63)
            truth = 1 if t % 2 == 0 else 2
            source = p if truth == 1 else q
            draws = sample(source, trial_seed, m)
            if likelihood_ratio_classify(draws, p, q) == truth:
                correct += 1
        accuracies[m] = correct / trials
    return accuracies


def verification_report(
    n_max: int = DEFAULT_LENGTH_CUTOFF,
    sample_sizes: Sequence[int] = (1, 10, 50, 200),
    trials: int = 200,
    seed: int = 0,
) -> dict:
    """Normalization, support, divergence, and classifier-accuracy summary.

    ``checks_pass`` reflects the exact-rational normalization tail bound
    (2^(2-n_max)) and support equality up to n_max.
    """
    mass_p1 = partial_mass(PMF_P1, n_max)
    mass_p2 = partial_mass(PMF_P2, n_max)
    tail_bound = Fraction(4, 2**n_max)
    p, q = p1_language(max(n_max, DEFAULT_LENGTH_CUTOFF)), p2_language(
        max(n_max, DEFAULT_LENGTH_CUTOFF)
    )
    support_equal = support_equal_up_to(p, q, n_max)
    checks_pass = (
        (1 - mass_p1) <= tail_bound and (1 - mass_p2) <= tail_bound and support_equal
    )
    return {
        "n_max": n_max,
        "partial_mass_p1": float(mass_p1),
        "partial_mass_p2": float(mass_p2),
        "normalization_gap_p1": float(1 - mass_p1),
        "normalization_gap_p2": float(1 - mass_p2),
        "support_equal": support_equal,
        "kl_12": kl_truncated(p, q, n_max),
        "kl_21": kl_truncated(q, p, n_max),
        "classifier_accuracy_by_m": {
            str(m): acc for m, acc in accuracy_by_sample_size(sample_sizes, trials, seed).items()
        },
        "trials": trials,
        "seed": seed,
        "checks_pass": checks_pass,
    }
