"""Deterministic formal languages with exact membership, canonical enumeration,
and exact subset / difference-witness decision procedures.

All values are immutable after construction and all operations are pure.
String order throughout is length-lex: primary key length, secondary key the
declared symbol order of the alphabet.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence


class SchemaError(ValueError):
    """A structured input document does not conform to its expected schema."""


class FamilyValidationError(ValueError):
    """A language family violates a structural requirement (e.g. indistinct members)."""


@dataclass(frozen=True)
class Alphabet:
    """Ordered collection of distinct single-character symbols.

    The declared order fixes the length-lex canonical order used by every
    enumeration, witness search, and presentation in this package.
    """

    symbols: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError(f"alphabet symbols must be distinct, got {self.symbols!r}")
        for sym in self.symbols:
            if not isinstance(sym, str) or len(sym) != 1:
                raise ValueError(f"alphabet symbols must be single characters, got {sym!r}")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {sym: i for i, sym in enumerate(self.symbols)}

    @property
    def is_unary(self) -> bool:
        return len(self.symbols) == 1

    def __len__(self) -> int:
        return len(self.symbols)

    def symbol_index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise ValueError(f"symbol {sym!r} is not in alphabet {''.join(self.symbols)!r}") from None

    def check_string(self, s: str) -> None:
        """Raise ValueError if ``s`` uses a symbol outside this alphabet."""
        for ch in s:
            if ch not in self._index:
                raise ValueError(f"symbol {ch!r} in {s!r} is not in alphabet {''.join(self.symbols)!r}")

    def sort_key(self, s: str) -> tuple[int, tuple[int, ...]]:
        """Length-lex sort key for ``s`` under the declared symbol order."""
        idx = self._index
        return (len(s), tuple(idx[ch] for ch in s))

    def strings_of_length(self, length: int) -> Iterator[str]:
        """All strings of exactly ``length`` in canonical order."""
        for tup in itertools.product(self.symbols, repeat=length):
            yield "".join(tup)


@dataclass(frozen=True)
class Dfa:
    """A total deterministic finite automaton over symbol indices.

    ``transitions[state][symbol_index]`` gives the successor state; every row
    must cover the full alphabet, which makes all downstream decision
    procedures exact finite computations.
    """

    state_count: int
    start: int
    accepting: frozenset[int]
    transitions: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.state_count < 1:
            raise ValueError("DFA needs at least one state")
        if not 0 <= self.start < self.state_count:
            raise ValueError(f"start state {self.start} out of range")
        if not self.accepting <= set(range(self.state_count)):
            raise ValueError("accepting states out of range")
        if len(self.transitions) != self.state_count:
            raise ValueError("transition table must have one row per state")
        widths = {len(row) for row in self.transitions}
        if len(widths) != 1 or widths == {0}:
            raise ValueError("transition rows must all cover the same non-empty alphabet")
        for row in self.transitions:
            for target in row:
                if not 0 <= target < self.state_count:
                    raise ValueError(f"transition target {target} out of range")

    @property
    def n_symbols(self) -> int:
        return len(self.transitions[0])

    def accepts_indices(self, symbol_indices: Sequence[int]) -> bool:
        state = self.start
        for i in symbol_indices:
            state = self.transitions[state][i]
        return state in self.accepting


class Language:
    """A decidable set of strings over a fixed alphabet.

    Subclasses provide exact membership, canonical length-bounded enumeration,
    and conversion to an equivalent DFA (the workhorse behind exact subset and
    witness decisions).
    """

    alphabet: Alphabet

    def contains(self, s: str) -> bool:
        raise NotImplementedError

    def enumerate_up_to(self, max_len: int) -> list[str]:
        """All members with length <= ``max_len`` in length-lex order."""
        raise NotImplementedError

    def to_dfa(self) -> Dfa:
        raise NotImplementedError

    def is_infinite(self) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteLanguage(Language):
    """An explicitly listed finite set of strings."""

    alphabet: Alphabet
    strings: frozenset[str]

    def __post_init__(self) -> None:
        for s in self.strings:
            self.alphabet.check_string(s)

    @cached_property
    def _sorted(self) -> tuple[str, ...]:
        return tuple(sorted(self.strings, key=self.alphabet.sort_key))

    def contains(self, s: str) -> bool:
        self.alphabet.check_string(s)
        return s in self.strings

    def enumerate_up_to(self, max_len: int) -> list[str]:
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        return [s for s in self._sorted if len(s) <= max_len]

    def to_dfa(self) -> Dfa:
        # Prefix trie plus a dead state; total by construction.
        ids: dict[str, int] = {"": 0}
        for s in self._sorted:
            for i in range(1, len(s) + 1):
                ids.setdefault(s[:i], len(ids))
        dead = len(ids)
        n_sym = len(self.alphabet)
        rows = [[dead] * n_sym for _ in range(dead + 1)]
        for prefix, sid in ids.items():
            for j, sym in enumerate(self.alphabet.symbols):
                child = prefix + sym
                if child in ids:
                    rows[sid][j] = ids[child]
        return Dfa(
            state_count=dead + 1,
            start=0,
            accepting=frozenset(ids[s] for s in self.strings),
            transitions=tuple(tuple(row) for row in rows),
        )

    def is_infinite(self) -> bool:
        return False


def _require_unary(alphabet: Alphabet, kind: str) -> None:
    if not alphabet.is_unary:
        raise ValueError(f"{kind} requires a unary alphabet, got {''.join(alphabet.symbols)!r}")


@dataclass(frozen=True)
class UnaryThresholdLanguage(Language):
    """Non-empty unary strings of length at most ``k``; the empty string is excluded."""

    alphabet: Alphabet
    k: int

    def __post_init__(self) -> None:
        _require_unary(self.alphabet, "UnaryThresholdLanguage")
        if self.k < 1:
            raise ValueError("threshold k must be >= 1")

    @property
    def symbol(self) -> str:
        return self.alphabet.symbols[0]

    def contains(self, s: str) -> bool:
        self.alphabet.check_string(s)
        return 0 < len(s) <= self.k

    def enumerate_up_to(self, max_len: int) -> list[str]:
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        return [self.symbol * n for n in range(1, min(self.k, max_len) + 1)]

    def to_dfa(self) -> Dfa:
        # States 0..k count symbols; k+1 is the dead state.
        dead = self.k + 1
        rows = [(min(i + 1, dead),) for i in range(self.k + 1)] + [(dead,)]
        return Dfa(
            state_count=self.k + 2,
            start=0,
            accepting=frozenset(range(1, self.k + 1)),
            transitions=tuple(rows),
        )

    def is_infinite(self) -> bool:
        return False


@dataclass(frozen=True)
class UnaryAllLanguage(Language):
    """All non-empty unary strings; the empty string is excluded."""

    alphabet: Alphabet

    def __post_init__(self) -> None:
        _require_unary(self.alphabet, "UnaryAllLanguage")

    @property
    def symbol(self) -> str:
        return self.alphabet.symbols[0]

    def contains(self, s: str) -> bool:
        self.alphabet.check_string(s)
        return len(s) > 0

    def enumerate_up_to(self, max_len: int) -> list[str]:
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        return [self.symbol * n for n in range(1, max_len + 1)]

    def to_dfa(self) -> Dfa:
        return Dfa(state_count=2, start=0, accepting=frozenset({1}), transitions=((1,), (1,)))

    def is_infinite(self) -> bool:
        return True


@dataclass(frozen=True)
class RegularLanguage(Language):
    """The language accepted by a total DFA over the alphabet."""

    alphabet: Alphabet
    dfa: Dfa

    def __post_init__(self) -> None:
        if self.dfa.n_symbols != len(self.alphabet):
            raise ValueError(
                f"DFA covers {self.dfa.n_symbols} symbols but alphabet has {len(self.alphabet)}"
            )

    def contains(self, s: str) -> bool:
        self.alphabet.check_string(s)
        return self.dfa.accepts_indices([self.alphabet.symbol_index(ch) for ch in s])

    def enumerate_up_to(self, max_len: int) -> list[str]:
        if max_len < 0:
            raise ValueError("max_len must be >= 0")
        out: list[str] = []
        for length in range(max_len + 1):
            for s in self.alphabet.strings_of_length(length):
                if self.contains(s):
                    out.append(s)
        return out

    def to_dfa(self) -> Dfa:
        return self.dfa

    def is_infinite(self) -> bool:
        # A regular language is infinite iff it accepts some string with
        # state_count <= |s| < 2 * state_count (pumping bound).
        n = self.dfa.state_count
        for length in range(n, 2 * n):
            for s in self.alphabet.strings_of_length(length):
                if self.contains(s):
                    return True
        return False


def _require_same_alphabet(a: Language, b: Language) -> Alphabet:
    if a.alphabet != b.alphabet:
        raise ValueError(
            f"alphabet mismatch: {''.join(a.alphabet.symbols)!r} vs {''.join(b.alphabet.symbols)!r}"
        )
    return a.alphabet


def _dfa_difference_witness(da: Dfa, db: Dfa, alphabet: Alphabet) -> str | None:
    """Length-lex-smallest string accepted by ``da`` but not ``db``.

    Breadth-first search over the product automaton in declared symbol order;
    the first bad pair reached is reached by its length-lex-smallest string,
    and acceptance depends only on the pair, so that string is the global
    minimum witness. Exact by the pumping argument: every pair is reached
    within state_count(da) * state_count(db) steps or never.
    """

    def bad(pair: tuple[int, int]) -> bool:
        return pair[0] in da.accepting and pair[1] not in db.accepting

    start = (da.start, db.start)
    if bad(start):
        return ""
    seen = {start}
    queue: deque[tuple[tuple[int, int], str]] = deque([(start, "")])
    while queue:
        (sa, sb), path = queue.popleft()
        for j, sym in enumerate(alphabet.symbols):
            nxt = (da.transitions[sa][j], db.transitions[sb][j])
            if nxt in seen:
                continue
            seen.add(nxt)
            s = path + sym
            if bad(nxt):
                return s
            queue.append((nxt, s))
    return None


def difference_witness(a: Language, b: Language) -> str | None:
    """The length-lex-smallest string in ``a - b``, or None if ``a`` is a subset of ``b``."""
    alphabet = _require_same_alphabet(a, b)
    if isinstance(a, FiniteLanguage):
        for s in sorted(a.strings, key=alphabet.sort_key):
            if not b.contains(s):
                return s
        return None
    if isinstance(a, UnaryThresholdLanguage):
        if isinstance(b, UnaryAllLanguage):
            return None
        if isinstance(b, UnaryThresholdLanguage):
            return a.symbol * (b.k + 1) if a.k > b.k else None
        for n in range(1, a.k + 1):
            s = a.symbol * n
            if not b.contains(s):
                return s
        return None
    if isinstance(a, UnaryAllLanguage):
        if isinstance(b, UnaryAllLanguage):
            return None
        if isinstance(b, UnaryThresholdLanguage):
            return a.symbol * (b.k + 1)
        if isinstance(b, FiniteLanguage):
            bound = max((len(s) for s in b.strings), default=0) + 1
            for n in range(1, bound + 1):
                s = a.symbol * n
                if not b.contains(s):
                    return s
            raise AssertionError("unreachable: a finite language cannot cover all unary lengths")
    return _dfa_difference_witness(a.to_dfa(), b.to_dfa(), alphabet)


def is_subset(a: Language, b: Language) -> bool:
    """Exact decision of ``a`` ⊆ ``b`` (same alphabet required)."""
    return difference_witness(a, b) is None


def is_proper_subset(a: Language, b: Language) -> bool:
    return is_subset(a, b) and not is_subset(b, a)


def same_language(a: Language, b: Language) -> bool:
    """Equality as string sets, regardless of representation."""
    return is_subset(a, b) and is_subset(b, a)


@dataclass(frozen=True)
class LanguageFamily:
    """An ordered, named, finite collection of languages over one alphabet."""

    languages: tuple[Language, ...]
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(self.languages) != len(self.names):
            raise FamilyValidationError("languages and names must be parallel")
        if not self.languages:
            raise FamilyValidationError("family must contain at least one language")
        if len(set(self.names)) != len(self.names):
            raise FamilyValidationError("family names must be unique")
        alphabet = self.languages[0].alphabet
        for lang in self.languages[1:]:
            if lang.alphabet != alphabet:
                raise FamilyValidationError("all family members must share one alphabet")

    @property
    def alphabet(self) -> Alphabet:
        return self.languages[0].alphabet

    def __len__(self) -> int:
        return len(self.languages)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"no family member named {name!r}") from None

    def verify_distinct(self) -> None:
        """Raise if any two members are equal as string sets (quadratic, exact)."""
        for i in range(len(self.languages)):
            for j in range(i + 1, len(self.languages)):
                if same_language(self.languages[i], self.languages[j]):
                    raise FamilyValidationError(
                        f"languages {self.names[i]!r} and {self.names[j]!r} are indistinct"
                    )


def build_unary_nested_family(max_k: int) -> LanguageFamily:
    """The nested unary family [L_1, ..., L_max_k, L_inf] over the alphabet {x}.

    L_k holds the non-empty unary strings of length at most k and L_inf all
    non-empty unary strings, so the members are strictly nested in index order.
    Distinct by construction; no quadratic re-verification is performed.
    """
    if max_k < 1:
        raise ValueError("max_k must be >= 1")
    alphabet = Alphabet(("x",))
    languages: list[Language] = [UnaryThresholdLanguage(alphabet, k) for k in range(1, max_k + 1)]
    languages.append(UnaryAllLanguage(alphabet))
    names = tuple(f"L{k}" for k in range(1, max_k + 1)) + ("Linf",)
    return LanguageFamily(tuple(languages), names)


def _language_from_spec(obj: dict, alphabet: Alphabet, name: str) -> Language:
    kind = obj.get("kind")
    if kind == "finite":
        strings = obj.get("strings")
        if not isinstance(strings, list) or not all(isinstance(s, str) for s in strings):
            raise SchemaError(f"language {name!r}: 'finite' kind needs a list of strings")
        return FiniteLanguage(alphabet, frozenset(strings))
    if kind == "unary_threshold":
        k = obj.get("k")
        if not isinstance(k, int) or k < 1:
            raise SchemaError(f"language {name!r}: 'unary_threshold' needs a positive integer 'k'")
        return UnaryThresholdLanguage(alphabet, k)
    if kind == "unary_all":
        return UnaryAllLanguage(alphabet)
    if kind == "dfa":
        states = obj.get("states")
        start = obj.get("start")
        accepting = obj.get("accepting")
        triples = obj.get("transitions")
        if not isinstance(states, int) or states < 1:
            raise SchemaError(f"language {name!r}: 'dfa' needs a positive integer 'states'")
        if not isinstance(start, int):
            raise SchemaError(f"language {name!r}: 'dfa' needs an integer 'start'")
        if not isinstance(accepting, list) or not all(isinstance(i, int) for i in accepting):
            raise SchemaError(f"language {name!r}: 'dfa' needs a list of accepting state indices")
        if not isinstance(triples, list):
            raise SchemaError(f"language {name!r}: 'dfa' needs 'transitions' as [from, symbol, to] triples")
        table: dict[tuple[int, int], int] = {}
        for item in triples:
            if not (isinstance(item, list) and len(item) == 3):
                raise SchemaError(f"language {name!r}: transition {item!r} is not a [from, symbol, to] triple")
            frm, sym, to = item
            if not isinstance(frm, int) or not isinstance(to, int) or not isinstance(sym, str):
                raise SchemaError(f"language {name!r}: transition {item!r} has wrong field types")
            key = (frm, alphabet.symbol_index(sym))
            if key in table:
                raise SchemaError(f"language {name!r}: duplicate transition for state {frm}, symbol {sym!r}")
            table[key] = to
        rows = []
        for state in range(states):
            row = []
            for j in range(len(alphabet)):
                if (state, j) not in table:
                    raise SchemaError(
                        f"language {name!r}: missing transition for state {state}, "
                        f"symbol {alphabet.symbols[j]!r} (DFA must be total)"
                    )
                row.append(table[(state, j)])
            rows.append(tuple(row))
        try:
            dfa = Dfa(states, start, frozenset(accepting), tuple(rows))
        except ValueError as exc:
            raise SchemaError(f"language {name!r}: {exc}") from exc
        return RegularLanguage(alphabet, dfa)
    raise SchemaError(f"language {name!r}: unknown kind {kind!r}")


def parse_family(document: str | dict) -> LanguageFamily:
    """Parse and validate a family document (JSON text or an already-decoded dict).

    Schema: ``{"alphabet": ["a", ...], "languages": [{"name": ..., "kind": ...}, ...]}``
    with kinds ``finite`` (strings), ``unary_threshold`` (k), ``unary_all``, and
    ``dfa`` (states, start, accepting, transitions as [from, symbol, to]).
    Members are verified pairwise distinct as string sets.
    """
    if isinstance(document, str):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"family document is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise SchemaError("family document must be a JSON object")
    raw_alpha = document.get("alphabet")
    if not isinstance(raw_alpha, list) or not raw_alpha:
        raise SchemaError("family document needs a non-empty 'alphabet' array")
    try:
        alphabet = Alphabet(tuple(raw_alpha))
    except ValueError as exc:
        raise SchemaError(str(exc)) from exc
    raw_langs = document.get("languages")
    if not isinstance(raw_langs, list) or not raw_langs:
        raise SchemaError("family document needs a non-empty 'languages' array")
    languages: list[Language] = []
    names: list[str] = []
    for i, obj in enumerate(raw_langs):
        if not isinstance(obj, dict):
            raise SchemaError(f"languages[{i}] must be an object")
        name = obj.get("name")
        if not isinstance(name, str) or not name:
            raise SchemaError(f"languages[{i}] needs a non-empty string 'name'")
        if name in names:
            raise FamilyValidationError(f"duplicate language name {name!r}")
        try:
            languages.append(_language_from_spec(obj, alphabet, name))
        except ValueError as exc:
            if isinstance(exc, SchemaError):
                raise
            raise SchemaError(f"language {name!r}: {exc}") from exc
        names.append(name)
    family = LanguageFamily(tuple(languages), tuple(names))
    family.verify_distinct()
    return family
