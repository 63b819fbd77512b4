"""Prefix-free codes in which a space mark may only end a codeword.

The construction takes the optimal one-to-one code (reverse-lex radix
assignment) and appends the space to exactly those codewords that are a
proper prefix of another chosen string. On heap indices that is the test
``k*x + 1 <= n``, so the whole build is O(n) integer arithmetic.

In text form the space is written ``_`` and digits use ``0-9a-z``.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidIndex, InvalidPairing, MalformedStream, NotPrefixFree, UnknownSymbol
from .radix_codebook import (
    DIGITS,
    OneToOneCode,
    ceil_log,
    check_k,
    heap_level,
    radix_assignment,
    radix_strings,
)
from .source_model import SourceDistribution, psum

SPACE = "_"


@dataclass(frozen=True)
class SpaceCodeword:
    digits: str
    has_space: bool

    def __post_init__(self):
        if not self.digits:
            raise InvalidIndex("space-code codewords need at least one digit")

    def render(self) -> str:
        return self.digits + SPACE if self.has_space else self.digits

    def __len__(self):
        return len(self.digits) + self.has_space


def find_prefix_violation(words: Sequence[str]) -> Optional[Tuple[int, int]]:
    """Return (i, j) such that words[i] is a prefix of words[j], or None.

    Sorted order is a depth-first walk of the word trie, so if any word is a
    prefix of another it is also a prefix of the word right after it.
    """
    order = sorted(range(len(words)), key=words.__getitem__)
    ranked = [words[i] for i in order]
    if all(map(_not_prefix, ranked, ranked[1:])):
        return None
    for pos, (a, b) in enumerate(zip(ranked, ranked[1:])):
        if b.startswith(a):
            i, j = order[pos], order[pos + 1]
            # report the earlier symbol first when two words are equal
            return (min(i, j), max(i, j)) if a == b else (i, j)
    raise AssertionError("unreachable")


def _not_prefix(a: str, b: str) -> bool:
    return not b.startswith(a)


@dataclass(frozen=True)
class SpaceCodebook:
    """Symbol-indexed codewords over {0..k-1} with optional trailing space.

    Stored as two parallel tuples; :attr:`entries` gives the codeword objects.
    The constructor validates prefix-freeness.
    """

    digits: Tuple[str, ...]
    spaces: Tuple[bool, ...]
    k: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(self.digits))
        object.__setattr__(self, "spaces", tuple(bool(s) for s in self.spaces))
        check_k(self.k)
        if len(self.digits) != len(self.spaces):
            raise InvalidIndex("digits and space flags differ in length")
        allowed = set(DIGITS[: self.k])
        for d in self.digits:
            if not d:
                raise InvalidIndex("space-code codewords need at least one digit")
            if not set(d) <= allowed:
                raise InvalidIndex(f"codeword {d!r} is not over the base-{self.k} digits")
        bad = find_prefix_violation(self.rendered)
        if bad is not None:
            i, j = bad
            raise NotPrefixFree(
                f"codeword {self.rendered[i]!r} (symbol {i + 1}) is a prefix of "
                f"{self.rendered[j]!r} (symbol {j + 1})"
            )

    @classmethod
    def _trusted(cls, digits, spaces, k) -> "SpaceCodebook":
        # skips validation; only for codebooks that are prefix-free by construction
        self = object.__new__(cls)
        object.__setattr__(self, "digits", tuple(digits))
        object.__setattr__(self, "spaces", tuple(spaces))
        object.__setattr__(self, "k", k)
        return self

    @classmethod
    def from_rendered(cls, words: Iterable[str], k: int) -> "SpaceCodebook":
        digits, spaces = [], []
        for w in words:
            if w.endswith(SPACE):
                digits.append(w[:-1])
                spaces.append(True)
            else:
                digits.append(w)
                spaces.append(False)
            if SPACE in digits[-1]:
                raise InvalidIndex(f"space may only end a codeword: {w!r}")
        return cls(tuple(digits), tuple(spaces), k)

    @property
    def n(self) -> int:
        return len(self.digits)

    @property
    def entries(self) -> Tuple[SpaceCodeword, ...]:
        return tuple(SpaceCodeword(d, s) for d, s in zip(self.digits, self.spaces))

    @cached_property
    def rendered(self) -> Tuple[str, ...]:
        return tuple(d + SPACE if s else d for d, s in zip(self.digits, self.spaces))

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(d) + s for d, s in zip(self.digits, self.spaces))

    @property
    def space_count(self) -> int:
        return sum(self.spaces)

    @cached_property
    def _tables(self):
        # heap index -> symbol for unspaced / spaced codewords, plus every node
        # a decoder may pass through without emitting
        leaf, spaced, live = {}, {}, set()
        k = self.k
        for sym, (d, s) in enumerate(zip(self.digits, self.spaces), start=1):
            x = 0
            for ch in d[:-1]:
                x = x * k + DIGITS.index(ch) + 1
                live.add(x)
            x = x * k + DIGITS.index(d[-1]) + 1
            if s:
                spaced[x] = sym
                live.add(x)
            else:
                leaf[x] = sym
        return leaf, spaced, live


def build_space_code(dist: SourceDistribution) -> SpaceCodebook:
    """Build the space-terminated prefix code from the optimal one-to-one code.

    Symbol i keeps its reverse-lex one-to-one codeword; a space is appended
    exactly when that string is a proper prefix of another of the n strings,
    i.e. when its heap index x has k*x + 1 <= n. This marks ceil(n/k) - 1
    codewords.
    """
    n, k = dist.n, dist.k
    check_k(k)
    order = radix_assignment(n, k)
    table = radix_strings(k, n)
    return SpaceCodebook._trusted(
        [table[x] for x in order], [k * x + 1 <= n for x in order], k
    )


def _check_pairing(code, dist: SourceDistribution) -> None:
    if code.n != dist.n or code.k != dist.k:
        raise InvalidPairing(
            f"code has n={code.n}, k={code.k} but distribution has n={dist.n}, k={dist.k}"
        )


def average_length_space(code: SpaceCodebook, dist: SourceDistribution):
    """sum p_i (|digits_i| + [has_space_i])."""
    _check_pairing(code, dist)
    return psum(p * (len(d) + s) for p, d, s in zip(dist.probs, code.digits, code.spaces))


def space_mass(code: SpaceCodebook, dist: SourceDistribution):
    """Total probability of the space-marked symbols."""
    _check_pairing(code, dist)
    return psum(p for p, s in zip(dist.probs, code.spaces) if s)


def strip_spaces(code: SpaceCodebook) -> OneToOneCode:
    """Drop every space; the result is a one-to-one code for any prefix-free input."""
    words = code.digits
    if len(set(words)) != len(words):
        raise NotPrefixFree("stripping spaces produced duplicate codewords")
    return OneToOneCode(words, False, code.k)


def encode(code: SpaceCodebook, message: Iterable[int]) -> str:
    """Concatenate the rendered codewords of 1-based symbol indices."""
    rendered = code.rendered
    n = code.n
    parts = []
    for pos, sym in enumerate(message):
        if not isinstance(sym, int) or isinstance(sym, bool) or not 1 <= sym <= n:
            raise UnknownSymbol(f"message position {pos}: symbol {sym!r} not in 1..{n}")
        parts.append(rendered[sym - 1])
    return "".join(parts)


class StreamDecoder:
    """Incremental decoder; one instance per stream.

    State is the heap index of the digits read since the last emitted
    codeword, plus the stream offset for error reporting.
    """

    def __init__(self, code: SpaceCodebook):
        self._leaf, self._spaced, self._live = code._tables
        self._k = code.k
        self._digit = {ch: i for i, ch in enumerate(DIGITS[: code.k])}
        self.node = 0
        self.offset = 0
        self._start = 0

    def feed(self, chunk: str) -> List[int]:
        out = []
        leaf, spaced, live, digit, k = self._leaf, self._spaced, self._live, self._digit, self._k
        x = self.node
        pos = self.offset
        for ch in chunk:
            if ch == SPACE:
                if x == 0:
                    raise MalformedStream("space with no digits before it", pos)
                sym = spaced.get(x)
                if sym is None:
                    raise MalformedStream("space after a string that takes no space", pos)
                out.append(sym)
                x = 0
            else:
                d = digit.get(ch)
                if d is None:
                    raise MalformedStream(f"invalid character {ch!r}", pos)
                x = k * x + 1 + d
                sym = leaf.get(x)
                if sym is not None:
                    out.append(sym)
                    x = 0
                elif x not in live:
                    raise MalformedStream("digit string is not a prefix of any codeword", pos)
            pos += 1
            if x == 0:
                self._start = pos
        self.node = x
        self.offset = pos
        return out

    def finish(self) -> None:
        if self.node != 0:
            raise MalformedStream(
                f"stream ends inside a codeword started at offset {self._start}", self.offset
            )


def decode(code: SpaceCodebook, stream: str) -> List[int]:
    """Parse a complete stream into 1-based symbol indices."""
    dec = StreamDecoder(code)
    out = dec.feed(stream)
    dec.finish()
    return out


def closed_form_height(n: int, k: int) -> Optional[int]:
    """ceil(log_k(n - ceil(n/k))), or None when the argument is < 1."""
    m = n - -(-n // k)
    return ceil_log(m, k) if m >= 1 else None


def effective_height(n: int, k: int) -> int:
    """Length of the last codeword of the one-to-one code (the real tree height)."""
    return heap_level(n, k)


def closed_form_space_ranges(n: int, k: int) -> Optional[Tuple[range, range]]:
    """Symbol ranges that the piecewise closed-form length rule marks with a space.

    Returns None when the rule is not well-formed for (n, k): no height, or
    a height below 1 that makes the endpoints fractional.
    """
    h = closed_form_height(n, k)
    if h is None or h < 1:
        return None
    full = (k ** (h - 1) - 1) // (k - 1) - 1
    lo = (k ** h + k ** (h - 1) - 2) // (k - 1) - -(-n // k)
    hi = (k ** h - 1) // (k - 1) - 1
    return range(1, full + 1), range(max(lo, 1), hi + 1)


def closed_form_lengths(n: int, k: int) -> Optional[Tuple[int, ...]]:
    """Total codeword lengths given by the closed-form piecewise rule, if well-formed."""
    ranges = closed_form_space_ranges(n, k)
    if ranges is None:
        return None
    head, tail = ranges
    out = []
    for i in range(1, n + 1):
        base = heap_level(i, k)
        out.append(base + (i in head or i in tail))
    return tuple(out)


def closed_form_disagreements(code: SpaceCodebook) -> Optional[List[int]]:
    """1-based symbols whose constructed length differs from the closed-form rule.

    None means the rule is not well-formed for this (n, k).
    """
    expected = closed_form_lengths(code.n, code.k)
    if expected is None:
        return None
    return [i + 1 for i, (a, b) in enumerate(zip(code.lengths, expected)) if a != b]


def spaces_mark_internal_nodes(code: SpaceCodebook) -> bool:
    """True iff spaces sit exactly on the internal nodes of the code tree.

    Every non-empty proper prefix w of a codeword's digits must appear as
    the codeword w_, and every spaced codeword must be such a prefix.
    """
    internal = {d[:cut] for d in code.digits for cut in range(1, len(d))}
    spaced = {d for d, s in zip(code.digits, code.spaces) if s}
    return internal == spaced


def codebook_to_json(code: SpaceCodebook) -> dict:
    return {"kind": "space_prefix", "k": code.k, "codewords": list(code.rendered)}


def codebook_from_json(doc: dict) -> SpaceCodebook:
    if not isinstance(doc, dict) or doc.get("kind") != "space_prefix":
        raise InvalidIndex(f"not a space_prefix codebook: kind={doc.get('kind') if isinstance(doc, dict) else None!r}")
    words = doc.get("codewords")
    if not isinstance(words, list) or not all(isinstance(w, str) for w in words):
        raise InvalidIndex('"codewords" must be an array of strings')
    k = doc.get("k")
    if not isinstance(k, int) or isinstance(k, bool):
        raise InvalidIndex(f'"k" must be an integer, got {k!r}')
    return SpaceCodebook.from_rendered(words, k)
