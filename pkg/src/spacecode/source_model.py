"""Source distributions and the entropy quantities derived from them.

A :class:`SourceDistribution` always holds strictly positive probabilities
in non-increasing order, which is the standing assumption of every code
construction and bound in this package. Use :func:`normalize` to turn raw
weights into one.
"""

import csv
import json
import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence, Tuple

from .errors import InvalidAlphabet, InvalidDistribution, InvalidProbability

SUM_TOLERANCE = 1e-9


def psum(values):
    """Sum probabilities: exactly for Fractions, correctly rounded for floats."""
    values = list(values)
    if any(issubclass(t, Fraction) for t in set(map(type, values))):
        return sum(values, Fraction(0))
    return math.fsum(values)


@dataclass(frozen=True)
class SourceDistribution:
    """Ordered probability vector p_1 >= ... >= p_n > 0 over a k-ary code alphabet.

    ``permutation[i]`` is the 1-based index, in the caller's original input,
    of the symbol now stored at position ``i``.
    """

    probs: Tuple[float, ...]
    k: int
    permutation: Tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        probs = tuple(self.probs)
        object.__setattr__(self, "probs", probs)
        if not isinstance(self.k, int) or self.k < 2:
            raise InvalidAlphabet(f"alphabet size must be an integer >= 2, got {self.k!r}")
        if not probs:
            raise InvalidDistribution("distribution has no symbols")
        if min(probs) <= 0:
            raise InvalidDistribution("probabilities must be strictly positive")
        if not all(map(operator.ge, probs, probs[1:])):
            raise InvalidDistribution("probabilities must be non-increasing")
        total = psum(probs)
        if isinstance(total, Fraction):
            if total != 1:
                raise InvalidDistribution(f"probabilities sum to {total}, not 1")
        elif abs(total - 1.0) > SUM_TOLERANCE:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        if self.permutation:
            perm = tuple(self.permutation)
            object.__setattr__(self, "permutation", perm)
            if len(set(perm)) != len(perm) or len(perm) != len(probs):
                raise InvalidDistribution("permutation must list one distinct index per symbol")
        else:
            object.__setattr__(self, "permutation", tuple(range(1, len(probs) + 1)))

    @property
    def n(self) -> int:
        return len(self.probs)

    @property
    def p1(self):
        return self.probs[0]

    def with_k(self, k: int) -> "SourceDistribution":
        return SourceDistribution(self.probs, k, self.permutation)


@dataclass(frozen=True)
class EntropyValue:
    value: float
    base: int

    def __float__(self):
        return float(self.value)


def normalize(raw_probs: Sequence, k: int, drop_zeros: bool = False) -> SourceDistribution:
    """Scale non-negative weights to sum 1 and sort them in descending order.

    Ties keep their input order. Zero weights are rejected unless
    ``drop_zeros`` is set, in which case they are removed (their original
    indices disappear from ``permutation``).

    >>> normalize([0.25, 0.5, 0.25], 2).permutation
    (2, 1, 3)
    """
    if not isinstance(k, int) or k < 2:
        raise InvalidAlphabet(f"alphabet size must be an integer >= 2, got {k!r}")
    weights = list(raw_probs)
    for w in weights:
        if isinstance(w, float) and not math.isfinite(w):
            raise InvalidDistribution(f"non-finite weight {w!r}")
        if w < 0:
            raise InvalidDistribution(f"negative weight {w!r}")
    exact = bool(weights) and all(isinstance(w, Fraction) for w in weights)
    if not exact:
        weights = [float(w) for w in weights]
    total = psum(weights)
    if not weights or total <= 0:
        raise InvalidDistribution("at least one weight must be strictly positive")

    indexed = [(i + 1, w) for i, w in enumerate(weights)]
    if any(w == 0 for _, w in indexed):
        if not drop_zeros:
            zeros = [i for i, w in indexed if w == 0]
            raise InvalidDistribution(f"zero-probability symbols at positions {zeros}")
        indexed = [(i, w) for i, w in indexed if w != 0]
    # stable sort: ties stay in original order
    indexed.sort(key=lambda item: item[1], reverse=True)
    probs = tuple(w / total for _, w in indexed)
    if probs[-1] == 0:
        raise InvalidDistribution(f"weight {indexed[-1][1]!r} underflows to probability 0")
    return SourceDistribution(probs, k, tuple(i for i, _ in indexed))


def _log(x, base) -> float:
    # log2-based so that powers of two come out exact in base 2
    return math.log2(x) / math.log2(base)


def entropy(dist: SourceDistribution, base: Optional[int] = None) -> EntropyValue:
    """Shannon entropy -sum p_i log_base p_i (base defaults to ``dist.k``)."""
    base = dist.k if base is None else base
    if base < 2:
        raise InvalidAlphabet(f"entropy base must be >= 2, got {base}")
    h = -math.fsum(float(p) * math.log2(p) for p in dist.probs) / math.log2(base)
    return EntropyValue(max(h, 0.0), base)


def binary_entropy_base_k(p1, k: int) -> float:
    """Two-point entropy of (p1, 1 - p1) in base k, with 0 log 0 = 0."""
    if not 0 < p1 <= 1:
        raise InvalidProbability(f"p1 must lie in (0, 1], got {p1!r}")
    if k < 2:
        raise InvalidAlphabet(f"alphabet size must be >= 2, got {k}")
    q = 1 - p1
    h = -float(p1) * math.log2(p1)
    if q > 0:
        h -= float(q) * math.log2(q)
    return max(h, 0.0) / math.log2(k)


def load_distribution(path, k: Optional[int] = None, drop_zeros: bool = False) -> SourceDistribution:
    """Read a distribution file.

    Two formats are accepted: a JSON object ``{"k": 2, "probs": [...]}`` or a
    CSV file with a ``prob`` header and one weight per line. Weights need not
    be normalized. An explicit ``k`` overrides the file; CSV files default to
    k = 2.
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidDistribution(f"{path}: invalid JSON: {exc}") from None
        if not isinstance(doc, dict) or "probs" not in doc:
            raise InvalidDistribution(f'{path}: expected an object with a "probs" array')
        raw = doc["probs"]
        if not isinstance(raw, list) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw
        ):
            raise InvalidDistribution(f'{path}: "probs" must be an array of numbers')
        file_k = doc.get("k", 2)
    else:
        rows = list(csv.reader(text.splitlines()))
        rows = [r for r in rows if r and any(c.strip() for c in r)]
        if not rows or [c.strip() for c in rows[0]] != ["prob"]:
            raise InvalidDistribution(f'{path}: CSV must start with a "prob" header row')
        raw = []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != 1:
                raise InvalidDistribution(f"{path}:{lineno}: expected one value per line")
            try:
                raw.append(float(row[0]))
            except ValueError:
                raise InvalidDistribution(f"{path}:{lineno}: not a number: {row[0]!r}") from None
        file_k = 2
    if k is None:
        k = file_k
    if not isinstance(k, int) or isinstance(k, bool):
        raise InvalidAlphabet(f"{path}: k must be an integer, got {k!r}")
    return normalize(raw, k, drop_zeros=drop_zeros)
