"""Radix-order enumeration of k-ary strings and optimal one-to-one codes.

Non-empty k-ary strings are numbered in radix order (shorter first, then
lexicographic) with heap indices: index 0 is the empty string and the
children of node ``x`` are ``k*x + 1 .. k*x + k``. The string of ``x`` is
read off by walking parents, so radix-order bookkeeping reduces to integer
arithmetic.
"""

from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .errors import InvalidAlphabet, InvalidIndex, InvalidPairing
from .source_model import SourceDistribution, psum

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
MAX_K = len(DIGITS)


def check_k(k: int) -> None:
    if not isinstance(k, int) or k < 2:
        raise InvalidAlphabet(f"alphabet size must be an integer >= 2, got {k!r}")
    if k > MAX_K:
        raise InvalidAlphabet(f"digit strings are limited to k <= {MAX_K}, got {k}")


def floor_log(m: int, k: int) -> int:
    """Largest j with k**j <= m, for integers m >= 1 (no floating point)."""
    if m < 1:
        raise ValueError(f"floor_log needs m >= 1, got {m}")
    j, power = 0, k
    while power <= m:
        power *= k
        j += 1
    return j


def ceil_log(m: int, k: int) -> int:
    """Smallest j with k**j >= m, for integers m >= 1."""
    if m < 1:
        raise ValueError(f"ceil_log needs m >= 1, got {m}")
    j, power = 0, 1
    while power < m:
        power *= k
        j += 1
    return j


def level_start(j: int, k: int) -> int:
    """Heap index of the first string of length j, i.e. (k^j - 1)/(k - 1)."""
    return (k ** j - 1) // (k - 1)


def heap_level(x: int, k: int) -> int:
    """Length of the string with heap index x."""
    return floor_log((k - 1) * x + 1, k)


def heap_to_string(x: int, k: int) -> str:
    """Return the x-th non-empty k-ary string in radix order (1-based)."""
    check_k(k)
    if not isinstance(x, int) or x < 1:
        raise InvalidIndex(f"heap index must be a positive integer, got {x!r}")
    digits = []
    while x > 0:
        x, d = divmod(x - 1, k)
        digits.append(DIGITS[d])
    return "".join(reversed(digits))


def string_to_heap(s: str, k: int) -> int:
    """Inverse of :func:`heap_to_string`; the empty string maps to 0."""
    check_k(k)
    x = 0
    for ch in s:
        d = DIGITS.find(ch)
        if d < 0 or d >= k:
            raise InvalidIndex(f"{ch!r} is not a base-{k} digit")
        x = x * k + d + 1
    return x


_string_tables: Dict[int, List[str]] = {}


def radix_strings(k: int, upto: int) -> List[str]:
    """Shared table whose entry x is the string of heap index x, for x <= upto.

    The table is grown on demand and must not be mutated by callers.
    """
    table = _string_tables.setdefault(k, [""])
    for x in range(len(table), upto + 1):
        table.append(table[(x - 1) // k] + DIGITS[(x - 1) % k])
    return table


def one_to_one_lengths(n: int, k: int, uses_epsilon: bool = False) -> Tuple[int, ...]:
    """Codeword lengths of the optimal one-to-one code for n ordered symbols.

    Symbol i gets floor(log_k((k-1)i + 1)), or floor(log_k((k-1)i)) when the
    empty word is available.
    """
    if n < 1:
        raise InvalidIndex(f"n must be >= 1, got {n}")
    shift = 0 if uses_epsilon else 1
    return tuple(floor_log((k - 1) * i + shift, k) for i in range(1, n + 1))


def radix_assignment(n: int, k: int, uses_epsilon: bool = False) -> List[int]:
    """Heap index given to each symbol by the reverse-lexicographic assignment.

    The first n strings in radix order are used (counting the empty string
    when ``uses_epsilon``). Within one length the used strings go to
    consecutive symbols in reverse lexicographic order.
    """
    if n < 1:
        raise InvalidIndex(f"n must be >= 1, got {n}")
    top = n - 1 if uses_epsilon else n  # largest heap index used
    out = [0] if uses_epsilon else []
    j = 1
    while True:
        a = level_start(j, k)
        if a > top:
            break
        hi = min(level_start(j + 1, k) - 1, top)
        out.extend(range(hi, a - 1, -1))
        j += 1
    return out


@dataclass(frozen=True)
class OneToOneCode:
    """Injective map from symbols 1..n to k-ary strings ("" only with epsilon)."""

    codewords: Tuple[str, ...]
    uses_epsilon: bool
    k: int

    def __post_init__(self):
        object.__setattr__(self, "codewords", tuple(self.codewords))
        check_k(self.k)
        allowed = set(DIGITS[: self.k])
        for w in self.codewords:
            if w == "" and not self.uses_epsilon:
                raise InvalidIndex("empty codeword in a code without epsilon")
            if not set(w) <= allowed:
                raise InvalidIndex(f"codeword {w!r} is not over the base-{self.k} digits")
        if len(set(self.codewords)) != len(self.codewords):
            raise InvalidIndex("codewords of a one-to-one code must be distinct")

    @property
    def n(self) -> int:
        return len(self.codewords)

    @property
    def kind(self) -> str:
        return "one_to_one_eps" if self.uses_epsilon else "one_to_one"

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(len(w) for w in self.codewords)


def assign_one_to_one(dist: SourceDistribution, uses_epsilon: bool = False) -> OneToOneCode:
    """Optimal one-to-one code for ``dist``, built by reverse-lex radix assignment."""
    check_k(dist.k)
    order = radix_assignment(dist.n, dist.k, uses_epsilon)
    table = radix_strings(dist.k, max(order))
    return OneToOneCode(tuple(table[x] for x in order), uses_epsilon, dist.k)


def average_length(code: OneToOneCode, dist: SourceDistribution):
    """Average codeword length sum p_i |w_i| (L_plus, or L_eps with epsilon)."""
    if code.n != dist.n or code.k != dist.k:
        raise InvalidPairing(
            f"code has n={code.n}, k={code.k} but distribution has n={dist.n}, k={dist.k}"
        )
    return psum(p * len(w) for p, w in zip(dist.probs, code.codewords))


def epsilon_gap_indices(n: int, k: int) -> List[int]:
    """Symbol indices (k^j - 1)/(k - 1) <= n, j >= 1.

    These are exactly the symbols whose codeword shrinks by one when the
    empty word becomes available.
    """
    out = []
    j = 1
    while level_start(j, k) <= n:
        out.append(level_start(j, k))
        j += 1
    return out


def epsilon_gap_exact(dist: SourceDistribution):
    """L_plus - L_eps, summed over :func:`epsilon_gap_indices`."""
    return psum(dist.probs[i - 1] for i in epsilon_gap_indices(dist.n, dist.k))


def printed_gap_indices(n: int, k: int) -> List[int]:
    """Index set of the closed-form sum with upper limit floor(log_k ceil((n-1)/k)).

    It undercounts for some n (uniform n=4, k=2 keeps only index 1); it is
    exposed for comparison with :func:`epsilon_gap_indices`.
    """
    m = -(-(n - 1) // k)
    if m < 1:
        return []
    return [level_start(i, k) for i in range(1, floor_log(m, k) + 1)]


def epsilon_gap_printed(dist: SourceDistribution):
    return psum(dist.probs[i - 1] for i in printed_gap_indices(dist.n, dist.k))


def codebook_to_json(code: OneToOneCode) -> dict:
    return {"kind": code.kind, "k": code.k, "codewords": list(code.codewords)}


def codebook_from_json(doc: dict) -> OneToOneCode:
    kind = doc.get("kind")
    if kind not in ("one_to_one", "one_to_one_eps"):
        raise InvalidIndex(f"not a one-to-one codebook: kind={kind!r}")
    words: Sequence[str] = doc.get("codewords", [])
    return OneToOneCode(tuple(words), kind == "one_to_one_eps", doc.get("k"))
