"""Exact optimum of space-terminated prefix codes by exhaustive search.

A candidate code is a set W of n distinct non-empty k-ary strings of length
at most ``max_len``. A member of W gets a space exactly when it is a proper
prefix of another member: the space is forced there, and anywhere else it
would only add length. Given W, the best assignment pairs the sorted total
lengths with the probabilities in descending order, so the cost of W depends
only on its sorted length profile.

:func:`exact_optimum` walks the k-ary tree bottom-up and collects, for each
depth, every length profile a subtree can realise (with one witness each).
Sibling subtrees at the same depth are interchangeable, so sets that differ
by relabelling children collapse to one profile, but no achievable profile
is skipped. :func:`brute_force_optimum` is the literal enumeration over
``itertools.combinations`` and is kept as a cross-check for tiny inputs.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .errors import BudgetExceeded
from .radix_codebook import DIGITS, check_k, heap_level
from .source_model import SourceDistribution, psum
from .space_code import SpaceCodebook, average_length_space, build_space_code, codebook_to_json

DEFAULT_BUDGET = 20_000_000

# profile: sorted tuple of absolute total lengths
# witness: tuple of (digits relative to the subtree, has_space)
Profile = Tuple[int, ...]
Witness = Tuple[Tuple[str, bool], ...]


@dataclass(frozen=True)
class OracleResult:
    optimal_length: float
    witness: SpaceCodebook
    instances_searched: int
    max_len: int


def default_max_len(n: int, k: int) -> int:
    return heap_level(n, k) + 1


def _cost(probs, profile: Profile):
    return psum(p * l for p, l in zip(probs, profile))


class _Search:
    def __init__(self, n: int, k: int, max_len: int, budget: int, closed_only: bool):
        self.n, self.k, self.max_len = n, k, max_len
        self.budget = budget
        self.closed_only = closed_only
        self.searched = 0
        self.memo: Dict[int, Dict[Profile, Witness]] = {}

    def _tick(self, amount=1):
        self.searched += amount
        if self.searched > self.budget:
            raise BudgetExceeded(
                f"oracle search for n={self.n}, k={self.k}, max_len={self.max_len} "
                f"exceeded its budget of {self.budget}",
                self.searched,
            )

    def children(self, depth: int) -> Dict[Profile, Witness]:
        """Profiles realisable by the k child subtrees of a node at ``depth``."""
        if depth >= self.max_len:
            return {(): ()}
        sub = self.subtree(depth + 1)
        combos: Dict[Profile, Witness] = {(): ()}
        for label in DIGITS[: self.k]:
            merged: Dict[Profile, Witness] = {}
            for prof_a, wit_a in combos.items():
                for prof_b, wit_b in sub.items():
                    if len(prof_a) + len(prof_b) > self.n:
                        continue
                    self._tick()
                    prof = tuple(sorted(prof_a + prof_b))
                    if prof not in merged:
                        merged[prof] = wit_a + tuple((label + s, sp) for s, sp in wit_b)
            combos = merged
        return combos

    def subtree(self, depth: int) -> Dict[Profile, Witness]:
        """Profiles realisable inside the subtree of one node at ``depth`` >= 1."""
        if depth in self.memo:
            return self.memo[depth]
        out: Dict[Profile, Witness] = {}
        for prof, wit in self.children(depth).items():
            below = bool(prof)
            if not (self.closed_only and below):
                out.setdefault(prof, wit)
            if len(prof) < self.n:
                self._tick()
                mine = depth + 1 if below else depth
                out.setdefault(tuple(sorted(prof + (mine,))), (("", below),) + wit)
        self.memo[depth] = out
        return out


def exact_optimum(
    dist: SourceDistribution,
    max_len: Optional[int] = None,
    budget: int = DEFAULT_BUDGET,
    closed_only: bool = False,
) -> OracleResult:
    """Minimum average length over all space-terminated prefix codes.

    ``max_len`` caps the digit length of candidate strings (default: length
    of the n-th radix string plus one). ``closed_only`` restricts the search
    to codes where every internal node carries a spaced codeword. Raises
    :class:`BudgetExceeded` once more than ``budget`` partial sets have been
    examined.
    """
    n, k = dist.n, dist.k
    check_k(k)
    if max_len is None:
        max_len = default_max_len(n, k)
    if max_len < heap_level(n, k):
        raise ValueError(f"max_len={max_len} cannot hold {n} distinct strings")
    search = _Search(n, k, max_len, budget, closed_only)
    best_prof: Optional[Profile] = None
    best_cost = None
    best_wit: Witness = ()
    for prof, wit in search.children(0).items():
        if len(prof) != n:
            continue
        cost = _cost(dist.probs, prof)
        if best_cost is None or cost < best_cost or (cost == best_cost and prof < best_prof):
            best_prof, best_cost, best_wit = prof, cost, wit
    assert best_prof is not None  # n strings always fit when max_len >= level of n
    witness = _witness_codebook(best_wit, k)
    return OracleResult(
        optimal_length=average_length_space(witness, dist),
        witness=witness,
        instances_searched=search.searched,
        max_len=max_len,
    )


def canonical_labels(words: List[Tuple[str, bool]]) -> List[Tuple[str, bool]]:
    """Relabel children at every node so bigger subtrees get smaller digits.

    Relabelling siblings keeps every length, so the cost is unchanged; it
    only makes the witness independent of search order.
    """
    tree: dict = {}
    for digits, space in words:
        node = tree
        for ch in digits:
            node = node.setdefault(ch, {})
        node[None] = space

    def size(node):
        return sum(1 if key is None else size(child) for key, child in node.items())

    def shape(node):
        return tuple(sorted(((size(c), shape(c)) for key, c in node.items() if key is not None), reverse=True)) + (
            (node.get(None),) if None in node else ()
        )

    out = []

    def walk(node, prefix):
        if None in node:
            out.append((prefix, node[None]))
        kids = sorted(
            (c for key, c in node.items() if key is not None),
            key=lambda c: (size(c), shape(c)),
            reverse=True,
        )
        for label, child in zip(DIGITS, kids):
            walk(child, prefix + label)

    walk(tree, "")
    return out


def _witness_codebook(wit, k: int) -> SpaceCodebook:
    # shortest total length to the most probable symbol; radix order breaks ties
    words = sorted(canonical_labels(list(wit)), key=lambda w: (len(w[0]) + w[1], len(w[0]), w[0]))
    return SpaceCodebook(tuple(d for d, _ in words), tuple(s for _, s in words), k)


def brute_force_optimum(
    dist: SourceDistribution, max_len: Optional[int] = None, budget: int = 2_000_000
) -> OracleResult:
    """Same contract as :func:`exact_optimum`, by enumerating every string set."""
    n, k = dist.n, dist.k
    check_k(k)
    if max_len is None:
        max_len = default_max_len(n, k)
    pool = [
        "".join(t)
        for length in range(1, max_len + 1)
        for t in itertools.product(DIGITS[:k], repeat=length)
    ]
    best = None
    searched = 0
    for combo in itertools.combinations(pool, n):
        searched += 1
        if searched > budget:
            raise BudgetExceeded(f"brute force over {len(pool)} strings exceeded its budget", searched)
        internal = {w[:cut] for w in combo for cut in range(1, len(w))}
        words = [(w, w in internal) for w in combo]
        cost = _cost(dist.probs, sorted(len(w) + s for w, s in words))
        if best is None or cost < best[0]:
            best = (cost, tuple(words))
    witness = _witness_codebook(best[1], k)
    return OracleResult(average_length_space(witness, dist), witness, searched, max_len)


def gap_certificate(dist: SourceDistribution, max_len: Optional[int] = None, budget: int = DEFAULT_BUDGET):
    """Constructed average length minus the exact optimum (lies in [0, 1))."""
    built = average_length_space(build_space_code(dist), dist)
    return built - exact_optimum(dist, max_len, budget).optimal_length


def cap_sensitivity(dist: SourceDistribution, extra: int = 2, budget: int = DEFAULT_BUDGET) -> List[Tuple[int, float]]:
    """Optimum for each cap from the default up to default + extra."""
    base = default_max_len(dist.n, dist.k)
    return [
        (cap, exact_optimum(dist, cap, budget).optimal_length)
        for cap in range(base, base + extra + 1)
    ]


def oracle_to_json(result: OracleResult) -> dict:
    return {
        "codebook": codebook_to_json(result.witness),
        "metadata": {
            "optimal_length": float(result.optimal_length),
            "instances_searched": result.instances_searched,
            "max_len": result.max_len,
        },
    }
