"""Entropy bounds on one-to-one and space-terminated code lengths.

Targets:

* ``L_eps``   average length of the optimal one-to-one code with the empty word
* ``L_plus``  the same without the empty word
* ``L_space`` average length of an optimal space-terminated prefix code

All logarithms are base k unless noted. ``H`` is the base-k entropy.
"""

import math
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Optional

from .radix_codebook import (
    assign_one_to_one,
    average_length,
    epsilon_gap_exact,
    epsilon_gap_printed,
)
from .source_model import (
    SourceDistribution,
    binary_entropy_base_k,
    entropy,
    psum,
)
from .space_code import average_length_space, build_space_code, space_mass


def _logk(x, k):
    return math.log2(x) / math.log2(k)


def _log_core(c: float, k: int) -> float:
    """c log_k(1 + 1/c) + log_k(c + 1), continuous at c = 0."""
    if c <= 0:
        return 0.0
    return c * _logk(1 + 1 / c, k) + _logk(c + 1, k)


def lb_eps_plain(H, k: int) -> float:
    """Lower bound on L_eps from entropy alone (strict).

    With c = H + log_k(k-1) the bound is H - c log_k(1 + 1/c) - log_k(c + 1).
    At c = 0 (point mass, k = 2) the value is 0, which is L_eps itself.
    """
    H = float(H)
    c = H + _logk(k - 1, k)
    if c <= 0:
        return 0.0
    return H - _log_core(c, k)


def _p1_tail_term(p1, n: int, k: int) -> float:
    # -log_k(1 - (1/(kn))^{log_k(1 + 1/(1 - p1))}); the power vanishes as p1 -> 1
    q = 1 - p1
    if q <= 0:
        return 0.0
    power = (1.0 / (k * n)) ** _logk(1 + 1 / float(q), k)
    return -_logk(1 - power, k)


def lb_eps_p1(dist: SourceDistribution) -> float:
    """Lower bound on L_eps using H and the largest probability p1."""
    k, n, p1 = dist.k, dist.n, dist.p1
    if p1 == 1:
        return 0.0
    H = entropy(dist).value
    q = float(1 - p1)
    if p1 <= 0.5:
        c = H - float(p1) * _logk(1 / p1, k) + q * _logk(k - 1, k)
    else:
        c = H - binary_entropy_base_k(p1, k) + q * (1 + _logk(k - 1, k))
    return H - _log_core(c, k) - _p1_tail_term(p1, n, k)


def ub_eps_plain(H, k: int) -> float:
    """Upper bound H + log_k(k-1) on L_eps."""
    return float(H) + _logk(k - 1, k)


def ub_eps_p1(dist: SourceDistribution) -> float:
    """Upper bound on L_eps refined by p1."""
    k, p1 = dist.k, dist.p1
    H = entropy(dist).value
    q = float(1 - p1)
    if p1 <= 0.5:
        return H - float(p1) * _logk(1 / p1, k) + q * _logk(k - 1, k)
    return H - binary_entropy_base_k(p1, k) + q * _logk(2 * (k - 1), k)


def _head_count(dist: SourceDistribution) -> int:
    return -(-dist.n // dist.k) - 1


def smallest_mass(dist: SourceDistribution):
    """Sum of the ceil(n/k) - 1 smallest probabilities."""
    m = _head_count(dist)
    return psum(dist.probs[dist.n - m:]) if m > 0 else 0.0


def largest_mass(dist: SourceDistribution):
    """Sum of the ceil(n/k) - 1 largest probabilities."""
    return psum(dist.probs[: _head_count(dist)])


def lb_space(dist: SourceDistribution, L_plus=None):
    """Lower bound L_plus + (ceil(n/k) - 1 smallest probabilities) on L_space."""
    if L_plus is None:
        L_plus = average_length(assign_one_to_one(dist), dist)
    return L_plus + smallest_mass(dist)


def theorem_lb_space(dist: SourceDistribution, variant: str = "plain") -> float:
    """Entropy lower bound on L_space: lb_eps + smallest mass + epsilon gap."""
    if variant == "plain":
        lb = lb_eps_plain(entropy(dist), dist.k)
    elif variant == "p1":
        lb = lb_eps_p1(dist)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return lb + float(smallest_mass(dist)) + float(epsilon_gap_exact(dist))


def theorem_ub_space(dist: SourceDistribution, variant: str = "plain", form: str = "exact") -> float:
    """Entropy upper bound on L_space.

    ``form="exact"`` adds the mass of the symbols the construction actually
    marks with a space; ``form="loose"`` adds the ceil(n/k) - 1 largest
    probabilities instead.
    """
    if variant == "plain":
        ub = ub_eps_plain(entropy(dist), dist.k)
    elif variant == "p1":
        ub = ub_eps_p1(dist)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    if form == "exact":
        extra = space_mass(build_space_code(dist), dist)
    elif form == "loose":
        extra = largest_mass(dist)
    else:
        raise ValueError(f"unknown form {form!r}")
    return ub + float(epsilon_gap_exact(dist)) + float(extra)


def remark_gap_bound(dist: SourceDistribution) -> float:
    """Bound H_k (1 - 1/log_k(k+1)) + 1 on L_space minus the unrestricted (k+1)-ary optimum."""
    k = dist.k
    H = entropy(dist).value
    return H * (1 - 1 / _logk(k + 1, k)) + 1


@dataclass(frozen=True)
class BoundRecord:
    formula_id: str
    kind: str  # "lower", "upper" or "value"
    target: str  # "L_eps", "L_plus", "L_space" or "gap"
    value: float
    strict: bool = False


@dataclass
class BoundsReport:
    n: int
    k: int
    H_k: float
    p1: float
    records: List[BoundRecord] = field(default_factory=list)
    eps_gap_disagrees: bool = False

    def __getitem__(self, formula_id: str) -> float:
        for r in self.records:
            if r.formula_id == formula_id:
                return r.value
        raise KeyError(formula_id)

    def lowers(self, target: str) -> List[BoundRecord]:
        return [r for r in self.records if r.target == target and r.kind in ("lower", "value")]

    def uppers(self, target: str) -> List[BoundRecord]:
        return [r for r in self.records if r.target == target and r.kind in ("upper", "value")]

    def sandwich_violations(self, tol: float = 1e-9) -> List[tuple]:
        """Pairs (lower_id, upper_id) on one target where lower > upper + tol.

        Exact values count on both sides, so the true L_eps is checked
        against every bound on it.
        """
        bad = []
        for target in ("L_eps", "L_plus", "L_space"):
            for lo in self.lowers(target):
                for hi in self.uppers(target):
                    if lo is not hi and lo.value > hi.value + tol:
                        bad.append((lo.formula_id, hi.formula_id))
        return bad

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "H_k": self.H_k,
            "p1": self.p1,
            "eps_gap_disagrees": self.eps_gap_disagrees,
            "records": [asdict(r) for r in self.records],
        }


def full_report(dist: SourceDistribution, L_space_optimal: Optional[float] = None) -> BoundsReport:
    """Evaluate every bound and the actual code lengths for ``dist``.

    When the exact optimum is known (from the oracle) it is added as the
    record ``L_space_optimal``.
    """
    k = dist.k
    H = entropy(dist)
    L_plus = float(average_length(assign_one_to_one(dist), dist))
    L_eps = float(average_length(assign_one_to_one(dist, uses_epsilon=True), dist))
    L_con = float(average_length_space(build_space_code(dist), dist))
    gap_exact = float(epsilon_gap_exact(dist))
    gap_printed = float(epsilon_gap_printed(dist))

    values: Dict[str, tuple] = {
        "lb_eps_plain": ("lower", "L_eps", lb_eps_plain(H, k), True),
        "lb_eps_p1": ("lower", "L_eps", lb_eps_p1(dist), False),
        "ub_eps_plain": ("upper", "L_eps", ub_eps_plain(H, k), False),
        "ub_eps_p1": ("upper", "L_eps", ub_eps_p1(dist), False),
        "lb_space": ("lower", "L_space", float(lb_space(dist, L_plus)), False),
        "th_lb_plain": ("lower", "L_space", theorem_lb_space(dist, "plain"), True),
        "th_lb_p1": ("lower", "L_space", theorem_lb_space(dist, "p1"), False),
        "th_ub_plain_exact": ("upper", "L_space", theorem_ub_space(dist, "plain", "exact"), False),
        "th_ub_plain_loose": ("upper", "L_space", theorem_ub_space(dist, "plain", "loose"), False),
        "th_ub_p1": ("upper", "L_space", theorem_ub_space(dist, "p1", "loose"), False),
        "remark_gap": ("upper", "gap", remark_gap_bound(dist), True),
        "L_plus": ("value", "L_plus", L_plus, False),
        "L_eps": ("value", "L_eps", L_eps, False),
        "L_space_constructed": ("upper", "L_space", L_con, False),
        "eps_gap_exact": ("value", "gap", gap_exact, False),
        "eps_gap_printed": ("value", "gap", gap_printed, False),
    }
    if L_space_optimal is not None:
        values["L_space_optimal"] = ("value", "L_space", float(L_space_optimal), False)
    records = [BoundRecord(fid, *spec) for fid, spec in values.items()]
    return BoundsReport(
        n=dist.n,
        k=k,
        H_k=H.value,
        p1=float(dist.p1),
        records=records,
        eps_gap_disagrees=abs(gap_exact - gap_printed) > 1e-12,
    )
