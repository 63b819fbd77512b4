"""Parametric benchmark: construction, bounds, oracle and a (k+1)-ary Huffman baseline.

Rows are plain dataclasses; :func:`rows_to_csv` renders them with a fixed
header and 12 significant digits so identical specs give identical bytes.
"""

import csv
import heapq
import io
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .bounds import full_report
from .errors import InvalidDistribution, InvalidSpec
from .oracle import DEFAULT_BUDGET, exact_optimum
from .source_model import SourceDistribution, load_distribution, normalize, psum

FAMILIES = ("zipf", "geometric", "uniform", "custom-file")

CSV_HEADER = (
    "trial,family,param,n,k,H_k,L_plus,L_eps,L_space,oracle_opt,huffman_kplus1,"
    "lb_space,th_lb_plain,th_lb_p1,ub_th_plain_exact,ub_th_plain_loose,ub_th_p1,"
    "remark_gap,gap_cert"
).split(",")


@dataclass(frozen=True)
class BenchSpec:
    family: str
    n: int
    k: int
    family_param: float = 1.0
    seed: int = 0
    trials: int = 1
    jitter: float = 0.0  # > 0 multiplies weights by exp(jitter * N(0, 1)) per trial
    dist_file: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidSpec(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.family == "custom-file" and not self.dist_file:
            raise InvalidSpec("family custom-file needs a dist_file")
        if self.family != "custom-file" and self.n < 1:
            raise InvalidSpec(f"n must be >= 1, got {self.n}")
        if self.k < 2:
            raise InvalidSpec(f"k must be >= 2, got {self.k}")
        if self.trials < 1:
            raise InvalidSpec(f"trials must be >= 1, got {self.trials}")
        if self.jitter < 0:
            raise InvalidSpec(f"jitter must be >= 0, got {self.jitter}")


def _family_weights(family: str, n: int, param: float) -> np.ndarray:
    i = np.arange(1, n + 1, dtype=float)
    if family == "uniform":
        return np.ones(n)
    if family == "zipf":
        if param < 0:
            raise InvalidSpec(f"zipf exponent must be >= 0, got {param}")
        return i ** (-param)
    if family == "geometric":
        if not 0 < param < 1:
            raise InvalidSpec(f"geometric ratio must lie in (0, 1), got {param}")
        return (1 - param) * param ** (i - 1)
    raise InvalidSpec(f"family {family!r} has no closed form")


def generate(family: str, n: int, k: int, param: float = 1.0, seed: int = 0, jitter: float = 0.0) -> SourceDistribution:
    """Build a sorted distribution from a named family.

    The seed only matters when ``jitter`` > 0.
    """
    weights = _family_weights(family, n, param)
    if jitter > 0:
        rng = np.random.default_rng(seed)  # int or sequence of ints
        weights = weights * np.exp(jitter * rng.standard_normal(n))
    try:
        return normalize(weights.tolist(), k)
    except InvalidDistribution as exc:
        raise InvalidSpec(f"{family}(n={n}, param={param}) is not usable: {exc}") from None


def huffman_kplus1(dist: SourceDistribution):
    """Average length of an optimal prefix code over k+1 letters (k digits plus space).

    Standard D-ary Huffman with D = k + 1: zero-weight dummies are added until
    (m - 1) is divisible by k, then the k + 1 lightest nodes are merged
    repeatedly (ties go to the earliest created). The average length equals
    the total weight of all merged nodes. A single symbol gets length 1.
    """
    if dist.n == 1:
        return dist.probs[0] * 1
    k = dist.k
    weights = list(dist.probs)
    zero = weights[0] * 0
    while (len(weights) - 1) % k:
        weights.append(zero)
    heap = [(w, order) for order, w in enumerate(weights)]
    heapq.heapify(heap)
    created = len(heap)
    merged = []
    while len(heap) > 1:
        total = psum(heapq.heappop(heap)[0] for _ in range(k + 1))
        merged.append(total)
        heapq.heappush(heap, (total, created))
        created += 1
    return psum(merged)


@dataclass(frozen=True)
class BenchRow:
    trial: int
    family: str
    param: float
    n: int
    k: int
    H_k: float
    L_plus: float
    L_eps: float
    L_space: float
    oracle_opt: Optional[float]
    huffman_kplus1: float
    lb_space: float
    th_lb_plain: float
    th_lb_p1: float
    ub_th_plain_exact: float
    ub_th_plain_loose: float
    ub_th_p1: float
    remark_gap: float
    gap_cert: Optional[float]

    def remark_holds(self, tol: float = 1e-9) -> bool:
        return self.L_space - self.huffman_kplus1 <= self.remark_gap + tol


def _trial_dist(spec: BenchSpec, trial: int) -> SourceDistribution:
    if spec.family == "custom-file":
        dist = load_distribution(spec.dist_file, k=spec.k)
        if spec.jitter > 0:
            rng = np.random.default_rng([spec.seed, trial])
            w = np.array(dist.probs, dtype=float) * np.exp(spec.jitter * rng.standard_normal(dist.n))
            dist = normalize(w.tolist(), spec.k)
        return dist
    return generate(spec.family, spec.n, spec.k, spec.family_param, seed=[spec.seed, trial], jitter=spec.jitter)


def bench_row(dist: SourceDistribution, trial: int = 0, family: str = "custom", param: float = float("nan"),
              oracle_max_n: int = 10, oracle_budget: int = DEFAULT_BUDGET) -> BenchRow:
    opt = None
    if dist.n <= oracle_max_n:
        opt = float(exact_optimum(dist, budget=oracle_budget).optimal_length)
    rep = full_report(dist, L_space_optimal=opt)
    L_space = rep["L_space_constructed"]
    return BenchRow(
        trial=trial,
        family=family,
        param=param,
        n=dist.n,
        k=dist.k,
        H_k=rep.H_k,
        L_plus=rep["L_plus"],
        L_eps=rep["L_eps"],
        L_space=L_space,
        oracle_opt=opt,
        huffman_kplus1=float(huffman_kplus1(dist)),
        lb_space=rep["lb_space"],
        th_lb_plain=rep["th_lb_plain"],
        th_lb_p1=rep["th_lb_p1"],
        ub_th_plain_exact=rep["th_ub_plain_exact"],
        ub_th_plain_loose=rep["th_ub_plain_loose"],
        ub_th_p1=rep["th_ub_p1"],
        remark_gap=rep["remark_gap"],
        gap_cert=None if opt is None else L_space - opt,
    )


def run(spec: BenchSpec, oracle_max_n: int = 10, oracle_budget: int = DEFAULT_BUDGET) -> List[BenchRow]:
    """One row per trial, in trial order. The oracle runs only when n <= oracle_max_n."""
    rows = []
    for trial in range(spec.trials):
        dist = _trial_dist(spec, trial)
        rows.append(bench_row(dist, trial, spec.family, spec.family_param, oracle_max_n, oracle_budget))
    return rows


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isnan(value):
            return ""
        return f"{value:.12g}"
    return str(value)


def rows_to_csv(rows: List[BenchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow([_cell(getattr(row, name)) for name in CSV_HEADER])
    return buf.getvalue()
