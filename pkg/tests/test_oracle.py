import json
from fractions import Fraction

import pytest

from spacecode.errors import BudgetExceeded
from spacecode.oracle import (
    brute_force_optimum,
    canonical_labels,
    cap_sensitivity,
    exact_optimum,
    gap_certificate,
    oracle_to_json,
)
from spacecode.bounds import lb_space
from spacecode.source_model import SourceDistribution
from spacecode.space_code import average_length_space, build_space_code, find_prefix_violation

from conftest import random_dist


def uniform(n, k):
    return SourceDistribution(tuple(Fraction(1, n) for _ in range(n)), k)


def test_three_symbol_example():
    d = SourceDistribution((0.5, 0.3, 0.2), 2)
    res = exact_optimum(d)
    assert res.optimal_length == pytest.approx(1.5, abs=1e-12)
    assert res.witness.rendered in {("1", "0_", "00"), ("1", "00", "01")}
    assert res.max_len == 3


def test_point_mass():
    res = exact_optimum(SourceDistribution((1.0,), 2))
    assert res.optimal_length == 1.0
    assert res.witness.rendered == ("0",)


def test_uniform_four_matches_construction_and_lower_bound():
    d = uniform(4, 2)
    res = exact_optimum(d)
    assert res.optimal_length == Fraction(7, 4)
    assert res.optimal_length == average_length_space(build_space_code(d), d) == lb_space(d)
    assert gap_certificate(d) == 0


def test_skewed_three_symbols():
    d = SourceDistribution((0.9, 0.05, 0.05), 2)
    assert gap_certificate(d) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("k, sizes", [(2, range(1, 6)), (3, range(1, 5))])
def test_matches_literal_enumeration(rng, k, sizes):
    for n in sizes:
        for _ in range(4):
            d = random_dist(rng, n, k)
            fast = exact_optimum(d)
            slow = brute_force_optimum(d)
            assert fast.optimal_length == pytest.approx(slow.optimal_length, abs=1e-12)


def test_witness_is_a_valid_code_with_the_reported_cost(rng):
    for n in range(1, 9):
        d = random_dist(rng, n, 2)
        res = exact_optimum(d)
        assert res.witness.n == n
        assert find_prefix_violation(res.witness.rendered) is None
        assert average_length_space(res.witness, d) == res.optimal_length


def test_closed_codes_reach_the_optimum(rng):
    # an optimal code can always be taken with spaces on every internal node
    for k, n in [(2, 6), (2, 8), (3, 7)]:
        for _ in range(3):
            d = random_dist(rng, n, k)
            free = exact_optimum(d).optimal_length
            closed = exact_optimum(d, closed_only=True).optimal_length
            assert closed == pytest.approx(free, abs=1e-12)


def test_longer_caps_do_not_help(rng):
    for k, n in [(2, 7), (3, 6)]:
        d = random_dist(rng, n, k)
        values = [v for _, v in cap_sensitivity(d, extra=2)]
        assert max(values) - min(values) < 1e-12


def test_gap_certificate_range(rng):
    for k, nmax in [(2, 8), (3, 9)]:
        for n in range(1, nmax + 1):
            d = random_dist(rng, n, k)
            assert -1e-12 <= gap_certificate(d) < 1


def test_budget():
    d = uniform(8, 2)
    with pytest.raises(BudgetExceeded) as err:
        exact_optimum(d, budget=10)
    assert err.value.searched > 10
    with pytest.raises(BudgetExceeded):
        brute_force_optimum(d, budget=10)


def test_cap_too_small():
    with pytest.raises(ValueError):
        exact_optimum(uniform(8, 2), max_len=2)


def test_canonical_labels_prefers_bigger_subtrees():
    words = [("1_", False), ("10", False), ("11", False), ("0", False)]
    words = [(w.rstrip("_"), w.endswith("_")) for w, _ in words]
    assert sorted(canonical_labels(words)) == sorted([("0", True), ("00", False), ("01", False), ("1", False)])


def test_json_shape():
    doc = oracle_to_json(exact_optimum(uniform(4, 2)))
    assert doc["codebook"]["kind"] == "space_prefix"
    assert doc["metadata"]["optimal_length"] == 1.75
    json.dumps(doc)
    assert doc["metadata"]["max_len"] == 3
    assert doc["metadata"]["instances_searched"] > 0
