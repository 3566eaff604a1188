"""Search module: exact cover, exhaustion soundness, determinism, ASP search."""

import random

import pytest

from diffkit.core import InadmissibleError
from diffkit.search import (
    BUDGET_EXCEEDED,
    EXHAUSTED,
    SOLUTION,
    CoverProblem,
    SearchBudget,
    complete_cover,
    nonexistence_sweep,
    search_asp3,
    search_small_cdf,
    search_small_pdf,
)
from diffkit.verify import verify_asp, verify_cdf, verify_pdf, verify_psds


def test_single_block_cover():
    problem = CoverProblem.from_counts({d: 1 for d in range(1, 7)}, 1, 4, 6)
    result = complete_cover(problem)
    assert result.status == SOLUTION
    assert verify_pdf(result.blocks, 13, 4, 1).passed


def test_known_nonexistent_orders_exhaust():
    for v, blocks in ((25, 2), (37, 3)):
        problem = CoverProblem.from_counts(
            {d: 1 for d in range(1, (v - 1) // 2 + 1)}, blocks, 4, (v - 1) // 2
        )
        result = complete_cover(problem)
        assert result.status == EXHAUSTED


def test_cover_problem_sanity_checks():
    with pytest.raises(InadmissibleError):
        CoverProblem.from_counts({1: 1, 2: 1}, 1, 4, 6)  # mass mismatch
    with pytest.raises(InadmissibleError):
        CoverProblem.from_counts({9: 6}, 1, 4, 6)  # difference above cap


def test_completion_subtracts_fixed_blocks():
    target = {d: 1 for d in range(1, 13)}
    problem = CoverProblem.completion(target, [(0, 1, 10, 12)], 1, 4, 12)
    # remaining differences: 3,4,5,6,7,8 (the fixed block eats 1,2,9,10,11,12)
    assert dict(problem.remaining) == {3: 1, 4: 1, 5: 1, 6: 1, 7: 1, 8: 1}
    with pytest.raises(InadmissibleError):
        CoverProblem.completion(target, [(0, 1, 2, 10)], 1, 4, 12)  # overcovers 1


def test_search_small_pdf_roundtrip():
    result = search_small_pdf(13, 4, 1)
    assert result.status == SOLUTION
    assert result.family.provenance == "searched"
    assert verify_pdf(result.family.blocks, 13, 4, 1).passed

    assert search_small_pdf(25, 4, 1).status == EXHAUSTED
    assert search_small_pdf(37, 4, 1).status == EXHAUSTED

    result = search_small_pdf(19, 4, 2)
    assert result.status == SOLUTION
    assert verify_pdf(result.blocks, 19, 4, 2).passed

    result = search_small_pdf(15, 4, 6)
    assert result.status == SOLUTION
    assert verify_pdf(result.blocks, 15, 4, 6).passed


def test_search_determinism():
    first = search_small_pdf(37, 4, 1)
    second = search_small_pdf(37, 4, 1)
    assert first.nodes == second.nodes
    a = search_small_pdf(49, 4, 1)
    b = search_small_pdf(49, 4, 1)
    assert a.nodes == b.nodes and a.blocks == b.blocks


def test_budget_cut_is_never_reported_as_exhaustion():
    result = search_small_pdf(37, 4, 1, SearchBudget(node_limit=10))
    assert result.status == BUDGET_EXCEEDED


def test_search_small_cdf():
    result = search_small_cdf(37, 4)
    assert result.status == SOLUTION
    assert verify_cdf(result.blocks, 37, 4, 1).passed
    assert len(result.blocks) == 3


def test_asp3_search():
    assert search_asp3(5).status == SOLUTION
    assert search_asp3(9).status == EXHAUSTED      # r = 4 has no solution
    result = search_asp3(13)
    assert result.status == SOLUTION
    assert verify_asp(result.family.blocks).passed
    with pytest.raises(InadmissibleError):
        search_asp3(8)


def test_asp_column_permutation_lemma():
    # Uniformly permuting columns preserves the additive property; this is
    # why fixing the first permutation to the sorted basis loses nothing.
    rows = search_asp3(13).family.blocks
    rng = random.Random(5)
    n = len(rows[0])
    for _ in range(10):
        order = list(range(n))
        rng.shuffle(order)
        permuted = [tuple(row[j] for j in order) for row in rows]
        assert verify_asp(permuted).passed


def test_nonexistence_sweep_report():
    report = nonexistence_sweep()
    by_order = {row["v"]: row["status"] for row in report["instances"]}
    assert by_order == {25: "nonexistent", 37: "nonexistent", 13: "exists"}
    assert report["conclusive"]
    assert all(row["nodes"] > 0 for row in report["instances"])

    cut = nonexistence_sweep(instances=[(37, 4, 1)], budget=SearchBudget(node_limit=5))
    assert cut["instances"][0]["status"] == "inconclusive"
    assert not cut["conclusive"]


def test_completion_search_rebuilds_sporadic_blocks():
    # Fix most blocks of a small threshold-3 system and let the solver
    # rediscover the rest from the leftover difference multiset.
    from diffkit.constructions import psds_4_3

    family = psds_4_3(19)
    target = {d: 1 for d in range(3, 6 * 19 + 3)}
    fixed = family.blocks[:13]
    problem = CoverProblem.completion(target, fixed, 6, 4, 6 * 19 + 2)
    result = complete_cover(problem, SearchBudget(node_limit=20_000_000, wall_ms=120_000))
    assert result.status == SOLUTION
    assert verify_psds(result.blocks, 3).passed
