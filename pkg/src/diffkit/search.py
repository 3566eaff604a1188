"""Exact-cover completion search for base blocks, plus the backtracking
searches used for small sporadic families and additive permutation sequences.

Every search is deterministic: candidates are enumerated in ascending order,
so identical inputs yield identical solutions and identical node counts.  An
"exhausted" outcome means the full canonical-form branch tree was enumerated
with no budget cut, and is therefore a nonexistence proof within the stated
canonical form (translation-normalized blocks containing 0).
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .core import Block, Family, InadmissibleError, as_block, diffs_positive
from .verify import verify_asp, verify_cdf, verify_pdf

SOLUTION = "solution"
EXHAUSTED = "exhausted"
BUDGET_EXCEEDED = "budget-exceeded"

CANONICAL_FORM = "translation-normalized: 0 in every block, elements ascending"


@dataclass(frozen=True)
class SearchBudget:
    """Node and wall-clock limits for one search instance."""

    node_limit: int = 100_000_000
    wall_ms: int | None = 60_000
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.node_limit <= 0 or (self.wall_ms is not None and self.wall_ms <= 0):
            raise InadmissibleError("search budget limits must be positive")


DEFAULT_BUDGET = SearchBudget()


@dataclass(frozen=True)
class SearchResult:
    status: str
    blocks: tuple[Block, ...] | None
    nodes: int
    elapsed_ms: int
    family: Family | None = None

    def report(self) -> dict:
        doc = {
            "status": self.status,
            "nodes": self.nodes,
            "elapsed_ms": self.elapsed_ms,
            "canonical_form": CANONICAL_FORM,
        }
        if self.blocks is not None:
            doc["blocks"] = [list(b) for b in self.blocks]
        return doc


@dataclass(frozen=True)
class CoverProblem:
    """Cover a prescribed multiset of positive differences with new blocks.

    ``remaining`` is what the new blocks must consume exactly; fixed blocks
    have already been accounted for by the caller (see ``completion``).
    """

    remaining: tuple[tuple[int, int], ...]  # (difference, count), ascending
    num_blocks: int
    block_size: int
    element_cap: int
    fixed_blocks: tuple[Block, ...] = ()

    def __post_init__(self) -> None:
        k = self.block_size
        if k < 2:
            raise InadmissibleError(f"block size must be >= 2, got {k}")
        total = 0
        for diff, count in self.remaining:
            if diff <= 0 or count < 0:
                raise InadmissibleError(f"bad remaining entry ({diff}, {count})")
            if diff > self.element_cap:
                raise InadmissibleError(
                    f"difference {diff} exceeds element cap {self.element_cap}"
                )
            total += count
        if total != self.num_blocks * k * (k - 1) // 2:
            raise InadmissibleError(
                f"remaining mass {total} != num_blocks * C(k,2) = "
                f"{self.num_blocks * k * (k - 1) // 2}"
            )

    @classmethod
    def from_counts(
        cls,
        remaining: Mapping[int, int],
        num_blocks: int,
        block_size: int,
        element_cap: int,
        fixed_blocks: Iterable = (),
    ) -> "CoverProblem":
        items = tuple(sorted((d, c) for d, c in remaining.items() if c > 0))
        return cls(items, num_blocks, block_size, element_cap, tuple(as_block(b) for b in fixed_blocks))

    @classmethod
    def pdf_problem(cls, v: int, k: int, lam: int) -> "CoverProblem":
        """The (v,k,lam) perfect-family shape: cover [1,(v-1)/2] lam times."""
        if v % 2 == 0:
            raise InadmissibleError(f"perfect families need odd v, got {v}")
        if lam * (v - 1) % (k * (k - 1)) != 0:
            raise InadmissibleError(
                f"lambda*(v-1) must be divisible by k(k-1); got v={v}, k={k}, lambda={lam}"
            )
        half = (v - 1) // 2
        counts = {d: lam for d in range(1, half + 1)}
        return cls.from_counts(counts, lam * (v - 1) // (k * (k - 1)), k, half)

    @classmethod
    def completion(
        cls,
        target: Mapping[int, int],
        fixed_blocks: Iterable,
        num_new: int,
        block_size: int,
        element_cap: int,
    ) -> "CoverProblem":
        """Subtract the fixed blocks' differences from the target multiset."""
        counts = Counter(dict(target))
        fixed = tuple(as_block(b) for b in fixed_blocks)
        for b in fixed:
            counts.subtract(diffs_positive(b))
        if any(c < 0 for c in counts.values()):
            raise InadmissibleError("fixed blocks already overcover the target")
        return cls.from_counts(counts, num_new, block_size, element_cap, fixed)


class _BudgetCut(Exception):
    pass


def complete_cover(problem: CoverProblem, budget: SearchBudget = DEFAULT_BUDGET) -> SearchResult:
    """Depth-first exact cover over translation-normalized blocks.

    Branches on the largest uncovered difference d; since all of a candidate
    block's differences must still be needed and d is the current maximum,
    d can only be realized as (top element) - 0, so candidates are exactly
    the blocks {0, e_1, ..., e_{k-2}, d}.  Inner elements are enumerated
    ascending, which makes the first solution and the node count canonical.
    """
    k = problem.block_size
    cap = problem.element_cap
    rem = [0] * (cap + 1)
    for diff, count in problem.remaining:
        rem[diff] = count
    start = time.monotonic()
    deadline = None if budget.wall_ms is None else start + budget.wall_ms / 1000.0
    nodes = 0
    found: list[tuple[int, ...]] = []
    solution: list[tuple[Block, ...]] = []

    def tick() -> None:
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit:
            raise _BudgetCut
        if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
            raise _BudgetCut

    def place_next_block(prev_top: int, prev_inner: tuple[int, ...]) -> bool:
        if len(found) == problem.num_blocks:
            solution.append(tuple(found))
            return True
        top = max((d for d in range(cap, 0, -1) if rem[d] > 0), default=0)
        # Blocks realizing the same top difference are placed consecutively
        # (the top stays maximal until its count is spent), so forcing them
        # into nondecreasing lexicographic order loses no solutions.
        bound = prev_inner if top == prev_top else None
        rem[top] -= 1
        hit = extend_block(top, 1, [], bound)
        rem[top] += 1
        return hit

    def extend_block(top: int, lowest: int, inner: list[int], bound: tuple[int, ...] | None) -> bool:
        if len(inner) == k - 2:
            found.append((0, *inner, top))
            hit = place_next_block(top, tuple(inner))
            found.pop()
            return hit
        pos = len(inner)
        floor = max(lowest, bound[pos]) if bound is not None else lowest
        # Leave room for the remaining inner elements below the top.
        for e in range(floor, top - (k - 3 - pos)):
            tick()
            needed = [e, top - e] + [e - c for c in inner]
            taken = []
            ok = True
            for diff in needed:
                if rem[diff] <= 0:
                    ok = False
                    break
                rem[diff] -= 1
                taken.append(diff)
            if ok:
                still_tight = bound if (bound is not None and e == bound[pos]) else None
                if extend_block(top, e + 1, inner + [e], still_tight):
                    for diff in taken:
                        rem[diff] += 1
                    return True
            for diff in taken:
                rem[diff] += 1
        return False

    try:
        hit = place_next_block(-1, ())
    except _BudgetCut:
        elapsed = int((time.monotonic() - start) * 1000)
        return SearchResult(BUDGET_EXCEEDED, None, nodes, elapsed)
    elapsed = int((time.monotonic() - start) * 1000)
    if hit:
        blocks = problem.fixed_blocks + solution[0]
        return SearchResult(SOLUTION, blocks, nodes, elapsed)
    return SearchResult(EXHAUSTED, None, nodes, elapsed)


def search_small_pdf(v: int, k: int, lam: int, budget: SearchBudget = DEFAULT_BUDGET) -> SearchResult:
    """Find a (v,k,lam) perfect difference family, or prove there is none.

    Any returned family is re-checked by the independent verifier before
    being handed back.
    """
    problem = CoverProblem.pdf_problem(v, k, lam)
    result = complete_cover(problem, budget)
    if result.status != SOLUTION:
        return result
    cert = verify_pdf(result.blocks, v, k, lam)
    if not cert.passed:
        raise RuntimeError(f"search produced a non-verifying ({v},{k},{lam}) family")
    family = Family("PDF", {"v": v, "k": k, "lambda": lam}, result.blocks, provenance="searched")
    return SearchResult(SOLUTION, result.blocks, result.nodes, result.elapsed_ms, family)


def search_small_cdf(v: int, k: int, budget: SearchBudget = DEFAULT_BUDGET) -> SearchResult:
    """Find a (v,k,1) cyclic difference family by exact cover over the
    (v-1)/2 circular difference classes.

    Blocks are translation-normalized to contain 0.  Only lambda = 1 is
    supported; the class multiset view breaks down for repeated classes.
    """
    if v % 2 == 0:
        raise InadmissibleError("circular class search implemented for odd v only")
    if (v - 1) % (k * (k - 1)) != 0:
        raise InadmissibleError(f"(v-1) must be divisible by k(k-1); got v={v}, k={k}")
    half = (v - 1) // 2
    num_blocks = (v - 1) // (k * (k - 1))
    per_block = k * (k - 1) // 2

    def circ(d: int) -> int:
        d %= v
        return min(d, v - d)

    # All 0-anchored blocks with pairwise-distinct classes, as class bitmasks.
    candidates: list[tuple[int, tuple[int, ...]]] = []
    def build(block: list[int], mask: int) -> None:
        if len(block) == k:
            candidates.append((mask, tuple(block)))
            return
        for e in range(block[-1] + 1, v):
            new = 0
            ok = True
            for b in block:
                bit = 1 << circ(e - b)
                if (mask | new) & bit:
                    ok = False
                    break
                new |= bit
            if ok:
                build(block + [e], mask | new)

    build([0], 0)
    full = ((1 << (half + 1)) - 1) & ~1  # classes 1..half
    by_class: dict[int, list[int]] = {d: [] for d in range(1, half + 1)}
    for idx, (mask, _) in enumerate(candidates):
        for d in range(1, half + 1):
            if mask & (1 << d):
                by_class[d].append(idx)

    start = time.monotonic()
    deadline = None if budget.wall_ms is None else start + budget.wall_ms / 1000.0
    nodes = 0
    chosen: list[int] = []
    solution: list[tuple] = []

    def cover(mask: int) -> bool:
        nonlocal nodes
        if mask == full:
            solution.append(tuple(chosen))
            return True
        if len(chosen) == num_blocks:
            return False
        d = next(d for d in range(1, half + 1) if not mask & (1 << d))
        for idx in by_class[d]:
            nodes += 1
            if nodes > budget.node_limit:
                raise _BudgetCut
            if deadline is not None and nodes % 1024 == 0 and time.monotonic() > deadline:
                raise _BudgetCut
            cand_mask, _ = candidates[idx]
            if cand_mask & mask:
                continue
            chosen.append(idx)
            if cover(mask | cand_mask):
                return True
            chosen.pop()
        return False

    try:
        hit = cover(0)
    except _BudgetCut:
        return SearchResult(BUDGET_EXCEEDED, None, nodes, int((time.monotonic() - start) * 1000))
    elapsed = int((time.monotonic() - start) * 1000)
    if not hit:
        return SearchResult(EXHAUSTED, None, nodes, elapsed)
    blocks = tuple(candidates[idx][1] for idx in solution[0])
    cert = verify_cdf(blocks, v, k, 1)
    if not cert.passed:
        raise RuntimeError(f"search produced a non-verifying ({v},{k},1) cyclic family")
    family = Family("CDF", {"v": v, "k": k, "lambda": 1}, blocks, provenance="searched")
    return SearchResult(SOLUTION, blocks, nodes, elapsed, family)


def search_asp3(n: int, budget: SearchBudget = DEFAULT_BUDGET) -> SearchResult:
    """Search for an additive sequence of three permutations of [-r, r].

    The first permutation is fixed to the sorted basis; this loses no
    solutions because permuting all columns of an additive sequence by one
    common permutation preserves every consecutive run-sum.  Columns are
    filled left to right with used-value pruning on all six run-sums.
    """
    if n % 2 == 0:
        raise InadmissibleError(f"interval-basis sequences need odd n, got {n}")
    r = (n - 1) // 2
    x1 = tuple(range(-r, r + 1))
    x2 = [0] * n
    x3 = [0] * n
    size = 2 * r + 1
    used2 = [False] * size
    used3 = [False] * size
    used12 = [False] * size
    used23 = [False] * size
    used123 = [False] * size

    start = time.monotonic()
    deadline = None if budget.wall_ms is None else start + budget.wall_ms / 1000.0
    nodes = 0

    def fill(j: int) -> bool:
        nonlocal nodes
        if j == n:
            return True
        v1 = x1[j]
        for v2 in range(-r, r + 1):
            if used2[v2 + r]:
                continue
            s12 = v1 + v2
            if not -r <= s12 <= r or used12[s12 + r]:
                continue
            for v3 in range(-r, r + 1):
                nodes += 1
                if nodes > budget.node_limit:
                    raise _BudgetCut
                if deadline is not None and nodes % 4096 == 0 and time.monotonic() > deadline:
                    raise _BudgetCut
                if used3[v3 + r]:
                    continue
                s23 = v2 + v3
                if not -r <= s23 <= r or used23[s23 + r]:
                    continue
                s123 = s12 + v3
                if not -r <= s123 <= r or used123[s123 + r]:
                    continue
                x2[j], x3[j] = v2, v3
                used2[v2 + r] = used3[v3 + r] = True
                used12[s12 + r] = used23[s23 + r] = used123[s123 + r] = True
                if fill(j + 1):
                    return True
                used2[v2 + r] = used3[v3 + r] = False
                used12[s12 + r] = used23[s23 + r] = used123[s123 + r] = False
        return False

    try:
        hit = fill(0)
    except _BudgetCut:
        return SearchResult(BUDGET_EXCEEDED, None, nodes, int((time.monotonic() - start) * 1000))
    elapsed = int((time.monotonic() - start) * 1000)
    if not hit:
        return SearchResult(EXHAUSTED, None, nodes, elapsed)
    rows = (x1, tuple(x2), tuple(x3))
    cert = verify_asp(rows)
    if not cert.passed:
        raise RuntimeError(f"search produced a non-verifying additive sequence for n={n}")
    family = Family("ASP", {"m": 3, "n": n}, rows, provenance="searched")
    return SearchResult(SOLUTION, rows, nodes, elapsed, family)


def nonexistence_sweep(
    instances: Sequence[tuple[int, int, int]] = ((25, 4, 1), (37, 4, 1), (13, 4, 1)),
    budget: SearchBudget = DEFAULT_BUDGET,
) -> dict:
    """Exhaustive existence certification for small perfect-family instances.

    A budget cut is reported as "inconclusive", never as nonexistence.  The
    default list covers the two definite k=4 exceptions plus a sanity
    inversion that must come back "exists".
    """
    rows = []
    for v, k, lam in instances:
        result = search_small_pdf(v, k, lam, budget)
        status = {SOLUTION: "exists", EXHAUSTED: "nonexistent", BUDGET_EXCEEDED: "inconclusive"}[result.status]
        row = {
            "v": v,
            "k": k,
            "lambda": lam,
            "status": status,
            "nodes": result.nodes,
            "elapsed_ms": result.elapsed_ms,
        }
        if result.blocks is not None:
            row["blocks"] = [list(b) for b in result.blocks]
        rows.append(row)
    return {
        "instances": rows,
        "canonical_form": CANONICAL_FORM,
        "conclusive": all(row["status"] != "inconclusive" for row in rows),
    }
