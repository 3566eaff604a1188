"""Independent brute-force verifiers and certificate generation.

Every checker recomputes coverage or correlation from scratch by exhaustive
enumeration; none of them shares code with the generators beyond the
difference primitives in :mod:`diffkit.core`.  A failing certificate always
carries at least one concrete witness, capped at WITNESS_CAP entries.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    Family,
    InadmissibleError,
    InvalidFamilyError,
    as_block,
    diffs_mod,
    diffs_positive,
)

WITNESS_CAP = 32

# witness entries are (where, expected, actual); "where" is an int difference,
# a residue, or a short string locating the violation.
Witness = tuple


@dataclass
class Certificate:
    """Machine-checkable verification report for one family."""

    kind: str
    params: dict[str, int]
    passed: bool
    coverage: dict = field(default_factory=dict)
    witnesses: list[Witness] = field(default_factory=list)
    truncated: int = 0
    extra: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind,
            "params": dict(self.params),
            "pass": self.passed,
            "coverage": {str(key): value for key, value in sorted(self.coverage.items(), key=lambda kv: str(kv[0]))},
            "witnesses": [list(w) for w in self.witnesses],
            "truncated_witnesses": self.truncated,
            "extra": dict(self.extra),
        }


def _certify(kind: str, params: dict, coverage: dict, witnesses: list[Witness], extra: dict | None = None) -> Certificate:
    truncated = max(0, len(witnesses) - WITNESS_CAP)
    return Certificate(
        kind=kind,
        params=dict(params),
        passed=not witnesses,
        coverage=coverage,
        witnesses=witnesses[:WITNESS_CAP],
        truncated=truncated,
        extra=extra or {},
    )


def _interval_witnesses(counts: Counter, lo: int, hi: int, lam: int) -> list[Witness]:
    """All coverage violations against [lo, hi] covered exactly lam times."""
    witnesses: list[Witness] = []
    for value in range(lo, hi + 1):
        actual = counts.get(value, 0)
        if actual != lam:
            witnesses.append((value, lam, actual))
    for value in sorted(counts):
        if counts[value] > 0 and not lo <= value <= hi:
            witnesses.append((value, 0, counts[value]))
    return witnesses


def _check_blocks(blocks: Sequence, k: int) -> list[tuple[int, ...]]:
    normalized = [as_block(b) for b in blocks]
    for b in normalized:
        if len(b) != k:
            raise InvalidFamilyError(f"expected blocks of size {k}, got {b!r}")
    return normalized


def _modular_coverage(blocks: Sequence, v: int, k: int) -> Counter:
    counts: Counter = Counter()
    for b in _check_blocks(blocks, k):
        counts += diffs_mod(b, v)
    return counts


def verify_cdp(blocks: Sequence, v: int, k: int, lam: int) -> Certificate:
    """Cyclic difference packing: every nonzero residue at most lam times."""
    counts = _modular_coverage(blocks, v, k)
    witnesses = [(r, lam, counts[r]) for r in range(1, v) if counts.get(r, 0) > lam]
    return _certify("CDP", {"v": v, "k": k, "lambda": lam}, dict(counts), witnesses)


def verify_cdf(blocks: Sequence, v: int, k: int, lam: int) -> Certificate:
    """Cyclic difference family: every nonzero residue exactly lam times."""
    counts = _modular_coverage(blocks, v, k)
    witnesses = [(r, lam, counts.get(r, 0)) for r in range(1, v) if counts.get(r, 0) != lam]
    return _certify("CDF", {"v": v, "k": k, "lambda": lam}, dict(counts), witnesses)


def positive_diffs_reduced(block: Iterable[int], v: int) -> Counter:
    """Positive differences of a block after reducing its elements into [0, v).

    A difference x - y counts as positive when x mod v > y mod v, and is
    recorded as (x - y) mod v.
    """
    reduced = sorted(x % v for x in block)
    if len(set(reduced)) != len(reduced):
        raise InvalidFamilyError(f"block {tuple(block)!r} degenerate mod {v}")
    return diffs_positive(reduced)


def verify_pdf(blocks: Sequence, v: int, k: int, lam: int) -> Certificate:
    """Perfect difference family over odd v: positive differences cover
    [1, (v-1)/2] exactly lam times."""
    if v % 2 == 0:
        raise InadmissibleError(f"perfect families need odd v, got {v}")
    counts: Counter = Counter()
    for b in _check_blocks(blocks, k):
        counts += positive_diffs_reduced(b, v)
    witnesses = _interval_witnesses(counts, 1, (v - 1) // 2, lam)
    return _certify("PDF", {"v": v, "k": k, "lambda": lam}, dict(counts), witnesses)


def verify_psds(blocks: Sequence, c: int) -> Certificate:
    """Perfect system of difference sets with threshold c: positive
    differences tile [c, c - 1 + sum of C(k_i, 2)] exactly once."""
    normalized = [as_block(b) for b in blocks]
    total = sum(len(b) * (len(b) - 1) // 2 for b in normalized)
    counts: Counter = Counter()
    for b in normalized:
        counts += diffs_positive(b)
    witnesses = _interval_witnesses(counts, c, c - 1 + total, 1)
    sizes = sorted({len(b) for b in normalized})
    k = sizes[0] if len(sizes) == 1 else 0
    return _certify("PSDS", {"m": len(normalized), "k": k, "c": c}, dict(counts), witnesses)


def verify_dts(rows: Sequence, k: int | None = None) -> Certificate:
    """Difference triangle set: all within-row differences globally distinct.

    Rows must be normalized (0 = first element, strictly ascending, length
    k+1).  The certificate reports the scope and whether it meets the
    minimum m*C(k+1, 2).
    """
    rows = [tuple(row) for row in rows]
    if not rows:
        raise InvalidFamilyError("difference triangle set needs at least one row")
    if k is None:
        k = len(rows[0]) - 1
    for row in rows:
        if len(row) != k + 1:
            raise InvalidFamilyError(f"expected rows of length {k + 1}, got {row!r}")
        if row[0] != 0 or any(a >= b for a, b in zip(row, row[1:])):
            raise InvalidFamilyError(f"row {row!r} not normalized ascending from 0")
    m = len(rows)
    counts: Counter = Counter()
    for row in rows:
        counts += diffs_positive(row)
    witnesses = [(d, 1, counts[d]) for d in sorted(counts) if counts[d] > 1]
    scope = max(row[-1] for row in rows)
    min_scope = m * (k + 1) * k // 2
    extra = {"scope": scope, "min_scope": min_scope, "minimal": scope == min_scope}
    return _certify("DTS", {"m": m, "k": k}, dict(counts), witnesses, extra)


def verify_ooc(codewords: Sequence, n: int, k: int, lam: int = 1) -> Certificate:
    """Optical orthogonal code given by codeword support sets.

    Exhaustive correlation check: auto-correlation at every nonzero cyclic
    shift and cross-correlation at every shift stay <= lam.  The certificate
    also reports whether the size meets the Johnson-style bound
    floor((n-1)/(k(k-1))).
    """
    supports = [frozenset(word) for word in codewords]
    for word in supports:
        if len(word) != k:
            raise InvalidFamilyError(f"codeword {sorted(word)!r} does not have weight {k}")
        if any(not 0 <= i < n for i in word):
            raise InvalidFamilyError(f"codeword {sorted(word)!r} not inside [0, {n - 1}]")
    witnesses: list[Witness] = []
    table: dict[str, int] = {}
    for idx, word in enumerate(supports):
        for r in range(1, n):
            overlap = len(word & {(i + r) % n for i in word})
            key = f"auto:{r}"
            table[key] = max(table.get(key, 0), overlap)
            if overlap > lam:
                witnesses.append((f"auto word {idx} shift {r}", lam, overlap))
    for i in range(len(supports)):
        for j in range(i + 1, len(supports)):
            for r in range(n):
                overlap = len(supports[i] & {(x + r) % n for x in supports[j]})
                key = f"cross:{r}"
                table[key] = max(table.get(key, 0), overlap)
                if overlap > lam:
                    witnesses.append((f"cross words {i},{j} shift {r}", lam, overlap))
    j_bound = (n - 1) // (k * (k - 1))
    extra = {"size": len(supports), "j_bound": j_bound, "j_optimal": len(supports) == j_bound}
    return _certify("OOC", {"n": n, "k": k, "lambda": lam}, table, witnesses, extra)


def verify_asp(rows: Sequence) -> Certificate:
    """Additive sequence of permutations: every consecutive run-sum of the
    rows is again a permutation of the shared basis."""
    rows = [tuple(row) for row in rows]
    if not rows:
        raise InvalidFamilyError("additive sequence needs at least one permutation")
    n = len(rows[0])
    if any(len(row) != n for row in rows):
        raise InvalidFamilyError("permutations of unequal length")
    basis = sorted(rows[0])
    if len(set(basis)) != n:
        raise InvalidFamilyError(f"first row {rows[0]!r} has repeats; basis must be a set")
    m = len(rows)
    witnesses: list[Witness] = []
    for j1 in range(m):
        total = [0] * n
        for j2 in range(j1, m):
            total = [a + b for a, b in zip(total, rows[j2])]
            if sorted(total) != basis:
                witnesses.append((f"sum rows {j1 + 1}..{j2 + 1}", "permutation of basis", tuple(total)))
    return _certify("ASP", {"m": m, "n": n}, {}, witnesses)


def verify_pdm(rows: Sequence, homogeneous: bool = False) -> Certificate:
    """Perfect difference matrix: for every row pair the columnwise
    differences (no modular reduction) are exactly [-(n-1)/2, (n-1)/2]."""
    rows = [tuple(row) for row in rows]
    if not rows:
        raise InvalidFamilyError("difference matrix needs at least one row")
    n = len(rows[0])
    if n % 2 == 0:
        raise InadmissibleError(f"perfect difference matrices need odd n, got {n}")
    if any(len(row) != n for row in rows):
        raise InvalidFamilyError("rows of unequal length")
    for row in rows:
        if any(not 0 <= x < n for x in row):
            raise InvalidFamilyError(f"row entries outside [0, {n - 1}]: {row!r}")
    m = len(rows)
    r = (n - 1) // 2
    target = Counter(range(-r, r + 1))
    witnesses: list[Witness] = []
    for i1 in range(m):
        for i2 in range(i1 + 1, m):
            got = Counter(a - b for a, b in zip(rows[i1], rows[i2]))
            if got != target:
                for value in sorted(set(got) | set(target)):
                    if got.get(value, 0) != target.get(value, 0):
                        witnesses.append((f"rows {i1 + 1},{i2 + 1} diff {value}", target.get(value, 0), got.get(value, 0)))
    if homogeneous:
        full = Counter(range(n))
        for i, row in enumerate(rows):
            if Counter(row) != full:
                witnesses.append((f"row {i + 1}", "permutation of 0..n-1", row))
    params = {"m": m, "n": n, "homogeneous": int(homogeneous)}
    return _certify("PDM", params, {}, witnesses)


def verify_gdp(blocks: Sequence, u1: int, u2: int, w: int) -> Certificate:
    """Geometric difference packing over the centered u1 x u2 grid: the
    difference lists of the blocks hit each nonzero grid vector at most once."""
    if u1 % 2 == 0 or u2 % 2 == 0:
        raise InadmissibleError("centered grids need odd side lengths")
    r1, r2 = (u1 - 1) // 2, (u2 - 1) // 2
    parsed = []
    for b in blocks:
        points = tuple(sorted((int(x), int(y)) for x, y in b))
        if len(set(points)) != w or len(points) != w:
            raise InvalidFamilyError(f"block {points!r} is not a {w}-set")
        for x, y in points:
            if not (-r1 <= x <= r1 and -r2 <= y <= r2):
                raise InvalidFamilyError(f"point {(x, y)} outside centered {u1}x{u2} grid")
        parsed.append(points)
    counts: Counter = Counter()
    for points in parsed:
        for p in points:
            for q in points:
                if p != q:
                    counts[(p[0] - q[0], p[1] - q[1])] += 1
    witnesses: list[Witness] = []
    for vec in sorted(counts):
        if vec == (0, 0):
            witnesses.append(("0,0", 0, counts[vec]))
        elif counts[vec] > 1 and -r1 <= vec[0] <= r1 and -r2 <= vec[1] <= r2:
            witnesses.append((f"{vec[0]},{vec[1]}", 1, counts[vec]))
    coverage = {f"{vec[0]},{vec[1]}": cnt for vec, cnt in counts.items()}
    return _certify("GDP", {"u1": u1, "u2": u2, "w": w}, coverage, witnesses)


def verify_goc(codewords: Sequence, n1: int, n2: int, w: int) -> Certificate:
    """Geometric orthogonal code: aperiodic auto- and cross-correlations of
    the codeword point sets stay <= 1 under every integer shift."""
    parsed = []
    for b in codewords:
        points = frozenset((int(x), int(y)) for x, y in b)
        if len(points) != w:
            raise InvalidFamilyError(f"codeword {sorted(points)!r} is not a {w}-set")
        for x, y in points:
            if not (0 <= x < n1 and 0 <= y < n2):
                raise InvalidFamilyError(f"point {(x, y)} outside [0,{n1 - 1}]x[0,{n2 - 1}]")
        parsed.append(points)
    witnesses: list[Witness] = []
    table: dict[str, int] = {}
    shifts = [
        (s, t)
        for s in range(-(n1 - 1), n1)
        for t in range(-(n2 - 1), n2)
    ]
    for idx, points in enumerate(parsed):
        for s, t in shifts:
            if (s, t) == (0, 0):
                continue
            overlap = len(points & {(x + s, y + t) for x, y in points})
            key = f"auto:{s},{t}"
            table[key] = max(table.get(key, 0), overlap)
            if overlap > 1:
                witnesses.append((f"auto word {idx} shift ({s},{t})", 1, overlap))
    for i in range(len(parsed)):
        for j in range(i + 1, len(parsed)):
            for s, t in shifts:
                overlap = len(parsed[i] & {(x + s, y + t) for x, y in parsed[j]})
                key = f"cross:{s},{t}"
                table[key] = max(table.get(key, 0), overlap)
                if overlap > 1:
                    witnesses.append((f"cross words {i},{j} shift ({s},{t})", 1, overlap))
    extra = {"size": len(parsed)}
    return _certify("GOC", {"n1": n1, "n2": n2, "w": w}, table, witnesses, extra)


def verify_graceful_windmill(common: int, cliques: Sequence) -> Certificate:
    """Graceful labeling of m K4 copies sharing one vertex: 3m+1 injective
    vertex labels in [0, 6m] whose edge labels |f(u)-f(v)| hit [1, 6m]
    bijectively."""
    cliques = [tuple(c) for c in cliques]
    for c in cliques:
        if len(c) != 3:
            raise InvalidFamilyError(f"each K4 copy carries 3 non-shared vertices, got {c!r}")
    m = len(cliques)
    if m == 0:
        raise InvalidFamilyError("windmill needs at least one K4 copy")
    q = 6 * m
    labels = [common] + [x for c in cliques for x in c]
    witnesses: list[Witness] = []
    seen: Counter = Counter(labels)
    for label in sorted(seen):
        if seen[label] > 1:
            witnesses.append((f"vertex label {label}", 1, seen[label]))
        if not 0 <= label <= q:
            witnesses.append((f"vertex label {label}", f"in [0, {q}]", label))
    edge_counts: Counter = Counter()
    for c in cliques:
        vertices = (common,) + c
        for i in range(4):
            for j in range(i + 1, 4):
                edge_counts[abs(vertices[i] - vertices[j])] += 1
    witnesses.extend(_interval_witnesses(edge_counts, 1, q, 1))
    return _certify("LABELING", {"m": m}, dict(edge_counts), witnesses)


def verify_family(family: Family) -> Certificate:
    """Dispatch a Family to the verifier matching its kind."""
    p = family.params
    if family.kind == "CDP":
        return verify_cdp(family.blocks, p["v"], p["k"], p["lambda"])
    if family.kind == "CDF":
        return verify_cdf(family.blocks, p["v"], p["k"], p["lambda"])
    if family.kind == "PDF":
        return verify_pdf(family.blocks, p["v"], p["k"], p["lambda"])
    if family.kind == "PSDS":
        return verify_psds(family.blocks, p["c"])
    if family.kind == "DTS":
        return verify_dts(family.blocks, p["k"])
    if family.kind == "OOC":
        return verify_ooc(family.blocks, p["n"], p["k"], p["lambda"])
    if family.kind == "ASP":
        return verify_asp(family.blocks)
    if family.kind == "PDM":
        return verify_pdm(family.blocks, homogeneous=bool(p["homogeneous"]))
    if family.kind == "GDP":
        return verify_gdp(family.blocks, p["u1"], p["u2"], p["w"])
    if family.kind == "GOC":
        return verify_goc(family.blocks, p["n1"], p["n2"], p["w"])
    raise InvalidFamilyError(f"no verifier for kind {family.kind!r}")
