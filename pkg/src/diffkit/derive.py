"""Application objects built from perfect difference families: difference
triangle sets, optical orthogonal codes, additive permutation sequences,
perfect difference matrices, geometric difference packings / orthogonal
codes, and graceful windmill labelings.

Every derivation re-verifies its inputs and its output with the independent
checkers in :mod:`diffkit.verify`; nothing is trusted on construction alone.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    ConstructionGapError,
    Family,
    InadmissibleError,
    InvalidFamilyError,
)
from .verify import (
    verify_asp,
    verify_dts,
    verify_gdp,
    verify_goc,
    verify_graceful_windmill,
    verify_ooc,
    verify_pdf,
    verify_pdm,
)


@dataclass(frozen=True)
class Labeling:
    """Vertex labels of m K4 copies sharing one common vertex."""

    common: int
    cliques: tuple[tuple[int, int, int], ...]

    @property
    def m(self) -> int:
        return len(self.cliques)


def _checked_pdf(family: Family, lam: int | None = None) -> Family:
    if family.kind != "PDF":
        raise InvalidFamilyError(f"expected a perfect difference family, got {family.kind}")
    p = family.params
    if lam is not None and p["lambda"] != lam:
        raise InvalidFamilyError(f"expected lambda = {lam}, got lambda = {p['lambda']}")
    if not verify_pdf(family.blocks, p["v"], p["k"], p["lambda"]).passed:
        raise InvalidFamilyError("input family fails perfect verification")
    return family


def _zero_anchored(blocks) -> tuple[tuple[int, ...], ...]:
    # Positive differences are translation invariant, so sliding each block
    # down to start at 0 preserves every perfect-family property.
    return tuple(tuple(e - b[0] for e in b) for b in blocks)


def dts_from_pdf(pdf: Family) -> Family:
    """Difference triangle set from a lambda = 1 perfect family: the blocks
    are the rows, and the scope meets the minimum m*C(k+1,2)."""
    pdf = _checked_pdf(pdf, lam=1)
    rows = _zero_anchored(pdf.blocks)
    k = pdf.params["k"] - 1
    cert = verify_dts(rows, k)
    if not cert.passed or not cert.extra["minimal"]:
        raise ConstructionGapError("derived triangle set failed verification")
    return Family("DTS", {"m": len(rows), "k": k}, rows, "derived")


def ooc_from_pdf(pdf: Family, n: int) -> Family:
    """Optical orthogonal code of length n from a lambda = 1 perfect family
    over v, valid for v <= n < v + k(k-1); the size meets the Johnson-style
    bound floor((n-1)/(k(k-1)))."""
    pdf = _checked_pdf(pdf, lam=1)
    v, k = pdf.params["v"], pdf.params["k"]
    if not v <= n < v + k * (k - 1):
        raise InadmissibleError(
            f"code length must satisfy {v} <= n < {v + k * (k - 1)}, got n = {n}"
        )
    supports = _zero_anchored(pdf.blocks)
    cert = verify_ooc(supports, n, k, 1)
    if not cert.passed or not cert.extra["j_optimal"]:
        raise ConstructionGapError("derived code failed correlation or optimality check")
    return Family("OOC", {"n": n, "k": k, "lambda": 1}, supports, "derived")


def asp2(n: int) -> Family:
    """The classical additive pair over the basis [-r, r], r = (n-1)/2:
    the sorted basis followed by its rotation starting at 0."""
    if n % 2 == 0 or n < 1:
        raise InadmissibleError(f"interval-basis sequences need odd n >= 1, got {n}")
    r = (n - 1) // 2
    x1 = tuple(range(-r, r + 1))
    x2 = tuple(range(0, r + 1)) + tuple(range(-r, 0))
    family = Family("ASP", {"m": 2, "n": n}, (x1, x2), "derived")
    if not verify_asp(family.blocks).passed:
        raise ConstructionGapError("additive pair failed verification")
    return family


def pdm_from_asp(asp: Family) -> Family:
    """Homogeneous perfect difference matrix equivalent to an additive
    sequence over an interval basis.

    Candidate matrices are built from the running prefix sums of the
    permutations (and their reversal), each shifted by r = (n-1)/2 into
    [0, n-1]; every prefix sum is itself a run-sum, hence a permutation of
    [-r, r], so the shifted rows are homogeneous.  The verifier, not the
    construction, is the contract: the first candidate passing the full
    check is returned.
    """
    if asp.kind != "ASP":
        raise InvalidFamilyError(f"expected an additive sequence, got {asp.kind}")
    if not verify_asp(asp.blocks).passed:
        raise InvalidFamilyError("input sequence fails additive verification")
    rows = asp.blocks
    m, n = len(rows), len(rows[0])
    r = (n - 1) // 2
    if sorted(rows[0]) != list(range(-r, r + 1)):
        raise InadmissibleError("matrix equivalence needs the interval basis [-r, r]")

    def prefix_rows(seq):
        out, total = [], [0] * n
        for row in seq:
            total = [a + b for a, b in zip(total, row)]
            out.append(tuple(x + r for x in total))
        return tuple(out)

    for candidate in (prefix_rows(rows), prefix_rows(rows[::-1])):
        if verify_pdm(candidate, homogeneous=True).passed:
            return Family("PDM", {"m": m, "n": n, "homogeneous": 1}, candidate, "derived")
    raise ConstructionGapError("no prefix-sum candidate verifies as a difference matrix")


def pdm_with_baseline_row(pdm: Family) -> Family:
    """Append the constant (n-1)/2 row (the zero row in centered
    coordinates): its differences against any homogeneous row sweep
    [-(n-1)/2, (n-1)/2] exactly once."""
    if pdm.kind != "PDM":
        raise InvalidFamilyError(f"expected a difference matrix, got {pdm.kind}")
    n = pdm.params["n"]
    rows = pdm.blocks + (tuple([(n - 1) // 2] * n),)
    if not verify_pdm(rows).passed:
        raise ConstructionGapError("baseline-extended matrix failed verification")
    return Family("PDM", {"m": len(rows), "n": n, "homogeneous": 0}, rows, "derived")


def gdp_from_pdfs_pdm(pdf1: Family, pdf2: Family, pdm: Family) -> Family:
    """Geometric difference packing on the centered u1 x u2 grid from two
    lambda = 1 perfect families and a w-row difference matrix over u2.

    Each block of the first family spreads into one grid block per matrix
    column (pairing block elements with rows); each block of the second
    family becomes one block on the vertical axis.  The block count is
    (u1*u2 - 1)/(w(w-1)).
    """
    pdf1 = _checked_pdf(pdf1, lam=1)
    pdf2 = _checked_pdf(pdf2, lam=1)
    w = pdf1.params["k"]
    u1, u2 = pdf1.params["v"], pdf2.params["v"]
    if pdf2.params["k"] != w:
        raise InvalidFamilyError("both families must share the block size w")
    if pdm.kind != "PDM" or pdm.params["n"] != u2 or pdm.params["m"] != w:
        raise InvalidFamilyError(f"need a {w}-row difference matrix over n = {u2}")
    if not verify_pdm(pdm.blocks).passed:
        raise InvalidFamilyError("input matrix fails difference verification")
    r2 = (u2 - 1) // 2
    blocks = []
    for block in _zero_anchored(pdf1.blocks):
        for j in range(u2):
            blocks.append(tuple((a, pdm.blocks[i][j] - r2) for i, a in enumerate(block)))
    for block in _zero_anchored(pdf2.blocks):
        blocks.append(tuple((0, b) for b in block))
    expected = (u1 * u2 - 1) // (w * (w - 1))
    if len(blocks) != expected:
        raise ConstructionGapError(f"block count {len(blocks)} != {expected}")
    if not verify_gdp(blocks, u1, u2, w).passed:
        raise ConstructionGapError("derived packing failed grid verification")
    return Family("GDP", {"u1": u1, "u2": u2, "w": w}, blocks, "derived")


def goc_from_gdp(gdp: Family) -> Family:
    """Geometric orthogonal code on the (u1+1)/2 x (u2+1)/2 grid equivalent
    to a centered-grid packing: each block is translated so its componentwise
    minimum sits at the origin (correlation is translation invariant per
    codeword)."""
    if gdp.kind != "GDP":
        raise InvalidFamilyError(f"expected a geometric packing, got {gdp.kind}")
    u1, u2, w = gdp.params["u1"], gdp.params["u2"], gdp.params["w"]
    if u1 % 2 == 0 or u2 % 2 == 0:
        raise InadmissibleError("grid equivalence needs odd side lengths")
    if not verify_gdp(gdp.blocks, u1, u2, w).passed:
        raise InvalidFamilyError("input packing fails grid verification")
    n1, n2 = (u1 + 1) // 2, (u2 + 1) // 2
    codewords = []
    for block in gdp.blocks:
        min_x = min(x for x, _ in block)
        min_y = min(y for _, y in block)
        word = tuple(sorted((x - min_x, y - min_y) for x, y in block))
        if any(x >= n1 or y >= n2 for x, y in word):
            raise ConstructionGapError(
                f"block extent exceeds the {n1}x{n2} grid: {block!r}"
            )
        codewords.append(word)
    if not verify_goc(codewords, n1, n2, w).passed:
        raise ConstructionGapError("translated codewords failed correlation check")
    return Family("GOC", {"n1": n1, "n2": n2, "w": w}, codewords, "derived")


def graceful_from_pdf(pdf: Family) -> Labeling:
    """Graceful labeling of the m-fold K4 windmill from a (12m+1,4,1)
    perfect family: the shared vertex gets 0 and each block {0,a,b,c}
    labels one K4 copy."""
    pdf = _checked_pdf(pdf, lam=1)
    if pdf.params["k"] != 4:
        raise InvalidFamilyError("windmill labelings need block size 4")
    cliques = tuple(b[1:] for b in _zero_anchored(pdf.blocks))
    labeling = Labeling(0, cliques)
    if not verify_graceful_windmill(labeling.common, labeling.cliques).passed:
        raise ConstructionGapError("derived labeling failed graceful verification")
    return labeling
