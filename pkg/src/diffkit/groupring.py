"""Exact arithmetic in the rational group ring of Z_v and the layered
difference calculus built on it.

A layered difference family (LDF) is a collection of ordered k-multi-subsets
of Z_v whose fractional difference sums add up to a constant over all of Z_v;
the perfect variant (PLDF) sums to a constant over the lower half 0..v/2-1.
Coefficients 1/(s2-s1) are stored as integers pre-multiplied by
L = lcm(1, ..., k-1), so every intermediate value is an exact machine
integer and no rational type is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .core import InadmissibleError, InvalidFamilyError
from .verify import Certificate, _certify

OrderedBlock = tuple[int, ...]


def coefficient_scale(k: int) -> int:
    """lcm(1, ..., k-1): the denominator clearing factor for block size k."""
    if k < 2:
        raise InvalidFamilyError(f"ordered blocks need k >= 2, got {k}")
    return math.lcm(*range(1, k)) if k > 2 else 1


@dataclass(frozen=True)
class GroupRingElem:
    """Element of Q[Z_v] with coefficients stored as integers times 1/scale."""

    v: int
    scale: int
    coeff: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeff) != self.v:
            raise InvalidFamilyError("coefficient vector length must equal the modulus")

    def __add__(self, other: "GroupRingElem") -> "GroupRingElem":
        if self.v != other.v or self.scale != other.scale:
            raise InvalidFamilyError("cannot add elements over different rings or scales")
        return GroupRingElem(self.v, self.scale, tuple(a + b for a, b in zip(self.coeff, other.coeff)))

    @classmethod
    def zero(cls, v: int, scale: int) -> "GroupRingElem":
        return cls(v, scale, (0,) * v)

    def mass(self) -> int:
        """Total coefficient mass in scaled units (true mass times scale)."""
        return sum(self.coeff)


def delta_star(block: Sequence[int], v: int) -> GroupRingElem:
    """Layered difference sum of an ordered block.

    Each ordered position pair s1 < s2 contributes coefficient 1/(s2-s1) at
    the run of residues b_{s2}-b_{s1}+l and b_{s1}-b_{s2}-l-1 for
    0 <= l < s2-s1.  Total mass is k(k-1).
    """
    if v < 2:
        raise InvalidFamilyError(f"modulus must be >= 2, got {v}")
    entries = tuple(int(b) % v for b in block)
    k = len(entries)
    scale = coefficient_scale(k)
    coeff = [0] * v
    for s1 in range(k):
        for s2 in range(s1 + 1, k):
            gap = s2 - s1
            weight = scale // gap
            for ell in range(gap):
                coeff[(entries[s2] - entries[s1] + ell) % v] += weight
                coeff[(entries[s1] - entries[s2] - ell - 1) % v] += weight
    return GroupRingElem(v, scale, tuple(coeff))


def delta_star_plus(block: Sequence[int], v: int) -> GroupRingElem:
    """Perfect layered difference sum of an ordered block over even v.

    Entries are reduced into [0, v) before comparison; a pair with
    b_{s1} <= b_{s2} contributes the forward run b_{s2}-b_{s1}+l, otherwise
    the reverse run b_{s1}-b_{s2}-l-1, each with coefficient 1/(s2-s1).
    Total mass is k(k-1)/2.
    """
    if v < 2:
        raise InvalidFamilyError(f"modulus must be >= 2, got {v}")
    if v % 2 != 0:
        raise InadmissibleError(f"perfect layered families need even v, got {v}")
    entries = tuple(int(b) % v for b in block)
    k = len(entries)
    scale = coefficient_scale(k)
    coeff = [0] * v
    for s1 in range(k):
        for s2 in range(s1 + 1, k):
            gap = s2 - s1
            weight = scale // gap
            for ell in range(gap):
                if entries[s1] <= entries[s2]:
                    coeff[(entries[s2] - entries[s1] + ell) % v] += weight
                else:
                    coeff[(entries[s1] - entries[s2] - ell - 1) % v] += weight
    return GroupRingElem(v, scale, tuple(coeff))


def _sum_layered(blocks: Sequence[Sequence[int]], v: int, k: int, op) -> GroupRingElem:
    if not blocks:
        raise InvalidFamilyError("layered family needs at least one block")
    for b in blocks:
        if len(b) != k:
            raise InvalidFamilyError(f"expected ordered blocks of length {k}, got {tuple(b)!r}")
    total = GroupRingElem.zero(v, coefficient_scale(k))
    for b in blocks:
        total = total + op(b, v)
    return total


def _layered_certificate(kind: str, total: GroupRingElem, v: int, k: int, lam: int, half: bool) -> Certificate:
    scale = total.scale
    limit = v // 2 if half else v
    witnesses = []
    for residue in range(v):
        expected = lam * scale if residue < limit else 0
        if total.coeff[residue] != expected:
            witnesses.append((residue, expected, total.coeff[residue]))
    coverage = dict(enumerate(total.coeff))
    extra = {"scale": scale}
    return _certify(kind, {"v": v, "k": k, "lambda": lam}, coverage, witnesses, extra)


def verify_ldf(blocks: Sequence[Sequence[int]], v: int, k: int, lam: int) -> Certificate:
    """Check that the blocks form a layered difference family: the summed
    delta_star equals lam at every residue of Z_v.

    Coverage and witnesses are in scaled units (times extra["scale"]).
    """
    total = _sum_layered(blocks, v, k, delta_star)
    return _layered_certificate("LDF", total, v, k, lam, half=False)


def verify_pldf(blocks: Sequence[Sequence[int]], v: int, k: int, lam: int) -> Certificate:
    """Check for a perfect layered difference family: summed delta_star_plus
    equals lam on residues 0..v/2-1 and vanishes elsewhere."""
    if v % 2 != 0:
        raise InadmissibleError(f"perfect layered families need even v, got {v}")
    total = _sum_layered(blocks, v, k, delta_star_plus)
    return _layered_certificate("PLDF", total, v, k, lam, half=True)


@dataclass(frozen=True)
class LayeredInstance:
    name: str
    kind: str  # "LDF" or "PLDF"
    v: int
    k: int
    lam: int
    blocks: tuple[OrderedBlock, ...]


_BUILTIN_DATA = (
    LayeredInstance("(12,3,1)-LDF", "LDF", 12, 3, 1, ((0, 3, 0), (0, 5, 0))),
    LayeredInstance(
        "(72,4,1)-LDF", "LDF", 72, 4, 1,
        ((0, 43, 31, 8), (0, 23, 5, 8), (0, 41, 25, 8),
         (0, 35, 5, 0), (0, 47, 19, 0), (0, 21, 13, 0)),
    ),
    LayeredInstance(
        "(108,4,1)-PLDF", "PLDF", 108, 4, 1,
        ((0, 18, 42, 0), (0, 50, 30, 0), (0, 53, 45, 0),
         (0, 34, 25, 20), (0, 38, 48, 20), (0, 47, 32, 20),
         (0, 3, 42, 35), (0, 5, 45, 35), (0, 23, 51, 35)),
    ),
    LayeredInstance(
        "(36,4,2)-PLDF", "PLDF", 36, 4, 2,
        ((0, 0, 3, 15), (0, 0, 6, 15), (0, 11, 1, 15),
         (0, 10, 1, 11), (0, 14, 6, 11), (0, 17, 3, 11)),
    ),
    LayeredInstance(
        "(24,4,3)-PLDF", "PLDF", 24, 4, 3,
        ((0, 0, 8, 0), (0, 8, 10, 0), (0, 10, 4, 0),
         (0, 9, 10, 3), (0, 11, 0, 3), (0, 11, 6, 3)),
    ),
    LayeredInstance(
        "(12,4,6)-PLDF", "PLDF", 12, 4, 6,
        ((0, 2, 3, 0), (0, 5, 2, 0), (0, 5, 4, 0),
         (0, 0, 4, 3), (0, 5, 0, 3), (0, 5, 2, 3)),
    ),
)

_catalog: dict[str, LayeredInstance] | None = None


def builtin_layered() -> dict[str, LayeredInstance]:
    """Catalog of the embedded LDF/PLDF instances, self-checked on first use.

    The embedded tables are the trust root for the parametric generators, so
    a failed self-check aborts rather than returning corrupt data.
    """
    global _catalog
    if _catalog is None:
        catalog: dict[str, LayeredInstance] = {}
        for inst in _BUILTIN_DATA:
            checker = verify_ldf if inst.kind == "LDF" else verify_pldf
            cert = checker(inst.blocks, inst.v, inst.k, inst.lam)
            expected_blocks = inst.lam * inst.v // (inst.k * (inst.k - 1))
            if not cert.passed or len(inst.blocks) != expected_blocks:
                raise RuntimeError(
                    f"builtin layered instance {inst.name} failed its self-check; "
                    "embedded data is corrupt"
                )
            catalog[inst.name] = inst
        _catalog = catalog
    return _catalog


def layered_instance(name: str) -> LayeredInstance:
    """Look up one builtin instance by its display name, e.g. '(24,4,3)-PLDF'."""
    catalog = builtin_layered()
    if name not in catalog:
        raise LookupError(f"no builtin layered instance named {name!r}")
    return catalog[name]
