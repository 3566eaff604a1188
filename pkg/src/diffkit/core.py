"""Residue and integer difference algebra: blocks, difference multisets, stepped
intervals, and the container type for every family kind the kit handles.

Everything here is immutable after construction and purely functional, so all
operations are safe to call concurrently.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

Block = tuple[int, ...]

# A difference multiset is a map value -> nonnegative count.  Counter is the
# concrete representation everywhere in the kit.
DiffMultiset = Counter


class InvalidBlockError(ValueError):
    """Block violates its shape invariants (too short, repeats, negatives)."""


class InvalidIntervalError(ValueError):
    """Stepped interval with a > b or mismatched endpoints."""


class InvalidFamilyError(ValueError):
    """Family container or member blocks are malformed for the requested check."""


class InadmissibleError(ValueError):
    """Parameters violate a necessary counting or congruence condition."""


class NonexistentError(ValueError):
    """Parameters are admissible but the object is known not to exist."""


class ConstructionGapError(RuntimeError):
    """A construct-then-verify routine produced no candidate that verifies."""


def as_block(elements: Iterable[int]) -> Block:
    """Normalize ``elements`` into a canonical block: sorted, distinct, >= 0."""
    items = tuple(sorted(elements))
    if len(items) < 2:
        raise InvalidBlockError(f"block needs at least 2 elements, got {items!r}")
    if items[0] < 0:
        raise InvalidBlockError(f"block elements must be nonnegative: {items!r}")
    for prev, cur in zip(items, items[1:]):
        if prev == cur:
            raise InvalidBlockError(f"block elements must be distinct: {items!r}")
    return items


def diffs_positive(block: Iterable[int]) -> Counter:
    """All positive differences x - y over pairs x > y of a block.

    The result has exactly k(k-1)/2 entries counted with multiplicity.
    """
    items = as_block(block)
    counts: Counter = Counter()
    for i, y in enumerate(items):
        for x in items[i + 1:]:
            counts[x - y] += 1
    return counts


def diffs_mod(block: Iterable[int], v: int) -> Counter:
    """All k(k-1) ordered differences of a block, reduced into Z_v minus 0.

    Elements are reduced mod v first; two elements in the same residue class
    make the block degenerate.
    """
    if v < 2:
        raise InvalidFamilyError(f"modulus must be >= 2, got {v}")
    items = tuple(block)
    if len(items) < 2:
        raise InvalidBlockError(f"block needs at least 2 elements, got {items!r}")
    reduced = [x % v for x in items]
    if len(set(reduced)) != len(reduced):
        raise InvalidBlockError(f"block {items!r} has repeated residues mod {v}")
    counts: Counter = Counter()
    for i, x in enumerate(reduced):
        for y in reduced[i + 1:]:
            counts[(x - y) % v] += 1
            counts[(y - x) % v] += 1
    return counts


@dataclass(frozen=True)
class SteppedInterval:
    """The integers a, a+c, ..., b with a <= b and a = b (mod c)."""

    a: int
    b: int
    c: int = 1

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise InvalidIntervalError(f"step must be positive, got {self.c}")
        if self.a > self.b:
            raise InvalidIntervalError(f"empty interval: [{self.a}, {self.b}]")
        if (self.b - self.a) % self.c != 0:
            raise InvalidIntervalError(
                f"endpoints not congruent mod step: [{self.a}, {self.b}] step {self.c}"
            )

    def __len__(self) -> int:
        return (self.b - self.a) // self.c + 1

    def __contains__(self, value: int) -> bool:
        return self.a <= value <= self.b and (value - self.a) % self.c == 0

    def members(self) -> range:
        return range(self.a, self.b + 1, self.c)


def expand_interval(iv: SteppedInterval) -> list[int]:
    """Explicit sorted member list of a stepped interval."""
    return list(iv.members())


def coverage_equals(
    diffs: Mapping[int, int], target: SteppedInterval, lam: int
) -> tuple[bool, tuple[int, int] | None]:
    """Check that every member of ``target`` has count exactly ``lam`` and
    nothing outside has positive count.

    Returns ``(True, None)`` or ``(False, (value, count))`` with the first
    offending value (target members in ascending order, then strays).
    """
    if target.c == 1:
        # Dense path: count into a flat array over [a, b].
        width = target.b - target.a + 1
        dense = [0] * width
        strays = []
        for value, count in diffs.items():
            if count == 0:
                continue
            if target.a <= value <= target.b:
                dense[value - target.a] = count
            else:
                strays.append(value)
        for offset, count in enumerate(dense):
            if count != lam:
                return False, (target.a + offset, count)
        if strays:
            stray = min(strays)
            return False, (stray, diffs[stray])
        return True, None
    for value in target.members():
        count = diffs.get(value, 0)
        if count != lam:
            return False, (value, count)
    for value in sorted(diffs):
        if diffs[value] > 0 and value not in target:
            return False, (value, diffs[value])
    return True, None


# Family kinds and the parameter names each one carries.
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "CDP": ("v", "k", "lambda"),
    "CDF": ("v", "k", "lambda"),
    "PDF": ("v", "k", "lambda"),
    "PSDS": ("m", "k", "c"),
    "DTS": ("m", "k"),
    "OOC": ("n", "k", "lambda"),
    "ASP": ("m", "n"),
    "PDM": ("m", "n", "homogeneous"),
    "GDP": ("u1", "u2", "w"),
    "GOC": ("n1", "n2", "w"),
}

PROVENANCES = ("paper", "searched", "derived")


@dataclass(frozen=True)
class Family:
    """A tagged collection of blocks (or rows / point sets) plus parameters.

    ``blocks`` are int tuples for the difference-family kinds, ordered int
    tuples for ASP/PDM rows, and tuples of (x, y) pairs for GDP/GOC.
    """

    kind: str
    params: dict[str, int] = field(default_factory=dict)
    blocks: tuple = ()
    provenance: str = "paper"

    def __post_init__(self) -> None:
        if self.kind not in FAMILY_PARAMS:
            raise InvalidFamilyError(f"unknown family kind {self.kind!r}")
        required = set(FAMILY_PARAMS[self.kind])
        present = set(self.params)
        if present != required:
            raise InvalidFamilyError(
                f"{self.kind} family needs params {sorted(required)}, got {sorted(present)}"
            )
        if self.provenance not in PROVENANCES:
            raise InvalidFamilyError(f"unknown provenance {self.provenance!r}")
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))

    def __len__(self) -> int:
        return len(self.blocks)


def difference_family(
    kind: str,
    params: dict[str, int],
    blocks: Iterable[Iterable[int]],
    provenance: str = "paper",
) -> Family:
    """Family constructor that canonicalizes every member through as_block."""
    return Family(kind, dict(params), tuple(as_block(b) for b in blocks), provenance)
