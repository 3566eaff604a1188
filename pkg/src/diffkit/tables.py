"""Embedded machine-readable data behind the closed-form generators.

Symbolic base blocks are written as strings of comma-separated terms
"a t+b" (e.g. "0, 4t-1, 15t-1, 38t-7") and parsed once at import time into
(alpha, beta) coefficient pairs meaning alpha*t + beta.  Keeping the source
strings in the same shape as the printed tables makes transcription errors
visible at a glance; the verification sweeps catch anything that slips
through, since a single wrong coefficient breaks exact coverage.

Families recovered by our own exact-cover search (rather than taken from a
printed table) are grouped at the bottom and tagged "searched" by their
constructors.
"""

from __future__ import annotations

import re

SymbolicBlock = tuple[tuple[int, int], ...]

_TERM = re.compile(r"^(?:(\d*)t)?([+-]?\d+)?$")


def _parse_term(text: str) -> tuple[int, int]:
    m = _TERM.match(text.replace(" ", ""))
    if m is None or (m.group(1) is None and not m.group(2)):
        raise ValueError(f"cannot parse block term {text!r}")
    tpart, cpart = m.group(1), m.group(2)
    alpha = 0 if tpart is None else (int(tpart) if tpart else 1)
    beta = int(cpart) if cpart else 0
    return alpha, beta


def _sym(*block_texts: str) -> tuple[SymbolicBlock, ...]:
    return tuple(
        tuple(_parse_term(term) for term in text.split(","))
        for text in block_texts
    )


def instantiate(block: SymbolicBlock, t: int) -> tuple[int, ...]:
    """Evaluate a symbolic block at a concrete t (unsorted)."""
    return tuple(alpha * t + beta for alpha, beta in block)


# ---------------------------------------------------------------------------
# Nine-form scaffolding for (m,4,3) systems: entry j of form r is
# tcoef[r][j]*t + j*i + shift[r][j-1], with i running over [1, t-2].
# The t-coefficient rows are exactly the (108,4,1)-PLDF base blocks.

PSDS_FORM_TCOEFS = (
    (0, 18, 42, 0),
    (0, 50, 30, 0),
    (0, 53, 45, 0),
    (0, 34, 25, 20),
    (0, 38, 48, 20),
    (0, 47, 32, 20),
    (0, 3, 42, 35),
    (0, 5, 45, 35),
    (0, 23, 51, 35),
)

# Shift constants (a_j, b_j, c_j) for the m = 9t-1 case.
PSDS_SHIFTS_9TM1 = (
    (-2, -5, 0),
    (-5, -3, 1),
    (-5, -3, 2),
    (-4, -2, -2),
    (-4, -5, -1),
    (-6, -4, -3),
    (0, -4, -3),
    (0, -4, -2),
    (-3, -6, -4),
)

# Shift constants (a_j, b_j, c_j) for m = 9t+x, keyed by x.
TABLE_4_3 = {
    0: ((0, 0, 0), (0, 1, 1), (0, 1, 2), (1, 1, 2), (0, 0, 1), (0, 0, 0), (0, 1, 1), (1, 2, 3), (0, 1, 2)),
    1: ((2, 4, 0), (5, 3, 1), (5, 5, 2), (4, 4, 4), (4, 5, 3), (5, 4, 2), (0, 5, 3), (1, 6, 5), (3, 6, 4)),
    2: ((4, 9, 0), (11, 6, 1), (12, 11, 2), (7, 7, 6), (8, 11, 5), (10, 7, 4), (1, 10, 9), (1, 10, 8), (5, 11, 7)),
    3: ((6, 14, 0), (16, 10, 1), (18, 16, 2), (12, 10, 8), (12, 16, 7), (15, 11, 6), (1, 15, 11), (2, 15, 13), (7, 17, 12)),
    4: ((8, 18, 0), (22, 13, 1), (23, 20, 2), (15, 11, 9), (17, 22, 10), (20, 14, 8), (1, 19, 16), (3, 21, 17), (10, 22, 15)),
    5: ((10, 23, 0), (27, 16, 1), (29, 25, 2), (18, 14, 11), (21, 27, 12), (26, 19, 13), (2, 24, 20), (4, 26, 21), (13, 28, 19)),
    6: ((12, 28, 0), (33, 20, 1), (35, 30, 2), (22, 17, 15), (25, 33, 14), (31, 21, 13), (2, 29, 24), (4, 31, 25), (15, 34, 23)),
    7: ((14, 32, 0), (38, 23, 1), (41, 35, 2), (26, 20, 17), (29, 38, 16), (36, 25, 15), (2, 33, 28), (5, 36, 29), (17, 40, 27)),
}

# The 17 sporadic blocks completing the m = 9t-1 case.
PSDS_SPORADIC_9TM1 = _sym(
    "0, 4t-1, 15t-1, 38t-7",
    "0, 14t-3, 30t-3, 53t-8",
    "0, 3t-3, 38t-5, 48t-7",
    "0, 4t+1, 45t-3, 54t-4",
    "0, 3t-2, 19t-3, 44t-7",
    "0, 5t, 25t-1, 53t-5",
    "0, 4t, 42t-4, 48t-4",
    "0, 11t-1, 30t-2, 53t-6",
    "0, 3t, 35t-3, 54t-5",
    "0, 14t-2, 29t-4, 54t-6",
    "0, 11t-2, 38t-6, 50t-6",
    "0, 8t-2, 35t-5, 53t-7",
    "0, 3t-1, 32t-4, 50t-7",
    "0, 12t-1, 20t-2, 44t-6",
    "0, 14t-1, 23t-3, 48t-6",
    "0, 7t-1, 35t-4, 51t-6",
    "0, 6t-1, 30t-4, 40t-5",
)

# (m,4,3) systems for 5 <= m <= 16.
APPENDIX_A = {
    5: ((0, 3, 20, 28), (0, 4, 19, 31), (0, 5, 18, 29), (0, 6, 22, 32), (0, 7, 21, 30)),
    6: ((0, 3, 28, 33), (0, 4, 24, 36), (0, 6, 22, 35), (0, 7, 21, 38), (0, 8, 23, 34),
        (0, 10, 19, 37)),
    7: ((0, 3, 23, 37), (0, 4, 30, 40), (0, 5, 21, 43), (0, 6, 31, 39), (0, 7, 18, 42),
        (0, 9, 28, 41), (0, 15, 27, 44)),
    8: ((0, 3, 26, 46), (0, 5, 30, 41), (0, 6, 28, 45), (0, 7, 38, 47), (0, 8, 32, 50),
        (0, 10, 29, 44), (0, 12, 16, 49), (0, 13, 27, 48)),
    9: ((0, 3, 37, 52), (0, 4, 42, 48), (0, 5, 18, 51), (0, 7, 27, 50), (0, 8, 30, 47),
        (0, 9, 40, 54), (0, 12, 28, 53), (0, 19, 29, 55), (0, 21, 32, 56)),
    10: ((0, 3, 36, 57), (0, 4, 32, 45), (0, 5, 53, 60), (0, 6, 29, 49), (0, 8, 42, 52),
         (0, 9, 24, 59), (0, 11, 37, 62), (0, 12, 39, 58), (0, 14, 31, 61), (0, 16, 38, 56)),
    11: ((0, 3, 38, 59), (0, 4, 43, 68), (0, 5, 29, 62), (0, 6, 42, 53), (0, 8, 48, 66),
         (0, 9, 41, 63), (0, 10, 27, 55), (0, 12, 31, 61), (0, 13, 50, 65), (0, 14, 34, 60),
         (0, 16, 23, 67)),
    12: ((0, 3, 48, 63), (0, 4, 37, 59), (0, 5, 23, 72), (0, 6, 35, 56), (0, 7, 53, 69),
         (0, 8, 39, 73), (0, 9, 51, 70), (0, 10, 36, 74), (0, 11, 43, 68), (0, 12, 52, 66),
         (0, 17, 30, 58), (0, 24, 44, 71)),
    13: ((0, 3, 68, 72), (0, 6, 55, 79), (0, 7, 50, 63), (0, 8, 45, 67), (0, 10, 44, 76),
         (0, 11, 29, 62), (0, 12, 42, 70), (0, 14, 60, 75), (0, 16, 39, 80), (0, 17, 36, 71),
         (0, 20, 25, 77), (0, 21, 48, 74), (0, 31, 40, 78)),
    14: ((0, 3, 66, 83), (0, 4, 18, 60), (0, 5, 39, 84), (0, 6, 58, 74), (0, 7, 32, 82),
         (0, 8, 59, 69), (0, 9, 55, 81), (0, 11, 47, 78), (0, 12, 49, 77), (0, 15, 48, 86),
         (0, 19, 54, 76), (0, 20, 44, 73), (0, 21, 62, 85), (0, 27, 40, 70)),
    15: ((0, 3, 31, 80), (0, 4, 44, 61), (0, 5, 69, 78), (0, 6, 58, 74), (0, 7, 36, 92),
         (0, 8, 70, 83), (0, 10, 43, 91), (0, 11, 76, 90), (0, 12, 51, 72), (0, 15, 45, 86),
         (0, 18, 38, 84), (0, 22, 47, 89), (0, 23, 55, 82), (0, 24, 50, 87), (0, 34, 53, 88)),
    16: ((0, 3, 40, 72), (0, 4, 23, 91), (0, 5, 49, 65), (0, 6, 48, 79), (0, 7, 46, 96),
         (0, 8, 61, 82), (0, 9, 84, 95), (0, 10, 62, 80), (0, 12, 57, 90), (0, 13, 56, 94),
         (0, 15, 51, 98), (0, 17, 71, 93), (0, 20, 34, 97), (0, 24, 59, 88), (0, 25, 66, 92),
         (0, 27, 55, 85)),
}

# The remaining 18+x blocks for m = 9t+x, keyed by x.
APPENDIX_B = {
    0: _sym(
        "0, 3t-3, 38t, 48t-1",
        "0, 14t-1, 30t+1, 53t-2",
        "0, 6t, 44t-2, 50t-1",
        "0, 11t, 34t-2, 45t-1",
        "0, 3t-1, 32t-1, 50t-2",
        "0, 12t+2, 20t+2, 54t+2",
        "0, 4t-1, 29t+1, 39t+1",
        "0, 11t-1, 27t, 41t+1",
        "0, 3t-2, 38t-1, 54t-1",
        "0, 12t, 40t+1, 54t+1",
        "0, 8t-1, 28t-1, 40t",
        "0, 3t, 48t+1, 53t",
        "0, 9t, 34t+1, 54t",
        "0, 16t-1, 24t, 51t-1",
        "0, 23t-1, 28t, 53t-1",
        "0, 5t, 24t-1, 44t",
        "0, 4t, 19t, 51t",
        "0, 7t, 25t, 48t",
    ),
    1: _sym(
        "0, 3t-3, 38t, 44t+2",
        "0, 15t+3, 38t+4, 54t+8",
        "0, 11t+2, 34t+1, 45t+4",
        "0, 19t+2, 25t+5, 54t+7",
        "0, 6t, 38t+1, 54t+4",
        "0, 3t-2, 14t-1, 53t+3",
        "0, 3t-1, 23t+3, 48t+5",
        "0, 18t+1, 27t+3, 50t+3",
        "0, 4t+1, 32t+3, 51t+6",
        "0, 4t, 27t+2, 51t+4",
        "0, 9t, 41t+4, 51t+5",
        "0, 14t+2, 30t+4, 48t+6",
        "0, 8t, 38t+3, 53t+5",
        "0, 12t+2, 20t+3, 54t+6",
        "0, 4t-1, 29t+3, 44t+4",
        "0, 14t+1, 19t+1, 54t+5",
        "0, 11t, 14t, 39t+3",
        "0, 5t+1, 30t+2, 50t+4",
        "0, 6t+1, 44t+3, 53t+4",
    ),
    2: _sym(
        "0, 15t+5, 29t+5, 53t+9",
        "0, 16t+6, 35t+9, 54t+14",
        "0, 3t-3, 23t+2, 38t+5",
        "0, 9t+3, 18t+3, 32t+4",
        "0, 20t+6, 23t+4, 48t+12",
        "0, 15t+4, 29t+6, 54t+13",
        "0, 7t+2, 32t+8, 51t+12",
        "0, 11t+3, 34t+6, 53t+12",
        "0, 16t+5, 27t+7, 54t+12",
        "0, 4t+1, 34t+7, 45t+11",
        "0, 9t+1, 39t+8, 51t+11",
        "0, 4t+2, 14t+4, 48t+9",
        "0, 18t+4, 25t+5, 50t+9",
        "0, 5t+1, 45t+10, 53t+11",
        "0, 3t-1, 35t+6, 51t+10",
        "0, 3t+1, 27t+6, 50t+11",
        "0, 6t, 38t+6, 47t+8",
        "0, 3t, 47t+9, 53t+10",
        "0, 4t, 39t+7, 45t+9",
        "0, 10t+3, 40t+8, 54t+11",
    ),
    3: _sym(
        "0, 11t+5, 34t+8, 45t+14",
        "0, 6t+5, 29t+9, 44t+13",
        "0, 16t+8, 19t+5, 54t+18",
        "0, 20t+8, 23t+6, 48t+17",
        "0, 6t+4, 12t+6, 54t+20",
        "0, 6t+1, 38t+9, 53t+15",
        "0, 3t-1, 47t+13, 50t+14",
        "0, 3t, 28t+10, 51t+15",
        "0, 10t+2, 14t+3, 44t+12",
        "0, 14t+5, 38t+11, 53t+16",
        "0, 6t+3, 38t+12, 54t+17",
        "0, 19t+6, 27t+9, 51t+16",
        "0, 9t+2, 39t+12, 50t+15",
        "0, 12t+5, 39t+13, 53t+17",
        "0, 4t+3, 29t+10, 54t+19",
        "0, 4t+2, 24t+8, 44t+15",
        "0, 5t+2, 23t+7, 39t+14",
        "0, 4t, 34t+11, 45t+15",
        "0, 10t+3, 35t+11, 51t+17",
        "0, 9t+3, 19t+7, 51t+18",
        "0, 8t+2, 35t+12, 53t+18",
    ),
    4: _sym(
        "0, 4t, 15t+7, 38t+12",
        "0, 3t-3, 14t+3, 38t+13",
        "0, 15t+8, 38t+14, 54t+24",
        "0, 3t-1, 44t+16, 48t+19",
        "0, 19t+7, 23t+8, 53t+20",
        "0, 12t+8, 35t+17, 54t+26",
        "0, 3t-2, 32t+11, 51t+21",
        "0, 6t+4, 29t+11, 54t+25",
        "0, 3t, 47t+18, 53t+21",
        "0, 7t+3, 27t+13, 54t+22",
        "0, 6t+2, 44t+17, 53t+22",
        "0, 5t+2, 32t+13, 50t+20",
        "0, 10t+5, 35t+14, 51t+23",
        "0, 8t+3, 16t+8, 48t+20",
        "0, 4t+2, 38t+17, 45t+21",
        "0, 8t+4, 23t+10, 48t+22",
        "0, 16t+7, 19t+8, 51t+22",
        "0, 11t+4, 38t+16, 50t+22",
        "0, 10t+4, 28t+12, 42t+19",
        "0, 9t+4, 39t+17, 53t+23",
        "0, 24t+9, 29t+12, 54t+23",
        "0, 11t+5, 25t+10, 45t+19",
    ),
    5: _sym(
        "0, 3t-3, 14t+4, 44t+21",
        "0, 15t+8, 38t+16, 53t+26",
        "0, 12t+9, 35t+21, 54t+32",
        "0, 6t+5, 29t+14, 45t+25",
        "0, 3t-2, 23t+11, 35t+17",
        "0, 6t+3, 38t+17, 54t+29",
        "0, 15t+9, 20t+12, 47t+24",
        "0, 3t-1, 47t+23, 51t+26",
        "0, 9t+4, 34t+16, 50t+25",
        "0, 4t+4, 27t+14, 54t+30",
        "0, 3t+2, 35t+19, 54t+31",
        "0, 11t+5, 18t+9, 53t+29",
        "0, 5t+4, 16t+10, 45t+26",
        "0, 3t, 28t+15, 51t+28",
        "0, 4t+1, 38t+19, 45t+24",
        "0, 8t+4, 20t+11, 47t+26",
        "0, 8t+5, 35t+18, 53t+28",
        "0, 4t+2, 19t+9, 51t+27",
        "0, 3t+1, 32t+16, 41t+22",
        "0, 6t+4, 25t+14, 50t+27",
        "0, 9t+5, 39t+21, 53t+27",
        "0, 14t+7, 24t+13, 54t+28",
        "0, 10t+5, 34t+17, 48t+25",
    ),
    6: _sym(
        "0, 10t+8, 25t+20, 48t+30",
        "0, 16t+14, 19t+11, 54t+35",
        "0, 3t-1, 38t+20, 44t+26",
        "0, 19t+13, 30t+21, 53t+32",
        "0, 3t-2, 14t+7, 38t+23",
        "0, 9t+6, 23t+12, 50t+32",
        "0, 15t+10, 24t+15, 47t+28",
        "0, 8t+6, 20t+15, 47t+30",
        "0, 15t+11, 38t+25, 54t+38",
        "0, 4t+1, 34t+20, 54t+34",
        "0, 3t, 47t+29, 51t+32",
        "0, 7t+5, 32t+22, 48t+34",
        "0, 3t+2, 45t+31, 51t+35",
        "0, 5t+3, 32t+20, 50t+31",
        "0, 14t+8, 34t+21, 53t+33",
        "0, 19t+14, 27t+19, 51t+33",
        "0, 6t+3, 44t+27, 53t+34",
        "0, 14t+11, 25t+18, 54t+37",
        "0, 4t+2, 18t+12, 45t+30",
        "0, 3t+1, 10t+7, 35t+22",
        "0, 12t+8, 40t+27, 54t+36",
        "0, 5t+4, 30t+20, 53t+35",
        "0, 5t+2, 34t+22, 44t+28",
        "0, 6t+5, 35t+23, 51t+34",
    ),
    7: _sym(
        "0, 15t+13, 38t+25, 53t+39",
        "0, 3t-3, 14t+8, 23t+14",
        "0, 3t-1, 38t+24, 54t+40",
        "0, 16t+15, 25t+23, 48t+36",
        "0, 3t-2, 38t+27, 44t+31",
        "0, 3t, 44t+30, 50t+36",
        "0, 6t+5, 35t+28, 54t+44",
        "0, 20t+15, 24t+16, 47t+33",
        "0, 3t+1, 19t+15, 53t+38",
        "0, 7t+7, 39t+30, 54t+41",
        "0, 4t+2, 23t+15, 51t+37",
        "0, 19t+14, 24t+17, 51t+40",
        "0, 10t+7, 24t+18, 51t+38",
        "0, 4t+3, 34t+25, 48t+35",
        "0, 12t+11, 30t+24, 44t+33",
        "0, 5t+4, 39t+28, 50t+38",
        "0, 8t+7, 28t+23, 53t+40",
        "0, 10t+9, 25t+21, 48t+37",
        "0, 9t+7, 27t+21, 54t+43",
        "0, 14t+12, 25t+20, 54t+42",
        "0, 8t+6, 42t+32, 53t+41",
        "0, 7t+6, 32t+25, 48t+38",
        "0, 3t+2, 38t+29, 42t+33",
        "0, 5t+5, 30t+23, 40t+31",
        "0, 7t+5, 39t+29, 51t+39",
    ),
}

# ---------------------------------------------------------------------------
# (v,4,2) data: six forms over v = 36t+6x+1, shifts keyed by x, small cases,
# and the 12+x sporadic blocks.  Form t-coefficients are the (36,4,2)-PLDF.

PDF2_FORM_TCOEFS = (
    (0, 0, 3, 15),
    (0, 0, 6, 15),
    (0, 11, 1, 15),
    (0, 10, 1, 11),
    (0, 14, 6, 11),
    (0, 17, 3, 11),
)

TABLE_5_3 = {
    -1: ((1, 0, 0), (0, -1, -2), (-1, 0, -1), (1, 1, -1), (0, 0, 1), (-1, 1, 0)),
    1: ((0, 0, 3), (2, 2, 4), (1, 1, 2), (3, 1, 1), (3, 1, 3), (4, 1, 2)),
    3: ((1, 1, 7), (2, 4, 9), (5, 2, 8), (6, 2, 7), (7, 3, 6), (9, 2, 5)),
}

APPENDIX_C = {
    19: ((0, 1, 4, 9), (0, 2, 6, 9), (0, 2, 7, 8)),
    25: ((0, 1, 4, 10), (0, 2, 7, 12), (0, 2, 8, 11), (0, 4, 11, 12)),
    31: ((0, 1, 4, 11), (0, 2, 8, 14), (0, 2, 11, 15), (0, 3, 10, 15), (0, 5, 13, 14)),
    37: ((0, 3, 10, 18), (0, 3, 13, 17), (0, 4, 15, 16), (0, 2, 7, 16), (0, 5, 6, 18),
         (0, 6, 8, 17)),
    43: ((0, 4, 10, 20), (0, 5, 12, 21), (0, 6, 14, 19), (0, 2, 11, 13), (0, 3, 17, 18),
         (0, 3, 20, 21), (0, 4, 12, 19)),
    55: ((0, 4, 22, 26), (0, 5, 17, 26), (0, 6, 14, 25), (0, 6, 16, 27), (0, 9, 23, 24),
         (0, 2, 5, 18), (0, 2, 10, 25), (0, 3, 20, 27), (0, 7, 19, 20)),
}

APPENDIX_D = {
    -1: _sym(
        "0, 18t-5, 3t-4, 11t-3",
        "0, 18t-4, 4t-1, 4t",
        "0, 18t-3, 8t-2, 17t-4",
        "0, 9t, 17t-3, 12t-1",
        "0, 3t, 15t, 10t+1",
        "0, 4t-2, 15t-2, 14t-2",
        "0, 14t, 15t-1, t+1",
        "0, 8t, 11t-2, 14t-1",
        "0, 17t-1, 11t-1, 6t-2",
        "0, 9t-1, 17t-2, 12t-2",
        "0, 4t+1, 7t-1, 14t-1",
    ),
    1: _sym(
        "0, 18t+2, 4t+4, 7t",
        "0, 18t-1, 17t, 6t-1",
        "0, 2, 15t+2, 14t+1",
        "0, 18t, 8t-1, 15t+1",
        "0, 9t, 18t+1, 3t-2",
        "0, 12t+1, 7t+3, t+2",
        "0, 17t+1, 3t+1, 10t",
        "0, 4t+2, 12t+3, 15t+2",
        "0, 18t+3, 13t+2, 5t-1",
        "0, 9t+2, 17t+4, 12t+2",
        "0, 1, 4t, 17t+3",
        "0, 18t+3, 8t, 3t",
        "0, 4t+1, 15t+4, 14t+3",
    ),
    3: _sym(
        "0, 2, 13t+8, 4t+6",
        "0, t+3, 18t+7, 15t+5",
        "0, 1, 18t+5, 10t+4",
        "0, t, 18t+6, 5t-1",
        "0, 6t+1, 7t+2, 14t+3",
        "0, 17t+5, 12t+4, 3t-1",
        "0, t+2, 15t+6, 10t+6",
        "0, 18t+9, 3t, 14t+7",
        "0, 18t+8, 13t+5, 3t",
        "0, 1, 17t+9, 8t+5",
        "0, 11t+5, 4t, 15t+6",
        "0, 11t+5, t+1, 18t+8",
        "0, 6t+3, 12t+5, 18t+9",
        "0, t+2, 15t+7, 10t+5",
        "0, 11t+4, 8t+3, 15t+7",
    ),
}

# ---------------------------------------------------------------------------
# (v,4,3) data over v = 24t+4x+1; form t-coefficients are the (24,4,3)-PLDF.

PDF3_FORM_TCOEFS = (
    (0, 0, 8, 0),
    (0, 8, 10, 0),
    (0, 10, 4, 0),
    (0, 9, 10, 3),
    (0, 11, 0, 3),
    (0, 11, 6, 3),
)

TABLE_5_4 = {
    -2: ((1, -1, 0), (-2, -3, 2), (-1, 0, 1), (-2, -2, 1), (-2, 2, -1), (-3, 0, 0)),
    -1: ((0, 0, 0), (-1, 0, 1), (1, 0, 2), (0, 1, 1), (-1, 1, 2), (0, 1, 0)),
    1: ((0, 3, 0), (1, 2, 2), (3, 0, 1), (1, 3, 2), (1, 1, 1), (2, 1, 0)),
    2: ((0, 4, 0), (3, 3, 2), (4, 1, 1), (3, 4, 3), (5, 1, 1), (3, 4, 2)),
}

APPENDIX_E = {
    17: ((0, 1, 4, 8), (0, 2, 5, 8), (0, 2, 6, 7), (0, 2, 7, 8)),
    21: ((0, 1, 4, 9), (0, 2, 6, 10), (0, 2, 8, 9), (0, 3, 5, 10), (0, 3, 9, 10)),
    25: ((0, 1, 3, 10), (0, 2, 6, 11), (0, 2, 8, 12), (0, 3, 8, 12), (0, 3, 10, 11),
         (0, 5, 11, 12)),
    29: ((0, 3, 7, 14), (0, 3, 8, 14), (0, 4, 9, 14), (0, 1, 12, 13), (0, 2, 8, 10),
         (0, 3, 12, 13), (0, 4, 6, 13)),
    33: ((0, 3, 8, 16), (0, 4, 9, 16), (0, 4, 10, 16), (0, 1, 2, 15), (0, 2, 11, 13),
         (0, 3, 10, 14), (0, 3, 10, 15), (0, 6, 14, 15)),
    37: ((0, 4, 10, 18), (0, 4, 11, 18), (0, 5, 11, 18), (0, 1, 2, 17), (0, 2, 12, 15),
         (0, 2, 12, 17), (0, 3, 9, 14), (0, 3, 12, 16), (0, 8, 16, 17)),
}

APPENDIX_F = {
    -2: _sym(
        "0, 2, 6t+1, 10t-2",
        "0, 4t-4, 12t-5, 7t-3",
        "0, 4t-2, 2t-3, 10t-5",
        "0, 4t, 12t-4, 6t",
        "0, 1, 7t-1, 10t-1",
        "0, 8t, 11t-3, t",
        "0, 4t-1, 12t-4, 10t-3",
        "0, 8t-2, 10t-3, 5t",
        "0, 2, 11t-2, 6t-1",
        "0, 1, 9t-2, 3t",
    ),
    -1: _sym(
        "0, 12t-2, 2t-1, 11t-2",
        "0, 9t-2, 3t-1, 12t-2",
        "0, 8t-1, 2t-2, 6t-3",
        "0, 2, 8t-1, 10t",
        "0, 8t-2, 11t-1, 5t+1",
        "0, 9t, 3t-2, 10t-1",
        "0, 9t, 4t-2, 6t-2",
        "0, 4t, 11t, 10t-1",
        "0, 1, 8t+1, 5t",
        "0, 4t+1, 2t+1, 10t+1",
        "0, 1, 6t+1, 10t+1",
    ),
    1: _sym(
        "0, 2, 3t+1, 6t-1",
        "0, 8t+4, 3t, 10t+2",
        "0, 8t+3, 11t, t-1",
        "0, 4t+2, 12t+2, 6t+4",
        "0, 1, 12t+1, 6t-1",
        "0, 8t+3, 3t, 10t+3",
        "0, 4t+1, 12t, 10t+1",
        "0, 9t, 12t+2, t+1",
        "0, 4t+1, 12t+2, 11t+2",
        "0, 1, 6t+2, 10t+2",
        "0, 4t, 12t+1, 10t",
        "0, 9t+1, 10t+3, 5t+2",
        "0, 4t-1, 12t+1, 10t",
    ),
    2: _sym(
        "0, 9t+3, 11t+5, 6t+6",
        "0, 12t+1, 6t-2, 6t",
        "0, 8t+4, 11t+4, t-1",
        "0, 4t-1, 12t+4, 7t+1",
        "0, 1, 3t-1, 10t+3",
        "0, 8t+3, 3t-1, 11t+3",
        "0, 9t+2, 12t+3, 6t-1",
        "0, 12t+3, 2t-1, 6t-1",
        "0, 4t+1, 12t+2, 10t+4",
        "0, 12t+4, 2t, 10t+1",
        "0, 4t+2, 12t+4, 10t+3",
        "0, 1, 10t+3, 5t+1",
        "0, 12t+2, 2t, 6t",
        "0, 8t+3, 7t+2, t",
    ),
}

# ---------------------------------------------------------------------------
# (v,4,6) data over v = 12t+2x+1; form t-coefficients are the (12,4,6)-PLDF.

PDF6_FORM_TCOEFS = (
    (0, 2, 3, 0),
    (0, 5, 2, 0),
    (0, 5, 4, 0),
    (0, 0, 4, 3),
    (0, 5, 0, 3),
    (0, 5, 2, 3),
)

TABLE_5_7 = {
    -1: ((1, 1, 1), (0, 1, 0), (0, 0, 2), (1, 1, 2), (1, 2, 0), (0, 2, 1)),
    1: ((2, 0, 0), (1, 2, 1), (1, 2, 2), (1, 1, 2), (1, 2, 0), (2, 1, 1)),
}

APPENDIX_G = {
    -1: _sym(
        "0, 2, 6t-1, t+1",
        "0, 1, 4t-2, 6t-1",
        "0, 1, 4t, 6t-1",
        "0, 4t-1, 3t-3, 6t-1",
        "0, 1, 4t-1, 4t+1",
        "0, 4t, 2t-1, 5t",
        "0, 3t-1, 6t-1, 5t-1",
        "0, 3t-2, 3t+1, 5t",
        "0, 1, 3t+2, 5t",
        "0, 2, 3t, 5t+1",
        "0, 1, 3t, 5t",
    ),
    1: _sym(
        "0, 3t-3, 3t+1, 5t-2",
        "0, 3, 4t, 6t",
        "0, 2, 6t, 5t+1",
        "0, 3, 3t+1, 5t+2",
        "0, 4t-2, 6t, 5t",
        "0, 4t+1, 2t-1, 6t+1",
        "0, 2, 3t+2, 6t+1",
        "0, 2, 6t+1, 5t+1",
        "0, 4t-1, 2t+1, 6t+1",
        "0, 1, 6t+1, 5t",
        "0, 1, 3t+2, 5t+1",
        "0, 1, 4t, 6t+1",
        "0, 1, 3t+1, 5t+1",
    ),
}

# Explicit (15,4,6) family (three of the blocks repeat).
PDF_15_4_6 = (
    (0, 1, 4, 6), (0, 2, 5, 7), (0, 2, 6, 7), (0, 2, 6, 7), (0, 2, 6, 7),
    (0, 3, 6, 7), (0, 3, 6, 7),
)

# ---------------------------------------------------------------------------
# k = 3 sporadic blocks for the two orders below the parametric ranges,
# recovered by exact-cover search.

PDF_7_3_1 = ((0, 1, 3),)
PDF_31_3_1 = ((0, 1, 15), (0, 3, 13), (0, 4, 12), (0, 5, 11), (0, 2, 9))

# ---------------------------------------------------------------------------
# k = 4, lambda = 1 families.  v = 13 is the classical small example; 49 and
# 61 sit below the threshold-3 lift and were recovered by exact-cover search.

PDF_13_4_1 = ((0, 2, 5, 6),)
PDF_49_4_1 = ((0, 2, 10, 24), (0, 7, 12, 23), (0, 1, 18, 21), (0, 4, 13, 19))
PDF_61_4_1 = ((0, 1, 10, 30), (0, 2, 16, 28), (0, 4, 21, 27), (0, 3, 18, 25), (0, 5, 13, 24))

# ---------------------------------------------------------------------------
# Cyclic-family seeds: blocks repeated to reach the requested multiplicity.

CDF_SMALL_BLOCKS = {
    4: ((0, 1, 2, 3),),            # lambda multiple of 4
    5: ((0, 1, 2, 4),),            # lambda multiple of 3
    7: ((0, 1, 2, 4),),            # lambda multiple of 2
    9: ((0, 1, 2, 5), (0, 1, 3, 7)),  # lambda multiple of 3
}
CDF_SMALL_UNIT = {4: 4, 5: 3, 7: 2, 9: 3}

# v = 6 is the one admissible order the halving route cannot reach
# (it would need an (11,4,6) perfect family, which cannot exist); this
# lambda = 12 seed was found by elementary counting and search.
CDF_6_4_12 = ((0, 1, 2, 3), (0, 1, 2, 3), (0, 2, 3, 4), (0, 2, 3, 4), (0, 1, 3, 4))

# v = 37, lambda = 1: admissible for a cyclic family even though the perfect
# variant does not exist; recovered by circular-class exact-cover search.
CDF_37_4_1 = ((0, 1, 3, 24), (0, 4, 9, 15), (0, 7, 17, 25))
