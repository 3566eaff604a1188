"""Layered difference calculus: exactness, hand-expanded sums, builtins."""

import random

import pytest

from diffkit.core import InadmissibleError
from diffkit.groupring import (
    builtin_layered,
    coefficient_scale,
    delta_star,
    delta_star_plus,
    layered_instance,
    verify_ldf,
    verify_pldf,
)


def coeffs_from(spec: dict, v: int, scale: int) -> tuple:
    out = [0] * v
    for weight, residues in spec.items():
        for r in residues:
            out[r] += scale // weight
    return tuple(out)


def test_delta_star_three_entry_block():
    # (0,3,0) over Z_12: 1[3+8] + 1[9+2] + 1/2[0+11+1+10], scale 2.
    elem = delta_star((0, 3, 0), 12)
    assert elem.scale == 2
    assert elem.coeff == coeffs_from({1: [3, 8, 9, 2], 2: [0, 11, 1, 10]}, 12, 2)


def test_delta_star_four_entry_block():
    # (0,43,31,8) over Z_72: 1[43+28] + 1[60+11] + 1[49+22]
    #   + 1/2[31+40+32+39] + 1/2[37+34+38+33] + 1/3[8+63+9+62+10+61], scale 6.
    elem = delta_star((0, 43, 31, 8), 72)
    assert elem.scale == 6
    expected = coeffs_from(
        {
            1: [43, 28, 60, 11, 49, 22],
            2: [31, 40, 32, 39, 37, 34, 38, 33],
            3: [8, 63, 9, 62, 10, 61],
        },
        72,
        6,
    )
    assert elem.coeff == expected


def test_delta_star_single_pair():
    elem = delta_star((0, 0), 5)
    assert elem.scale == 1
    assert elem.coeff == (1, 0, 0, 0, 1)


def test_delta_star_plus_four_entry_block():
    # (0,18,42,0) over Z_108: 1[18] + 1[24] + 1[41] + 1/2[42+43] + 1/2[17+16]
    #   + 1/3[0+1+2], scale 6.
    elem = delta_star_plus((0, 18, 42, 0), 108)
    expected = coeffs_from({1: [18, 24, 41], 2: [42, 43, 17, 16], 3: [0, 1, 2]}, 108, 6)
    assert elem.coeff == expected


def test_delta_star_plus_equal_entries_take_forward_branch():
    elem = delta_star_plus((0, 0), 4)
    assert elem.coeff == (1, 0, 0, 0)


def test_delta_star_plus_rejects_odd_modulus():
    with pytest.raises(InadmissibleError):
        delta_star_plus((0, 1, 2), 9)
    with pytest.raises(InadmissibleError):
        verify_pldf([(0, 1, 2)], 9, 3, 1)


def test_verify_ldf_pass_and_fail():
    assert verify_ldf([(0, 3, 0), (0, 5, 0)], 12, 3, 1).passed
    assert verify_ldf(layered_instance("(72,4,1)-LDF").blocks, 72, 4, 1).passed
    cert = verify_ldf([(0, 3, 0)], 12, 3, 1)
    assert not cert.passed and cert.witnesses


def test_verify_pldf_builtins_and_failure():
    assert verify_pldf(layered_instance("(108,4,1)-PLDF").blocks, 108, 4, 1).passed
    assert verify_pldf(layered_instance("(36,4,2)-PLDF").blocks, 36, 4, 2).passed
    # the order-72 layered family is not perfect: no (72,4,1) exists.
    cert = verify_pldf(layered_instance("(72,4,1)-LDF").blocks, 72, 4, 1)
    assert not cert.passed


def test_builtin_catalog():
    catalog = builtin_layered()
    assert set(catalog) == {
        "(12,3,1)-LDF", "(72,4,1)-LDF", "(108,4,1)-PLDF",
        "(36,4,2)-PLDF", "(24,4,3)-PLDF", "(12,4,6)-PLDF",
    }
    assert layered_instance("(24,4,3)-PLDF").blocks == (
        (0, 0, 8, 0), (0, 8, 10, 0), (0, 10, 4, 0),
        (0, 9, 10, 3), (0, 11, 0, 3), (0, 11, 6, 3),
    )
    assert layered_instance("(12,4,6)-PLDF").blocks == (
        (0, 2, 3, 0), (0, 5, 2, 0), (0, 5, 4, 0),
        (0, 0, 4, 3), (0, 5, 0, 3), (0, 5, 2, 3),
    )
    with pytest.raises(LookupError):
        layered_instance("(99,9,9)")


def test_block_count_law_on_builtins():
    for inst in builtin_layered().values():
        assert len(inst.blocks) == inst.lam * inst.v // (inst.k * (inst.k - 1))


def test_mass_conservation_random_blocks():
    rng = random.Random(3)
    for _ in range(60):
        v = rng.randrange(2, 40) * 2
        k = rng.randrange(2, 6)
        block = tuple(rng.randrange(v) for _ in range(k))
        scale = coefficient_scale(k)
        assert delta_star(block, v).mass() == k * (k - 1) * scale
        assert delta_star_plus(block, v).mass() == k * (k - 1) // 2 * scale


def test_additivity_of_layered_verification():
    one = layered_instance("(12,3,1)-LDF").blocks
    assert verify_ldf(one + one, 12, 3, 2).passed
    two = layered_instance("(36,4,2)-PLDF").blocks
    assert verify_pldf(two + two, 36, 4, 4).passed
