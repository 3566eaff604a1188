"""Brute-force verifiers: pass cases, fail cases with witnesses, errors."""

import pytest

from diffkit.constructions import pdf_4_1, pdf_4_2, psds_4_3
from diffkit.core import Family, InadmissibleError, InvalidFamilyError
from diffkit.derive import asp2, pdm_from_asp
from diffkit.verify import (
    WITNESS_CAP,
    verify_asp,
    verify_cdf,
    verify_cdp,
    verify_dts,
    verify_family,
    verify_gdp,
    verify_goc,
    verify_graceful_windmill,
    verify_ooc,
    verify_pdf,
    verify_pdm,
    verify_psds,
)


def test_cdp_cdf():
    assert verify_cdf([(0, 1, 3, 9)], 13, 4, 1).passed
    cert = verify_cdp([(0, 1, 2, 3)], 13, 4, 1)
    assert not cert.passed
    assert (1, 1, 3) in cert.witnesses
    assert verify_cdf([(0, 1, 2, 4)], 7, 4, 2).passed
    with pytest.raises(InvalidFamilyError):
        verify_cdf([(0, 1, 2)], 13, 4, 1)


def test_pdf():
    assert verify_pdf([(0, 2, 5, 6)], 13, 4, 1).passed
    cert = verify_pdf([(0, 1, 3, 9)], 13, 4, 1)
    assert not cert.passed
    assert any(w[0] == 9 for w in cert.witnesses)  # 9 > 6 appears
    assert verify_pdf(pdf_4_2(55).blocks, 55, 4, 2).passed
    with pytest.raises(InadmissibleError):
        verify_pdf([(0, 1, 2, 4)], 14, 4, 1)


def test_psds():
    blocks = psds_4_3(12).blocks
    cert = verify_psds(blocks, 3)
    assert cert.passed and max(cert.coverage) == 74
    assert not verify_psds(blocks, 2).passed
    cert = verify_psds([(0, 1, 2)], 1)
    assert not cert.passed and (1, 1, 2) in cert.witnesses


def test_dts():
    cert = verify_dts([(0, 2, 5, 6)], 3)
    assert cert.passed and cert.extra == {"scope": 6, "min_scope": 6, "minimal": True}
    assert not verify_dts([(0, 1, 2, 3)], 3).passed
    rows = [tuple(b) for b in pdf_4_1(73).blocks]
    cert = verify_dts(rows, 3)
    assert cert.passed and cert.extra["scope"] == 36 and cert.extra["minimal"]
    with pytest.raises(InvalidFamilyError):
        verify_dts([(1, 2, 5, 6)], 3)


def test_ooc():
    words = pdf_4_1(49).blocks
    cert = verify_ooc(words, 50, 4)
    assert cert.passed and cert.extra == {"size": 4, "j_bound": 4, "j_optimal": True}

    cert = verify_ooc([(0, 1, 3, 7)], 26, 4)
    assert cert.passed and not cert.extra["j_optimal"]

    # a support with repeated cyclic differences fails the auto sweep:
    # {0,1,2,4} meets every shift of itself twice mod 7
    cert = verify_ooc([(0, 1, 2, 4)], 7, 4)
    assert not cert.passed
    assert any("auto" in str(w[0]) for w in cert.witnesses)

    # {0,2} mod 4 meets its own shift by 2 completely: an auto failure
    cert = verify_ooc([(0, 1), (0, 2)], 4, 2)
    assert not cert.passed
    assert any("auto word 1" in str(w[0]) for w in cert.witnesses)

    # translated codewords align under some shift: a cross failure
    cert = verify_ooc([(0, 1), (2, 3)], 6, 2)
    assert not cert.passed
    assert any("cross" in str(w[0]) for w in cert.witnesses)


def test_asp():
    assert verify_asp(asp2(5).blocks).passed
    assert verify_asp([(-1, 0, 2, 1, -2)]).passed  # single permutation
    cert = verify_asp([(-1, 0, 1), (-1, 0, 1)])
    assert not cert.passed  # (-2, 0, 2) is not a permutation of {-1,0,1}
    with pytest.raises(InvalidFamilyError):
        verify_asp([(0, 1), (0,)])


def test_pdm():
    pdm = pdm_from_asp(asp2(5))
    assert verify_pdm(pdm.blocks, homogeneous=True).passed
    bad = [(0, 1, 2, 3, 4), (0, 1, 4, 2, 3)]
    cert = verify_pdm(bad)
    assert not cert.passed and cert.witnesses
    cert = verify_pdm([(0, 0, 0, 0, 0)], homogeneous=True)
    assert not cert.passed
    with pytest.raises(InadmissibleError):
        verify_pdm([(0, 1, 2, 3)])


def test_gdp_goc():
    # two translates of one block repeat every difference vector
    blocks = [((0, 0), (0, 1), (1, 0)), ((1, 1), (1, 2), (2, 1))]
    cert = verify_gdp(blocks, 7, 7, 3)
    assert not cert.passed

    word = [((0, 0), (0, 1), (1, 0))]
    assert verify_goc(word, 4, 4, 3).passed
    cert = verify_goc(word * 2, 4, 4, 3)
    assert not cert.passed


def test_graceful():
    assert verify_graceful_windmill(0, [(2, 5, 6)]).passed
    cert = verify_graceful_windmill(0, [(1, 2, 3)])
    assert not cert.passed  # edge label 1 repeats
    with pytest.raises(InvalidFamilyError):
        verify_graceful_windmill(0, [(1, 2)])


def test_witness_cap():
    # one lone block over a huge order produces far more than CAP violations
    cert = verify_pdf([(0, 1, 2, 4)], 1009, 4, 1)
    assert not cert.passed
    assert len(cert.witnesses) == WITNESS_CAP
    assert cert.truncated > 0


def test_verify_family_dispatch():
    family = Family("PDF", {"v": 13, "k": 4, "lambda": 1}, ((0, 2, 5, 6),))
    assert verify_family(family).passed
    family = Family("PSDS", {"m": 5, "k": 4, "c": 3}, psds_4_3(5).blocks)
    assert verify_family(family).passed


def test_certificate_json_shape():
    cert = verify_pdf([(0, 2, 5, 6)], 13, 4, 1)
    doc = cert.to_json_dict()
    assert doc["pass"] is True
    assert doc["kind"] == "PDF"
    assert doc["coverage"]["1"] == 1
    assert doc["witnesses"] == []
