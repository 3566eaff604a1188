"""Acceptance suite: one test per acceptance criterion, each printing a
single PASS/FAIL line with its runtime (run pytest with -s to see them all).

Every numeric check here is exact; the printed runtimes document that the
sweeps stay within their expected budgets.
"""

import random
import time
from contextlib import contextmanager

from diffkit.cli import doc_to_family, family_to_doc, main, read_doc, verify_doc, write_doc
from diffkit.constructions import (
    cdf_4_lambda,
    parametric_layer,
    pdf_3_1,
    pdf_4_1,
    pdf_4_2,
    pdf_4_3,
    pdf_4_6,
    pdf_4_lambda,
    psds_4_3,
    psds_lift_c3_to_c1,
)
from diffkit.derive import (
    dts_from_pdf,
    gdp_from_pdfs_pdm,
    goc_from_gdp,
    graceful_from_pdf,
    ooc_from_pdf,
    pdm_from_asp,
    pdm_with_baseline_row,
)
from diffkit.groupring import builtin_layered, layered_instance, verify_ldf, verify_pldf
from diffkit.search import (
    EXHAUSTED,
    SOLUTION,
    CoverProblem,
    complete_cover,
    search_asp3,
    search_small_cdf,
    search_small_pdf,
)
from diffkit.verify import (
    verify_cdf,
    verify_goc,
    verify_graceful_windmill,
    verify_ooc,
    verify_pdf,
    verify_psds,
)


@contextmanager
def criterion(num: int, description: str):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num:>2} FAIL  {description}")
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {num:>2} PASS  ({elapsed:6.1f}s)  {description}")


def test_criterion_1_psds_sweep():
    with criterion(1, "threshold-3 systems verify for every m in 5..200"):
        for m in range(5, 201):
            family = psds_4_3(m)
            assert len(family.blocks) == m
            cert = verify_psds(family.blocks, 3)
            assert cert.passed, (m, cert.witnesses[:3])
            assert max(cert.coverage) == 6 * m + 2


def test_criterion_2_pdf_lambda_1_sweep():
    with criterion(2, "(v,4,1) families verify for v = 1 (mod 12), 13..2413, v != 25, 37"):
        for v in range(13, 2414, 12):
            if v in (25, 37):
                continue
            family = pdf_4_1(v)
            assert len(family.blocks) == (v - 1) // 12
            cert = verify_pdf(family.blocks, v, 4, 1)
            assert cert.passed, (v, cert.witnesses[:3])


def test_criterion_3_pdf_lambda_2_3_6_sweeps():
    with criterion(3, "(v,4,lambda) families verify for lambda = 2, 3, 6 up to 1500"):
        for v in range(13, 1501, 6):
            cert = verify_pdf(pdf_4_2(v).blocks, v, 4, 2)
            assert cert.passed, ("lambda=2", v, cert.witnesses[:3])
        for v in range(13, 1501, 4):
            cert = verify_pdf(pdf_4_3(v).blocks, v, 4, 3)
            assert cert.passed, ("lambda=3", v, cert.witnesses[:3])
        for v in range(13, 1501, 2):
            cert = verify_pdf(pdf_4_6(v).blocks, v, 4, 6)
            assert cert.passed, ("lambda=6", v, cert.witnesses[:3])


def test_criterion_4_pdf_general_lambda():
    with criterion(4, "(v,4,lambda) families verify for all admissible pairs, v <= 500, lambda <= 12"):
        checked = 0
        for v in range(13, 501, 2):
            for lam in range(1, 13):
                if lam * (v - 1) % 12 != 0:
                    continue
                if lam == 1 and v in (25, 37):
                    continue
                family = pdf_4_lambda(v, lam)
                assert len(family.blocks) == lam * (v - 1) // 12
                cert = verify_pdf(family.blocks, v, 4, lam)
                assert cert.passed, (v, lam, cert.witnesses[:3])
                checked += 1
        assert checked >= 1000
        # the two lambda = 1 exceptions are reachable for every lambda >= 2
        for v in (25, 37):
            for lam in range(2, 13):
                assert verify_pdf(pdf_4_lambda(v, lam).blocks, v, 4, lam).passed


def test_criterion_5_cdf_general_lambda():
    with criterion(5, "(v,4,lambda) cyclic families verify for all admissible pairs, v <= 300"):
        checked = halved = 0
        for v in range(4, 301):
            for lam in range(1, 13):
                if lam * (v - 1) % 12 != 0 or (v, lam) == (25, 1):
                    continue
                family = cdf_4_lambda(v, lam)
                assert len(family.blocks) == lam * (v - 1) // 12
                cert = verify_cdf(family.blocks, v, 4, lam)
                assert cert.passed, (v, lam, cert.witnesses[:3])
                checked += 1
                if v % 2 == 0 and v > 9:
                    halved += 1
        assert checked >= 900 and halved > 100  # halving route exercised


def test_criterion_6_layered_builtins():
    with criterion(6, "all six layered builtins verify; the order-72 family is not perfect"):
        catalog = builtin_layered()
        assert len(catalog) == 6
        for inst in catalog.values():
            checker = verify_ldf if inst.kind == "LDF" else verify_pldf
            assert checker(inst.blocks, inst.v, inst.k, inst.lam).passed, inst.name
            assert len(inst.blocks) == inst.lam * inst.v // (inst.k * (inst.k - 1))
        assert not verify_pldf(layered_instance("(72,4,1)-LDF").blocks, 72, 4, 1).passed


def test_criterion_7_structural_link():
    with criterion(7, "parametric t-coefficients form the four perfect layered families"):
        expected = {
            "psds43": "(108,4,1)-PLDF",
            "pdf42": "(36,4,2)-PLDF",
            "pdf43": "(24,4,3)-PLDF",
            "pdf46": "(12,4,6)-PLDF",
        }
        for kind, name in expected.items():
            v, k, lam, blocks = parametric_layer(kind)
            assert blocks == layered_instance(name).blocks
            assert verify_pldf(blocks, v, k, lam).passed, kind


def test_criterion_8_nonexistence():
    with criterion(8, "exact cover proves (25,4,1) and (37,4,1) empty; finds (13,4,1)"):
        for v, blocks in ((25, 2), (37, 3)):
            problem = CoverProblem.from_counts(
                {d: 1 for d in range(1, (v - 1) // 2 + 1)}, blocks, 4, (v - 1) // 2
            )
            result = complete_cover(problem)
            assert result.status == EXHAUSTED, v
            assert result.elapsed_ms < 10_000
        result = search_small_pdf(13, 4, 1)
        assert result.status == SOLUTION
        assert verify_pdf(result.blocks, 13, 4, 1).passed


def test_criterion_9_pdf_block_size_3():
    with criterion(9, "(v,3,1) families verify across both congruence classes up to 2407"):
        for v in range(25, 2402, 24):
            cert = verify_pdf(pdf_3_1(v).blocks, v, 3, 1)
            assert cert.passed, (v, cert.witnesses[:3])
        for v in range(55, 2408, 24):
            cert = verify_pdf(pdf_3_1(v).blocks, v, 3, 1)
            assert cert.passed, (v, cert.witnesses[:3])


def test_criterion_10_applications():
    with criterion(10, "triangle sets, optical codes, labelings, and the grid-code pipeline"):
        for m in range(1, 101):
            if m in (2, 3):
                continue
            pdf = pdf_4_1(12 * m + 1)
            dts = dts_from_pdf(pdf)
            assert max(row[-1] for row in dts.blocks) == 6 * m, m

        pdf49 = pdf_4_1(49)
        for n in range(49, 61):
            ooc = ooc_from_pdf(pdf49, n)
            cert = verify_ooc(ooc.blocks, n, 4)
            assert cert.passed and cert.extra["j_optimal"] and cert.extra["size"] == 4, n

        for m in range(1, 101):
            if m in (2, 3):
                continue
            labeling = graceful_from_pdf(pdf_4_1(12 * m + 1))
            assert verify_graceful_windmill(labeling.common, labeling.cliques).passed, m

        asp = search_asp3(13)
        assert asp.status == SOLUTION
        pdm = pdm_with_baseline_row(pdm_from_asp(asp.family))
        pdf13 = pdf_4_1(13)
        gdp = gdp_from_pdfs_pdm(pdf13, pdf13, pdm)
        goc = goc_from_gdp(gdp)
        assert len(goc.blocks) == (2 * 49 - 14) // 6 == 14
        assert verify_goc(goc.blocks, 7, 7, 4).passed


def test_criterion_11_property_suites(tmp_path):
    with criterion(11, "cross-verifier, bridge, round-trip, soundness, and perturbation suites"):
        # every perfect family also verifies as a cyclic family
        for v, lam in ((13, 1), (49, 1), (55, 2), (29, 3), (23, 6), (25, 5), (37, 12)):
            family = pdf_4_lambda(v, lam)
            assert verify_cdf(family.blocks, v, 4, lam).passed, (v, lam)

        # threshold-1 systems over m blocks are (12m+1,4,1) perfect families
        # and conversely
        for m in range(5, 51):
            lifted = psds_lift_c3_to_c1(psds_4_3(m))
            v = 12 * (m + 1) + 1
            assert verify_pdf(lifted.blocks, v, 4, 1).passed, m
        for m in range(1, 51):
            if m in (2, 3):
                continue
            cert = verify_psds(pdf_4_1(12 * m + 1).blocks, 1)
            assert cert.passed, m

        # construct -> write -> read -> write is byte-identical and the
        # certificate verdict survives the round trip
        first, second = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["construct", "pdf4", "--v", "73", "--lambda", "2", "--out", str(first)]) == 0
        doc = read_doc(first)
        family = doc_to_family(doc)
        cert = verify_doc(doc)
        assert cert.passed == doc["certificate"]["pass"] is True
        write_doc(second, family_to_doc(family, cert))
        assert first.read_bytes() == second.read_bytes()

        # everything a search returns re-verifies
        assert verify_pdf(search_small_pdf(13, 4, 1).blocks, 13, 4, 1).passed
        assert verify_pdf(search_small_pdf(49, 4, 1).blocks, 49, 4, 1).passed
        assert verify_cdf(search_small_cdf(37, 4).blocks, 37, 4, 1).passed

        # randomized perturbations must always be caught
        rng = random.Random(2024)
        families = [
            ("PSDS", psds_4_3(19).blocks, lambda b: verify_psds(b, 3)),
            ("PDF", pdf_4_1(97).blocks, lambda b: verify_pdf(b, 97, 4, 1)),
            ("PDF6", pdf_4_6(27).blocks, lambda b: verify_pdf(b, 27, 4, 6)),
            ("CDF", cdf_4_lambda(26, 12).blocks, lambda b: verify_cdf(b, 26, 4, 12)),
        ]
        for _ in range(25):
            name, blocks, check = families[rng.randrange(len(families))]
            mutated = [list(b) for b in blocks]
            target = rng.randrange(len(mutated))
            mutated[target][-1] += rng.randrange(1, 6)
            try:
                cert = check([tuple(b) for b in mutated])
                assert not cert.passed, name
            except ValueError:
                pass  # perturbation broke block validity outright: also caught
