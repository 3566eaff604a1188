"""CLI contract: file format round trips, exit codes, sweeps, search."""

import json

from diffkit.cli import (
    EXIT_FAIL,
    EXIT_INADMISSIBLE,
    EXIT_INCONCLUSIVE,
    EXIT_NONEXISTENT,
    EXIT_PASS,
    doc_to_family,
    family_to_doc,
    main,
    read_doc,
    verify_doc,
    write_doc,
)


def test_construct_verify_roundtrip(tmp_path):
    out = tmp_path / "psds12.json"
    assert main(["construct", "psds43", "--m", "12", "--out", str(out)]) == EXIT_PASS
    doc = read_doc(out)
    assert doc["kind"] == "PSDS"
    assert doc["params"] == {"m": 12, "k": 4, "c": 3}
    assert doc["certificate"]["pass"] is True
    assert main(["verify", str(out)]) == EXIT_PASS


def test_roundtrip_is_byte_identical(tmp_path):
    first = tmp_path / "a.json"
    second = tmp_path / "b.json"
    assert main(["construct", "pdf4", "--v", "49", "--lambda", "2", "--out", str(first)]) == EXIT_PASS
    family = doc_to_family(read_doc(first))
    write_doc(second, family_to_doc(family, verify_doc(read_doc(first))))
    assert first.read_bytes() == second.read_bytes()


def test_exit_codes(tmp_path):
    assert main(["construct", "pdf4", "--v", "25", "--lambda", "1"]) == EXIT_NONEXISTENT
    assert main(["construct", "pdf4", "--v", "24", "--lambda", "1"]) == EXIT_INADMISSIBLE
    assert main(["construct", "pdf4", "--v", "13"]) == EXIT_PASS
    assert main(["construct", "psds43"]) == EXIT_INADMISSIBLE  # missing --m

    broken = tmp_path / "broken.json"
    out = tmp_path / "ok.json"
    assert main(["construct", "psds43", "--m", "8", "--out", str(out)]) == EXIT_PASS
    doc = read_doc(out)
    doc["blocks"] = doc["blocks"][1:]  # drop one block: coverage now has holes
    write_doc(broken, doc)
    assert main(["verify", str(broken)]) == EXIT_FAIL


def test_verify_reports_uncovered_witnesses(tmp_path, capsys):
    out = tmp_path / "fam.json"
    main(["construct", "psds43", "--m", "6", "--out", str(out)])
    doc = read_doc(out)
    doc["blocks"] = doc["blocks"][:-1]
    write_doc(out, doc)
    capsys.readouterr()
    assert main(["verify", str(out)]) == EXIT_FAIL
    cert = json.loads(capsys.readouterr().out)
    assert cert["pass"] is False
    assert cert["witnesses"]


def test_parse_error_diagnostics(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "PDF", blocks: []}')
    assert main(["verify", str(bad)]) == EXIT_INADMISSIBLE
    err = capsys.readouterr().err
    assert "line 1" in err and "column" in err


def test_search_command_exit_codes(tmp_path, capsys):
    assert main(["search", "pdf", "--v", "37", "--k", "4", "--lambda", "1"]) == EXIT_NONEXISTENT
    assert main(["search", "pdf", "--v", "13", "--k", "4", "--lambda", "1"]) == EXIT_PASS
    assert main(["search", "pdf", "--v", "37", "--k", "4", "--lambda", "1", "--nodes", "5"]) == EXIT_INCONCLUSIVE
    capsys.readouterr()
    out = tmp_path / "asp.json"
    assert main(["search", "asp3", "--n", "9", "--out", str(out)]) == EXIT_NONEXISTENT
    assert read_doc(out)["status"] == "exhausted"


def test_sweep_summary(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(["sweep", "psds43", "--m", "5..40", "--out", str(report_path)])
    assert code == EXIT_PASS
    report = read_doc(report_path)
    assert report["pass"] is True
    assert report["attempted"] == 36
    assert report["failed"] == 0


def test_sweep_skips_inadmissible_and_nonexistent(tmp_path):
    report_path = tmp_path / "report.json"
    code = main(["sweep", "pdf4lambda", "--v", "13..43", "--lambda", "1..2", "--out", str(report_path)])
    assert code == EXIT_PASS
    report = read_doc(report_path)
    statuses = {tuple(r["params"]): r["status"] for r in report["instances"]}
    assert statuses[(25, 1)] == "skipped-nonexistent"
    assert statuses[(14, 1)] == "skipped-inadmissible"
    assert statuses[(13, 1)] == "pass"
    assert statuses[(19, 2)] == "pass"


def test_sweep_parallel_matches_serial(tmp_path):
    serial = tmp_path / "serial.json"
    parallel = tmp_path / "parallel.json"
    assert main(["sweep", "psds43", "--m", "5..30", "--out", str(serial)]) == EXIT_PASS
    assert main(["sweep", "psds43", "--m", "5..30", "--jobs", "4", "--out", str(parallel)]) == EXIT_PASS
    pick = lambda doc: [(r["params"], r["status"]) for r in doc["instances"]]
    assert pick(read_doc(serial)) == pick(read_doc(parallel))


def test_ooc_binary_emission(capsys):
    assert main(["construct", "ooc", "--v", "13", "--n", "13", "--binary"]) == EXIT_PASS
    doc = json.loads(capsys.readouterr().out)
    assert doc["words"] == ["1010011000000"]


def test_labeling_file_roundtrip(tmp_path):
    out = tmp_path / "windmill.json"
    assert main(["construct", "graceful", "--m", "6", "--out", str(out)]) == EXIT_PASS
    doc = read_doc(out)
    assert doc["kind"] == "LABELING"
    assert doc["params"]["m"] == 6
    assert main(["verify", str(out)]) == EXIT_PASS


def test_goc_pipeline_cli(tmp_path):
    out = tmp_path / "goc.json"
    assert main(["construct", "goc", "--n1", "7", "--n2", "7", "--out", str(out)]) == EXIT_PASS
    doc = read_doc(out)
    assert doc["kind"] == "GOC"
    assert len(doc["blocks"]) == 14
    assert main(["verify", str(out)]) == EXIT_PASS
