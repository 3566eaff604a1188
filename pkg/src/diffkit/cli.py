"""Command-line front end: construct, verify, sweep, and search.

File format: one JSON document per family, UTF-8, sorted keys, LF line
endings.  Symbolic blocks are always instantiated before writing, so every
file is independently re-checkable by third-party scripts.

Exit codes: 0 pass, 1 verification fail, 2 inadmissible parameters or
unusable input, 3 known-nonexistent, 4 budget-inconclusive.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .core import (
    Family,
    InadmissibleError,
    InvalidBlockError,
    InvalidFamilyError,
    NonexistentError,
)
from .constructions import (
    cdf_4_lambda,
    pdf_3_1,
    pdf_4_1,
    pdf_4_lambda,
    psds_4_3,
    psds_lift_c3_to_c1,
)
from .derive import (
    Labeling,
    asp2,
    dts_from_pdf,
    gdp_from_pdfs_pdm,
    goc_from_gdp,
    graceful_from_pdf,
    ooc_from_pdf,
    pdm_from_asp,
    pdm_with_baseline_row,
)
from .search import (
    EXHAUSTED,
    SOLUTION,
    SearchBudget,
    search_asp3,
    search_small_cdf,
    search_small_pdf,
)
from .verify import Certificate, verify_family, verify_graceful_windmill

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INADMISSIBLE = 2
EXIT_NONEXISTENT = 3
EXIT_INCONCLUSIVE = 4

BUDGET_ENV = "DIFFKIT_BUDGET_MS"


# ---------------------------------------------------------------------------
# File format


def _canonical_bytes(doc: dict) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def family_to_doc(family: Family, certificate: Certificate | None = None) -> dict:
    doc = {
        "kind": family.kind,
        "params": dict(family.params),
        "blocks": [[list(p) if isinstance(p, tuple) else p for p in b] for b in family.blocks],
        "provenance": family.provenance,
    }
    if certificate is not None:
        doc["certificate"] = certificate.to_json_dict()
    return doc


def labeling_to_doc(labeling: Labeling, certificate: Certificate | None = None) -> dict:
    doc = {
        "kind": "LABELING",
        "params": {"m": labeling.m},
        "common": labeling.common,
        "cliques": [list(c) for c in labeling.cliques],
        "provenance": "derived",
    }
    if certificate is not None:
        doc["certificate"] = certificate.to_json_dict()
    return doc


def write_doc(path: str | Path, doc: dict) -> None:
    Path(path).write_bytes(_canonical_bytes(doc))


def read_doc(path: str | Path) -> dict:
    text = Path(path).read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InvalidFamilyError(
            f"{path}: parse error at line {err.lineno}, column {err.colno}: {err.msg}"
        ) from err


def doc_to_family(doc: dict) -> Family:
    kind = doc.get("kind")
    blocks = doc.get("blocks", [])
    if kind in ("GDP", "GOC"):
        parsed = tuple(tuple((int(x), int(y)) for x, y in b) for b in blocks)
    else:
        parsed = tuple(tuple(int(e) for e in b) for b in blocks)
    return Family(kind, dict(doc.get("params", {})), parsed, doc.get("provenance", "paper"))


def verify_doc(doc: dict) -> Certificate:
    if doc.get("kind") == "LABELING":
        cliques = tuple(tuple(int(x) for x in c) for c in doc.get("cliques", ()))
        return verify_graceful_windmill(int(doc.get("common", 0)), cliques)
    return verify_family(doc_to_family(doc))


# ---------------------------------------------------------------------------
# construct


def _default_budget(args) -> SearchBudget:
    wall = getattr(args, "ms", None)
    if wall is None:
        wall = int(os.environ.get(BUDGET_ENV, 60_000))
    nodes = getattr(args, "nodes", None) or 100_000_000
    return SearchBudget(node_limit=nodes, wall_ms=wall)


def _need(args, *names: str) -> list[int]:
    values = []
    for name in names:
        value = getattr(args, name, None)
        if value is None:
            raise InadmissibleError(f"--{name} is required for this target")
        values.append(value)
    return values


def _construct_object(args):
    kind = args.object
    if kind == "pdf3":
        return pdf_3_1(*_need(args, "v"))
    if kind == "pdf4":
        return pdf_4_lambda(*_need(args, "v"), args.lam)
    if kind == "cdf4":
        return cdf_4_lambda(*_need(args, "v"), args.lam)
    if kind == "psds43":
        return psds_4_3(*_need(args, "m"))
    if kind == "psds41":
        (m,) = _need(args, "m")
        if m < 6:
            raise InadmissibleError(f"threshold-1 systems need m >= 6, got m = {m}")
        return psds_lift_c3_to_c1(psds_4_3(m - 1))
    if kind == "dts":
        return dts_from_pdf(pdf_4_1(*_need(args, "v")))
    if kind == "ooc":
        v, n = _need(args, "v", "n")
        return ooc_from_pdf(pdf_4_1(v), n)
    if kind == "asp2":
        return asp2(*_need(args, "n"))
    if kind == "pdm":
        return pdm_from_asp(asp2(*_need(args, "n")))
    if kind == "graceful":
        (m,) = _need(args, "m")
        return graceful_from_pdf(pdf_4_1(12 * m + 1))
    if kind == "goc":
        n1, n2 = _need(args, "n1", "n2")
        u1, u2 = 2 * n1 - 1, 2 * n2 - 1
        result = search_asp3(u2, _default_budget(args))
        if result.status != SOLUTION:
            raise TimeoutError(f"additive-triple search over n = {u2}: {result.status}")
        pdm = pdm_with_baseline_row(pdm_from_asp(result.family))
        gdp = gdp_from_pdfs_pdm(pdf_4_1(u1), pdf_4_1(u2), pdm)
        return goc_from_gdp(gdp)
    raise InadmissibleError(f"unknown construct target {kind!r}")


def cmd_construct(args) -> int:
    try:
        obj = _construct_object(args)
    except NonexistentError as err:
        print(f"known nonexistent: {err}", file=sys.stderr)
        return EXIT_NONEXISTENT
    except (InadmissibleError, InvalidFamilyError, InvalidBlockError, LookupError) as err:
        print(f"inadmissible: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    except TimeoutError as err:
        print(f"inconclusive: {err}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    if isinstance(obj, Labeling):
        cert = verify_graceful_windmill(obj.common, obj.cliques)
        doc = labeling_to_doc(obj, cert)
    else:
        cert = verify_family(obj)
        doc = family_to_doc(obj, cert)
    if not cert.passed:
        print("constructed object failed verification", file=sys.stderr)
        return EXIT_FAIL
    if args.binary and obj.kind == "OOC":
        n = obj.params["n"]
        doc["words"] = ["".join("1" if i in set(b) else "0" for i in range(n)) for b in obj.blocks]
    payload = _canonical_bytes(doc)
    if args.out:
        Path(args.out).write_bytes(payload)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    try:
        doc = read_doc(args.file)
        cert = verify_doc(doc)
    except (InvalidFamilyError, InvalidBlockError, InadmissibleError, KeyError) as err:
        print(f"unusable input: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    sys.stdout.write(_canonical_bytes(cert.to_json_dict()).decode("utf-8"))
    return EXIT_PASS if cert.passed else EXIT_FAIL


# ---------------------------------------------------------------------------
# sweep


def _parse_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    if not sep:
        value = int(text)
        return range(value, value + 1)
    return range(int(lo), int(hi) + 1)


def _sweep_instance(kind: str, params: tuple[int, ...]) -> dict:
    t0 = time.perf_counter()
    try:
        if kind == "psds43":
            family = psds_4_3(params[0])
        elif kind == "pdf3":
            family = pdf_3_1(params[0])
        elif kind == "pdf4lambda":
            family = pdf_4_lambda(params[0], params[1])
        elif kind == "cdf4lambda":
            family = cdf_4_lambda(params[0], params[1])
        else:
            raise InadmissibleError(f"unknown sweep kind {kind!r}")
        cert = verify_family(family)
        status = "pass" if cert.passed else "fail"
    except NonexistentError:
        status = "skipped-nonexistent"
    except (InadmissibleError, LookupError):
        status = "skipped-inadmissible"
    ms = int((time.perf_counter() - t0) * 1000)
    return {"kind": kind, "params": list(params), "status": status, "elapsed_ms": ms}


def cmd_sweep(args) -> int:
    kind = args.object
    try:
        if kind == "psds43":
            (mrange,) = _need(args, "m")
            points = [(m,) for m in _parse_range(mrange)]
        elif kind == "pdf3":
            (vrange,) = _need(args, "v")
            points = [(v,) for v in _parse_range(vrange)]
        else:
            (vrange,) = _need(args, "v")
            lams = _parse_range(args.lam) if args.lam else range(1, 2)
            points = [(v, lam) for v in _parse_range(vrange) for lam in lams]
    except (InadmissibleError, ValueError) as err:
        print(f"inadmissible: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    t0 = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_instance, [kind] * len(points), points, chunksize=16))
    else:
        rows = [_sweep_instance(kind, p) for p in points]
    failed = [r for r in rows if r["status"] == "fail"]
    attempted = [r for r in rows if r["status"] in ("pass", "fail")]
    report = {
        "kind": kind,
        "instances": rows,
        "attempted": len(attempted),
        "passed": len(attempted) - len(failed),
        "failed": len(failed),
        "skipped": len(rows) - len(attempted),
        "pass": not failed and bool(attempted),
        "elapsed_ms": int((time.perf_counter() - t0) * 1000),
    }
    if args.out:
        write_doc(args.out, report)
    for row in failed[:20]:
        print(f"FAIL {row['params']}", file=sys.stderr)
    print(
        f"sweep {kind}: {report['passed']}/{report['attempted']} pass, "
        f"{report['skipped']} skipped, {report['elapsed_ms']} ms"
    )
    return EXIT_PASS if report["pass"] else EXIT_FAIL


# ---------------------------------------------------------------------------
# search


def cmd_search(args) -> int:
    budget = _default_budget(args)
    try:
        if args.object == "pdf":
            result = search_small_pdf(*_need(args, "v"), args.k, args.lam, budget)
        elif args.object == "cdf":
            result = search_small_cdf(*_need(args, "v"), args.k, budget)
        elif args.object == "asp3":
            result = search_asp3(*_need(args, "n"), budget)
        else:
            raise InadmissibleError(f"unknown search target {args.object!r}")
    except InadmissibleError as err:
        print(f"inadmissible: {err}", file=sys.stderr)
        return EXIT_INADMISSIBLE
    doc = result.report()
    if result.family is not None:
        doc["family"] = family_to_doc(result.family)
    payload = _canonical_bytes(doc)
    if args.out:
        Path(args.out).write_bytes(payload)
    sys.stdout.write(payload.decode("utf-8"))
    if result.status == SOLUTION:
        return EXIT_PASS
    if result.status == EXHAUSTED:
        print("exhausted: no object exists in the canonical search space", file=sys.stderr)
        return EXIT_NONEXISTENT
    print("inconclusive: budget exceeded", file=sys.stderr)
    return EXIT_INCONCLUSIVE


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diffkit",
        description="construct, verify, sweep, and search perfect difference families "
        "and their application objects",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    con = sub.add_parser("construct", help="build one object and emit its family file")
    con.add_argument("object", choices=[
        "pdf3", "pdf4", "cdf4", "psds43", "psds41", "dts", "ooc", "asp2", "pdm",
        "graceful", "goc",
    ])
    con.add_argument("--v", type=int, help="order of the underlying family")
    con.add_argument("--lambda", dest="lam", type=int, default=1, help="coverage multiplicity")
    con.add_argument("--m", type=int, help="number of base blocks / windmill copies")
    con.add_argument("--n", type=int, help="code length or permutation degree")
    con.add_argument("--n1", type=int, help="first grid dimension (goc)")
    con.add_argument("--n2", type=int, help="second grid dimension (goc)")
    con.add_argument("--nodes", type=int, help="search node limit (goc)")
    con.add_argument("--ms", type=int, help="search wall-clock limit in ms (goc)")
    con.add_argument("--binary", action="store_true", help="also emit 0/1 codeword strings (ooc)")
    con.add_argument("--out", help="write the family file here instead of stdout")
    con.set_defaults(func=cmd_construct)

    ver = sub.add_parser("verify", help="verify a family file and print its certificate")
    ver.add_argument("file")
    ver.set_defaults(func=cmd_verify)

    swp = sub.add_parser("sweep", help="construct+verify over a parameter range")
    swp.add_argument("object", choices=["psds43", "pdf3", "pdf4lambda", "cdf4lambda"])
    swp.add_argument("--m", help="m range, e.g. 5..200")
    swp.add_argument("--v", help="v range, e.g. 13..500")
    swp.add_argument("--lambda", dest="lam", help="lambda range, e.g. 1..12")
    swp.add_argument("--jobs", type=int, default=1, help="parallel workers")
    swp.add_argument("--out", help="write the full sweep report here")
    swp.set_defaults(func=cmd_sweep)

    sea = sub.add_parser("search", help="exact-cover / backtracking search")
    sea.add_argument("object", choices=["pdf", "cdf", "asp3"])
    sea.add_argument("--v", type=int, help="order")
    sea.add_argument("--k", type=int, default=4, help="block size")
    sea.add_argument("--lambda", dest="lam", type=int, default=1, help="coverage multiplicity")
    sea.add_argument("--n", type=int, help="permutation degree (asp3)")
    sea.add_argument("--nodes", type=int, help="node limit")
    sea.add_argument("--ms", type=int, help=f"wall-clock limit in ms (default ${BUDGET_ENV} or 60000)")
    sea.add_argument("--out", help="write the search report here")
    sea.set_defaults(func=cmd_search)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
