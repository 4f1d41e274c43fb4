"""Command-line entry point: reproducible construction, verification, export.

Subcommands
-----------
build    synthesize the frame for odd n, certify it, write matrix files,
         a certificate, and a run manifest (exit 0 on OPTIMAL)
verify   certify a frame or Gram matrix, either rebuilt from n or parsed
         from a file; full or sampled mode
search   enumerate constant-degree parameter candidates as CSV
chartab  emit the exact character table as JSON
gram     compute the Gram matrix by one or more routes and cross-compare
srg      build the 2-class scheme of a strongly regular graph and
         certify the ETF cut out by its designated idempotent

Exit codes: 0 success / verified, 1 mathematical violation, 2 usage or
parse error.  Content files contain no timestamps and identical
invocations produce byte-identical files; wall time and other
environment-dependent metadata live only in the manifest.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import bgroup, chartab, etf, gf2n, heis, scheme, search

DEFAULT_SEED = 1
_FULL_BUILD_MAX_N = 5


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="ascii")


def _contexts(n: int):
    field = gf2n.FieldContext(n)
    group = bgroup.GroupContext(field)
    rep = heis.RepContext(group)
    table = chartab.build_character_table(group, rep)
    return field, group, rep, table


def _check_build_n(n: int) -> None:
    if n % 2 == 0:
        raise UsageError("n must be odd")
    if not 3 <= n <= 9:
        raise UsageError("n must satisfy 3 <= n <= 9")


# ---------------------------------------------------------------------------
# build
# ---------------------------------------------------------------------------

def cmd_build(args) -> int:
    _check_build_n(args.n)
    t0 = time.monotonic()
    out = Path(args.out or os.environ.get("LINEPACK_OUT", f"linepack_n{args.n}"))
    out.mkdir(parents=True, exist_ok=True)
    field, group, rep, table = _contexts(args.n)
    m, num_vectors = etf.frame_dimensions(args.n)
    _, welch_par = etf.welch_bound_sq(m, num_vectors)
    outputs = []

    if args.n <= _FULL_BUILD_MAX_N:
        frame = etf.synthesize_frame(group, rep)
        gram = etf.gram_from_frame(frame, threads=args.threads)
        cert = etf.verify_frame(frame, threads=args.threads, gram=gram)
        etf.write_frame_file(out / "frame.mat", frame)
        outputs.append("frame.mat")
        etf.write_gram_file(out / "gram.mat", gram)
        outputs.append("gram.mat")
        if args.float_export:
            np.save(out / "frame_float.npy", frame.to_complex())
            outputs.append("frame_float.npy")
        ok = cert.verdict == "OPTIMAL"
        cert_dict = cert.to_json_dict()
        sample_info = None
    else:
        print(f"n={args.n}: full Gram verification skipped; "
              "writing the frame and a sampled closed-form cross-check",
              file=sys.stderr)
        etf.write_frame_file_streaming(out / "frame.mat", group, rep)
        outputs.append("frame.mat")
        report = etf.three_way_sampled(group, table, rep,
                                       min_entries=args.samples,
                                       seed=args.seed, threads=args.threads)
        ok = report["agree"] and report["pattern_ok"]
        sample_info = report
        cert_dict = {
            "m": m, "numVectors": num_vectors, "mode": "sample",
            "noViolation": ok, "welchSquaredParseval": _frac_str(welch_par),
        }
        _write_json(out / "sample_plan.json", {
            "method": "closed-form-crosscheck", "n": args.n,
            "seed": args.seed, "requestedEntries": args.samples,
            "results": {k: v for k, v in report.items() if k != "mismatches"},
        })
        outputs.append("sample_plan.json")

    _write_json(out / "certificate.json", cert_dict)
    outputs.append("certificate.json")
    manifest = {
        "command": "build",
        "parameters": {"n": args.n, "threads": args.threads,
                       "seed": args.seed if args.n > _FULL_BUILD_MAX_N else None},
        "n": args.n,
        "k": field.k,
        "modulus": field.modulus,
        "m": m,
        "numVectors": num_vectors,
        "welch_sq": _frac_str(welch_par),
        "ordering": "lex-xy",
        "d_order": "gamma-asc",
        "outputs": outputs,
        "sha256": {name: _sha256(out / name) for name in outputs},
        "certificate": cert_dict,
        "sample": sample_info,
        "wall_time_s": round(time.monotonic() - t0, 3),
    }
    _write_json(out / "manifest.json", manifest)
    print(json.dumps(cert_dict, indent=2, sort_keys=True))
    if not ok:
        raise VerificationFailure("certification failed; see certificate.json")
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _verify_from_file(args) -> int:
    mat = etf.read_matrix_file(args.infile)
    cert = etf.verify_etf(mat, threads=args.threads)
    print(json.dumps(cert.to_json_dict(), indent=2, sort_keys=True))
    if cert.verdict != "OPTIMAL":
        where = cert.cross_checks.get("parsevalDefect") \
            or cert.cross_checks.get("projectionDefect")
        at = f" at entry ({where[0]}, {where[1]})" if where else ""
        raise VerificationFailure(f"{cert.failure}{at}")
    return 0


def _verify_from_n(args) -> int:
    _check_build_n(args.n)
    mode = args.mode or ("full" if args.n <= _FULL_BUILD_MAX_N else "sample")
    _, group, rep, table = _contexts(args.n)
    if mode == "full":
        if args.n > _FULL_BUILD_MAX_N and not args.force_full:
            raise UsageError(
                f"full verification at n={args.n} materializes a "
                f"{group.order}x{group.order} Gram matrix; pass --force-full "
                "if you really have the memory")
        frame = etf.synthesize_frame(group, rep)
        gram = etf.gram_from_frame(frame, threads=args.threads)
        cert = etf.verify_frame(frame, threads=args.threads, gram=gram)
        mismatches = {
            "frame_vs_character": etf.first_mismatch(gram, etf.gram_character(group, table)),
            "frame_vs_closedForm": etf.first_mismatch(gram, etf.gram_closed_form(group)),
        }
        agree = all(v is None for v in mismatches.values())
        print(json.dumps({"threeWay": agree, "entries": group.order ** 2,
                          **cert.to_json_dict()}, indent=2, sort_keys=True))
        if not agree:
            raise VerificationFailure(f"gram routes disagree: {mismatches}")
        if cert.verdict != "OPTIMAL":
            raise VerificationFailure(cert.failure or "certification failed")
        return 0
    report = etf.three_way_sampled(group, table, rep, min_entries=args.samples,
                                   seed=args.seed, threads=args.threads)
    print(json.dumps({k: v for k, v in report.items() if k != "mismatches"},
                     indent=2, sort_keys=True))
    if not (report["agree"] and report["pattern_ok"]):
        raise VerificationFailure(f"sampled verification failed: {report['mismatches']}")
    return 0


def cmd_verify(args) -> int:
    if (args.infile is None) == (args.n is None):
        raise UsageError("give exactly one of --n or --in")
    if args.infile is not None:
        return _verify_from_file(args)
    return _verify_from_n(args)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def cmd_search(args) -> int:
    try:
        tuples = search.enumerate_tuples(args.max_order,
                                         nonabelian_orders_only=args.nonabelian_orders_only)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.suzuki_filters:
        suzuki = {}
        for t in tuples:
            if t.n != 64:
                continue
            if not suzuki:
                _, group, _, table = _contexts(3)
                suzuki = {
                    "sizes": group.class_sizes(),
                    "index": group.order // len(group.commutator_subgroup),
                    "table": table,
                }
            t.verdicts["classes"] = search.conjugacy_size_filter(
                t, suzuki["sizes"], suzuki["index"])
            t.verdicts["chars"] = search.character_sum_filter(t, suzuki["table"])
    csv_text = search.tuples_to_csv(tuples)
    summary = f"{len(tuples)} tuples with max order {args.max_order}"
    if args.out:
        Path(args.out).write_text(csv_text, encoding="ascii")
        print(summary)
    else:
        sys.stdout.write(csv_text)
        print(summary, file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# chartab / gram / srg
# ---------------------------------------------------------------------------

def cmd_chartab(args) -> int:
    _check_build_n(args.n)
    if args.n > 7:
        raise UsageError("character tables are emitted for n <= 7")
    table = _contexts(args.n)[3]
    payload = table.to_json_dict()
    payload["orthogonality"] = {"rows": "exact", "columns": "exact"}
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return 0


def cmd_gram(args) -> int:
    _check_build_n(args.n)
    if args.n > _FULL_BUILD_MAX_N:
        raise UsageError(f"full Gram matrices are materialized for n <= {_FULL_BUILD_MAX_N}; "
                         "use `verify --mode sample` beyond that")
    methods = [m.strip() for m in args.method.split(",") if m.strip()]
    known = {"closed-form", "character", "frame"}
    bad = set(methods) - known
    if bad or not methods:
        raise UsageError(f"unknown gram methods {sorted(bad)}; choose from {sorted(known)}")
    _, group, rep, table = _contexts(args.n)
    mats = {}
    for meth in methods:
        if meth == "closed-form":
            mats[meth] = etf.gram_closed_form(group)
        elif meth == "character":
            mats[meth] = etf.gram_character(group, table)
        else:
            mats[meth] = etf.gram_from_frame(etf.synthesize_frame(group, rep),
                                             threads=args.threads)
    names = sorted(mats)
    first = mats[names[0]]
    for other in names[1:]:
        bad_at = etf.first_mismatch(first, mats[other])
        if bad_at is not None:
            print(f"DISAGREE ({names[0]} vs {other}) at entry {bad_at}")
            raise VerificationFailure("gram routes disagree")
    entries = group.order ** 2
    print(f"AGREE ({entries} entries)" if len(names) > 1
          else f"OK ({entries} entries)")
    if args.out:
        etf.write_gram_file(args.out, first)
    return 0


def cmd_srg(args) -> int:
    try:
        desc, report = scheme.srg_scheme(args.v, args.k, args.lam, args.mu)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    gram = scheme.gram_projector(desc, report.d_subset)
    cert = etf.verify_gram(gram, method="srgIdempotent")
    payload = {
        "scheme": desc.summary_json(),
        "dSubset": list(report.d_subset),
        "isHyperdifferenceSet": report.is_hyperdifference,
        "b": [f"{x.numerator}/{x.denominator}" for x in report.b],
        "certificate": cert.to_json_dict(),
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        etf.write_gram_file(outdir / "srg_gram.mat", gram)
        _write_json(outdir / "srg_certificate.json", payload)
    if cert.verdict != "OPTIMAL":
        raise VerificationFailure(cert.failure or "SRG idempotent is not an ETF Gram")
    return 0


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="linepack",
        description="exact Welch-bound-equality line packings from Suzuki 2-groups")
    p.add_argument("--json-errors", action="store_true",
                   help="emit runtime errors as JSON on stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--threads", type=int, default=1,
                        help="cap on internal parallelism (results are identical)")

    b = sub.add_parser("build", help="synthesize, certify, and export a frame")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--out", help="output directory (default $LINEPACK_OUT or ./linepack_n<N>)")
    b.add_argument("--format", choices=["v1"], default="v1",
                   help="matrix file format version")
    b.add_argument("--seed", type=int, default=DEFAULT_SEED)
    b.add_argument("--samples", type=int, default=100_000)
    b.add_argument("--float-export", action="store_true")
    common(b)
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="certify a frame or Gram matrix")
    v.add_argument("--n", type=int)
    v.add_argument("--in", dest="infile", help="matrix file to verify")
    v.add_argument("--mode", choices=["full", "sample"])
    v.add_argument("--samples", type=int, default=100_000)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--force-full", action="store_true")
    common(v)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("search", help="enumerate candidate parameter tuples")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--nonabelian-orders-only", action="store_true")
    s.add_argument("--suzuki-filters", action="store_true",
                   help="fill class/character verdicts for order-64 rows")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    c = sub.add_parser("chartab", help="emit the exact character table as JSON")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_chartab)

    g = sub.add_parser("gram", help="compute the Gram matrix and cross-compare routes")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--method", default="closed-form",
                   help="comma list from closed-form,character,frame")
    g.add_argument("--out")
    common(g)
    g.set_defaults(func=cmd_gram)

    r = sub.add_parser("srg", help="strongly-regular-graph scheme and its ETF")
    r.add_argument("--v", type=int, required=True)
    r.add_argument("--k", type=int, required=True)
    r.add_argument("--lambda", dest="lam", type=int, required=True)
    r.add_argument("--mu", type=int, required=True)
    r.add_argument("--out")
    r.set_defaults(func=cmd_srg)

    return p


def _emit_error(kind: str, message: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps({"error": {"type": kind, "message": message}},
                         sort_keys=True), file=sys.stderr)
    else:
        print(f"linepack: {kind}: {message}", file=sys.stderr)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _emit_error("usage", str(exc), args.json_errors)
        return 2
    except etf.MatrixParseError as exc:
        _emit_error("parse", str(exc), args.json_errors)
        return 2
    except VerificationFailure as exc:
        _emit_error("violation", str(exc), args.json_errors)
        return 1


if __name__ == "__main__":
    sys.exit(main())
