"""Command-line front end: spectrum dumps, verification suites, asymptotic
sweeps, distinct-count tables, subspace enumeration dumps, and a Gaussian
binomial calculator.

Exit codes: 0 success, 1 at least one check failed, 2 usage error,
3 resource refusal. All files are written atomically (temp + rename) and
JSON output is key-sorted so identical configs give identical bytes apart
from the manifest timing fields.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__, asymptotics, blocks, inclusion, laplacian, qcomb
from . import subspaces as subsp
from .errors import DomainError, ResourceRefusal

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_REFUSED = 3


def atomic_write(path, text):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass
class RunManifest:
    command: str
    config: dict
    checks: list = field(default_factory=list)
    artifacts: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    version: str = __version__

    def record(self, name, status, reason=None, witness=None):
        entry = {"name": name, "status": status}
        if reason is not None:
            entry["reason"] = reason
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    @property
    def failed(self):
        return [c for c in self.checks if c["status"] == "fail"]

    def to_json(self):
        return json.dumps(
            {"command": self.command, "config": self.config,
             "checks": self.checks, "artifacts": self.artifacts,
             "timings": self.timings, "version": self.version},
            indent=2, sort_keys=True, default=str,
        )


def _int_list(text):
    if text is None:
        raise DomainError("missing required value (flag or config file)")
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise DomainError(f"not a comma-separated integer list: {text!r}")


def _load_config_defaults(argv, parser):
    """key=value config file; flags given on the command line win."""
    path = None
    for i, a in enumerate(argv):
        if a == "--config" and i + 1 < len(argv):
            path = argv[i + 1]
        elif a.startswith("--config="):
            path = a.split("=", 1)[1]
    if path is None:
        return
    defaults = {}
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise DomainError(f"bad config line: {line!r}")
            key, value = line.split("=", 1)
            defaults[key.strip().replace("-", "_")] = value.strip()
    # subparser defaults override namespace values set by the main parser,
    # so the config defaults must reach every subparser too
    parser.set_defaults(**defaults)
    for action in parser._subparsers._group_actions:
        for sub in action.choices.values():
            sub.set_defaults(**{
                k: v for k, v in defaults.items()
                if any(k == a.dest for a in sub._actions)
            })


def build_parser():
    parser = argparse.ArgumentParser(
        prog="flaglap",
        description="Exact spectra of weighted flag-complex Laplacians "
                    "over finite fields.",
    )
    parser.add_argument("--config", help="key=value config file; flags override")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    # --n/--q are not marked required so a config file can supply them;
    # _int_list rejects a missing value with a usage error instead.
    def common(p, need_n=True, need_q=True):
        if need_n:
            p.add_argument("--n", help="comma list of n values")
        if need_q:
            p.add_argument("--q", help="comma list of primes")
        p.add_argument("--out-dir", default="flaglap-out")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--max-numeric", type=int,
                       default=laplacian.DEFAULT_NUMERIC_CAP)
        p.add_argument("--precision", type=int, default=12,
                       help="root isolation width 10^-precision")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("spectrum", help="eigenvalues of the 0-Laplacian")
    common(p)
    p.add_argument("--source", choices=["blocks", "numeric", "both"],
                   default="blocks")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="run invariant suites")
    common(p)
    p.add_argument("--suite",
                   choices=["identities", "blocks", "asymptotics", "all"],
                   default="all")
    p.add_argument("--C", type=float, default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymptotics",
                       help="convergence tables and containment reports")
    common(p)
    p.add_argument("--C", type=float, default=None)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("distinct", help="distinct eigenvalue counts vs bound")
    common(p)
    p.set_defaults(func=cmd_distinct)

    p = sub.add_parser("subspaces", help="dump subspace enumeration")
    common(p)
    p.add_argument("--k", type=int, default=None, help="dimension filter")
    p.set_defaults(func=cmd_subspaces)

    p = sub.add_parser("qbinom", help="Gaussian binomial calculator")
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--q", required=True, type=int)
    p.set_defaults(func=cmd_qbinom)
    return parser


def _config_snapshot(args):
    skip = {"func", "command", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _write_report(args, stem, report, manifest):
    if args.format == "csv":
        path = os.path.join(args.out_dir, stem + ".csv")
        atomic_write(path, report.to_csv())
    else:
        path = os.path.join(args.out_dir, stem + ".json")
        atomic_write(path, report.to_json())
    manifest.artifacts.append(path)


def _map_jobs(fn, tasks, jobs):
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks))


def cmd_spectrum(args, manifest):
    precision = Fraction(1, 10 ** int(args.precision))
    pairs = [(n, q) for n in _int_list(args.n) for q in _int_list(args.q)]

    def one(pair):
        n, q = pair
        out = []
        if args.source in ("blocks", "both"):
            out.append((f"spectrum-blocks-n{n}-q{q}",
                        blocks.spectrum_via_blocks(n, q, precision=precision)))
        if args.source in ("numeric", "both"):
            lap = laplacian.assemble_laplacian(n, q, 0)
            out.append((f"spectrum-numeric-n{n}-q{q}",
                        laplacian.numeric_spectrum(lap,
                                                   numeric_cap=args.max_numeric)))
        rec = None
        if args.source == "both":
            rec = blocks.reconcile(n, q, numeric_cap=args.max_numeric)
        return pair, out, rec

    for (n, q), reports, rec in _map_jobs(one, pairs, args.jobs):
        for stem, report in reports:
            _write_report(args, stem, report, manifest)
            print(f"{stem}: {report.total_multiplicity} eigenvalues "
                  f"(with multiplicity)")
        if rec is not None:
            status = "pass" if rec.passed else "fail"
            manifest.record(f"reconcile(n={n}, q={q})", status,
                            witness=rec.mismatches or None)
            path = os.path.join(args.out_dir, f"reconcile-n{n}-q{q}.json")
            atomic_write(path, json.dumps(
                {"n": n, "q": q, "pass": rec.passed,
                 "max_pairing_distance": rec.max_pairing_distance,
                 "total_multiplicity": rec.total_multiplicity,
                 "exact_conjugation": rec.exact_conjugation,
                 "mismatches": rec.mismatches},
                indent=2, sort_keys=True, default=str))
            manifest.artifacts.append(path)
            print(f"reconcile n={n} q={q}: {status} "
                  f"(max distance {rec.max_pairing_distance:.3g})")


def _suite_identities(n, q, manifest):
    for i in range(n + 1):
        for j in range(i + 1):
            for k in range(j + 1):
                ok, witness = inclusion.verify_kantor_product(n, q, i, j, k)
                manifest.record(f"kantor(n={n}, q={q}, i={i}, j={j}, k={k})",
                                "pass" if ok else "fail", witness=witness)
    for k in range(n + 1):
        for i in range(k, n + 1):
            for j in range(i, n + 1):
                ok, witness = inclusion.verify_triple_product(n, q, i, j, k)
                manifest.record(f"triple(n={n}, q={q}, i={i}, j={j}, k={k})",
                                "pass" if ok else "fail", witness=witness)
    for k in range(n // 2 + 1):
        for i in range(k, n - k + 1):
            rank = inclusion.rank_check(n, q, i, k)
            expected = qcomb.q_binomial(n, k, q)
            manifest.record(f"rank(n={n}, q={q}, i={i}, k={k})",
                            "pass" if rank == expected else "fail",
                            witness=None if rank == expected
                            else {"rank": rank, "expected": expected})
    for k in range(1, n // 2 + 1):
        ok, witness = inclusion.verify_annihilation(n, q, k)
        manifest.record(f"annihilation(n={n}, q={q}, k={k})",
                        "pass" if ok else "fail", witness=witness)
    for i in range(1, n):
        ok, witness = inclusion.verify_decomposition(n, q, i)
        manifest.record(f"decomposition(n={n}, q={q}, i={i})",
                        "pass" if ok else "fail", witness=witness)


def _suite_blocks(n, q, manifest, numeric_cap):
    vertex_count = sum(qcomb.q_binomial(n, i, q) for i in range(1, n))
    if vertex_count > numeric_cap:
        manifest.record(f"reconcile(n={n}, q={q})", "skipped",
                        reason=f"{vertex_count} vertices exceed numeric cap "
                               f"{numeric_cap}")
        return
    rec = blocks.reconcile(n, q, numeric_cap=numeric_cap)
    manifest.record(f"reconcile(n={n}, q={q})",
                    "pass" if rec.passed else "fail",
                    witness=rec.mismatches or None)
    if rec.exact_conjugation is None:
        manifest.record(f"conjugation(n={n}, q={q})", "skipped",
                        reason="dimension above exact check cap")
    else:
        manifest.record(f"conjugation(n={n}, q={q})",
                        "pass" if rec.exact_conjugation else "fail")


def _suite_asymptotics(n, q_list, manifest, constant, out_dir, artifacts):
    report = asymptotics.verify_containment(n, q_list, constant=constant)
    path = os.path.join(out_dir, f"containment-n{n}.json")
    atomic_write(path, json.dumps(report.to_json_dict(), indent=2,
                                  sort_keys=True))
    artifacts.append(path)
    manifest.record(
        f"containment(n={n})",
        "pass" if report.empirical_q0 is not None else "fail",
        reason=f"empirical q0 = {report.empirical_q0}",
    )
    manifest.record(f"distinct-identity(n={n})",
                    "pass" if asymptotics.distinct_value_identity(n) else "fail")
    manifest.record(f"rationality-guard(n={n})",
                    "pass" if asymptotics.cosine_rationality_guard(n) else "fail")


def cmd_verify(args, manifest):
    n_list = _int_list(args.n)
    q_list = _int_list(args.q)
    for q in q_list:
        subsp.check_prime(q)
    for n in n_list:
        for q in q_list:
            if args.suite in ("identities", "all"):
                _suite_identities(n, q, manifest)
            if args.suite in ("blocks", "all"):
                _suite_blocks(n, q, manifest, args.max_numeric)
        if args.suite in ("asymptotics", "all"):
            _suite_asymptotics(n, q_list, manifest, args.C, args.out_dir,
                               manifest.artifacts)
    for c in manifest.failed:
        print(f"FAIL {c['name']}: {c.get('witness')}", file=sys.stderr)
    print(f"{len(manifest.checks)} checks, {len(manifest.failed)} failed")


def cmd_asymptotics(args, manifest):
    q_list = sorted(_int_list(args.q))
    for q in q_list:
        subsp.check_prime(q)
    for n in _int_list(args.n):
        constant = args.C
        if constant is None:
            constant = asymptotics.calibrate_constant(n, q_list)
            print(f"n={n}: calibrated C = {constant:.6g}")
        for k in range(1, (n - 1) // 2 + 1):
            table = asymptotics.convergence_table(n, k, q_list,
                                                 constant=constant)
            buf = io.StringIO()
            writer = csv.writer(buf)
            for row in table.csv_rows():
                writer.writerow(row)
            path = os.path.join(args.out_dir, f"convergence-n{n}-k{k}.csv")
            atomic_write(path, buf.getvalue())
            manifest.artifacts.append(path)
            # plain x/y series per target for external plotting
            series = {}
            for row in table.rows:
                series.setdefault(row.zeta_label, []).append(
                    (row.q, row.residual))
            for idx, (label, pts) in enumerate(sorted(series.items())):
                spath = os.path.join(args.out_dir,
                                     f"series-n{n}-k{k}-z{idx}.dat")
                atomic_write(spath, f"# {label}\n" + "".join(
                    f"{q} {r:.15g}\n" for q, r in pts))
                manifest.artifacts.append(spath)
            for label, expo in sorted(table.fitted_exponents.items()):
                manifest.record(
                    f"decay(n={n}, k={k}, {label})", "pass",
                    reason=f"fitted exponent {expo:.3f}")
            threshold = 0.8 * float(asymptotics.alpha_exponent(k))
            manifest.record(
                f"decay-envelope(n={n}, k={k})",
                "pass" if table.envelope_exponent >= threshold else "fail",
                reason=f"fitted exponent {table.envelope_exponent:.3f}, "
                       f"threshold {threshold:.3f}")
        _suite_asymptotics(n, q_list, manifest, constant, args.out_dir,
                           manifest.artifacts)


def cmd_distinct(args, manifest):
    rows = []
    violations = 0
    for n in _int_list(args.n):
        bound = blocks.distinct_count_bound(n)
        first_equality = None
        for q in sorted(_int_list(args.q)):
            count = blocks.distinct_count(n, q)
            if count == bound and first_equality is None:
                first_equality = q
            if count > bound:
                violations += 1
                manifest.record(f"distinct(n={n}, q={q})", "fail",
                                witness={"count": count, "bound": bound})
            else:
                manifest.record(f"distinct(n={n}, q={q})", "pass")
            rows.append({"n": n, "q": q, "distinct": count, "bound": bound})
        print(f"n={n}: bound {bound}, first equality at q = {first_equality}")
        for row in rows:
            if row["n"] == n:
                row["first_equality_q"] = first_equality
    path = os.path.join(args.out_dir, "distinct.json")
    atomic_write(path, json.dumps(rows, indent=2, sort_keys=True))
    manifest.artifacts.append(path)


def cmd_subspaces(args, manifest):
    for n in _int_list(args.n):
        for q in _int_list(args.q):
            dims = [args.k] if args.k is not None else list(range(0, n + 1))
            lines = []
            for d in dims:
                for s in subsp.enumerate_subspaces(n, q, d):
                    flat = ";".join(
                        ",".join(str(x) for x in row) for row in s.basis
                    )
                    lines.append(f"{n} {q} {d} [{flat}]")
            path = os.path.join(args.out_dir, f"subspaces-n{n}-q{q}.txt")
            atomic_write(path, "\n".join(lines) + "\n")
            manifest.artifacts.append(path)
            print(f"n={n} q={q}: {len(lines)} subspaces written")


def cmd_qbinom(args, manifest):
    print(qcomb.q_binomial(args.n, args.k, args.q))


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        _load_config_defaults(argv, parser)
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:
            return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
        manifest = RunManifest(command=args.command,
                               config=_config_snapshot(args))
        start = time.monotonic()
        args.func(args, manifest)
        manifest.timings["wall_seconds"] = round(time.monotonic() - start, 3)
        if getattr(args, "out_dir", None):
            path = os.path.join(args.out_dir, "manifest.json")
            atomic_write(path, manifest.to_json())
        return EXIT_CHECK_FAILED if manifest.failed else EXIT_OK
    except ResourceRefusal as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
