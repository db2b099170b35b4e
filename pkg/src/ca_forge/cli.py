"""Command-line driver: ``ca-forge verify|sweep|inspect|selftest``."""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor

from . import ENGINE_VERSION
from .ca import CLASSIFIER_BOUND, is_ca, schmidt_case
from .cache import RecordCache, cache_path
from .dickson import applicable_classes, construct_class_rep
from .errors import BoundExceeded, ForgeError, NotAPrimePower
from .field import make_field, prime_power
from .groups.lattice import ORACLE_BOUND
from .groups.structure import structure_probe
from .report import METHODS, build_record, dumps, format_text, resolve_method
from .suzuki import verify_suzuki_lemma

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

log = logging.getLogger("ca_forge")


def _parse_q(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    return q


def _check_q(q: int) -> tuple[int, int]:
    pp = prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    if q <= 3:
        raise NotAPrimePower(f"q must be a prime power > 3, got {q}")
    return pp


def _record(q: int, method: str, oracle_bound: int, timings: bool, cache: RecordCache | None) -> dict:
    if cache is None:
        return build_record(q, method, oracle_bound, timings)
    resolved = resolve_method(q, method, oracle_bound)
    key = RecordCache.key(q, resolved, ENGINE_VERSION)
    rec = cache.get(key)
    if rec is not None:
        rec["cache_hit"] = True
        return rec
    rec = build_record(q, resolved, oracle_bound, timings)
    cache.put(key, rec)
    rec = dict(rec)
    rec["cache_hit"] = False
    return rec


def _job(args: tuple) -> dict:
    q, method, oracle_bound, timings = args
    return build_record(q, method, oracle_bound, timings)


def _emit(rec: dict, as_json: bool) -> None:
    print(dumps(rec) if as_json else format_text(rec), flush=True)


def cmd_verify(ns) -> int:
    _check_q(ns.q)
    rec = _record(ns.q, ns.method, ns.oracle_bound, ns.timings, _open_cache(ns))
    _emit(rec, ns.json)
    return EXIT_OK if rec["agree"] else EXIT_MISMATCH


def _prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 4), hi + 1) if prime_power(q) is not None]


def cmd_sweep(ns) -> int:
    if ns.qmin > ns.qmax:
        raise ValueError(f"empty range: {ns.qmin} > {ns.qmax}")
    qs = _prime_powers(ns.qmin, ns.qmax)
    if not qs:
        raise ValueError(f"no prime power q > 3 in [{ns.qmin}, {ns.qmax}]")
    cache = _open_cache(ns)
    todo = qs
    results: dict[int, dict] = {}
    if cache is not None:
        for q in qs:
            rec = cache.get(RecordCache.key(q, resolve_method(q, ns.method, ns.oracle_bound), ENGINE_VERSION))
            if rec is not None:
                rec["cache_hit"] = True
                results[q] = rec
        todo = [q for q in qs if q not in results]
    jobs = [(q, resolve_method(q, ns.method, ns.oracle_bound), ns.oracle_bound, ns.timings) for q in todo]
    if ns.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=ns.jobs) as pool:
            computed = list(pool.map(_job, jobs))
    else:
        computed = [_job(j) for j in jobs]
    for (q, method, _, _), rec in zip(jobs, computed):
        if cache is not None:
            cache.put(RecordCache.key(q, method, ENGINE_VERSION), rec)
            rec = dict(rec)
            rec["cache_hit"] = False
        results[q] = rec
    failures = 0
    for q in qs:
        rec = results[q]
        failures += not rec["agree"]
        _emit(rec, ns.json)
    print(f"sweep {ns.qmin}..{ns.qmax}: {len(qs)} records, {len(qs) - failures} agree, {failures} failed", file=sys.stderr)
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def _fingerprint_summary(H) -> str:
    sp = structure_probe(H)
    sizes = ",".join(f"{s}x{k}" if k > 1 else str(s) for s, k in sp.class_size_multiset)
    return f"Z={sp.center_order} D={sp.derived_order} classes=[{sizes}]"


def cmd_inspect(ns) -> int:
    p, m = _check_q(ns.q)
    ctx = make_field(p, m)
    rows = []
    for spec in applicable_classes(p, m):
        H = construct_class_rep(ctx, spec)
        ca = is_ca(H).is_ca
        label = schmidt_case(H).label if H.order <= CLASSIFIER_BOUND else "-"
        fp = _fingerprint_summary(H) if H.order <= CLASSIFIER_BOUND else "-"
        rows.append((str(spec.case_id), spec.description, str(spec.multiplicity), str(H.order), fp, "yes" if ca else "no", label))
    header = ("case", "type", "classes", "order", "fingerprint", "CA", "schmidt")
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    print(f"PSL(2,{ns.q}): applicable maximal subgroup classes")
    for r in [header] + rows:
        print("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    status = EXIT_OK
    if ns.suzuki is not None:
        rep = verify_suzuki_lemma(ns.suzuki)
        print(f"\nSuzuki point stabilizer, n={rep.n}, r={rep.r}: |N|={rep.order}, degree={rep.degree}")
        print(f"  kernel order {rep.kernel_order}, non-commuting pair {rep.kernel_nonabelian}")
        print(f"  complement order {rep.complement_order}, generator {rep.complement_generator}")
        print(f"  CA: {rep.is_ca} (witness {rep.ca_witness}, pair {rep.ca_pair})")
        for name, ok in rep.checks.items():
            print(f"  [{'PASS' if ok else 'FAIL'}] {name}")
        if not rep.passed:
            status = EXIT_MISMATCH
    return status


def cmd_selftest(ns) -> int:
    from .selftest import run

    return EXIT_OK if run() else EXIT_MISMATCH


def _open_cache(ns) -> RecordCache | None:
    path = cache_path(getattr(ns, "cache", None))
    return RecordCache(path) if path else None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="append-only JSONL result cache (default: $CA_FORGE_CACHE, off if unset)")
    common.add_argument("--oracle-bound", type=int, default=ORACLE_BOUND, help="largest |PSL(2,q)| for the subgroup-lattice oracle")
    common.add_argument("--json", action="store_true", help="emit JSON Lines")
    common.add_argument("--timings", action="store_true", help="add wall_time_ms to records (breaks byte-reproducibility)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="ca-forge", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {ENGINE_VERSION}")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="verify one q")
    v.add_argument("q", type=_parse_q)
    v.add_argument("--method", choices=METHODS, default="auto")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("sweep", parents=[common], help="verify every prime power in a range")
    s.add_argument("qmin", type=_parse_q)
    s.add_argument("qmax", type=_parse_q)
    s.add_argument("--method", choices=METHODS, default="auto")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_sweep)

    i = sub.add_parser("inspect", parents=[common], help="per-class table for one q")
    i.add_argument("q", type=_parse_q)
    i.add_argument("--suzuki", type=int, metavar="N", help="also verify the Suzuki stabilizer for Sz(2^(2N+1))")
    i.set_defaults(func=cmd_inspect)

    t = sub.add_parser("selftest", parents=[common], help="run the built-in property checks")
    t.set_defaults(func=cmd_selftest)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    ns = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return ns.func(ns)
    except BoundExceeded as exc:
        print(f"error: resource bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (ForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
