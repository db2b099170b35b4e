"""Report records for verify/sweep, serialized as JSON Lines with fixed key order."""

from __future__ import annotations

import json
import time

from . import ENGINE_VERSION
from .ca import CLASSIFIER_BOUND, MinimalityVerdict, is_minimal_non_ca_psl, oracle_verdict, schmidt_case, theorem_predicate
from .dickson import applicable_classes, construct_class_rep
from .errors import NotAPrimePower
from .field import make_field, prime_power
from .groups.lattice import ORACLE_BOUND, subgroup_lattice
from .linear import psl2

METHODS = ("auto", "maximal-class", "oracle")


def psl_order(q: int) -> int:
    return q * (q * q - 1) // (2 if q % 2 else 1)


def resolve_method(q: int, method: str, oracle_bound: int) -> str:
    if method == "auto":
        return "oracle" if psl_order(q) <= oracle_bound else "maximal-class"
    return method


def _labels_for_maximal_class(q: int) -> list[str | None]:
    ctx = make_field(*prime_power(q))
    out = []
    for spec in applicable_classes(ctx.p, ctx.m):
        H = construct_class_rep(ctx, spec)
        out.append(schmidt_case(H).label if H.order <= CLASSIFIER_BOUND else None)
    return out


def _labels_for_oracle(q: int, oracle_bound: int) -> list[str | None]:
    G = psl2(make_field(*prime_power(q)))
    lat = subgroup_lattice(G, oracle_bound)
    out = []
    seen = set()
    for i in lat.maximal():
        cid = int(lat.class_ids[i])
        if cid in seen:
            continue
        seen.add(cid)
        H = lat.handle(i)
        out.append(schmidt_case(H).label if H.order <= CLASSIFIER_BOUND else None)
    return out


def compute_verdict(q: int, method: str = "auto", oracle_bound: int = ORACLE_BOUND) -> MinimalityVerdict:
    pp = prime_power(q)
    if pp is None:
        raise NotAPrimePower(f"{q} is not a prime power")
    if q <= 3:
        raise ValueError(f"q must exceed 3, got {q}")
    ctx = make_field(*pp)
    if resolve_method(q, method, oracle_bound) == "oracle":
        return oracle_verdict(ctx, oracle_bound)
    return is_minimal_non_ca_psl(ctx)


def build_record(q: int, method: str = "auto", oracle_bound: int = ORACLE_BOUND, timings: bool = False) -> dict:
    """One report record; keys are emitted in this fixed order."""
    t0 = time.perf_counter()
    v = compute_verdict(q, method, oracle_bound)
    if v.method == "oracle":
        labels = _labels_for_oracle(q, oracle_bound)
    else:
        labels = _labels_for_maximal_class(q)
    p, m = prime_power(q)
    rec = {
        "q": q,
        "p": p,
        "m": m,
        "method": v.method,
        "predicate_answer": v.predicate_answer,
        "predicate_reason": v.predicate_reason,
        "computed_answer": v.computed_answer,
        "reason_code": v.reason_code,
        "agree": v.agree,
        "status": "ok" if v.agree else "FAILED",
        "psl_order": psl_order(q),
        "psl_is_ca": v.group_is_ca,
        "per_class": [
            {
                "case_id": c.case_id,
                "description": c.description,
                "order": c.order,
                "multiplicity": c.multiplicity,
                "is_ca": c.is_ca,
                "schmidt": label,
            }
            for c, label in zip(v.per_class, labels)
        ],
        "engine_version": ENGINE_VERSION,
    }
    if timings:
        rec["wall_time_ms"] = round((time.perf_counter() - t0) * 1000, 1)
    return rec


def dumps(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False, separators=(", ", ": "))


def format_text(rec: dict) -> str:
    verdict = "minimal non-CA" if rec["computed_answer"] else "not minimal non-CA"
    flag = "agree" if rec["agree"] else "MISMATCH"
    return (
        f"q={rec['q']:<5} method={rec['method']:<13} computed={verdict:<19} "
        f"predicate={rec['predicate_answer']!s:<5} ({rec['predicate_reason']}) reason={rec['reason_code']}  {flag}"
    )


__all__ = ["METHODS", "build_record", "compute_verdict", "dumps", "format_text", "resolve_method", "theorem_predicate"]
