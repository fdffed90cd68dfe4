"""JSON/CSV serialization with a determinism contract.

Every integer is serialized as a decimal string (arbitrary precision
survives any JSON consumer); booleans stay booleans.  Documents are
split {"report": ..., "meta": ...}: the report subtree is byte-identical
across re-runs with the same configuration, while timings, environment
notes, and file paths live in meta, outside the contract.  Keys are
sorted and indentation fixed so serialization itself is reproducible.
"""

from __future__ import annotations

import json
import platform
from typing import Any, Optional

import gmpy2

from .certify import (
    AnalyticReport,
    ApHit,
    CertKind,
    Certificate,
    DirectPayload,
    HarmonicPayload,
    PrimePayload,
    SignCheck,
    SmallnessPayload,
    TheoremReport,
    DominanceSample,
)
from .primes import GapCheckResult
from .rational import Rat

SCHEMA_PREFIX = "symcert"
TOOL_VERSION = "0.1.0"


def _s(x: Optional[int]) -> Optional[str]:
    """Integers as decimal strings; None passes through."""
    return None if x is None else str(x)


# ---------------------------------------------------------------------------
# Certificates


def certificate_to_jsonable(c: Certificate) -> dict:
    p = c.payload
    if c.kind is CertKind.HARMONIC:
        payload = {"pow2": _s(p.pow2), "valuation": _s(p.valuation)}
    elif c.kind is CertKind.SMALLNESS:
        payload = {
            "bound_mode": p.bound_mode,
            "precision_bits": _s(p.precision_bits),
            "harmonic_num_digits": _s(p.harmonic_num_digits),
            "harmonic_den_digits": _s(p.harmonic_den_digits),
            "k_log2_bound_upper": p.k_log2_bound_upper,
            "log2_factorial_lower": p.log2_factorial_lower,
        }
    elif c.kind is CertKind.PRIME:
        payload = {
            "p": _s(p.p),
            "t": _s(p.t),
            "boundary_num": _s(p.boundary_num),
            "boundary_den": _s(p.boundary_den),
            "claimed_valuation": _s(p.claimed_valuation),
            "p_in_interval": p.p_in_interval,
            "p_gt_k_plus_4": p.p_gt_k_plus_4,
            "p_ndiv_3k_plus_8": p.p_ndiv_3k_plus_8,
            "p_squared_gt_n": p.p_squared_gt_n,
        }
    elif c.kind is CertKind.DIRECT:
        payload = {
            "denominator": _s(p.denominator),
            "denominator_digits": _s(p.denominator_digits),
            "smallest_prime_factor": _s(p.smallest_prime_factor),
            "valuation_at_spf": _s(p.valuation_at_spf),
            "digit_budget": _s(p.digit_budget),
        }
    else:  # pragma: no cover - enum is closed
        raise ValueError(f"unknown kind {c.kind}")
    return {
        "schema": f"{SCHEMA_PREFIX}.certificate/1",
        "kind": c.kind.value,
        "k": _s(c.k),
        "n": _s(c.n),
        "claim": "nonintegral",
        "payload": payload,
    }


def certificate_json_line(c: Certificate) -> str:
    """Compact single-line JSON, for streaming one certificate per line."""
    return json.dumps(certificate_to_jsonable(c), sort_keys=True, separators=(",", ":"))


def _i(x: Optional[str]) -> Optional[int]:
    return None if x is None else int(x)


def certificate_from_jsonable(d: dict) -> Certificate:
    kind = CertKind(d["kind"])
    p = d["payload"]
    if kind is CertKind.HARMONIC:
        payload = HarmonicPayload(pow2=_i(p["pow2"]), valuation=_i(p["valuation"]))
    elif kind is CertKind.SMALLNESS:
        payload = SmallnessPayload(
            bound_mode=p["bound_mode"],
            precision_bits=_i(p["precision_bits"]),
            harmonic_num_digits=_i(p["harmonic_num_digits"]),
            harmonic_den_digits=_i(p["harmonic_den_digits"]),
            k_log2_bound_upper=p["k_log2_bound_upper"],
            log2_factorial_lower=p["log2_factorial_lower"],
        )
    elif kind is CertKind.PRIME:
        payload = PrimePayload(
            p=_i(p["p"]),
            t=_i(p["t"]),
            boundary_num=_i(p["boundary_num"]),
            boundary_den=_i(p["boundary_den"]),
            claimed_valuation=_i(p["claimed_valuation"]),
            p_in_interval=bool(p["p_in_interval"]),
            p_gt_k_plus_4=bool(p["p_gt_k_plus_4"]),
            p_ndiv_3k_plus_8=bool(p["p_ndiv_3k_plus_8"]),
            p_squared_gt_n=bool(p["p_squared_gt_n"]),
        )
    elif kind is CertKind.DIRECT:
        payload = DirectPayload(
            denominator=_i(p["denominator"]),
            denominator_digits=_i(p["denominator_digits"]),
            smallest_prime_factor=_i(p["smallest_prime_factor"]),
            valuation_at_spf=_i(p["valuation_at_spf"]),
            digit_budget=_i(p["digit_budget"]),
        )
    else:  # pragma: no cover
        raise ValueError(f"unknown kind {kind}")
    return Certificate(k=int(d["k"]), n=int(d["n"]), kind=kind, payload=payload)


# ---------------------------------------------------------------------------
# Report documents


def make_meta(elapsed: Optional[float] = None, **extra: Any) -> dict:
    meta = {
        "tool": f"symcert {TOOL_VERSION}",
        "python": platform.python_version(),
        "gmpy2": gmpy2.version(),
    }
    if elapsed is not None:
        meta["elapsed_seconds"] = round(elapsed, 6)
    meta.update(extra)
    return meta


def wrap(report: dict, meta: dict) -> dict:
    return {"report": report, "meta": meta}


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def value_doc(k: int, n: int, value: Rat) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}.value/1",
        "k": _s(k),
        "n": _s(n),
        "num": _s(value.numerator),
        "den": _s(value.denominator),
        "text": str(value),
    }


def theorem_report_doc(r: TheoremReport, include_certs: bool) -> dict:
    doc = {
        "schema": f"{SCHEMA_PREFIX}.theorem-report/1",
        "n_lo": _s(r.n_lo),
        "n_hi": _s(r.n_hi),
        "k_policy": r.k_policy,
        "pair_count": _s(r.pair_count),
        "all_nonintegral": r.all_nonintegral,
        "method_counts": {k: _s(v) for k, v in sorted(r.method_counts.items())},
        "validated_count": _s(r.validated_count),
        "counterexamples": [{"k": _s(k), "n": _s(n)} for k, n in r.counterexamples],
        "validation_failures": [
            {"k": _s(k), "n": _s(n)} for k, n in r.validation_failures
        ],
        "incomplete_pairs": [{"k": _s(k), "n": _s(n)} for k, n in r.incomplete_pairs],
        "per_n": [
            {
                "n": _s(n),
                "harmonic": _s(h),
                "smallness": _s(s),
                "prime": _s(p),
                "direct": _s(d),
            }
            for (n, h, s, p, d) in r.per_n
        ],
        "precision_bits": _s(r.precision_bits),
        "certificates_included": bool(include_certs and r.certificates is not None),
    }
    if include_certs and r.certificates is not None:
        doc["certificates"] = [
            certificate_to_jsonable(cert)
            for (_, cert) in sorted(
                r.certificates.items(), key=lambda kv: (kv[0][1], kv[0][0])
            )
        ]
    return doc


def theorem_csv_rows(r: TheoremReport) -> list[list[str]]:
    rows = [["n", "harmonic", "smallness", "prime", "direct", "total"]]
    for n, h, s, p, d in r.per_n:
        rows.append([str(n), str(h), str(s), str(p), str(d), str(h + s + p + d)])
    return rows


def gap_report_doc(g: GapCheckResult) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}.gap-check/1",
        "k": _s(g.k),
        "i_lo": _s(g.i_lo),
        "i_hi": _s(g.i_hi),
        "inequality": "k*p(i+1) < (k+4)*p(i)",
        "all_pass": g.all_pass,
        "checked": _s(g.checked),
        "failures": [_s(i) for i in g.failures],
        "tightest_i": _s(g.tightest_i),
        "tightest_lhs": _s(g.tightest_lhs),
        "tightest_rhs": _s(g.tightest_rhs),
    }


def gap_csv_rows(g: GapCheckResult, primes: tuple[int, ...]) -> list[list[str]]:
    rows = [["i", "p_i", "p_next", "lhs", "rhs", "pass"]]
    for i in range(g.i_lo, g.i_hi + 1):
        p_i, p_next = primes[i - 1], primes[i]
        lhs, rhs = g.k * p_next, (g.k + 4) * p_i
        rows.append(
            [str(i), str(p_i), str(p_next), str(lhs), str(rhs), str(lhs < rhs)]
        )
    return rows


def _sign_check_jsonable(c: SignCheck) -> dict:
    return {
        "label": c.label,
        "at": c.at,
        "lo": c.lo,
        "hi": c.hi,
        "sign": _s(c.sign),
        "precision_bits": _s(c.precision_bits),
    }


def _ineq_sample_jsonable(s: DominanceSample) -> dict:
    return {"t": s.t, "holds": s.holds, "lhs_hi": s.lhs_hi, "rhs_lo": s.rhs_lo}


def analytic_report_doc(a: AnalyticReport) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}.analytic-report/1",
        "precision_bits": _s(a.precision_bits),
        "f_at_300000": _sign_check_jsonable(a.f_at_300000),
        "g_at_300000": _sign_check_jsonable(a.g_at_300000),
        "f_prime_grid": [_sign_check_jsonable(c) for c in a.f_prime_grid],
        "g_prime_grid": [_sign_check_jsonable(c) for c in a.g_prime_grid],
        "dominance": {
            "statement": "8*sqrt(0.7)*t + 2e*t^2 + 2e + 4 <= 4*0.7^(3/2)*t^3",
            "at_rounded_t": _ineq_sample_jsonable(a.dominance_at_rounded_t),
            "just_above": _ineq_sample_jsonable(a.dominance_just_above),
            "fails_below": _ineq_sample_jsonable(a.dominance_fails_below),
            "samples": [_ineq_sample_jsonable(s) for s in a.dominance_samples],
            "threshold_check": a.dominance_threshold_check,
        },
        "threshold": {
            "t_star_lo": a.t_star_lo,
            "t_star_hi": a.t_star_hi,
            "n_star_derived": _s(a.n_star_derived),
            "n_star_from_rounded_t": _s(a.n_star_from_rounded_t),
            "rounded_t": a.rounded_t_threshold,
            "expected_n": _s(a.expected_n_threshold),
        },
        "region": {
            "n_min": _s(a.region_n_min),
            "covers_threshold": a.region_covers_threshold,
        },
        "grid_points": _s(a.grid_points),
        "checked_by_sampling": a.checked_by_sampling,
    }


def analytic_csv_rows(a: AnalyticReport) -> list[list[str]]:
    rows = [["check", "at", "lo", "hi", "verdict"]]
    rows.append(
        ["f", a.f_at_300000.at, a.f_at_300000.lo, a.f_at_300000.hi,
         str(a.f_at_300000.sign > 0)]
    )
    rows.append(
        ["g", a.g_at_300000.at, a.g_at_300000.lo, a.g_at_300000.hi,
         str(a.g_at_300000.sign > 0)]
    )
    for c in a.f_prime_grid + a.g_prime_grid:
        rows.append([c.label, c.at, c.lo, c.hi, str(c.sign > 0)])
    for s in [a.dominance_at_rounded_t, a.dominance_just_above, a.dominance_fails_below] + list(
        a.dominance_samples
    ):
        rows.append(["dominance", s.t, s.lhs_hi, s.rhs_lo, str(s.holds)])
    return rows


def ap_report_doc(a: int, m: int, n_max: int, k_max: int, hits: list[ApHit]) -> dict:
    return {
        "schema": f"{SCHEMA_PREFIX}.ap-hits/1",
        "a": _s(a),
        "m": _s(m),
        "n_max": _s(n_max),
        "k_max": _s(k_max),
        "terms": f"1/({a}+i*{m}) for i = 0..n",
        "hits": [{"k": _s(h.k), "n": _s(h.n), "value": _s(h.value)} for h in hits],
    }


def ap_csv_rows(hits: list[ApHit]) -> list[list[str]]:
    rows = [["k", "n", "value"]]
    rows.extend([str(h.k), str(h.n), str(h.value)] for h in hits)
    return rows
