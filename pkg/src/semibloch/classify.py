"""Classification pipeline: exact spectral verdicts cross-checked numerically.

:func:`classify` returns a JSON-ready report.  Every yes/no verdict names the
method that produced it and its evidence; unknown verdicts carry a reason.
Contradictions between the exact and the numeric path are collected under
``disagreements`` instead of being resolved silently.
"""
from __future__ import annotations

import math

import numpy as np

from . import __version__
from .errors import SemiBlochError
from .frequency import PI_SQRT2, SQRT2, Frequency
from .periods import (
    almost_anti_periodic_test,
    epsilon_period_scan,
    semi_anti_witness,
    semi_bloch_witness,
    witness_bound,
)
from .signals import PiecewiseConstantSignal, SampledSignal, TrigPolynomial, TruncatedSeries
from .spectrum import NO, UNKNOWN, YES, bohr_coefficient, spectral_classify
from .stepanov import (
    separation_constant,
    separation_witness,
    stepanov_norm,
    stepanov_semi_test,
)

__all__ = ["classify", "REPRESENTATION_NOTE", "SEPARATION_CANDIDATES"]

REPRESENTATION_NOTE = (
    "general almost periodic signals are represented by finite exponential sums "
    "or truncated series with a tail bound; verdicts concern that representation"
)
SEPARATION_CANDIDATES = (1.0, 2.5, math.pi)
_BOHR_T = 100.0
_BOHR_PROBES = 8
_WITNESS_SLACK = 1e-9


def _witness_payload(w) -> dict:
    return {"p": w.p, "pExact": w.p_exact, "bound": w.bound, "mHorizon": w.m_horizon}


def _verdict(verdict, method, evidence="", **extra) -> dict:
    out = {"verdict": verdict, "method": method, "evidence": evidence}
    out.update(extra)
    return out


def _unknown(reason: str, **extra) -> dict:
    return _verdict(UNKNOWN, "none", reason=reason, **extra)


def _bohr_crosscheck(f, disagreements: list) -> dict:
    head = f.head if isinstance(f, TruncatedSeries) else f
    rows = []
    order = np.argsort(-np.abs(head.coefficients), kind="stable")[:_BOHR_PROBES]
    for j in sorted(order.tolist()):
        c, lam = head.terms[j]
        est, bound = bohr_coefficient(f, lam, _BOHR_T)
        err = abs(est - c)
        ok = err <= bound
        rows.append({"frequency": str(lam), "exact": c, "estimate": est, "errorBound": bound, "ok": ok})
        if not ok:
            disagreements.append(f"Bohr coefficient at {lam}: |estimate - exact| = {err:.3e} > bound {bound:.3e}")
    return {"T": _BOHR_T, "probes": rows}


def _exact_classes(f, epsilon, window, q, k, scan_step, workers, report):
    verdicts = report["verdicts"]
    dis = report["disagreements"]
    tail = f.tail_sup_bound if isinstance(f, TruncatedSeries) else 0.0
    # a series head can only certify down to twice its tail
    eps_w = max(epsilon, 2 * tail * (1 + 1e-12)) if tail else epsilon
    if eps_w != epsilon:
        report["notes"].append(
            f"witness level raised from {epsilon} to {eps_w:.6g} (twice the tail bound)"
        )
    sv = spectral_classify(f)
    theta = None if sv.theta is None else str(sv.theta)
    spec_ev = {"evidence": sv.evidence, "theta": theta, "multipliers": list(sv.multipliers)}
    if tail:
        spec_ev["tailSlack"] = tail

    # semi-periodic
    w = semi_bloch_witness(f, 0, eps_w)
    entry = _verdict(sv.semi_periodic, "spectral", **spec_ev)
    if w is not None:
        entry["witness"] = _witness_payload(w)
        check = witness_bound(f, w.p, "bloch", 0)
        entry["witnessRecheck"] = check
        if check > eps_w + _WITNESS_SLACK:
            dis.append(f"semi_periodic: witness p={w.p} fails the envelope recheck ({check:.3e})")
    if (sv.semi_periodic == YES) != (w is not None):
        dis.append("semi_periodic: spectral verdict and witness search disagree")
    verdicts["semi_periodic"] = entry

    # semi-Bloch for the requested k
    if k is not None:
        wk = semi_bloch_witness(f, k, eps_w)
        if wk is not None:
            check = witness_bound(f, wk.p, "bloch", k)
            verdicts["semi_bloch"] = _verdict(
                YES, "numeric-witness", f"exact phases at p = {wk.p_exact}", k=str(k),
                witness=_witness_payload(wk), witnessRecheck=check,
            )
            if check > eps_w + _WITNESS_SLACK:
                dis.append(f"semi_bloch: witness p={wk.p} fails the envelope recheck ({check:.3e})")
        else:
            verdicts["semi_bloch"] = _verdict(
                NO, "spectral", "reduced spectrum exp(-ikx) f is incommensurable", k=str(k)
            )

    # semi-anti-periodic
    wa = semi_anti_witness(f, eps_w)
    entry = _verdict(sv.semi_anti, "spectral", **spec_ev)
    if wa is not None:
        entry["witness"] = _witness_payload(wa)
        check = witness_bound(f, wa.p, "anti")
        entry["witnessRecheck"] = check
        if check > eps_w + _WITNESS_SLACK:
            dis.append(f"semi_anti: witness p={wa.p} fails the envelope recheck ({check:.3e})")
    if sv.semi_anti == YES and wa is None:
        dis.append("semi_anti: spectral yes but no certified witness")
    if sv.semi_anti == NO and wa is not None:
        dis.append("semi_anti: spectral no but a witness was certified")
    if sv.semi_anti == UNKNOWN:
        entry["reason"] = "non-uniform 2-adic valuation on a series head"
    verdicts["semi_anti"] = entry

    verdicts["anp_member"] = _verdict(
        sv.anp_member, "spectral",
        "zero frequency present" if sv.anp_member == NO else "zero frequency absent",
    )

    # almost anti-periodic
    if sv.anp_member == NO:
        verdicts["almost_anti"] = _verdict(
            NO, "spectral", "nonzero mean excludes almost anti-periodicity"
        )
    elif wa is not None:
        verdicts["almost_anti"] = _verdict(
            YES, "numeric-witness",
            f"odd multiples of p = {wa.p_exact} are antiperiods within {wa.bound:.3g}",
        )
    else:
        res = almost_anti_periodic_test(f, epsilon, window, scan_step, workers)
        scan = res.scan
        payload = {"hits": int(scan.hits.size), "maxGap": scan.max_gap,
                   "densityThreshold": scan.density_threshold, "epsilon": epsilon,
                   "window": list(window), "scanStep": scan_step}
        if res.passed:
            verdicts["almost_anti"] = _verdict(YES, "numeric-scan",
                                               "epsilon-antiperiods relatively dense on the window",
                                               scan=payload)
        else:
            verdicts["almost_anti"] = _unknown("epsilon-antiperiods not relatively dense on the window",
                                               scan=payload)
    if verdicts["almost_anti"]["verdict"] == YES and sv.anp_member == NO:
        dis.append("almost_anti yes contradicts a nonzero mean")

    # Stepanov semi-periodicity follows from uniform semi-periodicity
    ws = stepanov_semi_test(f, "periodic", q, eps_w)
    if ws is not None:
        verdicts["stepanov_semi_periodic"] = _verdict(
            YES, "numeric-witness", "uniform witness bounds the Stepanov distance", q=q,
            witness={"p": ws.p, "bound": ws.bound},
        )
    else:
        verdicts["stepanov_semi_periodic"] = _unknown(
            "no uniform witness; Stepanov membership not decided for this representation", q=q
        )

    report["crossChecks"]["bohr"] = _bohr_crosscheck(f, dis)
    return sv


def _piecewise_classes(F, epsilon, q, report):
    verdicts = report["verdicts"]
    c = separation_constant(F)
    found = stepanov_semi_test(F, "periodic", q, epsilon)
    if found is not None:
        verdicts["stepanov_semi_periodic"] = _verdict(
            YES, "numeric-witness", "candidate p passes on the window", q=q,
            witness={"p": found.p, "bound": found.bound},
        )
        return
    certs = []
    conclusive = c > 0
    for p in SEPARATION_CANDIDATES:
        if c <= 0:
            break
        cert = separation_witness(F, q, p)
        conclusive &= cert.conclusive and cert.lower_bound >= c - 1e-12
        certs.append({"p": p, "m": cert.m, "x": cert.x, "lowerBound": cert.lower_bound,
                      "conclusive": cert.conclusive})
    lengths = np.diff(F.breakpoints)
    growing = lengths.size >= 2 and lengths[0] > 1 and lengths[-1] > 1
    if conclusive and growing and epsilon < c:
        verdicts["stepanov_semi_periodic"] = _verdict(
            NO, "numeric-witness",
            "sign-alternating blocks longer than 1: every candidate p moves a unit window "
            "into an opposite-sign block", q=q, c=c, certificates=certs,
        )
    else:
        verdicts["stepanov_semi_periodic"] = _unknown(
            "no candidate passes, but block structure does not certify a no", q=q, certificates=certs,
        )


def _numeric_evidence(f, q, report):
    ev = {}
    for qq in (1.0, 2.0, 4.0):
        try:
            ev[f"stepanovNorm_q{qq:g}"] = stepanov_norm(f, qq)
        except SemiBlochError as exc:
            ev[f"stepanovNorm_q{qq:g}"] = f"error: {exc}"
    if isinstance(f, SampledSignal):
        lo, hi = f.window
        L = min(100.0, hi - lo)
        for kind in ("period", "antiperiod"):
            scan = epsilon_period_scan(f, kind, 0.1, (0.0, L), scan_step=f.step)
            ev[f"{kind}Scan"] = {"epsilon": 0.1, "window": [0.0, L], "hits": int(scan.hits.size),
                                 "maxGap": scan.max_gap, "certified": scan.certified}
    report["crossChecks"]["numericEvidence"] = ev


def classify(f, epsilon: float = 1e-3, window=(0.0, 1e4), q: float = 1.0, k=None,
             scan_step: float = 0.01, workers: int = 1, signal_id: str = "signal",
             no_verdict: bool = False, heat_time: float | None = None,
             digest: str | None = None) -> dict:
    """Run every applicable class test on ``f`` and return a report dict.

    Parameters
    ----------
    epsilon, window, q, k
        Witness level, shift window for scans, Stepanov exponent, Bloch wave
        vector (``None`` skips the semi-Bloch check).
    no_verdict : bool
        Membership is an open problem: collect numeric evidence only.
    heat_time : float, optional
        Also classify the heat-equation evolution of ``f`` and require
        identical spectral verdicts.
    """
    if k is not None and not isinstance(k, Frequency):
        k = Frequency.parse(str(k), {s.name: s for s in (SQRT2, PI_SQRT2)})
    report = {
        "signalId": signal_id,
        "toolkitVersion": __version__,
        "inputDigest": digest,
        "options": {"epsilon": epsilon, "window": list(window), "q": q,
                    "k": None if k is None else str(k), "scanStep": scan_step},
        "representation": type(f).__name__,
        "verdicts": {},
        "crossChecks": {},
        "disagreements": [],
        "notes": [REPRESENTATION_NOTE],
    }
    if no_verdict:
        report["notes"].append("membership is an open question: numeric evidence only, no verdict")
        for cls in ("semi_periodic", "semi_anti", "stepanov_semi_periodic"):
            report["verdicts"][cls] = _unknown("open question: no verdict")
        _numeric_evidence(f, q, report)
        return report
    if isinstance(f, (TrigPolynomial, TruncatedSeries)):
        sv = _exact_classes(f, epsilon, window, q, k, scan_step, workers, report)
        if heat_time is not None:
            from .convolution import heat_evolve

            u = heat_evolve(f, heat_time)
            after = spectral_classify(u)
            same = ((after.semi_periodic, after.semi_anti, after.anp_member)
                    == (sv.semi_periodic, sv.semi_anti, sv.anp_member))
            report["crossChecks"]["heat"] = {
                "time": heat_time, "identicalVerdicts": same,
                "after": {"semi_periodic": after.semi_periodic, "semi_anti": after.semi_anti,
                          "anp_member": after.anp_member},
            }
            if not same:
                report["disagreements"].append("heat evolution changed a spectral verdict")
    elif isinstance(f, PiecewiseConstantSignal):
        for cls in ("semi_periodic", "semi_anti", "anp_member"):
            report["verdicts"][cls] = _unknown("exact spectrum needs a trigonometric representation")
        _piecewise_classes(f, epsilon, q, report)
        _numeric_evidence(f, q, report)
    else:
        for cls in ("semi_periodic", "semi_anti", "stepanov_semi_periodic"):
            report["verdicts"][cls] = _unknown("sampled representation: no certified verdict")
        _numeric_evidence(f, q, report)
    report["verdicts"] = dict(sorted(report["verdicts"].items()))
    return report
