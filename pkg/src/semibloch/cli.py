"""Command line front end.

Commands: ``classify``, ``bohr``, ``periods``, ``convolve``, ``catalog``,
``emit``.  Exit status 0 on success, 1 on invalid input, 2 when the exact and
numeric paths disagree (or a catalog entry misses its expected verdict).
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__, catalog
from .classify import classify
from .convolution import (
    heat_evolve,
    infinite_convolution,
    finite_convolution,
    summability_constant,
    KernelFamily,
)
from .errors import SemiBlochError, ValidationError
from .frequency import Frequency, ONE, SQRT2, PI_SQRT2
from .io import (
    dump_report,
    format_csv,
    input_digest,
    load_signal_spec,
    parse_signal_spec,
    signal_to_spec,
)
from .periods import epsilon_period_scan, semi_anti_witness, semi_bloch_witness
from .signals import TrigPolynomial, TruncatedSeries
from .spectrum import bohr_coefficient

EXIT_OK, EXIT_INVALID, EXIT_DISAGREE = 0, 1, 2
DEFAULT_EPSILON = 1e-3
DEFAULT_WINDOW = (0.0, 1e4)


class _Invalid(Exception):
    pass


def _pair(text: str) -> tuple[float, float]:
    try:
        a, b = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'a,b', got {text!r}") from None
    if not b > a:
        raise argparse.ArgumentTypeError("window end must exceed its start")
    return a, b


def _symbol_table(f) -> dict:
    table = {s.name: s for s in (ONE, SQRT2, PI_SQRT2)}
    head = f.head if isinstance(f, TruncatedSeries) else f
    if isinstance(head, TrigPolynomial):
        for lam in head.frequencies:
            for sym in lam.symbols:
                table[sym.name] = sym
    return table


def _parse_frequency(text: str, f) -> Frequency:
    try:
        return Frequency.parse(text, _symbol_table(f))
    except (ValueError, KeyError) as exc:
        raise _Invalid(f"cannot parse frequency {text!r}: {exc}") from None


def _load(args):
    """Returns ``(signal, kernel, entry, document)``."""
    if getattr(args, "catalog", None):
        try:
            entry = catalog.get(args.catalog)
        except KeyError as exc:
            raise _Invalid(exc.args[0]) from None
        return entry.signal(), None, entry, {"catalog": entry.name}
    if not getattr(args, "spec", None):
        raise _Invalid("give a signal-spec file (or '-') or --catalog NAME")
    text = sys.stdin.read() if args.spec == "-" else open(args.spec, encoding="utf-8").read()
    signal, kernel = parse_signal_spec(text)
    return signal, kernel, None, json.loads(text)


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.report == "json":
        out = dump_report(payload)
    else:
        out = "\n".join(text_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _report_lines(report: dict) -> list[str]:
    lines = [f"signal {report['signalId']} ({report['representation']})"]
    for name, v in report["verdicts"].items():
        why = v.get("evidence") or v.get("reason", "")
        lines.append(f"  {name:24s} {v['verdict']:8s} [{v['method']}] {why}")
    for d in report["disagreements"]:
        lines.append(f"  DISAGREEMENT: {d}")
    return lines


# -- commands ----------------------------------------------------------------

def cmd_classify(args) -> int:
    signal, _, entry, doc = _load(args)
    eps = args.epsilon if args.epsilon is not None else (
        entry.epsilon if entry and entry.epsilon else DEFAULT_EPSILON)
    k = None if args.k is None else _parse_frequency(args.k, signal)
    options = {"epsilon": eps, "window": list(args.window), "q": args.q, "k": args.k}
    report = classify(
        signal, eps, args.window, args.q, k, args.scan_step, args.workers,
        signal_id=entry.name if entry else (args.spec or "stdin"),
        no_verdict=bool(entry and entry.no_verdict),
        heat_time=entry.heat_time if entry else None,
        digest=input_digest({"input": doc, "options": options}),
    )
    _emit(args, report, _report_lines(report))
    return EXIT_DISAGREE if report["disagreements"] else EXIT_OK


def cmd_bohr(args) -> int:
    signal, _, entry, doc = _load(args)
    r = _parse_frequency(args.r, signal)
    est, bound = bohr_coefficient(signal, r, args.T, args.workers)
    payload = {"r": str(r), "T": args.T, "estimate": est, "errorBound": bound,
               "inputDigest": input_digest({"input": doc, "r": args.r, "T": args.T})}
    _emit(args, payload, [f"P_{r}(T={args.T:g}) = {est.real:.12g}{est.imag:+.12g}i  (error <= {bound:.3g})"])
    return EXIT_OK


def cmd_periods(args) -> int:
    signal, _, entry, doc = _load(args)
    eps = args.epsilon if args.epsilon is not None else DEFAULT_EPSILON
    k = None if args.k is None else _parse_frequency(args.k, signal)
    scan = epsilon_period_scan(signal, args.kind, eps, args.window, args.scan_step, k, args.workers)
    payload = {
        "kind": args.kind, "epsilon": eps, "window": list(args.window), "scanStep": args.scan_step,
        "hits": int(scan.hits.size), "maxGap": scan.max_gap,
        "relativelyDense": scan.relatively_dense, "certified": scan.certified,
        "inputDigest": input_digest({"input": doc, "kind": args.kind, "epsilon": eps}),
    }
    lines = [f"{args.kind} scan eps={eps:g} on [{args.window[0]:g}, {args.window[1]:g}]: "
             f"{scan.hits.size} hits, max gap {scan.max_gap:.6g}"]
    if isinstance(signal, (TrigPolynomial, TruncatedSeries)):
        w = (semi_anti_witness(signal, eps) if args.kind == "antiperiod"
             else semi_bloch_witness(signal, k if args.kind == "bloch" else 0, eps))
        if w is not None:
            payload["witness"] = {"p": w.p, "pExact": w.p_exact, "bound": w.bound,
                                  "mHorizon": w.m_horizon}
            lines.append(f"witness p = {w.p_exact} = {w.p:.12g}, bound {w.bound:.3g} ({w.m_horizon})")
        else:
            lines.append("no exact witness")
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(["tau", "certified_bound"], zip(scan.hits, scan.bounds)))
    _emit(args, payload, lines)
    return EXIT_OK


def _kernel_from_args(args, kernel):
    if args.kernel:
        from .io import kernel_from_spec

        try:
            obj = json.loads(args.kernel)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{exc.msg} (line {exc.lineno}, column {exc.colno})", field="--kernel")
        return kernel_from_spec(obj)
    return kernel if kernel is not None else KernelFamily.exponential(1.0)


def cmd_convolve(args) -> int:
    signal, kernel, entry, doc = _load(args)
    kernel = _kernel_from_args(args, kernel)
    a, b = args.range
    ts = np.linspace(a, b, args.points)
    summ = summability_constant(kernel)
    conv = finite_convolution if args.finite else infinite_convolution
    vals, errs = conv(kernel, signal, ts, full_output=True)
    rows = [(t, v.real, v.imag, e) for t, v, e in zip(ts, vals, errs)]
    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(format_csv(["t", "re", "im", "error_bound"], rows))
    payload = {"kernel": signal_to_spec(signal, kernel)["kernel"], "M": summ.M,
               "truncationK": summ.truncation_K, "tailBound": summ.tail_bound,
               "finite": args.finite,
               "values": [{"t": t, "re": re, "im": im, "errorBound": e} for t, re, im, e in rows]}
    lines = [f"M = {summ.M:.12g} (K = {summ.truncation_K})"]
    lines += [f"t={t:.6g}  {re:.12g}{im:+.12g}i  (+-{e:.2g})" for t, re, im, e in rows]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_catalog(args) -> int:
    if not args.check:
        lines = [f"{e.name:20s} {e.description}" for e in catalog.CATALOG.values()]
        payload = {e.name: {"description": e.description,
                            "expected": [{"class": x.cls, "verdict": x.verdict,
                                          "k": None if x.k is None else str(x.k)} for x in e.expected]}
                   for e in catalog.CATALOG.values()}
        _emit(args, payload, lines)
        return EXIT_OK
    status = EXIT_OK
    results, lines = {}, []
    for e in catalog.CATALOG.values():
        if args.names and e.name not in args.names:
            continue
        f = e.signal()
        eps = e.epsilon or DEFAULT_EPSILON
        outcome = []
        for x in e.expected:
            rep = classify(f, eps, args.window, args.q, x.k, args.scan_step, args.workers,
                           signal_id=e.name, heat_time=e.heat_time)
            got = rep["verdicts"].get(x.cls, {}).get("verdict")
            ok = got == x.verdict and not rep["disagreements"]
            outcome.append({"class": x.cls, "k": None if x.k is None else str(x.k),
                            "expected": x.verdict, "got": got, "ok": ok})
            lines.append(f"{'PASS' if ok else 'FAIL'}  {e.name:20s} {x.cls}"
                         f"{'' if x.k is None else f' (k={x.k})'}: expected {x.verdict}, got {got}")
            if not ok:
                status = EXIT_DISAGREE
        if not e.expected:
            lines.append(f"----  {e.name:20s} no verdict (open question)")
        results[e.name] = outcome
    _emit(args, results, lines)
    return status


def cmd_emit(args) -> int:
    signal, kernel, entry, doc = _load(args)
    a, b = args.range
    n = int(math.floor((b - a) / args.step + 1e-9)) + 1
    xs = a + args.step * np.arange(n)
    if args.what == "signal":
        v = np.asarray(signal(xs), dtype=complex)
        header, rows = ["x", "re", "im"], zip(xs, v.real, v.imag)
    elif args.what == "periods":
        eps = args.epsilon if args.epsilon is not None else DEFAULT_EPSILON
        scan = epsilon_period_scan(signal, args.kind, eps, (a, b), args.step)
        header, rows = ["tau", "certified_bound"], zip(scan.hits, scan.bounds)
    elif args.what == "heat":
        times = xs
        head = signal.head if isinstance(signal, TruncatedSeries) else signal
        if not isinstance(head, TrigPolynomial):
            raise _Invalid("heat trace needs a trigonometric signal")
        header = ["t"] + [f"{part}[{lam}]" for lam in head.frequencies for part in ("re", "im")]
        rows = []
        for t in times:
            u = head if t == 0 else heat_evolve(head, float(t))
            coef = dict((lam, c) for c, lam in u.terms)
            row = [t]
            for lam in head.frequencies:
                c = coef.get(lam, 0j)
                row += [c.real, c.imag]
            rows.append(row)
    else:
        kern = _kernel_from_args(args, kernel)
        vals = infinite_convolution(kern, signal, xs)
        header, rows = ["t", "re", "im"], zip(xs, vals.real, vals.imag)
    text = format_csv(header, rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("spec", nargs="?", help="signal-spec JSON file, or '-' for stdin")
    common.add_argument("--catalog", metavar="NAME", help="use a built-in fixture instead of a file")
    common.add_argument("--epsilon", type=float, default=None, help=f"witness level (default {DEFAULT_EPSILON})")
    common.add_argument("--window", type=_pair, default=DEFAULT_WINDOW, help="shift window 'a,b' (default 0,1e4)")
    common.add_argument("--q", type=float, default=1.0, help="Stepanov exponent (default 1)")
    common.add_argument("--k", default=None, help="Bloch wave vector, e.g. '1/2' or 'sqrt2'")
    common.add_argument("--scan-step", type=float, default=0.01)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--report", choices=("json", "text"), default="text")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="semibloch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="class verdicts with evidence")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bohr", parents=[common], help="Bohr coefficient with error bound")
    p.add_argument("--r", required=True, help="frequency, e.g. '1', '-1/3', 'pi_sqrt2'")
    p.add_argument("--T", type=float, default=100.0)
    p.set_defaults(func=cmd_bohr)

    p = sub.add_parser("periods", parents=[common], help="epsilon-period scan and exact witness")
    p.add_argument("--kind", choices=("period", "antiperiod", "bloch"), default="antiperiod")
    p.add_argument("--csv", default=None, help="also write (tau, bound) rows here")
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("convolve", parents=[common], help="convolution with a kernel")
    p.add_argument("--kernel", default=None, help='kernel JSON, e.g. \'{"kind":"exponential","omega":1}\'')
    p.add_argument("--range", type=_pair, default=(0.0, 10.0))
    p.add_argument("--points", type=int, default=11)
    p.add_argument("--finite", action="store_true", help="integrate over [0, t] only")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("catalog", parents=[common], help="list fixtures or check their verdicts")
    p.add_argument("--check", action="store_true")
    p.add_argument("--names", nargs="*", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("emit", parents=[common], help="CSV series")
    p.add_argument("--what", choices=("signal", "periods", "heat", "convolution"), default="signal")
    p.add_argument("--kind", choices=("period", "antiperiod", "bloch"), default="antiperiod")
    p.add_argument("--kernel", default=None)
    p.add_argument("--range", type=_pair, required=True)
    p.add_argument("--step", type=float, required=True)
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (_Invalid, ValidationError, SemiBlochError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
