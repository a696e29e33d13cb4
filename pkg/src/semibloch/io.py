"""JSON signal-spec documents, JSON reports and CSV series.

Signal-spec document (UTF-8 JSON)::

    {"kind": "trig" | "series" | "piecewise" | "sampled",
     "domain": "R" | "R+",
     "symbols": {"one": "1", "pi_sqrt2": "4.44288..."},
     "terms": [{"re": 0.5, "im": 0, "num": 1, "den": 1, "symbol": "one"}, ...],
     "tailSupBound": 0.22,                                   # series only
     "breakpoints": [...], "values": [...],                  # piecewise
     "origin": 0, "step": 0.01, "samples": [...] or {"re": [...], "im": [...]},
     "lipschitzBound": 1.0,                                  # sampled, optional
     "kernel": {"kind": "exponential", "omega": 1.0}}        # optional

A term whose frequency mixes several symbols uses ``"parts": [{"num", "den",
"symbol"}, ...]`` instead of ``num/den/symbol``.  ``{"catalog": "strina"}``
loads a built-in fixture.
"""
from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import math
from fractions import Fraction

import numpy as np

from . import catalog
from .convolution import KernelFamily
from .errors import ParameterError, ValidationError
from .frequency import ONE, Frequency, FrequencySymbol
from .signals import (
    HALF_LINE,
    REAL_LINE,
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
)

__all__ = [
    "SpecParseError",
    "parse_signal_spec",
    "load_signal_spec",
    "signal_to_spec",
    "dump_signal_spec",
    "kernel_to_spec",
    "input_digest",
    "dump_report",
    "format_csv",
    "write_csv",
]

CSV_DIGITS = 12


class SpecParseError(ValidationError):
    """Malformed JSON; ``line`` and ``column`` locate the problem."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})", field=None)
        self.line = line
        self.column = column


def _require(doc: dict, key: str, where: str = ""):
    if key not in doc:
        raise ValidationError(f"missing field {where}{key!r}", field=f"{where}{key}")
    return doc[key]


def _number(value, fieldname: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValidationError(f"{fieldname} must be a number", field=fieldname)
    if not math.isfinite(value):
        raise ValidationError(f"{fieldname} must be finite", field=fieldname)
    return float(value)


def _integer(value, fieldname: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(f"{fieldname} must be an integer", field=fieldname)
    return value


def _symbols(doc: dict) -> dict:
    table = {ONE.name: ONE}
    raw = doc.get("symbols", {})
    if not isinstance(raw, dict):
        raise ValidationError("symbols must be an object", field="symbols")
    for name, value in raw.items():
        try:
            sym = FrequencySymbol(name, str(value))
        except ValueError as exc:
            raise ValidationError(str(exc), field=f"symbols.{name}") from None
        if name == ONE.name and sym != ONE:
            raise ValidationError("symbol 'one' must have value 1", field="symbols.one")
        table[name] = sym
    return table


def _rational(obj: dict, where: str) -> Fraction:
    num = _integer(_require(obj, "num", where), f"{where}num")
    den = _integer(obj.get("den", 1), f"{where}den")
    if den == 0:
        raise ValidationError("denominator must be nonzero", field=f"{where}den")
    return Fraction(num, den)


def _symbol_ref(obj: dict, table: dict, where: str) -> FrequencySymbol:
    name = obj.get("symbol", ONE.name)
    if name not in table:
        raise ValidationError(f"undeclared symbol {name!r}", field=f"{where}symbol")
    return table[name]


def _term(obj, table: dict, i: int):
    where = f"terms[{i}]."
    if not isinstance(obj, dict):
        raise ValidationError("term must be an object", field=f"terms[{i}]")
    coef = complex(_number(obj.get("re", 0.0), f"{where}re"), _number(obj.get("im", 0.0), f"{where}im"))
    if "parts" in obj:
        items = {}
        for j, part in enumerate(obj["parts"]):
            pw = f"{where}parts[{j}]."
            sym = _symbol_ref(part, table, pw)
            items[sym] = items.get(sym, Fraction(0)) + _rational(part, pw)
        lam = Frequency.combo(items)
    else:
        lam = Frequency(_rational(obj, where), _symbol_ref(obj, table, where))
    return coef, lam


def _trig(doc: dict, table: dict, domain: str) -> TrigPolynomial:
    terms = _require(doc, "terms")
    if not isinstance(terms, list):
        raise ValidationError("terms must be a list", field="terms")
    parsed = [_term(t, table, i) for i, t in enumerate(terms)]
    seen = set()
    for i, (_, lam) in enumerate(parsed):
        if lam in seen:
            raise ValidationError(f"duplicate frequency {lam}", field=f"terms[{i}]")
        seen.add(lam)
    return TrigPolynomial(parsed, domain)


def _complex_array(value, fieldname: str) -> np.ndarray:
    if isinstance(value, dict):
        re = np.asarray(_require(value, "re", f"{fieldname}."), dtype=float)
        im = np.asarray(value.get("im", np.zeros_like(re)), dtype=float)
        if re.shape != im.shape:
            raise ValidationError("re and im lengths differ", field=f"{fieldname}.im")
        return re + 1j * im
    try:
        return np.asarray(value, dtype=float)
    except (TypeError, ValueError):
        raise ValidationError(f"{fieldname} must be a list of numbers", field=fieldname) from None


def kernel_from_spec(obj) -> KernelFamily:
    if not isinstance(obj, dict):
        raise ValidationError("kernel must be an object", field="kernel")
    kind = _require(obj, "kind", "kernel.")
    qp = obj.get("qPrime", math.inf)
    if qp in ("inf", None) or (isinstance(qp, float) and qp == math.inf):
        qp = math.inf
    else:
        qp = _number(qp, "kernel.qPrime")
    try:
        if kind == "exponential":
            return KernelFamily.exponential(_number(_require(obj, "omega", "kernel."), "kernel.omega"), qp)
        if kind == "gauss":
            return KernelFamily.gauss(_number(_require(obj, "time", "kernel."), "kernel.time"), qp)
        if kind == "tabulated":
            return KernelFamily.tabulated(_number(_require(obj, "step", "kernel."), "kernel.step"),
                                          _require(obj, "values", "kernel."), qp)
    except ParameterError as exc:
        raise ValidationError(str(exc), field="kernel") from None
    raise ValidationError(f"unknown kernel kind {kind!r}", field="kernel.kind")


def parse_signal_spec(document: str):
    """Parse a signal-spec document; returns ``(signal, kernel or None)``."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, exc.lineno, exc.colno) from None
    return load_signal_spec(doc)


def load_signal_spec(doc):
    """Build ``(signal, kernel or None)`` from an already decoded document."""
    if not isinstance(doc, dict):
        raise ValidationError("document must be a JSON object", field=None)
    kernel = kernel_from_spec(doc["kernel"]) if "kernel" in doc else None
    if "catalog" in doc:
        try:
            return catalog.get(doc["catalog"]).signal(), kernel
        except KeyError as exc:
            raise ValidationError(str(exc.args[0]), field="catalog") from None
    kind = _require(doc, "kind")
    domain = doc.get("domain", REAL_LINE)
    if domain not in (REAL_LINE, HALF_LINE):
        raise ValidationError(f"domain must be 'R' or 'R+', got {domain!r}", field="domain")
    table = _symbols(doc)
    try:
        if kind == "trig":
            return _trig(doc, table, domain), kernel
        if kind == "series":
            tail = _number(_require(doc, "tailSupBound"), "tailSupBound")
            if tail < 0:
                raise ValidationError("tailSupBound must be >= 0", field="tailSupBound")
            return TruncatedSeries(_trig(doc, table, domain), tail), kernel
        if kind == "piecewise":
            bp = np.asarray(_require(doc, "breakpoints"), dtype=float)
            vals = _complex_array(_require(doc, "values"), "values")
            if bp.ndim != 1 or bp.size < 2 or not np.all(np.diff(bp) > 0):
                raise ValidationError("breakpoints must be strictly increasing", field="breakpoints")
            if vals.shape != (bp.size - 1,):
                raise ValidationError("need one value per interval", field="values")
            return PiecewiseConstantSignal(bp, vals), kernel
        if kind == "sampled":
            samples = _complex_array(_require(doc, "samples"), "samples")
            lip = doc.get("lipschitzBound")
            lip = None if lip is None else _number(lip, "lipschitzBound")
            try:
                sig = SampledSignal(_number(doc.get("origin", 0.0), "origin"),
                                    _number(_require(doc, "step"), "step"), samples, lip)
            except ParameterError as exc:
                msg = str(exc)
                fieldname = "lipschitzBound" if "Lipschitz" in msg else ("step" if "step" in msg else "samples")
                raise ValidationError(msg, field=fieldname) from None
            return sig, kernel
    except ParameterError as exc:
        raise ValidationError(str(exc), field="terms") from None
    raise ValidationError(f"unknown signal kind {kind!r}", field="kind")


# -- serialization ---------------------------------------------------------

def _freq_fields(lam: Frequency, table: dict) -> dict:
    for sym, _ in lam.terms:
        table[sym.name] = sym.value
    if lam.is_zero or lam.is_simple:
        c = lam.coeff
        return {"num": c.numerator, "den": c.denominator, "symbol": lam.symbol.name}
    return {"parts": [{"num": c.numerator, "den": c.denominator, "symbol": s.name} for s, c in lam.terms]}


def _terms_fields(f: TrigPolynomial, table: dict) -> list:
    out = []
    for c, lam in f.terms:
        item = {"re": c.real, "im": c.imag}
        item.update(_freq_fields(lam, table))
        out.append(item)
    return out


def _array_field(values: np.ndarray):
    values = np.asarray(values)
    if np.iscomplexobj(values) and np.any(values.imag != 0):
        return {"re": values.real.tolist(), "im": values.imag.tolist()}
    return np.real(values).astype(float).tolist()


def kernel_to_spec(kernel: KernelFamily) -> dict:
    out = {"kind": kernel.kind}
    if kernel.kind == "exponential":
        out["omega"] = kernel.omega
    elif kernel.kind == "gauss":
        out["time"] = kernel.time
    else:
        out["step"] = kernel.step
        out["values"] = list(kernel.values)
    if kernel.q_prime != math.inf:
        out["qPrime"] = kernel.q_prime
    return out


def signal_to_spec(f, kernel: KernelFamily | None = None) -> dict:
    """Inverse of :func:`load_signal_spec`."""
    table = {ONE.name: ONE.value}
    if isinstance(f, (TrigPolynomial, TruncatedSeries)):
        head = f.head if isinstance(f, TruncatedSeries) else f
        doc = {"kind": "series" if isinstance(f, TruncatedSeries) else "trig", "domain": head.domain}
        doc["terms"] = _terms_fields(head, table)
        if isinstance(f, TruncatedSeries):
            doc["tailSupBound"] = f.tail_sup_bound
        doc["symbols"] = dict(sorted(table.items()))
    elif isinstance(f, PiecewiseConstantSignal):
        doc = {"kind": "piecewise", "breakpoints": f.breakpoints.tolist(),
               "values": _array_field(f.values)}
    elif isinstance(f, SampledSignal):
        doc = {"kind": "sampled", "origin": f.origin, "step": f.step,
               "samples": _array_field(f.samples)}
        if f.lipschitz_bound is not None:
            doc["lipschitzBound"] = f.lipschitz_bound
    else:
        raise ParameterError(f"cannot serialize {type(f).__name__}")
    if kernel is not None:
        doc["kernel"] = kernel_to_spec(kernel)
    return doc


def dump_signal_spec(f, kernel: KernelFamily | None = None) -> str:
    return json.dumps(signal_to_spec(f, kernel), sort_keys=True, indent=2)


# -- reports -----------------------------------------------------------------

def input_digest(document) -> str:
    """SHA-256 of the canonical JSON form of the input document and options."""
    text = json.dumps(document, sort_keys=True, separators=(",", ":"), default=_jsonable)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def _jsonable(obj):
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (Fraction, Frequency)):
        return str(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    raise TypeError(f"not JSON serializable: {type(obj).__name__}")


def _clean(obj):
    # non-finite floats are not valid JSON; write them as strings
    if isinstance(obj, float) and not math.isfinite(obj):
        return "inf" if obj > 0 else ("-inf" if obj < 0 else "nan")
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dump_report(report: dict) -> str:
    """Deterministic JSON text: sorted keys, fixed indentation."""
    text = json.dumps(_clean(report), sort_keys=True, indent=2, default=_jsonable)
    return text + "\n"


# -- CSV -----------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, str):
        return v
    return format(float(v), f".{CSV_DIGITS}g")


def format_csv(header, rows) -> str:
    """Comma-separated text, ``\\n`` line endings, 12 significant digits."""
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_csv(header, rows))
