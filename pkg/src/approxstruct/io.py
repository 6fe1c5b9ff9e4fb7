"""Set-spec ingestion, JSON/CSV serialization and run configuration.

Big integers always cross this boundary as decimal strings.
"""
from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field, fields
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import IO, Any, Optional, Union

from .density import DensityEstimate
from .errors import SetSpecError
from .families import generate
from .intset import IntegerSet
from .search import ApproxParams, CertificateTerm, ProgressionCertificate, VerifyReport


def _to_int(value, what: str) -> int:
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return value
        return int(str(value).strip())
    except ValueError:
        raise SetSpecError(f"{what} is not an integer: {value!r}") from None


def parse_setspec(spec: Union[str, dict]) -> IntegerSet:
    """Build a set from a JSON document, a path to one, or an already-parsed dict.

    Accepted shapes::

        {"kind": "intervals", "intervals": [["4", "9"], ["16", "25"]]}
        {"kind": "explicit", "elements": ["3", "8"]}
        {"kind": "family", "name": "pow2-blocks", "params": {"delta": "2/5"}, "bound": "1024"}
    """
    if isinstance(spec, str):
        text = spec
        if not spec.lstrip().startswith("{") and os.path.exists(spec):
            with open(spec) as fh:
                text = fh.read()
        try:
            spec = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SetSpecError(f"set spec is not valid JSON: {exc}") from None
    if not isinstance(spec, dict):
        raise SetSpecError("set spec must be a JSON object")
    kind = spec.get("kind")
    try:
        if kind == "intervals":
            raw = [(_to_int(lo, "interval end"), _to_int(hi, "interval end"))
                   for lo, hi in spec.get("intervals", [])]
            return IntegerSet.from_intervals(raw, spec.get("provenance"))
        if kind == "explicit":
            return IntegerSet.from_elements(
                (_to_int(x, "element") for x in spec.get("elements", [])), spec.get("provenance"))
        if kind == "family":
            if "bound" not in spec:
                raise SetSpecError("family spec needs a bound")
            return generate(spec.get("name"), spec.get("params") or {},
                            _to_int(spec["bound"], "bound"))
    except SetSpecError:
        raise
    except (ValueError, TypeError) as exc:
        raise SetSpecError(str(exc)) from None
    raise SetSpecError(f"unknown set spec kind {kind!r}")


def set_to_json(A: IntegerSet) -> dict:
    out: dict[str, Any] = {"kind": "intervals",
                           "intervals": [[str(lo), str(hi)] for lo, hi in A.intervals]}
    if A.provenance:
        out["provenance"] = A.provenance
    return out


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def decimal_str(x: Fraction, direction: str, digits: int = 17) -> str:
    """Decimal rendering rounded toward -inf ("down") or +inf ("up")."""
    x = Fraction(x)
    ctx = Context(prec=digits, rounding=ROUND_FLOOR if direction == "down" else ROUND_CEILING)
    d = ctx.divide(Decimal(x.numerator), Decimal(x.denominator))
    return format(d, "f") if abs(d.adjusted()) < 20 else str(d)


# -- certificates and reports ----------------------------------------------

def certificate_to_json(cert: ProgressionCertificate) -> dict:
    out: dict[str, Any] = {"kind": cert.kind, "a": str(cert.a), "d": str(cert.d), "l": str(cert.l),
                           "c": fraction_str(cert.params.c), "r": fraction_str(cert.params.r)}
    if cert.m is not None:
        out["m"] = str(cert.m)
    if cert.eps is not None:
        out["eps"] = fraction_str(cert.eps)
    out["terms"] = [{"g": str(t.g), "x": str(t.x), "bound": decimal_str(t.bound, "down", 30)}
                    for t in cert.terms]
    return out


def certificate_from_json(doc: dict) -> ProgressionCertificate:
    params = ApproxParams(Fraction(doc["c"]), Fraction(doc["r"]))
    terms = tuple(CertificateTerm(int(t["g"]), int(t["x"]), Fraction(t["bound"]))
                  for t in doc["terms"])
    return ProgressionCertificate(
        doc["kind"], int(doc["a"]), int(doc["d"]), int(doc["l"]), params, terms,
        m=int(doc["m"]) if "m" in doc else None,
        eps=Fraction(doc["eps"]) if "eps" in doc else None)


def report_to_json(report: VerifyReport) -> dict:
    out: dict[str, Any] = {"status": report.status, "checked": str(report.checked)}
    if report.violation is not None:
        out["violation"] = {k: str(v) for k, v in report.violation.items()}
    if report.side_condition is not None:
        out["side_condition"] = report.side_condition
    return out


def estimate_to_json(est: DensityEstimate, k: Optional[int] = None) -> dict:
    v = est.value
    return {"window": {"kind": est.window.kind, "k": str(est.window.k if k is None else k),
                       "n": str(est.window.n)},
            "exponent": None if est.exponent is None else fraction_str(est.exponent),
            "lo": decimal_str(v.lo, "down"), "hi": decimal_str(v.hi, "up"),
            "width": decimal_str(v.width, "up", 6)}


CSV_COLUMNS = ("horizon", "k", "lo", "hi", "width")


def write_curve_csv(rows, fh: IO[str]) -> None:
    """Rows of ``(horizon, k, estimate)`` as CSV with the fixed column set."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for horizon, k, est in rows:
        v = est.value
        w.writerow([horizon, k, decimal_str(v.lo, "down"), decimal_str(v.hi, "up"),
                    decimal_str(v.width, "up", 6)])


# -- configuration ---------------------------------------------------------

@dataclass
class RunConfig:
    precision_start: int = 128
    precision_cap: int = 4096
    exact_threshold: int = 10 ** 6
    element_cap: int = 10 ** 7
    horizon_start: int = 1024
    horizon_ratio: Fraction = Fraction(2)
    horizon_count: int = 11
    candidate_policy: str = "endpoints"
    candidates: list = field(default_factory=list)
    tolerance: float = 0.02
    seed: int = 0

    def __post_init__(self):
        if self.precision_start > self.precision_cap:
            raise SetSpecError("precision_start exceeds precision_cap")
        if Fraction(self.horizon_ratio) <= 1:
            raise SetSpecError("horizon ratio must exceed 1")
        if self.candidate_policy not in ("endpoints", "explicit"):
            raise SetSpecError(f"unknown candidate policy {self.candidate_policy!r}")

    def with_overrides(self, **values) -> "RunConfig":
        current = {f.name: getattr(self, f.name) for f in fields(self)}
        current.update({k: v for k, v in values.items() if v is not None})
        return RunConfig(**current)


def _coerce(name: str, raw: str):
    kinds = {f.name: f.type for f in fields(RunConfig)}
    if name not in kinds:
        raise SetSpecError(f"unknown config key {name!r}")
    if name == "horizon_ratio":
        return Fraction(raw)
    if name == "tolerance":
        return float(raw)
    if name == "candidate_policy":
        return raw
    if name == "candidates":
        return [int(x) for x in raw.replace(",", " ").split()]
    return int(raw)


def load_config(path: Optional[str] = None, text: Optional[str] = None) -> RunConfig:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    if path is not None:
        with open(path) as fh:
            text = fh.read()
    values = {}
    for lineno, line in enumerate((text or "").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SetSpecError(f"config line {lineno}: expected key = value")
        key, raw = (s.strip() for s in line.split("=", 1))
        try:
            values[key] = _coerce(key, raw)
        except (ValueError, ZeroDivisionError):
            raise SetSpecError(f"config line {lineno}: bad value for {key}: {raw!r}") from None
    return RunConfig(**values)
