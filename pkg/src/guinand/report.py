"""Verification records and their JSON/CSV serialization."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field

import numpy as np


def format_complex(z) -> str:
    """Render a complex number as ``"a+bi"`` (real numbers stay plain)."""
    z = complex(z)
    if z.imag == 0:
        return repr(float(z.real))
    sign = "+" if z.imag >= 0 or math.isnan(z.imag) else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}i"


def parse_complex(text: str) -> complex:
    """Inverse of :func:`format_complex`; also accepts ``e``, ``pi`` and
    fractions like ``5/4`` for real literals."""
    t = text.strip().replace(" ", "")
    named = {"e": math.e, "pi": math.pi}
    if t in named:
        return complex(named[t])
    if re.fullmatch(r"[+-]?\d+/\d+", t):
        num, den = t.split("/")
        return complex(int(num) / int(den))
    if not t or t[-1] not in "ij":
        return complex(_real(t, text))
    body = t[:-1]
    # split at the last sign that is not part of an exponent
    cut = 0
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            cut = k
            break
    re_txt, im_txt = body[:cut], body[cut:]
    im = {"": 1.0, "+": 1.0, "-": -1.0}.get(im_txt)
    if im is None:
        im = _real(im_txt, text)
    return complex(_real(re_txt, text) if re_txt else 0.0, im)


def _real(tok: str, text: str) -> float:
    if not re.fullmatch(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?", tok):
        raise ValueError(f"cannot parse complex literal {text!r}")
    return float(tok)


def _plain(v):
    """JSON-safe representation: complex values become ``"a+bi"`` strings."""
    if isinstance(v, (complex, np.complexfloating)):
        z = complex(v)
        if z.imag == 0:
            return _plain(z.real)
        return format_complex(z)
    if isinstance(v, (np.floating, float)):
        f = float(v)
        if math.isnan(f) or math.isinf(f):
            return repr(f)
        return f
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


@dataclass
class Check:
    """One named numerical check.

    ``gated`` checks decide the overall pass flag; report-only checks
    carry ``gated=False``.
    """

    name: str
    value: object
    expected: object
    abs_err: float
    rel_err: float
    passed: bool
    tol: float | None = None
    gated: bool = True
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "value": _plain(self.value),
            "expected": _plain(self.expected),
            "abs_err": _plain(self.abs_err),
            "rel_err": _plain(self.rel_err),
            "pass": bool(self.passed),
            "tol": _plain(self.tol),
            "gated": bool(self.gated),
        }
        if self.extra:
            d["extra"] = _plain(self.extra)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Check":
        try:
            return cls(name=d["name"], value=d["value"], expected=d["expected"],
                       abs_err=d["abs_err"], rel_err=d["rel_err"], passed=bool(d["pass"]),
                       tol=d.get("tol"), gated=bool(d.get("gated", True)),
                       extra=d.get("extra", {}))
        except KeyError as exc:
            raise ValueError(f"check record is missing field {exc}") from None


@dataclass
class VerificationReport:
    """Named check results plus the parameters that produced them.

    ``meta["timing"]`` holds wall-clock data and is the only part of the
    report that may differ between identical runs.
    """

    command: str
    params: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.gated)

    def add(self, *checks):
        self.checks.extend(checks)
        return self

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "params": _plain(self.params),
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
            "meta": _plain(self.meta),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "value", "expected", "abs_err", "rel_err", "pass"])
        for c in self.checks:
            d = c.to_dict()
            w.writerow([d["name"], d["value"], d["expected"], d["abs_err"], d["rel_err"], d["pass"]])
        return buf.getvalue()

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        if not isinstance(d, dict) or "checks" not in d or "command" not in d:
            raise ValueError("not a verification report: needs 'command' and 'checks'")
        if not isinstance(d["checks"], list):
            raise ValueError("report 'checks' must be a list")
        return cls(command=d["command"], params=d.get("params", {}),
                   checks=[Check.from_dict(c) for c in d["checks"]], meta=d.get("meta", {}))


def without_timing(report_dict: dict) -> dict:
    """Copy of a report dict with ``meta.timing`` removed, for comparisons."""
    out = json.loads(json.dumps(report_dict))
    out.get("meta", {}).pop("timing", None)
    return out


def merge_reports(reports) -> VerificationReport:
    """Union of the checks of several reports.

    Duplicate check names get a ``#2``, ``#3``... suffix and a warning is
    recorded in ``meta["warnings"]``.
    """
    merged = VerificationReport(command="report merge")
    seen: dict[str, int] = {}
    warnings = []
    sources = []
    for rep in reports:
        sources.append(rep.command)
        for c in rep.checks:
            name = c.name
            if name in seen:
                seen[name] += 1
                new = f"{name}#{seen[name]}"
                warnings.append(f"duplicate check {name!r} from {rep.command!r} renamed to {new!r}")
                c = Check(**{**c.__dict__, "name": new})
            else:
                seen[name] = 1
            merged.checks.append(c)
    merged.meta = {"sources": sources, "warnings": warnings}
    return merged
