"""Check reports: claims with status and residual, JSON wire format, text rendering."""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from importlib import metadata
from typing import Iterable, Mapping

from .freealg import NcElement, format_element
from .scalars import Scalar

__all__ = ["Claim", "CheckReport", "ReportBuilder", "merge_reports", "ENGINE_VERSION", "is_zero_residual"]

try:
    ENGINE_VERSION = metadata.version("qfuzzy")
except metadata.PackageNotFoundError:  # running from a source tree
    ENGINE_VERSION = "0.1.0"

STATUSES = ("pass", "fail", "skipped")


@dataclass
class Claim:
    id: str
    anchor: str
    status: str
    residual: str | None = None
    detail: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"bad claim status {self.status!r}")


@dataclass
class CheckReport:
    suite: str
    claims: list[Claim]
    version: str = ENGINE_VERSION
    elapsed: float = 0.0
    artifacts: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.claims)

    @property
    def failures(self) -> list[Claim]:
        return [c for c in self.claims if c.status == "fail"]

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def claim(self, cid: str) -> Claim:
        for c in self.claims:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "version": self.version,
            "ok": self.ok,
            "claims": [asdict(c) for c in self.claims],
            "artifacts": self.artifacts,
        }
        if timing:
            d["elapsed"] = round(self.elapsed, 4)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, d: Mapping) -> "CheckReport":
        return cls(
            suite=d["suite"],
            claims=[Claim(**c) for c in d["claims"]],
            version=d.get("version", ENGINE_VERSION),
            elapsed=d.get("elapsed", 0.0),
            artifacts=dict(d.get("artifacts", {})),
        )

    def to_text(self) -> str:
        return render_text(self.to_dict())


def render_text(d: Mapping) -> str:
    """Human rendering of a report dictionary (the JSON form is the source)."""
    lines = [f"{d['suite']}: {'PASS' if d['ok'] else 'FAIL'}" + (f" ({d['elapsed']:.2f}s)" if "elapsed" in d else "")]
    for c in d["claims"]:
        line = f"  [{c['status']:>7}] {c['id']}: {c['anchor']}"
        if c.get("detail"):
            line += f" [{c['detail']}]"
        lines.append(line)
        if c["status"] == "fail" and c.get("residual"):
            lines.append(f"            residual: {c['residual']}")
    for k, v in d.get("artifacts", {}).items():
        if isinstance(v, (str, int, float)):
            lines.append(f"  {k} = {v}")
    return "\n".join(lines)


def merge_reports(reports: Iterable[CheckReport]) -> list[CheckReport]:
    return sorted(reports, key=lambda r: r.suite)


# ---------------------------------------------------------------------------
# building reports


def _flatten(x) -> list:
    if isinstance(x, (list, tuple)):
        out = []
        for y in x:
            out += _flatten(y)
        return out
    if isinstance(x, Mapping):
        return _flatten(list(x.values()))
    return [x]


def _specialize(x, at: Mapping | None):
    if not at:
        return x
    if isinstance(x, (Scalar, NcElement)):
        return x.specialize(at)
    return x


def _text(x) -> str:
    if isinstance(x, NcElement):
        return format_element(x)
    return str(x)


def is_zero_residual(x) -> bool:
    if isinstance(x, (Scalar, NcElement)):
        return x.is_zero()
    if x is None or x is False:
        return True
    if isinstance(x, (int,)):
        return x == 0
    raise TypeError(f"cannot test {type(x).__name__} for zero")


class ReportBuilder:
    """Collect claims for one suite; residuals are specialized by ``at`` before testing.

    A specialization that hits a pole raises :class:`~qfuzzy.scalars.PoleError`;
    an invalid one (such as q not a rational square) raises ``ValueError`` up front.
    """

    def __init__(self, suite: str, at: Mapping | None = None, max_residual_chars: int = 400):
        self.suite = suite
        self.at = dict(at or {})
        if self.at:
            Scalar.coerce(1).specialize(self.at)
        self.claims: list[Claim] = []
        self.artifacts: dict = {}
        self._start = time.perf_counter()
        self._max = max_residual_chars

    def check(self, cid: str, anchor: str, residuals, detail: str | None = None) -> bool:
        bad = None
        for r in _flatten(residuals):
            r = _specialize(r, self.at)
            if not is_zero_residual(r):
                bad = r
                break
        status = "pass" if bad is None else "fail"
        res = None if bad is None else _text(bad)[: self._max]
        self.claims.append(Claim(cid, anchor, status, res, detail))
        return bad is None

    def expect(self, cid: str, anchor: str, ok: bool, residual=None, detail: str | None = None) -> bool:
        res = None if ok or residual is None else _text(residual)[: self._max]
        self.claims.append(Claim(cid, anchor, "pass" if ok else "fail", res, detail))
        return ok

    def equal(self, cid: str, anchor: str, got, want, detail: str | None = None) -> bool:
        got_s, want_s = _specialize(got, self.at), _specialize(want, self.at)
        diff = got_s - want_s
        return self.check(cid, anchor, [diff], detail or f"value {_text(got_s)}")

    def skip(self, cid: str, anchor: str, reason: str):
        self.claims.append(Claim(cid, anchor, "skipped", None, reason))

    def scalar(self, x) -> str:
        return _text(_specialize(x, self.at))

    def note(self, key: str, value):
        if isinstance(value, (Scalar, NcElement)):
            value = self.scalar(value)
        self.artifacts[key] = value

    def finish(self) -> CheckReport:
        return CheckReport(self.suite, self.claims, ENGINE_VERSION, time.perf_counter() - self._start, self.artifacts)
