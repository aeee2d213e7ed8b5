"""Matplotlib figures for ``qfuzzy report --figures``."""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bicross import laplacian_eigenvalue  # noqa: E402
from .report import CheckReport  # noqa: E402
from .spheres import slice_lambda  # noqa: E402

__all__ = ["eigenvalue_figure", "slice_lambda_figure", "summary_figure", "write_figures"]


def _frac(x: float) -> Fraction:
    return Fraction(x).limit_denominator(10**6)


def _eval_expsum(ev, values: dict) -> float:
    v = ev.specialize({k: _frac(x) for k, x in values.items()})
    return sum(float(c.to_fraction()) * math.exp(float(b.to_fraction())) for b, c in v.terms.items())


def eigenvalue_figure(path: Path, k: float = 1.0, ells: Sequence[float] = (0.25, 0.5, 1.0)) -> Path:
    """Plane-wave Laplacian eigenvalue against ω for several ℓ, with the ℓ → 0 curve."""
    ev = laplacian_eigenvalue()
    omegas = [i / 10 for i in range(-30, 31)]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(omegas, [-(k * k) - w * w for w in omegas], "k--", label="ℓ → 0: -k² - ω²")
    for ell in ells:
        ys = [_eval_expsum(ev, {"ell": ell, "k1": k, "k2": 0, "omega": w}) for w in omegas]
        ax.plot(omegas, ys, label=f"ℓ = {ell}")
    ax.set_xlabel("ω")
    ax.set_ylabel("eigenvalue")
    ax.set_title(f"Laplacian on plane waves, k = {k}")
    ax.set_ylim(-12, 1)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def slice_lambda_figure(path: Path, qs: Sequence[float] = (1.1, 1.5, 2.0)) -> Path:
    """λ(t) of the time slice Tr_q(u) = t + t⁻¹ against t, for several q."""
    lam = slice_lambda()
    ts = [i / 100 for i in range(5, 300) if abs(i - 100) > 4]
    fig, ax = plt.subplots(figsize=(6, 4))
    for q in qs:
        h = _frac(math.sqrt(q))
        ys = [float(lam.specialize({"h": h, "t": _frac(t)}).to_fraction()) for t in ts]
        lo = [y if t < 1 else math.nan for t, y in zip(ts, ys)]
        hi = [y if t > 1 else math.nan for t, y in zip(ts, ys)]
        (line,) = ax.plot(ts, lo, label=f"q = {q}")
        ax.plot(ts, hi, color=line.get_color())
    ax.axvline(1.0, color="grey", lw=0.5)
    ax.set_ylim(-10, 10)
    ax.set_xlabel("t")
    ax.set_ylabel("λ")
    ax.set_title("Fuzziness of the time slices")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def summary_figure(path: Path, reports: Sequence[CheckReport]) -> Path:
    """Stacked bar chart of claim outcomes per suite."""
    names = [r.suite for r in reports]
    counts = {s: [sum(c.status == s for c in r.claims) for r in reports] for s in ("pass", "fail", "skipped")}
    fig, ax = plt.subplots(figsize=(7, 0.3 * len(names) + 1.5))
    left = [0] * len(names)
    for status, color in (("pass", "tab:green"), ("fail", "tab:red"), ("skipped", "tab:grey")):
        ax.barh(names, counts[status], left=left, color=color, label=status)
        left = [a + b for a, b in zip(left, counts[status])]
    ax.invert_yaxis()
    ax.set_xlabel("claims")
    ax.legend(loc="lower right")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def write_figures(directory, reports: Sequence[CheckReport] = ()) -> list[Path]:
    """Render every figure into ``directory`` (created if needed) and return the paths."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = [eigenvalue_figure(d / "laplacian_eigenvalue.png"), slice_lambda_figure(d / "slice_lambda.png")]
    if reports:
        out.append(summary_figure(d / "suite_summary.png", reports))
    return out
