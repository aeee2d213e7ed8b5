"""Declarative presentation files (``.alg``) and R-matrix files (``.rmat``).

An ``.alg`` file is YAML with the fields::

    name: qfuzzy
    generators: [a, b, b†]          # increasing order
    parameters: {s2: "s^2"}         # optional named scalars, overridable at load time
    relations: ["b*a = q^2*a*b - λ*b", ...]
    star: {a: a, b: b†}             # or {g: [target, factor]}
    inverses: [[K, K⁻¹]]
    degrees: {e_a: 1, ...}          # graded presentations only
    theta: "e_a + e_d"
    sigma: "μ^-1"

Files with a ``theta`` field load as :class:`~qfuzzy.dga.GradedPresentation`.
An ``.rmat`` file lists ``n`` and the ``n²×n²`` matrix as expression strings
with row index ``(i, k)`` and column index ``(j, l)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import yaml

from .freealg import NcElement, Presentation, format_element
from .parser import evaluate
from .scalars import ONE, Scalar

__all__ = [
    "AlgebraSpec",
    "read_spec",
    "build",
    "load_algebra",
    "emit_algebra",
    "spec_from_presentation",
    "algebra_path",
    "shipped_algebras",
    "load_rmatrix",
    "emit_rmatrix",
    "shipped_rmatrix_files",
    "LoadError",
]

SHIPPED = ("podles", "fuzzy", "qfuzzy", "qsphere", "cqsu2", "bqm2", "bqsu2", "uqsu2", "bicross")


class LoadError(ValueError):
    pass


@dataclass
class AlgebraSpec:
    name: str
    generators: list[str]
    relations: list[str] = field(default_factory=list)
    parameters: dict[str, str] = field(default_factory=dict)
    star: dict | None = None
    inverses: list[list[str]] = field(default_factory=list)
    degrees: dict[str, int] = field(default_factory=dict)
    theta: str | None = None
    sigma: str | None = None
    description: str = ""


def _data_dir() -> Path:
    return Path(str(resources.files("qfuzzy") / "data"))


def algebra_path(name: str) -> Path:
    return _data_dir() / f"{name}.alg"


def shipped_algebras() -> tuple[str, ...]:
    return SHIPPED


def _read_text(source) -> str:
    if isinstance(source, Path):
        return source.read_text(encoding="utf-8")
    s = str(source)
    if "\n" in s or ":" in s and not Path(s).exists():
        return s
    p = Path(s)
    if p.exists():
        return p.read_text(encoding="utf-8")
    if s in SHIPPED:
        return algebra_path(s).read_text(encoding="utf-8")
    raise LoadError(f"no presentation file or shipped algebra named {s!r}")


def read_spec(source) -> AlgebraSpec:
    """Parse ``.alg`` text, a path, or a shipped name into an :class:`AlgebraSpec`."""
    data = yaml.safe_load(_read_text(source))
    if not isinstance(data, dict) or "generators" not in data:
        raise LoadError("presentation file needs a 'generators' list")
    return AlgebraSpec(
        name=str(data.get("name", "algebra")),
        generators=[str(g) for g in data["generators"]],
        relations=[str(r) for r in data.get("relations") or []],
        parameters={str(k): str(v) for k, v in (data.get("parameters") or {}).items()},
        star=data.get("star"),
        inverses=[list(map(str, p)) for p in data.get("inverses") or []],
        degrees={str(k): int(v) for k, v in (data.get("degrees") or {}).items()},
        theta=data.get("theta"),
        sigma=None if data.get("sigma") is None else str(data.get("sigma")),
        description=str(data.get("description", "")),
    )


def _split_relation(rel: str) -> tuple[str, str]:
    if rel.count("=") != 1:
        raise LoadError(f"relation must have exactly one '=': {rel!r}")
    lhs, rhs = rel.split("=")
    return lhs, rhs


def build(spec: AlgebraSpec, **params):
    """Construct the presentation described by ``spec``; keyword arguments override parameters."""
    from .dga import GradedPresentation

    values: dict = {}
    for k, v in spec.parameters.items():
        values[k] = evaluate(v, None, values)
    values.update(params)
    free = Presentation(spec.name + "_free", spec.generators, degrees=spec.degrees or None)
    rels = []
    for rel in spec.relations:
        lhs, rhs = _split_relation(rel)
        x = _as_element(evaluate(lhs, free, values), free) - _as_element(evaluate(rhs, free, values), free)
        rels.append(x)
    star = None
    if spec.star is not None:
        star = {}
        for g, img in spec.star.items():
            if isinstance(img, (list, tuple)):
                star[str(g)] = (str(img[0]), evaluate(str(img[1]), None, values))
            else:
                star[str(g)] = str(img)
    p = Presentation(
        spec.name,
        spec.generators,
        rels,
        star=star,
        inverses=[tuple(x) for x in spec.inverses],
        degrees=spec.degrees or None,
        meta={"parameters": values},
    )
    if spec.theta is None:
        return p
    theta = _as_element(evaluate(spec.theta, p, values), p)
    sigma = ONE if spec.sigma is None else evaluate(spec.sigma, None, values)
    return GradedPresentation(p, theta, sigma, spec.name, {"parameters": values})


def _as_element(v, p: Presentation) -> NcElement:
    return p.scalar(v) if isinstance(v, Scalar) else v


def load_algebra(source, **params):
    """Load a shipped algebra by name, or a ``.alg`` file / text, with parameter overrides."""
    return build(read_spec(source), **params)


def spec_from_presentation(x) -> AlgebraSpec:
    """Describe a built presentation by its oriented rules (one relation per rule)."""
    gp = x if hasattr(x, "theta") else None
    p = gp.p if gp is not None else x
    rels = []
    for head, rhs in p.rules:
        rhs_text = format_element(p.element(rhs)) if rhs else "0"
        rels.append(f"{'*'.join(head)} = {rhs_text}")
    star = None
    if p.star_map is not None:
        star = {}
        for g, (tgt, fac) in p.star_map.items():
            star[g] = tgt if fac == ONE else [tgt, str(fac)]
    degrees = {g: d for g, d in p.degrees.items() if d}
    return AlgebraSpec(
        name=p.name,
        generators=list(p.generators),
        relations=rels,
        star=star,
        inverses=[list(pair) for pair in p.inverses],
        degrees=degrees,
        theta=None if gp is None else format_element(gp.theta),
        sigma=None if gp is None else str(gp.sigma),
    )


def emit_algebra(x) -> str:
    """YAML text for an :class:`AlgebraSpec` or a built (graded) presentation."""
    spec = x if isinstance(x, AlgebraSpec) else spec_from_presentation(x)
    data: dict = {"name": spec.name}
    if spec.description:
        data["description"] = spec.description
    data["generators"] = list(spec.generators)
    if spec.parameters:
        data["parameters"] = dict(spec.parameters)
    if spec.degrees:
        data["degrees"] = dict(spec.degrees)
    if spec.star is not None:
        data["star"] = dict(spec.star)
    if spec.inverses:
        data["inverses"] = [list(p) for p in spec.inverses]
    data["relations"] = list(spec.relations)
    if spec.theta is not None:
        data["theta"] = spec.theta
    if spec.sigma is not None:
        data["sigma"] = spec.sigma
    return yaml.safe_dump(data, allow_unicode=True, sort_keys=False, width=1000)


# ---------------------------------------------------------------------------
# R-matrix files


def shipped_rmatrix_files() -> tuple[str, ...]:
    return tuple(sorted(p.stem for p in _data_dir().glob("*.rmat")))


def load_rmatrix(source, **params):
    """Load an ``.rmat`` file (path, text or shipped stem) into an :class:`~qfuzzy.rmatrix.RMatrix`."""
    from .rmatrix import RMatrix

    if isinstance(source, (str, Path)) and not Path(str(source)).exists() and str(source) in shipped_rmatrix_files():
        source = _data_dir() / f"{source}.rmat"
    data = yaml.safe_load(_read_text(source))
    n = int(data["n"])
    rows = data["matrix"]
    if len(rows) != n * n or any(len(r) != n * n for r in rows):
        raise LoadError(f"R-matrix must be {n * n}x{n * n}")
    values = {}
    for k, v in (data.get("parameters") or {}).items():
        values[str(k)] = evaluate(str(v), None, values)
    values.update(params)
    matrix = [[evaluate(str(x), None, values) for x in row] for row in rows]
    norm = data.get("normalization", "hecke")
    return RMatrix.from_matrix(matrix, None if norm in (None, "none") else str(norm), str(data.get("name", "R")))


def emit_rmatrix(R) -> str:
    """YAML text for an R-matrix, one matrix row per line."""
    head = {"name": R.name, "n": R.n, "normalization": R.normalization or "none"}
    out = yaml.safe_dump(head, allow_unicode=True, sort_keys=False, width=1000) + "matrix:\n"
    for row in R.matrix():
        out += "  - [" + ", ".join(f'"{x}"' for x in row) + "]\n"
    return out
