"""Catalog of published static maximum-endurance-time (MET) models.

Coefficients live in ``data/met_models.json`` so each row can be audited
against its printed source. Four formula families cover all 24 rows::

    polynomial-in-1/f   c0 + c1/f + c2/f^2 + c3/f^3
    power-law           a (f - offset)^exponent
    exponential         a exp(-b f)
    huijgens-ratio      a ((1 - f) / (f - offset))^exponent

All METs are in minutes; ``f`` is the relative load F_load / MVC.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from types import MappingProxyType

import numpy as np

from .errors import DomainError, ManifestError

REGIONS = ("general", "shoulder", "elbow", "hand", "back_hip")

_KIND_COEFFS = {
    "polynomial-in-1/f": ("c0", "c1", "c2", "c3"),
    "power-law": ("a", "offset", "exponent"),
    "exponential": ("a", "b"),
    "huijgens-ratio": ("a", "offset", "exponent"),
}

MANIFEST_VERSION = 1


@dataclass(frozen=True)
class ValidDomain:
    """Interval ``(lower, upper]`` (or ``(lower, upper)`` when not inclusive)."""

    lower: float
    upper: float = 1.0
    upper_inclusive: bool = True

    def contains(self, f):
        f = np.asarray(f, dtype=float)
        above = f > self.lower
        below = f <= self.upper if self.upper_inclusive else f < self.upper
        return above & below

    def __str__(self):
        return f"({self.lower:g}, {self.upper:g}{']' if self.upper_inclusive else ')'}"


@dataclass(frozen=True)
class MetModel:
    id: str
    display_name: str
    region: str
    formula_kind: str
    parameters: MappingProxyType
    valid_domain: ValidDomain
    published_r: float | None = None
    published_icc: float | None = None
    note: str | None = field(default=None, compare=False)

    def evaluate(self, f_mvc):
        return evaluate(self, f_mvc)


def _formula(model: MetModel, f):
    p = model.parameters
    kind = model.formula_kind
    if kind == "polynomial-in-1/f":
        x = 1.0 / f
        return p["c0"] + x * (p["c1"] + x * (p["c2"] + x * p["c3"]))
    if kind == "power-law":
        return p["a"] * (f - p["offset"]) ** p["exponent"]
    if kind == "exponential":
        return p["a"] * np.exp(-p["b"] * f)
    if kind == "huijgens-ratio":
        return p["a"] * ((1.0 - f) / (f - p["offset"])) ** p["exponent"]
    raise ManifestError(f"unknown formula_kind {kind!r}")


def evaluate(model: MetModel, f_mvc):
    """MET in minutes for ``f_mvc`` (scalar or array) inside the model's domain."""
    f = np.asarray(f_mvc, dtype=float)
    inside = model.valid_domain.contains(f)
    if not np.all(inside):
        bad = f[~inside] if f.ndim else f
        bound = model.valid_domain.lower
        raise DomainError(
            f"{model.id}: f_mvc={np.atleast_1d(bad)[0]:g} outside valid domain {model.valid_domain}; "
            f"formula is singular or undefined at f_mvc <= {bound:g}"
        )
    out = _formula(model, f)
    return float(out) if out.ndim == 0 else out


def _model_from_dict(d: dict, where: str) -> MetModel:
    try:
        mid = d["id"]
        kind = d["formula_kind"]
        region = d["region"]
        coeffs = d["coefficients"]
        vd = d["valid_domain"]
        name = d["display_name"]
    except (KeyError, TypeError) as exc:
        raise ManifestError(f"{where}: missing field {exc}") from None
    if not isinstance(mid, str) or not mid:
        raise ManifestError(f"{where}: id must be a non-empty string")
    if kind not in _KIND_COEFFS:
        raise ManifestError(f"{where} ({mid}): unknown formula_kind {kind!r}")
    if region not in REGIONS:
        raise ManifestError(f"{where} ({mid}): unknown region {region!r}")
    if not isinstance(coeffs, dict) or set(coeffs) != set(_KIND_COEFFS[kind]):
        raise ManifestError(f"{where} ({mid}): {kind} needs coefficients {_KIND_COEFFS[kind]}")
    for key, val in coeffs.items():
        if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
            raise ManifestError(f"{where} ({mid}): coefficient {key} is not a finite number")
    try:
        domain = ValidDomain(float(vd["lower"]), float(vd["upper"]), bool(vd.get("upper_inclusive", True)))
    except (KeyError, TypeError, ValueError):
        raise ManifestError(f"{where} ({mid}): malformed valid_domain") from None
    if not (0.0 <= domain.lower < domain.upper <= 1.0):
        raise ManifestError(f"{where} ({mid}): valid_domain {domain} not inside [0, 1]")
    pub = d.get("published") or {}
    return MetModel(
        id=mid,
        display_name=name,
        region=region,
        formula_kind=kind,
        parameters=MappingProxyType({k: float(coeffs[k]) for k in _KIND_COEFFS[kind]}),
        valid_domain=domain,
        published_r=pub.get("r"),
        published_icc=pub.get("icc"),
        note=d.get("note"),
    )


def load_manifest(path=None) -> tuple[MetModel, ...]:
    """Load and validate a model manifest; the bundled one by default."""
    if path is None:
        text = resources.files("dynfatigue").joinpath("data/met_models.json").read_text()
        where = "met_models.json"
    else:
        path = Path(path)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ManifestError(f"cannot read manifest {path}: {exc.strerror}") from None
        where = str(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{where}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict) or doc.get("manifest_version") != MANIFEST_VERSION:
        raise ManifestError(f"{where}: expected manifest_version {MANIFEST_VERSION}")
    rows = doc.get("models")
    if not isinstance(rows, list) or not rows:
        raise ManifestError(f"{where}: 'models' must be a non-empty list")
    models = tuple(_model_from_dict(r, f"{where}[{i}]") for i, r in enumerate(rows))
    ids = [m.id for m in models]
    if len(set(ids)) != len(ids):
        raise ManifestError(f"{where}: duplicate model ids")
    return models


def dump_manifest(models, path) -> None:
    rows = []
    for m in models:
        row = {
            "id": m.id,
            "display_name": m.display_name,
            "region": m.region,
            "formula_kind": m.formula_kind,
            "coefficients": dict(m.parameters),
            "valid_domain": {
                "lower": m.valid_domain.lower,
                "upper": m.valid_domain.upper,
                "upper_inclusive": m.valid_domain.upper_inclusive,
            },
        }
        if m.published_r is not None or m.published_icc is not None:
            row["published"] = {"r": m.published_r, "icc": m.published_icc}
        if m.note:
            row["note"] = m.note
        rows.append(row)
    doc = {"manifest_version": MANIFEST_VERSION, "models": rows}
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


_DEFAULT: tuple[MetModel, ...] | None = None


def default_catalog() -> tuple[MetModel, ...]:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_manifest()
    return _DEFAULT


def list_models(region: str | None = None, catalog=None) -> list[MetModel]:
    """Catalog rows in table order, optionally restricted to one region."""
    models = default_catalog() if catalog is None else catalog
    if region is None:
        return list(models)
    if region not in REGIONS:
        raise DomainError(f"unknown region {region!r}; expected one of {', '.join(REGIONS)}")
    return [m for m in models if m.region == region]


def get_model(model_id: str, catalog=None) -> MetModel:
    for m in default_catalog() if catalog is None else catalog:
        if m.id == model_id:
            return m
    raise DomainError(f"unknown model id {model_id!r}")
