"""JSON schema for spectral measures consumed and produced by the CLI.

Forms accepted::

    {"type": "periodic", "density": [{"k": 0, "re": 1.0, "im": 0.0}, ...],
     "atoms": [{"x": 3.14159, "mass": 3.14159}, ...]}
    {"type": "periodic", "moments": [{"k": 0, "re": 1.0, "im": 0.0}, ...]}
    {"type": "line", "lebesgue": 1.0,
     "atoms": [{"lambda": 0.0, "beta": 1.0}, ...]}
    {"type": "rational", "numerator": [0.0, 0.0, 1.0],
     "denominator": [1.0, 0.0, 1.0], "atoms": [...]}

Unknown keys are rejected so that typos fail loudly instead of being
silently ignored.  Serialisation sorts keys and uses 17 significant digits,
making output byte-stable.
"""

from __future__ import annotations

import json

from .errors import ValidationError
from .measures import (
    LineMeasure,
    MomentSequence,
    PeriodicMeasure,
    PeriodicMomentMeasure,
    RationalMeasure,
    SpectralMeasure,
)

__all__ = ["measure_from_json", "measure_to_json", "loads_measure", "dumps_measure"]


def _require_keys(obj: dict, allowed: set[str], context: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise ValidationError(
            f"unknown key(s) {sorted(unknown)} in {context}; "
            f"allowed: {sorted(allowed)}"
        )


def _complex_entries(items, context: str):
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ValidationError(f"{context}[{i}] must be an object")
        _require_keys(item, {"k", "re", "im"}, f"{context}[{i}]")
        try:
            out.append((int(item["k"]), complex(float(item.get("re", 0.0)),
                                                float(item.get("im", 0.0)))))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"{context}[{i}]: {exc}") from None
    return out


def _pair_entries(items, keys: tuple[str, str], context: str):
    out = []
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            raise ValidationError(f"{context}[{i}] must be an object")
        _require_keys(item, set(keys), f"{context}[{i}]")
        try:
            out.append((float(item[keys[0]]), float(item[keys[1]])))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"{context}[{i}]: {exc}") from None
    return out


def measure_from_json(obj) -> SpectralMeasure:
    """Build a measure from a parsed JSON object, validating the schema."""
    if not isinstance(obj, dict):
        raise ValidationError("measure document must be a JSON object")
    kind = obj.get("type")
    if kind == "periodic":
        _require_keys(obj, {"type", "density", "moments", "atoms"}, "periodic measure")
        has_density = "density" in obj or "atoms" in obj
        if "moments" in obj:
            if has_density:
                raise ValidationError(
                    "periodic measure takes either density+atoms or moments"
                )
            entries = _complex_entries(obj["moments"], "moments")
            ks = [k for k, _ in entries]
            if ks != list(range(len(ks))):
                raise ValidationError("moments must list k = 0, 1, 2, ... in order")
            return PeriodicMomentMeasure(
                MomentSequence(tuple(v for _, v in entries))
            )
        density = _complex_entries(obj.get("density", []), "density")
        atoms = _pair_entries(obj.get("atoms", []), ("x", "mass"), "atoms")
        return PeriodicMeasure(density=tuple(density), atoms=tuple(atoms))
    if kind == "line":
        _require_keys(obj, {"type", "lebesgue", "atoms"}, "line measure")
        try:
            lebesgue = float(obj.get("lebesgue", 0.0))
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"lebesgue: {exc}") from None
        atoms = _pair_entries(obj.get("atoms", []), ("lambda", "beta"), "atoms")
        return LineMeasure(lebesgue=lebesgue, atoms=tuple(atoms))
    if kind == "rational":
        _require_keys(
            obj, {"type", "numerator", "denominator", "atoms"}, "rational measure"
        )
        try:
            num = tuple(float(v) for v in obj["numerator"])
            den = tuple(float(v) for v in obj["denominator"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"rational coefficients: {exc}") from None
        atoms = _pair_entries(obj.get("atoms", []), ("lambda", "beta"), "atoms")
        return RationalMeasure(numerator=num, denominator=den, atoms=tuple(atoms))
    raise ValidationError(
        f"unknown measure type {kind!r}; expected periodic, line or rational"
    )


def measure_to_json(measure: SpectralMeasure) -> dict:
    """Measure as a JSON-ready dict (inverse of :func:`measure_from_json`)."""
    if isinstance(measure, PeriodicMeasure):
        return {
            "type": "periodic",
            "density": [
                {"k": k, "re": c.real, "im": c.imag}
                for k, c in sorted(measure.density)
            ],
            "atoms": [{"x": x, "mass": m} for x, m in measure.atoms],
        }
    if isinstance(measure, PeriodicMomentMeasure):
        return {
            "type": "periodic",
            "moments": [
                {"k": k, "re": v.real, "im": v.imag}
                for k, v in enumerate(measure.moments.values)
            ],
        }
    if isinstance(measure, LineMeasure):
        return {
            "type": "line",
            "lebesgue": measure.lebesgue,
            "atoms": [{"lambda": lam, "beta": b} for lam, b in measure.atoms],
        }
    if isinstance(measure, RationalMeasure):
        return {
            "type": "rational",
            "numerator": list(measure.numerator),
            "denominator": list(measure.denominator),
            "atoms": [{"lambda": lam, "beta": b} for lam, b in measure.atoms],
        }
    raise ValidationError(f"cannot serialise {type(measure).__name__}")


def loads_measure(text: str) -> SpectralMeasure:
    """Parse a measure from JSON text; decode errors carry line/column."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return measure_from_json(obj)


def dumps_measure(measure: SpectralMeasure) -> str:
    """Deterministic JSON text for a measure."""
    return json.dumps(measure_to_json(measure), sort_keys=True, indent=2) + "\n"
