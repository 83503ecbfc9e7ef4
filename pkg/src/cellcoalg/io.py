"""JSON ingestion of complexes and coalgebras, plus the bundled samples."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .cinfty import Coalgebra
from .cubical import CubicalComplex, periodic_grid
from .scalars import QQ
from .simplicial import SimplicialComplex

SAMPLES = ("circle", "sphere2", "rp2", "torus7", "cp2", "moore3")


class InputError(ValueError):
    """The input document does not match any accepted schema."""


def read_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def sample_document(name: str) -> dict:
    if name not in SAMPLES:
        raise InputError(f"unknown sample {name!r}; choose from {', '.join(SAMPLES)}")
    text = resources.files("cellcoalg").joinpath("data").joinpath(f"{name}.json").read_text("utf-8")
    return json.loads(text)


def complex_from_document(doc):
    """Build a simplicial or cubical complex from its JSON document."""
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    kind = doc.get("type")
    try:
        if kind == "simplicial":
            facets = doc["facets"]
            if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
                raise InputError("'facets' must be a list of integer lists")
            if not all(isinstance(v, int) and not isinstance(v, bool) for f in facets for v in f):
                raise InputError("facet vertices must be integers")
            return SimplicialComplex(facets)
        if kind == "cubical":
            if "grid" in doc:
                doc = periodic_grid(doc["grid"])
            boxes = doc["boxes"]
            identify = doc.get("identify", [])
            for entry in identify:
                if not isinstance(entry, list) or len(entry) != 3:
                    raise InputError("each identification is [cellA, cellB, sign]")
            return CubicalComplex(boxes, identify)
    except KeyError as exc:
        raise InputError(f"missing field {exc.args[0]!r}") from exc
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(str(exc)) from exc
    raise InputError(f"unknown complex type {kind!r}")


def load_complex(source):
    """A complex from a file path or the name of a bundled sample."""
    if isinstance(source, str) and source in SAMPLES and not Path(source).is_file():
        return complex_from_document(sample_document(source))
    return complex_from_document(read_json(source))


def load_sample(name: str):
    return complex_from_document(sample_document(name))


def _rational(x):
    if isinstance(x, bool):
        raise InputError("coefficients must be rational strings or integers")
    if isinstance(x, int):
        return QQ.coerce(x)
    if isinstance(x, str):
        try:
            return QQ.parse(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad rational coefficient {x!r}") from exc
    raise InputError("coefficients must be rational strings or integers")


def coalgebra_from_document(doc) -> Coalgebra:
    """``{"generators": [{"name", "degree"}], "boundary": {c: [[x, coeff]]},
    "coproduct": {c: [[a, b, coeff]]}}``.

    A boundary may also be given as an object ``{x: coeff}``.
    """
    if not isinstance(doc, dict) or "generators" not in doc:
        raise InputError("coalgebra input needs a 'generators' list")
    try:
        gens = [(str(g["name"]), int(g["degree"])) for g in doc["generators"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("each generator is {\"name\": str, \"degree\": int}") from exc
    boundary: dict = {}
    for c, img in (doc.get("boundary") or {}).items():
        pairs = img.items() if isinstance(img, dict) else img
        acc: dict = {}
        for entry in pairs:
            if len(entry) != 2:
                raise InputError(f"boundary entries of {c} are [target, coeff]")
            x, v = entry
            acc[str(x)] = acc.get(str(x), 0) + _rational(v)
        boundary[str(c)] = acc
    coproduct: dict = {}
    for c, img in (doc.get("coproduct") or {}).items():
        acc = {}
        for entry in img:
            if not isinstance(entry, list) or len(entry) != 3:
                raise InputError(f"coproduct entries of {c} are [left, right, coeff]")
            a, b, v = entry
            key = (str(a), str(b))
            acc[key] = acc.get(key, 0) + _rational(v)
        coproduct[str(c)] = acc
    try:
        return Coalgebra(gens, boundary, coproduct)
    except ValueError as exc:
        if type(exc) is ValueError:
            raise InputError(str(exc)) from exc
        raise


def load_coalgebra(path) -> Coalgebra:
    return coalgebra_from_document(read_json(path))


def dumps(obj) -> str:
    """Canonical output: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, separators=(",", ":")) + "\n"
