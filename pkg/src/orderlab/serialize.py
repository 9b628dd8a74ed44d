"""Canonical JSON for library objects: sorted keys, exact integers, rationals as strings."""

from __future__ import annotations

import dataclasses
import json
from fractions import Fraction
from typing import Any

import numpy as np

from .field import FieldElement
from .ideals import OIdeal, OrderRing, PrimeIdeal
from .lattice import ZLattice


def lattice_doc(L: ZLattice) -> dict:
    return {"den": L.den, "hnf": [list(r) for r in L.hnf]}


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, FieldElement):
        return str(obj)
    if isinstance(obj, PrimeIdeal):
        p, g = obj.two_gens
        return {"prime": p, "generator": str(g), "f": obj.residue_degree, "e": obj.ramification}
    if isinstance(obj, OIdeal):
        return {"norm": obj.norm, "lattice": lattice_doc(obj.lattice)}
    if isinstance(obj, OrderRing):
        return {"index": obj.index, "lattice": lattice_doc(obj.lattice)}
    if isinstance(obj, ZLattice):
        return lattice_doc(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted((to_jsonable(v) for v in obj), key=lambda v: json.dumps(v, sort_keys=True))
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def canonical_json(obj: Any, indent: int | None = 2) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=indent, ensure_ascii=False)
