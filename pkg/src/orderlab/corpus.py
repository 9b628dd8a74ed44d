"""Bundled fields and the generated corpus of test orders."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InputError
from .field import FieldSpec
from .ideals import OrderRing, ideal_pow, order_monogenic, order_z_plus, order_z_plus_ideal, split_prime

FIELD_FILES = {
    "Q-sqrt2": "Q-sqrt2.json",
    "Q-sqrt-3": "Q-sqrt-3.json",
    "cubic": "cubic-x3+4x-1.json",
}

# conductor quotients above this size are left out of the corpus to keep the
# property suites quick; every predicate still works on them
CORPUS_QUOTIENT_LIMIT = 3000

_loaded: dict[str, FieldSpec] = {}


def field_path(filename: str) -> Path:
    return Path(str(resources.files("orderlab") / "data" / "fields" / filename))


def bundled_field(name: str) -> FieldSpec:
    """One of the bundled fields, loaded once per process."""
    if name not in FIELD_FILES:
        raise InputError(f"unknown bundled field {name!r}; choose from {sorted(FIELD_FILES)}")
    if name not in _loaded:
        doc = json.loads(field_path(FIELD_FILES[name]).read_text())
        _loaded[name] = FieldSpec.from_json(doc)
    return _loaded[name]


def bundled_fields() -> dict[str, FieldSpec]:
    return {name: bundled_field(name) for name in FIELD_FILES}


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    field_name: str
    order: OrderRing


def load_fields(directory: str | Path | None = None) -> dict[str, FieldSpec]:
    """The bundled fields, or same-named files from another directory."""
    if directory is None:
        return bundled_fields()
    out = {}
    for name, filename in FIELD_FILES.items():
        path = Path(directory) / filename
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read field file {path}: {exc}") from exc
        out[name] = FieldSpec.from_json(doc)
    return out


def generate_corpus(
    seeds=range(2, 13), limit: int = CORPUS_QUOTIENT_LIMIT, fields: dict[str, FieldSpec] | None = None
) -> list[CorpusEntry]:
    """Z + f*O and Z[f*t] for each seed f, plus Z + P^e for small primes, deduplicated."""
    fields = bundled_fields() if fields is None else fields
    out: list[CorpusEntry] = []
    seen = set()

    def add(name, fname, build):
        field = fields[fname]
        try:
            order = build(field)
        except InputError:
            return
        key = (fname, order.lattice)
        if key in seen:
            return
        if field.maximal_order.index_of(order.conductor.lattice) > limit:
            return
        seen.add(key)
        out.append(CorpusEntry(name, fname, order))

    for fname in fields:
        for f in seeds:
            add(f"{fname}:Z+{f}O", fname, lambda K, f=f: order_z_plus(K, f))
            add(f"{fname}:Z[{f}t]", fname, lambda K, f=f: order_monogenic(K, K.gen * f))
        for p in (2, 3, 5, 7):
            field = fields[fname]
            for i, P in enumerate(split_prime(p, field)):
                for e in (1, 2, 3):
                    add(
                        f"{fname}:Z+P{p}.{i}^{e}",
                        fname,
                        lambda K, P=P, e=e: order_z_plus_ideal(K, ideal_pow(P, e)),
                    )
    return out
