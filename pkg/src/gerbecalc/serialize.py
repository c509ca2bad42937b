"""JSON interchange format for complexes, covers, and cocycle data.

Top-level document, format_version 1:

    {"format_version": 1,
     "complex": {"vertex_count": V,
                 "simplices": {"0": [[0], [1], ...], "1": [[0, 1], ...], ...}},
     "cover": {"sets": [[...], ...]},
     "datum": {"level": n,
               "parts": [{"p": p, "n": n,
                          "components": [{"indices": [...],
                                          "entries": [{"simplex": [...],
                                                       "value": 0.5}, ...]}]}],
               "angle_part": [0, n + 2]}}

Floats are emitted as shortest round-trip decimals (Python repr), so
serialize/parse round-trips are bit-exact.  Witness files replace "datum"
with a "witness" object of the same parts shape plus a "degree" key.
"""

from __future__ import annotations

import json
import math
import os
from typing import Any

from .bicomplex import BigradedCochain, GaugePotential, TotalCochain
from .cover import Cover
from .deligne import GerbeDatum
from .errors import FormatError
from .simplicial import Cochain, SimplicialComplex

FORMAT_VERSION = 1

__all__ = [
    "FORMAT_VERSION",
    "datum_to_dict",
    "datum_from_dict",
    "save_datum",
    "load_datum",
    "save_witness",
]


def _need(doc: Any, key: str, path: str) -> Any:
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected an object")
    if key not in doc:
        raise FormatError(f"{path}: missing key {key!r}")
    return doc[key]


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(f"{path}: expected an integer, got {value!r}")
    return value


def _int_list(value: Any, path: str) -> list[int]:
    if not isinstance(value, list):
        raise FormatError(f"{path}: expected a list")
    return [_int(v, f"{path}[{i}]") for i, v in enumerate(value)]


def complex_to_dict(complex: SimplicialComplex) -> dict:
    return {
        "vertex_count": complex.vertex_count,
        "simplices": {
            str(q): [list(s) for s in complex.cells(q)]
            for q in sorted(complex.simplices)
        },
    }


def complex_from_dict(doc: Any, path: str = "complex") -> SimplicialComplex:
    vertex_count = _int(_need(doc, "vertex_count", path), f"{path}.vertex_count")
    raw = _need(doc, "simplices", path)
    if not isinstance(raw, dict):
        raise FormatError(f"{path}.simplices: expected an object")
    table = {}
    for key, cells in raw.items():
        try:
            q = int(key)
        except ValueError:
            raise FormatError(f"{path}.simplices: bad dimension key {key!r}") from None
        if not isinstance(cells, list):
            raise FormatError(f"{path}.simplices.{key}: expected a list")
        table[q] = [
            _int_list(c, f"{path}.simplices.{key}[{i}]") for i, c in enumerate(cells)
        ]
    try:
        return SimplicialComplex.build(vertex_count, table)
    except Exception as exc:
        raise FormatError(f"{path}: {exc}") from exc


def cover_to_dict(cover: Cover) -> dict:
    return {"sets": [sorted(s) for s in cover.sets]}


def cover_from_dict(
    doc: Any, complex: SimplicialComplex, path: str = "cover"
) -> Cover:
    raw = _need(doc, "sets", path)
    if not isinstance(raw, list):
        raise FormatError(f"{path}.sets: expected a list")
    sets = [_int_list(s, f"{path}.sets[{i}]") for i, s in enumerate(raw)]
    try:
        return Cover.build(complex, sets)
    except Exception as exc:
        raise FormatError(f"{path}: {exc}") from exc


def _parts_to_list(total: TotalCochain) -> list[dict]:
    parts = []
    for (p, n) in sorted(total.parts):
        part = total.parts[(p, n)]
        components = []
        for t in sorted(part.components):
            comp = part.components[t]
            entries = [
                {"simplex": list(cell), "value": value}
                for cell, value in sorted(comp.values.items())
            ]
            components.append({"indices": list(t), "entries": entries})
        parts.append({"p": p, "n": n, "components": components})
    return parts


def _parts_from_list(raw: Any, degree: int, angle_part, path: str) -> TotalCochain:
    if not isinstance(raw, list):
        raise FormatError(f"{path}: expected a list")
    parts = {}
    for i, part_doc in enumerate(raw):
        ppath = f"{path}[{i}]"
        p = _int(_need(part_doc, "p", ppath), f"{ppath}.p")
        n = _int(_need(part_doc, "n", ppath), f"{ppath}.n")
        if (p, n) in parts:
            raise FormatError(f"{ppath}: duplicate bidegree ({p},{n})")
        components = {}
        raw_comps = _need(part_doc, "components", ppath)
        if not isinstance(raw_comps, list):
            raise FormatError(f"{ppath}.components: expected a list")
        for j, comp_doc in enumerate(raw_comps):
            cpath = f"{ppath}.components[{j}]"
            indices = tuple(_int_list(_need(comp_doc, "indices", cpath), f"{cpath}.indices"))
            if indices in components:
                raise FormatError(f"{cpath}: duplicate indices {indices}")
            values = {}
            raw_entries = _need(comp_doc, "entries", cpath)
            if not isinstance(raw_entries, list):
                raise FormatError(f"{cpath}.entries: expected a list")
            for k, entry in enumerate(raw_entries):
                epath = f"{cpath}.entries[{k}]"
                cell = tuple(_int_list(_need(entry, "simplex", epath), f"{epath}.simplex"))
                value = _need(entry, "value", epath)
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise FormatError(f"{epath}.value: expected a number")
                value = float(value)
                if not math.isfinite(value):
                    raise FormatError(f"{epath}.value: must be finite")
                if cell in values:
                    raise FormatError(f"{epath}: duplicate simplex {cell}")
                values[cell] = value
            try:
                components[indices] = Cochain(p, values)
            except Exception as exc:
                raise FormatError(f"{cpath}: {exc}") from exc
        angle = angle_part == [p, n] or angle_part == (p, n)
        try:
            parts[(p, n)] = BigradedCochain(p, n, components, angle_valued=angle)
        except Exception as exc:
            raise FormatError(f"{ppath}: {exc}") from exc
    try:
        return TotalCochain(degree, parts)
    except Exception as exc:
        raise FormatError(f"{path}: {exc}") from exc


def datum_to_dict(datum: GerbeDatum) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "complex": complex_to_dict(datum.cover.complex),
        "cover": cover_to_dict(datum.cover),
        "datum": {
            "level": datum.level,
            "parts": _parts_to_list(datum.data),
            "angle_part": [0, datum.level + 2],
        },
    }


def datum_from_dict(doc: Any) -> GerbeDatum:
    version = _int(_need(doc, "format_version", "document"), "format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format_version {version}")
    complex = complex_from_dict(_need(doc, "complex", "document"))
    cover = cover_from_dict(_need(doc, "cover", "document"), complex)
    datum_doc = _need(doc, "datum", "document")
    level = _int(_need(datum_doc, "level", "datum"), "datum.level")
    angle_part = datum_doc.get("angle_part")
    if angle_part is not None:
        angle_part = _int_list(angle_part, "datum.angle_part")
        if len(angle_part) != 2:
            raise FormatError("datum.angle_part: expected [p, n]")
    data = _parts_from_list(
        _need(datum_doc, "parts", "datum"), level + 2, angle_part, "datum.parts"
    )
    try:
        return GerbeDatum(level, data, cover)
    except Exception as exc:
        raise FormatError(f"datum: {exc}") from exc


def save_datum(path: str | os.PathLike, datum: GerbeDatum) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(datum_to_dict(datum), handle, indent=1)
        handle.write("\n")


def load_datum(path: str | os.PathLike) -> GerbeDatum:
    with open(path, "r", encoding="utf-8") as handle:
        return datum_from_dict(json.load(handle))


def save_witness(
    path: str | os.PathLike, cover: Cover, potential: GaugePotential
) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "complex": complex_to_dict(cover.complex),
        "cover": cover_to_dict(cover),
        "witness": {
            "degree": potential.data.total_degree,
            "parts": _parts_to_list(potential.data),
        },
    }
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(doc, handle, indent=1)
        handle.write("\n")
