"""JSON codecs for every value the command line reads or writes.

Round-trip guarantee: every encoder here produces a document its decoder
maps back to an equal value, and encoding is deterministic (sorted keys,
canonical orderings).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .braiding import ConeFrame
from .lattice import (
    Bond,
    Cone,
    FinitePath,
    PathKind,
    SemiInfinitePath,
    SemiInfiniteRibbon,
    SiteKind,
    SiteSpec,
    dual_path,
    plaquette_site,
    primal_path,
    ribbon_path,
    vertex_site,
)
from .pauli import GaussianRational, PauliOperator, QuasiLocalOperator
from .sectors import SectorLabel, SectorSpec


class ParseError(ValueError):
    """Raised when an input document cannot be decoded."""


def _need(doc: dict, key: str):
    if not isinstance(doc, dict) or key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def _int_pair(value) -> tuple[int, int]:
    if (not isinstance(value, (list, tuple)) or len(value) != 2
            or not all(isinstance(c, int) for c in value)):
        raise ParseError(f"expected an integer pair, got {value!r}")
    return (value[0], value[1])


# -- bonds -------------------------------------------------------------------

def bond_to_json(b: Bond) -> dict:
    return {"x": b.x, "y": b.y, "o": b.orientation}


def bond_from_json(doc: dict) -> Bond:
    try:
        return Bond(int(_need(doc, "x")), int(_need(doc, "y")), str(_need(doc, "o")))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- paths -------------------------------------------------------------------

def path_to_json(path: FinitePath) -> dict:
    if path.kind is PathKind.PRIMAL:
        return {
            "kind": "primal",
            "steps": [bond_to_json(b) for b in path.bonds],
            "from": list(path.endpoints[0].vertex),
            "to": list(path.endpoints[1].vertex),
        }
    if path.kind is PathKind.DUAL:
        return {"kind": "dual", "steps": [list(c) for c in path.cells]}
    return {
        "kind": "ribbon",
        "primal": path_to_json(path.primal_part),
        "dual": path_to_json(path.dual_part),
    }


def path_from_json(doc: dict) -> FinitePath:
    kind = _need(doc, "kind")
    try:
        if kind == "primal":
            bonds = tuple(bond_from_json(b) for b in _need(doc, "steps"))
            start = _int_pair(_need(doc, "from"))
            end = _int_pair(_need(doc, "to"))
            return FinitePath(PathKind.PRIMAL, bonds=bonds,
                              endpoints=(vertex_site(start), vertex_site(end)))
        if kind == "dual":
            cells = [_int_pair(c) for c in _need(doc, "steps")]
            return dual_path(cells)
        if kind == "ribbon":
            return ribbon_path(path_from_json(_need(doc, "primal")),
                               path_from_json(_need(doc, "dual")))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown path kind {kind!r}")


def semi_path_to_json(path: SemiInfinitePath) -> dict:
    if path.kind is PathKind.PRIMAL:
        vertices = [path.prefix.endpoints[0].vertex]
        at = vertices[0]
        for b in path.prefix.bonds:
            u, w = b.endpoints()
            at = w if at == u else u
            vertices.append(at)
        return {"kind": "primal", "vertices": [list(v) for v in vertices],
                "ray": path.direction}
    return {"kind": "dual", "cells": [list(c) for c in path.prefix.cells],
            "ray": path.direction}


def semi_path_from_json(doc: dict) -> SemiInfinitePath:
    kind = _need(doc, "kind")
    ray = _need(doc, "ray")
    try:
        if kind == "primal":
            vs = [_int_pair(v) for v in _need(doc, "vertices")]
            return SemiInfinitePath(PathKind.PRIMAL, vertex_site(vs[0]),
                                    primal_path(vs), ray)
        if kind == "dual":
            cs = [_int_pair(c) for c in _need(doc, "cells")]
            return SemiInfinitePath(PathKind.DUAL, plaquette_site(cs[0]),
                                    dual_path(cs), ray)
    except ParseError:
        raise
    except (ValueError, IndexError) as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown semi-infinite path kind {kind!r}")


# -- cones, frames -----------------------------------------------------------

def cone_to_json(c: Cone) -> dict:
    return {"apex": list(c.apex), "ray1": list(c.ray1), "ray2": list(c.ray2)}


def cone_from_json(doc: dict) -> Cone:
    try:
        return Cone(_int_pair(_need(doc, "apex")), _int_pair(_need(doc, "ray1")),
                    _int_pair(_need(doc, "ray2")))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def frame_to_json(f: ConeFrame) -> dict:
    return {"forbidden": cone_to_json(f.forbidden)}


def frame_from_json(doc: dict) -> ConeFrame:
    return ConeFrame(cone_from_json(_need(doc, "forbidden")))


# -- operators ---------------------------------------------------------------

_PHASE_STR = {0: "+1", 1: "+i", 2: "-1", 3: "-i"}
_PHASE_VAL = {v: k for k, v in _PHASE_STR.items()}


def pauli_to_json(p: PauliOperator) -> dict:
    return {
        "phase": _PHASE_STR[p.phase],
        "letters": [{"bond": bond_to_json(b), "l": l} for b, l in p.letters],
    }


def pauli_from_json(doc: dict) -> PauliOperator:
    phase = _need(doc, "phase")
    if phase not in _PHASE_VAL:
        raise ParseError(f"unknown phase {phase!r}")
    letters = {}
    for entry in _need(doc, "letters"):
        b = bond_from_json(_need(entry, "bond"))
        letter = _need(entry, "l")
        if letter not in ("X", "Y", "Z"):
            raise ParseError(f"unknown Pauli letter {letter!r}")
        if b in letters:
            raise ParseError(f"duplicate bond {b!r} in letters")
        letters[b] = letter
    return PauliOperator.from_map(letters, _PHASE_VAL[phase])


def combination_to_json(a: QuasiLocalOperator) -> dict:
    terms = []
    for key, coeff in a.terms:
        terms.append({
            "coeff": [coeff.re.numerator, coeff.re.denominator,
                      coeff.im.numerator, coeff.im.denominator],
            "letters": [{"bond": bond_to_json(b), "l": l} for b, l in key],
        })
    return {"terms": terms}


def combination_from_json(doc: dict) -> QuasiLocalOperator:
    acc: dict = {}
    for entry in _need(doc, "terms"):
        raw = _need(entry, "coeff")
        if not isinstance(raw, list) or len(raw) != 4:
            raise ParseError("coeff must be [re_num, re_den, im_num, im_den]")
        try:
            coeff = GaussianRational(Fraction(raw[0], raw[1]), Fraction(raw[2], raw[3]))
        except (TypeError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient {raw!r}") from exc
        letters = {}
        for item in _need(entry, "letters"):
            b = bond_from_json(_need(item, "bond"))
            letters[b] = _need(item, "l")
        mono = PauliOperator.from_map(letters)
        acc[mono.letters] = acc.get(mono.letters, GaussianRational.of(0)) + coeff
    return QuasiLocalOperator.from_dict(acc)


def operator_from_json(doc: dict) -> QuasiLocalOperator:
    """Accept either a single monomial or a combination document."""
    if "terms" in doc:
        return combination_from_json(doc)
    if "letters" in doc:
        return QuasiLocalOperator.from_pauli(pauli_from_json(doc))
    raise ParseError("operator document needs 'letters' or 'terms'")


# -- sites and sectors -------------------------------------------------------

def site_to_json(s: SiteSpec) -> dict:
    if s.kind is SiteKind.VERTEX:
        return {"kind": "vertex", "at": list(s.vertex)}
    if s.kind is SiteKind.PLAQUETTE:
        return {"kind": "plaquette", "at": list(s.plaquette)}
    return {"kind": "combined", "vertex": list(s.vertex), "plaquette": list(s.plaquette)}


def site_from_json(doc: dict) -> SiteSpec:
    kind = _need(doc, "kind")
    try:
        if kind == "vertex":
            return vertex_site(_int_pair(_need(doc, "at")))
        if kind == "plaquette":
            return plaquette_site(_int_pair(_need(doc, "at")))
        if kind == "combined":
            from .lattice import combined_site
            return combined_site(_int_pair(_need(doc, "vertex")),
                                 _int_pair(_need(doc, "plaquette")))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown site kind {kind!r}")


def sector_to_json(s: SectorSpec) -> dict:
    if s.label is SectorLabel.ONE:
        return {"label": "1"}
    doc: dict[str, Any] = {"label": s.label.value, "cone": cone_to_json(s.cone)}
    if s.label is SectorLabel.Y:
        doc["primal"] = semi_path_to_json(s.path.primal)
        doc["dual"] = semi_path_to_json(s.path.dual)
    else:
        doc["path"] = semi_path_to_json(s.path)
    return doc


def sector_from_json(doc: dict) -> SectorSpec:
    label_str = _need(doc, "label")
    try:
        label = SectorLabel(label_str)
    except ValueError as exc:
        raise ParseError(f"unknown sector label {label_str!r}") from exc
    if label is SectorLabel.ONE:
        return SectorSpec(SectorLabel.ONE, None, None)
    cone = cone_from_json(_need(doc, "cone"))
    try:
        if label is SectorLabel.Y:
            ribbon = SemiInfiniteRibbon(semi_path_from_json(_need(doc, "primal")),
                                        semi_path_from_json(_need(doc, "dual")))
            return SectorSpec(label, ribbon, cone)
        return SectorSpec(label, semi_path_from_json(_need(doc, "path")), cone)
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


# -- value formatting --------------------------------------------------------

def gaussian_to_json(v: GaussianRational) -> dict:
    return {"re": [v.re.numerator, v.re.denominator],
            "im": [v.im.numerator, v.im.denominator],
            "text": str(v)}


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
