"""JSON encoding of congruence data.

    {"field": {"kind": "quadratic", "d": -5},
     "modulus": {"finite": {"integer": 12} | {"primes": [{"p": 5, "which": 0, "e": 1}]}
                           | {"hnf": [a, b, c]},
                 "infinite": ["w0", "w1"]},
     "gamma": {"type": "trivial" | "full"}
              | {"generators": [{"signs": [1, -1], "residue": {"x": 1, "y": 0}}]},
     "name": "optional label"}

``modulus`` and ``gamma`` may be omitted (trivial modulus, trivial Gamma).
"""

from __future__ import annotations

import json
from pathlib import Path

from .congmon import CongruenceMonoidSpec, GammaGen, Modulus, monoid_data
from .errors import InputError
from .quadfield import (
    W0,
    AlgInt,
    FieldSpec,
    IdealRep,
    ideal_mul,
    ideal_pow,
    parse_field,
    rational_ideal,
    split_type,
    unit_ideal,
)


def _int(obj, name: str) -> int:
    if not isinstance(obj, int) or isinstance(obj, bool):
        raise InputError(f"{name} must be an integer")
    return obj


def parse_finite(F: FieldSpec, obj) -> IdealRep:
    if obj is None:
        return unit_ideal(F)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise InputError("modulus.finite: expected exactly one of 'integer', 'primes', 'hnf'")
    (key, val), = obj.items()
    if key == "integer":
        n = _int(val, "modulus.finite.integer")
        if n < 1:
            raise InputError("modulus.finite.integer must be positive")
        return rational_ideal(F, n)
    if key == "hnf":
        if not isinstance(val, list) or len(val) != 3:
            raise InputError("modulus.finite.hnf must be a list [a, b, c]")
        a, b, c = (_int(v, "modulus.finite.hnf") for v in val)
        return IdealRep(a, b, c)
    if key == "primes":
        if not isinstance(val, list):
            raise InputError("modulus.finite.primes must be a list")
        A = unit_ideal(F)
        for i, ent in enumerate(val):
            where = f"modulus.finite.primes[{i}]"
            if not isinstance(ent, dict) or "p" not in ent:
                raise InputError(f"{where}: expected an object with 'p'")
            p = _int(ent["p"], f"{where}.p")
            which = _int(ent.get("which", 0), f"{where}.which")
            e = _int(ent.get("e", 1), f"{where}.e")
            if e < 1:
                raise InputError(f"{where}.e must be positive")
            try:
                above = split_type(F, p)
            except InputError as exc:
                raise InputError(f"{where}.p: {exc}") from None
            if not 0 <= which < len(above):
                raise InputError(f"{where}.which must be in [0, {len(above) - 1}]")
            A = ideal_mul(F, A, ideal_pow(F, above[which].rep, e))
        return A
    raise InputError(f"modulus.finite: unknown key {key!r}")


def parse_places(F: FieldSpec, obj) -> tuple[str, ...]:
    if obj is None:
        return ()
    if not isinstance(obj, list):
        raise InputError("modulus.infinite must be a list of place names")
    out = []
    for w in obj:
        if F.is_rational and w == "inf":
            w = W0
        if w not in F.real_places:
            raise InputError(f"modulus.infinite: {w!r} is not a real place of {F}")
        out.append(w)
    return tuple(out)


def parse_gamma(F: FieldSpec, obj, nplaces: int) -> tuple[tuple[GammaGen, ...], bool]:
    if obj is None:
        return (), False
    if not isinstance(obj, dict):
        raise InputError("gamma must be an object")
    if "type" in obj:
        if obj["type"] == "trivial":
            return (), False
        if obj["type"] == "full":
            return (), True
        raise InputError(f"gamma.type must be 'trivial' or 'full', got {obj['type']!r}")
    if "generators" not in obj or not isinstance(obj["generators"], list):
        raise InputError("gamma: expected 'type' or a 'generators' list")
    gens = []
    for i, g in enumerate(obj["generators"]):
        where = f"gamma.generators[{i}]"
        if not isinstance(g, dict) or "residue" not in g:
            raise InputError(f"{where}: expected an object with 'residue'")
        signs = g.get("signs", [1] * nplaces)
        if not isinstance(signs, list) or len(signs) != nplaces or any(s not in (1, -1) for s in signs):
            raise InputError(f"{where}.signs must list one of +1/-1 per infinite place ({nplaces})")
        r = g["residue"]
        if isinstance(r, int) and not isinstance(r, bool):
            r = {"x": r, "y": 0}
        if not isinstance(r, dict):
            raise InputError(f"{where}.residue must be an object {{x, y}}")
        x = _int(r.get("x", 0), f"{where}.residue.x")
        y = _int(r.get("y", 0), f"{where}.residue.y")
        if F.is_rational and y:
            raise InputError(f"{where}.residue.y must be 0 over Q")
        gens.append(GammaGen(tuple(signs), AlgInt(x, y)))
    return tuple(gens), False


def spec_from_json(obj) -> CongruenceMonoidSpec:
    if not isinstance(obj, dict):
        raise InputError("spec must be a JSON object")
    unknown = set(obj) - {"field", "modulus", "gamma", "name"}
    if unknown:
        raise InputError(f"unknown top-level field(s): {', '.join(sorted(unknown))}")
    if "field" not in obj:
        raise InputError("field is required")
    F = parse_field(obj["field"])
    mod = obj.get("modulus") or {}
    if not isinstance(mod, dict):
        raise InputError("modulus must be an object")
    finite = parse_finite(F, mod.get("finite"))
    places = parse_places(F, mod.get("infinite"))
    m = Modulus(finite, places)
    gens, full = parse_gamma(F, obj.get("gamma"), len(m.infinite))
    name = obj.get("name", "")
    if not isinstance(name, str):
        raise InputError("name must be a string")
    spec = CongruenceMonoidSpec(F, m, gens, full, name)
    # residues must be units modulo m0; checking here names the field
    try:
        monoid_data(spec)
    except InputError as exc:
        raise InputError(f"gamma: {exc}") from None
    return spec


def load_spec(path: str | Path) -> CongruenceMonoidSpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    spec = spec_from_json(obj)
    if not spec.name:
        spec = CongruenceMonoidSpec(spec.field, spec.modulus, spec.gamma, spec.gamma_full, Path(path).stem)
    return spec


def spec_to_json(spec: CongruenceMonoidSpec) -> dict:
    out = spec.to_json()
    if spec.name:
        out["name"] = spec.name
    return out


__all__ = ["spec_from_json", "spec_to_json", "load_spec", "parse_finite", "parse_places", "parse_gamma"]
