"""JSON descriptors for fields and ideals.

Field descriptor::

    {"label": "q-sqrt5", "min_poly": [-1, -1, 1]}

Ideal descriptors, nested freely::

    {"int": m}
    {"gen": [c0, ..., c_{n-1}]}
    {"prime_above": p, "index": k}     # k-th prime above p, counting from 0
    {"product": [desc, ...]}
    {"power": {"base": desc, "exp": t}}
"""

from __future__ import annotations

import json
from pathlib import Path

from . import ideals
from .errors import DescriptorError, HilbertSystoleError
from .number_field import NumberField, PRESETS, make_field, preset


def _is_int(x):
    return isinstance(x, int) and not isinstance(x, bool)


def field_from_descriptor(desc) -> NumberField:
    if not isinstance(desc, dict):
        raise DescriptorError("field descriptor must be a JSON object")
    if "min_poly" not in desc:
        raise DescriptorError("field descriptor: missing key 'min_poly'")
    poly = desc["min_poly"]
    if not isinstance(poly, list) or not poly or not all(_is_int(c) for c in poly):
        raise DescriptorError("field descriptor: 'min_poly' must be a list of integers")
    if poly[-1] != 1:
        raise DescriptorError("field descriptor: last entry of 'min_poly' must be exactly 1")
    label = desc.get("label")
    if label is not None and not isinstance(label, str):
        raise DescriptorError("field descriptor: 'label' must be a string")
    try:
        return make_field(poly, label=label)
    except (HilbertSystoleError, ValueError) as exc:
        raise DescriptorError("field descriptor: %s: %s" % (type(exc).__name__, exc)) from exc


def load_field(spec: str) -> NumberField:
    """Load a field from a JSON file path, or from a preset name."""
    path = Path(spec)
    if path.is_file():
        try:
            desc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise DescriptorError("%s: line %d column %d: %s" % (spec, exc.lineno, exc.colno, exc.msg)) from exc
        return field_from_descriptor(desc)
    if spec in PRESETS:
        return preset(spec)
    raise DescriptorError("no field file or preset named %r (presets: %s)" % (spec, ", ".join(sorted(PRESETS))))


def parse_ideal(K: NumberField, text: str):
    """Parse an ideal descriptor given as JSON text; returns (ideal, descriptor)."""
    try:
        desc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DescriptorError("ideal descriptor: line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)) from exc
    return ideal_from_descriptor(K, desc), desc


def ideal_from_descriptor(K: NumberField, desc, path: str = "ideal"):
    if not isinstance(desc, dict) or len(desc) == 0:
        raise DescriptorError("%s: expected a JSON object" % path)
    try:
        if "int" in desc:
            m = desc["int"]
            if not _is_int(m) or m < 1:
                raise DescriptorError("%s.int: expected a positive integer" % path)
            return ideals.integer_ideal(K, m)
        if "gen" in desc:
            coords = desc["gen"]
            if not isinstance(coords, list) or len(coords) != K.degree or not all(_is_int(c) for c in coords):
                raise DescriptorError("%s.gen: expected %d integers" % (path, K.degree))
            return ideals.principal_ideal(K.element(coords))
        if "prime_above" in desc:
            p, k = desc["prime_above"], desc.get("index", 0)
            if not _is_int(p) or not _is_int(k):
                raise DescriptorError("%s: 'prime_above' and 'index' must be integers" % path)
            primes = ideals.factor_rational_prime(K, p)
            if not 0 <= k < len(primes):
                raise DescriptorError("%s.index: %d out of range, %d primes above %d" % (path, k, len(primes), p))
            return primes[k][0].ideal
        if "product" in desc:
            parts = desc["product"]
            if not isinstance(parts, list) or not parts:
                raise DescriptorError("%s.product: expected a non-empty list" % path)
            result = None
            for i, part in enumerate(parts):
                J = ideal_from_descriptor(K, part, "%s.product[%d]" % (path, i))
                result = J if result is None else ideals.mul_ideals(result, J)
            return result
        if "power" in desc:
            inner = desc["power"]
            if not isinstance(inner, dict) or "base" not in inner or "exp" not in inner:
                raise DescriptorError("%s.power: expected {'base': ..., 'exp': t}" % path)
            t = inner["exp"]
            if not _is_int(t) or t < 1:
                raise DescriptorError("%s.power.exp: expected an integer >= 1" % path)
            return ideals.pow_ideal(ideal_from_descriptor(K, inner["base"], path + ".power.base"), t)
    except DescriptorError:
        raise
    except HilbertSystoleError as exc:
        raise DescriptorError("%s: %s: %s" % (path, type(exc).__name__, exc)) from exc
    raise DescriptorError("%s: unknown descriptor keys %s" % (path, sorted(desc)))
