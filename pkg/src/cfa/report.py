"""Canonical JSON for reports.

Scalars become ``{"re": "p/q", "im": "p/q"}``, polynomials in d become lists of
such scalars indexed by degree, and keys are sorted.  Product tables use the
compact term form ``[re, im, power, generator]``.
"""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass

from .scalars import DPoly, as_scalar, is_scalar

__all__ = ["canonical", "emit_json", "scalar_json", "vec_terms", "products_json",
           "algebra_json", "module_json", "cocycle_json"]


def _q(q):
    return f"{q.numerator}/{q.denominator}"


def scalar_json(c):
    c = as_scalar(c)
    return {"re": _q(c.real), "im": _q(c.imag)}


def vec_terms(vec, names):
    """``{(gen, power): c}`` as sorted ``[re, im, power, name]`` rows."""
    out = []
    for (k, e), c in sorted(vec.items()):
        c = as_scalar(c)
        out.append([_q(c.real), _q(c.imag), e, names[k]])
    return out


def canonical(obj):
    if is_scalar(obj):
        return scalar_json(obj)
    if isinstance(obj, DPoly):
        return [scalar_json(c) for c in obj.coeffs]
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        raise TypeError("floats are not allowed in reports")
    if is_dataclass(obj) and not isinstance(obj, type):
        return canonical(asdict(obj))
    if isinstance(obj, dict):
        return {str(k): canonical(v) for k, v in obj.items()}
    if isinstance(obj, (set, frozenset)):
        return sorted((canonical(v) for v in obj), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    if hasattr(obj, "as_dict"):
        return canonical(obj.as_dict())
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def emit_json(report) -> bytes:
    """Deterministic UTF-8 JSON; ``emit_json(json.loads(emit_json(x))) == emit_json(x)``."""
    text = json.dumps(canonical(report), sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    return text.encode("utf-8")


def products_json(R):
    return [{"lhs": R.names[i], "arg": R.names[j], "n": n, "rhs": vec_terms(vec, R.names)}
            for (i, j, n), vec in sorted(R.table.items())]


def algebra_json(R):
    return {
        "name": R.name,
        "generators": [{"name": n, "parity": p} for n, p in R.generators],
        "torsion": {R.names[g]: scalar_json(t) for g, t in sorted(R.torsion.items())},
        "products": products_json(R),
    }


def module_json(M):
    R = M.algebra
    return {
        "name": M.name,
        "algebra": R.name,
        "basis": [{"name": n, "parity": p} for n, p in M.basis],
        "torsion": {M.names[b]: scalar_json(t) for b, t in sorted(M.torsion.items())},
        "actions": [{"lhs": R.names[i], "arg": M.names[b], "n": n, "rhs": vec_terms(vec, M.names)}
                    for (i, b, n), vec in sorted(M.table.items())],
    }


def cocycle_json(alpha):
    names = alpha.algebra.names
    return [{"a": names[i], "b": names[j], "n": n, "value": scalar_json(v)}
            for (i, j, n), v in sorted(alpha.values.items())]
