"""Resolution of builtin algebra specs such as ``vir``, ``current:sl2`` or ``K:3``."""

from __future__ import annotations

from .constructions import (make_CK6, make_current, make_KN, make_semidirect_vir_current,
                            make_SN, make_virasoro, make_WN)
from .lie import LieDataError, builtin_lie

__all__ = ["builtin_algebra", "builtin_module", "BUILTIN_SPECS", "BUILTIN_MODULE_SPECS", "BuiltinError"]

BUILTIN_SPECS = ["vir", "current:<lie>", "semidirect:<lie>", "W:<N>", "S:<N>", "K:<N>", "CK6"]


class BuiltinError(ValueError):
    pass


def _int_arg(arg, spec):
    if arg is None or not arg.isdigit():
        raise BuiltinError(f"builtin {spec!r} needs an integer argument")
    return int(arg)


def builtin_algebra(spec: str, lies=None):
    """Build the algebra named by ``spec``; ``lies`` maps extra Lie algebra names."""
    head, _, arg = spec.partition(":")
    arg = arg or None
    head_l = head.lower()
    try:
        if head_l in ("vir", "virasoro") and arg is None:
            return make_virasoro()
        if head_l == "ck6" and arg is None:
            return make_CK6()
        if head_l in ("current", "semidirect"):
            if arg is None:
                raise BuiltinError(f"builtin {spec!r} needs a Lie algebra argument")
            g = (lies or {}).get(arg) or builtin_lie(arg)
            return make_current(g) if head_l == "current" else make_semidirect_vir_current(g)
        if head in ("W", "S", "K"):
            N = _int_arg(arg, spec)
            return {"W": make_WN, "S": make_SN, "K": make_KN}[head](N)
    except LieDataError as exc:
        raise BuiltinError(str(exc)) from None
    except BuiltinError:
        raise
    except ValueError as exc:
        raise BuiltinError(f"{spec}: {exc}") from None
    raise BuiltinError(f"unknown builtin algebra {spec!r}")


BUILTIN_MODULE_SPECS = ["M:<alpha>:<Delta>", "ext44a:<alpha>", "ext44b:<alpha>:<Delta>",
                        "ext45:<lie>", "trivial[:<t>]", "adjoint:<lie>"]


def builtin_module(spec: str):
    """Modules by spec, e.g. ``M:1/2:2``, ``ext44b:0:1``, ``ext45:sl2``."""
    from . import modules as md
    from .scalars import parse_scalar

    head, *args = spec.split(":")
    try:
        vals = args
        if head == "M" and len(vals) == 2:
            return md.make_M_alpha_Delta(parse_scalar(vals[0]), parse_scalar(vals[1]))
        if head == "ext44a" and len(vals) == 1:
            return md.make_ext_44a(parse_scalar(vals[0]))
        if head == "ext44b" and len(vals) == 2:
            return md.make_ext_44b(parse_scalar(vals[0]), parse_scalar(vals[1]))
        if head == "ext45" and len(vals) == 1:
            return md.make_ext_45(builtin_lie(vals[0]))
        if head == "trivial" and len(vals) <= 1:
            return md.make_trivial_module(t=parse_scalar(vals[0]) if vals else 0)
        if head == "adjoint" and len(vals) == 1:
            g = builtin_lie(vals[0])
            return md.make_current_module(g, {a: g.ad_matrix(i) for i, a in enumerate(g.names)})
    except (LieDataError, ValueError) as exc:
        raise BuiltinError(f"{spec}: {exc}") from None
    raise BuiltinError(f"unknown builtin module {spec!r}")
