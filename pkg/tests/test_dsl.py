import pytest

from cfa import builtin_algebra, make_virasoro
from cfa.builtins import BuiltinError, builtin_module
from cfa.dsl import (DslError, emit_algebra, emit_cocycle, emit_lie, emit_module, parse,
                     parse_algebra, parse_cocycle, parse_lie, parse_module)
from cfa.lie import builtin_lie
from cfa.modules import make_ext_44b, make_M_alpha_Delta, module_check
from cfa.cohomology import TwoCocycle, cocycle_check
from cfa.scalars import I, ONE

from _util import ROUND_TRIP_SPECS, fuzz_parser

VIR = "algebra vir { even L; [L 0 L] = d^1 L; [L 1 L] = 2 L; }"


def test_parse_virasoro():
    R = parse_algebra(VIR)
    assert R.same_table(make_virasoro()) and R.name == "vir"


def test_undefined_generator_error():
    with pytest.raises(DslError) as exc:
        parse_algebra("algebra v { even L; [L 0 M] = d^1 M; }")
    assert "'M'" in str(exc.value) and exc.value.line == 1 and exc.value.col


def test_empty_body():
    assert parse_algebra("algebra z { }").rank == 0


@pytest.mark.parametrize("src,fragment", [
    ("algebra v { even L; [L 0 L] = 1/0 L; }", ""),
    ("algebra v { even L; [L 1 L] = 2 L; [L 1 L] = 2 L; }", "duplicate"),
    ("algebra v { even L; even L; }", ""),
    ("algebra v { even L; [L 0 L] = d^1 L }", ""),
    ("algebra v { even L; [L 1 L] = 2 L; [L 0 L] = d^1 L; [L 0 L] = 3 L; }", ""),
])
def test_structured_errors(src, fragment):
    with pytest.raises(DslError) as exc:
        parse(src)
    assert fragment in str(exc.value)
    assert exc.value.line is not None


def test_explicit_mirror_mismatch_is_error():
    with pytest.raises(DslError):
        parse_algebra("algebra v { even a, b; [a 0 b] = a; [b 0 a] = a; }")


def test_module_with_rationals():
    src = VIR + "\nmodule M over vir { let alpha = 1/2; even v; <L 0 v> = d^1 v + alpha v; <L 1 v> = 2 v; }"
    M = parse_module(src)
    ref = make_M_alpha_Delta(ONE / 2, 2)
    assert M.table == ref.table


def test_module_with_relation():
    src = VIR + ("\nmodule E over vir { even v, c; relation d c = 0; "
                 "<L 0 v> = d^1 v; <L 1 v> = v; <L 2 v> = c; }")
    M = parse_module(src)
    assert M.torsion == {1: 0}
    assert module_check(M).passed


def test_module_undeclared_vector():
    with pytest.raises(DslError):
        parse_module(VIR + "\nmodule M over vir { even v; <L 0 w> = v; }")


def test_module_over_builtin():
    M = parse_module("module M over vir { even v; <L 0 v> = d^1 v; <L 1 v> = i v; }")
    assert M.table[(0, 0, 1)] == {(0, 0): I}
    assert module_check(M).passed


@pytest.mark.parametrize("spec", ROUND_TRIP_SPECS)
def test_algebra_round_trip(spec):
    R = builtin_algebra(spec)
    R2 = parse_algebra(emit_algebra(R))
    assert R2.generators == R.generators and R2.same_table(R) and R2.torsion == R.torsion


@pytest.mark.parametrize("spec", ["M:1/2:2", "ext44a:3", "ext44b:1/2:1", "ext44b:0:2",
                                  "ext45:sl2", "trivial", "adjoint:sl2"])
def test_module_round_trip(spec):
    M = builtin_module(spec)
    M2 = parse_module(emit_module(M))
    assert M2.basis == M.basis and M2.table == M.table and M2.torsion == M.torsion


def test_cocycle_and_lie_round_trip():
    V = make_virasoro()
    a = TwoCocycle(V, {("L", "L", 3): ONE / 12})
    b = parse_cocycle(emit_cocycle(a))
    assert b.values == a.values and cocycle_check(b).passed
    g = builtin_lie("osp12")
    g2 = parse_lie(emit_lie(g))
    assert g2.basis == g.basis and g2.table == g.table


def test_unknown_builtin():
    with pytest.raises(BuiltinError):
        builtin_algebra("Q:3")
    with pytest.raises(BuiltinError):
        builtin_module("ext44b:0:5")


def test_fuzz_small():
    ok, errors, crashes = fuzz_parser(1500, seed=3)
    assert crashes == []
    assert errors > 0
