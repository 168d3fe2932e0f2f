import pytest

from cfa import builtin_lie, make_virasoro
from cfa.modules import (ConformalModule, ModuleError, direct_sum, in_submodule, invariants,
                         is_irreducible_rank1, is_split, is_submodule, make_current_module,
                         make_ext_44a, make_ext_44b, make_ext_45, make_M_A_B, make_M_alpha_Delta,
                         make_trivial_module, make_vir_current_module, module_action, module_check,
                         quotient_size, rep_to_gc)
from cfa.scalars import ONE, as_scalar

HALF = ONE / 2
SL2_STD = {"e": [[0, 1], [0, 0]], "f": [[0, 0], [1, 0]], "h": [[1, 0], [0, -1]]}


def test_M_alpha_Delta_passes():
    for a, d in [(0, 1), (HALF, 2), (as_scalar(3), as_scalar(-2))]:
        assert module_check(make_M_alpha_Delta(a, d)).passed


def test_injected_violation_detected():
    M = make_M_alpha_Delta(HALF, 2)
    act = dict(M.table)
    act[(0, 0, 2)] = {(0, 0): ONE}
    bad = ConformalModule(M.algebra, M.basis, act)
    rep = module_check(bad)
    assert not rep.passed
    # m = n = 1 is balanced by skew terms; the defect first shows at m + n = 3
    assert {(v.m, v.n) for v in rep.violations if v.axiom == "M1"} == {(1, 2), (2, 1)}


def test_trivial_module_passes():
    assert module_check(make_trivial_module()).passed


def test_M01_action():
    M = make_M_alpha_Delta(0, 1)
    assert M.nth_vec({(0, 0): ONE}, {(0, 0): ONE}, 1) == {(0, 0): ONE}


def test_M_A_B_jordan_block():
    M = make_M_A_B([[0, 0], [0, 0]], [[2, 1], [0, 2]])
    assert module_check(M).passed
    # indecomposable: u1 spans a submodule that has no complement
    assert is_submodule(M, [{(0, 0): ONE}])
    assert not is_split(M, [{(0, 0): ONE}])


def test_M_A_B_rejects_noncommuting():
    with pytest.raises(ModuleError):
        make_M_A_B([[1, 0], [0, 0]], [[0, 1], [0, 0]])


def test_M_alpha_0_reducible():
    M = make_M_alpha_Delta(HALF, 0)
    assert not is_irreducible_rank1(M)
    assert is_submodule(M, [{(0, 1): ONE, (0, 0): HALF}])


def test_current_modules():
    assert module_check(make_current_module("sl2", SL2_STD)).passed
    g = builtin_lie("sl2")
    ad = {a: g.ad_matrix(i) for i, a in enumerate(g.names)}
    assert module_check(make_vir_current_module(g, ad, 1)).passed
    triv = make_current_module("sl2", {a: [[0]] for a in "efh"})
    assert module_check(triv).passed


def test_bad_representation_rejected():
    from cfa.lie import LieDataError
    with pytest.raises(LieDataError):
        make_current_module("sl2", {"e": [[0, 1], [0, 0]], "f": [[0, 0], [1, 0]], "h": [[2, 0], [0, 0]]})


def test_extension_modules_pass():
    for M in [make_ext_44a(HALF), make_ext_44b(0, 1), make_ext_44b(HALF, 2), make_ext_45("sl2")]:
        assert module_check(M).passed, M.name


def test_ext_44b_top_action():
    M = make_ext_44b(0, 2)
    c = M.index["c"]
    assert M.nth_vec({(0, 0): ONE}, {(0, 0): ONE}, 3) == {(c, 0): ONE}
    with pytest.raises(ModuleError):
        make_ext_44b(0, 3)


def test_ext_45_killing_value():
    M = make_ext_45("sl2")
    R = M.algebra
    v = M.nth_vec({(R.index["e"], 0): ONE}, {(M.index["f"], 0): ONE}, 1)
    assert v == {(M.index["c"], 0): as_scalar(4)}


def test_ext_44a_quotient_is_trivial():
    M = make_ext_44a(HALF)
    assert is_submodule(M, M.sub)
    S = quotient_size(M, M.sub)
    assert (S.r, S.d) == (0, 1)


def test_invariants():
    assert invariants(make_trivial_module()) == [{(0, 0): ONE}]
    assert invariants(make_M_alpha_Delta(HALF, 2)) == []
    M = make_ext_44b(0, 1)
    assert invariants(M) == [{(M.index["c"], 0): ONE}]


def test_is_split():
    assert not is_split(make_ext_44b(0, 1))
    assert not is_split(make_ext_44b(HALF, 2))
    assert not is_split(make_ext_45("sl2"))
    S = direct_sum(make_M_alpha_Delta(0, 1), make_trivial_module())
    assert is_split(S, [{(1, 0): ONE}])


def test_is_split_requires_submodule():
    M = make_M_alpha_Delta(0, 1)
    S = direct_sum(M, make_M_alpha_Delta(0, 2))
    with pytest.raises(ModuleError):
        is_split(S, [{(0, 0): ONE, (1, 1): ONE}])


def test_irreducible_rank1():
    assert is_irreducible_rank1(make_M_alpha_Delta(HALF, 2))
    assert not is_irreducible_rank1(make_M_alpha_Delta(HALF, 0))
    zero = ConformalModule(make_virasoro(), [("v", 0)], {})
    assert not is_irreducible_rank1(zero)
    with pytest.raises(ModuleError):
        is_irreducible_rank1(direct_sum(make_M_alpha_Delta(0, 1), make_M_alpha_Delta(0, 1)))


def test_rep_to_gc():
    rho, rep = rep_to_gc(make_M_alpha_Delta(HALF, 2))
    assert rep["homomorphism"] and rep["faithful"]
    triv = make_current_module("sl2", {a: [[0, 0], [0, 0]] for a in "efh"})
    _, rep = rep_to_gc(triv)
    assert rep["homomorphism"] and not rep["faithful"] and len(rep["kernel"]) == 3
    from cfa.algebra import ConformalSuperalgebra
    empty = ConformalModule(ConformalSuperalgebra([], {}), [("v", 0)], {})
    rho, rep = rep_to_gc(empty)
    assert rho == {} and rep["homomorphism"]


@pytest.mark.parametrize("builder", [lambda: make_ext_44b(HALF, 1), lambda: make_ext_45("sl2"),
                                     make_trivial_module])
def test_torsion_vectors_are_killed(builder):
    M = builder()
    R = M.algebra
    for b in M.torsion:
        for i in range(R.rank):
            assert M.act_vec({(i, 0): ONE}, {(b, 0): ONE}) == {}


@pytest.mark.parametrize("builder", [lambda: make_M_alpha_Delta(HALF, 2), lambda: make_ext_44b(0, 2),
                                     lambda: make_current_module("sl2", SL2_STD)])
def test_shifted_action_two_ways(builder):
    from cfa.modules import _rec_action
    M = builder()
    R = M.algebra
    for i in range(R.rank):
        for b in M.free_basis():
            memo = {}
            for k in range(5):
                for n in range(R.max_order() + 3):
                    direct = M.nth_vec({(i, 0): ONE}, {(b, k): ONE}, n)
                    assert direct == _rec_action(M, i, 0, b, k, n, memo)
