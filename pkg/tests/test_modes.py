import pytest

from cfa import builtin_algebra, builtin_lie, make_current, make_virasoro
from cfa.modes import (expand_module_modes, expand_modes, gen_binomial, jacobi_check,
                       locality_order)
from cfa.modules import make_ext_44b, make_M_alpha_Delta, make_trivial_module
from cfa.scalars import ONE, as_scalar

from _util import corrupted_vir


def test_generalized_binomial():
    assert gen_binomial(5, 2) == 10
    assert gen_binomial(-1, 3) == -1
    assert gen_binomial(-2, 2) == 3
    assert gen_binomial(3, 5) == 0


def test_virasoro_examples():
    T = expand_modes(make_virasoro())
    assert T.bracket((0, 1), (0, -1)) == {(0, -1): 2}
    for m in range(-6, 7):
        for n in range(-6, 7):
            if (((0, m), (0, n))) in T.lost:
                continue
            want = {(0, m + n - 1): m - n} if m != n else {}
            assert T.bracket((0, m), (0, n)) == want


def test_current_sl2_modes():
    R = make_current(builtin_lie("sl2"))
    T = expand_modes(R, (-3, 3))
    e, f, h = (R.index[x] for x in "efh")
    for m in range(-3, 4):
        for n in range(-3, 4):
            if -3 <= m + n <= 3:
                assert T.bracket((e, m), (f, n)) == {(h, m + n): 1}


def test_jacobi_check_examples():
    assert jacobi_check(expand_modes(make_virasoro())).passed
    bad = jacobi_check(expand_modes(corrupted_vir()))
    assert not bad.passed and bad.violations
    ab = builtin_algebra("current:abelian2")
    assert jacobi_check(expand_modes(ab)).passed


@pytest.mark.parametrize("spec", ["vir", "current:sl2", "K:1", "W:1"])
def test_engines_agree(spec):
    T = expand_modes(builtin_algebra(spec), (-4, 4))
    a = jacobi_check(T, engine="python")
    b = jacobi_check(T, engine="numba")
    assert (a.passed, a.checked, a.skipped) == (b.passed, b.checked, b.skipped)


def test_engines_agree_on_failure():
    T = expand_modes(corrupted_vir(), (-4, 4))
    a = jacobi_check(T, engine="python")
    b = jacobi_check(T, engine="numba")
    assert not a.passed and not b.passed
    assert a.checked == b.checked


@pytest.mark.parametrize("spec", ["vir", "semidirect:sl2", "K:2", "current:osp12"])
def test_mode_antisymmetry(spec):
    T = expand_modes(builtin_algebra(spec), (-4, 4))
    for (x, y), br in T.brackets.items():
        if (x, y) in T.lost or (y, x) in T.lost:
            continue
        s = -1 if (T.parity(x) and T.parity(y)) else 1
        assert T.bracket(y, x) == {k: -s * c for k, c in br.items()}


def test_locality_order():
    assert locality_order(make_virasoro(), 0, 0) == 2
    R = make_current(builtin_lie("sl2"))
    assert locality_order(R, R.index["e"], R.index["f"]) == 1
    assert locality_order(R, R.index["e"], R.index["e"]) == 0


@pytest.mark.parametrize("spec", ["vir", "semidirect:sl2", "K:3", "W:1"])
def test_locality_symmetric(spec):
    R = builtin_algebra(spec)
    for i in range(R.rank):
        for j in range(R.rank):
            assert locality_order(R, i, j) == locality_order(R, j, i)


def test_module_modes_formula():
    alpha, Delta = ONE / 2, as_scalar(3)
    MT, rep = expand_module_modes(make_M_alpha_Delta(alpha, Delta), (-5, 5))
    assert rep.passed
    for m in range(-5, 5):
        for n in range(-5, 6):
            if ((0, m + 1), (0, n)) in MT.lost:
                continue
            want = {}
            c = (Delta - 1) * (m + 1) - n
            if c:
                want[(0, m + n)] = c
            if alpha:
                want[(0, m + n + 1)] = alpha
            assert MT.act((0, m + 1), (0, n)) == want


def test_trivial_module_modes():
    MT, rep = expand_module_modes(make_trivial_module())
    assert rep.passed and MT.action == {}


def test_ext_44b_central_component():
    MT, rep = expand_module_modes(make_ext_44b(0, 2))
    assert rep.passed
    c = MT.names.index("c")
    hits = {(x, v) for (x, v), out in MT.action.items() if any(k[0] == c for k in out)}
    assert {x for x, v in hits if v == (0, -1)} == {(0, 3)}
    # every hit comes from the binomial C(m, 3) term
    assert all(x[1] + v[1] == 2 and gen_binomial(x[1], 3) for x, v in hits)
