import pytest
from hypothesis import given, strategies as st

from cfa import (ConformalSuperalgebra, builtin_algebra, builtin_lie, check_axioms, lambda_table,
                 make_current, make_virasoro, nth_product)
from cfa.algebra import Element, complete_mirror
from cfa.scalars import ONE

from _util import corrupted_vir, random_element, seeded, skew_rhs


@pytest.fixture(scope="module")
def vir():
    return make_virasoro()


def test_virasoro_products(vir):
    L = vir.gen("L")
    assert nth_product(L, L, 1) == 2 * L
    assert nth_product(L.d(), L, 1) == -L.d()
    assert nth_product(L, L.d(), 1) == 3 * L.d()
    assert not nth_product(L, L, 2)


def test_mismatched_algebras_rejected(vir):
    other = make_virasoro()
    with pytest.raises(ValueError):
        nth_product(vir.gen("L"), other.gen("L"), 0)


def test_check_axioms_examples(vir):
    assert check_axioms(vir).passed
    zero = ConformalSuperalgebra([("a", 0), ("b", 1)], {})
    assert check_axioms(zero).passed


def test_corrupted_virasoro_witness():
    rep = check_axioms(corrupted_vir())
    assert not rep.passed
    hits = [(v.lhs, v.rhs) for v in rep.violations
            if v.axiom == "C3" and v.where == ("L", "L", "L") and (v.m, v.n) == (1, 1)]
    assert hits == [("9 L", "12 L")]


def test_lambda_table_rows(vir):
    assert [(a, b, n, str(v)) for a, b, n, v in lambda_table(vir)] == [
        ("L", "L", 0, "d L"), ("L", "L", 1, "2 L")]
    assert lambda_table(make_current(builtin_lie("abelian1"))) == []
    rows = lambda_table(make_current(builtin_lie("sl2")))
    assert all(n == 0 for _, _, n, _ in rows)
    assert ("e", "f", 0, "h") in [(a, b, n, str(v)) for a, b, n, v in rows]
    # only nonzero entries are listed: the three diagonal brackets vanish
    assert len(rows) == 6


def test_parity_inconsistent_table_rejected():
    with pytest.raises(ValueError):
        ConformalSuperalgebra([("a", 0), ("b", 1)], {(0, 0, 0): {(1, 0): 1}})


def test_stored_table_agrees_with_product():
    R = builtin_algebra("K:2")
    for i in range(R.rank):
        for j in range(R.rank):
            for n in range(R.bound(i, j) + 2):
                got = nth_product(R.gens()[i], R.gens()[j], n).vec
                assert got == R.product_vec(i, j, n)
                if n >= R.bound(i, j):
                    assert not got


ALGS = ["vir", "current:sl2", "semidirect:sl2", "W:1", "K:2", "S:2", "current:osp12"]


@pytest.mark.parametrize("spec", ALGS)
@given(seed=st.integers(0, 10 ** 6))
def test_derivation_property(spec, seed):
    R = builtin_algebra(spec)
    rng = seeded(seed)
    x, y = random_element(R, rng), random_element(R, rng)
    for n in range(R.max_order() + 2):
        lhs = nth_product(x, y, n).d()
        rhs = nth_product(x.d(), y, n) + nth_product(x, y.d(), n)
        assert lhs == rhs


@pytest.mark.parametrize("spec", ALGS)
@given(seed=st.integers(0, 10 ** 6))
def test_skew_symmetry_involution(spec, seed):
    R = builtin_algebra(spec)
    rng = seeded(seed)
    p, q = rng.randint(0, 1), rng.randint(0, 1)
    x, y = random_element(R, rng, parity=p), random_element(R, rng, parity=q)
    for n in range(R.max_order() + 1):
        assert nth_product(x, y, n) == skew_rhs(x, y, n)


@pytest.mark.parametrize("spec", ["vir", "semidirect:sl2", "K:1"])
def test_random_high_degree_jacobi(spec):
    from math import comb
    R = builtin_algebra(spec)
    rng = seeded(7)
    for _ in range(5):
        a, b, c = (random_element(R, rng, degree=5, parity=0) for _ in range(3))
        for m in range(3):
            for n in range(3):
                lhs = nth_product(a, nth_product(b, c, n), m)
                rhs = nth_product(b, nth_product(a, c, m), n)
                for j in range(m + 1):
                    rhs = rhs + comb(m, j) * nth_product(nth_product(a, b, j), c, m + n - j)
                assert lhs == rhs


def test_complete_mirror_fills_skew():
    gens = [("L", 0)]
    prods = complete_mirror(gens, {(0, 0, 1): {(0, 0): 2}, (0, 0, 0): {(0, 1): 1}})
    R = ConformalSuperalgebra(gens, prods)
    assert R.same_table(make_virasoro())


def test_torsion_generator_in_extension():
    R = ConformalSuperalgebra([("L", 0), ("C", 0)],
                              {(0, 0, 0): {(0, 1): 1}, (0, 0, 1): {(0, 0): 2},
                               (0, 0, 3): {(1, 0): ONE / 12}}, torsion={1: 0})
    assert check_axioms(R).passed
    C = R.gen("C")
    assert not C.d()
