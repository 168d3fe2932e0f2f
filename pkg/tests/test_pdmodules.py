import random

from hypothesis import given, strategies as st

from cfa.pdmodules import PdMatrix, Size, hermite_form, kernel, membership, size_of
from cfa.scalars import ONE, DPoly, as_scalar

D = DPoly([0, 1])
Z = DPoly()
U = DPoly([1])


def test_hermite_of_d_and_d2():
    H = hermite_form(PdMatrix(1, [[D], [D * D]]))
    assert H.columns == ((D,),)


def test_hermite_idempotent_and_span_preserving():
    M = PdMatrix(2, [[D + 1, D], [D * D, Z], [U, D - 1]])
    H = hermite_form(M)
    assert hermite_form(H).columns == H.columns
    assert all(membership(list(c), H) for c in M.columns)
    assert all(membership(list(c), M) for c in H.columns)


def test_size_of():
    assert size_of(PdMatrix.from_rows([[U, Z], [Z, D * D]])) == Size(0, 2)
    assert size_of(PdMatrix(2, [])) == Size(2, 0)
    assert size_of(PdMatrix(1, [[D + 3]])) == Size(0, 1)


def test_membership():
    assert membership([D * D], PdMatrix(1, [[D]]))
    assert not membership([U], PdMatrix(1, [[D]]))
    assert membership([D + 1, D + 1], PdMatrix(2, [[U, U]]))


def _mul(M, col):
    return [sum((M.entry(i, j) * col[j] for j in range(M.cols)), Z) for i in range(M.rows)]


def test_kernel_examples():
    K = kernel(PdMatrix.from_rows([[D, -D]]))
    assert K.cols == 1 and K.columns[0] == (U, U)
    assert kernel(PdMatrix.from_rows([[U, D], [Z, U]])).cols == 0
    assert kernel(PdMatrix.zeros(1, 2)).cols == 2


def _rand_poly(rng, deg=2):
    return DPoly([as_scalar(rng.randint(-3, 3)) for _ in range(rng.randint(0, deg + 1))])


def _rand_matrix(rng, rows, cols):
    return PdMatrix(rows, [[_rand_poly(rng) for _ in range(rows)] for _ in range(cols)])


def _unimodular(rng, n):
    M = [[U if i == j else Z for j in range(n)] for i in range(n)]
    M[0] = [as_scalar(rng.choice([-2, 1, 3])) * x for x in M[0]]
    for _ in range(4 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        p = _rand_poly(rng, 1)
        M[i] = [a + p * b for a, b in zip(M[i], M[j])]
    return PdMatrix.from_rows(M)


def _matmul(A, B):
    return PdMatrix.from_rows([[sum((A.entry(i, k) * B.entry(k, j) for k in range(A.cols)), Z)
                                for j in range(B.cols)] for i in range(A.rows)])


@given(st.integers(0, 10 ** 6))
def test_kernel_columns_annihilated(seed):
    rng = random.Random(seed)
    M = _rand_matrix(rng, rng.randint(1, 3), rng.randint(1, 4))
    K = kernel(M)
    for col in K.columns:
        assert all(not x for x in _mul(M, list(col)))
    # independence: the kernel basis has full column rank
    assert hermite_form(K).cols == K.cols


@given(st.integers(0, 10 ** 6))
def test_size_invariant_under_unimodular_transforms(seed):
    rng = random.Random(seed)
    n, k = rng.randint(1, 3), rng.randint(1, 3)
    M = _rand_matrix(rng, n, k)
    P, Q = _unimodular(rng, n), _unimodular(rng, k)
    assert size_of(_matmul(_matmul(P, M), Q)) == size_of(M)


@given(st.integers(0, 10 ** 6))
def test_quotient_monotone(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    M = _rand_matrix(rng, n, rng.randint(0, 2))
    extra = [_rand_poly(rng) for _ in range(n)]
    if not any(extra):
        return
    before = size_of(M)
    after = size_of(PdMatrix(n, list(M.columns) + [extra]))
    assert (after.r, after.d) <= (before.r, before.d)
