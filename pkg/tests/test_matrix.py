import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from chaincert.matrix import (
    Invariants,
    Matrix,
    ShapeError,
    block,
    cokernel_invariants,
    hnf,
    hstack,
    kernel_basis,
    restrict_scalars,
    snf,
    solve,
    vstack,
)
from chaincert.rings import ZZ, GroupRing, GroupTable, PrimeField, RingError

F2 = PrimeField(2)
F3 = PrimeField(3)
F5 = PrimeField(5)


def rand_int_matrix(rng, rows, cols, bound=9):
    return Matrix(ZZ, rows, cols, [rng.randint(-bound, bound) for _ in range(rows * cols)])


# ---------------------------------------------------------------------------
# basic operations


def test_identity_law():
    rng = random.Random(0)
    a = rand_int_matrix(rng, 3, 4)
    assert Matrix.identity(ZZ, 3) * a == a
    assert a * Matrix.identity(ZZ, 4) == a


def test_block_inverse_pair_shape():
    one = Matrix.from_rows(ZZ, [[1]])
    f = g = one
    b = block([[f, one - f * g], [one, -g]])
    assert b.to_rows() == [[1, 0], [1, -1]]


def test_f2_square():
    m = Matrix.from_rows(F2, [[1, 1], [0, 1]])
    assert (m * m) == Matrix.identity(F2, 2)


def test_shape_errors():
    a = Matrix.zeros(ZZ, 2, 3)
    b = Matrix.zeros(ZZ, 2, 3)
    with pytest.raises(ShapeError):
        a * b
    with pytest.raises(RingError):
        a + Matrix.zeros(F2, 2, 3)


def test_zero_dimensional_matrices():
    a = Matrix.zeros(ZZ, 0, 3)
    b = Matrix.zeros(ZZ, 3, 0)
    assert (a * b).shape == (0, 0)
    assert (b * a).shape == (3, 3)
    assert (b * a).is_zero()
    assert hstack(b, Matrix.identity(ZZ, 3)).shape == (3, 3)
    assert vstack(a, Matrix.identity(ZZ, 3)).shape == (3, 3)


def test_transpose_round_trip():
    rng = random.Random(1)
    a = rand_int_matrix(rng, 3, 5)
    assert a.transpose().transpose() == a


# ---------------------------------------------------------------------------
# Smith normal form, with the minor-gcd oracle


def _det(rows):
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        total += (-1) ** j * rows[0][j] * _det(minor)
    return total


def _invariant_factors_by_minors(a: Matrix):
    """Independent oracle: the product of the first k invariant factors is
    the gcd of all k x k minors."""
    rows = a.to_rows()
    out = []
    prev = 1
    for k in range(1, min(a.rows, a.cols) + 1):
        g = 0
        for rsel in itertools.combinations(range(a.rows), k):
            for csel in itertools.combinations(range(a.cols), k):
                sub = [[rows[i][j] for j in csel] for i in rsel]
                g = math.gcd(g, _det(sub))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def _is_unimodular(u: Matrix) -> bool:
    inverse = solve(u, Matrix.identity(ZZ, u.rows))
    return inverse is not None and u * inverse == Matrix.identity(ZZ, u.rows)


def assert_valid_snf(a: Matrix):
    res = snf(a)
    assert res.u * a * res.v == res.d
    assert _is_unimodular(res.u)
    assert _is_unimodular(res.v)
    diag = res.diagonal()
    for i in range(res.d.rows):
        for j in range(res.d.cols):
            if i != j:
                assert res.d.entry(i, j) == 0
    assert all(x >= 0 for x in diag)
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero, "zeros must trail"
    for x, y in zip(nonzero, nonzero[1:]):
        assert y % x == 0
    return res


def test_snf_examples():
    res = assert_valid_snf(Matrix.from_rows(ZZ, [[2, 0], [0, 3]]))
    assert res.diagonal() == [1, 6]
    res = assert_valid_snf(Matrix.identity(ZZ, 4))
    assert res.diagonal() == [1, 1, 1, 1]
    res = assert_valid_snf(Matrix.zeros(ZZ, 3, 2))
    assert res.diagonal() == [0, 0]


def test_snf_against_minor_oracle():
    rng = random.Random(7)
    for _ in range(60):
        a = rand_int_matrix(rng, rng.randint(1, 4), rng.randint(1, 4), bound=6)
        res = assert_valid_snf(a)
        expected = _invariant_factors_by_minors(a)
        got = [x for x in res.diagonal() if x]
        assert got == expected


@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 5),
    st.integers(0, 5),
    st.data(),
)
def test_snf_transform_identity_property(rows, cols, data):
    entries = data.draw(
        st.lists(st.integers(-30, 30), min_size=rows * cols, max_size=rows * cols)
    )
    assert_valid_snf(Matrix(ZZ, rows, cols, entries))


# ---------------------------------------------------------------------------
# Hermite normal form


def assert_valid_hnf(a: Matrix):
    res = hnf(a)
    assert res.u * a == res.h
    assert _is_unimodular(res.u)
    # row echelon with positive pivots and reduced columns above
    last = -1
    for i in range(res.h.rows):
        row = res.h.row_list(i)
        lead = next((j for j, x in enumerate(row) if x), None)
        if lead is None:
            for ii in range(i, res.h.rows):
                assert not any(res.h.row_list(ii)), "zero rows must trail"
            break
        assert lead > last
        last = lead
        assert row[lead] > 0
        for ii in range(i):
            assert 0 <= res.h.entry(ii, lead) < row[lead]
    return res


def test_hnf_random():
    rng = random.Random(11)
    for _ in range(60):
        a = rand_int_matrix(rng, rng.randint(0, 5), rng.randint(0, 5), bound=20)
        assert_valid_hnf(a)


# ---------------------------------------------------------------------------
# solve


def test_solve_integers_examples():
    a = Matrix.from_rows(ZZ, [[2]])
    x = solve(a, Matrix.from_rows(ZZ, [[4]]))
    assert x == Matrix.from_rows(ZZ, [[2]])
    assert solve(a, Matrix.from_rows(ZZ, [[3]])) is None


def test_solve_group_ring_example(zc2):
    t = zc2.basis_element(1)
    a = Matrix(zc2, 1, 1, [zc2.add(zc2.one, t)])
    b = Matrix(zc2, 1, 1, [(2, 2)])
    x = solve(a, b)
    assert x is not None
    assert a * x == b


@pytest.mark.parametrize(
    "ring",
    [ZZ, F5, GroupRing(ZZ, GroupTable.cyclic(3)), GroupRing(F2, GroupTable.symmetric(3))],
    ids=str,
)
def test_solve_round_trip_property(ring):
    """Whenever B = A X0, solve(A, B) returns some X with A X = B."""
    rng = random.Random(13)
    for _ in range(20):
        m, n, k = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 3)

        def rand_el():
            if isinstance(ring, GroupRing):
                if isinstance(ring.base, PrimeField):
                    return tuple(rng.randrange(ring.base.p) for _ in range(ring.group.order))
                return tuple(rng.randint(-2, 2) for _ in range(ring.group.order))
            if isinstance(ring, PrimeField):
                return rng.randrange(ring.p)
            return rng.randint(-5, 5)

        a = Matrix(ring, m, n, [rand_el() for _ in range(m * n)])
        x0 = Matrix(ring, n, k, [rand_el() for _ in range(n * k)])
        b = a * x0
        x = solve(a, b)
        assert x is not None
        assert a * x == b


def test_solve_no_columns():
    a = Matrix.zeros(ZZ, 2, 0)
    assert solve(a, Matrix.zeros(ZZ, 2, 3)) is not None
    assert solve(a, Matrix.from_rows(ZZ, [[1, 0], [0, 0]])) is None


def test_solve_field_consistency():
    a = Matrix.from_rows(F3, [[1, 1], [0, 1]])
    b = Matrix.from_rows(F3, [[1], [1]])
    x = solve(a, b)
    assert x is not None and a * x == b
    # rank-1 matrix, right side off the column space
    a2 = Matrix.from_rows(F3, [[1, 2], [2, 1]])
    assert solve(a2, Matrix.from_rows(F3, [[1], [1]])) is None


# ---------------------------------------------------------------------------
# kernels


def test_kernel_examples():
    k = kernel_basis(Matrix.from_rows(F5, [[1, 0]]))
    assert k.cols == 1
    assert k.to_rows() == [[0], [1]]

    k = kernel_basis(Matrix.from_rows(ZZ, [[2, -2]]))
    assert k.cols == 1
    assert [abs(x) for x in (k.entry(0, 0), k.entry(1, 0))] == [1, 1]
    assert k.entry(0, 0) == k.entry(1, 0)

    assert kernel_basis(Matrix.identity(ZZ, 3)).cols == 0


def test_kernel_of_zero_row_matrix():
    k = kernel_basis(Matrix.zeros(ZZ, 0, 3))
    assert k.cols == 3
    assert solve(k, Matrix.identity(ZZ, 3)) is not None


def test_kernel_completeness_brute_force():
    """Every small-box integer solution of A x = 0 lies in the lattice
    spanned by the kernel basis."""
    rng = random.Random(17)
    for _ in range(25):
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        a = rand_int_matrix(rng, m, n, bound=3)
        k = kernel_basis(a)
        assert (a * k).is_zero()
        for point in itertools.product(range(-2, 3), repeat=n):
            x = Matrix(ZZ, n, 1, list(point))
            if (a * x).is_zero():
                assert solve(k, x) is not None, (a.to_rows(), point)


def test_kernel_field_property():
    rng = random.Random(19)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = Matrix(F3, m, n, [rng.randrange(3) for _ in range(m * n)])
        k = kernel_basis(a)
        assert (a * k).is_zero()
        # dimension check by rank-nullity
        from chaincert.matrix import rank_field

        assert k.cols == n - rank_field(a)


# ---------------------------------------------------------------------------
# cokernel invariants


def test_cokernel_examples():
    assert cokernel_invariants(Matrix.from_rows(ZZ, [[2]])) == Invariants(0, (2,))
    assert cokernel_invariants(Matrix.zeros(ZZ, 2, 0)) == Invariants(2, ())
    assert cokernel_invariants(Matrix.identity(ZZ, 3)) == Invariants(0, ())
    assert cokernel_invariants(Matrix.from_rows(F5, [[0, 0], [0, 1]])) == Invariants(1, ())


def test_cokernel_group_ring_rejected(zc2):
    with pytest.raises(RingError):
        cokernel_invariants(Matrix.zeros(zc2, 1, 1))


# ---------------------------------------------------------------------------
# restriction of scalars


def test_restrict_scalars_values(zc2):
    t = zc2.basis_element(1)
    a = Matrix(zc2, 1, 1, [zc2.sub(t, zc2.one)])
    assert restrict_scalars(a).to_rows() == [[-1, 1], [1, -1]]


def test_restrict_scalars_multiplicative(zc2):
    rng = random.Random(23)
    for _ in range(15):
        m, n, k = rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3)

        def rand_el():
            return (rng.randint(-3, 3), rng.randint(-3, 3))

        a = Matrix(zc2, m, n, [rand_el() for _ in range(m * n)])
        b = Matrix(zc2, n, k, [rand_el() for _ in range(n * k)])
        assert restrict_scalars(a * b) == restrict_scalars(a) * restrict_scalars(b)
