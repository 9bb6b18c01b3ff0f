import random

import pytest

from streamfec.gf import GF
from streamfec.matrix import (LinalgError, Mat, NoSolution, Underdetermined,
                              cauchy_parity)


@pytest.fixture
def f7():
    return GF(7)


def rand_mat(field, r, c, rng):
    return Mat(field, [[field.random_element(rng) for _ in range(c)] for _ in range(r)], c)


class TestMul:
    def test_identity_left(self, f7):
        g = Mat.from_ints(f7, [[1, 2, 3], [4, 5, 6]])
        assert Mat.identity(f7, 2) @ g == g

    def test_zero_row_vector(self, f7):
        g = Mat.from_ints(f7, [[1, 2], [3, 4]])
        z = Mat.zeros(f7, 1, 2)
        assert (z @ g).is_zero()

    def test_base_field_operand_embeds(self):
        ext = GF(2, 2)
        a = Mat.from_ints(GF(2), [[1, 0], [1, 1]])
        b = Mat(ext, [[ext.alpha], [ext.one]], 1)
        out = a @ b
        assert out.field is ext
        assert out[0, 0] == ext.alpha
        assert out[1, 0] == ext.alpha + ext.one

    def test_shape_mismatch(self, f7):
        with pytest.raises(LinalgError):
            Mat.identity(f7, 2) @ Mat.identity(f7, 3)


class TestRank:
    def test_identity(self, f7):
        assert Mat.identity(f7, 4).rank() == 4

    def test_zero(self, f7):
        assert Mat.zeros(f7, 3, 5).rank() == 0

    def test_cauchy_full_rank(self, f7):
        assert cauchy_parity(3, 3, f7).rank() == 3

    def test_rank_equals_transpose_rank(self, f7):
        rng = random.Random(3)
        for _ in range(25):
            a = rand_mat(f7, rng.randint(1, 5), rng.randint(1, 5), rng)
            assert a.rank() == a.transpose().rank()


class TestRightKernel:
    def test_identity_has_trivial_kernel(self, f7):
        assert Mat.identity(f7, 4).right_kernel_basis().ncols == 0

    def test_zero_matrix_kernel_is_identity(self, f7):
        k = Mat.zeros(f7, 2, 3).right_kernel_basis()
        assert k == Mat.identity(f7, 3)

    def test_known_kernel_gf2(self):
        f2 = GF(2)
        t = Mat.from_ints(f2, [[1, 1, 0], [0, 0, 1]])
        k = t.right_kernel_basis()
        assert k.ncols == 1
        assert [k[i, 0] for i in range(3)] == [f2.one, f2.one, f2.zero]

    def test_product_vanishes_and_rank_complements(self, f7):
        rng = random.Random(11)
        for _ in range(25):
            t = rand_mat(f7, rng.randint(1, 4), rng.randint(1, 6), rng)
            k = t.right_kernel_basis()
            assert (t @ k).is_zero()
            assert k.ncols == t.ncols - t.rank()
            if k.ncols:
                assert k.rank() == k.ncols

    def test_zero_row_matrix(self, f7):
        t = Mat.zeros(f7, 0, 4)
        assert t.right_kernel_basis() == Mat.identity(f7, 4)


class TestSolveLeft:
    def test_identity(self, f7):
        a = Mat.identity(f7, 3)
        y = [f7(2), f7(5), f7(0)]
        assert a.solve_left(y) == y

    def test_zero_column_inconsistent(self, f7):
        a = Mat.from_ints(f7, [[1, 0], [2, 0]])
        assert a.solve_left([f7(1), f7(3)]) is NoSolution

    def test_rank_deficient_tagged(self, f7):
        a = Mat.from_ints(f7, [[1, 2], [2, 4]])
        assert a.solve_left([f7(1), f7(2)]) is Underdetermined

    def test_round_trip_invertible(self, f7):
        rng = random.Random(5)
        while True:
            a = rand_mat(f7, 4, 4, rng)
            if a.rank() == 4:
                break
        x0 = [f7.random_element(rng) for _ in range(4)]
        y = (Mat(f7, [x0], 4) @ a).rows[0]
        assert a.solve_left(y) == x0

    def test_overdetermined_consistent(self, f7):
        a = Mat.from_ints(f7, [[1, 2, 3], [0, 1, 1]])
        x0 = [f7(4), f7(6)]
        y = (Mat(f7, [x0], 2) @ a).rows[0]
        assert a.solve_left(y) == x0


class TestSystematize:
    def test_already_systematic_unchanged(self, f7):
        g = Mat.identity(f7, 2).hstack(Mat.from_ints(f7, [[3, 1], [2, 5]]))
        assert g.systematize() == g

    def test_row_space_preserved(self, f7):
        rng = random.Random(9)
        while True:
            g = rand_mat(f7, 3, 5, rng)
            if g.select_columns([0, 1, 2]).rank() == 3:
                break
        s = g.systematize()
        stacked = g.vstack(s)
        assert stacked.rank() == g.rank() == 3

    def test_singular_leading_block_rejected(self, f7):
        g = Mat.from_ints(f7, [[0, 1, 5], [0, 3, 2]])
        with pytest.raises(LinalgError):
            g.systematize()


class TestCauchyParity:
    def test_one_by_one_gf2(self):
        f2 = GF(2)
        c = cauchy_parity(1, 1, f2)
        assert c[0, 0] == f2.one

    def test_two_by_two_gf5_values(self):
        f5 = GF(5)
        c = cauchy_parity(2, 2, f5)
        # entry (i,j) = inverse(i - (2+j)):
        # inv(3)=2, inv(2)=3, inv(4)=4, inv(3)=2
        assert [[c[i, j] for j in range(2)] for i in range(2)] == \
            [[f5(2), f5(3)], [f5(4), f5(2)]]

    def test_all_square_submatrices_invertible(self, f7):
        from itertools import combinations
        c = cauchy_parity(3, 3, f7)
        for size in (1, 2, 3):
            for ri in combinations(range(3), size):
                for ci in combinations(range(3), size):
                    sub = c.select_rows(list(ri)).select_columns(list(ci))
                    assert sub.rank() == size

    def test_superregular_up_to_four(self):
        from itertools import combinations
        f11 = GF(11)
        for k, r in [(4, 4), (4, 3), (2, 4)]:
            c = cauchy_parity(k, r, f11)
            for size in range(1, min(k, r) + 1):
                for ri in combinations(range(k), size):
                    for ci in combinations(range(r), size):
                        assert c.select_rows(list(ri)).select_columns(list(ci)).rank() == size

    def test_field_too_small(self):
        with pytest.raises(LinalgError):
            cauchy_parity(2, 2, GF(3))

    def test_extension_field_rejected(self):
        with pytest.raises(LinalgError):
            cauchy_parity(1, 1, GF(2, 2))


class TestSelection:
    def test_all_columns_identity_op(self, f7):
        g = Mat.from_ints(f7, [[1, 2, 3], [4, 5, 6]])
        assert g.select_columns([0, 1, 2]) == g

    def test_empty_selection(self, f7):
        g = Mat.from_ints(f7, [[1, 2, 3]])
        sub = g.select_columns([])
        assert sub.ncols == 0 and sub.nrows == 1

    def test_out_of_range(self, f7):
        with pytest.raises(LinalgError):
            Mat.identity(f7, 2).select_columns([0, 2])

    def test_non_increasing_rejected(self, f7):
        with pytest.raises(LinalgError):
            Mat.identity(f7, 3).select_columns([1, 0])


class TestJson:
    def test_round_trip_extension_field(self):
        f = GF(5, 2)
        rng = random.Random(2)
        a = rand_mat(f, 3, 4, rng)
        assert Mat.from_json(a.to_json()) == a

    def test_round_trip_is_byte_stable(self, f7):
        rng = random.Random(4)
        a = rand_mat(f7, 2, 2, rng)
        assert Mat.from_json(a.to_json()).to_json() == a.to_json()

    def test_zero_row_matrix_round_trip(self, f7):
        a = Mat.zeros(f7, 0, 5)
        b = Mat.from_json(a.to_json())
        assert b.nrows == 0 and b.ncols == 5


class TestDegenerateShapes:
    def test_hstack_empty(self, f7):
        a = Mat.zeros(f7, 2, 0)
        b = Mat.identity(f7, 2)
        assert a.hstack(b) == b

    def test_transpose_zero_rows(self, f7):
        a = Mat.zeros(f7, 0, 3)
        t = a.transpose()
        assert (t.nrows, t.ncols) == (3, 0)

    def test_matmul_with_zero_inner(self, f7):
        a = Mat.zeros(f7, 2, 0)
        b = Mat.zeros(f7, 0, 3)
        assert a @ b == Mat.zeros(f7, 2, 3)
