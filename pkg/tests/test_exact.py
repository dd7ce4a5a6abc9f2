from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from avmodules.exact import (HALF, I, Matrix, ONE, RowReducer, Scalar, ZERO,
                             as_scalar, rank_of)
from avmodules.errors import DimensionError, ScalarParseError


def sc(text):
    return Scalar.parse(text)


# -- scalar field ----------------------------------------------------------

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=5)
scalars = st.builds(Scalar, small_fracs, small_fracs)


class TestScalar:
    def test_canonical_form(self):
        s = Scalar(Fraction(2, 4), Fraction(-6, 8))
        assert (s.a, s.b, s.d) == (2, -3, 4)
        assert s.d > 0

    def test_parse_emit_roundtrip_examples(self):
        for text in ["2", "-1/3*i", "0", "1/2+3*i", "i", "-i", "5/7-2/9*i", "-4"]:
            s = sc(text)
            assert str(s) == text
            assert sc(str(s)) == s

    def test_parse_liberal_forms(self):
        assert sc("1+i") == Scalar(1, 1)
        assert sc(" 3/2 - 2*i ") == Scalar(Fraction(3, 2), -2)
        assert sc("+i") == I

    def test_parse_rejects_garbage(self):
        for bad in ["", "1+1+1", "i+i", "x", "1//2"]:
            with pytest.raises(ScalarParseError):
                sc(bad)

    def test_arithmetic_examples(self):
        assert sc("1/2+3*i") * sc("-1/3*i") == sc("1-1/6*i")
        assert (ONE + I) * (ONE - I) == Scalar(2)
        assert I * I == Scalar(-1)
        assert sc("3/4") / sc("3/2") == HALF

    def test_pow_negative(self):
        x = sc("1/2+i")
        assert x ** 3 * x ** -3 == ONE
        assert x ** 0 == ONE

    def test_div_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ONE / ZERO

    def test_int_interop(self):
        assert Scalar(3) + 1 == Scalar(4)
        assert 2 * HALF == ONE
        assert Scalar(5) - 5 == ZERO

    def test_predicates(self):
        assert sc("3").is_nonneg_integer()
        assert not sc("-3").is_nonneg_integer()
        assert not sc("3/2").is_nonneg_integer()
        assert not sc("3*i").is_nonneg_integer()
        assert sc("-2").is_integer()

    @given(scalars, scalars, scalars)
    @settings(max_examples=150, deadline=None)
    def test_field_axioms(self, x, y, z):
        assert x + y == y + x
        assert (x + y) + z == x + (y + z)
        assert x * y == y * x
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + ZERO == x and x * ONE == x
        assert x + (-x) == ZERO

    @given(scalars)
    @settings(max_examples=100, deadline=None)
    def test_inverses_exact(self, x):
        if x:
            assert x * x.inv() == ONE

    @given(scalars)
    @settings(max_examples=100, deadline=None)
    def test_str_roundtrip(self, x):
        assert Scalar.parse(str(x)) == x


# -- exact linear algebra ---------------------------------------------------


def cofactor_det(rows):
    """Independent determinant oracle: Laplace expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = ZERO
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * cofactor_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


class TestMatrix:
    def test_rank_examples(self):
        assert Matrix([[1, 0], [0, 1]]).rank() == 2
        assert Matrix([[1, 1], [2, 2]]).rank() == 1
        assert Matrix([[1, 1, 0], [1, 2, 2], [1, 4, 8]]).rank() == 3

    def test_det_examples(self):
        assert Matrix([[1, 0], [2, 2]]).det() == Scalar(2)
        assert Matrix([[0, 0], [0, 0]]).det() == ZERO
        m = [[1, 1, 0], [1, 2, 2], [1, 4, 8]]
        expected = cofactor_det([[as_scalar(x) for x in r] for r in m])
        assert expected == Scalar(2)
        assert Matrix(m).det() == expected

    def test_det_requires_square(self):
        with pytest.raises(DimensionError):
            Matrix([[1, 2, 3], [4, 5, 6]]).det()

    def test_solve_examples(self):
        assert Matrix([[1, 0], [0, 1]]).solve([5, "1/2"]) == [Scalar(5), HALF]
        assert Matrix([[1, 1], [1, 2]]).solve([2, 3]) == [ONE, ONE]
        assert Matrix([[1, 1], [1, 1]]).solve([0, 1]) is None

    def test_solve_shape(self):
        with pytest.raises(DimensionError):
            Matrix([[1, 1]]).solve([1, 2])

    def test_det_multiplicative(self):
        import random
        rng = random.Random(7)
        for _ in range(20):
            n = rng.randint(1, 4)
            a = Matrix([[Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 3)))
                         for _ in range(n)] for _ in range(n)])
            b = Matrix([[Scalar(rng.randint(-3, 3), rng.randint(-1, 1))
                         for _ in range(n)] for _ in range(n)])
            assert (a @ b).det() == a.det() * b.det()

    def test_rank_nullity(self):
        import random
        rng = random.Random(11)
        for _ in range(20):
            r = rng.randint(1, 4)
            c = rng.randint(1, 5)
            m = Matrix([[Scalar(rng.randint(-2, 2)) for _ in range(c)]
                        for _ in range(r)])
            assert m.rank() + len(m.nullspace()) == c

    def test_nullspace_vectors_in_kernel(self):
        m = Matrix([[1, 2, 3], [2, 4, 6], [0, 1, 1]])
        for v in m.nullspace():
            image = [sum((m.data[i][j] * v[j] for j in range(3)), ZERO)
                     for i in range(3)]
            assert all(x == ZERO for x in image)

    def test_inverse(self):
        m = Matrix([[1, 1], [1, 2]])
        assert m @ m.inverse() == Matrix.identity(2)


class TestRowReducer:
    def test_incremental_rank_and_membership(self):
        red = RowReducer()
        assert red.insert({("a",): ONE, ("b",): Scalar(2)})
        assert red.insert({("b",): ONE})
        assert not red.insert({("a",): Scalar(3)})  # in the span already
        assert red.rank == 2
        assert red.contains({("a",): Scalar(5), ("b",): Scalar(-1)})
        assert not red.contains({("c",): ONE})

    def test_rank_of(self):
        vecs = [{1: ONE, 2: ONE}, {1: ONE}, {2: ONE}, {1: Scalar(4), 2: Scalar(9)}]
        assert rank_of(vecs) == 2
