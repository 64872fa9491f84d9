import numpy as np
import pytest
from hypothesis import given, strategies as st

from models.matrices import Graph, IntSymMatrix, PmOneMatrix
from services.construction_service import ConstructionService
from services.spectra_service import SpectraService
from utils.errors import MatrixOverflowError
from utils.exact_linalg import (
    kron,
    mat_mul,
    mat_pow,
    minpoly_zero_pm_check,
    rowsums,
    signed_permute,
    sum_of_squares,
    trace,
)


def J(n):
    return IntSymMatrix.ones(n)


def I(n):
    return IntSymMatrix.identity(n)


@st.composite
def sym_int_matrices(draw, max_order=4, lo=-3, hi=3):
    n = draw(st.integers(min_value=1, max_value=max_order))
    upper = draw(st.lists(st.integers(lo, hi), min_size=n * (n + 1) // 2, max_size=n * (n + 1) // 2))
    arr = np.zeros((n, n), dtype=np.int64)
    arr[np.triu_indices(n)] = upper
    arr = arr + np.triu(arr, 1).T
    return IntSymMatrix(arr)


@st.composite
def pm_matrices(draw, max_order=5):
    m = draw(sym_int_matrices(max_order=max_order, lo=0, hi=1))
    return PmOneMatrix(2 * m.entries - 1)


def test_kron_identity_gives_block_diagonal():
    result = kron(I(2), J(3))
    expected = np.zeros((6, 6), dtype=np.int64)
    expected[:3, :3] = 1
    expected[3:, 3:] = 1
    assert np.array_equal(result.entries, expected)


def test_kron_k_h2_has_zero_rowsums(k_matrix, h2):
    result = kron(k_matrix, h2)
    assert result.order == 4
    assert np.all(np.abs(result.entries) == 1)
    assert rowsums(result) == [0, 0, 0, 0]


def test_kron_eigenvalues_are_pairwise_products():
    values = np.linalg.eigvalsh(kron(J(2), J(2)).as_float())
    assert sorted(values) == pytest.approx([0, 0, 0, 4], abs=1e-9)


def test_kron_rejects_overflow():
    big = IntSymMatrix(np.array([[2 ** 40]], dtype=np.int64))
    with pytest.raises(MatrixOverflowError):
        kron(big, big)


@pytest.mark.parametrize("a, e, expected", [
    (np.ones((3, 3), dtype=np.int64), 2, 3 * np.ones((3, 3), dtype=np.int64)),
    (np.ones((4, 4), dtype=np.int64) - 2 * np.eye(4, dtype=np.int64), 2, 4 * np.eye(4, dtype=np.int64)),
    (np.array([[1, 1], [1, -1]], dtype=np.int64), 2, 2 * np.eye(2, dtype=np.int64)),
])
def test_mat_pow_small_identities(a, e, expected):
    assert np.array_equal(np.asarray(mat_pow(IntSymMatrix(a), e).entries), expected)


def test_mat_pow_rejects_large_exponent():
    with pytest.raises(ValueError):
        mat_pow(J(2), 5)


def test_mat_mul_detects_overflow():
    big = np.full((4, 4), 2 ** 31, dtype=np.int64)
    with pytest.raises(MatrixOverflowError):
        mat_mul(big, big)


def test_mat_mul_rejects_nonconformable():
    with pytest.raises(ValueError):
        mat_mul(np.ones((2, 3), dtype=np.int64), np.ones((2, 3), dtype=np.int64))


def test_trace_and_rowsums(k_matrix):
    assert trace(J(5)) == 5
    assert rowsums(kron(k_matrix, J(2))) == [0, 0, 0, 0]


def test_trace_of_thkhn_instance():
    b, _ = ConstructionService().build_thkhn(2, 4)
    assert trace(b) == -8


def test_signed_permute_identity_and_global_negation(h2):
    assert signed_permute(h2, [0, 1], [1, 1]) == h2
    assert signed_permute(h2, [0, 1], [-1, -1]) == h2


@pytest.mark.parametrize("perm", [[0, 1], [1, 0]])
@pytest.mark.parametrize("signs", [[1, 1], [1, -1], [-1, 1], [-1, -1]])
def test_signed_permute_keeps_h2_singular_values(h2, perm, signs):
    values = SpectraService().singular_values(signed_permute(h2, perm, signs))
    assert values == pytest.approx([np.sqrt(2), np.sqrt(2)], abs=1e-9)


def test_signed_permute_rejects_malformed_permutation(h2):
    with pytest.raises(ValueError):
        signed_permute(h2, [0, 0], [1, 1])
    with pytest.raises(ValueError):
        signed_permute(h2, [0, 1], [1, 2])


@pytest.mark.parametrize("n", [1, 2, 5])
def test_minpoly_on_all_ones(n):
    assert minpoly_zero_pm_check(J(n), n * n, 1)


def test_minpoly_on_h2(h2):
    assert minpoly_zero_pm_check(h2, 2, 1)
    assert not minpoly_zero_pm_check(h2, 3, 1)


def test_minpoly_on_thkhn_instance():
    b, _ = ConstructionService().build_thkhn(2, 4)
    assert minpoly_zero_pm_check(b, 16, 1)


def test_minpoly_rejects_nonpositive_arguments(h2):
    with pytest.raises(ValueError):
        minpoly_zero_pm_check(h2, 0, 1)


def test_matrix_types_enforce_invariants():
    with pytest.raises(ValueError):
        IntSymMatrix([[0, 1], [2, 0]])
    with pytest.raises(ValueError):
        PmOneMatrix([[1, 0], [0, 1]])
    with pytest.raises(ValueError):
        Graph([[1, 0], [0, 0]])


@given(sym_int_matrices(), sym_int_matrices())
def test_trace_of_kron_is_product_of_traces(a, b):
    assert trace(kron(a, b)) == trace(a) * trace(b)


@given(sym_int_matrices())
def test_trace_of_square_is_sum_of_squares(a):
    assert trace(mat_pow(a, 2)) == sum_of_squares(a)


@given(pm_matrices())
def test_pm_matrix_square_trace_is_order_squared(b):
    assert trace(mat_pow(b, 2)) == b.order ** 2


@given(pm_matrices(), st.data())
def test_signed_permute_preserves_singular_values(b, data):
    n = b.order
    perm = data.draw(st.permutations(list(range(n))))
    signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
    spectra = SpectraService()
    before = spectra.singular_values(b)
    after = spectra.singular_values(signed_permute(b, perm, signs))
    assert after == pytest.approx(before, abs=1e-7)
