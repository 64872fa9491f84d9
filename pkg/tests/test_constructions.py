import numpy as np
import pytest

from models.certificate import ConstructibilityStatus, Verdict
from models.matrices import PmOneMatrix
from services.construction_service import ConstructionService
from services.spectra_service import SpectraService
from utils.errors import CertificationError, OddOrderUnsupported
from utils.exact_linalg import rowsums, trace


@pytest.fixture(scope="module")
def constructions():
    return ConstructionService()


def inertia_of(b):
    i = SpectraService().inertia(b)
    return i.plus, i.zero, i.minus


def test_thkhn_s2(constructions):
    b, recipe = constructions.build_thkhn(2, 4)
    assert b.order == 8
    assert trace(b) == -8
    assert rowsums(b) == [0] * 8
    assert b.diagonal() == [-1] * 8
    assert inertia_of(b) == (1, 4, 3)
    assert (recipe.expected_inertia.plus, recipe.expected_inertia.minus) == (1, 3)


def test_thkhn_s3(constructions):
    b, recipe = constructions.build_thkhn(3, 4)
    assert b.order == 12
    assert trace(b) == -12
    assert inertia_of(b) == (3, 3, 6)
    assert SpectraService().singular_values(b)[:9] == pytest.approx([4.0] * 9, abs=1e-8)


@pytest.mark.parametrize("s", [2, 3, 4])
def test_thkhn_output_certifies(constructions, s):
    b, recipe = constructions.build_thkhn(s)
    certificate = constructions.sk_certify(b, s * s)
    assert certificate.is_member
    assert certificate.inertia == recipe.expected_inertia


def test_thkhn_rejects_small_s(constructions):
    with pytest.raises(ValueError):
        constructions.build_thkhn(1)


def test_thkhn_rejects_undersized_n(constructions):
    with pytest.raises(ValueError):
        constructions.build_thkhn(4, 4)


def test_thj_s2(constructions):
    b, _ = constructions.build_thj(2, 4)
    assert b.order == 8
    assert b.diagonal() == [1] * 8
    assert np.array_equal(b.entries @ np.ones(8, dtype=np.int64), -4 * np.ones(8, dtype=np.int64))
    assert inertia_of(b) == (3, 4, 1)


def test_thj_s4(constructions):
    b, _ = constructions.build_thj(4, 4)
    assert b.order == 16
    assert inertia_of(b) == (10, 0, 6)
    assert constructions.sk_certify(b, 16).is_member


def test_thj_rejects_odd_s(constructions):
    with pytest.raises(OddOrderUnsupported):
        constructions.build_thj(3)


def test_thj1_even_s_uses_diagonal_count(constructions):
    b, recipe = constructions.build_thj1(2, 4)
    assert rowsums(b) == [-4] * 8
    assert trace(b) == -8
    assert inertia_of(b) == (1, 4, 3)
    assert recipe.expected_inertia.plus == 1
    assert any("diagonal cells" in note for note in recipe.notes)


def test_thj1_s3(constructions):
    b, recipe = constructions.build_thj1(3, 4)
    assert b.order == 12
    assert rowsums(b) == [-4] * 12
    assert inertia_of(b) == (5, 3, 4)
    assert constructions.sk_certify(b, 9).is_member


@pytest.mark.parametrize("n", [1, 5])
def test_all_ones_is_in_s1(constructions, n):
    assert constructions.sk_certify(PmOneMatrix.ones(n), 1).is_member


def test_certify_hadamard_matrices(constructions, h2, regular4):
    assert constructions.sk_certify(h2, 2).verdict == Verdict.MEMBER
    certificate = constructions.sk_certify(regular4, 4)
    assert certificate.is_member
    assert certificate.inertia.plus + certificate.inertia.minus == 4


def test_certify_rejects_non_member(constructions):
    b = PmOneMatrix(np.ones((3, 3), dtype=np.int64) - 2 * np.eye(3, dtype=np.int64))
    certificate = constructions.sk_certify(b, 2)
    assert certificate.verdict == Verdict.NON_MEMBER
    assert not certificate.check("minpoly").passed


def test_certify_wrong_k(constructions):
    b, _ = constructions.build_thkhn(2, 4)
    assert constructions.sk_certify(b, 3).verdict == Verdict.NON_MEMBER


def test_certify_k_beyond_order(constructions, h2):
    certificate = constructions.sk_certify(h2, 3)
    assert certificate.verdict == Verdict.NON_MEMBER
    assert not certificate.check("order_bound").passed


def test_float_mode_agrees(constructions, h2):
    certificate = constructions.sk_certify(h2, 2, mode="float")
    assert certificate.mode == "float"
    assert certificate.is_member
    assert constructions.sk_certify(h2, 1, mode="float").verdict == Verdict.NON_MEMBER


def test_certify_rejects_unknown_mode(constructions, h2):
    with pytest.raises(ValueError):
        constructions.sk_certify(h2, 2, mode="symbolic")


def test_sk_kron(constructions, h2, k_matrix):
    j2 = constructions.certified(PmOneMatrix.ones(2), 1)
    h = constructions.certified(h2, 2)
    assert constructions.sk_kron(j2, h).k == 2
    assert constructions.sk_kron(h, h).k == 4

    k_cert = constructions.certified(k_matrix, 1)
    product = constructions.sk_kron(k_cert, h)
    assert product.k == 2
    assert rowsums(product.matrix) == [0, 0, 0, 0]


def test_sk_double_of_j1(constructions):
    doubled = constructions.sk_double(constructions.certified(PmOneMatrix.ones(1), 1))
    assert doubled.matrix.order == 4
    assert doubled.k == 2
    assert rowsums(doubled.matrix) == [0] * 4
    assert inertia_of(doubled.matrix) == (1, 2, 1)
    assert SpectraService().singular_values(doubled.matrix)[:2] == pytest.approx([2 * np.sqrt(2)] * 2)


def test_sk_double_of_h2(constructions, h2):
    doubled = constructions.sk_double(constructions.certified(h2, 2))
    assert doubled.matrix.order == 8 and doubled.k == 4
    assert inertia_of(doubled.matrix) == (2, 4, 2)
    assert rowsums(doubled.matrix) == [0] * 8


def test_certified_raises_for_non_member(constructions, h2):
    with pytest.raises(CertificationError):
        constructions.certified(h2, 1)


def test_negation_swaps_inertia(constructions):
    b, _ = constructions.build_thkhn(2, 4)
    negated = constructions.negation_certificate(constructions.certified(b, 4))
    assert negated.matrix.diagonal() == [1] * 8
    assert (negated.certificate.inertia.plus, negated.certificate.inertia.minus) == (3, 1)


@pytest.mark.parametrize("k, status", [
    (1, ConstructibilityStatus.CONSTRUCTIBLE),
    (2, ConstructibilityStatus.CONSTRUCTIBLE),
    (3, ConstructibilityStatus.OBSTRUCTED),
    (6, ConstructibilityStatus.UNKNOWN),
    (9, ConstructibilityStatus.CONSTRUCTIBLE),
    (12, ConstructibilityStatus.CONSTRUCTIBLE),
    (15, ConstructibilityStatus.OBSTRUCTED),
])
def test_sk_constructible(constructions, k, status):
    assert constructions.sk_constructible(k).status == status


def test_sk_constructible_recipe_for_nine(constructions):
    decision = constructions.sk_constructible(9)
    assert decision.recipe == "thkhn(3)"
    assert decision.order == 12


@pytest.mark.parametrize("k, order", [(1, 1), (2, 2), (4, 4), (8, 8), (12, 12)])
def test_build_sk_member(constructions, k, order):
    member = constructions.build_sk_member(k)
    assert member.k == k
    assert member.matrix.order == order
    assert member.certificate.is_member


def test_build_sk_member_rejects_obstructed(constructions):
    with pytest.raises(ValueError):
        constructions.build_sk_member(3)


def test_rebuild_from_recipe(constructions):
    b, recipe = constructions.build_thj(2)
    assert constructions.rebuild(recipe) == b
