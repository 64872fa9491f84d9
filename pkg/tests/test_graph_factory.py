import math

import numpy as np
import pytest

from models.graph_build import BlowupSpec, ZeroDiag
from models.matrices import Graph, PmOneMatrix
from services.construction_service import ConstructionService
from services.graph_factory_service import GraphFactoryService
from services.spectra_service import SpectraService


@pytest.fixture(scope="module")
def factory():
    return GraphFactoryService()


@pytest.fixture(scope="module")
def spectra():
    return SpectraService()


def test_half_shift_auto_needs_minus_one_diagonal(factory, h2):
    with pytest.raises(ValueError):
        factory.half_shift(h2, 1, 1, ZeroDiag.AUTO)


def test_half_shift_force_zeroes_diagonal(factory, h2):
    g = factory.half_shift(h2, 2, 1, ZeroDiag.FORCE)
    assert g.order == 4
    assert g.diagonal() == [0, 0, 0, 0]


def test_half_shift_of_regular_hadamard(factory, regular4):
    assert factory.half_shift(regular4, 1, 1) == Graph.complete(4)
    assert factory.half_shift(regular4, 1, -1, ZeroDiag.FORCE) == Graph.empty(4)


def test_half_shift_rejects_bad_sign(factory, h2):
    with pytest.raises(ValueError):
        factory.half_shift(h2, 1, 2, ZeroDiag.FORCE)


def test_doubling_has_zero_rowsums(h2):
    doubled = GraphFactoryService.doubling(h2)
    assert doubled.order == 4
    assert np.all(doubled.entries.sum(axis=1) == 0)


@pytest.mark.parametrize("closed", [False, True])
@pytest.mark.parametrize("t", [1, 2, 3])
def test_blowup_spectrum_matches_direct_computation(spectra, closed, t):
    g = Graph.cycle(5)
    spec = BlowupSpec(t=t, closed=closed)
    blown = GraphFactoryService.blowup(g, spec)
    assert blown.order == 5 * t
    predicted = GraphFactoryService.blowup_spectrum(spectra.eigen_sym(g), spec)
    assert spectra.eigen_sym(blown).values == pytest.approx(predicted, abs=1e-8)


def test_complement(factory):
    assert factory.complement(Graph.empty(3)) == Graph.complete(3)
    c5 = Graph.cycle(5)
    total = factory.complement(c5).entries + c5.entries
    assert np.array_equal(total, Graph.complete(5).entries)


def test_thp(factory, spectra):
    built = factory.build_thp(2, 1, 4)
    assert built.graph.order == 8
    assert built.certificate.passed
    assert built.certificate.claim("lambda_star_5").passed
    assert spectra.eigen_sym(built.graph).values == pytest.approx([4, 2, 0, 0, 0, -2, -2, -2], abs=1e-8)


def test_thp_with_blocks(factory):
    built = factory.build_thp(2, 2)
    assert built.graph.order == 16
    assert built.certificate.passed


def test_thck(factory, spectra):
    built = factory.build_thck(2, 1, 4)
    assert built.graph.order == 8
    assert built.certificate.passed
    assert built.certificate.claim("converse_in_S_k").passed
    values = spectra.eigen_sym(built.graph).values
    assert values == pytest.approx([6, 0, 0, 0, 0, -2, -2, -2], abs=1e-8)
    assert spectra.ky_fan(built.graph, 4) == pytest.approx(12, abs=1e-8)


def test_thck1_on_regular_member(factory):
    constructions = ConstructionService()
    b, _ = constructions.build_thj1(3, 4)
    built = factory.build_thck1(constructions.certified(b, 9), 1)
    assert built.graph.order == 12
    assert built.certificate.passed


def test_thck1_flips_positive_rowsums(factory, regular4):
    member = ConstructionService().certified(regular4, 4)
    built = factory.build_thck1(member, 1)
    assert built.graph == Graph.complete(4)
    assert built.certificate.passed


def test_thck1_rejects_irregular(factory, h2):
    member = ConstructionService().certified(h2, 2)
    with pytest.raises(ValueError):
        factory.build_thck1(member, 1)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kyfan_hadamard(factory, spectra, regular4, n):
    built = factory.build_kyfan_hadamard(regular4, n)
    assert built.graph.order == 4 * n
    assert built.certificate.passed
    assert spectra.ky_fan(built.graph, 4) == pytest.approx(6 * n, abs=1e-8)


def test_kyfan_hadamard_rejects_non_regular(factory):
    h4 = PmOneMatrix(np.kron([[1, 1], [1, -1]], [[1, 1], [1, -1]]))
    with pytest.raises(ValueError):
        factory.build_kyfan_hadamard(h4, 1)


def test_thmx_from_j1(factory):
    member = ConstructionService().certified(PmOneMatrix.ones(1), 1)
    built = factory.build_thmx(member, 1)
    assert built.graph == Graph.empty(2)
    assert built.certificate.passed


def test_thmx_from_h2(factory, spectra, h2):
    member = ConstructionService().certified(h2, 2)
    built = factory.build_thmx(member, 2)
    assert built.graph.order == 8
    assert built.certificate.passed
    singular = spectra.singular_values(built.graph)
    assert singular[2] >= 2 * 2 / math.sqrt(2) - 1 - 1e-8


@pytest.mark.parametrize("k, t", [(1, 1), (1, 3), (2, 1)])
def test_thng_pair(factory, k, t):
    g, gc = factory.build_thng_pair(k, t)
    assert g.graph.order == gc.graph.order
    assert factory.complement(g.graph) == gc.graph
    assert g.certificate.passed and gc.certificate.passed
    assert g.certificate.family == "thng"
    assert gc.certificate.family == "thng-complement"


def test_thng_pair_k1_sums(factory, spectra):
    g, gc = factory.build_thng_pair(1, 1)
    a, b = spectra.eigen_sym(g.graph), spectra.eigen_sym(gc.graph)
    assert a.lambda_k(2) + b.lambda_k(2) >= 2 * math.sqrt(2) - 2 - 1e-8
    assert abs(a.lambda_from_bottom(1)) + abs(b.lambda_from_bottom(1)) >= 2 * math.sqrt(2) - 1e-8
