from models.matrices import (
    IntSymMatrix,
    PmOneMatrix,
    Graph,
    HadamardMatrix
)
from models.spectrum import (
    Inertia,
    SpectrumPoint,
    PointSpectrum,
    Spectrum,
    SpectrumReport
)
from models.latin import LatinSquare, LatinReport
from models.hadamard import OrthFamily
from models.certificate import (
    Verdict,
    CheckResult,
    SkCertificate,
    CertifiedMatrix,
    ConstructionRecipe,
    ConstructibilityStatus,
    RecipeFactor,
    ConstructibilityDecision
)
from models.graph_build import ZeroDiag, BlowupSpec, GraphCertificate, BuiltGraph
from models.srg import SrgParams, BoundSide, BoundReport, TaylorSummary
from models.search import SearchStatus, Feasibility, SearchConfig, PruningRule, SearchResult
from models.lab import UniverseKind, Universe, Violation, PropertyRun
from models.manifest import RunManifest

__all__ = [
    'IntSymMatrix',
    'PmOneMatrix',
    'Graph',
    'HadamardMatrix',
    'Inertia',
    'SpectrumPoint',
    'PointSpectrum',
    'Spectrum',
    'SpectrumReport',
    'LatinSquare',
    'LatinReport',
    'OrthFamily',
    'Verdict',
    'CheckResult',
    'SkCertificate',
    'CertifiedMatrix',
    'ConstructionRecipe',
    'ConstructibilityStatus',
    'RecipeFactor',
    'ConstructibilityDecision',
    'ZeroDiag',
    'BlowupSpec',
    'GraphCertificate',
    'BuiltGraph',
    'SrgParams',
    'BoundSide',
    'BoundReport',
    'TaylorSummary',
    'SearchStatus',
    'Feasibility',
    'SearchConfig',
    'PruningRule',
    'SearchResult',
    'UniverseKind',
    'Universe',
    'Violation',
    'PropertyRun',
    'RunManifest'
]
