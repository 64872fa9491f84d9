from services.spectra_service import SpectraService
from services.latin_service import LatinService
from services.hadamard_service import HadamardService
from services.construction_service import ConstructionService
from services.graph_factory_service import GraphFactoryService
from services.srg_bounds_service import SrgBoundsService
from services.search_service import SearchService
from services.property_lab_service import PropertyLabService

__all__ = [
    'SpectraService',
    'LatinService',
    'HadamardService',
    'ConstructionService',
    'GraphFactoryService',
    'SrgBoundsService',
    'SearchService',
    'PropertyLabService'
]
