from utils.matrix_io import MatrixFileCodec
from utils.report_render import ReportRenderer

__all__ = ['MatrixFileCodec', 'ReportRenderer']
