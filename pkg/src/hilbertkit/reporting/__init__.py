from .check import CheckReport, plain_value
from .writer import ReportWriter, build_document, FORMATS
