from .estimators import TruncatedMatrix, NormEstimate, power_iteration_lower_bound, test_vector_lower_bound
from .schur import SchurReport, schur_column_check, schur_row_check, schur_certify
