from .sequence import (
    SequenceSpec,
    power_sums,
    seq_a,
    seq_a_exact,
    verify_increasing,
    verify_power_sum_ratio,
    verify_power_sum_ratio_range,
    second_difference,
    verify_second_difference,
    verify_second_difference_range,
    verify_partial_sum_form,
)
from .lemma import ratio_lemma_check, power_sum_sequences
from .auxiliary import f_aux, f_aux_derivative, g_aux, verify_f_aux_monotone, hermite_hadamard_check
