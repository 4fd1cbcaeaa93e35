from .exponents import ConjugateExponents, conjugate
from .rational import ExactRational, to_rational, format_rational
from .functions import log_gamma, log_gamma_ratio, log_beta, beta, log_binomial, best_constant
