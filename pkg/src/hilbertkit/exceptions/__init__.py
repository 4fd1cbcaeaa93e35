class DomainError(Exception):
    pass

class DivergenceError(DomainError):
    pass

class CertificationError(Exception):
    pass

class QuadratureError(Exception):
    pass

class InvalidConfigError(Exception):
    pass

class ReportWriteError(Exception):
    pass
