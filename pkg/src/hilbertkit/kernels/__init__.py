from .matrices import (
    KernelParams,
    HomogeneousKernel,
    h_entry,
    m_entry,
    log_h_entry,
    log_m_entry,
    bennett_bound,
    compare_entrywise,
)
