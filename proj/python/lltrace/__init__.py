"""Semiclassical trace formula for the Lieb-Liniger ring."""

from ._core import (
    ContractViolation,
    Error,
    InvalidQuantumNumbers,
    ModelParams,
    NonConvergence,
    NonPositiveEnergy,
    OutOfRange,
    PartitionShape,
    WrongParticleNumber,
    amplitude,
    binomial_identity_check,
    compare_with_bethe,
    enumerate_partitions,
    enumerate_spectrum,
    relative_secular_root,
    resurgence_profile,
    rho_osc_total,
    rho_total,
    semiclassical_count,
    solve_state,
    staircase,
    total_phase,
    two_body_levels,
    weyl_count,
    weyl_density_total,
    __version__,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
