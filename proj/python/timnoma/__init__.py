"""Hybrid TIM-NOMA downlink simulator."""

from fractions import Fraction

from . import _timnoma
from ._timnoma import (
    Coherence,
    ConfigParseError,
    ConfigValidationError,
    Experiment,
    ExperimentResult,
    GroupAssignment,
    IoError,
    OrderMode,
    PrecodingBasis,
    ResultRow,
    SimConfig,
    Topology,
    ValidationError,
    allocate_power,
    assemble_transmit,
    assign_groups,
    hybrid_rates,
    load_config,
    make_basis,
    parse_config,
    parse_snr_grid,
    qpsk_demodulate,
    qpsk_modulate,
    rate_ratio,
    run_experiment,
    single_user_rates,
    tdma_sum_rate,
    validate,
)


def dof_total(users: int, groups: int) -> Fraction:
    """Total degrees of freedom K/T as an exact fraction."""
    return Fraction(*_timnoma.dof_total(users, groups))


__all__ = [name for name in dir() if not name.startswith("_") and name != "Fraction"]
