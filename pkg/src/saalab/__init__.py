"""Bit-exact laboratory for gate-level static approximate adders."""

__version__ = "0.1.0"

from .adders import (  # noqa: E402
    ALL_KINDS,
    APPROXIMATE_KINDS,
    AdderConfig,
    AdderKind,
    ConfigError,
    ImpreciseResult,
    Word,
    accurate_sum,
    approx_sum,
    imprecise_eval,
    signed_error,
    validate_config,
)
