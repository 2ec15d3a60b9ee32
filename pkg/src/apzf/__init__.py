"""GDoF closed forms and achievability simulation for the 2-user MISO
broadcast channel with distributed CSIT."""

from .channel import ChannelRealization, CsitEstimate, sample_channel, sample_csit
from .gdof import (
    GdofValue,
    SchemeLayout,
    centralized_gdof,
    distributed_gdof,
    genie_outer_bound,
    scheme_layout,
)
from .harness import (
    ConfigError,
    InsufficientPoints,
    SweepConfig,
    SweepCurve,
    closed_forms,
    estimate_slope,
    fit_exponent,
    load_config,
    simulate_point,
    sweep,
    write_csv,
    write_summary,
)
from .precoders import PrecodingVector, apzf, centralized_zf, matched, multicast, naive_zf
from .scheme import (
    PlanLayer,
    PowerInfeasible,
    RateBreakdown,
    SchemeKind,
    TransmitPlan,
    achievable_rates,
    build_plan,
    interference_power,
    per_tx_power,
    plan_layout,
)
from .topology import (
    AlphaOutOfRange,
    CanonicalForm,
    CsitQuality,
    EffectiveExponents,
    GammaOutOfRange,
    NoDominantTransmitter,
    Topology,
    ValidationError,
    ValidationReport,
    canonicalize,
    effective_alphas,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRange",
    "CanonicalForm",
    "ChannelRealization",
    "ConfigError",
    "CsitEstimate",
    "CsitQuality",
    "EffectiveExponents",
    "GammaOutOfRange",
    "GdofValue",
    "InsufficientPoints",
    "NoDominantTransmitter",
    "PlanLayer",
    "PowerInfeasible",
    "PrecodingVector",
    "RateBreakdown",
    "SchemeKind",
    "SchemeLayout",
    "SweepConfig",
    "SweepCurve",
    "Topology",
    "TransmitPlan",
    "ValidationError",
    "ValidationReport",
    "achievable_rates",
    "apzf",
    "build_plan",
    "canonicalize",
    "centralized_gdof",
    "centralized_zf",
    "closed_forms",
    "distributed_gdof",
    "effective_alphas",
    "estimate_slope",
    "fit_exponent",
    "genie_outer_bound",
    "interference_power",
    "load_config",
    "matched",
    "multicast",
    "naive_zf",
    "per_tx_power",
    "plan_layout",
    "sample_channel",
    "sample_csit",
    "scheme_layout",
    "simulate_point",
    "sweep",
    "validate",
    "write_csv",
    "write_summary",
]
