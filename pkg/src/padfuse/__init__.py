"""Performance simulator for fingerprint verification with an embedded
presentation-attack detector, combined as an AND-gated cascade.

The library predicts the cascade's operating characteristics directly from
the two subsystems' individual characteristics, validates the prediction
against replayed joint score data, and locates the attack-probability
regimes where embedding the detector improves the system.
"""

from .dataset import LIVE_CLASSES, SampleClass, ScoreDataset, ScoreRecord
from .errors import (
    ConfigError,
    DomainError,
    EmptyClassError,
    EmptyCurveError,
    EmptyInputError,
    GridMismatchError,
    PadfuseError,
    ParseError,
    ReportIOError,
    UnknownClassError,
    UnknownPresetError,
    VersionMismatchError,
)
from .fusion import (
    FusedRates,
    GrocCurve,
    GrocPoint,
    acceptance_rate,
    compose_sequential,
    gfmr,
    groc_curve,
    individual_groc_curve,
)
from .geer import (
    CrossingKind,
    EmbedDecision,
    GeerResult,
    GeerSweep,
    SweepKind,
    WStarResult,
    embed_decision,
    find_w_star,
    geer,
    geer_sweep,
    individual_eer_sweep,
)
from .roc import (
    MatcherCharacteristic,
    MatcherRates,
    OperationalPointSpec,
    PadCharacteristic,
    PadRates,
    PointMode,
    ResolvedOperatingPoint,
    average_pad_characteristics,
    build_matcher_characteristic,
    build_pad_characteristic,
    rates_at,
    resolve_operating_point,
)
from .synth import (
    ClassDistribution,
    SynthConfig,
    passthrough_demo,
    preset,
    preset_dataset,
    synthesize,
    wstar_demo,
)
from .validation import (
    CorrelationEntry,
    CorrelationReport,
    ErrorStats,
    ModelError,
    ValidationResult,
    ValidationRow,
    empirical_fused_rates,
    error_statistics,
    independence_diagnostic,
    model_error,
    validate_model,
)

__version__ = "0.1.0"
