"""Anomalous diffusion and position-space coherence of 1D discrete-time quantum walks."""

from qwdiffusion.coherence import (
    CoherenceRecord,
    coherence_series,
    gram_matrix,
    l1_coherence_normalized,
    reduced_position_density,
    relative_entropy_coherence,
)
from qwdiffusion.coins import (
    Accelerated,
    CoinSchedule,
    Homogeneous,
    SpatialDisorder,
    TemporalDisorder,
    accelerated_theta,
    coin_at,
    homogeneous_coin,
    sample_disorder_angles,
    su2_coin,
)
from qwdiffusion.ensemble import (
    AveragedSeries,
    EnsembleConfig,
    derive_trial_seed,
    run_ensemble,
)
from qwdiffusion.errors import (
    CapacityError,
    ConsistencyError,
    DivergenceError,
    ValidationError,
    WalkError,
)
from qwdiffusion.evolution import Trajectory, evolve, measured_walk_distribution, step
from qwdiffusion.observables import (
    AlphaEstimate,
    MsdSeries,
    PositionDistribution,
    fit_alpha,
    localization_length,
    moment,
    msd,
    probability_distribution,
)
from qwdiffusion.state import WalkerState, new_localized_state, norm_squared

__version__ = "0.1.0"
