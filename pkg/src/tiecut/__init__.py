"""tiecut: what survives when valued network ties are cut down to binary.

Generate valued graphs, sweep threshold ladders, compare binary images
to their valued parents through geodesic and Ohmic geometry and lagged
linear models, and search for better binary representations directly.
"""

from .errors import (
    CollinearDesignError,
    ConfigError,
    DegenerateSplitError,
    EmptyGraphError,
    LoadError,
    MissingCellError,
    NoGiantComponentError,
    TiecutError,
    UndefinedDiameterError,
    UnrealizableCorrelationError,
)
from .netgen import (
    FAMILIES,
    GEOMETRIES,
    GenConfig,
    NodeLatents,
    ValuedGraph,
    mean_parameter,
    positive_transform,
    sample_graph,
    sample_latents,
)
from .dichotomizer import (
    BinaryGraph,
    ThresholdLadder,
    UnitConversion,
    conversion_factor,
    dichotomize,
    giant_component_threshold,
    ladder_for_densities,
    threshold_for_density,
    to_valued_units,
)
from .graphmetrics import (
    CentralityVector,
    DiameterReport,
    DistanceMatrix,
    FlowSolution,
    Ranking,
    diameters,
    effective_conductance,
    fixed_power_betweenness,
    flow_solution,
    geodesic_distances,
    harmonic_closeness,
    ohmic_closeness,
    ohmic_distances,
    rank,
    rank_discrepancy,
)
from .sweep import (
    STATISTICS,
    SweepConfig,
    SweepResult,
    export_layers,
    optimal_threshold,
    run_sweep,
)
from .lagmodel import (
    BATCH_COLUMNS,
    CRITERIA,
    EfficiencyReport,
    FitResult,
    LagConfig,
    PanelData,
    batch_study,
    fit_ols,
    simulate_outcomes,
    summarize_tstats,
    t_central_region,
    threshold_efficiency,
)
from .annealer import AnnealConfig, EnergyFunction, anneal_binary
from .datio import (
    load_correlation_matrix,
    load_edgelist,
    load_rank_matrix,
    mutual_min,
    read_graph,
    write_graph,
)
from .seeds import child_seed, derive_rng

__version__ = "0.1.0"
