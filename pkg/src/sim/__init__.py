# Subsampling study and analytic simulation
from src.sim.subsample import (
    Aggregate,
    SubsampleRow,
    SubsampleReport,
    aggregate,
    draw_subsample,
    subsample_study,
)
from src.sim.grid import (
    EXPERIMENTAL_SIGMA,
    DEFAULT_K_VALUES,
    DEFAULT_SIGMA_VALUES,
    GridCell,
    SimulationGrid,
    PlanResult,
    simulate_grid,
    plan_sample_size,
)
