"""Unemployment equilibria on labor flow networks.

A library and CLI for computing, simulating, and calibrating unemployment on
networks of firms connected by worker flows: closed-form steady states with an
exact Markov-chain oracle, exogenous- and endogenous-wage equilibrium hiring
policies, agent-level Monte Carlo validation, and counterfactual aggregation
experiments.
"""
__version__ = "0.1.0"

from .calibration import (
    CalibrationResult,
    FirmPanel,
    counterfactual_regular,
    estimate_lambda,
    fit_v,
    run_calibration,
    to_daily_rate,
)
from .equilibrium import (
    EquilibriumSolution,
    best_response_sweep,
    optimal_hiring_exogenous,
    profit_at_optimum,
    profit_direct,
    regular_closed_form,
    solve_equilibrium,
    solve_exogenous,
    supply_wage,
)
from .errors import (
    CornerSolution,
    DegenerateHiring,
    DegeneratePanel,
    DegreeTooLarge,
    Disconnected,
    GenerationFailed,
    InfeasibleDegree,
    InvalidDegree,
    IsolatedNode,
    LaborFlowError,
    NoConvergence,
    OutOfRange,
    OutOfRangeId,
    ParseError,
    SelfLoop,
    SingularSystem,
    TargetOutOfBracket,
)
from .experiments import (
    TOPOLOGIES,
    DominanceResult,
    SweepPoint,
    beveridge_sweep,
    dominance_compare,
    generate_topology,
    panel_statistics,
)
from .graph import (
    DegreeDistribution,
    LaborFlowNetwork,
    build_from_edge_list,
    degree_distribution,
    generate_binomial,
    generate_pareto,
    generate_regular,
    read_edge_list,
    write_edge_list,
)
from .micro_sim import (
    SimResult,
    available_backends,
    initial_allocation,
    simulate,
    synth_panel,
)
from .params import EconomyParams, load_params, save_params
from .steady_state import (
    HiringVector,
    SteadyStateSolution,
    aggregate_unemployment,
    compute_varphi,
    exact_chain_oracle,
    firm_unemployment_rate,
    neighbor_means,
    steady_state,
)

__all__ = [
    "__version__",
    "CalibrationResult", "FirmPanel", "counterfactual_regular",
    "estimate_lambda", "fit_v", "run_calibration", "to_daily_rate",
    "EquilibriumSolution", "best_response_sweep", "optimal_hiring_exogenous",
    "profit_at_optimum", "profit_direct", "regular_closed_form",
    "solve_equilibrium", "solve_exogenous", "supply_wage",
    "CornerSolution", "DegenerateHiring", "DegeneratePanel", "DegreeTooLarge",
    "Disconnected", "GenerationFailed", "InfeasibleDegree", "InvalidDegree",
    "IsolatedNode", "LaborFlowError", "NoConvergence", "OutOfRange",
    "OutOfRangeId", "ParseError", "SelfLoop", "SingularSystem",
    "TargetOutOfBracket",
    "TOPOLOGIES", "DominanceResult", "SweepPoint", "beveridge_sweep",
    "dominance_compare", "generate_topology", "panel_statistics",
    "DegreeDistribution", "LaborFlowNetwork", "build_from_edge_list",
    "degree_distribution", "generate_binomial", "generate_pareto",
    "generate_regular", "read_edge_list", "write_edge_list",
    "SimResult", "available_backends", "initial_allocation", "simulate",
    "synth_panel",
    "EconomyParams", "load_params", "save_params",
    "HiringVector", "SteadyStateSolution", "aggregate_unemployment",
    "compute_varphi", "exact_chain_oracle", "firm_unemployment_rate",
    "neighbor_means", "steady_state",
]
