"""Cost-model comparison of classical and quantum SSSP algorithms."""

__version__ = "0.1.0"

from .cost_models import (  # noqa: E402
    CLASSICAL,
    QUANTUM,
    CostModel,
    GraphParams,
    ModelRegistry,
    default_registry,
    eval_dijkstra,
    eval_duan,
    eval_grover,
    eval_wesolowski,
    register_model,
)
from .scenarios import (  # noqa: E402
    NGrid,
    ScalingLaw,
    Scenario,
    SweepResult,
    builtin_scenarios,
    get_scenario,
    run_sweep,
)
from .frontier import (  # noqa: E402
    classify_rows,
    find_crossover,
    grover_barrier_check,
    map_zones,
)

__all__ = [
    "CLASSICAL", "QUANTUM", "CostModel", "GraphParams", "ModelRegistry",
    "default_registry", "eval_dijkstra", "eval_duan", "eval_grover",
    "eval_wesolowski", "register_model", "NGrid", "ScalingLaw", "Scenario",
    "SweepResult", "builtin_scenarios", "get_scenario", "run_sweep",
    "classify_rows", "find_crossover", "grover_barrier_check", "map_zones",
]
