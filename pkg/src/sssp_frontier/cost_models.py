"""Closed-form cost models for SSSP algorithms.

Every model maps a ``GraphParams`` triple (n, m, l) to a unitless cost with
all hidden constant factors set to 1. Logarithms are base 2 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .errors import DuplicateModel, InvalidParams, MissingPathLength, UnknownModel

CLASSICAL = "classical"
QUANTUM = "quantum"


@dataclass(frozen=True)
class GraphParams:
    """Vertex count ``n``, edge count ``m`` and path length ``l``.

    ``n`` is normally an integer but real values are accepted so crossover
    searches can work on the continuous relaxation.
    """

    n: float
    m: float
    l: Optional[float] = None

    def __post_init__(self):
        for name in ("n", "m"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParams(f"{name} must be a finite number, got {value!r}")
        if self.n < 2:
            raise InvalidParams(f"n must be >= 2, got {self.n}")
        if self.m <= 0:
            raise InvalidParams(f"m must be > 0, got {self.m}")
        if self.l is not None:
            if not isinstance(self.l, (int, float)) or not math.isfinite(self.l):
                raise InvalidParams(f"l must be a finite number, got {self.l!r}")
            if self.l < 0:
                raise InvalidParams(f"l must be >= 0, got {self.l}")


def eval_dijkstra(p: GraphParams) -> float:
    """Fibonacci-heap Dijkstra: m + n log n."""
    return p.m + p.n * math.log2(p.n)


def eval_duan(p: GraphParams) -> float:
    return p.m * math.log2(p.n) ** (2.0 / 3.0)


def eval_grover(p: GraphParams) -> float:
    return math.sqrt(p.n) * p.m


def eval_wesolowski(p: GraphParams) -> float:
    """Quantum-walk SSSP: l * sqrt(m), polylog factors dropped."""
    if p.l is None:
        raise MissingPathLength("the wesolowski model needs a path length l")
    return p.l * math.sqrt(p.m)


@dataclass(frozen=True)
class CostModel:
    id: str
    kind: str
    evaluate: Callable[[GraphParams], float]
    requires_path_length: bool = False

    def __post_init__(self):
        if self.kind not in (CLASSICAL, QUANTUM):
            raise ValueError(f"kind must be {CLASSICAL!r} or {QUANTUM!r}, got {self.kind!r}")
        if not self.id:
            raise ValueError("model id must be non-empty")

    def __call__(self, p: GraphParams) -> float:
        if self.requires_path_length and p.l is None:
            raise MissingPathLength(f"model {self.id!r} needs a path length l")
        return self.evaluate(p)


BUILTIN_MODELS = (
    CostModel("dijkstra", CLASSICAL, eval_dijkstra),
    CostModel("duan", CLASSICAL, eval_duan),
    CostModel("grover", QUANTUM, eval_grover),
    CostModel("wesolowski", QUANTUM, eval_wesolowski, requires_path_length=True),
)


class ModelRegistry:
    """Ordered collection of cost models; iteration follows registration order."""

    def __init__(self, models=BUILTIN_MODELS):
        self._models: dict[str, CostModel] = {}
        for model in models:
            self.register(model)

    def register(self, model: CostModel) -> CostModel:
        if model.id in self._models:
            raise DuplicateModel(f"model {model.id!r} is already registered")
        self._models[model.id] = model
        return model

    def get(self, model_id: str) -> CostModel:
        try:
            return self._models[model_id]
        except KeyError:
            raise UnknownModel(f"no model registered as {model_id!r}") from None

    def ids(self) -> list[str]:
        return list(self._models)

    def evaluate_all(self, p: GraphParams) -> dict[str, float]:
        return {mid: model(p) for mid, model in self._models.items()}

    def __contains__(self, model_id: object) -> bool:
        return model_id in self._models

    def __iter__(self) -> Iterator[CostModel]:
        return iter(self._models.values())

    def __len__(self) -> int:
        return len(self._models)

    def __repr__(self) -> str:
        return f"ModelRegistry({self.ids()})"


def default_registry() -> ModelRegistry:
    """A fresh registry holding the four built-in models."""
    return ModelRegistry()


def register_model(model: CostModel, registry: ModelRegistry) -> ModelRegistry:
    registry.register(model)
    return registry
