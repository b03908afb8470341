"""
Analytic Model Registry
Named closed-form squeezing models and the exact-simulator column each
one is compared against
"""
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Any, Callable, Dict, List, Optional

import numpy as np
from aws_lambda_powertools import Logger

from src.analytic import holstein_primakoff as hp
from src.analytic import small_alpha
from src.hilbert.field_states import FieldKind
from src.utils.exceptions import ConfigurationError, UnknownModelError

logger = Logger()

Evaluator = Callable[[int, float, np.ndarray], np.ndarray]


class ModelKind(Enum):
    """Which squeezing the model describes"""
    SPIN = "spin"
    FIELD = "field"


@dataclass
class AnalyticModel:
    """A closed-form squeezing curve xi(gt) for given N and field parameter"""
    name: str
    kind: ModelKind
    description: str
    column: str
    evaluator: Evaluator
    field_kind: FieldKind = FieldKind.COHERENT
    n_atoms: Optional[int] = None
    square_exact: bool = False
    metadata: Dict[str, Any] = field(default_factory=dict)

    def check_applicable(self, n_atoms: int, field_kind: FieldKind):
        if field_kind is not self.field_kind:
            raise ConfigurationError(
                f"model '{self.name}' needs a {self.field_kind.value} field, got {field_kind.value}"
            )
        if self.n_atoms is not None and n_atoms != self.n_atoms:
            raise ConfigurationError(f"model '{self.name}' is only defined for N={self.n_atoms}")

    def exact_values(self, values: np.ndarray) -> np.ndarray:
        """Exact column as this model sees it"""
        return values ** 2 if self.square_exact else values


class ModelRegistry:
    """Lookup of analytic models by id"""

    def __init__(self):
        self.models: Dict[str, AnalyticModel] = {}
        self._register_builtin_models()

    def _register_builtin_models(self):
        self.register_model(AnalyticModel(
            name="squeez",
            kind=ModelKind.SPIN,
            description="N=2 weak coherent field, xi_x to order alpha^2",
            column="xi_x",
            evaluator=lambda n, a, t: small_alpha.xi_n2_small_alpha(a, t)[0],
            n_atoms=2,
        ))
        self.register_model(AnalyticModel(
            name="squeez_yprime",
            kind=ModelKind.SPIN,
            description="N=2 weak coherent field, xi_y' to order alpha^2",
            column="xi_yprime",
            evaluator=lambda n, a, t: small_alpha.xi_n2_small_alpha(a, t)[1],
            n_atoms=2,
        ))
        self.register_model(AnalyticModel(
            name="fs_q",
            kind=ModelKind.FIELD,
            description="N=2 weak coherent field, quadrature xi_Q",
            column="xi_q",
            evaluator=lambda n, a, t: small_alpha.field_xi_n2_small_alpha(a, t)[0],
            n_atoms=2,
        ))
        self.register_model(AnalyticModel(
            name="fs_p",
            kind=ModelKind.FIELD,
            description="N=2 weak coherent field, quadrature xi_P",
            column="xi_p",
            evaluator=lambda n, a, t: small_alpha.field_xi_n2_small_alpha(a, t)[1],
            n_atoms=2,
        ))
        self.register_model(AnalyticModel(
            name="sqv",
            kind=ModelKind.SPIN,
            description="N=2 weak squeezed vacuum, xi_y to first order in r (compared with xi^2)",
            column="xi_yprime",
            evaluator=lambda n, r, t: small_alpha.xi_n2_squeezed_vacuum_small_r(r, t)[1],
            field_kind=FieldKind.SQUEEZED_VACUUM,
            n_atoms=2,
            square_exact=True,
        ))
        self.register_model(AnalyticModel(
            name="sxln1",
            kind=ModelKind.SPIN,
            description="N atoms, weak coherent field, xi_x to order alpha^2",
            column="xi_x",
            evaluator=small_alpha.xi_n_small_alpha,
        ))
        self.register_model(AnalyticModel(
            name="sxln2",
            kind=ModelKind.SPIN,
            description="Large-N limit of sxln1",
            column="xi_x",
            evaluator=small_alpha.xi_n_large_limit,
        ))
        self.register_model(AnalyticModel(
            name="spqzn_q",
            kind=ModelKind.FIELD,
            description="N atoms, weak coherent field, quadrature xi_Q",
            column="xi_q",
            evaluator=lambda n, a, t: small_alpha.field_xi_n_small_alpha(n, a, t)[0],
        ))
        self.register_model(AnalyticModel(
            name="spqzn_p",
            kind=ModelKind.FIELD,
            description="N atoms, weak coherent field, quadrature xi_P",
            column="xi_p",
            evaluator=lambda n, a, t: small_alpha.field_xi_n_small_alpha(n, a, t)[1],
        ))
        self.register_model(AnalyticModel(
            name="sxr",
            kind=ModelKind.SPIN,
            description="Bosonized large-N solution, xi_x for any alpha with alpha^2 << N",
            column="xi_x",
            evaluator=lambda n, a, t: hp.xi_hp(n, a, t).xi,
        ))
        self.register_model(AnalyticModel(
            name="sxr_large_alpha",
            kind=ModelKind.SPIN,
            description="alpha >> 1 reduction of sxr, valid for z <= sqrt(alpha)",
            column="xi_x",
            evaluator=hp.xi_hp_large_alpha,
        ))

    def register_model(self, model: AnalyticModel):
        self.models[model.name] = model
        logger.debug(f"Registered analytic model: {model.name}")

    def get_model(self, name: str) -> AnalyticModel:
        if name not in self.models:
            raise UnknownModelError(
                f"unknown analytic model '{name}'; known: {', '.join(sorted(self.models))}"
            )
        return self.models[name]

    def list_models(self) -> List[str]:
        return sorted(self.models)

    def evaluate(self, name: str, n_atoms: int, parameter: float, gts) -> np.ndarray:
        model = self.get_model(name)
        return np.asarray(model.evaluator(n_atoms, parameter, np.asarray(gts, dtype=float)), dtype=float)


@lru_cache(maxsize=1)
def get_registry() -> ModelRegistry:
    return ModelRegistry()
