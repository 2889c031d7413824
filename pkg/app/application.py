"""
Main application class for nsTrust.
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from app.components.problems.problem_file import ProblemSpec, load_problem_spec
from app.core.component_registry import ComponentRegistry
from app.core.config_loader import ConfigLoader
from app.core.exceptions import ComponentRegistryError, ConfigurationError
from app.core.problem import ProblemInstance
from app.core.settings import SolverConfig
from app.interfaces.model import FirstOrderModel
from app.solver.trust_region import SolveResult, outer_solve
from app.utils.logging_setup import CROSS_ICON, TICK_ICON, setup_logging_from_config

logger = logging.getLogger("app.application")

PROBLEM_FILE_SUFFIXES = (".json", ".yaml", ".yml")

CERTIFY_DEFAULTS = {
    "samples_per_dim": 2000,
    "var_tol": 1e-7,
    "gamma_conf": 0.05,
    "threads": 1,
    "seed": 0,
    "grid_step": 0.01,
}


class Application:
    """
    Main application class.

    This class is responsible for:
    1. Loading ``main.yaml`` and configuring logging
    2. Building the component registry (models and built-in problems)
    3. Resolving solver/certifier settings with their precedence rules
    4. Building problems and models and running the solver
    """

    def __init__(self, config_dir: Optional[str] = None, init_options: Optional[Dict[str, Any]] = None):
        """
        Initialize the application.

        Args:
            config_dir: Directory containing ``main.yaml`` and ``components/``
            init_options: Options controlling initialization (``configure_logging``,
                ``verify_components``); override the ``init_options`` config section
        """
        self.initialized = False
        self.config_dir = config_dir or os.environ.get("CONFIG_DIR", "config")
        self.init_options = init_options or {}

        self._load_config()
        self._initialize_registry()
        if self._get_init_option("verify_components", True):
            self._verify_components()

        self.initialized = True
        logger.info(f"{TICK_ICON} Application initialization complete")

    def _get_init_option(self, option_name: str, default_value: Any) -> Any:
        if option_name in self.init_options:
            return self.init_options[option_name]
        return self.config_loader.get_value(f"init_options.{option_name}", default_value)

    def _load_config(self) -> None:
        """
        Load the main configuration and set up logging from its ``logging`` section.

        Raises:
            ConfigurationError: If the configuration cannot be loaded
        """
        self.config_loader = ConfigLoader(self.config_dir)
        if self._get_init_option("configure_logging", True):
            setup_logging_from_config(self.config_loader.get_section("logging"))
        logger.debug(f"{TICK_ICON} Configuration loaded from {self.config_dir}")

    def _initialize_registry(self) -> None:
        self.component_registry = ComponentRegistry(self.config_dir)

    def _verify_components(self) -> None:
        """
        Check that every registered class path imports.

        Raises:
            ComponentRegistryError: If a class path is broken
        """
        for component_type in self.component_registry.list_component_types():
            for component_id in self.component_registry.list_components(component_type):
                try:
                    self.component_registry.resolve_class(component_type, component_id)
                except ComponentRegistryError:
                    logger.error(f"{CROSS_ICON} Component {component_type}/{component_id} cannot be imported")
                    raise
        logger.debug(f"{TICK_ICON} All registered components import")

    def solver_config(self, file_overrides: Optional[Dict[str, Any]] = None,
                      cli_overrides: Optional[Dict[str, Any]] = None) -> SolverConfig:
        """
        Solver configuration with precedence CLI flag > problem file > main.yaml > defaults.

        Args:
            file_overrides: ``solver`` section of a problem file
            cli_overrides: Values given on the command line (None entries ignored)

        Returns:
            SolverConfig: Validated configuration

        Raises:
            pydantic.ValidationError: If the merged values violate the parameter invariants
        """
        return (SolverConfig()
                .merged(self.config_loader.get_section("solver"))
                .merged(file_overrides)
                .merged(cli_overrides))

    def certify_options(self, cli_overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        options = dict(CERTIFY_DEFAULTS)
        options.update(self.config_loader.get_section("certify"))
        options.update({k: v for k, v in (cli_overrides or {}).items() if v is not None})
        return options

    def load_problem(self, problem: str, context: Optional[Dict[str, Any]] = None) -> Tuple[ProblemInstance, ProblemSpec]:
        """
        Build a problem from a built-in name or a problem file.

        Args:
            problem: Registered problem id or path to a JSON/YAML problem file
            context: Extra context handed to the problem component (task, c, ...);
                problem-file fields take precedence over it only when it holds None

        Returns:
            Tuple[ProblemInstance, ProblemSpec]: The problem and its parsed specification

        Raises:
            ConfigurationError: If the name is unknown or the file is malformed
        """
        path = Path(problem)
        if path.suffix.lower() in PROBLEM_FILE_SUFFIXES or path.exists():
            spec = load_problem_spec(problem)
        elif problem in self.component_registry.list_components("problems"):
            spec = ProblemSpec(builtin=problem)
        else:
            raise ConfigurationError(
                f"unknown problem '{problem}': not a file and not one of "
                f"{self.component_registry.list_components('problems')}")

        params = dict(spec.params)
        params.update({k: v for k, v in (context or {}).items() if v is not None})
        try:
            builder = self.component_registry.create_component("problems", spec.builtin)
        except ComponentRegistryError as e:
            raise ConfigurationError(f"{spec.source}: {str(e)}") from e
        instance = builder.execute(params)
        logger.info(f"{TICK_ICON} Problem {instance.name} ready (n={instance.n}, C={instance.feasible.kind})")
        return instance, spec

    def build_model(self, problem: ProblemInstance, model_id: Optional[str] = None,
                    config_overrides: Optional[Dict[str, Any]] = None) -> FirstOrderModel:
        """
        Instantiate a first-order model of the problem's objective.

        Args:
            problem: Problem instance
            model_id: Registered model id; defaults to the problem's default model
            config_overrides: Values layered over the model's default_config

        Returns:
            FirstOrderModel: New model instance

        Raises:
            ConfigurationError: If the model does not apply to the problem
        """
        kind = model_id or problem.default_model
        return self.component_registry.create_component("models", kind, config_overrides,
                                                        **problem.model_kwargs(kind))

    def solve(self, problem: ProblemInstance, model: Optional[FirstOrderModel] = None,
              cfg: Optional[SolverConfig] = None) -> SolveResult:
        """Run the trust-region bundle solver on a problem."""
        model = model or self.build_model(problem)
        cfg = cfg or self.solver_config()
        return outer_solve(problem, model, cfg)
