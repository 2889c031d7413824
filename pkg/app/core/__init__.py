"""
Core framework module for the application.

This module provides configuration loading, the component registry, the exception
hierarchy and the domain types shared by every other module:
- Feasible sets and vectors
- Cutting planes and bundles
- Solver configuration and traces
- Problem instances
"""

from app.core.bundle import (Bundle, CuttingPlane, add_plane, new_bundle, plane_eval,
                             prune_planes, recycle_planes, working_model_eval)
from app.core.component_registry import ComponentRegistry
from app.core.config_loader import ConfigLoader
from app.core.exceptions import (
    CoreException,
    ConfigurationError,
    ComponentRegistryError,
    DimensionMismatchError,
)
from app.core.feasible import FeasibleSet, as_vector
from app.core.problem import ProblemInstance
from app.core.settings import SolverConfig
from app.core.trace import SolverTrace, TraceRecord

__all__ = [
    'Bundle',
    'ComponentRegistry',
    'ConfigLoader',
    'ConfigurationError',
    'ComponentRegistryError',
    'CoreException',
    'CuttingPlane',
    'DimensionMismatchError',
    'FeasibleSet',
    'ProblemInstance',
    'SolverConfig',
    'SolverTrace',
    'TraceRecord',
    'add_plane',
    'as_vector',
    'new_bundle',
    'plane_eval',
    'prune_planes',
    'recycle_planes',
    'working_model_eval',
]
