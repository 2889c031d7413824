import json
import os
import sys
from pathlib import Path

import numpy as np
import pytest

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from app.control.plant import LftPlant, dump_plant
from app.core.settings import SolverConfig
from app.factory import ApplicationFactory

CONFIG_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "config")


@pytest.fixture(scope="session")
def config_dir():
    """Repository configuration directory"""
    return CONFIG_DIR


@pytest.fixture(scope="session")
def app(config_dir):
    """Application built from the repository configuration, logging left alone"""
    return ApplicationFactory.create_app(config_dir, configure_logging=False)


@pytest.fixture
def default_cfg():
    """Solver configuration with the standard parameter set"""
    return SolverConfig()


@pytest.fixture
def scalar_plant():
    """A(delta) = -1 + delta: stable for delta < 1, distance to instability 1"""
    return LftPlant.build(A=[[-1.0]], Bp=[[1.0]], Cq=[[1.0]], structure=[1])


@pytest.fixture
def scalar_plant_file(tmp_path, scalar_plant):
    path = tmp_path / "scalar_plant.json"
    dump_plant(scalar_plant, str(path))
    return path


@pytest.fixture
def write_json(tmp_path):
    """Write a JSON document under tmp_path and return its path"""
    def _write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return path
    return _write


@pytest.fixture
def resonance_ss():
    """Second-order system w_n^2 / (s^2 + 2 zeta w_n s + w_n^2) with zeta = 0.1, w_n = 1"""
    zeta = 0.1
    A = np.array([[0.0, 1.0], [-1.0, -2.0 * zeta]])
    B = np.array([[0.0], [1.0]])
    C = np.array([[1.0, 0.0]])
    D = np.zeros((1, 1))
    return zeta, (A, B, C, D)
