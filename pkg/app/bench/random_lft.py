"""
Seeded random LFT plants for oracle-versus-solver runs.
"""

import logging

import numpy as np

from app.control.plant import LftPlant
from app.control.spectral import spectral_abscissa
from app.core.exceptions import ConfigurationError
from app.linalg.dense import sigma_max

logger = logging.getLogger("bench.random_lft")

NOMINAL_ABSCISSA = -0.5
# ||Dqp|| after scaling, so I - Dqp Delta stays invertible on the unit box
DQP_NORM = 0.5
MAX_PARAMETERS = 4
MAX_STATES = 20


def random_lft_instance(m: int, n: int, seed: int, affine: bool = True) -> LftPlant:
    """
    Random plant with m scalar parameters (structure all ones) and n states.

    A is shifted so that alpha(A(0)) = -0.5.

    Args:
        m: Number of uncertain parameters
        n: Number of states
        seed: Generator seed; equal seeds give identical plants
        affine: Force Dqp = 0 so A(delta) is affine in delta

    Returns:
        LftPlant: Nominally stable plant

    Raises:
        ConfigurationError: If m or n is outside the supported range
    """
    if not 1 <= m <= MAX_PARAMETERS or not 1 <= n <= MAX_STATES:
        raise ConfigurationError(f"need 1 <= m <= {MAX_PARAMETERS} and 1 <= n <= {MAX_STATES}, got m={m}, n={n}")
    rng = np.random.Generator(np.random.Philox(seed))
    scale = 1.0 / np.sqrt(n)

    A = rng.standard_normal((n, n)) * scale
    A = A - (spectral_abscissa(A)[0] - NOMINAL_ABSCISSA) * np.eye(n)
    Bp = rng.standard_normal((n, m)) * scale
    Cq = rng.standard_normal((m, n)) * scale
    Bw = rng.standard_normal((n, 1)) * scale
    Cz = rng.standard_normal((1, n)) * scale
    Dqw = 0.1 * rng.standard_normal((m, 1))
    Dzp = 0.1 * rng.standard_normal((1, m))
    if affine:
        Dqp = np.zeros((m, m))
    else:
        Dqp = rng.standard_normal((m, m))
        Dqp *= DQP_NORM / max(sigma_max(Dqp), 1e-12)

    plant = LftPlant(A=A, Bp=Bp, Bw=Bw, Cq=Cq, Dqp=Dqp, Dqw=Dqw, Cz=Cz, Dzp=Dzp, Dzw=np.zeros((1, 1)),
                     structure=(1,) * m)
    logger.debug(f"random plant m={m} n={n} seed={seed} affine={affine}")
    return plant
