"""
LFT plant with real parametric uncertainty.

    x' = A x + Bp p + Bw w
    q  = Cq x + Dqp p + Dqw w
    z  = Cz x + Dzp p + Dzw w
    p  = Delta q,  Delta = diag(delta_1 I_r1, ..., delta_m I_rm)
"""

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, Tuple

import numpy as np

from app.core.exceptions import DimensionMismatchError, PlantFormatError
from app.linalg.dense import solve_complex

logger = logging.getLogger("control.plant")

MATRIX_KEYS = ("A", "Bp", "Bw", "Cq", "Dqp", "Dqw", "Cz", "Dzp", "Dzw")


def _matrix(value, name: str) -> np.ndarray:
    M = np.array(value, dtype=float)
    if M.ndim == 1 and M.size == 0:
        M = M.reshape(0, 0)
    if M.ndim != 2:
        raise PlantFormatError(f"field '{name}' must be an array of rows, got {M.ndim} dimension(s)")
    if not np.all(np.isfinite(M)):
        raise PlantFormatError(f"field '{name}' has non-finite entries")
    M.setflags(write=False)
    return M


@dataclass(frozen=True)
class LftPlant:
    """State-space data of the plant and the repetition structure of Delta."""

    A: np.ndarray
    Bp: np.ndarray
    Bw: np.ndarray
    Cq: np.ndarray
    Dqp: np.ndarray
    Dqw: np.ndarray
    Cz: np.ndarray
    Dzp: np.ndarray
    Dzw: np.ndarray
    structure: Tuple[int, ...]

    def __post_init__(self):
        for key in MATRIX_KEYS:
            object.__setattr__(self, key, _matrix(getattr(self, key), key))
        structure = tuple(int(r) for r in self.structure)
        if not structure or any(r < 1 for r in structure):
            raise PlantFormatError(f"structure must be a nonempty list of positive ints, got {list(structure)}")
        object.__setattr__(self, "structure", structure)

        n, q = self.A.shape[0], sum(structure)
        nw, nz = self.Bw.shape[1], self.Cz.shape[0]
        expected = {
            "A": (n, n), "Bp": (n, q), "Bw": (n, nw), "Cq": (q, n), "Dqp": (q, q),
            "Dqw": (q, nw), "Cz": (nz, n), "Dzp": (nz, q), "Dzw": (nz, nw),
        }
        for key, shape in expected.items():
            if getattr(self, key).shape != shape:
                raise PlantFormatError(
                    f"field '{key}' has shape {getattr(self, key).shape}, expected {shape} "
                    f"(n={n}, q=p={q}, m1={nw}, p1={nz})")

    @classmethod
    def build(cls, A, Bp, Cq, structure: Sequence[int], Dqp=None, Bw=None, Dqw=None,
              Cz=None, Dzp=None, Dzw=None) -> "LftPlant":
        """
        Build a plant, zero-filling missing blocks with one-dimensional w and z channels.
        """
        A = np.atleast_2d(np.array(A, dtype=float))
        Bp = np.atleast_2d(np.array(Bp, dtype=float))
        Cq = np.atleast_2d(np.array(Cq, dtype=float))
        n, q = A.shape[0], Bp.shape[1]
        Bw = np.zeros((n, 1)) if Bw is None else Bw
        Cz = np.zeros((1, n)) if Cz is None else Cz
        nw = np.atleast_2d(np.array(Bw, dtype=float)).shape[1]
        nz = np.atleast_2d(np.array(Cz, dtype=float)).shape[0]
        return cls(A=A, Bp=Bp, Bw=np.atleast_2d(Bw), Cq=Cq,
                   Dqp=np.zeros((q, q)) if Dqp is None else np.atleast_2d(Dqp),
                   Dqw=np.zeros((q, nw)) if Dqw is None else np.atleast_2d(Dqw),
                   Cz=np.atleast_2d(Cz),
                   Dzp=np.zeros((nz, q)) if Dzp is None else np.atleast_2d(Dzp),
                   Dzw=np.zeros((nz, nw)) if Dzw is None else np.atleast_2d(Dzw),
                   structure=tuple(structure))

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        """Number of uncertain parameters."""
        return len(self.structure)

    @property
    def q(self) -> int:
        return self.Dqp.shape[0]

    @property
    def affine(self) -> bool:
        return not np.any(self.Dqp)

    def to_dict(self) -> dict:
        data = {key: getattr(self, key).tolist() for key in MATRIX_KEYS}
        data["structure"] = list(self.structure)
        return data


def load_plant(path: str) -> LftPlant:
    """
    Load a plant JSON file with keys A, Bp, Bw, Cq, Dqp, Dqw, Cz, Dzp, Dzw and structure.

    Raises:
        PlantFormatError: If the file is missing, malformed or dimensionally inconsistent
    """
    try:
        with open(path, "r") as handle:
            data = json.load(handle)
    except OSError as e:
        raise PlantFormatError(f"cannot read plant file {path}: {str(e)}") from e
    except json.JSONDecodeError as e:
        raise PlantFormatError(f"{path}: line {e.lineno}, column {e.colno}: {e.msg}") from e
    return plant_from_dict(data, source=str(path))


def plant_from_dict(data: dict, source: str = "<plant>") -> LftPlant:
    if not isinstance(data, dict):
        raise PlantFormatError(f"{source}: plant must be a JSON object")
    missing = [key for key in MATRIX_KEYS + ("structure",) if key not in data]
    if missing:
        raise PlantFormatError(f"{source}: missing field(s) {missing}")
    try:
        return LftPlant(structure=tuple(data["structure"]), **{key: data[key] for key in MATRIX_KEYS})
    except (TypeError, ValueError) as e:
        raise PlantFormatError(f"{source}: {str(e)}") from e


def dump_plant(plant: LftPlant, path: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as handle:
        json.dump(plant.to_dict(), handle, indent=2)


def build_delta_matrix(delta: Sequence[float], r: Sequence[int]) -> np.ndarray:
    """diag(delta_1 I_r1, ..., delta_m I_rm)."""
    delta = np.asarray(delta, dtype=float).reshape(-1)
    if delta.shape[0] != len(r):
        raise DimensionMismatchError(f"delta has {delta.shape[0]} entries, structure has {len(r)} blocks")
    return np.diag(np.repeat(delta, list(r)))


def _block_indicator(plant: LftPlant, i: int) -> np.ndarray:
    e = np.zeros(plant.m)
    e[i] = 1.0
    return build_delta_matrix(e, plant.structure)


def _loop_gain(plant: LftPlant, delta: Sequence[float]) -> np.ndarray:
    """K = Delta (I - Dqp Delta)^-1."""
    D = build_delta_matrix(delta, plant.structure)
    if plant.affine:
        return D
    # Delta (I - Dqp Delta)^-1 = ((I - Dqp Delta)^-T Delta^T)^T
    return solve_complex((np.eye(plant.q) - plant.Dqp @ D).T, D.T).T


def closed_loop_A(plant: LftPlant, delta: Sequence[float]) -> np.ndarray:
    """
    A(delta) = A + Bp Delta (I - Dqp Delta)^-1 Cq.

    Raises:
        IllPosedLFTError: If I - Dqp Delta is singular
    """
    return plant.A + plant.Bp @ _loop_gain(plant, delta) @ plant.Cq


def dA_ddelta(plant: LftPlant, delta: Sequence[float], i: int) -> np.ndarray:
    """
    Partial derivative of A(delta) in delta_i:
    Bp (I - Delta Dqp)^-1 E_i (I - Dqp Delta)^-1 Cq.
    """
    D = build_delta_matrix(delta, plant.structure)
    I = np.eye(plant.q)
    left = solve_complex((I - D @ plant.Dqp).T, plant.Bp.T).T
    right = solve_complex(I - plant.Dqp @ D, plant.Cq)
    return left @ _block_indicator(plant, i) @ right


def closed_loop_ss(plant: LftPlant, delta: Sequence[float]):
    """
    State-space data (A, B, C, D) of the closed-loop channel w -> z at delta.

    Returns:
        tuple: (A(delta), B(delta), C(delta), D(delta))
    """
    K = _loop_gain(plant, delta)
    return (plant.A + plant.Bp @ K @ plant.Cq,
            plant.Bw + plant.Bp @ K @ plant.Dqw,
            plant.Cz + plant.Dzp @ K @ plant.Cq,
            plant.Dzw + plant.Dzp @ K @ plant.Dqw)


def plant_blocks(plant: LftPlant, omega: float):
    """Frequency responses P11, P12, P21, P22 at s = j omega (the feedthrough blocks at omega = inf)."""
    if not np.isfinite(omega):
        return tuple(M.astype(complex) for M in (plant.Dqp, plant.Dqw, plant.Dzp, plant.Dzw))
    resolvent_Bp = solve_complex(1j * omega * np.eye(plant.n) - plant.A,
                                 np.hstack([plant.Bp, plant.Bw]).astype(complex))
    Rp, Rw = resolvent_Bp[:, :plant.q], resolvent_Bp[:, plant.q:]
    return (plant.Cq @ Rp + plant.Dqp, plant.Cq @ Rw + plant.Dqw,
            plant.Cz @ Rp + plant.Dzp, plant.Cz @ Rw + plant.Dzw)


def transfer_eval(plant: LftPlant, delta: Sequence[float], omega: float) -> np.ndarray:
    """
    T_wz(delta, j omega) = P22 + P21 Delta (I - P11 Delta)^-1 P12.

    Raises:
        IllPosedLFTError: If I - P11 Delta is singular at this frequency
    """
    P11, P12, P21, P22 = plant_blocks(plant, omega)
    D = build_delta_matrix(delta, plant.structure)
    return P22 + P21 @ D @ solve_complex(np.eye(plant.q) - P11 @ D, P12)


def transfer_derivative(plant: LftPlant, delta: Sequence[float], omega: float, i: int) -> np.ndarray:
    """dT/d delta_i = P21 (I - Delta P11)^-1 E_i (I - P11 Delta)^-1 P12."""
    P11, P12, P21, _ = plant_blocks(plant, omega)
    D = build_delta_matrix(delta, plant.structure)
    I = np.eye(plant.q)
    left = solve_complex((I - D @ P11).T, P21.T).T
    right = solve_complex(I - P11 @ D, P12)
    return left @ _block_indicator(plant, i) @ right


