"""
First-order models and the objective oracles they are built on.
"""

from app.components.models.convex_model import ConvexSelfModel
from app.components.models.natural_model import NaturalModel
from app.components.models.oracles import (CompositeOracle, MaxAffineOracle, SmoothMap,
                                           SmoothOracle, SumOracle)
from app.components.models.penalty_model import PenaltyMaxModel, PenaltyOracle, penalty_eval
from app.components.models.splitting_model import SplittingModel
from app.components.models.standard_model import StandardModel

__all__ = [
    "CompositeOracle",
    "ConvexSelfModel",
    "MaxAffineOracle",
    "NaturalModel",
    "PenaltyMaxModel",
    "PenaltyOracle",
    "SmoothMap",
    "SmoothOracle",
    "SplittingModel",
    "StandardModel",
    "SumOracle",
    "penalty_eval",
]
