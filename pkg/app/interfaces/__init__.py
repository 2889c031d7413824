"""
Interfaces package.

Abstract base classes for components, objective oracles and first-order models.
"""

from app.interfaces.component import Component
from app.interfaces.model import FirstOrderModel
from app.interfaces.oracle import Oracle

__all__ = ['Component', 'FirstOrderModel', 'Oracle']
