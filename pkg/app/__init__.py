"""
nsTrust: nonsmooth bundle trust-region optimization with a parametric-robustness
toolkit and a Monte-Carlo global-optimization certifier.
"""

from app.application import Application
from app.factory import ApplicationFactory

__all__ = ['Application', 'ApplicationFactory']

__version__ = "1.0.0"
