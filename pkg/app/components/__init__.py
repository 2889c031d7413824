"""
Components package for the application.

Components are the registry-instantiated building blocks: first-order models
(``components.models``) and built-in problem builders (``components.problems``).
"""

from app.components.base_component import BaseComponent

__all__ = ['BaseComponent']
