"""
Utilities: logging setup, report/CSV serialization and finite-difference checks.
"""

from app.utils.fd_check import check_gradient, check_partial
from app.utils.logging_setup import CROSS_ICON, TICK_ICON, get_logger

__all__ = ['CROSS_ICON', 'TICK_ICON', 'check_gradient', 'check_partial', 'get_logger']
