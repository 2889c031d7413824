"""
Dense linear-algebra kernels used by the control module.
"""

from app.linalg.dense import EigenTriple, eig_dense, sigma_max, solve_complex, top_singular_triple

__all__ = ['EigenTriple', 'eig_dense', 'sigma_max', 'solve_complex', 'top_singular_triple']
