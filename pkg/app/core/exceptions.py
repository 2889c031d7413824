"""
Core exception classes for the application.
"""


class CoreException(Exception):
    """Base exception for all nsTrust errors."""
    pass


class ConfigurationError(CoreException):
    """Exception raised for errors in the configuration."""
    pass


class ComponentRegistryError(CoreException):
    """Exception raised for errors in the component registry."""
    pass


class DimensionMismatchError(CoreException):
    """Exception raised when vectors or matrices have incompatible shapes."""
    pass


class BundleError(CoreException):
    """Exception raised for invalid bundle operations (empty bundle, wrong anchor)."""
    pass


class OracleError(CoreException):
    """Exception raised when an objective oracle cannot be evaluated."""
    pass


class TangentProgramError(CoreException):
    """Exception raised when the tangent program LP is infeasible or fails."""
    pass


class IllPosedLFTError(CoreException):
    """Exception raised when I - D_qp*Delta is singular to working precision."""
    pass


class UnstableSystemError(CoreException):
    """Exception raised when a system that must be Hurwitz is not."""
    pass


class EigenDecompositionError(CoreException):
    """Exception raised when a dense eigendecomposition fails."""
    pass


class CertificationError(CoreException):
    """Exception raised for invalid certification requests."""
    pass


class PlantFormatError(CoreException):
    """Exception raised for malformed plant or problem files."""
    pass


class DegenerateStepError(CoreException):
    """Exception raised when the predicted decrease is below double-precision resolution."""
    pass
