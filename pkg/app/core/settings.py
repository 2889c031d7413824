"""
Solver configuration.

Defaults follow the usual parameter set of the trust-region bundle method
(gamma=1e-4, gamma_tilde=2e-4, Gamma=0.1, tol1=tol2=1e-5, tol3=1e-6, k_max=50, nu_max=5).
"""

from typing import Any, Dict, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class SolverConfig(BaseModel):
    """Parameters of the outer/inner trust-region loop and its stopping tests."""

    model_config = ConfigDict(frozen=True, extra="forbid", populate_by_name=True)

    gamma: float = 1e-4
    gamma_tilde: float = 2e-4
    Gamma: float = 0.1
    theta: float = 0.1
    M: float = 2.0
    norm: Literal["inf", "l1", "l2_single_plane"] = "inf"
    mode: Literal["bundle", "classical"] = "bundle"
    R_init: float = Field(1.0, alias="R0")
    tol1: float = 1e-5
    tol2: float = 1e-5
    tol3: float = 1e-6
    k_max: int = 50
    nu_max: int = 5
    max_serious: int = 500
    max_bundle: int = 50
    trial_mode: Literal["deterministic", "randomized"] = "deterministic"
    seed: int = 0
    recycle: bool = False

    @model_validator(mode="after")
    def _check_invariants(self) -> "SolverConfig":
        if not 0.0 < self.gamma < self.gamma_tilde < 1.0:
            raise ValueError("need 0 < gamma < gamma_tilde < 1")
        if not 0.0 < self.gamma < self.Gamma <= 1.0:
            raise ValueError("need 0 < gamma < Gamma <= 1")
        if not 0.0 < self.theta < 1.0:
            raise ValueError("need 0 < theta < 1")
        if self.M < 1.0:
            raise ValueError("need M >= 1")
        if min(self.tol1, self.tol2, self.tol3) <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.R_init <= 0.0:
            raise ValueError("R_init must be positive")
        if self.k_max < 1 or self.nu_max < 1 or self.max_serious < 1:
            raise ValueError("iteration budgets must be positive")
        if self.max_bundle < 2:
            raise ValueError("max_bundle must keep the exactness plane and the newest cut")
        return self

    def merged(self, overrides: Optional[Dict[str, Any]] = None) -> "SolverConfig":
        """
        Return a validated copy with ``overrides`` applied (None values ignored).

        Args:
            overrides: Field values by name or alias

        Returns:
            SolverConfig: New configuration
        """
        data = self.model_dump()
        for key, value in (overrides or {}).items():
            if value is None:
                continue
            data["R_init" if key == "R0" else key] = value
        return SolverConfig.model_validate(data)
