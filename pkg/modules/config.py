"""
Runtime settings
Defaults can be overridden through NERON_<NAME> environment variables
"""

import os
from typing import Dict, Optional

from pydantic import BaseModel, Field

ENV_PREFIX = "NERON_"


class Settings(BaseModel):
    """Tunable limits shared by the computation modules and the CLI"""

    terms: int = Field(60, ge=1, description="Series coefficients to print and verify")
    dmax: int = Field(24, ge=1, description="Largest base change degree swept by verify")
    psi_terms: int = Field(20, ge=1, description="Coefficients printed by the psi command")
    working_precision: int = Field(64, ge=1, description="Initial t-adic working precision")
    max_precision: int = Field(1024, ge=1, description="Precision ceiling for retries")
    semistable_search_bound: int = Field(12, ge=1, description="Largest tame degree tried for e")
    max_field_size: int = Field(2 ** 20, ge=2, description="Largest finite field searched exhaustively")
    max_extension_degree: int = Field(6, ge=1, description="Largest residue extension degree")
    workers: int = Field(1, ge=1, description="Threads used by the verify sweep")
    log_level: str = Field("WARNING", description="Root logging level")

    @classmethod
    def from_env(cls, environ: Optional[Dict[str, str]] = None) -> "Settings":
        """
        Build settings from the environment

        Args:
            environ: Mapping to read instead of os.environ

        Returns:
            Settings with every NERON_<NAME> variable applied
        """
        environ = os.environ if environ is None else environ
        overrides = {}
        for name in cls.model_fields:
            value = environ.get(f"{ENV_PREFIX}{name.upper()}")
            if value is not None:
                overrides[name] = value
        return cls(**overrides)


DEFAULT_SETTINGS = Settings()
