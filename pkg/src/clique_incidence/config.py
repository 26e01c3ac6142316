"""
Numeric tolerances and run defaults shared by every module.
"""

import dataclasses
from dataclasses import dataclass
from typing import Any, Dict, Mapping

from .errors import UsageError

DEFAULT_SEED = 20240607


@dataclass(frozen=True)
class Tolerances:
    """
    Every threshold used by the numeric kernel and the verifiers.

    Relative tolerances are scaled by ``1 + norm`` of the matrix in question
    at the point of use.
    """

    symmetry: float = 1e-12
    jacobi_offdiag: float = 1e-14
    jacobi_max_sweeps: int = 100
    cluster: float = 1e-7
    inertia_zero: float = 1e-8
    rank: float = 0.0
    pattern_zero: float = 1e-6
    inequality_slack: float = 1e-9
    equality: float = 1e-7
    tau_tie: float = 1e-9
    energy_agreement: float = 1e-8
    gram: float = 1e-8
    orthonormality: float = 1e-10
    psd: float = 1e-10
    ssp_rank: float = 1e-9
    ssp_residual: float = 1e-7
    search_residual: float = 1e-10
    search_max_iterations: int = 5000
    search_entry_floor: float = 1e-4
    search_start_perturbation: float = 1e-2
    rotation_attempts: int = 1000

    def with_overrides(self, overrides: Mapping[str, Any]) -> "Tolerances":
        """
        Return a copy with named fields replaced.

        Args:
            overrides: Field name to value; strings are converted to the
                field's type.

        Returns:
            New Tolerances instance
        """
        fields = {f.name: f for f in dataclasses.fields(self)}
        changes: Dict[str, Any] = {}
        for name, value in overrides.items():
            if name not in fields:
                raise UsageError(f"Unknown tolerance '{name}'; known: {', '.join(sorted(fields))}")
            current = getattr(self, name)
            try:
                changes[name] = type(current)(value) if isinstance(value, str) else value
            except ValueError as e:
                raise UsageError(f"Bad value for tolerance '{name}': {value!r}") from e
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)


DEFAULT_TOLERANCES = Tolerances()


def parse_tolerance_overrides(pairs) -> Dict[str, str]:
    """Turn ``name=value`` strings into a dict."""
    overrides: Dict[str, str] = {}
    for pair in pairs or []:
        if "=" not in pair:
            raise UsageError(f"Tolerance override must look like name=value, got {pair!r}")
        name, value = pair.split("=", 1)
        overrides[name.strip()] = value.strip()
    return overrides


def get_default_run_settings() -> Dict[str, Any]:
    """Get default run settings."""
    return {
        "format": "graph6",
        "partition": "exact",
        "seed": DEFAULT_SEED,
        "emit": "json",
        "workers": 1,
        "log_level": "WARNING",
    }
