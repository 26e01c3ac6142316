"""
Exception hierarchy for the clique incidence toolkit.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple


class CliqueIncidenceError(Exception):
    """Base class for every error raised by this package."""


class GraphError(CliqueIncidenceError, ValueError):
    """Invalid graph parameters or graph operation."""


class GraphParseError(GraphError):
    """Malformed graph text, with the offending line or byte position."""

    def __init__(self, message: str, line: Optional[int] = None, position: Optional[int] = None):
        self.line = line
        self.position = position
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif position is not None:
            where = f" (byte {position})"
        super().__init__(f"{message}{where}")


class SizeGuardError(CliqueIncidenceError, ValueError):
    """An exact search was asked to run above its size guard."""

    def __init__(self, operation: str, value: int, limit: int):
        self.operation = operation
        self.value = value
        self.limit = limit
        super().__init__(f"{operation}: size {value} exceeds guard {limit}")


@dataclass(frozen=True)
class CoverViolation:
    """One reason a list of vertex subsets is not a valid cover."""

    kind: str
    clique_index: Optional[int] = None
    edge: Optional[Tuple[int, int]] = None
    detail: str = ""

    def __str__(self) -> str:
        parts = [self.kind]
        if self.clique_index is not None:
            parts.append(f"clique {self.clique_index}")
        if self.edge is not None:
            parts.append(f"edge {self.edge}")
        if self.detail:
            parts.append(self.detail)
        return ": ".join(parts)


class CoverError(CliqueIncidenceError, ValueError):
    """A clique cover or partition failed validation."""

    def __init__(self, message: str, violations: Sequence[CoverViolation] = ()):
        self.violations: List[CoverViolation] = list(violations)
        if self.violations:
            listed = "; ".join(str(v) for v in self.violations[:5])
            more = "" if len(self.violations) <= 5 else f" (+{len(self.violations) - 5} more)"
            message = f"{message}: {listed}{more}"
        super().__init__(message)


class LinearAlgebraError(CliqueIncidenceError, ArithmeticError):
    """Base class for numeric kernel failures."""


class NotSymmetricError(LinearAlgebraError):
    pass


class ConvergenceError(LinearAlgebraError):
    pass


class RankDeficientError(LinearAlgebraError):
    pass


class IndefiniteMatrixError(LinearAlgebraError):
    """A matrix expected to be positive semidefinite has a negative eigenvalue."""

    def __init__(self, most_negative: float):
        self.most_negative = most_negative
        super().__init__(f"matrix is indefinite, most negative eigenvalue {most_negative:.6g}")


class InconsistencyError(CliqueIncidenceError, ArithmeticError):
    """Two computations of the same quantity disagree beyond tolerance."""


class SspError(CliqueIncidenceError, ValueError):
    """Preconditions of an SSP transfer do not hold."""


class CertificateError(CliqueIncidenceError, ValueError):
    """A construction or completion could not produce a certificate."""

    def __init__(self, message: str, best_residual: Optional[float] = None):
        self.best_residual = best_residual
        if best_residual is not None:
            message = f"{message} (best residual {best_residual:.3g})"
        super().__init__(message)


class SearchFailedError(CertificateError):
    """Alternating projections did not reach a verified realization."""

    def __init__(self, message: str, trace: Sequence[float], iterations: int):
        self.trace: List[float] = list(trace)
        self.iterations = iterations
        best = min(self.trace) if self.trace else None
        super().__init__(f"{message} after {iterations} iterations", best_residual=best)


class UsageError(CliqueIncidenceError):
    """Command line usage problem."""
