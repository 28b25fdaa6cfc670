from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from archmetrics.graph.validation import ValidationReport


class ArchMetricsError(Exception):
    """Base class for every failure the command line reports to the user."""

    exit_code = 1


class ConfigurationError(ArchMetricsError):
    exit_code = 2


class GraphParseError(ArchMetricsError):
    """The JSON document does not describe a graph we understand."""

    exit_code = 3

    def __init__(
        self, message: str, node_id: Optional[str] = None, field: Optional[str] = None
    ) -> None:  # noqa: D107
        super().__init__(message)
        self.node_id = node_id
        self.field = field


class GraphValidationError(ArchMetricsError):
    """Raised when an operation needs an admissible graph but got violations."""

    exit_code = 3

    def __init__(self, report: "ValidationReport") -> None:  # noqa: D107
        super().__init__(
            "; ".join(f"{v.code}: {v.message}" for v in report.violations)
            or "graph is not admissible"
        )
        self.report = report


class ShapeInferenceError(ArchMetricsError):
    exit_code = 3

    def __init__(
        self, message: str, node_id: Optional[str] = None
    ) -> None:  # noqa: D107
        super().__init__(message)
        self.node_id = node_id


class UnknownModelError(ArchMetricsError):
    exit_code = 3


class ZooError(ArchMetricsError):
    exit_code = 3


class ManifestError(ArchMetricsError):
    exit_code = 1


class EstimatorError(ArchMetricsError):
    exit_code = 4


class DegenerateSampleError(EstimatorError):
    pass


class FitError(ArchMetricsError):
    exit_code = 4


class PowerUnderflowError(ArchMetricsError):
    """Cumulative power got too small to represent as a positive float."""

    exit_code = 4

    def __init__(self, message: str, node_id: str) -> None:  # noqa: D107
        super().__init__(message)
        self.node_id = node_id
