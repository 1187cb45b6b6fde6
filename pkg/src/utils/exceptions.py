"""Exception hierarchy shared by the numerical modules and the command line."""

from typing import Any, Dict, Iterable, Optional, Sequence, Tuple


class QPMError(Exception):
    """Base class for every error raised by the toolkit.

    Attributes:
        kind (str): Machine-readable error identifier used on the CLI error line
        exit_code (int): Process exit code when the error reaches ``main``
    """

    kind = "error"
    exit_code = 1


class WavelengthRangeError(QPMError, ValueError):
    """A wavelength lies outside the dispersion model's validity window."""

    kind = "wavelength_out_of_window"

    def __init__(self, wavelength_nm: float, window_nm: Tuple[float, float], model: str):
        self.wavelength_nm = wavelength_nm
        self.window_nm = window_nm
        super().__init__(
            f"wavelength {wavelength_nm:.4f} nm outside the validity window "
            f"[{window_nm[0]:g}, {window_nm[1]:g}] nm of model '{model}'"
        )


class InvalidPeriodError(QPMError, ValueError):
    kind = "invalid_period"


class NoRootError(QPMError, ValueError):
    kind = "no_root"


class PhaseMatchingError(QPMError, ValueError):
    kind = "phase_matching_impossible"


class AmplitudeRangeError(QPMError, ValueError):
    """A position outside ``[0, L]`` was requested from an amplitude target."""

    kind = "position_out_of_range"


class ExcludedPointError(QPMError, ValueError):
    kind = "excluded_point"


class CoverageError(QPMError, ValueError):
    """The PMF samples do not cover the wavevector range a grid requires."""

    kind = "pmf_coverage"


class GridRangeError(QPMError, ValueError):
    kind = "grid_range"


class ParameterError(QPMError, ValueError):
    kind = "invalid_parameter"


class ConvergenceError(QPMError, RuntimeError):
    """Quadrature did not converge within the allowed number of refinements.

    Attributes:
        diagnostics (Dict[str, Any]): Estimates and grid sizes of every refinement
    """

    kind = "not_converged"

    def __init__(self, message: str, diagnostics: Optional[Dict[str, Any]] = None):
        self.diagnostics = diagnostics or {}
        super().__init__(message)


class HeatmapError(QPMError, ValueError):
    """Matrix handed to the heatmap writer holds non-finite values."""

    kind = "non_finite_matrix"

    def __init__(self, indices: Iterable[Sequence[int]]):
        self.indices = [tuple(int(i) for i in index) for index in indices]
        shown = ", ".join(str(index) for index in self.indices[:10])
        more = "" if len(self.indices) <= 10 else f" (+{len(self.indices) - 10} more)"
        super().__init__(f"non-finite values at indices {shown}{more}")


class ConfigError(QPMError, ValueError):
    """Run configuration is malformed or violates a field constraint.

    Attributes:
        field (str): Dotted path of the offending field, if known
    """

    kind = "config"
    exit_code = 2

    def __init__(self, message: str, field: Optional[str] = None):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ArtifactNotFoundError(QPMError, FileNotFoundError):
    kind = "not_found"
    exit_code = 2


class SequenceNotFoundError(ArtifactNotFoundError):
    kind = "sequence_not_found"

    def __init__(self, path: str):
        super().__init__(f"sequence file not found: {path}")


class OutputLockedError(QPMError, RuntimeError):
    kind = "output_locked"
    exit_code = 2
