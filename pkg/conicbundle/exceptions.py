"""
Error hierarchy shared by every app.
Each error has a stable ``code`` for JSON reports and the process exit code
the management command returns for it.
"""
from typing import Any, Dict, Optional


class ConicBundleError(Exception):
    code = "internal_error"
    exit_code = 5

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = dict(details or {})

    def as_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message, "details": self.details}


# ---------- input data (exit 3) ----------

class InputDataError(ConicBundleError, ValueError):
    code = "input_error"
    exit_code = 3


class FieldConstructionError(InputDataError):
    code = "field_construction"


class MixedFieldError(InputDataError):
    code = "mixed_field"


class FieldZeroDivisionError(InputDataError, ZeroDivisionError):
    code = "zero_division"


class CharacteristicError(InputDataError):
    code = "wrong_characteristic"


class FormParseError(InputDataError):
    code = "parse_error"

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}",
                         {"position": position, "text": text})
        self.position = position


class HomogeneityError(InputDataError):
    code = "not_homogeneous"


class DimensionMismatchError(InputDataError):
    code = "dimension_mismatch"


class SingularMatrixError(InputDataError):
    code = "singular_matrix"


class NotOnCubicError(InputDataError):
    code = "not_on_cubic"


class InF0Error(InputDataError):
    code = "line_in_F0"


class PointNotOnDiscriminantError(InputDataError):
    code = "point_not_on_discriminant"


class NotEtaleError(InputDataError):
    code = "not_etale"


class WeilViolationError(InputDataError):
    code = "weil_violation"


class NonIntegralError(InputDataError):
    code = "non_integral"


class NonExactDivisionError(InputDataError):
    code = "non_exact_division"


class ChartError(InputDataError):
    code = "chart_invalid"


class OddDimensionError(InputDataError):
    code = "odd_dimension"


class NonSmoothQuadricError(InputDataError):
    code = "quadric_not_smooth"


# ---------- usage (exit 2) ----------

class UsageError(ConicBundleError):
    code = "usage_error"
    exit_code = 2


# ---------- resources (exit 4) ----------

class ResourceBudgetError(ConicBundleError):
    code = "budget_exceeded"
    exit_code = 4


class GroebnerResourceError(ResourceBudgetError):
    code = "groebner_budget_exceeded"


class EnumerationBudgetError(ResourceBudgetError):
    code = "enumeration_budget_exceeded"


# ---------- invariants (exit 5) ----------

class InvariantBreach(ConicBundleError, AssertionError):
    code = "invariant_breach"
    exit_code = 5
