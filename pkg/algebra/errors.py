"""
Exception hierarchy for the Weil character engine
"""


class WeilError(ValueError):
    """Base class for every error raised by the engine"""

    error_type = "weil_error"


class RejectedInputError(WeilError):
    error_type = "rejected_input"


class NoPreimageError(WeilError):
    error_type = "no_preimage"


class DegenerateFormError(WeilError):
    error_type = "degenerate_form"


class NotSymplecticError(WeilError):
    error_type = "not_symplectic"


class SnapError(WeilError):
    error_type = "snap_failure"


class OracleNumericError(WeilError):
    error_type = "numeric_failure"


class SizeGuardError(WeilError):
    error_type = "size_guard"


class HypothesisError(WeilError):
    error_type = "hypothesis_failed"
