"""Exception hierarchy. Each class carries a stable ``code`` used by the CLI."""


class FewformError(Exception):
    code = "error"
    exit_status = 1


class DomainError(FewformError, ValueError):
    code = "domain_error"


class DegenerateError(DomainError):
    code = "degenerate"


class HypothesisError(DomainError):
    """Raised when a classification route is asked to run outside its hypotheses."""

    code = "hypotheses_unmet"


class UnsupportedGroupError(DomainError):
    code = "unsupported_group"


class CapRequiredError(DomainError):
    code = "cap_required"


class ParseError(DomainError):
    code = "parse_error"


class PrecisionError(FewformError):
    code = "precision"
    exit_status = 2


class InconclusiveError(FewformError):
    code = "inconclusive"
    exit_status = 2
