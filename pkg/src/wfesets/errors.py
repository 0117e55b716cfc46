"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class WfesetsError(Exception):
    code = "ERROR"

    def __init__(self, message: str = "", witness=None):
        super().__init__(message or self.code)
        self.witness = witness


class NotWf(WfesetsError):
    code = "NOT_WF"


class NotExtensional(WfesetsError):
    code = "NOT_EXTENSIONAL"


class NoVertex(WfesetsError):
    code = "NO_VERTEX"


class NotWfe(WfesetsError):
    code = "NOT_WFE"


class NotWfev(WfesetsError):
    code = "NOT_WFEV"


class NodeNotInField(WfesetsError):
    code = "NODE_NOT_IN_FIELD"


class EmptySelection(WfesetsError):
    code = "EMPTY_SELECTION"


class VertexInSelection(WfesetsError):
    code = "VERTEX_IN_SELECTION"


class NonInjectiveMap(WfesetsError):
    code = "NON_INJECTIVE_MAP"


class MapDomainTooSmall(WfesetsError):
    code = "MAP_DOMAIN_TOO_SMALL"


class NotSurjective(WfesetsError):
    code = "NOT_SURJECTIVE"


class DomainMismatch(WfesetsError):
    code = "DOMAIN_MISMATCH"


class LevelTooLarge(WfesetsError):
    code = "LEVEL_TOO_LARGE"


class RankTooLarge(WfesetsError):
    code = "RANK_TOO_LARGE"


class TooLarge(WfesetsError):
    code = "TOO_LARGE"


class ParseError(WfesetsError):
    """Malformed input text; ``position`` is a 0-based character offset."""

    code = "SYNTAX_ERROR"

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} at position {position}")
        self.position = position


class HasParameters(WfesetsError):
    code = "HAS_PARAMETERS"


class UnboundParameter(WfesetsError):
    code = "UNBOUND_PARAMETER"


class ArityMismatch(WfesetsError):
    code = "ARITY_MISMATCH"


class NotTransitive(WfesetsError):
    code = "NOT_TRANSITIVE"


class NotClosed(WfesetsError):
    code = "NOT_CLOSED"


class ParameterOutsideStructure(WfesetsError):
    code = "PARAMETER_OUTSIDE_STRUCTURE"


class NotLinearOrder(WfesetsError):
    code = "NOT_LINEAR_ORDER"
