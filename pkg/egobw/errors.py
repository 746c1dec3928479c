"""
Exception types raised by the egobw package. Every error derives from
EgoBetweennessError so callers can catch the whole family at once.
"""


class EgoBetweennessError(Exception):
    """
    Base class for all errors raised by egobw.
    """


class GraphFormatError(EgoBetweennessError):
    """
    Raised when an edge list or update stream cannot be parsed.
    """

    def __init__(self, message: str, line_no: int | None = None):
        """
        :param message: Description of the problem.
        :param line_no: 1-based line number of the offending input line, if known.
        """
        self.line_no = line_no
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)


class GraphError(EgoBetweennessError):
    """
    Raised for invalid vertices or edge operations that contradict the
    current graph (inserting a present edge, deleting an absent one, u == v).
    """


class ConnectorMapError(EgoBetweennessError):
    """
    Raised when a connector map mutation would break its invariants.
    """


class ParameterError(EgoBetweennessError, ValueError):
    """
    Raised for out-of-range parameters such as k < 1 or theta < 1, and for
    settings values of the wrong type.
    """


class OracleMismatchError(EgoBetweennessError):
    """
    Raised when the two reference computations of an ego-betweenness value disagree.
    """
