"""Exception types shared across the package."""


class FlexigraphError(Exception):
    pass


class ResourceCapExceeded(FlexigraphError):
    """An enumeration would exceed its configured budget."""


class ParseError(FlexigraphError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class NotInKernel(FlexigraphError):
    pass


class UnsupportedEll(FlexigraphError):
    pass


class NotBijective(FlexigraphError):
    pass


class GraphError(FlexigraphError):
    pass


class MultiEdge(GraphError):
    pass


class NotAPartition(GraphError):
    pass


class NotFourValent(GraphError):
    pass


class NotACycleCover(GraphError):
    pass


class Acyclic(GraphError):
    pass


class TooLarge(GraphError):
    pass


class ActionNotByAutomorphisms(GraphError):
    pass
