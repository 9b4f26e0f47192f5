from typing import Optional


class QBallError(ValueError):
    """Base class of every error raised by qball."""


class ShapeError(QBallError):
    pass


class IndexRangeError(QBallError):
    def __init__(self, message: str, token: Optional[str] = None, line: int = 0, column: int = 0):
        if token is not None:
            message = f"{message} at line {line}, column {column}: {token!r}"
        super().__init__(message)
        self.token = token
        self.line = line
        self.column = column


class IrrationalValueError(QBallError):
    pass


class PoleError(QBallError):
    pass


class NotFiniteError(QBallError):
    pass


class NotInHError(QBallError):
    pass


class ConventionError(QBallError):
    pass


class ExprSyntaxError(QBallError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column
