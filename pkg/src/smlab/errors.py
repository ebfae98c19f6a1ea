"""Exception types shared by every layer of smlab."""


class InputError(ValueError):
    """Malformed or ill-typed input (bad construction arguments, ill-defined maps)."""


class CapacityError(RuntimeError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, size: int, cap: int):
        super().__init__(f"{what} has size {size}, exceeding the cap of {cap}")
        self.what = what
        self.size = size
        self.cap = cap


class WorkspaceSyntaxError(InputError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
