"""Exception types raised across lcomkit."""


class LcomkitError(Exception):
    """Base class for all lcomkit errors."""


class DuplicateClassName(LcomkitError):
    def __init__(self, name: str):
        super().__init__(f"duplicate class name: {name}")
        self.name = name


class InheritanceCycle(LcomkitError):
    def __init__(self, path):
        self.path = tuple(path)
        super().__init__("inheritance cycle: " + " -> ".join(self.path))


class UnknownClass(LcomkitError):
    def __init__(self, name: str):
        super().__init__(f"class not in corpus: {name}")
        self.name = name


class SchemaError(LcomkitError):
    """A class-model document violates the schema.

    ``where`` is a JSON-pointer-like location such as ``classes/2/methods/0/arity``.
    """

    def __init__(self, where: str, message: str):
        super().__init__(f"{where or '<root>'}: {message}")
        self.where = where
        self.message = message


class EmptyInput(LcomkitError, ValueError):
    pass


class LengthMismatch(LcomkitError, ValueError):
    pass


class DegenerateVariance(LcomkitError, ValueError):
    pass
