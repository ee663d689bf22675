"""Exception hierarchy.

Every error carries a short ``code`` so the CLI can emit a single greppable
diagnostic line, and an ``exit_status`` (2 for bad input, 3 for numerical
failure).
"""


class CKError(Exception):
    code = "error"
    exit_status = 2


# -- model / parsing -------------------------------------------------------

class LexError(CKError):
    code = "LexError"

    def __init__(self, line, column, reason="illegal character", file=None):
        self.line, self.column, self.reason, self.file = line, column, reason, file
        where = f"{file}:" if file else ""
        super().__init__(f"{where}{line}:{column}: {reason}")


class ParseError(CKError):
    code = "ParseError"

    def __init__(self, line, column, expected, found=None, file=None):
        self.line, self.column, self.expected, self.found = line, column, expected, found
        self.file = file
        where = f"{file}:" if file else ""
        got = f", found {found!r}" if found is not None else ""
        super().__init__(f"{where}{line}:{column}: expected {expected}{got}")


class DuplicateClass(CKError):
    code = "DuplicateClass"

    def __init__(self, name):
        self.name = name
        super().__init__(f"class {name!r} defined more than once")


class InheritanceCycle(CKError):
    code = "InheritanceCycle"

    def __init__(self, names):
        self.names = tuple(sorted(names))
        super().__init__("inheritance cycle among " + ", ".join(self.names))


class UnmappedClass(CKError):
    code = "UnmappedClass"

    def __init__(self, name):
        self.name = name
        super().__init__(f"class {name!r} has no module assignment")


class InvalidModel(CKError):
    code = "InvalidModel"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class SchemaError(CKError):
    code = "SchemaError"

    def __init__(self, location, reason):
        self.location, self.reason = location, reason
        super().__init__(f"{location}: {reason}")


class EmptyModule(CKError):
    code = "EmptyModule"

    def __init__(self, name):
        self.name = name
        super().__init__(f"module {name!r} contains no classes")


# -- statistics ------------------------------------------------------------

class EmptyInput(CKError):
    code = "EmptyInput"


class DomainError(CKError, ValueError):
    code = "DomainError"


class InsufficientRows(CKError):
    code = "InsufficientRows"
    exit_status = 3


class SingularMatrix(CKError):
    code = "SingularMatrix"
    exit_status = 3


# -- regions / prediction --------------------------------------------------

class MissingDefects(CKError):
    code = "MissingDefects"

    def __init__(self, module):
        self.module = module
        super().__init__(f"no defect count for module {module!r}")


class AllUndefined(CKError):
    code = "AllUndefined"


class LabelMismatch(CKError):
    code = "LabelMismatch"


class NoDefectsInHistory(CKError):
    code = "NoDefectsInHistory"


class NoSources(CKError):
    code = "NoSources"


class UsageError(CKError):
    code = "UsageError"
