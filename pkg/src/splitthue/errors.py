"""Exception hierarchy.

Every error raised deliberately by the library derives from
:class:`SplitThueError`, so callers (and the CLI) can separate library
diagnostics from programming errors.
"""


class SplitThueError(Exception):
    pass


class NonIntegralValue(SplitThueError):
    """An exponential-sum sequence produced a non-integer term."""


class DominantRootError(SplitThueError):
    pass


class NoDominantRoot(DominantRootError):
    pass


class ComplexDominantRoot(DominantRootError):
    pass


class NegativeDominantRoot(DominantRootError):
    """Dominant root is real but negative.

    Split the sequence into its even and odd subsequences
    (:func:`splitthue.sequences.subsequence`) and use those instead.
    """


class PrecisionInsufficient(SplitThueError):
    pass


class DegenerateInstance(SplitThueError):
    pass


class RootCountMismatch(SplitThueError):
    pass


class ZeroDiscriminant(SplitThueError):
    pass


class SingularSystem(SplitThueError):
    pass


class IndexChoiceInvalid(SplitThueError):
    pass


class BoundViolated(SplitThueError):
    pass


class FitUnstable(SplitThueError):
    def __init__(self, message, fit=None):
        super().__init__(message)
        self.fit = fit


class NonPositiveSample(SplitThueError):
    pass


class FamilyFileError(SplitThueError):
    """Parse or validation failure in a family definition file."""

    def __init__(self, message, path=None, line=None, field=None):
        self.path = path
        self.line = line
        self.field = field
        where = []
        if path is not None:
            where.append(str(path) if line is None else f"{path}:{line}")
        elif line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
