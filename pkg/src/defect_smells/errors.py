"""Exception hierarchy.

Two families matter to callers: :class:`InputError` for anything wrong with
the files being read (the CLI exits with 2) and :class:`PreconditionError`
for data that parsed fine but cannot go through a pipeline stage (exit 3).
"""


class PipelineError(Exception):
    """Base class for every error raised by this package."""


class InputError(PipelineError):
    """Malformed or inconsistent input document."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MissingColumn(InputError):
    pass


class NonNumericValue(InputError):
    pass


class DuplicateFile(InputError):
    pass


class RaggedRow(InputError):
    pass


class UnknownCategory(InputError):
    pass


class MalformedDocument(InputError):
    pass


class NegativeCount(InputError):
    pass


class MalformedLine(InputError):
    pass


class InvalidGlob(InputError):
    pass


class InvalidSpec(InputError):
    pass


class PreconditionError(PipelineError):
    """Valid data that violates a stage's precondition."""


class EmptyJoin(PreconditionError):
    pass


class TooManyPartitions(PreconditionError):
    pass


class TooFewMinority(PreconditionError):
    pass


class SingleClass(PreconditionError):
    pass


class DegenerateSplit(SingleClass):
    """A split half is missing one of the two classes."""


class SingleClassTraining(SingleClass):
    pass


class SchemaMismatch(PreconditionError):
    pass


class UnknownMetric(InputError):
    pass
