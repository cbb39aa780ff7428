class UsageError(ValueError):
    """Raised on malformed input or a violated precondition.

    The CLI maps this to exit status 2.
    """


class PreconditionError(UsageError):
    """An instance does not satisfy the precondition of the operation.

    ``witness`` carries a non-null cycle when one is available.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness
