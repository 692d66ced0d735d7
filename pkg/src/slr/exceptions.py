"""Exception hierarchy.

Everything raised on bad input derives from :class:`InputError` (a
``ValueError``); failures of the numerical procedures derive from
:class:`NumericalError`. The CLI maps the two families to exit codes 2 and 3.
"""


class SLRError(Exception):
    """Base class for all package errors."""


class InputError(SLRError, ValueError):
    """Invalid input or violated precondition."""


class NumericalError(SLRError, ArithmeticError):
    """A numerical procedure could not produce a usable result."""


class ZeroEntryError(InputError):
    pass


class TooShortError(InputError):
    pass


class IndexOutOfRangeError(InputError, IndexError):
    pass


class SubsetTooSmallError(InputError):
    pass


class MTooSmallError(InputError):
    pass


class OneClassOnlyError(InputError):
    pass


class KTooLargeError(InputError):
    pass


class PTooLargeError(InputError):
    pass


class DimensionMismatchError(InputError):
    pass


class LengthMismatchError(InputError):
    pass


class ZeroWithoutPseudocountError(InputError):
    pass


class NonNumericError(InputError):
    pass


class RaggedRowsError(InputError):
    pass


class ResponseLengthMismatchError(InputError):
    pass


class BinaryResponseNotIn01Error(InputError):
    pass


class ConstantBalanceError(NumericalError):
    """The balance has no variation over the samples, so no slope exists."""


class ExpOverflowError(NumericalError, OverflowError):
    pass
