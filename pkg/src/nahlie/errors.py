"""Error taxonomy shared across the package.

InputError covers malformed data: bad schemas, indices out of range,
exponents exceeding the heights.  PreconditionError covers well-formed
inputs that violate a mathematical precondition: degenerate or
non-closed forms, non-units, divided powers that leave the truncated
algebra.  The CLI maps them to exit codes 2 and 3 respectively.
"""


class NahlieError(Exception):
    pass


class InputError(NahlieError):
    pass


class PreconditionError(NahlieError):
    pass
