"""Exception hierarchy.

Every error carries a short ``category`` string so the command line front end
can report failures in a machine-readable way.
"""

from __future__ import annotations


class FgLdpcError(Exception):
    category = "error"


class NotPrimitive(FgLdpcError):
    category = "not_primitive"

    def __init__(self, poly: int, repeated_exponent: int) -> None:
        super().__init__(
            f"polynomial {poly:#x} is not primitive: alpha^{repeated_exponent} repeats an earlier element"
        )
        self.poly = poly
        self.repeated_exponent = repeated_exponent


class DegreeMismatch(FgLdpcError):
    category = "degree_mismatch"


class NotASubfield(FgLdpcError):
    category = "not_a_subfield"


class ZeroDirection(FgLdpcError):
    category = "zero_direction"


class SamePoint(FgLdpcError):
    category = "same_point"


class OriginOnLine(FgLdpcError):
    category = "origin_on_line"


class EmptyLine(FgLdpcError):
    category = "empty_line"


class LengthMismatch(FgLdpcError):
    category = "length_mismatch"


class NonzeroRemainder(FgLdpcError):
    category = "nonzero_remainder"


class ZeroPolynomial(FgLdpcError):
    category = "zero_polynomial"


class BaseLineThroughOrigin(FgLdpcError):
    category = "base_line_through_origin"


class ShiftOrbitMismatch(FgLdpcError):
    category = "shift_orbit_mismatch"


class NotCyclicInput(FgLdpcError):
    category = "not_cyclic"


class DimensionTooLarge(FgLdpcError):
    category = "dimension_too_large"


class LineNotInCode(FgLdpcError):
    category = "line_not_in_code"


class InvalidSplit(FgLdpcError):
    category = "invalid_split"


class NotNested(FgLdpcError):
    """C2 is not a subcode of C1; ``witness`` is a codeword of C2 outside C1."""

    category = "not_nested"

    def __init__(self, message: str, witness) -> None:
        super().__init__(message)
        self.witness = witness


class BundleFormatError(FgLdpcError):
    category = "bad_bundle"
