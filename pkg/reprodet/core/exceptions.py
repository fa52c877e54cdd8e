from typing import Optional, Dict, Any

# Process exit codes of the command line surface
EXIT_OK = 0
EXIT_IDENTITY_FAILED = 1
EXIT_INVALID_INPUT = 2
EXIT_INTERNAL = 3


class ReprodetError(Exception):
    """Base exception for all library-specific exceptions"""
    exit_code: int = EXIT_INTERNAL
    code: str = "internal_error"
    detail: str = "An internal error occurred"

    def __init__(
        self,
        detail: Optional[str] = None,
        code: Optional[str] = None,
        exit_code: Optional[int] = None
    ):
        if detail:
            self.detail = detail
        if code:
            self.code = code
        if exit_code is not None:
            self.exit_code = exit_code
        super().__init__(self.detail)

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary for error payloads"""
        return {
            "error": self.code,
            "detail": self.detail,
            "exit_code": self.exit_code
        }


class InputError(ReprodetError):
    """Base for errors caused by the caller's input rather than by the library"""
    exit_code = EXIT_INVALID_INPUT
    code = "invalid_input"
    detail = "Invalid input"


# Scalars

class ZeroDenominator(InputError, ZeroDivisionError):
    """Raised when a rational is built with a zero denominator"""
    code = "zero_denominator"
    detail = "Denominator must be nonzero"


class BadReduction(ReprodetError):
    """Raised when a prime divides a denominator during reduction"""
    code = "bad_reduction"
    detail = "Prime divides the denominator; resample the prime"


class InvalidModuli(InputError):
    """Raised when CRT moduli are not pairwise coprime"""
    code = "invalid_moduli"
    detail = "Moduli must be pairwise coprime"


class NotPrime(InputError):
    """Raised when a field is requested over a composite modulus"""
    code = "not_prime"
    detail = "Modulus is not prime"


class FieldMismatch(InputError, TypeError):
    """Raised when scalars from different fields are combined"""
    code = "field_mismatch"
    detail = "Scalars belong to different fields"


# Matrices

class ShapeError(InputError):
    """Raised when a matrix has the wrong shape for an operation"""
    code = "shape_error"
    detail = "Matrix has the wrong shape"


class SizeGuard(InputError):
    """Raised when a matrix is too large for the factorial-cost oracle"""
    code = "size_guard"
    detail = "Matrix too large for cofactor expansion"


class SizeError(InputError):
    """Raised when a requested size is out of range"""
    code = "size_error"
    detail = "Requested size out of range"


class MinorIndexError(InputError, IndexError):
    """Raised when a minor references rows or columns out of bounds"""
    code = "minor_index_error"
    detail = "Minor index out of bounds"


class NonIntegerMatrix(InputError):
    """Raised when an integer-only engine receives non-integer entries"""
    code = "non_integer_matrix"
    detail = "Matrix entries must be integers"


# Kernel systems

class SingularDenominator(ReprodetError, ZeroDivisionError):
    """Raised when a kernel denominator l_j - k_i vanishes"""
    code = "singular_denominator"
    detail = "Kernel denominator vanishes"


class DegenerateMinor(ReprodetError):
    """Raised when D_n vanishes and a normalisation needs it"""
    exit_code = EXIT_INVALID_INPUT
    code = "degenerate_minor"
    detail = "Leading principal minor D_n is zero"


class DegenerateChain(ReprodetError):
    """Raised when a leading minor of the bordering recursion vanishes"""
    exit_code = EXIT_INVALID_INPUT
    code = "degenerate_chain"
    detail = "A leading principal minor is zero; fall back to det_exact"


class InvalidSystem(InputError):
    """Raised when a parameter system violates its invariants"""
    code = "invalid_system"
    detail = "System violates its invariants"


# Command line surface

class GenerationFailed(InputError):
    """Raised when rejection sampling exhausts its attempt budget"""
    code = "generation_failed"
    detail = "Sampling budget exhausted"


class ValidationError(InputError):
    """Exception raised for validation errors"""
    code = "validation_error"
    detail = "Invalid parameters"


class InstanceFileError(InputError):
    """Raised when an instance file cannot be read or parsed"""
    code = "instance_file_error"
    detail = "Malformed instance file"
