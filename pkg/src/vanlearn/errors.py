"""Error types shared across the library, service, and CLI.

Every error carries a stable string code; the HTTP layer maps codes to
status codes and the CLI prints them. Codes are part of the API contract.
"""

from __future__ import annotations


class VanlearnError(Exception):
    """Base class: an operation failed with a stable error code."""

    code = "E_INTERNAL"

    def __init__(self, message: str = ""):
        super().__init__(message or self.__class__.__name__)
        self.message = message or self.__class__.__name__


class RaggedError(VanlearnError):
    code = "E_RAGGED"


class NonFiniteError(VanlearnError):
    code = "E_NON_FINITE"


class ShapeError(VanlearnError):
    code = "E_SHAPE"


class EmptyError(VanlearnError):
    code = "E_EMPTY"


class EncodingError(VanlearnError):
    code = "E_ENCODING"


class DuplicateColumnError(VanlearnError):
    code = "E_DUP_COLUMN"


class WireSyntaxError(VanlearnError):
    code = "E_WIRE_SYNTAX"


class KeyMismatchError(VanlearnError):
    code = "E_KEY_MISMATCH"


class FormatError(VanlearnError):
    code = "E_FORMAT"


class SchemaError(VanlearnError):
    code = "E_SCHEMA"


class TooFewRowsError(VanlearnError):
    code = "E_TOO_FEW_ROWS"


class DegenerateDataError(VanlearnError):
    code = "E_DEGENERATE"


class LabelCardinalityError(VanlearnError):
    code = "E_LABEL_CARDINALITY"


class ArgumentError(VanlearnError):
    code = "E_ARG"


class ParamsError(VanlearnError):
    code = "E_PARAMS"


class DuplicateUsernameError(VanlearnError):
    code = "E_DUP_USERNAME"


class WeakPasswordError(VanlearnError):
    code = "E_WEAK_PASSWORD"


class AuthError(VanlearnError):
    code = "E_AUTH"


class NotFoundError(VanlearnError):
    code = "E_NOT_FOUND"


class ForbiddenError(VanlearnError):
    code = "E_FORBIDDEN"


class CaptchaError(VanlearnError):
    code = "E_CAPTCHA"


class FitTimeoutError(VanlearnError):
    code = "E_TIMEOUT"


class UnsupportedError(VanlearnError):
    code = "E_UNSUPPORTED"


class NetworkError(VanlearnError):
    code = "E_NETWORK"


class ChecksumError(VanlearnError):
    code = "E_CHECKSUM"
