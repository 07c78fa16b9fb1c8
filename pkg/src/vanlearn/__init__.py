"""vanlearn: a no-code machine-learning service with a from-scratch ML core.

Upload tabular CSV data, train k-means / linear regression / logistic
regression / decision-tree models over an HTTP API or the bench CLI,
predict on new data, and download results as csv or txt.
"""

from .codec import Dataset, decode_wire, encode_wire, export, parse_csv
from .errors import VanlearnError
from .tensor import Matrix, Vector, column_means, matmul, matrix_from_rows, transpose
from .validation import (
    SchemaRequirement,
    ValidationReport,
    ValidationRules,
    validate_schema,
    validate_size,
)

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "parse_csv",
    "encode_wire",
    "decode_wire",
    "export",
    "Matrix",
    "Vector",
    "matrix_from_rows",
    "matmul",
    "transpose",
    "column_means",
    "ValidationRules",
    "SchemaRequirement",
    "ValidationReport",
    "validate_size",
    "validate_schema",
    "VanlearnError",
    "__version__",
]
