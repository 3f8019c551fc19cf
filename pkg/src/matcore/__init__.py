from matcore.expm import mat_exp, mat_exp_series_oracle
from matcore.matrix import (
    Matrix,
    NormKind,
    as_complex,
    identity,
    mat_add,
    mat_det,
    mat_mul,
    mat_norm,
    mat_power,
    mat_scale,
    mat_sub,
    matrix_from_pairs,
    matrix_to_rows,
)

__all__ = [
    "Matrix",
    "NormKind",
    "as_complex",
    "identity",
    "mat_add",
    "mat_det",
    "mat_exp",
    "mat_exp_series_oracle",
    "mat_mul",
    "mat_norm",
    "mat_power",
    "mat_scale",
    "mat_sub",
    "matrix_from_pairs",
    "matrix_to_rows",
]
