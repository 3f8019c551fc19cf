from reporting.emitters import (
    MATRIX_COLUMNS,
    TRAJECTORY_COLUMNS,
    emit_csv,
    emit_matrix_csv,
    emit_svg,
    read_csv,
    read_matrix_csv,
    read_trajectory_csv,
    trajectory_frame,
)

__all__ = [
    "MATRIX_COLUMNS",
    "TRAJECTORY_COLUMNS",
    "emit_csv",
    "emit_matrix_csv",
    "emit_svg",
    "read_csv",
    "read_matrix_csv",
    "read_trajectory_csv",
    "trajectory_frame",
]
