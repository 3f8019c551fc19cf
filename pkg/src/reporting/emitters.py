"""
Artifact writers: CSV tables through pandas and disc figures through matplotlib

Outputs are byte-deterministic for fixed input: floats use 17 significant digits,
lines end in '\\n', and SVG ids and metadata are pinned.
"""

import logging
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Union

import matplotlib
import numpy as np
import pandas as pd
from matplotlib.figure import Figure
from matplotlib.patches import Circle

from hyperwalk import DiscPoint, TrajectoryPoint
from matcore import Matrix, matrix_from_pairs, matrix_to_rows
from utils.error_handling import EmitError, InvalidParameterError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"
TRAJECTORY_COLUMNS = ["t", "endpoint_re", "endpoint_im", "k", "path_re", "path_im"]
MATRIX_COLUMNS = ["row", "col", "re", "im"]
VIEWPORT = 1.05
SVG_RC = {"svg.hashsalt": "renorm-lab", "svg.fonttype": "none"}

Rows = Union[pd.DataFrame, Sequence[Mapping[str, object]]]


def format_t(t: float) -> str:
    """Compact label of a time value used in SVG element ids"""
    return f"{t:g}"


def emit_csv(rows: Rows, path: Union[str, Path], columns: Optional[List[str]] = None) -> Path:
    """
    Write a table with a header line

    Raises:
        EmitError: no rows (no file is created) or the file cannot be written
    """
    target = Path(path)
    frame = rows if isinstance(rows, pd.DataFrame) else pd.DataFrame(list(rows), columns=columns)
    if frame.empty:
        raise EmitError(f"Nothing to write to {target}", context={"path": str(target)})
    try:
        target.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(target, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    except OSError as e:
        raise EmitError(f"Could not write {target}: {e}", context={"path": str(target)}) from e
    logger.debug("Wrote %d rows to %s", len(frame), target)
    return target


def read_csv(path: Union[str, Path]) -> pd.DataFrame:
    """Parse a table written by :func:`emit_csv` without losing float precision"""
    source = Path(path)
    try:
        return pd.read_csv(source, float_precision="round_trip")
    except (OSError, pd.errors.ParserError) as e:
        raise InvalidParameterError(f"Could not read {source}: {e}") from e


def matrix_frame(M: Matrix) -> pd.DataFrame:
    d = M.dim
    return pd.DataFrame(
        [
            {"row": i // d, "col": i % d, "re": re, "im": im}
            for i, (re, im) in enumerate(matrix_to_rows(M))
        ],
        columns=MATRIX_COLUMNS,
    )


def emit_matrix_csv(M: Matrix, path: Union[str, Path]) -> Path:
    """Row-major (row, col, re, im) table of a matrix"""
    return emit_csv(matrix_frame(M), path)


def read_matrix_csv(path: Union[str, Path]) -> Matrix:
    frame = read_csv(path).sort_values(["row", "col"])
    d = int(frame["row"].max()) + 1
    return matrix_from_pairs(zip(frame["re"], frame["im"]), d)


def trajectory_frame(points: Sequence[TrajectoryPoint]) -> pd.DataFrame:
    """One row per path point, the endpoint repeated on each row of its t"""
    rows = []
    for point in points:
        for k, z in zip(point.indices, point.path):
            rows.append(
                {
                    "t": point.t,
                    "endpoint_re": point.endpoint.z.real,
                    "endpoint_im": point.endpoint.z.imag,
                    "k": k,
                    "path_re": z.z.real,
                    "path_im": z.z.imag,
                }
            )
    return pd.DataFrame(rows, columns=TRAJECTORY_COLUMNS)


def read_trajectory_csv(path: Union[str, Path]) -> List[TrajectoryPoint]:
    """Rebuild trajectories from their CSV, in file order"""
    frame = read_csv(path)
    missing = [c for c in TRAJECTORY_COLUMNS if c not in frame.columns]
    if missing:
        raise InvalidParameterError(f"{path} is missing trajectory columns {missing}")
    points = []
    for t, group in frame.groupby("t", sort=False):
        first = group.iloc[0]
        points.append(
            TrajectoryPoint(
                t=float(t),
                endpoint=DiscPoint(complex(first["endpoint_re"], first["endpoint_im"])),
                indices=tuple(int(k) for k in group["k"]),
                path=tuple(
                    DiscPoint(complex(re, im))
                    for re, im in zip(group["path_re"], group["path_im"])
                ),
            )
        )
    return points


def emit_svg(
    points: Sequence[TrajectoryPoint],
    path: Union[str, Path],
    horocycles: Optional[Dict[str, Sequence[DiscPoint]]] = None,
) -> Path:
    """
    Disc picture of the walk

    Draws the unit circle, the vertical diameter, faint horocycles when given, one
    polyline per t (id ``path-t<t>``) and one dot per endpoint (id ``endpoint-t<t>``).
    """
    target = Path(path)
    if not points:
        raise EmitError(f"No trajectories to draw into {target}", context={"path": str(target)})

    with matplotlib.rc_context(SVG_RC):
        fig = Figure(figsize=(6, 6))
        ax = fig.add_axes([0, 0, 1, 1])
        ax.set_xlim(-VIEWPORT, VIEWPORT)
        ax.set_ylim(-VIEWPORT, VIEWPORT)
        ax.set_aspect("equal")
        ax.set_axis_off()

        ax.add_patch(Circle((0, 0), 1.0, fill=False, color="black", lw=1.0, gid="unit-circle"))
        ax.plot([0, 0], [-1, 1], color="gray", lw=0.8, ls="--", gid="geodesic")

        for name, orbit in (horocycles or {}).items():
            zs = np.array([p.z for p in orbit])
            ax.plot(zs.real, zs.imag, color="tab:blue", lw=0.6, alpha=0.3, gid=name)

        colors = matplotlib.colormaps["viridis"](np.linspace(0, 1, len(points)))
        for point, color in zip(points, colors):
            label = format_t(point.t)
            zs = np.array([p.z for p in point.path])
            ax.plot(zs.real, zs.imag, color=color, lw=0.8, gid=f"path-t{label}")
            ax.plot(
                [point.endpoint.z.real],
                [point.endpoint.z.imag],
                "o",
                color=color,
                ms=4,
                gid=f"endpoint-t{label}",
            )

        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(target, format="svg", metadata={"Date": None})
        except OSError as e:
            raise EmitError(
                f"Could not write {target}: {e}", context={"path": str(target)}
            ) from e

    logger.debug("Drew %d trajectories into %s", len(points), target)
    return target
