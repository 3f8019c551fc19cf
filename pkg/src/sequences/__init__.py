from sequences.matrix_sequences import (
    MatrixSequence,
    MeasureParams,
    cesaro_mean,
    mean_norm_bound,
    measure_from_stream,
    periodic_values,
    theoretical_mean,
)
from sequences.symbol_streams import (
    AccessMode,
    StreamModel,
    SymbolStream,
    counter_bits,
    counter_uniforms,
    materialize,
    read_symbol_file,
    stationary_distribution,
    stream_at,
    stream_slice,
    stream_take,
    symbol_frequencies,
    write_symbol_file,
)

__all__ = [
    "AccessMode",
    "MatrixSequence",
    "MeasureParams",
    "StreamModel",
    "SymbolStream",
    "cesaro_mean",
    "counter_bits",
    "counter_uniforms",
    "materialize",
    "mean_norm_bound",
    "measure_from_stream",
    "periodic_values",
    "read_symbol_file",
    "stationary_distribution",
    "stream_at",
    "stream_slice",
    "stream_take",
    "symbol_frequencies",
    "theoretical_mean",
    "write_symbol_file",
]
