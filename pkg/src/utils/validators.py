"""
Input validation utilities for renorm-lab configurations
"""

import math
from typing import Any, Dict, List, Sequence

SUM_TOLERANCE = 1e-12

EXPERIMENT_KINDS = (
    "exp",
    "product",
    "scan",
    "symsum",
    "lemma_scalar",
    "lemma_weighted",
    "hyperwalk",
    "figure",
)
SEQUENCE_MODELS = ("periodic", "bernoulli", "markov", "rotation", "buffer")
STOCHASTIC_MODELS = ("bernoulli", "markov")


class InputValidator:
    """Validation helpers returning lists of error messages"""

    @staticmethod
    def is_number(value: Any) -> bool:
        """True for finite real numbers (bools excluded)"""
        if isinstance(value, bool):
            return False
        try:
            return math.isfinite(float(value))
        except (TypeError, ValueError):
            return False

    @staticmethod
    def validate_complex(value: Any, field: str) -> List[str]:
        """
        Validate a complex scalar written as a real or a ``[re, im]`` pair

        Args:
            value: Value to validate
            field: Dotted field name used in messages
        """
        if InputValidator.is_number(value):
            return []
        if (
            isinstance(value, (list, tuple))
            and len(value) == 2
            and all(InputValidator.is_number(v) for v in value)
        ):
            return []
        return [f"{field}: expected a real or a [re, im] pair, got {value!r}"]

    @staticmethod
    def validate_probability_vector(probabilities: Any, field: str) -> List[str]:
        """
        Validate a probability vector over at least two symbols

        Args:
            probabilities: Sequence of weights
            field: Dotted field name used in messages
        """
        if not isinstance(probabilities, (list, tuple)) or len(probabilities) < 2:
            return [f"{field}: expected a list of at least two probabilities"]
        if not all(InputValidator.is_number(p) for p in probabilities):
            return [f"{field}: probabilities must be finite numbers"]
        errors = []
        if any(float(p) < 0 for p in probabilities):
            errors.append(f"{field}: probabilities must be nonnegative")
        if abs(math.fsum(float(p) for p in probabilities) - 1.0) > SUM_TOLERANCE:
            errors.append(f"{field}: probabilities must sum to 1")
        return errors

    @staticmethod
    def validate_stochastic_matrix(rows: Any, field: str) -> List[str]:
        """
        Validate a square row-stochastic matrix

        Args:
            rows: List of rows
            field: Dotted field name used in messages
        """
        if not isinstance(rows, (list, tuple)) or len(rows) < 2:
            return [f"{field}: expected a square matrix with at least two rows"]
        errors = []
        for index, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != len(rows):
                errors.append(f"{field}[{index}]: row length must be {len(rows)}")
                continue
            errors.extend(
                InputValidator.validate_probability_vector(row, f"{field}[{index}]")
            )
        return errors

    @staticmethod
    def validate_count_grid(grid: Any, field: str) -> List[str]:
        """
        Validate a nonempty ascending list of positive integers

        Args:
            grid: Candidate grid
            field: Dotted field name used in messages
        """
        if not isinstance(grid, (list, tuple)) or not grid:
            return [f"{field}: expected a nonempty list of positive integers"]
        if not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in grid):
            return [f"{field}: every entry must be a positive integer"]
        if any(b <= a for a, b in zip(grid, grid[1:])):
            return [f"{field}: entries must be strictly ascending"]
        return []

    @staticmethod
    def validate_positive_int(value: Any, field: str) -> List[str]:
        """Validate a positive integer"""
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            return [f"{field}: expected a positive integer, got {value!r}"]
        return []

    @staticmethod
    def validate_matrix_rows(rows: Any, field: str) -> List[str]:
        """
        Validate a square matrix given as rows of complex entries

        Args:
            rows: List of rows
            field: Dotted field name used in messages
        """
        if not isinstance(rows, (list, tuple)) or not rows:
            return [f"{field}: expected a nonempty list of rows"]
        errors = []
        for i, row in enumerate(rows):
            if not isinstance(row, (list, tuple)) or len(row) != len(rows):
                errors.append(f"{field}: matrix must be square")
                break
            for j, entry in enumerate(row):
                errors.extend(InputValidator.validate_complex(entry, f"{field}[{i}][{j}]"))
        return errors

    @staticmethod
    def validate_sequence_config(sequence: Dict[str, Any]) -> List[str]:
        """
        Validate the ``sequence`` section

        Args:
            sequence: Section dictionary
        """
        if not isinstance(sequence, dict):
            return ["sequence: section must be a dictionary"]

        errors = []
        model = sequence.get("model")
        if model not in SEQUENCE_MODELS:
            return [f"sequence.model: must be one of {', '.join(SEQUENCE_MODELS)}"]

        if model in STOCHASTIC_MODELS:
            seed = sequence.get("seed")
            if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
                errors.append("sequence.seed: a nonnegative integer seed is required")

        if model == "periodic":
            pattern = sequence.get("pattern")
            if not isinstance(pattern, (list, tuple)) or not pattern:
                errors.append("sequence.pattern: expected a nonempty list of symbols")
            elif not all(
                isinstance(s, int) and not isinstance(s, bool) and s >= 1 for s in pattern
            ):
                errors.append("sequence.pattern: symbols are integers starting at 1")
        elif model == "bernoulli":
            errors.extend(
                InputValidator.validate_probability_vector(
                    sequence.get("probabilities"), "sequence.probabilities"
                )
            )
        elif model == "markov":
            transition = sequence.get("transition")
            errors.extend(
                InputValidator.validate_stochastic_matrix(transition, "sequence.transition")
            )
            errors.extend(
                InputValidator.validate_probability_vector(
                    sequence.get("initial"), "sequence.initial"
                )
            )
            if (
                not errors
                and isinstance(transition, (list, tuple))
                and len(sequence.get("initial")) != len(transition)
            ):
                errors.append("sequence.initial: length must match sequence.transition")
        elif model == "rotation":
            for name in ("theta", "beta"):
                value = sequence.get(name)
                if not InputValidator.is_number(value) or not 0 < float(value) < 1:
                    errors.append(f"sequence.{name}: expected a real in (0, 1)")
        elif model == "buffer":
            if not sequence.get("symbols_file"):
                errors.append("sequence.symbols_file: required for the buffer model")

        return errors

    @staticmethod
    def validate_table(table: Any, field: str = "matrices.table") -> List[str]:
        """
        Validate a symbol -> matrix table; all matrices must share one dimension

        Args:
            table: Mapping from symbol (string or int) to matrix rows
            field: Dotted field name used in messages
        """
        if not isinstance(table, dict) or not table:
            return [f"{field}: expected a nonempty mapping symbol -> matrix"]
        errors = []
        dims = set()
        for symbol, rows in table.items():
            try:
                if int(symbol) < 1:
                    raise ValueError
            except (TypeError, ValueError):
                errors.append(f"{field}: symbol keys are integers starting at 1")
                continue
            matrix_errors = InputValidator.validate_matrix_rows(rows, f"{field}.{symbol}")
            errors.extend(matrix_errors)
            if not matrix_errors:
                dims.add(len(rows))
        if len(dims) > 1:
            errors.append(f"{field}: all matrices must have the same dimension")
        return errors

    @staticmethod
    def validate_experiment_config(config: Dict[str, Any]) -> List[str]:
        """
        Validate the sections an experiment reads

        Args:
            config: Full configuration dictionary

        Returns:
            List of validation errors, each naming its dotted field
        """
        if not isinstance(config, dict):
            return ["Configuration must be a dictionary"]

        errors: List[str] = []
        kind = config.get("experiment", {}).get("kind")
        if kind not in EXPERIMENT_KINDS:
            return [f"experiment.kind: must be one of {', '.join(EXPERIMENT_KINDS)}"]

        parameters = config.get("parameters", {})
        if not isinstance(parameters, dict):
            return ["parameters: section must be a dictionary"]

        if kind == "exp":
            return InputValidator.validate_matrix_rows(
                config.get("matrices", {}).get("matrix"), "matrices.matrix"
            )

        if kind in ("product", "scan", "symsum", "lemma_weighted"):
            errors.extend(InputValidator.validate_sequence_config(config.get("sequence", {})))
            errors.extend(InputValidator.validate_table(config.get("matrices", {}).get("table")))
        if kind in ("hyperwalk", "figure"):
            errors.extend(InputValidator.validate_sequence_config(config.get("sequence", {})))

        if kind in ("product", "scan", "symsum", "lemma_weighted"):
            if parameters.get("mean") is not None:
                errors.extend(
                    InputValidator.validate_matrix_rows(parameters["mean"], "parameters.mean")
                )
        if kind in ("product", "scan", "symsum"):
            errors.extend(InputValidator.validate_complex(parameters.get("t"), "parameters.t"))
        if kind == "product":
            errors.extend(InputValidator.validate_positive_int(parameters.get("n"), "parameters.n"))
        if kind in ("scan", "lemma_scalar", "lemma_weighted"):
            errors.extend(
                InputValidator.validate_count_grid(parameters.get("n_grid"), "parameters.n_grid")
            )
        if kind == "symsum":
            errors.extend(
                InputValidator.validate_positive_int(parameters.get("n_max"), "parameters.n_max")
            )
            errors.extend(
                InputValidator.validate_positive_int(parameters.get("k_max"), "parameters.k_max")
            )
        if kind == "lemma_scalar":
            pattern = parameters.get("scalar_pattern")
            if not isinstance(pattern, (list, tuple)) or not pattern:
                errors.append("parameters.scalar_pattern: expected a nonempty list")
            else:
                for i, value in enumerate(pattern):
                    errors.extend(
                        InputValidator.validate_complex(value, f"parameters.scalar_pattern[{i}]")
                    )
        if kind == "lemma_weighted":
            k_max = parameters.get("k_max")
            if isinstance(k_max, bool) or not isinstance(k_max, int) or k_max < 0:
                errors.append("parameters.k_max: expected a nonnegative integer")
        if kind in ("hyperwalk", "figure"):
            grid = parameters.get("t_grid")
            if not isinstance(grid, (list, tuple)) or not grid:
                errors.append("parameters.t_grid: expected a nonempty list of reals")
            elif not all(InputValidator.is_number(t) for t in grid):
                errors.append("parameters.t_grid: entries must be finite reals")
            errors.extend(InputValidator.validate_positive_int(parameters.get("n"), "parameters.n"))
            errors.extend(
                InputValidator.validate_complex(
                    parameters.get("base_point"), "parameters.base_point"
                )
            )

        return errors

    @staticmethod
    def validate_tolerance(value: Any, field: str) -> List[str]:
        """Validate a strictly positive tolerance"""
        if not InputValidator.is_number(value) or float(value) <= 0:
            return [f"{field}: expected a positive number"]
        return []

    @staticmethod
    def first_error(errors: Sequence[str]) -> str:
        """Join validation errors into one diagnostic line"""
        return "; ".join(errors)
