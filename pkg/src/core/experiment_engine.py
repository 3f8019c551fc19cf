"""
Experiment engine for renorm-lab
Builds sequences from the configuration, runs one experiment and writes its artifacts
"""

import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from hyperwalk import (
    A1,
    A2,
    WalkSpec,
    cayley_to_disc,
    closed_form_limit,
    horocycle_orbit,
    mobius_apply,
    trajectory,
)
from matcore import (
    Matrix,
    as_complex,
    mat_exp,
    mat_exp_series_oracle,
    mat_norm,
    mat_power,
)
from renorm import (
    WeightFunction,
    convergence_scan,
    expand_product,
    norm_budget_check,
    product,
    records_to_frame,
    scalar_error_bound,
    scalar_limit,
    scalar_product,
    sym_sum_bruteforce,
    sym_sums_dp,
    weighted_average,
    weighted_average_abel,
    weighted_limit,
)
from reporting import (
    emit_csv,
    emit_matrix_csv,
    emit_svg,
    read_trajectory_csv,
    trajectory_frame,
)
from sequences import (
    MatrixSequence,
    SymbolStream,
    measure_from_stream,
    periodic_values,
    read_symbol_file,
    theoretical_mean,
)
from utils.config_manager import ConfigManager
from utils.error_handling import (
    ConfigurationError,
    PerformanceMonitor,
    RenormError,
    ToleranceViolationError,
    monitor_performance,
    with_error_handling,
)
from utils.logger import log_experiment_summary, log_record, setup_logger
from utils.validators import InputValidator

ORACLE_TERMS = 60
RUNTIME_METRIC = "experiment_seconds"
SLOW_RUN_SECONDS = 10.0
BUDGET_SLACK = 1e-12
ABEL_TOLERANCE = 1e-9
EXPANSION_MAX_N = 10
HOROCYCLE_S = np.linspace(-30.0, 30.0, 601)


@dataclass
class ExperimentResult:
    """What a runner produced; failures are only enforced in check mode"""

    final_error: float
    artifacts: List[Path]
    failures: List[str] = field(default_factory=list)
    value: Optional[Matrix] = None


@dataclass(frozen=True)
class ExperimentOutcome:
    kind: str
    final_error: float
    seconds: float
    passed: Optional[bool]
    artifacts: List[Path]
    value: Optional[Matrix] = None


def build_stream(sequence: Dict) -> SymbolStream:
    """Symbol stream described by the ``sequence`` section"""
    model = sequence["model"]
    if model == "periodic":
        return SymbolStream.periodic(sequence["pattern"])
    if model == "bernoulli":
        return SymbolStream.bernoulli(sequence["probabilities"], sequence["seed"])
    if model == "markov":
        return SymbolStream.markov(
            sequence["transition"], sequence["initial"], sequence["seed"]
        )
    if model == "rotation":
        return SymbolStream.rotation(sequence["theta"], sequence["beta"])
    if model == "buffer":
        return read_symbol_file(sequence["symbols_file"])
    raise ConfigurationError(f"sequence.model: unknown model {model!r}")


def build_table(table: Dict) -> Dict[int, Matrix]:
    return {int(symbol): Matrix.from_rows(rows) for symbol, rows in table.items()}


class ExperimentEngine:
    """Runs the configured experiment and writes its CSV/SVG artifacts"""

    def __init__(
        self, config_manager: ConfigManager, monitor: Optional[PerformanceMonitor] = None
    ):
        self.config_manager = config_manager
        logging_config = config_manager.get_section("logging")
        self.log_dir = logging_config.get("directory")
        self.logger = setup_logger(
            "experiment_engine", log_dir=self.log_dir, level=logging_config.get("level")
        )

        self.monitor = monitor or PerformanceMonitor()
        self.monitor.set_threshold(
            RUNTIME_METRIC, float(logging_config.get("slow_run_seconds", SLOW_RUN_SECONDS))
        )
        self._timed_execute = monitor_performance(RUNTIME_METRIC, self.monitor)(self._execute)

        self.config = config_manager.get_config()
        self.kind = self.config["experiment"]["kind"]
        self.check = bool(self.config["experiment"].get("check", False))
        self.parameters = self.config["parameters"]
        self.tolerances = self.config["tolerances"]

        output_config = self.config["output"]
        self.output_dir = Path(output_config["directory"])
        self.record_timings = bool(output_config.get("record_timings", False))

        self.runners: Dict[str, Callable[[], ExperimentResult]] = {
            "exp": self._run_exp,
            "product": self._run_product,
            "scan": self._run_scan,
            "symsum": self._run_symsum,
            "lemma_scalar": self._run_lemma_scalar,
            "lemma_weighted": self._run_lemma_weighted,
            "hyperwalk": self._run_hyperwalk,
            "figure": self._run_figure,
        }

    def validate(self) -> None:
        """
        Validate the configuration and prepare the output directory

        Raises:
            ConfigurationError: naming the first offending fields
        """
        errors = InputValidator.validate_experiment_config(self.config)
        for name, value in self.tolerances.items():
            errors.extend(InputValidator.validate_tolerance(value, f"tolerances.{name}"))
        if errors:
            raise ConfigurationError(InputValidator.first_error(errors))
        try:
            self.output_dir.mkdir(parents=True, exist_ok=True)
        except OSError as e:
            raise ConfigurationError(
                f"output.directory: cannot create {self.output_dir}: {e}"
            ) from e

    @with_error_handling(error_types=(RenormError,))
    def run(self) -> ExperimentOutcome:
        """
        Validate, run and report one experiment

        Raises:
            ConfigurationError: invalid configuration
            ToleranceViolationError: check mode and a tolerance was exceeded
        """
        outcome = self._timed_execute()
        timings = self.monitor.get_metric_summary(RUNTIME_METRIC)
        if timings:
            self.logger.info(
                "⏱️ %s took %.3fs (%d runs, mean %.3fs, max %.3fs)",
                self.kind,
                timings["latest"],
                int(timings["count"]),
                timings["avg"],
                timings["max"],
            )
        return outcome

    def _execute(self) -> ExperimentOutcome:
        self.validate()
        self.logger.info("🔬 Running %s experiment", self.kind)

        start = time.perf_counter()
        result = self.runners[self.kind]()
        seconds = time.perf_counter() - start

        passed = (not result.failures) if self.check else None
        log_experiment_summary(
            self.kind, result.final_error, seconds, passed, log_dir=self.log_dir
        )
        for path in result.artifacts:
            self.logger.info("📄 Wrote %s", path)

        if self.check and result.failures:
            self.logger.error("❌ %s check failed: %s", self.kind, result.failures[0])
            raise ToleranceViolationError(
                InputValidator.first_error(result.failures),
                context={"kind": self.kind, "violations": len(result.failures)},
            )
        if self.check:
            self.logger.info("✅ %s check passed", self.kind)

        return ExperimentOutcome(
            self.kind, result.final_error, seconds, passed, result.artifacts, result.value
        )

    def _artifact(self, name: str) -> Path:
        return self.output_dir / name

    def _sequence(self) -> MatrixSequence:
        stream = build_stream(self.config["sequence"])
        return MatrixSequence.from_stream(stream, build_table(self.config["matrices"]["table"]))

    def _mean(self, seq: MatrixSequence) -> Matrix:
        """Configured limit mean, otherwise the space average of the sequence"""
        mean = self.parameters.get("mean")
        if mean is not None:
            return Matrix.from_rows(mean)
        return theoretical_mean(seq)

    def _run_exp(self) -> ExperimentResult:
        X = Matrix.from_rows(self.config["matrices"]["matrix"])
        value = mat_exp(X, self.parameters.get("tol", 1e-15))
        error = mat_norm(value - mat_exp_series_oracle(X, ORACLE_TERMS))
        path = emit_matrix_csv(value, self._artifact("exp.csv"))

        failures = []
        if error > self.tolerances["exp"]:
            failures.append(
                f"exp: distance to the series oracle {error:.3e} > {self.tolerances['exp']:.3e}"
            )
        return ExperimentResult(error, [path], failures, value)

    def _run_product(self) -> ExperimentResult:
        seq = self._sequence()
        n = int(self.parameters["n"])
        t = as_complex(self.parameters["t"])
        mean = self._mean(seq)
        result = product(seq, n, t, workers=int(self.parameters.get("workers", 1)))
        target = mat_exp(mean * t)
        error = mat_norm(result.value - target)
        self.logger.info(
            "📈 n=%d alpha_hat=%.6f mean_err=%.3e",
            n,
            result.alpha_hat,
            mat_norm(result.cesaro - mean),
        )
        path = emit_matrix_csv(result.value, self._artifact("product.csv"))

        failures = []
        if error > self.tolerances["product"]:
            failures.append(
                f"product: error {error:.3e} > {self.tolerances['product']:.3e} at n={n}"
            )
        return ExperimentResult(error, [path], failures, result.value)

    def _run_scan(self) -> ExperimentResult:
        seq = self._sequence()
        t = as_complex(self.parameters["t"])
        records = convergence_scan(
            seq,
            t,
            self.parameters["n_grid"],
            mean=self._mean(seq),
            workers=int(self.parameters.get("workers", 1)),
        )
        for record in records:
            log_record(record, log_dir=self.log_dir)

        frame = records_to_frame(records)
        if not self.record_timings:
            frame["seconds"] = 0.0
        path = emit_csv(frame, self._artifact("scan.csv"))

        errors = [r.err for r in records]
        failures = []
        if any(b >= a for a, b in zip(errors, errors[1:])):
            failures.append(f"scan: errors are not strictly decreasing: {errors}")
        if errors[-1] > self.tolerances["scan"]:
            failures.append(
                f"scan: final error {errors[-1]:.3e} > {self.tolerances['scan']:.3e}"
            )
        return ExperimentResult(errors[-1], [path], failures)

    def _run_symsum(self) -> ExperimentResult:
        seq = self._sequence()
        t = as_complex(self.parameters["t"])
        n_max = int(self.parameters["n_max"])
        k_max = int(self.parameters["k_max"])
        mean = self._mean(seq)
        tolerance = self.tolerances["symsum"]

        rows = []
        failures = []
        worst = 0.0
        for n in range(1, n_max + 1):
            sums = sym_sums_dp(seq, n, min(k_max, n))
            for k in range(1, min(k_max, n) + 1):
                oracle_gap = mat_norm(sums[k] - sym_sum_bruteforce(seq, n, k))
                lhs, rhs = norm_budget_check(seq, n, k, t)
                limit = mat_power(mean, k) * (1.0 / math.factorial(k))
                rows.append(
                    {
                        "n": n,
                        "k": k,
                        "oracle_gap": oracle_gap,
                        "budget_lhs": lhs,
                        "budget_rhs": rhs,
                        "limit_gap": mat_norm(sums[k] - limit),
                    }
                )
                worst = max(worst, oracle_gap)
                if oracle_gap > tolerance:
                    failures.append(f"symsum: oracle gap {oracle_gap:.3e} at n={n}, k={k}")
                if lhs > rhs * (1.0 + BUDGET_SLACK):
                    failures.append(f"symsum: budget {lhs:.6e} > {rhs:.6e} at n={n}, k={k}")
            if n <= EXPANSION_MAX_N:
                expansion_gap = mat_norm(expand_product(seq, n, t) - product(seq, n, t).value)
                if expansion_gap > tolerance:
                    failures.append(f"symsum: expansion gap {expansion_gap:.3e} at n={n}")

        path = emit_csv(rows, self._artifact("symsum.csv"))
        return ExperimentResult(worst, [path], failures)

    def _run_lemma_scalar(self) -> ExperimentResult:
        pattern = [as_complex(v) for v in self.parameters["scalar_pattern"]]
        limit = scalar_limit(pattern)

        rows = []
        failures = []
        for n in self.parameters["n_grid"]:
            value = scalar_product(periodic_values(pattern, n), n)
            error = abs(value - limit)
            bound = scalar_error_bound(pattern, n)
            rows.append(
                {
                    "n": n,
                    "value_re": value.real,
                    "value_im": value.imag,
                    "err": error,
                    "bound": bound,
                }
            )
            if error > bound:
                failures.append(f"lemma_scalar: error {error:.3e} > bound {bound:.3e} at n={n}")

        path = emit_csv(rows, self._artifact("lemma_scalar.csv"))
        return ExperimentResult(rows[-1]["err"], [path], failures)

    def _run_lemma_weighted(self) -> ExperimentResult:
        seq = self._sequence()
        mean = self._mean(seq)
        tolerance = self.tolerances["lemma_weighted"]

        rows = []
        failures = []
        for n in self.parameters["n_grid"]:
            for k in range(int(self.parameters["k_max"]) + 1):
                g = WeightFunction.monomial(k)
                value = weighted_average(seq, g, n)
                limit = weighted_limit(mean, g)
                error = mat_norm(value - limit)
                abel_gap = mat_norm(value - weighted_average_abel(seq, g, n))
                corner, limit_corner = complex(value.entries[0, 0]), complex(limit.entries[0, 0])
                rows.append(
                    {
                        "n": n,
                        "k": k,
                        "value_re": corner.real,
                        "value_im": corner.imag,
                        "limit_re": limit_corner.real,
                        "limit_im": limit_corner.imag,
                        "err": error,
                    }
                )
                if abel_gap > ABEL_TOLERANCE:
                    failures.append(
                        f"lemma_weighted: Abel form differs by {abel_gap:.3e} at n={n}, k={k}"
                    )

        # the tolerance is a statement about the largest n only
        last_n = rows[-1]["n"]
        final_rows = [r for r in rows if r["n"] == last_n]
        final = max(r["err"] for r in final_rows)
        failures.extend(
            f"lemma_weighted: error {r['err']:.3e} > {tolerance:.3e} at n={last_n}, k={r['k']}"
            for r in final_rows
            if r["err"] > tolerance
        )
        path = emit_csv(rows, self._artifact("lemma_weighted.csv"))
        return ExperimentResult(final, [path], failures)

    def _walk_spec(self) -> WalkSpec:
        stream = build_stream(self.config["sequence"])
        return WalkSpec(
            measure=measure_from_stream(stream),
            stream=stream,
            t_grid=tuple(float(t) for t in self.parameters["t_grid"]),
            n=int(self.parameters["n"]),
            base_point=as_complex(self.parameters["base_point"]),
        )

    def _horocycles(self, base: complex) -> Dict[str, list]:
        return {
            "horocycle-1": horocycle_orbit(A1, base, HOROCYCLE_S),
            "horocycle-2": horocycle_orbit(A2, base, HOROCYCLE_S),
        }

    def _run_hyperwalk(self) -> ExperimentResult:
        spec = self._walk_spec()
        points = trajectory(spec, workers=int(self.parameters.get("workers", 1)))
        output = self.config["output"]
        csv_path = emit_csv(trajectory_frame(points), self._artifact(output["trajectory_csv"]))
        svg_path = emit_svg(
            points, self._artifact(output["figure_svg"]), self._horocycles(spec.base_point)
        )

        tolerance = self.tolerances["hyperwalk"]
        failures = []
        worst = 0.0
        for point in points:
            expected = cayley_to_disc(
                mobius_apply(closed_form_limit(spec.measure, point.t), spec.base_point)
            )
            gap = abs(point.endpoint.z - expected.z)
            worst = max(worst, gap)
            if gap > tolerance:
                failures.append(
                    f"hyperwalk: endpoint gap {gap:.3e} > {tolerance:.3e} at t={point.t}"
                )
        failures.extend(self._containment_failures(points))
        return ExperimentResult(worst, [csv_path, svg_path], failures)

    def _run_figure(self) -> ExperimentResult:
        output = self.config["output"]
        csv_path = self._artifact(output["trajectory_csv"])
        artifacts = []
        if csv_path.exists():
            self.logger.info("📊 Re-rendering trajectories from %s", csv_path)
            points = read_trajectory_csv(csv_path)
        else:
            self.logger.info("📊 %s not found, computing trajectories", csv_path)
            points = trajectory(self._walk_spec(), workers=int(self.parameters.get("workers", 1)))
            artifacts.append(emit_csv(trajectory_frame(points), csv_path))

        base = as_complex(self.parameters["base_point"])
        artifacts.append(
            emit_svg(points, self._artifact(output["figure_svg"]), self._horocycles(base))
        )
        failures = self._containment_failures(points)
        outermost = max(p.modulus for point in points for p in point.path)
        return ExperimentResult(max(0.0, outermost - 1.0), artifacts, failures)

    @staticmethod
    def _containment_failures(points) -> List[str]:
        outside = [
            (point.t, p.modulus)
            for point in points
            for p in point.path + (point.endpoint,)
            if p.modulus >= 1.0
        ]
        if outside:
            t, modulus = outside[0]
            return [
                f"{len(outside)} path points leave the open disc, e.g. |z|={modulus!r} at t={t}"
            ]
        return []
