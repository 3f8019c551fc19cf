"""
Unit tests for error handling utilities
"""

import sys
from unittest.mock import patch

import pytest

from utils.error_handling import (
    AccessModeError,
    CombinatorialBudgetError,
    ConfigurationError,
    DimensionMismatchError,
    EmitError,
    ErrorHandler,
    ErrorSeverity,
    InvalidParameterError,
    PerformanceMonitor,
    PoleError,
    RenormError,
    ToleranceViolationError,
    install_exception_hook,
    log_exception,
    monitor_performance,
    with_error_handling,
)


class TestRenormErrors:
    """Test cases for the exception hierarchy"""

    def test_base_error_defaults(self):
        """Test default severity, context and timestamp"""
        error = RenormError("boom")

        assert str(error) == "boom"
        assert error.severity == ErrorSeverity.MEDIUM
        assert error.context == {}
        assert error.timestamp is not None

    @pytest.mark.parametrize(
        "error_class",
        [
            DimensionMismatchError,
            InvalidParameterError,
            AccessModeError,
            CombinatorialBudgetError,
            PoleError,
            ConfigurationError,
            ToleranceViolationError,
            EmitError,
        ],
    )
    def test_subclasses_share_base(self, error_class):
        """Test every library error is a RenormError"""
        assert issubclass(error_class, RenormError)

    def test_invalid_parameter_is_value_error(self):
        """Test invalid parameters can be caught as ValueError"""
        with pytest.raises(ValueError):
            raise InvalidParameterError("n must be positive")

    def test_tolerance_violation_is_high_severity(self):
        """Test tolerance violations are logged as errors"""
        error = ToleranceViolationError("scan: final error too large", context={"kind": "scan"})

        assert error.severity == ErrorSeverity.HIGH
        assert error.context["kind"] == "scan"


class TestErrorHandler:
    """Test cases for ErrorHandler class"""

    def test_handle_error_counts(self):
        """Test that errors are counted by type"""
        handler = ErrorHandler()
        handler.handle_error(InvalidParameterError("a"))
        handler.handle_error(InvalidParameterError("b"))
        handler.handle_error(PoleError("c"))

        summary = handler.get_error_summary()
        assert summary["error_counts"] == {"InvalidParameterError": 2, "PoleError": 1}
        assert summary["total_errors"] == 3
        assert set(summary["last_errors"]) == {"InvalidParameterError", "PoleError"}

    def test_renorm_error_severity_selects_log_method(self):
        """Test that a RenormError keeps its own severity"""
        handler = ErrorHandler()

        with patch.object(handler.logger, "warning") as mock_warning, patch.object(
            handler.logger, "error"
        ) as mock_error:
            handler.handle_error(PoleError("pole"))
            mock_warning.assert_called_once()
            mock_error.assert_not_called()

            handler.handle_error(ToleranceViolationError("too far"))
            # the message and the stack trace
            assert mock_error.call_count == 2

    @pytest.mark.parametrize(
        "error,expected",
        [
            (FloatingPointError("x"), ErrorSeverity.HIGH),
            (OverflowError("x"), ErrorSeverity.HIGH),
            (ValueError("x"), ErrorSeverity.MEDIUM),
            (OSError("x"), ErrorSeverity.MEDIUM),
            (KeyboardInterrupt(), ErrorSeverity.LOW),
            (RuntimeError("x"), ErrorSeverity.MEDIUM),
        ],
    )
    def test_determine_severity(self, error, expected):
        """Test severity of non-library exceptions"""
        assert ErrorHandler()._determine_severity(error) == expected


class TestWithErrorHandling:
    """Test cases for the error handling decorator"""

    def test_passes_through_results(self):
        """Test decorator with a successful call"""

        @with_error_handling()
        def add(a, b):
            return a + b

        assert add(2, 3) == 5

    def test_reraises_after_logging(self):
        """Test that handled errors are counted and reraised"""

        @with_error_handling(error_types=(RenormError,))
        def failing():
            raise DimensionMismatchError("2 vs 3")

        with pytest.raises(DimensionMismatchError):
            failing()
        assert failing._error_handler.error_counts["DimensionMismatchError"] == 1

    def test_wraps_foreign_errors(self):
        """Test that non-renorm errors are counted under RenormError and still raised"""

        @with_error_handling(error_types=(ValueError,))
        def failing():
            raise ValueError("bad")

        with pytest.raises(ValueError, match="bad"):
            failing()
        assert failing._error_handler.error_counts["RenormError"] == 1

    def test_unlisted_errors_propagate_unhandled(self):
        """Test that other exception types bypass the handler"""

        @with_error_handling(error_types=(ValueError,))
        def failing():
            raise KeyError("missing")

        with pytest.raises(KeyError):
            failing()
        assert not hasattr(failing, "_error_handler")


class TestPerformanceMonitor:
    """Test cases for PerformanceMonitor class"""

    def test_record_metric(self):
        """Test recording performance metrics"""
        monitor = PerformanceMonitor()

        monitor.record_metric("test_metric", 5.0)
        monitor.record_metric("test_metric", 3.0)

        summary = monitor.get_metric_summary("test_metric")
        assert summary["count"] == 2
        assert summary["min"] == 3.0
        assert summary["max"] == 5.0
        assert summary["avg"] == 4.0
        assert summary["latest"] == 3.0

    def test_metric_threshold_checking(self):
        """Test metric threshold checking"""
        monitor = PerformanceMonitor()
        monitor.set_threshold("test_metric", 10.0)

        with patch.object(monitor.logger, "warning") as mock_log:
            monitor.record_metric("test_metric", 15.0)
            mock_log.assert_called_once()

            mock_log.reset_mock()
            monitor.record_metric("test_metric", 5.0)
            mock_log.assert_not_called()

    def test_metric_history_limit(self):
        """Test metric history is limited to 100 entries"""
        monitor = PerformanceMonitor()

        for i in range(150):
            monitor.record_metric("test_metric", float(i))

        summary = monitor.get_metric_summary("test_metric")
        assert summary["count"] == 100
        assert summary["min"] == 50.0
        assert summary["max"] == 149.0

    def test_get_metric_summary_nonexistent(self):
        """Test getting summary for non-existent metric"""
        assert PerformanceMonitor().get_metric_summary("nonexistent") is None

    def test_default_experiment_threshold(self):
        """Test the experiment runtime threshold"""
        assert PerformanceMonitor().thresholds["experiment_seconds"] == 10.0


class TestPerformanceMonitorDecorator:
    """Test cases for performance monitoring decorator"""

    def test_monitor_performance_success(self):
        """Test performance monitoring decorator with successful function"""
        monitor = PerformanceMonitor()

        @monitor_performance("test_function", monitor)
        def test_function():
            return "result"

        assert test_function() == "result"

        summary = monitor.get_metric_summary("test_function")
        assert summary["count"] == 1
        assert summary["latest"] >= 0.0

    def test_monitor_performance_with_exception(self):
        """Test that failing calls are recorded under an _error metric"""
        monitor = PerformanceMonitor()

        @monitor_performance("test_function", monitor)
        def failing_function():
            raise ValueError("Test error")

        with pytest.raises(ValueError):
            failing_function()

        assert monitor.get_metric_summary("test_function") is None
        assert monitor.get_metric_summary("test_function_error")["count"] == 1

    def test_monitor_performance_multiple_calls(self):
        """Test performance monitoring with multiple function calls"""
        monitor = PerformanceMonitor()

        @monitor_performance("multi_call", monitor)
        def test_function():
            return "result"

        for _ in range(5):
            test_function()

        assert monitor.get_metric_summary("multi_call")["count"] == 5


class TestExceptionHook:
    """Test cases for the uncaught exception hook"""

    def test_install_exception_hook(self, monkeypatch):
        """Test that the hook replaces sys.excepthook"""
        monkeypatch.setattr(sys, "excepthook", sys.__excepthook__)
        install_exception_hook()

        assert sys.excepthook is log_exception

    def test_keyboard_interrupt_uses_default_hook(self):
        """Test that interrupts are not logged as crashes"""
        with patch("sys.__excepthook__") as mock_hook, patch(
            "utils.error_handling.global_error_handler"
        ) as mock_handler:
            log_exception(KeyboardInterrupt, KeyboardInterrupt(), None)

            mock_hook.assert_called_once()
            mock_handler.handle_error.assert_not_called()

    def test_uncaught_error_is_handled(self):
        """Test that other exceptions go to the global handler"""
        error = PoleError("pole at -i")
        with patch("utils.error_handling.global_error_handler") as mock_handler:
            log_exception(PoleError, error, None)

            mock_handler.handle_error.assert_called_once()
            assert mock_handler.handle_error.call_args[0][0] is error
