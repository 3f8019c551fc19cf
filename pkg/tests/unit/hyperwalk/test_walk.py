"""
Unit tests for the horocycle walk and its closed-form limit
"""

import math

import numpy as np
import pytest

from hyperwalk import (
    A1,
    PATH_POINT_CAP,
    WalkSpec,
    closed_form_limit,
    conjugate_check,
    geodesic_limit_point,
    path_indices,
    reciprocal_rate_limit,
    trajectory,
    walk_product,
    walk_sequence,
)
from matcore import Matrix, identity, mat_det, mat_exp, mat_norm
from sequences import MeasureParams, SymbolStream
from utils.error_handling import InvalidParameterError

SYMMETRIC = MeasureParams(0.5, 0.5)


def make_spec(stream, n, t_grid=(1.0,), measure=SYMMETRIC, **kwargs):
    return WalkSpec(measure=measure, stream=stream, t_grid=tuple(t_grid), n=n, **kwargs)


@pytest.fixture
def periodic_spec():
    return make_spec(SymbolStream.periodic([1, 2]), 100_000, t_grid=(-1.0, 0.0, 1.0))


class TestClosedForm:
    """Test cases for exp(t[[0, mu1], [mu2, 0]])"""

    @pytest.mark.parametrize("mu1", [k / 10 for k in range(11)])
    @pytest.mark.parametrize("t", [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0])
    def test_matches_exponential(self, mu1, t):
        m = MeasureParams.from_mu1(mu1)
        generator = Matrix.from_rows([[0, m.mu1], [m.mu2, 0]])
        closed = closed_form_limit(m, t)
        reference = mat_exp(generator * t, 1e-13)

        assert mat_norm(closed - reference) <= 1e-12 * max(1.0, mat_norm(reference))
        assert abs(mat_det(closed) - 1.0) <= 1e-10

    @pytest.mark.parametrize("t", [-1.5, 0.0, 3.0])
    def test_all_mass_on_first_symbol(self, t):
        expected = Matrix.from_rows([[1, t], [0, 1]])
        assert closed_form_limit(MeasureParams(1.0, 0.0), t).allclose(expected, atol=0.0)

    def test_zero_time(self):
        assert closed_form_limit(MeasureParams(0.3, 0.7), 0.0).allclose(identity(2))

    def test_non_finite_time(self):
        with pytest.raises(InvalidParameterError):
            closed_form_limit(SYMMETRIC, math.inf)


class TestReciprocalRate:
    """Test cases for the alternative hyperbolic argument"""

    def test_disagrees_with_exponential(self):
        alternative = reciprocal_rate_limit(SYMMETRIC, 1.0)

        assert alternative.entries[0, 0].real == pytest.approx(math.cosh(2.0))
        assert closed_form_limit(SYMMETRIC, 1.0).entries[0, 0].real == pytest.approx(
            math.cosh(0.5)
        )
        assert mat_norm(alternative - closed_form_limit(SYMMETRIC, 1.0)) > 1.0

    def test_degenerate_measure(self):
        with pytest.raises(InvalidParameterError):
            reciprocal_rate_limit(MeasureParams(0.0, 1.0), 1.0)


class TestConjugateCheck:
    """Test cases for the rotated diagonal form"""

    @pytest.mark.parametrize("t", [-2.0, -1.0, 0.0, 1.0, 2.0])
    def test_rotation_matches_closed_form(self, t):
        rotated, closed, distance = conjugate_check(t)

        assert distance <= 1e-12
        assert rotated.allclose(closed)


class TestWalkProduct:
    """Test cases for the renormalized walk product"""

    def test_sequence_uses_horocycle_table(self):
        seq = walk_sequence(make_spec(SymbolStream.periodic([1, 2]), 4))
        np.testing.assert_array_equal(seq.values(2)[0], A1.entries)

    def test_single_horocycle_is_exact(self):
        """A1 is nilpotent, so (I + tA1/n)^n = I + tA1"""
        spec = make_spec(SymbolStream.periodic([1]), 1000, measure=MeasureParams(1.0, 0.0))
        assert walk_product(spec, 2.5).allclose(identity(2) + A1 * 2.5, atol=1e-10)

    def test_periodic_limit(self):
        spec = make_spec(SymbolStream.periodic([1, 2]), 100_000)
        gap = mat_norm(walk_product(spec, 1.0) - closed_form_limit(SYMMETRIC, 1.0))

        assert gap <= 1e-4

    @pytest.mark.slow
    def test_bernoulli_limit(self):
        """Bernoulli(0.3, 0.7) with seed 11 at n = 10**6"""
        measure = MeasureParams(0.3, 0.7)
        spec = make_spec(SymbolStream.bernoulli([0.3, 0.7], 11), 1_000_000, measure=measure)
        gap = mat_norm(walk_product(spec, 1.0) - closed_form_limit(measure, 1.0))

        assert gap <= 5e-3


class TestPathIndices:
    """Test cases for path subsampling"""

    def test_short_walk_keeps_every_step(self):
        np.testing.assert_array_equal(path_indices(10), np.arange(11))

    @pytest.mark.parametrize("n", [PATH_POINT_CAP, 100_000, 1_000_003])
    def test_long_walk_is_capped(self, n):
        indices = path_indices(n)

        assert indices[0] == 0
        assert indices[-1] == n
        assert len(indices) <= PATH_POINT_CAP
        assert np.all(np.diff(indices) > 0)

    def test_custom_cap(self):
        assert len(path_indices(1000, cap=11)) == 11


class TestTrajectory:
    """Test cases for disc trajectories"""

    def test_zero_time_stays_at_centre(self):
        [point] = trajectory(make_spec(SymbolStream.periodic([1, 2]), 50, t_grid=(0.0,)))

        assert point.endpoint.z == 0
        assert all(p.z == 0 for p in point.path)
        assert point.indices == tuple(range(51))

    def test_path_ends_at_endpoint(self):
        [point] = trajectory(make_spec(SymbolStream.bernoulli([0.5, 0.5], 42), 5000))

        assert point.indices[-1] == 5000
        assert len(point.path) == len(point.indices)
        assert point.path[0].z == 0
        assert abs(point.path[-1].z - point.endpoint.z) <= 1e-10

    def test_periodic_endpoints(self, periodic_spec):
        points = trajectory(periodic_spec)

        assert [p.t for p in points] == [-1.0, 0.0, 1.0]
        for point in points:
            assert abs(point.endpoint.z - geodesic_limit_point(point.t).z) <= 1e-3
            assert all(p.modulus < 1.0 for p in point.path)

    def test_bernoulli_endpoints(self):
        """Seed 42 at n = 10**5 has a symbol-1 frequency of 0.49785"""
        t_grid = tuple(float(t) for t in np.arange(-2.0, 2.25, 0.5))
        spec = make_spec(SymbolStream.bernoulli([0.5, 0.5], 42), 100_000, t_grid=t_grid)

        points = trajectory(spec)
        assert len(points) == 9
        for point in points:
            gap = abs(point.endpoint.z - geodesic_limit_point(point.t).z)
            assert gap <= 2e-3
            if abs(point.t) <= 1.0:
                assert gap <= 1e-3
            assert point.endpoint.modulus < 1.0

    def test_workers_match_serial(self):
        spec = make_spec(
            SymbolStream.bernoulli([0.5, 0.5], 7), 3000, t_grid=(-2.0, -0.5, 0.5, 2.0)
        )
        serial = trajectory(spec)
        threaded = trajectory(spec, workers=3)

        for a, b in zip(serial, threaded):
            assert a.t == b.t
            assert abs(a.endpoint.z - b.endpoint.z) <= 1e-12
            assert a.indices == b.indices


class TestGeodesicLimitPoint:
    """Test cases for the endpoint of the symmetric limit"""

    @pytest.mark.parametrize("t", [-3.0, -0.5, 0.0, 1.0, 4.0])
    def test_on_vertical_diameter(self, t):
        assert abs(geodesic_limit_point(t).z.real) <= 1e-12

    def test_tends_to_minus_i(self):
        assert abs(geodesic_limit_point(30.0).z + 1j) <= 1e-5

    def test_tends_to_i_backwards(self):
        assert abs(geodesic_limit_point(-30.0).z - 1j) <= 1e-5

    def test_asymmetric_measure(self):
        m = MeasureParams(0.3, 0.7)
        [[a, b], [c, d]] = closed_form_limit(m, 1.0).entries
        expected = ((a * 1j + b) / (c * 1j + d) - 1j) / ((a * 1j + b) / (c * 1j + d) + 1j)

        assert geodesic_limit_point(1.0, m).z == pytest.approx(expected)


class TestWalkSpec:
    """Test cases for walk parameter validation"""

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"n": 0},
            {"stream": SymbolStream.periodic([1, 2, 3])},
            {"t_grid": (0.0, math.nan)},
            {"base_point": -1j},
            {"base_point": 2.0},
        ],
    )
    def test_invalid(self, kwargs):
        arguments = {"stream": SymbolStream.periodic([1, 2]), "n": 10, "t_grid": (1.0,)}
        arguments.update(kwargs)
        with pytest.raises(InvalidParameterError):
            make_spec(**arguments)
