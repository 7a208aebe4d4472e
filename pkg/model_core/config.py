"""
Numerical configuration shared by the geophase apps
"""
from django.conf import settings
from django.core.exceptions import ImproperlyConfigured


def _setting(name, default):
    """Read a Django setting, falling back when settings are not configured"""
    try:
        return getattr(settings, name, default)
    except ImproperlyConfigured:
        return default


class NumericsConfig:
    """Configuration class for numerical tolerances and sampling defaults"""

    # Default values that can be overridden from settings / environment
    DEFAULT_LOOP_SAMPLES = 2048
    DEFAULT_LOOP_SAMPLES_CAP = 2 ** 20
    MIN_LOOP_SAMPLES = 64
    DEFAULT_B_SEQUENCE = [1e-1, 2.5e-2, 6.25e-3, 1.5625e-3, 3.90625e-4]
    DEFAULT_FLUX_TOLERANCE = 1e-3
    DEFAULT_QUAD_TOLERANCE = 1e-10
    DEFAULT_ODE_TOLERANCE = 1e-10
    DEFAULT_CI_GRID = 64
    DEFAULT_CI_SEARCH_RADIUS = 25.0
    DEFAULT_FLOAT_FORMAT = '%.12e'

    # Fixed classification thresholds
    DEGENERACY_TOLERANCE = 1e-12
    JACOBIAN_TOLERANCE = 1e-10
    DOUBLE_ROOT_TOLERANCE = 1e-6
    ROOT_RESIDUAL_TOLERANCE = 1e-9
    MERGE_DISTANCE = 1e-6
    CONTOUR_CLEARANCE = 1e-6
    CLOSURE_TOLERANCE = 1e-3  # fraction of pi
    MAX_POLYNOMIAL_DEGREE = 8
    REGIME_RATIO = 10.0

    @classmethod
    def get_loop_samples(cls, requested=None):
        """Get the default number of loop samples, with caller override"""
        if requested:
            return int(requested)
        return int(_setting('GEOPHASE_LOOP_SAMPLES', cls.DEFAULT_LOOP_SAMPLES))

    @classmethod
    def get_loop_samples_cap(cls):
        """Get the ceiling for automatic sample doubling"""
        return int(_setting('GEOPHASE_LOOP_SAMPLES_CAP', cls.DEFAULT_LOOP_SAMPLES_CAP))

    @classmethod
    def get_b_sequence(cls, requested=None):
        """Get the decreasing b sequence used by the b -> 0 limiting procedure"""
        if requested:
            return [float(b) for b in requested]
        return [float(b) for b in _setting('GEOPHASE_B_SEQUENCE', cls.DEFAULT_B_SEQUENCE)]

    @classmethod
    def get_flux_tolerance(cls):
        """Get the PASS tolerance for extrapolated flux-table entries"""
        return float(_setting('GEOPHASE_FLUX_TOLERANCE', cls.DEFAULT_FLUX_TOLERANCE))

    @classmethod
    def get_quad_tolerance(cls):
        """Get the absolute tolerance handed to adaptive quadrature"""
        return float(_setting('GEOPHASE_QUAD_TOLERANCE', cls.DEFAULT_QUAD_TOLERANCE))

    @classmethod
    def get_ode_tolerance(cls):
        """Get the default TDSE integration tolerance"""
        return float(_setting('GEOPHASE_ODE_TOLERANCE', cls.DEFAULT_ODE_TOLERANCE))

    @classmethod
    def get_ci_grid(cls):
        """Get the per-axis resolution of the CI search grid"""
        return int(_setting('GEOPHASE_CI_GRID', cls.DEFAULT_CI_GRID))

    @classmethod
    def get_ci_search_radius(cls):
        """Get the polar search radius for general-series complex models"""
        return float(_setting('GEOPHASE_CI_SEARCH_RADIUS', cls.DEFAULT_CI_SEARCH_RADIUS))

    @classmethod
    def get_float_format(cls):
        """Get the printf-style format used for every emitted float"""
        return _setting('GEOPHASE_FLOAT_FORMAT', cls.DEFAULT_FLOAT_FORMAT)

    @classmethod
    def is_run_recording_enabled(cls):
        """Check if verification runs are stored in the database by default"""
        return bool(_setting('GEOPHASE_RECORD_RUNS', False))
