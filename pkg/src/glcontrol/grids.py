"""Spatial/temporal grids and the discrete Ginzburg-Landau operator.

The spatial operator is the conservative flux form

    (D u)_i = ( a11_{i+1/2} (u_{i+1} - u_i) - a11_{i-1/2} (u_i - u_{i-1}) ) / h^2

on interior nodes with homogeneous Dirichlet ghost values.  Face
coefficients are midpoint averages of the nodal coefficient, which makes
D symmetric (real) and hence the complex operator c*D normal.  Implicit
steps solve

    (I - dt * c * D) u = rhs,   c = a + i b   (forward sign)
                                c = a - i b   (backward sign)

so that the backward-sign matrix is exactly the Hermitian transpose of the
forward-sign matrix at the same time index.  That transpose pairing is what
the stochastic duality checks elsewhere in the package rely on, so it is
asserted in tests rather than left as a comment.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .errors import (
    ConfigurationError,
    DimensionError,
    EllipticityError,
    SaturationError,
)

# exp() overflows float64 a bit above 709; keep a small safety margin.
LOG_SATURATION_LIMIT = 700.0


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid on [left, right] with n_interior interior nodes."""

    n_interior: int
    left: float = 0.0
    right: float = 1.0

    def __post_init__(self):
        if self.n_interior < 1:
            raise ConfigurationError("n_interior must be >= 1")
        if not self.right > self.left:
            raise ConfigurationError("spatial interval is empty")

    @property
    def h(self):
        return (self.right - self.left) / (self.n_interior + 1)

    @property
    def x_interior(self):
        return self.left + self.h * np.arange(1, self.n_interior + 1)

    @property
    def x_full(self):
        return self.left + self.h * np.arange(self.n_interior + 2)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform partition of [0, T] into n_steps steps."""

    n_steps: int
    T: float

    def __post_init__(self):
        if self.n_steps < 1:
            raise ConfigurationError("n_steps must be >= 1")
        if self.n_steps % 4 != 0:
            # the weight profile has junctions at T/4, T/2, 3T/4; keeping
            # them on the grid avoids quadrature cells straddling a kink
            raise ConfigurationError("n_steps must be divisible by 4")
        if not self.T > 0.0:
            raise ConfigurationError("T must be positive")

    @property
    def dt(self):
        return self.T / self.n_steps

    @property
    def times(self):
        return self.dt * np.arange(self.n_steps + 1)


@dataclass
class GLCoefficients:
    """Coefficients of the complex Ginzburg-Landau operator (a + i b) D.

    a11 holds the nodal diffusion profile on the full grid (boundary nodes
    included) for every time level, shape (n_steps + 1, n_interior + 2).
    """

    a: float
    b: float
    s0: float
    a11: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not self.a > 0.0:
            raise EllipticityError("real diffusion a must be positive")
        if not self.s0 > 0.0:
            raise EllipticityError("ellipticity floor s0 must be positive")
        self.a11 = np.asarray(self.a11, dtype=float)
        if self.a11.ndim != 2:
            raise DimensionError("a11 must be (n_steps + 1, n_interior + 2)")
        if np.min(self.a11) < self.s0:
            raise EllipticityError(
                "a11 drops below s0 = %g (min %g)" % (self.s0, np.min(self.a11))
            )

    @classmethod
    def constant(cls, a, b, time_grid, grid, value=1.0, s0=None):
        if s0 is None:
            s0 = 0.5 * value
        a11 = np.full((time_grid.n_steps + 1, grid.n_interior + 2), float(value))
        return cls(a=a, b=b, s0=s0, a11=a11)

    def check_grids(self, time_grid, grid):
        want = (time_grid.n_steps + 1, grid.n_interior + 2)
        if self.a11.shape != want:
            raise DimensionError(
                "a11 shape %s does not match grids %s" % (self.a11.shape, want)
            )

    def face_coefficients(self, k):
        """Midpoint-averaged a11 on the n_interior + 1 faces at time level k."""
        row = self.a11[k]
        return 0.5 * (row[:-1] + row[1:])


def apply_gl_operator(u, coeff, k, grid, sign):
    """Apply sign * (a + sign * i b) * D to an interior-node field u.

    sign=+1 gives the forward drift operator (a + i b) D, sign=-1 gives the
    backward one -(a - i b) D.  Homogeneous Dirichlet ghost values.
    """
    u = np.asarray(u)
    if u.shape[-1] != grid.n_interior:
        raise DimensionError("field has %d nodes, grid %d" % (u.shape[-1], grid.n_interior))
    if sign not in (+1, -1):
        raise ConfigurationError("sign must be +1 or -1")
    face = coeff.face_coefficients(k)
    h2 = grid.h ** 2
    ext = np.zeros(u.shape[:-1] + (grid.n_interior + 2,), dtype=complex)
    ext[..., 1:-1] = u
    flux = face * (ext[..., 1:] - ext[..., :-1])
    du = (flux[..., 1:] - flux[..., :-1]) / h2
    c = coeff.a + 1j * coeff.b
    if sign == +1:
        return c * du
    return -np.conj(c) * du


def _banded_matrix(coeff, k, grid, dt, sign):
    """Banded form of I - dt * c * D with c = a + sign * i b."""
    n = grid.n_interior
    face = coeff.face_coefficients(k)
    h2 = grid.h ** 2
    c = coeff.a + sign * 1j * coeff.b
    lower = face[1:-1]  # faces between interior nodes, length n - 1
    diag = 1.0 + dt * c * (face[:-1] + face[1:]) / h2
    off = -dt * c * lower / h2
    ab = np.zeros((3, n), dtype=complex)
    ab[0, 1:] = off
    ab[1, :] = diag
    ab[2, :-1] = off
    return ab


def implicit_step_solve(rhs, coeff, k, grid, dt, sign):
    """Solve (I - dt * c * D) u = rhs with c = a + i b (sign=+1) or a - i b.

    The sign=-1 matrix is the conjugate transpose of the sign=+1 matrix at
    the same (k, dt), since D is real symmetric.  rhs may carry leading
    batch axes; the last axis must be the spatial one.
    """
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape[-1] != grid.n_interior:
        raise DimensionError("rhs has %d nodes, grid %d" % (rhs.shape[-1], grid.n_interior))
    ab = _banded_matrix(coeff, k, grid, dt, sign)
    flat = rhs.reshape(-1, grid.n_interior).T
    sol = solve_banded((1, 1), ab, flat)
    return np.ascontiguousarray(sol.T).reshape(rhs.shape)


def l2_inner(f, g, grid):
    """Discrete complex L2 inner product h * sum f * conj(g) over interior nodes."""
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape[-1] != grid.n_interior or g.shape[-1] != grid.n_interior:
        raise DimensionError("fields do not match the grid")
    return grid.h * np.sum(f * np.conj(g), axis=-1)


def l2_norm_sq(f, grid):
    f = np.asarray(f)
    return grid.h * np.sum(np.abs(f) ** 2, axis=-1)


def discrete_gradient(f, grid):
    """First difference of an interior-node field: centered inside, one-sided
    at the first and last interior node."""
    f = np.asarray(f)
    if f.shape[-1] != grid.n_interior:
        raise DimensionError("field does not match the grid")
    g = np.empty_like(f, dtype=complex)
    h = grid.h
    if grid.n_interior == 1:
        g[..., 0] = 0.0
        return g
    g[..., 0] = (f[..., 1] - f[..., 0]) / h
    g[..., -1] = (f[..., -1] - f[..., -2]) / h
    if grid.n_interior > 2:
        g[..., 1:-1] = (f[..., 2:] - f[..., :-2]) / (2.0 * h)
    return g


def weighted_cell_sums(values, log_weight, extra_log=0.0):
    """exp(log_weight + extra_log) * |values|^2, elementwise, in log space.

    Cells where values == 0 contribute exactly 0 even if the log weight is
    +inf there.  Raises SaturationError when any contributing exponent
    exceeds the float64 range.
    """
    values = np.asarray(values)
    log_weight = np.asarray(log_weight, dtype=float)
    mag = np.abs(values)
    active = mag > 0.0
    expo = np.full(values.shape, -np.inf)
    if np.any(active):
        with np.errstate(divide="ignore"):
            expo = np.where(active, log_weight + extra_log + 2.0 * np.log(np.where(active, mag, 1.0)), -np.inf)
    max_expo = float(np.max(expo)) if expo.size else -np.inf
    if max_expo > LOG_SATURATION_LIMIT:
        raise SaturationError(
            "weighted quadrature exponent %.3g exceeds float64 range" % max_expo,
            max_exponent=max_expo,
        )
    return np.exp(expo)


def weighted_seminorm(fields, log_weight, time_grid, grid, k_lo, k_hi, extra_log=0.0):
    """Space-time quadrature sum dt * h * exp(log_weight) |fields|^2.

    fields and log_weight are (n_steps + 1, n_interior); the time sum runs
    over k in [k_lo, k_hi] inclusive, so the caller controls whether the
    singular endpoint of the weight is touched.
    """
    fields = np.asarray(fields)
    log_weight = np.asarray(log_weight)
    if fields.shape != (time_grid.n_steps + 1, grid.n_interior):
        raise DimensionError("trajectory shape %s does not match grids" % (fields.shape,))
    if log_weight.shape != fields.shape:
        raise DimensionError("log weight shape does not match trajectory")
    if not (0 <= k_lo <= k_hi <= time_grid.n_steps):
        raise ConfigurationError("bad quadrature index range [%d, %d]" % (k_lo, k_hi))
    block = weighted_cell_sums(fields[k_lo : k_hi + 1], log_weight[k_lo : k_hi + 1], extra_log)
    return float(time_grid.dt * grid.h * np.sum(block))
