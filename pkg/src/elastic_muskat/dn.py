"""Dirichlet-Neumann operators via boundary-flattening fixed-point iteration.

The free boundary is straightened with rho(x, z) = z + H(x, z) where H is a
harmonic lift of the interface.  The transformed potential v(x, z) solves

    (d_z + |D|)(d_z - |D|) v = d_z Q_a[v] + |D| Q_b[v]

and is the fixed point of the Picard map

    T[v](z) = lift(f)(z) + int_0^z e^{(z-z')|D|} (Q_a + w)(z') dz',
    w(z')   = int_{-Z}^{z'} e^{-(z'-tau)|D|} |D| (Q_b - Q_a)(tau) dtau,

with the lower fluid's operator extracted as G(eta) f = |D| f + w(0) in
infinite depth.  The |D|H factors in Q_a, Q_b are taken as the z-derivative
of the lift (identical for the decaying lift; required for the strip lift).
All z-integrals use an exponentially weighted trapezoid rule on a grid of
levels graded toward z = 0, accumulated in one O(levels) pass.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateJacobian, DepthTruncationInsufficient, NotContracting
from .grid import Field, PeriodicGrid, abs_d, lipschitz_norms, sobolev_norm


# --- geometry ----------------------------------------------------------------


@dataclass(frozen=True)
class InfiniteDepth:
    """Bottomless lower fluid; lift decays like e^{z|k|}."""

    def lift_kernel(self, z, absk):
        return np.exp(np.multiply.outer(z, absk))

    def lift_dz_kernel(self, z, absk):
        return absk * np.exp(np.multiply.outer(z, absk))


@dataclass(frozen=True)
class FlatStrip:
    """Flat rigid bottom at depth h.

    The lift kernel sinh((z+h)k)/sinh(hk) vanishes at z = -h, so the
    flattening map sends the computational bottom to the physical flat
    bottom exactly.
    """

    h: float

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("strip depth must be positive")

    def lift_kernel(self, z, absk):
        # sinh((z+h)k)/sinh(hk) with non-positive exponents; k=0 -> (z+h)/h
        zp = np.add.outer(np.asarray(z, dtype=float), np.zeros_like(absk)) + self.h
        k = np.broadcast_to(absk, zp.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            num = np.exp((zp - self.h) * k) - np.exp((-zp - self.h) * k)
            den = 1.0 - np.exp(-2.0 * self.h * k)
            out = np.where(k > 0, num / np.where(den > 0, den, 1.0), zp / self.h)
        return out

    def lift_dz_kernel(self, z, absk):
        # k cosh((z+h)k)/sinh(hk); k=0 -> 1/h
        zp = np.add.outer(np.asarray(z, dtype=float), np.zeros_like(absk)) + self.h
        k = np.broadcast_to(absk, zp.shape)
        with np.errstate(divide="ignore", invalid="ignore"):
            num = np.exp((zp - self.h) * k) + np.exp((-zp - self.h) * k)
            den = 1.0 - np.exp(-2.0 * self.h * k)
            out = np.where(k > 0, k * num / np.where(den > 0, den, 1.0),
                           1.0 / self.h)
        return out


# --- vertical grid -----------------------------------------------------------


@dataclass(frozen=True)
class VerticalGrid:
    """Strictly increasing levels in [-Z, 0] with composite trapezoid weights.

    The composite rule is exact for piecewise-linear integrands (order 1);
    the solver upgrades it with exact exponential weighting per panel.
    """

    levels: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        levels = np.asarray(self.levels, dtype=float)
        if levels.ndim != 1 or len(levels) < 2:
            raise ValueError("need at least two levels")
        if not np.all(np.diff(levels) > 0):
            raise ValueError("levels must be strictly increasing")
        if levels[-1] != 0.0:
            raise ValueError("z = 0 must be a node")
        object.__setattr__(self, "levels", levels)
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))

    @property
    def depth(self):
        return -float(self.levels[0])


def make_vertical_grid(depth, n_levels, grading=None):
    """Levels on [-depth, 0] geometrically clustered toward z = 0.

    ``grading`` is the log ratio between the bottom and top spacing;
    by default it grows with depth so the top panel is O(depth/e^grading).
    """
    if grading is None:
        # independent of n_levels so refinement halves every panel
        grading = max(1.0, np.log(40.0 * depth))
    t = np.linspace(0.0, 1.0, n_levels)
    z = -depth * (np.exp(grading * (1.0 - t)) - 1.0) / (np.exp(grading) - 1.0)
    z[0] = -depth
    z[-1] = 0.0
    w = np.zeros(n_levels)
    d = np.diff(z)
    w[:-1] += 0.5 * d
    w[1:] += 0.5 * d
    return VerticalGrid(z, w)


def default_depth(grid: PeriodicGrid) -> float:
    """Truncation depth with e^{-Z k_min} below 1e-18."""
    return 3.0 * grid.length / (2.0 * np.pi) * np.log(1e6)


# --- results -----------------------------------------------------------------


@dataclass
class ExtensionState:
    """Flattened-domain extension with per-iteration residual history."""

    zgrid: VerticalGrid
    v: np.ndarray            # (levels, n) physical values
    lift: np.ndarray         # harmonic lift of eta on the same grid
    residuals: list


@dataclass
class DNResult:
    gf: Field
    remainder: Field
    iterations: int
    converged: bool
    residuals: list = field(default_factory=list)
    tail_bound: float = 0.0
    state: ExtensionState = None

    def report(self):
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "residuals": list(map(float, self.residuals)),
            "tail_bound": float(self.tail_bound),
        }

    def report_json(self):
        return json.dumps(self.report(), indent=2)


@dataclass(frozen=True)
class DNConfig:
    tol: float = 1e-10
    max_iter: int = 60
    n_levels: int = 64
    depth: float = None
    lipschitz_gate: float = 0.3
    tail_tol: float = 1e-6
    jacobian_floor: float = 0.1
    check_gate: bool = True


# --- harmonic lift -----------------------------------------------------------


def harmonic_lift(f: Field, zgrid: VerticalGrid, geometry=InfiniteDepth()):
    """Values of the harmonic extension of f at every (level, node)."""
    absk = np.abs(f.grid.wavenumbers)
    fhat = np.fft.fft(f.values)
    kern = geometry.lift_kernel(zgrid.levels, absk)
    return np.fft.ifft(kern * fhat[None, :], axis=1).real


def _lift_spectral(f: Field, zgrid, geometry, dz=False):
    absk = np.abs(f.grid.wavenumbers)
    fhat = np.fft.fft(f.values)
    if dz:
        kern = geometry.lift_dz_kernel(zgrid.levels, absk)
    else:
        kern = geometry.lift_kernel(zgrid.levels, absk)
    return kern * fhat[None, :]


# --- source terms ------------------------------------------------------------


def q_terms_arrays(grid, Hx, Hz, vx, vz, jacobian_floor=0.1):
    """Q_a and Q_b on the level/node grid from physical-space derivatives."""
    jac = 1.0 + Hz
    if np.min(jac) < jacobian_floor:
        raise DegenerateJacobian(
            f"min(1 + dH/dz) = {np.min(jac):.3g} below floor {jacobian_floor}")
    qa = Hx * vx - (Hx * Hx - Hz) / jac * vz
    k = grid.wavenumbers
    sgn = 1j * np.sign(k)
    sgn[grid.n // 2] = 0.0
    qb = np.fft.ifft(sgn[None, :] * np.fft.fft(Hx * vz - Hz * vx, axis=1), axis=1).real
    return qa, qb


def q_terms(state: ExtensionState, eta: Field, geometry=InfiniteDepth(),
            jacobian_floor=0.1):
    """Source terms Q_a, Q_b for a stored extension state."""
    grid = eta.grid
    k = grid.wavenumbers
    Hx = np.fft.ifft(1j * k[None, :] * np.fft.fft(state.lift, axis=1), axis=1).real
    Hz = np.fft.ifft(_lift_spectral(eta, state.zgrid, geometry, dz=True), axis=1).real
    vhat = np.fft.fft(state.v, axis=1)
    vx = np.fft.ifft(1j * k[None, :] * vhat, axis=1).real
    # d_z v by second-order differences on the graded levels
    z = state.zgrid.levels
    vz = np.gradient(state.v, z, axis=0)
    return q_terms_arrays(grid, Hx, Hz, vx, vz, jacobian_floor)


# --- exponentially weighted trapezoid coefficients ---------------------------


def _exp_linear_coeffs(absk, d):
    """Weights for int_0^d e^{-k u} g(u) du with g linear on [0, d].

    Returns (c0, cd): the coefficients of g(0) and g(d).
    c0 = A - B, cd = B with A = (1-E)/k, B = (1 - E(1+kd))/(k^2 d), E = e^{-kd}.
    Series used below k*d = 1e-6.
    """
    kd = absk * d
    E = np.exp(-kd)
    small = kd < 1e-6
    safe = np.where(small, 1.0, absk)
    A = np.where(small, d * (1.0 - 0.5 * kd), (1.0 - E) / safe)
    B = np.where(small, d * (0.5 - kd / 3.0), (1.0 - E * (1.0 + kd)) / (safe * safe * d))
    return A - B, B


# --- the fixed point ---------------------------------------------------------


class _DNWorkspace:
    """Precomputed arrays for one (eta, f, geometry) solve."""

    def __init__(self, eta, f, geometry, cfg):
        grid = eta.grid
        self.grid = grid
        self.geometry = geometry
        self.k = grid.wavenumbers
        self.absk = np.abs(self.k)
        if isinstance(geometry, FlatStrip):
            depth = geometry.h
        else:
            depth = cfg.depth if cfg.depth is not None else default_depth(grid)
            tail = np.exp(-depth * grid.k_min)
            if tail > cfg.tail_tol:
                raise DepthTruncationInsufficient(
                    f"e^(-Z k_min) = {tail:.3g} above {cfg.tail_tol}")
        self.zgrid = make_vertical_grid(depth, cfg.n_levels)
        z = self.zgrid.levels
        self.gaps = np.diff(z)
        # per-gap decay factors e^{-d |k|} and trapezoid weights
        self.decay = np.exp(-np.multiply.outer(self.gaps, self.absk))
        self.c0 = np.empty_like(self.decay)
        self.cd = np.empty_like(self.decay)
        for i, d in enumerate(self.gaps):
            self.c0[i], self.cd[i] = _exp_linear_coeffs(self.absk, d)
        self.Hx = np.fft.ifft(
            1j * self.k[None, :] * _lift_spectral(eta, self.zgrid, geometry), axis=1).real
        self.Hz = np.fft.ifft(
            _lift_spectral(eta, self.zgrid, geometry, dz=True), axis=1).real
        self.lift = np.fft.ifft(_lift_spectral(eta, self.zgrid, geometry), axis=1).real
        self.v0_hat = _lift_spectral(f, self.zgrid, geometry)

    def upward_w(self, rho_hat):
        """w(z_i) = int_{-Z}^{z_i} e^{-(z_i - tau)|k|} rho(tau) dtau."""
        m = len(self.zgrid.levels)
        w = np.zeros_like(rho_hat)
        for i in range(m - 1):
            # u = z_{i+1} - tau; rho(z_i) sits at u = d, rho(z_{i+1}) at u = 0
            w[i + 1] = self.decay[i] * w[i] + self.cd[i] * rho_hat[i] \
                + self.c0[i] * rho_hat[i + 1]
        return w

    def downward_K(self, src_hat):
        """K(z_i) = int_0^{z_i} e^{(z_i - z')|k|} src(z') dz' (z_i <= 0)."""
        m = len(self.zgrid.levels)
        K = np.zeros_like(src_hat)
        for i in range(m - 2, -1, -1):
            # u' = z' - z_i in [0, d]; src(z_i) at u' = 0, src(z_{i+1}) at u' = d
            panel = self.c0[i] * src_hat[i] + self.cd[i] * src_hat[i + 1]
            K[i] = self.decay[i] * K[i + 1] - panel
        return K


def _strip_correction(ws, kz_bottom, h):
    """Homogeneous correction enforcing d_z v = 0 at the flat bottom."""
    absk = ws.absk
    z = ws.zgrid.levels
    # u = A sinh(kz)/ (k cosh(kh)) forms; k=0 mode: u = A z
    zz = z[:, None]
    k = absk[None, :]
    with np.errstate(over="ignore"):
        sinh_ratio = np.where(
            k > 0,
            (np.exp(k * (zz - h)) - np.exp(-k * (zz + h))) / (1.0 + np.exp(-2.0 * k * h)),
            zz * np.ones_like(k))
        cosh_ratio = np.where(
            k > 0,
            (np.exp(k * (zz - h)) + np.exp(-k * (zz + h))) / (1.0 + np.exp(-2.0 * k * h)),
            np.ones_like(zz * k))
    denom = np.where(absk > 0, absk, 1.0)
    amp = -kz_bottom / denom
    dv = amp[None, :] * sinh_ratio
    dvz = amp[None, :] * denom[None, :] * cosh_ratio
    # k = 0: u = amp * z, u_z = amp
    return dv, dvz


def dn_fixed_point(eta: Field, f: Field, cfg: DNConfig = DNConfig(),
                   geometry=InfiniteDepth(), keep_state=False) -> DNResult:
    """G^-(eta) f for the lower fluid by Picard iteration on T[v].

    Raises NotContracting when the interface is outside the contraction
    regime (gate on the W^{1+1/2,inf} proxy, or growing residuals),
    DegenerateJacobian when the flattening change of variables degenerates,
    DepthTruncationInsufficient when the truncated depth cannot meet the
    tail tolerance.
    """
    if eta.grid != f.grid:
        raise ValueError("eta and f live on different grids")
    grid = eta.grid
    if cfg.check_gate:
        _, proxy = lipschitz_norms(eta)
        if proxy >= cfg.lipschitz_gate:
            raise NotContracting(
                f"W^(1+eps) proxy {proxy:.3g} at or above gate {cfg.lipschitz_gate}")
    ws = _DNWorkspace(eta, f, geometry, cfg)
    jac = 1.0 + ws.Hz
    if np.min(jac) < cfg.jacobian_floor:
        raise DegenerateJacobian(
            f"min(1 + dH/dz) = {np.min(jac):.3g} below floor {cfg.jacobian_floor}")

    k = ws.k
    absk = ws.absk
    strip = isinstance(geometry, FlatStrip)
    v0z_hat = _lift_spectral(f, ws.zgrid, geometry, dz=True) if strip \
        else absk[None, :] * ws.v0_hat
    v_hat = ws.v0_hat.copy()
    vz_hat = v0z_hat.copy()
    scale = max(np.max(np.abs(v_hat)), 1e-300)
    residuals = []
    w_hat = np.zeros_like(v_hat)
    src_hat = np.zeros_like(v_hat)
    converged = False
    grow = 0
    it = 0
    for it in range(1, cfg.max_iter + 1):
        vx = np.fft.ifft(1j * k[None, :] * v_hat, axis=1).real
        vz = np.fft.ifft(vz_hat, axis=1).real
        qa, qb = q_terms_arrays(grid, ws.Hx, ws.Hz, vx, vz, cfg.jacobian_floor)
        qa_hat = np.fft.fft(qa, axis=1)
        qb_hat = np.fft.fft(qb, axis=1)
        rho_hat = absk[None, :] * (qb_hat - qa_hat)
        w_hat = ws.upward_w(rho_hat)
        src_hat = qa_hat + w_hat
        K_hat = ws.downward_K(src_hat)
        v_new = ws.v0_hat + K_hat
        vz_new = v0z_hat + absk[None, :] * K_hat + src_hat
        if strip:
            kz_bottom = v0z_hat[0] + absk * K_hat[0] + src_hat[0]
            dv, dvz = _strip_correction(ws, kz_bottom, geometry.h)
            v_new = v_new + dv
            vz_new = vz_new + dvz
        res = float(np.max(np.abs(v_new - v_hat)) / scale)
        residuals.append(res)
        v_hat, vz_hat = v_new, vz_new
        if res < cfg.tol:
            converged = True
            break
        if len(residuals) >= 2 and res >= residuals[-2]:
            grow += 1
            if grow >= 5:
                raise NotContracting(
                    "fixed-point residuals non-decreasing for 5 iterations")
        else:
            grow = 0

    remainder_hat = w_hat[-1]
    if strip:
        # extraction through the flattened normal derivative at z = 0
        eta_x = np.fft.ifft(1j * k * np.fft.fft(eta.values)).real
        vz_top = np.fft.ifft(vz_hat[-1]).real
        vx_top = np.fft.ifft(1j * k * v_hat[-1]).real
        jac_top = 1.0 + ws.Hz[-1]
        gvals = (1.0 + eta_x ** 2) / jac_top * vz_top - eta_x * vx_top
        gf = Field(grid, gvals)
        remainder = gf - abs_d(f)
    else:
        remainder = Field(grid, np.fft.ifft(remainder_hat).real)
        gf = abs_d(f) + remainder
    tail = np.exp(-ws.zgrid.depth * grid.k_min)
    state = None
    if keep_state:
        state = ExtensionState(ws.zgrid, np.fft.ifft(v_hat, axis=1).real,
                               ws.lift, residuals)
    return DNResult(gf, remainder, it, converged, residuals, tail, state)


def dn_upper(eta: Field, f: Field, cfg: DNConfig = DNConfig(),
             geometry=InfiniteDepth()) -> DNResult:
    """G^+(eta) f for the upper fluid by the reflection identity.

    The upper domain maps to a lower domain under y -> -y, so
    G^+(eta) f = -G^-(-eta) f; ``geometry`` describes the flat top (as a
    FlatStrip at its distance) or InfiniteDepth.
    """
    lower = dn_fixed_point(-eta, f, cfg, geometry)
    gf = -lower.gf
    remainder = gf + abs_d(f)
    return DNResult(gf, remainder, lower.iterations, lower.converged,
                    lower.residuals, lower.tail_bound, lower.state)


def dn_shape_difference(eta1: Field, eta2: Field, f: Field,
                        cfg: DNConfig = DNConfig(), geometry=InfiniteDepth()):
    """G^-(eta1)f - G^-(eta2)f and the contraction ratio report."""
    g1 = dn_fixed_point(eta1, f, cfg, geometry)
    g2 = dn_fixed_point(eta2, f, cfg, geometry)
    diff = g1.gf - g2.gf
    denom = sobolev_norm(eta1 - eta2, 2.0)
    ratio = sobolev_norm(diff, 0.0) / denom if denom > 0 else 0.0
    return diff, {"ratio": ratio, "eta_distance_h2": denom,
                  "difference_h0": sobolev_norm(diff, 0.0)}
