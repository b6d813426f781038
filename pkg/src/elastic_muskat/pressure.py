"""Interfacial pressure solve for the two-phase problem.

The trace pressures f^- and f^+ satisfy a jump condition
f^- - f^+ = sigma E(eta) + g (rho^- - rho^+) eta together with continuity of
the normal velocity (1/mu^+) G^+ f^+ = (1/mu^-) G^- f^-.  Splitting the DN
operators into their flat parts -+|D| plus remainders R^+- turns this into a
fixed-point equation for f^-, contractive for small interfaces.  A dense
collocation solve over a truncated Fourier basis serves as the referee.
"""

from dataclasses import dataclass

import numpy as np

from .dn import DNConfig, InfiniteDepth, FlatStrip, dn_fixed_point, dn_upper
from .elastic import elastic_E
from .errors import NotContracting
from .grid import Field, inv_abs_d, mean, sobolev_norm
from .params import PhysicalParams


@dataclass(frozen=True)
class PressureConfig:
    tol: float = 1e-12
    max_iter: int = 80
    smallness_gate: float = 0.1   # on ||eta||_{H^2}
    check_gate: bool = True
    dn: DNConfig = DNConfig()


@dataclass(frozen=True)
class PressurePair:
    f_minus: Field
    f_plus: Field
    jump_residual: float
    flux_residual: float
    iterations: int

    def report(self) -> dict:
        return {"jump_residual": self.jump_residual,
                "flux_residual": self.flux_residual,
                "iterations": self.iterations}


def _geometries(params: PhysicalParams):
    geo = params.geometry
    lower = FlatStrip(geo.h_minus) if geo.kind == "flat_bottom" \
        else InfiniteDepth()
    upper = FlatStrip(geo.h_plus) if geo.h_plus > 0 else InfiniteDepth()
    return lower, upper


def pressure_jump(eta: Field, params: PhysicalParams) -> Field:
    """sigma E(eta) + g (rho^- - rho^+) eta."""
    return elastic_E(eta) * params.sigma + eta * (params.g * params.delta_rho)


def pressure_forcing(eta: Field, params: PhysicalParams,
                     cfg: PressureConfig = PressureConfig()) -> Field:
    """Affine part u0 of the fixed-point equation for f^-."""
    mu_sum = params.mu_plus + params.mu_minus
    grav = params.g * params.delta_rho
    _, upper = _geometries(params)
    g_eta = dn_upper(eta, eta, cfg.dn, upper).gf
    g_el = dn_upper(eta, elastic_E(eta), cfg.dn, upper).gf
    u0 = inv_abs_d(g_eta) * (-grav * params.mu_minus / mu_sum) \
        + inv_abs_d(g_el) * (-params.sigma * params.mu_minus / mu_sum)
    return u0


def pressure_fixed_point(eta: Field, params: PhysicalParams,
                         cfg: PressureConfig = PressureConfig()) -> PressurePair:
    """Solve for the trace pressures by Picard iteration on f^-."""
    if params.phase != "two":
        raise ValueError("pressure solve is a two-phase operation")
    if cfg.check_gate:
        h2 = sobolev_norm(eta, 2.0)
        if h2 >= cfg.smallness_gate:
            raise NotContracting(
                "||eta||_H2 = %.3g at or above pressure gate %.3g"
                % (h2, cfg.smallness_gate))
    lower, upper = _geometries(params)
    mu_sum = params.mu_plus + params.mu_minus
    u0 = pressure_forcing(eta, params, cfg)
    jump = pressure_jump(eta, params)

    phi = u0
    iters = 0
    prev = np.inf
    grow = 0
    scale = max(np.max(np.abs(u0.values)), 1e-300)
    for iters in range(1, cfg.max_iter + 1):
        r_plus = dn_upper(eta, phi, cfg.dn, upper).remainder
        r_minus = dn_fixed_point(eta, phi, cfg.dn, lower).remainder
        phi_new = u0 + inv_abs_d(r_plus) * (params.mu_minus / mu_sum) \
            - inv_abs_d(r_minus) * (params.mu_plus / mu_sum)
        res = float(np.max(np.abs(phi_new.values - phi.values)) / scale)
        phi = phi_new
        if res < cfg.tol:
            break
        if res >= prev:
            grow += 1
            if grow >= 5:
                raise NotContracting(
                    "pressure iteration residuals non-decreasing")
        else:
            grow = 0
        prev = res

    f_minus = Field(phi.grid, phi.values - mean(phi))
    f_plus = f_minus - jump
    jres = np.linalg.norm((f_minus - f_plus - jump).values)
    jscale = max(np.linalg.norm(jump.values), 1e-300)
    gm = dn_fixed_point(eta, f_minus, cfg.dn, lower).gf
    gp = dn_upper(eta, f_plus, cfg.dn, upper).gf
    flux = gp * (1.0 / params.mu_plus) - gm * (1.0 / params.mu_minus)
    fscale = max(np.linalg.norm(gm.values) / params.mu_minus, 1e-300)
    return PressurePair(f_minus=f_minus, f_plus=f_plus,
                        jump_residual=float(jres / jscale),
                        flux_residual=float(np.linalg.norm(flux.values) / fscale),
                        iterations=iters)


def pressure_oracle(eta: Field, params: PhysicalParams, n_modes: int = 16,
                    cfg: PressureConfig = PressureConfig()) -> PressurePair:
    """Dense collocation referee for the pressure system.

    Columns of G^+- are built by DN solves on each truncated Fourier basis
    field; the flux-match equation plus a zero-mean gauge row is solved by
    least squares.
    """
    if params.phase != "two":
        raise ValueError("pressure solve is a two-phase operation")
    grid = eta.grid
    lower, upper = _geometries(params)
    mu_sum_inv_p = 1.0 / params.mu_plus
    mu_sum_inv_m = 1.0 / params.mu_minus
    basis = [np.ones(grid.n)]
    for k in range(1, n_modes + 1):
        basis.append(np.cos(k * 2.0 * np.pi / grid.length * grid.nodes))
        basis.append(np.sin(k * 2.0 * np.pi / grid.length * grid.nodes))
    nb = len(basis)
    Gm = np.zeros((grid.n, nb))
    Gp = np.zeros((grid.n, nb))
    for j, b in enumerate(basis):
        bf = Field(grid, b)
        Gm[:, j] = dn_fixed_point(eta, bf, cfg.dn, lower).gf.values
        Gp[:, j] = dn_upper(eta, bf, cfg.dn, upper).gf.values

    jump = pressure_jump(eta, params)
    # [(1/mu+) G+ - (1/mu-) G-] c = (1/mu+) G+ jump,  mean gauge row appended
    A = mu_sum_inv_p * Gp - mu_sum_inv_m * Gm
    rhs = mu_sum_inv_p * (dn_upper(eta, jump, cfg.dn, upper).gf.values)
    gauge = np.zeros(nb)
    gauge[0] = 1.0
    A = np.vstack([A, gauge])
    rhs = np.concatenate([rhs, [0.0]])
    coef, _, _, sv = np.linalg.lstsq(A, rhs, rcond=None)
    cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else np.inf
    if cond > 1e12:
        raise NotContracting(
            "dense pressure system ill conditioned (estimate %.3g)" % cond)

    fm_vals = np.stack(basis, axis=1) @ coef
    f_minus = Field(grid, fm_vals)
    f_minus = Field(grid, f_minus.values - mean(f_minus))
    f_plus = f_minus - jump
    gm = dn_fixed_point(eta, f_minus, cfg.dn, lower).gf
    gp = dn_upper(eta, f_plus, cfg.dn, upper).gf
    flux = gp * mu_sum_inv_p - gm * mu_sum_inv_m
    fscale = max(np.linalg.norm(gm.values) * mu_sum_inv_m, 1e-300)
    return PressurePair(f_minus=f_minus, f_plus=f_plus,
                        jump_residual=0.0,
                        flux_residual=float(np.linalg.norm(flux.values) / fscale),
                        iterations=1)
