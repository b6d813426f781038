"""Interface time evolution.

The interface height eta obeys a stiff fifth-order semilinear equation once
the flat-interface linear part nu1 |D|^5 + nu2 |D| is split off.  The linear
flow is applied exactly per Fourier mode; the nonlinear remainder is
integrated either by exponential time differencing (ETD1 / ETDRK2) or, for
small data, by Picard iteration on the Duhamel integral equation.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .dn import DNConfig, FlatStrip, InfiniteDepth, dn_fixed_point
from .elastic import elastic_E, elastic_split
from .errors import NotContracting, SeparationLost
from .grid import (Field, PeriodicGrid, abs_d, fractional_multiplier,
                   lipschitz_norms, mean, sobolev_norm, to_field, to_spectrum)
from .params import LinearSymbol, PhysicalParams
from .pressure import PressureConfig, pressure_fixed_point, pressure_oracle


@dataclass(frozen=True)
class SolveConfig:
    scheme: str = "ETDRK2"
    monitor_s: tuple = (2.0,)
    separation_floor: float = None   # default: half the initial distance
    dn: DNConfig = DNConfig()
    pressure: PressureConfig = PressureConfig()
    snapshot_stride: int = 1
    picard_tol: float = 1e-10
    picard_max_iter: int = 40
    picard_gate: float = 0.5         # on ||eta0||_{H^s}, s = monitor_s[0]


@dataclass
class Trajectory:
    times: list
    states: list
    monitors: list           # list of dicts, aligned with times
    abort_reason: str = None
    manifest: dict = field(default_factory=dict)

    def zs_functional(self, s: float) -> float:
        """sup_t H^s plus the L^2-in-time H^{s+5/2} dissipation, left endpoint."""
        sup = max(sobolev_norm(st, s) for st in self.states)
        acc = 0.0
        for i in range(len(self.times) - 1):
            dt = self.times[i + 1] - self.times[i]
            acc += dt * sobolev_norm(self.states[i], s + 2.5) ** 2
        return sup + np.sqrt(acc)


def linear_multiplier(grid: PeriodicGrid, params: PhysicalParams):
    sym = LinearSymbol.from_params(params)
    absk = np.abs(grid.wavenumbers)
    return sym.nu1 * absk ** 5 + sym.nu2 * absk


def default_dt(grid: PeriodicGrid, params: PhysicalParams) -> float:
    # the literal stiffness bound; far smaller than ETD needs, override in
    # practice (the exponential integrator is not CFL-limited)
    m = linear_multiplier(grid, params)
    return 0.05 * float(np.min(1.0 / (m + 1.0)))


def _lower_geometry(params: PhysicalParams):
    geo = params.geometry
    if geo.kind == "flat_bottom":
        return FlatStrip(geo.h_minus)
    return InfiniteDepth()


def rhs(eta: Field, params: PhysicalParams,
        cfg: SolveConfig = SolveConfig(), record=None) -> Field:
    """Interface velocity -(1/mu^-) G^-(eta) f^-."""
    geometry = _lower_geometry(params)
    if params.phase == "one":
        f_minus = elastic_E(eta) * params.sigma \
            + eta * (params.rho_minus * params.g)
    else:
        try:
            pair = pressure_fixed_point(eta, params, cfg.pressure)
        except NotContracting:
            pair = pressure_oracle(eta, params, cfg=cfg.pressure)
            if record is not None:
                record.setdefault("pressure_oracle_switches", 0)
                record["pressure_oracle_switches"] += 1
        f_minus = pair.f_minus
    gf = dn_fixed_point(eta, f_minus, cfg.dn, geometry).gf
    return gf * (-1.0 / params.mu_minus)


def nonlinear_remainder(eta: Field, params: PhysicalParams,
                        cfg: SolveConfig = SolveConfig(), record=None) -> Field:
    """rhs with the flat linear part added back: N = rhs + nu1|D|^5 + nu2|D|."""
    sym = LinearSymbol.from_params(params)
    lin = fractional_multiplier(eta, "abs", 5.0) * sym.nu1 \
        + abs_d(eta) * sym.nu2
    return rhs(eta, params, cfg, record) + lin


def _phi1(z):
    out = np.empty_like(z)
    small = np.abs(z) < 1e-3
    zs = z[small]
    out[small] = 1.0 - zs / 2.0 + zs ** 2 / 6.0 - zs ** 3 / 24.0
    zb = z[~small]
    out[~small] = (1.0 - np.exp(-zb)) / zb
    return out


def _phi2(z):
    out = np.empty_like(z)
    small = np.abs(z) < 1e-3
    zs = z[small]
    out[small] = 0.5 - zs / 6.0 + zs ** 2 / 24.0 - zs ** 3 / 120.0
    zb = z[~small]
    out[~small] = (np.exp(-zb) - 1.0 + zb) / zb ** 2
    return out


def etd_step(eta: Field, dt: float, params: PhysicalParams,
             scheme: str = "ETDRK2", cfg: SolveConfig = SolveConfig(),
             nonlinear=None, record=None) -> Field:
    """One exponential-time-differencing step.

    ``nonlinear`` overrides the remainder evaluation (pass
    ``lambda e: zero_field(e.grid)`` to recover the exact linear flow).
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    if scheme not in ("ETD1", "ETDRK2"):
        raise ValueError("unknown scheme %r" % (scheme,))
    if nonlinear is None:
        def nonlinear(e):
            return nonlinear_remainder(e, params, cfg, record)
    grid = eta.grid
    z = dt * linear_multiplier(grid, params)
    decay = np.exp(-z)
    n0 = nonlinear(eta)
    a_hat = decay * to_spectrum(eta).coeffs \
        + dt * _phi1(z) * to_spectrum(n0).coeffs
    if scheme == "ETD1":
        return Field(grid, np.fft.ifft(a_hat * grid.n).real)
    a = Field(grid, np.fft.ifft(a_hat * grid.n).real)
    n1 = nonlinear(a)
    corr = dt * _phi2(z) * (to_spectrum(n1).coeffs - to_spectrum(n0).coeffs)
    return Field(grid, np.fft.ifft((a_hat + corr) * grid.n).real)


def _monitors(eta: Field, t: float, params: PhysicalParams,
              cfg: SolveConfig, diss_acc: float) -> dict:
    lip, lip_proxy = lipschitz_norms(eta)
    mon = {"t": t, "mean": mean(eta), "lipschitz": lip,
           "lipschitz_proxy": lip_proxy, "dissipation": diss_acc}
    for s in cfg.monitor_s:
        mon["H%g" % s] = sobolev_norm(eta, s)
    geo = params.geometry
    if geo.kind == "flat_bottom":
        mon["boundary_distance"] = geo.h_minus + float(np.min(eta.values))
    else:
        mon["boundary_distance"] = np.inf
    return mon


def solve(eta0: Field, T: float, dt: float, params: PhysicalParams,
          cfg: SolveConfig = SolveConfig()) -> Trajectory:
    """Fixed-step ETD time loop with monitors and clean aborts."""
    if not T > 0 or not dt > 0:
        raise ValueError("T and dt must be positive")
    record = {}
    s0 = cfg.monitor_s[0]
    geo = params.geometry
    floor = cfg.separation_floor
    if geo.kind == "flat_bottom" and floor is None:
        floor = 0.5 * (geo.h_minus + float(np.min(eta0.values)))
    times = [0.0]
    diss = 0.0
    states = [eta0]
    monitors = [_monitors(eta0, 0.0, params, cfg, diss)]
    abort = None
    eta = eta0
    nsteps = int(round(T / dt))
    for i in range(nsteps):
        try:
            diss += dt * sobolev_norm(eta, s0 + 2.5) ** 2
            eta = etd_step(eta, dt, params, cfg.scheme, cfg, record=record)
        except (NotContracting, SeparationLost) as exc:
            abort = "%s: %s" % (type(exc).__name__, exc)
            break
        t = dt * (i + 1)
        times.append(t)
        states.append(eta)
        monitors.append(_monitors(eta, t, params, cfg, diss))
        if monitors[-1]["boundary_distance"] <= (floor or 0.0) \
                and geo.kind == "flat_bottom":
            abort = "SeparationLost: boundary distance %.3g at or below %.3g" \
                % (monitors[-1]["boundary_distance"], floor)
            break
    manifest = {"scheme": cfg.scheme, "dt": dt, "T": T,
                "steps": len(times) - 1, "abort_reason": abort}
    manifest.update(record)
    return Trajectory(times=times, states=states, monitors=monitors,
                      abort_reason=abort, manifest=manifest)


# --- Duhamel / Picard small-data solver --------------------------------------


def _duhamel_integrand(eta: Field, params: PhysicalParams,
                       cfg: SolveConfig) -> Field:
    """-N(eta), assembled from the paradifferential split of the velocity.

    The pieces are the DN remainder applied to the full elastic trace, the
    flat |D| applied to the elastic deviation from |D|^4, and the gravity
    remainder; their sum telescopes to the negated nonlinear remainder.
    """
    geometry = _lower_geometry(params)
    split = elastic_split(eta)
    el = split.total
    r_el = dn_fixed_point(eta, el, cfg.dn, geometry).remainder
    r_eta = dn_fixed_point(eta, eta, cfg.dn, geometry).remainder
    d4 = fractional_multiplier(eta, "abs", 4.0)
    flat_part = abs_d(el - d4)
    coeff = params.sigma / params.mu_minus
    grav = params.rho_minus * params.g / params.sigma
    return (r_el + flat_part + r_eta * grav) * (-coeff)


def picard_solve(eta0: Field, T: float, params: PhysicalParams,
                 cfg: SolveConfig = SolveConfig(), dt: float = None,
                 n_steps: int = 32) -> Trajectory:
    """Small-data solver: fixed-point iteration on the integral equation.

    Each sweep evaluates eta(t) = e^{-t m} eta0 + int_0^t e^{-(t-s) m} g(s) ds
    with g the negated nonlinear remainder of the previous iterate, using an
    exponentially weighted trapezoid rule per mode.
    """
    if params.phase != "one":
        raise ValueError("the integral-equation solver is one-phase only")
    s0 = cfg.monitor_s[0]
    h0 = sobolev_norm(eta0, s0)
    if h0 >= cfg.picard_gate:
        raise NotContracting(
            "||eta0||_H%g = %.3g at or above smallness gate %.3g"
            % (s0, h0, cfg.picard_gate))
    grid = eta0.grid
    if dt is None:
        dt = T / n_steps
    nsteps = int(round(T / dt))
    times = [dt * j for j in range(nsteps + 1)]
    m = linear_multiplier(grid, params)
    decay = np.exp(-dt * m)
    # per-panel endpoint weights of int_0^dt e^{-(dt-s)m} (linear interp) ds
    with np.errstate(divide="ignore", invalid="ignore"):
        e = decay
        w_new = np.where(m > 0, (dt * m - 1.0 + e) / (dt * m ** 2), dt / 2.0)
        w_old = np.where(m > 0, (1.0 - e * (1.0 + dt * m)) / (dt * m ** 2),
                         dt / 2.0)
    small = dt * m < 1e-6
    w_new[small] = dt / 2.0
    w_old[small] = dt / 2.0

    eta0_hat = to_spectrum(eta0).coeffs
    free = [np.exp(-t * m) * eta0_hat for t in times]
    iterates = [Field(grid, np.fft.ifft(c * grid.n).real) for c in free]
    n_iter = 0
    prev_dist = np.inf
    grow = 0
    for n_iter in range(1, cfg.picard_max_iter + 1):
        g_hat = [to_spectrum(_duhamel_integrand(st, params, cfg)).coeffs
                 for st in iterates]
        new = [iterates[0]]
        integral = np.zeros_like(eta0_hat)
        for j in range(1, nsteps + 1):
            integral = decay * integral + w_old * g_hat[j - 1] + w_new * g_hat[j]
            c = free[j] + integral
            new.append(Field(grid, np.fft.ifft(c * grid.n).real))
        # X^s-proxy distance between sweeps
        dist = max(sobolev_norm(new[j] - iterates[j], s0)
                   for j in range(nsteps + 1))
        dist += params.sigma / params.mu_minus * sum(
            dt * sobolev_norm(new[j] - iterates[j], s0 + 5.0)
            for j in range(nsteps + 1))
        iterates = new
        if dist < cfg.picard_tol:
            break
        if dist >= prev_dist:
            grow += 1
            if grow >= 3:
                raise NotContracting(
                    "integral-equation sweeps diverging (distance %.3g)" % dist)
        else:
            grow = 0
        prev_dist = dist
    else:
        raise NotContracting("integral-equation iteration did not converge")

    monitors = []
    diss = 0.0
    for j, st in enumerate(iterates):
        if j > 0:
            diss += dt * sobolev_norm(iterates[j - 1], s0 + 2.5) ** 2
        monitors.append(_monitors(st, times[j], params, cfg, diss))
    manifest = {"scheme": "picard", "dt": dt, "T": T, "iterations": n_iter}
    return Trajectory(times=times, states=iterates, monitors=monitors,
                      manifest=manifest)


# --- experiment drivers ------------------------------------------------------


def stability_experiment(eta0: Field, delta0: Field, T: float, dt: float,
                         params: PhysicalParams,
                         cfg: SolveConfig = SolveConfig()) -> dict:
    """Perturbation growth ratio ||eta1-eta2||_{Z^s}/||delta0||_{H^s}."""
    s0 = cfg.monitor_s[0]
    d0 = sobolev_norm(delta0, s0)
    if d0 == 0.0:
        return {"ratio": None, "exact_match": True, "delta0": 0.0}
    t1 = solve(eta0, T, dt, params, cfg)
    t2 = solve(eta0 + delta0, T, dt, params, cfg)
    diff = Trajectory(times=t1.times,
                      states=[a - b for a, b in zip(t2.states, t1.states)],
                      monitors=[])
    return {"ratio": diff.zs_functional(s0) / d0, "exact_match": False,
            "delta0": d0}


def scaling_experiment(eta0: Field, lam: int, T: float, dt: float,
                       params: PhysicalParams,
                       cfg: SolveConfig = SolveConfig()) -> dict:
    """Two-run defect for the rescaling eta -> lam^{-1} eta(lam^5 t, lam x)."""
    if params.g != 0 or params.phase != "one" \
            or params.geometry.kind != "bottomless":
        raise ValueError("scaling symmetry requires g=0, one-phase, bottomless")
    if int(lam) != lam or lam < 1:
        raise ValueError("lambda must be a positive integer")
    lam = int(lam)
    grid = eta0.grid
    if lam > 1 and grid.n % lam != 0:
        raise ValueError("lambda must divide the grid size")
    ref = solve(eta0, lam ** 5 * T, lam ** 5 * dt, params, cfg)
    # lam^{-1} eta0(lam x): spectral mode k moves to lam k
    c = to_spectrum(eta0).coeffs
    cs = np.zeros_like(c)
    half = grid.n // 2
    for k in range(-(half // lam), half // lam + 1):
        cs[(lam * k) % grid.n] = c[k % grid.n] / lam
    eta0_s = Field(grid, np.fft.ifft(cs * grid.n).real)
    run = solve(eta0_s, T, dt, params, cfg)
    cref = to_spectrum(ref.states[-1]).coeffs
    csc = np.zeros_like(cref)
    for k in range(-(half // lam), half // lam + 1):
        csc[(lam * k) % grid.n] = cref[k % grid.n] / lam
    scaled_ref = Field(grid, np.fft.ifft(csc * grid.n).real)
    defect = np.linalg.norm((run.states[-1] - scaled_ref).values)
    scale = max(np.linalg.norm(scaled_ref.values), 1e-300)
    return {"defect": float(defect / scale), "lambda": lam}


def smoothing_fit(eta0: Field, eta_t: Field, t: float, kmin: int) -> float:
    """Fit c > 0 in |eta_hat(t,k)| <= e^{-c t |k|^5} |eta_hat(0,k)|, |k|>=kmin."""
    c0 = np.abs(to_spectrum(eta0).coeffs)
    ct = np.abs(to_spectrum(eta_t).coeffs)
    k = np.abs(eta0.grid.wavenumbers)
    sel = (k >= kmin) & (c0 > 1e-14) & (ct > 0)
    if not np.any(sel):
        raise ValueError("no usable tail modes")
    y = -np.log(ct[sel] / c0[sel])
    x = t * k[sel] ** 5
    return float(np.dot(x, y) / np.dot(x, x))
