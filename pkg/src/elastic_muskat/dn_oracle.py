"""Independent finite-difference oracle for the Dirichlet-Neumann operator.

Second-order centered differences on the linearly flattened domain
x in [0, L) x z in [-Z, 0], with sigma coordinates

    y = rho(x, z) = z (Z + eta(x)) / Z + eta(x),

Dirichlet data on top, flat-bottom Neumann (strip) or a lift-matched Robin
condition (d_z - |D|) v = 0 (truncated infinite depth) at the bottom.  The
discretization is deliberately different from the spectral fixed point so
agreement between the two is evidence, not tautology.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .dn import FlatStrip, InfiniteDepth
from .grid import Field, PeriodicGrid


def _fd_periodic_derivs(vals, dxs):
    d1 = (np.roll(vals, -1) - np.roll(vals, 1)) / (2 * dxs)
    d2 = (np.roll(vals, -1) - 2 * vals + np.roll(vals, 1)) / dxs ** 2
    return d1, d2


def _absd_matrix(nx, length):
    """Dense |D| acting on nodal values (used only in the bottom Robin rows)."""
    k = np.abs(2.0 * np.pi * np.fft.fftfreq(nx, d=length / nx))
    F = np.fft.fft(np.eye(nx), axis=0)
    return np.real(np.fft.ifft(k[:, None] * F, axis=0))


def _oracle_solve(eta_vals, f_vals, geometry, nx, nz, depth, length):
    dxs = length / nx
    if isinstance(geometry, FlatStrip):
        Z = geometry.h
        robin = False
    else:
        Z = depth
        robin = True
    dz = Z / (nz - 1)
    zs = -Z + dz * np.arange(nz)

    ex, exx = _fd_periodic_derivs(eta_vals, dxs)
    J = (Z + eta_vals) / Z                       # d rho / d z, x only
    alpha = ex[None, :] * (1.0 + zs[:, None] / Z)  # d rho / d x
    beta = alpha / J[None, :]
    beta_z = ex[None, :] / (Z * J[None, :]) * np.ones((nz, 1))
    beta_x = (1.0 + zs[:, None] / Z) * (exx[None, :] * J[None, :]
                                        - ex[None, :] ** 2 / Z) / J[None, :] ** 2

    # v_xx - 2 beta v_xz + (beta^2 + 1/J^2) v_zz - (beta_x - beta beta_z) v_z = 0
    czz = beta ** 2 + 1.0 / J[None, :] ** 2
    cz = -(beta_x - beta * beta_z)

    def idx(i, j):
        return i * nx + j

    rows, cols, data = [], [], []
    rhs = np.zeros(nz * nx)

    def add(r, c, v):
        rows.append(r)
        cols.append(c)
        data.append(v)

    for i in range(nz):
        for j in range(nx):
            r = idx(i, j)
            jm, jp = (j - 1) % nx, (j + 1) % nx
            if i == nz - 1:
                add(r, r, 1.0)
                rhs[r] = f_vals[j]
                continue
            if i == 0:
                if robin:
                    # (v_z - |D| v)(x, -Z) = 0, one-sided second order
                    add(r, idx(0, j), -3.0 / (2 * dz))
                    add(r, idx(1, j), 4.0 / (2 * dz))
                    add(r, idx(2, j), -1.0 / (2 * dz))
                else:
                    add(r, idx(0, j), -3.0 / (2 * dz))
                    add(r, idx(1, j), 4.0 / (2 * dz))
                    add(r, idx(2, j), -1.0 / (2 * dz))
                continue
            # interior 9-point stencil
            add(r, idx(i, jp), 1.0 / dxs ** 2)
            add(r, idx(i, jm), 1.0 / dxs ** 2)
            add(r, idx(i, j), -2.0 / dxs ** 2)
            b = beta[i, j]
            add(r, idx(i + 1, jp), -2.0 * b / (4 * dxs * dz))
            add(r, idx(i - 1, jm), -2.0 * b / (4 * dxs * dz))
            add(r, idx(i + 1, jm), 2.0 * b / (4 * dxs * dz))
            add(r, idx(i - 1, jp), 2.0 * b / (4 * dxs * dz))
            add(r, idx(i + 1, j), czz[i, j] / dz ** 2 + cz[i, j] / (2 * dz))
            add(r, idx(i - 1, j), czz[i, j] / dz ** 2 - cz[i, j] / (2 * dz))
            add(r, idx(i, j), -2.0 * czz[i, j] / dz ** 2)

    A = sp.coo_matrix((data, (rows, cols)), shape=(nz * nx, nz * nx)).tocsr()
    if robin:
        D = _absd_matrix(nx, length)
        bottom = sp.coo_matrix(
            (-D.flatten(),
             (np.repeat(np.arange(nx), nx), np.tile(np.arange(nx), nx))),
            shape=(nz * nx, nz * nx)).tocsr()
        A = A + bottom
    v = spla.spsolve(A.tocsc(), rhs).reshape(nz, nx)

    # G = -eta_x phi_x + phi_y at the interface, one-sided second order in z
    vz_top = (3.0 * v[-1] - 4.0 * v[-2] + v[-3]) / (2 * dz)
    vx_top = (np.roll(v[-1], -1) - np.roll(v[-1], 1)) / (2 * dxs)
    phi_y = vz_top / J
    phi_x = vx_top - (ex / J) * vz_top
    return phi_y - ex * phi_x


def oracle_dn(eta: Field, f: Field, geometry=InfiniteDepth(), nx=None, nz=None,
              depth=None, richardson=True) -> Field:
    """Finite-difference reference value for G^-(eta) f.

    With ``richardson`` the solve is repeated at half the spacing and
    extrapolated, giving better than second-order accuracy.
    """
    grid = eta.grid
    if nx is None:
        nx = 2 * grid.n
    if nz is None:
        nz = nx + 1
    if depth is None:
        depth = 2.5 * grid.length
    length = grid.length

    def run(nx_, nz_):
        xs = np.arange(nx_) * (length / nx_)
        ev = _sample(eta, xs)
        fv = _sample(f, xs)
        return _oracle_solve(ev, fv, geometry, nx_, nz_, depth, length)

    g_f = run(nx, nz)
    if richardson:
        g_c = run(nx // 2, (nz - 1) // 2 + 1)
        g_f = g_f.copy()
        g_f[::2] = (4.0 * g_f[::2] - g_c) / 3.0
        # refit the odd nodes from the corrected even ones is unnecessary:
        # return on the coarse x-grid of the input field instead
    return _project(grid, g_f, length)


def _sample(field: Field, xs):
    """Evaluate a grid field at arbitrary points by its Fourier series."""
    c = np.fft.fft(field.values) / field.grid.n
    k = field.grid.wavenumbers
    # drop the unpaired Nyquist mode for off-grid evaluation
    c = c.copy()
    c[field.grid.n // 2] = 0.0
    return np.real(np.exp(1j * np.outer(xs, k)) @ c)


def _project(grid: PeriodicGrid, vals, length):
    """Restrict oracle output (on its own uniform grid) onto ``grid`` nodes."""
    nxo = len(vals)
    if nxo == grid.n:
        return Field(grid, vals)
    if nxo % grid.n == 0:
        return Field(grid, vals[:: nxo // grid.n])
    # trigonometric interpolation as a fallback
    c = np.fft.fft(vals) / nxo
    k = 2.0 * np.pi * np.fft.fftfreq(nxo, d=length / nxo)
    xs = grid.nodes
    return Field(grid, np.real(np.exp(1j * np.outer(xs, k)) @ c))
