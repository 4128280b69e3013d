"""Pure numpy implementations of the hot kernels (fallback for _ckernels)."""

import numpy as np

BLOWUP = 1e8


def second_difference(u, inv_h2):
    return (np.roll(u, -1) - 2.0 * u + np.roll(u, 1)) * inv_h2


def lffd_run(u_prev, u_curr, nsteps, a, b, c):
    """Advance u^{n+1} = 2u^n - u^{n-1} + a*D2(u^n) - b*u^n - c*(u^n)^3.

    ``a`` multiplies the raw neighbour difference u_{j+1} - 2u_j + u_{j-1}.
    Returns (u_prev, u_curr, steps_done, blown).
    """
    up = np.array(u_prev, dtype=float)
    uc = np.array(u_curr, dtype=float)
    for k in range(nsteps):
        un = 2.0 * uc - up + a * (np.roll(uc, -1) - 2.0 * uc + np.roll(uc, 1)) - b * uc - c * (uc * uc * uc)
        up, uc = uc, un
        m = np.max(np.abs(uc))
        if not m <= BLOWUP:
            return up, uc, k + 1, True
    return up, uc, nsteps, False


def cubic_kick(v, u, c):
    """v <- v - c u^3 in place."""
    v -= c * (u * u * u)
    return v


def li2_potential(zr0, zi0, zr1, zi1, alpha, beta, chi0, chi1, tau, lam):
    """Exponential trapezoidal step for the 2x2 potential flow, in place on
    (alpha, beta).  The averaged matrix is traceless, so
    exp(M) = cosh(s) I + sinh(s)/s M with s^2 = -det M."""
    k = -0.75 * lam * tau  # (tau/2) * (-3 lam / 2)
    m11 = k * (2 * zr0 * zi0 + 2 * zr1 * zi1)
    m12 = k * (zr0**2 + 3 * zi0**2 + zr1**2 + 3 * zi1**2)
    m21 = k * (-3 * zr0**2 - zi0**2 - 3 * zr1**2 - zi1**2)
    s2 = m11 * m11 + m12 * m21  # = -det M for traceless M
    s = np.sqrt(np.abs(s2))
    small = s < 1e-6
    ss = np.where(small, 1.0, s)
    hyp = s2 > 0
    c_ = np.where(hyp, np.cosh(s), np.cos(s))
    f_ = np.where(hyp, np.sinh(ss) / ss, np.sin(ss) / ss)
    c_ = np.where(small, 1.0 + 0.5 * s2, c_)
    f_ = np.where(small, 1.0 + s2 / 6.0, f_)
    h = 0.5 * tau
    a1 = alpha + h * chi0.imag
    b1 = beta - h * chi0.real
    alpha[:] = c_ * a1 + f_ * (m11 * a1 + m12 * b1) + h * chi1.imag
    beta[:] = c_ * b1 + f_ * (m21 * a1 - m11 * b1) - h * chi1.real
    return alpha, beta
