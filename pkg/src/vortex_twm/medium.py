"""Steady-state response of the symmetry-broken ladder medium.

The two driven coherences obey linear equations of motion with constant
drives,

    d rho31/dt = -(gamma31 + i delta) rho31 + (i/2) probe_s_total + (i/2) control rho21
    d rho21/dt = -gamma21 rho21        + (i/2) probe_p_total + (i/2) conj(control) rho31

where probe_p_total and probe_s_total are the summed same-frequency
amplitudes on each transition (input probe plus the mixing-generated field
it is indistinguishable from).  ``steady_coherences`` returns the exact
fixed point of this 2x2 linear system; ``evolve_coherences`` integrates the
same system in time and serves as its independent oracle.

All rates, detunings, and Rabi amplitudes are in units of gamma31.  Every
function accepts scalars or broadcastable numpy arrays for the drive
arguments.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateMediumError, InvalidConfigError, StepSizeError

__all__ = [
    "MediumParams",
    "CoherencePair",
    "y_factor",
    "beta_factor",
    "steady_coherences",
    "steady_decomposition",
    "evolve_coherences",
]


@dataclass(frozen=True)
class MediumParams:
    """Decay rates, shared detuning, lumped optical depth, medium length.

    delta is the common detuning of the control and s-frequency fields; the
    p-frequency field is on resonance by construction.  d lumps the optical
    depths of both channels (depth times decay rate, one constant for both).
    The zero-decay limit is admitted for conservation tests but is only
    meaningful where the control amplitude is nonzero; the degenerate case
    is rejected when encountered downstream.
    """

    gamma31: float
    gamma21: float
    delta: float
    d: float
    length: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.gamma31) or self.gamma31 < 0:
            raise InvalidConfigError(f"medium.gamma31 must be >= 0, got {self.gamma31!r}")
        if not np.isfinite(self.gamma21) or self.gamma21 < 0:
            raise InvalidConfigError(f"medium.gamma21 must be >= 0, got {self.gamma21!r}")
        if not np.isfinite(self.delta):
            raise InvalidConfigError(f"medium.delta must be finite, got {self.delta!r}")
        if not np.isfinite(self.d) or self.d <= 0:
            raise InvalidConfigError(f"medium.d must be > 0, got {self.d!r}")
        if self.length != 1.0:
            raise InvalidConfigError(f"medium.length is normalized to 1, got {self.length!r}")


@dataclass
class CoherencePair:
    """The two driven density-matrix elements (scalars or arrays)."""

    rho31: complex
    rho21: complex


def y_factor(p: MediumParams, control):
    """Response denominator gamma21*(gamma31 + i delta) + |control|^2 / 4.

    Depends on the control only through its magnitude.
    """
    c2 = np.abs(control) ** 2
    return p.gamma21 * (p.gamma31 + 1j * p.delta) + 0.25 * c2


def beta_factor(p: MediumParams, control):
    """Principal sqrt of |control|^2 - (i delta + gamma31 - gamma21)^2.

    Consumers must use beta only through the even combinations cos(beta x)
    and sin(beta x)/beta, so the branch choice is observationally
    irrelevant (and tested as such).
    """
    c2 = np.abs(control) ** 2
    return np.sqrt(c2 - (1j * p.delta + p.gamma31 - p.gamma21) ** 2 + 0j)


def _checked_y(p: MediumParams, control):
    y = y_factor(p, control)
    if np.any(y == 0):
        raise DegenerateMediumError(
            "response denominator Y = 0 (zero decays with zero control amplitude)"
        )
    return y


def steady_coherences(p: MediumParams, control, probe_p_total, probe_s_total) -> CoherencePair:
    """Exact fixed point of the coherence equations of motion.

    rho31 = [ i gamma21 (probe_s_total)/2 - control (probe_p_total)/4 ] / Y
    rho21 = [ i (gamma31 + i delta)(probe_p_total)/2 - conj(control) (probe_s_total)/4 ] / Y

    The cross terms pair each coherence with the opposite-frequency drive
    through one control photon; this is the pairing required by the 2x2
    solve (see steady_decomposition for the split).
    """
    y = _checked_y(p, control)
    rho31 = (0.5j * p.gamma21 * probe_s_total - 0.25 * control * probe_p_total) / y
    rho21 = (
        0.5j * (p.gamma31 + 1j * p.delta) * probe_p_total
        - 0.25 * np.conj(control) * probe_s_total
    ) / y
    return CoherencePair(rho31=rho31, rho21=rho21)


def steady_decomposition(p: MediumParams, control, probe_p_total, probe_s_total):
    """Split each steady coherence into direct-drive and mixing parts.

    Returns (direct, mixing) where direct holds the first-order response of
    each transition to its own drive and mixing holds the second-order term
    carrying one control photon: the rho31 mixing term is proportional to
    control * probe_p_total and the rho21 one to conj(control) *
    probe_s_total.  direct + mixing equals steady_coherences exactly.
    """
    y = _checked_y(p, control)
    direct = CoherencePair(
        rho31=0.5j * p.gamma21 * probe_s_total / y,
        rho21=0.5j * (p.gamma31 + 1j * p.delta) * probe_p_total / y,
    )
    mixing = CoherencePair(
        rho31=-0.25 * control * probe_p_total / y,
        rho21=-0.25 * np.conj(control) * probe_s_total / y,
    )
    return direct, mixing


def _is_scalar(*vals) -> bool:
    return all(np.ndim(v) == 0 for v in vals)


def evolve_coherences(
    p: MediumParams,
    control,
    probe_p_total,
    probe_s_total,
    initial: CoherencePair,
    t_end: float,
    dt: float,
) -> CoherencePair:
    """Classical 4th-order time integration of the coherence equations.

    Integrates from the given initial pair to t_end with uniform steps no
    larger than dt (the count is rounded up so t_end is hit exactly).  The
    step guard dt * max(rates, |delta|, |control|) <= 0.1 keeps the scheme
    well inside its stability region.
    """
    if not dt > 0:
        raise StepSizeError(f"dt must be positive, got {dt!r}")
    if t_end < 0:
        raise StepSizeError(f"t_end must be >= 0, got {t_end!r}")
    scale = max(p.gamma31, p.gamma21, abs(p.delta), float(np.max(np.abs(control))))
    if dt * scale > 0.1:
        raise StepSizeError(
            f"dt={dt} too large for fastest rate {scale} (need dt*rate <= 0.1)"
        )
    if t_end == 0:
        return CoherencePair(rho31=initial.rho31, rho21=initial.rho21)

    steps = max(1, math.ceil(t_end / dt - 1e-12))
    h = t_end / steps
    g31d = -(p.gamma31 + 1j * p.delta)
    g21 = -p.gamma21

    if _is_scalar(control, probe_p_total, probe_s_total, initial.rho31, initial.rho21):
        # plain complex arithmetic, an order of magnitude faster than
        # 0-d numpy for the long per-draw convergence runs
        c = complex(control)
        cc = c.conjugate()
        ds = 0.5j * complex(probe_s_total)
        dp = 0.5j * complex(probe_p_total)
        a = complex(g31d)
        b = complex(g21)
        r31 = complex(initial.rho31)
        r21 = complex(initial.rho21)
        hc = 0.5j * c
        hcc = 0.5j * cc
        for _ in range(steps):
            k1a = a * r31 + ds + hc * r21
            k1b = b * r21 + dp + hcc * r31
            y31 = r31 + 0.5 * h * k1a
            y21 = r21 + 0.5 * h * k1b
            k2a = a * y31 + ds + hc * y21
            k2b = b * y21 + dp + hcc * y31
            y31 = r31 + 0.5 * h * k2a
            y21 = r21 + 0.5 * h * k2b
            k3a = a * y31 + ds + hc * y21
            k3b = b * y21 + dp + hcc * y31
            y31 = r31 + h * k3a
            y21 = r21 + h * k3b
            k4a = a * y31 + ds + hc * y21
            k4b = b * y21 + dp + hcc * y31
            r31 = r31 + (h / 6.0) * (k1a + 2.0 * (k2a + k3a) + k4a)
            r21 = r21 + (h / 6.0) * (k1b + 2.0 * (k2b + k3b) + k4b)
        return CoherencePair(rho31=r31, rho21=r21)

    c = np.asarray(control, dtype=complex)
    cc = np.conj(c)
    ds = 0.5j * np.asarray(probe_s_total, dtype=complex)
    dp = 0.5j * np.asarray(probe_p_total, dtype=complex)
    r31 = np.asarray(initial.rho31, dtype=complex) + np.zeros_like(c)
    r21 = np.asarray(initial.rho21, dtype=complex) + np.zeros_like(c)

    def rhs(u, v):
        return g31d * u + ds + 0.5j * c * v, g21 * v + dp + 0.5j * cc * u

    for _ in range(steps):
        k1a, k1b = rhs(r31, r21)
        k2a, k2b = rhs(r31 + 0.5 * h * k1a, r21 + 0.5 * h * k1b)
        k3a, k3b = rhs(r31 + 0.5 * h * k2a, r21 + 0.5 * h * k2b)
        k4a, k4b = rhs(r31 + h * k3a, r21 + h * k3b)
        r31 = r31 + (h / 6.0) * (k1a + 2.0 * (k2a + k3a) + k4a)
        r21 = r21 + (h / 6.0) * (k1b + 2.0 * (k2b + k3b) + k4b)
    return CoherencePair(rho31=r31, rho21=r21)
