"""Per-pixel channel propagation and output-field composition.

Two decoupled 2x2 linear systems describe how each weak probe converts
into its frequency-mixed partner while riding the strong control field.
With the per-channel optical depths lumped into one constant d, both
systems share the prefactor i d / (2 L):

  s-channel, state (omega_s, omega_fp):
      d omega_s /dz  = (i d / 2L) [ i gamma21 omega_s / (2Y) - control omega_fp / (4Y) ]
      d omega_fp/dz  = (i d / 2L) [ i (gamma31 + i delta) omega_fp / (2Y)
                                    - conj(control) omega_s / (4Y) ]
  p-channel, state (omega_p, omega_fs): the same structure with gamma21 and
  (gamma31 + i delta) exchanged and the control conjugation on the other leg.

z is the distance travelled along each channel's own direction of
propagation, normalized to the medium length L = 1.  The two probes enter
from opposite faces, so when composing face values the s-channel quantities
evaluated at travel distance L sit at the laboratory z = 0 face and vice
versa.

``solve_channel_s`` and ``solve_channel_p`` evaluate the closed-form
solutions (matrix exponential of the constant-coefficient system);
``integrate_channel_numeric`` integrates the same systems with a classical
4th-order scheme and is the independent oracle for them.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .beams import ComplexField
from .errors import GridMismatchError, InvalidConfigError, StepCountError
from .medium import MediumParams, beta_factor, _checked_y

__all__ = [
    "ChannelState",
    "OutputFields",
    "solve_channel_s",
    "solve_channel_p",
    "integrate_channel_numeric",
    "output_fields",
    "resultant_at",
]

# below this the direct sin(beta x)/beta quotient loses accuracy to 0/0
SERIES_SWITCH = 1e-4


@dataclass
class ChannelState:
    """Primary and generated amplitudes of one channel at travel distance z."""

    primary: np.ndarray
    generated: np.ndarray
    z: float


@dataclass
class OutputFields:
    """Composed resultant fields plus their constituents at both faces.

    omega_d lives at the laboratory z = 0 face (the p-probe frequency);
    omega_u at the z = L face (the s-probe frequency).  The *_out fields
    are the four propagated constituents at their exit faces; the *_in
    fields are the entry-face boundary values (at which the generated
    fields are identically zero).
    """

    omega_d: ComplexField
    omega_u: ComplexField
    omega_s_out: ComplexField
    omega_fp_out: ComplexField
    omega_p_out: ComplexField
    omega_fs_out: ComplexField
    omega_p_in: ComplexField
    omega_s_in: ComplexField


def _check_z(p: MediumParams, z: float) -> float:
    if not 0.0 <= z <= p.length:
        raise InvalidConfigError(f"z must lie in [0, {p.length}], got {z!r}")
    return float(z)


def _channel_factors(p: MediumParams, control, z: float):
    """Shared factors cos(beta x)*damp and (sin(beta x)/beta)*damp.

    x = d z / (8 Y L), damp = exp(-x (i delta + gamma31 + gamma21)).  Both
    factors are assembled from the two mode exponentials
    exp(+-i beta x - x Gamma), whose real exponents are non-positive for a
    passive medium; evaluating cos and damp separately instead would
    overflow (and cancel catastrophically) at large d with weak control.
    Where |beta x| < SERIES_SWITCH the sin quotient is replaced by its
    series x (1 - (beta x)^2/6 + (beta x)^4/120), which covers the
    beta -> 0 pixels exactly.
    """
    y = _checked_y(p, control)
    beta = beta_factor(p, control)
    x = (p.d * z) / (8.0 * y * p.length)
    bx = beta * x
    xg = x * (1j * p.delta + p.gamma31 + p.gamma21)
    mode_plus = np.exp(1j * bx - xg)
    mode_minus = np.exp(-1j * bx - xg)
    cos_damp = 0.5 * (mode_plus + mode_minus)
    small = np.abs(bx) < SERIES_SWITCH
    bx2 = bx * bx
    series = x * (1.0 - bx2 / 6.0 + bx2 * bx2 / 120.0) * np.exp(-xg)
    with np.errstate(invalid="ignore", divide="ignore"):
        direct = (mode_plus - mode_minus) / np.where(small, 1.0, 2j * beta)
    sinc_damp = np.where(small, series, direct)
    return cos_damp, sinc_damp


def solve_channel_s(p: MediumParams, control, s0, z: float) -> ChannelState:
    """Closed-form s-channel state at travel distance z.

    primary   = s0 [cos(beta x) - (gamma21 - gamma31 - i delta) sin(beta x)/beta] damp
    generated = -i conj(control) s0 sin(beta x)/beta damp
    """
    z = _check_z(p, z)
    cos_damp, sinc_damp = _channel_factors(p, control, z)
    coeff = p.gamma21 - p.gamma31 - 1j * p.delta
    primary = s0 * (cos_damp - coeff * sinc_damp)
    generated = -1j * np.conj(control) * s0 * sinc_damp
    return ChannelState(primary=primary, generated=generated, z=z)


def solve_channel_p(p: MediumParams, control, p0, z: float) -> ChannelState:
    """Closed-form p-channel state at travel distance z.

    Same structure as the s-channel with the sin coefficient sign flipped,
    (gamma31 + i delta - gamma21), and the generated field carrying the
    control itself rather than its conjugate.
    """
    z = _check_z(p, z)
    cos_damp, sinc_damp = _channel_factors(p, control, z)
    coeff = p.gamma31 + 1j * p.delta - p.gamma21
    primary = p0 * (cos_damp - coeff * sinc_damp)
    generated = -1j * control * p0 * sinc_damp
    return ChannelState(primary=primary, generated=generated, z=z)


def integrate_channel_numeric(
    p: MediumParams, control, boundary, channel: str, steps: int
) -> ChannelState:
    """4th-order numeric integration of one channel from z = 0 to z = L.

    Integrates the coupled amplitude equations as stated in the module
    docstring, independently of the closed forms, starting from
    (boundary, 0).  Used as the oracle for solve_channel_*.
    """
    if channel not in ("s", "p"):
        raise InvalidConfigError(f"channel must be 's' or 'p', got {channel!r}")
    if not isinstance(steps, (int, np.integer)) or steps < 100:
        raise StepCountError(f"steps must be an integer >= 100, got {steps!r}")

    y = _checked_y(p, control)
    pre = 0.5j * p.d / p.length
    if channel == "s":
        a11 = pre * 0.5j * p.gamma21 / y
        a12 = pre * -0.25 * control / y
        a21 = pre * -0.25 * np.conj(control) / y
        a22 = pre * 0.5j * (p.gamma31 + 1j * p.delta) / y
    else:
        a11 = pre * 0.5j * (p.gamma31 + 1j * p.delta) / y
        a12 = pre * -0.25 * np.conj(control) / y
        a21 = pre * -0.25 * control / y
        a22 = pre * 0.5j * p.gamma21 / y

    h = p.length / steps
    u = np.asarray(boundary, dtype=complex).copy()
    v = np.zeros_like(u)

    for _ in range(int(steps)):
        k1u = a11 * u + a12 * v
        k1v = a21 * u + a22 * v
        u2 = u + 0.5 * h * k1u
        v2 = v + 0.5 * h * k1v
        k2u = a11 * u2 + a12 * v2
        k2v = a21 * u2 + a22 * v2
        u3 = u + 0.5 * h * k2u
        v3 = v + 0.5 * h * k2v
        k3u = a11 * u3 + a12 * v3
        k3v = a21 * u3 + a22 * v3
        u4 = u + h * k3u
        v4 = v + h * k3v
        k4u = a11 * u4 + a12 * v4
        k4v = a21 * u4 + a22 * v4
        u = u + (h / 6.0) * (k1u + 2.0 * (k2u + k3u) + k4u)
        v = v + (h / 6.0) * (k1v + 2.0 * (k2v + k3v) + k4v)
    return ChannelState(primary=u, generated=v, z=p.length)


def _shared_grid(*fields: ComplexField):
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid is not grid and not f.grid.same_as(grid):
            raise GridMismatchError("control and probe fields must share one grid")
    return grid


def output_fields(
    p: MediumParams,
    control_field: ComplexField,
    probe_p: ComplexField,
    probe_s: ComplexField,
) -> OutputFields:
    """Propagate both channels across the medium and compose the outputs.

    The resultant field at each exit face superposes the boundary probe
    entering there with the counter-propagating generated field arriving
    there after a full traversal:

        omega_d (z = 0 face) = probe_p boundary + omega_fp at travel L
        omega_u (z = L face) = probe_s boundary + omega_fs at travel L
    """
    grid = _shared_grid(control_field, probe_p, probe_s)
    s = solve_channel_s(p, control_field.values, probe_s.values, p.length)
    q = solve_channel_p(p, control_field.values, probe_p.values, p.length)
    return OutputFields(
        omega_d=ComplexField(grid, probe_p.values + s.generated),
        omega_u=ComplexField(grid, probe_s.values + q.generated),
        omega_s_out=ComplexField(grid, s.primary),
        omega_fp_out=ComplexField(grid, s.generated),
        omega_p_out=ComplexField(grid, q.primary),
        omega_fs_out=ComplexField(grid, q.generated),
        omega_p_in=ComplexField(grid, probe_p.values.copy()),
        omega_s_in=ComplexField(grid, probe_s.values.copy()),
    )


def resultant_at(
    p: MediumParams,
    control_field: ComplexField,
    probe_p: ComplexField,
    probe_s: ComplexField,
    z: float,
):
    """Resultant superpositions at an interior laboratory plane z.

    omega_d(z) pairs the p-probe at travel z with the generated
    difference-frequency field at travel L - z, and omega_u(z) the mirror
    composition.  At z = 0 and z = L these reduce to the face outputs.
    Interior planes are exposed for inspection; only the faces carry the
    measurement claims.
    """
    z = _check_z(p, z)
    grid = _shared_grid(control_field, probe_p, probe_s)
    s_state = solve_channel_s(p, control_field.values, probe_s.values, p.length - z)
    p_state = solve_channel_p(p, control_field.values, probe_p.values, z)
    omega_d = ComplexField(grid, p_state.primary + s_state.generated)
    omega_u = ComplexField(grid, s_state.primary + p_state.generated)
    return omega_d, omega_u
