"""Actuator parameters and the plant / closed-loop frequency models.

All quantities live in joint space (SI units).  The drivetrain maps the
linear spring and the motor-side electrical constant into joint space:

    joint stiffness   k    = linear spring stiffness * pulley radius^2
    current-to-torque beta = efficiency * gear reduction * torque constant
                              * pulley radius

Every construction function returns an immutable FrequencyModel; delays
are carried exactly and never rationalized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numpy.polynomial import polynomial as P

from .frequency import (
    FrequencyModel,
    constant,
    delay,
    differentiator,
    first_order_lowpass,
    rational,
)


class ParameterError(ValueError):
    """A physical parameter is outside its admissible domain."""


def _require_positive(name: str, value: float) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value <= 0:
        raise ParameterError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def _require_nonnegative(name: str, value: float) -> float:
    if not (isinstance(value, (int, float)) and math.isfinite(value)) or value < 0:
        raise ParameterError(f"{name} must be a nonnegative finite number, got {value!r}")
    return float(value)


@dataclass(frozen=True)
class ActuatorParams:
    """Physical constants of the motor / spring / load chain.

    ``joint_stiffness`` and ``current_to_torque`` are derived; use
    :func:`derive_joint_space` to build a consistent instance from raw
    drivetrain data.
    """

    spring_stiffness_linear: float   # N/m
    pulley_radius: float             # m
    motor_inertia: float             # kg m^2, joint-reflected
    motor_damping: float             # N m s/rad, joint-reflected
    joint_inertia: float             # kg m^2
    joint_damping: float             # N m s/rad, may be 0
    gear_reduction: float            # motor rad per actuator m
    pulley_reduction: float
    ballscrew_lead: float            # m/rev
    drivetrain_efficiency: float     # in (0, 1]
    motor_torque_constant: float     # N m/A
    joint_stiffness: float = field(default=0.0)    # N m/rad, derived
    current_to_torque: float = field(default=0.0)  # N m/A, derived

    def __post_init__(self):
        for name in (
            "spring_stiffness_linear", "pulley_radius", "motor_inertia",
            "motor_damping", "joint_inertia", "gear_reduction",
            "pulley_reduction", "ballscrew_lead", "motor_torque_constant",
        ):
            _require_positive(name, getattr(self, name))
        _require_nonnegative("joint_damping", self.joint_damping)
        eff = self.drivetrain_efficiency
        if not (0.0 < eff <= 1.0):
            raise ParameterError(f"drivetrain_efficiency must be in (0, 1], got {eff!r}")


def derive_joint_space(params: ActuatorParams) -> ActuatorParams:
    """Populate the joint-space constants from the raw drivetrain fields."""
    k = params.spring_stiffness_linear * params.pulley_radius**2
    beta = (
        params.drivetrain_efficiency
        * params.gear_reduction
        * params.motor_torque_constant
        * params.pulley_radius
    )
    return replace(params, joint_stiffness=k, current_to_torque=beta)


@dataclass(frozen=True)
class ControllerGains:
    """The four cascaded gains, with their design provenance."""

    k_q: float      # N m/rad, position stiffness
    b_q: float      # N m s/rad, velocity damping
    k_tau: float    # A/N m, torque proportional
    b_tau: float    # A s/N m, torque derivative
    natural_frequency_hz: float | None = None
    gain_scale: float = 1.0

    def __post_init__(self):
        for name in ("k_q", "b_q", "k_tau", "b_tau"):
            _require_nonnegative(name, getattr(self, name))
        _require_positive("gain_scale", self.gain_scale)
        if self.natural_frequency_hz is not None:
            _require_positive("natural_frequency_hz", self.natural_frequency_hz)


@dataclass(frozen=True)
class LoopTiming:
    """Loop delays, filter cutoffs and servo timing.

    Filter cutoffs of ``None`` mean the corresponding first-order filter
    is replaced by an exact unity gain.
    """

    t_tau: float = 0.0               # s, torque-loop delay
    t_qs: float = 0.0                # s, stiffness-loop delay
    t_qd: float = 0.0                # s, damping-loop delay
    f_qd: float | None = None        # Hz, velocity filter cutoff
    f_taud: float | None = None      # Hz, torque-derivative filter cutoff
    sample_period: float = 1e-3      # s
    extra_delay: float = 0.0         # s

    def __post_init__(self):
        for name in ("t_tau", "t_qs", "t_qd", "extra_delay"):
            _require_nonnegative(name, getattr(self, name))
        _require_positive("sample_period", self.sample_period)
        for name in ("f_qd", "f_taud"):
            v = getattr(self, name)
            if v is not None:
                _require_positive(name, v)

    @property
    def velocity_filter_time_constant(self) -> float:
        """1/(2*pi*f_qd); 0.0 when the filter is off."""
        return 0.0 if self.f_qd is None else 1.0 / (2.0 * math.pi * self.f_qd)

    @property
    def torque_filter_time_constant(self) -> float:
        return 0.0 if self.f_taud is None else 1.0 / (2.0 * math.pi * self.f_taud)


# Bench actuator constants used throughout the examples and tests.
UT_SEA = derive_joint_space(ActuatorParams(
    spring_stiffness_linear=350_000.0,
    pulley_radius=0.025,
    motor_inertia=0.225,
    motor_damping=1.375,
    joint_inertia=0.014,
    joint_damping=0.1,
    gear_reduction=8_377.6,
    pulley_reduction=4.0,
    ballscrew_lead=0.003,
    drivetrain_efficiency=0.9,
    motor_torque_constant=0.0276,
))

EXAMPLE_TIMING = LoopTiming(
    t_tau=0.5e-3, t_qs=2e-3, t_qd=0.5e-3, f_qd=50.0, f_taud=100.0,
)


def _check_derived(params: ActuatorParams) -> ActuatorParams:
    if params.joint_stiffness <= 0 or params.current_to_torque <= 0:
        raise ParameterError(
            "joint_stiffness/current_to_torque not populated; "
            "run derive_joint_space first"
        )
    return params


def load_plant(params: ActuatorParams) -> FrequencyModel:
    """Joint position per spring torque: 1 / (I_j s^2 + b_j s)."""
    p = _check_derived(params)
    return rational([1.0], [0.0, p.joint_damping, p.joint_inertia])


def deflection_ratio(params: ActuatorParams) -> FrequencyModel:
    """Spring deflection per motor angle: (I_j s^2 + b_j s) / (I_j s^2 + b_j s + k)."""
    p = _check_derived(params)
    load = [0.0, p.joint_damping, p.joint_inertia]
    return rational(load, P.polyadd(load, [p.joint_stiffness]))


def sea_plant(params: ActuatorParams) -> FrequencyModel:
    """Spring torque per motor current, as a single rational function.

    Clearing the deflection ratio from

        beta * r(s) * k / (I_m s^2 + b_m s + r(s) k)

    leaves a common factor of s which is cancelled analytically, giving a
    numerator beta*k*(I_j s + b_j) over a cubic denominator.
    """
    p = _check_derived(params)
    k, beta = p.joint_stiffness, p.current_to_torque
    load_lin = np.array([p.joint_damping, p.joint_inertia])       # I_j s + b_j
    motor_lin = np.array([p.motor_damping, p.motor_inertia])      # I_m s + b_m
    load_spring = np.array([p.joint_stiffness, p.joint_damping, p.joint_inertia])
    num = beta * k * load_lin
    den = P.polyadd(P.polymul(np.concatenate(([0.0], motor_lin)), load_spring),
                    k * load_lin)
    return rational(num, den)


def torque_compensator(gains: ControllerGains, timing: LoopTiming) -> FrequencyModel:
    """PD torque compensator K_tau + B_tau * Q_taud * s."""
    q = first_order_lowpass(timing.f_taud)
    return constant(gains.k_tau) + constant(gains.b_tau) * q * differentiator()


def torque_closed_loop(
    params: ActuatorParams, gains: ControllerGains, timing: LoopTiming
) -> FrequencyModel:
    """Closed torque loop: spring torque per desired torque."""
    p = _check_derived(params)
    pf = sea_plant(p)
    c = torque_compensator(gains, timing)
    feedforward = constant(1.0 / p.current_to_torque)
    return pf * (feedforward + c) / (constant(1.0) + pf * c * delay(timing.t_tau))


def impedance_feedback(gains: ControllerGains, timing: LoopTiming) -> FrequencyModel:
    """Outer feedback path: delayed damping and stiffness terms."""
    q = first_order_lowpass(timing.f_qd)
    damping = delay(timing.t_qd) * constant(gains.b_q) * q * differentiator()
    stiffness = delay(timing.t_qs) * constant(gains.k_q)
    return damping + stiffness


def open_loop(
    params: ActuatorParams, gains: ControllerGains, timing: LoopTiming
) -> FrequencyModel:
    """Loop gain L(s) whose 1 + L is the closed-loop denominator."""
    return torque_closed_loop(params, gains, timing) * load_plant(params) \
        * impedance_feedback(gains, timing)


def closed_loop(
    params: ActuatorParams, gains: ControllerGains, timing: LoopTiming
) -> FrequencyModel:
    """Joint position per desired position, delays kept exact."""
    pc_pl = torque_closed_loop(params, gains, timing) * load_plant(params)
    return constant(gains.k_q) * pc_pl / (
        constant(1.0) + pc_pl * impedance_feedback(gains, timing)
    )


def closed_loop_polynomials(
    params: ActuatorParams, gains: ControllerGains
) -> tuple[np.ndarray, np.ndarray]:
    """Delay-free, filter-free closed loop as an explicit (num, den) pair.

    The denominator is the quartic whose coefficients, divided by the
    leading one, the gain design criterion pins to the critically damped
    target.  Coefficients ascend in power.
    """
    p = _check_derived(params)
    k, beta = p.joint_stiffness, p.current_to_torque
    im, bm = p.motor_inertia, p.motor_damping
    ij, bj = p.joint_inertia, p.joint_damping
    kq, bq, kt, bt = gains.k_q, gains.b_q, gains.k_tau, gains.b_tau
    torq = 1.0 + beta * kt
    den = np.array([
        torq * kq,
        bj * torq + bm + beta * bt * kq + torq * bq,
        ij * torq + im + bj * beta * bt + beta * bt * bq + bj * bm / k,
        (ij * bm + im * bj) / k + ij * beta * bt,
        im * ij / k,
    ])
    num = np.array([kq * torq, kq * beta * bt])
    return num, den
