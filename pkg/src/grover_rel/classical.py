"""Newtonian elastic collisions and the classical transfer baseline.

This engine shares nothing numerical with the relativistic one: velocities
are plain floats and the collision is the textbook closed form.  It is the
independent reference for the low-speed limit.
"""

from __future__ import annotations

from dataclasses import dataclass

from grover_rel.collision import NoApproachError
from grover_rel.kinematics import DomainError
from grover_rel.transfer import (Termination, TransferOutcome, TransferStop,
                                 default_max_iter, run_protocol)


@dataclass(frozen=True)
class ClassicalState:
    v_big: float
    v_small: float
    mass_ratio: float

    def __post_init__(self):
        if not self.mass_ratio >= 1:
            raise DomainError(f"mass_ratio must be >= 1, got {self.mass_ratio}")


def classical_collide(s: ClassicalState) -> ClassicalState:
    m, v1, v2 = s.mass_ratio, s.v_big, s.v_small
    if not v1 > v2:
        raise NoApproachError(f"v_big={v1} must exceed v_small={v2}")
    return ClassicalState(((m - 1) * v1 + 2 * v2) / (m + 1),
                          (2 * m * v1 - (m - 1) * v2) / (m + 1), m)


def classical_energy(s: ClassicalState) -> float:
    return 0.5 * s.mass_ratio * s.v_big ** 2 + 0.5 * s.v_small ** 2


def classical_momentum(s: ClassicalState) -> float:
    return s.mass_ratio * s.v_big + s.v_small


def _step(s: ClassicalState):
    if not s.v_small > 0:
        raise TransferStop(Termination.SMALL_BALL_TRAPPED)
    s = ClassicalState(s.v_big, -s.v_small, s.mass_ratio)
    if not s.v_big > s.v_small:
        raise TransferStop(Termination.NO_APPROACH)
    after = classical_collide(s)
    e0, p0 = classical_energy(s), classical_momentum(s)
    e_drift = (classical_energy(after) - e0) / e0
    p_scale = s.mass_ratio * abs(s.v_big) + abs(s.v_small)
    p_drift = (classical_momentum(after) - p0) / p_scale
    return after, e_drift, p_drift


def classical_transfer(N: float, v0: float, max_iter: int | None = None,
                       record_trajectory: bool = False) -> TransferOutcome:
    """Classical counterpart of :func:`grover_rel.transfer.run_transfer`."""
    N, v0 = float(N), float(v0)
    if not N >= 2:
        raise DomainError(f"N must be >= 2, got {N}")
    if not v0 > 0:
        raise DomainError(f"v0 must be positive, got {v0}")
    if max_iter is None:
        max_iter = default_max_iter(N)
    k_total = 0.5 * N * v0 * v0

    def fractions(s):
        return (0.5 * s.mass_ratio * s.v_big ** 2 / k_total,
                0.5 * s.v_small ** 2 / k_total)

    return run_protocol(ClassicalState(v0, v0, N - 1), _step, fractions,
                        max_iter, lambda s: s.v_big < 0, record_trajectory)
