"""Grover-style energy transfer driver.

One iteration is a wall bounce of the light ball followed by a collision
with the heavy ball.  Starting with both balls at ``v0`` the light ball holds
exactly ``1/N`` of the kinetic energy; the driver iterates until that share
stops growing and reports the first maximum.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from grover_rel.backend import STANDARD, ScalarBackend, get_backend
from grover_rel.collision import AlphaState, bounce_small, collide
from grover_rel.kinematics import (DomainError, kinetic_from_rapidity,
                                   rapidity_from_one_minus_velocity,
                                   rapidity_from_velocity)


class Termination(str, enum.Enum):
    FIRST_MAX_FOUND = "first_max_found"
    NO_APPROACH = "no_approach"
    SMALL_BALL_TRAPPED = "small_ball_trapped"
    ITERATION_LIMIT = "iteration_limit"
    # only produced by sweeps, for a grid point that raised
    ERROR = "error"


def default_max_iter(N) -> int:
    return 10 * math.ceil(math.pi / 4 * math.sqrt(float(N))) + 100


@dataclass(frozen=True)
class TransferConfig:
    N: object
    v0: object = None
    one_minus_v0: object = None
    backend: ScalarBackend = STANDARD
    max_iter: Optional[int] = None
    record_trajectory: bool = False

    def __post_init__(self):
        b = get_backend(self.backend)
        object.__setattr__(self, "backend", b)
        object.__setattr__(self, "N", b.num(self.N))
        if not self.N >= 2:
            raise DomainError(f"N must be >= 2, got {self.N}")
        if (self.v0 is None) == (self.one_minus_v0 is None):
            raise ValueError("give exactly one of v0 / one_minus_v0")
        if self.v0 is not None:
            object.__setattr__(self, "v0", b.num(self.v0))
            if not 0 < self.v0 < 1:
                raise DomainError(f"v0 must lie in (0, 1), got {self.v0}")
        else:
            object.__setattr__(self, "one_minus_v0", b.num(self.one_minus_v0))
            if not 0 < self.one_minus_v0 < 1:
                raise DomainError("one_minus_v0 must lie in (0, 1), got "
                                  f"{self.one_minus_v0}")
        if self.max_iter is None:
            object.__setattr__(self, "max_iter", default_max_iter(self.N))
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")

    @property
    def initial_rapidity(self):
        if self.v0 is not None:
            return rapidity_from_velocity(self.v0, self.backend)
        return rapidity_from_one_minus_velocity(self.one_minus_v0, self.backend)

    @property
    def velocity(self):
        """``v0`` in backend precision, whichever form was supplied."""
        if self.v0 is not None:
            return self.v0
        return 1 - self.one_minus_v0


@dataclass(frozen=True)
class TrajectoryPoint:
    """State after ``k`` collisions (``k = 0`` is the initial state).

    Drift columns are running sums of the per-collision relative drifts.
    """

    k: int
    state: object
    K1_fraction: object
    K2_fraction: object
    energy_drift_cumulative: object
    momentum_drift_cumulative: object


@dataclass(frozen=True)
class TransferOutcome:
    steps_to_max: int
    max_fraction: object
    termination: Termination
    big_ball_reversed: bool
    trajectory: Optional[tuple] = None


class TransferStop(Exception):
    def __init__(self, reason: Termination):
        self.reason = reason


def run_protocol(state, step: Callable, fractions: Callable, max_iter: int,
                 big_reversed: Callable, record: bool) -> TransferOutcome:
    """Iterate ``step`` until the light ball's energy share stops growing.

    ``step(state)`` performs one bounce+collision and returns
    ``(state, energy_drift, momentum_drift)``, or raises ``TransferStop``.  The
    collision that first fails to increase the share is the look-ahead that
    certifies the maximum; on an exact tie the earlier step wins.
    """
    trajectory = [] if record else None
    e_cum = p_cum = 0
    f1, best = fractions(state)
    reversed_ = big_reversed(state)
    if record:
        trajectory.append(TrajectoryPoint(0, state, f1, best, e_cum, p_cum))

    def finish(steps, reason):
        return TransferOutcome(steps, best, reason, reversed_,
                               tuple(trajectory) if record else None)

    for k in range(1, max_iter + 1):
        try:
            state, e_drift, p_drift = step(state)
        except TransferStop as stop:
            return finish(k - 1, stop.reason)
        e_cum += e_drift
        p_cum += p_drift
        reversed_ = reversed_ or big_reversed(state)
        f1, f2 = fractions(state)
        if record:
            trajectory.append(TrajectoryPoint(k, state, f1, f2, e_cum, p_cum))
        if not f2 > best:
            return finish(k - 1, Termination.FIRST_MAX_FOUND)
        best = f2
    return finish(max_iter, Termination.ITERATION_LIMIT)


def kinetic_fractions(state: AlphaState, K_T):
    b = state.backend
    K_T = b.num(K_T)
    if not K_T > 0:
        raise DomainError(f"total kinetic energy must be positive, got {K_T}")
    K1 = kinetic_from_rapidity(state.rapidity_big, state.mass_ratio, b)
    K2 = kinetic_from_rapidity(state.rapidity_small, 1, b)
    return K1 / K_T, K2 / K_T


def total_kinetic(N, rapidity0, backend: ScalarBackend = STANDARD):
    """``N (gamma0 - 1)``: both balls start at the same speed."""
    return backend.num(N) * kinetic_from_rapidity(rapidity0, 1, backend)


def _relativistic_step(state: AlphaState):
    if not state.rapidity_small > 0:
        raise TransferStop(Termination.SMALL_BALL_TRAPPED)
    state = bounce_small(state)
    if not state.rapidity_big > state.rapidity_small:
        raise TransferStop(Termination.NO_APPROACH)
    out = collide(state)
    return out.state_after, out.energy_drift, out.momentum_drift


def run_transfer(cfg: TransferConfig) -> TransferOutcome:
    b = cfg.backend
    phi0 = cfg.initial_rapidity
    state = AlphaState(phi0, phi0, cfg.N - 1, b)
    K_T = total_kinetic(cfg.N, phi0, b)
    return run_protocol(
        state, _relativistic_step,
        lambda s: kinetic_fractions(s, K_T),
        cfg.max_iter,
        lambda s: s.rapidity_big < 0,
        cfg.record_trajectory,
    )


def simulate(N, v0=None, one_minus_v0=None, precision="standard",
             max_iter=None, record_trajectory=False) -> TransferOutcome:
    """Convenience wrapper around :func:`run_transfer`."""
    return run_transfer(TransferConfig(
        N, v0, one_minus_v0, get_backend(precision), max_iter,
        record_trajectory))
