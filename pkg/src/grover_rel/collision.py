"""Relativistic elastic collision of a heavy and a light ball, and the wall.

Energy and momentum conservation, rewritten in the Doppler variables
``alpha_i``, become::

    M a1  + a2  = M a1'  + a2'        (S, sum of alphas)
    M/a1  + 1/a2 = M/a1' + 1/a2'      (T, sum of inverse alphas)

Eliminating ``a1'`` leaves a quadratic in ``a2'`` whose coefficients are
``A = T``, ``B = -(M (a1/a2 + a2/a1) + 2)``, ``C = S``.  One root is the
trivial ``a2' = a2`` (no interaction), so the physical root follows from the
product of roots, ``a2' = C / (A a2)``, with no discriminant to lose digits
in.  Simplifying gives both outgoing alphas as one common factor::

    r   = (M a1 + a2) / (M a2 + a1)
    a2' = a1 r,    a1' = a2 r

i.e. each ball's rapidity is reflected through the centre-of-momentum
rapidity.  States are held as rapidities (``log alpha``) and ``log r`` is
evaluated as ``log1p((M - 1) expm1(d) / (M + exp(d)))`` with ``d`` the
closing rapidity, which is accurate for grazing and ultra-relativistic
collisions alike.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import NamedTuple

from grover_rel.backend import STANDARD, ScalarBackend
from grover_rel.kinematics import (DomainError, alpha_from_rapidity,
                                   rapidity_from_alpha,
                                   rapidity_from_velocity,
                                   velocity_from_rapidity)


class NoApproachError(ValueError):
    """The balls are not closing, so no collision takes place."""


class WallBounceError(ValueError):
    """The ball is not moving toward the wall."""


@dataclass(frozen=True)
class AlphaState:
    """Heavy ball (mass ``mass_ratio``) and light ball (mass 1).

    Stored as rapidities; ``a_big``/``a_small`` and the velocities are views.
    """

    rapidity_big: object
    rapidity_small: object
    mass_ratio: object
    backend: ScalarBackend = STANDARD

    def __post_init__(self):
        b = self.backend
        object.__setattr__(self, "rapidity_big", b.num(self.rapidity_big))
        object.__setattr__(self, "rapidity_small", b.num(self.rapidity_small))
        object.__setattr__(self, "mass_ratio", b.num(self.mass_ratio))
        if not self.mass_ratio >= 1:
            raise DomainError(f"mass_ratio must be >= 1, got {self.mass_ratio}")

    @classmethod
    def from_alphas(cls, a_big, a_small, mass_ratio, backend=STANDARD):
        return cls(rapidity_from_alpha(a_big, backend),
                   rapidity_from_alpha(a_small, backend), mass_ratio, backend)

    @classmethod
    def from_velocities(cls, v_big, v_small, mass_ratio, backend=STANDARD):
        return cls(rapidity_from_velocity(v_big, backend),
                   rapidity_from_velocity(v_small, backend), mass_ratio,
                   backend)

    @property
    def a_big(self):
        return alpha_from_rapidity(self.rapidity_big, self.backend)

    @property
    def a_small(self):
        return alpha_from_rapidity(self.rapidity_small, self.backend)

    @property
    def v_big(self):
        return velocity_from_rapidity(self.rapidity_big, self.backend)

    @property
    def v_small(self):
        return velocity_from_rapidity(self.rapidity_small, self.backend)


class ConservedQuantities(NamedTuple):
    S: object
    T: object
    E: object
    P: object


@dataclass(frozen=True)
class CollisionOutcome:
    state_after: AlphaState
    energy_drift: object
    momentum_drift: object


def wall_bounce(a, backend: ScalarBackend = STANDARD, check: bool = True):
    """Reflect a ball off the rigid wall: ``v -> -v``, i.e. ``a -> 1/a``."""
    a = backend.num(a)
    if check and not a > 1:
        raise WallBounceError(f"ball with alpha={a} is not moving toward "
                              "the wall")
    return 1 / a


def bounce_small(s: AlphaState) -> AlphaState:
    """Wall bounce of the light ball, in rapidity form (exact negation)."""
    if not s.rapidity_small > 0:
        raise WallBounceError("light ball is not moving toward the wall")
    return replace(s, rapidity_small=-s.rapidity_small)


def conserved_quantities(s: AlphaState) -> ConservedQuantities:
    b, m = s.backend, s.mass_ratio
    a1, a2 = s.a_big, s.a_small
    S = m * a1 + a2
    T = m / a1 + 1 / a2
    E = m * b.cosh(s.rapidity_big) + b.cosh(s.rapidity_small)
    P = m * b.sinh(s.rapidity_big) + b.sinh(s.rapidity_small)
    return ConservedQuantities(S, T, E, P)


def _energy_momentum(s: AlphaState):
    """``(E, P, sum of |p_i|)`` with one sinh/cosh per ball."""
    b, m = s.backend, s.mass_ratio
    c1, s1 = b.cosh(s.rapidity_big), b.sinh(s.rapidity_big)
    c2, s2 = b.cosh(s.rapidity_small), b.sinh(s.rapidity_small)
    return m * c1 + c2, m * s1 + s2, m * abs(s1) + abs(s2)


def log_reflection_factor(closing, mass_ratio, backend=STANDARD):
    """``log r`` for closing rapidity ``closing = log(a1) - log(a2)``."""
    b = backend
    closing, m = b.num(closing), b.num(mass_ratio)
    return b.log1p((m - 1) * b.expm1(closing) / (m + b.exp(closing)))


def _log_heavy_recoil(closing, mass_ratio, backend):
    """``log r - closing``, the heavy ball's rapidity change."""
    b = backend
    x = 2 * b.sinh(closing) / (mass_ratio + b.exp(closing))
    if abs(x) < 0.5:
        return b.log1p(-x)
    return b.log((mass_ratio + b.exp(-closing))
                 / (mass_ratio + b.exp(closing)))


def collide(s: AlphaState, require_approach: bool = True) -> CollisionOutcome:
    """Elastic collision; returns the outgoing state and conservation drift.

    ``require_approach=False`` applies the same map to a separating pair,
    which undoes a previous collision (the map is an involution).
    """
    closing = s.rapidity_big - s.rapidity_small
    if require_approach and not closing > 0:
        raise NoApproachError(
            f"heavy ball (v={s.v_big}) is not catching the light ball "
            f"(v={s.v_small})")
    log_r = log_reflection_factor(closing, s.mass_ratio, s.backend)
    # The heavy ball often leaves nearly at rest, where the sum below cancels
    # and M amplifies the lost digits; the recoil form then has tiny operands.
    recoil = _log_heavy_recoil(closing, s.mass_ratio, s.backend)
    if max(abs(s.rapidity_big), abs(recoil)) < max(abs(s.rapidity_small),
                                                   abs(log_r)):
        big_after = s.rapidity_big + recoil
    else:
        big_after = s.rapidity_small + log_r
    after = replace(s, rapidity_big=big_after,
                    rapidity_small=s.rapidity_big + log_r)

    e0, p0, p_scale = _energy_momentum(s)
    e1, p1, _ = _energy_momentum(after)
    energy_drift = (e1 - e0) / e0
    # P may cancel to zero; normalise by the momentum magnitude instead
    momentum_drift = (p1 - p0) / p_scale
    return CollisionOutcome(after, energy_drift, momentum_drift)


def collide_alphas(a_big, a_small, mass_ratio, backend=STANDARD):
    """Outgoing ``(a_big', a_small')`` straight from the Vieta form."""
    b = backend
    a1, a2, m = b.num(a_big), b.num(a_small), b.num(mass_ratio)
    if not a1 > a2:
        raise NoApproachError(f"a_big={a1} must exceed a_small={a2}")
    r = (m * a1 + a2) / (m * a2 + a1)
    return a2 * r, a1 * r
