"""One-dimensional relativistic kinematics in normalized units (c = 1).

The Doppler variable ``alpha = sqrt((1 + v) / (1 - v))`` is multiplicative
under velocity composition; its logarithm is the rapidity.  Conversions come
in two flavours:

* ``*_alpha`` functions take and return alpha itself;
* ``*_rapidity`` functions work on ``log(alpha)``, which keeps full relative
  precision both as ``v -> 0`` (alpha is 1 + tiny) and as ``v -> 1``.

All functions accept an optional :class:`~grover_rel.backend.ScalarBackend`
and are pure.
"""

from __future__ import annotations

from grover_rel.backend import STANDARD, ScalarBackend


class DomainError(ValueError):
    """An argument lies outside the domain of a kinematic conversion."""


def _positive_alpha(a, backend: ScalarBackend):
    a = backend.num(a)
    if not a > 0:
        raise DomainError(f"alpha must be positive, got {a}")
    return a


def alpha_from_velocity(v, backend: ScalarBackend = STANDARD):
    v = backend.num(v)
    if not -1 < v < 1:
        raise DomainError(f"|v| must be < 1, got {v}")
    return backend.sqrt((1 + v) / (1 - v))


def alpha_from_one_minus_velocity(x, backend: ScalarBackend = STANDARD):
    """Alpha for ``v = 1 - x`` without ever forming ``v``.

    Near the speed of light ``1 - v`` is the informative quantity; passing it
    directly avoids the cancellation in ``1 - (1 - x)``.
    """
    x = backend.num(x)
    if not 0 < x <= 1:
        raise DomainError(f"1 - v must lie in (0, 1], got {x}")
    return backend.sqrt((2 - x) / x)


def velocity_from_alpha(a, backend: ScalarBackend = STANDARD):
    a = _positive_alpha(a, backend)
    a2 = a * a
    return (a2 - 1) / (a2 + 1)


def gamma_from_alpha(a, backend: ScalarBackend = STANDARD):
    a = _positive_alpha(a, backend)
    return (a + 1 / a) / 2


def momentum_factor_from_alpha(a, backend: ScalarBackend = STANDARD):
    """``gamma * v``; factored so ``a - 1`` is exact when ``a`` is near 1."""
    a = _positive_alpha(a, backend)
    return (a - 1) * (a + 1) / (2 * a)


def kinetic_from_alpha(a, mass, backend: ScalarBackend = STANDARD):
    """``mass * (gamma - 1)`` in the cancellation-free form."""
    a = _positive_alpha(a, backend)
    mass = backend.num(mass)
    if not mass > 0:
        raise DomainError(f"mass must be positive, got {mass}")
    d = a - 1
    return mass * d * d / (2 * a)


# -- rapidity views ---------------------------------------------------------

def rapidity_from_velocity(v, backend: ScalarBackend = STANDARD):
    v = backend.num(v)
    if not -1 < v < 1:
        raise DomainError(f"|v| must be < 1, got {v}")
    return backend.atanh(v)


def rapidity_from_one_minus_velocity(x, backend: ScalarBackend = STANDARD):
    x = backend.num(x)
    if not 0 < x <= 1:
        raise DomainError(f"1 - v must lie in (0, 1], got {x}")
    # log((2 - x) / x) / 2, split so the small-x end keeps every digit
    return (backend.log(2 - x) - backend.log(x)) / 2


def rapidity_from_alpha(a, backend: ScalarBackend = STANDARD):
    return backend.log(_positive_alpha(a, backend))


def alpha_from_rapidity(phi, backend: ScalarBackend = STANDARD):
    return backend.exp(backend.num(phi))


def velocity_from_rapidity(phi, backend: ScalarBackend = STANDARD):
    return backend.tanh(backend.num(phi))


def gamma_from_rapidity(phi, backend: ScalarBackend = STANDARD):
    return backend.cosh(backend.num(phi))


def momentum_factor_from_rapidity(phi, backend: ScalarBackend = STANDARD):
    return backend.sinh(backend.num(phi))


def kinetic_from_rapidity(phi, mass=1, backend: ScalarBackend = STANDARD):
    # cosh(phi) - 1 == 2 sinh(phi/2)**2
    s = backend.sinh(backend.num(phi) / 2)
    return backend.num(mass) * 2 * s * s
