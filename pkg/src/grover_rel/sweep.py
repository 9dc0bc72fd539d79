"""Parameter sweeps over (N, v0) and the closed-form reference predictions."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from grover_rel.backend import STANDARD, ScalarBackend, get_backend
from grover_rel.classical import classical_transfer
from grover_rel.kinematics import DomainError
from grover_rel.transfer import (Termination, TransferConfig,
                                 TransferOutcome, run_transfer)

# Initial speeds used for the steps-vs-N figure family.
REFERENCE_VELOCITIES = (0.001, 0.01, 0.05, 0.1, 0.3, 0.8)

# Below this N the single-step formula (derived for N >> 1) is extrapolated.
SINGLE_STEP_VALID_N = 100


class Speed(NamedTuple):
    """An initial speed, given either as ``v0`` or as ``1 - v0``."""

    value: object
    one_minus: bool = False

    @classmethod
    def parse(cls, text: str) -> "Speed":
        """``"0.3"`` is a speed; ``"1-2e-6"`` is ``1 - v0`` = 2e-6."""
        text = text.strip()
        if text.startswith("1-"):
            return cls(text[2:], True)
        return cls(text, False)

    def v0(self, backend: ScalarBackend = STANDARD):
        x = backend.num(self.value)
        return 1 - x if self.one_minus else x


class SingleStepPrediction(NamedTuple):
    v0: object
    one_minus_v0: object
    extrapolated: bool


class Breakpoints(NamedTuple):
    v0_b: object
    M_b: object


def predict_single_step_velocity(N, backend: ScalarBackend = STANDARD):
    """Initial speed at which one collision transfers (almost) everything.

    Returns ``1 - 2/N**2`` together with its one-minus form, which is the one
    to feed back into a simulation at large N.
    """
    N = backend.num(N)
    if not N >= 2:
        raise DomainError(f"N must be >= 2, got {N}")
    one_minus = 2 / (N * N)
    return SingleStepPrediction(1 - one_minus, one_minus,
                                N < SINGLE_STEP_VALID_N)


def predict_breakpoints(v0=None, M=None, backend: ScalarBackend = STANDARD):
    """Where the quartic correction to the heavy ball's kinetic energy
    equals the light ball's classical kinetic energy.

    ``v0_b = 2/sqrt(3 M)`` for a given mass ratio, ``M_b = 4/(3 v0**2)`` for
    a given speed.
    """
    if v0 is None and M is None:
        raise ValueError("give v0, M, or both")
    v0_b = M_b = None
    if M is not None:
        M = backend.num(M)
        if not M >= 1:
            raise DomainError(f"M must be >= 1, got {M}")
        v0_b = 2 / backend.sqrt(3 * M)
    if v0 is not None:
        v0 = backend.num(v0)
        if not 0 < v0 < 1:
            raise DomainError(f"v0 must lie in (0, 1), got {v0}")
        M_b = 4 / (3 * v0 * v0)
    return Breakpoints(v0_b, M_b)


def classical_asymptote(N, backend: ScalarBackend = STANDARD):
    N = backend.num(N)
    if not N >= 2:
        raise DomainError(f"N must be >= 2, got {N}")
    return backend.pi / 4 * backend.sqrt(N)


@dataclass(frozen=True)
class SweepSpec:
    N_values: Sequence
    v0_values: Sequence[Speed]
    backend: ScalarBackend = STANDARD
    include_classical_baseline: bool = False

    def __post_init__(self):
        b = get_backend(self.backend)
        object.__setattr__(self, "backend", b)
        speeds = tuple(s if isinstance(s, Speed) else Speed(s)
                       for s in self.v0_values)
        object.__setattr__(self, "v0_values", speeds)
        object.__setattr__(self, "N_values", tuple(self.N_values))
        if not self.N_values or not speeds:
            raise ValueError("N_values and v0_values must be non-empty")
        ns = [b.num(n) for n in self.N_values]
        vs = [s.v0(b) for s in speeds]
        for name, xs in (("N_values", ns), ("v0_values", vs)):
            if any(not x < y for x, y in zip(xs, xs[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if ns[0] < 2:
            raise DomainError("every N must be >= 2")


@dataclass(frozen=True)
class SweepRecord:
    N: object
    v0: object
    steps_to_max: Optional[int]
    max_fraction: object
    classical_steps: Optional[int]
    asymptote: object
    v0_ss: object
    M_b: object
    termination: str
    big_ball_reversed: bool


def record_from_outcome(cfg: TransferConfig, out: TransferOutcome,
                        classical_steps: Optional[int] = None) -> SweepRecord:
    b = cfg.backend
    v0 = cfg.velocity
    return SweepRecord(
        N=cfg.N, v0=v0, steps_to_max=out.steps_to_max,
        max_fraction=out.max_fraction, classical_steps=classical_steps,
        asymptote=classical_asymptote(cfg.N, b),
        v0_ss=predict_single_step_velocity(cfg.N, b).v0,
        M_b=_breakpoint_mass(v0, b),
        termination=out.termination.value,
        big_ball_reversed=out.big_ball_reversed)


def _breakpoint_mass(v0, b: ScalarBackend):
    # a one-minus speed may round to exactly 1; use the v0 -> 1 limit there
    if v0 == 1:
        return b.num(4) / 3
    return predict_breakpoints(v0=v0, backend=b).M_b


def evaluate_point(N, speed: Speed, backend: ScalarBackend = STANDARD,
                   classical: bool = False) -> SweepRecord:
    """Simulate one grid point; failures are recorded, not raised."""
    b = backend
    N = b.num(N)
    classical_steps = None
    if classical:
        # classical step counts do not depend on v0
        classical_steps = classical_transfer(float(N), 1.0).steps_to_max
    if speed.one_minus:
        cfg = TransferConfig(N, one_minus_v0=speed.value, backend=b)
    else:
        cfg = TransferConfig(N, v0=speed.value, backend=b)
    try:
        out = run_transfer(cfg)
    except (ValueError, ArithmeticError):
        out = TransferOutcome(None, None, Termination.ERROR, False)
    return record_from_outcome(cfg, out, classical_steps)


def _portable(x):
    # private-context mpf instances do not pickle; ship the raw mantissa form
    return ("mpf", x._mpf_) if hasattr(x, "_mpf_") else x


def _restore(x, backend: ScalarBackend):
    if isinstance(x, tuple) and x and x[0] == "mpf":
        return backend.lib.make_mpf(x[1])
    return x


_NUMERIC = ("N", "v0", "max_fraction", "asymptote", "v0_ss", "M_b")


def _worker(args):
    N, speed, backend_name, classical = args
    b = get_backend(backend_name)
    speed = Speed(_restore(speed.value, b), speed.one_minus)
    rec = evaluate_point(_restore(N, b), speed, b, classical)
    d = dict(rec.__dict__)
    for k in _NUMERIC:
        d[k] = _portable(d[k])
    return d


def run_sweep(spec: SweepSpec, jobs: int = 1) -> list[SweepRecord]:
    """One record per (N, v0), ordered by N then v0 whatever ``jobs`` is."""
    points = [(n, s) for n in spec.N_values for s in spec.v0_values]
    b = spec.backend
    if jobs <= 1 or len(points) <= 1:
        return [evaluate_point(n, s, b, spec.include_classical_baseline)
                for n, s in points]
    args = [(_portable(n), Speed(_portable(s.value), s.one_minus), b.name,
             spec.include_classical_baseline) for n, s in points]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        raw = list(pool.map(_worker, args))
    records = []
    for d in raw:
        for k in _NUMERIC:
            d[k] = _restore(d[k], b)
        records.append(SweepRecord(**d))
    return records


def log_spaced(start, stop, count: int, backend: ScalarBackend = STANDARD):
    """``count`` log-spaced values with exact endpoints."""
    b = backend
    start, stop = b.num(start), b.num(stop)
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return [start]
    # base-10 exponents keep decade points exact (10.0 ** 3.0 == 1000.0)
    lo, hi = b.log10(start), b.log10(stop)
    ten = b.num(10)
    inner = [ten ** (lo + (hi - lo) * i / (count - 1))
             for i in range(1, count - 1)]
    return [start, *inner, stop]


def lin_spaced(start, stop, count: int, backend: ScalarBackend = STANDARD):
    b = backend
    start, stop = b.num(start), b.num(stop)
    if count < 1:
        raise ValueError("count must be >= 1")
    if count == 1:
        return [start]
    return [start + (stop - start) * i / (count - 1) for i in range(count)]
