"""Grover-style kinetic energy transfer between two balls at relativistic speeds."""

from grover_rel.backend import EXTENDED, STANDARD, ScalarBackend, get_backend
from grover_rel.classical import (ClassicalState, classical_collide,
                                  classical_transfer)
from grover_rel.collision import (AlphaState, CollisionOutcome,
                                  NoApproachError, WallBounceError, collide,
                                  conserved_quantities, wall_bounce)
from grover_rel.kinematics import (DomainError, alpha_from_one_minus_velocity,
                                   alpha_from_velocity, gamma_from_alpha,
                                   kinetic_from_alpha,
                                   momentum_factor_from_alpha,
                                   velocity_from_alpha)
from grover_rel.sweep import (SweepRecord, SweepSpec, classical_asymptote,
                              predict_breakpoints,
                              predict_single_step_velocity, run_sweep)
from grover_rel.transfer import (Termination, TransferConfig, TransferOutcome,
                                 TrajectoryPoint, kinetic_fractions,
                                 run_transfer, simulate)

__version__ = "0.1.0"
