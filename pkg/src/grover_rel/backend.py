"""Scalar precision backends.

Every simulation runs under exactly one backend. The standard backend is
IEEE binary64 through :mod:`math`; the extended backend is a private
:class:`mpmath.MPContext` so its working precision never leaks into (or is
changed by) other users of mpmath in the same process.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

from mpmath.ctx_mp import MPContext
from mpmath.libmp import to_str

EXTENDED_DIGITS = 40


@dataclass(frozen=True)
class ScalarBackend:
    name: str
    digits: int
    emit_digits: int
    lib: Any = field(repr=False, compare=False)
    _convert: Callable[[Any], Any] = field(repr=False, compare=False)

    def num(self, x):
        """Coerce ``x`` (int, float, str or backend number) into this backend.

        Strings are parsed at full backend precision, so ``"2e-6"`` is exact
        to the working precision on the extended backend.
        """
        return self._convert(x)

    # Thin forwards; both math and MPContext expose the same names.
    def sqrt(self, x):
        return self.lib.sqrt(x)

    def exp(self, x):
        return self.lib.exp(x)

    def log(self, x):
        return self.lib.log(x)

    def log10(self, x):
        return self.lib.log10(x)

    def expm1(self, x):
        return self.lib.expm1(x)

    def log1p(self, x):
        return self.lib.log1p(x)

    def sinh(self, x):
        return self.lib.sinh(x)

    def cosh(self, x):
        return self.lib.cosh(x)

    def tanh(self, x):
        return self.lib.tanh(x)

    def atanh(self, x):
        return self.lib.atanh(x)

    @property
    def pi(self):
        return self.num(self.lib.pi)

    def format(self, x) -> str:
        """Scientific notation with a fixed number of significant digits."""
        if self.name == "standard":
            return f"{float(x):.{self.emit_digits - 1}e}"
        x = self.num(x)
        return to_str(x._mpf_, self.emit_digits, strip_zeros=False,
                      min_fixed=1, max_fixed=0,
                      show_zero_exponent=True)


def _make_extended(digits: int) -> ScalarBackend:
    ctx = MPContext()
    ctx.dps = digits
    return ScalarBackend("extended", digits, 34, ctx, ctx.mpf)


STANDARD = ScalarBackend("standard", 15, 17, math, float)
EXTENDED = _make_extended(EXTENDED_DIGITS)

BACKENDS = {"standard": STANDARD, "extended": EXTENDED}


def get_backend(name: str | ScalarBackend) -> ScalarBackend:
    if isinstance(name, ScalarBackend):
        return name
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown precision {name!r}; "
                         f"choose from {sorted(BACKENDS)}") from None
