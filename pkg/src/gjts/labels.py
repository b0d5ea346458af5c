"""Labels of the ten Peirce components."""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple

__all__ = ["ComponentLabel", "LABEL_ORDER", "EIGEN_PAIRS"]


class ComponentLabel(NamedTuple):
    lam: Fraction
    mu: Fraction
    sign: str | None = None

    @property
    def name(self) -> str:
        def f(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return f"U[{f(self.lam)},{f(self.mu)}]{self.sign or ''}"

    def sort_key(self):
        return (self.lam, self.mu, {"+": 0, None: 0, "-": 1}[self.sign])

    def to_json(self) -> dict:
        def f(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {"lambda": f(self.lam), "mu": f(self.mu), "sign": self.sign}


_F = Fraction
U_MHALF_0 = ComponentLabel(_F(-1, 2), _F(0))
U00 = ComponentLabel(_F(0), _F(0))
U01 = ComponentLabel(_F(0), _F(1))
U_HALF_HALF = ComponentLabel(_F(1, 2), _F(1, 2))
U_HALF_2 = ComponentLabel(_F(1, 2), _F(2))
U11P = ComponentLabel(_F(1), _F(1), "+")
U11M = ComponentLabel(_F(1), _F(1), "-")
U13P = ComponentLabel(_F(1), _F(3), "+")
U13M = ComponentLabel(_F(1), _F(3), "-")
U_32_32 = ComponentLabel(_F(3, 2), _F(3, 2))

# ascending (lambda, mu, sign) with + before -
LABEL_ORDER = (U_MHALF_0, U00, U01, U_HALF_HALF, U_HALF_2, U11P, U11M, U13P, U13M, U_32_32)

# the eight simultaneous eigenvalue pairs of L and R
EIGEN_PAIRS = tuple(sorted({(lab.lam, lab.mu) for lab in LABEL_ORDER}))

# labels that vanish for weakly commutative systems
WEAK_VANISHING = (U_32_32, U_MHALF_0, U_HALF_2, U13P)

# the four labels of a left unit, in graded-basis order
LEFT_UNIT_LABELS = (U11P, U11M, U13P, U13M)
