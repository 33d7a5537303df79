"""Model parameters for the two-speed transport system on (-1/2, 1/2).

The only parameter that matters for the dynamics is the nondimensional
speed S > 0.  It may optionally be derived from a dimensional triple
(gamma, mu, L) via S = gamma / (mu * L).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class ModelParams:
    S: float
    gamma: Optional[float] = None
    mu: Optional[float] = None
    L: Optional[float] = None

    def __post_init__(self):
        if not self.S > 0:
            raise ValueError(f"S must be positive, got {self.S}")
        dims = (self.gamma, self.mu, self.L)
        if any(d is not None for d in dims):
            if any(d is None for d in dims):
                raise ValueError("gamma, mu, L must be given together")
            derived = self.gamma / (self.mu * self.L)
            if abs(derived - self.S) > 1e-12 * abs(self.S):
                raise ValueError(
                    f"S={self.S} inconsistent with gamma/(mu*L)={derived}"
                )

    @classmethod
    def from_dimensional(cls, gamma: float, mu: float, L: float) -> "ModelParams":
        return cls(S=gamma / (mu * L), gamma=gamma, mu=mu, L=L)
