"""Shannon entropy of finite, possibly sub-probabilistic, mass distributions.

All logarithms are base 2. A distribution does not need to sum to one; its
total mass ``||p||`` enters the bounds below explicitly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# masses below this are treated as exactly zero
MASS_FLOOR = 1e-300


@dataclass(frozen=True)
class MassDistribution:
    """Non-negative weights over an outcome space of size ``support_bound``.

    ``support_bound=None`` means the ambient space is unbounded (countable).
    """

    masses: np.ndarray
    support_bound: int | None = None

    def __post_init__(self):
        m = np.asarray(self.masses, dtype=float).ravel()
        if m.size and (np.isnan(m).any() or m.min() < 0):
            raise ValueError("masses must be non-negative numbers")
        m = np.where(m < MASS_FLOOR, 0.0, m)
        m.flags.writeable = False
        object.__setattr__(self, "masses", m)
        if self.support_bound is not None:
            r = int(self.support_bound)
            if r < 1:
                raise ValueError("support_bound must be a positive integer")
            if np.count_nonzero(m) > r:
                raise ValueError(
                    f"{np.count_nonzero(m)} positive masses exceed support_bound={r}"
                )
            object.__setattr__(self, "support_bound", r)

    @classmethod
    def uniform(cls, r: int, total: float = 1.0) -> MassDistribution:
        return cls(np.full(r, total / r), r)

    def total_mass(self) -> float:
        return math.fsum(self.masses)

    def __len__(self):
        return self.masses.size


def point_entropy(c: float) -> float:
    """``-c log2 c`` with the convention ``H(0) = 0``."""
    if c < 0 or math.isnan(c):
        raise ValueError(f"point_entropy needs c >= 0, got {c}")
    if c < MASS_FLOOR or c == 1.0:
        return 0.0
    return -c * math.log2(c)


def _entropy_terms(masses: np.ndarray) -> np.ndarray:
    m = masses[masses > 0]
    return -m * np.log2(m)


def shannon_entropy(p: MassDistribution) -> float:
    return math.fsum(_entropy_terms(p.masses))


def max_entropy_for_mass(total: float, r: int) -> float:
    """Largest entropy of mass ``total`` spread over ``r`` outcomes."""
    if total <= 0:
        return 0.0
    return total * (math.log2(r) - math.log2(total))


def entropy_max_bound(p: MassDistribution) -> float:
    """Upper bound ``||p|| log2 r + H(||p||)``, attained by the uniform spread."""
    if p.support_bound is None:
        raise NotImplementedError("entropy_max_bound needs a finite support_bound")
    return max_entropy_for_mass(p.total_mass(), p.support_bound)


def entropy_difference_bound(p: MassDistribution, q: MassDistribution) -> float:
    """Bound on ``|H(p + q) - H(p)|`` for a non-negative perturbation ``q``.

    Returns the smaller of ``H(p) + H(||p||) + H(||q||) + ||q|| log2 r`` and
    ``2 |log2(e inf p)| ||q||``. The second branch is infinite when some listed
    mass of ``p`` is zero. With an unbounded support the first branch is
    infinite as well.

    Note
    ----
    The second branch is only a valid bound when ``inf p`` is small. Near
    ``inf p = 1/e`` it collapses to zero while the entropy still moves, see
    :func:`perturbed_entropy_change` for a way to measure the actual change.
    """
    if p.support_bound != q.support_bound:
        raise ValueError(
            f"support bounds differ: {p.support_bound} vs {q.support_bound}"
        )
    p_total, q_total = p.total_mass(), q.total_mass()
    if p.support_bound is None:
        first = math.inf
    else:
        first = (
            shannon_entropy(p)
            + point_entropy(p_total)
            + point_entropy(q_total)
            + q_total * math.log2(p.support_bound)
        )
    if len(p) == 0 or p.masses.min() <= 0:
        second = math.inf
    else:
        second = 2.0 * abs(math.log2(math.e * float(p.masses.min()))) * q_total
    return min(first, second)


def perturbed_entropy_change(p: MassDistribution, q: MassDistribution) -> float:
    """``|H(p + q) - H(p)|`` with ``q`` aligned to the first atoms of ``p``."""
    n = max(len(p), len(q))
    a = np.zeros(n)
    b = np.zeros(n)
    a[: len(p)] = p.masses
    b[: len(q)] = q.masses
    return abs(
        math.fsum(_entropy_terms(a + b)) - math.fsum(_entropy_terms(a))
    )
