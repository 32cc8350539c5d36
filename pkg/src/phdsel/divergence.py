"""Divergences between probability vectors on a common partition.

The penalized Hellinger distance keeps the squared-root-difference terms on
occupied cells and charges ``h * q_i`` on cells with zero observed
frequency; with ``h = 1`` it coincides with the ordinary Hellinger distance
because (0 - sqrt(q))^2 = q.  Gradients are analytic; finite differences are
used only as a test oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .cells import as_prob_vector
from .errors import DegenerateGradient, InvalidInput, InvalidParameter


def check_penalty_weight(h: float) -> float:
    if not (np.isfinite(h) and h > 0.0):
        raise InvalidParameter(f"penalty weight must be > 0, got {h!r}")
    return float(h)


@dataclass(frozen=True)
class PhiKernel:
    """Convex kernel for a phi-divergence sum(q_i * phi(p_i / q_i)).

    ``limit_slope`` is lim phi(u)/u as u -> inf, used for the convention
    0 * phi(p/0) = p * limit_slope.
    """

    name: str
    phi: Callable[[float], float]
    limit_slope: float

    def __post_init__(self):
        if abs(self.phi(1.0)) > 1e-12:
            raise InvalidInput(f"kernel {self.name!r} must satisfy phi(1) = 0")
        # convexity spot check on a grid: midpoint below chord
        grid = np.linspace(0.05, 5.0, 25)
        for a, b in zip(grid, grid[1:]):
            mid = self.phi(0.5 * (a + b))
            if mid > 0.5 * (self.phi(a) + self.phi(b)) + 1e-12:
                raise InvalidInput(f"kernel {self.name!r} fails convexity at [{a}, {b}]")


def _phi_hellinger(x: float) -> float:
    return -4.0 * (math.sqrt(x) - 0.5 * (x + 1.0))


def _phi_kl_modified(x: float) -> float:
    if x == 0.0:
        return math.inf
    return -math.log(x) + x - 1.0


HELLINGER_KERNEL = PhiKernel(name="hellinger", phi=_phi_hellinger, limit_slope=2.0)
KL_MODIFIED_KERNEL = PhiKernel(name="kl_modified", phi=_phi_kl_modified, limit_slope=1.0)


def _pair(p, q) -> tuple[np.ndarray, np.ndarray]:
    P, Q = as_prob_vector(p), as_prob_vector(q)
    if P.size != Q.size:
        raise InvalidInput(f"length mismatch: {P.size} vs {Q.size}")
    return P, Q


def phi_divergence(p, q, kernel: PhiKernel) -> float:
    """sum(q_i * phi(p_i/q_i)) with the usual zero conventions."""
    P, Q = _pair(p, q)
    total = 0.0
    for pi, qi in zip(P, Q):
        if qi > 0.0:
            total += qi * kernel.phi(pi / qi)
        elif pi > 0.0:
            total += pi * kernel.limit_slope
        # qi == pi == 0 contributes 0
    return total


def hellinger(p, q) -> float:
    """Ordinary (squared-type) Hellinger distance 2 sum (sqrt p - sqrt q)^2,
    symmetric, with range [0, 4]."""
    P, Q = _pair(p, q)
    return float(2.0 * np.sum((np.sqrt(P) - np.sqrt(Q)) ** 2))


def penalized_hellinger(phat, ptheta, h: float) -> float:
    """Penalized Hellinger distance with empty-cell weight ``h``.

    Occupied cells (observed frequency > 0) contribute
    2 (sqrt phat_i - sqrt q_i)^2; empty cells contribute 2 h q_i.
    """
    h = check_penalty_weight(h)
    P, Q = _pair(phat, ptheta)
    occupied = P > 0.0
    fit = np.sum((np.sqrt(P[occupied]) - np.sqrt(Q[occupied])) ** 2)
    penalty = h * np.sum(Q[~occupied])
    return float(2.0 * (fit + penalty))


def kl_modified(ptheta, phat) -> float:
    """Modified Kullback-Leibler divergence of the model from the observed
    frequencies; +inf when the model puts zero mass on an occupied cell.

    Minimizing over the model parameter is the grouped-data maximum
    likelihood problem.
    """
    Q, P = _pair(ptheta, phat)  # Q = model, P = observed
    total = 0.0
    for qi, pi in zip(Q, P):
        if pi > 0.0:
            if qi == 0.0:
                return math.inf
            total += pi * math.log(pi / qi) + qi - pi
        else:
            total += qi  # limit_slope of -log x + x - 1 is 1
    return total


def grad_phd_first(phat, ptheta, h: float) -> np.ndarray:
    """Gradient of the penalized Hellinger distance in its first argument.

    Entries on empty cells are 0 by convention: the occupied/empty split is
    held fixed at the evaluation point and the penalty does not depend on
    the observed frequencies there.
    """
    h = check_penalty_weight(h)
    P, Q = _pair(phat, ptheta)
    grad = np.zeros_like(P)
    occ = P > 0.0
    grad[occ] = 2.0 * (1.0 - np.sqrt(Q[occ] / P[occ]))
    return grad


def grad_phd_second(phat, ptheta, h: float, floor: float | None = None) -> np.ndarray:
    """Gradient of the penalized Hellinger distance in its second argument.

    Occupied cells give 2 (1 - sqrt(phat_i / q_i)); empty cells give 2h.
    A zero model probability on an occupied cell raises DegenerateGradient
    unless ``floor`` is given, in which case q_i is floored at that value.
    """
    h = check_penalty_weight(h)
    P, Q = _pair(phat, ptheta)
    occ = P > 0.0
    if floor is None:
        if np.any(occ & (Q == 0.0)):
            raise DegenerateGradient(
                "model probability is 0 on an occupied cell; pass floor= to clip"
            )
        Qeff = Q
    else:
        Qeff = np.maximum(Q, floor)
    grad = np.full_like(P, 2.0 * h)
    grad[occ] = 2.0 * (1.0 - np.sqrt(P[occ] / Qeff[occ]))
    return grad
