"""
    Copyright 2024 Contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.

    Hypothesis-testing trade-off functions of 2x2 channels and the exact
    refinement tests built on them.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from ..channel.numeric import as_float
from ..errors import NotTwoByTwo, NegativeEpsilon
from .verdict import RefinementVerdict, METHOD_TRADEOFF

logger = logging.getLogger(__name__)

# Slack of float comparisons in the 2x2 tests. Exact channels compare exactly.
FLOAT_COMPARE_TOL = 1e-12
# Below this epsilon theta_threshold returns its limit.
THETA_LIMIT_EPSILON = 1e-8

@dataclass(frozen=True)
class TradeoffPoint:
    """ Type-I and type-II errors (alpha, beta) of the most powerful test
    between the two rows of a 2x2 channel, normalized so that
    beta <= 1 - alpha.

    Parameters
    ----------
    alpha : float or Fraction
    beta : float or Fraction
    column_swapped : bool
        Whether the columns were swapped to normalize.
    """
    alpha: object
    beta: object
    column_swapped: bool = False

    def to_dict(self):
        """ JSON form. """
        return {"alpha": float(self.alpha), "beta": float(self.beta),
                "column_swapped": self.column_swapped}

def _check_2x2(C):
    if C.shape != (2, 2):
        raise NotTwoByTwo(f"Expected a 2x2 channel, got {C.rows}x{C.cols}.")

def tradeoff_point(C):
    """ The normalized trade-off point of a 2x2 channel.

    alpha = C[0, 1] and beta = C[1, 0], after swapping the columns if
    beta > 1 - alpha.

    Parameters
    ----------
    C : ChannelMatrix
        A 2x2 channel.

    Returns
    -------
    TradeoffPoint
    """
    _check_2x2(C)
    entries = C.entries
    alpha, beta = entries[0, 1], entries[1, 0]
    if beta > 1 - alpha:
        return TradeoffPoint(entries[0, 0], entries[1, 1], True)
    return TradeoffPoint(alpha, beta, False)

def _ratio(num, den):
    if den == 0:
        return math.inf if num > 0 else math.nan
    return float(num) / float(den)

def tradeoff_ratios(point):
    """ The two ratios beta / (1 - alpha) and (1 - beta) / alpha of a point.

    A zero denominator gives +inf (or NaN for 0/0).
    """
    return (_ratio(point.beta, 1 - point.alpha), _ratio(1 - point.beta, point.alpha))

class TradeoffFunction:
    """ The piecewise-linear trade-off function through (0, 1), (alpha, beta)
    and (1, 0).

    It is convex and nonincreasing and evaluated as the maximum of its
    affine pieces.

    Parameters
    ----------
    breakpoints : list of tuple
        (significance, type-II error) pairs in increasing significance,
        starting at (0, ...) and ending at (1, 0).
    """
    def __init__(self, breakpoints):
        points = [(float(a), float(b)) for a, b in breakpoints]
        assert len(points) >= 2, "A trade-off function needs at least two breakpoints."
        assert points[0][0] == 0 and points[-1] == (1.0, 0.0), \
                f"A trade-off function runs from significance 0 to (1, 0), got {points}."
        assert all(points[i][0] <= points[i + 1][0] for i in range(len(points) - 1)), \
                "Breakpoints must be ordered by significance."
        self._breakpoints = points

    @classmethod
    def from_point(cls, point):
        """ The trade-off function of a TradeoffPoint. """
        return cls([(0, 1), (point.alpha, point.beta), (1, 0)])

    @classmethod
    def from_channel(cls, C):
        """ The trade-off function of a 2x2 channel. """
        return cls.from_point(tradeoff_point(C))

    @property
    def breakpoints(self):
        """ The (significance, type-II error) breakpoints. """
        return list(self._breakpoints)

    def _pieces(self):
        pieces = []
        for (x0, y0), (x1, y1) in zip(self._breakpoints[:-1], self._breakpoints[1:]):
            if x1 > x0:
                slope = (y1 - y0) / (x1 - x0)
                pieces.append((slope, y0 - slope * x0))
        return pieces

    def __call__(self, alpha):
        alpha = np.asarray(alpha, dtype=np.float64)
        vals = np.zeros(alpha.shape)
        for slope, intercept in self._pieces():
            vals = np.maximum(vals, slope * alpha + intercept)
        return vals if vals.ndim > 0 else float(vals)

    def abscissae(self):
        """ The significance levels of the breakpoints. """
        return sorted({x for x, _ in self._breakpoints})

def tradeoff_leq(T1, T2, tol=FLOAT_COMPARE_TOL):
    """ Whether T1(alpha) <= T2(alpha) for every alpha in [0, 1].

    Both functions are piecewise linear, so comparing at the union of
    their breakpoints decides the question.
    """
    grid = np.array(sorted(set(T1.abscissae()) | set(T2.abscissae())))
    return bool(np.all(T1(grid) <= T2(grid) + tol))

def _cross_conditions(pc, pd):
    """ Margins of beta_C (1-alpha_D) <= beta_D (1-alpha_C) and
    (1-beta_C) alpha_D >= (1-beta_D) alpha_C. Nonnegative means satisfied.
    """
    first = pd.beta * (1 - pc.alpha) - pc.beta * (1 - pd.alpha)
    second = (1 - pc.beta) * pd.alpha - (1 - pd.beta) * pc.alpha
    return first, second

def _compare_tol(C, D):
    return 0 if C.exact and D.exact else FLOAT_COMPARE_TOL

def refines_2x2(C, D):
    """ Decide C ⊑ D (D is a post-processing of C) for 2x2 channels.

    With normalized points (alpha, beta), the refinement holds iff
    beta_C / (1 - alpha_C) <= beta_D / (1 - alpha_D) and
    (1 - beta_C) / alpha_C >= (1 - beta_D) / alpha_D, where division by
    zero gives +inf. The test is evaluated cross-multiplied, exactly on
    exact channels.

    Parameters
    ----------
    C : ChannelMatrix
    D : ChannelMatrix

    Returns
    -------
    RefinementVerdict : no witness; the residual is the largest violation
    of the two cross-multiplied conditions, 0 when the refinement holds.
    """
    _check_2x2(C)
    _check_2x2(D)
    pc, pd = tradeoff_point(C), tradeoff_point(D)
    if not C.exact or not D.exact:
        pc = TradeoffPoint(float(pc.alpha), float(pc.beta), pc.column_swapped)
        pd = TradeoffPoint(float(pd.alpha), float(pd.beta), pd.column_swapped)
    first, second = _cross_conditions(pc, pd)
    tol = _compare_tol(C, D)
    holds = first >= -tol and second >= -tol
    residual = max(0.0, -float(first), -float(second))
    details = {
        "left_point": pc.to_dict(),
        "right_point": pd.to_dict(),
        "left_ratios": tradeoff_ratios(pc),
        "right_ratios": tradeoff_ratios(pd),
    }
    return RefinementVerdict(bool(holds), None, 0.0 if holds else residual,
                             METHOD_TRADEOFF, details=details)

def _posterior_range(C):
    # first coordinate of the uniform-prior posterior of each possible output
    entries = C.entries if C.exact else as_float(C.entries)
    col_sums = entries.sum(axis=0)
    posts = [entries[0, y] / col_sums[y] for y in range(C.cols) if col_sums[y] > 0]
    return min(posts), max(posts)

def max_case_refines_2x2(C, D):
    """ Decide max-case refinement for 2x2 channels.

    D is a max-case refinement of C iff every posterior of D lies in the
    convex hull of the posteriors of C. For two secrets the hull is the
    interval of first coordinates under the uniform prior.

    Parameters
    ----------
    C : ChannelMatrix
    D : ChannelMatrix

    Returns
    -------
    bool
    """
    _check_2x2(C)
    _check_2x2(D)
    tol = _compare_tol(C, D)
    c_lo, c_hi = _posterior_range(C)
    d_lo, d_hi = _posterior_range(D)
    return bool(d_lo >= c_lo - tol and d_hi <= c_hi + tol)

def _theta_root(epsilon, sign):
    # [ε + 2 ln(1 + e^{-ε} ± (1 - e^{-ε/2}) sqrt(1 + e^{-ε})) - 2 ln 2] / ε
    e_neg = math.exp(-epsilon)
    inner = 1.0 + e_neg + sign * (-math.expm1(-epsilon / 2)) * math.sqrt(1.0 + e_neg)
    if inner <= 0:
        return -math.inf
    return (epsilon + 2.0 * math.log(inner) - 2.0 * math.log(2.0)) / epsilon

def theta_threshold(epsilon):
    """ The smallest theta for which bitwise OUE(ε) ⊑ THE(ε, θ):

        [2 ln(e^ε + 1 + (e^{ε/2} - 1) sqrt(e^ε + 1)) - ε - 2 ln 2] / ε

    evaluated in a form that does not overflow. Below ε = 1e-8 the limit
    1/sqrt(2) is returned.

    Parameters
    ----------
    epsilon : float
        epsilon >= 0.

    Returns
    -------
    float
    """
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")
    if epsilon < THETA_LIMIT_EPSILON:
        return 1.0 / math.sqrt(2.0)
    logger.debug("theta threshold at epsilon=%s: lower root %s", epsilon,
                 theta_threshold_lower(epsilon))
    return _theta_root(epsilon, 1.0)

def theta_threshold_lower(epsilon):
    """ The second root of the OUE/THE refinement condition.

    Reported for diagnostics only; it lies below 0.5 and no refinement is
    claimed from it.
    """
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")
    if epsilon < THETA_LIMIT_EPSILON:
        return -1.0 / math.sqrt(2.0)
    return _theta_root(epsilon, -1.0)
