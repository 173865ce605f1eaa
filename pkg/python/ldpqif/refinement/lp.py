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

    Refinement of general channels by linear programming.

    B ⊑ A iff some row-stochastic W satisfies B·W = A. With W stored
    row-major in x = [vec(W), t], the program is

        min t  s.t.  -t <= (B·W - A)[r, j] <= t,  Σ_j W[i, j] = 1,  W, t >= 0

    and the refinement holds iff its optimum is at most the tolerance.
"""
import logging
from fractions import Fraction

import numpy as np
from scipy.optimize import linprog

from ..channel.matrix import validate_channel
from ..channel.numeric import EXACT_MAX_COLUMNS, as_float, as_exact
from ..errors import DimensionMismatch, SolverError, SolverIterationLimit, SizeCapExceeded
from .simplex import solve_exact_lp, STATUS_OPTIMAL
from .tradeoff import refines_2x2
from .verdict import RefinementVerdict, METHOD_LP, METHOD_EXACT

logger = logging.getLogger(__name__)

# Residual cutoff of float LP verdicts.
TAU_REFINE = 1e-8
HIGHS_FEASIBILITY_TOL = 1e-10

def _kron(left, right):
    rows = left.shape[0] * right.shape[0]
    cols = left.shape[1] * right.shape[1]
    return np.multiply.outer(left, right).transpose(0, 2, 1, 3).reshape(rows, cols)

def _lp_matrices(b_entries, a_entries, one, zero):
    """ Dense constraint matrices over x = [vec(W), t]. """
    n_rows, n_b = b_entries.shape
    n_a = a_entries.shape[1]
    n_w = n_b * n_a
    eye_a = np.eye(n_a, dtype=np.int64)
    eye_b = np.eye(n_b, dtype=np.int64)
    if b_entries.dtype == object:
        eye_a, eye_b = as_exact(eye_a), as_exact(eye_b)
    prod = _kron(b_entries, eye_a)
    t_col = np.full((n_rows * n_a, 1), -one, dtype=b_entries.dtype)
    a_ub = np.concatenate([np.concatenate([prod, t_col], axis=1),
                           np.concatenate([-prod, t_col], axis=1)], axis=0)
    target = a_entries.reshape(-1)
    b_ub = np.concatenate([target, -target])
    row_sums = _kron(eye_b, np.ones((1, n_a), dtype=np.int64))
    if b_entries.dtype == object:
        row_sums = as_exact(row_sums)
    zero_col = np.full((n_b, 1), zero, dtype=b_entries.dtype)
    a_eq = np.concatenate([row_sums, zero_col], axis=1)
    b_eq = np.full(n_b, one, dtype=b_entries.dtype)
    costs = np.full(n_w + 1, zero, dtype=b_entries.dtype)
    costs[-1] = one
    return costs, a_ub, b_ub, a_eq, b_eq

def _witness(B, A, w_entries):
    return validate_channel(w_entries, B.output_labels, A.output_labels)

def _residual(b_entries, w_entries, a_entries):
    return float(np.max(np.abs(as_float(b_entries @ w_entries - a_entries))))

def _refines_float(B, A, tolerance, max_iter):
    b_entries, a_entries = as_float(B.entries), as_float(A.entries)
    costs, a_ub, b_ub, a_eq, b_eq = _lp_matrices(b_entries, a_entries, 1.0, 0.0)
    options = {"primal_feasibility_tolerance": HIGHS_FEASIBILITY_TOL,
               "dual_feasibility_tolerance": HIGHS_FEASIBILITY_TOL}
    if max_iter is not None:
        options["maxiter"] = max_iter
    res = linprog(costs, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=b_eq,
                  bounds=(0, None), method="highs", options=options)
    logger.debug("HiGHS status %d: %s", res.status, res.message)
    if res.status == 1:
        best = float(res.fun) if res.fun is not None else float('nan')
        raise SolverIterationLimit(best, res.message)
    if res.status != 0:
        raise SolverError(f"The refinement LP failed: {res.message}")

    w_entries = np.clip(res.x[:-1].reshape(B.cols, A.cols), 0.0, None)
    sums = w_entries.sum(axis=1)
    w_entries = w_entries / np.where(sums > 0, sums, 1.0)[:, None]
    residual = _residual(b_entries, w_entries, a_entries)
    holds = residual <= tolerance
    witness = _witness(B, A, w_entries) if holds else None
    return RefinementVerdict(holds, witness, residual, METHOD_LP,
                             details={"lp_objective": float(res.fun)})

def _refines_exact(B, A, max_iter):
    b_entries, a_entries = B.to_exact().entries, A.to_exact().entries
    one, zero = Fraction(1), Fraction(0)
    costs, a_ub, b_ub, a_eq, b_eq = _lp_matrices(b_entries, a_entries, one, zero)
    res = solve_exact_lp(costs, a_ub, b_ub, a_eq, b_eq, max_iter=max_iter)
    if res.status != STATUS_OPTIMAL:
        raise SolverError(f"The exact refinement LP ended as {res.status}.")
    residual = res.objective
    holds = residual == 0
    witness = None
    if holds:
        witness = _witness(B, A, res.x[:-1].reshape(B.cols, A.cols))
    return RefinementVerdict(holds, witness, float(residual), METHOD_EXACT,
                             details={"pivots": res.iterations})

def refines_lp(B, A, tolerance=TAU_REFINE, exact=None, max_iter=None):
    """ Decide B ⊑ A: is A a post-processing B·W of B?

    Parameters
    ----------
    B : ChannelMatrix
        The more informative channel.
    A : ChannelMatrix
        The candidate post-processing; A.rows must equal B.rows.
    tolerance : float
        Largest residual accepted by the float path.
    exact : bool
        Solve over Fractions. Defaults to True when both channels are exact
        and have at most EXACT_MAX_COLUMNS columns.
    max_iter : int
        Solver iteration limit.

    Returns
    -------
    RefinementVerdict : with the witness W when the relation holds.
    """
    if B.rows != A.rows:
        raise DimensionMismatch(f"Cannot compare a channel on {B.rows} secrets "
                                f"with one on {A.rows} secrets.")
    small = B.cols <= EXACT_MAX_COLUMNS and A.cols <= EXACT_MAX_COLUMNS
    if exact is None:
        exact = B.exact and A.exact and small
    if exact:
        if not small:
            raise SizeCapExceeded((B.cols, A.cols), EXACT_MAX_COLUMNS)
        return _refines_exact(B, A, max_iter)
    return _refines_float(B, A, tolerance, max_iter)

def refines(B, A, mode="auto", tolerance=TAU_REFINE, exact=None):
    """ Decide B ⊑ A with the method selected by `mode`.

    "tradeoff" uses the exact 2x2 test, "lp" the linear program and "auto"
    the 2x2 test for 2x2 channels and the linear program otherwise.
    """
    assert mode in ("auto", "tradeoff", "lp"), f"Unknown refinement mode {mode}."
    if mode == "tradeoff" or (mode == "auto" and B.shape == (2, 2) and A.shape == (2, 2)):
        return refines_2x2(B, A)
    return refines_lp(B, A, tolerance, exact)
