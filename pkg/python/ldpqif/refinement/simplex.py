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

    Dense two-phase simplex over Fractions.

    Solves  min c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
    exactly, with Bland's rule so that it terminates on degenerate problems.
"""
import logging
from collections import namedtuple
from fractions import Fraction

import numpy as np

from ..channel.numeric import as_exact
from ..errors import SolverIterationLimit, DimensionMismatch

logger = logging.getLogger(__name__)

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"
STATUS_UNBOUNDED = "unbounded"

LinearProgramResult = namedtuple("LinearProgramResult",
                                 ["status", "x", "objective", "iterations"])

def _as_rows(matrix, n_vars):
    if matrix is None:
        return np.empty((0, n_vars), dtype=object)
    arr = as_exact(np.asarray(matrix, dtype=object))
    if arr.ndim != 2 or arr.shape[1] != n_vars:
        raise DimensionMismatch(f"Constraint matrix of shape {arr.shape} does not "
                                f"match {n_vars} variables.")
    return arr

def _as_rhs(vec, n_rows):
    if vec is None:
        vec = []
    arr = as_exact(np.asarray(vec, dtype=object).reshape(-1))
    if arr.shape[0] != n_rows:
        raise DimensionMismatch(f"Got {arr.shape[0]} right-hand sides for {n_rows} rows.")
    return arr

class _Tableau:
    """ A dense simplex tableau in canonical form.

    The last row holds the reduced costs and the last column the
    right-hand sides; tab[-1, -1] is minus the objective value.
    """
    def __init__(self, rows, rhs, basis):
        self.tab = np.concatenate([rows, rhs[:, None]], axis=1)
        self.basis = list(basis)
        self.iterations = 0

    def set_objective(self, costs):
        obj = np.concatenate([as_exact(costs), np.array([Fraction(0)], dtype=object)])
        for i, var in enumerate(self.basis):
            if obj[var] != 0:
                obj = obj - obj[var] * self.tab[i]
        if self.tab.shape[0] > len(self.basis):
            self.tab[-1] = obj
        else:
            self.tab = np.concatenate([self.tab, obj[None, :]], axis=0)

    def pivot(self, row, col):
        tab = self.tab
        tab[row] = tab[row] / tab[row, col]
        for r in range(tab.shape[0]):
            if r != row and tab[r, col] != 0:
                tab[r] = tab[r] - tab[r, col] * tab[row]
        self.basis[row] = col
        self.iterations += 1

    def drop_row(self, row):
        self.tab = np.delete(self.tab, row, axis=0)
        del self.basis[row]

    def run(self, allowed, max_iter):
        """ Minimize the objective row over the allowed columns.

        Returns STATUS_OPTIMAL or STATUS_UNBOUNDED.
        """
        n_rows = len(self.basis)
        while True:
            obj = self.tab[-1]
            entering = next((j for j in allowed if obj[j] < 0), None)
            if entering is None:
                return STATUS_OPTIMAL
            leaving, best = None, None
            for i in range(n_rows):
                coef = self.tab[i, entering]
                if coef > 0:
                    ratio = self.tab[i, -1] / coef
                    if best is None or ratio < best or \
                            (ratio == best and self.basis[i] < self.basis[leaving]):
                        leaving, best = i, ratio
            if leaving is None:
                return STATUS_UNBOUNDED
            if max_iter is not None and self.iterations >= max_iter:
                raise SolverIterationLimit(float(-self.tab[-1, -1]),
                                           f"{max_iter} simplex pivots")
            self.pivot(leaving, entering)

    def solution(self, n_vars):
        x = np.empty(n_vars, dtype=object)
        x.fill(Fraction(0))
        for i, var in enumerate(self.basis):
            if var < n_vars:
                x[var] = self.tab[i, -1]
        return x

def solve_exact_lp(c, A_ub=None, b_ub=None, A_eq=None, b_eq=None, max_iter=None):
    """ Solve a linear program exactly.

    Parameters
    ----------
    c : array-like
        Costs of the n variables.
    A_ub, b_ub : array-like
        Inequality constraints A_ub x <= b_ub.
    A_eq, b_eq : array-like
        Equality constraints A_eq x = b_eq.
    max_iter : int
        Pivot limit over both phases.

    Returns
    -------
    LinearProgramResult : status, optimal x (Fractions), objective and the
    number of pivots.
    """
    costs = as_exact(np.asarray(c, dtype=object).reshape(-1))
    n_vars = costs.shape[0]
    a_ub, a_eq = _as_rows(A_ub, n_vars), _as_rows(A_eq, n_vars)
    r_ub, r_eq = _as_rhs(b_ub, a_ub.shape[0]), _as_rhs(b_eq, a_eq.shape[0])
    n_ub, n_eq = a_ub.shape[0], a_eq.shape[0]
    n_rows = n_ub + n_eq

    # x, then one slack per inequality, then one artificial per row
    n_cols = n_vars + n_ub + n_rows
    rows = np.empty((n_rows, n_cols), dtype=object)
    rows.fill(Fraction(0))
    rhs = np.concatenate([r_ub, r_eq]).astype(object)
    rows[:n_ub, :n_vars] = a_ub
    rows[n_ub:, :n_vars] = a_eq
    for i in range(n_ub):
        rows[i, n_vars + i] = Fraction(1)
    for i in range(n_rows):
        if rhs[i] < 0:
            rows[i] = -rows[i]
            rhs[i] = -rhs[i]
        rows[i, n_vars + n_ub + i] = Fraction(1)

    artificial = list(range(n_vars + n_ub, n_cols))
    tableau = _Tableau(rows, rhs, artificial)
    phase1 = np.empty(n_cols, dtype=object)
    phase1.fill(Fraction(0))
    phase1[artificial] = Fraction(1)
    tableau.set_objective(phase1)
    tableau.run(list(range(n_cols)), max_iter)
    if tableau.tab[-1, -1] != 0:
        logger.debug("Phase 1 ended with infeasibility %s.", -tableau.tab[-1, -1])
        return LinearProgramResult(STATUS_INFEASIBLE, None, None, tableau.iterations)

    # drive artificials at level zero out of the basis, drop redundant rows
    row = 0
    while row < len(tableau.basis):
        if tableau.basis[row] >= n_vars + n_ub:
            col = next((j for j in range(n_vars + n_ub) if tableau.tab[row, j] != 0), None)
            if col is None:
                tableau.drop_row(row)
                continue
            tableau.pivot(row, col)
        row += 1

    phase2 = np.empty(n_cols, dtype=object)
    phase2.fill(Fraction(0))
    phase2[:n_vars] = costs
    tableau.set_objective(phase2)
    status = tableau.run(list(range(n_vars + n_ub)), max_iter)
    if status == STATUS_UNBOUNDED:
        return LinearProgramResult(STATUS_UNBOUNDED, None, None, tableau.iterations)
    x = tableau.solution(n_vars)
    return LinearProgramResult(STATUS_OPTIMAL, x, -tableau.tab[-1, -1], tableau.iterations)
