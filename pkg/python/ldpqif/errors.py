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

    Exceptions raised by ldpqif.
"""

class LdpQifError(ValueError):
    """ Base class of all ldpqif errors.
    """

# channel algebra

class NonStochasticRow(LdpQifError):
    """ A channel row does not sum to 1.

    Parameters
    ----------
    row : int
        The offending row index.
    residual : float
        The absolute difference between the row sum and 1.
    """
    def __init__(self, row, residual):
        self.row = row
        self.residual = residual
        super().__init__(f"Row {row} is not stochastic: |sum - 1| = {float(residual):.3g}")

class NegativeEntry(LdpQifError):
    """ A channel entry is negative beyond tolerance.
    """
    def __init__(self, row, col, value):
        self.row = row
        self.col = col
        self.value = value
        super().__init__(f"Entry ({row}, {col}) is negative: {float(value):.3g}")

class DimensionMismatch(LdpQifError):
    """ Operand shapes do not agree.
    """

class SizeCapExceeded(LdpQifError):
    """ The requested matrix is larger than the configured size cap.

    Parameters
    ----------
    requested : tuple of int
        The requested (rows, cols).
    cap : int
        The maximal number of entries.
    """
    def __init__(self, requested, cap):
        self.requested = tuple(requested)
        self.cap = cap
        super().__init__(f"Requested a {requested[0]} x {requested[1]} matrix, "
                         f"which exceeds the size cap of {cap} entries.")

class NotPowerOfTwoRows(LdpQifError):
    """ One-hot restriction needs 2^k rows with k >= 2.
    """
    def __init__(self, rows):
        self.rows = rows
        super().__init__(f"Expected 2^k rows with k >= 2, got {rows} rows.")

# mechanisms

class InvalidDomainSize(LdpQifError):
    """ The domain size k (or hash range g) is too small.
    """

class NegativeEpsilon(LdpQifError):
    """ The privacy parameter is negative.
    """

class OmegaOutOfRange(LdpQifError):
    """ The subset size of subset selection is outside [1, k-1].
    """

class ThetaRequired(LdpQifError):
    """ THE needs a threshold theta.
    """

class ThetaOutOfRange(LdpQifError):
    """ theta is outside the open interval (0.5, 1).
    """

class InvalidSpec(LdpQifError):
    """ A mechanism spec carries missing or foreign parameters.
    """

class UnsupportedSpec(LdpQifError):
    """ The operation is not defined for this protocol.
    """

# refinement

class NotTwoByTwo(LdpQifError):
    """ The operation is only defined on 2x2 channels.
    """

class SolverError(LdpQifError):
    """ The linear program could not be solved.
    """

class SolverIterationLimit(SolverError):
    """ The solver stopped before optimality.

    The verdict is undecided; `best_residual` is the residual at the last point.
    """
    def __init__(self, best_residual, message="iteration limit reached"):
        self.best_residual = best_residual
        super().__init__(f"Refinement LP undecided ({message}), "
                         f"best residual {float(best_residual):.3g}")

class AscendingGridRequired(LdpQifError):
    """ A refinement family check needs an ascending grid of at least two points.
    """

# simulation

class ParseError(LdpQifError):
    """ A dataset file cannot be read or parsed.
    """
    def __init__(self, path, line=None, reason=""):
        self.path = path
        self.line = line
        where = f"{path}" if line is None else f"{path}:{line}"
        super().__init__(f"Cannot parse {where}. {reason}".strip())

class EmptyDataset(LdpQifError):
    """ No values are left in the dataset.
    """

class ValueOutOfRange(LdpQifError):
    """ A secret value is outside [0, k).
    """

class ShapeMismatch(LdpQifError):
    """ A report does not match the shape of its mechanism.
    """

class DegenerateEstimator(LdpQifError):
    """ The unbiased estimator is undefined because p* == q*.
    """

# configuration

class ConfigError(LdpQifError):
    """ The configuration is invalid.
    """
