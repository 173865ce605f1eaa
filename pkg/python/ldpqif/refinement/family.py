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

    Checks that a protocol family is ordered by refinement along epsilon.
"""
import logging
from dataclasses import dataclass

import pandas as pd

from ..errors import AscendingGridRequired, UnsupportedSpec
from ..mechanisms.builders import bitwise, grr_channel, onehot_channel
from ..mechanisms.spec import (check_domain, check_theta, PROTOCOL_GRR, PROTOCOL_THE,
                               BITWISE_PROTOCOLS)
from .lp import refines_lp, TAU_REFINE
from .tradeoff import refines_2x2

logger = logging.getLogger(__name__)

FORM_BITWISE = "bitwise"
FORM_CHANNEL = "channel"

FAMILY_COLUMNS = ["epsilon_low", "epsilon_high", "holds", "residual", "method"]

@dataclass(frozen=True)
class FamilyStep:
    """ The verdict of one adjacent grid pair. """
    epsilon_low: float
    epsilon_high: float
    holds: bool
    residual: float
    method: str

@dataclass(frozen=True)
class FamilyReport:
    """ Verdicts of all adjacent pairs of a refinement-family check.

    Parameters
    ----------
    protocol : str
    steps : tuple of FamilyStep
    reverse : bool
        Whether the pairs were checked in the anti direction.
    """
    protocol: str
    steps: tuple
    reverse: bool = False

    @property
    def all_hold(self):
        """ Whether every pair is in refinement. """
        return all(step.holds for step in self.steps)

    def to_frame(self):
        """ The steps as a DataFrame with FAMILY_COLUMNS. """
        return pd.DataFrame([vars(step) for step in self.steps], columns=FAMILY_COLUMNS)

def _family_builder(protocol, k, theta, form, exact):
    protocol = protocol.upper()
    if protocol == PROTOCOL_GRR:
        return lambda eps: grr_channel(k, eps, exact), "lp"
    if protocol in BITWISE_PROTOCOLS:
        if protocol == PROTOCOL_THE:
            check_theta(theta)
        else:
            theta = None
        if form == FORM_BITWISE:
            return lambda eps: bitwise(protocol, eps, theta, exact), "tradeoff"
        return lambda eps: onehot_channel(protocol, k, eps, theta, exact), "lp"
    raise UnsupportedSpec(f"No refinement family is known for {protocol}.")

def verify_refinement_family(protocol, epsilons, k=3, theta=None, form=FORM_BITWISE,
                             reverse=False, tolerance=TAU_REFINE, exact=False):
    """ Check M_high ⊑ M_low for every adjacent pair of an ascending grid.

    Larger epsilon must refine smaller epsilon: the low-epsilon channel is a
    post-processing of the high-epsilon one. GRR pairs are decided by the
    linear program; SUE, OUE and THE pairs by the 2x2 test (form "bitwise")
    or by the linear program on one-hot channels (form "channel").

    Parameters
    ----------
    protocol : str
        GRR, SUE, OUE or THE.
    epsilons : list of float
        A strictly ascending grid of at least two points.
    k : int
        Domain size of GRR and one-hot channels.
    theta : float
        THE threshold.
    form : str
        "bitwise" or "channel".
    reverse : bool
        Check M_low ⊑ M_high instead.
    tolerance : float
        LP residual cutoff.
    exact : bool
        Build exact channels.

    Returns
    -------
    FamilyReport
    """
    epsilons = list(epsilons)
    if len(epsilons) < 2 or any(lo >= hi for lo, hi in zip(epsilons[:-1], epsilons[1:])):
        raise AscendingGridRequired(f"Expected a strictly ascending grid of at least two "
                                    f"points, got {epsilons}.")
    assert form in (FORM_BITWISE, FORM_CHANNEL), f"Unknown family form {form}."
    for epsilon in epsilons:
        check_domain(k, epsilon)
    build, method = _family_builder(protocol, k, theta, form, exact)

    steps = []
    channels = [build(eps) for eps in epsilons]
    for i in range(len(epsilons) - 1):
        low, high = channels[i], channels[i + 1]
        left, right = (low, high) if reverse else (high, low)
        if method == "tradeoff":
            verdict = refines_2x2(left, right)
        else:
            verdict = refines_lp(left, right, tolerance)
        logger.debug("%s family %s -> %s: holds=%s residual=%.3g", protocol,
                     epsilons[i + 1], epsilons[i], verdict.relation_holds, verdict.residual)
        steps.append(FamilyStep(float(epsilons[i]), float(epsilons[i + 1]),
                                verdict.relation_holds, verdict.residual, verdict.method))
    return FamilyReport(protocol.upper(), tuple(steps), reverse)
