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

    Outcome of a refinement query.
"""
import json
from dataclasses import dataclass, field

from ..channel.io import channel_to_dict

METHOD_TRADEOFF = "tradeoff_2x2"
METHOD_LP = "lp_witness"
METHOD_EXACT = "exact_rational"

@dataclass(frozen=True)
class RefinementVerdict:
    """ Whether B ⊑ A, i.e. A = B·W for a row-stochastic W.

    Parameters
    ----------
    relation_holds : bool
    witness : ChannelMatrix
        The post-processing W when the relation holds and the method
        produces one.
    residual : float
        Max-norm of B·W - A at the solver's best point (the condition
        violation for the 2x2 test).
    method : str
        tradeoff_2x2, lp_witness or exact_rational.
    details : dict
        Method-specific diagnostics.
    """
    relation_holds: bool
    witness: object
    residual: float
    method: str
    details: dict = field(default_factory=dict)

    def to_dict(self):
        """ JSON form: holds, residual, method and, if present, the witness. """
        data = {
            "holds": self.relation_holds,
            "residual": float(self.residual),
            "method": self.method,
        }
        if self.witness is not None:
            data["witness"] = channel_to_dict(self.witness)
        data.update(self.details)
        return data

    def to_json(self):
        """ Serialize to a JSON string with sorted keys. """
        return json.dumps(self.to_dict(), sort_keys=True)
