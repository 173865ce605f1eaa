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

    Symbolic description of protocol instances and their analytic parameters.
"""
import json
import math
from collections import namedtuple
from dataclasses import dataclass, replace
from fractions import Fraction

from ..channel.numeric import exp
from ..errors import (InvalidDomainSize, NegativeEpsilon, OmegaOutOfRange,
                      ThetaRequired, ThetaOutOfRange, InvalidSpec)

PROTOCOL_GRR = "GRR"
PROTOCOL_SS = "SS"
PROTOCOL_BLH = "BLH"
PROTOCOL_OLH = "OLH"
PROTOCOL_SUE = "SUE"
PROTOCOL_OUE = "OUE"
PROTOCOL_THE = "THE"

SUPPORTED_PROTOCOLS = [PROTOCOL_GRR, PROTOCOL_SS, PROTOCOL_BLH, PROTOCOL_OLH,
                       PROTOCOL_SUE, PROTOCOL_OUE, PROTOCOL_THE]
LH_PROTOCOLS = [PROTOCOL_BLH, PROTOCOL_OLH]
BITWISE_PROTOCOLS = [PROTOCOL_SUE, PROTOCOL_OUE, PROTOCOL_THE]

# Fields each protocol may carry besides k and epsilon.
_PROTOCOL_FIELDS = {
    PROTOCOL_GRR: set(),
    PROTOCOL_SS: {"omega"},
    PROTOCOL_BLH: {"g"},
    PROTOCOL_OLH: {"g"},
    PROTOCOL_SUE: set(),
    PROTOCOL_OUE: set(),
    PROTOCOL_THE: {"theta"},
}
_OPTIONAL_FIELDS = ["omega", "g", "theta"]

BitwiseParams = namedtuple("BitwiseParams", ["p", "q"])
BitwiseParams.__doc__ = """ Per-bit probabilities: p = Pr[1 | bit 1], q = Pr[1 | bit 0]. """

AnalyticParams = namedtuple("AnalyticParams", ["p", "q", "p_star", "q_star"])
AnalyticParams.__doc__ = """ Protocol probabilities and the per-value support
probabilities used by the unbiased estimator. """

def check_domain(k, epsilon):
    """ Check k >= 2 and epsilon >= 0. """
    if int(k) != k or k < 2:
        raise InvalidDomainSize(f"The domain size must be an integer >= 2, got {k}.")
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")

def check_theta(theta):
    """ Check that theta is given and lies in (0.5, 1). """
    if theta is None:
        raise ThetaRequired("THE needs a threshold theta in (0.5, 1).")
    if not 0.5 < theta < 1:
        raise ThetaOutOfRange(f"theta must lie in (0.5, 1), got {theta}.")

def ss_optimal_omega(k, epsilon):
    """ The subset size max(1, round(k / (e^ε + 1))).

    Ties round half to even.
    """
    check_domain(k, epsilon)
    return max(1, round(k / (math.exp(epsilon) + 1)))

def olh_optimal_g(epsilon):
    """ The hash range round(e^ε + 1) of optimal local hashing.
    """
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")
    return max(2, round(math.exp(epsilon) + 1))

@dataclass(frozen=True)
class MechanismSpec:
    """ A protocol instance.

    Defaults are filled at construction: BLH uses g = 2, OLH uses
    g = round(e^ε + 1) and SS uses ω = ss_optimal_omega(k, ε).

    Parameters
    ----------
    protocol : str
        One of GRR, SS, BLH, OLH, SUE, OUE, THE.
    k : int
        Domain size.
    epsilon : float
        Privacy parameter.
    omega : int
        SS subset size.
    g : int
        LH hash range.
    theta : float
        THE threshold.
    """
    protocol: str
    k: int
    epsilon: float
    omega: int = None
    g: int = None
    theta: float = None

    def __post_init__(self):
        protocol = str(self.protocol).upper()
        if protocol not in SUPPORTED_PROTOCOLS:
            raise InvalidSpec(f"Unknown protocol {self.protocol}. "
                              f"Supported protocols: {SUPPORTED_PROTOCOLS}.")
        object.__setattr__(self, "protocol", protocol)
        check_domain(self.k, self.epsilon)
        object.__setattr__(self, "k", int(self.k))
        allowed = _PROTOCOL_FIELDS[protocol]
        for field in _OPTIONAL_FIELDS:
            if getattr(self, field) is not None and field not in allowed:
                raise InvalidSpec(f"{protocol} does not take the parameter {field}.")

        if protocol == PROTOCOL_SS:
            omega = ss_optimal_omega(self.k, self.epsilon) if self.omega is None else self.omega
            if int(omega) != omega or not 1 <= omega <= self.k - 1:
                raise OmegaOutOfRange(f"omega must be in [1, {self.k - 1}], got {omega}.")
            object.__setattr__(self, "omega", int(omega))
        elif protocol == PROTOCOL_BLH:
            if self.g is not None and self.g != 2:
                raise InvalidSpec(f"BLH uses g = 2, got g = {self.g}.")
            object.__setattr__(self, "g", 2)
        elif protocol == PROTOCOL_OLH:
            g = olh_optimal_g(self.epsilon) if self.g is None else self.g
            if int(g) != g or g < 2:
                raise InvalidDomainSize(f"g must be an integer >= 2, got {g}.")
            object.__setattr__(self, "g", int(g))
        elif protocol == PROTOCOL_THE:
            check_theta(self.theta)

    @property
    def is_bitwise(self):
        """ Whether the protocol is a one-hot composition of a 2x2 channel. """
        return self.protocol in BITWISE_PROTOCOLS

    @property
    def is_lh(self):
        """ Whether the protocol is a local hashing protocol. """
        return self.protocol in LH_PROTOCOLS

    def with_epsilon(self, epsilon, keep_params=False):
        """ The same protocol at another epsilon.

        SS ω and OLH g are recomputed for the new epsilon unless
        `keep_params` is set.
        """
        kwargs = {}
        if not keep_params and self.protocol == PROTOCOL_SS:
            kwargs["omega"] = None
        if not keep_params and self.protocol == PROTOCOL_OLH:
            kwargs["g"] = None
        return replace(self, epsilon=epsilon, **kwargs)

    def to_dict(self):
        """ JSON form, omitting absent parameters. """
        data = {"protocol": self.protocol, "k": self.k, "epsilon": self.epsilon}
        for field in _OPTIONAL_FIELDS:
            if getattr(self, field) is not None:
                data[field] = getattr(self, field)
        return data

    def to_json(self):
        """ Serialize to a JSON string. """
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data):
        """ Build a spec from its JSON form. """
        unknown = set(data) - {"protocol", "k", "epsilon"} - set(_OPTIONAL_FIELDS)
        if unknown:
            raise InvalidSpec(f"Unknown mechanism fields: {sorted(unknown)}.")
        for key in ["protocol", "k", "epsilon"]:
            if key not in data:
                raise InvalidSpec(f"A mechanism spec needs the '{key}' field.")
        return cls(**data)

    @classmethod
    def from_json(cls, text):
        """ Parse a spec from a JSON string. """
        return cls.from_dict(json.loads(text))

def bitwise_params(protocol, epsilon, theta=None, exact=False):
    """ Per-bit probabilities of the unary-encoding protocols.

    Parameters
    ----------
    protocol : str
        SUE, OUE or THE.
    epsilon : float
    theta : float
        Required iff protocol is THE.
    exact : bool
        Return Fractions.

    Returns
    -------
    BitwiseParams
    """
    protocol = protocol.upper()
    if not epsilon >= 0:
        raise NegativeEpsilon(f"epsilon must be >= 0, got {epsilon}.")
    one = Fraction(1) if exact else 1.0
    half = one / 2
    if protocol == PROTOCOL_SUE:
        if theta is not None:
            raise InvalidSpec("SUE does not take the parameter theta.")
        e_half = exp(epsilon / 2, exact)
        p = e_half / (e_half + 1)
        return BitwiseParams(p, one - p)
    elif protocol == PROTOCOL_OUE:
        if theta is not None:
            raise InvalidSpec("OUE does not take the parameter theta.")
        return BitwiseParams(half, one / (exp(epsilon, exact) + 1))
    elif protocol == PROTOCOL_THE:
        check_theta(theta)
        p = one - half * exp(epsilon * (theta - 1) / 2, exact)
        q = half * exp(-epsilon * theta / 2, exact)
        return BitwiseParams(p, q)
    else:
        raise InvalidSpec(f"{protocol} is not a bitwise protocol.")

def analytic_params(spec, exact=False):
    """ The protocol probabilities (p, q) and estimator support
    probabilities (p_star, q_star) of a spec.

    p_star is the probability that the report supports the true value and
    q_star that it supports any other fixed value: GRR (p, q), SS
    (p, (ω - p)/(k - 1)), LH (p, 1/g), SUE/OUE/THE (p, q).

    Parameters
    ----------
    spec : MechanismSpec
    exact : bool
        Return Fractions.

    Returns
    -------
    AnalyticParams
    """
    one = Fraction(1) if exact else 1.0
    e_eps = exp(spec.epsilon, exact)
    k = spec.k
    if spec.protocol == PROTOCOL_GRR:
        p = e_eps / (e_eps + k - 1)
        q = one / (e_eps + k - 1)
        return AnalyticParams(p, q, p, q)
    elif spec.protocol == PROTOCOL_SS:
        omega = spec.omega
        p = omega * e_eps / (omega * e_eps + k - omega)
        return AnalyticParams(p, one - p, p, (omega - p) / (k - 1))
    elif spec.is_lh:
        p = e_eps / (e_eps + spec.g - 1)
        q = one / (e_eps + spec.g - 1)
        return AnalyticParams(p, q, p, one / spec.g)
    else:
        params = bitwise_params(spec.protocol, spec.epsilon, spec.theta, exact)
        return AnalyticParams(params.p, params.q, params.p, params.q)
