"""Contract terms and payoffs."""

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigurationError, DomainError

PAYOFF_KINDS = ("call_standard", "call_logmoneyness", "put_standard")


@dataclass(frozen=True)
class OptionSpec:
    """European contract.

    ``call_logmoneyness`` pays ``max(log(S/K), 0)``; the conventional
    ``call_standard`` pays ``max(S - K, 0)``.
    """

    strike: float
    maturity: float
    payoff_kind: str = "call_standard"

    def __post_init__(self):
        if not (self.strike > 0 and self.maturity > 0):
            raise DomainError("strike and maturity must be positive")
        if self.payoff_kind not in PAYOFF_KINDS:
            raise ConfigurationError(
                f"payoff_kind must be one of {PAYOFF_KINDS}, got {self.payoff_kind!r}")

    def payoff(self, s):
        s = np.asarray(s, dtype=float)
        if self.payoff_kind == "call_standard":
            return np.maximum(s - self.strike, 0.0)
        if self.payoff_kind == "put_standard":
            return np.maximum(self.strike - s, 0.0)
        return np.maximum(np.log(s / self.strike), 0.0)

    def payoff_x(self, x):
        """Payoff as a function of log-moneyness ``x = log(S/K)``."""
        x = np.asarray(x, dtype=float)
        if self.payoff_kind == "call_logmoneyness":
            return np.maximum(x, 0.0)
        return self.payoff(self.strike * np.exp(x))

    def to_dict(self):
        return {"strike": self.strike, "maturity": self.maturity, "payoff_kind": self.payoff_kind}

    @classmethod
    def from_dict(cls, d):
        try:
            return cls(float(d["strike"]), float(d["maturity"]),
                       d.get("payoff_kind", "call_standard"))
        except KeyError as exc:
            raise ConfigurationError(f"option missing field {exc}") from None
        except DomainError as exc:
            raise ConfigurationError(str(exc)) from None
