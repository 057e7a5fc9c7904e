"""Strike smiles from a single PDE solve.

A standard call is homogeneous in ``(S, K)``: ``V(S, K) = K v(log(S/K))``
with ``v`` the value of the unit-strike contract, so one surface prices
every strike.
"""

from ..errors import DomainError, NumericalError
from .blackscholes import implied_vol
from .option import OptionSpec
from .pde import price_pde


def price_smile(params, strikes, maturity, config, spot, sigma0=None):
    """``[(strike, price, implied_vol)]`` for standard calls.

    ``implied_vol`` is ``nan`` where the price admits no Black-Scholes inversion.
    """
    sigma0 = params.theta if sigma0 is None else sigma0
    unit = price_pde(params, OptionSpec(1.0, maturity, "call_standard"), config)
    rows = []
    for k in strikes:
        if k <= 0:
            raise DomainError(f"strike must be positive, got {k!r}")
        price = k * unit.price(spot / k, sigma0)
        try:
            iv = implied_vol(price, spot, k, config.r, maturity)
        except NumericalError:
            iv = float("nan")
        rows.append((float(k), float(price), float(iv)))
    return rows


__all__ = ["price_smile"]
