"""Closed-form Kakeya size bounds and the brute-force zero counter."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from math import comb, floor

from .errors import ResourceLimitError, UsageError
from .poly import Polynomial

DEFAULT_MAX_POINTS = 20_000


@dataclass
class BoundReport:
    formula: str          # "thm2" | "alon_tao" | "corollary_scheme"
    q: int
    n: int
    bound: int
    d: int | None = None
    delta: Fraction | None = None
    gamma: Fraction | None = None
    r: int | None = None
    extras: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"formula": self.formula, "q": self.q, "n": self.n, "bound": self.bound, "d": self.d}
        if self.delta is not None:
            out["delta"] = str(self.delta)
            out["gamma"] = str(self.gamma)
        if self.r is not None:
            out["r"] = self.r
        out.update(self.extras)
        return out


def effective_degree(q: int, delta, gamma) -> int:
    """``floor(q * min(delta, gamma)) - 2``."""
    return floor(q * min(Fraction(delta), Fraction(gamma))) - 2


def thm2_bound(q: int, n: int, delta=1, gamma=1) -> BoundReport:
    """Size bound ``C(d + n - 1, n - 1)`` for sets with the (delta, gamma) line profile.

    A negative ``d`` makes the bound vacuous and it is reported as 0.
    """
    delta, gamma = Fraction(delta), Fraction(gamma)
    if not (0 < delta <= 1 and 0 < gamma <= 1):
        raise UsageError("delta and gamma must lie in (0, 1]")
    d = effective_degree(q, delta, gamma)
    bound = comb(d + n - 1, n - 1) if d >= 0 else 0
    return BoundReport("thm2", q, n, bound, d=d, delta=delta, gamma=gamma)


def alon_tao_bound(q: int, n: int) -> BoundReport:
    """Every Kakeya set in F_q^n has at least ``C(q + n - 2, n)`` points."""
    if q < 2 or n < 1:
        raise UsageError("need q >= 2 and n >= 1")
    return BoundReport("alon_tao", q, n, comb(q + n - 2, n), d=q - 1)


def ceil_root(value: int, r: int) -> int:
    """Smallest integer ``m >= 0`` with ``m**r >= value``."""
    if value <= 0:
        return 0
    m = max(int(round(value ** (1.0 / r))), 1)
    while m ** r < value:
        m += 1
    while m > 1 and (m - 1) ** r >= value:
        m -= 1
    return m


def corollary_bound(q: int, n: int, r: int) -> BoundReport:
    """Bound on ``|K|`` obtained by applying the base bound to the product ``K^r``.

    ``K^r`` is Kakeya in F^(n r), so ``|K|^r >= thm2_bound(q, n r, 1, 1)``.
    """
    if r < 1:
        raise UsageError("r must be >= 1")
    base = thm2_bound(q, n * r, 1, 1)
    return BoundReport(
        "corollary_scheme", q, n, ceil_root(base.bound, r), d=base.d, r=r,
        extras={"product_bound": base.bound, "alon_tao": alon_tao_bound(q, n).bound},
    )


def all_bounds(q: int, n: int, delta=None, gamma=None, r=None) -> list:
    reports = [alon_tao_bound(q, n), thm2_bound(q, n, 1, 1) if delta is None
               else thm2_bound(q, n, delta, gamma)]
    if r is not None:
        reports.append(corollary_bound(q, n, r))
    return reports


def count_zeros(f: Polynomial, max_points: int = DEFAULT_MAX_POINTS) -> int:
    """Number of points of F_q^n where ``f`` vanishes, by exhaustion."""
    total = f.spec.q ** f.n
    if total > max_points:
        raise ResourceLimitError(f"q^n = {total} exceeds the limit of {max_points} points")
    return sum(1 for x in product(range(f.spec.q), repeat=f.n) if f.evaluate(x) == 0)


def zeros_of(f: Polynomial, max_points: int = DEFAULT_MAX_POINTS) -> list:
    total = f.spec.q ** f.n
    if total > max_points:
        raise ResourceLimitError(f"q^n = {total} exceeds the limit of {max_points} points")
    return [x for x in product(range(f.spec.q), repeat=f.n) if f.evaluate(x) == 0]
