"""
Series Core Module
Closed-form assembly of the component series
S(T) = sum over d in N' of phi(A over K(d)) T^d
from per-divisor reduction data, in the tame and wild elliptic regimes
"""

import logging
from fractions import Fraction
from math import gcd
from typing import Any, Callable, Dict, List, Literal, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import divisors

from .errors import IncompleteTower
from .ratfun import RatFun, euler, geom, in_cyclotomic_ring, pole_at_one, substitute_power

logger = logging.getLogger(__name__)


def in_nprime(d: int, p: int) -> bool:
    """True when d is prime to the characteristic exponent p"""
    return p == 1 or gcd(d, p) == 1


def prime_to_part(n: int, p: int) -> int:
    """Largest divisor of n prime to p"""
    if p == 1:
        return n
    while n % p == 0:
        n //= p
    return n


class ReductionData(BaseModel):
    """
    Per-divisor reduction data: tower maps each a in D_e (divisors of e
    prime to p) to (phi_a, t_a)
    """

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., ge=1, description="Characteristic exponent")
    e: int = Field(..., ge=1, description="Degree of the minimal semi-abelian extension")
    regime: Literal["tame", "potentially_purely_multiplicative"] = "tame"
    tower: Dict[int, Tuple[int, int]]
    potential_good: bool = Field(False, description="Caller flag: potential good reduction")

    @model_validator(mode="after")
    def check_tower(self) -> "ReductionData":
        if self.regime == "tame" and not in_nprime(self.e, self.p):
            raise ValueError(f"Tame regime needs e={self.e} prime to p={self.p}")
        for a, (phi, t) in self.tower.items():
            if self.e % a:
                raise ValueError(f"Tower entry a={a} does not divide e={self.e}")
            if phi < 1 or t < 0:
                raise ValueError(f"Tower entry a={a} has phi={phi}, t={t}")
        # Toric rank can only grow along the tower
        for a, (_, t) in self.tower.items():
            for b, (_, t_b) in self.tower.items():
                if b % a == 0 and t > t_b:
                    raise ValueError(f"Toric rank decreases from a={a} to a={b}")
        return self

    @property
    def divisor_set(self) -> List[int]:
        """D_e: divisors of e lying in N'"""
        return [a for a in divisors(self.e) if in_nprime(a, self.p)]

    @property
    def t_tame(self) -> int:
        return self.entry(prime_to_part(self.e, self.p))[1]

    def entry(self, a: int) -> Tuple[int, int]:
        if a not in self.tower:
            raise IncompleteTower(f"Tower has no entry for the divisor a={a} of e={self.e}")
        return self.tower[a]


class WildEllipticData(BaseModel):
    """Wild elliptic data: tower maps each divisor a of e' to phi(C over K(a))"""

    model_config = ConfigDict(frozen=True)

    p: int = Field(..., gt=1)
    e_prime: int = Field(..., ge=1)
    tower: Dict[int, int]

    @model_validator(mode="after")
    def check_tower(self) -> "WildEllipticData":
        if gcd(self.e_prime, self.p) != 1:
            raise ValueError(f"e'={self.e_prime} is not prime to p={self.p}")
        for a, phi in self.tower.items():
            if self.e_prime % a or phi < 1:
                raise ValueError(f"Bad tower entry a={a}, phi={phi}")
        return self

    def entry(self, a: int) -> int:
        if a not in self.tower:
            raise IncompleteTower(f"Tower has no entry for the divisor a={a} of e'={self.e_prime}")
        return self.tower[a]


class SeriesReport(BaseModel):
    """Closed form of the component series with its pole data at T=1"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    closed_form: RatFun
    pole_order: int
    leading: Fraction
    degree: Any
    t_tame: int
    degree_sign_expected: Literal["zero", "negative"]
    regime: str = "tame"
    denominator_bound: int = Field(..., ge=1, description="Largest j with T^j - 1 allowed in the denominator")

    @property
    def degree_sign(self) -> str:
        return "zero" if self.degree == 0 else "negative" if self.degree < 0 else "positive"


def phi_after_base_change(phi: int, t: int, d: int) -> int:
    """phi(A over K(d)) = d^t phi(A) for d prime to e"""
    return d ** t * phi


def smallest_excluded(b: int, e: int, p: int) -> int:
    """Least element of b + eN divisible by p, for p > 1 prime to e and b"""
    if p < 2 or e % p == 0 or gcd(b, e) != 1:
        raise ValueError(f"b + {e}N has no multiple of p={p} to exclude, or b={b} is not a unit mod e")
    n = b
    while n % p:
        n += e
    return n


def sprime(phi: int, t: int, e: int, p: int) -> RatFun:
    """
    Closed form of the sum of phi d^t T^d over d in N' prime to e

    Args:
        phi: Component group order over K
        t: Toric rank over K
        e: Semi-abelian reduction degree
        p: Characteristic exponent
    """
    # Excluded terms only exist when p > 1 does not divide e
    excluded = p > 1 and e % p != 0
    total = RatFun(0)
    for b in range(1, e + 1):
        if gcd(b, e) != 1:
            continue
        total = total + euler(geom(b, e), t)
        if excluded:
            total = total - euler(geom(smallest_excluded(b, e, p), e * p), t)
    return phi * total


def _report(
    closed_form: RatFun, t_tame: int, degree_sign_expected: str, regime: str, denominator_bound: int
) -> SeriesReport:
    pole = pole_at_one(closed_form)
    return SeriesReport(
        closed_form=closed_form,
        pole_order=pole.order,
        leading=pole.leading,
        degree=pole.degree,
        t_tame=t_tame,
        degree_sign_expected=degree_sign_expected,
        regime=regime,
        denominator_bound=denominator_bound,
    )


def assemble(data: ReductionData) -> SeriesReport:
    """
    Sum of sprime(phi_a, t_a, e/a, p)(T^a) over a in D_e

    Raises:
        IncompleteTower: Missing divisor entry
    """
    total = RatFun(0)
    for a in data.divisor_set:
        phi, t = data.entry(a)
        total = total + substitute_power(sprime(phi, t, data.e // a, data.p), a)

    expected = "zero" if data.p == 1 and data.potential_good else "negative"
    logger.info("Assembled series over %d divisors of e=%d", len(data.divisor_set), data.e)
    return _report(total, data.t_tame, expected, data.regime, membership_bound(data.e, data.p))


def assemble_wild_elliptic(data: WildEllipticData) -> SeriesReport:
    """
    Sum of phi_a sprime(1, 0, e'/a, p)(T^a) over the divisors a of e'

    Raises:
        IncompleteTower: Missing divisor entry
    """
    total = RatFun(0)
    for a in divisors(data.e_prime):
        total = total + data.entry(a) * substitute_power(sprime(1, 0, data.e_prime // a, data.p), a)
    return _report(total, 0, "negative", "wild", membership_bound(data.e_prime, data.p))


def series_brute(tower_fn: Callable[[int], int], p: int, n: int) -> List[int]:
    """Coefficients 0..n of sum over d in N' of tower_fn(d) T^d"""
    return [0] + [tower_fn(d) if in_nprime(d, p) else 0 for d in range(1, n + 1)]


def extend_tower(data: ReductionData) -> Callable[[int], int]:
    """d -> phi_g (d/g)^t_g with g = gcd(d, e)"""

    def tower_fn(d: int) -> int:
        g = gcd(d, data.e)
        phi, t = data.entry(g)
        return phi_after_base_change(phi, t, d // g)

    return tower_fn


def extend_wild_tower(data: WildEllipticData) -> Callable[[int], int]:
    """d -> phi_g with g = gcd(d, e')"""
    return lambda d: data.entry(gcd(d, data.e_prime))


def check_divisibility(data: ReductionData, n: int) -> List[int]:
    """Degrees d <= n in N' prime to e where phi_1 does not divide phi(d)"""
    phi_1 = data.entry(1)[0]
    tower_fn = extend_tower(data)
    return [
        d
        for d in range(1, n + 1)
        if in_nprime(d, data.p) and gcd(d, data.e) == 1 and tower_fn(d) % phi_1
    ]


def membership_bound(e: int, p: int) -> int:
    """
    Largest cyclotomic order allowed in an assembled denominator: sprime
    over e/a substituted at T^a only produces T^j - 1 with j dividing
    e or e*p
    """
    return e * max(p, 1)


def is_member(report: SeriesReport) -> bool:
    """Denominator divides a product of T^j - 1 with j up to the report's bound"""
    return in_cyclotomic_ring(report.closed_form, report.denominator_bound)
