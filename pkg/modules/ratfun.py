"""
Rational Function Module
Exact arithmetic in Q(T) over integer polynomials, power-series
expansion, the Euler operator T*d/dT and local analysis at T=1
"""

from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict
from sympy import Poly, S, Symbol, ZZ, cyclotomic_poly

from .errors import DivisionByZero, NotExpandable, ZeroDenominator

T = Symbol("T")

# Degree of the zero polynomial; compares below every integer
MINUS_INFINITY = S.NegativeInfinity

_T_MINUS_ONE = Poly(T - 1, T, domain=ZZ)


class IntPoly:
    """Polynomial in T with arbitrary-precision integer coefficients"""

    __slots__ = ("_poly",)

    def __init__(self, coefficients: Sequence[int] = ()):
        """
        Args:
            coefficients: Coefficients in ascending degree order
        """
        descending = [int(c) for c in reversed(list(coefficients))]
        self._poly = Poly(descending or [0], T, domain=ZZ)

    @classmethod
    def _wrap(cls, poly: Poly) -> "IntPoly":
        result = cls.__new__(cls)
        result._poly = poly
        return result

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPoly":
        return cls([0] * degree + [coefficient])

    @property
    def coefficients(self) -> tuple:
        """Ascending coefficients; empty for the zero polynomial"""
        if self.is_zero:
            return ()
        return tuple(int(c) for c in reversed(self._poly.all_coeffs()))

    @property
    def degree(self) -> Union[int, Any]:
        return self._poly.degree()

    @property
    def is_zero(self) -> bool:
        return self._poly.is_zero

    @property
    def leading(self) -> int:
        return int(self._poly.LC())

    @property
    def constant(self) -> int:
        coefficients = self.coefficients
        return coefficients[0] if coefficients else 0

    def evaluate(self, x: Union[int, Fraction]) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def derivative(self) -> "IntPoly":
        return IntPoly._wrap(self._poly.diff(T))

    def gcd(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._wrap(self._poly.gcd(other._poly))

    def exquo(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._wrap(self._poly.exquo(other._poly))

    def times_power(self, k: int) -> "IntPoly":
        """Multiply by T^k"""
        return IntPoly((0,) * k + self.coefficients)

    def spread(self, a: int) -> "IntPoly":
        """Substitute T -> T^a"""
        coefficients = [0] * (a * max(len(self.coefficients) - 1, 0) + 1)
        for i, c in enumerate(self.coefficients):
            coefficients[a * i] = c
        return IntPoly(coefficients)

    def deflate_at_one(self) -> tuple:
        """
        Strip factors of (T - 1) by exact synthetic division

        Returns:
            Tuple[multiplicity of (T-1), quotient]
        """
        poly, multiplicity = self._poly, 0
        while not poly.is_zero and poly.eval(1) == 0:
            poly = poly.exquo(_T_MINUS_ONE)
            multiplicity += 1
        return multiplicity, IntPoly._wrap(poly)

    def factor_list(self) -> tuple:
        content, factors = self._poly.factor_list()
        return int(content), [(IntPoly._wrap(f), k) for f, k in factors]

    def __add__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._wrap(self._poly + other._poly)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._wrap(self._poly - other._poly)

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        return IntPoly._wrap(self._poly * other._poly)

    def __neg__(self) -> "IntPoly":
        return IntPoly._wrap(-self._poly)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntPoly):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coefficients)})"

    def __str__(self) -> str:
        return format_poly(self.coefficients)


def format_poly(coefficients: Sequence[int], var: str = "T") -> str:
    """Render ascending coefficients as '3T + 3T^2 - T^3'"""
    parts = []
    for i, c in enumerate(coefficients):
        if c == 0:
            continue
        magnitude = abs(c)
        if i == 0:
            body = str(magnitude)
        else:
            power = var if i == 1 else f"{var}^{i}"
            body = power if magnitude == 1 else f"{magnitude}{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


class RatFun:
    """
    Element of Q(T) in canonical form: numerator and denominator are
    coprime integer polynomials with no common content, and the
    denominator has positive leading coefficient
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Union[IntPoly, int], den: Union[IntPoly, int] = 1):
        num = num if isinstance(num, IntPoly) else IntPoly([num])
        den = den if isinstance(den, IntPoly) else IntPoly([den])
        if den.is_zero:
            raise ZeroDenominator("Denominator of a rational function must be nonzero")

        if num.is_zero:
            self.num, self.den = IntPoly(), IntPoly([1])
            return

        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        if den.leading < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def _coerce(cls, value: Union["RatFun", int]) -> "RatFun":
        return value if isinstance(value, RatFun) else cls(int(value))

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def degree(self) -> Union[int, Any]:
        """deg num - deg den, or minus infinity for zero"""
        if self.is_zero:
            return MINUS_INFINITY
        return self.num.degree - self.den.degree

    def __add__(self, other):
        other = RatFun._coerce(other)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = RatFun._coerce(other)
        return RatFun(self.num * other.den - other.num * self.den, self.den * other.den)

    def __rsub__(self, other):
        return RatFun._coerce(other) - self

    def __mul__(self, other):
        other = RatFun._coerce(other)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = RatFun._coerce(other)
        if other.is_zero:
            raise DivisionByZero("Division by the zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __neg__(self):
        return RatFun(-self.num, self.den)

    def __pow__(self, k: int):
        result = RatFun(1)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = RatFun(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"RatFun({list(self.num.coefficients)}, {list(self.den.coefficients)})"

    def __str__(self) -> str:
        num, den = self.num, self.den
        # Prefer a positive constant term downstairs, e.g. 1 - T^3
        if den.constant < 0:
            num, den = -num, -den
        if den.coefficients == (1,):
            return format_poly(num.coefficients)
        return f"({format_poly(num.coefficients)})/({format_poly(den.coefficients)})"

    def to_json(self) -> Dict[str, List[int]]:
        return {
            "numerator": list(self.num.coefficients),
            "denominator": list(self.den.coefficients),
        }


class PoleReport(BaseModel):
    """Pole order, leading Laurent coefficient at T=1 and degree"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: int
    leading: Fraction
    degree: Any


def rat_new(num: IntPoly, den: IntPoly) -> RatFun:
    """Canonical rational function num/den"""
    return RatFun(num, den)


def rat_arith(f: RatFun, g: RatFun, op: str) -> RatFun:
    """
    Exact field arithmetic

    Args:
        f, g: Operands
        op: One of add, sub, mul, div

    Raises:
        DivisionByZero: op is div and g is zero
    """
    operations = {
        "add": lambda: f + g,
        "sub": lambda: f - g,
        "mul": lambda: f * g,
        "div": lambda: f / g,
    }
    if op not in operations:
        raise ValueError(f"Unknown operation: {op}")
    return operations[op]()


def euler(f: RatFun, times: int = 1) -> RatFun:
    """
    Apply the Euler operator T*d/dT `times` times; multiplies the
    d-th expansion coefficient by d^times
    """
    for _ in range(times):
        if f.is_zero:
            return f
        num = f.num.derivative() * f.den - f.num * f.den.derivative()
        f = RatFun(num.times_power(1), f.den * f.den)
    return f


def geom(b: int, j: int) -> RatFun:
    """T^b / (1 - T^j)"""
    return RatFun(IntPoly.monomial(b), IntPoly([1]) - IntPoly.monomial(j))


def psi(a: int) -> RatFun:
    """sum_{d>0} d^a T^d in closed form"""
    return euler(geom(1, 1), a)


def substitute_power(f: RatFun, a: int) -> RatFun:
    """Substitute T -> T^a"""
    if a == 1:
        return f
    return RatFun(f.num.spread(a), f.den.spread(a))


def expand(f: RatFun, n: int) -> List[Fraction]:
    """
    Power-series coefficients c_0..c_n of f

    Raises:
        NotExpandable: Denominator vanishes at T=0
    """
    den = f.den.coefficients
    if den[0] == 0:
        raise NotExpandable(f"{f} has a pole at T=0")
    num = f.num.coefficients
    lead = Fraction(den[0])

    coefficients: List[Fraction] = []
    for k in range(n + 1):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for i in range(1, min(k, len(den) - 1) + 1):
            acc -= den[i] * coefficients[k - i]
        coefficients.append(acc / lead)
    return coefficients


def pole_at_one(f: RatFun) -> PoleReport:
    """
    Local analysis at T=1: order is the multiplicity of (T-1) in the
    denominator minus that in the numerator, leading is the first
    nonzero coefficient of the Laurent expansion in (T-1)
    """
    if f.is_zero:
        return PoleReport(order=0, leading=Fraction(0), degree=MINUS_INFINITY)

    num_mult, num = f.num.deflate_at_one()
    den_mult, den = f.den.deflate_at_one()
    return PoleReport(
        order=den_mult - num_mult,
        leading=num.evaluate(1) / den.evaluate(1),
        degree=f.degree,
    )


def cyclotomic_orders(f: RatFun, bound: int) -> Optional[List[int]]:
    """
    Orders j of the cyclotomic factors of the denominator

    Returns:
        Sorted orders when the denominator is a product of cyclotomic
        polynomials Phi_j with j <= bound, None otherwise
    """
    content, factors = f.den.factor_list()
    if content != 1:
        return None

    orders = []
    for factor, _ in factors:
        for j in range(1, bound + 1):
            phi_j = IntPoly._wrap(Poly(cyclotomic_poly(j, T), T, domain=ZZ))
            if factor == phi_j or factor == -phi_j:
                orders.append(j)
                break
        else:
            return None
    return sorted(orders)


def in_cyclotomic_ring(f: RatFun, bound: int) -> bool:
    """True when f lies in Z[T, 1/(T^j - 1)] with j <= bound"""
    return cyclotomic_orders(f, bound) is not None
