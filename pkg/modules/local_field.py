"""
Local Field Module
Truncated Laurent series over k((t)) with k the rationals or a finite
field F_{p^m}, with valuation, residue, precision tracking, tame base
change t -> u^d and residue-field root finding
"""

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Callable, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from sympy import Poly, Rational, Symbol, QQ, ZZ, factorint
from sympy.polys.galoistools import (
    gf_add,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_rem,
    gf_sub,
)

from .config import DEFAULT_SETTINGS, Settings
from .errors import (
    DivisionByZero,
    ExtensionBound,
    NegativeValuation,
    NoRationalRoot,
    PrecisionLoss,
    UnsupportedField,
    WildDegree,
)

logger = logging.getLogger(__name__)

# Valuation of zero
INFINITY = float("inf")

_X = Symbol("X")


class ResidueField:
    """Residue field k of K = k((t))"""

    characteristic = 0
    is_finite = False

    @property
    def char_exponent(self) -> int:
        """Characteristic exponent: 1 in characteristic zero"""
        return self.characteristic or 1

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        raise NotImplementedError


class RationalField(ResidueField):
    """k = Q, elements are Fractions"""

    label = "Q"

    def __call__(self, value) -> Fraction:
        if isinstance(value, GFElement):
            raise TypeError("Cannot coerce a finite field element into Q")
        return Fraction(value)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("Q")

    def __repr__(self) -> str:
        return "RationalField()"


@lru_cache(maxsize=None)
def _first_irreducible(p: int, m: int) -> Tuple[int, ...]:
    """First monic irreducible of degree m over F_p in lexicographic order"""
    if m == 1:
        return (1, 0)
    for tail in itertools.product(range(p), repeat=m):
        candidate = [1] + list(tail)
        if tail[-1] != 0 and gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise ValueError(f"No irreducible polynomial of degree {m} over F_{p}")


class FiniteField(ResidueField):
    """
    F_{p^m} = F_p[a]/(f(a)), with f the first monic irreducible of
    degree m in lexicographic order unless given explicitly
    """

    is_finite = True

    def __init__(self, p: int, m: int = 1, modulus: Optional[Sequence[int]] = None):
        self.characteristic = p
        self.degree = m
        self.modulus = tuple(modulus) if modulus is not None else _first_irreducible(p, m)
        self.size = p ** m

    @property
    def label(self) -> str:
        return f"F{self.size}"

    def __call__(self, value) -> "GFElement":
        p = self.characteristic
        if isinstance(value, GFElement):
            if value.field != self:
                raise TypeError(f"Element of {value.field.label} is not in {self.label}")
            return value
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise DivisionByZero(f"{value} has no image in {self.label}")
            return self(value.numerator) / self(value.denominator)
        value = int(value) % p
        return GFElement(self, (value,) if value else ())

    def generator(self) -> "GFElement":
        if self.degree == 1:
            return self(0)
        return GFElement(self, (1, 0))

    def elements(self) -> Iterator["GFElement"]:
        """Every element, zero first, in a fixed order"""
        for digits in itertools.product(range(self.characteristic), repeat=self.degree):
            yield GFElement(self, _strip(digits))

    def extension(self, r: int, settings: Settings = DEFAULT_SETTINGS) -> Tuple["FiniteField", Callable]:
        """
        Degree-r extension with the embedding of this field

        Returns:
            Tuple[F_{p^{m r}}, embedding callable]

        Raises:
            ExtensionBound: Extension too large to search exhaustively
        """
        p, m = self.characteristic, self.degree
        if r > settings.max_extension_degree or p ** (m * r) > settings.max_field_size:
            raise ExtensionBound(f"Extension of degree {r} of {self.label} exceeds the search bound")

        big = FiniteField(p, m * r)
        logger.debug("Constructed %s as an extension of %s", big.label, self.label)
        if m == 1:
            return big, lambda x: big(x.rep[0] if x.rep else 0)

        # Image of the generator: a root of the defining polynomial
        beta = next(
            b for b in big.elements() if _evaluate([big(c) for c in reversed(self.modulus)], b) == 0
        )

        def embed(x: "GFElement") -> "GFElement":
            value = big(0)
            for c in x.rep:
                value = value * beta + c
            return value

        return big, embed

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and other.characteristic == self.characteristic
            and other.modulus == self.modulus
        )

    def __hash__(self) -> int:
        return hash((self.characteristic, self.modulus))

    def __repr__(self) -> str:
        return f"FiniteField({self.characteristic}, {self.degree})"


def _strip(digits: Sequence[int]) -> Tuple[int, ...]:
    digits = list(digits)
    while digits and digits[0] == 0:
        digits.pop(0)
    return tuple(digits)


class GFElement:
    """Element of a finite field, stored as reduced coefficients (descending)"""

    __slots__ = ("field", "rep")

    def __init__(self, field: FiniteField, rep: Sequence[int]):
        self.field = field
        self.rep = tuple(rep)

    def _lift(self, other) -> "GFElement":
        return other if isinstance(other, GFElement) else self.field(other)

    def _make(self, rep) -> "GFElement":
        return GFElement(self.field, [int(c) for c in rep])

    def __add__(self, other):
        other = self._lift(other)
        return self._make(gf_add(list(self.rep), list(other.rep), self.field.characteristic, ZZ))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        return self._make(gf_sub(list(self.rep), list(other.rep), self.field.characteristic, ZZ))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return self._make(gf_neg(list(self.rep), self.field.characteristic, ZZ))

    def __mul__(self, other):
        other = self._lift(other)
        p, modulus = self.field.characteristic, list(self.field.modulus)
        product = gf_mul(list(self.rep), list(other.rep), p, ZZ)
        return self._make(gf_rem(product, modulus, p, ZZ))

    __rmul__ = __mul__

    def inverse(self) -> "GFElement":
        if not self.rep:
            raise DivisionByZero(f"Division by zero in {self.field.label}")
        p, modulus = self.field.characteristic, list(self.field.modulus)
        s, _, _ = gf_gcdex(list(self.rep), modulus, p, ZZ)
        return self._make(s)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        result, k = self.field.one, abs(k)
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.field == other.field and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.field, self.rep))

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __repr__(self) -> str:
        if self.field.degree == 1 or len(self.rep) <= 1:
            return str(self.rep[0]) if self.rep else "0"
        terms = []
        top = len(self.rep) - 1
        for i, c in enumerate(self.rep):
            power = top - i
            if c == 0:
                continue
            base = "a" if power == 1 else f"a^{power}"
            if power == 0:
                terms.append(str(c))
            else:
                terms.append(base if c == 1 else f"{c}*{base}")
        return "+".join(terms)


def parse_field(label: str) -> ResidueField:
    """Residue field from a label such as 'Q', 'F5' or 'F4'"""
    label = label.strip()
    if label == "Q":
        return RationalField()
    if label.startswith("F") and label[1:].isdigit():
        q = int(label[1:])
        factors = factorint(q) if q > 1 else {}
        if len(factors) == 1:
            (p, m), = factors.items()
            return FiniteField(int(p), int(m))
    raise UnsupportedField(f"Unsupported residue field: {label}")


class LaurentSeries:
    """
    Element of k((t)) known up to t^precision (exclusive); precision
    None means the element is exact (a Laurent polynomial)
    """

    __slots__ = ("field", "terms", "precision")

    def __init__(self, field: ResidueField, terms: Dict[int, object], precision: Optional[int] = None):
        self.field = field
        self.precision = precision
        cleaned = {}
        for exponent, coefficient in terms.items():
            coefficient = field(coefficient)
            if coefficient == 0:
                continue
            if precision is not None and exponent >= precision:
                continue
            cleaned[int(exponent)] = coefficient
        self.terms = cleaned

    @classmethod
    def zero(cls, field: ResidueField, precision: Optional[int] = None) -> "LaurentSeries":
        return cls(field, {}, precision)

    @classmethod
    def constant(cls, field: ResidueField, value) -> "LaurentSeries":
        return cls(field, {0: value})

    @classmethod
    def monomial(cls, field: ResidueField, value, exponent: int) -> "LaurentSeries":
        return cls(field, {exponent: value})

    @property
    def is_exact(self) -> bool:
        return self.precision is None

    @property
    def is_zero(self) -> bool:
        """Zero to the known precision"""
        return not self.terms

    @property
    def valuation(self):
        return min(self.terms) if self.terms else INFINITY

    @property
    def coefficients(self) -> tuple:
        """Dense coefficients from the valuation up to the known precision"""
        if not self.terms:
            return ()
        top = max(self.terms) + 1 if self.precision is None else self.precision
        return tuple(self.coefficient(k) for k in range(self.valuation, top))

    def coefficient(self, exponent: int):
        if self.precision is not None and exponent >= self.precision:
            raise PrecisionLoss(f"Coefficient of t^{exponent} is beyond precision {self.precision}")
        return self.terms.get(exponent, self.field.zero)

    def _low(self) -> Union[int, float]:
        """Lowest exponent that may carry a nonzero coefficient"""
        if self.terms:
            return self.valuation
        return INFINITY if self.precision is None else self.precision

    def _coerce(self, other) -> "LaurentSeries":
        if isinstance(other, LaurentSeries):
            if other.field != self.field:
                raise TypeError("Laurent series over different residue fields")
            return other
        return LaurentSeries.constant(self.field, other)

    def val(self, certainty: Optional[int] = None):
        """
        Valuation, or INFINITY for zero

        Args:
            certainty: Exponent up to which a zero answer must be proven

        Raises:
            PrecisionLoss: Zero to a precision below `certainty`
        """
        if self.terms:
            return self.valuation
        if self.precision is not None and certainty is not None and self.precision < certainty:
            raise PrecisionLoss(f"Zero known only up to t^{self.precision}")
        return INFINITY

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k"""
        precision = None if self.precision is None else self.precision + k
        return LaurentSeries(self.field, {e + k: c for e, c in self.terms.items()}, precision)

    def residue(self):
        """
        Image in the residue field

        Raises:
            NegativeValuation: Element is not integral
        """
        if self.terms and self.valuation < 0:
            raise NegativeValuation(f"Element of valuation {self.valuation} has no residue")
        return self.coefficient(0)

    def base_change(self, d: int) -> "LaurentSeries":
        """
        Substitute t = u^d, realizing K(d) = k((u))

        Raises:
            WildDegree: d divisible by the residue characteristic
        """
        p = self.field.characteristic
        if p and gcd(d, p) != 1:
            raise WildDegree(f"Degree {d} is not prime to the residue characteristic {p}")
        precision = None if self.precision is None else self.precision * d
        return LaurentSeries(self.field, {d * e: c for e, c in self.terms.items()}, precision)

    def __add__(self, other):
        other = self._coerce(other)
        precision = _min_precision(self.precision, other.precision)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return LaurentSeries(self.field, terms, precision)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.field, {e: -c for e, c in self.terms.items()}, self.precision)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if (self.is_zero and self.is_exact) or (other.is_zero and other.is_exact):
            return LaurentSeries.zero(self.field)

        bounds = []
        if self.precision is not None:
            bounds.append(self.precision + other._low())
        if other.precision is not None:
            bounds.append(other.precision + self._low())
        precision = int(min(bounds)) if bounds else None

        terms: Dict[int, object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if precision is not None and e >= precision:
                    continue
                terms[e] = terms[e] + c1 * c2 if e in terms else c1 * c2
        return LaurentSeries(self.field, terms, precision)

    __rmul__ = __mul__

    def inverse(self, working_precision: int = DEFAULT_SETTINGS.working_precision) -> "LaurentSeries":
        """
        Multiplicative inverse; inverting an exact non-monomial yields
        `working_precision` correct relative digits

        Raises:
            DivisionByZero: Exact zero
            PrecisionLoss: Zero to the known precision
        """
        if self.is_zero:
            if self.is_exact:
                raise DivisionByZero("Division by zero in k((t))")
            raise PrecisionLoss(f"Divisor is zero to precision {self.precision}")

        v = self.valuation
        lead = self.terms[v]
        if self.is_exact and len(self.terms) == 1:
            return LaurentSeries.monomial(self.field, self.field.one / lead, -v)

        relative = working_precision if self.is_exact else self.precision - v
        unit = [self.terms.get(v + i, self.field.zero) for i in range(relative)]
        inverse = [self.field.one / lead]
        for k in range(1, relative):
            acc = self.field.zero
            for i in range(1, k + 1):
                acc = acc + unit[i] * inverse[k - i]
            inverse.append(-acc / lead)
        return LaurentSeries(self.field, {k - v: c for k, c in enumerate(inverse)}, relative - v)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        result = LaurentSeries.constant(self.field, 1)
        for _ in range(abs(k)):
            result = result * base
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms and self.precision == other.precision

    def __hash__(self) -> int:
        return hash((self.field, tuple(sorted(self.terms.items())), self.precision))

    def __repr__(self) -> str:
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"({c})*t^{e}" for e, c in sorted(self.terms.items()))
        if self.precision is not None:
            body += f" + O(t^{self.precision})"
        return body


def _min_precision(a: Optional[int], b: Optional[int]) -> Optional[int]:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def val(x: LaurentSeries, certainty: Optional[int] = None):
    return x.val(certainty)


def ls_arith(x: LaurentSeries, y, op: str, working_precision: int = DEFAULT_SETTINGS.working_precision):
    """
    Arithmetic with precision propagation

    Args:
        op: One of add, sub, mul, div, pow (y is an integer exponent for pow)
    """
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x * x._coerce(y).inverse(working_precision)
    if op == "pow":
        if y < 0:
            return x.inverse(working_precision) ** (-y)
        return x ** y
    raise ValueError(f"Unknown operation: {op}")


def base_change(x: LaurentSeries, d: int) -> LaurentSeries:
    return x.base_change(d)


def residue(x: LaurentSeries):
    return x.residue()


def with_precision_retry(fn: Callable[[int], object], settings: Settings = DEFAULT_SETTINGS):
    """
    Run fn(precision) at the working precision, doubling on
    PrecisionLoss until the configured maximum
    """
    precision = settings.working_precision
    while True:
        try:
            return fn(precision)
        except PrecisionLoss:
            if precision * 2 > settings.max_precision:
                raise
            precision *= 2
            logger.debug("Precision loss, retrying at %d t-digits", precision)


class RootResult(NamedTuple):
    root: object
    multiplicity: int
    field: ResidueField
    embed: Callable


def _evaluate(coefficients: Sequence, x):
    """Horner evaluation of ascending coefficients"""
    value = x * 0
    for c in reversed(coefficients):
        value = value * x + c
    return value


def _multiplicity(coefficients: Sequence, x) -> int:
    """Multiplicity of x as a root, by repeated synthetic division"""
    coefficients = list(coefficients)
    multiplicity = 0
    while len(coefficients) > 1:
        quotient = []
        acc = coefficients[-1] * 0
        for c in reversed(coefficients):
            acc = acc * x + c
            quotient.append(acc)
        if acc != 0:
            break
        coefficients = list(reversed(quotient[:-1]))
        multiplicity += 1
    return multiplicity


def _strip_top(coefficients: List) -> List:
    while coefficients and coefficients[-1] == 0:
        coefficients.pop()
    return coefficients


def roots(
    coefficients: Sequence, field: ResidueField, settings: Settings = DEFAULT_SETTINGS
) -> List[Tuple[object, int]]:
    """
    Roots in the field with multiplicities

    Args:
        coefficients: Ascending coefficients of a nonzero polynomial
    """
    coefficients = _strip_top([field(c) for c in coefficients])
    if not coefficients:
        raise ValueError("The zero polynomial has no well-defined roots")

    if not field.is_finite:
        descending = [Rational(c.numerator, c.denominator) for c in reversed(coefficients)]
        _, factors = Poly(descending, _X, domain=QQ).factor_list()
        found = []
        for factor, multiplicity in factors:
            if factor.degree() == 1:
                a, b = factor.all_coeffs()
                root = -Fraction(int(b.p), int(b.q)) / Fraction(int(a.p), int(a.q))
                found.append((root, int(multiplicity)))
        return sorted(found, key=lambda pair: (abs(pair[0]), pair[0] < 0))

    if field.size > settings.max_field_size:
        raise ExtensionBound(f"{field.label} is too large for exhaustive root search")
    found = []
    for x in field.elements():
        if _evaluate(coefficients, x) == 0:
            found.append((x, _multiplicity(coefficients, x)))
    return found


def find_root(
    coefficients: Sequence,
    field: ResidueField,
    allow_extension: bool = False,
    settings: Settings = DEFAULT_SETTINGS,
) -> RootResult:
    """
    A root of highest multiplicity, in k or in a finite extension

    Args:
        coefficients: Ascending coefficients, degree at most 3
        field: Residue field the coefficients live in
        allow_extension: Search extensions F_{p^{m r}} of a finite field

    Returns:
        RootResult with the root, its multiplicity, the field holding
        it and the embedding of `field` into that field

    Raises:
        NoRationalRoot: No root in k and no extension allowed (or k = Q)
        ExtensionBound: The extension needed exceeds the search bound
    """
    found = roots(coefficients, field, settings)
    if found:
        best = max(found, key=lambda pair: pair[1])
        return RootResult(best[0], best[1], field, lambda x: x)

    if not (allow_extension and field.is_finite):
        raise NoRationalRoot(f"Polynomial {list(coefficients)} has no root in {field.label}")

    for r in range(2, settings.max_extension_degree + 1):
        big, embed = field.extension(r, settings)
        lifted = [embed(field(c)) for c in coefficients]
        found = roots(lifted, big, settings)
        if found:
            best = max(found, key=lambda pair: pair[1])
            return RootResult(best[0], best[1], big, embed)
    raise ExtensionBound(f"No root of {list(coefficients)} within degree {settings.max_extension_degree}")
