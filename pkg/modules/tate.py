"""
Tate Algorithm Module
Weierstrass models over k((t)), Kodaira classification with component
group data, tame base change and the reduction tower fed to the series
assembler
"""

import logging
import re
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator
from sympy import divisors

from .config import DEFAULT_SETTINGS, Settings
from .errors import SingularCurve, WildCurve
from .local_field import LaurentSeries, ResidueField, roots
from .series_core import ReductionData, WildEllipticData, in_nprime, prime_to_part

logger = logging.getLogger(__name__)

# Types with potentially good reduction, keyed by their weight v(Delta_min) mod 12
_POTENTIAL_GOOD = {0: "I0", 2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
_WEIGHTS = {label: weight for weight, label in _POTENTIAL_GOOD.items()}

_ADDITIVE = ("II", "III", "IV", "IV*", "III*", "II*")

_COEFFICIENT_NAMES = ("a1", "a2", "a3", "a4", "a6")

# Common multiplicity of the principal components
_MULTIPLICITY = {"II": 6, "III": 4, "IV": 3, "IV*": 3, "III*": 4, "II*": 6}

_PHI = {"II": 1, "III": 2, "IV": 3, "IV*": 3, "III*": 2, "II*": 1}

# Types reached by the cubic (p=2) or quadratic (p=3) wild extension
_WILD_TRANSITIONS = {
    (2, "II"): "I0*",
    (2, "II*"): "I0*",
    (3, "II"): "IV",
    (3, "II*"): "IV*",
}

_LABEL = re.compile(r"^I(\d+)(\*?)$")


class KodairaType(BaseModel):
    """Kodaira symbol; family is one of I, I*, II, III, IV, IV*, III*, II*"""

    model_config = ConfigDict(frozen=True)

    family: str
    n: int = 0

    @field_validator("family")
    @classmethod
    def known_family(cls, value: str) -> str:
        if value not in ("I", "I*") + _ADDITIVE:
            raise ValueError(f"Unknown Kodaira family: {value}")
        return value

    @classmethod
    def parse(cls, label: str) -> "KodairaType":
        label = label.strip()
        match = _LABEL.match(label)
        if match:
            return cls(family="I*" if match.group(2) else "I", n=int(match.group(1)))
        return cls(family=label)

    @property
    def label(self) -> str:
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @property
    def is_semistable(self) -> bool:
        return self.family == "I"

    @property
    def is_potentially_good(self) -> bool:
        return self.label in _WEIGHTS

    def __str__(self) -> str:
        return self.label


class KodairaData(BaseModel):
    """Output of Tate's algorithm for one model"""

    model_config = ConfigDict(frozen=True)

    kodaira_type: KodairaType
    v_delta_input: int
    v_delta_min: int
    phi: int
    phi_structure: str
    m: int
    t: int

    @model_validator(mode="after")
    def matches_type(self) -> "KodairaData":
        if self.phi != component_order(self.kodaira_type):
            raise ValueError(f"phi={self.phi} does not match type {self.kodaira_type}")
        if self.m != principal_multiplicity(self.kodaira_type):
            raise ValueError(f"m={self.m} does not match type {self.kodaira_type}")
        return self


class CurveTower(BaseModel):
    """Kodaira data of the curve over K(a) for every divisor a of e"""

    model_config = ConfigDict(frozen=True)

    base: KodairaData
    e: int
    e_prime: int
    entries: Dict[int, KodairaData]


class DerivedQuantities(NamedTuple):
    b2: LaurentSeries
    b4: LaurentSeries
    b6: LaurentSeries
    b8: LaurentSeries
    c4: LaurentSeries
    c6: LaurentSeries
    delta: LaurentSeries
    j: Optional[LaurentSeries]


class WeierstrassModel(BaseModel):
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over k((t))"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    a1: LaurentSeries
    a2: LaurentSeries
    a3: LaurentSeries
    a4: LaurentSeries
    a6: LaurentSeries

    @model_validator(mode="after")
    def check_field(self) -> "WeierstrassModel":
        if any(a.field != self.a1.field for a in self.coefficients):
            raise ValueError("Coefficients lie in different residue fields")
        return self

    @classmethod
    def of(cls, *coefficients: LaurentSeries) -> "WeierstrassModel":
        """Model from a1, a2, a3, a4, a6 in order"""
        return cls(**dict(zip(_COEFFICIENT_NAMES, coefficients)))

    @property
    def field(self) -> ResidueField:
        return self.a1.field

    @property
    def coefficients(self) -> Tuple[LaurentSeries, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @cached_property
    def invariants(self) -> DerivedQuantities:
        """b- and c-invariants and discriminant, without j"""
        a1, a2, a3, a4, a6 = self.coefficients
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        c4 = b2 * b2 - 24 * b4
        c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6
        delta = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        return DerivedQuantities(b2, b4, b6, b8, c4, c6, delta, None)

    def valuations(self) -> Tuple:
        return tuple(a.val() for a in self.coefficients)

    def __str__(self) -> str:
        return ", ".join(f"{name}={a!r}" for name, a in zip(_COEFFICIENT_NAMES, self.coefficients))


def derived_quantities(
    model: WeierstrassModel, working_precision: int = DEFAULT_SETTINGS.working_precision
) -> DerivedQuantities:
    """
    Standard Weierstrass formulary

    Returns:
        (b2, b4, b6, b8, c4, c6, Delta, j) with j = c4^3 / Delta

    Raises:
        SingularCurve: Delta vanishes
    """
    q = model.invariants
    if q.delta.is_zero:
        raise SingularCurve("Discriminant vanishes: the generic fiber is singular")
    j = q.c4 * q.c4 * q.c4 * q.delta.inverse(working_precision)
    return q._replace(j=j)


def rst_transform(model: WeierstrassModel, r, s, t) -> WeierstrassModel:
    """Coordinate change x = x' + r, y = y' + s x' + t"""
    a1, a2, a3, a4, a6 = model.coefficients
    return WeierstrassModel.of(
        a1 + 2 * s,
        a2 - s * a1 + 3 * r - s * s,
        a3 + r * a1 + 2 * t,
        a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t,
        a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1,
    )


def scale_model(model: WeierstrassModel, k: int) -> WeierstrassModel:
    """Replace a_i by a_i / t^(i k)"""
    weights = (1, 2, 3, 4, 6)
    return WeierstrassModel.of(*(a.shift(-w * k) for a, w in zip(model.coefficients, weights)))


def minimal_scaling(model: WeierstrassModel) -> WeierstrassModel:
    """Integral model with no t-power scaling left to remove"""
    weights = (1, 2, 3, 4, 6)
    valuations = [(a.val(), w) for a, w in zip(model.coefficients, weights) if not a.is_zero]
    if not valuations:
        raise SingularCurve("All Weierstrass coefficients vanish")
    # Largest k with v(a_i) >= i k for every i; negative k integralizes
    k = min(v // w for v, w in valuations)
    if k != 0:
        logger.debug("Rescaling model by t^%d", k)
        model = scale_model(model, k)
    return model


def base_change_model(model: WeierstrassModel, d: int) -> WeierstrassModel:
    """
    Model over K(d) = k((u)) with t = u^d

    Raises:
        WildDegree: d not prime to the residue characteristic
    """
    return WeierstrassModel.of(*(a.base_change(d) for a in model.coefficients))


def component_order(kodaira_type: KodairaType) -> int:
    """Order of the geometric component group"""
    if kodaira_type.family == "I":
        return max(kodaira_type.n, 1)
    if kodaira_type.family == "I*":
        return 4
    return _PHI[kodaira_type.family]


def component_structure(kodaira_type: KodairaType) -> str:
    phi = component_order(kodaira_type)
    if kodaira_type.family == "I*":
        return "(Z/2)^2" if kodaira_type.n % 2 == 0 else "Z/4"
    return "trivial" if phi == 1 else f"Z/{phi}"


def phi_exponent(structure: str) -> int:
    """Exponent of a component group given its structure label"""
    if structure == "trivial":
        return 1
    if structure == "(Z/2)^2":
        return 2
    return int(structure.split("/")[1])


def principal_multiplicity(kodaira_type: KodairaType) -> int:
    """Common multiplicity m of the principal components"""
    if kodaira_type.family == "I":
        return 1
    if kodaira_type.family == "I*":
        return 2
    return _MULTIPLICITY[kodaira_type.family]


def classify_by_valuations(v_c4, v_c6, v_delta) -> KodairaType:
    """
    Shortcut classification of a minimal model from v(c4), v(c6), v(Delta);
    valid when the residue characteristic is not 2 or 3
    """
    if v_delta == 0:
        return KodairaType(family="I", n=0)
    if v_c4 == 0:
        return KodairaType(family="I", n=v_delta)
    if v_c4 == 2 and v_c6 == 3 and v_delta > 6:
        return KodairaType(family="I*", n=v_delta - 6)
    additive = {2: "II", 3: "III", 4: "IV", 6: "I0*", 8: "IV*", 9: "III*", 10: "II*"}
    if v_delta in additive:
        return KodairaType.parse(additive[v_delta])
    raise ValueError(f"No Kodaira type for valuations ({v_c4}, {v_c6}, {v_delta})")


def _kodaira(kodaira_type: KodairaType, v_delta_input: int, v_delta_min: int) -> KodairaData:
    return KodairaData(
        kodaira_type=kodaira_type,
        v_delta_input=v_delta_input,
        v_delta_min=v_delta_min,
        phi=component_order(kodaira_type),
        phi_structure=component_structure(kodaira_type),
        m=principal_multiplicity(kodaira_type),
        t=1 if kodaira_type.family == "I" and kodaira_type.n > 0 else 0,
    )


def _pth_root(x, field: ResidueField):
    """Inverse of Frobenius in a perfect field of characteristic p"""
    return x ** (field.size // field.characteristic)


def _root_of_multiplicity(coefficients: List, field: ResidueField, multiplicity: int, settings: Settings):
    """Root of at least the given multiplicity, or None"""
    for root, k in roots(coefficients, field, settings):
        if k >= multiplicity:
            return root
    return None


def tate_algorithm(
    model: WeierstrassModel, settings: Settings = DEFAULT_SETTINGS
) -> Tuple[KodairaData, WeierstrassModel]:
    """
    Run Tate's algorithm

    Args:
        model: Weierstrass model over k((t)), not necessarily integral or minimal
        settings: Root search limits

    Returns:
        Tuple[KodairaData, minimal model]

    Raises:
        SingularCurve: Discriminant vanishes
        NoRationalRoot: A translation needs a root outside k
    """
    field = model.field
    p = field.characteristic
    if model.invariants.delta.is_zero:
        raise SingularCurve("Discriminant vanishes: the generic fiber is singular")
    v_delta_input = model.invariants.delta.val()

    def pi(c) -> LaurentSeries:
        return LaurentSeries.monomial(field, c, 1)

    def const(c) -> LaurentSeries:
        return LaurentSeries.constant(field, c)

    def res(x: LaurentSeries, k: int = 0):
        return x.shift(-k).residue()

    model = minimal_scaling(model)
    while True:
        q = model.invariants
        n = q.delta.val()
        logger.debug("Tate step: v(Delta)=%d", n)
        if n == 0:
            return _kodaira(KodairaType(family="I", n=0), v_delta_input, n), model

        # Move the singular point of the reduction to (0, 0)
        if p == 2:
            if res(q.b2) == 0:
                r = _pth_root(res(model.a4), field)
                t = _pth_root(((r + res(model.a2)) * r + res(model.a4)) * r + res(model.a6), field)
            else:
                r = res(model.a3) / res(model.a1)
                t = (r * r + res(model.a4)) / res(model.a1)
        elif p == 3:
            if res(q.b2) == 0:
                r = _pth_root(-res(q.b6), field)
            else:
                r = -res(q.b4) / res(q.b2)
            t = res(model.a1) * r + res(model.a3)
        else:
            if res(q.c4) == 0:
                r = -res(q.b2) / 12
            else:
                r = -(res(q.c6) + res(q.b2) * res(q.c4)) / (12 * res(q.c4))
            t = -(res(model.a1) * r + res(model.a3)) / 2
        model = rst_transform(model, const(r), const(0), const(t))
        q = model.invariants

        if res(q.c4) != 0:
            logger.debug("Multiplicative reduction of type I%d", n)
            return _kodaira(KodairaType(family="I", n=n), v_delta_input, n), model
        if model.a6.val() < 2:
            return _kodaira(KodairaType(family="II"), v_delta_input, n), model
        if q.b8.val() < 3:
            return _kodaira(KodairaType(family="III"), v_delta_input, n), model
        if q.b6.val() < 3:
            return _kodaira(KodairaType(family="IV"), v_delta_input, n), model

        # Arrange t | a1, a2 and t^2 | a3, a4 and t^3 | a6
        if p == 2:
            s = _pth_root(res(model.a2), field)
            t = _pth_root(res(model.a6, 2), field)
        else:
            s = -res(model.a1) / 2
            t = -res(model.a3, 1) / 2
        model = rst_transform(model, const(0), const(s), pi(t))

        b, c, d = res(model.a2, 1), res(model.a4, 2), res(model.a6, 3)
        w = 27 * d * d - b * b * c * c + 4 * b * b * b * d - 18 * b * c * d + 4 * c * c * c
        x = 3 * c - b * b
        if w != 0:
            return _kodaira(KodairaType(family="I*", n=0), v_delta_input, n), model

        if x != 0:
            # Double root of the cubic: type I_m*
            alpha = _root_of_multiplicity([d, c, b, 1], field, 2, settings)
            model = rst_transform(model, pi(alpha), const(0), const(0))
            ix, iy, mx, my = 3, 3, 2, 2
            while True:
                a3t, a6t = res(model.a3, my), res(model.a6, mx + my)
                beta = _root_of_multiplicity([-a6t, a3t, 1], field, 2, settings)
                if beta is None:
                    break
                model = rst_transform(model, const(0), const(0), LaurentSeries.monomial(field, beta, my))
                my += 1
                iy += 1

                a2t, a4t, a6t = res(model.a2, 1), res(model.a4, mx + 1), res(model.a6, mx + my)
                gamma = _root_of_multiplicity([a6t, a4t, a2t], field, 2, settings)
                if gamma is None:
                    break
                model = rst_transform(model, LaurentSeries.monomial(field, gamma, mx), const(0), const(0))
                mx += 1
                ix += 1
            m = ix + iy - 5
            logger.debug("Type I%d* after %d translations", m, ix + iy - 6)
            return _kodaira(KodairaType(family="I*", n=m), v_delta_input, n), model

        # Triple root of the cubic
        alpha = _root_of_multiplicity([d, c, b, 1], field, 3, settings)
        model = rst_transform(model, pi(alpha), const(0), const(0))
        a3t, a6t = res(model.a3, 2), res(model.a6, 4)
        beta = _root_of_multiplicity([-a6t, a3t, 1], field, 2, settings)
        if beta is None:
            return _kodaira(KodairaType(family="IV*"), v_delta_input, n), model

        model = rst_transform(model, const(0), const(0), LaurentSeries.monomial(field, beta, 2))
        if model.a4.val() < 4:
            return _kodaira(KodairaType(family="III*"), v_delta_input, n), model
        if model.a6.val() < 6:
            return _kodaira(KodairaType(family="II*"), v_delta_input, n), model

        logger.debug("Model is not minimal, rescaling by t and restarting")
        model = scale_model(model, 1)


def tame_transition(kodaira_type: KodairaType, d: int) -> KodairaType:
    """Type after a tame base change of degree d"""
    if kodaira_type.family == "I":
        return KodairaType(family="I", n=kodaira_type.n * d)
    if kodaira_type.family == "I*" and kodaira_type.n > 0:
        return KodairaType(family="I*" if d % 2 else "I", n=kodaira_type.n * d)
    weight = _WEIGHTS[kodaira_type.label]
    return KodairaType.parse(_POTENTIAL_GOOD[(weight * d) % 12])


def wild_transition(kodaira_type: KodairaType, p: int) -> Optional[KodairaType]:
    """
    Type over the tame extension of degree e(C)' for the wild cases
    with a known answer, or None
    """
    label = _WILD_TRANSITIONS.get((p, kodaira_type.label))
    return KodairaType.parse(label) if label else None


def kodaira_over(model: WeierstrassModel, d: int, settings: Settings = DEFAULT_SETTINGS) -> KodairaData:
    """Kodaira data of the curve over K(d)"""
    data, _ = tate_algorithm(base_change_model(model, d), settings)
    return data


def reduction_tower(model: WeierstrassModel, settings: Settings = DEFAULT_SETTINGS) -> Tuple[CurveTower, ReductionData]:
    """
    Find the minimal tame extension with semi-stable reduction and the
    Kodaira data over every intermediate extension

    Raises:
        WildCurve: No tame extension of degree at most the search bound
            makes the reduction semi-stable
    """
    base, minimal = tate_algorithm(model, settings)
    p = model.field.char_exponent

    entries: Dict[int, KodairaData] = {1: base}
    e = None
    for d in range(1, settings.semistable_search_bound + 1):
        if not in_nprime(d, p):
            continue
        if d not in entries:
            entries[d] = kodaira_over(minimal, d, settings)
        if entries[d].kodaira_type.is_semistable:
            e = d
            break
    if e is None:
        raise WildCurve(
            f"Type {base.kodaira_type} over residue characteristic {p} has no tame "
            f"semi-stable extension of degree <= {settings.semistable_search_bound}"
        )

    tower = {a: entries[a] for a in divisors(e)}
    logger.info("Semi-stable over K(%d), base type %s", e, base.kodaira_type)
    curve_tower = CurveTower(base=base, e=e, e_prime=prime_to_part(e, p), entries=tower)
    data = ReductionData(
        p=p,
        e=e,
        regime="tame",
        tower={a: (k.phi, k.t) for a, k in tower.items()},
        potential_good=tower[e].kodaira_type.n == 0,
    )
    return curve_tower, data


def wild_elliptic_tower(
    model: WeierstrassModel, settings: Settings = DEFAULT_SETTINGS
) -> Tuple[CurveTower, WildEllipticData]:
    """
    Tower over the divisors of e(C)', the prime-to-p part of the
    principal multiplicity, for a wildly ramified curve
    """
    base, minimal = tate_algorithm(model, settings)
    p = model.field.char_exponent
    e_prime = prime_to_part(base.m, p)

    tower = {a: (base if a == 1 else kodaira_over(minimal, a, settings)) for a in divisors(e_prime)}
    expected = wild_transition(base.kodaira_type, p)
    if expected is not None and tower[e_prime].kodaira_type != expected:
        logger.warning(
            "Type over K(%d) is %s, the wild transition table predicts %s",
            e_prime,
            tower[e_prime].kodaira_type,
            expected,
        )

    curve_tower = CurveTower(base=base, e=base.m, e_prime=e_prime, entries=tower)
    data = WildEllipticData(p=p, e_prime=e_prime, tower={a: k.phi for a, k in tower.items()})
    return curve_tower, data

