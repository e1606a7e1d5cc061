"""
Verification Module
Compares assembled closed forms with the brute-force oracle: Tate's
algorithm over every tame extension K(d) for curves, the base change
law for abstract reduction data
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict

from .config import DEFAULT_SETTINGS, Settings
from .errors import WildCurve
from .ratfun import expand
from .series_core import (
    ReductionData,
    SeriesReport,
    WildEllipticData,
    assemble,
    assemble_wild_elliptic,
    extend_tower,
    extend_wild_tower,
    in_nprime,
    is_member,
    series_brute,
)
from .tate import WeierstrassModel, kodaira_over, reduction_tower, tate_algorithm, wild_elliptic_tower

logger = logging.getLogger(__name__)


class CoefficientCheck(BaseModel):
    """One row of the comparison table"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    d: int
    oracle: int
    closed_form: Fraction
    kodaira_type: Optional[str] = None

    @property
    def match(self) -> bool:
        return self.closed_form == self.oracle


class VerifyReport(BaseModel):
    """Exact comparison of a closed form against its oracle"""

    model_config = ConfigDict(frozen=True)

    regime: str
    rows: List[CoefficientCheck]
    pole_order_claimed: int
    pole_order_computed: int
    degree_sign_claimed: str
    degree_sign_computed: str
    in_cyclotomic_ring: bool
    base_change_violations: List[int] = []

    @property
    def first_mismatch(self) -> Optional[int]:
        for row in self.rows:
            if not row.match:
                return row.d
        return None

    @property
    def failures(self) -> List[str]:
        """Claims that did not hold, in a fixed order"""
        failed = []
        if self.first_mismatch is not None:
            failed.append(f"coefficient at d={self.first_mismatch}")
        if self.pole_order_claimed != self.pole_order_computed:
            failed.append(f"pole order {self.pole_order_computed}, claimed {self.pole_order_claimed}")
        if self.degree_sign_claimed != self.degree_sign_computed:
            failed.append(f"degree sign {self.degree_sign_computed}, claimed {self.degree_sign_claimed}")
        if not self.in_cyclotomic_ring:
            failed.append("denominator outside Z[T, 1/(T^j - 1)]")
        if self.base_change_violations:
            failed.append(f"base change law at d={self.base_change_violations[0]}")
        return failed

    @property
    def passed(self) -> bool:
        return not self.failures


def tate_oracle(model: WeierstrassModel, dmax: int, settings: Settings = DEFAULT_SETTINGS) -> Dict[int, object]:
    """
    Kodaira data over K(d) for every d <= dmax in N'

    The sweep over d runs on `settings.workers` threads
    """
    _, minimal = tate_algorithm(model, settings)
    p = model.field.char_exponent
    degrees = [d for d in range(1, dmax + 1) if in_nprime(d, p)]

    if settings.workers > 1:
        with ThreadPoolExecutor(max_workers=settings.workers) as pool:
            results = list(pool.map(lambda d: kodaira_over(minimal, d, settings), degrees))
    else:
        results = [kodaira_over(minimal, d, settings) for d in degrees]
    return dict(zip(degrees, results))


def base_change_violations(oracle: Dict[int, int], e: int, t: int) -> List[int]:
    """
    Degrees d prime to e where phi(d) differs from d^t phi(1) or is not
    divisible by phi(1)
    """
    phi_1 = oracle[1]
    return [
        d
        for d, phi in sorted(oracle.items())
        if gcd(d, e) == 1 and (phi != d ** t * phi_1 or phi % phi_1)
    ]


def _compare(
    report: SeriesReport,
    oracle: Dict[int, int],
    n: int,
    types: Optional[Dict[int, str]] = None,
    violations: Optional[List[int]] = None,
) -> VerifyReport:
    types = types or {}
    coefficients = expand(report.closed_form, n)
    rows = [
        CoefficientCheck(d=d, oracle=oracle.get(d, 0), closed_form=coefficients[d], kodaira_type=types.get(d))
        for d in range(1, n + 1)
    ]
    verify_report = VerifyReport(
        regime=report.regime,
        rows=rows,
        pole_order_claimed=report.t_tame + 1,
        pole_order_computed=report.pole_order,
        degree_sign_claimed=report.degree_sign_expected,
        degree_sign_computed=report.degree_sign,
        in_cyclotomic_ring=is_member(report),
        base_change_violations=violations or [],
    )
    logger.info("Verification %s over %d coefficients", "passed" if verify_report.passed else "FAILED", n)
    return verify_report


def verify_curve(
    model: WeierstrassModel,
    dmax: int = DEFAULT_SETTINGS.dmax,
    settings: Settings = DEFAULT_SETTINGS,
    claimed: Optional[Union[ReductionData, WildEllipticData]] = None,
) -> VerifyReport:
    """
    Check the assembled series of a curve against Tate's algorithm over
    K(d) for d <= dmax

    Args:
        model: Curve over k((t))
        dmax: Largest base change degree
        settings: Limits and worker count
        claimed: Tower to assemble instead of the one derived from the
            curve, so a wrong tower can be detected
    """
    if claimed is None:
        try:
            _, claimed = reduction_tower(model, settings)
        except WildCurve:
            logger.info("Curve is wild, verifying against the wild elliptic series")
            _, claimed = wild_elliptic_tower(model, settings)

    if isinstance(claimed, WildEllipticData):
        report = assemble_wild_elliptic(claimed)
    else:
        report = assemble(claimed)

    kodaira = tate_oracle(model, dmax, settings)
    oracle = {d: k.phi for d, k in kodaira.items()}
    types = {d: k.kodaira_type.label for d, k in kodaira.items()}

    violations = []
    if isinstance(claimed, ReductionData):
        violations = base_change_violations(oracle, claimed.e, kodaira[1].t)
    return _compare(report, oracle, dmax, types, violations)


def verify_data(data: Union[ReductionData, WildEllipticData], terms: int = DEFAULT_SETTINGS.terms) -> VerifyReport:
    """Check the assembled series of abstract data against direct summation"""
    if isinstance(data, WildEllipticData):
        report = assemble_wild_elliptic(data)
        tower_fn = extend_wild_tower(data)
    else:
        report = assemble(data)
        tower_fn = extend_tower(data)
    brute = series_brute(tower_fn, data.p, terms)
    oracle = {d: c for d, c in enumerate(brute) if d > 0}
    return _compare(report, oracle, terms)
