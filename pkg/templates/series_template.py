"""
Series Report Templates
Closed form, pole data at T=1 and leading coefficients of a series
"""

from typing import Dict

from modules.ratfun import RatFun, cyclotomic_orders, expand, pole_at_one
from modules.series_core import SeriesReport


def _coefficients(f: RatFun, terms: int) -> list:
    """Coefficients of T^1..T^terms"""
    return [int(c) if c.denominator == 1 else c for c in expand(f, terms)[1:]]


class SeriesTemplate:
    """Report of `neron series`"""

    SECTIONS = {
        "closed_form": ("Closed form", ("series", "closed_form", "cyclotomic_orders")),
        "pole": ("Pole at T=1", ("pole_order", "residue", "degree", "t_tame", "degree_sign_expected", "regime")),
        "expansion": ("Expansion", ("coefficients",)),
    }

    def build(self, report: SeriesReport, terms: int) -> Dict:
        return {
            "command": "series",
            "series": str(report.closed_form),
            "closed_form": report.closed_form,
            "cyclotomic_orders": cyclotomic_orders(report.closed_form, report.denominator_bound),
            "pole_order": report.pole_order,
            "residue": report.leading,
            "degree": report.degree,
            "t_tame": report.t_tame,
            "degree_sign_expected": report.degree_sign_expected,
            "regime": report.regime,
            "coefficients": _coefficients(report.closed_form, terms),
        }


class PsiTemplate:
    """Report of `neron psi`"""

    SECTIONS = {
        "closed_form": ("Closed form", ("a", "series", "closed_form")),
        "pole": ("Pole at T=1", ("pole_order", "residue", "degree")),
        "expansion": ("Expansion", ("coefficients",)),
    }

    def build(self, a: int, f: RatFun, terms: int) -> Dict:
        pole = pole_at_one(f)
        return {
            "command": "psi",
            "a": a,
            "series": str(f),
            "closed_form": f,
            "pole_order": pole.order,
            "residue": pole.leading,
            "degree": pole.degree,
            "coefficients": _coefficients(f, terms),
        }
