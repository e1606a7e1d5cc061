"""
Verification Report Template
"""

from typing import Dict

from modules.verifier import VerifyReport


class VerifyTemplate:
    """Report of `neron verify`"""

    SECTIONS = {
        "summary": ("Summary", ("passed", "first_mismatch", "regime")),
        "claims": (
            "Claims",
            (
                "pole_order_claimed",
                "pole_order_computed",
                "degree_sign_claimed",
                "degree_sign_computed",
                "in_cyclotomic_ring",
                "base_change_violations",
            ),
        ),
        "rows": ("Coefficients", ("rows",)),
    }

    def build(self, report: VerifyReport) -> Dict:
        return {
            "command": "verify",
            "passed": report.passed,
            "first_mismatch": report.first_mismatch,
            "regime": report.regime,
            "pole_order_claimed": report.pole_order_claimed,
            "pole_order_computed": report.pole_order_computed,
            "degree_sign_claimed": report.degree_sign_claimed,
            "degree_sign_computed": report.degree_sign_computed,
            "in_cyclotomic_ring": report.in_cyclotomic_ring,
            "base_change_violations": report.base_change_violations,
            "rows": [
                {
                    "d": row.d,
                    "type": row.kodaira_type,
                    "oracle": row.oracle,
                    "closed_form": row.closed_form,
                    "match": row.match,
                }
                for row in report.rows
            ],
        }
