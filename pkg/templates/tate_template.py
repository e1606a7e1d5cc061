"""
Tate Report Template
Kodaira type, component group and reduction tower of a curve
"""

from typing import Dict, Optional

from modules.tate import CurveTower, KodairaData


class TateTemplate:
    """Report of `neron tate`"""

    SECTIONS = {
        "reduction": ("Reduction", ("field", "type", "v_delta_input", "v_delta_min", "phi", "phi_structure", "m", "t")),
        "tower": ("Tower", ("regime", "e", "e_prime", "tower")),
    }

    def build(self, kodaira: KodairaData, field: str, tower: Optional[CurveTower] = None, regime: str = "tame") -> Dict:
        """
        Args:
            kodaira: Tate's algorithm output over K
            field: Residue field label
            tower: Kodaira data over the divisors of e, when known
            regime: tame or wild

        Returns:
            Flat report dictionary
        """
        report = {
            "command": "tate",
            "field": field,
            "type": kodaira.kodaira_type.label,
            "v_delta_input": kodaira.v_delta_input,
            "v_delta_min": kodaira.v_delta_min,
            "phi": kodaira.phi,
            "phi_structure": kodaira.phi_structure,
            "m": kodaira.m,
            "t": kodaira.t,
            "regime": regime,
            "e": None,
            "e_prime": None,
            "tower": [],
        }
        if tower is not None:
            report["e"] = tower.e
            report["e_prime"] = tower.e_prime
            report["tower"] = [
                {"a": a, "type": k.kodaira_type.label, "phi": k.phi, "t": k.t}
                for a, k in sorted(tower.entries.items())
            ]
        return report
