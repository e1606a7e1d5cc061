"""
Torus Report Template
Invariant rank and first cohomology of a character lattice
"""

from typing import Dict

from modules.galois_lattice import CyclicLatticeAction, FiniteAbelianGroup


class TorusTemplate:
    """Report of `neron torus`"""

    SECTIONS = {
        "lattice": ("Lattice", ("rank", "order", "invariants_rank")),
        "cohomology": ("First cohomology", ("h1", "h1_invariants", "phi")),
    }

    def build(self, action: CyclicLatticeAction, split_rank: int, group: FiniteAbelianGroup) -> Dict:
        return {
            "command": "torus",
            "rank": action.rank,
            "order": action.order,
            "invariants_rank": split_rank,
            "h1": group.label,
            "h1_invariants": list(group.invariants),
            "phi": group.order,
        }
