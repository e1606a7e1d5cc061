"""
Neron component series usage examples
Demonstrate how to use the library modules directly
"""

from modules.config import Settings
from modules.galois_lattice import companion_action, h1, invariants_rank
from modules.input_parser import parse_curve_file
from modules.ratfun import expand, psi
from modules.series_core import ReductionData, WildEllipticData, assemble, assemble_wild_elliptic
from modules.tate import reduction_tower, tate_algorithm
from modules.verifier import verify_curve


def tate_example():
    """Classify y^2 = x^3 + t^4 over Q((t))"""
    print("\n" + "=" * 60)
    print("Example 1: Tate's algorithm")
    print("=" * 60)

    model = parse_curve_file("field = Q\na6 = t^4\n")
    kodaira, _ = tate_algorithm(model)
    print(f"\nType: {kodaira.kodaira_type}")
    print(f"Component group order: {kodaira.phi}")
    print(f"Multiplicity m: {kodaira.m}")

    tower, data = reduction_tower(model)
    print(f"\nSemi-stable over K({tower.e})")
    for a, (phi, t) in sorted(data.tower.items()):
        print(f"  a = {a}: phi = {phi}, t = {t}")


def series_example():
    """Closed form of the component series"""
    print("\n" + "=" * 60)
    print("Example 2: Component series")
    print("=" * 60)

    report = assemble(ReductionData(p=1, e=3, tower={1: (3, 0), 3: (1, 0)}, potential_good=True))
    print(f"\nClosed form: {report.closed_form}")
    print(f"Coefficients: {[int(c) for c in expand(report.closed_form, 9)[1:]]}")
    print(f"Pole order at T = 1: {report.pole_order}")

    wild = assemble_wild_elliptic(WildEllipticData(p=2, e_prime=3, tower={1: 1, 3: 4}))
    print(f"\nWild closed form: {wild.closed_form}")
    print(f"Coefficients: {[int(c) for c in expand(wild.closed_form, 9)[1:]]}")


def verify_example():
    """Compare the closed form with Tate's algorithm over each extension"""
    print("\n" + "=" * 60)
    print("Example 3: Oracle verification")
    print("=" * 60)

    report = verify_curve(parse_curve_file("a1 = 1\na6 = t\n"), 8, Settings())
    for row in report.rows:
        print(f"  d = {row.d}: series {row.closed_form}, oracle {row.oracle} ({row.kodaira_type})")
    print(f"\nPassed: {report.passed}")


def torus_example():
    """Component group of a torus from its character lattice"""
    print("\n" + "=" * 60)
    print("Example 4: Tori")
    print("=" * 60)

    for d in (2, 3, 4, 6):
        action = companion_action(d)
        print(f"  Z[x]/Phi_{d}: rank of invariants {invariants_rank(action)}, H^1 = {h1(action).label}")


def psi_example():
    """The basic series psi_a"""
    print("\n" + "=" * 60)
    print("Example 5: psi_a")
    print("=" * 60)

    for a in range(4):
        print(f"  psi_{a} = {psi(a)}")


def main():
    """Main function"""
    print("\n" + "=" * 60)
    print("Neron Component Series - Usage Examples")
    print("=" * 60)

    tate_example()
    series_example()
    verify_example()
    torus_example()
    psi_example()

    print("\n" + "=" * 60)
    print("All examples completed!")
    print("=" * 60)


if __name__ == "__main__":
    main()
