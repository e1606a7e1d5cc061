"""
Galois Lattice Module
Integer lattices with a cyclic Galois action: rank of the invariants
and the first cohomology group ker(N) / im(sigma - 1)
"""

import logging
from math import lcm
from typing import List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy import Matrix, ZZ, cyclotomic_poly, divisors, eye, zeros
from sympy.abc import x as _x
from sympy.matrices.normalforms import invariant_factors

try:
    from sympy.core.intfunc import igcdex
except ImportError:  # sympy < 1.13
    from sympy.core.numbers import igcdex

from .errors import PositiveSplitRank

logger = logging.getLogger(__name__)


class CyclicLatticeAction(BaseModel):
    """Z^n with the generator of a cyclic group of order e acting by M"""

    model_config = ConfigDict(frozen=True)

    rank: int = Field(..., ge=1)
    order: int = Field(..., ge=1)
    matrix: Tuple[Tuple[int, ...], ...]

    @model_validator(mode="after")
    def check_order(self) -> "CyclicLatticeAction":
        if len(self.matrix) != self.rank or any(len(row) != self.rank for row in self.matrix):
            raise ValueError(f"Matrix must be {self.rank}x{self.rank}")
        m = self.as_matrix()
        identity = eye(self.rank)
        if m ** self.order != identity:
            raise ValueError(f"Matrix does not have order dividing {self.order}")
        for f in divisors(self.order)[:-1]:
            if m ** f == identity:
                raise ValueError(f"Matrix has order {f}, not {self.order}")
        return self

    @classmethod
    def from_matrix(cls, m: Matrix, order: int) -> "CyclicLatticeAction":
        rows = tuple(tuple(int(v) for v in m.row(i)) for i in range(m.rows))
        return cls(rank=m.rows, order=order, matrix=rows)

    def as_matrix(self) -> Matrix:
        return Matrix(self.matrix)

    def direct_sum(self, other: "CyclicLatticeAction") -> "CyclicLatticeAction":
        m = Matrix.diag(self.as_matrix(), other.as_matrix())
        return CyclicLatticeAction.from_matrix(m, lcm(self.order, other.order))

    def conjugate(self, u: Matrix) -> "CyclicLatticeAction":
        """Action in the basis given by the columns of the unimodular u"""
        if abs(u.det()) != 1:
            raise ValueError("Basis change must be unimodular")
        return CyclicLatticeAction.from_matrix(u.inv() * self.as_matrix() * u, self.order)


class FiniteAbelianGroup(BaseModel):
    """Finite abelian group by elementary divisors d_1 | d_2 | ... (each > 1)"""

    model_config = ConfigDict(frozen=True)

    invariants: Tuple[int, ...] = ()

    @model_validator(mode="after")
    def check_chain(self) -> "FiniteAbelianGroup":
        for d in self.invariants:
            if d <= 1:
                raise ValueError(f"Elementary divisor {d} must exceed 1")
        for a, b in zip(self.invariants, self.invariants[1:]):
            if b % a:
                raise ValueError(f"Elementary divisors {a}, {b} do not form a chain")
        return self

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FiniteAbelianGroup":
        """Normalize a product of cyclic groups of the given orders"""
        orders = [d for d in orders if d != 1]
        if not orders:
            return cls()
        factors = invariant_factors(Matrix.diag(*orders), domain=ZZ)
        return cls(invariants=tuple(abs(int(d)) for d in factors if abs(int(d)) != 1))

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariants:
            result *= d
        return result

    @property
    def exponent(self) -> int:
        return self.invariants[-1] if self.invariants else 1

    def direct_sum(self, other: "FiniteAbelianGroup") -> "FiniteAbelianGroup":
        return FiniteAbelianGroup.from_orders(self.invariants + other.invariants)

    @property
    def label(self) -> str:
        if not self.invariants:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariants)


def companion_action(d: int) -> CyclicLatticeAction:
    """Z[x]/(Phi_d) with multiplication by x, of order d"""
    coefficients = [int(c) for c in reversed(cyclotomic_poly(d, _x, polys=True).all_coeffs())]
    k = len(coefficients) - 1
    m = zeros(k, k)
    for i in range(1, k):
        m[i, i - 1] = 1
    for i in range(k):
        m[i, k - 1] = -coefficients[i]
    return CyclicLatticeAction.from_matrix(m, d)


def permutation_action(cycles: Sequence[int]) -> CyclicLatticeAction:
    """Permutation lattice: one cyclic shift block per cycle length"""
    n = sum(cycles)
    m = zeros(n, n)
    start = 0
    for length in cycles:
        for i in range(length):
            m[start + (i + 1) % length, start + i] = 1
        start += length
    order = 1
    for length in cycles:
        order = lcm(order, length)
    return CyclicLatticeAction.from_matrix(m, order)


def invariants_rank(action: CyclicLatticeAction) -> int:
    """Rank of the fixed sublattice ker(M - 1)"""
    m = action.as_matrix()
    return action.rank - (m - eye(action.rank)).rank()


def _add_columns(m: List[List[int]], i: int, j: int, a: int, b: int, c: int, d: int) -> None:
    # replace m[:, i] by a*m[:, i] + b*m[:, j]
    # and m[:, j] by c*m[:, i] + d*m[:, j]
    for row in m:
        e = row[i]
        row[i] = a * e + b * row[j]
        row[j] = c * e + d * row[j]


def _column_echelon(m: Matrix) -> Tuple[int, Matrix]:
    """
    Unimodular V with m V = [H | 0], H of full column rank

    Returns:
        Tuple[rank of m, V]
    """
    a = [[int(v) for v in m.row(i)] for i in range(m.rows)]
    n = m.cols
    v = [[int(i == j) for j in range(n)] for i in range(n)]
    pivot = 0
    for i in range(m.rows):
        if pivot == n:
            break
        for j in range(pivot + 1, n):
            if a[i][j] == 0:
                continue
            s, t, g = igcdex(a[i][pivot], a[i][j])
            u, w = -a[i][j] // g, a[i][pivot] // g
            _add_columns(a, pivot, j, s, t, u, w)
            _add_columns(v, pivot, j, s, t, u, w)
        if a[i][pivot] != 0:
            pivot += 1
    return pivot, Matrix(v)


def norm_matrix(action: CyclicLatticeAction, group_order: Optional[int] = None) -> Matrix:
    """N = 1 + M + ... + M^(L-1) for the group of order L"""
    group_order = group_order or action.order
    m = action.as_matrix()
    total, power = zeros(action.rank, action.rank), eye(action.rank)
    for _ in range(group_order):
        total += power
        power = power * m
    return total


def h1(action: CyclicLatticeAction, group_order: Optional[int] = None) -> FiniteAbelianGroup:
    """
    First cohomology ker(N) / im(M - 1) of the cyclic group

    Args:
        action: Lattice with its generator
        group_order: Order of the acting group when it acts through a
            quotient, a multiple of action.order

    Returns:
        FiniteAbelianGroup with the elementary divisors of the quotient
    """
    group_order = group_order or action.order
    if group_order % action.order:
        raise ValueError(f"Group order {group_order} is not a multiple of {action.order}")

    rank, v = _column_echelon(norm_matrix(action, group_order))
    k = action.rank - rank
    if k == 0:
        return FiniteAbelianGroup()

    # Coordinates of im(M - 1) in the kernel basis: the last k columns of V
    coordinates = v.inv() * (action.as_matrix() - eye(action.rank))
    x = coordinates[rank:, :]
    factors = [abs(int(d)) for d in invariant_factors(x, domain=ZZ)]
    if len(factors) < k or 0 in factors:
        raise ValueError("Image of M - 1 does not have finite index in ker(N)")
    group = FiniteAbelianGroup(invariants=tuple(d for d in factors if d != 1))
    logger.debug("H^1 of rank-%d action of order %d: %s", action.rank, group_order, group.label)
    return group


def phi_torus(action: CyclicLatticeAction) -> int:
    """
    Component group order of the torus with character lattice `action`

    Raises:
        PositiveSplitRank: The invariant sublattice is nonzero
    """
    split = invariants_rank(action)
    if split > 0:
        raise PositiveSplitRank(f"Split rank {split} > 0: the component group is infinite")
    return h1(action).order
