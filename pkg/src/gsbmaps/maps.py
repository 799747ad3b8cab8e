"""Existence of rational maps between products of generalized Severi-Brauer
varieties, with explicit certificates.

A rational map into a product exists iff every target factor acquires a
rational point over the source's function field, and X(p^k;D) acquires a
rational point iff the reduced index of D there divides p^k.  On top of the
plain decisions, this module searches the exponent-vector relations that
certify equivalence when the families involved have uniform exponents:
hypothesis violations raise PreconditionError rather than returning False,
because outside the hypotheses the criteria are inapplicable, not negative.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .brauer import (
    AlgebraSpec,
    combine,
    subgroup_generated,
    subgroups_equal,
)
from .errors import InvariantViolation, ModelMismatchError, PreconditionError
from .reduction import GSBFactor, GSBProduct, reduced_index, vp


@dataclass(frozen=True)
class FactorWitness:
    """Reduced-index certificate for one target factor over a base product."""

    factor: GSBFactor
    has_point: bool
    index: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class DirectionReport:
    """One direction of a rational-map decision, factor by factor."""

    exists: bool
    factors: tuple[FactorWitness, ...]


@dataclass(frozen=True)
class RationalMapReport:
    """Outcome of a rational-map query; backward is None for one-way queries."""

    forward: DirectionReport
    backward: Optional[DirectionReport] = None

    @property
    def holds(self) -> bool:
        if self.backward is None:
            return self.forward.exists
        return self.forward.exists and self.backward.exists


def has_rational_point_over(target: GSBFactor, base: GSBProduct) -> bool:
    """True iff the reduced index of the factor's algebra divides p^k."""
    value = reduced_index(target.algebra, base).value
    return target.reduced_dim % value == 0


def _direction(source: GSBProduct, target: GSBProduct) -> DirectionReport:
    witnesses = []
    for f in target.factors:
        ri = reduced_index(f.algebra, source)
        has_point = f.reduced_dim % ri.value == 0
        witnesses.append(FactorWitness(f, has_point, ri.value, ri.witness))
    return DirectionReport(all(w.has_point for w in witnesses), tuple(witnesses))


def exists_rational_map(source: GSBProduct, target: GSBProduct) -> RationalMapReport:
    """Decide source --> target, testing each target factor over the source."""
    if source.model != target.model:
        raise ModelMismatchError("source and target use different group models")
    return RationalMapReport(forward=_direction(source, target))


def equivalent(a: GSBProduct, b: GSBProduct) -> RationalMapReport:
    """Decide rational maps in both directions between the two products."""
    if a.model != b.model:
        raise ModelMismatchError("products use different group models")
    return RationalMapReport(forward=_direction(a, b), backward=_direction(b, a))


def classical_criterion(
    left: Sequence[AlgebraSpec], right: Sequence[AlgebraSpec]
) -> bool:
    """Subgroup test for mutual rational maps between classical (k=0) products.

    True iff the classes of the two families generate the same subgroup.
    """
    algebras = list(left) + list(right)
    if not algebras:
        raise PreconditionError("both families are empty")
    model = algebras[0].model
    for a in algebras:
        if a.model != model:
            raise ModelMismatchError("families use different group models")
    lhs = subgroup_generated([a.brauer_class for a in left], model)
    rhs = subgroup_generated([a.brauer_class for a in right], model)
    return subgroups_equal(lhs, rhs)


def _common_degree(algebras: Sequence[AlgebraSpec]) -> int:
    degrees = {a.degree_exponent for a in algebras}
    if len(degrees) != 1:
        shown = sorted({a.degree for a in algebras})
        raise PreconditionError(
            "criterion needs one common degree, got degrees "
            + ", ".join(map(str, shown))
        )
    return degrees.pop()


def relation_witness(
    target: AlgebraSpec, base: GSBProduct
) -> Optional[tuple[int, ...]]:
    """Balanced exponent relation certifying the rational point on X(p^k;target).

    Hypotheses: all base factors share one k, all algebras share one degree
    p^s, and exp(target) >= exp(D_j) for every base algebra.  If the point
    exists, returns the lexicographically smallest tuple i in [1, p^s]^n with

        sum_j vp(gcd(i_j, p^k)) = k(n-1)   and   [target] = sum_j i_j [D_j],

    otherwise None.
    """
    ks = {f.k for f in base.factors}
    if len(ks) != 1:
        raise PreconditionError("all base factors must share one k")
    k = ks.pop()
    s = _common_degree([target, *base.algebras()])
    biggest = max(f.algebra.exponent for f in base.factors)
    if target.exponent < biggest:
        raise PreconditionError(
            f"exponent hypothesis fails: exp(target) = {target.exponent} is "
            f"smaller than a base exponent {biggest}"
        )
    if not has_rational_point_over(GSBFactor(target, k), base):
        return None
    p = base.prime
    n = len(base.factors)
    pk = p**k
    budget = k * (n - 1)
    for tup in itertools.product(range(1, p**s + 1), repeat=n):
        if sum(vp(math.gcd(ij, pk), p) for ij in tup) != budget:
            continue
        terms = [(target.brauer_class, 1)]
        terms += [(f.algebra.brauer_class, -ij) for f, ij in zip(base.factors, tup)]
        if combine(terms).is_zero:
            return tup
    raise InvariantViolation(
        "rational point exists but no balanced relation was found"
    )


@dataclass(frozen=True)
class MutualRelation:
    """Balanced relation matrices certifying equivalence of two k-products.

    Row i of left_over_right expresses the i-th left class over the right
    family; right_over_left is the symmetric certificate.
    """

    left_over_right: tuple[tuple[int, ...], ...]
    right_over_left: tuple[tuple[int, ...], ...]


def _balanced_row(
    d: AlgebraSpec, family: Sequence[AlgebraSpec], k: int, s: int
) -> Optional[tuple[int, ...]]:
    p = d.prime
    m = len(family)
    pk = p**k
    budget = k * (m - 1)
    for row in itertools.product(range(1, p**s + 1), repeat=m):
        if sum(vp(math.gcd(a, pk), p) for a in row) != budget:
            continue
        terms = [(d.brauer_class, 1)]
        terms += [(f.brauer_class, -a) for f, a in zip(family, row)]
        if combine(terms).is_zero:
            return row
    return None


def mutual_relation_witness(
    left: Sequence[AlgebraSpec], right: Sequence[AlgebraSpec], k: int
) -> Optional[MutualRelation]:
    """Search mutual balanced relations between two equal-exponent families.

    Under the hypotheses (one common degree p^s, 0 <= k < s, one exponent
    within each family) the witness exists iff there are rational maps in
    both directions between the two k-products.  Rows are lexicographically
    smallest; returns None when some class admits no balanced relation.
    """
    left = tuple(left)
    right = tuple(right)
    if not left or not right:
        raise PreconditionError("families must be nonempty")
    model = left[0].model
    for a in (*left, *right):
        if a.model != model:
            raise ModelMismatchError("families use different group models")
    s = _common_degree([*left, *right])
    if not 0 <= k < s:
        raise PreconditionError(f"k={k} out of range (need 0 <= k < {s})")
    for name, family in (("left", left), ("right", right)):
        exps = {a.exponent for a in family}
        if len(exps) != 1:
            raise PreconditionError(
                f"{name} family must have one exponent throughout, got "
                + ", ".join(map(str, sorted(exps)))
            )
    left_rows = []
    for d in left:
        row = _balanced_row(d, right, k, s)
        if row is None:
            return None
        left_rows.append(row)
    right_rows = []
    for d in right:
        row = _balanced_row(d, left, k, s)
        if row is None:
            return None
        right_rows.append(row)
    return MutualRelation(tuple(left_rows), tuple(right_rows))


def dimension(f: GSBFactor) -> int:
    """Dimension of X(p^k;D): p^k (p^s - p^k), with p^s the degree of D."""
    m = f.reduced_dim
    return m * (f.algebra.degree - m)
