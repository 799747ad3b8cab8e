"""Upper direct summands of motives of products of generalized Severi-Brauer
varieties, named canonically and compared through the rational-map decision.

Descriptors are pure names: no Chow groups or projectors are built, because
two upper summands are isomorphic exactly when there are rational maps in
both directions between the underlying products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .brauer import AlgebraSpec, subgroup_generated, subgroups_equal
from .errors import ModelMismatchError, PreconditionError
from .maps import equivalent
from .reduction import GSBFactor, GSBProduct


def _factor_key(f: GSBFactor) -> tuple[int, int, tuple[int, ...]]:
    return (f.k, f.algebra.degree_exponent, f.algebra.brauer_class.exponents)


@dataclass(frozen=True)
class UpperMotiveDescriptor:
    """Canonical name of the upper summand of the motive of a product.

    Factors are sorted so equal products get equal names; all semantics go
    through the rational-map decision, never through the name itself.
    """

    factors: tuple[GSBFactor, ...]

    def __post_init__(self) -> None:
        factors = tuple(sorted(self.factors, key=_factor_key))
        object.__setattr__(self, "factors", factors)
        if not factors:
            raise PreconditionError("a motive descriptor needs at least one factor")
        model = factors[0].model
        for f in factors[1:]:
            if f.model != model:
                raise ModelMismatchError("descriptor factors from different models")

    @property
    def model(self):
        return self.factors[0].model

    def product(self) -> GSBProduct:
        return GSBProduct(self.factors)

    def __str__(self) -> str:
        ks = ",".join(str(f.k) for f in self.factors)
        names = ",".join(str(f.algebra) for f in self.factors)
        return "M^{%s}_{%s}" % (ks, names)


def upper_motive(x: GSBProduct) -> UpperMotiveDescriptor:
    """Canonical descriptor of the upper summand of the motive of x."""
    return UpperMotiveDescriptor(x.factors)


def motives_isomorphic(a: UpperMotiveDescriptor, b: UpperMotiveDescriptor) -> bool:
    """True iff there are rational maps both ways between the two products."""
    return equivalent(a.product(), b.product()).holds


def classify_single(d: AlgebraSpec, k: int, d2: AlgebraSpec, k2: int) -> bool:
    """Single-factor fast path: equal k and equal generated cyclic subgroups.

    Must agree with motives_isomorphic on the corresponding descriptors.
    """
    for alg, kk in ((d, k), (d2, k2)):
        if not 0 <= kk < alg.degree_exponent:
            raise PreconditionError(
                f"k={kk} out of range for degree {alg.degree} "
                f"(need 0 <= k < {alg.degree_exponent})"
            )
    if d.model != d2.model:
        raise ModelMismatchError("algebras use different group models")
    return k == k2 and subgroups_equal(
        subgroup_generated([d.brauer_class]),
        subgroup_generated([d2.brauer_class]),
    )


class FamilyVerdict(Enum):
    EQUAL = "EQUAL"
    TATE_ONLY = "TATE_ONLY"
    PARTIAL = "PARTIAL"


@dataclass(frozen=True)
class FamilyComparison:
    """Outcome of matching two families' upper-motive sets against each other."""

    verdict: FamilyVerdict
    shared: tuple[tuple[UpperMotiveDescriptor, UpperMotiveDescriptor], ...]
    unmatched_left: tuple[UpperMotiveDescriptor, ...]
    unmatched_right: tuple[UpperMotiveDescriptor, ...]

    @property
    def separating(self) -> Optional[UpperMotiveDescriptor]:
        if self.unmatched_left:
            return self.unmatched_left[0]
        if self.unmatched_right:
            return self.unmatched_right[0]
        return None


def _descriptor_key(d: UpperMotiveDescriptor):
    return (len(d.factors), tuple(_factor_key(f) for f in d.factors))


def family_motives(
    algebras: Sequence[AlgebraSpec],
) -> tuple[UpperMotiveDescriptor, ...]:
    """All upper motives the family contributes: one descriptor per nonempty
    sub-product and admissible k-tuple, deduplicated and canonically sorted."""
    algebras = tuple(algebras)
    if not algebras:
        raise PreconditionError("a family needs at least one algebra")
    model = algebras[0].model
    for a in algebras[1:]:
        if a.model != model:
            raise ModelMismatchError("family algebras use different group models")
    found = set()
    n = len(algebras)
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            ranges = [range(algebras[j].degree_exponent) for j in subset]
            for ks in itertools.product(*ranges):
                factors = tuple(
                    GSBFactor(algebras[j], kk) for j, kk in zip(subset, ks)
                )
                found.add(UpperMotiveDescriptor(factors))
    return tuple(sorted(found, key=_descriptor_key))


def _pair_isomorphic(a: UpperMotiveDescriptor, b: UpperMotiveDescriptor) -> bool:
    # Single-factor pairs go through the subgroup fast path, which also covers
    # unequal degrees; everything else uses the full rational-map decision.
    if len(a.factors) == 1 and len(b.factors) == 1:
        fa, fb = a.factors[0], b.factors[0]
        return classify_single(fa.algebra, fa.k, fb.algebra, fb.k)
    return motives_isomorphic(a, b)


def compare_families(
    left: Sequence[AlgebraSpec], right: Sequence[AlgebraSpec]
) -> FamilyComparison:
    """Match the upper-motive sets of two families of division algebras.

    EQUAL means every motive on either side has an isomorphic partner,
    TATE_ONLY means no pair is isomorphic, PARTIAL means some but not all,
    with the unmatched descriptors reported as separating witnesses.
    """
    l_motives = family_motives(left)
    r_motives = family_motives(right)
    if l_motives[0].model != r_motives[0].model:
        raise ModelMismatchError("families use different group models")
    shared = []
    matched_left = set()
    matched_right = set()
    for a in l_motives:
        for b in r_motives:
            if _pair_isomorphic(a, b):
                shared.append((a, b))
                matched_left.add(a)
                matched_right.add(b)
    unmatched_left = tuple(d for d in l_motives if d not in matched_left)
    unmatched_right = tuple(d for d in r_motives if d not in matched_right)
    if not shared:
        verdict = FamilyVerdict.TATE_ONLY
    elif not unmatched_left and not unmatched_right:
        verdict = FamilyVerdict.EQUAL
    else:
        verdict = FamilyVerdict.PARTIAL
    return FamilyComparison(verdict, tuple(shared), unmatched_left, unmatched_right)
