"""Index reduction over function fields of products of generalized
Severi-Brauer varieties.

For division algebras D, D_1, ..., D_n all of degree p^s, the index of D
over the function field of X(p^{k_1};D_1) x ... x X(p^{k_n};D_n) is

    min over (i_1,...,i_n) in [1, p^s]^n of
        prod_j p^{k_j}/gcd(i_j, p^{k_j}) * ind(D (x) D_1^{-i_1} (x) ... (x) D_n^{-i_n})

computed here by full enumeration, with the lexicographically smallest
minimizer returned as a witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .brauer import AlgebraSpec, BrauerGroupModel, combine, generic_index
from .errors import ModelMismatchError, PreconditionError


@dataclass(frozen=True)
class GSBFactor:
    """X(p^k; D): right ideals of reduced dimension p^k in a division algebra D."""

    algebra: AlgebraSpec
    k: int

    def __post_init__(self) -> None:
        if not 0 <= self.k < self.algebra.degree_exponent:
            raise PreconditionError(
                f"k={self.k} out of range for an algebra of degree "
                f"{self.algebra.degree} (need 0 <= k < {self.algebra.degree_exponent})"
            )

    @property
    def model(self) -> BrauerGroupModel:
        return self.algebra.model

    @property
    def prime(self) -> int:
        return self.algebra.prime

    @property
    def reduced_dim(self) -> int:
        return self.prime ** self.k

    def __str__(self) -> str:
        return f"X({self.reduced_dim};{self.algebra})"


@dataclass(frozen=True)
class GSBProduct:
    """Nonempty product of generalized Severi-Brauer factors over one model."""

    factors: tuple[GSBFactor, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise PreconditionError("a product needs at least one factor")
        model = self.factors[0].model
        for f in self.factors[1:]:
            if f.model != model:
                raise ModelMismatchError("factors from different group models")

    @property
    def model(self) -> BrauerGroupModel:
        return self.factors[0].model

    @property
    def prime(self) -> int:
        return self.factors[0].prime

    def algebras(self) -> tuple[AlgebraSpec, ...]:
        return tuple(f.algebra for f in self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __str__(self) -> str:
        return " x ".join(str(f) for f in self.factors)


def vp(n: int, p: int) -> int:
    """p-adic valuation of a positive integer: the largest e with p^e | n."""
    if p < 2:
        raise PreconditionError(f"vp needs a base >= 2, got {p}")
    if n < 1:
        raise PreconditionError(f"vp needs a positive integer, got {n}")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def reduction_term(target: AlgebraSpec, base: GSBProduct, i: Sequence[int]) -> int:
    """Value of one candidate twist in the index-reduction minimum.

    The tuple i selects the tensor powers D_j^{-i_j}; the result is the gcd
    deficiency factor prod_j p^{k_j}/gcd(i_j, p^{k_j}) times the model index
    of the twisted class.
    """
    if target.model != base.model:
        raise ModelMismatchError("target and base use different group models")
    tup = tuple(int(x) for x in i)
    if len(tup) != len(base.factors):
        raise PreconditionError(
            f"tuple length {len(tup)} does not match {len(base.factors)} base factors"
        )
    p = base.prime
    deficiency = 1
    terms = [(target.brauer_class, 1)]
    for ij, f in zip(tup, base.factors):
        if ij < 1:
            raise PreconditionError(f"tuple entries must be >= 1, got {ij}")
        pk = p ** f.k
        deficiency *= pk // math.gcd(ij, pk)
        terms.append((f.algebra.brauer_class, -ij))
    return deficiency * generic_index(combine(terms))


class ReducedIndex(NamedTuple):
    """Minimum over all twists, with the first tuple attaining it."""

    value: int
    witness: tuple[int, ...]


def reduced_index(target: AlgebraSpec, base: GSBProduct) -> ReducedIndex:
    """Index of target over the function field of base.

    Requires target and every base algebra to share one degree p^s.  The
    minimum ranges over all tuples in [1, p^s]^n; the witness is the
    lexicographically smallest minimizer, so results are deterministic.
    """
    if target.model != base.model:
        raise ModelMismatchError("target and base use different group models")
    s = target.degree_exponent
    for f in base.factors:
        if f.algebra.degree_exponent != s:
            raise PreconditionError(
                f"index reduction needs one common degree: target {target} has "
                f"degree {target.degree}, factor {f} has degree {f.algebra.degree}"
            )
    bound = base.prime ** s
    best: int | None = None
    best_tuple: tuple[int, ...] = ()
    for tup in itertools.product(range(1, bound + 1), repeat=len(base.factors)):
        value = reduction_term(target, base, tup)
        if best is None or value < best:
            best, best_tuple = value, tup
    assert best is not None
    return ReducedIndex(best, best_tuple)
