"""Finite abelian p-group model of p-primary Brauer classes.

A model fixes a prime p together with finitely many generator orders, each
a power of p.  A class is an exponent vector over those generators, always
stored reduced into [0, order).  The exponent of a class (its order in the
group) is determined by the group structure; its index is prescribed by the
model's pluggable index rule.  Everything is immutable and pure.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .errors import ModelMismatchError, PreconditionError, UnsupportedModelError

GENERIC_INDEPENDENT = "GENERIC_INDEPENDENT"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _p_power_exponent(n: int, p: int) -> int | None:
    """e with n == p**e, or None if n is not a power of p."""
    if n <= 0:
        return None
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e if n == 1 else None


@dataclass(frozen=True)
class BrauerGroupModel:
    """The subgroup of a Brauer group under study, given by generator orders.

    All orders are powers of one prime and strictly greater than 1.  The
    index_rule tag selects how the index of a class is computed from its
    exponent vector; see generic_index.
    """

    prime: int
    generator_orders: tuple[int, ...]
    index_rule: str = GENERIC_INDEPENDENT

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "generator_orders", tuple(int(o) for o in self.generator_orders)
        )
        if not _is_prime(self.prime):
            raise PreconditionError(f"model prime must be a prime number, got {self.prime}")
        if not self.generator_orders:
            raise PreconditionError("model must have at least one generator")
        for o in self.generator_orders:
            if o <= 1 or _p_power_exponent(o, self.prime) is None:
                raise PreconditionError(
                    f"generator order {o} is not a power of {self.prime} greater than 1"
                )

    @property
    def rank(self) -> int:
        return len(self.generator_orders)

    @property
    def order(self) -> int:
        n = 1
        for o in self.generator_orders:
            n *= o
        return n

    def zero(self) -> BrauerClass:
        return BrauerClass(self, (0,) * self.rank)

    def element(self, exponents: Sequence[int]) -> BrauerClass:
        return BrauerClass(self, tuple(exponents))

    def elements(self) -> Iterator[BrauerClass]:
        """All classes of the model, in lexicographic order of exponents."""
        for exps in itertools.product(*(range(o) for o in self.generator_orders)):
            yield BrauerClass(self, exps)

    def __str__(self) -> str:
        return " x ".join(f"Z/{o}" for o in self.generator_orders)


@dataclass(frozen=True)
class BrauerClass:
    """An element of a BrauerGroupModel, as a canonical reduced exponent vector."""

    group: BrauerGroupModel
    exponents: tuple[int, ...]

    def __post_init__(self) -> None:
        orders = self.group.generator_orders
        exps = tuple(int(e) for e in self.exponents)
        if len(exps) != len(orders):
            raise PreconditionError(
                f"expected {len(orders)} exponents, got {len(exps)}"
            )
        object.__setattr__(
            self, "exponents", tuple(e % o for e, o in zip(exps, orders))
        )

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.exponents)

    def _same_group(self, other: BrauerClass) -> None:
        if self.group != other.group:
            raise ModelMismatchError("classes belong to different group models")

    def __add__(self, other: BrauerClass) -> BrauerClass:
        if not isinstance(other, BrauerClass):
            return NotImplemented
        self._same_group(other)
        return BrauerClass(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def __neg__(self) -> BrauerClass:
        return BrauerClass(self.group, tuple(-e for e in self.exponents))

    def __sub__(self, other: BrauerClass) -> BrauerClass:
        if not isinstance(other, BrauerClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, n: int) -> BrauerClass:
        # integer multiple of the class, i.e. the class of the n-th tensor power
        if not isinstance(n, int):
            return NotImplemented
        return BrauerClass(self.group, tuple(n * e for e in self.exponents))

    __rmul__ = __mul__

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.exponents)) + ")"


def combine(terms: Sequence[tuple[BrauerClass, int]]) -> BrauerClass:
    """Integer combination sum_j c_j * class_j, reduced into the model.

    Realizes tensor expressions such as D (x) D_1^{-i_1} (x) ... (x) D_n^{-i_n}
    as a single class.  Coefficients may be negative or oversized.
    """
    if not terms:
        raise PreconditionError("combine needs at least one term")
    group = terms[0][0].group
    orders = group.generator_orders
    acc = [0] * len(orders)
    for cls, coeff in terms:
        if cls.group != group:
            raise ModelMismatchError("combine across different group models")
        c = int(coeff)
        for idx, (e, o) in enumerate(zip(cls.exponents, orders)):
            acc[idx] = (acc[idx] + c * e) % o
    return BrauerClass(group, tuple(acc))


def class_exponent(c: BrauerClass) -> int:
    """Order of the class in its model, always a power of the model prime."""
    result = 1
    for e, o in zip(c.exponents, c.group.generator_orders):
        result = math.lcm(result, o // math.gcd(e, o))
    return result


IndexRule = Callable[[BrauerClass], int]


def _independent_generator_index(c: BrauerClass) -> int:
    # Generators model division algebras with no relations between their
    # underlying algebras beyond the group structure, so the index of a
    # combination is the product of the component orders.
    result = 1
    for e, o in zip(c.exponents, c.group.generator_orders):
        result *= o // math.gcd(e, o)
    return result


_INDEX_RULES: dict[str, IndexRule] = {
    GENERIC_INDEPENDENT: _independent_generator_index,
}


def register_index_rule(tag: str, rule: IndexRule) -> None:
    """Register an alternative index rule under a fresh tag."""
    if tag in _INDEX_RULES:
        raise PreconditionError(f"index rule {tag!r} is already registered")
    _INDEX_RULES[tag] = rule


def generic_index(c: BrauerClass) -> int:
    """Index of the division algebra in the class c, per the model's rule."""
    rule = _INDEX_RULES.get(c.group.index_rule)
    if rule is None:
        raise UnsupportedModelError(
            f"model has unknown index rule {c.group.index_rule!r}"
        )
    return rule(c)


@dataclass(frozen=True)
class AlgebraSpec:
    """A division algebra: a Brauer class plus its degree p**degree_exponent.

    Division means the model index of the class equals the declared degree.
    The label is display-only and ignored by equality.
    """

    brauer_class: BrauerClass
    degree_exponent: int
    label: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.degree_exponent < 0:
            raise PreconditionError("degree exponent must be nonnegative")
        declared = self.prime ** self.degree_exponent
        actual = generic_index(self.brauer_class)
        if actual != declared:
            name = self.label or str(self.brauer_class)
            raise PreconditionError(
                f"algebra {name}: not a division algebra of the declared degree "
                f"(model index {actual}, declared degree {declared})"
            )

    @property
    def model(self) -> BrauerGroupModel:
        return self.brauer_class.group

    @property
    def prime(self) -> int:
        return self.brauer_class.group.prime

    @property
    def degree(self) -> int:
        return self.prime ** self.degree_exponent

    @property
    def index(self) -> int:
        return generic_index(self.brauer_class)

    @property
    def exponent(self) -> int:
        return class_exponent(self.brauer_class)

    def __str__(self) -> str:
        return self.label if self.label is not None else str(self.brauer_class)


def division_algebra(c: BrauerClass, label: str | None = None) -> AlgebraSpec:
    """The division algebra of class c, with degree equal to its model index."""
    e = _p_power_exponent(generic_index(c), c.group.prime)
    if e is None:  # index rules must return p-powers; guard anyway
        raise PreconditionError("index rule returned a value that is not a p-power")
    return AlgebraSpec(c, e, label)


def _class_key(c: BrauerClass) -> tuple[int, ...]:
    return c.exponents


@dataclass(frozen=True)
class Subgroup:
    """An enumerated subgroup of a model, canonically sorted.

    Model groups are desk scale, so closure is validated outright.
    """

    group: BrauerGroupModel
    elements: tuple[BrauerClass, ...]

    def __post_init__(self) -> None:
        elems = tuple(sorted(set(self.elements), key=_class_key))
        object.__setattr__(self, "elements", elems)
        members = set(elems)
        for a in elems:
            if a.group != self.group:
                raise ModelMismatchError("subgroup elements from a different model")
        if self.group.zero() not in members:
            raise PreconditionError("subgroup must contain the zero class")
        for a in elems:
            for b in elems:
                if a + b not in members:
                    raise PreconditionError("element set is not closed under addition")

    def __contains__(self, c: BrauerClass) -> bool:
        return c in set(self.elements)

    def __iter__(self) -> Iterator[BrauerClass]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)


def subgroup_generated(
    classes: Sequence[BrauerClass], model: BrauerGroupModel | None = None
) -> Subgroup:
    """Closure of the given classes under addition.

    The model argument is only needed for an empty generating set.
    """
    if model is None:
        if not classes:
            raise PreconditionError("empty generating set needs an explicit model")
        model = classes[0].group
    for c in classes:
        if c.group != model:
            raise ModelMismatchError("generators from a different group model")
    zero = model.zero()
    seen = {zero}
    frontier = [zero]
    while frontier:
        cur = frontier.pop()
        for g in classes:
            nxt = cur + g
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return Subgroup(model, tuple(seen))


def subgroups_equal(a: Subgroup, b: Subgroup) -> bool:
    """True iff the two canonical element sets coincide."""
    if a.group != b.group:
        raise ModelMismatchError("subgroups of different group models")
    return a.elements == b.elements
