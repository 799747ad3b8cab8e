"""Shared model builders and brute-force oracles.

The oracles work on raw exponent tuples with repeated table addition and
math.gcd only, so they stay independent of the library code they check.
"""

from __future__ import annotations

import itertools
import math

from gsbmaps import (
    BrauerGroupModel,
    GSBFactor,
    GSBProduct,
    division_algebra,
)

# ---------------------------------------------------------------------------
# raw group-table arithmetic (the oracle side)


def table_add(orders, a, b):
    return tuple((x + y) % o for x, y, o in zip(a, b, orders))


def table_neg(orders, a):
    return tuple((-x) % o for x, o in zip(a, orders))


def table_zero(orders):
    return (0,) * len(orders)


def scalar_multiple(orders, a, coeff):
    """coeff * a computed by repeated addition, negating first if needed."""
    if coeff < 0:
        a = table_neg(orders, a)
        coeff = -coeff
    acc = table_zero(orders)
    for _ in range(coeff):
        acc = table_add(orders, acc, a)
    return acc


def oracle_combine(orders, terms):
    acc = table_zero(orders)
    for vec, coeff in terms:
        acc = table_add(orders, acc, scalar_multiple(orders, vec, coeff))
    return acc


def element_order(orders, a):
    acc = a
    n = 1
    while acc != table_zero(orders):
        acc = table_add(orders, acc, a)
        n += 1
    return n


def oracle_exponent(orders, a):
    return element_order(orders, a)


def oracle_index(orders, a):
    """Index under the independent-generator rule: product of the orders of
    the single-component projections, each found by repeated addition."""
    result = 1
    for pos, x in enumerate(a):
        if x == 0:
            continue
        component = tuple(x if j == pos else 0 for j in range(len(a)))
        result *= element_order(orders, component)
    return result


def oracle_closure(orders, gens):
    seen = {table_zero(orders)}
    frontier = [table_zero(orders)]
    while frontier:
        cur = frontier.pop()
        for g in gens:
            nxt = table_add(orders, cur, g)
            if nxt not in seen:
                seen.add(nxt)
                frontier.append(nxt)
    return frozenset(seen)


def oracle_reduced_index(p, s, orders, target_vec, base):
    """Full enumeration of the index-reduction minimum.

    base is a list of (vector, k) pairs; returns (value, first minimizer).
    """
    bound = p**s
    best = None
    best_tup = None
    for tup in itertools.product(range(1, bound + 1), repeat=len(base)):
        deficiency = 1
        terms = [(target_vec, 1)]
        for ij, (vec, k) in zip(tup, base):
            pk = p**k
            deficiency *= pk // math.gcd(ij, pk)
            terms.append((vec, -ij))
        value = deficiency * oracle_index(orders, oracle_combine(orders, terms))
        if best is None or value < best:
            best, best_tup = value, tup
    return best, best_tup


# ---------------------------------------------------------------------------
# model builders


def biquaternion_model():
    """(Z/2)^3 with the three pairwise tensor products of the generators."""
    m = BrauerGroupModel(2, (2, 2, 2))
    d1 = division_algebra(m.element((1, 1, 0)), "Δ1")
    d2 = division_algebra(m.element((1, 0, 1)), "Δ2")
    d3 = division_algebra(m.element((0, 1, 1)), "Δ3")
    return m, d1, d2, d3


def mixed_exponent_model():
    """Z/4 x Z/2 x Z/2 with one exponent-4 and two exponent-2 algebras of index 4."""
    m = BrauerGroupModel(2, (4, 2, 2))
    d1 = division_algebra(m.element((1, 0, 0)), "D1")
    d2 = division_algebra(m.element((2, 1, 0)), "D2")
    d3 = division_algebra(m.element((2, 0, 1)), "D3")
    return m, d1, d2, d3


ENUMERATED_MODELS = (
    BrauerGroupModel(2, (2,)),
    BrauerGroupModel(2, (2, 2)),
    BrauerGroupModel(2, (2, 2, 2)),
    BrauerGroupModel(2, (4, 2)),
)


def division_classes(model):
    """Every nonzero class, as the division algebra of its own index."""
    return [division_algebra(c) for c in model.elements() if not c.is_zero]


def by_degree(model):
    """Division algebras of a model grouped by degree exponent s >= 1."""
    grouped = {}
    for alg in division_classes(model):
        grouped.setdefault(alg.degree_exponent, []).append(alg)
    return grouped


def product_of(algebras, ks):
    return GSBProduct(tuple(GSBFactor(a, k) for a, k in zip(algebras, ks)))


def uniform_product(algebras, k):
    return product_of(algebras, [k] * len(algebras))
