"""
Tier factorization with respect to a fixed standard flag.

Tier ``i`` holds the reflections of the ``i``-th face of the flag that are
not reflections of the ``(i-1)``-th face. Every element is uniquely a
product ``r_n ... r_2 r_1`` with ``r_i`` in tier ``i`` or the identity, and
the number of non-identity factors is its reflection length.

Factorizations are stored as tuples ``(r_n, ..., r_1)`` of elements, the
identity standing for an empty slot.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Sequence

from .groups import (
    Element, Family, GroupError, GroupId, absolute_length, compose, degree_sequence,
    elements, format_element, identity, reflections,
)
from .poset import GradedPoset, is_spanning_subposet, relabel

__all__ = [
    "FactorizationError", "Factorization", "reflection_tiers", "factorize",
    "factorize_exhaustive", "phi", "format_factorization", "tier_tuples",
    "verify_length_formula", "embed_claw_product", "bumps", "degrees_match_tiers",
]

Factorization = tuple[Element, ...]


class FactorizationError(GroupError):
    pass


def reflection_tiers(g: GroupId) -> list[list[Element]]:
    """``tiers[i-1]`` is tier ``i`` for the standard flag of ``g``.

    A_n uses the flag of initial segments ``[1] ⊂ [1,2] ⊂ ...``, so tier ``i``
    is ``{(j i+1) : j <= i}``. B_n uses faces whose symmetries act on
    ``±[i]``; tier ``i`` is ``[i]`` together with ``((j,i))`` and ``((-j,i))``
    for ``j < i``. For I2(m), tier 1 is the mirror ``s0`` and tier 2 the rest.
    """
    ts = reflections(g)
    if g.family is Family.I2:
        return [[t for t in ts if t.data[1] == 0], [t for t in ts if t.data[1] != 0]]
    e = identity(g)
    tiers: list[list[Element]] = []
    for i in range(1, g.parameter + 1):
        # tier i = reflections moving the point the i-th face adds
        point = i + 1 if g.family is Family.A else i
        fixed_beyond = range(point + 1, len(e.data) + 1)
        tiers.append([t for t in ts if t(point) != point and all(t(x) == x for x in fixed_beyond)])
    return tiers


def _peel(w: Element, i: int) -> Element:
    """The tier-``i`` factor (or identity) to strip from ``w`` whose lower tiers are solved."""
    g = w.group
    if g.family is Family.A:
        top = i + 1
        j = w(top)
        if j == top:
            return identity(g)
        images = list(range(1, g.parameter + 2))
        images[j - 1], images[top - 1] = top, j
        return Element(g, tuple(images))
    v = w(i)
    if v == i:
        return identity(g)
    images = list(range(1, g.parameter + 1))
    if v == -i:
        images[i - 1] = -i
    else:
        # ((v, i)) with v = ±j, j < i: sends v -> i and i -> v
        images[i - 1] = v
        images[abs(v) - 1] = i if v > 0 else -i
    return Element(g, tuple(images))


def factorize(w: Element) -> Factorization:
    """Unique ``(r_n, ..., r_1)`` with ``w == r_n ∘ ... ∘ r_1``.

    Peels the top tier first: ``r_n`` is the unique tier-``n`` reflection
    (or identity) that returns the last point to itself, then recurses on
    ``r_n ∘ w``.
    """
    g = w.group
    e = identity(g)
    if g.family is Family.I2:
        kind, a = w.data
        s0 = Element(g, (1, 0))
        if kind == 1:
            return (e, s0) if a == 0 else (w, e)
        return (e, e) if a == 0 else (Element(g, (1, a)), s0)
    factors = []
    rest = w
    for i in range(g.parameter, 0, -1):
        r = _peel(rest, i)
        factors.append(r)
        rest = compose(r, rest)
    assert rest == e
    return tuple(factors)


def tier_tuples(g: GroupId):
    """Every valid ``(r_n, ..., r_1)`` tuple, in a fixed order."""
    e = identity(g)
    slots = [[e] + tier for tier in reversed(reflection_tiers(g))]
    return cartesian(*slots)


def factorize_exhaustive(w: Element) -> Factorization:
    """Test oracle: search every tier tuple for the ones multiplying to ``w``."""
    found = [f for f in tier_tuples(w.group) if phi(f, check=False) == w]
    if len(found) != 1:
        raise FactorizationError(f"{w} has {len(found)} tier factorizations")
    return found[0]


def phi(factors: Sequence[Element], check: bool = True) -> Element:
    """The product ``r_n ∘ ... ∘ r_1`` of a tier tuple (``r_1`` acts first)."""
    if not factors:
        raise FactorizationError("empty factorization")
    g = factors[0].group
    if check:
        tiers = reflection_tiers(g)
        if len(factors) != len(tiers):
            raise FactorizationError(f"{g} needs {len(tiers)} factors, got {len(factors)}")
        e = identity(g)
        for pos, (r, tier) in enumerate(zip(factors, reversed(tiers))):
            if r != e and r not in tier:
                raise FactorizationError(
                    f"factor {format_element(r)} is not in tier {len(tiers) - pos}")
    result = factors[0]
    for r in factors[1:]:
        result = compose(result, r)
    return result


def format_factorization(factors: Sequence[Element]) -> str:
    """Factors left to right as ``r_n ... r_1``, identities shown as ``e``."""
    return "".join(format_element(r) for r in factors)


def verify_length_formula(g: GroupId) -> bool:
    """Check that reflection length equals the number of non-identity factors, for all of ``g``."""
    e = identity(g)
    return all(absolute_length(w) == sum(r != e for r in factorize(w)) for w in elements(g))


def bumps(factors: Factorization):
    """Tuples obtained by filling one identity slot with a tier reflection."""
    g = factors[0].group
    e = identity(g)
    tiers = list(reversed(reflection_tiers(g)))
    for pos, r in enumerate(factors):
        if r == e:
            for t in tiers[pos]:
                yield factors[:pos] + (t,) + factors[pos + 1:]


def embed_claw_product(g: GroupId) -> tuple[GradedPoset, dict[Factorization, Element]]:
    """Relabel the claw product of ``g`` through ``phi``.

    Returns the relabelled poset and the map from tier tuples to elements.
    Raises :class:`FactorizationError` if the image is not a rank-preserving
    spanning subposet of the absolute order.
    """
    from .absolute import build_absolute_order, claw_product

    cp = claw_product(g)
    mapping = {f: phi(f, check=False) for f in cp.labels}
    if len(set(mapping.values())) != len(mapping) or len(mapping) != g.order:
        raise FactorizationError(f"phi is not a bijection onto {g}")
    image = relabel(cp, mapping.__getitem__)
    absolute = build_absolute_order(g)
    if not is_spanning_subposet(image, absolute):
        raise FactorizationError(f"claw product image is not a spanning subposet of {g}")
    return image, mapping


def degrees_match_tiers(g: GroupId) -> bool:
    return [len(t) for t in reflection_tiers(g)] == [d - 1 for d in degree_sequence(g)]
