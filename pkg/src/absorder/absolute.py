"""Absolute orders, claws and claw products as :class:`GradedPoset` objects."""

from __future__ import annotations

from .factorization import reflection_tiers
from .groups import (
    GroupError, GroupId, absolute_length, check_size, compose, degree_sequence,
    elements, identity, reflections,
)
from .poset import GradedPoset, PosetError, product, relabel

__all__ = [
    "build_absolute_order", "expected_rank_polynomial", "claw", "claw_product",
]


def build_absolute_order(g: GroupId) -> GradedPoset:
    """The absolute order on ``g``, with covers ``w ⋖ t∘w`` for reflections ``t``.

    Labels are :class:`~absorder.groups.Element` values; rank is reflection length.
    """
    check_size(g)
    ws = elements(g)
    length = {w: absolute_length(w) for w in ws}
    index = {w: i for i, w in enumerate(ws)}
    ts = reflections(g)
    covers = []
    for i, w in enumerate(ws):
        up = length[w] + 1
        for t in ts:
            tw = compose(t, w)
            if length[tw] == up:
                covers.append((i, index[tw]))
    poset = GradedPoset(ws, [length[w] for w in ws], covers)
    if poset.labels[poset.ranks.index(0)] != identity(g) or poset.ranks.count(0) != 1:
        raise GroupError(f"absolute order on {g} does not have the identity as its minimum")
    return poset


def expected_rank_polynomial(g: GroupId) -> list[int]:
    """Coefficients of ``prod_i (1 + (d_i - 1) q)`` over the degrees of ``g``."""
    coeffs = [1]
    for d in degree_sequence(g):
        nxt = coeffs + [0]
        for i, c in enumerate(coeffs):
            nxt[i + 1] += (d - 1) * c
        coeffs = nxt
    return coeffs


def claw(k: int, top_labels=None, bottom_label=0) -> GradedPoset:
    """One bottom vertex under ``k - 1`` tops (``k`` vertices in all)."""
    if k < 2:
        raise PosetError(f"a claw needs k >= 2, got {k}")
    tops = list(range(1, k)) if top_labels is None else list(top_labels)
    if len(tops) != k - 1:
        raise PosetError(f"claw({k}) needs {k - 1} top labels, got {len(tops)}")
    return GradedPoset([bottom_label] + tops, [0] + [1] * (k - 1), [(0, i) for i in range(1, k)])


def claw_product(g: GroupId) -> GradedPoset:
    """``C_{d_n} x ... x C_{d_1}`` labelled by tier tuples ``(r_n, ..., r_1)``.

    Each claw's bottom is the identity and its tops are the reflections of
    the matching tier.
    """
    e = identity(g)
    result = None
    for tier in reversed(reflection_tiers(g)):
        c = claw(len(tier) + 1, top_labels=[(t,) for t in tier], bottom_label=(e,))
        result = c if result is None else relabel(product(result, c), _concat)
    return result


def _concat(pair: tuple[tuple, tuple]) -> tuple:
    return pair[0] + pair[1]
