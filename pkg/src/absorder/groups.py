"""
Elements of the Coxeter groups A_n, B_n and I_2(m).

A_n is realised as the symmetric group on ``[n+1]``, B_n as signed
permutations of ``{±1, ..., ±n}`` and I_2(m) abstractly as rotations and
mirrors indexed mod ``m``.

Composition uses the left-action convention throughout::

    compose(u, v)(x) == u(v(x))        # v acts first

so a product written ``u v`` in cycle notation applies its rightmost factor
first.

>>> g = GroupId.parse("a2")
>>> format_element(compose(parse_element("(2 3)", g), parse_element("(1 2)", g)))
'(1 3 2)'
"""

from __future__ import annotations

import math
import os
import re
from collections import deque
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product as cartesian
from typing import Iterator, Optional

__all__ = [
    "Family", "GroupId", "Element", "Reflection",
    "GroupError", "GroupTooLargeError", "ParseError",
    "DEFAULT_MAX_GROUP", "max_group_size", "check_size",
    "identity", "compose", "inverse", "product",
    "elements", "reflections", "classify_reflection", "degree_sequence",
    "absolute_length", "absolute_length_bfs", "bfs_lengths",
    "parse_element", "format_element",
]

DEFAULT_MAX_GROUP = 50_000


class GroupError(ValueError):
    pass


class GroupTooLargeError(GroupError):
    """Raised when an operation would have to enumerate too many elements."""


class ParseError(GroupError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


def max_group_size() -> int:
    """The enumeration guard; ``ABSORDER_MAX_GROUP`` overrides the default."""
    raw = os.environ.get("ABSORDER_MAX_GROUP")
    if raw is None:
        return DEFAULT_MAX_GROUP
    try:
        return int(raw)
    except ValueError:
        raise GroupError(f"ABSORDER_MAX_GROUP must be an integer, got {raw!r}") from None


class Family(str, Enum):
    A = "A"
    B = "B"
    I2 = "I2"


_GROUP_RE = re.compile(r"^\s*(?:(a|b)\s*(\d+)|i2\s*[:(]?\s*(\d+)\s*\)?)\s*$", re.IGNORECASE)


@dataclass(frozen=True, order=True)
class GroupId:
    family: Family
    parameter: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.family is Family.I2:
            if self.parameter < 3:
                raise GroupError(f"I2(m) needs m >= 3, got {self.parameter}")
        elif self.parameter < 1:
            raise GroupError(f"{self.family.value}_n needs n >= 1, got {self.parameter}")

    @classmethod
    def parse(cls, text: str) -> GroupId:
        """Parse ``a<n>``, ``b<n>`` or ``i2:<m>`` (case-insensitive)."""
        m = _GROUP_RE.match(text)
        if not m:
            raise GroupError(f"cannot parse group id {text!r}; expected a<n>, b<n> or i2:<m>")
        if m.group(1):
            return cls(Family(m.group(1).upper()), int(m.group(2)))
        return cls(Family.I2, int(m.group(3)))

    @property
    def rank(self) -> int:
        """Coxeter rank, which is also the top rank of the absolute order."""
        return 2 if self.family is Family.I2 else self.parameter

    @property
    def order(self) -> int:
        n = self.parameter
        if self.family is Family.A:
            return math.factorial(n + 1)
        if self.family is Family.B:
            return 2**n * math.factorial(n)
        return 2 * n

    def __str__(self) -> str:
        if self.family is Family.I2:
            return f"I2({self.parameter})"
        return f"{self.family.value}{self.parameter}"


@dataclass(frozen=True)
class Element:
    """An immutable group element.

    ``data`` depends on the family:

    * A: one-line images ``(w(1), ..., w(n+1))``
    * B: signed images ``(w(1), ..., w(n))``; ``w(-i) = -w(i)`` is implied
    * I2: ``(kind, index)`` with kind 0 for a rotation, 1 for a mirror
    """
    group: GroupId
    data: tuple[int, ...]

    def __call__(self, x: int) -> int:
        """Image of a ground-set point (A and B only, 1-based, signed for B)."""
        family = self.group.family
        if family is Family.A:
            return self.data[x - 1]
        if family is Family.B:
            return self.data[x - 1] if x > 0 else -self.data[-x - 1]
        raise GroupError("dihedral elements are not permutations of a ground set")

    def __mul__(self, other: Element) -> Element:
        return compose(self, other)

    @property
    def is_identity(self) -> bool:
        return self == identity(self.group)

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self.group}, {format_element(self)!r})"


@dataclass(frozen=True)
class Reflection:
    """Which kind of reflection an element is, in the paper-style notation.

    ``kind`` is one of ``transposition`` (i, j), ``sign_flip`` [i],
    ``signed_swap`` ((i, sign*j)) or ``mirror`` (index).
    """
    kind: str
    i: int
    j: int = 0
    sign: int = 1


def identity(g: GroupId) -> Element:
    if g.family is Family.A:
        return Element(g, tuple(range(1, g.parameter + 2)))
    if g.family is Family.B:
        return Element(g, tuple(range(1, g.parameter + 1)))
    return Element(g, (0, 0))


def compose(u: Element, v: Element) -> Element:
    """``u ∘ v``: apply ``v`` first, then ``u``."""
    if u.group != v.group:
        raise GroupError(f"cannot compose elements of {u.group} and {v.group}")
    g = u.group
    if g.family is Family.A:
        ud = u.data
        return Element(g, tuple(ud[x - 1] for x in v.data))
    if g.family is Family.B:
        ud = u.data
        return Element(g, tuple(ud[x - 1] if x > 0 else -ud[-x - 1] for x in v.data))
    # mirrors s_a = rot^a s_0, so s_a s_b = rot^(a-b), rot^a s_b = s_(a+b), s_a rot^b = s_(a-b)
    m = g.parameter
    (ku, a), (kv, b) = u.data, v.data
    if ku == 0:
        return Element(g, (kv, (a + b) % m))
    return Element(g, (1 - kv, (a - b) % m))


def product(g: GroupId, factors) -> Element:
    """Compose ``factors`` left to right as written (rightmost acts first)."""
    result = identity(g)
    for f in factors:
        result = compose(result, f)
    return result


def inverse(u: Element) -> Element:
    g = u.group
    if g.family is Family.A:
        out = [0] * len(u.data)
        for i, x in enumerate(u.data, start=1):
            out[x - 1] = i
        return Element(g, tuple(out))
    if g.family is Family.B:
        out = [0] * len(u.data)
        for i, x in enumerate(u.data, start=1):
            out[abs(x) - 1] = i if x > 0 else -i
        return Element(g, tuple(out))
    kind, a = u.data
    if kind == 1:
        return u
    return Element(g, (0, (-a) % g.parameter))


def check_size(g: GroupId, limit: Optional[int] = None) -> None:
    limit = max_group_size() if limit is None else limit
    if g.order > limit:
        raise GroupTooLargeError(f"{g} has {g.order} elements, above the guard of {limit}")


def elements(g: GroupId) -> list[Element]:
    """Every element of ``g`` in a fixed deterministic order."""
    check_size(g)
    return list(_iter_elements(g))


def _iter_elements(g: GroupId) -> Iterator[Element]:
    n = g.parameter
    if g.family is Family.A:
        for p in permutations(range(1, n + 2)):
            yield Element(g, p)
    elif g.family is Family.B:
        for p in permutations(range(1, n + 1)):
            for signs in cartesian((1, -1), repeat=n):
                yield Element(g, tuple(s * x for s, x in zip(signs, p)))
    else:
        for kind in (0, 1):
            for a in range(n):
                yield Element(g, (kind, a))


def _transposition(g: GroupId, i: int, j: int) -> Element:
    images = list(range(1, g.parameter + 2))
    images[i - 1], images[j - 1] = j, i
    return Element(g, tuple(images))


def _sign_flip(g: GroupId, i: int) -> Element:
    images = list(range(1, g.parameter + 1))
    images[i - 1] = -i
    return Element(g, tuple(images))


def _signed_swap(g: GroupId, i: int, j: int, sign: int) -> Element:
    # ((i, sign*j)): i -> sign*j, sign*j -> i
    images = list(range(1, g.parameter + 1))
    images[i - 1] = sign * j
    images[j - 1] = sign * i
    return Element(g, tuple(images))


def reflection_element(g: GroupId, r: Reflection) -> Element:
    if r.kind == "transposition":
        return _transposition(g, r.i, r.j)
    if r.kind == "sign_flip":
        return _sign_flip(g, r.i)
    if r.kind == "signed_swap":
        return _signed_swap(g, r.i, r.j, r.sign)
    if r.kind == "mirror":
        return Element(g, (1, r.i % g.parameter))
    raise GroupError(f"unknown reflection kind {r.kind!r}")


def reflections(g: GroupId) -> list[Element]:
    """All reflections of ``g``, without duplicates, in a fixed order."""
    n = g.parameter
    if g.family is Family.A:
        return [_transposition(g, i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]
    if g.family is Family.B:
        out = [_sign_flip(g, i) for i in range(1, n + 1)]
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                out.append(_signed_swap(g, i, j, 1))
                out.append(_signed_swap(g, i, j, -1))
        return out
    return [Element(g, (1, a)) for a in range(n)]


def classify_reflection(w: Element) -> Optional[Reflection]:
    """The :class:`Reflection` description of ``w``, or ``None`` if ``w`` is not one."""
    g = w.group
    if g.family is Family.I2:
        kind, a = w.data
        return Reflection("mirror", a) if kind == 1 else None
    moved = [i for i in range(1, len(w.data) + 1) if w(i) != i]
    if g.family is Family.A:
        if len(moved) == 2 and w(moved[0]) == moved[1]:
            return Reflection("transposition", moved[0], moved[1])
        return None
    if len(moved) == 1 and w(moved[0]) == -moved[0]:
        return Reflection("sign_flip", moved[0])
    if len(moved) == 2:
        i, j = moved
        image = w(i)
        if abs(image) == j and w(j) == (i if image > 0 else -i):
            return Reflection("signed_swap", i, j, 1 if image > 0 else -1)
    return None


def degree_sequence(g: GroupId) -> tuple[int, ...]:
    n = g.parameter
    if g.family is Family.A:
        return tuple(i + 1 for i in range(1, n + 1))
    if g.family is Family.B:
        return tuple(2 * i for i in range(1, n + 1))
    return (2, n)


def _cycles(w: Element) -> list[tuple[int, ...]]:
    """Cycles of ``w`` on its ground set (A: [n+1], B: ±[n]), fixed points included."""
    if w.group.family is Family.A:
        points = range(1, len(w.data) + 1)
    else:
        n = len(w.data)
        points = [x for i in range(1, n + 1) for x in (i, -i)]
    seen = set()
    out = []
    for start in points:
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        x = w(start)
        while x != start:
            cycle.append(x)
            seen.add(x)
            x = w(x)
        out.append(tuple(cycle))
    return out


def absolute_length(w: Element) -> int:
    """Reflection length via cycle-structure closed forms.

    A_n: ``(n+1) - #cycles``. B_n: ``n - #(pairs of paired cycles)``, where a
    paired cycle is one not containing ``-x`` for its own ``x``.
    I2(m): 0, 1 for mirrors, 2 for non-trivial rotations.
    """
    g = w.group
    if g.family is Family.A:
        return len(w.data) - len(_cycles(w))
    if g.family is Family.B:
        paired = sum(1 for c in _cycles(w) if -c[0] not in c)
        return len(w.data) - paired // 2
    kind, a = w.data
    if kind == 1:
        return 1
    return 0 if a == 0 else 2


def bfs_lengths(g: GroupId) -> dict[Element, int]:
    """Distances from the identity in the Cayley graph on all reflections."""
    check_size(g)
    gens = reflections(g)
    e = identity(g)
    dist = {e: 0}
    queue = deque([e])
    while queue:
        w = queue.popleft()
        d = dist[w] + 1
        for t in gens:
            tw = compose(t, w)
            if tw not in dist:
                dist[tw] = d
                queue.append(tw)
    return dist


_bfs_cache: dict[GroupId, dict[Element, int]] = {}


def absolute_length_bfs(w: Element) -> int:
    """Reference oracle for :func:`absolute_length` by breadth-first search."""
    g = w.group
    table = _bfs_cache.get(g)
    if table is None:
        table = _bfs_cache[g] = bfs_lengths(g)
    return table[w]


# ---------------------------------------------------------------------------
# cycle notation


def _format_a(w: Element) -> str:
    parts = []
    for c in _cycles(w):
        if len(c) > 1:
            parts.append("(" + " ".join(map(str, c)) + ")")
    return "".join(parts) or "e"


def _format_b(w: Element) -> str:
    parts = []
    done = set()
    n = len(w.data)
    for i in range(1, n + 1):
        if i in done or w(i) == i:
            continue
        cycle = [i]
        x = w(i)
        while x != i and x != -i:
            cycle.append(x)
            x = w(x)
        done.update(abs(y) for y in cycle)
        body = ",".join(map(str, cycle))
        parts.append(f"[{body}]" if x == -i else f"(({body}))")
    return "".join(parts) or "e"


def format_element(w: Element) -> str:
    """Disjoint cycle notation, each cycle led by its smallest (absolute) entry.

    Type B uses ``((a,b,...))`` for a paired cycle and ``[a,b,...]`` for a
    balanced one; I2 uses ``r<k>`` for rotations and ``s<k>`` for mirrors.
    """
    g = w.group
    if g.family is Family.A:
        return _format_a(w)
    if g.family is Family.B:
        return _format_b(w)
    kind, a = w.data
    if kind == 0:
        return "e" if a == 0 else f"r{a}"
    return f"s{a}"


_TOKEN_RE = re.compile(r"\s+|\(\(|\)\)|[()\[\],]|-?\d+|[ers]\d*|.", re.IGNORECASE)


def _tokens(text: str):
    for m in _TOKEN_RE.finditer(text):
        tok = m.group()
        if not tok.isspace():
            yield tok, m.start()


def _cycle_element(g: GroupId, cycle: list[int], balanced: bool) -> Element:
    n = g.parameter
    if g.family is Family.A:
        images = list(range(1, n + 2))
        for k, x in enumerate(cycle):
            images[x - 1] = cycle[(k + 1) % len(cycle)]
        return Element(g, tuple(images))
    images = list(range(1, n + 1))

    def put(x, y):
        if x > 0:
            images[x - 1] = y
        else:
            images[-x - 1] = -y

    if balanced:
        full = cycle + [-x for x in cycle]
    else:
        full = cycle
    for k, x in enumerate(full):
        put(x, full[(k + 1) % len(full)])
    return Element(g, tuple(images))


def parse_element(text: str, g: GroupId) -> Element:
    """Parse cycle notation for an element of ``g``.

    Juxtaposed cycles are composed as a product, rightmost acting first, so
    ``"(1 2)(2 3)"`` is ``(1 2 3)``.
    """
    if g.family is Family.I2:
        return _parse_dihedral(text, g)
    n = g.parameter
    bound = n + 1 if g.family is Family.A else n
    result = identity(g)
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty element text", text, 0)
    pos = 0
    while pos < len(toks):
        tok, at = toks[pos]
        if tok.lower() == "e":
            pos += 1
            continue
        if g.family is Family.A and tok == "(":
            close, balanced = ")", False
        elif g.family is Family.B and tok == "((":
            close, balanced = "))", False
        elif g.family is Family.B and tok == "[":
            close, balanced = "]", True
        else:
            raise ParseError(f"unexpected {tok!r}", text, at)
        pos += 1
        cycle: list[int] = []
        while True:
            if pos >= len(toks):
                raise ParseError(f"missing {close!r}", text, len(text))
            tok, at = toks[pos]
            pos += 1
            if tok == close:
                break
            if tok == ",":
                continue
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"unexpected {tok!r}", text, at) from None
            if x == 0 or abs(x) > bound or (x < 0 and g.family is Family.A):
                raise ParseError(f"index {x} out of range for {g}", text, at)
            if x in cycle or (g.family is Family.B and -x in cycle):
                raise ParseError(f"repeated symbol {x}", text, at)
            cycle.append(x)
        if not cycle:
            raise ParseError("empty cycle", text, at)
        result = compose(result, _cycle_element(g, cycle, balanced))
    return result


def _parse_dihedral(text: str, g: GroupId) -> Element:
    m = g.parameter
    result = identity(g)
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty element text", text, 0)
    for tok, at in toks:
        head, digits = tok[:1].lower(), tok[1:]
        if tok.lower() == "e":
            continue
        if head in ("r", "s") and digits.isdigit():
            a = int(digits)
            if a >= m:
                raise ParseError(f"index {a} out of range for {g}", text, at)
            result = compose(result, Element(g, (0 if head == "r" else 1, a)))
        else:
            raise ParseError(f"unexpected {tok!r}", text, at)
    return result

