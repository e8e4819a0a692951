"""Exact permutation and finite-group engine on the point set {1..27}.

Permutations act on line labels 1..27.  Groups are stored as fully enumerated
element sets (the largest group in scope, the full Weyl group, has order 51840
on 27 points), so normalizers, centralizers and subconjugacy tests are plain
exhaustive filters over the element set.

Composition convention, fixed repo-wide: ``compose(p, q)`` applies ``q`` first,
then ``p`` (so ``compose(p, q)(x) == p(q(x))``).
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

N_POINTS = 27

_IDENTITY_IMAGES = tuple(range(1, N_POINTS + 1))


class GroupGenerationError(RuntimeError):
    """Closure blew past the configured cap; the generator set is wrong."""


class NotASubgroupError(ValueError):
    """The claimed subgroup is not contained in the ambient group."""


class Permutation:
    """A bijection of {1..27}; ``images[i-1]`` is the image of point ``i``."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        imgs = tuple(images)
        if len(imgs) != N_POINTS or sorted(imgs) != list(_IDENTITY_IMAGES):
            raise ValueError("images must be a bijection of 1..27")
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls) -> "Permutation":
        return cls(_IDENTITY_IMAGES)

    def __call__(self, point: int) -> int:
        if not 1 <= point <= N_POINTS:
            raise ValueError(f"point {point} outside 1..{N_POINTS}")
        return self.images[point - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * N_POINTS
        for i, x in enumerate(self.images):
            inv[x - 1] = i + 1
        return Permutation(inv)

    def is_identity(self) -> bool:
        return self.images == _IDENTITY_IMAGES

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles in canonical order; fixed points omitted."""
        seen = [False] * N_POINTS
        out = []
        for i in range(N_POINTS):
            if seen[i] or self.images[i] == i + 1:
                seen[i] = True
                continue
            cyc = [i + 1]
            seen[i] = True
            j = self.images[i]
            while j != i + 1:
                cyc.append(j)
                seen[j - 1] = True
                j = self.images[j - 1]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> dict[int, int]:
        """Cycle-length multiset including fixed points (length 1)."""
        counts: Counter[int] = Counter()
        moved = 0
        for cyc in self.cycles():
            counts[len(cyc)] += 1
            moved += len(cyc)
        if moved < N_POINTS:
            counts[1] = N_POINTS - moved
        return dict(counts)

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def fixed_points(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(N_POINTS) if self.images[i] == i + 1)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r})"


IDENTITY = Permutation.identity()


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Product applying ``q`` first, then ``p``."""
    qi = q.images
    pi = p.images
    return Permutation(tuple(pi[qi[i] - 1] for i in range(N_POINTS)))


_CYCLE_TEXT_RE = re.compile(r"^\s*(\(\s*\d+\s*(?:,\s*\d+\s*)*\)\s*)+$|^\s*\(\s*\)\s*$")


def parse_cycles(text: str) -> Permutation:
    """Parse disjoint-cycle notation like ``(1,3)(2,4)``; ``()`` is the identity."""
    if not _CYCLE_TEXT_RE.match(text):
        raise ValueError(f"malformed cycle text: {text!r}")
    images = list(_IDENTITY_IMAGES)
    seen: set[int] = set()
    for body in re.findall(r"\(([^()]*)\)", text):
        if not body.strip():
            continue
        pts = [int(tok) for tok in body.split(",")]
        for pt in pts:
            if not 1 <= pt <= N_POINTS:
                raise ValueError(f"point {pt} outside 1..{N_POINTS}")
            if pt in seen:
                raise ValueError(f"point {pt} repeated across cycles")
            seen.add(pt)
        if len(pts) < 2:
            continue
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a - 1] = b
    return Permutation(images)


def format_cycles(p: Permutation) -> str:
    """Canonical cycle string: cycles sorted by smallest moved point, each
    rotated to start at its smallest point; identity prints as ``()``."""
    cycs = p.cycles()
    if not cycs:
        return "()"
    canon = []
    for cyc in cycs:
        k = cyc.index(min(cyc))
        canon.append(cyc[k:] + cyc[:k])
    canon.sort(key=lambda c: c[0])
    return "".join("(" + ",".join(map(str, c)) + ")" for c in canon)


@dataclass(frozen=True)
class GroupFingerprint:
    order: int
    element_orders: tuple[tuple[int, int], ...]  # sorted (order, count) pairs
    abelian: bool

    def orders_dict(self) -> dict[int, int]:
        return dict(self.element_orders)


@dataclass(frozen=True)
class FiniteGroup:
    """A fully enumerated subgroup of Sym({1..27})."""

    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation]
    order: int = field(default=0)

    def __post_init__(self):
        if self.order == 0:
            object.__setattr__(self, "order", len(self.elements))
        if self.order != len(self.elements):
            raise ValueError("order field disagrees with element count")
        if IDENTITY not in self.elements:
            raise ValueError("group must contain the identity")
        if not all(g in self.elements for g in self.generators):
            raise ValueError("generators must belong to the element set")

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __iter__(self) -> Iterator[Permutation]:
        return iter(sorted(self.elements))

    def __le__(self, other: "FiniteGroup") -> bool:
        return self.elements <= other.elements

    def to_record(self) -> dict:
        fp = fingerprint(self)
        return {
            "generators": [format_cycles(g) for g in self.generators],
            "order": self.order,
            "fingerprint": {
                "order": fp.order,
                "element_orders": {str(k): v for k, v in fp.element_orders},
                "abelian": fp.abelian,
                "name": identify(fp),
            },
        }

    @classmethod
    def from_elements(cls, elements: Iterable[Permutation]) -> "FiniteGroup":
        els = frozenset(elements)
        gens = small_generating_set(els)
        return cls(generators=gens, elements=els)


TRIVIAL_GROUP = FiniteGroup(generators=(), elements=frozenset([IDENTITY]))


def generate(gens: Sequence[Permutation], cap: int = 200_000) -> FiniteGroup:
    """Breadth-first closure of the generated subgroup.

    Raises GroupGenerationError if the closure exceeds ``cap`` elements, which
    signals a wrong generator set (nothing in scope is larger than 51840).
    """
    if not gens:
        raise ValueError("generate requires at least one generator")
    gen_imgs = [g.images for g in gens]
    elements = {_IDENTITY_IMAGES}
    frontier = [_IDENTITY_IMAGES]
    while frontier:
        new_frontier = []
        for e in frontier:
            for g in gen_imgs:
                prod = tuple(g[e[i] - 1] for i in range(N_POINTS))
                if prod not in elements:
                    elements.add(prod)
                    if len(elements) > cap:
                        raise GroupGenerationError(
                            f"closure exceeded cap of {cap} elements"
                        )
                    new_frontier.append(prod)
        frontier = new_frontier
    return FiniteGroup(
        generators=tuple(gens),
        elements=frozenset(Permutation(e) for e in elements),
    )


def orbits(group: FiniteGroup, domain: Iterable[int] | None = None) -> list[list[int]]:
    """Partition of ``domain`` (default all 27 points) into group orbits,
    each orbit sorted, orbit list sorted by smallest element."""
    pts = sorted(set(domain)) if domain is not None else list(_IDENTITY_IMAGES)
    gens = group.generators if group.generators else (IDENTITY,)
    remaining = set(pts)
    out = []
    while remaining:
        start = min(remaining)
        orbit = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = g.images[x - 1]
                    if y not in orbit:
                        orbit.add(y)
                        nxt.append(y)
            frontier = nxt
        if not orbit <= remaining:
            raise ValueError("domain is not invariant under the group")
        remaining -= orbit
        out.append(sorted(orbit))
    return out


def pointwise_stabilizer(group: FiniteGroup, points: Iterable[int]) -> FiniteGroup:
    pts = [p - 1 for p in points]
    els = [g for g in group.elements if all(g.images[i] == i + 1 for i in pts)]
    return FiniteGroup.from_elements(els)


def setwise_stabilizer(group: FiniteGroup, points: Iterable[int]) -> FiniteGroup:
    target = frozenset(points)
    els = [
        g for g in group.elements if frozenset(g.images[p - 1] for p in target) == target
    ]
    return FiniteGroup.from_elements(els)


def _require_subgroup(group: FiniteGroup, sub: FiniteGroup, what: str) -> None:
    if not sub.elements <= group.elements:
        raise NotASubgroupError(f"{what}: second argument is not a subgroup of the first")


def centralizer(group: FiniteGroup, sub: FiniteGroup) -> FiniteGroup:
    """Elements of ``group`` commuting with every element of ``sub``.

    Commuting with the generators suffices, since centralizing a generating
    set centralizes the generated group.
    """
    _require_subgroup(group, sub, "centralizer")
    gens = [g.images for g in sub.generators]
    els = []
    for p in group.elements:
        pi = p.images
        if all(
            tuple(pi[g[i] - 1] for i in range(N_POINTS))
            == tuple(g[pi[i] - 1] for i in range(N_POINTS))
            for g in gens
        ):
            els.append(p)
    return FiniteGroup.from_elements(els)


def normalizer(group: FiniteGroup, sub: FiniteGroup) -> FiniteGroup:
    """Elements ``g`` with ``g sub g^-1 == sub``.

    Conjugates of the generators landing inside ``sub`` force containment,
    and finiteness upgrades containment to equality.
    """
    _require_subgroup(group, sub, "normalizer")
    sub_imgs = {s.images for s in sub.elements}
    gens = [g.images for g in sub.generators]
    els = []
    for p in group.elements:
        pi = p.images
        inv = [0] * N_POINTS
        for i, x in enumerate(pi):
            inv[x - 1] = i + 1
        ok = True
        for g in gens:
            conj = tuple(pi[g[inv[i] - 1] - 1] for i in range(N_POINTS))
            if conj not in sub_imgs:
                ok = False
                break
        if ok:
            els.append(p)
    return FiniteGroup.from_elements(els)


def intersect(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    return FiniteGroup.from_elements(g1.elements & g2.elements)


def conjugate_subgroup(sub: FiniteGroup, g: Permutation) -> FiniteGroup:
    ginv = g.inverse()
    els = [compose(compose(g, h), ginv) for h in sub.elements]
    gens = tuple(compose(compose(g, h), ginv) for h in sub.generators)
    return FiniteGroup(generators=gens or (IDENTITY,), elements=frozenset(els))


def is_subconjugate(
    ambient: FiniteGroup, sub: FiniteGroup, target: FiniteGroup
) -> tuple[bool, Permutation | None]:
    """Whether some ambient element conjugates ``sub`` into ``target``.

    Exhaustive scan over the ambient element set; returns a witness when true.
    """
    target_imgs = {t.images for t in target.elements}
    gens = [g.images for g in sub.generators]
    for p in ambient.elements:
        pi = p.images
        inv = [0] * N_POINTS
        for i, x in enumerate(pi):
            inv[x - 1] = i + 1
        ok = True
        for g in gens:
            conj = tuple(pi[g[inv[i] - 1] - 1] for i in range(N_POINTS))
            if conj not in target_imgs:
                ok = False
                break
        if ok:
            return True, p
    return False, None


def fingerprint(group: FiniteGroup) -> GroupFingerprint:
    counts: Counter[int] = Counter()
    for g in group.elements:
        counts[g.order()] += 1
    # Generator commutation decides abelianness for the whole group.
    abelian = all(
        compose(a, b) == compose(b, a)
        for a in group.generators
        for b in group.generators
    )
    return GroupFingerprint(
        order=group.order,
        element_orders=tuple(sorted(counts.items())),
        abelian=abelian,
    )


# Fingerprints of the named groups that show up in the verification suite.
# K4 and C4 share order 4 but differ in element orders, which is how the
# lookup tells them apart (C4 is deliberately absent, hence "unrecognized").
_KNOWN_FINGERPRINTS: dict[tuple, str] = {
    (1, ((1, 1),), True): "trivial",
    (2, ((1, 1), (2, 1)), True): "C2",
    (4, ((1, 1), (2, 3)), True): "K4",
    (6, ((1, 1), (2, 3), (3, 2)), False): "S3",
    (8, ((1, 1), (2, 5), (4, 2)), False): "D8",
    (16, ((1, 1), (2, 15)), True): "K4xK4",
    (24, ((1, 1), (2, 9), (3, 8), (4, 6)), False): "S4",
    (96, ((1, 1), (2, 39), (3, 8), (4, 24), (6, 24)), False): "S4xK4",
    (720, ((1, 1), (2, 75), (3, 80), (4, 180), (5, 144), (6, 240)), False): "S6",
}


def identify(fp: GroupFingerprint) -> str:
    return _KNOWN_FINGERPRINTS.get((fp.order, fp.element_orders, fp.abelian), "unrecognized")


def direct_product_check(group: FiniteGroup, a: FiniteGroup, b: FiniteGroup) -> bool:
    """True iff ``group`` is the internal direct product of ``a`` and ``b``."""
    if not (a.elements <= group.elements and b.elements <= group.elements):
        return False
    if a.order * b.order != group.order:
        return False
    if a.elements & b.elements != {IDENTITY}:
        return False
    for sub in (a, b):
        sub_imgs = {s.images for s in sub.elements}
        for g in group.generators:
            ginv = g.inverse()
            for h in sub.generators:
                if compose(compose(g, h), ginv).images not in sub_imgs:
                    return False
    return True


def small_generating_set(elements: Iterable[Permutation]) -> tuple[Permutation, ...]:
    """Greedy small generating set for an enumerated subgroup; rejects
    element sets that are not closed (their closure overshoots the input)."""
    els = sorted(elements)
    if len(els) == 1:
        if els != [IDENTITY]:
            raise ValueError("a one-element set must be the identity")
        return ()
    gens: list[Permutation] = []
    known: set[Permutation] = {IDENTITY}
    for e in els:
        if e in known:
            continue
        gens.append(e)
        known = set(generate(gens).elements)
        if len(known) == len(els):
            break
    if known != set(els):
        raise ValueError("element set is not closed under composition")
    return tuple(gens)
