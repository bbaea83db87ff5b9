"""Permutations, finite actions and orientation sets."""

from __future__ import annotations

from itertools import permutations
from typing import Iterable, Sequence


class Permutation:
    """A bijection of {0, ..., n-1}, stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"{images} is not a permutation")
        self.images = images

    @classmethod
    def identity(cls, n: int):
        return cls(range(n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]], one_based: bool = True):
        img = list(range(n))
        off = 1 if one_based else 0
        seen = set()
        for cyc in cycles:
            cyc = [c - off for c in cyc]
            for c in cyc:
                if not 0 <= c < n or c in seen:
                    raise ValueError(f"bad cycle {cyc}")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls(img)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p*q)(i) = p(q(i))."""
        if self.degree != other.degree:
            raise ValueError("degrees differ")
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def sign(self) -> int:
        s = 1
        seen = [False] * self.degree
        for i in range(self.degree):
            if seen[i]:
                continue
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = self.images[j]
                length += 1
            if length % 2 == 0:
                s = -s
        return s

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"


def sign(p: Permutation) -> int:
    return p.sign()


class FiniteAction:
    """A finite group acting on {0..n-1}, given by generating permutations."""

    def __init__(self, degree: int, generators: Sequence[Permutation] = ()):
        self.degree = degree
        self.generators = tuple(generators)
        for g in self.generators:
            if g.degree != degree:
                raise ValueError("generator degree does not match the action")

    def group(self) -> set:
        """All elements, by closure under the generators."""
        e = Permutation.identity(self.degree)
        seen = {e}
        frontier = [e]
        while frontier:
            nxt = []
            for p in frontier:
                for g in self.generators:
                    q = g * p
                    if q not in seen:
                        seen.add(q)
                        nxt.append(q)
            frontier = nxt
        return seen


def orientation_action(X: FiniteAction) -> list[int]:
    """Signs of the generators: +1 fixes both orientations, -1 swaps them."""
    if X.degree < 2:
        raise ValueError("orientations need at least two points")
    return [g.sign() for g in X.generators]


def is_alternating(X: FiniteAction) -> bool:
    return all(s == 1 for s in orientation_action(X))


def alternating_group(n: int) -> set:
    """Generated by the 3-cycles (0 1 k); built without using signs."""
    gens = [Permutation.from_cycles(n, [(0, 1, k)], one_based=False) for k in range(2, n)]
    return FiniteAction(n, gens).group()


def orientations(n: int) -> list[frozenset]:
    """Or of an n-point set: bijections [n] -> X modulo precomposition by A_n."""
    if n < 2:
        raise ValueError("orientations need at least two points")
    alt = alternating_group(n)
    classes = []
    placed = set()
    for p in permutations(range(n)):
        f = Permutation(p)
        if f in placed:
            continue
        orbit = frozenset(f * a for a in alt)
        placed |= orbit
        classes.append(orbit)
    return classes


def _class_of(classes, f):
    for idx, c in enumerate(classes):
        if f in c:
            return idx
    raise LookupError(f)


def orientation_product_check(m: int, n: int) -> bool:
    """Check by enumeration that (Or X x Or Y)/S_2 -> Or(X + Y), (f, g) -> f + g,
    is well defined, invariant under flipping both, bijective, and
    equivariant for Sym(X) x Sym(Y)."""
    if m < 2 or n < 2:
        raise ValueError("both sets need at least two points")
    orx, ory, orxy = orientations(m), orientations(n), orientations(m + n)
    if not (len(orx) == len(ory) == len(orxy) == 2):
        return False

    def join(f, g):
        return Permutation(list(f.images) + [m + j for j in g.images])

    table = {}
    for f in (Permutation(p) for p in permutations(range(m))):
        cf = _class_of(orx, f)
        for g in (Permutation(p) for p in permutations(range(n))):
            key = (cf, _class_of(ory, g))
            val = _class_of(orxy, join(f, g))
            if table.setdefault(key, val) != val:
                return False
    # flipping both orientations at once does not change the image
    if table[(0, 0)] != table[(1, 1)] or table[(0, 1)] != table[(1, 0)]:
        return False
    # the two diagonal classes hit different orientations
    if table[(0, 0)] == table[(0, 1)]:
        return False
    # equivariance: acting on X and Y then joining = acting on X + Y
    reps_x = [next(iter(c)) for c in orx]
    reps_y = [next(iter(c)) for c in ory]
    for s in (Permutation(p) for p in permutations(range(m))):
        for t in (Permutation(p) for p in permutations(range(n))):
            st = join(s, t)
            for i, f in enumerate(reps_x):
                for j, g in enumerate(reps_y):
                    lhs = table[(_class_of(orx, s * f), _class_of(ory, t * g))]
                    if lhs != _class_of(orxy, st * join(f, g)):
                        return False
    return True
