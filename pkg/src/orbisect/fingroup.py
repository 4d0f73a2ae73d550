"""Finite groups given by permutation or matrix generators.

A :class:`FiniteGroup` stores its elements in breadth-first discovery order
(identity first, then right multiplication by the generators in the order
given) together with a full multiplication table. Element ids are the
positions in that order, so they are stable across runs.

This module also enumerates ``HOM(Gamma, G)`` for a finitely presented
source group and splits it into simultaneous-conjugation orbits.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg
from .config import CapExceeded, Caps, resolve

Word = tuple[int, ...]


# --------------------------------------------------------------------------
# groups
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Explicit finite group with a multiplication oracle.

    ``elements[i]`` is the realization of element ``i`` (a 0-based image
    tuple for permutations, a tuple of rational rows for matrices).
    ``parents[i] = (j, k)`` records that element ``i`` was first reached as
    ``elements[j] * generators[k]``; it is what lets actions and
    representations be extended from generator data.
    """

    elements: tuple
    mult: np.ndarray
    inv: tuple[int, ...]
    generators: tuple
    generator_ids: tuple[int, ...]
    parents: tuple[tuple[int, int], ...]
    kind: str  # "perm" or "matrix"
    degree: int
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def table(self) -> list[list[int]]:
        return self.mult.tolist()

    @cached_property
    def _index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, realization) -> int:
        """Element id of a permutation image tuple or a matrix."""
        key = _normalize(realization, self.kind)
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{realization!r} is not an element of this group") from None

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        t = self.table
        return t[t[g][x]][self.inv[g]]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv[a], -n
        r = self.identity
        for _ in range(n):
            r = self.table[r][a]
        return r

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def extend(self, gen_values: Sequence, compose: Callable, unit) -> list:
        """Extend per-generator values multiplicatively along the BFS tree.

        Well-definedness is not checked here; see :meth:`is_homomorphism`.
        """
        values = [None] * self.order
        values[self.identity] = unit
        for i in range(1, self.order):
            j, k = self.parents[i]
            values[i] = compose(values[j], gen_values[k])
        return values

    def is_homomorphism(self, values: Sequence, gen_values: Sequence, compose: Callable) -> bool:
        """``values[x*g_k] == values[x] . gen_values[k]`` for all ``x`` and ``k``.

        Checking right multiplication by every generator suffices for the
        element-to-value map to be a homomorphism.
        """
        t = self.table
        for k, gid in enumerate(self.generator_ids):
            for x in range(self.order):
                if values[t[x][gid]] != compose(values[x], gen_values[k]):
                    return False
        return True

    def describe(self, a: int):
        """JSON form of one element: 1-based one-line images or ``"p/q"`` rows."""
        e = self.elements[a]
        if self.kind == "perm":
            return [v + 1 for v in e]
        return [[linalg.format_fraction(x) for x in row] for row in e]

    def check_axioms(self) -> bool:
        """Exhaustive associativity / identity / inverse scan."""
        m = self.mult
        n = self.order
        ids = np.arange(n)
        if not (np.array_equal(m[self.identity], ids) and np.array_equal(m[:, self.identity], ids)):
            return False
        inv = np.asarray(self.inv)
        if not (np.all(m[ids, inv] == self.identity) and np.all(m[inv, ids] == self.identity)):
            return False
        # (ab)c == a(bc) for all triples, one value of a at a time
        for a in range(n):
            if not np.array_equal(m[m[a]], m[a][m]):
                return False
        return True


def _normalize(x, kind: str):
    if kind == "perm":
        return tuple(int(v) for v in x)
    return linalg.as_matrix(x)


def _compose_perm(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    # (a*b)(i) = a(b(i)); acting on the left
    return tuple(a[i] for i in b)


def group_from_generators(gens: Sequence, caps: Caps | None = None) -> FiniteGroup:
    """Closure of permutation generators (0-based image tuples) or matrices.

    The element order is breadth-first from the identity with the generators
    tried in the order given.
    """
    caps = resolve(caps)
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    first = gens[0]
    is_matrix = len(first) > 0 and not isinstance(first[0], (int, np.integer))
    if is_matrix:
        mats = [linalg.as_matrix(g) for g in gens]
        n = len(mats[0])
        for m in mats:
            if len(m) != n or any(len(r) != n for r in m):
                raise ValueError("matrix generators must share one square dimension")
            if not linalg.is_invertible(m):
                raise ValueError("matrix generator is not invertible")
        kind, degree, compose, unit, gens_n = "matrix", n, linalg.matmul, linalg.identity(n), mats
    else:
        perms = [tuple(int(v) for v in g) for g in gens]
        n = len(perms[0])
        for p in perms:
            if len(p) != n or sorted(p) != list(range(n)):
                raise ValueError(f"{p!r} is not a permutation of {n} points")
        kind, degree, compose, unit, gens_n = "perm", n, _compose_perm, tuple(range(n)), perms

    elements = [unit]
    index = {unit: 0}
    parents: list[tuple[int, int]] = [(0, -1)]
    right: list[list[int]] = [[] for _ in gens_n]
    i = 0
    while i < len(elements):
        x = elements[i]
        for k, g in enumerate(gens_n):
            y = compose(x, g)
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= caps.max_group:
                    raise CapExceeded(f"group too large (more than {caps.max_group} elements)")
                index[y] = j
                elements.append(y)
                parents.append((i, k))
            right[k].append(j)
        i += 1

    order = len(elements)
    r = np.asarray(right, dtype=np.int64)
    mult = np.empty((order, order), dtype=np.int64)
    mult[:, 0] = np.arange(order)
    # column j of the table: x*e_j = (x*e_parent) * g_k
    for j in range(1, order):
        p, k = parents[j]
        mult[:, j] = r[k][mult[:, p]]
    inv = tuple(int(v) for v in np.argmax(mult == 0, axis=1))
    return FiniteGroup(
        elements=tuple(elements),
        mult=mult,
        inv=inv,
        generators=tuple(gens_n),
        generator_ids=tuple(index[g] for g in gens_n),
        parents=tuple(parents),
        kind=kind,
        degree=degree,
    )


def perm_from_cycles(cycles: Iterable[Sequence[int]], degree: int, one_based: bool = True) -> tuple[int, ...]:
    """Permutation image tuple (0-based) from cycle notation."""
    img = list(range(degree))
    off = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - off for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


def same_group(g: FiniteGroup, h: FiniteGroup) -> bool:
    """Identical element lists and tables (the notion used for cross-checks)."""
    return g is h or (g.elements == h.elements and np.array_equal(g.mult, h.mult))


# --------------------------------------------------------------------------
# subgroups, classes, centralizers
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, hash=False, repr=False)
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "Subgroup") -> bool:
        return self.members < other.members

    def sort_key(self) -> tuple:
        return (len(self.members), tuple(sorted(self.members)))

    def is_closed(self) -> bool:
        t = self.parent.table
        if self.parent.identity not in self.members:
            return False
        return all(t[a][b] in self.members for a in self.members for b in self.members) and all(
            self.parent.inv[a] in self.members for a in self.members
        )


def generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Subgroup generated by a set of element ids."""
    gens = sorted(set(gens))
    t = G.table
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return Subgroup(G, frozenset(seen))


def whole(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(range(G.order)))


def trivial(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset({G.identity}))


def small_generating_set(H: Subgroup) -> list[int]:
    """Greedy generating set (not necessarily minimal)."""
    G = H.parent
    gens: list[int] = []
    cur = trivial(G).members
    for h in sorted(H.members, key=lambda x: (-G.element_order(x), x)):
        if h not in cur:
            gens.append(h)
            cur = generated(G, gens).members
            if cur == H.members:
                break
    return gens


def conjugacy_classes(G: FiniteGroup) -> list[frozenset[int]]:
    """Classes in order of their smallest element; the identity's comes first."""
    m = G.mult
    inv = np.asarray(G.inv)
    seen = np.zeros(G.order, dtype=bool)
    classes = []
    for x in range(G.order):
        if seen[x]:
            continue
        cls = np.unique(m[m[:, x], inv])
        seen[cls] = True
        classes.append(frozenset(int(c) for c in cls))
    return classes


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    m = G.mult
    mask = np.ones(G.order, dtype=bool)
    for s in set(S):
        mask &= m[:, s] == m[s, :]
    return Subgroup(G, frozenset(int(i) for i in np.flatnonzero(mask)))


def all_subgroups(G: FiniteGroup, caps: Caps | None = None) -> list[Subgroup]:
    """Every subgroup exactly once, sorted by (order, members).

    Starts from the cyclic subgroups and closes under joining with one more
    cyclic subgroup until nothing new appears.
    """
    caps = resolve(caps)
    if G.order > caps.max_group:
        raise CapExceeded(f"group too large for subgroup enumeration ({G.order} > {caps.max_group})")
    cyclic = {generated(G, [g]).members for g in range(G.order)}
    cyclic_list = sorted(cyclic, key=lambda s: (len(s), sorted(s)))
    known = set(cyclic)
    frontier = list(cyclic)
    while frontier:
        nxt = []
        for H in frontier:
            for C in cyclic_list:
                if C <= H:
                    continue
                K = generated(G, H | C).members
                if K not in known:
                    known.add(K)
                    nxt.append(K)
        frontier = nxt
    return sorted((Subgroup(G, s) for s in known), key=Subgroup.sort_key)


def min_generating_size(H: Subgroup) -> int:
    """Smallest ``k`` such that some ``k`` elements generate ``H``."""
    G = H.parent
    if H.order == 1:
        return 0
    level = {generated(G, [h]).members for h in H.members}
    k = 1
    cyclic = list(level)
    while H.members not in level:
        level = {generated(G, K | C).members for K in level for C in cyclic if not C <= K}
        k += 1
    return k


# --------------------------------------------------------------------------
# homomorphisms from finitely presented groups
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaPresentation:
    """Finite presentation: ``rank`` generators and relator words.

    Letters are signed 1-based generator indices: ``2`` is the second
    generator, ``-2`` its inverse.
    """

    rank: int
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        rels = tuple(tuple(int(c) for c in w) for w in self.relators)
        object.__setattr__(self, "relators", rels)
        for w in rels:
            for c in w:
                if c == 0 or abs(c) > self.rank:
                    raise ValueError(f"relator letter {c} does not index one of {self.rank} generators")

    @classmethod
    def free(cls, d: int) -> "GammaPresentation":
        return cls(d, ())

    @classmethod
    def cyclic(cls, n: int) -> "GammaPresentation":
        return cls(1, ((1,) * n,))

    @property
    def is_free(self) -> bool:
        return not self.relators

    @property
    def label(self) -> str:
        if self.is_free:
            return f"F_{self.rank}"
        return f"<{self.rank} | " + ", ".join(" ".join(map(str, w)) for w in self.relators) + ">"

    def to_json(self):
        if self.is_free:
            return {"free": self.rank}
        return {"rank": self.rank, "relators": [list(w) for w in self.relators]}


@dataclass(frozen=True, slots=True)
class Hom:
    target: FiniteGroup = field(compare=False, hash=False, repr=False)
    images: tuple[int, ...]

    def image(self) -> Subgroup:
        return generated(self.target, self.images)

    def conjugate(self, g: int) -> "Hom":
        return Hom(self.target, tuple(self.target.conj(g, x) for x in self.images))


def image_subgroup(phi: Hom) -> Subgroup:
    return phi.image()


def evaluate(G: FiniteGroup, word: Word, images: Sequence[int]) -> int:
    t, inv = G.table, G.inv
    acc = G.identity
    for c in word:
        e = images[c - 1] if c > 0 else inv[images[-c - 1]]
        acc = t[acc][e]
    return acc


def _check_cap(gamma: GammaPresentation, G: FiniteGroup, caps: Caps) -> None:
    if G.order ** gamma.rank > caps.max_homs:
        raise CapExceeded(f"hom search space {G.order}^{gamma.rank} exceeds cap {caps.max_homs}")


def iter_hom_images(gamma: GammaPresentation, G: FiniteGroup, caps: Caps | None = None):
    """Image tuples of all homomorphisms, in lexicographic order.

    Depth-first over generator images; a relator is checked as soon as every
    generator it mentions has been assigned.
    """
    caps = resolve(caps)
    _check_cap(gamma, G, caps)
    d = gamma.rank
    by_depth: list[list[Word]] = [[] for _ in range(d + 1)]
    for w in gamma.relators:
        by_depth[max((abs(c) for c in w), default=0)].append(w)
    if any(evaluate(G, w, ()) != G.identity for w in by_depth[0]):
        return
    n = G.order
    cur = [0] * d

    def rec(depth: int):
        if depth == d:
            yield tuple(cur)
            return
        checks = by_depth[depth + 1]
        for x in range(n):
            cur[depth] = x
            if all(evaluate(G, w, cur) == G.identity for w in checks):
                yield from rec(depth + 1)

    yield from rec(0)


def enumerate_homs(gamma: GammaPresentation, G: FiniteGroup, caps: Caps | None = None) -> list[Hom]:
    return [Hom(G, imgs) for imgs in iter_hom_images(gamma, G, caps)]


def naive_hom_images(gamma: GammaPresentation, G: FiniteGroup) -> list[tuple[int, ...]]:
    """Reference enumeration: filter all of ``G^d`` by the relators."""
    return [
        imgs
        for imgs in itertools.product(range(G.order), repeat=gamma.rank)
        if all(evaluate(G, w, imgs) == G.identity for w in gamma.relators)
    ]


@dataclass(frozen=True)
class HomClass:
    members: tuple[Hom, ...]

    @property
    def representative(self) -> Hom:
        return self.members[0]

    def __len__(self) -> int:
        return len(self.members)


def hom_classes(G: FiniteGroup, homs: Sequence[Hom]) -> list[HomClass]:
    """Orbits under simultaneous conjugation, sorted by representative.

    The representative of each orbit is its lexicographically smallest image
    tuple.
    """
    m = G.mult
    inv = np.asarray(G.inv)
    seen: set[tuple[int, ...]] = set()
    out = []
    for imgs in sorted(h.images for h in homs):
        if imgs in seen:
            continue
        if imgs:
            arr = np.asarray(imgs)
            conj = m[m[:, arr], inv[:, None]]
            orbit = sorted(set(map(tuple, conj.tolist())))
        else:
            orbit = [()]
        seen.update(orbit)
        out.append(HomClass(tuple(Hom(G, o) for o in orbit)))
    out.sort(key=lambda c: c.representative.images)
    return out


# --------------------------------------------------------------------------
# covering the local groups
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CoverResult:
    covers: bool
    witness: Subgroup | None = None

    def __bool__(self) -> bool:
        return self.covers


def _as_subgroup(x) -> Subgroup:
    return whole(x) if isinstance(x, FiniteGroup) else x


def covers_local_groups(
    gamma: GammaPresentation, isotropies: Iterable, caps: Caps | None = None
) -> CoverResult:
    """Does every subgroup of every listed isotropy group arise as an image?

    ``isotropies`` holds :class:`Subgroup` objects (stabilizers inside one
    ambient group) or whole :class:`FiniteGroup` objects. On failure the
    smallest uncovered subgroup is returned as the witness.
    """
    caps = resolve(caps)
    by_parent: dict[int, tuple[FiniteGroup, list[Subgroup]]] = {}
    for iso in isotropies:
        iso = _as_subgroup(iso)
        by_parent.setdefault(id(iso.parent), (iso.parent, []))[1].append(iso)
    for G, isos in by_parent.values():
        needed = [K for K in all_subgroups(G, caps) if any(K <= H for H in isos)]
        if gamma.is_free:
            # an F_d image is exactly a subgroup with at most d generators
            for K in needed:
                if min_generating_size(K) > gamma.rank:
                    return CoverResult(False, K)
            continue
        images = {generated(G, imgs).members for imgs in iter_hom_images(gamma, G, caps)}
        for K in needed:
            if K.members not in images:
                return CoverResult(False, K)
    return CoverResult(True)


__all__ = [
    "FiniteGroup",
    "Subgroup",
    "GammaPresentation",
    "Hom",
    "HomClass",
    "CoverResult",
    "group_from_generators",
    "perm_from_cycles",
    "conjugacy_classes",
    "centralizer",
    "all_subgroups",
    "min_generating_size",
    "enumerate_homs",
    "iter_hom_images",
    "naive_hom_images",
    "hom_classes",
    "image_subgroup",
    "covers_local_groups",
    "generated",
    "same_group",
]
