"""The groups of order at most 24, one per isomorphism class.

The frozen list lives in ``data/small_groups.json`` (regular permutation
representations); ``scripts/build_small_groups.py`` regenerates it from the
Cayley-table constructions below and deduplicates with :func:`isomorphic`.
"""
from __future__ import annotations

import json
from collections import Counter
from functools import lru_cache
from importlib import resources

import numpy as np

from .fingroup import (
    FiniteGroup,
    all_subgroups,
    centralizer,
    conjugacy_classes,
    group_from_generators,
    small_generating_set,
    whole,
)

# number of groups of each order 1..24
GROUP_COUNTS = {
    1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5,
    13: 1, 14: 2, 15: 1, 16: 14, 17: 1, 18: 5, 19: 1, 20: 5, 21: 2, 22: 2, 23: 1, 24: 15,
}


# --------------------------------------------------------------------------
# Cayley-table constructions (element 0 is the identity)
# --------------------------------------------------------------------------


def cyclic_table(n: int) -> np.ndarray:
    i = np.arange(n)
    return (i[:, None] + i[None, :]) % n


def product_table(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    na, nb = len(a), len(b)
    idx = np.arange(na * nb)
    ia, ib = idx // nb, idx % nb
    return a[ia[:, None], ia[None, :]] * nb + b[ib[:, None], ib[None, :]]


def metacyclic_table(m: int, n: int, r: int, s: int) -> np.ndarray | None:
    """``<x, y | x^m, y^n = x^s, y x y^-1 = x^r>`` on normal forms ``x^i y^j``."""
    if pow(r, n, m) != 1 % m or (s * (r - 1)) % m != 0:
        return None
    if (r * s - s) % m != 0:
        return None
    N = m * n
    t = np.empty((N, N), dtype=np.int64)
    rp = [pow(r, j, m) for j in range(n)]
    for a in range(N):
        i, j = divmod(a, n)
        for b in range(N):
            k, l = divmod(b, n)
            e = (i + rp[j] * k) % m
            f = j + l
            if f >= n:
                f -= n
                e = (e + s) % m
            t[a, b] = e * n + f
    return t if is_group_table(t) else None


def semidirect_table(nt: np.ndarray, alpha: np.ndarray, k: int) -> np.ndarray:
    """``N x| Z_k`` with the generator of ``Z_k`` acting by the automorphism ``alpha``."""
    n = len(nt)
    powers = [np.arange(n)]
    for _ in range(1, k):
        powers.append(alpha[powers[-1]])
    N = n * k
    t = np.empty((N, N), dtype=np.int64)
    for a in range(N):
        x, i = divmod(a, k)
        for b in range(N):
            y, j = divmod(b, k)
            t[a, b] = nt[x, powers[i][y]] * k + (i + j) % k
    return t


def is_group_table(t: np.ndarray) -> bool:
    n = len(t)
    ids = np.arange(n)
    if not (np.array_equal(t[0], ids) and np.array_equal(t[:, 0], ids)):
        return False
    if any(len(set(row)) != n for row in t.tolist()):
        return False
    return all(np.array_equal(t[t[a]], t[a][t]) for a in range(n))


def group_from_table(t: np.ndarray) -> FiniteGroup:
    """Left-regular permutation representation of a Cayley table."""
    t = np.asarray(t)
    n = len(t)
    if n == 1:
        return group_from_generators([(0,)])
    # generators: a greedy generating set of the table group
    gens: list[int] = []
    reach = {0}
    for g in range(1, n):
        if g not in reach:
            gens.append(g)
            reach = _closure(t, gens)
            if len(reach) == n:
                break
    return group_from_generators([tuple(int(v) for v in t[g]) for g in gens])


def _closure(t: np.ndarray, gens) -> set[int]:
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(t[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def automorphisms(G: FiniteGroup) -> list[np.ndarray]:
    """All automorphisms of a small group, as image arrays over element ids."""
    gens = small_generating_set(whole(G)) if G.order > 1 else []
    orders = [G.element_order(x) for x in range(G.order)]
    cands = [[y for y in range(G.order) if orders[y] == orders[g]] for g in gens]
    out = []

    def rec(k, chosen):
        if k == len(gens):
            phi = _extend_map(G, G, gens, chosen)
            if phi is not None:
                out.append(phi)
            return
        for y in cands[k]:
            rec(k + 1, chosen + [y])

    rec(0, [])
    return out


def _extend_map(A: FiniteGroup, B: FiniteGroup, gens, images) -> np.ndarray | None:
    """Extend ``gens -> images`` to an isomorphism ``A -> B`` if possible."""
    ta, tb = A.table, B.table
    phi = {A.identity: B.identity}
    frontier = [A.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = ta[x][g]
                v = tb[phi[x]][h]
                if y in phi:
                    if phi[y] != v:
                        return None
                else:
                    phi[y] = v
                    nxt.append(y)
        frontier = nxt
    if len(phi) != A.order or len(set(phi.values())) != B.order:
        return None
    arr = np.array([phi[x] for x in range(A.order)])
    ma, mb = A.mult, B.mult
    if not np.array_equal(arr[ma], mb[arr[:, None], arr[None, :]]):
        return None
    return arr


def fingerprint(G: FiniteGroup) -> tuple:
    """Isomorphism invariant: element statistics, centre, derived size, subgroup counts."""
    classes = conjugacy_classes(G)
    cls_size = {}
    for c in classes:
        for x in c:
            cls_size[x] = len(c)
    t = G.table
    stats = Counter(
        (G.element_order(x), cls_size[x], G.element_order(t[x][x]))
        for x in range(G.order)
    )
    centre = centralizer(G, range(G.order)).order
    comms = {t[t[t[a][b]][G.inv[a]]][G.inv[b]] for a in range(G.order) for b in range(G.order)}
    from .fingroup import generated

    derived = generated(G, comms).order
    subs = all_subgroups(G)
    sub_stats = Counter(
        (H.order, centralizer(G, H.members).order, _is_normal(G, H.members)) for H in subs
    )
    return (G.order, tuple(sorted(stats.items())), centre, derived, tuple(sorted(sub_stats.items())))


def _is_normal(G: FiniteGroup, members) -> bool:
    return all(G.conj(g, h) in members for g in G.generator_ids for h in members)


def isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    if A.order != B.order:
        return False
    if A.order == 1:
        return True
    if fingerprint(A) != fingerprint(B):
        return False
    gens = small_generating_set(whole(A))
    orders = [B.element_order(y) for y in range(B.order)]
    cands = [[y for y in range(B.order) if orders[y] == A.element_order(g)] for g in gens]

    def rec(k, chosen):
        if k == len(gens):
            return _extend_map(A, B, gens, chosen) is not None
        return any(rec(k + 1, chosen + [y]) for y in cands[k])

    return rec(0, [])


# --------------------------------------------------------------------------
# frozen library
# --------------------------------------------------------------------------


@lru_cache(maxsize=1)
def _load_raw() -> list[dict]:
    text = resources.files("orbisect").joinpath("data/small_groups.json").read_text(encoding="utf-8")
    return json.loads(text)


def small_groups(max_order: int = 24) -> list[tuple[str, FiniteGroup]]:
    """``(name, group)`` for every group of order ``<= max_order`` (at most 24)."""
    if max_order > 24:
        raise ValueError("the library stops at order 24")
    out = []
    for entry in _load_raw():
        if entry["order"] <= max_order:
            gens = [tuple(g) for g in entry["generators"]]
            out.append((entry["name"], group_from_generators(gens)))
    return out
