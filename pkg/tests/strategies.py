"""Hypothesis strategies for groups, complexes and matrices."""
from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from orbisect.eqgeom.linear import RationalRep
from orbisect.eqgeom.simplicial import SimplicialAction, SimplicialComplex
from orbisect.fingroup import group_from_generators

from . import oracles


def perms(n: int):
    return st.permutations(list(range(n))).map(tuple)


@st.composite
def perm_groups(draw, max_degree: int = 5, max_gens: int = 2):
    n = draw(st.integers(1, max_degree))
    gens = draw(st.lists(perms(n), min_size=1, max_size=max_gens))
    return group_from_generators(gens)


@st.composite
def invariant_complexes(draw, max_vertices: int = 6, max_dim: int = 2):
    """A permutation group on the vertices and the orbit closure of random simplices."""
    n = draw(st.integers(2, max_vertices))
    gens = draw(st.lists(perms(n), min_size=1, max_size=2))
    seeds = draw(
        st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1).map(sorted), min_size=1, max_size=3)
    )
    simp = oracles.orbit_closure(gens, seeds)
    used = sorted({v for s in simp for v in s})
    # keep all n vertices so the generator images stay permutations
    simp |= {(v,) for v in range(n)}
    K = SimplicialComplex.from_maximal(n, sorted(simp))
    G = group_from_generators(gens)
    A = SimplicialAction.from_generators(K, G, gens)
    return K, A, gens, used


def rationals(lo=-4, hi=4, max_den=3):
    return st.builds(Fraction, st.integers(lo, hi), st.integers(1, max_den))


def matrices(n_rows, n_cols):
    return st.lists(st.lists(rationals(), min_size=n_cols, max_size=n_cols), min_size=n_rows, max_size=n_rows)


@st.composite
def signed_perm_reps(draw, max_dim=3):
    n = draw(st.integers(1, max_dim))
    gens = []
    for _ in range(draw(st.integers(1, 2))):
        p = draw(st.permutations(list(range(n))))
        signs = draw(st.lists(st.sampled_from([1, -1]), min_size=n, max_size=n))
        m = [[0] * n for _ in range(n)]
        for i, j in enumerate(p):
            m[j][i] = signs[i]
        gens.append(m)
    return RationalRep.of_matrix_group(group_from_generators(gens))
