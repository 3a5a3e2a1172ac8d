"""Canonical forms, isomorphism and automorphism groups."""

import random
from itertools import permutations

import matdeg as md
from matdeg import (
    are_isomorphic,
    automorphisms,
    canonical_form,
    group_by_symmetry,
    relabel,
    uniform_matroid,
)


def test_canonical_invariance(fano, qs, vamos, k33dual):
    random.seed(101)
    for m in (fano, qs, vamos, k33dual, uniform_matroid(2, 6)):
        reference = canonical_form(m)
        for _ in range(100):
            perm = list(range(1, m.d + 1))
            random.shuffle(perm)
            assert canonical_form(relabel(m, tuple(perm))) == reference


def test_canonical_separates(small_matroids):
    # canonical forms agree exactly on isomorphic pairs: spot-check against
    # a full orbit partition of the d = 4 universe
    ms = small_matroids[4]
    forms = {}
    for m in ms:
        forms.setdefault(canonical_form(m).hash, []).append(m)
    # each class closed under relabeling: regenerate orbits by brute force
    for bucket in forms.values():
        rep = bucket[0]
        orbit = {relabel(rep, perm) for perm in permutations(range(1, 5))}
        assert set(bucket) == {m for m in ms if m in orbit}


def test_are_isomorphic_basic(fano):
    assert are_isomorphic(md.projective_plane(2), fano)
    assert not are_isomorphic(fano, uniform_matroid(3, 7))
    assert are_isomorphic(uniform_matroid(2, 5), uniform_matroid(2, 5))


def test_are_isomorphic_equivalence(small_matroids):
    random.seed(3)
    ms = random.sample(small_matroids[5], 25)
    for a in ms:
        assert are_isomorphic(a, a)
    for _ in range(200):
        a, b, c = (random.choice(ms) for _ in range(3))
        if are_isomorphic(a, b) and are_isomorphic(b, c):
            assert are_isomorphic(a, c)


def test_aut_fano_order(fano):
    group = automorphisms(fano)
    assert group.order == 168
    # independent recount: filter all 5040 permutations directly
    circuits = set(fano.circuit_masks)
    count = 0
    for perm in permutations(range(1, 8)):
        mapped = {
            md.bitsets.mask_of(perm[p - 1] for p in pts)
            for pts in fano.circuits
        }
        if mapped == circuits:
            count += 1
    assert count == 168


def test_aut_uniform():
    assert automorphisms(uniform_matroid(2, 5)).order == 120
    assert automorphisms(uniform_matroid(3, 7)).order == 5040
    g = automorphisms(uniform_matroid(1, 4))
    assert g.order == 24


def test_aut_orders_of_catalog(vamos, k33dual, steiner348):
    assert automorphisms(vamos).order == 64
    assert automorphisms(k33dual).order == 72
    assert automorphisms(steiner348).order == 1344


def test_generators_generate(fano):
    group = automorphisms(fano)
    identity = tuple(range(1, 8))
    have = {identity}
    queue = [identity]
    while queue:
        x = queue.pop()
        for gen in group.generators:
            z = tuple(gen[x[p - 1] - 1] for p in range(1, 8))
            if z not in have:
                have.add(z)
                queue.append(z)
    assert len(have) == group.order


def test_orbit_sizes_divide_group_order(fano):
    group = automorphisms(fano)
    report = md.min_above_general(fano)
    for rep, members in group_by_symmetry(report.maximal, fano):
        assert group.order % len(members) == 0


def test_group_by_symmetry_fano(fano):
    report = md.min_above_general(fano)
    classes = group_by_symmetry(report.maximal, fano)
    assert sorted(len(mem) for _, mem in classes) == [1, 7, 7, 7]


def test_group_by_symmetry_k33dual(k33dual):
    report = md.min_above_rank4(k33dual)
    classes = group_by_symmetry(report.maximal, k33dual)
    assert sorted(len(mem) for _, mem in classes) == [1, 6, 9, 9, 9]


def test_group_by_symmetry_singleton(fano):
    assert len(group_by_symmetry([fano], fano)) == 1
