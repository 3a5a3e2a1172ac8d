"""The weak order on matroids: N <= M iff every dependent set of M is
dependent in N.

``compare`` decides the order through the cyclic-flat hypergraphs alone:
loops first, then double points, then a containment test that certifies
rank bounds from cyclic flats after peeling off coloop-like points.
``brute_force_leq`` is the independent oracle used by the tests.
"""

from itertools import combinations

from .bitsets import full_mask, mask_of, points_of
from .core import Matroid
from .errors import GroundSetMismatch
from .hypergraph import delta_of_matroid, drop_vertices, identify_vertices


def brute_force_leq(m_prime, m):
    """Direct dependent-set inclusion, enumerating subsets up to size n+1.

    Only for small ground sets; the production path is ``compare``.
    """
    if m_prime.d != m.d:
        raise GroundSetMismatch("ground sets differ")
    if m.d > 16:
        raise ValueError("brute-force comparison is limited to d <= 16")
    ground = points_of(full_mask(m.d))
    for size in range(1, min(m.d, m.n + 1) + 1):
        for combo in combinations(ground, size):
            mask = mask_of(combo)
            if m._is_dependent_mask(mask) and not m_prime._is_dependent_mask(mask):
                return False
    return True


def compare(m_prime, m, ambient_n=None):
    """Decide m_prime <= m in the weak order.

    Pipeline: build both cyclic-flat hypergraphs; check loop containment;
    drop the loops of m_prime from both sides; check that every double-point
    class of m embeds in one of m_prime; identify the double points of
    m_prime on both sides; finally certify rank_m_prime(x) <= i for every
    surviving bound-i edge x of m by searching for a cyclic flat of m_prime
    that covers x after removing at most i - bound points.
    """
    if m_prime.d != m.d:
        raise GroundSetMismatch("ground sets differ")
    n = ambient_n if ambient_n is not None else max(m.n, m_prime.n)
    dm = delta_of_matroid(m, n)
    dp = delta_of_matroid(m_prime, n)

    loops_m = m.loops_mask
    loops_p = m_prime.loops_mask
    if loops_m & ~loops_p:
        return False
    if loops_p:
        dm = drop_vertices(dm, loops_p)
        dp = drop_vertices(dp, loops_p)

    ones_p = dp.by_bound(1)
    for x in dm.by_bound(1):
        if not any(x & ~y == 0 for y in ones_p):
            return False
    if ones_p:
        rep_of = {}
        for y in ones_p:
            pts = points_of(y)
            for p in pts:
                rep_of[p] = pts[0]
        dm = identify_vertices(dm, rep_of)
        dp = identify_vertices(dp, rep_of)

    dp_edges = dp.edges
    for x, i in dm.edges:
        if i < 2:
            continue
        for y, t in dp_edges:
            if t <= i and (x & ~y).bit_count() <= i - t:
                break
        else:
            return False
    return True


def maximal_elements(matroids, stats=None):
    """Weak-order-maximal elements of a list, duplicates collapsed first.

    A single pass keeps a running antichain: each candidate is dropped if it
    lies below a kept one and evicts any kept ones below it.  Comparisons
    are memoized for the duration of the call.
    """
    uniq = sorted(set(matroids), key=Matroid.sort_key)
    memo = {}

    def leq(a, b):
        key = (id(a), id(b))
        r = memo.get(key)
        if r is None:
            r = compare(a, b)
            memo[key] = r
            if stats is not None:
                stats.comparisons += 1
        return r

    antichain = []
    for cand in uniq:
        if any(leq(cand, kept) for kept in antichain):
            continue
        antichain = [kept for kept in antichain if not leq(kept, cand)]
        antichain.append(cand)
    antichain.sort(key=Matroid.sort_key)
    return antichain
