"""Maximal matroid degenerations.

Two search paths share one engine shape: a stack of labeled hypergraphs is
expanded pair-by-pair until no rank-bound conflict remains, at which point
the unique maximal matroid below the stable hypergraph is emitted.

The general path starts one search per independent set (declared newly
dependent); the rank-4 path stratifies by the size of the first new circuit
and prunes branches that cannot stay inside the stratum.  Branching is
justified by submodularity: when two edges overvalue their union and
intersection, any matroid below the hypergraph satisfies the tightened
bound on at least one of the two.
"""

import os
import time
from concurrent.futures import ProcessPoolExecutor

from .bitsets import canon_key, masks_of_size, points_of
from .core import Matroid, QuotientMap, designate_loop, independent_masks
from .errors import BudgetExceeded, NotRankFour, NotSimple
from .hypergraph import (
    _matroid_from_hypergraph_unchecked,
    delta_of_matroid,
    reduce as reduce_hypergraph,
    with_edge,
)
from .weak_order import maximal_elements


class SearchStats:
    """Counters for one degeneration computation."""

    __slots__ = ("nodes", "emitted", "comparisons", "wall_time")

    def __init__(self):
        self.nodes = 0
        self.emitted = 0
        self.comparisons = 0
        self.wall_time = 0.0

    def merge(self, other):
        self.nodes += other.nodes
        self.emitted += other.emitted
        self.comparisons += other.comparisons

    def as_dict(self):
        return {
            "nodes": self.nodes,
            "emitted": self.emitted,
            "comparisons": self.comparisons,
            "wall_time": round(self.wall_time, 3),
        }


class SearchLimits:
    """Optional budget: maximum hypergraph expansions per search root."""

    __slots__ = ("max_nodes",)

    def __init__(self, max_nodes=None):
        self.max_nodes = max_nodes


class DegenerationReport:
    """Result of a min-above computation.

    ``maximal`` is a weak-order antichain of matroids strictly below the
    source, canonically ordered; ``classes`` optionally groups it into
    orbits of the source's automorphisms.  ``complete`` is False when a node
    budget cut the search short.
    """

    __slots__ = ("source", "maximal", "classes", "stats", "complete")

    def __init__(self, source, maximal, stats, complete=True, classes=None):
        self.source = source
        self.maximal = tuple(maximal)
        self.stats = stats
        self.complete = complete
        self.classes = classes

    def __len__(self):
        return len(self.maximal)


# -- general-rank engine ------------------------------------------------------


def _scan_general(hg):
    """First conflicting edge pair, in canonical pair order.

    Returns None when the hypergraph already meets the pairwise matroid
    conditions, otherwise an action tuple:
      ("retype", mask, bound)          -- a nested edge forces a lower bound
      ("branch", (u, bu), (i, bi))     -- submodularity split on union and
                                          intersection (bounds may be
                                          infeasible, i.e. negative)
    """
    edges = hg.edges
    n = hg.n
    vals = {}

    def val(mask):
        v = vals.get(mask)
        if v is None:
            v = min(mask.bit_count(), n)
            for e, b in edges:  # bounds ascend, so later edges cannot win
                if b >= v:
                    break
                w = (mask & ~e).bit_count() + b
                if w < v:
                    v = w
            vals[mask] = v
        return v

    for a in range(len(edges)):
        ea, ba = edges[a]
        for b in range(a + 1, len(edges)):
            eb, bb = edges[b]
            if ea & ~eb == 0:  # ea properly inside eb (edges are distinct)
                if ba > bb:
                    return ("retype", ea, bb)
                if bb > ba + (eb & ~ea).bit_count():
                    return ("retype", eb, ba + (eb & ~ea).bit_count())
            elif eb & ~ea == 0:
                if bb > ba:
                    return ("retype", eb, ba)
                if ba > bb + (ea & ~eb).bit_count():
                    return ("retype", ea, bb + (ea & ~eb).bit_count())
            inter = ea & eb
            union = ea | eb
            vi = val(inter)
            vu = val(union)
            s = vi + vu - ba - bb
            if s > 0:
                half = -(-s // 2)  # ceil
                return ("branch", (union, vu - half), (inter, vi - half))
    return None


def _low_rank_signature(hg):
    """When the whole vertex set is bounded at rank <= 2, the unique maximal
    matroid below the hypergraph is determined by its loop set and parallel
    classes alone.  Returns that cheap signature (loops mask, class masks)
    or None when the bound exceeds 2.
    """
    verts = hg.vertices
    total = verts.bit_count()
    v_full = min(total, hg.n)
    for e, b in hg.edges:
        if b >= v_full:
            break
        w = (verts & ~e).bit_count() + b
        if w < v_full:
            v_full = w
    if v_full > 2:
        return None
    loops = 0
    for e, b in hg.edges:
        if b == 0:
            loops |= e
    pts = points_of(verts)
    parent = {p: p for p in pts}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e, b in hg.edges:
        if b == 1:
            epts = points_of(e & ~loops)
            for p in epts[1:]:
                ra, rb = find(epts[0]), find(p)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
    fibers = {}
    for p in pts:
        if not loops >> (p - 1) & 1:
            fibers.setdefault(find(p), 0)
            fibers[find(p)] |= 1 << (p - 1)
    classes = tuple(fibers[r] for r in sorted(fibers))
    return (loops, classes)


def _materialize_low_rank(d, signature):
    """The closed-form maximal matroid for a rank <= 2 signature: loops,
    all intra-class pairs, and transversal triples across class triples."""
    loops, classes = signature
    circuits = [1 << (p - 1) for p in points_of(loops)]
    pools = []
    for cls in classes:
        cpts = points_of(cls)
        pools.append(cpts)
        for i in range(len(cpts)):
            for j in range(i + 1, len(cpts)):
                circuits.append((1 << (cpts[i] - 1)) | (1 << (cpts[j] - 1)))
    rank = min(2, len(pools))
    if len(pools) > rank:
        from itertools import combinations as _comb

        for trio in _comb(pools, rank + 1):
            for choice in _pick_one_each(list(trio)):
                circuits.append(choice)
    circuits.sort(key=canon_key)
    return Matroid(d, rank, tuple(circuits))


def _pick_one_each(pools):
    if not pools:
        yield 0
        return
    for rest in _pick_one_each(pools[1:]):
        for p in pools[0]:
            yield rest | (1 << (p - 1))


class _RootPrune:
    """Cross-root dominance pruning for the per-dependency searches.

    Search roots are ordered by their declared dependency (size, then
    lexicographic).  A state that forces a loop at a point that is not a
    loop of the source, or a new parallel pair belonging to an earlier
    root, only produces matroids already dominated by that earlier root's
    results (any matroid with an extra loop at i lies below the designated
    loop matroid M(i); any matroid with a new pair lies below the pair's
    own root).  Every degeneration survives in the root of its earliest
    new dependency, so pruning such states keeps the merged output exact.
    """

    __slots__ = ("source_loops", "source_pairs", "root_points")

    def __init__(self, source, root_mask):
        self.source_loops = source.loops_mask
        self.source_pairs = frozenset(
            c for c in source.circuit_masks if c.bit_count() == 2
        )
        self.root_points = points_of(root_mask)

    def _min_new_pair(self, e):
        """Lex-least pair inside the edge that is not already parallel in
        the source (enumeration order is pair-lexicographic)."""
        pts = points_of(e & ~self.source_loops)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                mask = (1 << (pts[i] - 1)) | (1 << (pts[j] - 1))
                if mask not in self.source_pairs:
                    return (pts[i], pts[j])
        return None

    def covered_elsewhere(self, hg):
        root_size = len(self.root_points)
        for e, b in hg.edges:
            if b >= 2:
                break
            if b == 0:
                if e & ~self.source_loops:
                    return True
                continue
            pair = self._min_new_pair(e)
            if pair is not None and (root_size > 2 or pair < self.root_points):
                return True
        return False


def _search_root(root, limits=None, stats=None, prune=None):
    """Depth-first expansion of one root hypergraph.

    Returns (low_signatures, matroids) where low_signatures describe the
    rank <= 2 leaves in closed form (materialized later, after a cheap bulk
    antichain pass) and matroids are the remaining stable-leaf emissions.
    The node budget in ``limits`` applies to this single search, so budgeted
    runs behave the same whether roots are solved serially or in workers.
    ``prune`` drops states whose matroids another root covers.
    """
    if stats is None:
        stats = SearchStats()
    max_nodes = limits.max_nodes if limits is not None else None
    stack = [root]
    visited = {root.edges}
    found = {}
    low_kept = []  # running antichain of closed-form signatures
    nodes = 0
    try:
        while stack:
            hg = stack.pop()
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceeded("node budget exhausted")
            while True:
                sig = _low_rank_signature(hg)
                if sig is not None:
                    if not any(_sig_leq(sig, k) for k in low_kept):
                        low_kept[:] = [k for k in low_kept if not _sig_leq(k, sig)]
                        low_kept.append(sig)
                    break
                action = _scan_general(hg)
                if action is None:
                    m = _matroid_from_hypergraph_unchecked(hg)
                    if m._key not in found:
                        found[m._key] = m
                        stats.emitted += 1
                    break
                if action[0] == "retype":
                    # forced bound drops carry no choice; apply in place
                    hg = with_edge(hg, action[1], action[2])
                    continue
                live = []
                for mask, bound in (action[1], action[2]):
                    if bound < 0:
                        continue  # infeasible; the sibling branch covers
                    nxt = with_edge(hg, mask, bound)
                    if prune is not None and prune.covered_elsewhere(nxt):
                        continue
                    live.append(nxt)
                if len(live) == 1:
                    hg = live[0]
                    continue
                for nxt in live:
                    if nxt.edges not in visited:
                        visited.add(nxt.edges)
                        stack.append(nxt)
                break
    finally:
        stats.nodes += nodes
    return low_kept, found


def _sig_leq(sig1, sig2):
    """Does the closed-form matroid of sig1 lie below that of sig2?  True
    iff every dependency of sig2 (loops, intra-class pairs) holds in sig1."""
    loops1, classes1 = sig1
    loops2, classes2 = sig2
    if loops2 & ~loops1:
        return False
    for c2 in classes2:
        rest = c2 & ~loops1
        if rest.bit_count() <= 1:
            continue
        if not any(rest & ~c1 == 0 for c1 in classes1):
            return False
    return True


def _sig_antichain(sigs):
    """Maximal elements among low-rank signatures (cheap mask tests)."""
    order = sorted(sigs, key=lambda s: (s[0].bit_count(), len(s[1])))
    kept = []
    for sig in order:
        if any(_sig_leq(sig, k) for k in kept):
            continue
        kept = [k for k in kept if not _sig_leq(k, sig)]
        kept.append(sig)
    return kept


def min_above_hyp(root, limits=None, stats=None, prune=None):
    """Maximal matroids (of rank at most the ambient n) below a hypergraph."""
    if stats is None:
        stats = SearchStats()
    low_seen, found = _search_root(root, limits, stats, prune)
    for sig in _sig_antichain(low_seen):
        m = _materialize_low_rank(root.d, sig)
        if m._key not in found:
            found[m._key] = m
            stats.emitted += 1
    return maximal_elements(found.values(), stats)


def _general_roots(m):
    """One hypergraph per independent set of size >= 2, the set declared
    dependent.  Size-1 roots have the designated loop matroid as their
    unique maximal element and are handled in closed form."""
    base = delta_of_matroid(m)
    roots = []
    for e in independent_masks(m):
        if e.bit_count() >= 2:
            roots.append((with_edge(base, e, e.bit_count() - 1), _RootPrune(m, e)))
    return roots


def _solve_root(args):
    root, prune, max_nodes = args
    stats = SearchStats()
    limits = SearchLimits(max_nodes)
    try:
        low, found = _search_root(root, limits, stats, prune)
        ok = True
    except BudgetExceeded:
        low, found = set(), {}
        ok = False
    return (
        low,
        [mm._key + (mm.n,) for mm in found.values()],
        stats.nodes,
        stats.emitted,
        ok,
    )


def min_above_general(m, limits=None, threads=1):
    """Maximal matroid degenerations of a matroid, any rank.

    Search roots are independent; with threads > 1 they are distributed over
    worker processes and the merged output is identical to a serial run.
    Node budgets apply per root, so partial results are also reproducible.
    The closed-form rank <= 2 leaves are pooled across roots and reduced by
    a cheap signature antichain before the final comparison stage.
    """
    stats = SearchStats()
    t0 = time.monotonic()
    max_nodes = limits.max_nodes if limits is not None else None
    candidates = {}
    for i in range(1, m.d + 1):
        if not m._is_dependent_mask(1 << (i - 1)):
            loopy = designate_loop(m, i)
            candidates[loopy._key] = loopy
            stats.emitted += 1
    roots = _general_roots(m)
    all_sigs = set()
    complete = True
    if threads > 1 and len(roots) > 1:
        jobs = [(root, prune, max_nodes) for root, prune in roots]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for low, keys, nodes, emitted, ok in pool.map(
                _solve_root, jobs, chunksize=4
            ):
                stats.nodes += nodes
                stats.emitted += emitted
                complete = complete and ok
                all_sigs.update(low)
                for d, masks, n in keys:
                    candidates[(d, masks)] = Matroid(d, n, masks)
    else:
        per_root = SearchLimits(max_nodes)
        for root, prune in roots:
            try:
                low, found = _search_root(root, per_root, stats, prune)
                all_sigs.update(low)
                candidates.update(found)
            except BudgetExceeded:
                complete = False
    for sig in _sig_antichain(all_sigs):
        mm = _materialize_low_rank(m.d, sig)
        candidates.setdefault(mm._key, mm)
    maximal = maximal_elements(candidates.values(), stats)
    stats.wall_time = time.monotonic() - t0
    return DegenerationReport(m, maximal, stats, complete)


# -- rank-4 stratified engine -------------------------------------------------


def _scan_rank4(hg, v):
    """First conflicting pair under the rank-4 case analysis.

    Action tuples:
      ("push", (mask, bound), ...)  -- plain branches
      plus ("reduce", mask) entries -- add (mask, 1) and identify (v=2 only)
    """
    edges = hg.edges
    twos = [e for e, b in edges if b == 2]
    threes = [e for e, b in edges if b == 3]
    for a in range(len(edges)):
        ea, ba = edges[a]
        for b in range(a + 1, len(edges)):
            eb, bb = edges[b]
            inter = ea & eb
            k = inter.bit_count()
            if ba == 3 and bb == 3:
                if k >= 3 and not any(inter & ~z == 0 for z in twos):
                    branches = [("push", ea | eb, 3)]
                    if v <= 3:
                        branches.append(("push", inter, 2))
                    return branches
            elif ba != bb:  # one bound-2, one bound-3 edge
                e3, e2 = (ea, eb) if ba == 3 else (eb, ea)
                if k >= 2 and e2 & ~e3:
                    branches = [("push", e3 | e2, 3)]
                    if v == 2:
                        branches.append(("reduce", inter))
                    return branches
            else:  # both bound 2
                if k >= 2:
                    branches = [("push", ea | eb, 2)]
                    if v == 2:
                        branches.append(("reduce", inter))
                    return branches
                if k == 1 and not any((ea | eb) & ~z == 0 for z in threes):
                    return [("push", ea | eb, 3)]
    return None


def _rank4_search(root, qmap0, v, limits=None, stats=None):
    """Emit lifted maximal matroids for one stratified root hypergraph."""
    if stats is None:
        stats = SearchStats()
    max_nodes = limits.max_nodes if limits is not None else None
    stack = [(root, qmap0)]
    visited = {(root.edges, qmap0.target)}
    found = {}
    nodes = 0
    def emit(m, qmap):
        if not qmap.is_identity():
            m = qmap.lift(m)
        if m._key not in found:
            found[m._key] = m
            stats.emitted += 1

    low_seen = set()
    try:
        while stack:
            hg, qmap = stack.pop()
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                raise BudgetExceeded("node budget exhausted")
            while True:
                sig = _low_rank_signature(hg)
                if sig is not None:
                    if (sig, qmap.target) not in low_seen:
                        low_seen.add((sig, qmap.target))
                        emit(_materialize_low_rank(hg.d, sig), qmap)
                    break
                action = _scan_rank4(hg, v)
                if action is None:
                    emit(_matroid_from_hypergraph_unchecked(hg), qmap)
                    break
                if len(action) == 1 and action[0][0] == "push":
                    hg = with_edge(hg, action[0][1], action[0][2])
                    continue
                for branch in action:
                    if branch[0] == "push":
                        nxt, nmap = with_edge(hg, branch[1], branch[2]), qmap
                    else:
                        red, step = reduce_hypergraph(with_edge(hg, branch[1], 1))
                        nxt, nmap = red, qmap.compose(step)
                    key = (nxt.edges, nmap.target)
                    if key not in visited:
                        visited.add(key)
                        stack.append((nxt, nmap))
                break
    finally:
        stats.nodes += nodes
    return maximal_elements(found.values(), stats)


def _circuit_profile(m, size):
    return tuple(c for c in m.circuit_masks if c.bit_count() == size)


def _in_stratum(candidate, source, v):
    for j in range(1, v):
        if _circuit_profile(candidate, j) != _circuit_profile(source, j):
            return False
    cv, sv = set(_circuit_profile(candidate, v)), set(_circuit_profile(source, v))
    return cv > sv


def _require_simple_rank4(m):
    if m.n != 4:
        raise NotRankFour("rank-4 path needs a rank-4 matroid, got rank %d" % m.n)
    if not m.is_simple():
        raise NotSimple("rank-4 path needs a simple matroid")


def _stratum_roots(m, v):
    base = delta_of_matroid(m, 4)
    roots = []
    for x in masks_of_size(m.d, v):
        if m._is_dependent_mask(x):
            continue
        hg = with_edge(base, x, v - 1)
        if v == 2:
            red, qmap = reduce_hypergraph(hg)
            roots.append((red, qmap))
        else:
            roots.append((hg, QuotientMap.identity(m.d)))
    return roots


def _solve_stratum_root(args):
    root, qmap, v, max_nodes = args
    stats = SearchStats()
    try:
        out = _rank4_search(root, qmap, v, SearchLimits(max_nodes), stats)
        ok = True
    except BudgetExceeded:
        out = []
        ok = False
    return [mm._key + (mm.n,) for mm in out], stats.nodes, stats.emitted, ok


def stratum_min(m, v, limits=None, stats=None, threads=1):
    """Maximal degenerations whose first new circuit appears in size v.

    The candidate set runs over independent v-subsets; for v = 2 the forced
    double point is identified up front and results are lifted back.
    """
    _require_simple_rank4(m)
    if v not in (2, 3, 4):
        raise ValueError("stratum index must be 2, 3 or 4")
    if stats is None:
        stats = SearchStats()
    max_nodes = limits.max_nodes if limits is not None else None
    candidates = {}
    roots = _stratum_roots(m, v)
    if threads > 1 and len(roots) > 1:
        jobs = [(root, qmap, v, max_nodes) for root, qmap in roots]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for keys, nodes, emitted, ok in pool.map(
                _solve_stratum_root, jobs, chunksize=4
            ):
                stats.nodes += nodes
                stats.emitted += emitted
                if not ok:
                    raise BudgetExceeded("node budget exhausted")
                for d, masks, n in keys:
                    candidates[(d, masks)] = Matroid(d, n, masks)
    else:
        per_root = SearchLimits(max_nodes)
        for root, qmap in roots:
            for mm in _rank4_search(root, qmap, v, per_root, stats):
                candidates[mm._key] = mm
    kept = [mm for mm in candidates.values() if _in_stratum(mm, m, v)]
    return maximal_elements(kept, stats)


def min_above_rank4(m, limits=None, threads=1):
    """Rank-4 optimized degenerations: per-stratum searches, then a
    cross-stratum filter (each stratum is screened against the higher ones
    only, since lower strata can never dominate higher ones)."""
    _require_simple_rank4(m)
    stats = SearchStats()
    t0 = time.monotonic()
    complete = True
    s1 = sorted((designate_loop(m, i) for i in range(1, m.d + 1)), key=Matroid.sort_key)
    strata = {1: s1}
    for v in (2, 3, 4):
        try:
            strata[v] = stratum_min(m, v, limits, stats, threads)
        except BudgetExceeded:
            strata[v] = []
            complete = False

    memo = {}

    def leq(a, b):
        key = (id(a), id(b))
        r = memo.get(key)
        if r is None:
            from .weak_order import compare

            r = compare(a, b)
            memo[key] = r
            stats.comparisons += 1
        return r

    l4 = list(strata[4])
    l3 = [x for x in strata[3] if not any(leq(x, y) for y in l4)]
    l2 = [x for x in strata[2] if not any(leq(x, y) for y in l4 + l3)]
    l1 = [x for x in strata[1] if not any(leq(x, y) for y in l4 + l3 + l2)]
    maximal = sorted(l1 + l2 + l3 + l4, key=Matroid.sort_key)
    stats.wall_time = time.monotonic() - t0
    return DegenerationReport(m, maximal, stats, complete)


def min_above_hyp_rank4(root, limits=None, stats=None):
    """Maximal matroids below a reduced rank-4 hypergraph: the stratified
    searches are run for every v and their union is filtered."""
    if stats is None:
        stats = SearchStats()
    qmap = QuotientMap.identity(root.d)
    candidates = {}
    for v in (2, 3, 4):
        for mm in _rank4_search(root, qmap, v, limits, stats):
            candidates[mm._key] = mm
    return maximal_elements(candidates.values(), stats)


def min_above(m, method="auto", limits=None, threads=1):
    """Maximal matroid degenerations; picks the rank-4 path when it applies."""
    if method == "auto":
        method = "rank4" if (m.n == 4 and m.is_simple()) else "general"
    if method == "rank4":
        return min_above_rank4(m, limits, threads)
    if method == "general":
        return min_above_general(m, limits, threads)
    raise ValueError("unknown method %r" % (method,))


def default_thread_count():
    env = os.environ.get("MATDEG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1
