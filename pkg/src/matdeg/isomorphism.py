"""Canonical labeling, isomorphism testing and automorphism groups.

The canonical form is the lexicographically minimal dependency bitstring
over relabelings: positions are filled one point at a time (classes from an
invariant color refinement fix the block structure) and every completed
subset contributes one bit, so a branch-and-bound search over color-
compatible assignments finds the exact minimum.  Uniform families are
label-invariant and short-circuit the search.
"""

import hashlib
from itertools import combinations
from math import factorial

from .bitsets import bit, mask_of, points_of
from .core import Matroid, dependent_bitmap, relabel, subspace_table


def _is_uniform_family(m):
    """True when the circuits are exactly all (n+1)-subsets (or none)."""
    if not m.circuit_masks:
        return True
    k = m.circuit_masks[0].bit_count()
    if any(c.bit_count() != k for c in m.circuit_masks):
        return False
    from math import comb

    return len(m.circuit_masks) == comb(m.d, k)


def _refined_colors(m):
    """Deterministic invariant colors per point, refined to a fixpoint.

    Seed invariants: loop flag, subspace degree, multiset of subspace ranks
    through the point, circuit-size histogram through the point.  Each round
    appends the multiset of color tuples seen across circuits through the
    point.
    """
    table = subspace_table(m)
    sub_ranks = {p: [] for p in range(1, m.d + 1)}
    for pts, r in table.subspaces:
        for p in pts:
            sub_ranks[p].append(r)
    seed = {}
    for p in range(1, m.d + 1):
        sizes = sorted(c.bit_count() for c in m._by_point[p])
        seed[p] = (
            int(bool(bit(p) & m.loops_mask)),
            table.degree(p),
            tuple(sorted(sub_ranks[p])),
            tuple(sizes),
        )
    colors = _intern({p: (seed[p],) for p in range(1, m.d + 1)})
    while True:
        nxt = {}
        for p in range(1, m.d + 1):
            around = sorted(
                (c.bit_count(), tuple(sorted(colors[q] for q in points_of(c))))
                for c in m._by_point[p]
            )
            nxt[p] = (colors[p], tuple(around))
        nxt = _intern(nxt)
        if _partition(nxt) == _partition(colors):
            return nxt
        colors = nxt


def _intern(raw):
    order = sorted(set(raw.values()))
    index = {sig: i for i, sig in enumerate(order)}
    return {p: index[sig] for p, sig in raw.items()}


def _partition(colors):
    groups = {}
    for p, c in colors.items():
        groups.setdefault(c, set()).add(p)
    return sorted(map(frozenset, groups.values()), key=lambda s: sorted(s))


def _color_blocks(m):
    """Classes ordered by a label-invariant signature; positions are filled
    class by class in this order."""
    colors = _refined_colors(m)
    groups = {}
    for p, c in colors.items():
        groups.setdefault(c, []).append(p)
    # the interned color index is already label-invariant (derived from
    # sorted signatures), so ordering blocks by it is canonical
    return [sorted(groups[c]) for c in sorted(groups)]


def _min_relabeling(m):
    """Permutation old->new achieving the minimal dependency bitstring."""
    d, n = m.d, m.n
    if _is_uniform_family(m):
        return tuple(range(1, d + 1))
    dep = dependent_bitmap(m)
    blocks = _color_blocks(m)
    slots = []  # slots[k] = block index feeding position k+1
    for i, b in enumerate(blocks):
        slots.extend([i] * len(b))
    max_size = min(n + 1, d)

    best_chunks = None
    best_perm = None
    # state: inverse[k] = source point at position k+1
    def extend(inverse, used, chunks):
        nonlocal best_chunks, best_perm
        k = len(inverse)
        if k == d:
            if best_chunks is None or chunks < best_chunks:
                best_chunks = list(chunks)
                perm = [0] * d
                for pos, src in enumerate(inverse):
                    perm[src - 1] = pos + 1
                best_perm = tuple(perm)
            return
        for src in blocks[slots[k]]:
            if src in used:
                continue
            chunk = 0
            for s in range(1, min(max_size, k + 1) + 1):
                for combo in combinations(range(k), s - 1):
                    mask = bit(src)
                    for pos in combo:
                        mask |= bit(inverse[pos])
                    chunk = (chunk << 1) | dep[mask]
            chunks.append(chunk)
            if best_chunks is None or chunks <= best_chunks[: len(chunks)]:
                extend(inverse + [src], used | {src}, chunks)
            chunks.pop()

    extend([], frozenset(), [])
    return best_perm


class CanonicalForm:
    """Relabeling-invariant certificate: the circuit family under the
    minimal relabeling, plus a digest of it."""

    __slots__ = ("certificate", "hash")

    def __init__(self, certificate):
        self.certificate = certificate
        self.hash = hashlib.sha256(repr(certificate).encode()).hexdigest()

    def __eq__(self, other):
        return isinstance(other, CanonicalForm) and self.certificate == other.certificate

    def __hash__(self):
        return hash(self.certificate)

    def __repr__(self):
        return "CanonicalForm(%s)" % self.hash[:12]


def canonical_form(m):
    form, _ = _canonical(m)
    return form


def canonical_permutation(m):
    """The relabeling old->new realizing the canonical form."""
    _, perm = _canonical(m)
    return perm


def _canonical(m):
    if m._canon_cache is None:
        perm = _min_relabeling(m)
        canon = relabel(m, perm)
        form = CanonicalForm((m.d, m.n, canon.circuits))
        m._canon_cache = (form, perm)
    return m._canon_cache


def are_isomorphic(m1, m2):
    if m1.d != m2.d or m1.n != m2.n:
        return False
    sizes1 = sorted(c.bit_count() for c in m1.circuit_masks)
    sizes2 = sorted(c.bit_count() for c in m2.circuit_masks)
    if sizes1 != sizes2:
        return False
    return canonical_form(m1) == canonical_form(m2)


class AutomorphismGroup:
    """Permutations preserving dependence.

    ``elements`` is the full list when the order is small enough to store
    (at most 10**6), else None; ``generators`` always suffice to regenerate
    the group by composition.
    """

    __slots__ = ("order", "generators", "elements")

    def __init__(self, order, generators, elements=None):
        self.order = order
        self.generators = generators
        self.elements = elements

    def __repr__(self):
        return "AutomorphismGroup(order=%d, %d generators)" % (
            self.order,
            len(self.generators),
        )


_ELEMENT_CAP = 10**6


def automorphisms(m):
    """Automorphism group via backtracking over color-compatible maps.

    A partial map is extended only while circuits completed on either side
    keep landing on dependent sets; the two directions together guarantee
    dependence is preserved exactly.
    """
    d = m.d
    if _is_uniform_family(m):
        order = factorial(d)
        gens = []
        if d >= 2:
            gens.append(tuple([2, 1] + list(range(3, d + 1))))
        if d >= 3:
            gens.append(tuple(list(range(2, d + 1)) + [1]))
        elements = None
        if order <= 10**4:
            from itertools import permutations

            elements = tuple(permutations(range(1, d + 1)))
        return AutomorphismGroup(order, tuple(gens), elements)

    dep = dependent_bitmap(m)
    colors = _refined_colors(m)
    by_color = {}
    for p in range(1, d + 1):
        by_color.setdefault(colors[p], []).append(p)
    source_order = sorted(range(1, d + 1), key=lambda p: (len(by_color[colors[p]]), p))
    found = []

    def consistent(sigma, inv, v, w, mapped_mask, image_mask):
        # circuits through v fully mapped must land on dependent sets
        for c in m._by_point[v]:
            if c & ~mapped_mask == 0:
                img = mask_of(sigma[p] for p in points_of(c))
                if not dep[img]:
                    return False
        for c in m._by_point[w]:
            if c & ~image_mask == 0:
                pre = mask_of(inv[p] for p in points_of(c))
                if not dep[pre]:
                    return False
        return True

    def extend(idx, sigma, inv, mapped_mask, image_mask):
        if idx == d:
            found.append(tuple(sigma[p] for p in range(1, d + 1)))
            return
        v = source_order[idx]
        for w in by_color[colors[v]]:
            if w in inv:
                continue
            sigma[v] = w
            inv[w] = v
            if consistent(sigma, inv, v, w, mapped_mask | bit(v), image_mask | bit(w)):
                extend(idx + 1, sigma, inv, mapped_mask | bit(v), image_mask | bit(w))
            del sigma[v]
            del inv[w]

    extend(0, {}, {}, 0, 0)
    found.sort()
    elements = tuple(found)
    generators = _generating_subset(elements, d)
    return AutomorphismGroup(
        len(elements), generators, elements if len(elements) <= _ELEMENT_CAP else None
    )


def _compose(g, h):
    """Apply g first, then h (both as tuples: point p -> perm[p-1])."""
    return tuple(h[g[p - 1] - 1] for p in range(1, len(g) + 1))


def _generating_subset(elements, d):
    """Greedy generating set: add any element outside the closure so far."""
    identity = tuple(range(1, d + 1))
    gens = []
    have = {identity}
    for g in elements:
        if g in have:
            continue
        gens.append(g)
        have = {identity}
        queue = [identity]
        while queue:
            x = queue.pop()
            for y in gens:
                z = _compose(x, y)
                if z not in have:
                    have.add(z)
                    queue.append(z)
        if len(have) == len(elements):
            break
    return tuple(gens)


def orbit_of(m, group):
    """All relabelings of a matroid under a group (generators suffice)."""
    gens = group.generators if isinstance(group, AutomorphismGroup) else tuple(group)
    seen = {m}
    queue = [m]
    while queue:
        x = queue.pop()
        for g in gens:
            y = relabel(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def group_by_symmetry(matroids, source_or_group):
    """Partition a list into orbits under the automorphisms of the source.

    Returns a list of (representative, members) pairs, canonically sorted;
    members not related by the group end up in singleton classes.
    """
    if isinstance(source_or_group, Matroid):
        group = automorphisms(source_or_group)
    else:
        group = source_or_group
    pending = sorted(set(matroids), key=Matroid.sort_key)
    classes = []
    assigned = set()
    for mm in pending:
        if mm in assigned:
            continue
        orbit = orbit_of(mm, group)
        members = tuple(x for x in pending if x in orbit)
        assigned.update(members)
        classes.append((members[0], members))
    classes.sort(key=lambda rm: rm[0].sort_key())
    return classes
