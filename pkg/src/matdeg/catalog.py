"""Named matroids and incidence-geometry generators.

Fixtures are built from their point-line / hyperplane descriptions and
validated once (results are cached).  Finite projective and affine planes
are generated from field incidence for q in {2, 3, 4}; their blocks double
as Steiner-system inputs.
"""

import re
from itertools import combinations

from .bitsets import mask_of, masks_of_size
from .core import Matroid, _normalize_circuit_masks, check_circuit_axioms, uniform_matroid

FANO_LINES = (
    (1, 2, 4),
    (1, 3, 7),
    (1, 5, 6),
    (2, 3, 5),
    (4, 5, 7),
    (2, 6, 7),
    (3, 4, 6),
)

THREE_LINES = ((1, 2, 7), (3, 4, 7), (5, 6, 7))

QS_LINES = ((1, 2, 3), (1, 5, 6), (3, 4, 5), (2, 4, 6))

VAMOS_PLANES = (
    (1, 2, 3, 4),
    (3, 4, 5, 6),
    (5, 6, 7, 8),
    (1, 2, 7, 8),
    (3, 4, 7, 8),
)

# the realizable extension of the Vamos matroid: the missing plane is added
VAMOS_A_PLANES = VAMOS_PLANES + ((1, 2, 5, 6),)

STEINER348_BLOCKS = (
    (1, 2, 4, 8),
    (2, 3, 5, 8),
    (3, 4, 6, 8),
    (4, 5, 7, 8),
    (1, 5, 6, 8),
    (2, 6, 7, 8),
    (1, 3, 7, 8),
    (3, 5, 6, 7),
    (1, 4, 6, 7),
    (1, 2, 5, 7),
    (1, 2, 3, 6),
    (2, 3, 4, 7),
    (1, 3, 4, 5),
    (2, 4, 5, 6),
)

FANO_DUAL_PLANES = (
    (4, 5, 6, 7),
    (2, 3, 5, 6),
    (2, 3, 4, 7),
    (1, 3, 5, 7),
    (1, 3, 4, 6),
    (1, 2, 4, 5),
    (1, 2, 6, 7),
)

GRID33_LINES = (
    (1, 2, 3),
    (4, 5, 6),
    (7, 8, 9),
    (1, 4, 7),
    (2, 5, 8),
    (3, 6, 9),
)

K33_DUAL_QUADS = (
    (2, 3, 4, 7),
    (1, 3, 5, 8),
    (1, 2, 6, 9),
    (1, 5, 6, 7),
    (2, 4, 6, 8),
    (3, 4, 5, 9),
    (1, 4, 8, 9),
    (2, 5, 7, 9),
    (3, 6, 7, 8),
)

THREE_PAIRS_QUADS = ((1, 2, 3, 4), (3, 4, 5, 6), (1, 2, 5, 6))


def paving_from_hyperplanes(d, n, hyperplanes, validate=True):
    """Rank-n paving matroid with the given dependent hyperplanes.

    Circuits are the n-subsets of the hyperplanes plus the minimal
    (n+1)-subsets of the ground set.
    """
    raw = []
    for h in hyperplanes:
        for combo in combinations(sorted(h), n):
            raw.append(mask_of(combo))
    raw.extend(masks_of_size(d, n + 1))
    canon = _normalize_circuit_masks(raw)
    m = Matroid(d, n, canon)
    if validate:
        check_circuit_axioms(m)
    return m


def matroid_from_small_circuits(d, n, circuits, validate=True):
    """Matroid of rank n whose circuits of size <= n are as given; every
    remaining (n+1)-subset is filled in as a spanning circuit."""
    raw = [mask_of(c) for c in circuits]
    raw.extend(masks_of_size(d, n + 1))
    canon = _normalize_circuit_masks(raw)
    m = Matroid(d, n, canon)
    if validate:
        check_circuit_axioms(m)
    return m


def steiner_matroid(d, blocks, strength, validate=True):
    """Paving matroid of a Steiner system S(strength, k, d).

    Verifies that every strength-subset of [d] lies in exactly one block;
    the blocks become the dependent hyperplanes of a rank strength+1 paving
    matroid.
    """
    blocks = tuple(tuple(sorted(b)) for b in blocks)
    for combo in combinations(range(1, d + 1), strength):
        hits = sum(1 for b in blocks if set(combo) <= set(b))
        if hits != 1:
            raise ValueError(
                "%s lies in %d blocks; a Steiner system needs exactly one"
                % (combo, hits)
            )
    return paving_from_hyperplanes(d, strength + 1, blocks, validate=validate)


# -- finite fields and planes -------------------------------------------------


class _GF:
    """Arithmetic for GF(q), q in {2, 3, 4} (any prime also works)."""

    def __init__(self, q):
        self.q = q
        if q == 4:
            # GF(2)[x]/(x^2+x+1); elements are bit pairs, addition is xor
            self._mul = [[0] * 4 for _ in range(4)]
            for a in range(4):
                for b in range(4):
                    acc = 0
                    for i in range(2):
                        if (b >> i) & 1:
                            acc ^= a << i
                    for shift in (3, 2):
                        if acc >> shift & 1:
                            acc ^= 0b111 << (shift - 2)
                    self._mul[a][b] = acc
            self._inv = {1: 1, 2: 3, 3: 2}
        else:
            if any(q % p == 0 for p in range(2, q)):
                raise ValueError("only prime q or q = 4 are supported")
            self._mul = None
            self._inv = {a: pow(a, q - 2, q) for a in range(1, q)}

    def add(self, a, b):
        return a ^ b if self.q == 4 else (a + b) % self.q

    def mul(self, a, b):
        return self._mul[a][b] if self.q == 4 else (a * b) % self.q

    def inv(self, a):
        return self._inv[a]


def projective_plane_blocks(q):
    """Points are labels 1..q^2+q+1; blocks are the q+1-point lines of
    PG(2, q)."""
    gf = _GF(q)
    pts = []
    for x in range(q):
        for y in range(q):
            for z in range(q):
                v = (x, y, z)
                if v == (0, 0, 0):
                    continue
                lead = next(c for c in v if c != 0)
                scale = gf.inv(lead)
                norm = tuple(gf.mul(scale, c) for c in v)
                if norm not in pts:
                    pts.append(norm)
    pts.sort()
    label = {p: i + 1 for i, p in enumerate(pts)}
    blocks = []
    for line in pts:
        block = []
        for p in pts:
            s = 0
            for a, b in zip(line, p):
                s = gf.add(s, gf.mul(a, b))
            if s == 0:
                block.append(label[p])
        blocks.append(tuple(sorted(block)))
    return len(pts), tuple(sorted(blocks))


def affine_plane_blocks(q):
    """Points are labels 1..q^2; blocks are the q-point lines of AG(2, q)."""
    gf = _GF(q)
    pts = sorted((x, y) for x in range(q) for y in range(q))
    label = {p: i + 1 for i, p in enumerate(pts)}
    blocks = []
    for c in range(q):
        blocks.append(tuple(sorted(label[(c, y)] for y in range(q))))
    for slope in range(q):
        for icept in range(q):
            block = []
            for x in range(q):
                y = gf.add(gf.mul(slope, x), icept)
                block.append(label[(x, y)])
            blocks.append(tuple(sorted(block)))
    return len(pts), tuple(sorted(blocks))


def projective_plane(q):
    d, blocks = projective_plane_blocks(q)
    return steiner_matroid(d, blocks, 2, validate=False)


def affine_plane(q):
    d, blocks = affine_plane_blocks(q)
    return steiner_matroid(d, blocks, 2, validate=False)


# -- the catalog --------------------------------------------------------------

_BUILDERS = {
    "fano": lambda: paving_from_hyperplanes(7, 3, FANO_LINES),
    "threelines": lambda: paving_from_hyperplanes(7, 3, THREE_LINES),
    "qs": lambda: paving_from_hyperplanes(6, 3, QS_LINES),
    "vamos": lambda: paving_from_hyperplanes(8, 4, VAMOS_PLANES),
    "vamosa": lambda: paving_from_hyperplanes(8, 4, VAMOS_A_PLANES),
    "steiner348": lambda: steiner_matroid(8, STEINER348_BLOCKS, 3),
    "fanodual": lambda: paving_from_hyperplanes(7, 4, FANO_DUAL_PLANES),
    "grid33": lambda: paving_from_hyperplanes(9, 3, GRID33_LINES),
    "k33dual": lambda: matroid_from_small_circuits(
        9, 4, GRID33_LINES + K33_DUAL_QUADS
    ),
    "threepairs": lambda: matroid_from_small_circuits(6, 4, THREE_PAIRS_QUADS),
    "pg2": lambda: projective_plane(2),
    "pg3": lambda: projective_plane(3),
    "pg4": lambda: projective_plane(4),
    "ag2": lambda: affine_plane(2),
    "ag3": lambda: affine_plane(3),
    "ag4": lambda: affine_plane(4),
}

def k33dual_degeneration_reps():
    """One representative per identification family below the K33 dual:

    - ``fused_square``: the four points off a row/column cross collapse to
      one point;
    - ``fused_columns``: two parallel lines are identified pointwise;
    - ``fused_two_pairs``: two incident pairs collapse and the other eight
      points drop to a common hyperplane.

    Full families are the orbits of these under the automorphism group.
    """
    from .core import QuotientMap, restriction
    from .hypergraph import induce, matroid_from_hypergraph

    k = catalog("k33dual")
    sub_square, _ = restriction(k, (1, 2, 3, 4, 5, 7))
    fused_square = QuotientMap(9, (1, 2, 3, 4, 5, 5, 6, 5, 5)).lift(sub_square)
    sub_cols, _ = restriction(k, (1, 2, 3, 7, 8, 9))
    fused_columns = QuotientMap(9, (1, 2, 3, 1, 2, 3, 4, 5, 6)).lift(sub_cols)
    core = matroid_from_hypergraph(
        induce(
            [
                ((3, 4, 5), 2),
                ((3, 6, 7), 2),
                ((2, 4, 6), 2),
                ((2, 5, 7), 2),
                ((2, 3, 4, 5, 6, 7), 3),
            ],
            7,
            4,
        )
    )
    fused_two_pairs = QuotientMap(9, (1, 2, 2, 3, 4, 5, 3, 6, 7)).lift(core)
    return {
        "grid": catalog("grid33"),
        "fused_square": fused_square,
        "fused_columns": fused_columns,
        "fused_two_pairs": fused_two_pairs,
    }


_CACHE = {}

_UNIFORM_SHORT = re.compile(r"^u(\d)(\d)$")
_UNIFORM_LONG = re.compile(r"^u(\d+)_(\d+)$")


def catalog_names():
    return sorted(_BUILDERS) + ["u<n><d>", "u<n>_<d>"]


def catalog(name):
    """Look up a named matroid; uniform matroids parse as u27 or u2_7."""
    key = name.lower()
    if key in _CACHE:
        return _CACHE[key]
    builder = _BUILDERS.get(key)
    if builder is not None:
        m = builder()
    else:
        match = _UNIFORM_SHORT.match(key) or _UNIFORM_LONG.match(key)
        if not match:
            raise KeyError("unknown catalog name %r" % name)
        n, d = int(match.group(1)), int(match.group(2))
        m = uniform_matroid(n, d)
    _CACHE[key] = m
    return m
