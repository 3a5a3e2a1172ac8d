"""Recursive decomposition of circuit varieties, driven combinatorially.

The driver simplifies its input, stops at the two base cases (a nilpotent
paving matroid with degrees <= 2 stands alone; when instead every proper
submatroid is nilpotent the corank-one uniform matroid joins it), and
otherwise recurses through the maximal degenerations.  Non-realizable
matroids drop their own component.

Pruning removes only components dominated in the weak order by a component
whose circuit variety is known to equal its matroid variety ("exact"); a
dominance by any other component is merely a possible redundancy, reported
as an annotation, because deciding it needs geometric perturbation
arguments.  Externally established facts (realizability, exactness,
variety coverage) enter through hint tables keyed by canonical form.
"""

from dataclasses import dataclass, field, replace

from .core import (
    Matroid,
    is_nilpotent,
    is_paving,
    is_inductively_connected,
    relabel,
    restriction,
    simplify,
    subspace_table,
    uniform_matroid,
)
from .bitsets import full_mask
from .isomorphism import _is_uniform_family, canonical_form, canonical_permutation
from .search import SearchStats, min_above
from .weak_order import compare


@dataclass(frozen=True)
class DecompositionComponent:
    """One term of a (potential) irreducible decomposition.

    ``exact`` records that the component's circuit variety coincides with
    its matroid variety; ``possible_redundancy`` lists the ids of surviving
    components that dominate this one in the weak order (inclusions that
    would need geometric arguments to decide).
    """

    matroid: Matroid
    status: str = "unknown"  # "irreducible-proven" | "unknown"
    realizable: str = "unknown"  # "yes" | "no" | "unknown"
    exact: bool = False
    provenance: tuple = ()
    possible_redundancy: tuple = ()

    @property
    def id(self):
        return canonical_form(self.matroid).hash[:12]


@dataclass
class DecompositionResult:
    components: tuple
    complete: bool
    stats: SearchStats = field(default_factory=SearchStats)

    def __len__(self):
        return len(self.components)


class Hints:
    """Externally known facts, keyed by canonical-form hash.

    ``realizable`` maps to True/False; ``exact`` asserts circuit variety ==
    matroid variety; ``covered`` marks matroids whose circuit variety is
    already inside the union of the other components, so they are dropped
    without recursion.
    """

    def __init__(self, realizable=None, exact=None, covered=None):
        self.realizable = dict(realizable or {})
        self.exact = set(exact or ())
        self.covered = set(covered or ())

    def merged_with(self, other):
        out = Hints(self.realizable, self.exact, self.covered)
        out.realizable.update(other.realizable)
        out.exact |= other.exact
        out.covered |= other.covered
        return out


def _key(m):
    return canonical_form(m).hash


def default_hints():
    """Realizability facts shipped with the catalog (complex coefficients).

    The Fano plane is flagged non-realizable, matching its published
    decomposition, in which no Fano component appears.
    """
    from .catalog import catalog as named, k33dual_degeneration_reps

    realizable = {}
    for name in ("qs", "grid33", "threelines", "k33dual", "vamosa"):
        realizable[_key(named(name))] = True
    for name in ("fano", "vamos", "steiner348", "fanodual"):
        realizable[_key(named(name))] = False
    # a three-point line plus a free point: the simple core of the
    # line-collapse and point-sum degenerations of the Fano plane
    from .core import matroid_from_circuits

    realizable[_key(matroid_from_circuits(4, None, [(1, 2, 3)]))] = True
    # deleting a point from the Steiner quadruple system leaves a
    # non-realizable matroid (its loop extension is one of the components)
    from .core import deletion

    realizable[_key(deletion(named("steiner348"), (8,))[0])] = False
    return Hints(realizable=realizable)


def paper_hints():
    """Default facts plus the published variety inclusions used to finish
    the decomposition of the dual of the K33 graphic matroid: the grid's
    circuit variety equals its matroid variety, and the identification and
    loop degenerations are covered by the surviving components."""
    from .catalog import catalog as named, k33dual_degeneration_reps
    from .core import designate_loop

    k = named("k33dual")
    reps = k33dual_degeneration_reps()
    covered = {
        _key(reps["fused_square"]),
        _key(reps["fused_columns"]),
        _key(reps["fused_two_pairs"]),
        _key(designate_loop(k, 1)),
    }
    exact = {_key(named("grid33"))}
    return default_hints().merged_with(Hints(exact=exact, covered=covered))


def load_hints(name_or_obj):
    """Hint specs: "paper", "default"/"none", or a parsed JSON object with
    optional "realizable", "non_realizable", "exact", "covered" lists whose
    entries are catalog names or canonical hashes."""
    if name_or_obj in (None, "default"):
        return default_hints()
    if name_or_obj == "paper":
        return paper_hints()
    if name_or_obj == "none":
        return Hints()
    from .catalog import catalog as named, k33dual_degeneration_reps

    def to_hash(entry):
        if isinstance(entry, str) and len(entry) == 64 and all(
            c in "0123456789abcdef" for c in entry
        ):
            return entry
        return _key(named(entry))

    obj = name_or_obj
    hints = default_hints()
    extra = Hints(
        realizable={to_hash(e): True for e in obj.get("realizable", ())},
        exact=[to_hash(e) for e in obj.get("exact", ())],
        covered=[to_hash(e) for e in obj.get("covered", ())],
    )
    for e in obj.get("non_realizable", ()):
        extra.realizable[to_hash(e)] = False
    return hints.merged_with(extra)


# -- structural predicates ----------------------------------------------------


def proper_submatroids_all_nilpotent(m, exhaustive=False):
    """Are all proper submatroids nilpotent?

    The default checks single-point deletions only and relies on nilpotence
    passing down to smaller restrictions; ``exhaustive`` checks every proper
    subset (validation mode, exponential).
    """
    if exhaustive:
        fm = full_mask(m.d)
        for sub in range(fm):
            sub_m, _ = restriction(m, sub)
            if not is_nilpotent(sub_m):
                return False
        return True
    fm = full_mask(m.d)
    for p in range(1, m.d + 1):
        sub_m, _ = restriction(m, fm & ~(1 << (p - 1)))
        if not is_nilpotent(sub_m):
            return False
    return True


def _max_degree(m):
    table = subspace_table(m)
    return max(table.degrees.values(), default=0)


def _base_case(m):
    """0: none; 1: nilpotent paving with degrees <= 2; 2: paving with
    degrees <= 2 and all proper submatroids nilpotent."""
    if not (is_paving(m) and _max_degree(m) <= 2):
        return 0
    if is_nilpotent(m):
        return 1
    if proper_submatroids_all_nilpotent(m):
        return 2
    return 0


# -- the recursion ------------------------------------------------------------


class _Driver:
    def __init__(self, hints, max_depth, budget, threads):
        self.hints = hints
        self.max_depth = max_depth
        self.budget = budget
        self.threads = threads
        self.memo = {}
        self.stats = SearchStats()
        self.complete = True

    def realizability(self, key, m):
        if key in self.hints.realizable:
            return "yes" if self.hints.realizable[key] else "no"
        if _is_uniform_family(m):
            return "yes"
        return "unknown"

    def decompose(self, m, depth, rule):
        simple, qmap = simplify(m)
        comps = self.decompose_simple(simple, depth, rule)
        if qmap.is_identity():
            return comps
        return [replace(c, matroid=qmap.lift(c.matroid)) for c in comps]

    def decompose_simple(self, m, depth, rule):
        key = _key(m)
        hit = self.memo.get(key)
        if hit is not None:
            perm = canonical_permutation(m)
            inverse = [0] * m.d
            for old, new in enumerate(perm, start=1):
                inverse[new - 1] = old
            return [replace(c, matroid=relabel(c.matroid, tuple(inverse))) for c in hit]
        if self.budget is not None:
            if self.budget <= 0:
                self.complete = False
                return [self._component(m, rule + ("budget-stop",), exact=False)]
            self.budget -= 1
        comps = self._expand(m, depth, rule)
        comps = redundancy_prune(comps, annotate=False)
        perm = canonical_permutation(m)
        self.memo[key] = [replace(c, matroid=relabel(c.matroid, perm)) for c in comps]
        return comps

    def _component(self, m, rule, exact):
        key = _key(m)
        realizable = self.realizability(key, m)
        simple, _ = simplify(m)
        connected, _ = is_inductively_connected(simple)
        status = (
            "irreducible-proven" if (connected and realizable == "yes") else "unknown"
        )
        return DecompositionComponent(
            matroid=m,
            status=status,
            realizable=realizable,
            exact=exact,
            provenance=rule,
        )

    def _expand(self, m, depth, rule):
        key = _key(m)
        realizable = self.realizability(key, m)
        if key in self.hints.exact:
            if realizable == "no":
                return []
            return [self._component(m, rule + ("exact-hint",), exact=True)]
        case = _base_case(m)
        if case == 1:
            if realizable == "no":
                return []
            return [self._component(m, rule + ("nilpotent-base",), exact=True)]
        if case == 2:
            out = []
            if realizable != "no":
                out.append(self._component(m, rule + ("submatroids-nilpotent-base",), False))
            out.append(
                self._component(
                    uniform_matroid(m.n - 1, m.d), rule + ("corank-uniform",), True
                )
            )
            return out
        if depth >= self.max_depth:
            self.complete = False
            return [self._component(m, rule + ("depth-stop",), exact=False)]
        out = []
        if realizable != "no":
            out.append(self._component(m, rule + ("recursed",), exact=False))
        report = min_above(m, threads=self.threads)
        self.stats.merge(report.stats)
        if not report.complete:
            self.complete = False
        for nxt in report.maximal:
            if _key(nxt) in self.hints.covered:
                continue
            out.extend(
                self.decompose(nxt, depth + 1, rule + ("degeneration:" + _key(m)[:8],))
            )
        return out


def redundancy_prune(components, annotate=True):
    """Collapse duplicates, drop components strictly below an exact one, and
    (optionally) annotate surviving dominated components.

    Only weak-order dominance by an exact component justifies removal; every
    other surviving dominance is reported, not decided.
    """
    by_matroid = {}
    order = []
    for c in components:
        prev = by_matroid.get(c.matroid)
        if prev is None:
            by_matroid[c.matroid] = c
            order.append(c.matroid)
        else:
            merged = replace(
                prev,
                exact=prev.exact or c.exact,
                realizable=prev.realizable if prev.realizable != "unknown" else c.realizable,
                status=prev.status if prev.status == "irreducible-proven" else c.status,
            )
            by_matroid[c.matroid] = merged
    uniq = [by_matroid[k] for k in order]
    exact_ms = [c.matroid for c in uniq if c.exact]
    kept = []
    for c in uniq:
        dominated = any(
            e != c.matroid and compare(c.matroid, e) for e in exact_ms
        )
        if not dominated:
            kept.append(c)
    if not annotate:
        return kept
    out = []
    for c in kept:
        doms = tuple(
            other.id
            for other in kept
            if other.matroid != c.matroid and compare(c.matroid, other.matroid)
        )
        out.append(replace(c, possible_redundancy=doms))
    return out


def decompose(m, hints=None, max_depth=8, budget=None, threads=1):
    """Decompose the circuit variety of a matroid into candidate components.

    Returns components sorted canonically; ``complete`` is False when the
    depth or node budget stopped a branch early.
    """
    if hints is None:
        hints = default_hints()
    driver = _Driver(hints, max_depth, budget, threads)
    comps = driver.decompose(m, 0, ("input",))
    comps = redundancy_prune(comps, annotate=True)
    comps.sort(key=lambda c: c.matroid.sort_key())
    return DecompositionResult(tuple(comps), driver.complete, driver.stats)
