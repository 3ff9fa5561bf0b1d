"""Canonical forms, isomorphism tests, and automorphism groups for
partial Steiner triple systems.

The canonical form is computed on the point-line incidence structure by
iterated color refinement plus backtracking over the cells of the ordered
partition, taking the lexicographically least line-set encoding over all
discrete refinements.  The automorphism group is found first by a direct
backtracking search for line-preserving point bijections; its orbits then
prune the canonical search exactly, since automorphic branches repeat the
same encodings.  At the 15-point scale of this repository the full
automorphism list (order at most 720 here) is cheap to hold.

All functions are pure; backtracking state is local to each call.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import lcm

from .constructions import TRIANGLE, TrianglePerm, XiMatrix, pair_label, xi_conjugate
from .core import Configuration, find_free_complete_graphs, is_isomorphism, validate_psts

__all__ = [
    "CanonicalForm",
    "PermGroup",
    "are_isomorphic",
    "automorphism_group",
    "automorphisms",
    "beta_times_alpha",
    "canonical_form",
    "identify_group",
    "isomorphism_certificate",
]


@dataclass(frozen=True)
class CanonicalForm:
    """A relabeling-invariant fingerprint: the line set under the canonical
    relabeling, together with the certifying point permutation
    (old index -> canonical index)."""

    canonical_lines: tuple[tuple[int, int, int], ...]
    relabeling: tuple[int, ...]

    def __post_init__(self):
        applied = tuple(
            sorted(tuple(sorted(line)) for line in self.canonical_lines)
        )
        if applied != self.canonical_lines:
            raise ValueError("canonical lines are not normalized")


@dataclass(frozen=True)
class PermGroup:
    """A point-permutation group given by generators, with its exact order
    and a symbolic structure name."""

    degree: int
    generators: tuple[tuple[int, ...], ...]
    order: int
    structure_id: str


def _incidence(cfg: Configuration):
    v = len(cfg.points)
    point_lines = [[] for _ in range(v)]
    for li, line in enumerate(cfg.lines):
        for p in line:
            point_lines[p].append(li)
    adj = [0] * v
    for line in cfg.lines:
        for p, q in combinations(line, 2):
            adj[p] |= 1 << q
            adj[q] |= 1 << p
    return point_lines, adj


def _seed_colors(cfg: Configuration) -> list[int]:
    """Initial point colors: how many free complete graphs of the maximal
    plausible size contain each point.  For a binomial configuration of rank
    r that size is r + 1; the count separates base-line, triangle, and
    center points cheaply and is invariant under relabeling."""
    v = len(cfg.points)
    params = validate_psts(cfg)
    counts = [0] * v
    if params.binomial and params.r is not None and params.r >= 2:
        for graph in find_free_complete_graphs(cfg, params.r + 1):
            for p in graph.vertices:
                counts[p] += 1
    palette = {value: rank for rank, value in enumerate(sorted(set(counts)))}
    return [palette[value] for value in counts]


def _refine(colors: list[int], point_lines, lines) -> list[int]:
    """Equitable refinement against the line structure.  Cells only split,
    and new cells are ordered by (old cell, signature), so the ordered
    partition is isomorphism-invariant."""
    ncolors = len(set(colors))
    while True:
        lsig = [tuple(sorted(colors[p] for p in line)) for line in lines]
        lpalette = {sig: rank for rank, sig in enumerate(sorted(set(lsig)))}
        psig = [
            (colors[p], tuple(sorted(lpalette[lsig[li]] for li in point_lines[p])))
            for p in range(len(colors))
        ]
        palette = {sig: rank for rank, sig in enumerate(sorted(set(psig)))}
        colors = [palette[sig] for sig in psig]
        if len(palette) == ncolors:
            return colors
        ncolors = len(palette)


def _individualize(colors: list[int], p: int) -> list[int]:
    bumped = [(c, 0 if q == p else 1) for q, c in enumerate(colors)]
    palette = {sig: rank for rank, sig in enumerate(sorted(set(bumped)))}
    return [palette[sig] for sig in bumped]


def automorphisms(cfg: Configuration) -> tuple[tuple[int, ...], ...]:
    """Every point permutation mapping lines onto lines, found by
    backtracking over point images with refinement-color and adjacency
    pruning.  The identity is always included."""
    return _automorphisms_cached(cfg)


@lru_cache(maxsize=512)
def _automorphisms_cached(cfg: Configuration) -> tuple[tuple[int, ...], ...]:
    v = len(cfg.points)
    if v == 0:
        return ((),)
    point_lines, adj = _incidence(cfg)
    colors = _refine(_seed_colors(cfg), point_lines, cfg.lines)
    line_set = set(cfg.lines)
    neighbors = [[q for q in range(v) if adj[p] >> q & 1] for p in range(v)]
    by_color: dict[int, list[int]] = {}
    for p, c in enumerate(colors):
        by_color.setdefault(c, []).append(p)

    # Assignment order: most already-placed neighbors first, then the
    # smallest color cell, then index.  Greedy, computed once.
    order: list[int] = []
    placed = set()
    remaining = set(range(v))
    while remaining:
        best = min(
            remaining,
            key=lambda p: (
                -sum(1 for q in neighbors[p] if q in placed),
                len(by_color[colors[p]]),
                p,
            ),
        )
        order.append(best)
        placed.add(best)
        remaining.remove(best)

    # Per position: earlier-placed neighbors, and lines of the point whose
    # other two points are placed earlier.  These depend only on the order.
    rank = {p: k for k, p in enumerate(order)}
    placed_neighbors = [
        [q for q in neighbors[p] if rank[q] < rank[p]] for p in order
    ]
    completed_lines = [
        [
            tuple(o for o in cfg.lines[li] if o != p)
            for li in point_lines[p]
            if all(rank[o] < rank[p] for o in cfg.lines[li] if o != p)
        ]
        for p in order
    ]

    images = [-1] * v
    found: list[tuple[int, ...]] = []

    def place(k: int, used_mask: int):
        if k == v:
            found.append(tuple(images))
            return
        p = order[k]
        required = 0
        for q in placed_neighbors[k]:
            required |= 1 << images[q]
        pending = [(images[o1], images[o2]) for o1, o2 in completed_lines[k]]
        for cand in by_color[colors[p]]:
            if used_mask >> cand & 1:
                continue
            if adj[cand] & used_mask != required:
                continue
            ok = True
            for o1, o2 in pending:
                if tuple(sorted((cand, o1, o2))) not in line_set:
                    ok = False
                    break
            if not ok:
                continue
            images[p] = cand
            place(k + 1, used_mask | 1 << cand)
            images[p] = -1

    place(0, 0)
    return tuple(sorted(found))


def canonical_form(cfg: Configuration) -> CanonicalForm:
    """The lexicographically least line-set encoding over all discrete
    refinements, with the certifying relabeling.  Branching always picks the
    smallest non-singleton cell and tries candidates in ascending index
    order; branches automorphic to an explored one are skipped, which cannot
    change the minimum."""
    v = len(cfg.points)
    if v == 0:
        return CanonicalForm((), ())
    point_lines, _adj = _incidence(cfg)
    auts = automorphisms(cfg)
    base = _refine(_seed_colors(cfg), point_lines, cfg.lines)
    best: list = [None, None]

    def encode(colors):
        return tuple(
            sorted(tuple(sorted((colors[a], colors[b], colors[c]))) for a, b, c in cfg.lines)
        )

    def target_cell(colors):
        sizes: dict[int, int] = {}
        for c in colors:
            sizes[c] = sizes.get(c, 0) + 1
        pick = min((size, c) for c, size in sizes.items() if size > 1)[1]
        return [p for p, c in enumerate(colors) if c == pick]

    def search(colors, stab):
        if len(set(colors)) == v:
            enc = encode(colors)
            if best[0] is None or enc < best[0]:
                best[0], best[1] = enc, tuple(colors)
            return
        cell = target_cell(colors)
        skipped = set()
        for p in cell:
            if p in skipped:
                continue
            for g in stab:
                skipped.add(g[p])
            search(
                _refine(_individualize(colors, p), point_lines, cfg.lines),
                [g for g in stab if g[p] == p],
            )

    search(base, list(auts))
    form = CanonicalForm(best[0], best[1])
    assert (
        tuple(sorted(tuple(sorted(form.relabeling[p] for p in line)) for line in cfg.lines))
        == form.canonical_lines
    )
    return form


def are_isomorphic(a: Configuration, b: Configuration):
    """Canonical-form comparison.  Returns (flag, certificate); when the
    configurations are isomorphic the certificate is a label map from a onto
    b, re-verified line by line before returning."""
    if len(a.points) != len(b.points) or len(a.lines) != len(b.lines):
        return False, None
    fa, fb = canonical_form(a), canonical_form(b)
    if fa.canonical_lines != fb.canonical_lines:
        return False, None
    return True, isomorphism_certificate(a, b, fa, fb)


def isomorphism_certificate(
    a: Configuration, b: Configuration, fa: CanonicalForm, fb: CanonicalForm
) -> dict[str, str]:
    b_from_canon = {canon: p for p, canon in enumerate(fb.relabeling)}
    mapping = {
        a.points[p]: b.points[b_from_canon[fa.relabeling[p]]] for p in range(len(a.points))
    }
    if not is_isomorphism(a, b, mapping):
        raise AssertionError("canonical relabelings disagree with the line sets")
    return mapping


# -- groups -------------------------------------------------------------------


def _compose(g, h):
    return tuple(g[x] for x in h)


def _closure(generators, degree) -> set:
    identity = tuple(range(degree))
    elements = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in generators:
            for h in frontier:
                c = _compose(g, h)
                if c not in elements:
                    elements.add(c)
                    nxt.append(c)
        frontier = nxt
    return elements


def _reduce_generators(elements, degree):
    gens: list = []
    known = {tuple(range(degree))}
    for g in sorted(elements):
        if g not in known:
            gens.append(g)
            known = _closure(gens, degree)
            if len(known) == len(elements):
                break
    return tuple(gens)


def _element_order(g) -> int:
    seen = [False] * len(g)
    order = 1
    for start in range(len(g)):
        if seen[start]:
            continue
        length, x = 0, start
        while not seen[x]:
            seen[x] = True
            x = g[x]
            length += 1
        order = lcm(order, length)
    return order


def automorphism_group(cfg: Configuration) -> PermGroup:
    """The full automorphism group, with the order verified by closure of
    the reduced generating set."""
    elements = automorphisms(cfg)
    degree = len(cfg.points)
    generators = _reduce_generators(elements, degree)
    if len(elements) <= 10000:
        assert len(_closure(generators, degree)) == len(elements)
    group = PermGroup(
        degree=degree,
        generators=generators,
        order=len(elements),
        structure_id="",
    )
    return PermGroup(degree, generators, len(elements), identify_group(group))


def identify_group(group: PermGroup) -> str:
    """Name the small group structures that occur in this repository, by
    order, commutativity, element orders, and center size; anything else is
    labeled by its order only."""
    if group.order > 10000:
        raise ValueError("identification is limited to order <= 10000")
    elements = _closure(group.generators, group.degree)
    assert len(elements) == group.order
    if group.order == 1:
        return "1"
    if group.order == 2:
        return "C2"
    if group.order == 3:
        return "C3"
    abelian = all(
        _compose(g, h) == _compose(h, g) for g, h in combinations(group.generators, 2)
    )
    if group.order == 6:
        return "C6 (= C2⊕C3)" if abelian else "S3"
    if group.order == 18:
        orders = {_element_order(g) for g in elements}
        center = [
            g for g in elements if all(_compose(g, h) == _compose(h, g) for h in elements)
        ]
        if orders <= {1, 2, 3} and len(center) == 1:
            return "C2⋉(C3⊕C3)"
    return f"order-{group.order} unidentified"


# -- the beta x alpha maps -----------------------------------------------------


def beta_times_alpha(beta: TrianglePerm, alpha: dict, xi: XiMatrix):
    """The point map sending x_i to beta(x)_alpha(i), q^x to q^beta(x), and
    q^{i,j} to q^{alpha(i),alpha(j)}, together with the transformed matrix
    zeta(i,j) = beta o xi(alpha^-1 i, alpha^-1 j) o beta^-1.  For simple
    center structures (whose image under any index permutation is
    themselves) the map is an isomorphism of the source STP onto the STP
    of zeta."""
    index_set = xi.index_set
    if sorted(map(str, alpha)) != sorted(map(str, index_set)):
        raise ValueError("alpha must permute the index set")
    pos = {i: k for k, i in enumerate(index_set)}

    def center(i, j):
        return pair_label(i, j) if pos[i] < pos[j] else pair_label(j, i)

    mapping = {}
    for x in TRIANGLE:
        mapping[f"q^{x}"] = f"q^{beta(x)}"
        for i in index_set:
            mapping[f"{x}_{i}"] = f"{beta(x)}_{alpha[i]}"
    for i, j in combinations(index_set, 2):
        mapping[f"q^{pair_label(i, j)}"] = f"q^{center(alpha[i], alpha[j])}"
    return mapping, xi_conjugate(xi, beta, alpha)
