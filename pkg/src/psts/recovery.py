"""Recovering the triangle-perspective furniture from a bare configuration.

For a binomial partial Steiner triple system that freely contains exactly
n - 2 complete graphs K_n, those graphs, their pairwise intersections (the
perspective centers), the base line, and the three non-collinearity classes
are invariants of the structure, so automorphisms must preserve them.  This
module computes them and the derived census data: the base-line diagram with
its polygon decomposition and the counts of the three 10_3 subconfigurations
through the base line.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .constructions import ID, RHO, SIGMA_C, XiMatrix, stp
from .core import (
    Configuration,
    collinear,
    find_free_complete_graphs,
    induced_substructure,
    validate_psts,
)
from .isomorphism import canonical_form

__all__ = [
    "LDiagram",
    "SkeletonError",
    "StpSkeleton",
    "SubconfigCensus",
    "WrongKCount",
    "des_census",
    "l_diagram",
    "recover_skeleton",
    "reference_10_3",
]


class SkeletonError(ValueError):
    """The configuration does not carry the expected recovered structure."""


class WrongKCount(SkeletonError):
    """The free complete-graph count differs from n - 2, so the skeleton is
    not determined this way (the multiveblen cases have 4 or 6)."""

    def __init__(self, found: int, expected: int):
        self.found = found
        self.expected = expected
        super().__init__(f"found {found} free complete graphs, expected {expected}")


@dataclass(frozen=True)
class StpSkeleton:
    """The recovered invariant families, all as point-index sets.

    k_family are the free K_n vertex sets; q_points their pairwise
    intersections (the perspective centers); base_line the three points
    outside every member of k_family; d_classes maps each base-line point to
    the off-center points not collinear with it.  Class tags are the
    base-line points themselves; any correspondence with the letters a, b, c
    exists only relative to a constructing matrix.
    """

    k_family: tuple[frozenset, ...]
    q_points: frozenset
    base_line: frozenset
    d_classes: tuple[tuple[int, frozenset], ...]

    @property
    def triangles(self) -> tuple[frozenset, ...]:
        return tuple(k - self.q_points for k in self.k_family)

    def center(self, i: int, j: int) -> int:
        (point,) = self.k_family[i] & self.k_family[j]
        return point


@dataclass(frozen=True)
class LDiagram:
    """The collinearity diagram of the base line: one row per d-class, one
    column per triangle, edges between collinear points of distinct
    triangles, and the decomposition of that graph into cycles (defined when
    every vertex has degree 2, i.e. for three triangles)."""

    grid: tuple[tuple[int, ...], ...]
    edges: frozenset
    cycles: tuple[tuple[int, ...], ...]

    def cycle_lengths(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles))

    def polygon_counts(self) -> tuple[int, int, int]:
        lengths = [len(c) for c in self.cycles]
        return lengths.count(3), lengths.count(6), lengths.count(9)


@dataclass(frozen=True)
class SubconfigCensus:
    """Counts of the two-triangle 10_3 subconfigurations through the base
    line, by type, plus the polygon profile of the base-line diagram."""

    des: int
    des_prime: int
    des_dblprime: int
    triangles: int
    hexagons: int
    ninegons: int

    def subconfig_counts(self) -> tuple[int, int, int]:
        return (self.des, self.des_prime, self.des_dblprime)

    def polygon_counts(self) -> tuple[int, int, int]:
        return (self.triangles, self.hexagons, self.ninegons)


def recover_skeleton(cfg: Configuration) -> StpSkeleton:
    """Compute the invariant families, cross-checking the defining formulas
    against each other.  Raises WrongKCount when the free complete-graph
    count is not n - 2."""
    params = validate_psts(cfg)
    if not params.binomial or params.r is None:
        raise SkeletonError("not a binomial configuration")
    n = params.r + 1
    graphs = find_free_complete_graphs(cfg, n)
    if len(graphs) != n - 2:
        raise WrongKCount(len(graphs), n - 2)

    k_family = tuple(frozenset(g.vertices) for g in graphs)
    q_points = set()
    for ka, kb in combinations(k_family, 2):
        meet = ka & kb
        if len(meet) != 1:
            raise SkeletonError(f"two free graphs meet in {len(meet)} points, not one")
        q_points |= meet
    if len(q_points) != comb(n - 2, 2):
        raise SkeletonError("wrong number of perspective centers")

    covered = frozenset().union(*k_family)
    base_line = frozenset(range(len(cfg.points))) - covered
    if len(base_line) != 3:
        raise SkeletonError(f"base line has {len(base_line)} points")

    d_classes = []
    for ell in sorted(base_line):
        cls = frozenset(
            p
            for p in range(len(cfg.points))
            if p not in q_points and not collinear(cfg, p, ell)
        )
        d_classes.append((ell, cls))

    triangles = [k - frozenset(q_points) for k in k_family]
    seen = set()
    for _, cls in d_classes:
        if len(cls) != n - 2 or cls & seen:
            raise SkeletonError("non-collinearity classes do not partition the triangles")
        seen |= cls
        for tri in triangles:
            if len(cls & tri) != 1:
                raise SkeletonError("a class misses a triangle")
    if seen != covered - q_points:
        raise SkeletonError("classes do not cover exactly the triangle points")

    return StpSkeleton(
        k_family=k_family,
        q_points=frozenset(q_points),
        base_line=base_line,
        d_classes=tuple(d_classes),
    )


def l_diagram(cfg: Configuration, skeleton: StpSkeleton) -> LDiagram:
    """Rows indexed by the d-classes, columns by the triangles; edges are the
    cross-triangle collinear pairs.  Cycles are extracted by walking when
    every vertex has one edge into each other column."""
    triangles = skeleton.triangles
    grid = []
    for _, cls in skeleton.d_classes:
        row = []
        for tri in triangles:
            (point,) = cls & tri
            row.append(point)
        grid.append(tuple(row))

    column = {}
    for col, tri in enumerate(triangles):
        for p in tri:
            column[p] = col
    vertices = sorted(column)
    edges = set()
    for u, v in combinations(vertices, 2):
        if column[u] != column[v] and collinear(cfg, u, v):
            edges.add((u, v))

    neighbor: dict[int, list[int]] = {p: [] for p in vertices}
    for u, v in edges:
        neighbor[u].append(v)
        neighbor[v].append(u)

    cycles = []
    if all(len(neighbor[p]) == 2 for p in vertices):
        todo = set(vertices)
        while todo:
            start = min(todo)
            walk = [start]
            todo.remove(start)
            prev, here = None, start
            while True:
                a, b = neighbor[here]
                nxt = b if a == prev else a if b == prev else min(a, b)
                if nxt == start:
                    break
                walk.append(nxt)
                todo.remove(nxt)
                prev, here = here, nxt
            cycles.append(tuple(walk))
        cycles.sort(key=lambda c: (len(c), c))

    return LDiagram(
        grid=tuple(grid),
        edges=frozenset(edges),
        cycles=tuple(cycles),
    )


@lru_cache(maxsize=1)
def reference_10_3():
    """The three two-triangle 10_3 configurations, keyed by canonical form."""
    refs = {}
    for perm, kind in ((ID, "DES"), (SIGMA_C, "DES'"), (RHO, "DES''")):
        cfg = stp(XiMatrix((1, 2), (((1, 2), perm),)))
        refs[canonical_form(cfg).canonical_lines] = kind
    return refs


def _classify_10_3(sub: Configuration) -> str | None:
    params = validate_psts(sub)
    if params.v != 10 or params.b != 10 or params.r != 3:
        return None
    return reference_10_3().get(canonical_form(sub).canonical_lines)


def des_census(cfg: Configuration, skeleton: StpSkeleton, slow: bool = False) -> SubconfigCensus:
    """Count the 10_3 subconfigurations through the base line by type.

    The fast route takes, for each pair of free graphs, the substructure on
    their two triangles, their common center, and the base line, and
    classifies it against the three references by canonical form.  The slow
    oracle instead scans every 10-point substructure containing the base
    line, checks that the classified ones are exactly the two-triangle
    spans, and must agree with the fast route.
    """
    base = sorted(skeleton.base_line)
    triangles = skeleton.triangles
    counts = {"DES": 0, "DES'": 0, "DES''": 0}

    spans = {}
    for i, j in combinations(range(len(triangles)), 2):
        pts = frozenset(base) | triangles[i] | triangles[j] | {skeleton.center(i, j)}
        spans[pts] = (i, j)

    if slow:
        others = [p for p in range(len(cfg.points)) if p not in skeleton.base_line]
        for extra in combinations(others, 7):
            pts = frozenset(base) | frozenset(extra)
            sub = induced_substructure(cfg, pts)
            if len(sub.lines) != 10:
                continue
            kind = _classify_10_3(sub)
            if kind is None:
                continue
            if pts not in spans:
                raise SkeletonError(
                    "a 10_3 substructure through the base line is not a two-triangle span"
                )
            counts[kind] += 1
    else:
        for pts in spans:
            sub = induced_substructure(cfg, pts)
            kind = _classify_10_3(sub)
            if kind is None:
                raise SkeletonError("a two-triangle span is not a 10_3 configuration")
            counts[kind] += 1

    npairs = comb(len(triangles), 2)
    if sum(counts.values()) != npairs:
        raise SkeletonError(f"census total {sum(counts.values())} != {npairs}")

    if len(triangles) == 3:
        tri, hexa, nine = l_diagram(cfg, skeleton).polygon_counts()
    else:
        tri = hexa = nine = 0
    return SubconfigCensus(
        des=counts["DES"],
        des_prime=counts["DES'"],
        des_dblprime=counts["DES''"],
        triangles=tri,
        hexagons=hexa,
        ninegons=nine,
    )
