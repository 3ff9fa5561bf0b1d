"""Partial Steiner triple systems: validation, collinearity, free complete
subgraphs, and a plain-text interchange format.

A configuration is a finite incidence structure whose lines are 3-element
point sets such that two distinct points share at most one common line.
Points are handled by index; string labels exist for construction and I/O.
Everything here is an immutable value and every operation is a pure
function, so concurrent use needs no synchronization.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

__all__ = [
    "Configuration",
    "ConfigParams",
    "ConfigurationError",
    "DuplicateIncidence",
    "FreeGraph",
    "collinear",
    "find_free_complete_graphs",
    "induced_substructure",
    "is_isomorphism",
    "parse_cfg",
    "permuted",
    "relabeled",
    "validate_psts",
    "verify_free_graph",
    "write_cfg",
]


class ConfigurationError(ValueError):
    """Structurally malformed configuration data."""


class DuplicateIncidence(ConfigurationError):
    """Two points lie on two distinct common lines (the axiom violation)."""

    def __init__(self, point_pair, line_pair):
        self.point_pair = tuple(point_pair)
        self.line_pair = tuple(line_pair)
        super().__init__(
            f"points {self.point_pair} lie on both lines "
            f"{self.line_pair[0]} and {self.line_pair[1]}"
        )


@dataclass(frozen=True)
class Configuration:
    """Labeled points plus 3-point lines given as index triples.

    Lines are normalized to sorted triples, deduplicated, and kept sorted so
    that iteration order is reproducible.  The no-two-lines-through-two-points
    axiom is *not* enforced here; that is what ``validate_psts`` checks.
    """

    points: tuple[str, ...]
    lines: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        points = tuple(self.points)
        if len(set(points)) != len(points):
            raise ConfigurationError("point labels must be unique")
        for label in points:
            if not isinstance(label, str) or not label or label.split() != [label]:
                raise ConfigurationError(f"bad point label {label!r}")
        norm = set()
        for line in self.lines:
            triple = tuple(sorted(line))
            if len(triple) != 3 or len(set(triple)) != 3:
                raise ConfigurationError(f"line {line} is not a 3-set")
            if not all(0 <= p < len(points) for p in triple):
                raise ConfigurationError(f"line {line} has an out-of-range point")
            norm.add(triple)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "lines", tuple(sorted(norm)))

    @classmethod
    def from_label_lines(cls, label_lines, points=None) -> "Configuration":
        """Build from an iterable of label triples.

        When ``points`` is omitted the point order is first occurrence,
        scanning the given triples left to right.
        """
        label_lines = [tuple(block) for block in label_lines]
        if points is None:
            seen: dict[str, int] = {}
            for block in label_lines:
                for label in block:
                    seen.setdefault(label, len(seen))
            points = tuple(seen)
        index = {label: i for i, label in enumerate(points)}
        try:
            lines = [tuple(index[label] for label in block) for block in label_lines]
        except KeyError as exc:
            raise ConfigurationError(f"line uses unknown point {exc.args[0]!r}") from exc
        return cls(tuple(points), tuple(lines))

    def label_line(self, line) -> tuple[str, ...]:
        return tuple(self.points[p] for p in line)

    def label_lines(self) -> tuple[tuple[str, ...], ...]:
        return tuple(self.label_line(line) for line in self.lines)

    def index_of(self, label: str) -> int:
        return self.points.index(label)


@dataclass(frozen=True)
class ConfigParams:
    """Counted parameters of a configuration.

    ``r`` is the common point rank, or None when ranks are not uniform
    (non-uniform rank is data, not an error).  ``binomial`` holds exactly
    when v = C(r+2, 2) and b = C(r+2, 3) for the uniform rank r.
    """

    v: int
    b: int
    r: int | None
    k: int = 3
    binomial: bool = False

    @property
    def uniform(self) -> bool:
        return self.r is not None


@dataclass(frozen=True)
class FreeGraph:
    """A freely contained complete graph: vertices plus, for every vertex
    pair, the index of its unique covering line (the certificate)."""

    vertices: tuple[int, ...]
    edge_lines: tuple[tuple[tuple[int, int], int], ...]

    def line_of(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        for edge, li in self.edge_lines:
            if edge == key:
                return li
        raise KeyError((u, v))

    def edge_line_map(self) -> dict[tuple[int, int], int]:
        return dict(self.edge_lines)


def _pair_to_line(cfg: Configuration) -> dict[tuple[int, int], int]:
    """Map each collinear point pair to its covering line, or raise
    DuplicateIncidence when some pair lies on two lines."""
    cover: dict[tuple[int, int], int] = {}
    for li, line in enumerate(cfg.lines):
        for pair in combinations(line, 2):
            other = cover.get(pair)
            if other is not None:
                raise DuplicateIncidence(
                    cfg.label_line(pair),
                    (cfg.label_line(cfg.lines[other]), cfg.label_line(line)),
                )
            cover[pair] = li
    return cover


def point_ranks(cfg: Configuration) -> list[int]:
    ranks = [0] * len(cfg.points)
    for line in cfg.lines:
        for p in line:
            ranks[p] += 1
    return ranks


def validate_psts(cfg: Configuration) -> ConfigParams:
    """Check the partial-Steiner axiom and count parameters.

    Raises DuplicateIncidence when two points share two lines.  A
    non-uniform point rank is reported in the returned parameters, not
    treated as an error.
    """
    _pair_to_line(cfg)
    v, b = len(cfg.points), len(cfg.lines)
    ranks = set(point_ranks(cfg))
    r = ranks.pop() if len(ranks) == 1 and v else None
    binomial = r is not None and v == comb(r + 2, 2) and b == comb(r + 2, 3)
    return ConfigParams(v=v, b=b, r=r, binomial=binomial)


def collinear(cfg: Configuration, p: int, q: int) -> bool:
    """True when some line contains both points.  By convention
    collinear(cfg, p, p) is True, so vertex checks need no special casing."""
    if not (0 <= p < len(cfg.points) and 0 <= q < len(cfg.points)):
        raise IndexError((p, q))
    if p == q:
        return True
    return any(p in line and q in line for line in cfg.lines)


def _is_free(verts, pair_line, line_points) -> list[tuple[tuple[int, int], int]] | None:
    """Certificate for the free-containment condition, or None.

    Every vertex pair must be covered (uniqueness is the PSTS axiom), and
    covering lines of disjoint edges must themselves be disjoint.
    """
    edges = []
    for e in combinations(verts, 2):
        li = pair_line.get(e)
        if li is None:
            return None
        edges.append((e, li))
    for (e1, l1), (e2, l2) in combinations(edges, 2):
        if e1[0] in e2 or e1[1] in e2:
            continue
        if line_points[l1] & line_points[l2]:
            return None
    return edges


def find_free_complete_graphs(cfg: Configuration, n: int) -> list[FreeGraph]:
    """All n-vertex complete graphs freely contained in cfg, in lexicographic
    order of their sorted vertex sets.  Each result carries its edge-to-line
    certificate."""
    if n < 3:
        raise ValueError("complete-graph size must be at least 3")
    pair_line = _pair_to_line(cfg)
    v = len(cfg.points)
    adj = [set() for _ in range(v)]
    for p, q in pair_line:
        adj[p].add(q)
        adj[q].add(p)
    line_points = [frozenset(line) for line in cfg.lines]
    found: list[FreeGraph] = []

    def extend(clique: list[int], cands: list[int]):
        if len(clique) == n:
            cert = _is_free(tuple(clique), pair_line, line_points)
            if cert is not None:
                found.append(FreeGraph(tuple(clique), tuple(cert)))
            return
        need = n - len(clique)
        for idx, p in enumerate(cands):
            if len(cands) - idx < need:
                break
            extend(clique + [p], [q for q in cands[idx + 1:] if q in adj[p]])

    extend([], list(range(v)))
    return found


def verify_free_graph(cfg: Configuration, graph: FreeGraph) -> bool:
    """Re-check both free-containment clauses directly against cfg, so the
    certificate is self-validating."""
    try:
        pair_line = _pair_to_line(cfg)
    except DuplicateIncidence:
        return False
    line_points = [frozenset(line) for line in cfg.lines]
    cert = _is_free(tuple(sorted(graph.vertices)), pair_line, line_points)
    return cert is not None and dict(cert) == graph.edge_line_map()


def induced_substructure(cfg: Configuration, points) -> Configuration:
    """The substructure on a point subset: all lines fully inside it,
    labels preserved."""
    keep = sorted(set(points))
    keepset = set(keep)
    reindex = {p: i for i, p in enumerate(keep)}
    lines = [
        tuple(reindex[p] for p in line)
        for line in cfg.lines
        if keepset.issuperset(line)
    ]
    return Configuration(tuple(cfg.points[p] for p in keep), tuple(lines))


def permuted(cfg: Configuration, image) -> Configuration:
    """Relabel points by the index permutation image (old index -> new)."""
    image = tuple(image)
    if sorted(image) != list(range(len(cfg.points))):
        raise ValueError("not a permutation of the point indices")
    points = [""] * len(cfg.points)
    for old, new in enumerate(image):
        points[new] = cfg.points[old]
    lines = [tuple(image[p] for p in line) for line in cfg.lines]
    return Configuration(tuple(points), tuple(lines))


def relabeled(cfg: Configuration, mapping: dict[str, str]) -> Configuration:
    """Rename point labels through mapping, keeping the incidence intact."""
    points = tuple(mapping[label] for label in cfg.points)
    return Configuration(points, cfg.lines)


def is_isomorphism(a: Configuration, b: Configuration, mapping: dict[str, str]) -> bool:
    """Check that a label bijection maps the lines of a onto the lines of b."""
    if sorted(mapping) != sorted(a.points):
        return False
    if sorted(mapping.values()) != sorted(b.points):
        return False
    image = {frozenset(mapping[x] for x in block) for block in a.label_lines()}
    target = {frozenset(block) for block in b.label_lines()}
    return image == target


# -- text format -------------------------------------------------------------
#
# One line per block: three whitespace-separated point labels.  Lines starting
# with '#' are comments.  The point set is the union of the blocks, ordered by
# first occurrence.  The writer sorts labels within each block and the blocks
# themselves, so the output depends only on the labeled line set and writing
# is idempotent across a parse/write round trip.


def parse_cfg(text: str) -> Configuration:
    blocks = []
    for raw in text.splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        labels = stripped.split()
        if len(labels) != 3:
            raise ConfigurationError(f"expected 3 labels per block, got {stripped!r}")
        blocks.append(tuple(labels))
    return Configuration.from_label_lines(blocks)


def write_cfg(cfg: Configuration, header: str | None = None) -> str:
    out = []
    if header:
        out.extend(f"# {line}".rstrip() for line in header.splitlines())
    out.extend(" ".join(sorted(block)) for block in sorted(map(sorted, cfg.label_lines())))
    return "\n".join(out) + "\n"
