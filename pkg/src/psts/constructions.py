"""Constructions of the named configurations: combinatorial Grassmannians and
Veronesians, multiveblen gluings of Veblen configurations, and systems of
triangle perspectives (STPs), plus the conversions between the latter two.

An STP over an index set I glues |I| Veblen configurations along a common
base line L = {q^a, q^b, q^c}.  The gluing data is a skew-consistent matrix
of triangle permutations xi(i, j) in S_{a,b,c}; each pair {i, j} contributes
a perspective center q^{i,j} and three perspective rays.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement

from .core import (
    Configuration,
    is_isomorphism,
    validate_psts,
)

__all__ = [
    "ALL_TRIANGLE_PERMS",
    "GraphOnSet",
    "ID",
    "MvcToStpResult",
    "NoFixedSymbol",
    "RHO",
    "RHO_INV",
    "SIGMA",
    "SIGMA_A",
    "SIGMA_B",
    "SIGMA_C",
    "StpToMvcResult",
    "TRIANGLE",
    "TrianglePerm",
    "XiMatrix",
    "grassmannian",
    "mu_toggle",
    "multiveblen",
    "mvc_to_stp",
    "pair_label",
    "remark_212_mvc",
    "simple_center_structure",
    "stp",
    "stp_pair",
    "stp_pair_type",
    "stp_to_mvc",
    "stp_triple",
    "veronesian",
    "xi_conjugate",
]

TRIANGLE = ("a", "b", "c")


@dataclass(frozen=True)
class TrianglePerm:
    """One of the six permutations of the symbols a, b, c.

    The rotation rho is fixed globally as a -> b -> c -> a; sigma_x is the
    transposition fixing x.
    """

    images: tuple[str, str, str]

    def __post_init__(self):
        if sorted(self.images) != list(TRIANGLE):
            raise ValueError(f"not a permutation of {TRIANGLE}: {self.images}")

    def __call__(self, symbol: str) -> str:
        return self.images[TRIANGLE.index(symbol)]

    def inverse(self) -> "TrianglePerm":
        inv = ["", "", ""]
        for src, dst in zip(TRIANGLE, self.images):
            inv[TRIANGLE.index(dst)] = src
        return TrianglePerm(tuple(inv))

    def compose(self, other: "TrianglePerm") -> "TrianglePerm":
        """self after other: (self.compose(other))(x) = self(other(x))."""
        return TrianglePerm(tuple(self(other(x)) for x in TRIANGLE))

    def fixes(self, symbol: str) -> bool:
        return self(symbol) == symbol

    @property
    def token(self) -> str:
        return _TOKEN_BY_IMAGES[self.images]

    @classmethod
    def from_token(cls, token: str) -> "TrianglePerm":
        try:
            return _PERM_BY_TOKEN[token.strip()]
        except KeyError:
            raise ValueError(
                f"unknown triangle permutation {token!r}; "
                f"expected one of {sorted(_PERM_BY_TOKEN)}"
            ) from None

    def __repr__(self):
        return f"TrianglePerm({self.token!r})"


ID = TrianglePerm(("a", "b", "c"))
RHO = TrianglePerm(("b", "c", "a"))
RHO_INV = TrianglePerm(("c", "a", "b"))
SIGMA_A = TrianglePerm(("a", "c", "b"))
SIGMA_B = TrianglePerm(("c", "b", "a"))
SIGMA_C = TrianglePerm(("b", "a", "c"))
SIGMA = {"a": SIGMA_A, "b": SIGMA_B, "c": SIGMA_C}
ALL_TRIANGLE_PERMS = (ID, RHO, RHO_INV, SIGMA_A, SIGMA_B, SIGMA_C)

_PERM_BY_TOKEN = {
    "id": ID,
    "rho": RHO,
    "rho-": RHO_INV,
    "sa": SIGMA_A,
    "sb": SIGMA_B,
    "sc": SIGMA_C,
}
_TOKEN_BY_IMAGES = {perm.images: token for token, perm in _PERM_BY_TOKEN.items()}


class NoFixedSymbol(ValueError):
    """No symbol of {a, b, c} is fixed by every entry of the matrix, so the
    system is not a simple multiveblen configuration."""


@dataclass(frozen=True)
class GraphOnSet:
    """A loopless undirected graph on an explicit vertex tuple."""

    vertices: tuple
    edges: frozenset

    def __post_init__(self):
        vertices = tuple(self.vertices)
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2 or not e.issubset(vertices):
                raise ValueError(f"bad edge {set(e)} on vertex set {vertices}")
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def complete(cls, vertices) -> "GraphOnSet":
        return cls(tuple(vertices), frozenset(map(frozenset, combinations(vertices, 2))))

    @classmethod
    def empty(cls, vertices) -> "GraphOnSet":
        return cls(tuple(vertices), frozenset())

    @classmethod
    def linear(cls, vertices) -> "GraphOnSet":
        """The path along the given vertex order."""
        vertices = tuple(vertices)
        return cls(vertices, frozenset(frozenset(e) for e in zip(vertices, vertices[1:])))

    def has_edge(self, u, v) -> bool:
        return frozenset((u, v)) in self.edges


def mu_toggle(graph: GraphOnSet, i0) -> GraphOnSet:
    """Complement the edges at one vertex, leaving all others unchanged.
    This is an involution and preserves the isomorphism class of the simple
    multiveblen configuration built on the graph."""
    if i0 not in graph.vertices:
        raise ValueError(f"{i0!r} is not a vertex")
    flipped = {frozenset((i0, j)) for j in graph.vertices if j != i0}
    return GraphOnSet(graph.vertices, graph.edges ^ flipped)


@dataclass(frozen=True)
class XiMatrix:
    """A skew-consistent map from ordered index pairs to triangle
    permutations: xi(i, i) = id and xi(j, i) = xi(i, j)^-1."""

    index_set: tuple
    upper: tuple  # ((i, j), TrianglePerm) for index_set-ordered pairs i < j

    def __post_init__(self):
        index_set = tuple(self.index_set)
        if len(set(index_set)) != len(index_set):
            raise ValueError("index set has repeats")
        pos = {i: k for k, i in enumerate(index_set)}
        entries = dict(self.upper)
        expected = set(combinations(index_set, 2))
        given = set(entries)
        if given != expected:
            raise ValueError(f"entries must cover exactly the pairs {sorted(map(str, expected))}")
        object.__setattr__(self, "index_set", index_set)
        object.__setattr__(
            self, "upper", tuple(sorted(entries.items(), key=lambda kv: (pos[kv[0][0]], pos[kv[0][1]])))
        )

    @classmethod
    def from_entries(cls, index_set, entries: dict) -> "XiMatrix":
        """Build from a pair -> permutation dict; both orientations may be
        given, but they must satisfy the skew condition."""
        index_set = tuple(index_set)
        pos = {i: k for k, i in enumerate(index_set)}
        upper: dict = {}
        for (i, j), perm in entries.items():
            if i == j:
                if perm != ID:
                    raise ValueError("diagonal entries must be the identity")
                continue
            key, value = ((i, j), perm) if pos[i] < pos[j] else ((j, i), perm.inverse())
            if key in upper and upper[key] != value:
                raise ValueError(f"skew condition violated at pair {key}")
            upper[key] = value
        return cls(index_set, tuple(upper.items()))

    @classmethod
    def from_triple(cls, p12: TrianglePerm, p23: TrianglePerm, p13: TrianglePerm) -> "XiMatrix":
        """The |I| = 3 case, entries in the order xi(1,2), xi(2,3), xi(1,3)."""
        return cls((1, 2, 3), (((1, 2), p12), ((2, 3), p23), ((1, 3), p13)))

    def __call__(self, i, j) -> TrianglePerm:
        if i == j:
            return ID
        for (u, v), perm in self.upper:
            if (u, v) == (i, j):
                return perm
            if (u, v) == (j, i):
                return perm.inverse()
        raise KeyError((i, j))

    def triple(self) -> tuple[TrianglePerm, TrianglePerm, TrianglePerm]:
        if len(self.index_set) != 3:
            raise ValueError("triple() requires a 3-element index set")
        i1, i2, i3 = self.index_set
        return (self(i1, i2), self(i2, i3), self(i1, i3))

    def tokens(self) -> tuple[str, ...]:
        return tuple(perm.token for _, perm in self.upper)

    def fixed_symbols(self) -> tuple[str, ...]:
        return tuple(
            x for x in TRIANGLE if all(perm.fixes(x) for _, perm in self.upper)
        )


def xi_conjugate(xi: XiMatrix, beta: TrianglePerm, alpha: dict) -> XiMatrix:
    """The matrix zeta(i, j) = beta o xi(alpha^-1(i), alpha^-1(j)) o beta^-1."""
    alpha_inv = {v: k for k, v in alpha.items()}
    beta_inv = beta.inverse()
    entries = {
        (i, j): beta.compose(xi(alpha_inv[i], alpha_inv[j])).compose(beta_inv)
        for i, j in combinations(xi.index_set, 2)
    }
    return XiMatrix.from_entries(xi.index_set, entries)


# -- label helpers ------------------------------------------------------------


def pair_label(u, v) -> str:
    return "{%s,%s}" % (u, v)


def _ordered_pairs(elements):
    return list(combinations(tuple(elements), 2))


def _pair_labels(elements) -> list[str]:
    return [pair_label(u, v) for u, v in _ordered_pairs(elements)]


# -- basic configurations ------------------------------------------------------


def grassmannian(n_or_elements, k: int = 2) -> Configuration:
    """The combinatorial Grassmannian: points are the k-subsets of an n-set,
    lines the k-subsets of each (k+1)-set.  Only k = 2 yields 3-point lines,
    so that is the only admitted value here."""
    if k != 2:
        raise ValueError("line size k+1 must be 3; only k = 2 is supported")
    if isinstance(n_or_elements, int):
        if n_or_elements < 3:
            raise ValueError("need at least 3 elements")
        elements = tuple(range(1, n_or_elements + 1))
    else:
        elements = tuple(n_or_elements)
    points = _pair_labels(elements)
    lines = [
        tuple(pair_label(u, v) for u, v in combinations(triple, 2))
        for triple in combinations(elements, 3)
    ]
    return Configuration.from_label_lines(lines, points=points)


def simple_center_structure(elements) -> Configuration:
    """The Grassmannian on the 2-subsets of `elements`, degenerating to a
    single point with no lines when only two elements are given.  This is
    the default center structure of a simple STP."""
    elements = tuple(elements)
    if len(elements) == 2:
        return Configuration((pair_label(*elements),), ())
    return grassmannian(elements)


def _monomial_label(exponents, variables) -> str:
    parts = []
    for var, e in zip(variables, exponents):
        if e == 1:
            parts.append(var)
        elif e > 1:
            parts.append(f"{var}{e}")
    return "".join(parts)


def veronesian(x_count: int, m: int) -> Configuration:
    """The m-th combinatorial Veronesian over x_count variables: points are
    degree-m monomials, lines the sets e*X^r.  Only x_count = 3 gives
    uniformly 3-point lines; other sizes are rejected."""
    if x_count < 2 or m < 1:
        raise ValueError("need at least two variables and positive degree")
    variables = tuple("abcdefgh"[:x_count])

    def monomials(degree):
        return [
            tuple(combo.count(v) for v in variables)
            for combo in combinations_with_replacement(variables, degree)
        ]

    points = [_monomial_label(e, variables) for e in monomials(m)]
    lines = []
    for r in range(1, m + 1):
        for stem in monomials(m - r):
            line = {
                _monomial_label(
                    tuple(e + (r if v == var else 0) for v, e in zip(variables, stem)),
                    variables,
                )
                for var in variables
            }
            if len(line) != 3:
                raise ValueError(
                    f"line family is not uniformly 3-point for {x_count} variables"
                )
            lines.append(tuple(sorted(line)))
    return Configuration.from_label_lines(lines, points=points)


# -- multiveblen configurations ------------------------------------------------


def multiveblen(elements, graph: GraphOnSet, center_structure: Configuration) -> Configuration:
    """Glue Veblen configurations around a center p: points are p, a_i, b_i
    for i in the vertex set and c_z for 2-subsets z; the line families follow
    the gluing graph and the given structure on the 2-subsets."""
    elements = tuple(elements)
    if tuple(graph.vertices) != elements:
        raise ValueError("graph must be defined on exactly the given elements")
    pair_labels = _pair_labels(elements)
    if sorted(center_structure.points) != sorted(pair_labels):
        raise ValueError("center structure must live on the 2-subsets of the elements")
    points = (
        ["p"]
        + [f"a_{i}" for i in elements]
        + [f"b_{i}" for i in elements]
        + [f"c_{z}" for z in pair_labels]
    )
    lines = []
    for i, j in _ordered_pairs(elements):
        c = f"c_{pair_label(i, j)}"
        if graph.has_edge(i, j):
            lines.append((f"a_{i}", f"a_{j}", c))
            lines.append((f"b_{i}", f"b_{j}", c))
        else:
            lines.append((f"a_{i}", f"b_{j}", c))
            lines.append((f"a_{j}", f"b_{i}", c))
    lines.extend(("p", f"a_{i}", f"b_{i}") for i in elements)
    lines.extend(
        tuple(f"c_{label}" for label in block) for block in center_structure.label_lines()
    )
    return Configuration.from_label_lines(lines, points=points)


def remark_212_mvc() -> Configuration:
    """The complete-graph multiveblen configuration over {a, b, c, 0} whose
    center structure is the Veblen configuration with lines
    {ab, ac, bc}, {0a, 0b, bc}, {0b, 0c, ac}, {0c, 0a, ab}.
    It is a (15_4 20_3) system that is not any simple multiveblen
    configuration."""
    z = ("a", "b", "c", "0")
    pl = pair_label
    veblen_lines = [
        (pl("a", "b"), pl("a", "c"), pl("b", "c")),
        (pl("a", "0"), pl("b", "0"), pl("b", "c")),
        (pl("b", "0"), pl("c", "0"), pl("a", "c")),
        (pl("c", "0"), pl("a", "0"), pl("a", "b")),
    ]
    center = Configuration.from_label_lines(veblen_lines, points=_pair_labels(z))
    return multiveblen(z, GraphOnSet.complete(z), center)


# -- systems of triangle perspectives -------------------------------------------


def _stp_points(index_set, pair_labels) -> list[str]:
    points = [f"q^{x}" for x in TRIANGLE]
    for i in index_set:
        points.extend(f"{x}_{i}" for x in TRIANGLE)
    points.extend(f"q^{z}" for z in pair_labels)
    return points


def stp(xi: XiMatrix, center_structure: Configuration | None = None) -> Configuration:
    """The system of triangle perspectives for a given matrix.

    One Veblen configuration per index shares the base line
    L = {q^a, q^b, q^c}; the triangle line through q^x avoids x_i.  For each
    index pair the three perspective rays join x_i to (xi(i,j)(x))_j through
    the center q^{i,j}, and the center structure's lines are copied onto the
    centers.
    """
    index_set = xi.index_set
    pair_labels = _pair_labels(index_set)
    if center_structure is None:
        center_structure = simple_center_structure(index_set)
    if sorted(center_structure.points) != sorted(pair_labels):
        raise ValueError("center structure must live on the 2-subsets of the index set")
    validate_psts(center_structure)
    lines = [tuple(f"q^{x}" for x in TRIANGLE)]
    for i in index_set:
        for x in TRIANGLE:
            others = [y for y in TRIANGLE if y != x]
            lines.append((f"q^{x}", *(f"{y}_{i}" for y in others)))
    for i, j in _ordered_pairs(index_set):
        center = f"q^{pair_label(i, j)}"
        perm = xi(i, j)
        for x in TRIANGLE:
            lines.append((center, f"{x}_{i}", f"{perm(x)}_{j}"))
    lines.extend(
        tuple(f"q^{label}" for label in block) for block in center_structure.label_lines()
    )
    return Configuration.from_label_lines(lines, points=_stp_points(index_set, pair_labels))


def stp_triple(
    p12: TrianglePerm, p23: TrianglePerm, p13: TrianglePerm
) -> Configuration:
    """The simple STP on I = {1, 2, 3} for the triple (xi(1,2), xi(2,3), xi(1,3))."""
    return stp(XiMatrix.from_triple(p12, p23, p13))


def stp_pair(perm: TrianglePerm) -> Configuration:
    """The 10-point STP of two triangles with a single perspective."""
    return stp(XiMatrix((1, 2), (((1, 2), perm),)))


def stp_pair_type(perm: TrianglePerm) -> str:
    """Which of the three two-triangle 10_3 structures a perspective yields:
    DES for the identity, DES' for a transposition, DES'' for a rotation."""
    if perm == ID:
        return "DES"
    if perm in (RHO, RHO_INV):
        return "DES''"
    return "DES'"


# -- conversions between the two presentations ----------------------------------


@dataclass(frozen=True)
class MvcToStpResult:
    xi: XiMatrix
    center_structure: Configuration
    toggled_graph: GraphOnSet
    stp_cfg: Configuration
    mvc_cfg: Configuration
    mapping: tuple  # STP label -> MVC label pairs

    def mapping_dict(self) -> dict[str, str]:
        return dict(self.mapping)


@dataclass(frozen=True)
class StpToMvcResult:
    graph: GraphOnSet
    center_structure: Configuration
    mvc_cfg: Configuration
    mapping: tuple  # STP label -> MVC label pairs
    fixed_symbol: str

    def mapping_dict(self) -> dict[str, str]:
        return dict(self.mapping)


def _conversion_mapping(index_set, zero, elements) -> dict[str, str]:
    pos = {e: k for k, e in enumerate(elements)}

    def mvc_pair(u, v):
        return pair_label(u, v) if pos[u] < pos[v] else pair_label(v, u)

    mapping = {"q^c": "p", "q^b": f"a_{zero}", "q^a": f"b_{zero}"}
    for i in index_set:
        mapping[f"a_{i}"] = f"a_{i}"
        mapping[f"b_{i}"] = f"b_{i}"
        mapping[f"c_{i}"] = f"c_{mvc_pair(zero, i)}"
    for i, j in _ordered_pairs(index_set):
        mapping[f"q^{pair_label(i, j)}"] = f"c_{mvc_pair(i, j)}"
    return mapping


def mvc_to_stp(elements, graph: GraphOnSet, h_prime: Configuration, zero=None) -> MvcToStpResult:
    """Present a multiveblen configuration as a system of triangle
    perspectives.

    ``zero`` names the distinguished element (default: the first one); the
    structure on the 2-subsets must contain the line {{0,i},{0,j},{i,j}} for
    every pair i, j of the remaining elements.  Edge toggles at the vertices
    not joined to zero first make all {0,i} edges present; the resulting
    matrix fixes c and swaps a, b exactly on the non-edges.  The returned
    relabeling certifies that the STP is isomorphic to the multiveblen
    configuration of the toggled graph.
    """
    elements = tuple(elements)
    if zero is None:
        zero = elements[0]
    if zero not in elements:
        raise ValueError(f"{zero!r} is not among the elements")
    index_set = tuple(i for i in elements if i != zero)
    pos = {e: k for k, e in enumerate(elements)}

    def mvc_pair(u, v):
        return pair_label(u, v) if pos[u] < pos[v] else pair_label(v, u)

    h_lines = {frozenset(block) for block in h_prime.label_lines()}
    for i, j in _ordered_pairs(index_set):
        needed = frozenset((mvc_pair(zero, i), mvc_pair(zero, j), pair_label(i, j)))
        if needed not in h_lines:
            raise ValueError(f"hypothesis line {set(needed)} missing from the center structure")

    toggled = graph
    for i in index_set:
        if not toggled.has_edge(zero, i):
            toggled = mu_toggle(toggled, i)
    entries = {
        (i, j): (ID if toggled.has_edge(i, j) else SIGMA_C)
        for i, j in _ordered_pairs(index_set)
    }
    xi = XiMatrix.from_entries(index_set, entries)

    inner_points = _pair_labels(index_set)
    inner_lines = [
        block for block in h_prime.label_lines() if set(block).issubset(inner_points)
    ]
    center = Configuration.from_label_lines(inner_lines, points=inner_points)

    stp_cfg = stp(xi, center)
    mvc_cfg = multiveblen(elements, toggled, h_prime)
    mapping = _conversion_mapping(index_set, zero, elements)
    if not is_isomorphism(stp_cfg, mvc_cfg, mapping):
        raise AssertionError("conversion certificate failed to verify")
    return MvcToStpResult(
        xi=xi,
        center_structure=center,
        toggled_graph=toggled,
        stp_cfg=stp_cfg,
        mvc_cfg=mvc_cfg,
        mapping=tuple(sorted(mapping.items())),
    )


def stp_to_mvc(xi: XiMatrix, center_structure: Configuration | None = None, zero=0) -> StpToMvcResult:
    """Present an STP whose matrix fixes a symbol as a multiveblen
    configuration over the index set extended by ``zero``; raises
    NoFixedSymbol otherwise, which is exactly the non-convertibility
    criterion."""
    fixed = xi.fixed_symbols()
    if not fixed:
        raise NoFixedSymbol(
            "every symbol is moved by some entry; not a simple multiveblen configuration"
        )
    symbol = fixed[0]
    index_set = xi.index_set
    if zero in index_set:
        raise ValueError(f"zero element {zero!r} collides with the index set")
    if center_structure is None:
        center_structure = simple_center_structure(index_set)

    # Rotate the fixed symbol into the c role, then reverse the standard
    # relabeling.  beta maps `symbol` to c and the source STP onto stp(zeta).
    beta = {"a": RHO_INV, "b": RHO, "c": ID}[symbol]
    zeta = xi_conjugate(xi, beta, {i: i for i in index_set})
    pre_mapping = {}
    for x in TRIANGLE:
        pre_mapping[f"q^{x}"] = f"q^{beta(x)}"
        for i in index_set:
            pre_mapping[f"{x}_{i}"] = f"{beta(x)}_{i}"
    for z in _pair_labels(index_set):
        pre_mapping[f"q^{z}"] = f"q^{z}"

    elements = (zero,) + index_set
    edges = {frozenset((zero, i)) for i in index_set}
    edges.update(
        frozenset((i, j))
        for i, j in _ordered_pairs(index_set)
        if zeta(i, j) == ID
    )
    graph = GraphOnSet(elements, frozenset(edges))

    h_lines = list(center_structure.label_lines())
    for i, j in _ordered_pairs(index_set):
        h_lines.append((pair_label(zero, i), pair_label(zero, j), pair_label(i, j)))
    h_prime = Configuration.from_label_lines(h_lines, points=_pair_labels(elements))
    validate_psts(h_prime)

    mvc_cfg = multiveblen(elements, graph, h_prime)
    post_mapping = _conversion_mapping(index_set, zero, elements)
    mapping = {src: post_mapping[mid] for src, mid in pre_mapping.items()}
    source = stp(xi, center_structure)
    if not is_isomorphism(source, mvc_cfg, mapping):
        raise AssertionError("conversion certificate failed to verify")
    return StpToMvcResult(
        graph=graph,
        center_structure=h_prime,
        mvc_cfg=mvc_cfg,
        mapping=tuple(sorted(mapping.items())),
        fixed_symbol=symbol,
    )
