"""Fixed-point graph sums for genus-zero invariants of the projective line.

A torus-fixed stable map of degree d to the line is encoded by a decorated
tree: vertices carry fixed-point labels (adjacent labels differ, since every
invariant curve joins the two fixed points), edges carry covering degrees
summing to d, and each marking sits on a vertex.  The sum over isomorphism
classes of

    1/|Aut| * prod_edges  h(d_e)/d_e
            * prod_vertices  w^(valence-1) * (insertion restrictions)
            * prod_vertices  (psi/flag moduli integral)

computes the equivariant descendant invariants.  Here w is the tangent weight
at the vertex's fixed point (-v or +v), a flag on an edge of degree d_e has
weight w/d_e, and

    h(d) = (-1)^d d^(2d) / ((d!)^2 v^(2d))

is the edge factor.  Values are exact V-Laurent polynomials carried as
wide-window :class:`~ocmirror.series.FormalSeries`.

Vertex moduli integrals: a vertex with F flags, marking psi-exponents a_j and
optionally one boundary ("open") flag is stable when F + #markings + #open
>= 3, and then equals the finite sum over ladder indices k of

    (N-3)! / (prod a_j! prod k!) * prod w_f^-(k_f+1),    sum k = N-3 - sum a_j,

i.e. every 1/(w - psi) is expanded *inside* the integral, where the psi-class
is nilpotent.  (Expanding it outside, against a fixed descendant insertion,
produces a divergent ladder — the tests pin this by matching ratios where the
inside expansion terminates.)  Unstable vertices take the usual conventions:

    one flag                ->  w
    one boundary flag       ->  w_o
    flag + flag             ->  1/(w_1 + w_2)
    flag + boundary         ->  1/(w_f + w_o)
    flag or boundary + psi^a -> (-w)^a

With one boundary component of winding mu != 0 against degree
(d_minus, d_plus) = (d + max(0,-mu), d + max(0,mu)), the disk contributes a
closed-form factor

    D(mu) = mu^(mu-2)/(mu! v^(mu-2))          for mu > 0 (at the + point),
    D(mu) = (-1)^(|mu|+1)|mu|^(|mu|-2)/(|mu|! v^(|mu|-2))  for mu < 0,

an overall mu/v, and a boundary flag of weight v/mu on the vertex carrying
the disk.  Two independently coded routes evaluate the same invariant: the
direct one sums over graphs whose disk vertex sits at the forced fixed point;
the factored one sums over *all* graphs against an extra fixed-point-class
insertion that kills the wrong assignments numerically.  Their agreement is
an acceptance requirement, not an implementation shortcut.
"""

from __future__ import annotations

import heapq
import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .geometry import WIDE, P1Class, phi_p1, unit_p1, v_term
from .series import FormalSeries, TruncationWindow, mono

__all__ = [
    "psi_integral",
    "psi_integral_by_string",
    "DecoratedGraph",
    "enumerate_graph_classes",
    "count_labeled_graphs",
    "automorphism_count",
    "edge_factor",
    "vertex_integral",
    "disk_factor",
    "closed_descendant",
    "open_invariant",
    "open_via_closed",
    "graph_class_rows",
    "j_degree_part_from_graphs",
]


# ===========================================================================
# psi-intersection numbers on the genus-zero moduli of pointed curves
# ===========================================================================


def psi_integral(exponents: Sequence[int]) -> Fraction:
    """Closed form: (n-3)!/prod(a_i!) when the exponents fill the dimension."""
    n = len(exponents)
    if n < 3:
        raise ValueError("need at least three marked points")
    if any(a < 0 for a in exponents):
        raise ValueError("negative psi-exponent")
    if sum(exponents) != n - 3:
        return Fraction(0)
    denom = 1
    for a in exponents:
        denom *= factorial(a)
    return Fraction(factorial(n - 3), denom)


def psi_integral_by_string(exponents: Sequence[int]) -> Fraction:
    """Independent oracle: pull marked points off with the string equation."""
    n = len(exponents)
    if n < 3:
        raise ValueError("need at least three marked points")
    if sum(exponents) != n - 3:
        return Fraction(0)
    if n == 3:
        return Fraction(1)  # dimension zero forces all exponents to vanish
    exps = list(exponents)
    i = exps.index(0)  # exists: sum < n
    rest = exps[:i] + exps[i + 1 :]
    total = Fraction(0)
    for j, a in enumerate(rest):
        if a >= 1:
            total += psi_integral_by_string(rest[:j] + [a - 1] + rest[j + 1 :])
    return total


# ===========================================================================
# decorated graphs
# ===========================================================================


@dataclass(frozen=True)
class DecoratedGraph:
    """Labeled tree with edge degrees and marking placements.

    ``labels[v]`` is the fixed point (1 or 2) of vertex v; ``edges`` holds
    (u, v, degree) with u < v; ``markings[i]`` is the vertex carrying marking
    i+1.  Markings are individually distinguished: an isomorphism must fix
    each one, not just their multiset.
    """

    labels: Tuple[int, ...]
    edges: Tuple[Tuple[int, int, int], ...]
    markings: Tuple[int, ...] = ()

    def validate(self) -> None:
        V = len(self.labels)
        if any(l not in (1, 2) for l in self.labels):
            raise ValueError("labels must be fixed points 1 or 2")
        if len(self.edges) != V - 1:
            raise ValueError("a tree on V vertices has V-1 edges")
        seen = {0} if V else set()
        adj = self.adjacency()
        frontier = [0]
        while frontier:
            v = frontier.pop()
            for u, _ in adj[v]:
                if u not in seen:
                    seen.add(u)
                    frontier.append(u)
        if len(seen) != V:
            raise ValueError("graph is not connected")
        for u, v, de in self.edges:
            if not 0 <= u < v < V:
                raise ValueError("edge endpoints must be ordered vertex indices")
            if de < 1:
                raise ValueError("edge degrees are positive")
            if self.labels[u] == self.labels[v]:
                raise ValueError("adjacent vertices map to the same fixed point")
        if any(not 0 <= m < V for m in self.markings):
            raise ValueError("marking on a missing vertex")

    @property
    def degree(self) -> int:
        return sum(de for _, _, de in self.edges)

    def adjacency(self) -> Dict[int, List[Tuple[int, int]]]:
        adj: Dict[int, List[Tuple[int, int]]] = {v: [] for v in range(len(self.labels))}
        for u, v, de in self.edges:
            adj[u].append((v, de))
            adj[v].append((u, de))
        return adj

    def markings_at(self, v: int) -> Tuple[int, ...]:
        return tuple(i for i, mv in enumerate(self.markings) if mv == v)

    # -- canonical form -----------------------------------------------------

    def _encode(self, v: int, parent: int, adj) -> tuple:
        children = sorted(
            (de, self._encode(u, v, adj)) for u, de in adj[v] if u != parent
        )
        return (self.labels[v], self.markings_at(v), tuple(children))

    def canonical_key(self) -> tuple:
        """Isomorphism-class invariant, complete for decorated trees.

        Roots at the tree's center (one or two central vertices, found by
        leaf stripping on the underlying tree — centrality ignores the
        decorations but isomorphisms preserve it, so this is sound).
        """
        V = len(self.labels)
        if V == 1:
            return ("v", self.labels[0], self.markings_at(0))
        adj = self.adjacency()
        centers = _tree_centers(V, adj)
        if len(centers) == 1:
            return ("c", self._encode(centers[0], -1, adj))
        c1, c2 = centers
        de = next(d for u, d in adj[c1] if u == c2)
        halves = sorted([self._encode(c1, c2, adj), self._encode(c2, c1, adj)])
        return ("e", de, tuple(halves))


def _tree_centers(V: int, adj) -> List[int]:
    """Central vertices of the underlying tree, by repeated leaf removal."""
    if V <= 2:
        return list(range(V))
    degree = [len(adj[v]) for v in range(V)]
    removed = [False] * V
    layer = [v for v in range(V) if degree[v] == 1]
    remaining = V
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            removed[v] = True
            for u, _ in adj[v]:
                if not removed[u]:
                    degree[u] -= 1
                    if degree[u] == 1:
                        nxt.append(u)
        layer = nxt
    return sorted(layer)


def _pruefer_to_edges(seq: Sequence[int], V: int) -> List[Tuple[int, int]]:
    degree = [1] * V
    for x in seq:
        degree[x] += 1
    leaves = [v for v in range(V) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((min(leaf, x), max(leaf, x)))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append((min(u, v), max(u, v)))
    return edges


def _labeled_trees(V: int) -> List[List[Tuple[int, int]]]:
    if V == 1:
        return [[]]
    if V == 2:
        return [[(0, 1)]]
    return [_pruefer_to_edges(seq, V) for seq in itertools.product(range(V), repeat=V - 2)]


def _bipartition_labels(V: int, edges: Sequence[Tuple[int, int]], root_label: int):
    labels = [0] * V
    labels[0] = root_label
    adj: Dict[int, List[int]] = {v: [] for v in range(V)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    frontier = [0]
    while frontier:
        v = frontier.pop()
        for u in adj[v]:
            if labels[u] == 0:
                labels[u] = 3 - labels[v]
                frontier.append(u)
    return tuple(labels)


def enumerate_graph_classes(n: int, d: int) -> List[DecoratedGraph]:
    """Isomorphism classes of decorated trees: n markings, total degree d >= 1.

    Enumerates everything labeled (Pruefer trees x two bipartition labelings
    x degree compositions x marking placements) and dedupes by canonical key;
    order of the output is the deterministic discovery order.
    """
    if d < 1:
        raise ValueError("graph sums need positive total degree")
    found: Dict[tuple, DecoratedGraph] = {}
    for V in range(2, d + 2):
        for tree in _labeled_trees(V):
            for root_label in (1, 2):
                labels = _bipartition_labels(V, tree, root_label)
                for degs in _compositions(d, V - 1):
                    edges = tuple(
                        (u, v, de) for (u, v), de in zip(tree, degs)
                    )
                    for marks in itertools.product(range(V), repeat=n):
                        g = DecoratedGraph(labels, edges, tuple(marks))
                        key = g.canonical_key()
                        if key not in found:
                            g.validate()
                            found[key] = g
    return list(found.values())


def count_labeled_graphs(n: int, d: int, V: int) -> int:
    """Number of *labeled* decorated trees on exactly V vertices (orbit check)."""
    return len(_labeled_trees(V)) * 2 * _n_compositions(d, V - 1) * V**n


def _compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _n_compositions(total: int, parts: int) -> int:
    if parts == 0:
        return 1 if total == 0 else 0
    if total < parts:
        return 0
    return comb(total - 1, parts - 1)  # positive parts


# ---------------------------------------------------------------------------
# automorphisms, counted twice
# ---------------------------------------------------------------------------


def _aut_brute(g: DecoratedGraph) -> int:
    V = len(g.labels)
    edge_map = {(u, v): de for u, v, de in g.edges}
    count = 0
    for perm in itertools.permutations(range(V)):
        if any(g.labels[perm[v]] != g.labels[v] for v in range(V)):
            continue
        if any(perm[mv] != mv for mv in g.markings):
            continue
        ok = True
        for (u, v), de in edge_map.items():
            iu, iv = perm[u], perm[v]
            if edge_map.get((min(iu, iv), max(iu, iv))) != de:
                ok = False
                break
        if ok:
            count += 1
    return count


def _aut_rooted(g: DecoratedGraph, v: int, parent: int, adj) -> int:
    children = [(de, g._encode(u, v, adj), u) for u, de in adj[v] if u != parent]
    groups = Counter((de, enc) for de, enc, _ in children)
    aut = 1
    for c in groups.values():
        aut *= factorial(c)
    for _, _, u in children:
        aut *= _aut_rooted(g, u, v, adj)
    return aut


def _aut_canonical(g: DecoratedGraph) -> int:
    V = len(g.labels)
    if V == 1:
        return 1
    adj = g.adjacency()
    centers = _tree_centers(V, adj)
    if len(centers) == 1:
        return _aut_rooted(g, centers[0], -1, adj)
    c1, c2 = centers
    a = _aut_rooted(g, c1, c2, adj) * _aut_rooted(g, c2, c1, adj)
    if g._encode(c1, c2, adj) == g._encode(c2, c1, adj):
        a *= 2
    return a


def automorphism_count(g: DecoratedGraph) -> int:
    """Order of the decoration-preserving automorphism group.

    Computed both by brute-force permutation search and by the recursive
    canonical-form product; the agreement of the two is asserted on every
    call (they share no code).
    """
    brute = _aut_brute(g)
    recursive = _aut_canonical(g)
    if brute != recursive:
        raise AssertionError(f"automorphism counts disagree: {brute} vs {recursive}")
    return brute


# ===========================================================================
# contribution factors
# ===========================================================================


def edge_factor(d: int) -> FormalSeries:
    """h(d) = (-1)^d d^(2d) / ((d!)^2 v^(2d)) as an exact V-Laurent scalar."""
    if d < 1:
        raise ValueError("edge degrees are positive")
    c = Fraction((-1) ** d * d ** (2 * d), factorial(d) ** 2)
    return FormalSeries.of(c, mono(V=-2 * d), WIDE)


def vertex_integral(
    flag_weights: Sequence[Fraction],
    marking_exponents: Sequence[int] = (),
    open_weight: Optional[Fraction] = None,
) -> FormalSeries:
    """Moduli integral at one vertex; weights are rational multiples of v.

    Stable case: expand each 1/(w - psi) inside the integral (finitely many
    terms, bounded by the moduli dimension) and integrate with the closed
    psi-formula.  Unstable cases follow the fixed conventions in the module
    docstring; combinations outside them raise.
    """
    flags = [Fraction(c) for c in flag_weights]
    if any(c == 0 for c in flags) or (open_weight is not None and open_weight == 0):
        raise ValueError("zero flag weight")
    exps = list(marking_exponents)
    ladder = flags + ([Fraction(open_weight)] if open_weight is not None else [])
    n_special = len(ladder) + len(exps)
    if n_special >= 3:
        budget = n_special - 3 - sum(exps)
        if budget < 0:
            return FormalSeries.zero(WIDE)
        norm = Fraction(factorial(n_special - 3))
        for a in exps:
            norm /= factorial(a)
        scalar = Fraction(0)
        for ks in _weak_compositions(budget, len(ladder)):
            c = norm
            for k, w in zip(ks, ladder):
                c /= factorial(k) * w ** (k + 1)
            scalar += c
        return FormalSeries.of(scalar, mono(V=-(budget + len(ladder))), WIDE)
    if n_special == 1 and len(ladder) == 1:
        return v_term(ladder[0], 1)
    if n_special == 2:
        if len(ladder) == 2:
            return FormalSeries.of(1 / (ladder[0] + ladder[1]), mono(V=-1), WIDE)
        if len(ladder) == 1 and len(exps) == 1:
            return FormalSeries.of((-ladder[0]) ** exps[0], mono(V=exps[0]), WIDE)
    raise ValueError(
        f"no convention for a vertex with {len(ladder)} flags and {len(exps)} markings"
    )


def _weak_compositions(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def disk_factor(mu: int) -> FormalSeries:
    """Closed-form disk multiple cover factor D(mu), mu != 0."""
    if mu == 0:
        raise ValueError("winding zero has no disk")
    m = abs(mu)
    c = Fraction(m) ** (m - 2) / factorial(m)
    if mu < 0:
        c *= (-1) ** (m + 1)
    return FormalSeries.of(c, mono(V=2 - m), WIDE)


# ===========================================================================
# graph sums
# ===========================================================================

Insertion = Tuple[P1Class, int]  # (restriction pair, psi exponent)

_W_SIGN = {1: -1, 2: 1}


def _graph_contribution(
    g: DecoratedGraph,
    insertions: Sequence[Insertion],
    open_vertex: Optional[int] = None,
    open_weight: Optional[Fraction] = None,
) -> FormalSeries:
    total = v_term(Fraction(1, automorphism_count(g)))
    for _, _, de in g.edges:
        total = total * edge_factor(de).scale(Fraction(1, de))
    adj = g.adjacency()
    for v in range(len(g.labels)):
        label = g.labels[v]
        sign = _W_SIGN[label]
        flags = [Fraction(sign, de) for _, de in adj[v]]
        exps = []
        for i in g.markings_at(v):
            if i < len(insertions):
                restriction, a = insertions[i]
                exps.append(a)
                total = total * restriction[label - 1]
        # w^(valence-1), counting only edge flags
        k = len(flags) - 1
        total = total.scale(Fraction(sign) ** k, mono(V=k))
        ow = open_weight if v == open_vertex else None
        total = total * vertex_integral(flags, exps, ow)
        if total.is_zero():
            return total
    return total


def closed_descendant(insertions: Sequence[Insertion], d: int) -> FormalSeries:
    """Equivariant genus-zero descendant invariant of degree d >= 1.

    ``insertions`` lists (restriction pair, psi exponent) per marking; the
    result is an exact V-Laurent scalar.
    """
    total = FormalSeries.zero(WIDE)
    for g in enumerate_graph_classes(len(insertions), d):
        total = total + _graph_contribution(g, insertions)
    return total


def _open_data(d_minus: int, d_plus: int) -> Tuple[int, int, int]:
    mu = d_plus - d_minus
    if mu == 0:
        raise ValueError("winding zero has no boundary disk")
    d = min(d_minus, d_plus)
    if d < 0:
        raise ValueError("degrees must be nonnegative")
    h = 1 if mu < 0 else 2
    return mu, d, h


def _disk_prefactor(mu: int) -> FormalSeries:
    return disk_factor(mu).scale(Fraction(mu), mono(V=-1))


def _degree_zero_open(
    mu: int, h: int, insertions: Sequence[Insertion], extra: Optional[P1Class]
) -> FormalSeries:
    """No sphere components: the bare disk against the unstable conventions."""
    sign = _W_SIGN[h]
    total = _disk_prefactor(mu).scale(Fraction(sign), mono(V=-1))  # w_h^-1
    if extra is not None:
        total = total * extra[h - 1]
    for restriction, _ in insertions:
        total = total * restriction[h - 1]
    exps = [a for _, a in insertions]
    w_open = Fraction(1, mu)
    if not exps:
        vertex = v_term(w_open, 1)  # lone boundary flag -> w_o
    elif len(exps) == 1:
        vertex = FormalSeries.of((-w_open) ** exps[0], mono(V=exps[0]), WIDE)
    else:
        vertex = vertex_integral([], exps, w_open)
    return total * vertex


def open_invariant(
    d_minus: int, d_plus: int, insertions: Sequence[Insertion] = ()
) -> FormalSeries:
    """One-boundary invariant, direct route: disk vertex at its forced point."""
    mu, d, h = _open_data(d_minus, d_plus)
    if d == 0:
        return _degree_zero_open(mu, h, insertions, None)
    n = len(insertions)
    pre = _disk_prefactor(mu)
    total = FormalSeries.zero(WIDE)
    for g in enumerate_graph_classes(n + 1, d):
        disk_vertex = g.markings[n]
        if g.labels[disk_vertex] != h:
            continue
        total = total + _graph_contribution(
            g, insertions, open_vertex=disk_vertex, open_weight=Fraction(1, mu)
        )
    return pre * total


def open_via_closed(
    d_minus: int, d_plus: int, insertions: Sequence[Insertion] = ()
) -> FormalSeries:
    """One-boundary invariant, factored route: unrestricted graph sum against
    a fixed-point class at the extra marking (wrong assignments die through
    the restriction value instead of a combinatorial filter).

    The restriction factor is applied before the vertex conventions are
    consulted: a vanishing integrand never reaches a moduli integral, so the
    boundary weight cannot collide with an opposite edge weight on a graph
    that contributes nothing.
    """
    mu, d, h = _open_data(d_minus, d_plus)
    point_class = phi_p1(h)
    if d == 0:
        return _degree_zero_open(mu, h, insertions, point_class)
    n = len(insertions)
    pre = _disk_prefactor(mu)
    total = FormalSeries.zero(WIDE)
    for g in enumerate_graph_classes(n + 1, d):
        disk_vertex = g.markings[n]
        weight_factor = point_class[g.labels[disk_vertex] - 1]
        if weight_factor.is_zero():
            continue
        contribution = _graph_contribution(
            g, insertions, open_vertex=disk_vertex, open_weight=Fraction(1, mu)
        )
        total = total + contribution * weight_factor
    return pre * total


# ===========================================================================
# descendant form of the curve series, one degree at a time
# ===========================================================================


GraphClassRow = Tuple[DecoratedGraph, int, FormalSeries]


def graph_class_rows(n: int, d: int) -> List[GraphClassRow]:
    """Inspection table for the degree-d classes carrying n plain markings.

    Each row is (graph, |Aut|, contribution) where the contribution is the
    class's exact summand — including its 1/|Aut| weight — in the graph sum
    for n unit-class markings with no cotangent powers.  Rows keep the
    deterministic enumeration order, so the table is snapshot-stable.
    """
    unit = unit_p1()
    insertions = [(unit, 0)] * n
    return [
        (g, automorphism_count(g), _graph_contribution(g, insertions))
        for g in enumerate_graph_classes(n, d)
    ]


def j_degree_part_from_graphs(alpha: int, d: int, window: TruncationWindow) -> FormalSeries:
    """Degree-d part of the reduced curve series rebuilt from graph sums:

        Q^(2d) * (Euler weight at alpha) * sum_a <1, phi_alpha psi^a> z^(-a-1),

    the a-range bounded by the window's z-floor.  Matches the t0-free part of
    :func:`ocmirror.closed.j_reduced_component` degree by degree.
    """
    if alpha not in (1, 2):
        raise ValueError(f"no fixed point {alpha}")
    sign = _W_SIGN[alpha]
    total = FormalSeries.zero(window)
    for a in range(-window.min_z):
        val = closed_descendant([(unit_p1(), 0), (phi_p1(alpha), a)], d)
        val = val.scale(Fraction(sign), mono(Q=2 * d, V=1, Z=-a - 1))
        total = total + val.truncate(window)
    return total
