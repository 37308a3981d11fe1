"""Trivalent ribbon graphs, surface thickenings, and rooted-map counting.

A ribbon graph is a pair of permutations on darts: a fixed-point-free
involution pairing darts into edges, and a rotation whose cycles are the
counterclockwise dart orders at the (trivalent) vertices.  Thickening along a
vertex marking flips the rotation at the marked vertices; the boundary
components of the thickened surface are the cycles of rotation composed with
the involution, and the genus follows from the Euler characteristic V - E of
the spine.

The text format is one line per vertex ``v: d1 d2 d3`` (cyclic order) and one
line per edge ``e: da db``, darts numbered from 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .errors import ConsistencyError, GraphParseError

MAX_ENUM_DEGREE = 4
MAX_MAP_EDGES = 5


def _cycle_count(perm) -> int:
    seen = [False] * len(perm)
    count = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        count += 1
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return count


class RibbonGraph:
    """Immutable trivalent ribbon graph on darts 0..6n-1."""

    __slots__ = ("rotation", "involution", "vertex_of")

    def __init__(self, rotation, involution):
        rotation = tuple(rotation)
        involution = tuple(involution)
        n = len(rotation)
        if len(involution) != n:
            raise ValueError("rotation and involution must act on the same darts")
        if sorted(rotation) != list(range(n)) or sorted(involution) != list(range(n)):
            raise ValueError("rotation and involution must be permutations")
        for d in range(n):
            if involution[d] == d:
                raise ValueError(f"involution fixes dart {d}")
            if involution[involution[d]] != d:
                raise ValueError("involution must be self-inverse")
            if rotation[rotation[rotation[d]]] != d or rotation[d] == d:
                raise ValueError("every rotation cycle must have length exactly 3")
        vertex_of = [-1] * n
        label = 0
        for d in range(n):
            if vertex_of[d] < 0:
                for x in (d, rotation[d], rotation[rotation[d]]):
                    vertex_of[x] = label
                label += 1
        self.rotation = rotation
        self.involution = involution
        self.vertex_of = tuple(vertex_of)

    # -- structure ------------------------------------------------------------

    @property
    def num_darts(self) -> int:
        return len(self.rotation)

    @property
    def num_vertices(self) -> int:
        return self.num_darts // 3

    @property
    def num_edges(self) -> int:
        return self.num_darts // 2

    @property
    def degree(self) -> int:
        """Half the vertex count; the grading of the weight system."""
        return self.num_vertices // 2

    def vertices(self) -> list[tuple[int, int, int]]:
        out = []
        seen = set()
        for d in range(self.num_darts):
            if d not in seen:
                triple = (d, self.rotation[d], self.rotation[self.rotation[d]])
                seen.update(triple)
                out.append(triple)
        return out

    def edges(self) -> list[tuple[int, int]]:
        return [(d, self.involution[d]) for d in range(self.num_darts)
                if d < self.involution[d]]

    def is_connected(self) -> bool:
        if not self.num_darts:
            return True
        seen = [False] * self.num_darts
        stack = [0]
        seen[0] = True
        reached = 1
        while stack:
            d = stack.pop()
            for nb in (self.rotation[d], self.involution[d]):
                if not seen[nb]:
                    seen[nb] = True
                    reached += 1
                    stack.append(nb)
        return reached == self.num_darts

    def relabeled(self, perm) -> "RibbonGraph":
        """Conjugate both permutations by dart relabeling d -> perm[d]."""
        n = self.num_darts
        rot = [0] * n
        inv = [0] * n
        for d in range(n):
            rot[perm[d]] = perm[self.rotation[d]]
            inv[perm[d]] = perm[self.involution[d]]
        return RibbonGraph(rot, inv)

    def reversed_orientation(self) -> "RibbonGraph":
        inv_rot = [0] * self.num_darts
        for d in range(self.num_darts):
            inv_rot[self.rotation[d]] = d
        return RibbonGraph(inv_rot, self.involution)

    def __eq__(self, other):
        if not isinstance(other, RibbonGraph):
            return NotImplemented
        return (self.rotation, self.involution) == (other.rotation, other.involution)

    def __hash__(self):
        return hash((self.rotation, self.involution))

    def __repr__(self):
        return f"RibbonGraph({self.num_vertices} vertices, {self.num_edges} edges)"

    # -- canonical form -----------------------------------------------------

    def canonical_key(self) -> tuple:
        """Minimal traversal encoding over all starting darts.

        From each root, darts are relabeled in discovery order (each new
        vertex contributes its rotation cycle starting at the entering dart);
        the encoding lists the partner label of each dart in label order.
        Isomorphic graphs share the minimum.
        """
        n = self.num_darts
        best = None
        for root in range(n):
            labels = [-1] * n
            order = []

            def absorb(d):
                for x in (d, self.rotation[d], self.rotation[self.rotation[d]]):
                    labels[x] = len(order)
                    order.append(x)

            absorb(root)
            enc = []
            qi = 0
            while qi < len(order):
                partner = self.involution[order[qi]]
                qi += 1
                if labels[partner] < 0:
                    absorb(partner)
                enc.append(labels[partner])
            enc = tuple(enc)
            if best is None or enc < best:
                best = enc
        return best

    def canonical_form(self) -> "RibbonGraph":
        n = self.num_darts
        key = self.canonical_key()
        # rebuild the graph from the encoding: rotation blocks in label order
        rot = [0] * n
        for k in range(0, n, 3):
            rot[k], rot[k + 1], rot[k + 2] = k + 1, k + 2, k
        inv = [0] * n
        for d, partner in enumerate(key):
            inv[d] = partner
        return RibbonGraph(rot, inv)


@dataclass(frozen=True)
class SurfaceClass:
    genus: int
    boundary: int


def classify_marking(graph: RibbonGraph, marking) -> SurfaceClass:
    """Topological type of the thickened surface for one vertex marking.

    Marked vertices thicken with reversed local rotation; the boundary count
    is the number of cycles of (flipped rotation) o (edge involution), and the
    genus follows from 2g - 2 + b = degree.
    """
    if not graph.num_darts:
        raise ValueError("the empty graph has no thickened surface")
    if not graph.is_connected():
        raise ValueError("classification needs a connected graph")
    marking = tuple(marking)
    if len(marking) != graph.num_vertices or any(m not in (0, 1) for m in marking):
        raise ValueError("marking must assign 0/1 to every vertex")
    n = graph.num_darts
    sigma = list(graph.rotation)
    if any(marking):
        inverse = [0] * n
        for d in range(n):
            inverse[graph.rotation[d]] = d
        for d in range(n):
            if marking[graph.vertex_of[d]]:
                sigma[d] = inverse[d]
    walk = [sigma[graph.involution[d]] for d in range(n)]
    boundary = _cycle_count(walk)
    two_genus = graph.degree + 2 - boundary
    if two_genus % 2 or two_genus < 0:
        raise ConsistencyError(
            f"impossible boundary count {boundary} for degree {graph.degree}")
    return SurfaceClass(two_genus // 2, boundary)


@dataclass(frozen=True)
class GlnWeight:
    """Weight-system value: an integer polynomial in N times a fixed power
    of the coupling."""

    coeffs: tuple  # ascending powers of N
    hbar_exp: int

    def degree(self) -> int:
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k]:
                return k
        return -1

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self.coeffs)

    def evaluate(self, n: int) -> int:
        return sum(c * n ** k for k, c in enumerate(self.coeffs))

    def poly_str(self) -> str:
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            elif k == 1:
                body = "N" if mag == 1 else f"{mag}*N"
            else:
                body = f"N^{k}" if mag == 1 else f"{mag}*N^{k}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts) if parts else "0"


def weight_gln(graph: RibbonGraph) -> GlnWeight:
    """Sum (-1)^(marking weight) N^(boundary count) over all vertex markings.

    The empty graph contributes the empty product 1.  For a connected graph of
    degree n every marking satisfies 2g - 2 + b = n, so the coupling exponent
    is n.
    """
    if not graph.num_darts:
        return GlnWeight((1,), 0)
    if not graph.is_connected():
        raise ValueError("weight evaluation needs a connected graph")
    nv = graph.num_vertices
    acc: dict[int, int] = {}
    marking = [0] * nv
    for mask in range(1 << nv):
        for v in range(nv):
            marking[v] = (mask >> v) & 1
        surf = classify_marking(graph, marking)
        sign = -1 if bin(mask).count("1") & 1 else 1
        acc[surf.boundary] = acc.get(surf.boundary, 0) + sign
    top = max(acc)
    coeffs = [0] * (top + 1)
    for b, c in acc.items():
        coeffs[b] = c
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return GlnWeight(tuple(coeffs), graph.degree)


# -- text format ---------------------------------------------------------------


def parse_graph(text: str) -> RibbonGraph:
    """Parse the v:/e: format, validating all invariants.

    The first violation is reported with its line number.
    """
    vertex_lines = []  # (line_no, darts)
    edge_lines = []
    line_no = 0
    for raw in text.splitlines():
        line_no += 1
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        head = head.strip()
        fields = rest.split()
        if head == "v":
            if len(fields) != 3:
                raise GraphParseError(line_no, "vertex line needs exactly 3 darts")
            vertex_lines.append((line_no, fields))
        elif head == "e":
            if len(fields) != 2:
                raise GraphParseError(line_no, "edge line needs exactly 2 darts")
            edge_lines.append((line_no, fields))
        else:
            raise GraphParseError(line_no, f"unknown line kind {head!r}")

    def dart(token: str, ln: int, n: int) -> int:
        try:
            value = int(token)
        except ValueError:
            raise GraphParseError(ln, f"invalid dart {token!r}") from None
        if not 1 <= value <= n:
            raise GraphParseError(ln, f"dart {value} outside 1..{n}")
        return value - 1

    n = 3 * len(vertex_lines)
    if n == 0:
        raise GraphParseError(line_no or 1, "no vertex lines")
    if len(edge_lines) * 2 != n:
        raise GraphParseError(edge_lines[-1][0] if edge_lines else line_no,
                              f"need exactly {n // 2} edge lines for {n} darts")
    rotation = [-1] * n
    seen_v = {}
    for ln, fields in vertex_lines:
        darts = [dart(t, ln, n) for t in fields]
        for d in darts:
            if d in seen_v:
                raise GraphParseError(ln, f"dart {d + 1} already used in a vertex line")
            seen_v[d] = ln
        a, b, c = darts
        rotation[a], rotation[b], rotation[c] = b, c, a
    involution = [-1] * n
    seen_e = set()
    for ln, fields in edge_lines:
        a, b = (dart(t, ln, n) for t in fields)
        if a == b:
            raise GraphParseError(ln, f"edge pairs dart {a + 1} with itself")
        for d in (a, b):
            if d in seen_e:
                raise GraphParseError(ln, f"dart {d + 1} already used in an edge line")
            seen_e.add(d)
        involution[a], involution[b] = b, a
    return RibbonGraph(rotation, involution)


def format_graph(graph: RibbonGraph) -> str:
    lines = [f"v: {a + 1} {b + 1} {c + 1}" for a, b, c in graph.vertices()]
    lines += [f"e: {a + 1} {b + 1}" for a, b in graph.edges()]
    return "\n".join(lines) + "\n"


def theta_graph() -> RibbonGraph:
    """Two vertices joined by three edges, planar thickening."""
    return RibbonGraph([1, 2, 0, 5, 3, 4], [3, 4, 5, 0, 1, 2])


def dumbbell_graph() -> RibbonGraph:
    """Two loop vertices joined by a bridge."""
    return RibbonGraph([1, 2, 0, 4, 5, 3], [1, 0, 5, 4, 3, 2])


# -- enumeration ---------------------------------------------------------------


def _generate_rooted(max_vertices: int):
    """All rooted connected trivalent maps with at most max_vertices vertices.

    Darts are created in traversal order with rotation blocks (k, k+1, k+2);
    each rooted map is produced exactly once, so no isomorph rejection is
    needed here.
    """
    results = []
    alpha = [-1] * (3 * max_vertices)

    def rec(created_vertices, next_dart, i):
        if i == next_dart:
            results.append((next_dart, tuple(alpha[:next_dart])))
            return
        if alpha[i] >= 0:
            rec(created_vertices, next_dart, i + 1)
            return
        if created_vertices < max_vertices:
            k = next_dart
            alpha[i], alpha[k] = k, i
            rec(created_vertices + 1, next_dart + 3, i + 1)
            alpha[i] = alpha[k] = -1
        for j in range(i + 1, next_dart):
            if alpha[j] < 0:
                alpha[i], alpha[j] = j, i
                rec(created_vertices, next_dart, i + 1)
                alpha[i] = alpha[j] = -1

    rec(1, 3, 0)
    return results


def _block_rotation(num_darts: int) -> list[int]:
    rot = [0] * num_darts
    for k in range(0, num_darts, 3):
        rot[k], rot[k + 1], rot[k + 2] = k + 1, k + 2, k
    return rot


def enumerate_trivalent(n_max: int) -> list[RibbonGraph]:
    """All connected trivalent ribbon graphs of degree <= n_max up to
    isomorphism, in canonical form, sorted by (degree, canonical key)."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n_max > MAX_ENUM_DEGREE:
        raise ValueError(
            f"enumeration beyond degree {MAX_ENUM_DEGREE} is combinatorially "
            f"explosive; refusing n_max = {n_max}")
    classes = {}
    for num_darts, alpha in _generate_rooted(2 * n_max):
        if num_darts % 6:
            continue
        graph = RibbonGraph(_block_rotation(num_darts), alpha)
        key = (graph.degree, graph.canonical_key())
        if key not in classes:
            classes[key] = graph.canonical_form()
    return [classes[k] for k in sorted(classes)]


def underlying_multigraph_key(graph: RibbonGraph) -> tuple:
    """Canonical key of the underlying multigraph (rotations forgotten);
    brute-forced over vertex relabelings, so only sensible for few vertices."""
    nv = graph.num_vertices
    edges = [(graph.vertex_of[a], graph.vertex_of[b]) for a, b in graph.edges()]
    best = None
    for perm in permutations(range(nv)):
        key = tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
        if best is None or key < best:
            best = key
    return best


# -- weight bounds report -----------------------------------------------------


@dataclass
class GraphBoundRow:
    degree: int
    weight: GlnWeight
    degree_ok: bool       # deg p <= n + 2
    l1_norm: int
    l1_marking_ok: bool   # l1 <= 2^(2n), forced by the marking count
    l1_sharp_ok: bool     # l1 <= 2^n, reported but not asserted


@dataclass
class BoundsReport:
    n_max: int
    rows: list
    counts_per_degree: dict
    degree_violations: list
    sharp_l1_exceedances: list
    corollary_counts: dict  # degree -> {"ribbon": {g: c}, "abstract": {g: c}, "bound": {g: m}}


def weight_bounds_report(n_max: int) -> BoundsReport:
    """Exhaustive degree/norm bounds for all enumerated graphs.

    The polynomial degree bound deg <= n + 2 and the marking-count norm bound
    l1 <= 2^(2n) are hard; the sharper l1 <= 2^n is recorded per graph without
    being enforced, since cancellations are what would have to achieve it.
    """
    graphs = enumerate_trivalent(n_max)
    rows = []
    counts: dict[int, int] = {}
    degree_violations = []
    sharp = []
    genus_counts: dict[int, dict[int, int]] = {}
    abstract_reps: dict[int, dict[int, set]] = {}
    for idx, graph in enumerate(graphs):
        n = graph.degree
        counts[n] = counts.get(n, 0) + 1
        w = weight_gln(graph)
        row = GraphBoundRow(
            degree=n,
            weight=w,
            degree_ok=w.degree() <= n + 2,
            l1_norm=w.l1_norm(),
            l1_marking_ok=w.l1_norm() <= 2 ** (2 * n),
            l1_sharp_ok=w.l1_norm() <= 2 ** n,
        )
        rows.append(row)
        if not row.degree_ok:
            degree_violations.append(idx)
        if not row.l1_sharp_ok:
            sharp.append(idx)
        surf = classify_marking(graph, [0] * graph.num_vertices)
        genus_counts.setdefault(n, {})
        genus_counts[n][surf.genus] = genus_counts[n].get(surf.genus, 0) + 1
        if n <= 2:
            abstract_reps.setdefault(n, {}).setdefault(surf.genus, set()).add(
                underlying_multigraph_key(graph))
    corollary = {}
    for n, per_genus in genus_counts.items():
        entry = {"ribbon": dict(sorted(per_genus.items()))}
        if n in abstract_reps:
            entry["abstract"] = {g: len(s) for g, s in sorted(abstract_reps[n].items())}
        if 3 * n <= MAX_MAP_EDGES:
            entry["bound"] = {g: 12 * n * count_rooted_maps(g, 3 * n)
                              for g in per_genus}
        corollary[n] = entry
    return BoundsReport(n_max, rows, counts, degree_violations, sharp, corollary)


# -- rooted maps ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _rooted_map_counts(n: int) -> dict:
    """Rooted maps with n edges, by genus, via the dart-permutation model.

    With the edge involution fixed to (0 1)(2 3)..., every rotation in S_2n is
    tried; transitive pairs are binned by genus through
    cycles(sigma) - n + cycles(sigma o alpha) = 2 - 2g.  The labeled total
    (restored by the (2n-1)!! involution choices) divided by (2n-1)! must be
    an exact integer per genus.
    """
    if n == 0:
        return {0: 1}
    nd = 2 * n
    alpha = tuple(i ^ 1 for i in range(nd))
    raw: dict[int, int] = {}
    for sigma in permutations(range(nd)):
        seen = [False] * nd
        seen[0] = True
        stack = [0]
        reached = 1
        while stack:
            x = stack.pop()
            for y in (sigma[x], alpha[x]):
                if not seen[y]:
                    seen[y] = True
                    reached += 1
                    stack.append(y)
        if reached != nd:
            continue
        faces = _cycle_count([sigma[x ^ 1] for x in range(nd)])
        chi = _cycle_count(sigma) - n + faces
        if (2 - chi) % 2:
            raise ConsistencyError("odd Euler defect in the dart model")
        raw[(2 - chi) // 2] = raw.get((2 - chi) // 2, 0) + 1
    double_fact = 1
    for k in range(1, nd, 2):
        double_fact *= k
    out = {}
    for g, count in raw.items():
        value = Fraction(count * double_fact, factorial(nd - 1))
        if value.denominator != 1:
            raise ConsistencyError(
                f"rooted-map count for genus {g} is not an integer: {value}")
        out[g] = int(value)
    return out


def count_rooted_maps(g: int, n: int) -> int:
    """Number of rooted maps with n edges on the closed oriented genus-g
    surface, by brute force (n <= 5)."""
    if g < 0 or n < 0:
        raise ValueError("genus and edge count must be >= 0")
    if n > MAX_MAP_EDGES:
        raise ValueError(f"brute-force map counting is limited to n <= {MAX_MAP_EDGES}")
    return _rooted_map_counts(n).get(g, 0)


def rooted_map_table(n: int) -> dict:
    """All genus counts for n edges."""
    if n > MAX_MAP_EDGES:
        raise ValueError(f"brute-force map counting is limited to n <= {MAX_MAP_EDGES}")
    return dict(sorted(_rooted_map_counts(n).items()))
