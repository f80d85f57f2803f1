"""Configuration graphs on the six Kummer lines.

A configuration of curve conditions is encoded as a d-regular looped
multigraph on vertices 1..6: an edge {i, j} demands passage through
the intersection point q_ij, a loop at i demands tangency to the line
l_i, and a loop contributes 2 to the valence of its vertex.  The class
invariant is the pair (k, 3d - k) with k the number of non-loop edges.

The discriminant attached to a class is

    delta = 2 d^2 + 7 - 2 k   when d + k is odd,
    delta = 2 d^2 + 8 - 2 k   when d + k is even.

Classes are enumerated up to the S_6 relabeling of the lines.  Simple
edges suffice for d <= 3; multi-edges are enabled by a flag for the
best-effort d >= 4 range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations
from math import isqrt

VERTICES = (1, 2, 3, 4, 5, 6)
ALL_EDGES = tuple((i, j) for i in VERTICES for j in VERTICES if i < j)


class GraphError(Exception):
    pass


@dataclass(frozen=True)
class ConfigGraph:
    """A d-regular looped multigraph on the six line vertices."""

    degree: int
    edges: tuple[tuple[int, int], ...]  # sorted pairs, repeats = multi-edges
    loops: tuple[int, ...]  # loop vertices, repeats = multiple loops

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))
        object.__setattr__(self, "loops", tuple(sorted(self.loops)))
        for v in VERTICES:
            if self.valence(v) != self.degree:
                raise GraphError(f"vertex {v} has valence {self.valence(v)} != {self.degree}")

    def valence(self, v: int) -> int:
        return sum(1 for e in self.edges for w in e if w == v) + 2 * self.loops.count(v)

    @property
    def k(self) -> int:
        return len(self.edges)

    def tuple_of(self) -> tuple[int, int]:
        return (self.k, 3 * self.degree - self.k)

    def relabel(self, perm: dict[int, int]) -> "ConfigGraph":
        return ConfigGraph(
            self.degree,
            tuple(tuple(sorted((perm[i], perm[j]))) for i, j in self.edges),
            tuple(perm[v] for v in self.loops),
        )

    def canonical_form(self) -> tuple:
        best = None
        for p in permutations(VERTICES):
            perm = dict(zip(VERTICES, p))
            cand = (
                tuple(sorted(tuple(sorted((perm[i], perm[j]))) for i, j in self.edges)),
                tuple(sorted(perm[v] for v in self.loops)),
            )
            if best is None or cand < best:
                best = cand
        return best

    def is_connected(self) -> bool:
        adj: dict[int, set[int]] = {v: set() for v in VERTICES}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        seen = {1}
        stack = [1]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(VERTICES)

    def is_bipartite(self) -> bool:
        if self.loops:
            return False
        color: dict[int, int] = {}
        for start in VERTICES:
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            adj: dict[int, list[int]] = {v: [] for v in VERTICES}
            for i, j in self.edges:
                adj[i].append(j)
                adj[j].append(i)
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in color:
                        color[w] = 1 - color[v]
                        stack.append(w)
                    elif color[w] == color[v]:
                        return False
        return True


def delta_of(d: int, k: int) -> int:
    """The real-multiplication discriminant attached to a (d, k) class."""
    if (d + k) % 2 == 1:
        return 2 * d * d + 7 - 2 * k
    return 2 * d * d + 8 - 2 * k


@dataclass
class ConfigClass:
    """An isomorphism class of configuration graphs."""

    label: str
    representative: ConfigGraph
    count: int  # labeled graphs in the class
    delta: int = field(init=False)
    admissible: bool = field(init=False)
    pipeline_supported: bool = field(init=False)

    def __post_init__(self):
        d, k = self.representative.degree, self.representative.k
        self.delta = delta_of(d, k)
        # at least 3 base points, and no more conditions than the curve
        # system can absorb with one to spare (the modular equation)
        self.admissible = 3 <= k <= (d + 1) * (d + 2) // 2 - 1
        self.pipeline_supported = self.admissible and d in (2, 3)

    def points(self) -> tuple[tuple[int, int], ...]:
        return self.representative.edges

    def tangency_lines(self) -> tuple[int, ...]:
        return self.representative.loops


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def enumerate_graphs(d: int, allow_multi_edges: bool = False):
    """All labeled d-regular looped multigraphs on the six vertices."""
    max_loops = d // 2
    if d >= 4 and not allow_multi_edges:
        raise GraphError("degree >= 4 requires multi-edges; pass allow_multi_edges=True")
    max_mult = d if allow_multi_edges else 1
    results: list[ConfigGraph] = []

    loop_choices = [
        loops
        for loops in _loop_assignments(max_loops)
    ]
    for loops in loop_choices:
        residual = {v: d - 2 * loops.count(v) for v in VERTICES}
        if any(r < 0 for r in residual.values()):
            continue
        for edges in _edge_assignments(residual, max_mult):
            results.append(ConfigGraph(d, edges, loops))
    return results


def _loop_assignments(max_loops: int):
    options = range(max_loops + 1)
    for counts in _product6(options):
        loops = []
        for v, c in zip(VERTICES, counts):
            loops.extend([v] * c)
        yield tuple(loops)


def _product6(options):
    from itertools import product

    return product(options, repeat=6)


def _edge_assignments(residual: dict[int, int], max_mult: int):
    edges_order = ALL_EDGES
    target = dict(residual)

    def rec(idx: int, remaining: dict[int, int], chosen: list[tuple[int, int]]):
        if idx == len(edges_order):
            if all(r == 0 for r in remaining.values()):
                yield tuple(chosen)
            return
        i, j = edges_order[idx]
        # prune: vertices with no later incident edges must be settled
        cap = min(remaining[i], remaining[j], max_mult)
        # feasibility prune: remaining degree at i must be coverable by
        # later edges incident to i
        for mult in range(cap + 1):
            remaining[i] -= mult
            remaining[j] -= mult
            later_i = sum(
                max_mult for (p, q) in edges_order[idx + 1 :] if i in (p, q)
            )
            later_j = sum(
                max_mult for (p, q) in edges_order[idx + 1 :] if j in (p, q)
            )
            if remaining[i] <= later_i and remaining[j] <= later_j:
                chosen.extend([(i, j)] * mult)
                yield from rec(idx + 1, remaining, chosen)
                del chosen[len(chosen) - mult :]
            remaining[i] += mult
            remaining[j] += mult

    yield from rec(0, target, [])


def enumerate_classes(d: int, allow_multi_edges: bool = False) -> list[ConfigClass]:
    """Isomorphism classes of d-regular configuration graphs, labeled
    "(k, 3d-k)" with an a/b/... suffix when a tuple admits several
    classes (bipartite first, then connected first)."""
    classes: dict[tuple, list] = {}
    for g in enumerate_graphs(d, allow_multi_edges):
        form = g.canonical_form()
        if form in classes:
            classes[form][1] += 1
        else:
            classes[form] = [g, 1]
    grouped: dict[tuple[int, int], list[tuple[ConfigGraph, int]]] = {}
    for g, count in classes.values():
        grouped.setdefault(g.tuple_of(), []).append((g, count))
    out: list[ConfigClass] = []
    for tup in sorted(grouped, key=lambda t: (-t[0], t[1])):
        group = grouped[tup]
        group.sort(
            key=lambda gc: (
                not gc[0].is_bipartite(),
                not gc[0].is_connected(),
                gc[0].canonical_form(),
            )
        )
        for idx, (g, count) in enumerate(group):
            label = f"({tup[0]},{tup[1]})"
            if len(group) > 1:
                label += chr(ord("a") + idx)
            out.append(ConfigClass(label, g, count))
    return out


def class_by_label(d: int, label: str, allow_multi_edges: bool = False) -> ConfigClass:
    for c in enumerate_classes(d, allow_multi_edges):
        if c.label == label:
            return c
    raise GraphError(f"no degree-{d} class labeled {label!r}")


def vertex_covers(g: ConfigGraph, size: int) -> list[tuple[int, ...]]:
    """Vertex multisets of the given size covering every non-loop edge.

    Repeated vertices are permitted (a line may appear multiply in the
    curve product); covers are returned sorted."""
    out = []
    for cand in combinations_with_replacement(VERTICES, size):
        support = set(cand)
        if all(i in support or j in support for i, j in g.edges):
            out.append(cand)
    return out
