"""Decorated graphs for real residue configurations with a single positive residue.

Vertices are the poles; every pole j carries 2*b_j - 2 unoriented half-edges;
faces are the zeros.  Around a vertex the half-edges sit in the gaps between
consecutive edge ends: a gap between two edges of the same orientation (both
incoming or both outgoing) holds an even number of half-edges, a gap between
opposite orientations an odd number.

* zero graphs: trees with p - 1 edges oriented toward the positive pole P.
  They index the zeros of the fiber's translation structure; there are
  f(a1 + a2, p) of them.
* saddle graphs: p edges and a single loop T, V1..Vr, B, U1..Us whose edges
  run from the bottom B up to the top T along both arcs; T is P or carries the
  tree containing P; every other edge points to the side containing P.  Each
  saddle graph is a saddle connection of the fiber, and deleting either loop
  edge at B gives the zero graphs at its two ends.

Rotations are stored per vertex as tuples of (edge id, end, gap) where end is
0 at the tail and 1 at the head, and gap counts the half-edges between this
edge end and the next one counter-clockwise.  Since half-edges carry no
labels, a graph is determined by its edge list and these rotations; the
canonical key minimises over the cyclic starting point at each vertex and
over relabelings of parallel edges.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Sequence

from .core import ResidueForm, ResourceLimit, Stratum

MAX_POLES_MIXED = 4
MAX_ORDER_MIXED = 6
MAX_POLES_SIMPLE = 7

Rotation = tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class DecoratedGraph:
    pole_orders: tuple[int, ...]
    positive_pole: int  # 0-based
    edges: tuple[tuple[int, int], ...]  # (tail, head)
    rotation: tuple[Rotation, ...]
    corner_faces: tuple[tuple[int, ...], ...]  # zero label of the corner after each edge end
    key: tuple = field(compare=True, repr=False)

    @property
    def p(self) -> int:
        return len(self.pole_orders)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def half_edges(self, v: int) -> int:
        return sum(g for _, _, g in self.rotation[v])

    def faces(self) -> list[tuple[int, int]]:
        """(zero label, weight) for every face, weight = edge sides + half-edges inside."""
        return [(lab, w) for lab, w, _ in trace_faces(self.edges, self.rotation, self.corner_faces)]

    def euler_characteristic(self) -> int:
        return self.p - self.num_edges + len(self.faces())


@dataclass(frozen=True)
class SaddleGraph:
    graph: DecoratedGraph
    loop: tuple[int, ...]  # loop vertices in cyclic order, starting at the top
    top: int
    bottom: int
    length_form: ResidueForm
    endpoints: tuple[DecoratedGraph, DecoratedGraph]


# ---------------------------------------------------------------------------
# bounds

def check_bounds(s: Stratum, max_poles: int | None = None, max_order: int | None = None) -> None:
    s.require_two_zeros()
    if s.p < 2:
        raise ValueError("real graphs need at least two poles")
    a = s.a1 + s.a2
    if all(b == 1 for b in s.pole_orders):
        limit = max_poles if max_poles is not None else MAX_POLES_SIMPLE
        if s.p > limit:
            raise ResourceLimit(f"{s}: {s.p} simple poles exceeds the bound {limit}")
        return
    pl = max_poles if max_poles is not None else MAX_POLES_MIXED
    ol = max_order if max_order is not None else MAX_ORDER_MIXED
    if s.p > pl or a > ol:
        raise ResourceLimit(f"{s}: needs p <= {pl} and a1 + a2 <= {ol}")


# ---------------------------------------------------------------------------
# underlying graphs

def labeled_trees(n: int) -> Iterable[tuple[tuple[int, int], ...]]:
    """All labeled trees on n vertices (via Pruefer sequences), as sorted edge tuples."""
    if n == 1:
        yield ()
        return
    if n == 2:
        yield ((0, 1),)
        return
    for seq in product(range(n), repeat=n - 2):
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(v for v in range(n) if degree[v] == 1)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[leaf] -= 1
            degree[x] -= 1
        u, w = [v for v in range(n) if degree[v] == 1]
        edges.append((u, w))
        yield tuple(sorted(edges))


def unicyclic_graphs(n: int) -> list[tuple[tuple[int, int], ...]]:
    """Connected multigraphs on n labeled vertices with n edges, no self-loops."""
    seen = set()
    for tree in labeled_trees(n):
        for u in range(n):
            for w in range(u + 1, n):
                g = tuple(sorted(tree + ((u, w),)))
                seen.add(g)
    return sorted(seen)


def _components_without(n: int, edges: Sequence[tuple[int, int]], removed: set[int]) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, (u, w) in enumerate(edges):
        if i not in removed:
            parent[find(u)] = find(w)
    return [find(v) for v in range(n)]


def find_cycle(n: int, edges: Sequence[tuple[int, int]]) -> tuple[list[int], list[int]]:
    """Vertices (in cyclic order) and edge ids of the unique cycle of a unicyclic multigraph."""
    for i, e in enumerate(edges):
        for j in range(i + 1, len(edges)):
            if edges[j] == e:
                return [e[0], e[1]], [i, j]
    # peel leaves until only the cycle remains
    deg = [0] * n
    for u, w in edges:
        deg[u] += 1
        deg[w] += 1
    alive = [True] * n
    stack = [v for v in range(n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        alive[v] = False
        for u, w in edges:
            if v in (u, w):
                o = w if u == v else u
                if alive[o]:
                    deg[o] -= 1
                    if deg[o] == 1:
                        stack.append(o)
    cyc_edges = [i for i, (u, w) in enumerate(edges) if alive[u] and alive[w]]
    start = edges[cyc_edges[0]][0]
    order, used, cur = [start], {cyc_edges[0]}, edges[cyc_edges[0]][1]
    eorder = [cyc_edges[0]]
    while cur != start:
        order.append(cur)
        for i in cyc_edges:
            if i not in used and cur in edges[i]:
                used.add(i)
                eorder.append(i)
                cur = edges[i][1] if edges[i][0] == cur else edges[i][0]
                break
    return order, eorder


# ---------------------------------------------------------------------------
# local configurations and faces

def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def local_rotations(darts: Sequence[tuple[int, int]], half_edges: int) -> list[Rotation]:
    """Every cyclic arrangement of the edge ends at one vertex compatible with the parity rule.

    ``darts`` are (edge id, end) pairs; end 1 is an incoming edge, end 0 outgoing.
    """
    if not darts:
        return []
    first, rest = darts[0], list(darts[1:])
    out = []
    for perm in permutations(rest):
        order = (first,) + perm
        d = len(order)
        forced = [int(order[i][1] != order[(i + 1) % d][1]) for i in range(d)]
        spare = half_edges - sum(forced)
        if spare < 0 or spare % 2:
            continue
        for extra in _compositions(spare // 2, d):
            out.append(tuple((e, end, r + 2 * x) for (e, end), r, x in zip(order, forced, extra)))
    return out


def trace_faces(edges, rotation, corner_faces=None):
    """Faces of a rotation system as (label, weight, corners) with corners = [(vertex, index)]."""
    pos = {}
    for v, rot in enumerate(rotation):
        for i, (e, end, _) in enumerate(rot):
            pos[(e, end)] = (v, i)
    seen = set()
    faces = []
    for start in sorted(pos):
        if start in seen:
            continue
        weight, corners, d = 0, [], start
        while d not in seen:
            seen.add(d)
            w, i = pos[(d[0], 1 - d[1])]
            weight += 1 + rotation[w][i][2]
            corners.append((w, i))
            nxt = rotation[w][(i + 1) % len(rotation[w])]
            d = (nxt[0], nxt[1])
        label = corner_faces[corners[0][0]][corners[0][1]] if corner_faces else 0
        faces.append((label, weight, corners))
    return faces


def _min_rotation(seq: Sequence) -> tuple:
    n = len(seq)
    if n == 0:
        return ()
    return min(tuple(seq[i:]) + tuple(seq[:i]) for i in range(n))


def canonical_key(edges, rotation, corner_faces) -> tuple:
    """Lexicographically minimal serialization over cyclic starts and parallel-edge relabelings."""
    order = sorted(range(len(edges)), key=lambda i: edges[i])
    groups: dict = {}
    for i in order:
        groups.setdefault(edges[i], []).append(i)
    group_lists = [groups[k] for k in sorted(groups)]
    best = None
    for choice in product(*(permutations(g) for g in group_lists)):
        relabel = {}
        nid = 0
        for g in choice:
            for old in g:
                relabel[old] = nid
                nid += 1
        ser = tuple(
            _min_rotation(
                [(relabel[e], end, gap, corner_faces[v][i]) for i, (e, end, gap) in enumerate(rot)]
            )
            for v, rot in enumerate(rotation)
        )
        if best is None or ser < best:
            best = ser
    return (tuple(sorted(edges)), best)


def _darts_at(n: int, edges) -> list[list[tuple[int, int]]]:
    darts: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for e, (t, h) in enumerate(edges):
        darts[t].append((e, 0))
        darts[h].append((e, 1))
    return darts


def _make_graph(s: Stratum, P: int, edges, rotation, corner_faces) -> DecoratedGraph:
    return DecoratedGraph(
        s.pole_orders, P, tuple(edges), tuple(rotation), tuple(corner_faces),
        canonical_key(edges, rotation, corner_faces),
    )


# ---------------------------------------------------------------------------
# zero graphs

def _orient_toward(n: int, undirected, P: int) -> list[tuple[int, int]]:
    """Orient every edge of a tree toward P."""
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, w in undirected:
        adj[u].append(w)
        adj[w].append(u)
    parent = {P: None}
    stack = [P]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in parent:
                parent[w] = v
                stack.append(w)
    return sorted((v, parent[v]) for v in range(n) if parent[v] is not None)


def _trees_for(s: Stratum, P: int, undirected_trees) -> list[DecoratedGraph]:
    n, b = s.p, s.pole_orders
    out = []
    for und in undirected_trees:
        edges = _orient_toward(n, und, P)
        darts = _darts_at(n, edges)
        local = [local_rotations(darts[v], 2 * b[v] - 2) for v in range(n)]
        if any(not opts for opts in local):
            continue
        for rot in product(*local):
            faces = [tuple(0 for _ in r) for r in rot]
            out.append(_make_graph(s, P, edges, rot, faces))
    return out


def _run_chunks(fn, s, P, items, jobs):
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return fn(s, P, items)
    size = -(-len(items) // (jobs * 4))
    chunks = [items[i:i + size] for i in range(0, len(items), size)]
    out = []
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        for part in ex.map(fn, [s] * len(chunks), [P] * len(chunks), chunks):
            out.extend(part)
    return out


def enumerate_zero_graphs(
    s: Stratum, positive_pole: int = 0, *, jobs: int = 1,
    max_poles: int | None = None, max_order: int | None = None,
) -> list[DecoratedGraph]:
    """All decorated trees for the merged zero of order a1 + a2; sorted by canonical key."""
    check_bounds(s, max_poles, max_order)
    _check_pole(s, positive_pole)
    graphs = _run_chunks(_trees_for, s, positive_pole, labeled_trees(s.p), jobs)
    uniq = {g.key: g for g in graphs}
    return [uniq[k] for k in sorted(uniq)]


def _check_pole(s: Stratum, P: int) -> None:
    if not 0 <= P < s.p:
        raise IndexError(f"positive pole {P + 1} outside 1..{s.p}")


# ---------------------------------------------------------------------------
# saddle graphs

def delete_edge(g: DecoratedGraph, e: int) -> DecoratedGraph:
    """Remove edge e, merging the gaps on both sides of each of its ends; faces relabel to 0."""
    rot = []
    for v, r in enumerate(g.rotation):
        r = list(r)
        i = 0
        while i < len(r):
            if r[i][0] == e:
                prev = (i - 1) % len(r)
                pe, pend, pg = r[prev]
                r[prev] = (pe, pend, pg + r[i][2])
                del r[i]
            else:
                i += 1
        rot.append(r)
    keep = [i for i in range(len(g.edges)) if i != e]
    remap = {old: new for new, old in enumerate(keep)}
    edges = [g.edges[i] for i in keep]
    rot = [tuple((remap[x], end, gap) for x, end, gap in r) for r in rot]
    faces = [tuple(0 for _ in r) for r in rot]
    return DecoratedGraph(
        g.pole_orders, g.positive_pole, tuple(edges), tuple(rot), tuple(faces),
        canonical_key(edges, rot, faces),
    )


def _orient_unicyclic(n, und, P, cycle, cyc_edges, B):
    """Orientation for bottom vertex B, or None if B is the top; returns (edges, top, loop order)."""
    comp = _components_without(n, und, set(cyc_edges))
    top = next(v for v in cycle if comp[v] == comp[P])
    if B == top:
        return None
    L = len(cycle)
    ti, bi = cycle.index(top), cycle.index(B)
    edges = list(und)
    # loop edges: walk from B to T in both directions, orienting along the walk
    for step in (1, -1):
        i = bi
        while i != ti:
            j = (i + step) % L
            # the cycle edge between cycle[i] and cycle[j]; edge k joins cycle[k], cycle[k+1]
            k = i if step == 1 else j
            edges[cyc_edges[k]] = (cycle[i], cycle[j])
            i = j
    for idx, (u, w) in enumerate(und):
        if idx in cyc_edges:
            continue
        parts = _components_without(n, und, {idx})
        edges[idx] = (u, w) if parts[w] == parts[P] else (w, u)
    loop = tuple(cycle[(ti + k) % L] for k in range(L))
    return edges, top, loop


def _saddles_for(s: Stratum, P: int, graphs) -> list[SaddleGraph]:
    n, b = s.p, s.pole_orders
    want = sorted([2 * s.a1 + 2, 2 * s.a2 + 2])
    out = []
    for und in graphs:
        cycle, cyc_edges = find_cycle(n, und)
        for B in cycle:
            oriented = _orient_unicyclic(n, und, P, cycle, cyc_edges, B)
            if oriented is None:
                continue
            edges, top, loop = oriented
            darts = _darts_at(n, edges)
            local = [local_rotations(darts[v], 2 * b[v] - 2) for v in range(n)]
            if any(not opts for opts in local):
                continue
            bottom_loop = [e for e in cyc_edges if edges[e][0] == B]
            for rot in product(*local):
                faces = trace_faces(edges, rot)
                if len(faces) != 2 or sorted(w for _, w, _ in faces) != want:
                    continue
                for labels in _face_labelings(s, faces):
                    cf = [[0] * len(r) for r in rot]
                    for (_, _, corners), lab in zip(faces, labels):
                        for v, i in corners:
                            cf[v][i] = lab
                    g = _make_graph(s, P, edges, rot, [tuple(x) for x in cf])
                    ends = tuple(delete_edge(g, e) for e in bottom_loop)
                    out.append(SaddleGraph(g, loop, top, B, _bottom_form(n, edges, cyc_edges, B), ends))
    return out


def _face_labelings(s: Stratum, faces):
    w = [f[1] for f in faces]
    targets = (2 * s.a1 + 2, 2 * s.a2 + 2)
    for labels in ((0, 1), (1, 0)):
        if all(w[i] == targets[labels[i]] for i in range(2)):
            yield labels


def _bottom_form(n, edges, cyc_edges, B) -> ResidueForm:
    comp = _components_without(n, edges, set(cyc_edges))
    return ResidueForm.indicator(n, [v for v in range(n) if comp[v] == comp[B]])


def enumerate_saddle_graphs(
    s: Stratum, positive_pole: int = 0, *, jobs: int = 1,
    max_poles: int | None = None, max_order: int | None = None,
) -> list[SaddleGraph]:
    check_bounds(s, max_poles, max_order)
    _check_pole(s, positive_pole)
    found = _run_chunks(_saddles_for, s, positive_pole, unicyclic_graphs(s.p), jobs)
    uniq = {sg.graph.key: sg for sg in found}
    return [uniq[k] for k in sorted(uniq)]


# ---------------------------------------------------------------------------
# adjacency

def adjacency_components(
    s: Stratum, positive_pole: int = 0, *, jobs: int = 1,
    max_poles: int | None = None, max_order: int | None = None,
    zero_graphs=None, saddle_graphs=None,
) -> int:
    """Connected components of the graph (zero graphs, saddle graphs joining their two ends)."""
    zs = zero_graphs if zero_graphs is not None else enumerate_zero_graphs(
        s, positive_pole, jobs=jobs, max_poles=max_poles, max_order=max_order)
    ss = saddle_graphs if saddle_graphs is not None else enumerate_saddle_graphs(
        s, positive_pole, jobs=jobs, max_poles=max_poles, max_order=max_order)
    index = {g.key: i for i, g in enumerate(zs)}
    parent = list(range(len(zs)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for sg in ss:
        u, w = (index[e.key] for e in sg.endpoints)
        parent[find(u)] = find(w)
    return len({find(i) for i in range(len(zs))})


def endpoint_closure_violations(zero_graphs, saddle_graphs) -> list[SaddleGraph]:
    keys = {g.key for g in zero_graphs}
    return [sg for sg in saddle_graphs if any(e.key not in keys for e in sg.endpoints)]


# ---------------------------------------------------------------------------
# export

def export_dot(graphs: Iterable[DecoratedGraph | SaddleGraph], title: str = "decorated graphs") -> str:
    """Deterministic Graphviz text: one digraph block per graph, half-edges as point stubs."""
    lines = [f"// {title}", "// vertices are poles (label: index, order); faces are zeros"]
    for n, item in enumerate(graphs):
        g = item.graph if isinstance(item, SaddleGraph) else item
        kind = "saddle" if isinstance(item, SaddleGraph) else "zero"
        lines.append(f"digraph {kind}_{n} {{")
        lines.append(f"  // positive pole {g.positive_pole + 1}")
        if isinstance(item, SaddleGraph):
            lines.append(
                f"  // loop {'-'.join(str(v + 1) for v in item.loop)}; top {item.top + 1}; "
                f"bottom {item.bottom + 1}; length {item.length_form.expression()}"
            )
        for lab, w in g.faces():
            lines.append(f"  // face z{lab + 1}: weight {w}")
        for v in range(g.p):
            lines.append(f'  v{v + 1} [label="{v + 1} (b={g.pole_orders[v]})"];')
        for e, (t, h) in enumerate(g.edges):
            lines.append(f"  v{t + 1} -> v{h + 1} [label=\"e{e}\"];")
        for v, rot in enumerate(g.rotation):
            cyc = " ".join(f"e{e}{'in' if end else 'out'}+{gap}h" for e, end, gap in rot)
            lines.append(f"  // rotation at v{v + 1}: {cyc}")
            for k in range(sum(gap for _, _, gap in rot)):
                lines.append(f"  h{v + 1}_{k} [shape=point]; v{v + 1} -> h{v + 1}_{k} [dir=none];")
        lines.append("}")
    return "\n".join(lines) + "\n"
