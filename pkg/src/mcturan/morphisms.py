"""Homomorphisms, isomorphisms, copies and chromatic numbers of k-graphs.

Everything here runs on one backtracking search (``_search``): pattern
vertices are assigned most-constrained first (smallest live domain, then
highest degree, then lowest index) and every assignment forward-checks the
domains of pattern neighbours against the host shadow adjacency. Partial
edges are checked against the set of sub-edges of the host, so a dead
branch is cut as soon as any partially-mapped pattern edge cannot extend.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .hypercore import CapExceeded, Edge, Hypergraph, HypergraphError, UniformityMismatch, shadow_graph

AUTOMORPHISM_CAP = 12
CHROMATIC_CAP = 16


@dataclass(frozen=True)
class Embedding:
    source: Hypergraph
    target: Hypergraph
    map: tuple[int, ...]

    def image(self, edge: Iterable[int]) -> Edge:
        return tuple(sorted(self.map[x] for x in edge))

    def is_homomorphism(self) -> bool:
        if len(self.map) != self.source.n:
            return False
        return all(self.image(e) in self.target.edge_set for e in self.source.edges)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def to_dict(self) -> dict:
        return {"map": list(self.map)}


@dataclass(frozen=True)
class Copy:
    """A set of host edges forming a copy of some pattern."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(tuple(sorted(e)) for e in self.edges)))

    @cached_property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted({x for e in self.edges for x in e}))

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edges

    def as_hypergraph(self, k: int) -> Hypergraph:
        """The copy relabelled onto ``0..|support|-1``."""
        label = {x: i for i, x in enumerate(self.support)}
        return Hypergraph(k, len(label), tuple(tuple(label[x] for x in e) for e in self.edges))


def _same_k(A: Hypergraph, B: Hypergraph):
    if A.k != B.k:
        raise UniformityMismatch(f"uniformity mismatch: {A.k} vs {B.k}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class HostIndex:
    """Mutable search index over a host k-graph (edges can be added and removed)."""

    def __init__(self, k: int, n: int, edges: Iterable[Edge] = ()):
        self.k = k
        self.n = n
        self.edges: set[Edge] = set()
        self.sub: Counter = Counter()
        self.pair: Counter = Counter()
        self.adj = [0] * n
        self.deg = [0] * n
        for e in edges:
            self.add(e)

    @classmethod
    def of(cls, H: Hypergraph) -> "HostIndex":
        return cls(H.k, H.n, H.edges)

    def add(self, e: Edge):
        self.edges.add(e)
        for r in range(1, self.k):
            for s in itertools.combinations(e, r):
                self.sub[s] += 1
        for x in e:
            self.deg[x] += 1
        for a, b in itertools.combinations(e, 2):
            self.pair[a, b] += 1
            if self.pair[a, b] == 1:
                self.adj[a] |= 1 << b
                self.adj[b] |= 1 << a

    def remove(self, e: Edge):
        self.edges.remove(e)
        for r in range(1, self.k):
            for s in itertools.combinations(e, r):
                self.sub[s] -= 1
                if not self.sub[s]:
                    del self.sub[s]
        for x in e:
            self.deg[x] -= 1
        for a, b in itertools.combinations(e, 2):
            self.pair[a, b] -= 1
            if not self.pair[a, b]:
                del self.pair[a, b]
                self.adj[a] &= ~(1 << b)
                self.adj[b] &= ~(1 << a)


def _search(
    P: Hypergraph,
    host: HostIndex,
    injective: bool,
    seed: Mapping[int, int] | None = None,
    colors: Mapping[Edge, int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every vertex map of P into the host sending edges onto edges.

    ``injective`` asks for injective maps. ``seed`` pre-assigns some pattern
    vertices. With ``colors`` only maps whose edge images carry pairwise
    distinct colours are produced (rainbow copies).
    """
    k, n = P.k, P.n
    if k != host.k:
        raise UniformityMismatch(f"uniformity mismatch: {k} vs {host.k}")
    hn = host.n
    inc = P.incidence
    pdeg = P.degrees
    padj = [0] * n
    for e in P.edges:
        for a, b in itertools.combinations(e, 2):
            padj[a] |= 1 << b
            padj[b] |= 1 << a
    full = (1 << hn) - 1
    dom = [0] * n
    for v in range(n):
        if pdeg[v] == 0:
            dom[v] = full
        else:
            need = pdeg[v] if injective else 1
            dom[v] = sum(1 << x for x in range(hn) if host.deg[x] >= need)
    mapping = [-1] * n
    used_colors: set[int] = set()
    edges = host.edges
    sub = host.sub
    adj = host.adj

    def place(v: int, x: int) -> list[int] | None:
        mapping[v] = x
        fresh: list[int] = []
        for e in inc[v]:
            imgs = [mapping[u] for u in e if mapping[u] >= 0]
            t = tuple(sorted(imgs))
            if len(set(t)) != len(t):
                break
            if len(t) == k:
                if t not in edges:
                    break
                if colors is not None:
                    c = colors[t]
                    if c in used_colors or c in fresh:
                        break
                    fresh.append(c)
            elif t not in sub:
                break
        else:
            used_colors.update(fresh)
            return fresh
        mapping[v] = -1
        return None

    def unplace(v: int, fresh: list[int]):
        used_colors.difference_update(fresh)
        mapping[v] = -1

    def narrowed(v: int, x: int, dom: list[int]) -> list[int] | None:
        new = dom[:]
        new[v] = 1 << x
        keep = ~(1 << x)
        nb = padj[v]
        for u in range(n):
            if mapping[u] >= 0:
                continue
            d = new[u]
            if (nb >> u) & 1:
                d &= adj[x]
            if injective:
                d &= keep
            if not d:
                return None
            new[u] = d
        return new

    if seed:
        for v, x in seed.items():
            if not (dom[v] >> x) & 1 or (injective and x in mapping):
                return
            if place(v, x) is None:
                return
            nd = narrowed(v, x, dom)
            if nd is None:
                return
            dom = nd

    def rec(dom: list[int], left: int) -> Iterator[tuple[int, ...]]:
        if left == 0:
            yield tuple(mapping)
            return
        best = None
        for u in range(n):
            if mapping[u] < 0:
                key = (bin(dom[u]).count("1"), -pdeg[u], u)
                if best is None or key < best:
                    best = key
        v = best[2]
        for x in _bits(dom[v]):
            fresh = place(v, x)
            if fresh is None:
                continue
            nd = narrowed(v, x, dom)
            if nd is not None:
                yield from rec(nd, left - 1)
            unplace(v, fresh)

    yield from rec(dom, mapping.count(-1))


def find_homomorphism(G: Hypergraph, F: Hypergraph) -> Embedding | None:
    """Some map of V(G) to V(F) sending every edge of G onto an edge of F, or None."""
    _same_k(G, F)
    for m in _search(G, HostIndex.of(F), injective=False):
        return Embedding(G, F, m)
    return None


def has_homomorphism(G: Hypergraph, F: Hypergraph) -> bool:
    return find_homomorphism(G, F) is not None


def _invariant(H: Hypergraph):
    nbr = [Counter() for _ in range(H.n)]
    for e in H.edges:
        for x in e:
            for y in e:
                if x != y:
                    nbr[x][H.degrees[y]] += 1
    return (H.k, H.n, H.e, tuple(sorted((H.degrees[x], tuple(sorted(nbr[x].items()))) for x in range(H.n))))


def isomorphism(G: Hypergraph, F: Hypergraph) -> Embedding | None:
    _same_k(G, F)
    if _invariant(G) != _invariant(F):
        return None
    for m in _search(G, HostIndex.of(F), injective=True):
        return Embedding(G, F, m)
    return None


def is_isomorphic(G: Hypergraph, F: Hypergraph) -> bool:
    return isomorphism(G, F) is not None


def automorphisms(F: Hypergraph, cap: int = AUTOMORPHISM_CAP, limit: int | None = None) -> list[Embedding]:
    """The full automorphism group as vertex permutations, sorted lexicographically.

    Refused for more than ``cap`` vertices. ``limit`` aborts with CapExceeded
    once more than that many automorphisms have been found.
    """
    if F.n > cap:
        raise CapExceeded(f"automorphisms refused for {F.n} > {cap} vertices")
    out = []
    for m in _search(F, HostIndex.of(F), injective=True):
        out.append(m)
        if limit is not None and len(out) > limit:
            raise CapExceeded(f"more than {limit} automorphisms")
    out.sort()
    return [Embedding(F, F, m) for m in out]


def _reject_isolated(F: Hypergraph):
    iso = F.isolated_vertices()
    if iso:
        raise HypergraphError(f"pattern has isolated vertices {iso}; copies are identified by edge sets")


def injective_embeddings(F: Hypergraph, H: Hypergraph) -> Iterator[tuple[int, ...]]:
    _same_k(F, H)
    return _search(F, HostIndex.of(H), injective=True)


def _copy_of(P: Hypergraph, m: Sequence[int]) -> Copy:
    return Copy(tuple(tuple(sorted(m[x] for x in e)) for e in P.edges))


def enumerate_copies(F: Hypergraph, H: Hypergraph) -> list[Copy]:
    """All distinct copies of F in H (as edge sets), sorted canonically."""
    _same_k(F, H)
    _reject_isolated(F)
    seen = {_copy_of(F, m) for m in _search(F, HostIndex.of(H), injective=True)}
    return sorted(seen, key=lambda c: c.edges)


def _edge_seeds(F: Hypergraph, edge: Edge):
    for f in F.edges:
        for perm in itertools.permutations(edge):
            yield dict(zip(f, perm))


def copies_containing(F: Hypergraph, host: HostIndex, edge: Edge, colors=None) -> Iterator[Copy]:
    """Copies of F in the host that use ``edge`` (may repeat a copy)."""
    for seed in _edge_seeds(F, edge):
        for m in _search(F, host, injective=True, seed=seed, colors=colors):
            yield _copy_of(F, m)


def copies_through(F: Hypergraph, H: Hypergraph, edge: Iterable[int]) -> int:
    """Number of copies of F in H containing the given edge."""
    _same_k(F, H)
    _reject_isolated(F)
    e = tuple(sorted(edge))
    if e not in H.edge_set:
        raise HypergraphError(f"{e} is not an edge of the host")
    return len(set(copies_containing(F, HostIndex.of(H), e)))


def copies_per_edge(F: Hypergraph, H: Hypergraph) -> dict[Edge, int]:
    counts = {e: 0 for e in H.edges}
    for c in enumerate_copies(F, H):
        for e in c.edges:
            counts[e] += 1
    return counts


def contains_copy(F: Hypergraph, H: Hypergraph) -> bool:
    _same_k(F, H)
    for _ in _search(F, HostIndex.of(H), injective=True):
        return True
    return False


def rainbow_maps(G: Hypergraph, host: HostIndex, colors: Mapping[Edge, int], seed=None):
    return _search(G, host, injective=True, seed=seed, colors=colors)


# -- chromatic numbers -------------------------------------------------------


def _colorable(H: Hypergraph, c: int) -> list[int] | None:
    """A colouring with c colours and no monochromatic edge, or None."""
    n = H.n
    inc = H.incidence
    order = sorted(range(n), key=lambda x: (-H.degrees[x], x))
    col = [-1] * n

    def ok(x):
        for e in inc[x]:
            cx = col[x]
            if all(col[y] == cx for y in e):
                return False
        return True

    def rec(i, used):
        if i == n:
            return True
        x = order[i]
        for cx in range(min(used + 1, c)):
            col[x] = cx
            if ok(x) and rec(i + 1, max(used, cx + 1)):
                return True
        col[x] = -1
        return False

    return col[:] if rec(0, 0) else None


def chromatic_number(H: Hypergraph, mode: str = "weak", cap: int = CHROMATIC_CAP) -> tuple[int, list[int]]:
    """Minimum number of colours and a witness colouring.

    ``weak``: no monochromatic edge. ``strong``: every edge rainbow, i.e. the
    ordinary chromatic number of the shadow graph.
    """
    if mode not in ("weak", "strong"):
        raise ValueError(f"mode must be 'weak' or 'strong', got {mode!r}")
    if H.n > cap:
        raise CapExceeded(f"chromatic number refused for {H.n} > {cap} vertices")
    if mode == "strong" and H.k >= 2:
        H = shadow_graph(H)
    if H.k == 1 and H.e:
        raise HypergraphError("a 1-graph with an edge has no proper colouring")
    if H.n == 0:
        return 0, []
    for c in range(1, H.n + 1):
        col = _colorable(H, c)
        if col is not None:
            return c, col
    raise AssertionError("unreachable: n colours always suffice")
