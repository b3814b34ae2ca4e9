"""Generators for the named hypergraphs and the k-subset expansion of an r-graph.

Vertex labellings (all 0-indexed, deterministic):

* ``complete(k, s)``: all k-subsets of ``0..s-1``.
* ``completeMultipartite(k, sizes)``: parts are consecutive blocks in the
  order given; edges meet every part in at most one vertex.
* ``nearEdgeFan(k, s)``: on ``0..k``, the edges are ``[k+1] - {i}`` for
  ``i = 0..s-1``.
* ``fano``: lines 012, 034, 056, 135, 146, 236, 245.
* ``extendedTriangle(k)``: 2k-uniform on ``0..3k-1`` with edges ``0..2k-1``,
  ``k..3k-1`` and ``{0..k-1} | {2k..3k-1}``.
* ``book(k)``: the fixed (k-1)-set is ``0..k-2``, the spine is ``k-1..2k-2``.
* ``crossingSplit(n)``: X is the first ``n//2`` vertices.
* ``twoThirdsSplit(n, x)``: X is the first x vertices; edges have exactly two
  vertices in X.
* ``oddSplit(k, n, t)``: k even, X is the first ``n//2 - t`` vertices.
* ``turanGraph(n, r)``: balanced complete r-partite graph, larger parts last.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Mapping

from .hypercore import Hypergraph, HypergraphError, VertexPartition
from .hypercore import complete as _complete

NAMES = (
    "complete",
    "completeMultipartite",
    "nearEdgeFan",
    "fano",
    "extendedTriangle",
    "book",
    "crossingSplit",
    "twoThirdsSplit",
    "oddSplit",
    "turanGraph",
)

FANO_LINES = ((0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5))


@dataclass(frozen=True)
class NamedConstruction:
    name: str
    params: Mapping[str, object] = field(default_factory=dict)


def _need(params, key, name):
    if key not in params:
        raise HypergraphError(f"{name} needs parameter {key!r}")
    val = params[key]
    if isinstance(val, bool) or not isinstance(val, int):
        raise HypergraphError(f"{name}: parameter {key!r} must be an integer")
    return val


def complete(k: int, s: int) -> Hypergraph:
    return _complete(k, s)


def complete_multipartite(k: int, sizes) -> Hypergraph:
    sizes = list(sizes)
    if any(s < 1 for s in sizes):
        raise HypergraphError("multipartite part sizes must be >= 1")
    part = []
    for i, s in enumerate(sizes):
        part.extend([i] * s)
    n = len(part)
    edges = [e for e in itertools.combinations(range(n), k) if len({part[x] for x in e}) == k]
    return Hypergraph(k, n, tuple(edges))


def multipartite_partition(sizes) -> VertexPartition:
    parts, start = [], 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    return VertexPartition(start, tuple(parts))


def near_edge_fan(k: int, s: int) -> Hypergraph:
    """The k-graph on k+1 vertices with s edges."""
    if k < 1 or not 2 <= s <= k + 1:
        raise HypergraphError(f"nearEdgeFan needs 2 <= s <= k+1, got k={k}, s={s}")
    full = set(range(k + 1))
    return Hypergraph(k, k + 1, tuple(tuple(full - {i}) for i in range(s)))


def tight_triangle(k: int) -> Hypergraph:
    return near_edge_fan(k, 3)


def fano() -> Hypergraph:
    return Hypergraph(3, 7, FANO_LINES)


def extended_triangle(k: int) -> Hypergraph:
    if k < 1:
        raise HypergraphError("extendedTriangle needs k >= 1")
    a = tuple(range(0, 2 * k))
    b = tuple(range(k, 3 * k))
    c = tuple(range(0, k)) + tuple(range(2 * k, 3 * k))
    return Hypergraph(2 * k, 3 * k, (a, b, c))


def book(k: int) -> Hypergraph:
    if k < 2:
        raise HypergraphError("book needs k >= 2")
    base = tuple(range(k - 1))
    spine = tuple(range(k - 1, 2 * k - 1))
    pages = [base + (v,) for v in spine]
    return Hypergraph(k, 2 * k - 1, tuple(pages) + (spine,))


def crossing_split(n: int) -> Hypergraph:
    if n < 0:
        raise HypergraphError("crossingSplit needs n >= 0")
    x = n // 2
    edges = [e for e in itertools.combinations(range(n), 3) if e[0] < x <= e[-1]]
    return Hypergraph(3, n, tuple(edges))


def crossing_split_partition(n: int) -> VertexPartition:
    return VertexPartition(n, (range(n // 2), range(n // 2, n)), allow_empty=True)


def two_thirds_window(n: int) -> list[int]:
    return [x for x in range(n + 1) if abs(3 * x - 2 * n) < 3]


def two_thirds_split(n: int, x: int) -> Hypergraph:
    if x not in two_thirds_window(n):
        raise HypergraphError(f"twoThirdsSplit: |X|={x} not within 1 of 2n/3 for n={n}")
    edges = [e for e in itertools.combinations(range(n), 3) if sum(v < x for v in e) == 2]
    return Hypergraph(3, n, tuple(edges))


def _odd_edges(k: int, n: int, xsize: int):
    return [e for e in itertools.combinations(range(n), k) if sum(v < xsize for v in e) % 2 == 1]


def odd_split_count(k: int, n: int, t: int) -> int:
    xs = n // 2 - t
    return sum(comb(xs, i) * comb(n - xs, k - i) for i in range(1, k + 1, 2))


def odd_split_best_t(k: int, n: int) -> int:
    counts = [(odd_split_count(k, n, t), -t) for t in range(n // 2 + 1)]
    return -max(counts)[1]


def odd_split(k: int, n: int, t: int | None = None) -> Hypergraph:
    """All k-sets meeting both parts oddly; parts of size n//2 - t and the rest."""
    if k < 2 or k % 2:
        raise HypergraphError(f"oddSplit needs even uniformity, got {k}")
    if t is None:
        t = odd_split_best_t(k, n)
    if not 0 <= t <= n // 2:
        raise HypergraphError(f"oddSplit needs 0 <= t <= n//2, got t={t}")
    return Hypergraph(k, n, tuple(_odd_edges(k, n, n // 2 - t)))


def odd_split_partition(n: int, t: int) -> VertexPartition:
    xs = n // 2 - t
    return VertexPartition(n, (range(xs), range(xs, n)), allow_empty=True)


def turan_graph(n: int, r: int) -> Hypergraph:
    if r < 1 or n < 0:
        raise HypergraphError("turanGraph needs r >= 1 and n >= 0")
    sizes = [n // r + (1 if i >= r - n % r else 0) for i in range(r)]
    sizes = [s for s in sizes if s]
    if not sizes:
        return Hypergraph(2, 0)
    return complete_multipartite(2, sizes)


def make_named(spec: NamedConstruction | str, **params) -> Hypergraph:
    if isinstance(spec, NamedConstruction):
        name, params = spec.name, dict(spec.params)
    else:
        name = spec
    if name == "complete":
        return complete(_need(params, "k", name), _need(params, "s", name))
    if name == "completeMultipartite":
        sizes = params.get("sizes")
        if not sizes:
            raise HypergraphError("completeMultipartite needs 'sizes'")
        return complete_multipartite(_need(params, "k", name), [int(s) for s in sizes])
    if name == "nearEdgeFan":
        return near_edge_fan(_need(params, "k", name), _need(params, "s", name))
    if name == "fano":
        if params:
            raise HypergraphError("fano takes no parameters")
        return fano()
    if name == "extendedTriangle":
        return extended_triangle(_need(params, "k", name))
    if name == "book":
        return book(_need(params, "k", name))
    if name == "crossingSplit":
        return crossing_split(_need(params, "n", name))
    if name == "twoThirdsSplit":
        return two_thirds_split(_need(params, "n", name), _need(params, "x", name))
    if name == "oddSplit":
        t = params.get("t")
        if t is not None:
            t = _need(params, "t", name)
        return odd_split(_need(params, "k", name), _need(params, "n", name), t)
    if name == "turanGraph":
        return turan_graph(_need(params, "n", name), _need(params, "r", name))
    raise HypergraphError(f"unknown construction {name!r}; expected one of {', '.join(NAMES)}")


def expansion(H: Hypergraph, k: int):
    """k-graph of all k-subsets of edges of H, with its family of K_r^(k) blocks.

    Returns ``(Hstar, family)`` where family is a rainbow.CopyFamily whose
    pattern is the complete k-graph on r vertices.
    """
    from .morphisms import Copy
    from .rainbow import CopyFamily

    r = H.k
    if not 2 <= k < r:
        raise HypergraphError(f"expansion needs 2 <= k < r, got k={k}, r={r}")
    for e, f in itertools.combinations(H.edges, 2):
        if len(set(e) & set(f)) > k - 1:
            raise HypergraphError(f"edges {e} and {f} share {len(set(e) & set(f))} >= k={k} vertices")
    blocks = [tuple(itertools.combinations(e, k)) for e in H.edges]
    Hstar = Hypergraph(k, H.n, tuple(s for b in blocks for s in b))
    family = CopyFamily(H.n, complete(k, r), tuple(Copy(b) for b in blocks))
    return Hstar, family
