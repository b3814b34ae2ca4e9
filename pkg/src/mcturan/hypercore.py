"""Canonical k-uniform hypergraph value type and structural operations."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    """Raised when a hypergraph (or a value built on one) violates its invariants."""


class UniformityMismatch(HypergraphError):
    pass


class CapExceeded(RuntimeError):
    """An exact search was refused because the instance is beyond a documented cap."""


Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``0..n-1``.

    Edges are stored as strictly increasing tuples, sorted lexicographically,
    so two values are equal exactly when they have the same uniformity,
    vertex count and edge set.
    """

    k: int
    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        k, n = self.k, self.n
        if not isinstance(k, int) or k < 1:
            raise HypergraphError(f"uniformity must be an integer >= 1, got {k!r}")
        if not isinstance(n, int) or n < 0:
            raise HypergraphError(f"vertex count must be an integer >= 0, got {n!r}")
        canon = []
        for raw in self.edges:
            e = tuple(sorted(int(v) for v in raw))
            if len(e) != k:
                raise HypergraphError(f"edge {tuple(raw)} has {len(e)} vertices, expected {k}")
            if len(set(e)) != k:
                raise HypergraphError(f"edge {tuple(raw)} has a repeated vertex")
            if e[0] < 0 or e[-1] >= n:
                raise HypergraphError(f"edge {tuple(raw)} has a vertex outside [0, {n})")
            canon.append(e)
        canon.sort()
        for a, b in zip(canon, canon[1:]):
            if a == b:
                raise HypergraphError(f"duplicate edge {a}")
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def v(self) -> int:
        return self.n

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for e in self.edges:
            for x in e:
                deg[x] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[Edge, ...], ...]:
        inc: list[list[Edge]] = [[] for _ in range(self.n)]
        for e in self.edges:
            for x in e:
                inc[x].append(e)
        return tuple(tuple(es) for es in inc)

    def has_edge(self, edge: Iterable[int]) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def isolated_vertices(self) -> list[int]:
        return [x for x, d in enumerate(self.degrees) if d == 0]

    def to_dict(self) -> dict:
        return {"k": self.k, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, data: dict) -> "Hypergraph":
        try:
            k, n, edges = data["k"], data["n"], data["edges"]
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"hypergraph document missing field {exc}") from None
        for key, val in (("k", k), ("n", n)):
            if isinstance(val, bool) or not isinstance(val, int):
                raise HypergraphError(f"field {key!r} must be an integer")
        if not isinstance(edges, list) or not all(isinstance(e, list) for e in edges):
            raise HypergraphError("field 'edges' must be a list of vertex lists")
        for e in edges:
            for x in e:
                if isinstance(x, bool) or not isinstance(x, int):
                    raise HypergraphError(f"edge {e} contains a non-integer vertex")
        return cls(k, n, tuple(tuple(e) for e in edges))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def __repr__(self) -> str:
        return f"Hypergraph(k={self.k}, n={self.n}, e={self.e})"


@dataclass(frozen=True)
class VertexPartition:
    """Disjoint vertex sets covering ``0..n-1``."""

    n: int
    parts: tuple[frozenset[int], ...] = field(default=())
    allow_empty: bool = field(default=False, compare=False)

    def __post_init__(self):
        parts = tuple(frozenset(p) for p in self.parts)
        seen: set[int] = set()
        for p in parts:
            if not p and not self.allow_empty:
                raise HypergraphError("empty part in vertex partition")
            if seen & p:
                raise HypergraphError(f"parts overlap on {sorted(seen & p)}")
            seen |= p
        if seen != set(range(self.n)):
            raise HypergraphError("parts do not cover the vertex set exactly")
        object.__setattr__(self, "parts", parts)

    @property
    def arity(self) -> int:
        return len(self.parts)

    def part_of(self, x: int) -> int:
        for i, p in enumerate(self.parts):
            if x in p:
                return i
        raise HypergraphError(f"vertex {x} not in partition")

    def to_dict(self) -> dict:
        return {"n": self.n, "parts": [sorted(p) for p in self.parts]}

    def same_as(self, other: "VertexPartition") -> bool:
        """Equality as an unordered family of parts."""
        return self.n == other.n and set(self.parts) == set(other.parts)


def construct(k: int, n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    return Hypergraph(k, n, tuple(tuple(e) for e in edges))


def complete(k: int, n: int) -> Hypergraph:
    return Hypergraph(k, n, tuple(itertools.combinations(range(n), k)))


def blowup(H: Hypergraph, ell: int) -> Hypergraph:
    """Replace vertex x by the block ``ell*x .. ell*x+ell-1`` and each edge by all crossing edges."""
    if not isinstance(ell, int) or ell < 1:
        raise HypergraphError(f"blowup factor must be an integer >= 1, got {ell!r}")
    edges = []
    for e in H.edges:
        blocks = [range(ell * x, ell * x + ell) for x in e]
        edges.extend(itertools.product(*blocks))
    return Hypergraph(H.k, ell * H.n, tuple(edges))


def induced_subgraph(H: Hypergraph, U: Iterable[int]) -> Hypergraph:
    """Sub-hypergraph on U, relabelled to ``0..|U|-1`` in increasing order."""
    keep = sorted(set(U))
    for x in keep:
        if not 0 <= x < H.n:
            raise HypergraphError(f"vertex {x} outside [0, {H.n})")
    label = {x: i for i, x in enumerate(keep)}
    edges = [tuple(label[x] for x in e) for e in H.edges if all(x in label for x in e)]
    return Hypergraph(H.k, len(keep), tuple(edges))


def delete_vertices(H: Hypergraph, S: Iterable[int]) -> Hypergraph:
    S = set(S)
    return induced_subgraph(H, [x for x in range(H.n) if x not in S])


def shadow_graph(H: Hypergraph) -> Hypergraph:
    if H.k < 2:
        raise HypergraphError("shadow graph needs uniformity >= 2")
    pairs = {p for e in H.edges for p in itertools.combinations(e, 2)}
    return Hypergraph(2, H.n, tuple(pairs))


def relabel(H: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Image of H under the vertex bijection ``x -> perm[x]``."""
    if sorted(perm) != list(range(H.n)):
        raise HypergraphError("relabel needs a permutation of the vertex set")
    return Hypergraph(H.k, H.n, tuple(tuple(perm[x] for x in e) for e in H.edges))


def union_of_edges(k: int, n: int, edge_groups: Iterable[Iterable[Edge]]) -> Hypergraph:
    return Hypergraph(k, n, tuple(e for grp in edge_groups for e in grp))
