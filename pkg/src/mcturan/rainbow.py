"""Edge-coloured copy families, rainbow detection and the exact ex_F(n, G) solver.

A family of pairwise edge-disjoint copies colours every edge of its union by
the index of the copy it came from. A copy of G in the union is rainbow when
its edges carry pairwise distinct colours.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .hypercore import Edge, Hypergraph, HypergraphError, UniformityMismatch, blowup, complete
from .morphisms import (
    Copy,
    HostIndex,
    _edge_seeds,
    _reject_isolated,
    enumerate_copies,
    find_homomorphism,
    is_isomorphic,
    rainbow_maps,
)
from .packing import PackProblem, capped_copies, integral_packing, solve_packing_problem


class FamilyError(HypergraphError):
    pass


@dataclass(frozen=True)
class CopyFamily:
    n: int
    pattern: Hypergraph
    copies: tuple[Copy, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "copies", tuple(c if isinstance(c, Copy) else Copy(c) for c in self.copies))

    @property
    def k(self) -> int:
        return self.pattern.k

    def __len__(self):
        return len(self.copies)

    def colors(self) -> dict[Edge, int]:
        out = {}
        for i, c in enumerate(self.copies):
            for e in c.edges:
                out.setdefault(e, i)
        return out

    def union(self) -> Hypergraph:
        return Hypergraph(self.k, self.n, tuple(self.colors()))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pattern": self.pattern.to_dict(),
            "copies": [[list(e) for e in c.edges] for c in self.copies],
        }

    @classmethod
    def from_dict(cls, data: dict, validate: bool = True) -> "CopyFamily":
        try:
            n, pattern, copies = data["n"], data["pattern"], data["copies"]
        except (KeyError, TypeError) as exc:
            raise FamilyError(f"family document missing field {exc}") from None
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise FamilyError("field 'n' must be a nonnegative integer")
        fam = cls(n, Hypergraph.from_dict(pattern), tuple(Copy(tuple(tuple(e) for e in c)) for c in copies))
        if validate:
            validate_family(fam)
        return fam

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class RainbowWitness:
    copy: Copy
    colors: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"edges": [list(e) for e in self.copy.edges], "colors": list(self.colors)}


def validate_family(family: CopyFamily) -> None:
    """Raise FamilyError on the first violated invariant."""
    k, n = family.k, family.n
    owner: dict[Edge, int] = {}
    for i, c in enumerate(family.copies):
        for e in c.edges:
            if len(e) != k or len(set(e)) != k:
                raise FamilyError(f"copy {i}: edge {e} is not a {k}-set")
            if e[0] < 0 or e[-1] >= n:
                raise FamilyError(f"copy {i}: edge {e} has a vertex outside [0, {n})")
        for e in c.edges:
            if e in owner:
                raise FamilyError(f"copies {owner[e]} and {i} overlap on edge {e}")
            owner[e] = i
        if not is_isomorphic(c.as_hypergraph(k), family.pattern):
            raise FamilyError(f"copy {i} is not isomorphic to the pattern")


def _rainbow_copies(family: CopyFamily, G: Hypergraph) -> set[Copy]:
    if G.k != family.k:
        raise UniformityMismatch(f"uniformity mismatch: {G.k} vs {family.k}")
    _reject_isolated(G)
    colors = family.colors()
    host = HostIndex(family.k, family.n, colors)
    out = set()
    for m in rainbow_maps(G, host, colors):
        out.add(Copy(tuple(tuple(sorted(m[x] for x in e)) for e in G.edges)))
    return out


def find_rainbow_copy(family: CopyFamily, G: Hypergraph) -> RainbowWitness | None:
    """The canonically first rainbow copy of G in the family's union, or None."""
    found = _rainbow_copies(family, G)
    if not found:
        return None
    first = min(found, key=lambda c: c.edges)
    colors = family.colors()
    return RainbowWitness(first, tuple(colors[e] for e in first.edges))


def count_rainbow_copies(family: CopyFamily, G: Hypergraph) -> int:
    return len(_rainbow_copies(family, G))


def count_non_rainbow_copies(family: CopyFamily, G: Hypergraph) -> int:
    """Copies of G in the union having two edges of the same colour."""
    if G.k != family.k:
        raise UniformityMismatch(f"uniformity mismatch: {G.k} vs {family.k}")
    colors = family.colors()
    count = 0
    for c in enumerate_copies(G, family.union()):
        cols = [colors[e] for e in c.edges]
        if len(set(cols)) < len(cols):
            count += 1
    return count


# -- exact solver ------------------------------------------------------------


class RainbowGuard:
    """Incremental rainbow test for the copy-packing search."""

    def __init__(self, G: Hypergraph, k: int, n: int, copy_edges):
        self.G = G
        self.copy_edges = copy_edges
        self.host = HostIndex(k, n)
        self.colors: dict[Edge, int] = {}
        self.stack: list[int] = []
        self.seeds = {}

    def push(self, c: int):
        color = len(self.stack)
        for e in self.copy_edges[c]:
            self.host.add(e)
            self.colors[e] = color
        self.stack.append(c)

    def pop(self):
        c = self.stack.pop()
        for e in self.copy_edges[c]:
            self.host.remove(e)
            del self.colors[e]

    def accepts(self, c: int) -> bool:
        """True when adding copy c closes no rainbow G (any new one uses an edge of c)."""
        self.push(c)
        try:
            for e in self.copy_edges[c]:
                for seed in _edge_seeds(self.G, e):
                    for _ in rainbow_maps(self.G, self.host, self.colors, seed):
                        return False
            return True
        finally:
            self.pop()


@dataclass
class RainbowGuardSpec:
    G: Hypergraph
    k: int
    n: int

    def build(self, problem: PackProblem) -> RainbowGuard:
        return RainbowGuard(self.G, self.k, self.n, problem.copy_edges)


@dataclass
class MulticolorResult:
    value: int | None
    witness: CopyFamily
    lower: int
    upper: int
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    @property
    def interval(self) -> tuple[int, int]:
        return (self.lower, self.upper)


def exact_multicolor_turan(
    F: Hypergraph,
    G: Hypergraph,
    n: int,
    node_budget: int | None = None,
    time_budget: float | None = None,
    threads: int = 1,
    cap: int = 10**5,
) -> MulticolorResult:
    """Maximum number of edge-disjoint F-copies on n labelled vertices with no rainbow G.

    The first copy is fixed to the canonically first copy of F in K_n (all
    copies form one orbit under vertex permutations). On budget exhaustion the
    result carries an interval ``[best found, bound]`` and ``value`` is None.
    """
    if F.k != G.k:
        raise UniformityMismatch(f"uniformity mismatch: {F.k} vs {G.k}")
    _reject_isolated(F)
    _reject_isolated(G)
    host = complete(F.k, n)
    copies = capped_copies(F, host, cap)
    if not copies:
        return MulticolorResult(0, CopyFamily(n, F, ()), 0, 0)
    problem = PackProblem(
        edges=list(host.edges),
        copy_edges=[c.edges for c in copies],
        fe=F.e,
        roots=[(0, frozenset())],
        guard=RainbowGuardSpec(G, F.k, n),
    )
    best, chosen, exact, upper, nodes = solve_packing_problem(problem, node_budget, time_budget, threads)
    witness = CopyFamily(n, F, tuple(copies[i] for i in chosen))
    return MulticolorResult(best if exact else None, witness, best, upper, nodes)


@dataclass
class LowerBoundResult:
    value: int
    witness: CopyFamily
    t: int
    host: Hypergraph


def blowup_lower_bound(F: Hypergraph, G: Hypergraph, n: int, **packing_kwargs) -> LowerBoundResult:
    """Pack F into its t-blowup, t = n // v(F); certified free of rainbow G."""
    if F.k != G.k:
        raise UniformityMismatch(f"uniformity mismatch: {F.k} vs {G.k}")
    hom = find_homomorphism(G, F)
    if hom is not None:
        raise HypergraphError(f"G maps homomorphically into F (map {list(hom.map)}); the blowup bound does not apply")
    t = n // F.n if F.n else 0
    if t < 1:
        return LowerBoundResult(0, CopyFamily(n, F, ()), 0, Hypergraph(F.k, 0))
    B = blowup(F, t)
    sol = integral_packing(F, B, **packing_kwargs)
    family = CopyFamily(n, F, tuple(sol.copies))
    if find_rainbow_copy(family, G) is not None:
        raise AssertionError("blowup family contains a rainbow copy of G")
    return LowerBoundResult(sol.value, family, t, B)


def trivial_upper_bound(F: Hypergraph, n: int) -> int:
    return comb(n, F.k) // F.e if F.e else 0
