"""Exact integral and fractional F-packings of a host k-graph.

The integral solver is a branch and bound over copies of F. At each node it
branches on the still-coverable edge lying in the fewest candidate copies:
either one of those copies is taken, or the edge is left unused. The bound is
``chosen + coverable_edges // e(F)``. The same engine serves the multicolor
Turán solver, which adds a guard rejecting copies that would close a rainbow
copy of the forbidden graph.

Witness determinism: the reported witness is always the first optimal family
met in depth-first pre-order, whatever the incumbent or the worker split, so
``threads`` never changes a result.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .hypercore import CapExceeded, Edge, Hypergraph, UniformityMismatch
from .morphisms import Copy, HostIndex, _copy_of, _reject_isolated, _search, automorphisms, copies_per_edge
from .simplex import Tableau

COPY_CAP = 10**6
SYMMETRY_VERTEX_CAP = 12
SYMMETRY_WORK_CAP = 2 * 10**6


@dataclass
class PackingSolution:
    value: int
    copies: list[Copy]
    exact: bool = True
    upper: int | None = None
    nodes: int = 0

    def __post_init__(self):
        if self.upper is None:
            self.upper = self.value

    @property
    def interval(self) -> tuple[int, int]:
        return (self.value, self.upper)


@dataclass
class FractionalSolution:
    value: Fraction
    weights: dict[Copy, Fraction]
    prices: dict[Edge, Fraction]

    def check(self, F: Hypergraph, H: Hypergraph) -> bool:
        """Re-verify primal feasibility, dual feasibility and equal objectives."""
        load = {e: Fraction(0) for e in H.edges}
        for c, w in self.weights.items():
            if not 0 <= w <= 1:
                return False
            for e in c.edges:
                load[e] += w
        if any(v > 1 for v in load.values()):
            return False
        if any(p < 0 for p in self.prices.values()):
            return False
        for c in self.weights:
            if sum(self.prices[e] for e in c.edges) < 1:
                return False
        return sum(self.weights.values()) == self.value == sum(self.prices.values())


class BudgetExhausted(Exception):
    pass


def capped_copies(F: Hypergraph, H: Hypergraph, cap: int = COPY_CAP) -> list[Copy]:
    if F.k != H.k:
        raise UniformityMismatch(f"uniformity mismatch: {F.k} vs {H.k}")
    _reject_isolated(F)
    seen: set[Copy] = set()
    for m in _search(F, HostIndex.of(H), injective=True):
        seen.add(_copy_of(F, m))
        if len(seen) > cap:
            raise CapExceeded(f"more than {cap} copies of the pattern in the host")
    return sorted(seen, key=lambda c: c.edges)


# -- branch and bound engine --------------------------------------------------


@dataclass
class PackProblem:
    edges: list[Edge]
    copy_edges: list[tuple[Edge, ...]]
    fe: int
    roots: list[tuple[int, frozenset[int]]] | None = None
    guard: object = None
    masks: list[int] = field(default_factory=list)

    def __post_init__(self):
        index = {e: i for i, e in enumerate(self.edges)}
        self.masks = [sum(1 << index[e] for e in ce) for ce in self.copy_edges]

    def make_guard(self):
        return self.guard.build(self) if self.guard is not None else None


@dataclass
class _Node:
    chosen: tuple[int, ...]
    cands: tuple[int, ...]


def _coverable(problem: PackProblem, cands) -> int:
    cov = 0
    masks = problem.masks
    for c in cands:
        cov |= masks[c]
    return cov


def _root_nodes(problem: PackProblem) -> list[_Node]:
    masks = problem.masks
    allc = range(len(masks))
    if problem.roots is None:
        return [_Node((), tuple(allc))]
    out = []
    for rep, banned in problem.roots:
        cands = tuple(c for c in allc if c not in banned and c != rep and not masks[c] & masks[rep])
        out.append(_Node((rep,), cands))
    return out


def _children(problem: PackProblem, node: _Node, guard) -> list[_Node]:
    """Children of a node in search order; ``guard`` holds exactly ``node.chosen``."""
    masks = problem.masks
    cands = node.cands
    if not cands:
        return []
    count: dict[int, int] = {}
    for c in cands:
        m = masks[c]
        while m:
            low = m & -m
            count[low] = count.get(low, 0) + 1
            m ^= low
    ebit = min(count, key=lambda b: (count[b], b))
    through = [c for c in cands if masks[c] & ebit]
    dropped = set()
    if guard is not None:
        for c in through:
            if not guard.accepts(c):
                dropped.add(c)
    out = []
    for c in through:
        if c in dropped:
            continue
        mc = masks[c]
        rest = tuple(d for d in cands if not masks[d] & mc and d not in dropped)
        out.append(_Node(node.chosen + (c,), rest))
    rest = tuple(d for d in cands if not masks[d] & ebit and d not in dropped)
    out.append(_Node(node.chosen, rest))
    return out


class _DFS:
    def __init__(self, problem: PackProblem, global_ub: int, node_budget=None, time_budget=None):
        self.p = problem
        self.ub = global_ub
        self.best = -1
        self.best_chosen: tuple[int, ...] = ()
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.guard = problem.make_guard()

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExhausted
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def run(self, node: _Node):
        if self.guard is not None:
            for c in node.chosen:
                self.guard.push(c)
        self._visit(node)

    def _visit(self, node: _Node):
        if self.best >= self.ub:
            return
        self._tick()
        v = len(node.chosen)
        if v > self.best:
            self.best, self.best_chosen = v, node.chosen
            if v >= self.ub:
                return
        bound = v + bin(_coverable(self.p, node.cands)).count("1") // self.p.fe
        if bound <= self.best:
            return
        for child in _children(self.p, node, self.guard):
            pushed = len(child.chosen) > v
            if pushed and self.guard is not None:
                self.guard.push(child.chosen[-1])
            try:
                self._visit(child)
            finally:
                if pushed and self.guard is not None:
                    self.guard.pop()
            if self.best >= self.ub:
                return


def _solve_task(args):
    problem, node, ub, node_budget, time_budget = args
    if node is None:
        return None
    dfs = _DFS(problem, ub, node_budget, time_budget)
    try:
        dfs.run(node)
        exhausted = False
    except BudgetExhausted:
        exhausted = True
    return dfs.best, dfs.best_chosen, dfs.nodes, exhausted


def _frontier(problem: PackProblem, roots: list[_Node], want: int, rounds: int = 6):
    """Split the search into ordered tasks; value-only entries mark expanded nodes."""
    tasks: list[tuple[str, _Node]] = [("node", r) for r in roots]
    for _ in range(rounds):
        if sum(1 for kind, _ in tasks if kind == "node") >= want:
            break
        out = []
        for kind, node in tasks:
            if kind != "node":
                out.append((kind, node))
                continue
            guard = problem.make_guard()
            if guard is not None:
                for c in node.chosen:
                    guard.push(c)
            kids = _children(problem, node, guard)
            out.append(("value", node))
            out.extend(("node", ch) for ch in kids)
        tasks = out
    return tasks


def solve_packing_problem(
    problem: PackProblem,
    node_budget: int | None = None,
    time_budget: float | None = None,
    threads: int = 1,
) -> tuple[int, tuple[int, ...], bool, int, int]:
    """Run the search; returns ``(best, chosen, exact, upper, nodes)``."""
    roots = _root_nodes(problem)
    allcov = _coverable(problem, range(len(problem.masks)))
    ub = bin(allcov).count("1") // problem.fe
    if problem.roots is not None:
        ub = max([0] + [1 + bin(_coverable(problem, r.cands)).count("1") // problem.fe for r in roots])
    if not problem.masks:
        return 0, (), True, 0, 0

    if threads <= 1:
        best, chosen, nodes, exhausted = 0, (), 0, False
        for r in roots:
            dfs = _DFS(problem, ub, None if node_budget is None else node_budget - nodes, time_budget)
            dfs.best, dfs.best_chosen = best, chosen
            try:
                dfs.run(r)
            except BudgetExhausted:
                exhausted = True
            best, chosen = dfs.best, dfs.best_chosen
            nodes += dfs.nodes
            if exhausted or best >= ub:
                break
        return best, chosen, not exhausted, (ub if exhausted else best), nodes

    tasks = _frontier(problem, roots, 4 * threads)
    jobs = [(problem, node if kind == "node" else None, ub, node_budget, time_budget) for kind, node in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(_solve_task, jobs))
    best, chosen, nodes, exhausted = 0, (), 0, False
    for (kind, node), res in zip(tasks, results):
        if res is None:
            v, ch = len(node.chosen), node.chosen
        else:
            v, ch, nn, ex = res
            nodes += nn
            exhausted = exhausted or ex
        if v > best:
            best, chosen = v, ch
    if best >= ub:
        exhausted = False
    return best, chosen, not exhausted, (ub if exhausted else best), nodes


# -- public operations ---------------------------------------------------------


def _is_complete(H: Hypergraph) -> bool:
    from math import comb

    return H.e == comb(H.n, H.k)


def _orbit_roots(H: Hypergraph, copies: list[Copy]):
    """Root list for symmetry breaking: one orbit representative per copy orbit."""
    if not copies:
        return None
    if _is_complete(H):
        return [(0, frozenset())]
    if H.n > SYMMETRY_VERTEX_CAP:
        return None
    try:
        auts = automorphisms(H, limit=max(1, SYMMETRY_WORK_CAP // max(1, len(copies))))
    except CapExceeded:
        return None
    index = {c.edges: i for i, c in enumerate(copies)}
    parent = list(range(len(copies)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a in auts:
        m = a.map
        for i, c in enumerate(copies):
            img = tuple(sorted(tuple(sorted(m[x] for x in e)) for e in c.edges))
            j = index[img]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    orbits: dict[int, list[int]] = {}
    for i in range(len(copies)):
        orbits.setdefault(find(i), []).append(i)
    roots, banned = [], set()
    for rep in sorted(orbits):
        roots.append((rep, frozenset(banned)))
        banned.update(orbits[rep])
    return roots


def integral_packing(
    F: Hypergraph,
    H: Hypergraph,
    cap: int = COPY_CAP,
    node_budget: int | None = None,
    time_budget: float | None = None,
    threads: int = 1,
    symmetry: bool = True,
) -> PackingSolution:
    """Maximum number of pairwise edge-disjoint copies of F in H."""
    copies = capped_copies(F, H, cap)
    if not copies:
        return PackingSolution(0, [])
    problem = PackProblem(
        edges=list(H.edges),
        copy_edges=[c.edges for c in copies],
        fe=F.e,
        roots=_orbit_roots(H, copies) if symmetry else None,
    )
    best, chosen, exact, upper, nodes = solve_packing_problem(problem, node_budget, time_budget, threads)
    return PackingSolution(best, [copies[i] for i in chosen], exact, upper, nodes)


def packing_number_of_complete(F: Hypergraph) -> int:
    """Edge-disjoint copies of F inside the complete k-graph on v(F) vertices."""
    from .hypercore import complete

    return integral_packing(F, complete(F.k, F.n)).value


def fractional_packing(F: Hypergraph, H: Hypergraph, cap: int = COPY_CAP) -> FractionalSolution:
    """Exact optimum of the fractional packing LP with its dual edge prices.

    Solved by column generation: the LP is restricted to a working set of
    copies, and any copy whose edge prices sum to less than 1 joins the set.
    When none is left the prices are dual feasible for the full LP.
    """
    copies = capped_copies(F, H, cap)
    if not copies:
        return FractionalSolution(Fraction(0), {}, {e: Fraction(0) for e in H.edges})
    used = sorted({e for c in copies for e in c.edges})
    row_of = {e: i for i, e in enumerate(used)}
    cols = [[row_of[e] for e in c.edges] for c in copies]
    T = Tableau([1] * len(used))
    active = _greedy_columns(cols, len(used))
    for j in active:
        T.add_column({i: 1 for i in cols[j]}, 1)
    inside = set(active)
    batch = max(len(used) // 2, 16)
    while True:
        T.solve()
        y = T.duals()
        short = []
        for j, col in enumerate(cols):
            if j not in inside:
                total = sum(y[i] for i in col)
                if total < 1:
                    short.append((total, j))
        if not short:
            break
        short.sort()
        for _, j in short[:batch]:
            T.add_column({i: 1 for i in cols[j]}, 1)
            active.append(j)
            inside.add(j)
    x = T.primal()
    weights = {c: Fraction(0) for c in copies}
    for jj, j in enumerate(active):
        weights[copies[j]] = x[jj]
    prices = {e: Fraction(0) for e in H.edges}
    for e, i in row_of.items():
        prices[e] = y[i]
    return FractionalSolution(T.objective(), weights, prices)


def _greedy_columns(cols: list[list[int]], nrows: int) -> list[int]:
    # a first-fit disjoint set plus, for every row, one column through it
    taken: set[int] = set()
    active = []
    seen = set()
    for j, col in enumerate(cols):
        if taken.isdisjoint(col):
            taken.update(col)
            active.append(j)
            seen.add(j)
    covered = set(taken)
    for j, col in enumerate(cols):
        if j not in seen and not covered.issuperset(col):
            covered.update(col)
            active.append(j)
    return active


def uniform_count_check(F: Hypergraph, H: Hypergraph) -> int | None:
    """The common number of F-copies through each edge of H, or None if it varies."""
    counts = set(copies_per_edge(F, H).values())
    if not counts:
        return 0
    if len(counts) == 1:
        return counts.pop()
    return None


def check_packing(F: Hypergraph, H: Hypergraph, copies: Sequence[Copy]) -> bool:
    from .morphisms import is_isomorphic

    seen: set[Edge] = set()
    for c in copies:
        if not all(e in H.edge_set for e in c.edges):
            return False
        if seen & set(c.edges):
            return False
        seen |= set(c.edges)
        if not is_isomorphic(c.as_hypergraph(F.k), F):
            return False
    return True


def default_threads() -> int:
    return max(1, int(os.environ.get("MCTURAN_THREADS", "1")))
