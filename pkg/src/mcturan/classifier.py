"""Finite structural tests on F, exact Turán numbers, and the bounds report.

Exact Turán numbers are found by growing G-free graphs one vertex at a time.
If H has m vertices and at least t edges, deleting a vertex of minimum degree
leaves at least ``t - floor(k t / m)`` edges, so every such H is an extension
of a graph from the (much shorter) list one level down by a new vertex whose
degree does not exceed any other degree. Lists are kept up to isomorphism.
The target edge count starts at the averaging bound
``floor(ex(n-1) * n / (n - k))`` and walks down until a graph is found.
"""

from __future__ import annotations

import itertools
import time
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .atlas import turan_graph
from .hypercore import CapExceeded, Edge, Hypergraph, HypergraphError, UniformityMismatch, VertexPartition
from .morphisms import (
    HostIndex,
    _edge_seeds,
    _invariant,
    _reject_isolated,
    _search,
    chromatic_number,
    find_homomorphism,
    is_isomorphic,
)
from .packing import BudgetExhausted, integral_packing, packing_number_of_complete

TARGETS = ("fano", "extendedTriangle", "book3", "book4")
LABELED_CAP = 9


# -- structural properties -----------------------------------------------------


def is_bipartite(F: Hypergraph) -> VertexPartition | None:
    """A 2-colouring with no monochromatic edge, as a partition; None if there is none."""
    return _two_colour(F)[0]


def _two_colour(F: Hypergraph):
    n = F.n
    inc = F.incidence
    col = [-1] * n
    nodes = 0

    def assign(x, c, trail) -> bool:
        queue = [(x, c)]
        while queue:
            y, cy = queue.pop()
            if col[y] >= 0:
                if col[y] != cy:
                    return False
                continue
            col[y] = cy
            trail.append(y)
            for e in inc[y]:
                free = [z for z in e if col[z] < 0]
                same = all(col[z] == cy for z in e if col[z] >= 0)
                if not same:
                    continue
                if not free:
                    return False
                if len(free) == 1:
                    queue.append((free[0], 1 - cy))
        return True

    def rec(x) -> bool:
        nonlocal nodes
        while x < n and col[x] >= 0:
            x += 1
        if x == n:
            return True
        nodes += 1
        options = (0,) if x == 0 else (0, 1)
        for c in options:
            trail: list[int] = []
            if assign(x, c, trail) and rec(x + 1):
                return True
            for y in trail:
                col[y] = -1
        return False

    if rec(0):
        parts = (frozenset(x for x in range(n) if col[x] == 0), frozenset(x for x in range(n) if col[x] == 1))
        return VertexPartition(n, parts, allow_empty=True), nodes
    return None, nodes


def _gf2_solve(F: Hypergraph):
    """Solve sum_{v in e} x_v = 1 (mod 2) for every edge e.

    Returns ``(solution_bits, None)`` or ``(None, edge_combination)``, the
    latter an odd set of edges covering every vertex an even number of times.
    """
    rows = []
    for i, e in enumerate(F.edges):
        rows.append([sum(1 << v for v in e), 1, 1 << i])
    pivots = []
    r = 0
    for v in range(F.n):
        bit = 1 << v
        p = next((i for i in range(r, len(rows)) if rows[i][0] & bit), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][0] & bit:
                rows[i] = [rows[i][0] ^ rows[r][0], rows[i][1] ^ rows[r][1], rows[i][2] ^ rows[r][2]]
        pivots.append(v)
        r += 1
    for lhs, rhs, combo in rows[r:]:
        if rhs:
            return None, [F.edges[i] for i in range(F.e) if combo >> i & 1]
    x = 0
    for i, v in enumerate(pivots):
        if rows[i][1]:
            x |= 1 << v
    return x, None


def is_odd(F: Hypergraph) -> VertexPartition | None:
    """A partition meeting every edge oddly on both sides; None if there is none."""
    if F.k % 2:
        raise HypergraphError(f"oddness needs even uniformity, got {F.k}")
    x, _ = _gf2_solve(F)
    if x is None:
        return None
    X = frozenset(v for v in range(F.n) if x >> v & 1)
    return VertexPartition(F.n, (X, frozenset(range(F.n)) - X), allow_empty=True)


def odd_obstruction(F: Hypergraph) -> list[Edge] | None:
    """An odd number of edges covering each vertex evenly (proof F is not odd), or None."""
    if F.k % 2:
        raise HypergraphError(f"oddness needs even uniformity, got {F.k}")
    return _gf2_solve(F)[1]


def check_odd_partition(F: Hypergraph, P: VertexPartition) -> bool:
    X, Y = P.parts
    return all(len(X.intersection(e)) % 2 == 1 and len(Y.intersection(e)) % 2 == 1 for e in F.edges)


def check_bipartition(F: Hypergraph, P: VertexPartition) -> bool:
    X, Y = P.parts
    return all(X.intersection(e) and Y.intersection(e) for e in F.edges)


def find_independent_transversal(F: Hypergraph) -> list[int] | None:
    """An independent set meeting every edge (so exactly once), or None."""
    n = F.n
    inc = F.incidence
    nbr = [set() for _ in range(n)]
    for e in F.edges:
        for x in e:
            nbr[x].update(y for y in e if y != x)
    chosen: list[int] = []
    banned = [0] * n
    covered = [0] * len(F.edges)
    eidx = {e: i for i, e in enumerate(F.edges)}

    def options(e):
        return [x for x in e if not banned[x]]

    def rec() -> bool:
        best = None
        for i, e in enumerate(F.edges):
            if covered[i]:
                continue
            opts = options(e)
            if not opts:
                return False
            if best is None or len(opts) < len(best[1]):
                best = (i, opts)
        if best is None:
            return True
        for x in best[1]:
            chosen.append(x)
            for y in nbr[x] | {x}:
                banned[y] += 1
            for e in inc[x]:
                covered[eidx[e]] += 1
            if rec():
                return True
            for e in inc[x]:
                covered[eidx[e]] -= 1
            for y in nbr[x] | {x}:
                banned[y] -= 1
            chosen.pop()
        return False

    return sorted(chosen) if rec() else None


def check_independent_transversal(F: Hypergraph, S) -> bool:
    S = set(S)
    return all(len(S.intersection(e)) == 1 for e in F.edges)


# -- exact Turán numbers ---------------------------------------------------------


@dataclass
class TuranResult:
    G: Hypergraph
    n: int
    value: int | None
    lower: int
    upper: int
    extremals: list[Hypergraph] = field(default_factory=list)
    nodes: int = 0

    @property
    def exact(self) -> bool:
        return self.value is not None

    def labeled_extremals(self, cap: int = LABELED_CAP) -> list[Hypergraph]:
        """Every labelled extremal graph (all relabellings of the classes)."""
        if self.n > cap:
            raise CapExceeded(f"labelled extremal listing refused for n = {self.n} > {cap}")
        out = set()
        for H in self.extremals:
            for perm in itertools.permutations(range(self.n)):
                out.add(tuple(sorted(tuple(sorted(perm[x] for x in e)) for e in H.edges)))
        return [Hypergraph(self.G.k, self.n, es) for es in sorted(out)]


class _TuranSearch:
    def __init__(self, G: Hypergraph, node_budget=None, time_budget=None):
        _reject_isolated(G)
        if G.e == 0:
            raise HypergraphError("forbidden graph must have at least one edge")
        self.G = G
        self.k = G.k
        self.cache: dict[int, tuple[int, list[Hypergraph]]] = {}
        self.values: dict[int, int] = {}
        self.extremals: dict[int, list[Hypergraph]] = {}
        self.nodes = 0
        self.node_budget = node_budget
        self.deadline = None if time_budget is None else time.monotonic() + time_budget

    def _tick(self):
        self.nodes += 1
        if self.node_budget is not None and self.nodes > self.node_budget:
            raise BudgetExhausted
        if self.deadline is not None and self.nodes % 256 == 0 and time.monotonic() > self.deadline:
            raise BudgetExhausted

    def creates_copy(self, host: HostIndex, e: Edge) -> bool:
        for seed in _edge_seeds(self.G, e):
            for _ in _search(self.G, host, injective=True, seed=seed):
                return True
        return False

    def greedy(self, m: int) -> Hypergraph:
        host = HostIndex(self.k, m)
        for e in itertools.combinations(range(m), self.k):
            host.add(e)
            if self.creates_copy(host, e):
                host.remove(e)
        return Hypergraph(self.k, m, tuple(host.edges))

    def free_graphs(self, m: int, t: int) -> list[Hypergraph]:
        """G-free k-graphs on m vertices with at least t edges, one per isomorphism class."""
        k = self.k
        if m < k:
            return [Hypergraph(k, m)] if t <= 0 else []
        hit = self.cache.get(m)
        if hit is not None and hit[0] <= t:
            return [H for H in hit[1] if H.e >= t]
        teff = max(t, 0)
        prev = self.free_graphs(m - 1, teff - (k * teff) // m)
        found: list[Hypergraph] = []
        for Hp in prev:
            found.extend(self._extend(Hp, t))
        classes = _dedupe(found)
        self.cache[m] = (t, classes)
        return classes

    def _extend(self, Hp: Hypergraph, t: int) -> list[Hypergraph]:
        k, w = self.k, Hp.n
        m = w + 1
        links = list(itertools.combinations(range(w), k - 1))
        need = max(0, t - Hp.e)
        host = HostIndex(k, m, Hp.edges)
        base_deg = list(Hp.degrees)
        cnt = [0] * w
        remaining_with = [0] * w
        for l in links:
            for u in l:
                remaining_with[u] += 1
        chosen: list[tuple[int, ...]] = []
        out: list[Hypergraph] = []

        def rec(i: int):
            self._tick()
            s = len(chosen)
            if s + (len(links) - i) < need:
                return
            for u in range(w):
                if base_deg[u] + cnt[u] + remaining_with[u] < s:
                    return
            if i == len(links):
                if s >= need and all(base_deg[u] + cnt[u] >= s for u in range(w)):
                    out.append(Hypergraph(k, m, tuple(host.edges)))
                return
            l = links[i]
            for u in l:
                remaining_with[u] -= 1
            e = l + (w,)
            host.add(e)
            if not self.creates_copy(host, e):
                chosen.append(l)
                for u in l:
                    cnt[u] += 1
                rec(i + 1)
                for u in l:
                    cnt[u] -= 1
                chosen.pop()
            host.remove(e)
            rec(i + 1)
            for u in l:
                remaining_with[u] += 1

        rec(0)
        return out

    def value(self, m: int) -> int:
        if m in self.values:
            return self.values[m]
        k = self.k
        if m < self.G.n:
            self.values[m] = comb(m, k)
            self.extremals[m] = [Hypergraph(k, m, tuple(itertools.combinations(range(m), k)))]
            return self.values[m]
        ub = self.upper(m)
        lo = self.greedy(m).e
        E = ub
        while E >= lo:
            self.pending = (m, E)
            graphs = self.free_graphs(m, E)
            if graphs:
                best = max(H.e for H in graphs)
                self.values[m] = best
                self.extremals[m] = sorted((H for H in graphs if H.e == best), key=lambda H: H.edges)
                return best
            E -= 1
        raise AssertionError("greedy graph is G-free, search must succeed by its size")

    def bound_from_pending(self, n: int) -> int:
        # the level being searched has a proven ceiling; lift it to n by averaging
        m, hi = self.pending
        k = self.k
        for j in range(m + 1, n + 1):
            hi = min(comb(j, k), hi * j // (j - k))
        return hi

    def upper(self, m: int) -> int:
        k = self.k
        ub = comb(m, k)
        if m > k and m - 1 >= 0:
            prev = self.value(m - 1)
            ub = min(ub, prev * m // (m - k))
        return ub


def _dedupe(graphs: list[Hypergraph]) -> list[Hypergraph]:
    buckets: dict[tuple, list[Hypergraph]] = defaultdict(list)
    out = []
    for H in graphs:
        key = _invariant(H)
        if any(is_isomorphic(H, R) for R in buckets[key]):
            continue
        buckets[key].append(H)
        out.append(H)
    return out


def exact_turan(G: Hypergraph, n: int, node_budget: int | None = None, time_budget: float | None = None) -> TuranResult:
    """Maximum edges of an n-vertex G-free k-graph, with all extremal graphs up to isomorphism.

    On budget exhaustion ``value`` is None and ``[lower, upper]`` brackets the answer.
    """
    if n < 0:
        raise HypergraphError("n must be >= 0")
    search = _TuranSearch(G, node_budget, time_budget)
    search.pending = (n, comb(n, G.k))
    try:
        v = search.value(n)
    except BudgetExhausted:
        return TuranResult(G, n, None, search.greedy(n).e, search.bound_from_pending(n), [], search.nodes)
    return TuranResult(G, n, v, v, v, search.extremals[n], search.nodes)


def is_free(G: Hypergraph, H: Hypergraph) -> bool:
    from .morphisms import contains_copy

    return not contains_copy(G, H)


# -- classification ----------------------------------------------------------


@dataclass
class ClassifierVerdict:
    target: str
    verdict: str
    witness: dict

    @property
    def attains(self) -> bool:
        return self.verdict == "attains"

    def to_dict(self) -> dict:
        return {"target": self.target, "verdict": self.verdict, "witness": self.witness}


def _target_name(target: str, k: int | None) -> str:
    if target in ("c3", "extendedTriangle"):
        return "extendedTriangle" if k is None else f"extendedTriangle({k})"
    return target


def classify(F: Hypergraph, target: str, k: int | None = None) -> ClassifierVerdict:
    """Whether ex_F(n, G) attains the Turán-density upper bound, for the four named G.

    fano: attains iff F is bipartite; book3: iff F has an independent set meeting
    every edge; extendedTriangle(k) and book4: iff F is odd.
    """
    if target == "c3":
        target = "extendedTriangle"
    if target not in TARGETS:
        raise HypergraphError(f"unknown target {target!r}; expected one of fano, c3, book3, book4")
    name = _target_name(target, k)
    if target in ("fano", "book3") and F.k != 3:
        raise UniformityMismatch(f"{target} needs a 3-uniform F, got uniformity {F.k}")
    if target == "book4" and F.k != 4:
        raise UniformityMismatch(f"book4 needs a 4-uniform F, got uniformity {F.k}")
    if target == "extendedTriangle":
        if k is not None and F.k != 2 * k:
            raise UniformityMismatch(f"extendedTriangle({k}) needs a {2 * k}-uniform F, got {F.k}")
        if F.k % 2:
            raise UniformityMismatch(f"extendedTriangle needs even uniformity, got {F.k}")
        name = f"extendedTriangle({F.k // 2})"

    if target == "fano":
        part, nodes = _two_colour(F)
        if part is None:
            return ClassifierVerdict(name, "fails", {"kind": "exhausted-2-colourings", "nodes": nodes})
        return ClassifierVerdict(name, "attains", {"kind": "bipartition", "parts": [sorted(p) for p in part.parts]})
    if target == "book3":
        S = find_independent_transversal(F)
        if S is None:
            return ClassifierVerdict(name, "fails", {"kind": "exhausted-transversals"})
        return ClassifierVerdict(name, "attains", {"kind": "independent-transversal", "set": S})
    part = is_odd(F)
    if part is None:
        obstruction = odd_obstruction(F)
        return ClassifierVerdict(name, "fails", {"kind": "parity-obstruction", "edges": [list(e) for e in obstruction]})
    return ClassifierVerdict(name, "attains", {"kind": "odd-partition", "parts": [sorted(p) for p in part.parts]})


def recheck_verdict(F: Hypergraph, v: ClassifierVerdict) -> bool:
    """Re-validate a verdict's witness independently of the search that produced it."""
    w = v.witness
    kind = w["kind"]
    if kind == "bipartition":
        return check_bipartition(F, VertexPartition(F.n, tuple(w["parts"]), allow_empty=True))
    if kind == "odd-partition":
        return check_odd_partition(F, VertexPartition(F.n, tuple(w["parts"]), allow_empty=True))
    if kind == "independent-transversal":
        return check_independent_transversal(F, w["set"])
    if kind == "parity-obstruction":
        edges = [tuple(e) for e in w["edges"]]
        if len(edges) % 2 == 0 or not all(F.has_edge(e) for e in edges):
            return False
        cover = defaultdict(int)
        for e in edges:
            for x in e:
                cover[x] += 1
        return all(c % 2 == 0 for c in cover.values())
    if kind == "exhausted-2-colourings":
        return chromatic_number(F, "weak", cap=max(F.n, 1))[0] > 2
    if kind == "exhausted-transversals":
        return _brute_transversal(F) is None
    return False


def _brute_transversal(F: Hypergraph):
    for r in range(F.n + 1):
        for S in itertools.combinations(range(F.n), r):
            if check_independent_transversal(F, S):
                return S
    return None


# -- bounds report -----------------------------------------------------------------


def pq(x: Fraction | int | None) -> str | None:
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class BoundsReport:
    n: int
    ex_turan: int | None
    ex_turan_interval: tuple[int, int]
    extremals: list[Hypergraph]
    packing_per_extremal: list[int]
    lower13: int | None
    upper13: Fraction | None
    density_estimate: Fraction | None
    chi: dict
    p_F: int
    degenerate: bool
    exF: int | None = None
    exF_interval: tuple[int, int] | None = None
    corollary: dict | None = None
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "ex_turan": self.ex_turan,
            "ex_turan_interval": list(self.ex_turan_interval),
            "extremals": [H.to_dict() for H in self.extremals],
            "packing_per_extremal": self.packing_per_extremal,
            "lower13": self.lower13,
            "upper13": pq(self.upper13),
            "density_estimate": pq(self.density_estimate),
            "chi": self.chi,
            "p_F": self.p_F,
            "degenerate": self.degenerate,
            "exF": self.exF,
            "exF_interval": None if self.exF_interval is None else list(self.exF_interval),
            "corollary": self.corollary,
            "notes": self.notes,
        }

    @property
    def verdict(self) -> str:
        if self.degenerate:
            return "degenerate"
        if self.exF is None or self.upper13 is None:
            return "unknown"
        if self.exF > self.upper13:
            return "above-upper"
        if self.lower13 is not None and self.exF < self.lower13:
            return "below-lower"
        return "in-window"


def _chi(H: Hypergraph, mode: str):
    try:
        return chromatic_number(H, mode)[0]
    except (CapExceeded, HypergraphError):
        return None


def bounds_report(
    F: Hypergraph,
    G: Hypergraph,
    n: int,
    turan_budget: int | None = None,
    exf_budget: int | None = 200_000,
    threads: int = 1,
) -> BoundsReport:
    """Assemble ex_k(n, G), its extremal graphs and their F-packings, and the bound window."""
    from .rainbow import blowup_lower_bound, exact_multicolor_turan

    if F.k != G.k:
        raise UniformityMismatch(f"uniformity mismatch: {F.k} vs {G.k}")
    k = F.k
    tur = exact_turan(G, n, node_budget=turan_budget)
    degenerate = find_homomorphism(G, F) is not None
    notes = []
    packs = [integral_packing(F, H, threads=threads).value for H in tur.extremals]
    lower = None
    if degenerate:
        notes.append("degenerate regime: G maps homomorphically into F, so ex_F(n,G) = o(n^k)")
    else:
        lower = blowup_lower_bound(F, G, n, threads=threads).value
    upper = Fraction(tur.value, F.e) if tur.exact else None
    density = Fraction(tur.value, comb(n, k)) if tur.exact and comb(n, k) else None
    chi = {
        "F": {"weak": _chi(F, "weak"), "strong": _chi(F, "strong") if k >= 2 else None},
        "G": {"weak": _chi(G, "weak"), "strong": _chi(G, "strong") if k >= 2 else None},
    }
    rep = BoundsReport(
        n=n,
        ex_turan=tur.value,
        ex_turan_interval=(tur.lower, tur.upper),
        extremals=tur.extremals,
        packing_per_extremal=packs,
        lower13=lower,
        upper13=upper,
        density_estimate=density,
        chi=chi,
        p_F=packing_number_of_complete(F),
        degenerate=degenerate,
        notes=notes,
    )
    if not tur.exact:
        notes.append(f"Turán search budget exhausted; ex_k(n,G) in [{tur.lower}, {tur.upper}]")
    if exf_budget is None or exf_budget > 0:
        res = exact_multicolor_turan(F, G, n, node_budget=exf_budget, threads=threads)
        rep.exF = res.value
        rep.exF_interval = res.interval
        if res.exact and upper is not None and res.value > upper:
            notes.append("asymptotic bound not binding at this n: exact ex_F(n,G) exceeds ex_k(n,G)/e(F)")
    if k == 2:
        rep.corollary = corollary_prediction(F, G, n)
    return rep


def corollary_prediction(F: Hypergraph, G: Hypergraph, n: int) -> dict | None:
    """Graph case: the quadratic prediction and its Turán-graph realisation."""
    chiF, chiG = _chi(F, "weak"), _chi(G, "weak")
    if chiG is None or chiF is None or chiG < 3:
        return None
    r = chiG - 1
    formula = Fraction(chiG - 2, 2 * F.e * (chiG - 1)) * n * n
    T = turan_graph(n, r)
    return {
        "chi_F": chiF,
        "chi_G": chiG,
        "chi_G_exceeds_chi_F": chiG > chiF,
        "formula": pq(formula),
        "turan_graph_edges": T.e,
        "turan_graph_value": pq(Fraction(T.e, F.e)),
    }
