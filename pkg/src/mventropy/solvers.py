"""Exact combinatorial workhorses: maximum independent set, minimum set
cover, transport feasibility by max-flow, and exact stationary distributions.

Vertex sets and covers are bitmasks (Python big ints), so the solvers work
unchanged for universes of a few thousand elements.  The branch-and-bound
routines are exact; callers decide when instances are too large and fall back
to the greedy bounds exposed here.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Optional, Sequence


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


# ---------------------------------------------------------------------------
# maximum independent set
# ---------------------------------------------------------------------------


def greedy_independent_set(adj: Sequence[int], sub: Optional[int] = None) -> int:
    """Min-degree greedy independent set; returns a member bitmask."""
    n = len(adj)
    P = ((1 << n) - 1) if sub is None else sub
    chosen = 0
    while P:
        best_v, best_deg = -1, None
        for v in _bits(P):
            deg = (adj[v] & P).bit_count()
            if best_deg is None or deg < best_deg:
                best_v, best_deg = v, deg
                if deg == 0:
                    break
        chosen |= 1 << best_v
        P &= ~(adj[best_v] | (1 << best_v))
    return chosen


def _clique_cover_bound(adj: Sequence[int], P: int) -> int:
    """Number of cliques in a greedy clique cover of the induced subgraph;
    an upper bound for the independence number."""
    count = 0
    R = P
    while R:
        v = (R & -R).bit_length() - 1
        clique_adj = adj[v] & R
        R &= ~(1 << v)
        while clique_adj:
            u = (clique_adj & -clique_adj).bit_length() - 1
            R &= ~(1 << u)
            clique_adj &= adj[u] & ~(1 << u)
        count += 1
    return count


def max_independent_set(adj: Sequence[int]) -> tuple[int, int]:
    """Exact maximum independent set; returns (size, member_bitmask).

    adj[v] is the neighbor bitmask of v with bit v clear.  Degree-0/1
    reductions and connected-component splits run at every search node;
    single components are finished by branch and bound on the max-degree
    vertex with a greedy clique-cover bound.
    """
    n = len(adj)
    mask = _mis_exact(adj, (1 << n) - 1)
    return mask.bit_count(), mask


def _component(adj: Sequence[int], sub: int) -> int:
    start = sub & -sub
    comp = start
    frontier = start
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= adj[v] & sub
        nxt &= ~comp
        comp |= nxt
        frontier = nxt
    return comp


def _reduce_low_degree(adj: Sequence[int], P: int, taken: int) -> tuple[int, int]:
    """Take every degree-0 vertex and every degree-1 vertex (dropping its
    neighbor); both moves preserve some maximum independent set."""
    while True:
        changed = False
        for v in _bits(P):
            if not P & (1 << v):
                continue  # dropped earlier in this sweep
            nb = adj[v] & P
            c = nb.bit_count()
            if c == 0:
                taken |= 1 << v
                P &= ~(1 << v)
                changed = True
            elif c == 1:
                taken |= 1 << v
                P &= ~((1 << v) | nb)
                changed = True
        if not changed:
            return P, taken


def _mis_exact(adj: Sequence[int], P: int) -> int:
    P, taken = _reduce_low_degree(adj, P, 0)
    if not P:
        return taken
    comp = _component(adj, P)
    if comp != P:
        while P:
            comp = _component(adj, P)
            taken |= _mis_component(adj, comp)
            P &= ~comp
        return taken
    return taken | _mis_component(adj, P)


def _dominance_reduce(adj: Sequence[int], P: int) -> int:
    """Drop every vertex v with an adjacent u whose closed neighborhood is
    contained in v's: some maximum independent set avoids v.  Ties (true
    twins) keep the lower index.  Metric threshold graphs collapse hard."""
    alive = P
    for v in _bits(P):
        if not alive & (1 << v):
            continue
        nv = (adj[v] | (1 << v)) & P
        cand = adj[v] & alive
        while cand:
            low = cand & -cand
            u = low.bit_length() - 1
            cand ^= low
            nu = (adj[u] | low) & P
            if nu & ~nv == 0 and (nu != nv or u < v):
                alive &= ~(1 << v)
                break
    return alive


def _mis_component(adj: Sequence[int], comp: int) -> int:
    reduced = _dominance_reduce(adj, comp)
    if reduced != comp:
        return _mis_exact(adj, reduced)
    best_mask = greedy_independent_set(adj, comp)
    best = best_mask.bit_count()

    def expand(P: int, cur: int) -> None:
        nonlocal best, best_mask
        P, cur = _reduce_low_degree(adj, P, cur)
        if not P:
            size = cur.bit_count()
            if size > best:
                best, best_mask = size, cur
            return
        if cur.bit_count() + _clique_cover_bound(adj, P) <= best:
            return
        sub = _component(adj, P)
        if sub != P:
            # detached part is independent of the rest: finish it exactly
            expand(P & ~sub, cur | _mis_exact(adj, sub))
            return
        v_best, deg_best = -1, -1
        for v in _bits(P):
            deg = (adj[v] & P).bit_count()
            if deg > deg_best:
                v_best, deg_best = v, deg
        bit = 1 << v_best
        expand(P & ~(adj[v_best] | bit), cur | bit)
        expand(P & ~bit, cur)

    expand(comp, 0)
    return best_mask


def max_independent_set_bruteforce(adj: Sequence[int]) -> int:
    """Reference solver by subset enumeration; only for tiny graphs."""
    n = len(adj)
    if n > 22:
        raise ValueError("brute force limited to 22 vertices")
    best = 0
    for s in range(1 << n):
        if s.bit_count() <= best:
            continue
        ok = True
        for v in _bits(s):
            if adj[v] & s:
                ok = False
                break
        if ok:
            best = s.bit_count()
    return best


# ---------------------------------------------------------------------------
# minimum set cover
# ---------------------------------------------------------------------------


def greedy_set_cover(sets: Sequence[int], universe: int) -> list[int]:
    """Greedy cover; returns chosen indices.  Raises if not coverable."""
    uncovered = universe
    chosen: list[int] = []
    while uncovered:
        best_i, best_gain = -1, 0
        for i, s in enumerate(sets):
            gain = (s & uncovered).bit_count()
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_gain == 0:
            raise ValueError("sets do not cover the universe")
        chosen.append(best_i)
        uncovered &= ~sets[best_i]
    return chosen


def set_cover_packing_bound(sets: Sequence[int], uncovered: int) -> int:
    """Lower bound: size of a greedy family of elements no set covers twice."""
    count = 0
    rest = uncovered
    while rest:
        e = rest & -rest
        count += 1
        blocked = 0
        for s in sets:
            if s & e:
                blocked |= s
        rest &= ~blocked
    return count


def min_set_cover(sets: Sequence[int], universe: int) -> tuple[int, tuple[int, ...]]:
    """Exact minimum set cover; returns (size, chosen original indices).

    Element branching on the rarest uncovered element with a packing lower
    bound; dominated and duplicate sets are dropped up front.
    """
    if universe == 0:
        return 0, ()
    # preprocessing: drop duplicates and dominated sets
    order = sorted(range(len(sets)), key=lambda i: -sets[i].bit_count())
    kept: list[int] = []
    kept_idx: list[int] = []
    for i in order:
        s = sets[i] & universe
        if s == 0:
            continue
        dominated = False
        for t in kept:
            if s & ~t == 0:
                dominated = True
                break
        if not dominated:
            kept.append(s)
            kept_idx.append(i)
    if not kept:
        raise ValueError("sets do not cover the universe")

    covered_all = 0
    for s in kept:
        covered_all |= s
    if covered_all & universe != universe:
        raise ValueError("sets do not cover the universe")

    greedy = greedy_set_cover(kept, universe)
    best_size = len(greedy)
    best_sel: tuple[int, ...] = tuple(greedy)

    covers_of: dict[int, list[int]] = {}

    def covering_sets(elem_bit: int) -> list[int]:
        key = elem_bit
        if key not in covers_of:
            covers_of[key] = [i for i, s in enumerate(kept) if s & elem_bit]
        return covers_of[key]

    def expand(uncovered: int, chosen: list[int]) -> None:
        nonlocal best_size, best_sel
        if uncovered == 0:
            if len(chosen) < best_size:
                best_size = len(chosen)
                best_sel = tuple(chosen)
            return
        if len(chosen) + set_cover_packing_bound(kept, uncovered) >= best_size:
            return
        # rarest uncovered element
        rare_bit, rare_opts = 0, None
        rest = uncovered
        while rest:
            e = rest & -rest
            rest ^= e
            opts = covering_sets(e)
            if rare_opts is None or len(opts) < len(rare_opts):
                rare_bit, rare_opts = e, opts
                if len(opts) == 1:
                    break
        # try covering it, largest marginal gain first
        opts = sorted(rare_opts, key=lambda i: -(kept[i] & uncovered).bit_count())
        for i in opts:
            chosen.append(i)
            expand(uncovered & ~kept[i], chosen)
            chosen.pop()

    expand(universe, [])
    return best_size, tuple(kept_idx[i] for i in best_sel)


def min_set_cover_bruteforce(sets: Sequence[int], universe: int) -> int:
    """Reference solver by subset enumeration over set families."""
    m = len(sets)
    if m > 22:
        raise ValueError("brute force limited to 22 sets")
    best = None
    for choice in range(1 << m):
        acc = 0
        for i in _bits(choice):
            acc |= sets[i]
        if acc & universe == universe:
            k = choice.bit_count()
            if best is None or k < best:
                best = k
    if best is None:
        raise ValueError("sets do not cover the universe")
    return best


# ---------------------------------------------------------------------------
# transport feasibility (max-flow)
# ---------------------------------------------------------------------------


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.to: list[int] = []
        self.cap: list[int] = []
        self.head: list[list[int]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, c: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for e in self.head[u]:
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[e]))
                        if got:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                flow += pushed


def transport_feasible(
    supply: Sequence[int], value_masks: Sequence[int], demand: Sequence[int]
) -> bool:
    """Whether mass can be moved from supply to demand along the relation
    arcs x -> y, y in phi(x).  Supplies and demands are integers with equal
    totals (callers scale rational weights to a common denominator)."""
    n = len(supply)
    total = sum(supply)
    if total != sum(demand):
        raise ValueError("supply and demand totals differ")
    dinic = _Dinic(2 * n + 2)
    s, t = 2 * n, 2 * n + 1
    for i in range(n):
        if supply[i]:
            dinic.add_edge(s, i, supply[i])
        if demand[i]:
            dinic.add_edge(n + i, t, demand[i])
        for j in _bits(value_masks[i]):
            dinic.add_edge(i, n + j, total)
    return dinic.max_flow(s, t) == total


# ---------------------------------------------------------------------------
# stationary distributions
# ---------------------------------------------------------------------------


def solve_linear(A: list[list[Fraction]], b: list[Fraction]) -> list[Fraction]:
    """Exact Gaussian elimination; A square and nonsingular."""
    n = len(A)
    M = [row[:] + [b[i]] for i, row in enumerate(A)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = M[col][col]
        M[col] = [v / inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [vr - f * vc for vr, vc in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def strongly_connected_components(masks: Sequence[int]) -> list[list[int]]:
    """Tarjan SCCs of the digraph x -> y for y in masks[x]; iterative."""
    n = len(masks)
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(list(_bits(masks[root]))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(list(_bits(masks[w])))))
                    advanced = True
                    break
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                low[work[-1][0]] = min(low[work[-1][0]], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def stationary_mixture(masks: Sequence[int]) -> list[Fraction]:
    """Stationary distribution of the uniform-branch kernel K(x, .) =
    uniform on the value set: the equal-weight mixture of the unique
    stationary distributions of all terminal strongly connected classes."""
    n = len(masks)
    comps = strongly_connected_components(masks)
    comp_of = [0] * n
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    terminal = []
    for ci, comp in enumerate(comps):
        closed = True
        for v in comp:
            for w in _bits(masks[v]):
                if comp_of[w] != ci:
                    closed = False
                    break
            if not closed:
                break
        if closed:
            terminal.append(comp)
    out = [Fraction(0)] * n
    share = Fraction(1, len(terminal))
    for comp in terminal:
        pi = _stationary_on_class(masks, comp)
        for v, p in zip(comp, pi):
            out[v] += share * p
    return out


def _stationary_on_class(masks: Sequence[int], comp: list[int]) -> list[Fraction]:
    m = len(comp)
    if m == 1:
        return [Fraction(1)]
    pos = {v: i for i, v in enumerate(comp)}
    # rows: (K^T - I) pi = 0 for the first m-1 equations, then sum = 1
    A = [[Fraction(0)] * m for _ in range(m)]
    for v in comp:
        out_deg = masks[v].bit_count()
        w = Fraction(1, out_deg)
        for y in _bits(masks[v]):
            A[pos[y]][pos[v]] += w
    for i in range(m):
        A[i][i] -= 1
    b = [Fraction(0)] * m
    A[m - 1] = [Fraction(1)] * m
    b[m - 1] = Fraction(1)
    return solve_linear(A, b)
