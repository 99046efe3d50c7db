"""Brute-force reference implementations.

Nothing here imports the package's kernels: ranks come from textbook
Gaussian elimination, union-find written out longhand, or explicit
enumeration over subsets.
"""

from itertools import combinations, permutations


def gf_prime_rank(cols, p):
    """Rank over the prime field GF(p) of the matrix whose columns are ``cols``."""
    if not cols:
        return 0
    rows = [list(r) for r in zip(*cols)]
    rank = 0
    ncols = len(cols)
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], p - 2, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def forest_rank(vertices, edges, subset):
    """``|V| - #components`` of the spanning subgraph on the chosen edges."""
    parent = {v: v for v in vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    r = 0
    for lab, u, v in edges:
        if lab not in subset:
            continue
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            r += 1
    return r


def bicircular_plus_rank(vertices, edges, vertex_labels, subset):
    """Per component of the chosen edges (vertex elements count as loops):
    all its vertices if it holds a cycle, one fewer otherwise."""
    chosen = [(u, v) for lab, u, v in edges if lab in subset]
    chosen += [(v, v) for v in vertices if vertex_labels[v] in subset]
    touched = {x for e in chosen for x in e}
    adj = {v: [] for v in touched}
    for i, (u, v) in enumerate(chosen):
        adj[u].append(i)
        adj[v].append(i)
    seen, total = set(), 0
    for start in touched:
        if start in seen:
            continue
        comp, stack, edge_ids = set(), [start], set()
        while stack:
            x = stack.pop()
            if x in comp:
                continue
            comp.add(x)
            for i in adj[x]:
                edge_ids.add(i)
                u, v = chosen[i]
                stack.extend((u, v))
        seen |= comp
        cyclic = len(edge_ids) >= len(comp)
        total += len(comp) if cyclic else len(comp) - 1
    return total


def rank_dict(ground, rank_fn):
    """Every subset (as a frozenset) mapped to its rank."""
    out = {}
    for k in range(len(ground) + 1):
        for S in combinations(ground, k):
            out[frozenset(S)] = rank_fn(frozenset(S))
    return out


def axioms_hold(ground, r):
    """Normalization, unit increase, submodularity by enumeration."""
    for S, v in r.items():
        if not 0 <= v <= len(S):
            return False
        for x in ground:
            if x not in S:
                w = r[S | {x}]
                if w < v or w > v + 1:
                    return False
    subsets = list(r)
    for A in subsets:
        for B in subsets:
            if r[A | B] + r[A & B] > r[A] + r[B]:
                return False
    return True


def dual_rank(ground, r):
    E = frozenset(ground)
    rE = r[E]
    return {S: len(S) + r[E - S] - rE for S in r}


def minor_rank(ground, r, C, D):
    C, D = frozenset(C), frozenset(D)
    rest = [x for x in ground if x not in C and x not in D]
    rc = r[C]
    return rest, {frozenset(S): r[frozenset(S) | C] - rc for S in _subsets(rest)}


def _subsets(xs):
    for k in range(len(xs) + 1):
        yield from combinations(xs, k)


def isomorphic(g1, r1, g2, r2):
    """Brute force over all bijections; ``None`` or a dict."""
    if len(g1) != len(g2):
        return None
    for perm in permutations(g2):
        f = dict(zip(g1, perm))
        if all(r2[frozenset(f[x] for x in S)] == v for S, v in r1.items()):
            return f
    return None


def has_minor(ground, r, tground, tr):
    """Try every contract/delete split; isomorphism by brute force."""
    k = len(ground) - len(tground)
    if k < 0:
        return False
    rN = tr[frozenset(tground)]
    for removed in combinations(ground, k):
        for kc in range(len(removed) + 1):
            for C in combinations(removed, kc):
                D = [x for x in removed if x not in C]
                rest, mr = minor_rank(ground, r, C, D)
                if mr[frozenset(rest)] != rN:
                    continue
                if isomorphic(rest, mr, tground, tr) is not None:
                    return True
    return False


def covering_number(ground, r, a):
    """Least number of sets of rank at most ``a`` covering the ground set."""
    if not ground:
        return 0
    # maximal rank-<=a sets are the closures of rank-a sets (or E if r <= a)
    E = frozenset(ground)
    if r[E] <= a:
        return 1
    flats = set()
    for S, v in r.items():
        if v == a:
            cl = frozenset(x for x in ground if r[S | {x}] == v)
            flats.add(cl)
    flats = list(flats)
    for k in range(1, len(flats) + 1):
        for fam in combinations(flats, k):
            if frozenset().union(*fam) == E:
                return k
    raise AssertionError("no cover")


def uniform_rank(r):
    return lambda S: min(len(S), r)
