"""Naive reference computations the tests compare the library against.

Nothing here imports lcomkit's metric or statistics code.
"""

import math


def naive_pairs(sets):
    """(P, Q) counts by materialising every pairwise intersection."""
    sets = [set(s) for s in sets]
    if all(len(s) == 0 for s in sets):
        return 0, 0
    p = q = 0
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if sets[i].intersection(sets[j]):
                q += 1
            else:
                p += 1
    return p, q


def naive_lcom(sets):
    p, q = naive_pairs(sets)
    return p - q if p > q else 0


def naive_lcom2(sets, own_attributes):
    """Definition-2 style: P empty only if every raw set is empty."""
    if all(len(s) == 0 for s in sets):
        return 0
    restricted = [set(s) & set(own_attributes) for s in sets]
    p = q = 0
    for i in range(len(restricted)):
        for j in range(i + 1, len(restricted)):
            if restricted[i] & restricted[j]:
                q += 1
            else:
                p += 1
    return p - q if p > q else 0


def naive_edges(sets):
    sets = [set(s) for s in sets]
    return sum(
        1 for i in range(len(sets)) for j in range(i + 1, len(sets)) if sets[i] & sets[j]
    )


def chain_sets(n):
    """Attribute sets of an n-chain: method i uses v_{i-1} and v_i."""
    out = []
    for i in range(1, n + 1):
        s = set()
        if i > 1:
            s.add(f"v{i - 1}")
        if i < n:
            s.add(f"v{i}")
        out.append(s)
    return out


def two_pass_stats(values):
    """(min, max, mean, median, sample std) with plain Python two-pass sums."""
    xs = sorted(float(v) for v in values)
    n = len(xs)
    mean = sum(xs) / n
    if n % 2:
        median = xs[n // 2]
    else:
        median = (xs[n // 2 - 1] + xs[n // 2]) / 2
    if n > 1:
        var = sum((x - mean) ** 2 for x in xs) / (n - 1)
    else:
        var = 0.0
    return xs[0], xs[-1], mean, median, math.sqrt(var)


def components(nodes, edges):
    """Connected components by repeated label propagation (no BFS queue)."""
    label = {n: n for n in nodes}
    changed = True
    while changed:
        changed = False
        for a, b in edges:
            lo = min(label[a], label[b])
            for x in (a, b):
                if label[x] != lo:
                    label[x] = lo
                    changed = True
    groups = {}
    for n in nodes:
        groups.setdefault(label[n], set()).add(n)
    return sorted((frozenset(g) for g in groups.values()), key=sorted)
