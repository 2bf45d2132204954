"""Brute-force recounts used to pin the fast paths.

Everything here is deliberately naive: quadruple loops, explicit coset
tables, determinant minors.  Slow and obviously correct is the point;
none of it shares code with the library kernels it checks.
"""

from itertools import combinations

import numpy as np

from matgrowth.groups import gid, ginv, gmul


def quad_energy(A):
    """#{(g,h,u,v) in A^4 : g^-1 h = u^-1 v} by literal enumeration."""
    spec, group = A.spec, A.group
    ws = A.wires
    total = 0
    for g in ws:
        for h in ws:
            lhs = gmul(spec, group, ginv(spec, group, g), h)
            for u in ws:
                for v in ws:
                    if gmul(spec, group, ginv(spec, group, u), v) == lhs:
                        total += 1
    return total


def quad_product_energy(A):
    """#{(g,h,u,v) in A^4 : g h = u v} by literal enumeration."""
    spec, group = A.spec, A.group
    ws = A.wires
    total = 0
    for g in ws:
        for h in ws:
            lhs = gmul(spec, group, g, h)
            for u in ws:
                for v in ws:
                    if gmul(spec, group, u, v) == lhs:
                        total += 1
    return total


def pair_products(A, B):
    return {gmul(A.spec, A.group, a, b) for a in A.wires for b in B.wires}


def coset_partition(A, tag):
    """Partition of A's wires into left cosets of the tagged subgroup,
    computed from the explicit element list of the subgroup."""
    spec, group = A.spec, A.group
    hs = tag.elements(spec).wires
    blocks = {}
    for w in A.wires:
        key = frozenset(gmul(spec, group, w, h) for h in hs)
        blocks.setdefault(key, set()).add(w)
    return sorted(sorted(block) for block in blocks.values())


def t2_m1_recount(A):
    """Max torus-coset fiber by looping over every (x, y) pair."""
    spec = A.spec
    best = 0
    for x in range(spec.q):
        for y in range(spec.q):
            hits = 0
            for (a, b, c) in A.wires:
                if spec.add(spec.mul(a, x), b) == spec.mul(c, y):
                    hits += 1
            best = max(best, hits)
    return best


def t2_m2_recount(A):
    spec = A.spec
    best = 0
    for d in range(1, spec.q):
        hits = sum(1 for (a, b, c) in A.wires if spec.div(a, c) == d)
        best = max(best, hits)
    return best


def t2_m3_recount(A):
    spec = A.spec
    best = 0
    for a in range(1, spec.q):
        for c in range(1, spec.q):
            hits = sum(1 for w in A.wires if w[0] == a and w[2] == c)
            best = max(best, hits)
    return best


def heis_base_recount(A):
    best = 0
    for g1 in range(A.spec.q):
        for g2 in range(A.spec.q):
            hits = sum(1 for w in A.wires if w[0] == g1 and w[1] == g2)
            best = max(best, hits)
    return best


def heis_line_recount(A):
    """Max line occupancy of the base projection, from point pairs.

    Any line carrying the maximum passes through two occupied base points
    unless only one base point is occupied, in which case every line
    degenerates to that single fiber.
    """
    spec = A.spec
    bases = {}
    for w in A.wires:
        bases[(w[0], w[1])] = bases.get((w[0], w[1]), 0) + 1
    pts = list(bases)
    single = max(bases.values())
    best = single
    for (x1, y1), (x2, y2) in combinations(pts, 2):
        dx, dy = spec.sub(x2, x1), spec.sub(y2, y1)
        weight = 0
        for (x, y), cnt in bases.items():
            # (x - x1, y - y1) parallel to (dx, dy)
            if spec.mul(spec.sub(x, x1), dy) == spec.mul(spec.sub(y, y1), dx):
                weight += cnt
        best = max(best, weight)
    return best


def max_collinear(p, tuples):
    """Largest number of the given projective 4-tuples on one line (F_p).

    Rank condition via 3x3 minors: w lies on the line through u, v iff
    every 3x3 minor of the stacked matrix vanishes.  The minors are
    linear in w with coefficients from the 2x2 minors of (u, v), so each
    pair reduces to one 4x4 matmul over all candidates.
    """
    pts = np.array(sorted(tuples), dtype=np.int64) % p
    n = len(pts)
    if n <= 2:
        return n
    best = 2
    for i, j in combinations(range(n), 2):
        u, v = pts[i], pts[j]
        m2 = np.outer(u, v) - np.outer(v, u)  # antisymmetric 2x2 minors
        if not (m2 % p).any():
            raise ValueError("proportional tuples are not distinct points")
        # rows: column triples (1,2,3), (0,2,3), (0,1,3), (0,1,2)
        coef = np.zeros((4, 4), dtype=np.int64)
        for row, (c0, c1, c2) in enumerate(
            [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
        ):
            coef[row, c0] = m2[c1, c2]
            coef[row, c1] = -m2[c0, c2]
            coef[row, c2] = m2[c0, c1]
        dets = (pts @ coef.T) % p
        best = max(best, int(np.count_nonzero(~dets.any(axis=1))))
    return best
