"""Independent reference implementations used only by the tests.

None of these import the production code paths they check: ranks use list
elimination, the bracket uses a fresh union-find on crossing ends, and the
third-move table comes from sampling straight lines in the plane.
"""

from __future__ import annotations

import math
import random
from itertools import product

from arrowkh.poly import LaurentPoly


def naive_rank(matrix: list[list[int]]) -> int:
    """Row reduction over F2 on a list-of-lists matrix."""
    m = [list(r) for r in matrix]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                m[r] = [a ^ b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def bits_to_rows(rows: list[int], width: int) -> list[list[int]]:
    return [[(r >> k) & 1 for k in range(width)] for r in rows]


def bracket_oracle(d) -> LaurentPoly:
    """Bracket polynomial straight from the Gauss code, ignoring cusps.

    Each crossing has four ends (over/under x in/out).  The smoothing that
    follows the orientation joins over-in with under-out; the other joins
    the two ins and the two outs.  The orientation-following one is the A
    smoothing at positive crossings and the B smoothing at negative ones.
    """
    ids = sorted({p.crossing for comp in d.components for p in comp})
    sign = {p.crossing: p.sign for comp in d.components for p in comp}
    # arcs: node ("end", crossing, over, out?) linked along components
    arcs = []
    for comp in d.components:
        for k, p in enumerate(comp):
            q = comp[(k + 1) % len(comp)]
            arcs.append(((p.crossing, p.over, True), (q.crossing, q.over, False)))
    n = len(ids)
    total = LaurentPoly()
    dd = LaurentPoly({2: -1, -2: -1})
    for choice in product((0, 1), repeat=n):
        parent: dict = {}

        def find(x):
            parent.setdefault(x, x)
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            parent[find(x)] = find(y)

        for a, b in arcs:
            union(a, b)
        for c, is_b in zip(ids, choice):
            follow = (sign[c] > 0) != bool(is_b)
            if follow:
                union((c, True, False), (c, False, True))
                union((c, False, False), (c, True, True))
            else:
                union((c, True, False), (c, False, False))
                union((c, True, True), (c, False, True))
        nodes = {x for a in arcs for x in a}
        loops = len({find(x) for x in nodes}) + d.zero_crossing_unknots
        beta = sum(choice)
        total = total + LaurentPoly({n - 2 * beta: 1}) * dd ** (loops - 1)
    return total


def geometric_r3_table(samples: int = 20000, seed: int = 0):
    """All (orders, signs) -> orders transitions of a third move on three lines.

    Strand 0 is on top, 1 in the middle, 2 at the bottom; crossings are
    a = (0, 1), b = (0, 2), c = (1, 2).  Orders are the sequences in which
    each strand meets its two crossings; the top line is reflected across
    crossing c.
    """
    rng = random.Random(seed)

    def inter(p, u, q, v):
        det = -u[0] * v[1] + u[1] * v[0]
        rx, ry = q[0] - p[0], q[1] - p[1]
        return (-rx * v[1] + ry * v[0]) / det, (u[0] * ry - u[1] * rx) / det

    def pattern(P, U):
        names = {(0, 1): "a", (0, 2): "b", (1, 2): "c"}
        params = {0: {}, 1: {}, 2: {}}
        signs = {}
        for (i, j), nm in names.items():
            t, s = inter(P[i], U[i], P[j], U[j])
            params[i][nm], params[j][nm] = t, s
            signs[nm] = 1 if U[i][0] * U[j][1] - U[i][1] * U[j][0] > 0 else -1
        orders = tuple("".join(sorted(params[k], key=params[k].get)) for k in range(3))
        return orders, (signs["a"], signs["b"], signs["c"])

    table = set()
    for _ in range(samples):
        U = [(math.cos(t), math.sin(t)) for t in (rng.uniform(0, 2 * math.pi) for _ in range(3))]
        P = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        try:
            before = pattern(P, U)
            t, _ = inter(P[1], U[1], P[2], U[2])
            c = (P[1][0] + t * U[1][0], P[1][1] + t * U[1][1])
            nrm = (-U[0][1], U[0][0])
            dist = (c[0] - P[0][0]) * nrm[0] + (c[1] - P[0][1]) * nrm[1]
            P2 = [(P[0][0] + 2 * dist * nrm[0], P[0][1] + 2 * dist * nrm[1]), P[1], P[2]]
            after = pattern(P2, U)
        except ZeroDivisionError:
            continue
        table.add((before, after))
    return table
