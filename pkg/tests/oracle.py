"""Slow brute-force references written straight from the definitions.

Modules here are Z_n-modules of the form Z_a x Z_b (b = 1 gives a cyclic
module) with elements as plain tuples.  Nothing is shared with smlab.
"""
from itertools import product


class BruteModule:
    def __init__(self, n, a, b=1):
        assert n % a == 0 and n % b == 0
        self.n, self.a, self.b = n, a, b
        self.elems = [(x, y) for x in range(a) for y in range(b)]

    def add(self, u, v):
        return ((u[0] + v[0]) % self.a, (u[1] + v[1]) % self.b)

    def act(self, r, m):
        return ((r * m[0]) % self.a, (r * m[1]) % self.b)

    def span(self, gens):
        cur = {(0, 0)}
        frontier = list(cur)
        while frontier:
            nxt = []
            for u in frontier:
                for g in gens:
                    v = self.add(u, g)
                    if v not in cur:
                        cur.add(v)
                        nxt.append(v)
            frontier = nxt
        return frozenset(cur)

    def submodules(self):
        subs = set()
        for g in self.elems:
            for h in self.elems:
                subs.add(self.span([g, h]))
        return subs

    # scalars
    def nilpotent(self, r):
        x = r % self.n
        for _ in range(self.n + 1):
            if x == 0:
                return True
            x = (x * r) % self.n
        return False

    def ann_zero(self, m):
        return all(self.act(r, m) != (0, 0) for r in range(1, self.n))

    def colon(self, N):
        return {r for r in range(self.n) if all(self.act(r, m) in N for m in self.elems)}

    def sqrt(self, S):
        return {r for r in range(self.n) if any(pow(r, k, self.n) in S for k in range(1, self.n + 2))}

    def semi_n(self, N):
        return all(
            not (self.act(r * r, m) in N) or self.act(r, m) in N
            for r in range(self.n) if not self.nilpotent(r)
            for m in self.elems if self.ann_zero(m)
        )

    def n_sub(self, N):
        rad = self.sqrt(self.colon({(0, 0)}))
        return all(
            not (self.act(r, m) in N) or m in N
            for r in range(self.n) if r not in rad
            for m in self.elems
        )

    def prime(self, N):
        col = self.colon(N)
        return all(not (self.act(r, m) in N) or r in col or m in N for r in range(self.n) for m in self.elems)


def zn_semi_n_ideal(n, I):
    """Semi n-ideal of Z_n: a^2 in I, a not nilpotent => a in I."""
    nil = {r for r in range(n) if any(pow(r, k, n) == 0 for k in range(1, n + 2))}
    return all(not (a * a % n in I) or a in I for a in range(n) if a not in nil)


def ideal_members(n, d):
    return frozenset(x % n for x in range(0, n, d)) if d else frozenset([0])


def all_pairs(xs):
    return list(product(xs, xs))
