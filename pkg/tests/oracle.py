"""Brute-force reference computations, independent of the table kernels.

Rings here are lists of matrices (tuples of tuples) over Z/p with plain
Python arithmetic; ideals are frozensets; a one-sided ideal is a summand iff a
complementary one-sided ideal exists (found by exhaustive search).
"""

from itertools import product


class MatRing:
    def __init__(self, p, mask):
        self.p, self.n = p, len(mask)
        free = [(i, j) for i in range(self.n) for j in range(self.n) if mask[i][j]]
        self.elems = []
        for vals in product(range(p), repeat=len(free)):
            m = [[0] * self.n for _ in range(self.n)]
            for (i, j), v in zip(free, vals):
                m[i][j] = v
            self.elems.append(tuple(map(tuple, m)))
        self.zero = tuple((0,) * self.n for _ in range(self.n))
        self.one = tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))

    def add(self, a, b):
        return tuple(tuple((x + y) % self.p for x, y in zip(r, s)) for r, s in zip(a, b))

    def sub(self, a, b):
        return tuple(tuple((x - y) % self.p for x, y in zip(r, s)) for r, s in zip(a, b))

    def mul(self, a, b):
        n = self.n
        return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) % self.p for j in range(n))
                     for i in range(n))

    def unit(self, i, j):
        return tuple(tuple(int((r, c) == (i - 1, j - 1)) for c in range(self.n)) for r in range(self.n))

    def from_units(self, *pairs):
        out = self.zero
        for i, j in pairs:
            out = self.add(out, self.unit(i, j))
        return out


class ZnRing:
    def __init__(self, n):
        self.p = n
        self.elems = list(range(n))
        self.zero, self.one = 0, 1 % n

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p


def idempotents(R):
    return [e for e in R.elems if R.mul(e, e) == e]


def close(R, side, gens):
    """Smallest side-ideal containing gens, by naive fixpoint iteration."""
    S = {R.zero} | set(gens)
    while True:
        new = set(S)
        for x in S:
            for r in R.elems:
                new.add(R.mul(x, r) if side == "right" else R.mul(r, x))
            for y in S:
                new.add(R.add(x, y))
        if new == S:
            return frozenset(S)
        S = new


def all_ideals(R, side):
    found = {frozenset({R.zero})}
    frontier = list(found)
    while frontier:
        nxt = []
        for I in frontier:
            for x in R.elems:
                if x not in I:
                    J = close(R, side, set(I) | {x})
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
        frontier = nxt
    return found


def is_summand(R, side, N, ideals):
    total = len(R.elems)
    return any(len(N) * len(K) == total and N & K == {R.zero} for K in ideals)


def principal(R, side, a):
    return close(R, side, {a})


def regular(R, a):
    return any(R.mul(R.mul(a, b), a) == a for b in R.elems)


def submodules(add, act, zero):
    """All submodules of a module given as nested lists (add[x][y], act[x][r])."""
    n, scalars = len(add), range(len(act[0]))

    def closure(gens):
        S = {zero} | set(gens)
        while True:
            new = set(S)
            for x in S:
                new.update(act[x][r] for r in scalars)
                new.update(add[x][y] for y in S)
            if new == S:
                return frozenset(S)
            S = new

    found = {frozenset({zero})}
    frontier = list(found)
    while frontier:
        nxt = []
        for N in frontier:
            for x in range(n):
                if x not in N:
                    K = closure(N | {x})
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
        frontier = nxt
    return found


def module_summands(add, act, zero):
    subs = submodules(add, act, zero)
    n = len(add)
    return {N for N in subs if any(len(N) * len(K) == n and N & K == {zero} for K in subs)}
