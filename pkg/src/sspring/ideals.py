"""One-sided ideals as bit-vector sets, idempotents and summand witnesses.

A right ideal ``N`` is a direct summand of ``R_R`` exactly when ``N = eR``
for an idempotent ``e``; :func:`summand_witness` decides summands by looking
the member set up among the principal ideals of all idempotents.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Literal, Optional

import numpy as np

from . import bits
from .errors import CapExceeded, RingMismatch
from .ring import FiniteRing

Side = Literal["left", "right"]


@dataclass(frozen=True, eq=False)
class Ideal:
    ring: FiniteRing
    side: Side
    members: int  # bit-vector over the carrier

    def __eq__(self, other):
        return (isinstance(other, Ideal) and self.ring is other.ring
                and self.side == other.side and self.members == other.members)

    def __hash__(self):
        return hash((id(self.ring), self.side, self.members))

    def __len__(self):
        return bits.popcount(self.members)

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    @property
    def elements(self) -> np.ndarray:
        return bits.members(self.members, self.ring.size)

    def is_zero(self) -> bool:
        return self.members == 1 << self.ring.zero

    def closure_violation(self) -> Optional[str]:
        """Name of the first failed ideal invariant, or None."""
        R, xs = self.ring, self.elements
        flags = bits.mask_to_flags(self.members, R.size)
        if not flags[R.zero]:
            return "zero"
        if not flags[R.add[np.ix_(xs, xs)]].all():
            return "addition"
        if not flags[R.neg[xs]].all():
            return "negation"
        if self.side == "right" and not flags[R.mul[xs, :]].all():
            return "right multiplication"
        if self.side == "left" and not flags[R.mul[:, xs]].all():
            return "left multiplication"
        return None


def _cached(R: FiniteRing, key, compute):
    cache = R._cache
    if key not in cache:
        cache[key] = compute()
    return cache[key]


def idempotents(R: FiniteRing) -> tuple[int, ...]:
    """All ``e`` with ``e*e == e``, ascending."""
    return _cached(R, "idempotents", lambda: tuple(
        int(e) for e in np.flatnonzero(R.mul[np.arange(R.size), np.arange(R.size)] == np.arange(R.size))))


def additive_closure(add: np.ndarray, zero: int, elems: Iterable[int]) -> np.ndarray:
    """Sorted members of the additive subgroup generated by ``elems``."""
    n = add.shape[0]
    inside = np.zeros(n, dtype=bool)
    inside[zero] = True
    group = np.array([zero], dtype=np.int64)
    for x in elems:
        if inside[x]:
            continue
        cycle = [zero]
        y = int(x)
        while y != zero:
            cycle.append(y)
            y = int(add[y, x])
        group = np.unique(add[np.ix_(group, np.asarray(cycle))])
        inside[group] = True
    return group


def _check_side(side: str) -> None:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def ideal_generated(R: FiniteRing, side: str, gens: Iterable[int]) -> Ideal:
    """Smallest ``side`` ideal containing ``gens``."""
    _check_side(side)
    gens = [int(g) for g in gens]
    if not gens:
        return Ideal(R, side, 1 << R.zero)
    g = np.asarray(gens)
    products = R.mul[g, :] if side == "right" else R.mul[:, g].T
    elems = np.unique(products)
    return Ideal(R, side, bits.to_mask(additive_closure(R.add, R.zero, elems), R.size))


def principal(R: FiniteRing, side: str, a: int) -> Ideal:
    """``aR`` (right) or ``Ra`` (left); cached per ring."""
    _check_side(side)

    def compute():
        row = R.mul[a, :] if side == "right" else R.mul[:, a]
        return Ideal(R, side, bits.to_mask(np.unique(row), R.size))

    # aR is already closed under addition: ar + as = a(r + s)
    return _cached(R, ("principal", side, int(a)), compute)


def _same(I: Ideal, J: Ideal) -> None:
    if I.ring is not J.ring and not I.ring.same_tables(J.ring):
        raise RingMismatch("ideals belong to different rings")
    if I.side != J.side:
        raise RingMismatch(f"cannot combine a {I.side} ideal with a {J.side} ideal")


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    R = I.ring
    sums = R.add[np.ix_(I.elements, J.elements)]
    return Ideal(R, I.side, bits.to_mask(np.unique(sums), R.size))


def ideal_intersect(I: Ideal, J: Ideal) -> Ideal:
    _same(I, J)
    return Ideal(I.ring, I.side, I.members & J.members)


def annihilator(R: FiniteRing, side: str, X: Iterable[int]) -> Ideal:
    """``l(X)`` as a left ideal or ``r(X)`` as a right ideal."""
    _check_side(side)
    X = np.asarray(sorted({int(x) for x in X}), dtype=np.int64)
    if X.size == 0:
        return Ideal(R, side, (1 << R.size) - 1)
    if side == "left":
        flags = (R.mul[:, X] == R.zero).all(axis=1)
    else:
        flags = (R.mul[X, :] == R.zero).all(axis=0)
    return Ideal(R, side, bits.flags_to_mask(flags))


def summand_table(R: FiniteRing, side: str) -> dict[int, int]:
    """Map from member set of each summand ``eR`` (or ``Re``) to its least idempotent."""
    _check_side(side)

    def compute():
        table: dict[int, int] = {}
        for e in idempotents(R):
            table.setdefault(principal(R, side, e).members, e)
        return table

    return _cached(R, ("summands", side), compute)


def summand_witness(R: FiniteRing, I: Ideal) -> Optional[int]:
    """Least idempotent generating ``I`` on its side, or None if ``I`` is not
    a direct summand."""
    if I.ring is not R and not I.ring.same_tables(R):
        raise RingMismatch("ideal belongs to a different ring")
    _check_side(I.side)
    return summand_table(R, I.side).get(I.members)


def enumerate_ideals(R: FiniteRing, side: str, size_cap: int = 16) -> list[Ideal]:
    """Every ``side`` ideal of ``R``, sorted by member bit-vector.

    Ideals are reached by joining principal ideals onto already found ones,
    starting from zero; every ideal of a finite ring is a finite sum of
    principal ideals, so the search is complete.
    """
    _check_side(side)
    if R.size > size_cap:
        raise CapExceeded(f"ideal enumeration needs ring size <= {size_cap}, got {R.size}")
    cyclic = sorted({principal(R, side, a).members for a in range(R.size)})
    cyclic_elems = {m: bits.members(m, R.size) for m in cyclic}
    seen = {1 << R.zero}
    frontier = [1 << R.zero]
    while frontier:
        nxt = []
        for m in frontier:
            own = bits.members(m, R.size)
            for c in cyclic:
                if bits.is_subset(c, m):
                    continue
                joined = bits.to_mask(np.unique(R.add[np.ix_(own, cyclic_elems[c])]), R.size)
                if joined not in seen:
                    seen.add(joined)
                    nxt.append(joined)
        frontier = nxt
    return [Ideal(R, side, m) for m in sorted(seen)]


def complement(R: FiniteRing, e: int) -> int:
    """``1 - e``."""
    return int(R.add[R.one, R.neg[e]])
