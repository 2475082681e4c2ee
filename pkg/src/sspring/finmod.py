"""Finite right modules over finite rings.

Left modules are handled as right modules over the opposite ring.  Module
maps are enumerated generator by generator: a partial map defined on the
submodule ``M_i`` spanned by the first ``i`` generators extends to
``M_i + gR`` along ``g -> y`` exactly when ``y*r == phi(g*r)`` for every
scalar ``r`` with ``g*r`` already in ``M_i``.  The search is vectorized over
all partial maps of one level at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

import numpy as np

from . import bits
from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded, DescriptorError, RingMismatch
from .ideals import Ideal, additive_closure
from .ring import AxiomReport, FiniteRing, _first_triple, _first_true, _frozen, table, table_axiom_violation
from .verdicts import PropertyVerdict


@dataclass(frozen=True)
class ModuleDescriptor:
    kind: str  # free, ideal, quotient, direct_sum, submodule
    n: int = 0
    ideal: int = 0  # member bit-vector for ideal/quotient kinds
    parts: tuple = ()

    def summary(self) -> str:
        if self.kind == "free":
            return f"free({self.n})"
        if self.kind == "direct_sum":
            return "(" + " + ".join(p.summary() for p in self.parts) + ")"
        return self.kind


@dataclass(frozen=True, eq=False)
class FiniteModule:
    ring: FiniteRing
    size: int
    add: np.ndarray
    zero: int
    act: np.ndarray  # act[x, r] = x*r
    labels: Optional[tuple[str, ...]] = None
    descriptor: Optional[ModuleDescriptor] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "act", _frozen(self.act))
        if self.add.shape != (self.size, self.size) or self.act.shape != (self.size, self.ring.size):
            raise DescriptorError("module tables have the wrong shape")

    def __repr__(self):
        kind = self.descriptor.summary() if self.descriptor else "?"
        return f"FiniteModule(size={self.size}, {kind})"

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    @property
    def full(self) -> int:
        return (1 << self.size) - 1

    @property
    def is_free(self) -> bool:
        return self.descriptor is not None and self.descriptor.kind == "free"


@dataclass(frozen=True)
class Submodule:
    parent: FiniteModule
    members: int

    def __len__(self):
        return bits.popcount(self.members)

    @property
    def elements(self) -> np.ndarray:
        return bits.members(self.members, self.parent.size)


@dataclass(frozen=True, eq=False)
class ModuleMap:
    source: FiniteModule
    target: FiniteModule
    table: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.table[x]

    def image(self) -> int:
        return bits.to_mask(self.table, self.target.size)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.table)) == self.target.size


# construction ---------------------------------------------------------------

def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(f"module of size {size} exceeds size cap {cap}")


def free_module(R: FiniteRing, n: int, cap: int = DEFAULT_CAPS.size) -> FiniteModule:
    """``R^n`` with tuples numbered lexicographically, first coordinate most significant."""
    if n < 0:
        raise DescriptorError("rank must be non-negative", "n")
    size = R.size ** n
    _check_cap(size, cap)
    strides = [R.size ** (n - 1 - i) for i in range(n)]
    x = np.arange(size)
    coords = np.stack([(x // s) % R.size for s in strides], axis=1) if n else np.zeros((1, 0), dtype=np.int64)
    add = np.zeros((size, size), dtype=np.int64)
    act = np.zeros((size, R.size), dtype=np.int64)
    for i, s in enumerate(strides):
        c = coords[:, i]
        add += R.add[c[:, None], c[None, :]].astype(np.int64) * s
        act += R.mul[c, :].astype(np.int64) * s
    zero = sum(R.zero * s for s in strides)
    labels = tuple("(" + ",".join(R.label(int(c)) for c in row) + ")" for row in coords)
    return FiniteModule(R, size, add, zero, act, labels, ModuleDescriptor("free", n=n))


def _restrict(R: FiniteRing, elems: np.ndarray, add_src, act_src):
    pos = np.full(add_src.shape[0], -1, dtype=np.int64)
    pos[elems] = np.arange(len(elems))
    add = pos[add_src[np.ix_(elems, elems)]]
    act = pos[act_src[elems, :]]
    if (add < 0).any() or (act < 0).any():
        raise DescriptorError("member set is not closed")
    return pos, add, act


def ideal_module(I: Ideal) -> FiniteModule:
    """A right ideal viewed as a right module; members keep their ring order."""
    if I.side != "right":
        raise DescriptorError("module construction needs a right ideal; use the opposite ring for left ideals")
    R, elems = I.ring, I.elements
    pos, add, act = _restrict(R, elems, R.add, R.mul)
    labels = tuple(R.label(int(x)) for x in elems)
    return FiniteModule(R, len(elems), add, int(pos[R.zero]), act, labels,
                        ModuleDescriptor("ideal", ideal=I.members))


def quotient_module(I: Ideal) -> FiniteModule:
    """``R/I`` for a right ideal ``I``; cosets numbered by least representative."""
    if I.side != "right":
        raise DescriptorError("quotient needs a right ideal; use the opposite ring for left ideals")
    R, elems = I.ring, I.elements
    rep_of = R.add[:, elems].min(axis=1)
    reps = np.unique(rep_of)
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    coset = pos[rep_of]
    add = coset[R.add[np.ix_(reps, reps)]]
    act = coset[R.mul[reps, :]]
    labels = tuple(R.label(int(r)) + "+I" for r in reps)
    return FiniteModule(R, len(reps), add, int(coset[R.zero]), act, labels,
                        ModuleDescriptor("quotient", ideal=I.members))


def direct_sum(M1: FiniteModule, M2: FiniteModule, cap: int = DEFAULT_CAPS.size) -> FiniteModule:
    """``M1 (+) M2``; pair ``(x, y)`` has index ``x * |M2| + y``."""
    if M1.ring is not M2.ring and not M1.ring.same_tables(M2.ring):
        raise RingMismatch("direct sum of modules over different rings")
    size = M1.size * M2.size
    _check_cap(size, cap)
    x, y = np.divmod(np.arange(size), M2.size)
    add = M1.add[x[:, None], x[None, :]].astype(np.int64) * M2.size + M2.add[y[:, None], y[None, :]]
    act = M1.act[x, :].astype(np.int64) * M2.size + M2.act[y, :]
    labels = tuple(f"({M1.label(int(a))},{M2.label(int(b))})" for a, b in zip(x, y))
    return FiniteModule(M1.ring, size, add, int(M1.zero * M2.size + M2.zero), act, labels,
                        ModuleDescriptor("direct_sum", parts=(M1.descriptor, M2.descriptor)))


def as_module(N: Submodule) -> FiniteModule:
    M, elems = N.parent, N.elements
    pos, add, act = _restrict(M.ring, elems, M.add, M.act)
    labels = tuple(M.label(int(x)) for x in elems)
    return FiniteModule(M.ring, len(elems), add, int(pos[M.zero]), act, labels,
                        ModuleDescriptor("submodule", ideal=N.members))


def build_module(R: FiniteRing, desc: tuple, cap: int = DEFAULT_CAPS.size) -> FiniteModule:
    """Build from a tuple descriptor: ``("free", n)``, ``("ideal", I)``,
    ``("quotient", I)`` or ``("direct_sum", M1, M2)``."""
    kind = desc[0]
    if kind == "free":
        return free_module(R, desc[1], cap)
    if kind in ("ideal", "quotient"):
        I = desc[1]
        if I.ring is not R and not I.ring.same_tables(R):
            raise RingMismatch("ideal belongs to another ring")
        M = ideal_module(I) if kind == "ideal" else quotient_module(I)
        _check_cap(M.size, cap)
        return M
    if kind == "direct_sum":
        return direct_sum(desc[1], desc[2], cap)
    raise DescriptorError(f"unknown module kind {kind!r}")


def validate_module(M: FiniteModule) -> AxiomReport:
    """Exhaustive check of the right-module axioms."""
    R, n, add, act = M.ring, M.size, M.add, M.act
    x = np.arange(n)
    r = np.arange(R.size)

    def act_over_ring_add(xs):  # x(r+s) = xr + xs, witness (x, r, s)
        return act[xs[:, None, None], R.add[None, :, :]] != add[act[xs][:, :, None], act[xs][:, None, :]]

    def act_over_module_add(xs):  # (x+y)r = xr + yr, witness (x, y, r)
        return act[add[xs][:, :, None], r[None, None, :]] != add[act[xs][:, None, :], act[None, :, :]]

    def act_assoc(xs):  # x(rs) = (xr)s, witness (x, r, s)
        return act[xs[:, None, None], R.mul[None, :, :]] != act[act[xs][:, :, None], r[None, None, :]]

    checks = [
        ("act_over_ring_addition", lambda: _first_triple(n, act_over_ring_add)),
        ("act_over_module_addition", lambda: _first_triple(n, act_over_module_add)),
        ("act_associativity", lambda: _first_triple(n, act_assoc)),
        ("act_identity", lambda: _first_true(act[:, R.one] != x)),
    ]
    hit = table_axiom_violation(n, add, M.zero, checks)
    return AxiomReport(True) if hit is None else AxiomReport(False, hit)


# submodules -----------------------------------------------------------------

def _closure_elems(M: FiniteModule, gens) -> np.ndarray:
    gens = [int(g) for g in gens]
    if not gens:
        return np.array([M.zero])
    return additive_closure(M.add, M.zero, np.unique(M.act[gens, :]))


def submodule_generated(M: FiniteModule, gens) -> Submodule:
    return Submodule(M, bits.to_mask(_closure_elems(M, gens), M.size))


def submodule_sum(A: Submodule, B: Submodule) -> Submodule:
    M = A.parent
    return Submodule(M, bits.to_mask(np.unique(M.add[np.ix_(A.elements, B.elements)]), M.size))


def enumerate_submodules(M: FiniteModule, count_cap: int = DEFAULT_CAPS.hom) -> list[Submodule]:
    """All submodules sorted by member bit-vector (joins of cyclic submodules)."""
    cyclic = sorted({bits.to_mask(_closure_elems(M, [x]), M.size) for x in range(M.size)})
    elems = {c: bits.members(c, M.size) for c in cyclic}
    zero = 1 << M.zero
    seen, frontier = {zero}, [zero]
    while frontier:
        nxt = []
        for m in frontier:
            own = bits.members(m, M.size)
            for c in cyclic:
                if bits.is_subset(c, m):
                    continue
                joined = bits.to_mask(np.unique(M.add[np.ix_(own, elems[c])]), M.size)
                if joined not in seen:
                    seen.add(joined)
                    nxt.append(joined)
                    if len(seen) > count_cap:
                        raise CapExceeded(f"more than {count_cap} submodules")
        frontier = nxt
    return [Submodule(M, m) for m in sorted(seen)]


# homomorphisms --------------------------------------------------------------

@dataclass(frozen=True)
class _Level:
    gen: int
    scalars: np.ndarray      # r with gen*r already inside the previous span
    anchored: np.ndarray     # gen*r for those r
    new: np.ndarray          # elements added at this level
    new_r: np.ndarray        # new[i] = gen*new_r[i] + new_m[i]
    new_m: np.ndarray


def _chain(M: FiniteModule, seed: Sequence[int] = ()) -> list[_Level]:
    """Greedy generating chain: the ``seed`` elements first (those already
    generated are skipped), then repeatedly the least element not yet spanned."""
    key = ("chain", tuple(seed))
    if key in M._cache:
        return M._cache[key]
    inside = np.zeros(M.size, dtype=bool)
    inside[M.zero] = True
    span = np.array([M.zero])
    levels = []
    candidates = list(seed) + list(range(M.size))
    for g in candidates:
        if inside[g]:
            continue
        orbit = M.act[g, :]
        anchored_r = np.flatnonzero(inside[orbit])
        combos = M.add[orbit[:, None], span[None, :]]  # (|R|, |span|)
        flat = combos.ravel()
        uniq, first = np.unique(flat, return_index=True)
        fresh = ~inside[uniq]
        new, first = uniq[fresh], first[fresh]
        r_idx, m_idx = np.divmod(first, len(span))
        levels.append(_Level(int(g), anchored_r, orbit[anchored_r], new, r_idx, span[m_idx]))
        inside[new] = True
        span = np.flatnonzero(inside)
        if inside.all():
            break
    M._cache[key] = levels
    return levels


def generators(M: FiniteModule) -> list[int]:
    return [lv.gen for lv in _chain(M)]


# bound on materialized table cells, independent of the hom count cap
HOM_CELLS = 1 << 25


def _extend(M: FiniteModule, N: FiniteModule, levels, allowed, cap: int) -> np.ndarray:
    """Rows of all module maps ``M -> N`` whose generator images lie in ``allowed``."""
    partial = np.full((1, M.size), -1, dtype=np.int64)
    partial[0, M.zero] = N.zero
    for lv, cand in zip(levels, allowed):
        cand = np.arange(N.size) if cand is None else np.asarray(cand, dtype=np.int64)
        cand_act = N.act[cand][:, lv.scalars]  # (|cand|, k)
        rows, picks = [], []
        step = max(1, (1 << 22) // max(1, len(cand) * max(1, len(lv.scalars))))
        for start in range(0, len(partial), step):
            block = partial[start:start + step]
            need = block[:, lv.anchored]  # (B, k)
            ok = (cand_act[None, :, :] == need[:, None, :]).all(axis=2)
            b, c = np.nonzero(ok)
            rows.append(b + start)
            picks.append(cand[c])
        b = np.concatenate(rows)
        y = np.concatenate(picks)
        if len(b) > cap or len(b) * M.size > HOM_CELLS:
            raise CapExceeded(f"hom enumeration exceeds cap {cap}")
        nxt = partial[b].copy()
        nxt[:, lv.new] = N.add[N.act[y[:, None], lv.new_r[None, :]], nxt[:, lv.new_m]]
        partial = nxt
        if not len(partial):
            break
    if len(partial) and (partial < 0).any():
        raise AssertionError("generating chain does not span the module")
    order = np.lexsort(partial.T[::-1]) if len(partial) else np.arange(0)
    return partial[order]


def _same_ring(M: FiniteModule, N: FiniteModule) -> None:
    if M.ring is not N.ring and not M.ring.same_tables(N.ring):
        raise RingMismatch("modules over different rings")


def hom_array(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT_CAPS.hom) -> np.ndarray:
    """All module maps ``M -> N`` as rows of images, lexicographically sorted."""
    _same_ring(M, N)
    key = ("hom", id(N), cap)
    if key not in M._cache:
        levels = _chain(M)
        M._cache[key] = (_extend(M, N, levels, [None] * len(levels), cap), N)
    return M._cache[key][0]


def hom_maps(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT_CAPS.hom) -> list[ModuleMap]:
    return [ModuleMap(M, N, tuple(int(v) for v in row)) for row in hom_array(M, N, cap)]


def is_module_map(M: FiniteModule, N: FiniteModule, tab: Sequence[int]) -> bool:
    """Direct check of additivity and scalar compatibility."""
    t = np.asarray(tab)
    return bool((t[M.add] == N.add[t[:, None], t[None, :]]).all() and (t[M.act] == N.act[t, :]).all())


def is_isomorphic(M: FiniteModule, N: FiniteModule, cap: int = DEFAULT_CAPS.hom) -> Optional[ModuleMap]:
    """Least bijective module map ``M -> N``, or None."""
    _same_ring(M, N)
    if M.size != N.size:
        return None
    levels = _chain(M)
    rows = _extend(M, N, levels, [None] * len(levels), cap)
    for row in rows:
        if len(np.unique(row)) == N.size:
            return ModuleMap(M, N, tuple(int(v) for v in row))
    return None


def retractions(M: FiniteModule, N: Submodule, cap: int = DEFAULT_CAPS.hom) -> np.ndarray:
    """All endomorphisms ``p`` of ``M`` with ``p(M)`` inside ``N`` and ``p`` the
    identity on ``N``; these are exactly the idempotent endomorphisms with
    image ``N``.  Rows sorted lexicographically."""
    n_elems = N.elements
    inside = bits.mask_to_flags(N.members, M.size)
    seed = [lv.gen for lv in _chain(as_module(N))]
    seed = [int(n_elems[g]) for g in seed]  # back to parent indices
    levels = _chain(M, seed)
    allowed = [[lv.gen] if inside[lv.gen] else n_elems for lv in levels]
    return _extend(M, M, levels, allowed, cap)


def summand_witness_module(M: FiniteModule, N: Submodule, cap: int = DEFAULT_CAPS.hom) -> Optional[ModuleMap]:
    """Least idempotent endomorphism with image exactly ``N``, or None."""
    rows = retractions(M, N, cap)
    if not len(rows):
        return None
    return ModuleMap(M, M, tuple(int(v) for v in rows[0]))


# endomorphism ring ----------------------------------------------------------

def _row_codes(rows: np.ndarray) -> np.ndarray:
    weights = np.random.default_rng(0x5eed).integers(1, 2**63, size=rows.shape[1], dtype=np.uint64)
    with np.errstate(over="ignore"):
        return (rows.astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


def _lookup(codes_sorted, order, rows, query: np.ndarray) -> np.ndarray:
    q = _row_codes(query)
    pos = np.searchsorted(codes_sorted, q)
    pos = np.minimum(pos, len(codes_sorted) - 1)
    idx = order[pos]
    if not (codes_sorted[pos] == q).all() or not np.array_equal(rows[idx], query):
        raise AssertionError("endomorphism set not closed under the ring operations")
    return idx


def endomorphism_ring(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> tuple[FiniteRing, list[ModuleMap]]:
    """``End(M)`` with pointwise addition and ``(f*g)(x) = f(g(x))``.

    Element ``i`` of the ring is the ``i``-th map of :func:`hom_maps`.
    """
    rows = hom_array(M, M, caps.hom)
    k = len(rows)
    if k > caps.size:
        raise CapExceeded(f"End ring of size {k} exceeds size cap {caps.size}")
    codes = _row_codes(rows)
    order = np.argsort(codes, kind="stable")
    codes_sorted = codes[order]
    if len(np.unique(codes_sorted)) != k:
        raise AssertionError("hash collision among endomorphisms")
    add = np.empty((k, k), dtype=np.int64)
    mul = np.empty((k, k), dtype=np.int64)
    for i in range(k):
        add[i] = _lookup(codes_sorted, order, rows, M.add[rows[i][None, :], rows])
        mul[i] = _lookup(codes_sorted, order, rows, rows[i][rows])
    zero = _lookup(codes_sorted, order, rows, np.full((1, M.size), M.zero))[0]
    one = _lookup(codes_sorted, order, rows, np.arange(M.size)[None, :])[0]
    desc = table(add, mul, int(zero), int(one))
    ring = FiniteRing(k, add, mul, int(zero), int(one), desc)
    return ring, [ModuleMap(M, M, tuple(int(v) for v in row)) for row in rows]


# summands and module properties ---------------------------------------------

def module_summands(M: FiniteModule, caps: Caps = DEFAULT_CAPS) -> tuple[list[int], str]:
    """Member bit-vectors of all direct summands, sorted, plus the method used.

    Images of idempotent endomorphisms when ``End(M)`` fits the hom cap;
    otherwise every submodule is tested for a retraction.
    """
    if "summands" in M._cache:
        return M._cache["summands"]
    try:
        rows = hom_array(M, M, caps.hom)
        idem = (np.take_along_axis(rows, rows, axis=1) == rows).all(axis=1)
        found = sorted({bits.to_mask(np.unique(r), M.size) for r in rows[idem]})
        result = (found, "idempotent_endomorphisms")
    except CapExceeded:
        if M.size > caps.size:
            raise
        subs = enumerate_submodules(M, caps.size)
        found = [N.members for N in subs if len(retractions(M, N, caps.hom))]
        result = (found, "submodule_retractions")
    M._cache["summands"] = result
    return result


def _sub_payload(M: FiniteModule, mask: int) -> dict:
    elems = [int(x) for x in bits.members(mask, M.size)]
    return {"members": elems, "labels": [M.label(x) for x in elems]}


def module_pair_fails(M: FiniteModule, prop: str, a: int, b: int, cap: int = DEFAULT_CAPS.hom) -> bool:
    """Re-check one pair of summands with a retraction search of its own."""
    A, B = Submodule(M, a), Submodule(M, b)
    if prop == "sip":
        target = a & b
    else:
        if prop == "c3" and a & b != 1 << M.zero:
            return False
        target = submodule_sum(A, B).members
    return summand_witness_module(M, Submodule(M, target), cap) is None


def module_c2_instance_fails(M: FiniteModule, sub: int, summand: int, cap: int = DEFAULT_CAPS.hom) -> bool:
    if summand_witness_module(M, Submodule(M, sub), cap) is not None:
        return False
    return is_isomorphic(as_module(Submodule(M, sub)), as_module(Submodule(M, summand)), cap) is not None


def module_property(M: FiniteModule, prop: str, caps: Caps = DEFAULT_CAPS) -> PropertyVerdict:
    """SSP, SIP, C3 or C2 for ``M``; the witness is the least failing pair of
    summands (or submodule/summand pair for C2), ordered by bit-vector."""
    prop = prop.lower()
    summands, method = module_summands(M, caps)
    is_summand = set(summands)
    zero = 1 << M.zero
    if prop == "c2":
        if M.size > caps.ideals:
            raise CapExceeded(f"C2 needs submodule enumeration; module size {M.size} > {caps.ideals}")
        subs = enumerate_submodules(M, caps.size)
        for N in subs:
            if N.members in is_summand:
                continue
            for K in summands:
                if bits.popcount(K) == len(N) and is_isomorphic(
                        as_module(N), as_module(Submodule(M, K)), caps.hom) is not None:
                    witness = {"submodule": _sub_payload(M, N.members), "summand": _sub_payload(M, K)}
                    return PropertyVerdict("c2", "right", False, witness, method)
        return PropertyVerdict("c2", "right", True, {"submodules_checked": len(subs)}, method)
    if prop not in ("ssp", "sip", "c3"):
        raise ValueError(f"unknown module property {prop!r}")
    elems = {s: bits.members(s, M.size) for s in summands}
    for a, b in product(summands, summands):
        if prop == "sip":
            target = a & b
        else:
            if prop == "c3" and a & b != zero:
                continue
            target = bits.to_mask(np.unique(M.add[np.ix_(elems[a], elems[b])]), M.size)
        if target not in is_summand:
            witness = {"pair": [_sub_payload(M, a), _sub_payload(M, b)], "result": _sub_payload(M, target)}
            return PropertyVerdict(prop, "right", False, witness, method)
    return PropertyVerdict(prop, "right", True, {"summands": len(summands)}, method)


def module_witness_refails(M: FiniteModule, verdict: PropertyVerdict, caps: Caps = DEFAULT_CAPS) -> bool:
    if verdict.holds:
        return False
    w = verdict.witness
    if verdict.property == "c2":
        return module_c2_instance_fails(M, bits.to_mask(w["submodule"]["members"], M.size),
                                        bits.to_mask(w["summand"]["members"], M.size), caps.hom)
    a, b = (bits.to_mask(p["members"], M.size) for p in w["pair"])
    return module_pair_fails(M, verdict.property, a, b, caps.hom)
