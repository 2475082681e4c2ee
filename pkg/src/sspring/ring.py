"""Explicit finite rings given by dense Cayley tables.

Elements are plain ``int`` indices into ``range(ring.size)``.  Rings are
built from a :class:`RingDescriptor`, a small tree language covering
``Z/n``, full and patterned matrix rings, direct products, corner rings
``eRe``, opposite rings and raw tables.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Optional, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import CapExceeded, DescriptorError

KINDS = ("zmod", "table", "matrix", "pattern", "product", "corner", "opposite")


@dataclass(frozen=True)
class RingDescriptor:
    kind: str
    n: Optional[int] = None
    base: Optional["RingDescriptor"] = None
    mask: Optional[tuple[tuple[int, ...], ...]] = None
    factors: tuple["RingDescriptor", ...] = ()
    element: Optional[int] = None
    size: Optional[int] = None
    add: Optional[tuple[tuple[int, ...], ...]] = None
    mul: Optional[tuple[tuple[int, ...], ...]] = None
    zero: Optional[int] = None
    one: Optional[int] = None

    def to_dict(self) -> dict:
        """Serialize to the JSON descriptor document shape."""
        k = self.kind
        if k == "zmod":
            return {"kind": k, "n": self.n}
        if k == "matrix":
            return {"kind": k, "n": self.n, "base": self.base.to_dict()}
        if k == "pattern":
            return {"kind": k, "n": self.n, "base": self.base.to_dict(),
                    "mask": [list(row) for row in self.mask]}
        if k == "product":
            return {"kind": k, "factors": [f.to_dict() for f in self.factors]}
        if k == "corner":
            return {"kind": k, "base": self.base.to_dict(), "element": self.element}
        if k == "opposite":
            return {"kind": k, "base": self.base.to_dict()}
        return {"kind": k, "size": self.size,
                "add": [list(r) for r in self.add], "mul": [list(r) for r in self.mul],
                "zero": self.zero, "one": self.one}


def zmod(n: int) -> RingDescriptor:
    return RingDescriptor("zmod", n=n)


def matrix(n: int, base: RingDescriptor) -> RingDescriptor:
    return RingDescriptor("matrix", n=n, base=base)


def pattern(mask: Sequence[Sequence[int]], base: RingDescriptor) -> RingDescriptor:
    mask_t = tuple(tuple(int(v) for v in row) for row in mask)
    return RingDescriptor("pattern", n=len(mask_t), base=base, mask=mask_t)


def product(*factors: RingDescriptor) -> RingDescriptor:
    return RingDescriptor("product", factors=tuple(factors))


def corner(base: RingDescriptor, element: int) -> RingDescriptor:
    return RingDescriptor("corner", base=base, element=element)


def opposite(base: RingDescriptor) -> RingDescriptor:
    return RingDescriptor("opposite", base=base)


def table(add, mul, zero: int, one: int) -> RingDescriptor:
    add_t = tuple(tuple(int(v) for v in row) for row in add)
    mul_t = tuple(tuple(int(v) for v in row) for row in mul)
    return RingDescriptor("table", size=len(add_t), add=add_t, mul=mul_t, zero=int(zero), one=int(one))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.int32)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class FiniteRing:
    """A finite ring on ``{0, ..., size-1}`` with dense operation tables.

    Treat instances as immutable.  ``_cache`` holds derived data (idempotents,
    principal ideals, the opposite ring) computed on demand.
    """

    size: int
    add: np.ndarray
    mul: np.ndarray
    zero: int
    one: int
    descriptor: Optional[RingDescriptor] = None
    labels: Optional[tuple[str, ...]] = None
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "add", _frozen(self.add))
        object.__setattr__(self, "mul", _frozen(self.mul))
        shape = (self.size, self.size)
        if self.add.shape != shape or self.mul.shape != shape:
            raise DescriptorError(f"tables must have shape {shape}")
        for name, t in (("add", self.add), ("mul", self.mul)):
            if t.size and (t.min() < 0 or t.max() >= self.size):
                raise DescriptorError("table entry out of range", name)
        for name, v in (("zero", self.zero), ("one", self.one)):
            if not 0 <= v < self.size:
                raise DescriptorError("element index out of range", name)

    def __repr__(self):
        kind = self.descriptor.kind if self.descriptor else "?"
        return f"FiniteRing(size={self.size}, kind={kind})"

    @property
    def neg(self) -> np.ndarray:
        """``neg[a]`` is the additive inverse of ``a``."""
        if "neg" not in self._cache:
            hits = self.add == self.zero
            neg = np.argmax(hits, axis=1)
            if not hits[np.arange(self.size), neg].all():
                raise ValueError("additive inverses missing; validate_axioms first")
            self._cache["neg"] = _frozen(neg)
        return self._cache["neg"]

    @property
    def units(self) -> np.ndarray:
        """Boolean flags: ``units[a]`` iff ``a`` has a two-sided inverse."""
        if "units" not in self._cache:
            left = (self.mul == self.one).any(axis=0)
            right = (self.mul == self.one).any(axis=1)
            self._cache["units"] = left & right
        return self._cache["units"]

    def label(self, a: int) -> str:
        return self.labels[a] if self.labels else str(a)

    def index_of(self, label: str) -> int:
        if not self.labels:
            raise KeyError(label)
        return self.labels.index(label)

    def same_tables(self, other: "FiniteRing") -> bool:
        return (self is other) or (
            self.size == other.size and self.zero == other.zero and self.one == other.one
            and np.array_equal(self.add, other.add) and np.array_equal(self.mul, other.mul))

    # arithmetic
    def _check(self, *xs: int):
        for x in xs:
            if not 0 <= x < self.size:
                raise IndexError(f"element {x} out of range for ring of size {self.size}")

    def plus(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add[a, b])

    def times(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul[a, b])

    def minus(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add[a, self.neg[b]])

    def negate(self, a: int) -> int:
        self._check(a)
        return int(self.neg[a])

    def power(self, a: int, k: int) -> int:
        self._check(a)
        if k < 0:
            raise ValueError("exponent must be non-negative")
        result, base = self.one, a
        while k:
            if k & 1:
                result = int(self.mul[result, base])
            base = int(self.mul[base, base])
            k >>= 1
        return result

    def prod(self, *xs: int) -> int:
        acc = self.one
        for x in xs:
            acc = self.times(acc, x)
        return acc


def arith(R: FiniteRing, op: str, a: int, b: int = 0) -> int:
    """Dispatch ``add``, ``mul``, ``neg``, ``sub`` or ``pow`` on ``R``."""
    if op == "add":
        return R.plus(a, b)
    if op == "mul":
        return R.times(a, b)
    if op == "neg":
        return R.negate(a)
    if op == "sub":
        return R.minus(a, b)
    if op == "pow":
        return R.power(a, b)
    raise ValueError(f"unknown operation {op!r}")


# construction ---------------------------------------------------------------

def predicted_size(desc: RingDescriptor) -> int:
    """Carrier size of ``desc`` without building it (corner: upper bound)."""
    k = desc.kind
    if k == "zmod":
        return desc.n
    if k == "table":
        return desc.size
    if k == "matrix":
        return predicted_size(desc.base) ** (desc.n * desc.n)
    if k == "pattern":
        return predicted_size(desc.base) ** sum(map(sum, desc.mask))
    if k == "product":
        return prod(predicted_size(f) for f in desc.factors)
    return predicted_size(desc.base)


def check_descriptor(desc: RingDescriptor, path: str = "") -> None:
    """Structural validation; raises DescriptorError with a field path."""
    def sub(name):
        return f"{path}.{name}" if path else name

    if desc.kind not in KINDS:
        raise DescriptorError(f"unknown kind {desc.kind!r}", sub("kind"))
    if desc.kind in ("zmod", "matrix", "pattern"):
        if not isinstance(desc.n, int) or isinstance(desc.n, bool) or desc.n < 1:
            raise DescriptorError(f"n must be an integer >= 1, got {desc.n!r}", sub("n"))
    if desc.kind in ("matrix", "pattern", "corner", "opposite"):
        if desc.base is None:
            raise DescriptorError("missing base descriptor", sub("base"))
        check_descriptor(desc.base, sub("base"))
    if desc.kind == "pattern":
        _check_mask(desc.mask, desc.n, sub("mask"))
    if desc.kind == "product":
        if not desc.factors:
            raise DescriptorError("product needs at least one factor", sub("factors"))
        for i, f in enumerate(desc.factors):
            check_descriptor(f, f"{sub('factors')}[{i}]")
    if desc.kind == "corner" and not isinstance(desc.element, int):
        raise DescriptorError("corner needs an integer element index", sub("element"))
    if desc.kind == "table":
        n = desc.size
        if not isinstance(n, int) or n < 1:
            raise DescriptorError("size must be an integer >= 1", sub("size"))
        for name in ("add", "mul"):
            t = getattr(desc, name)
            if t is None or len(t) != n or any(len(row) != n for row in t):
                raise DescriptorError(f"{name} must be a {n}x{n} table", sub(name))
            for i, row in enumerate(t):
                for j, v in enumerate(row):
                    if not 0 <= v < n:
                        raise DescriptorError(f"entry {v} out of range", f"{sub(name)}[{i}][{j}]")
        for name in ("zero", "one"):
            v = getattr(desc, name)
            if not isinstance(v, int) or not 0 <= v < n:
                raise DescriptorError(f"{name} must be an element index", sub(name))


def _check_mask(mask, n: int, path: str) -> None:
    if mask is None or len(mask) != n or any(len(row) != n for row in mask):
        raise DescriptorError(f"mask must be {n}x{n}", path)
    for i in range(n):
        for j in range(n):
            if mask[i][j] not in (0, 1):
                raise DescriptorError("mask entries must be 0 or 1", f"{path}[{i}][{j}]")
    for i in range(n):
        if not mask[i][i]:
            raise DescriptorError("mask must contain the full diagonal", f"{path}[{i}][{i}]")
    for i, k, j in itertools.product(range(n), repeat=3):
        if mask[i][k] and mask[k][j] and not mask[i][j]:
            raise DescriptorError(
                f"mask not multiplicatively closed: ({i},{k}) and ({k},{j}) set", f"{path}[{i}][{j}]")


def construct(desc: RingDescriptor, cap: Optional[int] = None) -> FiniteRing:
    """Build the ring described by ``desc``.

    Matrix and pattern elements are numbered by their entries read row-major,
    the first entry most significant; products likewise by factor indices.
    """
    cap = DEFAULT_CAPS.size if cap is None else cap
    check_descriptor(desc)
    size = predicted_size(desc)
    if size > cap:
        raise CapExceeded(f"{desc.kind} ring of size {size} exceeds size cap {cap}")
    return _build(desc, cap)


def _build(desc: RingDescriptor, cap: int) -> FiniteRing:
    k = desc.kind
    if k == "zmod":
        n = desc.n
        r = np.arange(n)
        return FiniteRing(n, (r[:, None] + r) % n, (r[:, None] * r) % n, 0, 1 % n,
                          desc, tuple(str(i) for i in range(n)))
    if k == "table":
        return FiniteRing(desc.size, np.array(desc.add), np.array(desc.mul), desc.zero, desc.one, desc)
    if k == "opposite":
        base = _build(desc.base, cap)
        return FiniteRing(base.size, base.add, base.mul.T, base.zero, base.one, desc, base.labels)
    if k == "corner":
        base = _build(desc.base, cap)
        if not 0 <= desc.element < base.size:
            raise DescriptorError("element index out of range", "element")
        ring, _ = corner_ring(base, desc.element)
        return FiniteRing(ring.size, ring.add, ring.mul, ring.zero, ring.one, desc, ring.labels)
    if k == "product":
        return _build_product(desc, [_build(f, cap) for f in desc.factors])
    base = _build(desc.base, cap)
    n = desc.n
    mask = desc.mask if k == "pattern" else tuple((1,) * n for _ in range(n))
    return _build_matrix(desc, base, mask)


def _digits(size: int, radix: int, width: int) -> np.ndarray:
    """Row ``x`` holds the base-``radix`` digits of ``x``, most significant first."""
    out = np.empty((size, width), dtype=np.int64)
    x = np.arange(size)
    for pos in range(width - 1, -1, -1):
        out[:, pos] = x % radix
        x = x // radix
    return out


def _build_product(desc: RingDescriptor, parts: list[FiniteRing]) -> FiniteRing:
    sizes = [p.size for p in parts]
    size = prod(sizes)
    strides = [prod(sizes[i + 1:]) for i in range(len(sizes))]
    coords = np.empty((size, len(parts)), dtype=np.int64)
    x = np.arange(size)
    for i, s in enumerate(strides):
        coords[:, i] = (x // s) % sizes[i]
    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for i, (p, s) in enumerate(zip(parts, strides)):
        c = coords[:, i]
        add += p.add[c[:, None], c[None, :]].astype(np.int64) * s
        mul += p.mul[c[:, None], c[None, :]].astype(np.int64) * s
    zero = sum(p.zero * s for p, s in zip(parts, strides))
    one = sum(p.one * s for p, s in zip(parts, strides))
    labels = tuple("(" + ",".join(p.label(int(c)) for p, c in zip(parts, row)) + ")" for row in coords)
    return FiniteRing(size, add, mul, zero, one, desc, labels)


def _build_matrix(desc: RingDescriptor, base: FiniteRing, mask) -> FiniteRing:
    n = len(mask)
    positions = [(i, j) for i in range(n) for j in range(n) if mask[i][j]]
    q, w = base.size, len(positions)
    size = q ** w
    digits = _digits(size, q, w)
    radix = q ** np.arange(w - 1, -1, -1, dtype=np.int64)

    # full n x n entry array, unmasked positions hold the base zero
    full = np.full((size, n, n), base.zero, dtype=np.int64)
    for s, (i, j) in enumerate(positions):
        full[:, i, j] = digits[:, s]
    # a row (or column) of n base elements encoded in base q
    vec_radix = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    row_code = full @ vec_radix                    # (size, n): row i of x
    col_code = full.transpose(0, 2, 1) @ vec_radix  # (size, n): column j of y
    vecs = _digits(q ** n, q, n)
    dot = np.full((q ** n, q ** n), base.zero, dtype=np.int64)
    for k in range(n):
        dot = base.add[dot, base.mul[vecs[:, None, k], vecs[None, :, k]]]

    add = np.zeros((size, size), dtype=np.int64)
    mul = np.zeros((size, size), dtype=np.int64)
    for s, (i, j) in enumerate(positions):
        add += base.add[digits[:, None, s], digits[None, :, s]] * radix[s]
        mul += dot[row_code[:, None, i], col_code[None, :, j]] * radix[s]
    zero = int(np.dot([base.zero] * w, radix))
    one = int(np.dot([base.one if i == j else base.zero for (i, j) in positions], radix))
    labels = tuple(_matrix_label(row, positions, base, n) for row in digits)
    return FiniteRing(size, add, mul, zero, one, desc, labels)


def _matrix_label(row, positions, base: FiniteRing, n: int) -> str:
    if base.descriptor is not None and base.descriptor.kind == "zmod":
        terms = []
        for d, (i, j) in zip(row, positions):
            if d == base.zero:
                continue
            unit = f"e{i + 1}{j + 1}" if n < 10 else f"e{i + 1},{j + 1}"
            terms.append(unit if d == base.one else f"{base.label(int(d))}{unit}")
        return "+".join(terms) if terms else "0"
    full = [[base.label(base.zero)] * n for _ in range(n)]
    for d, (i, j) in zip(row, positions):
        full[i][j] = base.label(int(d))
    return "[" + ",".join("[" + ",".join(r) + "]" for r in full) + "]"


# derived rings --------------------------------------------------------------

def is_idempotent(R: FiniteRing, e: int) -> bool:
    return int(R.mul[e, e]) == e


def corner_ring(R: FiniteRing, e: int) -> tuple[FiniteRing, tuple[int, ...]]:
    """The corner ring ``eRe`` with identity ``e``.

    Returns the ring and its embedding: corner element ``i`` is the
    ``R``-element ``embedding[i]``.  Corner elements are ordered by their
    ``R`` index.
    """
    R._check(e)
    if not is_idempotent(R, e):
        raise DescriptorError(f"element {e} is not idempotent", "element")
    reps = np.unique(R.mul[R.mul[e, :], e])
    pos = np.full(R.size, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    sub_add = pos[R.add[np.ix_(reps, reps)]]
    sub_mul = pos[R.mul[np.ix_(reps, reps)]]
    if (sub_add < 0).any() or (sub_mul < 0).any():
        raise AssertionError("corner carrier not closed; ring axioms violated")
    labels = tuple(R.labels[r] for r in reps) if R.labels else None
    ring = FiniteRing(len(reps), sub_add, sub_mul, int(pos[R.zero]), int(pos[e]),
                      corner(R.descriptor, e) if R.descriptor else None, labels)
    return ring, tuple(int(r) for r in reps)


def opposite_ring(R: FiniteRing) -> FiniteRing:
    """Same carrier and addition, multiplication reversed.  Cached on ``R``."""
    if "opposite" not in R._cache:
        desc = opposite(R.descriptor) if R.descriptor else None
        op = FiniteRing(R.size, R.add, R.mul.T, R.zero, R.one, desc, R.labels)
        op._cache["opposite"] = R
        R._cache["opposite"] = op
    return R._cache["opposite"]


@dataclass(frozen=True)
class Invertibility:
    two_sided_inverse: Optional[int]
    left_inverses: tuple[int, ...]
    right_inverses: tuple[int, ...]


def invertibility(R: FiniteRing, a: int) -> Invertibility:
    """Exhaustive inverse scan.  Finite rings are Dedekind-finite, so one-sided
    inverses exist together and coincide."""
    R._check(a)
    left = tuple(int(b) for b in np.flatnonzero(R.mul[:, a] == R.one))
    right = tuple(int(b) for b in np.flatnonzero(R.mul[a, :] == R.one))
    if bool(left) != bool(right):
        raise AssertionError(f"element {a} has a one-sided inverse only; not a ring")
    if left:
        if len(left) != 1 or left != right:
            raise AssertionError(f"inverse of {a} not unique; not a ring")
        return Invertibility(left[0], left, right)
    return Invertibility(None, (), ())


# axioms ---------------------------------------------------------------------

@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    first_violation: Optional[tuple[str, tuple[int, ...]]] = None


def _first_true(flags: np.ndarray) -> Optional[tuple[int, ...]]:
    if not flags.any():
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(flags)), flags.shape))


def _first_triple(n: int, violated) -> Optional[tuple[int, int, int]]:
    """Least ``(a, b, c)`` with ``violated(a_chunk)[i, b, c]`` true."""
    step = max(1, (1 << 22) // max(1, n * n))
    for start in range(0, n, step):
        a = np.arange(start, min(n, start + step))
        hit = _first_true(violated(a))
        if hit is not None:
            return (int(a[hit[0]]), hit[1], hit[2])
    return None


def table_axiom_violation(size: int, add: np.ndarray, zero: int,
                          scalar_checks) -> Optional[tuple[str, tuple[int, ...]]]:
    """Abelian-group checks on ``add`` followed by caller-supplied checks."""
    r = np.arange(size)
    checks = [
        ("add_associativity", lambda: _first_triple(
            size, lambda a: add[add[a][:, :, None], r[None, None, :]] != add[a[:, None, None], add[None, :, :]])),
        ("add_commutativity", lambda: _first_true(add != add.T)),
        ("add_identity", lambda: _first_true((add[zero, :] != r) | (add[:, zero] != r))),
        ("add_inverse", lambda: _first_true(~(add == zero).any(axis=1))),
    ] + list(scalar_checks)
    for name, check in checks:
        hit = check()
        if hit is not None:
            return name, hit
    return None


def validate_axioms(R: FiniteRing) -> AxiomReport:
    """Exhaustively check the ring axioms.

    The first failing axiom (in a fixed order) is reported together with its
    lexicographically least witness.
    """
    n, add, mul = R.size, R.add, R.mul
    r = np.arange(n)

    checks = [
        ("mul_associativity", lambda: _first_triple(
            n, lambda a: mul[mul[a][:, :, None], r[None, None, :]] != mul[a[:, None, None], mul[None, :, :]])),
        ("left_distributivity", lambda: _first_triple(
            n, lambda a: mul[a[:, None, None], add[None, :, :]]
            != add[mul[a][:, :, None], mul[a][:, None, :]])),
        ("right_distributivity", lambda: _first_triple(
            n, lambda a: mul[add[a][:, :, None], r[None, None, :]]
            != add[mul[a][:, None, :], mul[None, :, :]])),
        ("mul_identity", lambda: _first_true((mul[R.one, :] != r) | (mul[:, R.one] != r))),
        ("zero_ne_one", lambda: (R.zero,) if n > 1 and R.zero == R.one else None),
    ]
    hit = table_axiom_violation(n, add, R.zero, checks)
    return AxiomReport(True) if hit is None else AxiomReport(False, hit)
