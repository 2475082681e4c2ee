"""Named rings with frozen expected outcomes, including two
counterexamples: the sparse 3x3 pattern ring over F_2 (not SSP) and the
endomorphism ring of ``U = N (+) R/L`` over the upper-triangular 2x2 ring
(two-sided SIP, not SSP)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from . import bits
from .config import DEFAULT_CAPS, Caps
from .finmod import FiniteModule, direct_sum, endomorphism_ring, ideal_module, quotient_module, validate_module
from .ideals import Ideal, idempotents
from .properties import (check_c2, check_c3, check_sip, check_ssp, is_abelian, is_regular_ring,
                         semisimplicity, ssp_pair_fails, witness_refails)
from .ring import (FiniteRing, RingDescriptor, construct, matrix, opposite_ring, pattern, product,
                   table, validate_axioms, zmod)

SPARSE_MASK = ((1, 0, 1), (0, 1, 0), (0, 0, 1))
TRIANGULAR_MASK = ((1, 1), (0, 1))

# nontrivial idempotents of the sparse pattern ring as sums of matrix units
SPARSE_IDEMPOTENTS = {
    "E1": ("e11",), "E2": ("e22",), "E3": ("e33",),
    "E4": ("e11", "e22"), "E5": ("e11", "e33"), "E6": ("e22", "e33"),
    "E7": ("e11", "e13"), "E8": ("e33", "e13"),
    "E9": ("e11", "e22", "e13"), "E10": ("e22", "e33", "e13"),
}


def unit_terms(label: str) -> frozenset[str]:
    return frozenset() if label == "0" else frozenset(label.split("+"))


def find_by_terms(R: FiniteRing, terms) -> int:
    want = frozenset(terms)
    for x in range(R.size):
        if unit_terms(R.label(x)) == want:
            return x
    raise KeyError(f"no element {'+'.join(sorted(want))}")


@dataclass
class Assertion:
    description: str
    expected: Any
    actual: Any

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class FixtureResult:
    name: str
    assertions: list[Assertion] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    def expect(self, description: str, expected, actual) -> Assertion:
        a = Assertion(description, expected, actual)
        self.assertions.append(a)
        return a

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed,
                "assertions": [{"description": a.description, "expected": a.expected,
                                "actual": a.actual, "passed": a.passed} for a in self.assertions],
                "notes": self.notes}


# the endomorphism-ring fixture ----------------------------------------------

@dataclass
class EndRingFixture:
    ring: FiniteRing        # upper-triangular 2x2 over F_2
    op: FiniteRing          # its opposite; left modules live here as right modules
    N: FiniteModule
    M: FiniteModule
    U: FiniteModule
    S: FiniteRing
    trace: dict


def triangular_end_ring(caps: Caps = DEFAULT_CAPS) -> EndRingFixture:
    """Build ``S = End(_R U)`` for ``R`` upper triangular over F_2,
    ``N = [[0,K],[0,K]]``, ``L = [[K,K],[0,0]]``, ``M = R/L`` and ``U = N (+) M``."""
    R = construct(pattern(TRIANGULAR_MASK, zmod(2)), caps.size)
    op = opposite_ring(R)
    n_members = [x for x in range(R.size) if "e11" not in unit_terms(R.label(x))]
    l_members = [x for x in range(R.size) if "e22" not in unit_terms(R.label(x))]
    N_ideal = Ideal(op, "right", bits.to_mask(n_members, R.size))
    L_ideal = Ideal(op, "right", bits.to_mask(l_members, R.size))
    for name, I in (("N", N_ideal), ("L", L_ideal)):
        broken = I.closure_violation()
        if broken is not None:
            raise AssertionError(f"{name} is not a left ideal ({broken})")
    N = ideal_module(N_ideal)
    M = quotient_module(L_ideal)
    U = direct_sum(N, M, caps.size)
    S, maps = endomorphism_ring(U, caps)
    trace = {
        "R": [R.label(x) for x in range(R.size)],
        "N": [R.label(x) for x in n_members],
        "L": [R.label(x) for x in l_members],
        "sizes": {"R": R.size, "N": N.size, "L": len(l_members), "M": M.size, "U": U.size, "S": S.size},
        "U_valid": validate_module(U).passed,
        "S_valid": validate_axioms(S).passed,
        "endomorphisms": [list(m.table) for m in maps],
    }
    return EndRingFixture(R, op, N, M, U, S, trace)


def _run_end_ring(caps: Caps) -> FixtureResult:
    res = FixtureResult("remark-2-9")
    fx = triangular_end_ring(caps)
    S = fx.S
    res.expect("|N| = 4", 4, fx.N.size)
    res.expect("|L| = 4", 4, fx.trace["sizes"]["L"])
    res.expect("|M| = |R/L| = 2", 2, fx.M.size)
    res.expect("U satisfies the module axioms", True, fx.trace["U_valid"])
    res.expect("S satisfies the ring axioms", True, fx.trace["S_valid"])
    res.expect("S left SIP", True, check_sip(S, "left").holds)
    res.expect("S right SIP", True, check_sip(S, "right").holds)
    for side in ("left", "right"):
        v = check_ssp(S, side)
        res.expect(f"S {side} SSP", False, v.holds)
        res.expect(f"S {side} SSP witness re-fails", True, witness_refails(S, v, caps))
        res.notes[f"ssp_{side}_witness"] = v.witness
    res.notes["end_ring_size"] = S.size
    res.notes["trace"] = fx.trace
    return res


# the sparse pattern ring ----------------------------------------------------

def sparse_pattern_ring(caps: Caps = DEFAULT_CAPS) -> FiniteRing:
    return construct(pattern(SPARSE_MASK, zmod(2)), caps.size)


def _run_sparse(caps: Caps) -> FixtureResult:
    res = FixtureResult("remark-2-10")
    R = sparse_pattern_ring(caps)
    idem = idempotents(R)
    res.expect("16 elements", 16, R.size)
    res.expect("12 idempotents", 12, len(idem))
    listed = {frozenset(t) for t in SPARSE_IDEMPOTENTS.values()} | {frozenset(), unit_terms(R.label(R.one))}
    res.expect("idempotents are 0, 1, E1..E10", True, {unit_terms(R.label(e)) for e in idem} == listed)
    c3 = check_c3(R, "right")
    res.expect("right C3", True, c3.holds)
    if not c3.holds:
        res.notes["right_c3_witness"] = c3.witness
        res.notes["right_c3_witness_refails"] = witness_refails(R, c3, caps)
    res.expect("left SIP", True, check_sip(R, "left").holds)
    left = check_ssp(R, "left")
    res.expect("left SSP", False, left.holds)
    res.expect("SSP witness re-fails", True, witness_refails(R, left, caps))
    e4 = find_by_terms(R, SPARSE_IDEMPOTENTS["E4"])
    e7 = find_by_terms(R, SPARSE_IDEMPOTENTS["E7"])
    res.expect("RE4 + RE7 is not a left summand", True, ssp_pair_fails(R, "left", e4, e7))
    res.notes["ssp_left_witness"] = left.witness
    # recorded for reference, not asserted
    res.notes["right_sip"] = check_sip(R, "right").holds
    res.notes["left_c3"] = check_c3(R, "left").holds
    return res


# catalog --------------------------------------------------------------------

def _sided(res: FixtureResult, R: FiniteRing, name: str, check, expected: bool):
    for side in ("left", "right"):
        v = check(R, side)
        res.expect(f"{side} {name}", expected, v.holds)
        if not v.holds:
            res.expect(f"{side} {name} witness re-fails", True, witness_refails(R, v))


def _ring_checks(name: str, desc: RingDescriptor, expectations: dict) -> Callable[[Caps], FixtureResult]:
    def run(caps: Caps) -> FixtureResult:
        res = FixtureResult(name)
        R = construct(desc, caps.size)
        res.expect("ring axioms", True, validate_axioms(R).passed)
        for key, expected in expectations.items():
            if key == "size":
                res.expect("size", expected, R.size)
            elif key == "idempotents":
                res.expect("idempotents", expected, [R.label(e) for e in idempotents(R)])
            elif key == "idempotent_count":
                res.expect("idempotent count", expected, len(idempotents(R)))
            elif key in ("ssp", "sip", "c3"):
                check = {"ssp": check_ssp, "sip": check_sip, "c3": check_c3}[key]
                _sided(res, R, key.upper(), check, expected)
                if key == "ssp":
                    for side in ("left", "right"):
                        res.expect(f"{side} SSP via ef criterion", expected,
                                   check_ssp(R, side, "ef_criterion").holds)
            elif key == "c2":
                res.expect("right C2", expected, check_c2(R, "right", caps).holds)
            elif key == "regular":
                v = is_regular_ring(R)
                if isinstance(expected, bool):
                    res.expect("regular", expected, v.holds)
                else:
                    res.expect("least non-regular element", expected, (v.witness or {}).get("label"))
            elif key == "abelian":
                res.expect("abelian", expected, is_abelian(R).holds)
            elif key == "radical":
                rad = semisimplicity(R).radical
                res.expect("Jacobson radical", expected, [R.label(int(x)) for x in rad.elements])
        return res
    return run


@dataclass(frozen=True)
class Fixture:
    name: str
    summary: str
    descriptor: Callable[[Caps], RingDescriptor]
    run: Callable[[Caps], FixtureResult]


def _const(desc: RingDescriptor) -> Callable[[Caps], RingDescriptor]:
    return lambda caps: desc


def _end_ring_descriptor(caps: Caps) -> RingDescriptor:
    S = triangular_end_ring(caps).S
    return table(S.add.tolist(), S.mul.tolist(), S.zero, S.one)


F2, Z4 = zmod(2), zmod(4)
UT2 = pattern(TRIANGULAR_MASK, F2)

FIXTURES: dict[str, Fixture] = {f.name: f for f in [
    Fixture("zmod-4", "Z/4: SSP, SIP, C3 both sides; not regular (witness 2); radical {0,2}",
            _const(Z4), _ring_checks("zmod-4", Z4, {
                "size": 4, "idempotents": ["0", "1"], "ssp": True, "sip": True, "c3": True,
                "c2": True, "regular": "2", "radical": ["0", "2"]})),
    Fixture("zmod-6", "Z/6: idempotents 0,1,3,4; regular and SSP",
            _const(zmod(6)), _ring_checks("zmod-6", zmod(6), {
                "size": 6, "idempotents": ["0", "1", "3", "4"], "ssp": True, "sip": True, "c3": True,
                "regular": True, "radical": ["0"]})),
    Fixture("f2", "F_2: semisimple, regular, SSP, C2",
            _const(F2), _ring_checks("f2", F2, {
                "size": 2, "ssp": True, "sip": True, "c3": True, "c2": True, "regular": True,
                "radical": ["0"]})),
    Fixture("f2xf2", "F_2 x F_2: four idempotents; semisimple and SSP",
            _const(product(F2, F2)), _ring_checks("f2xf2", product(F2, F2), {
                "size": 4, "idempotent_count": 4, "ssp": True, "sip": True, "c3": True,
                "regular": True, "radical": ["(0,0)"]})),
    Fixture("m2-f2", "M_2(F_2): regular hence SSP; not abelian",
            _const(matrix(2, F2)), _ring_checks("m2-f2", matrix(2, F2), {
                "size": 16, "ssp": True, "sip": True, "c3": True, "regular": True,
                "abelian": False, "radical": ["0"]})),
    Fixture("m2-zmod4", "M_2(Z/4): Z/4 is not regular, so M_2(Z/4) is not SSP",
            _const(matrix(2, Z4)), _ring_checks("m2-zmod4", matrix(2, Z4), {
                "size": 256, "ssp": False})),
    Fixture("ut2-f2", "upper triangular 2x2 over F_2: not SSP, not regular (witness e12)",
            _const(UT2), _ring_checks("ut2-f2", UT2, {
                "size": 8, "ssp": False, "regular": "e12", "radical": ["0", "e12"]})),
    Fixture("remark-2-9", "End(N (+) R/L) over upper triangular F_2: two-sided SIP, not SSP",
            _end_ring_descriptor, _run_end_ring),
    Fixture("remark-2-10", "sparse 3x3 pattern ring over F_2: 12 idempotents, left SIP, not SSP "
            "(RE4+RE7 not a summand); right C3 expected",
            lambda caps: pattern(SPARSE_MASK, F2), _run_sparse),
]}

# rings the theorem suite is run on
CORPUS: dict[str, RingDescriptor] = {
    "f2": F2,
    "f3": zmod(3),
    "zmod-4": Z4,
    "zmod-6": zmod(6),
    "zmod-8": zmod(8),
    "f2xf2": product(F2, F2),
    "ut2-f2": UT2,
    "remark-2-10": pattern(SPARSE_MASK, F2),
    "m2-f2": matrix(2, F2),
}


def run_fixture(name: str, caps: Caps = DEFAULT_CAPS) -> FixtureResult:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return FIXTURES[name].run(caps)
