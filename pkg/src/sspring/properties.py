"""Ring-level decision procedures: SSP, SIP, C2, C3, regularity, abelianness
and semisimplicity.

Every scan visits candidates in ascending index order and stops at the first
failure, so a false verdict always carries the least failing instance.  The
``*_pair_fails`` helpers re-check a single instance and are what witnesses
are verified against.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

import numpy as np

from . import bits
from .config import DEFAULT_CAPS, Caps
from .ideals import (Ideal, enumerate_ideals, ideal_intersect, ideal_sum, idempotents, principal,
                     summand_table, summand_witness)
from .ring import FiniteRing, opposite_ring
from .verdicts import PropertyVerdict

METHODS = ("definitional", "ef_criterion")
SIDES = ("left", "right")


def _side(side: str) -> str:
    if side not in SIDES:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return side


# single instances -----------------------------------------------------------

def ssp_ideal(R: FiniteRing, side: str, e: int, f: int, method: str = "definitional") -> Ideal:
    """The ideal whose summand-ness decides SSP at the pair ``(e, f)``.

    ``definitional``: ``eR + fR`` (``Re + Rf`` on the left).
    ``ef_criterion``: ``efR`` (``Ref`` on the left).
    """
    _side(side)
    if method == "definitional":
        return ideal_sum(principal(R, side, e), principal(R, side, f))
    if method == "ef_criterion":
        return principal(R, side, int(R.mul[e, f]))
    raise ValueError(f"unknown method {method!r}")


def ssp_pair_fails(R: FiniteRing, side: str, e: int, f: int, method: str = "definitional") -> bool:
    return summand_witness(R, ssp_ideal(R, side, e, f, method)) is None


def sip_pair_fails(R: FiniteRing, side: str, e: int, f: int) -> bool:
    meet = ideal_intersect(principal(R, _side(side), e), principal(R, side, f))
    return summand_witness(R, meet) is None


def c3_pair_fails(R: FiniteRing, side: str, e: int, f: int) -> bool:
    eR, fR = principal(R, _side(side), e), principal(R, side, f)
    if not ideal_intersect(eR, fR).is_zero():
        return False
    return summand_witness(R, ideal_sum(eR, fR)) is None


def _ideal_payload(R: FiniteRing, I: Ideal) -> dict:
    elems = [int(x) for x in I.elements]
    return {"members": elems, "labels": [R.label(x) for x in elems]}


def _pair_scan(R: FiniteRing, prop: str, side: str, method: str, fails, ideal_of) -> PropertyVerdict:
    idem = idempotents(R)
    for e, f in product(idem, idem):
        if fails(e, f):
            witness = {"pair": [e, f], "labels": [R.label(e), R.label(f)],
                       "ideal": _ideal_payload(R, ideal_of(e, f))}
            return PropertyVerdict(prop, side, False, witness, method)
    return PropertyVerdict(prop, side, True, {"pairs_checked": len(idem) ** 2}, method)


def check_ssp(R: FiniteRing, side: str = "right", method: str = "definitional") -> PropertyVerdict:
    """Summand sum property of ``R_R`` (or ``_R R``) over all idempotent pairs."""
    _side(side)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    return _pair_scan(R, "ssp", side, method,
                      lambda e, f: ssp_pair_fails(R, side, e, f, method),
                      lambda e, f: ssp_ideal(R, side, e, f, method))


def check_sip(R: FiniteRing, side: str = "right") -> PropertyVerdict:
    _side(side)
    return _pair_scan(R, "sip", side, "definitional",
                      lambda e, f: sip_pair_fails(R, side, e, f),
                      lambda e, f: ideal_intersect(principal(R, side, e), principal(R, side, f)))


def check_c3(R: FiniteRing, side: str = "right") -> PropertyVerdict:
    _side(side)
    return _pair_scan(R, "c3", side, "definitional",
                      lambda e, f: c3_pair_fails(R, side, e, f),
                      lambda e, f: ideal_sum(principal(R, side, e), principal(R, side, f)))


def _as_right_ideal_module(R: FiniteRing, side: str, members: int):
    from .finmod import ideal_module

    base = R if side == "right" else opposite_ring(R)
    return ideal_module(Ideal(base, "right", members))


def c2_instance_fails(R: FiniteRing, side: str, members: int, e: int, caps: Caps = DEFAULT_CAPS) -> bool:
    """True iff the ideal ``members`` is isomorphic to the summand generated by
    ``e`` but is not itself a summand."""
    from .finmod import is_isomorphic

    if members in summand_table(R, side):
        return False
    source = _as_right_ideal_module(R, side, members)
    target = _as_right_ideal_module(R, side, principal(R, side, e).members)
    return is_isomorphic(source, target, caps.hom) is not None


def check_c2(R: FiniteRing, side: str = "right", caps: Caps = DEFAULT_CAPS) -> PropertyVerdict:
    """C2 for ``R_R``: every ideal isomorphic to a summand is a summand.

    Needs the full ideal lattice, so ``R.size`` must be within ``caps.ideals``.
    """
    _side(side)
    summands = summand_table(R, side)
    by_size: dict[int, list[int]] = {}
    for mask, e in sorted(summands.items(), key=lambda kv: kv[1]):
        by_size.setdefault(bits.popcount(mask), []).append(e)
    ideals = enumerate_ideals(R, side, caps.ideals)
    for I in ideals:
        if I.members in summands:
            continue
        for e in by_size.get(len(I), []):
            if c2_instance_fails(R, side, I.members, e, caps):
                witness = {"ideal": _ideal_payload(R, I), "summand": e, "summand_label": R.label(e)}
                return PropertyVerdict("c2", side, False, witness, "ideal_enumeration")
    return PropertyVerdict("c2", side, True, {"ideals_checked": len(ideals)}, "ideal_enumeration")


# element-wise properties ----------------------------------------------------

def is_regular_element(R: FiniteRing, a: int) -> Optional[int]:
    """Least ``b`` with ``a*b*a == a``, or None."""
    R._check(a)
    hits = np.flatnonzero(R.mul[R.mul[a, :], a] == a)
    return int(hits[0]) if hits.size else None


def is_regular_ring(R: FiniteRing) -> PropertyVerdict:
    """Von Neumann regularity; witness is the least non-regular element."""
    r = np.arange(R.size)
    aba = R.mul[R.mul, r[:, None]]  # aba[a, b] = (a*b)*a
    ok = (aba == r[:, None]).any(axis=1)
    if ok.all():
        return PropertyVerdict("regular", "n/a", True, None, "element_scan")
    a = int(np.argmin(ok))
    return PropertyVerdict("regular", "n/a", False, {"element": a, "label": R.label(a)}, "element_scan")


def is_abelian(R: FiniteRing) -> PropertyVerdict:
    """All idempotents central; witness is the least ``(e, r)`` with ``er != re``."""
    for e in idempotents(R):
        bad = np.flatnonzero(R.mul[e, :] != R.mul[:, e])
        if bad.size:
            r = int(bad[0])
            return PropertyVerdict("abelian", "n/a", False,
                                   {"idempotent": e, "element": r,
                                    "labels": [R.label(e), R.label(r)]}, "idempotent_scan")
    return PropertyVerdict("abelian", "n/a", True, None, "idempotent_scan")


@dataclass(frozen=True)
class RadicalResult:
    radical: Ideal
    is_semisimple: bool


def jacobson_radical(R: FiniteRing) -> Ideal:
    """``{a : 1 - r*a is a unit for every r}``, checked to be a two-sided ideal."""
    one_minus = R.add[R.one, R.neg[R.mul]]  # one_minus[r, a] = 1 - r*a
    flags = R.units[one_minus].all(axis=0)
    J = Ideal(R, "right", bits.flags_to_mask(flags))
    broken = J.closure_violation() or Ideal(R, "left", J.members).closure_violation()
    if broken is not None:
        raise AssertionError(f"radical not closed under {broken}")
    return J


def semisimplicity(R: FiniteRing) -> RadicalResult:
    J = jacobson_radical(R)
    return RadicalResult(J, J.is_zero())


def semisimple_by_ideals(R: FiniteRing, size_cap: int = DEFAULT_CAPS.oracle) -> bool:
    """Oracle: every right ideal is a direct summand."""
    table = summand_table(R, "right")
    return all(I.members in table for I in enumerate_ideals(R, "right", size_cap))


# witness re-checks ----------------------------------------------------------

def witness_refails(R: FiniteRing, verdict: PropertyVerdict, caps: Caps = DEFAULT_CAPS) -> bool:
    """Re-run the single-instance check named by a false verdict's witness."""
    if verdict.holds:
        return False
    w, side = verdict.witness, verdict.side
    if verdict.property in ("ssp", "sip", "c3"):
        e, f = w["pair"]
        if verdict.property == "ssp":
            return ssp_pair_fails(R, side, e, f, verdict.method)
        if verdict.property == "sip":
            return sip_pair_fails(R, side, e, f)
        return c3_pair_fails(R, side, e, f)
    if verdict.property == "c2":
        mask = bits.to_mask(w["ideal"]["members"], R.size)
        return c2_instance_fails(R, side, mask, w["summand"], caps)
    if verdict.property == "regular":
        return is_regular_element(R, w["element"]) is None
    if verdict.property == "abelian":
        e, r = w["idempotent"], w["element"]
        return int(R.mul[e, e]) == e and R.mul[e, r] != R.mul[r, e]
    if verdict.property == "semisimple":
        # a nonzero radical element: 1 - r*a has a right inverse for every r
        nonzero = [a for a in w["radical"] if a != R.zero]
        if not nonzero:
            return False
        a = nonzero[0]
        shifted = R.add[R.one, R.neg[R.mul[:, a]]]
        return bool((R.mul[shifted] == R.one).any(axis=1).all())
    raise ValueError(f"no re-check for property {verdict.property!r}")


def check_property(R: FiniteRing, prop: str, side: str = "right", method: str = "definitional",
                   caps: Caps = DEFAULT_CAPS) -> PropertyVerdict:
    """Dispatch by property name."""
    if prop == "ssp":
        return check_ssp(R, side, method)
    if prop == "sip":
        return check_sip(R, side)
    if prop == "c3":
        return check_c3(R, side)
    if prop == "c2":
        return check_c2(R, side, caps)
    if prop == "regular":
        return is_regular_ring(R)
    if prop == "abelian":
        return is_abelian(R)
    if prop == "semisimple":
        res = semisimplicity(R)
        elems = [int(x) for x in res.radical.elements]
        witness = None if res.is_semisimple else {"radical": elems, "labels": [R.label(x) for x in elems]}
        return PropertyVerdict("semisimple", "n/a", res.is_semisimple, witness, "jacobson_radical")
    raise ValueError(f"unknown property {prop!r}")


PROPERTIES = ("ssp", "sip", "c3", "c2", "regular", "abelian", "semisimple")
SIDED = ("ssp", "sip", "c3", "c2")
