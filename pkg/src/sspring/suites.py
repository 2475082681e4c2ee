"""Executable cross-checks of the SSP/SIP/C3 equivalences on one ring or a
list of modules.  Each check scans its whole universe and records the first
counterexample, or is marked skipped when a cap makes it unavailable."""

from __future__ import annotations

from itertools import product
from typing import Callable, Iterable, Optional

from .config import DEFAULT_CAPS, Caps
from .errors import CapExceeded
from .finmod import FiniteModule, direct_sum, endomorphism_ring, module_property
from .ideals import (annihilator, complement, ideal_intersect, ideal_sum, idempotents,
                     principal, summand_witness)
from .properties import (check_c3, check_sip, check_ssp, is_abelian, is_regular_element,
                         is_regular_ring)
from .ring import FiniteRing, construct, corner_ring, matrix, table
from .verdicts import CheckRecord, TheoremReport

THEOREM_CHECKS = {
    "sum_decomposition": "eR+fR = eR (+) (1-e)fR, and eR+fR is a summand iff (1-e)fR is",
    "regular_principal": "a regular <=> aR summand <=> Ra summand, for every a",
    "ssp_four_way": "SSP agrees across left/right x definitional/ef-criterion",
    "ssp_c3_sip": "SSP <=> right C3 and right SIP <=> left C3 and left SIP",
    "regular_abelian_ssp": "regular or abelian implies SSP",
    "corner_ssp": "SSP(R) implies SSP(eRe) for every idempotent e",
    "matrix_ssp_regular": "R regular <=> M_2(R) SSP",
    "annihilator_identity": "eR n fR = r(R(1-e) + R(1-f))",
}


class Skip(Exception):
    """A check does not apply to the given input."""


def _descriptor_of(R: FiniteRing):
    if R.descriptor is not None:
        return R.descriptor
    return table(R.add.tolist(), R.mul.tolist(), R.zero, R.one)


def _run(report: TheoremReport, check_id: str, body: Callable[[], tuple[int, Optional[dict], dict]]) -> CheckRecord:
    try:
        universe, counterexample, detail = body()
    except CapExceeded as exc:
        return report.add(CheckRecord(check_id, THEOREM_CHECKS.get(check_id, check_id), "skipped",
                                      detail={"reason": str(exc)}))
    status = "passed" if counterexample is None else "failed"
    return report.add(CheckRecord(check_id, THEOREM_CHECKS.get(check_id, check_id), status,
                                  universe, counterexample, detail))


def _pairs(R: FiniteRing):
    idem = idempotents(R)
    return list(product(idem, idem))


def _sum_decomposition(R: FiniteRing):
    pairs = _pairs(R)
    for e, f in pairs:
        eR, fR = principal(R, "right", e), principal(R, "right", f)
        rest = principal(R, "right", int(R.mul[complement(R, e), f]))
        if ideal_sum(eR, fR) != ideal_sum(eR, rest):
            return len(pairs), {"pair": [e, f], "failed": "sum"}, {}
        if not ideal_intersect(eR, rest).is_zero():
            return len(pairs), {"pair": [e, f], "failed": "directness"}, {}
        whole = summand_witness(R, ideal_sum(eR, fR)) is not None
        part = summand_witness(R, rest) is not None
        if whole != part:
            return len(pairs), {"pair": [e, f], "failed": "summand_equivalence",
                                "sum_is_summand": whole, "complement_part_is_summand": part}, {}
    return len(pairs), None, {}


def _regular_principal(R: FiniteRing):
    regular = 0
    for a in range(R.size):
        r = is_regular_element(R, a) is not None
        right = summand_witness(R, principal(R, "right", a)) is not None
        left = summand_witness(R, principal(R, "left", a)) is not None
        if not r == right == left:
            return R.size, {"element": a, "regular": r, "aR_summand": right, "Ra_summand": left}, {}
        regular += r
    return R.size, None, {"regular_elements": regular}


def _ssp_four_way(R: FiniteRing):
    verdicts = {f"{side}/{method}": check_ssp(R, side, method).holds
                for side in ("left", "right") for method in ("definitional", "ef_criterion")}
    if len(set(verdicts.values())) != 1:
        return 4, {"verdicts": verdicts}, {}
    return 4, None, {"ssp": next(iter(verdicts.values()))}


def _ssp_c3_sip(R: FiniteRing):
    ssp = check_ssp(R, "right").holds
    right = check_c3(R, "right").holds and check_sip(R, "right").holds
    left = check_c3(R, "left").holds and check_sip(R, "left").holds
    detail = {"ssp": ssp, "right_c3_and_sip": right, "left_c3_and_sip": left}
    return 3, (None if ssp == right == left else detail), detail


def _regular_abelian_ssp(R: FiniteRing):
    regular, abelian = is_regular_ring(R).holds, is_abelian(R).holds
    ssp = check_ssp(R, "right").holds
    detail = {"regular": regular, "abelian": abelian, "ssp": ssp}
    return 1, (detail if (regular or abelian) and not ssp else None), detail


def _corner_ssp(R: FiniteRing):
    idem = idempotents(R)
    if not check_ssp(R, "right").holds:
        return len(idem), None, {"ssp": False, "note": "hypothesis false; implication holds vacuously"}
    for e in idem:
        S, _ = corner_ring(R, e)
        verdict = check_ssp(S, "right")
        if not verdict.holds:
            return len(idem), {"idempotent": e, "corner_size": S.size, "corner_witness": verdict.witness}, {}
    return len(idem), None, {"ssp": True}


def _matrix_ssp_regular(R: FiniteRing, caps: Caps):
    M2 = construct(matrix(2, _descriptor_of(R)), caps.size)
    regular = is_regular_ring(R).holds
    ssp = check_ssp(M2, "right").holds
    detail = {"regular": regular, "m2_ssp": ssp, "m2_size": M2.size}
    return 1, (None if regular == ssp else detail), detail


def _annihilator_identity(R: FiniteRing):
    pairs = _pairs(R)
    for e, f in pairs:
        meet = ideal_intersect(principal(R, "right", e), principal(R, "right", f))
        left_sum = ideal_sum(principal(R, "left", complement(R, e)), principal(R, "left", complement(R, f)))
        ann = annihilator(R, "right", left_sum.elements)
        if ann.members != meet.members:
            return len(pairs), {"pair": [e, f], "failed": "annihilator"}, {}
        g = summand_witness(R, left_sum)
        if g is not None and principal(R, "right", complement(R, g)).members != meet.members:
            return len(pairs), {"pair": [e, f], "failed": "generator_complement", "generator": g}, {}
    return len(pairs), None, {}


def theorem_suite(R: FiniteRing, caps: Caps = DEFAULT_CAPS, subject: str = "") -> TheoremReport:
    report = TheoremReport(subject or repr(R))
    _run(report, "sum_decomposition", lambda: _sum_decomposition(R))
    _run(report, "regular_principal", lambda: _regular_principal(R))
    _run(report, "ssp_four_way", lambda: _ssp_four_way(R))
    _run(report, "ssp_c3_sip", lambda: _ssp_c3_sip(R))
    _run(report, "regular_abelian_ssp", lambda: _regular_abelian_ssp(R))
    _run(report, "corner_ssp", lambda: _corner_ssp(R))
    _run(report, "matrix_ssp_regular", lambda: _matrix_ssp_regular(R, caps))
    _run(report, "annihilator_identity", lambda: _annihilator_identity(R))
    return report


# module lemmas --------------------------------------------------------------

MODULE_CHECKS = {
    "c3_sip_gives_ssp": "C3(M) and SIP(M) imply SSP(M)",
    "end_ring_ssp": "free M: SSP(M) <=> SSP(End(M))  (free modules are quasi-projective)",
    "square_ssp_regular": "free M: End(M) regular <=> SSP(M (+) M)",
    "square_c3_gives_c2": "C3(M (+) M) implies C2(M)",
}


def _module_check(report: TheoremReport, name: str, check_id: str, body) -> CheckRecord:
    desc = MODULE_CHECKS[check_id]
    try:
        counterexample, detail = body()
    except (CapExceeded, Skip) as exc:
        return report.add(CheckRecord(f"{name}:{check_id}", desc, "skipped", detail={"reason": str(exc)}))
    status = "passed" if counterexample is None else "failed"
    return report.add(CheckRecord(f"{name}:{check_id}", desc, status, 1, counterexample, detail))


def module_lemma_suite(modules: Iterable[tuple[str, FiniteModule]], caps: Caps = DEFAULT_CAPS,
                       subject: str = "modules") -> TheoremReport:
    """Run the four module-level checks on each named module.

    The End-ring checks apply only to free modules, which are quasi-projective;
    on other modules they are recorded as skipped.
    """
    report = TheoremReport(subject)
    for name, M in modules:
        def c3_sip(M=M):
            c3, sip, ssp = (module_property(M, p, caps) for p in ("c3", "sip", "ssp"))
            detail = {"c3": c3.holds, "sip": sip.holds, "ssp": ssp.holds, "method": ssp.method}
            return (detail if c3.holds and sip.holds and not ssp.holds else None), detail

        def end_ssp(M=M):
            if not M.is_free:
                raise Skip("not a free module; quasi-projectivity is not decided")
            S, _ = endomorphism_ring(M, caps)
            mod, ring = module_property(M, "ssp", caps).holds, check_ssp(S, "right").holds
            detail = {"module_ssp": mod, "end_ssp": ring, "end_size": S.size}
            return (None if mod == ring else detail), detail

        def square_regular(M=M):
            if not M.is_free:
                raise Skip("not a free module; quasi-projectivity is not decided")
            S, _ = endomorphism_ring(M, caps)
            regular = is_regular_ring(S).holds
            square = direct_sum(M, M, caps.size)
            ssp = module_property(square, "ssp", caps)
            detail = {"end_regular": regular, "square_ssp": ssp.holds, "square_size": square.size,
                      "method": ssp.method}
            return (None if regular == ssp.holds else detail), detail

        def square_c2(M=M):
            c2 = module_property(M, "c2", caps).holds
            square = direct_sum(M, M, caps.size)
            c3 = module_property(square, "c3", caps)
            detail = {"square_c3": c3.holds, "c2": c2, "method": c3.method}
            return (detail if c3.holds and not c2 else None), detail

        _module_check(report, name, "c3_sip_gives_ssp", c3_sip)
        _module_check(report, name, "end_ring_ssp", end_ssp)
        _module_check(report, name, "square_ssp_regular", square_regular)
        _module_check(report, name, "square_c3_gives_c2", square_c2)
    return report
