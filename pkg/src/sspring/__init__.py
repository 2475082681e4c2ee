"""Decide the summand sum/intersection properties (SSP, SIP), C2, C3,
regularity and semisimplicity for explicit finite rings and modules."""

__version__ = "0.1.0"

from .config import Caps, DEFAULT_CAPS
from .errors import CapExceeded, DescriptorError, RingMismatch
from .ring import (FiniteRing, RingDescriptor, construct, corner_ring, invertibility, opposite_ring,
                   validate_axioms)
from .ideals import (Ideal, annihilator, enumerate_ideals, ideal_generated, ideal_intersect, ideal_sum,
                     idempotents, summand_witness)
from .properties import (check_c2, check_c3, check_sip, check_ssp, is_abelian, is_regular_element,
                         is_regular_ring, semisimplicity)
from .finmod import (FiniteModule, build_module, endomorphism_ring, hom_maps, is_isomorphic,
                     module_property, summand_witness_module)
from .suites import module_lemma_suite, theorem_suite
from .descriptor import parse_descriptor

__all__ = [
    "Caps", "DEFAULT_CAPS", "CapExceeded", "DescriptorError", "RingMismatch",
    "FiniteRing", "RingDescriptor", "construct", "corner_ring", "invertibility", "opposite_ring",
    "validate_axioms", "Ideal", "annihilator", "enumerate_ideals", "ideal_generated", "ideal_intersect",
    "ideal_sum", "idempotents", "summand_witness", "check_c2", "check_c3", "check_sip", "check_ssp",
    "is_abelian", "is_regular_element", "is_regular_ring", "semisimplicity", "FiniteModule",
    "build_module", "endomorphism_ring", "hom_maps", "is_isomorphic", "module_property",
    "summand_witness_module", "module_lemma_suite", "theorem_suite", "parse_descriptor",
]
