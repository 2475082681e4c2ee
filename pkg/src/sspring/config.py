"""Size and enumeration caps."""

from __future__ import annotations

from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Caps:
    # carrier size for constructed rings and modules
    size: int = 4096
    # rings/modules whose ideal or submodule lattice may be enumerated (C2 and friends)
    ideals: int = 64
    # ring size for the semisimplicity oracle built on ideal enumeration
    oracle: int = 16
    # homomorphisms materialized during one enumeration
    hom: int = 2**20

    def __post_init__(self):
        for name, value in asdict(self).items():
            if value < 1:
                raise ValueError(f"cap {name} must be positive, got {value}")

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_CAPS = Caps()
