from __future__ import annotations

from dataclasses import dataclass, field

IDEAL_FLAGS = ("prime", "primary", "semiprime", "r", "n", "semi_r", "semi_n")
SUBMODULE_FLAGS = ("prime", "primary", "semiprime", "r_sub", "n_sub", "semi_r", "semi_n")
MODULE_FLAGS = ("multiplication", "faithful", "torsion_free")
PURITY_FLAGS = ("pure", "weakly_pure")
ALL_SUBMODULE_FLAGS = SUBMODULE_FLAGS + MODULE_FLAGS + PURITY_FLAGS


@dataclass(frozen=True)
class PropertyVector:
    """Flag values plus a violating tuple for every flag that came out false.

    A flag of ``None`` means not applicable (the classification predicates
    are only defined on proper ideals and submodules).
    """

    flags: dict[str, bool | None]
    witnesses: dict[str, tuple] = field(default_factory=dict)

    def __getitem__(self, name: str) -> bool | None:
        return self.flags[name]

    def __contains__(self, name: str) -> bool:
        return name in self.flags

    def true_flags(self) -> list[str]:
        return [k for k, v in self.flags.items() if v]

    def as_dict(self) -> dict:
        return {
            "flags": dict(self.flags),
            "witnesses": {k: list(v) for k, v in self.witnesses.items()},
        }
