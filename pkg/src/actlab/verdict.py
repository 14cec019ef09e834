"""Verdict records shared by the class predicates."""
from dataclasses import dataclass
from enum import Enum


class ClassLabel(str, Enum):
    FREE = "Fr"
    PROJECTIVE = "P"
    TORSION_FREE = "TF"
    WEAKLY_TORSION_FREE = "WTF"
    DIVISIBLE = "D"
    INJECTIVE = "I"
    WEAKLY_INJECTIVE = "WI"
    PRINCIPALLY_WEAKLY_INJECTIVE = "PWI"
    GENERATOR = "GEN"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip()
        for label in cls:
            if key == label.value or key.upper() == label.name:
                return label
        alias = LABEL_ALIASES.get(key.lower().replace("_", "-"))
        if alias is None:
            raise ValueError(f"unknown class label {text!r}")
        return alias


LABEL_ALIASES = {
    "free": ClassLabel.FREE,
    "fr": ClassLabel.FREE,
    "projective": ClassLabel.PROJECTIVE,
    "torsion-free": ClassLabel.TORSION_FREE,
    "tf": ClassLabel.TORSION_FREE,
    "weakly-torsion-free": ClassLabel.WEAKLY_TORSION_FREE,
    "wtf": ClassLabel.WEAKLY_TORSION_FREE,
    "divisible": ClassLabel.DIVISIBLE,
    "injective": ClassLabel.INJECTIVE,
    "weakly-injective": ClassLabel.WEAKLY_INJECTIVE,
    "wi": ClassLabel.WEAKLY_INJECTIVE,
    "principally-weakly-injective": ClassLabel.PRINCIPALLY_WEAKLY_INJECTIVE,
    "pwi": ClassLabel.PRINCIPALLY_WEAKLY_INJECTIVE,
    "generator": ClassLabel.GENERATOR,
    "gen": ClassLabel.GENERATOR,
}


@dataclass(frozen=True)
class ClassVerdict:
    """Membership verdict. A negative verdict always carries a replayable witness."""

    member: bool
    witness: object = None
    note: str = ""

    def __bool__(self):
        return self.member
