"""Password complexity classes, generation, and validation.

Class 1 means at least one special character (printable ASCII that is
neither letter, digit, nor space), class 2 at least one decimal digit,
class 3 both a lowercase and an uppercase ASCII letter. Classification
looks only at character membership, so flags never turn off as a string
grows.
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from ._random import as_generator

SPECIAL_CHARACTERS = string.punctuation
GENERATION_CHARACTERS = "".join(chr(c) for c in range(33, 127))  # printable95 minus space
MAX_LENGTH = 256
_MAX_RESAMPLES = 100_000


@dataclass(frozen=True)
class ComplexityProfile:
    class1: bool = False  # special character present
    class2: bool = False  # digit present
    class3: bool = False  # lowercase and uppercase letters present

    def satisfies(self, required: "ComplexityProfile") -> bool:
        return ((self.class1 or not required.class1)
                and (self.class2 or not required.class2)
                and (self.class3 or not required.class3))

    def min_length(self) -> int:
        """Fewest characters that can satisfy these flags (class 3 needs two)."""
        return (1 if self.class1 else 0) + (1 if self.class2 else 0) + (2 if self.class3 else 0)

    @classmethod
    def all_classes(cls) -> "ComplexityProfile":
        return cls(True, True, True)


def classify_password(password: str) -> ComplexityProfile:
    """Which complexity classes a password satisfies."""
    if not password:
        raise ValueError("cannot classify an empty password")
    has_special = any(ch in SPECIAL_CHARACTERS for ch in password)
    has_digit = any(ch in string.digits for ch in password)
    has_lower = any(ch in string.ascii_lowercase for ch in password)
    has_upper = any(ch in string.ascii_uppercase for ch in password)
    return ComplexityProfile(class1=has_special, class2=has_digit,
                             class3=has_lower and has_upper)


def generate_password(length: int, required: ComplexityProfile, rng=None) -> str:
    """Uniform draws over the 94 non-space printable ASCII characters,
    resampled until every required class is present."""
    if length < 1 or length > MAX_LENGTH:
        raise ValueError(f"length must be in 1..{MAX_LENGTH}, got {length}")
    if length < required.min_length():
        raise ValueError(
            f"length {length} cannot satisfy the required classes "
            f"(needs at least {required.min_length()} characters)")
    gen = as_generator(rng)
    for _ in range(_MAX_RESAMPLES):
        draws = gen.integers(0, len(GENERATION_CHARACTERS), size=length)
        candidate = "".join(GENERATION_CHARACTERS[i] for i in draws)
        if classify_password(candidate).satisfies(required):
            return candidate
    raise RuntimeError("password resampling did not satisfy the requirements")


def validate_password(password: str, required: ComplexityProfile) -> bool:
    """True when the password satisfies every required class."""
    if not password:
        return not (required.class1 or required.class2 or required.class3)
    return classify_password(password).satisfies(required)
