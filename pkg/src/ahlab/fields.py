"""Exact coefficient fields and the integer combinatorics everything else uses.

Scalars are plain Python objects: ``int`` in ``[0, p)`` for a prime field and
:class:`fractions.Fraction` for the rationals.  Both have a unique canonical
form, so ``==`` is field equality.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import AhlabError, DivisionByZero

Scalar = Union[int, Fraction]

DEFAULT_PRIME = 2147483647  # 2**31 - 1


def binomial(n: int, k: int) -> int:
    """C(n, k), exact; zero when k > n."""
    if n < 0 or k < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, k)


def falling_factorial(a: int, b: int) -> int:
    """a (a-1) ... (a-b+1); zero when b > a."""
    if a < 0 or b < 0:
        raise ValueError("falling_factorial arguments must be non-negative")
    return math.perm(a, b)


@lru_cache(maxsize=64)
def _is_prime(p: int) -> bool:
    if p == DEFAULT_PRIME:
        return True
    from sympy import isprime

    return bool(isprime(p))


def _hash_int(parts: tuple, nbytes: int = 16) -> int:
    data = ",".join(str(x) for x in parts).encode()
    return int.from_bytes(hashlib.blake2b(data, digest_size=nbytes).digest(), "big")


@dataclass(frozen=True)
class PrimeField:
    p: int = DEFAULT_PRIME

    def __post_init__(self) -> None:
        if self.p < 2 or not _is_prime(self.p):
            raise AhlabError(f"modulus {self.p} is not prime")

    is_rational = False

    @property
    def characteristic(self) -> int:
        return self.p

    zero = 0
    one = 1

    def __call__(self, x) -> int:
        if isinstance(x, str):
            x = Fraction(x.strip())
        if isinstance(x, Fraction):
            if x.denominator == 1:
                return x.numerator % self.p
            return self.div(x.numerator % self.p, x.denominator % self.p)
        return int(x) % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise DivisionByZero(f"0 has no inverse mod {self.p}")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def random_scalar(self, *key) -> int:
        """Deterministic pseudo-random element keyed by ``key`` (counter mode)."""
        return _hash_int(("Fp", self.p) + key) % self.p

    def to_str(self, a: int) -> str:
        return str(a)

    def describe(self):
        return {"prime": self.p}

    def label(self) -> str:
        return str(self.p)


@dataclass(frozen=True)
class RationalField:
    """The rationals; random elements are integers in [-bound, bound]."""

    bound: int = 1 << 16

    is_rational = True
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            return Fraction(x.strip())
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("0 has no inverse in Q")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) * self.inv(b)

    def random_scalar(self, *key) -> Fraction:
        width = 2 * self.bound + 1
        return Fraction(_hash_int(("Q", self.bound) + key) % width - self.bound)

    def to_str(self, a) -> str:
        return str(Fraction(a))

    def describe(self):
        return "rational"

    def label(self) -> str:
        return "rational"


Field = Union[PrimeField, RationalField]

DEFAULT_FIELD = PrimeField(DEFAULT_PRIME)
QQ = RationalField()


def field_from_spec(spec) -> Field:
    """Inverse of ``Field.describe()``; also accepts a bare int or "rational"."""
    if spec == "rational":
        return QQ
    if isinstance(spec, dict):
        return PrimeField(int(spec["prime"]))
    if isinstance(spec, str):
        return PrimeField(int(spec, 0))
    return PrimeField(int(spec))


def derive_seed(*parts) -> int:
    """64-bit seed obtained by hashing ``parts``; independent of call order."""
    return _hash_int(("seed",) + parts, nbytes=8)
