"""
Evaluation of the symbolic objects at random points of F_p.

A polynomial identity in q and z that holds symbolically holds at every
admissible point; a false one of total degree d survives a single random
sample with probability at most d/p (Schwartz-Zippel), so k independent
samples leave at most (d/p)^k.  With p = 2^61 - 1 this is negligible for any
degree that appears here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import BadSample
from .symbolics import Laurent, QPoly, RatFn

__all__ = [
    "DEFAULT_PRIME", "DEFAULT_SAMPLES", "Residue", "ModPoint", "ModCtx",
    "ModularScalars", "eval_mod", "is_probable_prime",
]

DEFAULT_PRIME = (1 << 61) - 1
DEFAULT_SAMPLES = 20


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first twelve prime bases; exact below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Residue:
    """An element of F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, other) -> int:
        if isinstance(other, Residue):
            return other.v
        if isinstance(other, int):
            return other
        raise TypeError(f"cannot combine Residue with {type(other).__name__}")

    def __add__(self, other):
        return Residue(self.v + self._val(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.v - self._val(other), self.p)

    def __rsub__(self, other):
        return Residue(self._val(other) - self.v, self.p)

    def __mul__(self, other):
        return Residue(self.v * self._val(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.v, self.p)

    def inverse(self) -> "Residue":
        if not self.v:
            raise BadSample("division by zero residue")
        return Residue(pow(self.v, -1, self.p), self.p)

    def is_zero(self) -> bool:
        return self.v == 0

    def __eq__(self, other):
        try:
            return (self.v - self._val(other)) % self.p == 0
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Residue({self.v} mod {self.p})"

    __str__ = __repr__


@dataclass(frozen=True)
class ModPoint:
    """A point (q, z_1, ..., z_n) in (F_p^*)^(n+1)."""

    p: int
    q: int
    z: tuple[int, ...]

    def bar(self) -> "ModPoint":
        return ModPoint(self.p, pow(self.q, -1, self.p), self.z)

    def invert_z(self) -> "ModPoint":
        return ModPoint(self.p, self.q, tuple(pow(x, -1, self.p) for x in self.z))

    def z_pow(self, beta: Sequence[int]) -> int:
        out = 1
        for x, b in zip(self.z, beta):
            if b:
                out = out * pow(x, b, self.p) % self.p
        return out


@dataclass
class ModCtx:
    """
    Sampling context: prime, sample count and seed.

    A sample is rejected (and redrawn) when q is 0 or 1 or when some positive
    root has z^beta = 1, so every (1 - z^beta) is invertible.
    """

    prime: int = DEFAULT_PRIME
    samples: int = DEFAULT_SAMPLES
    seed: int = 0

    def points(self, positive_roots: Sequence[Sequence[int]], rank: int) -> list[ModPoint]:
        rng = random.Random(self.seed)
        p = self.prime
        out = []
        while len(out) < self.samples:
            q = rng.randrange(2, p)
            z = tuple(rng.randrange(1, p) for _ in range(rank))
            pt = ModPoint(p, q, z)
            if any(pt.z_pow(beta) == 1 for beta in positive_roots):
                continue
            out.append(pt)
        return out


def _eval_laurent(a: Laurent, pt: ModPoint) -> int:
    p = pt.p
    total = 0
    for k, c in a.terms.items():
        term = c * pow(pt.q, k[0], p)
        for x, e in zip(pt.z, k[1:]):
            if e:
                term = term * pow(x, e, p) % p
        total += term
    return total % p


def eval_mod(a, pt: ModPoint) -> int:
    """Evaluate a RatFn, Laurent, QPoly or int at a point of F_p."""
    p = pt.p
    if isinstance(a, int):
        return a % p
    if isinstance(a, QPoly):
        return a.evaluate_mod(pt.q, p)
    if isinstance(a, Laurent):
        return _eval_laurent(a, pt)
    if isinstance(a, RatFn):
        num = _eval_laurent(a.num, pt)
        den = 1
        for beta, m in a.den:
            den = den * pow((1 - pt.z_pow(beta)) % p, m, p) % p
        if den == 0:
            raise BadSample(f"denominator vanishes at {pt}")
        return num * pow(den, -1, p) % p
    raise TypeError(f"cannot evaluate {type(a).__name__}")


class ModularScalars:
    """Scalar backend evaluating every recursion directly in F_p at one point."""

    kind = "modular"

    def __init__(self, point: ModPoint):
        self.point = point
        p = point.p
        self.p = p
        self._zero = Residue(0, p)
        self._one = Residue(1, p)
        self._q = Residue(point.q, p)
        self._inv_cache: dict = {}

    def twist(self, bar: bool = False, invz: bool = False) -> "ModularScalars":
        pt = self.point
        if bar:
            pt = pt.bar()
        if invz:
            pt = pt.invert_z()
        return ModularScalars(pt)

    @property
    def zero(self) -> Residue:
        return self._zero

    @property
    def one(self) -> Residue:
        return self._one

    @property
    def q(self) -> Residue:
        return self._q

    def const(self, c: int) -> Residue:
        return Residue(c, self.p)

    def q_pow(self, k: int) -> Residue:
        return Residue(pow(self.point.q, k, self.p), self.p)

    def z(self, beta: Sequence[int]) -> Residue:
        return Residue(self.point.z_pow(beta), self.p)

    def inv_one_minus(self, beta: Sequence[int]) -> Residue:
        beta = tuple(beta)
        got = self._inv_cache.get(beta)
        if got is None:
            d = (1 - self.point.z_pow(beta)) % self.p
            if d == 0:
                raise BadSample(f"1 - z^{beta} vanishes at {self.point}")
            got = Residue(pow(d, -1, self.p), self.p)
            self._inv_cache[beta] = got
        return got

    def from_qpoly(self, f: QPoly) -> Residue:
        return Residue(f.evaluate_mod(self.point.q, self.p), self.p)

    def from_ratfn(self, f: RatFn) -> Residue:
        return Residue(eval_mod(f, self.point), self.p)

    def is_zero(self, x: Residue) -> bool:
        return x.v == 0
