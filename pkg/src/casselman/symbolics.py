"""
Exact arithmetic in q and z = (z_1, ..., z_n).

``Laurent`` is a sparse Laurent polynomial over the integers with exponent
keys ``(q_exp, z_exp_1, ..., z_exp_n)``.  ``RatFn`` divides one by a product
of factors ``(1 - z^beta)^m`` with beta a positive root, kept factored so
that no multivariate gcd is ever needed: reduction is trial division by
binomials.  ``QPoly`` is a Laurent polynomial in q alone (the classical
Kazhdan-Lusztig side).

>>> a = RatFn.inv_one_minus((1, 0)) * RatFn.z((1, 0)) * (1 - RatFn.q(2))
>>> str(a + 1)
'(1 - q*z1)/(1 - z1)'
>>> str(limit_z_infinity(a))
'-1 + q'
"""

from __future__ import annotations

import operator
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .errors import NoLimit

__all__ = [
    "Laurent", "RatFn", "QPoly", "SymbolicScalars",
    "ratfn_add", "ratfn_mul", "ratfn_neg", "reduce", "bar", "invert_z",
    "limit_z_infinity",
]

Key = tuple[int, ...]


def _vadd(a: Key, b: Key) -> Key:
    return tuple(map(operator.add, a, b))


class Laurent:
    """Sparse Laurent polynomial; ``terms`` maps exponent keys to nonzero ints."""

    __slots__ = ("terms", "nz")

    def __init__(self, terms: Mapping[Key, int], nz: int):
        self.terms = {k: c for k, c in terms.items() if c}
        self.nz = nz

    @classmethod
    def _raw(cls, terms: dict, nz: int) -> "Laurent":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nz = nz
        return obj

    @classmethod
    def monomial(cls, nz: int, q_exp: int = 0, z_exp: Sequence[int] | None = None,
                 coeff: int = 1) -> "Laurent":
        z = tuple(z_exp) if z_exp is not None else (0,) * nz
        if len(z) != nz:
            raise ValueError("z exponent has the wrong length")
        return cls({(q_exp,) + z: coeff}, nz)

    @classmethod
    def const(cls, c: int, nz: int) -> "Laurent":
        return cls.monomial(nz, 0, None, c)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other, self.nz)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "Laurent") -> "Laurent":
        if isinstance(other, int):
            other = Laurent.const(other, self.nz)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Laurent._raw(out, self.nz)

    __radd__ = __add__

    def __neg__(self) -> "Laurent":
        return Laurent._raw({k: -c for k, c in self.terms.items()}, self.nz)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            if not other:
                return Laurent._raw({}, self.nz)
            return Laurent._raw({k: c * other for k, c in self.terms.items()}, self.nz)
        if not isinstance(other, Laurent):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict = defaultdict(int)
        for kb, cb in b.items():
            for ka, ca in a.items():
                out[_vadd(ka, kb)] += ca * cb
        return Laurent({k: c for k, c in out.items() if c}, self.nz)

    __rmul__ = __mul__

    def shift(self, key: Key, coeff: int = 1) -> "Laurent":
        """Multiply by the monomial with exponent ``key``."""
        return Laurent._raw(
            {_vadd(k, key): c * coeff for k, c in self.terms.items()}, self.nz
        )

    def bar(self) -> "Laurent":
        return Laurent._raw({(-k[0],) + k[1:]: c for k, c in self.terms.items()}, self.nz)

    def invert_z(self) -> "Laurent":
        return Laurent._raw(
            {(k[0],) + tuple(-x for x in k[1:]): c for k, c in self.terms.items()},
            self.nz,
        )

    def div_one_minus(self, beta: Sequence[int]) -> "Laurent | None":
        """Exact quotient by (1 - z^beta), or None if it does not divide."""
        if not self.terms:
            return self
        i = next(j for j, b in enumerate(beta) if b) + 1
        step = (0,) + tuple(beta)
        bi = step[i]
        chains: dict = defaultdict(dict)
        for e, c in self.terms.items():
            k = e[i] // bi
            rep = tuple(x - k * b for x, b in zip(e, step))
            chains[rep][k] = c
        out = {}
        for rep, chain in chains.items():
            lo, hi = min(chain), max(chain)
            run = 0
            for k in range(lo, hi):
                run += chain.get(k, 0)
                if run:
                    out[tuple(x + k * b for x, b in zip(rep, step))] = run
            if run + chain[hi]:
                return None
        return Laurent._raw(out, self.nz)

    def q_degree_range(self) -> tuple[int, int]:
        qs = [k[0] for k in self.terms]
        return min(qs), max(qs)

    def sorted_terms(self) -> list[tuple[Key, int]]:
        return sorted(self.terms.items())

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items(), key=lambda kc: (sum(kc[0][1:]), kc[0][1:], kc[0][0])):
            mono = _format_monomial(k)
            if mono == "1":
                parts.append((c, str(abs(c))))
            else:
                parts.append((c, mono if abs(c) == 1 else f"{abs(c)}*{mono}"))
        out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
        for c, s in parts[1:]:
            out += (" - " if c < 0 else " + ") + s
        return out

    def __repr__(self):
        return f"Laurent({self})"

    def to_json(self) -> list[dict]:
        return [
            {"q_exp": k[0], "z_exp": list(k[1:]), "coeff": c}
            for k, c in self.sorted_terms()
        ]

    @classmethod
    def from_json(cls, data: Iterable[Mapping], nz: int) -> "Laurent":
        return cls({(int(t["q_exp"]),) + tuple(int(x) for x in t["z_exp"]): int(t["coeff"])
                    for t in data}, nz)


def _format_monomial(k: Key) -> str:
    parts = []
    if k[0]:
        parts.append("q" if k[0] == 1 else f"q^{k[0]}")
    for i, e in enumerate(k[1:], start=1):
        if e:
            parts.append(f"z{i}" if e == 1 else f"z{i}^{e}")
    return "*".join(parts) if parts else "1"


_ONE_MINUS_CACHE: dict[tuple[tuple[int, ...], int], Laurent] = {}


def _one_minus_pow(beta: tuple[int, ...], m: int) -> Laurent:
    """(1 - z^beta)^m, cached."""
    key = (beta, m)
    got = _ONE_MINUS_CACHE.get(key)
    if got is None:
        nz = len(beta)
        if m == 0:
            got = Laurent.const(1, nz)
        else:
            base = Laurent({(0,) * (nz + 1): 1, (0,) + beta: -1}, nz)
            got = _one_minus_pow(beta, m - 1) * base
        _ONE_MINUS_CACHE[key] = got
    return got


def _is_positive_vec(beta: Sequence[int]) -> bool:
    return any(beta) and all(b >= 0 for b in beta)


class RatFn:
    """
    numerator / prod (1 - z^beta)^m over a multiset of positive roots beta.

    Values are immutable and kept reduced: no denominator factor divides the
    numerator.  Equality is cross-multiplied numerator equality.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Mapping[tuple[int, ...], int] | Iterable = (),
                 _reduce: bool = True):
        items = den.items() if isinstance(den, Mapping) else den
        d: dict = {}
        for beta, m in items:
            beta = tuple(beta)
            if m < 0 or (m and not _is_positive_vec(beta)):
                raise ValueError(f"bad denominator factor {beta}^{m}")
            if m:
                d[beta] = d.get(beta, 0) + m
        self.num = num
        self.den = tuple(sorted(d.items()))
        if _reduce:
            self._reduce()

    @property
    def nz(self) -> int:
        return self.num.nz

    def _reduce(self):
        if self.num.is_zero():
            self.den = ()
            return
        if not self.den:
            return
        num = self.num
        den = []
        for beta, m in self.den:
            while m:
                quot = num.div_one_minus(beta)
                if quot is None:
                    break
                num = quot
                m -= 1
            if m:
                den.append((beta, m))
        self.num = num
        self.den = tuple(den)

    # constructors -----------------------------------------------------

    @classmethod
    def const(cls, c: int, nz: int) -> "RatFn":
        return cls(Laurent.const(c, nz))

    @classmethod
    def q(cls, nz: int, power: int = 1) -> "RatFn":
        return cls(Laurent.monomial(nz, power))

    @classmethod
    def z(cls, beta: Sequence[int]) -> "RatFn":
        beta = tuple(beta)
        return cls(Laurent.monomial(len(beta), 0, beta))

    @classmethod
    def inv_one_minus(cls, beta: Sequence[int]) -> "RatFn":
        """1/(1 - z^beta); a negative beta is rewritten as -z^-beta/(1 - z^-beta)."""
        beta = tuple(beta)
        nz = len(beta)
        if _is_positive_vec(beta):
            return cls(Laurent.const(1, nz), {beta: 1}, _reduce=False)
        pos = tuple(-b for b in beta)
        if not _is_positive_vec(pos):
            raise ValueError(f"1 - z^{beta} is not a root binomial")
        return cls(Laurent.monomial(nz, 0, pos, -1), {pos: 1}, _reduce=False)

    # arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "RatFn":
        if isinstance(other, RatFn):
            return other
        if isinstance(other, int):
            return RatFn.const(other, self.nz)
        if isinstance(other, Laurent):
            return RatFn(other)
        raise TypeError(f"cannot combine RatFn with {type(other).__name__}")

    def _lift(self, target: dict) -> Laurent:
        num = self.num
        mine = dict(self.den)
        for beta, m in target.items():
            extra = m - mine.get(beta, 0)
            if extra:
                num = num * _one_minus_pow(beta, extra)
        return num

    def __add__(self, other) -> "RatFn":
        other = self._coerce(other)
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        target = dict(self.den)
        for beta, m in other.den:
            target[beta] = max(target.get(beta, 0), m)
        return RatFn(self._lift(target) + other._lift(target), target)

    __radd__ = __add__

    def __neg__(self) -> "RatFn":
        return RatFn(-self.num, self.den, _reduce=False)

    def __sub__(self, other) -> "RatFn":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFn":
        return self._coerce(other) + (-self)

    def __mul__(self, other) -> "RatFn":
        other = self._coerce(other)
        if self.num.is_zero() or other.num.is_zero():
            return RatFn(Laurent({}, self.nz))
        den = dict(self.den)
        for beta, m in other.den:
            den[beta] = den.get(beta, 0) + m
        return RatFn(self.num * other.num, den)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        target = dict(self.den)
        for beta, m in other.den:
            target[beta] = max(target.get(beta, 0), m)
        return self._lift(target) == other._lift(target)

    __hash__ = None

    def bar(self) -> "RatFn":
        return RatFn(self.num.bar(), self.den, _reduce=False)

    def invert_z(self) -> "RatFn":
        num = self.num.invert_z()
        for beta, m in self.den:
            num = num.shift((0,) + tuple(b * m for b in beta), (-1) ** m)
        return RatFn(num, self.den, _reduce=False)

    def den_multiset(self) -> dict[tuple[int, ...], int]:
        return dict(self.den)

    def is_pure_q(self) -> bool:
        return not self.den and all(not any(k[1:]) for k in self.num.terms)

    def __str__(self):
        num = str(self.num)
        if not self.den:
            return num
        if len(self.num.terms) > 1:
            num = f"({num})"
        facs = []
        for beta, m in self.den:
            mono = _format_monomial((0,) + beta)
            f = f"(1 - {mono})"
            facs.append(f if m == 1 else f"{f}^{m}")
        den = "*".join(facs)
        return f"{num}/{den}" if len(facs) == 1 else f"{num}/({den})"

    def __repr__(self):
        return f"RatFn({self})"

    def to_json(self) -> dict:
        return {
            "num": self.num.to_json(),
            "den": [{"root": list(b), "mult": m} for b, m in self.den],
        }

    @classmethod
    def from_json(cls, data: Mapping, nz: int) -> "RatFn":
        return cls(
            Laurent.from_json(data["num"], nz),
            [(tuple(int(x) for x in d["root"]), int(d["mult"])) for d in data["den"]],
        )


class QPoly:
    """Laurent polynomial in q with integer coefficients, ``{exp: coeff}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {int(e): int(c) for e, c in (coeffs or {}).items() if c}

    @classmethod
    def from_list(cls, coeffs: Sequence[int], offset: int = 0) -> "QPoly":
        return cls({i + offset: int(c) for i, c in enumerate(coeffs) if c})

    @classmethod
    def q(cls, power: int = 1) -> "QPoly":
        return cls({power: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def degree(self) -> int:
        if not self.coeffs:
            return -1
        return max(self.coeffs)

    def low_degree(self) -> int:
        return min(self.coeffs) if self.coeffs else 0

    def __getitem__(self, e: int) -> int:
        return self.coeffs.get(e, 0)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QPoly({0: other})
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other) -> "QPoly":
        if isinstance(other, int):
            other = QPoly({0: other})
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return QPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "QPoly":
        if isinstance(other, int):
            return QPoly({e: c * other for e, c in self.coeffs.items()})
        out: dict = defaultdict(int)
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] += c1 * c2
        return QPoly(out)

    __rmul__ = __mul__

    def bar(self) -> "QPoly":
        return QPoly({-e: c for e, c in self.coeffs.items()})

    def evaluate_mod(self, q: int, p: int) -> int:
        total = 0
        for e, c in self.coeffs.items():
            total += c * pow(q, e, p)
        return total % p

    def to_ratfn(self, nz: int) -> RatFn:
        return RatFn(Laurent({(e,) + (0,) * nz: c for e, c in self.coeffs.items()}, nz))

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if mono:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            else:
                body = str(abs(c))
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        return out

    def __repr__(self):
        return f"QPoly({self})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self.coeffs.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "QPoly":
        return cls({int(e): int(c) for e, c in data.items()})


# module-level API ----------------------------------------------------


def ratfn_add(a: RatFn, b: RatFn) -> RatFn:
    return a + b


def ratfn_mul(a: RatFn, b: RatFn) -> RatFn:
    return a * b


def ratfn_neg(a: RatFn) -> RatFn:
    return -a


def reduce(a: RatFn) -> RatFn:
    return RatFn(a.num, a.den)


def bar(a: RatFn) -> RatFn:
    return a.bar()


def invert_z(a: RatFn) -> RatFn:
    return a.invert_z()


def limit_z_infinity(a: RatFn, weights: Sequence[int] | None = None) -> QPoly:
    """
    Limit as z^alpha -> infinity for every positive root alpha.

    Substitutes z^lam -> t^<weights, lam> (heights by default) and compares
    top t-degrees of numerator and denominator.
    """
    nz = a.nz
    w = tuple(weights) if weights is not None else (1,) * nz
    if any(x <= 0 for x in w):
        raise ValueError("weights must be strictly positive")
    if a.num.is_zero():
        return QPoly()
    by_deg: dict[int, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for k, c in a.num.terms.items():
        d = sum(x * y for x, y in zip(w, k[1:]))
        by_deg[d][k[0]] += c
    top = None
    for d in sorted(by_deg, reverse=True):
        if any(by_deg[d].values()):
            top = d
            break
    if top is None:
        return QPoly()
    den_deg = sum(m * sum(x * y for x, y in zip(w, beta)) for beta, m in a.den)
    if top > den_deg:
        raise NoLimit(f"numerator t-degree {top} exceeds denominator degree {den_deg}")
    if top < den_deg:
        return QPoly()
    sign = -1 if sum(m for _, m in a.den) % 2 else 1
    return QPoly({e: sign * c for e, c in by_deg[top].items()})


class SymbolicScalars:
    """
    Scalar backend producing exact ``RatFn`` values.

    ``bar`` and ``invz`` twist the evaluation point to (q^-1, z) and (q, z^-1):
    a recursion run over a twisted backend yields the twisted function.
    """

    kind = "symbolic"

    def __init__(self, nz: int, bar: bool = False, invz: bool = False):
        self.nz = nz
        self.bar_flag = bar
        self.invz_flag = invz
        self._zero = RatFn.const(0, nz)
        self._one = RatFn.const(1, nz)
        self._q = RatFn.q(nz, -1 if bar else 1)

    def twist(self, bar: bool = False, invz: bool = False) -> "SymbolicScalars":
        return SymbolicScalars(self.nz, self.bar_flag ^ bar, self.invz_flag ^ invz)

    @property
    def zero(self) -> RatFn:
        return self._zero

    @property
    def one(self) -> RatFn:
        return self._one

    @property
    def q(self) -> RatFn:
        return self._q

    def const(self, c: int) -> RatFn:
        return RatFn.const(c, self.nz)

    def q_pow(self, k: int) -> RatFn:
        return RatFn.q(self.nz, -k if self.bar_flag else k)

    def z(self, beta: Sequence[int]) -> RatFn:
        beta = tuple(beta)
        if self.invz_flag:
            beta = tuple(-b for b in beta)
        return RatFn.z(beta)

    def inv_one_minus(self, beta: Sequence[int]) -> RatFn:
        beta = tuple(beta)
        if self.invz_flag:
            beta = tuple(-b for b in beta)
        return RatFn.inv_one_minus(beta)

    def from_qpoly(self, p: QPoly) -> RatFn:
        f = p.to_ratfn(self.nz)
        return f.bar() if self.bar_flag else f

    def from_ratfn(self, f: RatFn) -> RatFn:
        if self.bar_flag:
            f = f.bar()
        if self.invz_flag:
            f = f.invert_z()
        return f

    def is_zero(self, x: RatFn) -> bool:
        return x.is_zero()
