"""
Finite root systems, their Weyl groups, and the Bruhat order.

Elements of a Weyl group are enumerated once and indexed densely, sorted by
length and then by canonical form (the images of the simple roots, as root
indices).  Everything downstream memoizes on these dense indices.

>>> rs = build_root_system("A", 2)
>>> rs.positive_roots
((1, 0), (0, 1), (1, 1))
>>> w0 = element_from_word(rs, [1, 2, 1])
>>> w0.length, str(w0), w0.index == rs.weyl_group.w0
(3, 's1*s2*s1', True)
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    IndexOutOfRange,
    MixedRootSystems,
    NotComparable,
    UnsupportedType,
)

__all__ = [
    "RootVec", "RootSystem", "WeylGroup", "WeylElt", "ADResult",
    "build_root_system", "cartan_matrix", "element_from_word",
    "parse_element", "multiply", "inverse", "bruhat_leq", "bruhat_interval",
    "act_on_root", "s_sets", "ad_min", "root_leq",
]

# coordinates in the simple-root basis
RootVec = tuple[int, ...]

MAX_RANK = 8
# enumeration guard; D6 and B6 are the largest groups below it
MAX_ORDER = 50_000


def cartan_matrix(cartan_type: str, rank: int) -> tuple[tuple[int, ...], ...]:
    """
    Bourbaki Cartan matrix with a[i][j] = <alpha_i^vee, alpha_j>.

    B_n has alpha_n short, C_n is its transpose.
    """
    t = cartan_type.upper()
    if not 1 <= rank <= MAX_RANK:
        raise UnsupportedType(f"rank {rank} outside 1..{MAX_RANK}")
    a = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if t == "A":
        for i in range(rank - 1):
            link(i, i + 1)
    elif t in ("B", "C"):
        if rank < 2:
            raise UnsupportedType(f"{t}{rank}: use A1")
        for i in range(rank - 2):
            link(i, i + 1)
        if t == "B":
            link(rank - 2, rank - 1, -1, -2)
        else:
            link(rank - 2, rank - 1, -2, -1)
    elif t == "D":
        if rank < 4:
            raise UnsupportedType(f"D{rank}: rank must be at least 4")
        for i in range(rank - 2):
            link(i, i + 1)
        link(rank - 3, rank - 1)
    elif t == "G":
        if rank != 2:
            raise UnsupportedType("G exists only in rank 2")
        link(0, 1, -3, -1)
    elif t == "F":
        if rank != 4:
            raise UnsupportedType("F exists only in rank 4")
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    else:
        raise UnsupportedType(f"unsupported Cartan type {cartan_type!r}")
    return tuple(tuple(row) for row in a)


def _expected_positive_roots(t: str, n: int) -> int:
    return {
        "A": n * (n + 1) // 2,
        "B": n * n,
        "C": n * n,
        "D": n * (n - 1),
        "G": 6,
        "F": 24,
    }[t]


def root_leq(a: RootVec, b: RootVec) -> bool:
    """Root-lattice order: a <= b iff b - a has nonnegative coordinates."""
    return all(x <= y for x, y in zip(a, b))


def _height(v: RootVec) -> int:
    return sum(v)


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: str
    rank: int
    cartan_matrix: tuple[tuple[int, ...], ...]
    positive_roots: tuple[RootVec, ...]
    # positive roots first, then their negatives in the same order
    roots: tuple[RootVec, ...] = field(repr=False)
    root_index: dict = field(repr=False)
    # reflection_table[i][k] = index of s_i(roots[k])
    reflection_table: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def name(self) -> str:
        return f"{self.cartan_type}{self.rank}"

    @property
    def num_positive(self) -> int:
        return len(self.positive_roots)

    @property
    def is_simply_laced(self) -> bool:
        return all(
            self.cartan_matrix[i][j] in (0, -1)
            for i in range(self.rank) for j in range(self.rank) if i != j
        )

    def simple_root(self, i: int) -> RootVec:
        """Simple root alpha_i (0-based i)."""
        return tuple(int(k == i) for k in range(self.rank))

    def is_positive(self, k: int) -> bool:
        return k < self.num_positive

    def reflect(self, i: int, lam: Sequence[int]) -> RootVec:
        """Apply s_i (0-based) to an arbitrary lattice vector."""
        pairing = sum(c * self.cartan_matrix[i][j] for j, c in enumerate(lam))
        out = list(lam)
        out[i] -= pairing
        return tuple(out)

    @functools.cached_property
    def weyl_group(self) -> "WeylGroup":
        return WeylGroup(self)

    def __repr__(self):
        return f"RootSystem({self.name})"


@functools.lru_cache(maxsize=None)
def build_root_system(cartan_type: str, rank: int) -> RootSystem:
    """Build and validate the root system of the given Cartan type."""
    t = cartan_type.upper()
    a = cartan_matrix(t, rank)

    def reflect(i, lam):
        pairing = sum(c * a[i][j] for j, c in enumerate(lam))
        out = list(lam)
        out[i] -= pairing
        return tuple(out)

    simple = [tuple(int(k == i) for k in range(rank)) for i in range(rank)]
    seen = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for lam in frontier:
            for i in range(rank):
                mu = reflect(i, lam)
                if mu not in seen:
                    seen.add(mu)
                    nxt.append(mu)
        frontier = nxt

    positive = sorted(
        (r for r in seen if all(c >= 0 for c in r)),
        key=lambda r: (_height(r), tuple(-c for c in r)),
    )
    if len(positive) != _expected_positive_roots(t, rank):
        raise AssertionError(f"{t}{rank}: wrong number of positive roots")
    if len(seen) != 2 * len(positive):
        raise AssertionError(f"{t}{rank}: root set is not symmetric")
    roots = tuple(positive) + tuple(tuple(-c for c in r) for r in positive)
    index = {r: k for k, r in enumerate(roots)}
    table = tuple(
        tuple(index[reflect(i, r)] for r in roots) for i in range(rank)
    )
    n_pos = len(positive)
    for i in range(rank):
        assert table[i][i] == i + n_pos
        moved = {table[i][k] for k in range(n_pos) if k != i}
        assert moved == set(range(n_pos)) - {i}
    return RootSystem(
        cartan_type=t,
        rank=rank,
        cartan_matrix=a,
        positive_roots=tuple(positive),
        roots=roots,
        root_index=index,
        reflection_table=table,
    )


class WeylGroup:
    """
    Dense enumeration of the Weyl group of a root system.

    Element ``k`` is stored as the permutation it induces on the root list;
    ``lmul[i][k]`` and ``rmul[i][k]`` index ``s_i w`` and ``w s_i``.
    """

    def __init__(self, rs: RootSystem):
        self.root_system = rs
        n_pos = rs.num_positive
        n_roots = 2 * n_pos
        refl = rs.reflection_table
        rank = rs.rank

        identity = tuple(range(n_roots))
        found = {identity[:rank]: identity}
        frontier = [identity]
        while frontier:
            nxt = []
            for perm in frontier:
                for i in range(rank):
                    ri = refl[i]
                    new = tuple(ri[b] for b in perm)
                    key = new[:rank]
                    if key not in found:
                        found[key] = new
                        nxt.append(new)
                        if len(found) > MAX_ORDER:
                            raise UnsupportedType(
                                f"{rs.name}: Weyl group larger than {MAX_ORDER}"
                            )
            frontier = nxt

        def length_of(perm):
            return sum(1 for b in perm[:n_pos] if b >= n_pos)

        perms = sorted(found.values(), key=lambda p: (length_of(p), p[:rank]))
        self.perms: list[tuple[int, ...]] = perms
        self.order = len(perms)
        self.index = {p[:rank]: k for k, p in enumerate(perms)}
        self.length = np.array([length_of(p) for p in perms], dtype=np.int64)
        self.rank = rank
        self.num_positive = n_pos

        self.lmul = np.empty((rank, self.order), dtype=np.int64)
        self.rmul = np.empty((rank, self.order), dtype=np.int64)
        for k, p in enumerate(perms):
            for i in range(rank):
                self.lmul[i, k] = self.index[tuple(refl[i][b] for b in p[:rank])]
                self.rmul[i, k] = self.index[
                    tuple(p[refl[i][j]] for j in range(rank))
                ]
        self.inv = np.empty(self.order, dtype=np.int64)
        for k, p in enumerate(perms):
            pinv = [0] * n_roots
            for a_, b_ in enumerate(p):
                pinv[b_] = a_
            self.inv[k] = self.index[tuple(pinv[:rank])]
        # left/right descent masks, [i, k]
        self.ldesc = self.length[self.lmul] < self.length[None, :]
        self.rdesc = self.length[self.rmul] < self.length[None, :]
        self.identity = 0
        self.w0 = self.order - 1
        self._words: dict[int, tuple[int, ...]] = {}
        self._intervals: dict[tuple[int, int], list[int]] = {}
        self._reflections: list[int] | None = None

    def __repr__(self):
        return f"WeylGroup({self.root_system.name}, order={self.order})"

    # dense-index primitives -------------------------------------------

    def mul(self, a: int, b: int) -> int:
        pa, pb = self.perms[a], self.perms[b]
        return self.index[tuple(pa[pb[j]] for j in range(self.rank))]

    def from_word(self, word: Iterable[int]) -> int:
        """Dense index of the product of 0-based simple reflections."""
        k = 0
        for i in word:
            k = int(self.rmul[i, k])
        return k

    def word(self, k: int) -> tuple[int, ...]:
        """Lexicographically minimal reduced word (0-based letters)."""
        w = self._words.get(k)
        if w is None:
            out = []
            cur = k
            while cur != 0:
                i = int(np.argmax(self.ldesc[:, cur]))
                out.append(i)
                cur = int(self.lmul[i, cur])
            w = tuple(out)
            self._words[k] = w
        return w

    def left_descent(self, k: int, highest: bool = False) -> int:
        idx = np.flatnonzero(self.ldesc[:, k])
        return int(idx[-1] if highest else idx[0])

    def act_index(self, k: int, root: int) -> int:
        """Index of w(root) for a root index."""
        return self.perms[k][root]

    def act(self, k: int, lam: Sequence[int]) -> RootVec:
        rs = self.root_system
        key = tuple(lam)
        if key in rs.root_index:
            return rs.roots[self.perms[k][rs.root_index[key]]]
        out = [0] * self.rank
        for j, c in enumerate(lam):
            if c:
                img = rs.roots[self.perms[k][j]]
                for t in range(self.rank):
                    out[t] += c * img[t]
        return tuple(out)

    def pullback(self, k: int, lam: Sequence[int]) -> RootVec:
        """w^{-1}(lam), the exponent of z^lam under the shift by w."""
        return self.act(int(self.inv[k]), lam)

    @functools.cached_property
    def leq(self) -> np.ndarray:
        """Bruhat order as a boolean matrix, ``leq[u, v]`` iff u <= v."""
        n = self.order
        m = np.zeros((n, n), dtype=bool)
        m[0, 0] = True
        ar = np.arange(n)
        for v in range(1, n):
            s = self.left_descent(v)
            sv = int(self.lmul[s, v])
            su = self.lmul[s]
            down = self.ldesc[s]
            # lifting property: su<u gives u<=v iff su<=sv, otherwise u<=sv
            m[:, v] = np.where(down, m[su, sv], m[ar, sv])
        return m

    def interval(self, u: int, v: int) -> list[int]:
        key = (u, v)
        got = self._intervals.get(key)
        if got is None:
            leq = self.leq
            if not leq[u, v]:
                got = []
            else:
                got = np.flatnonzero(leq[u] & leq[:, v]).tolist()
            self._intervals[key] = got
        return got

    def comparable_pairs(self, strict: bool = False) -> list[tuple[int, int]]:
        us, vs = np.nonzero(self.leq)
        pairs = sorted(zip(us.tolist(), vs.tolist()), key=self.pair_key)
        if strict:
            pairs = [(u, v) for u, v in pairs if u != v]
        return pairs

    def pair_key(self, pair: tuple[int, int]):
        u, v = pair
        return (int(self.length[u]), int(self.length[v]), u, v)

    @property
    def reflections(self) -> list[int]:
        """``reflections[b]`` is the dense index of r_beta, b a positive root."""
        if self._reflections is None:
            n_pos = self.num_positive
            out = [-1] * n_pos
            for k, p in enumerate(self.perms):
                for i in range(self.rank):
                    b = p[i]
                    if b < n_pos and out[b] < 0:
                        ks = int(self.rmul[i, k])
                        out[b] = self.mul(ks, int(self.inv[k]))
            self._reflections = out
        return self._reflections

    def element(self, k: int) -> "WeylElt":
        return WeylElt(self, int(k))

    def elements(self) -> list["WeylElt"]:
        return [WeylElt(self, k) for k in range(self.order)]

    def format(self, k: int) -> str:
        w = self.word(k)
        return "*".join(f"s{i + 1}" for i in w) if w else "e"


class WeylElt:
    """An element of a Weyl group: a dense index into its group."""

    __slots__ = ("group", "index")

    def __init__(self, group: WeylGroup, index: int):
        self.group = group
        self.index = index

    @property
    def root_system(self) -> RootSystem:
        return self.group.root_system

    @property
    def canonical(self) -> tuple[int, ...]:
        """Images of the simple roots, as root indices."""
        return self.group.perms[self.index][: self.group.rank]

    @property
    def length(self) -> int:
        return int(self.group.length[self.index])

    @property
    def sign(self) -> int:
        return -1 if self.length % 2 else 1

    @property
    def word(self) -> tuple[int, ...]:
        """Lex-minimal reduced word with 1-based letters."""
        return tuple(i + 1 for i in self.group.word(self.index))

    @property
    def left_descents(self) -> frozenset[int]:
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.group.ldesc[:, self.index]))

    @property
    def right_descents(self) -> frozenset[int]:
        return frozenset(int(i) + 1 for i in np.flatnonzero(self.group.rdesc[:, self.index]))

    def inverse(self) -> "WeylElt":
        return WeylElt(self.group, int(self.group.inv[self.index]))

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, WeylElt):
            return NotImplemented
        return self.group is other.group and self.index == other.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    def bruhat_le(self, other: "WeylElt") -> bool:
        return bruhat_leq(self, other)

    def act(self, lam: Sequence[int]) -> RootVec:
        return self.group.act(self.index, lam)

    def __str__(self):
        return self.group.format(self.index)

    def __repr__(self):
        return f"WeylElt({self.root_system.name}, {self})"


def _check_same(*elts: WeylElt) -> WeylGroup:
    g = elts[0].group
    for e in elts[1:]:
        if e.group is not g:
            raise MixedRootSystems("elements belong to different Weyl groups")
    return g


def element_from_word(rs: RootSystem, word: Iterable[int]) -> WeylElt:
    """Product of simple reflections given by 1-based indices."""
    letters = []
    for i in word:
        if not 1 <= int(i) <= rs.rank:
            raise IndexOutOfRange(f"simple reflection index {i} not in 1..{rs.rank}")
        letters.append(int(i) - 1)
    g = rs.weyl_group
    return WeylElt(g, g.from_word(letters))


def parse_element(rs: RootSystem, text) -> WeylElt:
    """Accept "s3*s2", "s3s2", "e", or an index list such as [3, 2]."""
    if isinstance(text, (list, tuple)):
        return element_from_word(rs, text)
    s = str(text).strip().replace("*", "").replace(" ", "")
    if s in ("", "e", "1"):
        return element_from_word(rs, [])
    parts = s.split("s")
    if parts[0] != "" or any(not p.isdigit() for p in parts[1:]):
        raise ValueError(f"cannot parse Weyl group element {text!r}")
    return element_from_word(rs, [int(p) for p in parts[1:]])


def multiply(w1: WeylElt, w2: WeylElt) -> WeylElt:
    g = _check_same(w1, w2)
    return WeylElt(g, g.mul(w1.index, w2.index))


def inverse(w: WeylElt) -> WeylElt:
    return w.inverse()


def bruhat_leq(u: WeylElt, v: WeylElt) -> bool:
    g = _check_same(u, v)
    return bool(g.leq[u.index, v.index])


def bruhat_interval(u: WeylElt, v: WeylElt) -> list[WeylElt]:
    g = _check_same(u, v)
    if not g.leq[u.index, v.index]:
        raise NotComparable(f"{u} is not <= {v}")
    return [WeylElt(g, k) for k in g.interval(u.index, v.index)]


def act_on_root(w: WeylElt, lam: Sequence[int]) -> RootVec:
    return w.act(lam)


def _s_sets_dense(g: WeylGroup, u: int, v: int) -> tuple[list[int], list[int]]:
    leq = g.leq
    refl = g.reflections
    n_pos = g.num_positive
    s_set, s_prime = [], []
    pv, pu = g.perms[v], g.perms[u]
    for b in range(n_pos):
        r = refl[b]
        if pv[b] >= n_pos:  # v r_b < v
            if leq[u, g.mul(v, r)]:
                s_set.append(b)
        if pu[b] < n_pos:  # u r_b > u
            if leq[g.mul(u, r), v]:
                s_prime.append(b)
    return s_set, s_prime


def s_sets(u: WeylElt, v: WeylElt) -> tuple[list[RootVec], list[RootVec]]:
    """
    S(u,v) = {a > 0 : u <= v r_a < v} and S'(u,v) = {a > 0 : u < u r_a <= v}.
    """
    g = _check_same(u, v)
    if not g.leq[u.index, v.index]:
        raise NotComparable(f"{u} is not <= {v}")
    roots = g.root_system.roots
    s_set, s_prime = _s_sets_dense(g, u.index, v.index)
    return [roots[b] for b in s_set], [roots[b] for b in s_prime]


@dataclass
class ADResult:
    ad: list[RootVec]
    minimal: list[RootVec]
    # dense indices of the reflections r_a for the minimal roots
    minimal_reflections: list[int]
    covers_ok: bool


def _ad_dense(g: WeylGroup, u: int, v: int) -> tuple[list[int], list[int]]:
    n_pos = g.num_positive
    pui, pvi = g.perms[int(g.inv[u])], g.perms[int(g.inv[v])]
    # r_a u > u iff u^{-1} a > 0; r_a v < v iff v^{-1} a < 0
    ad = [b for b in range(n_pos) if pui[b] < n_pos and pvi[b] >= n_pos]
    roots = g.root_system.roots
    minimal = [
        b for b in ad
        if not any(c != b and root_leq(roots[c], roots[b]) for c in ad)
    ]
    return ad, minimal


def ad_min(u: WeylElt, v: WeylElt) -> ADResult:
    """
    AD(u,v) = {r in T : ru > u, rv < v} and its minimal elements in root order.

    For each minimal t the covering relations u <. tu <= v and u <= tv <. v
    are checked; ``covers_ok`` reports the outcome (guaranteed when simply
    laced).
    """
    g = _check_same(u, v)
    if u.index == v.index or not g.leq[u.index, v.index]:
        raise NotComparable(f"need {u} < {v}")
    ad, minimal = _ad_dense(g, u.index, v.index)
    refl = g.reflections
    length, leq = g.length, g.leq
    ok = bool(ad)
    for b in minimal:
        t = refl[b]
        tu, tv = g.mul(t, u.index), g.mul(t, v.index)
        ok &= bool(
            length[tu] == length[u.index] + 1 and leq[tu, v.index]
            and length[tv] == length[v.index] - 1 and leq[u.index, tv]
        )
    roots = g.root_system.roots
    return ADResult(
        ad=[roots[b] for b in ad],
        minimal=[roots[b] for b in minimal],
        minimal_reflections=[refl[b] for b in minimal],
        covers_ok=ok,
    )


def subword_leq(g: WeylGroup, u: int, v: int) -> bool:
    """Subword criterion, exponential in l(v); used only to cross-check."""
    word = g.word(v)
    for mask in itertools.product((0, 1), repeat=len(word)):
        if g.from_word(i for i, keep in zip(word, mask) if keep) == u:
            return True
    return False
