"""Permutation backend.

Permutations on n points are stored as image tuples over 0..n-1 and act
from the left: ``pmul(p, q)`` is the map x -> p(q(x)), so a product
written left to right applies its right factor first.  Cycle notation at
the API boundary is 1-based by default with a zero-based switch.
"""

from __future__ import annotations

import itertools
import math
import re

from .core import CapacityExceeded, Group, PreconditionError

DEFAULT_CENTRALIZER_CAP = 10**7


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def pmul(p: tuple, q: tuple) -> tuple:
    """Composition applying q first: (p*q)(x) = p(q(x))."""
    return tuple(p[i] for i in q)


def pinv(p: tuple) -> tuple:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def is_perm(p: tuple, n: int) -> bool:
    return len(p) == n and set(p) == set(range(n))


def cycles_of(p: tuple, include_fixed: bool = False) -> list:
    """Disjoint cycles, each starting at its minimum, sorted by start."""
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        if len(cyc) > 1 or include_fixed:
            out.append(cyc)
    return out


def cycle_type(p: tuple) -> tuple:
    """Sorted tuple of cycle lengths >= 2; identity has type ()."""
    return tuple(sorted(len(c) for c in cycles_of(p)))


def perm_order(p: tuple) -> int:
    return math.lcm(*(len(c) for c in cycles_of(p)), 1)


def parity(p: tuple) -> int:
    """0 for even, 1 for odd."""
    return sum(len(c) - 1 for c in cycles_of(p)) % 2


_CYCLE_RE = re.compile(r"\(\s*(\d+(?:\s*,\s*\d+)*)?\s*\)")


def parse_cycles(text: str, n: int, zero_based: bool = False) -> tuple:
    """Parse "(i,j,k)(l,m)..." into a permutation on n points.

    Cycles may overlap; they compose left-to-right as maps applied from
    the left (the leftmost cycle is applied last).
    """
    stripped = text.strip()
    if not stripped:
        raise PreconditionError("empty permutation literal")
    pos = 0
    cycles = []
    for m in _CYCLE_RE.finditer(stripped):
        if stripped[pos:m.start()].strip():
            raise PreconditionError(f"malformed cycle notation: {text!r}")
        pos = m.end()
        body = m.group(1)
        if body is None:
            continue
        entries = [int(tok) for tok in body.split(",")]
        if not zero_based:
            if any(e < 1 for e in entries):
                raise PreconditionError(f"cycle entry below 1 in {text!r}")
            entries = [e - 1 for e in entries]
        if any(not (0 <= e < n) for e in entries):
            raise PreconditionError(f"cycle entry out of range 1..{n} in {text!r}")
        if len(set(entries)) != len(entries):
            raise PreconditionError(f"repeated point within a cycle in {text!r}")
        cycles.append(entries)
    if pos != len(stripped) and stripped[pos:].strip():
        raise PreconditionError(f"malformed cycle notation: {text!r}")
    out = identity_perm(n)
    for cyc in reversed(cycles):
        out = pmul(cycle_to_perm(cyc, n), out)
    return out


def cycle_to_perm(cycle: list, n: int) -> tuple:
    images = list(range(n))
    for a, b in zip(cycle, cycle[1:]):
        images[a] = b
    if cycle:
        images[cycle[-1]] = cycle[0]
    return tuple(images)


def format_cycles(p: tuple, zero_based: bool = False) -> str:
    shift = 0 if zero_based else 1
    cycles = cycles_of(p)
    if not cycles:
        return "()"
    return "".join("(" + ",".join(str(x + shift) for x in c) + ")" for c in cycles)


# -- stabilizer chain (base and strong generating set) -------------------


class _ChainNode:
    """One level of a stabilizer chain.

    ``gens`` holds only the strong generators first attached here; the
    group fixing all shallower base points is generated by this node's
    gens together with every deeper node's (``all_gens``).
    """

    __slots__ = ("n", "base", "gens", "transversal", "_trans_inv", "_tree_edge", "stab")

    def __init__(self, n: int):
        self.n = n
        self.base: int | None = None
        self.gens: list = []
        self.transversal: dict = {}
        self._trans_inv: dict = {}
        self._tree_edge: dict = {}
        self.stab: _ChainNode | None = None

    def all_gens(self) -> list:
        out = list(self.gens)
        if self.stab is not None:
            out.extend(self.stab.all_gens())
        return out

    def sift(self, p: tuple) -> tuple:
        node = self
        ident = identity_perm(self.n)
        while node is not None and node.base is not None:
            u = node.transversal.get(p[node.base])
            if u is None:
                return p
            p = pmul(pinv(u), p)
            if p == ident:
                return p
            node = node.stab
        return p

    def add_gen(self, p: tuple):
        residue = self.sift(p)
        if residue != identity_perm(self.n):
            self._add_nonmember(residue)

    def _add_nonmember(self, p: tuple):
        if self.base is None:
            self.base = next(i for i in range(self.n) if p[i] != i)
            self.stab = _ChainNode(self.n)
        if p[self.base] == self.base:
            self.stab.add_gen(p)
        else:
            self.gens.append(p)
        self._rebuild_orbit()
        # Verify every Schreier generator of this level against the
        # chain below; non-members recurse downward.  Tree edges are
        # skipped: their Schreier generator is the identity by
        # construction of the transversal.
        gens_snapshot = self.all_gens()
        ident = identity_perm(self.n)
        for x in sorted(self.transversal):
            ux = self.transversal[x]
            for g in gens_snapshot:
                y = g[x]
                edge = self._tree_edge.get(y)
                if edge is not None and edge[0] == x and edge[1] is g:
                    continue
                schreier = pmul(self._trans_inv[y], pmul(g, ux))
                if schreier != ident:
                    self.stab.add_gen(schreier)

    def _rebuild_orbit(self):
        ident = identity_perm(self.n)
        self.transversal = {self.base: ident}
        self._trans_inv = {self.base: ident}
        self._tree_edge = {}
        frontier = [self.base]
        gens = self.all_gens()
        while frontier:
            new = []
            for x in frontier:
                ux = self.transversal[x]
                for g in gens:
                    y = g[x]
                    if y not in self.transversal:
                        u = pmul(g, ux)
                        self.transversal[y] = u
                        self._trans_inv[y] = pinv(u)
                        self._tree_edge[y] = (x, g)
                        new.append(y)
            frontier = new

    @property
    def order(self) -> int:
        if self.base is None:
            return 1
        return len(self.transversal) * self.stab.order


class StabilizerChain:
    """Deterministic incremental Schreier-Sims."""

    def __init__(self, gens: list):
        if not gens:
            raise PreconditionError("empty generator list")
        self.n = len(gens[0])
        if any(len(g) != self.n for g in gens):
            raise PreconditionError("generators have mixed degree")
        self.root = _ChainNode(self.n)
        for g in gens:
            self.root.add_gen(g)

    @property
    def order(self) -> int:
        return self.root.order

    def contains(self, g: tuple) -> bool:
        return self.root.sift(g) == identity_perm(self.n)


def bsgs_order(gens: list) -> int:
    """Exact order of <gens> via a base and strong generating set."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return 1
    return StabilizerChain(gens).order


# -- centralizer and conjugator machinery --------------------------------


def centralizer_size(a: tuple) -> int:
    """|C_{S_n}(a)| from the cycle structure (fixed points included)."""
    counts: dict[int, int] = {}
    for c in cycles_of(a, include_fixed=True):
        counts[len(c)] = counts.get(len(c), 0) + 1
    size = 1
    for length, mult in counts.items():
        size *= length**mult * math.factorial(mult)
    return size


def iter_centralizer(a: tuple, cap: int = DEFAULT_CENTRALIZER_CAP):
    """Yield all elements of C_{S_n}(a), deterministically.

    The centralizer is the direct product over cycle lengths of
    (cyclic shifts per cycle) wreath (permutations of equal-length
    cycles).  Raises CapacityExceeded if its size is over ``cap``.
    """
    n = len(a)
    if centralizer_size(a) > cap:
        raise CapacityExceeded("centralizer enumeration", cap)
    by_len: dict[int, list] = {}
    for c in cycles_of(a, include_fixed=True):
        by_len.setdefault(len(c), []).append(c)
    lengths = sorted(by_len)
    per_length_choices = []
    for length in lengths:
        block = by_len[length]
        m = len(block)
        choices = list(
            itertools.product(
                itertools.permutations(range(m)),
                itertools.product(range(length), repeat=m),
            )
        )
        per_length_choices.append((block, choices))
    for combo in itertools.product(*(c for _, c in per_length_choices)):
        images = list(range(n))
        for (block, _), (pi, shifts) in zip(per_length_choices, combo):
            length = len(block[0])
            for j, src in enumerate(block):
                dst = block[pi[j]]
                k = shifts[j]
                for t in range(length):
                    images[src[t]] = dst[(t + k) % length]
        yield tuple(images)


class DegeneratePair(Exception):
    """Both constraint elements are the identity: every ambient element works."""


def find_aligning_conjugator(a: tuple, target: tuple):
    """One x with x a x^-1 = target, or None if cycle types differ."""
    if cycle_type(a) != cycle_type(target):
        return None
    n = len(a)
    src = sorted(cycles_of(a, include_fixed=True), key=lambda c: (len(c), c))
    dst = sorted(cycles_of(target, include_fixed=True), key=lambda c: (len(c), c))
    images = [0] * n
    for cs, cd in zip(src, dst):
        for t in range(len(cs)):
            images[cs[t]] = cd[t]
    return tuple(images)


def conjugator_search(
    a: tuple,
    a_target: tuple,
    c: tuple,
    c_target: tuple,
    ambient: str = "sym",
    cap_centralizer: int = DEFAULT_CENTRALIZER_CAP,
) -> list:
    """Complete list of ambient g with g a g^-1 = a_target, g c g^-1 = c_target.

    Solutions of the first equation form a coset g0 * C(a); the
    centralizer is enumerated from the cycle structure and filtered by
    the second equation and the ambient parity.  Raises DegeneratePair
    when both a and c are the identity (the solution set would be the
    whole ambient group) and CapacityExceeded past ``cap_centralizer``.
    """
    n = len(a)
    if ambient not in ("sym", "alt"):
        raise PreconditionError(f"unknown ambient {ambient!r}")
    ident = identity_perm(n)
    if a == ident and c == ident:
        if a_target == ident and c_target == ident:
            raise DegeneratePair()
        return []
    if a == ident:
        # Align on the non-identity element; its centralizer is smaller.
        a, a_target, c, c_target = c, c_target, a, a_target
    g0 = find_aligning_conjugator(a, a_target)
    if g0 is None:
        return []
    if cycle_type(c) != cycle_type(c_target):
        return []
    out = []
    c_inv_needed = c_target
    for z in iter_centralizer(a, cap=cap_centralizer):
        g = pmul(g0, z)
        if ambient == "alt" and parity(g) != 0:
            continue
        if pmul(g, pmul(c, pinv(g))) == c_inv_needed:
            assert pmul(g, pmul(a, pinv(g))) == a_target
            out.append(g)
    out.sort()
    return out


# -- group contexts -------------------------------------------------------


class SymmetricGroup(Group):
    kind = "sym"

    def __init__(self, n: int):
        if n < 1:
            raise PreconditionError("degree must be >= 1")
        self.n = n
        self._gens = [cycle_to_perm([0, 1], n)] if n >= 2 else []
        if n >= 2:
            self._gens.append(cycle_to_perm(list(range(n)), n))

    @property
    def identity(self):
        return identity_perm(self.n)

    def mul(self, x, y):
        return pmul(x, y)

    def inv(self, x):
        return pinv(x)

    @property
    def order(self) -> int:
        return math.factorial(self.n)

    @property
    def generators(self):
        return list(self._gens)

    def contains(self, x) -> bool:
        return isinstance(x, tuple) and is_perm(x, self.n)

    def element_order(self, g) -> int:
        return perm_order(g)

    def generates_pair(self, a, c) -> bool:
        return bsgs_order([a, c]) == self.order

    def descriptor(self) -> dict:
        return {"kind": "sym", "n": self.n}


class AlternatingGroup(Group):
    kind = "alt"

    def __init__(self, n: int):
        if n < 3:
            raise PreconditionError("alternating degree must be >= 3")
        self.n = n
        long_cycle = list(range(n)) if n % 2 == 1 else list(range(1, n))
        self._gens = [cycle_to_perm([0, 1, 2], n), cycle_to_perm(long_cycle, n)]

    @property
    def identity(self):
        return identity_perm(self.n)

    def mul(self, x, y):
        return pmul(x, y)

    def inv(self, x):
        return pinv(x)

    @property
    def order(self) -> int:
        return math.factorial(self.n) // 2

    @property
    def generators(self):
        return list(self._gens)

    def contains(self, x) -> bool:
        return isinstance(x, tuple) and is_perm(x, self.n) and parity(x) == 0

    def element_order(self, g) -> int:
        return perm_order(g)

    def generates_pair(self, a, c) -> bool:
        return bsgs_order([a, c]) == self.order

    def descriptor(self) -> dict:
        return {"kind": "alt", "n": self.n}
