"""Uniform finite-group abstraction.

Every backend (permutations, 2x2 matrices over a prime field, abelian
rank-2 groups, semidirect constructions) exposes the same small surface:
canonical hashable element values, ``mul``/``inv``/``identity``, a
generator list and a known order.  All higher layers (sigma sets,
structure checkers, searches) operate through this interface only.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Iterator


DEFAULT_CLOSURE_CAP = 10**6
DEFAULT_CLASS_CAP = 10**6


class MalformedElementError(ValueError):
    """Element value does not belong to the group context it was used with."""


class CapacityExceeded(RuntimeError):
    """A closure/class/orbit computation grew past its configured cap."""

    def __init__(self, what: str, cap: int):
        super().__init__(f"{what} exceeded cap {cap}")
        self.what = what
        self.cap = cap


class UndecidedError(RuntimeError):
    """A verdict could not be decided within budget (never guessed)."""


class PreconditionError(ValueError):
    """A named input constraint was violated."""


class InconsistencyError(RuntimeError):
    """An internal cross-check failed; indicates a bug, not a user error."""


class Group:
    """Base class for executable finite groups.

    Subclasses must set ``kind`` and implement ``identity``, ``mul``,
    ``inv``, ``order``, ``generators`` and ``contains``.  Contexts are
    immutable after construction; all operations are pure.
    """

    kind: str = "abstract"

    @property
    def identity(self):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def generators(self) -> list:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def descriptor(self) -> dict:
        raise NotImplementedError

    # -- derived helpers ------------------------------------------------

    def check_element(self, x) -> None:
        if not self.contains(x):
            raise MalformedElementError(f"{x!r} is not an element of {self!r}")

    def power(self, x, k: int):
        if k < 0:
            return self.power(self.inv(x), -k)
        acc = self.identity
        base = x
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def element_order(self, g) -> int:
        """Smallest k >= 1 with g^k = 1; direct iteration capped at |G|."""
        cap = self.order
        acc = g
        k = 1
        e = self.identity
        while acc != e:
            acc = self.mul(acc, g)
            k += 1
            if k > cap:
                raise InconsistencyError("element order exceeds group order")
        return k

    def commutes(self, x, y) -> bool:
        return self.mul(x, y) == self.mul(y, x)

    def elements(self, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
        """All elements, as the closure of the generator list."""
        got = generated_subgroup(self, self.generators, cap=cap)
        if len(got) != self.order:
            raise InconsistencyError(
                f"generator closure has {len(got)} elements, order says {self.order}"
            )
        return got

    def __repr__(self):
        return f"<{type(self).__name__} {self.descriptor()}>"


# -- operations ---------------------------------------------------------


def element_order(G: Group, g) -> int:
    G.check_element(g)
    return G.element_order(g)


def conjugate(G: Group, g, h):
    """h g h^-1."""
    return G.mul(h, G.mul(g, G.inv(h)))


def generated_subgroup(G: Group, gens: Iterable, cap: int = DEFAULT_CLOSURE_CAP) -> frozenset:
    """BFS closure of ``gens`` under multiplication.

    Raises CapacityExceeded once the closure grows past ``cap`` (an
    explicit overflow signal, never a silent truncation).
    """
    gens = list(gens)
    seen = {G.identity}
    queue = deque([G.identity])
    mul = G.mul
    while queue:
        x = queue.popleft()
        for s in gens:
            y = mul(x, s)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapacityExceeded("subgroup closure", cap)
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def generates(G: Group, a, c, cap: int = DEFAULT_CLOSURE_CAP) -> bool:
    """True iff <a, c> = G.

    Permutation contexts use a stabilizer chain; other backends compare
    a closure against the known order.  When the order is not reachable
    within ``cap`` an UndecidedError is raised (never a wrong boolean).
    """
    G.check_element(a)
    G.check_element(c)
    strategy = getattr(G, "generates_pair", None)
    if strategy is not None:
        return strategy(a, c)
    if G.order > cap:
        raise UndecidedError(
            f"cannot decide generation: |G| = {G.order} exceeds closure cap {cap}"
        )
    closure = generated_subgroup(G, [a, c], cap=cap)
    return len(closure) == G.order


def conjugacy_class(G: Group, g, cap: int = DEFAULT_CLASS_CAP) -> frozenset:
    """Orbit of g under conjugation by the context generators (BFS)."""
    G.check_element(g)
    gens = [(h, G.inv(h)) for h in G.generators]
    seen = {g}
    queue = deque([g])
    mul = G.mul
    while queue:
        x = queue.popleft()
        for h, hinv in gens:
            y = mul(h, mul(x, hinv))
            if y not in seen:
                if len(seen) >= cap:
                    raise CapacityExceeded("conjugacy class", cap)
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def iter_coset(G: Group, rep, subgroup_elements: Iterable) -> Iterator:
    for h in subgroup_elements:
        yield G.mul(rep, h)
