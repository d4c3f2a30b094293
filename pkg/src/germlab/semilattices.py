"""Finite meet semilattices, their filter spectra, and derived semigroups.

Filters are frozensets of semilattice indices, always keyed to the
semilattice's own index space rather than a parent semigroup's.  Every
filter of a finite semilattice is principal; the exhaustive enumeration and
the principal-filter shortcut are cross-checked in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations

import numpy as np

from .errors import SizeBudgetExceeded, StructureError, ZeroRequired
from .semigroups import InverseSemigroup, validate_inverse_semigroup

EXHAUSTIVE_FILTER_CAP = 20
MUNN_ELEMENT_CAP = 512
SYMMETRIC_DEFAULT_CAP = 4


class Semilattice:
    """A finite meet semilattice given by its meet table.

    ``zero`` marks the index that filters must avoid: it is the zero of the
    semigroup the semilattice came from, and is None when that semigroup had
    no zero (then even the bottom element generates a filter).
    """

    def __init__(self, meet: np.ndarray, zero: int | None, labels: tuple[str, ...],
                 parent_index: tuple[int, ...] | None = None):
        self.meet = meet
        self.zero = zero
        self.labels = labels
        self.parent_index = parent_index

    @property
    def size(self) -> int:
        return self.meet.shape[0]

    def wedge(self, e: int, f: int) -> int:
        return int(self.meet[e, f])

    def leq(self, e: int, f: int) -> bool:
        return int(self.meet[e, f]) == e

    def label(self, e: int) -> str:
        return self.labels[e]

    @cached_property
    def bottom(self) -> int:
        b = 0
        for e in range(self.size):
            b = self.wedge(b, e)
        return b

    def __repr__(self) -> str:
        return f"Semilattice(size={self.size}, zero={self.zero})"


def validate_semilattice(meet, zero="detect", labels=None) -> Semilattice:
    """Check associativity, commutativity and idempotency of a meet table.

    ``zero="detect"`` treats the semilattice as its own parent semigroup, so
    the bottom element is its zero.  Pass ``zero=None`` for the semilattice of
    a zero-free semigroup.
    """
    meet = np.asarray(meet, dtype=np.int64)
    if meet.ndim != 2 or meet.shape[0] != meet.shape[1]:
        raise StructureError("meet table must be square")
    n = meet.shape[0]
    if n == 0:
        raise StructureError("empty semilattice")
    if meet.min() < 0 or meet.max() >= n:
        raise StructureError("meet entries out of range")
    if not (meet == meet.T).all():
        raise StructureError("meet is not commutative")
    if any(meet[e, e] != e for e in range(n)):
        raise StructureError("meet is not idempotent")
    for i in range(n):
        if not (meet[meet[i, :], :] == meet[i, meet]).all():
            raise StructureError("meet is not associative")
    if labels is None:
        labels = tuple(f"e{i}" for i in range(n))
    L = Semilattice(meet, None, tuple(labels))
    if zero == "detect":
        L.zero = L.bottom
    elif zero is None or isinstance(zero, int):
        L.zero = zero
    else:
        raise StructureError("zero must be 'detect', None, or an index")
    return L


def semilattice_of(S: InverseSemigroup) -> Semilattice:
    """Restrict the product table to the idempotents, recording the index map."""
    idems = sorted(S.idempotent_set)
    back = {e: i for i, e in enumerate(idems)}
    n = len(idems)
    meet = np.zeros((n, n), dtype=np.int64)
    for i, e in enumerate(idems):
        for j, f in enumerate(idems):
            meet[i, j] = back[S.mul(e, f)]
    zero = back[S.zero] if S.zero is not None else None
    labels = tuple(S.label(e) for e in idems)
    L = validate_semilattice(meet, zero=None, labels=labels)
    L.zero = zero
    L.parent_index = tuple(idems)
    return L


Filter = frozenset  # filters are frozensets of semilattice indices


def is_filter(E: Semilattice, members: frozenset[int]) -> bool:
    """Nonempty, meet-closed, upward closed, and avoiding the zero."""
    if not members:
        return False
    if E.zero is not None and E.zero in members:
        return False
    for e in members:
        for f in members:
            if E.wedge(e, f) not in members:
                return False
        for f in range(E.size):
            if E.leq(e, f) and f not in members:
                return False
    return True


def principal_filter(E: Semilattice, e: int) -> frozenset[int]:
    return frozenset(f for f in range(E.size) if E.leq(e, f))


def filter_generator(E: Semilattice, F: frozenset[int]) -> int:
    """The least element of a (necessarily principal) finite filter."""
    g = None
    for e in F:
        g = e if g is None else E.wedge(g, e)
    if g not in F:
        raise StructureError("filter is not meet-closed")
    return g


def _canonical_sort(filters) -> list[frozenset[int]]:
    return sorted(filters, key=lambda F: tuple(sorted(F)))


def all_filters(E: Semilattice) -> list[frozenset[int]]:
    """Every filter, canonically ordered.

    Small semilattices are enumerated subset-by-subset; larger ones use the
    principal-filter shortcut (all finite filters are principal).
    """
    principal = {principal_filter(E, e) for e in range(E.size) if e != E.zero}
    if E.size <= EXHAUSTIVE_FILTER_CAP:
        found = set()
        for size in range(1, E.size + 1):
            for sub in combinations(range(E.size), size):
                cand = frozenset(sub)
                if is_filter(E, cand):
                    found.add(cand)
        if found != principal:
            raise StructureError("filter enumeration disagrees with principal filters")
        return _canonical_sort(found)
    return _canonical_sort(principal)


def ultrafilters(E: Semilattice) -> list[frozenset[int]]:
    """Maximal filters; for a finite semilattice, the filters of its atoms."""
    filters = all_filters(E)
    maximal = [F for F in filters
               if not any(F < G for G in filters)]
    return _canonical_sort(maximal)


def tight_spectrum(E: Semilattice) -> list[frozenset[int]]:
    """Closure of the ultrafilters; discrete and finite here, so equal to them."""
    return ultrafilters(E)


@dataclass(frozen=True)
class SpectrumBasisSet:
    """The set of filters containing `include` and avoiding every `exclude`."""

    include: int
    exclude: tuple[int, ...]

    def members(self, filters) -> frozenset[int]:
        return frozenset(i for i, F in enumerate(filters)
                         if self.include in F and not any(f in F for f in self.exclude))

    def render(self, E: Semilattice) -> str:
        base = f"N^{E.label(self.include)}"
        if self.exclude:
            return base + "_{" + ",".join(E.label(f) for f in self.exclude) + "}"
        return base


def isolating_basis_set(E: Semilattice, F: frozenset[int]) -> SpectrumBasisSet:
    """A basis set whose only member is the principal filter F."""
    gen = filter_generator(E, F)
    outside = [f for f in range(E.size) if f not in F]
    maximal = tuple(sorted(f for f in outside
                           if not any(g != f and E.leq(f, g) for g in outside)))
    return SpectrumBasisSet(gen, maximal)


def spectrum_basis(E: Semilattice, filters) -> list[tuple[str, frozenset[int]]]:
    """Labeled open basis of the (discrete) filter space.

    Contains the domains of the idempotents together with one isolating set
    per point, so interior computations driven by this catalog agree with the
    discrete topology while staying in basis-set form.
    """
    catalog: list[tuple[str, frozenset[int]]] = []
    seen = set()
    for e in range(E.size):
        if e == E.zero:
            continue
        n = SpectrumBasisSet(e, ())
        members = n.members(filters)
        if members and members not in seen:
            catalog.append((n.render(E), members))
            seen.add(members)
    for F in filters:
        n = isolating_basis_set(E, F)
        members = n.members(filters)
        if members not in seen:
            catalog.append((n.render(E), members))
            seen.add(members)
    return catalog


def semilattice_isomorphic(A: Semilattice, B: Semilattice) -> tuple[int, ...] | None:
    """An order isomorphism between two finite semilattices, or None.

    Order isomorphisms of meet semilattices automatically respect meets, so
    backtracking over order-consistent assignments suffices.
    """
    if A.size != B.size:
        return None

    def profile(L: Semilattice, x: int):
        return (sum(L.leq(y, x) for y in range(L.size)),
                sum(L.leq(x, y) for y in range(L.size)))

    order = sorted(range(A.size), key=lambda x: (profile(A, x), x))
    mapping: list[int | None] = [None] * A.size
    used = [False] * B.size

    def backtrack(i: int) -> bool:
        if i == A.size:
            return True
        x = order[i]
        for y in range(B.size):
            if used[y] or profile(A, x) != profile(B, y):
                continue
            if any(A.leq(x, x2) != B.leq(y, mapping[x2])
                   or A.leq(x2, x) != B.leq(mapping[x2], y)
                   for x2 in order[:i]):
                continue
            mapping[x] = y
            used[y] = True
            if backtrack(i + 1):
                return True
            mapping[x] = None
            used[y] = False
        return False

    if not backtrack(0):
        return None
    result = tuple(mapping)  # type: ignore[arg-type]
    for x in range(A.size):
        for y in range(A.size):
            if result[A.wedge(x, y)] != B.wedge(result[x], result[y]):
                raise StructureError("order isomorphism failed meet cross-check")
    return result


def is_zero_disjunctive(E: Semilattice) -> bool:
    """Whether every strict pair 0 < e < f admits e' < f with e.e' = 0."""
    if E.zero is None:
        raise ZeroRequired("0-disjunctivity needs a zero")
    z = E.zero
    for f in range(E.size):
        for e in range(E.size):
            if e in (z, f) or not E.leq(e, f):
                continue
            if not any(ep not in (z, f) and E.leq(ep, f) and E.wedge(e, ep) == z
                       for ep in range(E.size)):
                return False
    return True


def _ideal(E: Semilattice, e: int) -> tuple[int, ...]:
    return tuple(x for x in range(E.size) if E.leq(x, e))


def _order_isos(E: Semilattice, dom: tuple[int, ...], img: tuple[int, ...]):
    """All order isomorphisms between two principal ideals, by backtracking."""
    if len(dom) != len(img):
        return
    assignment: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int):
        if i == len(dom):
            yield dict(assignment)
            return
        x = dom[i]
        for y in img:
            if y in used:
                continue
            ok = True
            for x2, y2 in assignment.items():
                if E.leq(x, x2) != E.leq(y, y2) or E.leq(x2, x) != E.leq(y2, y):
                    ok = False
                    break
            if ok:
                assignment[x] = y
                used.add(y)
                yield from extend(i + 1)
                del assignment[x]
                used.discard(y)

    yield from extend(0)


def munn_semigroup(E: Semilattice, *, max_size: int = MUNN_ELEMENT_CAP) -> InverseSemigroup:
    """All isomorphisms between principal order ideals, composed as partial maps.

    The result is validated as an inverse semigroup; fundamentality is a
    theorem about it and is asserted by the verification suites rather than
    recomputed here.
    """
    maps: list[dict[int, int]] = []
    seen = set()
    for e in range(E.size):
        dom = _ideal(E, e)
        for f in range(E.size):
            img = _ideal(E, f)
            for iso in _order_isos(E, dom, img):
                key = tuple(sorted(iso.items()))
                if key not in seen:
                    seen.add(key)
                    maps.append(iso)
            if len(maps) > max_size:
                raise SizeBudgetExceeded(f"Munn semigroup exceeds {max_size} elements")
    maps.sort(key=lambda m: tuple(sorted(m.items())))
    index = {tuple(sorted(m.items())): i for i, m in enumerate(maps)}
    n = len(maps)
    table = np.zeros((n, n), dtype=np.int64)
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            comp = {x: f[g[x]] for x in g if g[x] in f}
            table[i, j] = index[tuple(sorted(comp.items()))]
    labels = tuple(_munn_label(E, m) for m in maps)
    T = validate_inverse_semigroup(table, labels)
    from .congruences import is_fundamental

    if not is_fundamental(T):
        raise StructureError("Munn semigroup failed its fundamentality postcondition")
    return T


def _munn_label(E: Semilattice, m: dict[int, int]) -> str:
    if not m:
        return "[]"
    if all(x == y for x, y in m.items()):
        top = max(m, key=lambda x: sum(E.leq(y, x) for y in m))
        return f"id|{E.label(top)}"
    return "[" + ",".join(f"{E.label(x)}>{E.label(y)}"
                          for x, y in sorted(m.items())) + "]"


def symmetric_inverse_monoid(n: int, *, max_points: int = SYMMETRIC_DEFAULT_CAP
                             ) -> InverseSemigroup:
    """All partial bijections of an n-point set under composition."""
    if n < 0 or n > max_points:
        raise SizeBudgetExceeded(f"symmetric inverse monoid bound is n <= {max_points}")
    maps: list[dict[int, int]] = []
    for k in range(n + 1):
        for dom in combinations(range(n), k):
            for img in permutations(range(n), k):
                maps.append(dict(zip(dom, img)))
    maps.sort(key=lambda m: (len(m), tuple(sorted(m.items()))))
    index = {tuple(sorted(m.items())): i for i, m in enumerate(maps)}
    size = len(maps)
    table = np.zeros((size, size), dtype=np.int64)
    for i, f in enumerate(maps):
        for j, g in enumerate(maps):
            comp = {x: f[g[x]] for x in g if g[x] in f}
            table[i, j] = index[tuple(sorted(comp.items()))]
    labels = tuple("{" + ",".join(f"{x}>{y}" for x, y in sorted(m.items())) + "}"
                   for m in maps)
    return validate_inverse_semigroup(table, labels)
