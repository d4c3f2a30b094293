"""Finite inverse semigroups as multiplication tables.

Elements are dense indices 0..n-1.  The multiplication table is the whole
structure; inverses, idempotents, the natural partial order, Green's H and
the centralizer of the idempotents are all derived from it.
"""

from __future__ import annotations

from functools import cached_property
from itertools import product

import numpy as np

from .errors import NoInverse, NonUniqueInverse, NotAssociative, StructureError, ZeroRequired

# Associativity validation is O(n^3); beyond this we refuse rather than stall.
ASSOCIATIVITY_CAP = 512


class InverseSemigroup:
    """A validated finite inverse semigroup.

    Instances are immutable in practice: no method mutates state, so they can
    be shared freely across threads.  Use :func:`validate_inverse_semigroup`
    to build one from a raw table.
    """

    def __init__(self, table: np.ndarray, inv: tuple[int, ...], zero: int | None,
                 labels: tuple[str, ...]):
        self.table = table
        self.inv = inv
        self.zero = zero
        self.labels = labels

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def star(self, a: int) -> int:
        return self.inv[a]

    def elements(self) -> range:
        return range(self.size)

    def label(self, a: int) -> str:
        return self.labels[a]

    def __repr__(self) -> str:
        return f"InverseSemigroup(size={self.size}, zero={self.zero})"

    @cached_property
    def idempotent_set(self) -> frozenset[int]:
        return frozenset(e for e in self.elements() if self.mul(e, e) == e)

    @cached_property
    def leq(self) -> np.ndarray:
        """Boolean matrix of the natural partial order: leq[s,t] iff s <= t."""
        n = self.size
        m = np.zeros((n, n), dtype=bool)
        idems = sorted(self.idempotent_set)
        for t in range(n):
            for e in idems:
                m[self.mul(t, e), t] = True
        return m

    @cached_property
    def h_partition(self) -> tuple[tuple[int, ...], ...]:
        keys: dict[tuple[int, int], list[int]] = {}
        for s in self.elements():
            k = (self.mul(self.inv[s], s), self.mul(s, self.inv[s]))
            keys.setdefault(k, []).append(s)
        blocks = sorted(tuple(b) for b in keys.values())
        return tuple(blocks)


def _detect_zero(table: np.ndarray) -> int | None:
    n = table.shape[0]
    if n == 1:
        return None  # the trivial semigroup is a group, not a zero semigroup
    for z in range(n):
        if (table[z, :] == z).all() and (table[:, z] == z).all():
            return z
    return None


def check_associativity(table: np.ndarray) -> None:
    """Raise NotAssociative with a witness triple on the first failure."""
    n = table.shape[0]
    if n > ASSOCIATIVITY_CAP:
        raise StructureError(f"table too large to validate (n={n} > {ASSOCIATIVITY_CAP})")
    for i in range(n):
        left = table[table[i, :], :]      # left[j,k] = (ij)k
        right = table[i, table]           # right[j,k] = i(jk)
        if not (left == right).all():
            j, k = np.argwhere(left != right)[0]
            raise NotAssociative((i, int(j), int(k)))


def validate_inverse_semigroup(table, labels=None, *, skip_associativity: bool = False
                               ) -> InverseSemigroup:
    """Validate a raw multiplication table and derive the inverse structure.

    The inverse of each element is found by exhaustive search and must be
    unique; commuting idempotents are cross-checked.  A zero is detected
    automatically, never declared.  ``skip_associativity`` is for tables this
    package generated itself.
    """
    table = np.asarray(table, dtype=np.int64)
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise StructureError("table must be square")
    n = table.shape[0]
    if n == 0:
        raise StructureError("empty semigroup")
    if table.min() < 0 or table.max() >= n:
        raise StructureError("table entries out of range")
    if not skip_associativity:
        check_associativity(table)

    inv = []
    for s in range(n):
        witnesses = [t for t in range(n)
                     if table[table[s, t], s] == s and table[table[t, s], t] == t]
        if not witnesses:
            raise NoInverse(s)
        if len(witnesses) > 1:
            raise NonUniqueInverse(s, tuple(witnesses))
        inv.append(witnesses[0])

    idems = [e for e in range(n) if table[e, e] == e]
    for e, f in product(idems, repeat=2):
        if table[e, f] != table[f, e]:
            # cannot happen once inverses are unique; kept as a cross-check
            raise StructureError(f"idempotents {e},{f} do not commute")

    if labels is None:
        labels = tuple(f"s{i}" for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise StructureError("labels length does not match table")

    return InverseSemigroup(table, tuple(inv), _detect_zero(table), labels)


def idempotents(S: InverseSemigroup) -> frozenset[int]:
    return S.idempotent_set


def natural_leq(S: InverseSemigroup, s: int, t: int) -> bool:
    """True iff s = te for some idempotent e."""
    return bool(S.leq[s, t])


def lower_set(S: InverseSemigroup, s: int) -> frozenset[int]:
    return frozenset(int(x) for x in np.nonzero(S.leq[:, s])[0])


def lower_intersection_generators(S: InverseSemigroup, s: int, t: int) -> frozenset[int]:
    """Maximal elements of the common lower set of s and t.

    Finite input always yields a finite generating set, so every finite
    semigroup passes the corresponding Hausdorff-ness criterion.
    """
    common = lower_set(S, s) & lower_set(S, t)
    return frozenset(x for x in common
                     if not any(y != x and S.leq[x, y] for y in common))


def h_classes(S: InverseSemigroup) -> tuple[tuple[int, ...], ...]:
    """Partition of S by Green's H relation (s*s and ss* both agree)."""
    return S.h_partition


def h_class_of(S: InverseSemigroup, s: int) -> tuple[int, ...]:
    for block in S.h_partition:
        if s in block:
            return block
    raise StructureError(f"element {s} out of range")


def is_clifford(S: InverseSemigroup) -> bool:
    return all(S.mul(S.inv[s], s) == S.mul(s, S.inv[s]) for s in S.elements())


def is_e_unitary(S: InverseSemigroup) -> bool:
    """No idempotent sits below a non-idempotent in the natural order."""
    idems = S.idempotent_set
    for e in idems:
        for s in S.elements():
            if s not in idems and S.leq[e, s]:
                return False
    return True


def is_zero_e_unitary(S: InverseSemigroup) -> bool:
    """Variant of E-unitarity quantifying over nonzero idempotents only."""
    if S.zero is None:
        raise ZeroRequired("0-E-unitary needs a zero element")
    idems = S.idempotent_set
    for e in idems:
        if e == S.zero:
            continue
        for s in S.elements():
            if s not in idems and S.leq[e, s]:
                return False
    return True


def centralizer(S: InverseSemigroup) -> frozenset[int]:
    """Elements commuting with every idempotent; a Clifford subsemigroup."""
    idems = sorted(S.idempotent_set)
    members = frozenset(s for s in S.elements()
                        if all(S.mul(s, e) == S.mul(e, s) for e in idems))
    for a in members:
        if S.inv[a] not in members:
            raise StructureError("centralizer not closed under inverses")
        for b in members:
            if S.mul(a, b) not in members:
                raise StructureError("centralizer not closed under products")
    return members


def subsemigroup_closed(S: InverseSemigroup, subset: frozenset[int]) -> bool:
    return all(S.mul(a, b) in subset for a in subset for b in subset)


def is_normal_subsemigroup(S: InverseSemigroup, subset: frozenset[int]) -> bool:
    """Contains all idempotents, inverse-closed, and stable under conjugation."""
    if not S.idempotent_set <= subset:
        return False
    if any(S.inv[a] not in subset for a in subset):
        return False
    if not subsemigroup_closed(S, subset):
        return False
    return all(S.mul(S.mul(S.inv[s], z), s) in subset
               for s in S.elements() for z in subset)


def direct_product(A: InverseSemigroup, B: InverseSemigroup) -> InverseSemigroup:
    """Direct product with pairs ordered (a, b) -> a * B.size + b."""
    na, nb = A.size, B.size
    table = np.empty((na * nb, na * nb), dtype=np.int64)
    for a1, b1 in product(range(na), range(nb)):
        for a2, b2 in product(range(na), range(nb)):
            table[a1 * nb + b1, a2 * nb + b2] = A.mul(a1, a2) * nb + B.mul(b1, b2)
    labels = tuple(f"({A.label(a)},{B.label(b)})"
                   for a in range(na) for b in range(nb))
    return validate_inverse_semigroup(table, labels, skip_associativity=True)
