"""Equivalence relations and congruences on a finite inverse semigroup.

Covers the maximal idempotent-separating congruence (mu), the minimum group
congruence (sigma), kernels, quotients and split transversals for the
extension of the centralizer by the fundamental quotient.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .errors import NotACongruence, SearchBudgetExceeded, StructureError
from .semigroups import InverseSemigroup, centralizer, validate_inverse_semigroup

TRANSVERSAL_BUDGET = 10**6


@dataclass(frozen=True)
class Relation:
    """An equivalence relation stored as a canonical partition.

    Blocks are sorted tuples ordered by least element; `block_of` gives O(1)
    membership queries.
    """

    blocks: tuple[tuple[int, ...], ...]
    block_of: tuple[int, ...]

    @staticmethod
    def from_blocks(size: int, blocks) -> "Relation":
        canon = sorted(tuple(sorted(set(b))) for b in blocks if b)
        seen: list[int | None] = [None] * size
        for i, b in enumerate(canon):
            for x in b:
                if x < 0 or x >= size or seen[x] is not None:
                    raise StructureError("blocks must partition 0..size-1")
                seen[x] = i
        if any(v is None for v in seen):
            raise StructureError("blocks must cover 0..size-1")
        return Relation(tuple(canon), tuple(seen))  # type: ignore[arg-type]

    @staticmethod
    def identity(size: int) -> "Relation":
        return Relation.from_blocks(size, [(i,) for i in range(size)])

    @staticmethod
    def universal(size: int) -> "Relation":
        return Relation.from_blocks(size, [tuple(range(size))])

    def related(self, a: int, b: int) -> bool:
        return self.block_of[a] == self.block_of[b]

    @property
    def size(self) -> int:
        return len(self.block_of)

    def refines(self, other: "Relation") -> bool:
        """Every block of self sits inside a block of other."""
        return all(len({other.block_of[x] for x in b}) == 1 for b in self.blocks)


@dataclass(frozen=True)
class QuotientMap:
    source: InverseSemigroup
    target: InverseSemigroup
    projection: tuple[int, ...]


def is_congruence(S: InverseSemigroup, R: Relation) -> bool:
    if R.size != S.size:
        raise StructureError("relation size does not match semigroup")
    for block in R.blocks:
        a = block[0]
        for b in block[1:]:
            for c in S.elements():
                if not R.related(S.mul(c, a), S.mul(c, b)):
                    return False
                if not R.related(S.mul(a, c), S.mul(b, c)):
                    return False
    return True


def congruence_witness(S: InverseSemigroup, R: Relation):
    """A quadruple (a,b,c,d) with a~b, c~d but ac !~ bd, or None."""
    for block in R.blocks:
        a = block[0]
        for b in block[1:]:
            for cblock in R.blocks:
                c = cblock[0]
                for d in cblock[1:]:
                    if not R.related(S.mul(a, c), S.mul(b, d)):
                        return (a, b, c, d)
            for c in S.elements():
                if not R.related(S.mul(c, a), S.mul(c, b)):
                    return (c, c, a, b)
                if not R.related(S.mul(a, c), S.mul(b, c)):
                    return (a, b, c, c)
    return None


def h_relation(S: InverseSemigroup) -> Relation:
    return Relation.from_blocks(S.size, S.h_partition)


def mu_relation(S: InverseSemigroup) -> Relation:
    """Maximal idempotent-separating congruence: equal conjugation on idempotents."""
    idems = sorted(S.idempotent_set)
    keys: dict[tuple[int, ...], list[int]] = {}
    for s in S.elements():
        k = tuple(S.mul(S.mul(s, e), S.inv[s]) for e in idems)
        keys.setdefault(k, []).append(s)
    mu = Relation.from_blocks(S.size, keys.values())
    if not is_congruence(S, mu):
        raise StructureError("mu failed its congruence postcondition")
    if not is_idempotent_separating(S, mu):
        raise StructureError("mu failed idempotent separation")
    if not mu.refines(h_relation(S)):
        raise StructureError("mu is not contained in the H relation")
    return mu


def is_idempotent_separating(S: InverseSemigroup, R: Relation) -> bool:
    idems = S.idempotent_set
    return all(len([x for x in block if x in idems]) <= 1 for block in R.blocks)


def kernel_of(S: InverseSemigroup, R: Relation) -> frozenset[int]:
    """Union of blocks containing an idempotent."""
    idems = S.idempotent_set
    members = frozenset(x for block in R.blocks
                        if any(e in idems for e in block) for x in block)
    if is_congruence(S, R):
        via_pairs = frozenset(S.mul(s, S.inv[t])
                              for s in S.elements() for t in S.elements()
                              if R.related(s, t))
        if via_pairs != members:
            raise StructureError("kernel cross-check failed")
    return members


def quotient(S: InverseSemigroup, R: Relation) -> QuotientMap:
    proj = R.block_of
    k = len(R.blocks)
    table = -np.ones((k, k), dtype=np.int64)
    for a in S.elements():
        for b in S.elements():
            target = proj[S.mul(a, b)]
            if table[proj[a], proj[b]] == -1:
                table[proj[a], proj[b]] = target
            elif table[proj[a], proj[b]] != target:
                raise NotACongruence(congruence_witness(S, R))
    labels = tuple("{" + ",".join(S.label(x) for x in block) + "}" for block in R.blocks)
    T = validate_inverse_semigroup(table, labels)
    return QuotientMap(S, T, tuple(proj))


def munn_quotient(S: InverseSemigroup) -> QuotientMap:
    return quotient(S, mu_relation(S))


def is_fundamental(S: InverseSemigroup) -> bool:
    return mu_relation(S) == Relation.identity(S.size)


def is_cryptic(S: InverseSemigroup) -> bool:
    return mu_relation(S) == h_relation(S)


def sigma_relation(S: InverseSemigroup) -> Relation:
    """Minimum group congruence: s ~ t iff se = te for some idempotent e."""
    idems = sorted(S.idempotent_set)
    parent = list(range(S.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in S.elements():
        for t in range(s + 1, S.size):
            if any(S.mul(s, e) == S.mul(t, e) for e in idems):
                parent[find(s)] = find(t)
    groups: dict[int, list[int]] = {}
    for x in S.elements():
        groups.setdefault(find(x), []).append(x)
    return Relation.from_blocks(S.size, groups.values())


def sigma_and_group_image(S: InverseSemigroup) -> tuple[Relation, QuotientMap]:
    """The least congruence with group quotient, and the quotient itself."""
    sigma = sigma_relation(S)
    if not is_congruence(S, sigma):
        raise StructureError("sigma failed its congruence postcondition")
    q = quotient(S, sigma)
    T = q.target
    if len(T.idempotent_set) != 1:
        raise StructureError("sigma quotient is not a group")
    e = next(iter(T.idempotent_set))
    if any(T.mul(e, x) != x or T.mul(x, e) != x for x in T.elements()):
        raise StructureError("sigma quotient has no identity")
    return sigma, q


def generated_congruence(S: InverseSemigroup, pairs) -> Relation:
    """Smallest congruence relating every given pair (saturation by products)."""
    parent = list(range(S.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            return True
        return False

    for a, b in pairs:
        union(a, b)
    changed = True
    while changed:
        changed = False
        reps: dict[int, list[int]] = {}
        for x in S.elements():
            reps.setdefault(find(x), []).append(x)
        for block in reps.values():
            a = block[0]
            for b in block[1:]:
                for c in S.elements():
                    if union(S.mul(c, a), S.mul(c, b)):
                        changed = True
                    if union(S.mul(a, c), S.mul(b, c)):
                        changed = True
    groups: dict[int, list[int]] = {}
    for x in S.elements():
        groups.setdefault(find(x), []).append(x)
    return Relation.from_blocks(S.size, groups.values())


def random_idempotent_separating_congruences(S: InverseSemigroup, *, seed: int,
                                             attempts: int = 20) -> list[Relation]:
    """Seeded sample of idempotent-separating congruences (for maximality checks).

    Random pair seeds are saturated to congruences; non-separating results are
    discarded.  The congruence lattice is too large to enumerate.
    """
    rng = random.Random(seed)
    found = []
    for _ in range(attempts):
        pairs = [(rng.randrange(S.size), rng.randrange(S.size))
                 for _ in range(rng.randint(1, 2))]
        R = generated_congruence(S, pairs)
        if is_idempotent_separating(S, R):
            found.append(R)
    return found


def find_split_transversal(S: InverseSemigroup) -> tuple[int, ...] | None:
    """A multiplicative section of the projection onto S/mu, if one exists.

    Returns a tuple indexed by mu-classes: entry i is the chosen element of
    block i.  Idempotent blocks are forced to their unique idempotent; the
    rest is exhaustive backtracking.
    """
    mu = mu_relation(S)
    q = quotient(S, mu)
    proj = q.projection
    idems = S.idempotent_set
    choices: list[list[int]] = []
    for block in mu.blocks:
        block_idems = [x for x in block if x in idems]
        choices.append(block_idems if block_idems else list(block))

    budget = 1
    for c in choices:
        budget *= len(c)
        if budget > TRANSVERSAL_BUDGET:
            raise SearchBudgetExceeded(
                f"transversal search space exceeds {TRANSVERSAL_BUDGET}")

    k = len(mu.blocks)
    target = q.target
    pick: list[int | None] = [None] * k

    def consistent(i: int) -> bool:
        # check every triple constraint whose last undecided block is i:
        # i as a factor, and i as a product of two decided factors
        decided = [j for j in range(k) if pick[j] is not None]
        for j in decided:
            for a, b in ((i, j), (j, i)):
                p = target.mul(a, b)
                if pick[p] is not None and S.mul(pick[a], pick[b]) != pick[p]:
                    return False
        for a in decided:
            for b in decided:
                if target.mul(a, b) == i and S.mul(pick[a], pick[b]) != pick[i]:
                    return False
        return True

    def backtrack(i: int) -> bool:
        if i == k:
            return True
        for cand in choices[i]:
            pick[i] = cand
            if consistent(i) and backtrack(i + 1):
                return True
            pick[i] = None
        return False

    if not backtrack(0):
        return None
    r = tuple(pick)  # type: ignore[arg-type]
    for x in range(k):
        if proj[r[x]] != x:
            raise StructureError("transversal is not a section")
        for y in range(k):
            if S.mul(r[x], r[y]) != r[target.mul(x, y)]:
                raise StructureError("transversal is not multiplicative")
    return r


def kernel_of_mu_is_centralizer(S: InverseSemigroup) -> bool:
    return kernel_of(S, mu_relation(S)) == centralizer(S)
