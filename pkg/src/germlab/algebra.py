"""The finite-dimensional convolution *-algebra of a finite groupoid.

Functions on arrows convolve by summing over factorizations; the involution
conjugates values along inverses.  The norm is the largest operator norm of
the blocks of the regular representation, one block per unit acting on the
functions supported on that unit's source fiber.  In finite dimensions the
full and reduced algebras coincide, so this single norm realizes both.

Tolerances: identities that are pure arithmetic are checked to 1e-12;
norm comparisons, which pass through a dense spectral computation, to 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import EmbeddedSubgroupoid
from .errors import GroupoidMismatch, HypothesisFailed, StructureError
from .groupoids import (
    FiniteGroupoid,
    is_group_bundle,
    subgroupoid_properties,
)

EXACT_TOL = 1e-12
NORM_TOL = 1e-9


@dataclass
class GroupoidFunction:
    """A complex-valued function on the arrows of a fixed groupoid."""

    groupoid: FiniteGroupoid
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.complex128)
        if self.values.shape != (self.groupoid.n_arrows,):
            raise StructureError("one value per arrow required")

    def close_to(self, other: "GroupoidFunction", tol: float = EXACT_TOL) -> bool:
        _same_groupoid(self, other)
        return bool(np.max(np.abs(self.values - other.values), initial=0.0) <= tol)


def _same_groupoid(f: GroupoidFunction, g: GroupoidFunction) -> None:
    if f.groupoid is not g.groupoid:
        raise GroupoidMismatch("functions live on different groupoids")


def delta(G: FiniteGroupoid, arrow: int) -> GroupoidFunction:
    v = np.zeros(G.n_arrows, dtype=np.complex128)
    v[arrow] = 1.0
    return GroupoidFunction(G, v)


def convolve(f: GroupoidFunction, g: GroupoidFunction) -> GroupoidFunction:
    """(f g)(c) sums f(a) g(b) over the factorizations c = a b."""
    _same_groupoid(f, g)
    G = f.groupoid
    out = np.zeros(G.n_arrows, dtype=np.complex128)
    for (a, b), c in G.comp.items():
        out[c] += f.values[a] * g.values[b]
    return GroupoidFunction(G, out)


def involution(f: GroupoidFunction) -> GroupoidFunction:
    G = f.groupoid
    out = np.array([np.conj(f.values[G.inv[a]]) for a in G.arrows()])
    return GroupoidFunction(G, out)


@dataclass
class RegularRepresentation:
    """Per unit, the matrix of convolution acting on that unit's source fiber."""

    groupoid: FiniteGroupoid
    fibers: tuple[tuple[int, ...], ...]     # one arrow tuple per unit
    blocks: tuple[np.ndarray, ...]


def regular_representation(G: FiniteGroupoid, f: GroupoidFunction
                           ) -> RegularRepresentation:
    if f.groupoid is not G:
        raise GroupoidMismatch("function lives on a different groupoid")
    fibers = []
    blocks = []
    for u in G.units:
        fiber = G.d_fiber(u)
        m = np.zeros((len(fiber), len(fiber)), dtype=np.complex128)
        for col, b in enumerate(fiber):
            for row, a in enumerate(fiber):
                # a b^-1 is always composable inside a source fiber
                m[row, col] = f.values[G.comp[(a, G.inv[b])]]
        fibers.append(fiber)
        blocks.append(m)
    return RegularRepresentation(G, tuple(fibers), tuple(blocks))


def spectral_norm(m: np.ndarray) -> float:
    """Largest singular value by a dense decomposition (exact to machine precision)."""
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False)[0])


def reduced_norm(G: FiniteGroupoid, f: GroupoidFunction) -> float:
    rep = regular_representation(G, f)
    return max((spectral_norm(b) for b in rep.blocks), default=0.0)


def _check_bundle_hypotheses(emb: EmbeddedSubgroupoid) -> None:
    props = subgroupoid_properties(emb.parent, emb.arrows)
    for name, ok in (("subgroupoid", props.is_subgroupoid), ("open", props.open),
                     ("wide", props.wide), ("normal", props.normal)):
        if not ok:
            raise HypothesisFailed(name)
    if not is_group_bundle(emb.groupoid):
        raise HypothesisFailed("group bundle")


def embed(emb: EmbeddedSubgroupoid, f: GroupoidFunction) -> GroupoidFunction:
    """Extend a function on an open wide normal group bundle by zero."""
    _check_bundle_hypotheses(emb)
    if f.groupoid is not emb.groupoid:
        raise GroupoidMismatch("function must live on the subgroupoid")
    out = np.zeros(emb.parent.n_arrows, dtype=np.complex128)
    for sub_arrow, parent_arrow in enumerate(emb.to_parent):
        out[parent_arrow] = f.values[sub_arrow]
    return GroupoidFunction(emb.parent, out)


def conditional_expectation(emb: EmbeddedSubgroupoid, f: GroupoidFunction
                            ) -> GroupoidFunction:
    """Restrict a function on the parent to the (closed) subgroupoid."""
    _check_bundle_hypotheses(emb)
    from .groupoids import is_closed

    if not is_closed(emb.parent, emb.arrows):
        raise HypothesisFailed("closed")
    if f.groupoid is not emb.parent:
        raise GroupoidMismatch("function must live on the parent groupoid")
    out = np.array([f.values[parent_arrow] for parent_arrow in emb.to_parent])
    return GroupoidFunction(emb.groupoid, out)


def random_function(G: FiniteGroupoid, rng: np.random.Generator,
                    *, integral: bool = False) -> GroupoidFunction:
    if integral:
        v = rng.integers(-3, 4, size=G.n_arrows).astype(np.complex128)
    else:
        v = rng.standard_normal(G.n_arrows) + 1j * rng.standard_normal(G.n_arrows)
    return GroupoidFunction(G, v)
