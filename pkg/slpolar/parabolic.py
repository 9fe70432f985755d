"""Standard parabolic subalgebras of sl(n) and sampling inside them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
import logging
from typing import Callable
import zlib

import numpy as np

from .algebra import GElement, LieAlgebraA, nonzero_integers
from .const import RESAMPLE_CAP
from .exact import ZERO, RatMatrix, Subspace, kernel, span
from .exceptions import (
    CompositionMismatchError,
    ConfigError,
    DegenerateSamplingError,
    NotInParabolicError,
)
from .weyl import LeviComposition, Root, WeylElement, r_levi, r_prime_plus

_LOGGER = logging.getLogger(__name__)

LeviElement = GElement


@dataclass(frozen=True, eq=False)
class ParabolicData:
    """The standard parabolic p = l + p_u attached to a Levi composition.

    All subspaces live in the coordinates of g.
    """

    algebra: LieAlgebraA
    levi: LeviComposition
    p: Subspace
    l: Subspace  # noqa: E741
    pu: Subspace
    pminus: Subspace
    pminus_u: Subspace
    r_l: frozenset[Root]
    r_prime_plus: frozenset[Root]
    l_indices: tuple[int, ...]
    b_g: int
    b_l: int

    @cached_property
    def l_gram_inverse(self) -> RatMatrix:
        return self.algebra.restricted_gram_inverse(self.l_indices)

    @cached_property
    def roots(self) -> frozenset[Root]:
        return self.r_l | self.r_prime_plus


@lru_cache(maxsize=None)
def build_parabolic(g: LieAlgebraA, levi: LeviComposition) -> ParabolicData:
    if levi.n != g.n:
        raise CompositionMismatchError(f"composition {levi} does not sum to n = {g.n}")
    levi_roots = r_levi(levi)
    nil_roots = r_prime_plus(levi)
    l_indices = tuple(sorted([g.root_index[(r.i, r.j)] for r in levi_roots] + list(g.h_indices)))
    pu_indices = [g.root_index[(r.i, r.j)] for r in nil_roots]
    pminus_u_indices = [g.root_index[(r.j, r.i)] for r in nil_roots]
    levi_space = Subspace.coordinate(g.dim, l_indices)
    data = ParabolicData(
        algebra=g,
        levi=levi,
        p=Subspace.coordinate(g.dim, list(l_indices) + pu_indices),
        l=levi_space,
        pu=Subspace.coordinate(g.dim, pu_indices),
        pminus=Subspace.coordinate(g.dim, list(l_indices) + pminus_u_indices),
        pminus_u=Subspace.coordinate(g.dim, pminus_u_indices),
        r_l=levi_roots,
        r_prime_plus=nil_roots,
        l_indices=l_indices,
        b_g=len(g.b_indices),
        b_l=(levi_space & Subspace.coordinate(g.dim, g.b_indices)).rank,
    )
    _LOGGER.debug(
        "Built p_%s in sl(%s): dim p = %s, dim l = %s, b_l = %s",
        levi,
        g.n,
        data.p.rank,
        data.l.rank,
        data.b_l,
    )
    return data


def levi_part(p: ParabolicData, x: GElement) -> LeviElement:
    """Drop every coordinate outside l."""
    keep = set(p.l_indices)
    return GElement(tuple(c if k in keep else ZERO for k, c in enumerate(x.coords)))


def varpi(p: ParabolicData, x: GElement) -> LeviElement:
    """The projection p -> l along p_u."""
    if not p.p.contains(x):
        raise NotInParabolicError(f"{x} is not in p_{p.levi}")
    return levi_part(p, x)


def project_subspace(p: ParabolicData, space: Subspace) -> Subspace:
    """Image under the projection to l; ``space`` should lie in p."""
    return space.image(lambda v: levi_part(p, GElement(v)).coords, p.algebra.dim)


def levi_centralizer(p: ParabolicData, x: LeviElement) -> Subspace:
    """l^x, the centralizer of x inside the Levi factor, in g coordinates."""
    g = p.algebra
    ad = g.ad_matrix(x)
    restricted = RatMatrix.from_columns([ad.column(k) for k in p.l_indices], g.dim)
    vectors = []
    for coefficients in kernel(restricted).vectors():
        coords = [ZERO] * g.dim
        for k, c in zip(p.l_indices, coefficients):
            coords[k] = c
        vectors.append(coords)
    return span(vectors, g.dim)


def is_levi_regular(p: ParabolicData, x: LeviElement) -> bool:
    return levi_centralizer(p, x).rank == p.algebra.rank


def in_R_p(p: ParabolicData, x: GElement) -> bool:  # noqa: N802
    """Regular in g with a Levi component that is regular in l.

    Raises NotInParabolicError when x is not in p.
    """
    levi_x = varpi(p, x)
    return p.algebra.is_regular(x) and is_levi_regular(p, levi_x)


def in_R_prime_p(p: ParabolicData, x: GElement) -> bool:  # noqa: N802
    """In R_p, with a centralizer that meets the nilradical trivially."""
    levi_x = varpi(p, x)
    g = p.algebra
    centralizer = g.centralizer(x)
    return centralizer.rank == g.rank and is_levi_regular(p, levi_x) and (centralizer & p.pu).rank == 0


def trial_rng(seed: int, tag: str, trial: int) -> np.random.Generator:
    """Independent generator for one trial, stable across runs and processes."""
    return np.random.default_rng([seed, zlib.crc32(tag.encode("utf-8")), trial])


def sample_in(space: Subspace, rng: np.random.Generator, bound: int) -> GElement:
    """A random element of ``space`` with nonzero integer coefficients over its basis."""
    if bound < 1:
        raise ConfigError(f"bound must be at least 1, got {bound}")
    if space.rank == 0:
        raise DegenerateSamplingError("cannot sample from the zero subspace")
    coefficients = nonzero_integers(rng, bound, space.rank)
    coords = [ZERO] * space.ambient_dim
    for c, row in zip(coefficients, space.vectors()):
        coords = [a + c * b for a, b in zip(coords, row)]
    return GElement(tuple(coords))


def sample_pair_in(space: Subspace, rng: np.random.Generator, bound: int) -> tuple[GElement, GElement]:
    return sample_in(space, rng, bound), sample_in(space, rng, bound)


def sample_until(
    draw: Callable[[], GElement],
    accept: Callable[[GElement], bool],
    what: str = "sample",
) -> tuple[GElement, int]:
    """Redraw until ``accept`` holds; return the draw and the number of rejections."""
    for rejected in range(RESAMPLE_CAP):
        x = draw()
        if accept(x):
            return x, rejected
        _LOGGER.debug("Rejected %s draw %s", what, rejected + 1)
    raise DegenerateSamplingError(f"no acceptable {what} after {RESAMPLE_CAP} draws")


def sample_regular_diagonal(g: LieAlgebraA, rng: np.random.Generator, bound: int) -> GElement:
    """A diagonal element with distinct eigenvalues."""
    width = max(bound, g.n)
    values = rng.choice(np.arange(-width, width + 1), size=g.n, replace=False)
    total = sum(int(v) for v in values)
    return g.from_matrix(RatMatrix.diagonal([Fraction(int(v) * g.n - total, g.n) for v in values]))


def sample_regular_semisimple(p: ParabolicData, rng: np.random.Generator, bound: int) -> GElement:
    """A regular semisimple element of p in R'_p.

    A regular diagonal element is moved by unipotents exp(t ad E_ij) for
    roots (i, j) of p, so it stays in p and keeps its centralizer off p_u.
    """
    g = p.algebra
    x = sample_regular_diagonal(g, rng, bound)
    root_vectors = [g.basis_vector(g.root_index[(r.i, r.j)]) for r in sorted(p.roots, key=lambda r: (r.i, r.j))]
    picks = rng.integers(0, len(root_vectors), size=g.n)
    for pick, t in zip(picks, nonzero_integers(rng, bound, g.n)):
        x = g.conjugate_unipotent(x, root_vectors[int(pick)], t)
    return x


def translate(p: ParabolicData, w: WeylElement) -> Subspace:
    """w(p), spanned by h and the root vectors of w applied to the roots of p."""
    g = p.algebra
    indices = list(g.h_indices) + [g.root_index[(w(root.i), w(root.j))] for root in p.roots]
    return Subspace.coordinate(g.dim, indices)
