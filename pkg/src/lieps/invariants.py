"""Invariant bivectors and fixed subspaces under the isotropy action.

A bivector on the quotient g/h lives in wedge-square coordinates indexed by
the lexicographic pairs (i, j), i < j.  Invariance under the connected part
of the isotropy group is the kernel condition of the derivation action of
each ad-bar_u; invariance under explicit discrete generators is the fixed
condition of the wedge-square action of each induced matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import Mat, Subspace, kernel, stack, vec
from .liecore import (
    IsotropyModel,
    induced_ad_bar,
    induced_map,
    wedge2_action,
    wedge2_derivation,
    wedge2_space,
)


def bivector_matrix_from_coords(dim, coords) -> Mat:
    """Skew matrix of the bivector with the given wedge coordinates.

    The component convention: for r = e_i ^ e_j the matrix has +1 in row j,
    column i, so that the sharp map is plain matrix-vector multiplication
    and <beta, r_# alpha> = r(alpha, beta).
    """
    pairs = wedge2_space(dim)
    coords = vec(coords)
    assert len(coords) == len(pairs)
    m = [[Fraction(0)] * dim for _ in range(dim)]
    for (i, j), c in zip(pairs, coords):
        m[j][i] += c
        m[i][j] -= c
    return Mat(m)


def bivector_coords_from_matrix(r_mat: Mat) -> tuple:
    """Wedge coordinates of a skew matrix; inverse of the builder above."""
    assert r_mat.is_skew(), "bivector matrix must be skew"
    return tuple(r_mat[j][i] for i, j in wedge2_space(r_mat.rows))


@dataclass(frozen=True)
class InvariantBivectorSpace:
    iso: IsotropyModel
    basis: Subspace  # subspace of wedge-square coordinates on g/h
    source: dict  # which constraint families were imposed

    @property
    def dim(self) -> int:
        return self.basis.dim


def invariant_bivectors(iso: IsotropyModel) -> InvariantBivectorSpace:
    """Bivectors on g/h fixed by the full declared isotropy action.

    Stacks one derivation block per h-basis element (connected part) and one
    fixed-point block per discrete generator, then takes the common kernel.
    """
    n = iso.quotient_dim
    nwedge = len(wedge2_space(n))
    blocks = []
    for u in iso.h_basis.basis:
        blocks.append(wedge2_derivation(induced_ad_bar(iso.L, iso, u)))
    eye = Mat.identity(nwedge)
    for A in iso.discrete_generators:
        blocks.append(wedge2_action(induced_map(iso, A)) - eye)
    if not blocks or nwedge == 0:
        basis = Subspace.full(nwedge)
    else:
        basis = kernel(stack(blocks))
    return InvariantBivectorSpace(
        iso=iso,
        basis=basis,
        source={
            "infinitesimal": iso.h_basis.dim > 0,
            "discrete": len(iso.discrete_generators) > 0,
        },
    )


def fixed_vectors(ambient_dim, infinitesimal=(), discrete=()) -> Subspace:
    """Common kernel of the infinitesimal operators and A - id for each A."""
    blocks = [M if isinstance(M, Mat) else Mat(M) for M in infinitesimal]
    eye = Mat.identity(ambient_dim)
    blocks += [(A if isinstance(A, Mat) else Mat(A)) - eye for A in discrete]
    if not blocks:
        return Subspace.full(ambient_dim)
    return kernel(stack(blocks))


def fixed_covectors(ambient_dim, infinitesimal=(), discrete=()) -> Subspace:
    """Fixed covectors: the same computation on the transposed operators."""
    return fixed_vectors(
        ambient_dim,
        [(M if isinstance(M, Mat) else Mat(M)).T for M in infinitesimal],
        [(A if isinstance(A, Mat) else Mat(A)).T for A in discrete],
    )


def fixed_quotient_vectors(iso: IsotropyModel) -> Subspace:
    """Vectors of g/h fixed by the declared isotropy action."""
    return fixed_vectors(
        iso.quotient_dim,
        [induced_ad_bar(iso.L, iso, u) for u in iso.h_basis.basis],
        [induced_map(iso, A) for A in iso.discrete_generators],
    )


def fixed_quotient_covectors(iso: IsotropyModel) -> Subspace:
    """Covectors of (g/h)* fixed by the isotropy action: the space (h deg)^H.

    In quotient coordinates a covector is fixed iff it kills every ad-bar_u
    image and is fixed by the transpose of each induced generator matrix.
    """
    return fixed_covectors(
        iso.quotient_dim,
        [induced_ad_bar(iso.L, iso, u) for u in iso.h_basis.basis],
        [induced_map(iso, A) for A in iso.discrete_generators],
    )
