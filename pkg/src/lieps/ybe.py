"""Bivectors, lifts, the bracket on the annihilator, and the Yang-Baxter tensor.

A bivector r on g/h is stored through its sharp matrix: <beta, r_# alpha> =
r(alpha, beta).  Any lift r-tilde on g with wedge2(q)(r-tilde) = r computes
the same obstruction tensor [[r,r]] on annihilator triples; its vanishing is
the invariant-Poisson condition, and bivectors passing it are r-matrices.

Sign convention: the bracket on h° is

    [eta, xi]_r = ad(xi^#)^T eta - ad(eta^#)^T xi

which is the unique orientation matching the cyclic Schouten oracle

    [[r,r]](eta, xi, eps) = -<eta,[xi^#,eps^#]> - <xi,[eps^#,eta^#]>
                            - <eps,[eta^#,xi^#]>

term by term; the oracle is the arbiter and the agreement is frozen in tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import JacobiFailure, NoSolution, NotAnRMatrix, NotInAnnihilator
from .exact import Mat, dot, vec, vsub
from .invariants import (
    bivector_coords_from_matrix,
    bivector_matrix_from_coords,
    fixed_quotient_covectors,
)
from .liecore import (
    IsotropyModel,
    LieAlgebra,
    ad_matrix,
    bracket,
    make_lie_algebra,
    validate,
)


@dataclass(frozen=True)
class Bivector:
    iso: IsotropyModel
    r_mat: Mat  # sharp map on quotient coordinates, skew

    def __post_init__(self):
        n = self.iso.quotient_dim
        assert self.r_mat.rows == n and self.r_mat.cols == n
        assert self.r_mat.is_skew(), "bivector matrix must be skew"

    @property
    def coords(self) -> tuple:
        return bivector_coords_from_matrix(self.r_mat)


def make_bivector(iso: IsotropyModel, coords) -> Bivector:
    return Bivector(iso, bivector_matrix_from_coords(iso.quotient_dim, coords))


@dataclass(frozen=True)
class Lift:
    bivector: Bivector
    rt_mat: Mat  # skew n x n on all of g

    def __post_init__(self):
        iso = self.bivector.iso
        assert self.rt_mat.is_skew(), "lift matrix must be skew"
        projected = iso.q_matrix @ self.rt_mat @ iso.q_matrix.T
        if projected != self.bivector.r_mat:
            raise ValueError("not a lift: q rt q^T differs from r")


def canonical_lift(r: Bivector) -> Lift:
    """The section-supported lift s r s^T; a lift because q s = id."""
    s = r.iso.s_matrix
    return Lift(r, s @ r.r_mat @ s.T)


def sharp(lift: Lift, eta) -> tuple:
    """eta^# with <xi, eta^#> = r-tilde(eta, xi), for any ambient covector."""
    return lift.rt_mat @ vec(eta)


def _require_ann(iso: IsotropyModel, eta, name):
    if not iso.ann_basis.contains(eta):
        raise NotInAnnihilator(f"{name} does not annihilate the isotropy subalgebra")


def hcirc_bracket(lift: Lift, eta, xi) -> tuple:
    """The bracket [eta, xi]_r on h°; the result annihilates h again."""
    iso = lift.bivector.iso
    eta = vec(eta)
    xi = vec(xi)
    _require_ann(iso, eta, "eta")
    _require_ann(iso, xi, "xi")
    ad_eta = ad_matrix(iso.L, sharp(lift, eta))
    ad_xi = ad_matrix(iso.L, sharp(lift, xi))
    return vsub(ad_xi.apply_T(eta), ad_eta.apply_T(xi))


@dataclass(frozen=True)
class YBTensor:
    """Dense obstruction tensor over the canonical h° basis eta_t = q^T eps_t."""

    values: tuple  # values[a][b][c]

    @property
    def dim(self) -> int:
        return len(self.values)

    def is_zero(self) -> bool:
        return all(x == 0 for plane in self.values for row in plane for x in row)

    def nonzero_entries(self) -> tuple:
        return tuple(
            ((a, b, c), self.values[a][b][c])
            for a in range(self.dim)
            for b in range(self.dim)
            for c in range(self.dim)
            if self.values[a][b][c] != 0
        )

    def __getitem__(self, abc):
        a, b, c = abc
        return self.values[a][b][c]


def _ann_basis_vectors(iso: IsotropyModel):
    # eta_t = q^T eps_t: the t-th row of q, the canonical basis of h°
    return [iso.q_matrix.row(t) for t in range(iso.quotient_dim)]


def yang_baxter_tensor(r: Bivector, lift: Lift = None) -> YBTensor:
    """[[r,r]](eta,xi,eps) = <eps, (hcirc(eta,xi))^# - [eta^#, xi^#]>.

    Computed over the canonical h° basis; the canonical lift is used unless
    one is supplied, and the result is lift-independent.
    """
    iso = r.iso
    if lift is None:
        lift = canonical_lift(r)
    etas = _ann_basis_vectors(iso)
    n = len(etas)
    xs = [sharp(lift, eta) for eta in etas]
    hc = {}
    for a in range(n):
        for b in range(n):
            hc[(a, b)] = sharp(lift, hcirc_bracket(lift, etas[a], etas[b]))
    br = {(a, b): bracket(iso.L, xs[a], xs[b]) for a in range(n) for b in range(n)}
    values = tuple(
        tuple(
            tuple(dot(etas[c], vsub(hc[(a, b)], br[(a, b)])) for c in range(n))
            for b in range(n)
        )
        for a in range(n)
    )
    return YBTensor(values)


def schouten_oracle(lift: Lift) -> YBTensor:
    """Cyclic-sum form of the same tensor; independent code path."""
    iso = lift.bivector.iso
    etas = _ann_basis_vectors(iso)
    n = len(etas)
    xs = [sharp(lift, eta) for eta in etas]
    br = {(a, b): bracket(iso.L, xs[a], xs[b]) for a in range(n) for b in range(n)}

    def entry(a, b, c):
        return -dot(etas[a], br[(b, c)]) - dot(etas[b], br[(c, a)]) - dot(etas[c], br[(a, b)])

    values = tuple(
        tuple(tuple(entry(a, b, c) for c in range(n)) for b in range(n)) for a in range(n)
    )
    return YBTensor(values)


def is_r_matrix(r: Bivector) -> bool:
    return yang_baxter_tensor(r).is_zero()


def quotient_hcirc(r: Bivector, alpha, beta, lift: Lift = None) -> tuple:
    """[alpha, beta]_r in quotient covector coordinates.

    Transports through the identification (g/h)* ~ h°: alpha -> q^T alpha,
    bracket upstairs, then back by s^T.
    """
    iso = r.iso
    if lift is None:
        lift = canonical_lift(r)
    eta = iso.q_matrix.apply_T(alpha)
    xi = iso.q_matrix.apply_T(beta)
    return iso.s_matrix.apply_T(hcirc_bracket(lift, eta, xi))


def is_restricted_r_matrix(r: Bivector) -> bool:
    """Yang-Baxter condition restricted to triples from (h°)^H.

    Weaker than is_r_matrix in general; the two coincide for trivial
    isotropy and can differ when the fixed space is small.
    """
    iso = r.iso
    lift = canonical_lift(r)
    fixed = fixed_quotient_covectors(iso)
    etas = [iso.q_matrix.apply_T(a) for a in fixed.basis]
    xs = [sharp(lift, eta) for eta in etas]
    for a, eta in enumerate(etas):
        for b, xi in enumerate(etas):
            lead = sharp(lift, hcirc_bracket(lift, eta, xi))
            for c, eps in enumerate(etas):
                if dot(eps, vsub(lead, bracket(iso.L, xs[a], xs[b]))) != 0:
                    return False
    return True


@dataclass(frozen=True)
class FixedSpaceLieAlgebra:
    """The Lie algebra ((h°)^H, [.,.]_r) of an r-matrix, with its morphism.

    basis holds quotient covector coordinates of the RREF basis of (h°)^H;
    algebra is the verified bracket table in that basis.
    """

    bivector: Bivector
    basis: tuple
    algebra: LieAlgebra


def fixed_space_lie_algebra(r: Bivector) -> FixedSpaceLieAlgebra:
    """Bracket table of [.,.]_r on (h°)^H with Jacobi and morphism checks.

    The checks guard theorems that must hold for genuine r-matrices; a
    failure is surfaced as JacobiFailure rather than repaired.
    """
    if not is_r_matrix(r):
        raise NotAnRMatrix("the Yang-Baxter tensor does not vanish")
    iso = r.iso
    fixed = fixed_quotient_covectors(iso)
    d = fixed.dim
    table = {}
    for i in range(d):
        for j in range(i + 1, d):
            out = quotient_hcirc(r, fixed.basis[i], fixed.basis[j])
            try:
                coeffs = fixed.coords_of(out)
            except NoSolution:
                raise JacobiFailure(
                    "bracket of fixed covectors leaves the fixed subspace"
                ) from None
            nz = {k: c for k, c in enumerate(coeffs) if c != 0}
            if nz:
                table[(i, j)] = nz
    algebra = make_lie_algebra(d, table, labels=[f"a{i + 1}" for i in range(d)])
    report = validate(algebra)
    if not report.ok:
        raise JacobiFailure(f"Jacobi fails on triples {report.jacobi_failures}")

    # morphism: q(sharp) intertwines [.,.]_r with the quotient bracket on
    # the fixed vectors, q[s x, s y]
    for i in range(d):
        for j in range(d):
            lhs = r.r_mat @ quotient_hcirc(r, fixed.basis[i], fixed.basis[j])
            xi = iso.s_matrix @ (r.r_mat @ fixed.basis[i])
            xj = iso.s_matrix @ (r.r_mat @ fixed.basis[j])
            rhs = iso.q_matrix @ bracket(iso.L, xi, xj)
            if tuple(lhs) != tuple(rhs):
                raise JacobiFailure("sharp is not a morphism onto the fixed vectors")

    return FixedSpaceLieAlgebra(bivector=r, basis=fixed.basis, algebra=algebra)
