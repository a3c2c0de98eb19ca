from fractions import Fraction as QQ

import pytest
from hypothesis import given, strategies as st

from helpers import instance
from lieps.errors import (
    GeneratorMovesH,
    NotAnAutomorphism,
    NotASubalgebra,
    NotInH,
)
from lieps.exact import Mat
from lieps.liecore import (
    LieAlgebra,
    ad_matrix,
    bracket,
    covector_to_ann,
    ann_to_covector,
    induced_ad_bar,
    induced_map,
    is_reductive_complement,
    make_isotropy,
    make_lie_algebra,
    validate,
    wedge2_action,
    wedge2_derivation,
    wedge2_space,
)


def V(*xs):
    return tuple(QQ(x) for x in xs)


# ---------------------------------------------------------------------------
# construction and validation


def test_make_lie_algebra_defaults_and_completion():
    L = make_lie_algebra(3, {(0, 1): {2: QQ(1)}})
    assert L.labels == ("e1", "e2", "e3")
    assert L.c[0][1][2] == 1
    assert L.c[1][0][2] == -1
    assert all(x == 0 for x in L.c[2][2])


def test_make_lie_algebra_rejects_bad_keys():
    with pytest.raises(ValueError):
        make_lie_algebra(2, {(1, 0): {0: QQ(1)}})
    with pytest.raises(ValueError):
        make_lie_algebra(2, {(0, 2): {0: QQ(1)}})
    with pytest.raises(ValueError):
        make_lie_algebra(2, {(0, 1): {5: QQ(1)}})


def test_bracket_and_ad_matrix_heisenberg():
    L, _ = instance("heisenberg", {"n": 1})
    u, v, w = Mat.identity(3).entries
    assert bracket(L, u, v) == w
    assert bracket(L, v, u) == tuple(-x for x in w)
    assert bracket(L, u, w) == V(0, 0, 0)
    ad_u = ad_matrix(L, u)
    assert ad_u @ v == w
    assert ad_u @ u == V(0, 0, 0)


def test_validate_ok_on_catalog():
    for name, params in [
        ("heisenberg", {"n": 2}),
        ("iso11", None),
        ("gl_sym", {"n": 3}),
        ("so4_grassmann", None),
        ("double", {"of": "heisenberg", "n": 1}),
    ]:
        L, _ = instance(name, params)
        report = validate(L)
        assert report.ok, (name, report)


def test_validate_reports_jacobi_failure():
    L = make_lie_algebra(3, {(0, 1): {0: QQ(1)}, (0, 2): {2: QQ(1)}})
    report = validate(L)
    assert not report.ok
    assert (0, 1, 2) in report.jacobi_failures
    assert report.antisymmetry_failures == ()


def test_validate_reports_antisymmetry_failure():
    # built by hand: c[0][1] = c[1][0] = e1, skew fails at the pair (0, 1)
    L = LieAlgebra(dim=2, labels=("a", "b"), c=((V(0, 0), V(1, 0)), (V(1, 0), V(0, 0))))
    report = validate(L)
    assert not report.ok
    assert (0, 1) in report.antisymmetry_failures


# ---------------------------------------------------------------------------
# isotropy models


def test_isotropy_projection_section_identities():
    for name, params in [("gl_sym", {"n": 2}), ("so4_grassmann", None)]:
        L, iso = instance(name, params)
        n, k = L.dim, iso.h_basis.dim
        assert iso.quotient_dim == n - k
        # q(s(x)) = x and q kills h
        assert iso.q_matrix @ iso.s_matrix == Mat.identity(n - k)
        for u in iso.h_basis.basis:
            assert all(x == 0 for x in iso.q_matrix @ u)


def test_covector_identifications_roundtrip():
    L, iso = instance("gl_sym", {"n": 2})
    m = iso.quotient_dim
    for a in range(m):
        alpha = tuple(QQ(1) if t == a else QQ(0) for t in range(m))
        eta = covector_to_ann(iso, alpha)
        # annihilates h
        for u in iso.h_basis.basis:
            assert sum(x * y for x, y in zip(eta, u)) == 0
        assert ann_to_covector(iso, eta) == alpha


def test_greedy_complement_skips_dependent_columns():
    L = make_lie_algebra(3, {})
    iso = make_isotropy(L, [V(1, 1, 0)])
    # e1 alone is dependent with h + e0? no: greedy scans 0,1,2 keeping P invertible
    assert iso.complement_indices == (0, 2) or iso.complement_indices == (1, 2)
    assert iso.q_matrix @ iso.s_matrix == Mat.identity(2)


def test_not_a_subalgebra_witness():
    L, _ = instance("heisenberg", {"n": 1})
    with pytest.raises(NotASubalgebra):
        make_isotropy(L, [V(1, 0, 0), V(0, 1, 0)])


def test_generator_must_be_automorphism():
    L, _ = instance("heisenberg", {"n": 1})
    bad = Mat(((QQ(1), QQ(0), QQ(0)), (QQ(0), QQ(1), QQ(0)), (QQ(0), QQ(0), QQ(2))))
    with pytest.raises(NotAnAutomorphism):
        make_isotropy(L, [], discrete_generators=[bad])


def test_generator_must_preserve_h():
    L = make_lie_algebra(2, {})
    swap = Mat(((QQ(0), QQ(1)), (QQ(1), QQ(0))))
    with pytest.raises(GeneratorMovesH):
        make_isotropy(L, [V(1, 0)], discrete_generators=[swap])


def test_induced_ad_bar_requires_h_member():
    L, iso = instance("gl_sym", {"n": 2})
    with pytest.raises(NotInH):
        induced_ad_bar(L, iso, V(1, 0, 0, 0))


def test_induced_ad_bar_matches_direct_computation():
    L, iso = instance("gl_sym", {"n": 2})
    for u in iso.h_basis.basis:
        expected = iso.q_matrix @ ad_matrix(L, u) @ iso.s_matrix
        assert induced_ad_bar(L, iso, u) == expected


def test_reductive_complement_flags():
    _, iso_gl = instance("gl_sym", {"n": 2})
    assert is_reductive_complement(iso_gl)
    L, _ = instance("iso11")
    iso_bad = make_isotropy(L, [V(1, 0, 0)])
    assert iso_bad.complement_indices == (1, 2)
    assert not is_reductive_complement(iso_bad)


def test_heisenberg_generators_are_nilpotent_exponentials():
    # each declared generator is Ad(exp x) = I + ad_x for a lattice direction
    for n in (1, 2):
        L, iso = instance("heisenberg", {"n": n})
        cands = []
        for k in list(range(2 * n)) + [2 * n]:
            x = tuple(QQ(1) if t == k else QQ(0) for t in range(L.dim))
            A = ad_matrix(L, x)
            assert (A @ A).is_zero()
            cands.append(Mat.identity(L.dim) + A)
        for g in iso.discrete_generators:
            assert any(g == c for c in cands)


# ---------------------------------------------------------------------------
# complement changes: transition maps between two models of the same quotient


def _two_complement_models():
    # heisenberg(1) + a 1-dim center, h spanned by w + z; both complements valid
    L = make_lie_algebra(4, {(0, 1): {2: QQ(1)}}, labels=("u", "v", "w", "z"))
    h = [V(0, 0, 1, 1)]
    iso_a = make_isotropy(L, h, complement_indices=(0, 1, 2))
    iso_b = make_isotropy(L, h, complement_indices=(0, 1, 3))
    return L, iso_a, iso_b


def test_complement_transition_is_invertible():
    L, iso_a, iso_b = _two_complement_models()
    C = iso_b.q_matrix @ iso_a.s_matrix
    Cinv = iso_a.q_matrix @ iso_b.s_matrix
    assert C @ Cinv == Mat.identity(3)
    assert Cinv @ C == Mat.identity(3)


def test_induced_map_conjugates_under_complement_change():
    L, iso_a, iso_b = _two_complement_models()
    C = iso_b.q_matrix @ iso_a.s_matrix
    Cinv = iso_a.q_matrix @ iso_b.s_matrix
    # Ad(exp u) = I + ad_u preserves h (w + z is central)
    A = Mat.identity(4) + ad_matrix(L, V(1, 0, 0, 0))
    assert induced_map(iso_b, A) == C @ induced_map(iso_a, A) @ Cinv


# ---------------------------------------------------------------------------
# wedge-square functor


def test_wedge2_space_is_lexicographic():
    assert wedge2_space(4) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


small_entries = st.fractions(min_value=-3, max_value=3, max_denominator=2)


def _square(n):
    return st.lists(
        st.lists(small_entries, min_size=n, max_size=n), min_size=n, max_size=n
    ).map(lambda rows: Mat(tuple(tuple(r) for r in rows)))


@given(_square(3), _square(3))
def test_wedge2_action_is_functorial(A, B):
    assert wedge2_action(A @ B) == wedge2_action(A) @ wedge2_action(B)


def test_wedge2_action_identity():
    assert wedge2_action(Mat.identity(4)) == Mat.identity(6)


@given(_square(3))
def test_wedge2_derivation_is_linearization(B):
    # the action of I + tB is quadratic in t; its odd part isolates the
    # derivation exactly
    eye = Mat.identity(3)
    plus = wedge2_action(eye + B)
    minus = wedge2_action(eye - B)
    assert (plus - minus).scale(QQ(1, 2)) == wedge2_derivation(B)
