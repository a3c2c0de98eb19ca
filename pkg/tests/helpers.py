"""Shared test fixtures: catalog instances, r-matrix enumeration, and a
seeded generator of randomized quotient instances."""

import random
from fractions import Fraction as QQ

from lieps import catalog
from lieps.exact import Mat, inverse
from lieps.invariants import invariant_bivectors
from lieps.liecore import bracket, make_isotropy, make_lie_algebra
from lieps.ybe import is_r_matrix, make_bivector

CATALOG_ENTRIES = (
    ("abelian-3", "abelian", {"n": 3}),
    ("heisenberg-1", "heisenberg", {"n": 1}),
    ("heisenberg-2", "heisenberg", {"n": 2}),
    ("iso11", "iso11", None),
    ("gl-sym-2", "gl_sym", {"n": 2}),
    ("so4-grassmann", "so4_grassmann", None),
    ("double-heisenberg-1", "double", {"of": "heisenberg", "n": 1}),
)


def instance(name, params=None):
    return catalog.realize(catalog.builtin(name, params))


def catalog_instances():
    out = []
    for tag, name, params in CATALOG_ENTRIES:
        L, iso = instance(name, params)
        out.append((tag, L, iso))
    return out


def invariant_candidates(iso):
    """Invariant-space basis vectors plus their pairwise sums, nonzero only."""
    basis = list(invariant_bivectors(iso).basis.basis)
    cands = list(basis)
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            cands.append(tuple(x + y for x, y in zip(basis[i], basis[j])))
    return [c for c in cands if any(x != 0 for x in c)]


def catalog_r_matrices():
    """(tag, L, iso, r) for every enumerated catalog r-matrix."""
    out = []
    for tag, L, iso in catalog_instances():
        for c in invariant_candidates(iso):
            r = make_bivector(iso, c)
            if is_r_matrix(r):
                out.append((tag, L, iso, r))
    return out


# ---------------------------------------------------------------------------
# randomized instances: small base families with known subalgebras, pushed
# through a random rational change of basis

# family: (dim, brackets, tuple of h-options, each a tuple of basis vectors)
_V = lambda *xs: tuple(QQ(x) for x in xs)

BASE_FAMILIES = {
    "abelian3": (3, {}, ((), (_V(1, 0, 0),), (_V(1, 0, 0), _V(0, 1, 0)))),
    "heis": (3, {(0, 1): {2: QQ(1)}}, ((), (_V(0, 0, 1),), (_V(1, 0, 0), _V(0, 0, 1)))),
    "iso11": (
        3,
        {(0, 2): {0: QQ(1)}, (1, 2): {1: QQ(-1)}},
        ((), (_V(1, 0, 0),), (_V(0, 1, 0),)),
    ),
    "sl2": (
        3,
        {(0, 1): {1: QQ(2)}, (0, 2): {2: QQ(-2)}, (1, 2): {0: QQ(1)}},
        ((), (_V(0, 1, 0),), (_V(1, 0, 0),), (_V(1, 0, 0), _V(0, 1, 0))),
    ),
    "so3": (
        3,
        {(0, 1): {2: QQ(1)}, (1, 2): {0: QQ(1)}, (0, 2): {1: QQ(-1)}},
        ((), (_V(1, 0, 0),)),
    ),
    "solv2": (2, {(0, 1): {0: QQ(1)}}, ((), (_V(1, 0),))),
}


def _direct_sum(fam_a, fam_b):
    da, bra, ha = fam_a
    db, brb, hb = fam_b
    brackets = {k: dict(v) for k, v in bra.items()}
    for (i, j), coeffs in brb.items():
        brackets[(da + i, da + j)] = {da + k: c for k, c in coeffs.items()}
    pad_a = lambda v: v + (QQ(0),) * db
    pad_b = lambda v: (QQ(0),) * da + v
    h_opts = []
    for opt_a in ha:
        for opt_b in hb:
            h_opts.append(tuple(pad_a(v) for v in opt_a) + tuple(pad_b(v) for v in opt_b))
    return (da + db, brackets, tuple(h_opts))


SUM_FAMILIES = {
    "solv2+solv2": _direct_sum(BASE_FAMILIES["solv2"], BASE_FAMILIES["solv2"]),
    "heis+solv2": _direct_sum(BASE_FAMILIES["heis"], BASE_FAMILIES["solv2"]),
    "sl2+solv2": _direct_sum(BASE_FAMILIES["sl2"], BASE_FAMILIES["solv2"]),
    "heis+heis": _direct_sum(BASE_FAMILIES["heis"], BASE_FAMILIES["heis"]),
}

ALL_FAMILIES = dict(BASE_FAMILIES, **SUM_FAMILIES)


def _random_gl(rng, n):
    while True:
        m = Mat(tuple(tuple(QQ(rng.randint(-2, 2)) for _ in range(n)) for _ in range(n)))
        try:
            return m, inverse(m)
        except ValueError:
            continue


def _transport_algebra(rng, dim, brackets):
    """Conjugate the structure constants by a random basis change."""
    L0 = make_lie_algebra(dim, brackets)
    T, Tinv = _random_gl(rng, dim)
    cols = [T.col(i) for i in range(dim)]
    new_brackets = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            w = Tinv @ bracket(L0, cols[i], cols[j])
            coeffs = {k: w[k] for k in range(dim) if w[k] != 0}
            if coeffs:
                new_brackets[(i, j)] = coeffs
    return make_lie_algebra(dim, new_brackets), T, Tinv


def random_instances(seed, count):
    """Yield (label, L, iso, r_coords) with r drawn from the invariant space.

    Skips draws whose invariant space is zero; h is a transported known
    subalgebra, so closedness is guaranteed by construction.
    """
    rng = random.Random(seed)
    names = sorted(ALL_FAMILIES)
    produced = 0
    while produced < count:
        name = rng.choice(names)
        dim, brackets, h_options = ALL_FAMILIES[name]
        L, T, Tinv = _transport_algebra(rng, dim, brackets)
        h_vecs = [tuple(Tinv @ v) for v in rng.choice(h_options)]
        iso = make_isotropy(L, h_vecs)
        inv = invariant_bivectors(iso)
        if inv.dim == 0:
            continue
        coeffs = [QQ(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(inv.dim)]
        if all(c == 0 for c in coeffs):
            coeffs[0] = QQ(1)
        coords = [QQ(0)] * len(inv.basis.basis[0])
        for c, bv in zip(coeffs, inv.basis.basis):
            for t in range(len(coords)):
                coords[t] += c * bv[t]
        produced += 1
        yield f"{name}#{produced}", L, iso, tuple(coords)


def random_lift_perturbation(rng, iso, rt_mat):
    """rt + sum of (y x^T - x y^T) with x in h: another lift of the same r."""
    n = rt_mat.rows
    out = [list(row) for row in rt_mat.entries]
    h_basis = list(iso.h_basis.basis)
    if not h_basis:
        return rt_mat
    for _ in range(rng.randint(1, 3)):
        x = h_basis[rng.randrange(len(h_basis))]
        y = [QQ(rng.randint(-2, 2)) for _ in range(n)]
        for i in range(n):
            for j in range(n):
                out[i][j] += y[i] * x[j] - x[i] * y[j]
    return Mat(tuple(tuple(row) for row in out))
