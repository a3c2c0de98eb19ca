"""Builtin example families and the JSON interchange format.

An AlgebraDocument is the serialized form of a Lie algebra with an optional
isotropy subalgebra, complement choice, and discrete generator matrices.  The
builtins reproduce the standard examples: abelian algebras, Heisenberg
algebras with lattice generators, the Poincare algebra iso(1,1) with a
discrete generator, gl_n over so_n, so_4 over so_2 x so_2 (the Grassmannian
of oriented 2-planes in R^4), and the double g+g over the diagonal.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DocumentError, LiepsError
from .exact import Mat
from .liecore import IsotropyModel, LieAlgebra, make_isotropy, make_lie_algebra

_RATIONAL = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(s, path="") -> Fraction:
    s = s.strip() if isinstance(s, str) else s
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise DocumentError(path, f"not a rational literal: {s!r}")
    if "/" in s and int(s.split("/")[1]) == 0:
        raise DocumentError(path, "zero denominator")
    return Fraction(s)


def format_rational(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True)
class AlgebraDocument:
    """Serializable description of an algebra plus isotropy data.

    brackets holds (i, j, ((k, coeff), ...)) with i < j and k-sorted nonzero
    coefficients, the normal form produced by parsing and by the builtins.
    """

    name: str
    dim: int
    labels: tuple
    brackets: tuple
    subalgebra: tuple = field(default=())
    complement: tuple = field(default=())  # standard-basis indices
    ad_generators: tuple = field(default=())  # of Mat


def _normalize_brackets(items) -> tuple:
    out = []
    seen = set()
    for i, j, coeffs in items:
        if (i, j) in seen:
            raise DocumentError("brackets", f"duplicate pair ({i}, {j})")
        seen.add((i, j))
        cleaned = tuple(sorted((k, Fraction(v)) for k, v in coeffs if Fraction(v) != 0))
        if cleaned:
            out.append((i, j, cleaned))
    return tuple(sorted(out))


def _doc(name, dim, labels, bracket_map, subalgebra=(), complement=(), ad_generators=()):
    items = [
        (i, j, tuple(coeffs.items()))
        for (i, j), coeffs in bracket_map.items()
    ]
    return AlgebraDocument(
        name=name,
        dim=dim,
        labels=tuple(labels),
        brackets=_normalize_brackets(items),
        subalgebra=tuple(tuple(Fraction(x) for x in v) for v in subalgebra),
        complement=tuple(complement),
        ad_generators=tuple(g if isinstance(g, Mat) else Mat(g) for g in ad_generators),
    )


def realize(doc: AlgebraDocument):
    """Materialize (LieAlgebra, IsotropyModel) from a document."""
    bracket_map = {}
    for i, j, coeffs in doc.brackets:
        bracket_map[(i, j)] = dict(coeffs)
    L = make_lie_algebra(doc.dim, bracket_map, labels=doc.labels)
    iso = make_isotropy(
        L,
        list(doc.subalgebra),
        discrete_generators=list(doc.ad_generators),
        complement_indices=list(doc.complement) if doc.complement else None,
    )
    return L, iso


# ---------------------------------------------------------------------------
# builtins


def abelian(n) -> AlgebraDocument:
    return _doc(f"abelian({n})", n, [f"e{i + 1}" for i in range(n)], {})


def heisenberg(n) -> AlgebraDocument:
    """h_{2n+1}: [u_i, v_i] = w, with the 2n+1 lattice generator matrices.

    The generators are the adjoint matrices of the standard integer lattice:
    translating by a lattice point in the u-directions sends u_i to u_i - w,
    in the v-directions sends v_i to v_i + w, and the center acts trivially.
    """
    dim = 2 * n + 1
    labels = [f"u{i + 1}" for i in range(n)] + [f"v{i + 1}" for i in range(n)] + ["w"]
    brackets = {(i, n + i): {2 * n: 1} for i in range(n)}
    w = 2 * n
    gens = []
    for j in range(n):
        a = [[Fraction(r == c) for c in range(dim)] for r in range(dim)]
        a[w][j] = Fraction(-1)
        gens.append(a)
    for j in range(n):
        a = [[Fraction(r == c) for c in range(dim)] for r in range(dim)]
        a[w][n + j] = Fraction(1)
        gens.append(a)
    gens.append([[Fraction(r == c) for c in range(dim)] for r in range(dim)])
    return _doc(f"heisenberg({n})", dim, labels, brackets, ad_generators=gens)


def iso11() -> AlgebraDocument:
    """iso(1,1): [e1,e3] = e1, [e2,e3] = -e2, with one discrete generator.

    The generator fixes e1, e2 and sends e3 to e3 + (1/2)(e1 - e2).
    """
    brackets = {(0, 2): {0: 1}, (1, 2): {1: -1}}
    gen = [
        [1, 0, Fraction(1, 2)],
        [0, 1, Fraction(-1, 2)],
        [0, 0, 1],
    ]
    return _doc("iso11", 3, ["e1", "e2", "e3"], brackets, ad_generators=[gen])


def _gl_basis(n):
    """gl_n basis: diagonal units, symmetric units, then skew units."""
    basis = []
    labels = []
    for i in range(n):
        m = [[Fraction(0)] * n for _ in range(n)]
        m[i][i] = Fraction(1)
        basis.append(m)
        labels.append(f"E{i + 1}{i + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            m = [[Fraction(0)] * n for _ in range(n)]
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(1)
            basis.append(m)
            labels.append(f"S{i + 1}{j + 1}")
    for i in range(n):
        for j in range(i + 1, n):
            m = [[Fraction(0)] * n for _ in range(n)]
            m[i][j] = Fraction(1)
            m[j][i] = Fraction(-1)
            basis.append(m)
            labels.append(f"F{i + 1}{j + 1}")
    return basis, labels


def _gl_decompose(m, n):
    """Coordinates of an n x n matrix in the _gl_basis order."""
    coords = [m[i][i] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            coords.append((m[i][j] + m[j][i]) / 2)
    for i in range(n):
        for j in range(i + 1, n):
            coords.append((m[i][j] - m[j][i]) / 2)
    return coords


def gl_sym(n) -> AlgebraDocument:
    """gl_n with h = so_n; the complement is the symmetric matrices.

    Basis order puts the n(n+1)/2 symmetric units first so the greedy
    complement scan picks exactly m = sym_n.
    """
    basis, labels = _gl_basis(n)
    dim = n * n
    sym_count = n * (n + 1) // 2

    def mul(a, b):
        return [
            [sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n)]
            for i in range(n)
        ]

    brackets = {}
    for a in range(dim):
        for b in range(a + 1, dim):
            ab = mul(basis[a], basis[b])
            ba = mul(basis[b], basis[a])
            comm = [[ab[i][j] - ba[i][j] for j in range(n)] for i in range(n)]
            coords = _gl_decompose(comm, n)
            coeffs = {k: c for k, c in enumerate(coords) if c != 0}
            if coeffs:
                brackets[(a, b)] = coeffs

    sub = []
    for t in range(sym_count, dim):
        v = [Fraction(0)] * dim
        v[t] = Fraction(1)
        sub.append(v)
    return _doc(f"gl_sym({n})", dim, labels, brackets, subalgebra=sub)


_SO4_PAIRS = ((1, 2), (3, 4), (1, 3), (2, 3), (1, 4), (2, 4))
_SO4_LABELS = ("F12", "F34", "e1", "e2", "e3", "e4")


def so4_grassmann() -> AlgebraDocument:
    """so_4 with h = span{F12, F34}, the oriented 2-plane Grassmannian.

    Brackets come from [F_ij, F_kl] = d_jk F_il + d_il F_jk - d_ik F_jl
    - d_jl F_ik with F_ji = -F_ij.
    """
    index = {p: t for t, p in enumerate(_SO4_PAIRS)}

    def term(i, j):
        # normalize F_ij to +-(basis element)
        if i == j:
            return None, 0
        if i < j:
            return index[(i, j)], 1
        return index[(j, i)], -1

    brackets = {}
    for a in range(6):
        for b in range(a + 1, 6):
            i, j = _SO4_PAIRS[a]
            k, l = _SO4_PAIRS[b]
            coeffs = {}
            for (p, q), sign in (
                ((i, l), 1 if j == k else 0),
                ((j, k), 1 if i == l else 0),
                ((j, l), -1 if i == k else 0),
                ((i, k), -1 if j == l else 0),
            ):
                if sign == 0:
                    continue
                t, s = term(p, q)
                if t is not None:
                    coeffs[t] = coeffs.get(t, 0) + sign * s
            coeffs = {k2: v for k2, v in coeffs.items() if v != 0}
            if coeffs:
                brackets[(a, b)] = coeffs

    sub = [
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ]
    return _doc("so4_grassmann", 6, _SO4_LABELS, brackets, subalgebra=sub)


def double(base: AlgebraDocument) -> AlgebraDocument:
    """g + g with diagonal h: a symmetric pair for any base algebra.

    Basis d_i = (x_i, x_i) spanning the diagonal, then m_i = (x_i, -x_i);
    the brackets follow from componentwise computation:
    [d_i, d_j] = sum c_ij^k d_k, [d_i, m_j] = sum c_ij^k m_k,
    [m_i, m_j] = sum c_ij^k d_k.
    """
    n = base.dim
    dense = {}
    for i, j, coeffs in base.brackets:
        dense[(i, j)] = dict(coeffs)
        dense[(j, i)] = {k: -v for k, v in coeffs}

    brackets = {}

    def put(a, b, coeffs, shift):
        if not coeffs:
            return
        key = (a, b)
        tgt = brackets.setdefault(key, {})
        for k, v in coeffs.items():
            tgt[k + shift] = tgt.get(k + shift, Fraction(0)) + v

    for i in range(n):
        for j in range(n):
            c = dense.get((i, j), {})
            if i < j:
                put(i, j, c, 0)  # [d_i, d_j] lands in the diagonal
                put(n + i, n + j, c, 0)  # [m_i, m_j] lands in the diagonal
            put(i, n + j, c, n)  # [d_i, m_j] lands in the m part

    labels = [f"d_{x}" for x in base.labels] + [f"m_{x}" for x in base.labels]
    sub = []
    for i in range(n):
        v = [Fraction(0)] * (2 * n)
        v[i] = Fraction(1)
        sub.append(v)
    return _doc(f"double({base.name})", 2 * n, labels, brackets, subalgebra=sub)


def builtin(name, params=None) -> AlgebraDocument:
    """Builtin dispatch by family name; params is a small dict (e.g. n)."""
    params = dict(params or {})

    def done(doc):
        if params:
            raise LiepsError(f"builtin {name!r} got unexpected parameters {sorted(params)}")
        return doc

    try:
        if name == "abelian":
            return done(abelian(int(params.pop("n"))))
        if name == "heisenberg":
            return done(heisenberg(int(params.pop("n"))))
        if name == "iso11":
            return done(iso11())
        if name == "gl_sym":
            return done(gl_sym(int(params.pop("n"))))
        if name == "so4_grassmann":
            return done(so4_grassmann())
        if name == "double":
            base = params.pop("of")
            if isinstance(base, AlgebraDocument):
                return done(double(base))
            doc = double(builtin(base, params))
            params.clear()
            return doc
    except KeyError as e:
        raise LiepsError(f"builtin {name!r} needs parameter {e.args[0]!r}") from None
    raise LiepsError(f"unknown builtin {name!r}")


# ---------------------------------------------------------------------------
# JSON layer


def to_json_dict(doc: AlgebraDocument) -> dict:
    out = {
        "name": doc.name,
        "dim": doc.dim,
        "labels": list(doc.labels),
        "brackets": [
            {"i": i, "j": j, "coeffs": {str(k): format_rational(v) for k, v in coeffs}}
            for i, j, coeffs in doc.brackets
        ],
    }
    if doc.subalgebra:
        out["subalgebra"] = [[format_rational(x) for x in v] for v in doc.subalgebra]
    if doc.complement:
        vecs = []
        for t in doc.complement:
            v = ["0"] * doc.dim
            v[t] = "1"
            vecs.append(v)
        out["complement"] = vecs
    if doc.ad_generators:
        out["ad_generators"] = [
            [[format_rational(x) for x in row] for row in g.entries]
            for g in doc.ad_generators
        ]
    return out


def emit(doc: AlgebraDocument) -> str:
    return json.dumps(to_json_dict(doc), indent=2, sort_keys=True) + "\n"


def _expect(cond, path, msg):
    if not cond:
        raise DocumentError(path, msg)


def parse(text) -> AlgebraDocument:
    """Parse JSON text (or an already-decoded dict) with located errors."""
    if isinstance(text, (str, bytes)):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise DocumentError("", f"invalid JSON at line {e.lineno}: {e.msg}") from None
    else:
        data = text
    _expect(isinstance(data, dict), "", "document must be a JSON object")

    known = {"name", "dim", "labels", "brackets", "subalgebra", "complement", "ad_generators"}
    for k in data:
        _expect(k in known, k, "unknown field")

    name = data.get("name", "")
    _expect(isinstance(name, str), "name", "must be a string")

    dim = data.get("dim")
    _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim > 0, "dim", "must be a positive integer")

    labels = data.get("labels")
    if labels is None:
        labels = [f"e{t + 1}" for t in range(dim)]
    _expect(isinstance(labels, list) and len(labels) == dim, "labels", f"must be a list of {dim} strings")
    for t, lab in enumerate(labels):
        _expect(isinstance(lab, str) and lab, f"labels[{t}]", "must be a nonempty string")
    _expect(len(set(labels)) == dim, "labels", "must be distinct")

    raw_brackets = data.get("brackets", [])
    _expect(isinstance(raw_brackets, list), "brackets", "must be a list")
    items = []
    for t, item in enumerate(raw_brackets):
        path = f"brackets[{t}]"
        _expect(isinstance(item, dict), path, "must be an object")
        for k in item:
            _expect(k in {"i", "j", "coeffs"}, f"{path}.{k}", "unknown field")
        i = item.get("i")
        j = item.get("j")
        _expect(isinstance(i, int) and isinstance(j, int), path, "i and j must be integers")
        _expect(0 <= i < j < dim, path, f"need 0 <= i < j < {dim}, got ({i}, {j})")
        coeffs = item.get("coeffs", {})
        _expect(isinstance(coeffs, dict), f"{path}.coeffs", "must be an object")
        parsed = []
        for key, val in coeffs.items():
            kpath = f"{path}.coeffs.{key}"
            _expect(isinstance(key, str) and key.isdigit(), kpath, "key must be a basis index")
            k = int(key)
            _expect(0 <= k < dim, kpath, f"index out of range 0..{dim - 1}")
            parsed.append((k, parse_rational(val, kpath)))
        items.append((i, j, parsed))
    brackets = _normalize_brackets(items)

    def parse_vectors(key):
        raw = data.get(key, [])
        _expect(isinstance(raw, list), key, "must be a list of vectors")
        out = []
        for t, v in enumerate(raw):
            path = f"{key}[{t}]"
            _expect(isinstance(v, list) and len(v) == dim, path, f"must be a vector of length {dim}")
            out.append(tuple(parse_rational(x, f"{path}[{c}]") for c, x in enumerate(v)))
        return out

    subalgebra = parse_vectors("subalgebra")

    complement = []
    for t, v in enumerate(parse_vectors("complement")):
        path = f"complement[{t}]"
        hits = [c for c, x in enumerate(v) if x != 0]
        _expect(len(hits) == 1 and v[hits[0]] == 1, path, "must be a standard basis vector")
        _expect(hits[0] not in complement, path, "repeated complement vector")
        complement.append(hits[0])

    raw_gens = data.get("ad_generators", [])
    _expect(isinstance(raw_gens, list), "ad_generators", "must be a list of matrices")
    gens = []
    for t, g in enumerate(raw_gens):
        path = f"ad_generators[{t}]"
        _expect(isinstance(g, list) and len(g) == dim, path, f"must be a {dim}x{dim} matrix")
        rows = []
        for r, row in enumerate(g):
            _expect(isinstance(row, list) and len(row) == dim, f"{path}[{r}]", f"must have {dim} entries")
            rows.append([parse_rational(x, f"{path}[{r}][{c}]") for c, x in enumerate(row)])
        gens.append(Mat(rows))

    return AlgebraDocument(
        name=name,
        dim=dim,
        labels=tuple(labels),
        brackets=brackets,
        subalgebra=tuple(subalgebra),
        complement=tuple(complement),
        ad_generators=tuple(gens),
    )
