"""Command-line surface: validate, invariants, ybe, scan, leaf, connection, example.

Documents are read from a file path or from standard input when the path is
`-`.  Exit codes: 0 success, 1 domain errors (failed checks, non-r-matrices
where one is required, unknown builtins), 2 parse errors (malformed JSON or
documents, bad expressions, usage errors).
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout
from fractions import Fraction

from . import catalog
from .connections import (
    build_connection,
    curvature,
    make_reductive_pair,
    poisson_compat,
    torsion,
)
from .errors import DocumentError, LiepsError
from .exact import Mat
from .foliation import leaf_cocycle, leaf_decomposition
from .invariants import invariant_bivectors
from .liecore import validate, wedge2_space
from .ybe import is_r_matrix, make_bivector, yang_baxter_tensor


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(f"{self.prog}: error: {message}")


# ---------------------------------------------------------------------------
# bivector expressions: sums of coeff * atom ^ atom, atoms being quotient
# basis labels or parenthesized linear combinations of them


class _ExprError(DocumentError):
    def __init__(self, msg):
        super().__init__("--r", msg)


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*^()":
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise _ExprError(f"bad rational near {text[i:]!r}")
                tokens.append(("num", Fraction(text[i:k])))
                i = k
            else:
                tokens.append(("num", Fraction(text[i:j])))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("label", text[i:j]))
            i = j
            continue
        raise _ExprError(f"unexpected character {ch!r}")
    tokens.append(("end", None))
    return tokens


class _ExprParser:
    """Recursive-descent parser producing wedge coordinates."""

    def __init__(self, text, labels):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.labels = {lab: t for t, lab in enumerate(labels)}
        self.n = len(labels)

    def peek(self):
        return self.tokens[self.pos][0]

    def take(self, kind=None):
        tk, val = self.tokens[self.pos]
        if kind is not None and tk != kind:
            raise _ExprError(f"expected {kind}, found {tk}")
        self.pos += 1
        return val

    def vector_atom(self):
        tk = self.peek()
        if tk == "label":
            lab = self.take()
            if lab not in self.labels:
                raise _ExprError(
                    f"unknown label {lab!r}; expected one of {sorted(self.labels)}"
                )
            v = [Fraction(0)] * self.n
            v[self.labels[lab]] = Fraction(1)
            return v
        if tk == "(":
            self.take("(")
            v = self.linear()
            self.take(")")
            return v
        raise _ExprError("expected a basis label or a parenthesized combination")

    def linear(self):
        v = [Fraction(0)] * self.n
        sign = Fraction(1)
        first = True
        while True:
            tk = self.peek()
            if tk in ("+", "-"):
                sign = Fraction(1) if self.take() == "+" else Fraction(-1)
            elif not first:
                break
            coeff = Fraction(1)
            if self.peek() == "num":
                coeff = self.take()
                if self.peek() == "*":
                    self.take()
            part = self.vector_atom()
            for t in range(self.n):
                v[t] += sign * coeff * part[t]
            sign = Fraction(1)
            first = False
            if self.peek() not in ("+", "-"):
                break
        return v

    def bivector(self):
        pairs = wedge2_space(self.n)
        index = {p: t for t, p in enumerate(pairs)}
        coords = [Fraction(0)] * len(pairs)
        sign = Fraction(1)
        first = True
        while self.peek() != "end":
            tk = self.peek()
            if tk in ("+", "-"):
                sign = Fraction(1) if self.take() == "+" else Fraction(-1)
            elif not first:
                raise _ExprError("expected + or - between terms")
            coeff = Fraction(1)
            if self.peek() == "num":
                coeff = self.take()
                if self.peek() == "*":
                    self.take()
            u = self.vector_atom()
            self.take("^")
            v = self.vector_atom()
            for i in range(self.n):
                if u[i] == 0:
                    continue
                for j in range(self.n):
                    if v[j] == 0 or i == j:
                        continue
                    c = sign * coeff * u[i] * v[j]
                    if i < j:
                        coords[index[(i, j)]] += c
                    else:
                        coords[index[(j, i)]] -= c
            sign = Fraction(1)
            first = False
        if first:
            raise _ExprError("empty bivector expression")
        return tuple(coords)


def parse_bivector_expr(text, labels) -> tuple:
    return _ExprParser(text, labels).bivector()


# ---------------------------------------------------------------------------
# formatting


def _fmt_terms(parts):
    if not parts:
        return "0"
    out = []
    for t, (coeff, word) in enumerate(parts):
        mag = -coeff if coeff < 0 else coeff
        piece = word if mag == 1 else f"{mag} {word}"
        if t == 0:
            out.append(piece if coeff > 0 else f"-{piece}")
        else:
            out.append(f"+ {piece}" if coeff > 0 else f"- {piece}")
    return " ".join(out)


def format_vector(labels, coords) -> str:
    return _fmt_terms([(c, labels[t]) for t, c in enumerate(coords) if c != 0])


def format_covector(labels, coords) -> str:
    return _fmt_terms([(c, labels[t] + "*") for t, c in enumerate(coords) if c != 0])


def format_bivector(labels, coords) -> str:
    pairs = wedge2_space(len(labels))
    return _fmt_terms(
        [(c, f"{labels[i]}^{labels[j]}") for (i, j), c in zip(pairs, coords) if c != 0]
    )


def _rats(seq):
    return [str(Fraction(x)) for x in seq]


# ---------------------------------------------------------------------------
# command handlers; each returns (exit_code, stdout_text)


def _load(path, stdin_text):
    if path == "-":
        text = stdin_text if stdin_text is not None else sys.stdin.read()
    else:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise DocumentError(path, f"cannot read file: {e.strerror}") from None
    return catalog.parse(text)


def _quotient_labels(doc, iso):
    return [doc.labels[j] for j in iso.complement_indices]


def _emit(payload, text_lines, fmt):
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return "\n".join(text_lines) + "\n"


def _cmd_validate(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    report = validate(L)
    payload = {
        "ok": report.ok,
        "antisymmetry_failures": [list(p) for p in report.antisymmetry_failures],
        "jacobi_failures": [list(t) for t in report.jacobi_failures],
    }
    lines = [f"name: {doc.name}", f"dim: {doc.dim}", f"ok: {str(report.ok).lower()}"]
    for p in report.antisymmetry_failures:
        lines.append(f"antisymmetry violated at pair {p}")
    for t in report.jacobi_failures:
        lines.append(f"jacobi violated at triple {t}")
    return (0 if report.ok else 1), _emit(payload, lines, args.format)


def _cmd_invariants(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    inv = invariant_bivectors(iso)
    qlabels = _quotient_labels(doc, iso)
    pretty = [format_bivector(qlabels, v) for v in inv.basis.basis]
    payload = {
        "dim": inv.dim,
        "basis_coords": [_rats(v) for v in inv.basis.basis],
        "basis": pretty,
        "source": inv.source,
    }
    lines = [f"dim {inv.dim}"] + [f"  {p}" for p in pretty]
    return 0, _emit(payload, lines, args.format)


def _cmd_ybe(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    qlabels = _quotient_labels(doc, iso)
    coords = parse_bivector_expr(args.r, qlabels)
    r = make_bivector(iso, coords)
    tensor = yang_baxter_tensor(r)
    nonzero = tensor.nonzero_entries()
    payload = {
        "r": format_bivector(qlabels, coords),
        "r_matrix": not nonzero,
        "nonzero": [
            {"triple": [qlabels[a] + "*" for a in abc], "value": str(val)}
            for abc, val in nonzero
        ],
    }
    if not nonzero:
        lines = ["r-matrix"]
    else:
        lines = [f"not an r-matrix: {len(nonzero)} nonzero entries"]
        for (a, b, c), val in nonzero:
            lines.append(f"  [[r,r]]({qlabels[a]}*, {qlabels[b]}*, {qlabels[c]}*) = {val}")
    return 0, _emit(payload, lines, args.format)


def _cmd_scan(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    inv = invariant_bivectors(iso)
    qlabels = _quotient_labels(doc, iso)
    rows = []
    basis = list(inv.basis.basis)
    for v in basis:
        rows.append(("basis", v))
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            rows.append(("sum", tuple(x + y for x, y in zip(basis[i], basis[j]))))
    for text in args.candidate or []:
        rows.append(("candidate", parse_bivector_expr(text, qlabels)))
    out_rows = []
    for kind, coords in rows:
        r = make_bivector(iso, coords)
        out_rows.append(
            {
                "kind": kind,
                "bivector": format_bivector(qlabels, coords),
                "invariant": inv.basis.contains(coords),
                "is_r_matrix": is_r_matrix(r),
            }
        )
    payload = {"rows": out_rows}
    lines = [f"{len(out_rows)} candidates"]
    for row in out_rows:
        flag = "r-matrix" if row["is_r_matrix"] else "not an r-matrix"
        invflag = "invariant" if row["invariant"] else "NOT invariant"
        lines.append(f"  [{row['kind']}] {row['bivector']}: {invflag}, {flag}")
    return 0, _emit(payload, lines, args.format)


def _cmd_leaf(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    qlabels = _quotient_labels(doc, iso)
    coords = parse_bivector_expr(args.r, qlabels)
    r = make_bivector(iso, coords)
    data = leaf_cocycle(r)
    dec = leaf_decomposition(r)
    frame_pretty = [format_vector(doc.labels, v) for v in data.frame]
    payload = {
        "a_dim": data.a_basis.dim,
        "frame": frame_pretty,
        "frame_coords": [_rats(v) for v in data.frame],
        "omega": [[str(x) for x in row] for row in data.frame_omega.entries],
        "radical_equals_h": True,
        "reductive": dec.reductive,
        "symmetric": dec.symmetric,
    }
    lines = [f"a_r: dim {data.a_basis.dim}"]
    for p in frame_pretty:
        lines.append(f"  {p}")
    lines.append("omega_r on that frame:")
    for row in data.frame_omega.entries:
        lines.append("  [" + ", ".join(str(x) for x in row) + "]")
    lines.append("radical equals h: true")
    lines.append(f"decomposition: reductive {str(dec.reductive).lower()}, "
                 f"symmetric {str(dec.symmetric).lower()}")
    return 0, _emit(payload, lines, args.format)


def _cmd_connection(args, stdin_text):
    doc = _load(args.file, stdin_text)
    L, iso = catalog.realize(doc)
    pair = make_reductive_pair(L, iso)
    qlabels = _quotient_labels(doc, iso)
    coords = parse_bivector_expr(args.r, qlabels)
    r = make_bivector(iso, coords)
    b = build_connection(args.kind, pair, r)
    n = pair.dim_m
    eps = Mat.identity(n).entries

    b_entries = []
    for a in range(n):
        for c in range(n):
            val = b.b[a][c]
            if any(x != 0 for x in val):
                b_entries.append((a, c, val))
    torsion_entries = []
    curvature_nonzero = []
    for a in range(n):
        for c in range(a + 1, n):
            t = torsion(pair, r, b, eps[a], eps[c])
            if any(x != 0 for x in t):
                torsion_entries.append((a, c, t))
            if not curvature(pair, r, b, eps[a], eps[c]).is_zero():
                curvature_nonzero.append((a, c))
    compat = poisson_compat(pair, r, b)

    payload = {
        "kind": args.kind,
        "b": [
            {"eta": qlabels[a] + "*", "xi": qlabels[c] + "*",
             "value": format_covector(qlabels, val)}
            for a, c, val in b_entries
        ],
        "torsion_zero": not torsion_entries,
        "torsion": [
            {"eta": qlabels[a] + "*", "xi": qlabels[c] + "*",
             "value": format_covector(qlabels, t)}
            for a, c, t in torsion_entries
        ],
        "curvature_zero": not curvature_nonzero,
        "curvature_nonzero_pairs": [
            [qlabels[a] + "*", qlabels[c] + "*"] for a, c in curvature_nonzero
        ],
        "poisson_compatible": compat,
    }
    lines = [f"connection: {args.kind}"]
    if b_entries:
        lines.append("b:")
        for a, c, val in b_entries:
            lines.append(f"  b({qlabels[a]}*, {qlabels[c]}*) = {format_covector(qlabels, val)}")
    else:
        lines.append("b: 0")
    if torsion_entries:
        lines.append("torsion:")
        for a, c, t in torsion_entries:
            lines.append(f"  T({qlabels[a]}*, {qlabels[c]}*) = {format_covector(qlabels, t)}")
    else:
        lines.append("torsion: 0")
    lines.append(f"curvature zero: {str(not curvature_nonzero).lower()}")
    for a, c in curvature_nonzero:
        lines.append(f"  R({qlabels[a]}*, {qlabels[c]}*) != 0")
    lines.append(f"poisson compatible: {str(compat).lower()}")
    return 0, _emit(payload, lines, args.format)


def _cmd_example(args, stdin_text):
    params = {}
    if args.n is not None:
        params["n"] = args.n
    if args.of is not None:
        params["of"] = args.of
    doc = catalog.builtin(args.name, params)
    return 0, catalog.emit(doc)


def _build_parser():
    parser = _Parser(prog="lieps", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=handler)
        p.add_argument("--format", choices=("text", "json"), default="text")
        return p

    p = add("validate", _cmd_validate, help="check antisymmetry and Jacobi")
    p.add_argument("file")

    p = add("invariants", _cmd_invariants, help="invariant bivector space")
    p.add_argument("file")

    p = add("ybe", _cmd_ybe, help="Yang-Baxter tensor of a bivector")
    p.add_argument("file")
    p.add_argument("--r", required=True, help="bivector, e.g. \"(e1-e2)^e3\"")

    p = add("scan", _cmd_scan, help="r-matrix scan over simple candidates")
    p.add_argument("file")
    p.add_argument("--candidate", action="append", help="extra bivector to test")

    p = add("leaf", _cmd_leaf, help="leaf algebra and cocycle of an r-matrix")
    p.add_argument("file")
    p.add_argument("--r", required=True)

    p = add("connection", _cmd_connection, help="invariant contravariant connection")
    p.add_argument("file")
    p.add_argument("--r", required=True)
    p.add_argument("--kind", required=True,
                   choices=("canonical", "natural", "left_symmetric", "fedosov"))

    p = add("example", _cmd_example, help="emit a builtin document as JSON")
    p.add_argument("name")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--of", default=None, help="base builtin for double")

    return parser


def run_cli(argv, stdin_text=None):
    """Dispatch a CLI invocation; returns (exit_code, stdout, stderr)."""
    parser = _build_parser()
    cap_out = io.StringIO()
    cap_err = io.StringIO()
    try:
        with redirect_stdout(cap_out), redirect_stderr(cap_err):
            args = parser.parse_args(argv)
    except _Usage as e:
        return 2, cap_out.getvalue(), cap_err.getvalue() + str(e) + "\n"
    except SystemExit as e:  # --help lands here
        return int(e.code or 0), cap_out.getvalue(), cap_err.getvalue()
    try:
        code, out = args.handler(args, stdin_text)
        return code, out, ""
    except DocumentError as e:
        return 2, "", f"parse error: {e}\n"
    except LiepsError as e:
        return 1, "", f"error: {e}\n"


def main():
    code, out, err = run_cli(sys.argv[1:])
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
