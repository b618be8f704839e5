"""Text formats for field elements, polynomials and code files.

A code file::

    # comment
    code n=4 k=2
    field p=2 h=1
    1 0 1 e
    0 1 e e^2

A cyclic spec::

    cyclic n=43 g="x^7+e*x^5+x^4+x^3+e^2*x^2+1" dual delete=61..73
    field p=3 h=1 mod2="x^2-x-1"

Element tokens are expressions in ``e`` (root of mod2), ``w`` (root of
mod1, only when h > 1) and integers, e.g. ``0``, ``2``, ``e^5``, ``1+2*e``.
Juxtaposition multiplies, so ``e^2x^2`` is accepted inside polynomials.
"""
from __future__ import annotations

import re
import shlex
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .gf import GF, FieldError


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


# ---------------------------------------------------------------------------
# expressions: sparse polynomials in (x, w, e) with integer coefficients

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-zA-Z])|(\^)|(\*)|(\+)|(-)|(\()|(\)))")
_VARS = {"x": 0, "w": 1, "e": 2}

Poly = dict  # {(dx, dw, de): int}


def _padd(a: Poly, b: Poly, sign: int = 1) -> Poly:
    out = defaultdict(int, a)
    for k, v in b.items():
        out[k] += sign * v
    return {k: v for k, v in out.items() if v}


def _pmul(a: Poly, b: Poly) -> Poly:
    out: dict = defaultdict(int)
    for ka, va in a.items():
        for kb, vb in b.items():
            out[tuple(x + y for x, y in zip(ka, kb))] += va * vb
    return {k: v for k, v in out.items() if v}


def _tokenize(text: str) -> list[str]:
    pos, toks = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad token {text[pos:]!r} in {text!r}")
        toks.append(m.group(m.lastindex).lower() if m.lastindex == 2 else m.group(m.lastindex))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Poly:
        if not self.toks:
            raise ParseError(f"empty expression {self.text!r}")
        p = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r} in {self.text!r}")
        return p

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        acc = _padd({}, self.term(), sign)
        while self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
            acc = _padd(acc, self.term(), sign)
        return acc

    def term(self) -> Poly:
        acc = self.factor()
        while True:
            t = self.peek()
            if t == "*":
                self.take()
                acc = _pmul(acc, self.factor())
            elif t is not None and (t.isdigit() or t in _VARS or t == "("):
                acc = _pmul(acc, self.factor())
            else:
                return acc

    def factor(self) -> Poly:
        t = self.take()
        if t is None:
            raise ParseError(f"truncated expression {self.text!r}")
        if t.isdigit():
            base = {(0, 0, 0): int(t)} if int(t) else {}
        elif t in _VARS:
            key = [0, 0, 0]
            key[_VARS[t]] = 1
            base = {tuple(key): 1}
        elif t == "(":
            base = self.expr()
            if self.take() != ")":
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
        else:
            raise ParseError(f"unexpected {t!r} in {self.text!r}")
        if self.peek() == "^":
            self.take()
            ex = self.take()
            if ex is None or not ex.isdigit():
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            out: Poly = {(0, 0, 0): 1}
            for _ in range(int(ex)):
                out = _pmul(out, base)
            base = out
        return base


def parse_expr(text: str) -> Poly:
    return _Parser(text).parse()


def _eval_monomials(F: GF, terms: dict) -> int:
    """Evaluate {(dw, de): int} in F."""
    acc = 0
    w = F.p if F.h > 1 else None
    for (dw, de), c in terms.items():
        if dw and w is None:
            raise ParseError("symbol 'w' only exists when h > 1")
        v = F.from_int(c)
        if dw:
            v = F.mul(v, F.pow(w, dw))
        if de:
            v = F.mul(v, F.pow(F.e, de))
        acc = F.add(acc, v)
    return int(acc)


def parse_element(text: str, F: GF) -> int:
    poly = parse_expr(text)
    if any(k[0] for k in poly):
        raise ParseError(f"element {text!r} may not contain x")
    return _eval_monomials(F, {k[1:]: v for k, v in poly.items()})


def parse_poly(text: str, F: GF) -> list[int]:
    """Polynomial in x over F, coefficient codes with the constant term first."""
    poly = parse_expr(text)
    by_deg: dict = defaultdict(dict)
    for (dx, dw, de), c in poly.items():
        by_deg[dx][(dw, de)] = c
    deg = max(by_deg) if by_deg else 0
    coeffs = [_eval_monomials(F, by_deg.get(d, {})) for d in range(deg + 1)]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _subfield_poly(text: str, p: int, h: int, mod_q: list[int] | None) -> list[int]:
    """Polynomial in x with F_q coefficients, before the full field exists."""
    from .gf import _polymod_p

    poly = parse_expr(text)
    if any(k[2] for k in poly):
        raise ParseError(f"modulus {text!r} may not mention e")
    deg = max((k[0] for k in poly), default=0)
    out = []
    for d in range(deg + 1):
        wpoly = [0] * (max((k[1] for k in poly if k[0] == d), default=0) + 1)
        for (dx, dw, _), c in poly.items():
            if dx == d:
                wpoly[dw] += c
        if h == 1:
            if len(wpoly) > 1 and any(wpoly[1:]):
                raise ParseError("symbol 'w' only exists when h > 1")
            out.append(wpoly[0] % p)
        else:
            r = _polymod_p(wpoly, mod_q, p) if len(wpoly) > h else [c % p for c in wpoly]
            out.append(sum((c % p) * p**i for i, c in enumerate(r)))
    return out


def field_from_params(params: dict) -> GF:
    try:
        p = int(params["p"])
        h = int(params.get("h", 1))
    except (KeyError, ValueError) as exc:
        raise ParseError(f"field line needs integer p (and optional h): {exc}")
    mod_q = mod_q2 = None
    if "mod1" in params:
        mod_q = [c % p for c in _subfield_poly(params["mod1"], p, 1, None)]
    if "mod2" in params:
        if h > 1 and mod_q is None:
            raise ParseError("mod2 with h > 1 needs an explicit mod1")
        mod_q2 = _subfield_poly(params["mod2"], p, h, mod_q)
        if len(mod_q2) != 3:
            raise ParseError(f"mod2 must be quadratic, got {params['mod2']!r}")
        if mod_q2[-1] != 1:
            # normalise to monic; the subfield tables do not depend on mod2
            tmp = GF(p, h, mod_q, None)
            inv_lead = int(tmp.inv(mod_q2[-1]))
            mod_q2 = [int(tmp.mul(c, inv_lead)) for c in mod_q2]
    try:
        return GF(p, h, mod_q, mod_q2)
    except FieldError as exc:
        raise ParseError(str(exc))


def format_field(F: GF) -> str:
    parts = [f"field p={F.p} h={F.h}"]
    if F.h > 1:
        parts.append(f'mod1="{_format_poly_p(F.mod_q)}"')
    mod2 = " + ".join(
        t
        for t in (
            "x^2",
            _coef_term(F, F.mod_q2[1], "x"),
            _coef_term(F, F.mod_q2[0], ""),
        )
        if t
    )
    parts.append(f'mod2="{mod2.replace(" ", "")}"')
    return " ".join(parts)


def _coef_term(F: GF, c: int, var: str) -> str:
    if c == 0:
        return ""
    s = F.format_subfield(c)
    if not var:
        return s if "+" not in s else f"({s})"
    if s == "1":
        return var
    return f"{s}*{var}" if "+" not in s else f"({s})*{var}"


def _format_poly_p(f) -> str:
    terms = []
    for d in range(len(f) - 1, -1, -1):
        c = f[d]
        if not c:
            continue
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        terms.append(str(c) if not mono else (mono if c == 1 else f"{c}*{mono}"))
    return "+".join(terms)


def format_poly(F: GF, coeffs) -> str:
    terms = []
    for d in range(len(coeffs) - 1, -1, -1):
        c = int(coeffs[d])
        if not c:
            continue
        s = F.format(c)
        mono = "" if d == 0 else ("x" if d == 1 else f"x^{d}")
        if not mono:
            terms.append(s if "+" not in s else f"({s})")
        elif s == "1":
            terms.append(mono)
        else:
            terms.append(f"{s}*{mono}" if "+" not in s else f"({s})*{mono}")
    return "+".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# files


def _split_header(line: str, lineno: int) -> tuple[str, dict]:
    try:
        parts = shlex.split(line)
    except ValueError as exc:
        raise ParseError(str(exc), lineno)
    kind, params = parts[0], {}
    for tok in parts[1:]:
        if "=" in tok:
            k, v = tok.split("=", 1)
            params[k] = v
        else:
            params[tok] = True
    return kind, params


@dataclass
class CodeSource:
    """What a file describes: an explicit generator or a cyclic construction."""

    field: GF
    kind: str  # "code" | "cyclic"
    rows: np.ndarray | None = None
    n: int = 0
    g: list[int] | None = None
    dual: bool = False
    delete: tuple[int, int] | None = None
    meta: dict = dc_field(default_factory=dict)

    def build(self):
        from .code import LinearCode, cyclic_code

        if self.kind == "code":
            return LinearCode.from_generator(self.field, self.rows)
        C = cyclic_code(self.field, self.n, self.g)
        if self.dual:
            C = C.dual()
        if self.delete is not None:
            a, b = self.delete
            C = C.delete_coordinates(range(a - 1, b))
        return C


def _parse_range(text: str, lineno: int) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)\.\.(\d+)", str(text))
    if not m:
        raise ParseError(f"range must look like a..b, got {text!r}", lineno)
    return int(m.group(1)), int(m.group(2))


def parse_code_text(text: str) -> CodeSource:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))
    if len(lines) < 2:
        raise ParseError("need a header line and a field line", lines[0][0] if lines else 1)
    (hl, header), (fl, fline) = lines[0], lines[1]
    kind, params = _split_header(header, hl)
    fkind, fparams = _split_header(fline, fl)
    if fkind != "field":
        raise ParseError(f"expected a 'field' line, got {fkind!r}", fl)
    try:
        F = field_from_params(fparams)
    except ParseError as exc:
        raise ParseError(str(exc), fl)

    if kind == "code":
        try:
            n, k = int(params["n"]), int(params["k"])
        except (KeyError, ValueError):
            raise ParseError("code header needs integer n= and k=", hl)
        body = lines[2:]
        if len(body) != k:
            raise ParseError(f"expected {k} generator rows, found {len(body)}", hl)
        rows = np.zeros((k, n), dtype=np.int64)
        for r, (ln, line) in enumerate(body):
            toks = line.split()
            if len(toks) != n:
                raise ParseError(f"expected {n} entries, found {len(toks)}", ln)
            for c, tok in enumerate(toks):
                try:
                    rows[r, c] = parse_element(tok, F)
                except ParseError as exc:
                    raise ParseError(f"bad element token {tok!r}: {exc}", ln)
        return CodeSource(F, "code", rows=rows, n=n)

    if kind == "cyclic":
        try:
            n = int(params["n"])
            g = parse_poly(params["g"], F)
        except KeyError:
            raise ParseError("cyclic header needs n= and g=", hl)
        except ParseError as exc:
            raise ParseError(str(exc), hl)
        delete = _parse_range(params["delete"], hl) if "delete" in params else None
        if delete and not (1 <= delete[0] <= delete[1] <= n):
            raise ParseError(f"delete range {delete} outside 1..{n}", hl)
        if len(lines) > 2:
            raise ParseError("cyclic files carry no generator rows", lines[2][0])
        return CodeSource(F, "cyclic", n=n, g=g, dual=bool(params.get("dual")), delete=delete)

    raise ParseError(f"unknown header {kind!r} (expected 'code' or 'cyclic')", hl)


def load_code(path) -> CodeSource:
    return parse_code_text(Path(path).read_text())


def format_code(C, comment: str | None = None) -> str:
    F = C.field
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"code n={C.n} k={C.k}")
    out.append(format_field(F))
    for row in C.gen:
        out.append(" ".join(F.format(int(v)) for v in row))
    return "\n".join(out) + "\n"


def save_code(C, path, comment: str | None = None) -> None:
    Path(path).write_text(format_code(C, comment))
