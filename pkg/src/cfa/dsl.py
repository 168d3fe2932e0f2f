"""Text format for algebras, modules, cocycles and Lie algebras.

::

    # comments run to end of line
    lie sl2 { even e, f, h; [e f] = h; [h e] = 2 e; [h f] = -2 f; }
    algebra vir { even L; [L 0 L] = d^1 L; [L 1 L] = 2 L; }
    module M over vir { let a = 1/2; even v; <L 0 v> = d v + a v; <L 1 v> = 2 v; }
    cocycle over vir { [L 3 L] = 1; }

A term is ``[coef] [*] [d[^k]] NAME``; coefficients are rationals, ``i``,
``2i``, ``(1/2-3i)`` or ``let`` names.  Products are given one way round and
the other direction is derived from skew-symmetry; both directions may be
given and are then cross-checked.  ``algebra NAME raw { ... }`` switches the
completion off.  ``relation d X = t X;`` declares ``d X = t X``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import ConformalSuperalgebra, MirrorMismatch, complete_mirror
from .builtins import BuiltinError, builtin_algebra
from .cohomology import CocycleError, TwoCocycle
from .lie import LieDataError, LieSuperalgebraData
from .modules import ConformalModule, ModuleError
from .scalars import ONE, ZERO, Gaussian, as_scalar, parse_scalar

__all__ = [
    "DslError",
    "Document",
    "parse",
    "parse_algebra",
    "parse_module",
    "parse_cocycle",
    "parse_lie",
    "emit_algebra",
    "emit_module",
    "emit_cocycle",
    "emit_lie",
    "emit_scalar",
]

MAX_INDEX = 64
MAX_DIGITS = 60
RESERVED = {"d", "i", "even", "odd", "let", "relation", "form", "over", "raw",
            "algebra", "module", "cocycle", "lie"}


class DslError(ValueError):
    def __init__(self, message, line=None, col=None):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(where + message)


_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>(?:\#|//)[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<num>[0-9]+)
  | (?P<punct>[\[\]{}<>=;,+\-*/^():])
""", re.VERBOSE)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text):
    if not isinstance(text, str):
        raise DslError("source must be text")
    toks = []
    pos, line, lstart = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DslError(f"unexpected character {text[pos]!r}", line, pos - lstart + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            lstart = m.end()
        elif kind not in ("ws", "comment"):
            t = m.group()
            if kind == "num" and len(t) > MAX_DIGITS:
                raise DslError("number too long", line, pos - lstart + 1)
            toks.append(Tok(kind, t, line, pos - lstart + 1))
        pos = m.end()
    toks.append(Tok("eof", "", line, pos - lstart + 1))
    return toks


@dataclass
class Document:
    algebras: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    lies: dict = field(default_factory=dict)
    cocycles: list = field(default_factory=list)
    order: list = field(default_factory=list)


class _Parser:
    def __init__(self, text, env=None):
        self.toks = tokenize(text)
        self.k = 0
        self.doc = Document()
        env = env or {}
        self.ext_algebras = dict(env.get("algebras", {}))
        self.ext_lies = dict(env.get("lies", {}))

    # -- token helpers ---------------------------------------------------
    @property
    def tok(self):
        return self.toks[self.k]

    def peek(self, off=1):
        return self.toks[min(self.k + off, len(self.toks) - 1)]

    def err(self, msg, tok=None):
        tok = tok or self.tok
        return DslError(msg, tok.line, tok.col)

    def next(self):
        t = self.tok
        if t.kind != "eof":
            self.k += 1
        return t

    def at(self, text):
        return self.tok.kind in ("punct", "name") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.err(f"expected {text!r}, found {found!r}")
        return self.next()

    def name(self, what="name"):
        t = self.tok
        if t.kind != "name":
            raise self.err(f"expected {what}, found {t.text or 'end of input'!r}")
        return self.next()

    def integer(self, what="integer"):
        t = self.tok
        if t.kind != "num":
            raise self.err(f"expected {what}, found {t.text or 'end of input'!r}")
        v = int(t.text)
        if v > MAX_INDEX:
            raise self.err(f"{what} {v} exceeds the limit {MAX_INDEX}")
        self.next()
        return v

    # -- top level -------------------------------------------------------
    def parse(self):
        while self.tok.kind != "eof":
            t = self.tok
            if t.kind != "name":
                raise self.err(f"expected a declaration, found {t.text!r}")
            kw = t.text
            if kw == "algebra":
                self.algebra()
            elif kw == "module":
                self.module()
            elif kw == "cocycle":
                self.cocycle()
            elif kw == "lie":
                self.lie()
            else:
                raise self.err(f"unknown declaration {kw!r}")
        return self.doc

    def _new_name(self, table, kind):
        t = self.name(f"{kind} name")
        if t.text in RESERVED:
            raise self.err(f"{t.text!r} is reserved", t)
        if t.text in table:
            raise self.err(f"duplicate {kind} {t.text!r}", t)
        return t

    # -- shared pieces -----------------------------------------------------
    def declare(self, basis, index, lets):
        parity = 0 if self.next().text == "even" else 1
        while True:
            t = self.name("generator name")
            if t.text in RESERVED:
                raise self.err(f"{t.text!r} is reserved", t)
            if t.text in index or t.text in lets:
                raise self.err(f"duplicate name {t.text!r}", t)
            index[t.text] = len(basis)
            basis.append((t.text, parity))
            if self.at(","):
                self.next()
                continue
            break
        self.expect(";")

    def let(self, lets, index):
        self.next()
        t = self.name("constant name")
        if t.text in RESERVED or t.text in lets or t.text in index:
            raise self.err(f"cannot define {t.text!r}", t)
        self.expect("=")
        lets[t.text] = self.scalar_expr(lets)
        self.expect(";")

    def coef(self, lets):
        """A coefficient at the cursor, or None."""
        t = self.tok
        if self.at("("):
            start = self.k
            self.next()
            depth_text = []
            while not self.at(")"):
                if self.tok.kind == "eof":
                    raise self.err("unclosed '('", t)
                if self.tok.kind == "name" and self.tok.text != "i":
                    raise self.err(f"malformed coefficient near {self.tok.text!r}")
                depth_text.append(self.next().text)
            self.next()
            try:
                v = parse_scalar("".join(depth_text))
            except (ValueError, ZeroDivisionError):
                raise self.err("malformed coefficient", self.toks[start]) from None
            return self._imag_suffix(v)
        if t.kind == "num":
            v = as_scalar(int(self.next().text))
            if self.at("/"):
                self.next()
                d = self.tok
                if d.kind != "num":
                    raise self.err("malformed coefficient: expected denominator")
                self.next()
                if int(d.text) == 0:
                    raise self.err("malformed coefficient: zero denominator", d)
                v = v / int(d.text)
            return self._imag_suffix(v)
        if t.kind == "name" and t.text == "i":
            self.next()
            return Gaussian(ZERO, ONE)
        if t.kind == "name" and t.text in lets:
            self.next()
            return lets[t.text]
        return None

    def _imag_suffix(self, v):
        if self.at("i"):
            self.next()
            return v * Gaussian(ZERO, ONE)
        return v

    def scalar_expr(self, lets):
        total = ZERO
        first = True
        while True:
            sign = ONE
            if self.at("+") or self.at("-"):
                sign = -ONE if self.next().text == "-" else ONE
            elif not first:
                break
            c = self.coef(lets)
            if c is None:
                raise self.err("malformed coefficient")
            total = total + sign * c
            first = False
        return as_scalar(total)

    def vec_expr(self, index, lets, what):
        """``0`` or a sum of terms; returns {(gen, power): coeff}."""
        if self.tok.kind == "num" and self.tok.text == "0" and self.peek().text in (";", ">"):
            self.next()
            return {}
        out = {}
        first = True
        while True:
            sign = ONE
            if self.at("+") or self.at("-"):
                sign = -ONE if self.next().text == "-" else ONE
            elif not first:
                break
            c = self.coef(lets)
            if c is None:
                c = ONE
            if self.at("*"):
                self.next()
            power = 0
            if self.at("d") and (self.peek().text == "^" or self.peek().kind == "name"):
                self.next()
                power = 1
                if self.at("^"):
                    self.next()
                    power = self.integer("power of d")
            g = self.tok
            if g.kind != "name":
                raise self.err(f"expected {what} name, found {g.text or 'end of input'!r}")
            if g.text not in index:
                raise self.err(f"undefined {what} {g.text!r}", g)
            self.next()
            key = (index[g.text], power)
            v = out.get(key, ZERO) + sign * c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
            first = False
        return out

    def relation(self, index, lets, torsion, what):
        start = self.next()
        self.expect("d")
        g = self.name(f"{what} name")
        if g.text not in index:
            raise self.err(f"undefined {what} {g.text!r}", g)
        gi = index[g.text]
        self.expect("=")
        rhs = self.vec_expr(index, lets, what)
        self.expect(";")
        if any(k != (gi, 0) for k in rhs):
            raise self.err(f"relation must have the form d {g.text} = t {g.text}", start)
        if gi in torsion:
            raise self.err(f"duplicate relation for {g.text!r}", start)
        torsion[gi] = rhs.get((gi, 0), ZERO)

    def resolve_algebra(self):
        t = self.name("algebra")
        spec = t.text
        if self.at(":"):
            self.next()
            a = self.tok
            if a.kind not in ("name", "num"):
                raise self.err("expected builtin argument")
            self.next()
            spec = f"{spec}:{a.text}"
        if spec in self.doc.algebras:
            return self.doc.algebras[spec]
        if spec in self.ext_algebras:
            return self.ext_algebras[spec]
        lies = dict(self.ext_lies)
        lies.update(self.doc.lies)
        try:
            return builtin_algebra(spec, lies)
        except BuiltinError as exc:
            raise self.err(f"unknown algebra {spec!r} ({exc})", t) from None

    # -- declarations ----------------------------------------------------
    def algebra(self):
        head = self.next()
        nt = self._new_name(self.doc.algebras, "algebra")
        raw = False
        if self.at("raw"):
            self.next()
            raw = True
        self.expect("{")
        gens, index, lets, torsion, prods = [], {}, {}, {}, {}
        where = {}
        while not self.at("}"):
            t = self.tok
            if t.kind == "eof":
                raise self.err("unclosed '{'", head)
            if self.at("even") or self.at("odd"):
                self.declare(gens, index, lets)
            elif self.at("let"):
                self.let(lets, index)
            elif self.at("relation"):
                self.relation(index, lets, torsion, "generator")
            elif self.at("["):
                self.next()
                a = self.gen_ref(index, "generator")
                n = self.integer("product index")
                b = self.gen_ref(index, "generator")
                self.expect("]")
                self.expect("=")
                key = (a, b, n)
                if key in prods:
                    raise self.err(f"duplicate product line [{gens[a][0]} {n} {gens[b][0]}]", t)
                prods[key] = self.vec_expr(index, lets, "generator")
                where[(a, b)] = t
                self.expect(";")
            else:
                raise self.err(f"unexpected {t.text!r} in algebra body")
        self.next()
        try:
            table = prods if raw else complete_mirror(gens, prods, torsion)
            R = ConformalSuperalgebra(gens, table, torsion, name=nt.text)
        except MirrorMismatch as exc:
            a, b, n = exc.mismatches[0]
            tok = where.get((index[a], index[b])) or where.get((index[b], index[a])) or head
            raise DslError(str(exc), tok.line, tok.col) from None
        except ValueError as exc:
            raise DslError(str(exc), head.line, head.col) from None
        self.doc.algebras[nt.text] = R
        self.doc.order.append(("algebra", nt.text))

    def gen_ref(self, index, what):
        t = self.name(f"{what} name")
        if t.text not in index:
            raise self.err(f"undefined {what} {t.text!r}", t)
        return index[t.text]

    def module(self):
        head = self.next()
        nt = self._new_name(self.doc.modules, "module")
        self.expect("over")
        R = self.resolve_algebra()
        self.expect("{")
        basis, index, lets, torsion, act = [], {}, {}, {}, {}
        while not self.at("}"):
            t = self.tok
            if t.kind == "eof":
                raise self.err("unclosed '{'", head)
            if self.at("even") or self.at("odd"):
                self.declare(basis, index, lets)
            elif self.at("let"):
                self.let(lets, index)
            elif self.at("relation"):
                self.relation(index, lets, torsion, "basis vector")
            elif self.at("<"):
                self.next()
                g = self.name("algebra generator")
                if g.text not in R.index:
                    raise self.err(f"unknown algebra generator {g.text!r}", g)
                n = self.integer("action index")
                v = self.gen_ref(index, "basis vector")
                self.expect(">")
                self.expect("=")
                key = (R.index[g.text], v, n)
                if key in act:
                    raise self.err("duplicate action line", t)
                act[key] = self.vec_expr(index, lets, "basis vector")
                self.expect(";")
            else:
                raise self.err(f"unexpected {t.text!r} in module body")
        self.next()
        try:
            M = ConformalModule(R, basis, act, torsion, name=nt.text)
        except ValueError as exc:
            raise DslError(str(exc), head.line, head.col) from None
        self.doc.modules[nt.text] = M
        self.doc.order.append(("module", nt.text))

    def cocycle(self):
        head = self.next()
        if self.tok.kind == "name" and self.tok.text != "over":
            self.next()
        self.expect("over")
        R = self.resolve_algebra()
        self.expect("{")
        lets, vals = {}, {}
        while not self.at("}"):
            t = self.tok
            if t.kind == "eof":
                raise self.err("unclosed '{'", head)
            if self.at("let"):
                self.let(lets, R.index)
            elif self.at("["):
                self.next()
                a = self.gen_ref(R.index, "generator")
                n = self.integer("cocycle index")
                b = self.gen_ref(R.index, "generator")
                self.expect("]")
                self.expect("=")
                if (a, b, n) in vals:
                    raise self.err("duplicate cocycle line", t)
                vals[(a, b, n)] = self.scalar_expr(lets)
                self.expect(";")
            else:
                raise self.err(f"unexpected {t.text!r} in cocycle body")
        self.next()
        try:
            alpha = TwoCocycle(R, vals)
        except (CocycleError, ValueError) as exc:
            raise DslError(str(exc), head.line, head.col) from None
        self.doc.cocycles.append(alpha)
        self.doc.order.append(("cocycle", len(self.doc.cocycles) - 1))

    def lie(self):
        head = self.next()
        nt = self._new_name(self.doc.lies, "Lie algebra")
        self.expect("{")
        basis, index, lets, brackets, form = [], {}, {}, {}, {}
        while not self.at("}"):
            t = self.tok
            if t.kind == "eof":
                raise self.err("unclosed '{'", head)
            if self.at("even") or self.at("odd"):
                self.declare(basis, index, lets)
            elif self.at("let"):
                self.let(lets, index)
            elif self.at("["):
                self.next()
                a = self.gen_ref(index, "basis element")
                b = self.gen_ref(index, "basis element")
                self.expect("]")
                self.expect("=")
                key = (basis[a][0], basis[b][0])
                if key in brackets:
                    raise self.err("duplicate bracket line", t)
                vec = self.vec_expr(index, lets, "basis element")
                if any(p for _, p in vec):
                    raise self.err("d is not allowed in a Lie bracket", t)
                brackets[key] = {basis[k][0]: c for (k, _), c in vec.items()}
                self.expect(";")
            elif self.at("form"):
                self.next()
                a = self.gen_ref(index, "basis element")
                b = self.gen_ref(index, "basis element")
                self.expect("=")
                form[(basis[a][0], basis[b][0])] = self.scalar_expr(lets)
                self.expect(";")
            else:
                raise self.err(f"unexpected {t.text!r} in lie body")
        self.next()
        try:
            g = LieSuperalgebraData(basis, brackets, name=nt.text, form=form or None)
        except (LieDataError, ValueError) as exc:
            raise DslError(str(exc), head.line, head.col) from None
        self.doc.lies[nt.text] = g
        self.doc.order.append(("lie", nt.text))


def parse(text, env=None) -> Document:
    """Parse a whole source file.  ``env`` may hold ``algebras`` and ``lies``."""
    return _Parser(text, env).parse()


def _single(table, kind, name):
    if name is not None:
        if name not in table:
            raise DslError(f"no {kind} named {name!r}")
        return table[name]
    if not table:
        raise DslError(f"no {kind} definition found")
    return list(table.values())[-1]


def parse_algebra(text, name=None, env=None) -> ConformalSuperalgebra:
    """The named (default: last) algebra of ``text``.  An empty body gives the zero algebra."""
    return _single(parse(text, env).algebras, "algebra", name)


def parse_module(text, name=None, env=None) -> ConformalModule:
    return _single(parse(text, env).modules, "module", name)


def parse_lie(text, name=None, env=None) -> LieSuperalgebraData:
    return _single(parse(text, env).lies, "lie", name)


def parse_cocycle(text, env=None) -> TwoCocycle:
    doc = parse(text, env)
    if not doc.cocycles:
        raise DslError("no cocycle definition found")
    return doc.cocycles[-1]


# ---------------------------------------------------------------------------
# emission


def _ident(name):
    s = re.sub(r"[^A-Za-z0-9_]", "_", str(name)) or "R"
    if s[0].isdigit():
        s = "_" + s
    if s in RESERVED:
        s += "_"
    return s


def emit_scalar(c):
    c = as_scalar(c)
    re_, im_ = c.real, c.imag
    if not im_:
        return str(re_)
    parts = []
    if re_:
        parts.append(str(re_))
    parts.append(("+" if im_ > 0 and parts else "") + f"{im_}i")
    return "(" + "".join(parts) + ")"


def _emit_vec(vec, names):
    if not vec:
        return "0"
    out = []
    for (k, e), c in sorted(vec.items()):
        c = as_scalar(c)
        neg = not c.imag and c.real < 0
        mag = -c if neg else c
        s = "" if mag == 1 else emit_scalar(mag) + " "
        d = "" if e == 0 else f"d^{e} "
        term = f"{s}{d}{names[k]}"
        if not out:
            out.append(("-" if neg else "") + term)
        else:
            out.append(("- " if neg else "+ ") + term)
    return " ".join(out)


def _decls(basis):
    """One line per run of equal parity, keeping the basis order."""
    lines = []
    run, cur = [], None
    for n, p in list(basis) + [(None, None)]:
        if p != cur and run:
            lines.append(f"  {'odd' if cur else 'even'} {', '.join(run)};")
            run = []
        cur = p
        if n is not None:
            run.append(n)
    return lines


def _mirror_closed(R):
    half = {k: v for k, v in R.table.items() if k[0] <= k[1]}
    for (i, j, _) in R.table:
        half.setdefault((min(i, j), max(i, j), 0), {})
    try:
        full = complete_mirror(R.generators, half, R.torsion)
    except MirrorMismatch:
        return False
    return {k: v for k, v in full.items() if v} == R.table


def emit_algebra(R: ConformalSuperalgebra, raw=False, name=None) -> str:
    """DSL text.  Without ``raw`` only pairs i <= j are written; tables that
    are not skew-consistent are always written raw."""
    names = R.names
    raw = raw or not _mirror_closed(R)
    lines = [f"algebra {_ident(name or R.name)}{' raw' if raw else ''} {{"]
    lines += _decls(R.generators)
    for g, t in sorted(R.torsion.items()):
        rhs = "0" if not t else f"{emit_scalar(t)} {names[g]}"
        lines.append(f"  relation d {names[g]} = {rhs};")
    for (i, j, n), vec in sorted(R.table.items()):
        if raw or i <= j:
            lines.append(f"  [{names[i]} {n} {names[j]}] = {_emit_vec(vec, names)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_module(M: ConformalModule, algebra_name=None, include_algebra=True) -> str:
    R = M.algebra
    aname = _ident(algebra_name or R.name)
    parts = [emit_algebra(R, raw=True, name=aname)] if include_algebra else []
    lines = [f"module {_ident(M.name)} over {aname} {{"]
    lines += _decls(M.basis)
    for b, t in sorted(M.torsion.items()):
        rhs = "0" if not t else f"{emit_scalar(t)} {M.names[b]}"
        lines.append(f"  relation d {M.names[b]} = {rhs};")
    for (i, b, n), vec in sorted(M.table.items()):
        lines.append(f"  <{R.names[i]} {n} {M.names[b]}> = {_emit_vec(vec, M.names)};")
    lines.append("}")
    parts.append("\n".join(lines) + "\n")
    return "\n".join(parts)


def emit_cocycle(alpha: TwoCocycle, algebra_name=None) -> str:
    R = alpha.algebra
    lines = [f"cocycle over {_ident(algebra_name or R.name)} {{"]
    for (i, j, n), v in sorted(alpha.values.items()):
        lines.append(f"  [{R.names[i]} {n} {R.names[j]}] = {emit_scalar(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def emit_lie(g: LieSuperalgebraData) -> str:
    lines = [f"lie {_ident(g.name)} {{"]
    lines += _decls(g.basis)
    for (i, j), vec in sorted(g.table.items()):
        if i <= j:
            lines.append(f"  [{g.names[i]} {g.names[j]}] = "
                         f"{_emit_vec({(k, 0): c for k, c in vec.items()}, g.names)};")
    if g.form:
        for (i, j), v in sorted(g.form.items()):
            lines.append(f"  form {g.names[i]} {g.names[j]} = {emit_scalar(v)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
