"""Exact base arithmetic: Gaussian rationals, polynomials in d, Grassmann algebras.

Scalars live in Q(i).  A real scalar is a plain ``gmpy2.mpq``; a scalar with a
nonzero imaginary part is a :class:`Gaussian`.  Arithmetic between the two is
closed and results collapse back to ``mpq`` whenever the imaginary part
vanishes, so the common (real) case stays on the fast gmpy2 path.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import zip_longest
from math import comb

from gmpy2 import mpq

__all__ = [
    "Gaussian",
    "I",
    "ZERO",
    "ONE",
    "as_scalar",
    "is_scalar",
    "scalar_str",
    "parse_scalar",
    "DPoly",
    "GrassmannElement",
    "gr_mul",
    "gr_derive",
    "dpoly_arith",
    "mono_mul",
    "mono_derive",
    "DimensionError",
]

ZERO = mpq(0)
ONE = mpq(1)


class DimensionError(ValueError):
    """Operands live in incompatible spaces."""


class Gaussian:
    """A Gaussian rational ``re + i*im`` with ``im != 0``.

    Use :func:`as_scalar` or arithmetic to build values; the constructor does
    not collapse real values.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = mpq(re)
        self.im = mpq(im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"

    def __str__(self):
        return scalar_str(self)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, Gaussian):
            return self.re == other.re and self.im == other.im
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        if isinstance(other, Gaussian):
            return self == other
        return self.im == 0 and self.re == other

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, Gaussian):
            return _make(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, type(ZERO))):
            return Gaussian(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Gaussian):
            return _make(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, type(ZERO))):
            return Gaussian(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, type(ZERO))):
            return Gaussian(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Gaussian):
            return _make(self.re * other.re - self.im * other.im,
                         self.re * other.im + self.im * other.re)
        if isinstance(other, (int, type(ZERO))):
            if not other:
                return ZERO
            return Gaussian(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Gaussian):
            n = other.re * other.re + other.im * other.im
            return _make((self.re * other.re + self.im * other.im) / n,
                         (self.im * other.re - self.re * other.im) / n)
        if isinstance(other, (int, type(ZERO))):
            return Gaussian(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, type(ZERO))):
            n = self.re * self.re + self.im * self.im
            return _make(other * self.re / n, -other * self.im / n)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return ONE / (self ** -k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def _make(re, im):
    if im:
        return Gaussian(re, im)
    return re


I = Gaussian(0, 1)

_MPQ = type(ZERO)


def is_scalar(x) -> bool:
    return isinstance(x, (_MPQ, Gaussian))


def as_scalar(x):
    """Convert ints, Fractions, mpq, strings and exact complex pairs to a scalar."""
    if isinstance(x, _MPQ):
        return x
    if isinstance(x, Gaussian):
        return _make(x.re, x.im)
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, tuple) and len(x) == 2:
        return _make(as_scalar(x[0]), as_scalar(x[1]))
    if isinstance(x, complex):
        raise TypeError("floating complex numbers are not exact scalars")
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def _q_str(q) -> str:
    return f"{q.numerator}/{q.denominator}"


def scalar_str(x, canonical=False) -> str:
    """Human readable form (``-3/2``, ``1/2+i``, ``-2i``).

    ``canonical=True`` always writes ``p/q`` components.
    """
    x = as_scalar(x)
    re_, im_ = x.real, x.imag
    if canonical:
        return f"{_q_str(re_)}{'+' if im_ >= 0 else '-'}{_q_str(abs(im_))}i"
    if not im_:
        return str(re_)
    if im_ == 1:
        ims = "i"
    elif im_ == -1:
        ims = "-i"
    else:
        ims = f"{im_}i"
    if not re_:
        return ims
    return f"{re_}{'' if ims.startswith('-') else '+'}{ims}"


_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*(\*?\s*i)?\s*")


def parse_scalar(text: str):
    """Parse ``3``, ``-1/2``, ``i``, ``-2i``, ``1/2+3/4i``, ``(1-i)``."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    pos, re_part, im_part, nterms = 0, ZERO, ZERO, 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        sign, num, imag = m.groups()
        if m.end() == pos or (num is None and imag is None) or (nterms and sign is None):
            raise ValueError(f"malformed scalar {text!r}")
        if num is not None and "/" in num and int(num.split("/")[1]) == 0:
            raise ValueError(f"zero denominator in {text!r}")
        v = mpq(num) if num is not None else ONE
        if sign == "-":
            v = -v
        if imag:
            im_part += v
        else:
            re_part += v
        nterms += 1
        pos = m.end()
    if not nterms:
        raise ValueError(f"malformed scalar {text!r}")
    return _make(re_part, im_part)


# ---------------------------------------------------------------------------
# Polynomials in d


class DPoly:
    """Polynomial in the formal symbol d with scalar coefficients.

    ``coeffs[k]`` is the coefficient of ``d**k``; trailing zeros are stripped.
    The zero polynomial has degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, cs):
        cs = list(cs)
        while cs and not cs[-1]:
            cs.pop()
        p = cls.__new__(cls)
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def monomial(cls, k, c=ONE):
        return cls._raw([ZERO] * k + [as_scalar(c)])

    @classmethod
    def const(cls, c):
        return cls._raw([as_scalar(c)])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, DPoly):
            return self.coeffs == other.coeffs
        if is_scalar(other) or isinstance(other, int):
            return self.coeffs == DPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"DPoly({[scalar_str(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mon = "" if k == 0 else ("d" if k == 1 else f"d^{k}")
            cs = scalar_str(c)
            if isinstance(c, Gaussian) and c.re and k:
                cs = f"({cs})"
            if mon and cs == "1":
                parts.append(mon)
            elif mon and cs == "-1":
                parts.append("-" + mon)
            else:
                parts.append(cs + ("*" + mon if mon else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return ZERO

    def __add__(self, other):
        other = _as_dpoly(other)
        return DPoly._raw(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=ZERO))

    __radd__ = __add__

    def __neg__(self):
        return DPoly._raw(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_dpoly(other))

    def __rsub__(self, other):
        return _as_dpoly(other) - self

    def __mul__(self, other):
        if not isinstance(other, DPoly):
            c = as_scalar(other)
            return DPoly._raw(c * a for a in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return DPoly()
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] += a * b
        return DPoly._raw(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = DPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other):
        other = _as_dpoly(other)
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(other.coeffs) - 1
        inv = ONE / other.coeffs[-1]
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if not c:
                continue
            f = c * inv
            quot[k - dq] = f
            for j, b in enumerate(other.coeffs):
                if b:
                    rem[k - dq + j] -= f * b
        return DPoly._raw(quot), DPoly._raw(rem[:dq] if dq else [])

    def __divmod__(self, other):
        return self.divmod(other)

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self):
        if not self.coeffs:
            return self
        return self * (ONE / self.coeffs[-1])

    def __call__(self, x):
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift(self, c):
        """Return p(d + c)."""
        c = as_scalar(c)
        out = [ZERO] * len(self.coeffs)
        for k, a in enumerate(self.coeffs):
            if not a:
                continue
            cp = ONE
            for r in range(k, -1, -1):
                out[r] += a * comb(k, r) * cp
                cp = cp * c
        return DPoly._raw(out)

    def derivative(self):
        return DPoly._raw(k * c for k, c in enumerate(self.coeffs) if k)


def _as_dpoly(x) -> DPoly:
    if isinstance(x, DPoly):
        return x
    return DPoly.const(x)


def dpoly_gcd(p: DPoly, q: DPoly) -> DPoly:
    while q:
        p, q = q, p % q
    return p.monic()


def dpoly_xgcd(p: DPoly, q: DPoly):
    """Return ``(g, s, t)`` with ``s*p + t*q == g`` and ``g`` monic (or zero)."""
    r0, r1 = p, q
    s0, s1 = DPoly.const(1), DPoly()
    t0, t1 = DPoly(), DPoly.const(1)
    while r1:
        qt, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qt * s1
        t0, t1 = t1, t0 - qt * t1
    if r0:
        inv = ONE / r0.lead()
        return r0 * inv, s0 * inv, t0 * inv
    return r0, s0, t0


def dpoly_arith(p: DPoly, q: DPoly, kind: str):
    if kind == "add":
        return p + q
    if kind == "mul":
        return p * q
    if kind == "divmod":
        return p.divmod(q)
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# Grassmann algebra.  Monomials are bitmasks: bit (i-1) set <=> xi_i present.


def mono_mul(a: int, b: int):
    """Product of two monomials: ``(sign, mask)`` or ``None`` if it vanishes."""
    if a & b:
        return None
    swaps = 0
    bb = b
    while bb:
        low = bb & -bb
        # elements of a above this element of b must pass it
        swaps += bin(a & ~((low << 1) - 1)).count("1")
        bb ^= low
    return (-1 if swaps & 1 else 1), a | b


def mono_derive(i: int, a: int):
    """Left derivative d/dxi_i of a monomial: ``(sign, mask)`` or ``None``."""
    bit = 1 << (i - 1)
    if not a & bit:
        return None
    k = bin(a & (bit - 1)).count("1")
    return (-1 if k & 1 else 1), a ^ bit


def mask_to_tuple(a: int):
    out = []
    i = 1
    while a:
        if a & 1:
            out.append(i)
        a >>= 1
        i += 1
    return tuple(out)


def tuple_to_mask(t) -> int:
    m = 0
    for i in t:
        m |= 1 << (i - 1)
    return m


class GrassmannElement:
    """Element of the Grassmann algebra on ``N`` odd generators xi_1..xi_N.

    ``terms`` maps ascending index tuples to nonzero scalars.
    """

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        out = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if any(not 1 <= i <= N for i in idx):
                raise DimensionError(f"index out of range in {idx} for N={N}")
            sign = 1
            # bubble sort to count transpositions; repeated index kills the term
            lst = list(idx)
            for x in range(len(lst)):
                for y in range(len(lst) - 1 - x):
                    if lst[y] > lst[y + 1]:
                        lst[y], lst[y + 1] = lst[y + 1], lst[y]
                        sign = -sign
            if len(set(lst)) != len(lst):
                continue
            key = tuple(lst)
            c = as_scalar(c) * sign
            out[key] = out.get(key, ZERO) + c
        self.terms = {k: v for k, v in out.items() if v}

    @classmethod
    def xi(cls, N, *indices):
        return cls(N, {tuple(indices): ONE})

    @classmethod
    def one(cls, N):
        return cls(N, {(): ONE})

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return self.N == other.N and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=lambda t: (len(t), t)):
            mon = "".join(f"xi{i}" for i in k) or "1"
            parts.append(f"{scalar_str(self.terms[k])}*{mon}")
        return " + ".join(parts)

    def __add__(self, other):
        _check_n(self, other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return GrassmannElement(self.N, out)

    def __neg__(self):
        return GrassmannElement(self.N, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        return GrassmannElement(self.N, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, GrassmannElement):
            return gr_mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def parity(self):
        """Parity of a homogeneous element (``None`` if mixed, 0 for zero)."""
        ps = {len(k) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0


def _check_n(f, g):
    if f.N != g.N:
        raise DimensionError(f"Grassmann algebras differ: N={f.N} vs N={g.N}")


def gr_mul(f: GrassmannElement, g: GrassmannElement) -> GrassmannElement:
    _check_n(f, g)
    out = {}
    for a, ca in f.terms.items():
        ma = tuple_to_mask(a)
        for b, cb in g.terms.items():
            r = mono_mul(ma, tuple_to_mask(b))
            if r is None:
                continue
            s, m = r
            key = mask_to_tuple(m)
            out[key] = out.get(key, ZERO) + s * ca * cb
    return GrassmannElement(f.N, out)


def gr_derive(i: int, f: GrassmannElement) -> GrassmannElement:
    if not 1 <= i <= f.N:
        raise DimensionError(f"derivative index {i} out of range 1..{f.N}")
    out = {}
    for a, c in f.terms.items():
        r = mono_derive(i, tuple_to_mask(a))
        if r is None:
            continue
        s, m = r
        key = mask_to_tuple(m)
        out[key] = out.get(key, ZERO) + s * c
    return GrassmannElement(f.N, out)
