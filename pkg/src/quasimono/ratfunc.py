"""Normalized multivariate rational functions, substitutions, and the
expression grammar used by fixtures and the CLI.

A :class:`RatFunc` always satisfies gcd(num, den) = 1 with a denominator
whose graded-lex leading coefficient is one, so equality of rational
functions is literal equality of representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IdenticallyZeroDenominator, ParseError, PoleAtPoint, ZeroCoefficient
from .fields import Field, FieldAut, FieldElem
from .polys import MultiPoly, poly_gcd


class RatFunc:
    """num/den over a field tower, in canonical form."""

    __slots__ = ("field", "nvars", "num", "den")

    def __init__(self, num: MultiPoly, den: MultiPoly, _normalized=False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _normalized:
            num, den = _normalize(num, den)
        self.field = num.field
        self.nvars = num.nvars
        self.num = num
        self.den = den

    # ----- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(p: MultiPoly) -> "RatFunc":
        one = MultiPoly.const(p.field, p.nvars, 1)
        return RatFunc(p, one, _normalized=not p.is_zero() or True)

    @staticmethod
    def const(field, nvars, c) -> "RatFunc":
        return RatFunc.from_poly(MultiPoly.const(field, nvars, c))

    @staticmethod
    def variable(field, nvars, i) -> "RatFunc":
        return RatFunc.from_poly(MultiPoly.variable(field, nvars, i))

    @staticmethod
    def laurent_monomial(field, nvars, c, exponents) -> "RatFunc":
        """c * prod(x_i^e_i) with negative exponents in the denominator."""
        if not isinstance(c, FieldElem):
            c = field.from_base(field.scalar(c))
        if not c:
            raise ZeroCoefficient("laurent monomial with zero coefficient")
        num_e = tuple(max(e, 0) for e in exponents)
        den_e = tuple(max(-e, 0) for e in exponents)
        num = MultiPoly(field, nvars, {num_e: c})
        den = MultiPoly(field, nvars, {den_e: field.one})
        return RatFunc(num, den)

    # ----- predicates -------------------------------------------------------

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> FieldElem:
        assert self.is_constant()
        if self.num.is_zero():
            return self.field.zero
        return self.num.constant_value() / self.den.constant_value()

    def is_monomial(self):
        """True when this is c * (monomial) / (monomial)."""
        return len(self.num.terms) == 1 and len(self.den.terms) == 1

    def monomial_data(self):
        """(coefficient, integer exponent vector) for a Laurent monomial."""
        assert self.is_monomial()
        (en, cn), = self.num.terms.items()
        (ed, cd), = self.den.terms.items()
        return cn / cd, tuple(a - b for a, b in zip(en, ed))

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.field, self.nvars, other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero()

    # ----- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, (int, FieldElem)):
            return RatFunc.const(self.field, self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _normalized=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division of rational functions by zero")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return other / self

    def __pow__(self, n):
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den ** (-n), self.num ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    # ----- evaluation and substitution ------------------------------------------

    def evaluate(self, point) -> FieldElem:
        """Exact value at a tuple of field elements; raises PoleAtPoint."""
        dval = self.den.evaluate(point)
        if not dval:
            raise PoleAtPoint(f"denominator vanishes at {point}")
        return self.num.evaluate(point) / dval

    def substitute(self, sub: "Substitution") -> "RatFunc":
        return sub.apply(self)

    def map_coeffs(self, func) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(func), self.den.map_coeffs(func))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def _normalize(num: MultiPoly, den: MultiPoly):
    if num.is_zero():
        return num, MultiPoly.const(den.field, den.nvars, 1)
    g = poly_gcd(num, den)
    if not g.is_constant():
        num = num.exact_div(g)
        den = den.exact_div(g)
    _, lc = den.leading()
    if lc != den.field.one:
        inv = den.field.inv(lc)
        num = num.scale(inv)
        den = den.scale(inv)
    return num, den


def rf_arith(f: RatFunc, g: RatFunc, op: str) -> RatFunc:
    if op == "+":
        return f + g
    if op == "-":
        return f - g
    if op == "*":
        return f * g
    if op == "/":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


class RawRat:
    """An unreduced rational pair with a factored denominator and no gcds.

    The denominator is kept as a multiset of polynomial factors, so sums
    use the factor-wise least common multiple and equality tests cancel
    shared factors before cross-multiplying.  Use this for one-shot
    verification of identities whose fully normalized forms would be
    expensive to compute.
    """

    __slots__ = ("num", "_facs")

    def __init__(self, num: MultiPoly, facs=None):
        self.num = num
        self._facs = dict(facs or {})  # MultiPoly (non-constant) -> exponent

    @property
    def den(self) -> MultiPoly:
        out = MultiPoly.const(self.num.field, self.num.nvars, 1)
        for f, e in self._facs.items():
            out = out * f ** e
        return out

    @staticmethod
    def of(f) -> "RawRat":
        if isinstance(f, RawRat):
            return f
        return RawRat.from_pair(f.num, f.den)

    @staticmethod
    def from_pair(num: MultiPoly, den: MultiPoly) -> "RawRat":
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_constant():
            c = den.constant_value()
            if c == den.field.one:
                return RawRat(num)
            return RawRat(num.scale(den.field.inv(c)))
        return RawRat(num, {den: 1})

    @staticmethod
    def const(field, nvars, c) -> "RawRat":
        return RawRat(MultiPoly.const(field, nvars, c))

    @staticmethod
    def variable(field, nvars, i) -> "RawRat":
        return RawRat(MultiPoly.variable(field, nvars, i))

    def is_zero(self):
        return self.num.is_zero()

    def _cofactor(self, lcm):
        out = None
        for f, e in lcm.items():
            k = e - self._facs.get(f, 0)
            if k:
                piece = f ** k
                out = piece if out is None else out * piece
        if out is None:
            return MultiPoly.const(self.num.field, self.num.nvars, 1)
        return out

    def _addsub(self, other, sign):
        lcm = dict(self._facs)
        for f, e in other._facs.items():
            if lcm.get(f, 0) < e:
                lcm[f] = e
        a = self.num * self._cofactor(lcm)
        b = other.num * other._cofactor(lcm)
        return RawRat(a + b if sign > 0 else a - b, lcm)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __neg__(self):
        return RawRat(-self.num, self._facs)

    def __mul__(self, other):
        facs = dict(self._facs)
        for f, e in other._facs.items():
            facs[f] = facs.get(f, 0) + e
        return RawRat(self.num * other.num, facs)

    def __truediv__(self, other):
        if other.num.is_zero():
            raise ZeroDivisionError("division by the zero function")
        facs = dict(self._facs)
        num = self.num * other.den
        if not other.num.is_constant():
            facs[other.num] = facs.get(other.num, 0) + 1
        else:
            num = num.scale(self.num.field.inv(other.num.constant_value()))
        return RawRat(num, facs)

    def __pow__(self, n):
        if n < 0:
            if self.num.is_zero():
                raise ZeroDivisionError("negative power of zero")
            inv = RawRat(self.den)
            if not self.num.is_constant():
                inv._facs[self.num] = 1
            else:
                inv = RawRat(inv.num.scale(self.num.field.inv(
                    self.num.constant_value())))
            return inv ** (-n)
        facs = {f: e * n for f, e in self._facs.items()}
        return RawRat(self.num ** n, facs) if n else RawRat(
            MultiPoly.const(self.num.field, self.num.nvars, 1))

    def equals(self, other) -> bool:
        other = RawRat.of(other)
        # cancel shared denominator factors before cross-multiplying
        mine = dict(self._facs)
        theirs = dict(other._facs)
        for f in list(mine):
            if f in theirs:
                k = min(mine[f], theirs[f])
                mine[f] -= k
                theirs[f] -= k
        a = self.num
        for f, e in theirs.items():
            if e:
                a = a * f ** e
        b = other.num
        for f, e in mine.items():
            if e:
                b = b * f ** e
        return a == b

    def to_ratfunc(self) -> RatFunc:
        return RatFunc(self.num, self.den)


# ----- substitution homomorphisms ---------------------------------------------


@dataclass(frozen=True)
class Substitution:
    """A field automorphism together with per-variable images.

    Applying it to f first maps the coefficients of f through the
    automorphism and then composes with the variable images.
    """

    field_aut: FieldAut
    images: tuple  # RatFunc per variable

    def apply(self, f: RatFunc) -> RatFunc:
        aut = self.field_aut
        num = f.num if aut.is_identity else f.num.map_coeffs(aut)
        den = f.den if aut.is_identity else f.den.map_coeffs(aut)
        field, nvars = f.field, f.nvars
        dmax = tuple(
            max(num.degree_in(i), den.degree_in(i), 0) for i in range(nvars)
        )
        nums = [img.num for img in self.images]
        dens = [img.den for img in self.images]
        top = _compose_poly(num, nums, dens, dmax)
        bot = _compose_poly(den, nums, dens, dmax)
        if bot.is_zero():
            raise IdenticallyZeroDenominator(
                "substitution sends the denominator to zero")
        return RatFunc(top, bot)

    def apply_raw(self, f) -> RawRat:
        """Compose without the final normalization (for claim checking)."""
        aut = self.field_aut
        num, den = f.num, f.den
        if not aut.is_identity:
            num = num.map_coeffs(aut)
            den = den.map_coeffs(aut)
        nvars = num.nvars
        dmax = tuple(
            max(num.degree_in(i), den.degree_in(i), 0) for i in range(nvars)
        )
        nums = [img.num for img in self.images]
        dens = [img.den for img in self.images]
        top = _compose_poly(num, nums, dens, dmax)
        bot = _compose_poly(den, nums, dens, dmax)
        if bot.is_zero():
            raise IdenticallyZeroDenominator(
                "substitution sends the denominator to zero")
        return RawRat.from_pair(top, bot)

    def then(self, second: "Substitution") -> "Substitution":
        """The composite substitution: apply self first, then second."""
        images = tuple(second.apply(img) for img in self.images)
        return Substitution(second.field_aut.compose(self.field_aut), images)

    @staticmethod
    def identity(field: Field, nvars: int) -> "Substitution":
        imgs = tuple(RatFunc.variable(field, nvars, i) for i in range(nvars))
        return Substitution(field.identity_aut(), imgs)

    @staticmethod
    def monomial(field: Field, nvars: int, matrix, coeffs, field_aut=None) -> "Substitution":
        """x_j -> c_j * prod_i x_i^(m[i][j]), the quasi-monomial shape."""
        if field_aut is None:
            field_aut = field.identity_aut()
        imgs = []
        for j in range(nvars):
            exps = tuple(matrix[i][j] for i in range(nvars))
            imgs.append(RatFunc.laurent_monomial(field, nvars, coeffs[j], exps))
        return Substitution(field_aut, tuple(imgs))


def _compose_poly(poly: MultiPoly, nums, dens, dmax) -> MultiPoly:
    """poly(n_1/d_1, ..) * prod d_i^dmax_i, computed without intermediate gcds."""
    field, nvars = poly.field, poly.nvars
    pow_n = [{} for _ in range(nvars)]
    pow_d = [{} for _ in range(nvars)]

    def cached_pow(cache, base, e):
        if e not in cache:
            cache[e] = base ** e
        return cache[e]

    total = MultiPoly.zero(field, nvars)
    for e, c in poly.terms.items():
        term = MultiPoly.const(field, nvars, 1).scale(c)
        for i in range(nvars):
            if e[i]:
                term = term * cached_pow(pow_n[i], nums[i], e[i])
            if dmax[i] - e[i]:
                term = term * cached_pow(pow_d[i], dens[i], dmax[i] - e[i])
        total = total + term
    return total


def rf_substitute(f: RatFunc, sub: Substitution) -> RatFunc:
    return sub.apply(f)


def rf_evaluate(f: RatFunc, point) -> FieldElem:
    return f.evaluate(point)


# ----- parsing -----------------------------------------------------------------


class _Tokens:
    def __init__(self, text):
        self.toks = []
        i, n = 0, len(text)
        while i < n:
            ch = text[i]
            if ch.isspace():
                i += 1
            elif ch.isdigit():
                j = i
                while j < n and text[j].isdigit():
                    j += 1
                self.toks.append(("int", int(text[i:j])))
                i = j
            elif ch.isalpha() or ch == "_":
                j = i
                while j < n and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j]))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}")
        self.pos = 0

    def peek(self):
        return self.toks[self.pos][0] if self.pos < len(self.toks) else None

    def next(self):
        if self.pos >= len(self.toks):
            raise ParseError("unexpected end of expression")
        tok = self.toks[self.pos]
        self.pos += 1
        return tok


class ExprParser:
    """Recursive-descent parser for +, -, *, /, ^(integer), names, parens."""

    def __init__(self, field: Field, var_names, symbols=None, raw=False):
        self.field = field
        self.nvars = len(var_names)
        self.vars = {name: i for i, name in enumerate(var_names)}
        # held by reference: callers may add definitions incrementally
        self.symbols = symbols if symbols is not None else {}
        self._cls = RawRat if raw else RatFunc

    def parse(self, text: str) -> RatFunc:
        toks = _Tokens(text)
        value = self._expr(toks)
        if toks.peek() is not None:
            raise ParseError(f"trailing input near token {toks.next()!r}")
        return value

    def _expr(self, toks):
        if toks.peek() in ("+", "-"):
            sign = toks.next()[0]
            value = self._term(toks)
            if sign == "-":
                value = -value
        else:
            value = self._term(toks)
        while toks.peek() in ("+", "-"):
            op = toks.next()[0]
            rhs = self._term(toks)
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self, toks):
        value = self._factor(toks)
        while toks.peek() in ("*", "/"):
            op = toks.next()[0]
            rhs = self._factor(toks)
            if op == "/" and rhs.is_zero():
                raise ZeroDivisionError("division by zero in expression")
            value = value * rhs if op == "*" else value / rhs
        return value

    def _factor(self, toks):
        if toks.peek() == "-":
            toks.next()
            return -self._factor(toks)
        atom = self._atom(toks)
        if toks.peek() == "^":
            toks.next()
            sign = 1
            if toks.peek() == "-":
                toks.next()
                sign = -1
            kind, val = toks.next()
            if kind == "(":
                if toks.peek() == "-":
                    toks.next()
                    sign = -sign
                kind, val = toks.next()
                if kind != "int":
                    raise ParseError("exponent must be an integer")
                if toks.next()[0] != ")":
                    raise ParseError("unclosed exponent parenthesis")
            elif kind != "int":
                raise ParseError("exponent must be an integer")
            return atom ** (sign * val)
        return atom

    def _atom(self, toks):
        kind, val = toks.next()
        if kind == "int":
            return self._cls.const(self.field, self.nvars, val)
        if kind == "name":
            if val in self.vars:
                return self._cls.variable(self.field, self.nvars, self.vars[val])
            if val in self.symbols:
                return self.symbols[val]
            for i, adj in enumerate(self.field.descriptor.adjoined):
                if adj.label == val:
                    return self._cls.const(self.field, self.nvars, self.field.gens()[i])
            raise ParseError(f"unknown name {val!r}")
        if kind == "(":
            value = self._expr(toks)
            if toks.next()[0] != ")":
                raise ParseError("unclosed parenthesis")
            return value
        raise ParseError(f"unexpected token {val!r}")


def parse_ratfunc(field: Field, var_names, text: str, symbols=None) -> RatFunc:
    return ExprParser(field, var_names, symbols).parse(text)


def parse_constant(field: Field, text: str) -> FieldElem:
    rf = parse_ratfunc(field, (), text)
    return rf.constant_value()


# ----- printing ----------------------------------------------------------------


def default_var_names(nvars):
    if nvars == 1:
        return ("x",)
    if nvars == 2:
        return ("x", "y")
    return tuple(f"x{i + 1}" for i in range(nvars))


def _format_coeff(c: FieldElem):
    s = str(c)
    body = s[1:] if s.startswith("-") else s
    if "+" in body or "-" in body:
        return f"({s})", False
    return s, s.startswith("-")


def format_poly(p: MultiPoly, var_names=None) -> str:
    if p.is_zero():
        return "0"
    names = var_names or default_var_names(p.nvars)
    pieces = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            f"{names[i]}^{k}" if k > 1 else names[i] for i, k in enumerate(e) if k
        )
        cs, negative = _format_coeff(c)
        if negative:
            cs = cs[1:]
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        pieces.append(("-" if negative else "+", body))
    sign, body = pieces[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_ratfunc(f: RatFunc, var_names=None) -> str:
    num = format_poly(f.num, var_names)
    if f.den.is_constant() and f.den.constant_value() == f.field.one:
        return num
    den = format_poly(f.den, var_names)
    return f"({num})/({den})"
