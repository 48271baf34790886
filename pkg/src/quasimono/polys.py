"""Sparse multivariate polynomials over a field tower.

Terms map exponent tuples to nonzero :class:`~quasimono.fields.FieldElem`
coefficients.  The canonical term order is graded lexicographic, which fixes
leading terms and therefore the monic normalization used by rational
functions.  The multivariate gcd reduces recursively to univariate
computations through contents and primitive parts (a primitive polynomial
remainder sequence); degrees in this package are small enough that nothing
fancier is warranted.
"""

from __future__ import annotations

from fractions import Fraction

from .fields import Field, FieldElem


def grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Immutable sparse polynomial in ``nvars`` variables over ``field``."""

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: dict):
        self.field = field
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if c}

    # ----- constructors -------------------------------------------------

    @staticmethod
    def zero(field, nvars):
        return MultiPoly(field, nvars, {})

    @staticmethod
    def const(field, nvars, c):
        if not isinstance(c, FieldElem):
            c = field.from_base(field.scalar(c))
        return MultiPoly(field, nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(field, nvars, i):
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return MultiPoly(field, nvars, {e: field.one})

    # ----- structure ----------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> FieldElem:
        if not self.terms:
            return self.field.zero
        assert self.is_constant()
        return next(iter(self.terms.values()))

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, v):
        return max((e[v] for e in self.terms), default=-1)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return used

    def leading(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # ----- arithmetic ----------------------------------------------------

    def __add__(self, other):
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly(self.field, self.nvars, terms)

    def __neg__(self):
        return MultiPoly(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            return self.scale(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.field, self.nvars, out)

    def scale(self, c: FieldElem):
        if not c:
            return MultiPoly.zero(self.field, self.nvars)
        return MultiPoly(self.field, self.nvars, {e: k * c for e, k in self.terms.items()})

    def mul_term(self, exps, c):
        if not c:
            return MultiPoly.zero(self.field, self.nvars)
        return MultiPoly(
            self.field,
            self.nvars,
            {tuple(a + b for a, b in zip(e, exps)): k * c for e, k in self.terms.items()},
        )

    def __pow__(self, n):
        assert n >= 0
        out = MultiPoly.const(self.field, self.nvars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def monic(self):
        """Scale so the graded-lex leading coefficient is one."""
        if not self.terms:
            return self
        _, lc = self.leading()
        if lc == self.field.one:
            return self
        inv = self.field.inv(lc)
        return self.scale(inv)

    def map_coeffs(self, func):
        return MultiPoly(self.field, self.nvars, {e: func(c) for e, c in self.terms.items()})

    # ----- exact division -------------------------------------------------

    def exact_div(self, g: "MultiPoly") -> "MultiPoly":
        """Quotient self/g when the division is exact; raises otherwise."""
        if g.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if g.is_constant():
            return self.scale(self.field.inv(g.constant_value()))
        f = self
        ge, gc = g.leading()
        gcinv = self.field.inv(gc)
        out = {}
        while f.terms:
            fe, fc = f.leading()
            qe = tuple(a - b for a, b in zip(fe, ge))
            if any(x < 0 for x in qe):
                raise ArithmeticError("inexact polynomial division")
            qc = fc * gcinv
            out[qe] = qc
            f = f - g.mul_term(qe, qc)
        return MultiPoly(self.field, self.nvars, out)

    # ----- univariate views -------------------------------------------------

    def coeffs_in(self, v):
        """View in variable v: dict of v-degree -> coefficient polynomial."""
        out = {}
        for e, c in self.terms.items():
            d = e[v]
            e0 = e[:v] + (0,) + e[v + 1:]
            bucket = out.setdefault(d, {})
            bucket[e0] = bucket.get(e0, self.field.zero) + c
        return {
            d: MultiPoly(self.field, self.nvars, t)
            for d, t in out.items()
            if any(t.values())
        }

    @staticmethod
    def from_coeffs_in(field, nvars, v, coeffs):
        terms = {}
        for d, poly in coeffs.items():
            for e, c in poly.terms.items():
                e2 = e[:v] + (d,) + e[v + 1:]
                terms[e2] = c
        return MultiPoly(field, nvars, terms)

    def derivative(self, v) -> "MultiPoly":
        """Formal partial derivative with respect to variable v."""
        terms = {}
        for e, c in self.terms.items():
            if e[v]:
                coeff = c * e[v]
                if coeff:
                    e2 = e[:v] + (e[v] - 1,) + e[v + 1:]
                    terms[e2] = terms.get(e2, self.field.zero) + coeff
        return MultiPoly(self.field, self.nvars, {e: c for e, c in terms.items() if c})

    # ----- evaluation ----------------------------------------------------

    def evaluate(self, point) -> FieldElem:
        """Exact value at a tuple of field elements."""
        field = self.field
        powers = [{} for _ in range(self.nvars)]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = point[i] ** e
            return cache[e]

        total = field.zero
        for e, c in self.terms.items():
            v = c
            for i, exp in enumerate(e):
                if exp:
                    v = v * power(i, exp)
            total = total + v
        return total

    def __repr__(self):
        from .ratfunc import format_poly

        return f"MultiPoly({format_poly(self)})"


# ----- gcd machinery ----------------------------------------------------


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic gcd of two polynomials over their coefficient field."""
    if f.is_zero():
        return g.monic()
    if g.is_zero():
        return f.monic()
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(f.field, f.nvars, 1)
    used = f.variables_used() | g.variables_used()
    v = max(used)
    if used <= {v}:
        return _euclid_univariate(f, g, v).monic()
    plain_q = f.field.char == 0 and f.field.ngens == 0
    if plain_q and len(used) == 2:
        h = _gcd_q_bivariate(f, g, *sorted(used))
        if h is not None:
            return h
    cf, pf = _content_pp(f, v)
    cg, pg = _content_pp(g, v)
    c = poly_gcd(cf, cg)
    h = _primitive_prs(pf, pg, v)
    return (c * h).monic()


def _univar_in(f, v):
    """Coefficients {degree: Fraction} of a poly using only variable v."""
    return {e[v]: c.coords[0] for e, c in f.terms.items()}


def _from_univar(field, nvars, v, coeffs):
    terms = {}
    for d, q in coeffs.items():
        if q:
            e = tuple(d if i == v else 0 for i in range(nvars))
            terms[e] = field.from_base(q)
    return MultiPoly(field, nvars, terms)


def _eval_var(f, v, t):
    """Substitute the integer t for variable v (plain-Q polynomials)."""
    out = {}
    for e, c in f.terms.items():
        e2 = e[:v] + (0,) + e[v + 1:]
        out[e2] = out.get(e2, Fraction(0)) + c.coords[0] * t ** e[v]
    field = f.field
    return MultiPoly(field, f.nvars,
                     {e: field.from_base(q) for e, q in out.items() if q})


def _gcd_q_bivariate(f, g, vx, vy):
    """Gcd over Q in two variables by evaluation in vy and interpolation.

    Univariate gcds at sampled points are interpolated back and the result
    is verified by exact division, so an unlucky sample set can only cause
    a fallback (None), never a wrong answer.
    """
    cf, pf = _content_pp(f, vx)
    cg, pg = _content_pp(g, vx)
    c = poly_gcd(cf, cg)
    field = f.field

    def lc_in_x(p):
        dx = p.degree_in(vx)
        return p.coeffs_in(vx)[dx]

    lcf, lcg = lc_in_x(pf), lc_in_x(pg)
    gamma = poly_gcd(lcf, lcg)  # univariate in vy
    bound = min(pf.degree_in(vy), pg.degree_in(vy)) + gamma.degree_in(vy) + 1
    samples = []
    dmin = None
    t = 0
    attempts = 0
    while len(samples) < bound:
        attempts += 1
        if attempts > 4 * bound + 20:
            return None
        t = -t + (1 if t <= 0 else 0)  # 0, 1, -1, 2, -2, ...
        lf = lcf.evaluate(_point(field, f.nvars, vy, t))
        lg_ = lcg.evaluate(_point(field, f.nvars, vy, t))
        if not lf or not lg_:
            continue
        uf = _eval_var(pf, vy, t)
        ug = _eval_var(pg, vy, t)
        h = _euclid_univariate(uf, ug, vx).monic()
        d = h.degree_in(vx)
        if d == 0:
            return c.monic()
        if dmin is None or d < dmin:
            dmin = d
            samples = []
        elif d > dmin:
            continue
        gval = gamma.evaluate(_point(field, f.nvars, vy, t))
        samples.append((t, h.scale(gval)))
    # Lagrange interpolation of each x-coefficient in vy
    interp = {}
    for t, h in samples:
        for e, coef in h.terms.items():
            interp.setdefault(e[vx], []).append((t, coef.coords[0]))
    ts = [t for t, _ in samples]
    result_terms = {}
    for dx, pts in interp.items():
        vals = dict(pts)
        coeffs = _lagrange(ts, [vals.get(t, Fraction(0)) for t in ts])
        for dy, q in enumerate(coeffs):
            if q:
                e = [0] * f.nvars
                e[vx], e[vy] = dx, dy
                result_terms[tuple(e)] = field.from_base(q)
    cand = MultiPoly(field, f.nvars, result_terms)
    if cand.is_zero():
        return None
    # primitive part in vx, then verify
    cont = None
    for coef in cand.coeffs_in(vx).values():
        cont = coef if cont is None else poly_gcd(cont, coef)
        if cont.is_constant():
            break
    if cont is not None and not cont.is_constant():
        cand = cand.exact_div(cont.monic())
    cand = _numeric_primitive(cand)
    try:
        pf.exact_div(cand)
        pg.exact_div(cand)
    except ArithmeticError:
        return None
    return (c * cand).monic()


def _point(field, nvars, v, t):
    pt = [field.zero] * nvars
    pt[v] = field.from_int(t)
    return tuple(pt)


def _lagrange(ts, vals):
    """Coefficients (low to high) of the interpolating polynomial."""
    n = len(ts)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial prod_{j!=i} (x - t_j) / (t_i - t_j)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] += b * (-ts[j])
                new[k + 1] += b
            basis = new
            denom *= ts[i] - ts[j]
        w = vals[i] / denom
        for k, b in enumerate(basis):
            coeffs[k] += w * b
    return coeffs


def _numeric_primitive(f: MultiPoly) -> MultiPoly:
    """Rescale by a base-field unit to tame coefficient growth.

    Over plain Q this clears denominators and divides by the integer
    content; over other fields it normalizes the leading coefficient.
    """
    if f.is_zero():
        return f
    field = f.field
    if field.char == 0 and field.ngens == 0:
        from math import gcd, lcm

        den = 1
        for c in f.terms.values():
            den = lcm(den, c.coords[0].denominator)
        num = 0
        for c in f.terms.values():
            num = gcd(num, abs(c.coords[0].numerator * den
                               // c.coords[0].denominator))
        scale = field.from_base(Fraction(den, num))
        return f.scale(scale)
    return f.monic()


def _euclid_univariate(f, g, v):
    field = f.field
    if field.char == 0 and field.ngens == 0:
        return _euclid_int(f, g, v)
    while not g.is_zero():
        f, g = g, _numeric_primitive(_rem_univariate(f, g, v))
    return f


def _poly_to_int_coeffs(f, v):
    """Clear denominators: dict degree -> int, up to a positive rational unit."""
    from math import gcd, lcm

    den = 1
    for c in f.terms.values():
        den = lcm(den, c.coords[0].denominator)
    out = {}
    for e, c in f.terms.items():
        q = c.coords[0] * den
        out[e[v]] = int(q)
    g = 0
    for val in out.values():
        g = gcd(g, abs(val))
    if g > 1:
        out = {d: val // g for d, val in out.items()}
    return out


def _euclid_int(f, g, v):
    """Primitive remainder sequence over Z for univariate rational input."""
    from math import gcd

    def content(d):
        c = 0
        for val in d.values():
            c = gcd(c, abs(val))
        return c or 1

    def prem(a, b):
        # pseudo-remainder of a by b, then divide out the integer content
        da, db = max(a), max(b)
        lb = b[db]
        r = dict(a)
        while r and max(r) >= db:
            dr = max(r)
            lead = r[dr]
            r = {d: val * lb for d, val in r.items()}
            for d, val in b.items():
                shift = dr - db + d
                r[shift] = r.get(shift, 0) - lead * val
            r = {d: val for d, val in r.items() if val}
        c = content(r)
        return {d: val // c for d, val in r.items()}

    fa = _poly_to_int_coeffs(f, v)
    ga = _poly_to_int_coeffs(g, v)
    if max(fa) < max(ga):
        fa, ga = ga, fa
    while ga:
        fa, ga = ga, prem(fa, ga)
    field = f.field
    terms = {}
    for d, val in fa.items():
        e = tuple(d if i == v else 0 for i in range(f.nvars))
        terms[e] = field.from_base(Fraction(val))
    return MultiPoly(field, f.nvars, terms)


def _rem_univariate(f, g, v):
    """Remainder of univariate division, coefficients in the ground field."""
    gc = g.coeffs_in(v)
    dg = max(gc)
    lg_inv = f.field.inv(gc[dg].constant_value())
    fc = f.coeffs_in(v)
    while fc and max(fc) >= dg:
        df = max(fc)
        q = fc[df].constant_value() * lg_inv
        for d, coef in gc.items():
            shift = df - dg + d
            cur = fc.get(shift)
            val = coef.constant_value() * q
            cur = (cur.constant_value() if cur else f.field.zero) - val
            if cur:
                fc[shift] = MultiPoly.const(f.field, f.nvars, cur)
            else:
                fc.pop(shift, None)
    return MultiPoly.from_coeffs_in(f.field, f.nvars, v, fc)


def _content_pp(f, v):
    """Content (gcd of v-coefficients) and primitive part of f in variable v."""
    coeffs = list(f.coeffs_in(v).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        if content.is_constant():
            break
        content = poly_gcd(content, c)
    content = content.monic()
    if content.is_constant():
        return MultiPoly.const(f.field, f.nvars, 1), _numeric_primitive(f)
    return content, _numeric_primitive(f.exact_div(content))


def _primitive_prs(f, g, v):
    """Gcd of primitive polynomials via the primitive remainder sequence."""
    if f.degree_in(v) < g.degree_in(v):
        f, g = g, f
    if g.degree_in(v) == 0:
        return MultiPoly.const(f.field, f.nvars, 1)
    while True:
        r = _pseudo_rem(f, g, v)
        if r.is_zero():
            return _content_pp(g, v)[1]
        if r.degree_in(v) == 0:
            return MultiPoly.const(f.field, f.nvars, 1)
        f, g = g, _content_pp(r, v)[1]


def _pseudo_rem(f, g, v):
    gc = g.coeffs_in(v)
    dg = max(gc)
    lg = gc[dg]
    r = f
    while not r.is_zero() and r.degree_in(v) >= dg:
        rc = r.coeffs_in(v)
        dr = max(rc)
        lead = rc[dr]
        shift = tuple(dr - dg if i == v else 0 for i in range(f.nvars))
        r = r * lg - g.mul_term(shift, f.field.one) * lead
    return r


def poly_lcm(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero() or g.is_zero():
        return MultiPoly.zero(f.field, f.nvars)
    return (f * g).exact_div(poly_gcd(f, g)).monic()
