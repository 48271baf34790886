"""Exact base fields and small extension towers.

Supported fields: the rationals Q, prime fields F_p, and towers obtained by
adjoining at most two quadratic generators.  In characteristic != 2 a
generator is a square root (alpha^2 = a); in characteristic 2 it is an
Artin-Schreier root (alpha^2 + alpha = a), which keeps every downstream
case formula valid verbatim.

Elements are stored as coordinate vectors on the fixed ordered basis
{1, alpha, beta, alpha*beta} (or a prefix of it), with entries that are
`fractions.Fraction` in characteristic 0 and reduced ints mod p otherwise.
All arithmetic is exact; there is no floating point anywhere in this
package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import BadAdjunction, NonPrimeModulus, RedundantAdjunction

SQRT = "sqrt"
ARTIN_SCHREIER = "artin_schreier"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Adjunction:
    """One quadratic layer of the tower: sqrt(a) or a root of x^2+x-a."""

    kind: str  # SQRT | ARTIN_SCHREIER
    a: object  # base-field scalar (Fraction or int mod p)
    label: str

    def to_json(self):
        key = self.kind
        return {key: str(self.a), "label": self.label}


@dataclass(frozen=True)
class FieldDescriptor:
    """Serializable description of a field tower."""

    base: object  # "Q" or ("Fp", p)
    adjoined: tuple = ()

    def to_json(self):
        base = "Q" if self.base == "Q" else {"Fp": self.base[1]}
        return {"base": base, "adjoined": [adj.to_json() for adj in self.adjoined]}

    @staticmethod
    def from_json(data) -> "FieldDescriptor":
        raw_base = data["base"]
        if raw_base == "Q":
            base = "Q"
            parse = Fraction
        else:
            p = int(raw_base["Fp"])
            base = ("Fp", p)
            parse = lambda s: int(s) % p  # noqa: E731
        adjoined = []
        for item in data.get("adjoined", []):
            if SQRT in item:
                adjoined.append(Adjunction(SQRT, parse(item[SQRT]), item["label"]))
            elif ARTIN_SCHREIER in item:
                adjoined.append(
                    Adjunction(ARTIN_SCHREIER, parse(item[ARTIN_SCHREIER]), item["label"])
                )
            else:
                raise ValueError(f"unknown adjunction {item!r}")
        return FieldDescriptor(base, tuple(adjoined))


class FieldElem:
    """Element of a :class:`Field`, as coordinates on the tower basis."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(coords)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.from_int(other)
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field.descriptor == other.field.descriptor and self.coords == other.coords

    def __hash__(self):
        return hash((self.field.descriptor, self.coords))

    def __bool__(self):
        return any(c != 0 for c in self.coords)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_base(self.field.scalar(other))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        f = self.field
        return FieldElem(f, tuple(f.sadd(a, b) for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        return FieldElem(f, tuple(f.sneg(a) for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.field.mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.field.mul(self, self.field.inv(other))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.field.mul(other, self.field.inv(self))

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return f.inv(self) ** (-n)
        out = f.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        f = self.field
        parts = []
        for mask, c in enumerate(self.coords):
            if c == 0:
                continue
            names = [f.descriptor.adjoined[i].label for i in range(f.ngens) if mask >> i & 1]
            if not names:
                parts.append(f.scalar_str(c))
            elif c == f.sone:
                parts.append("*".join(names))
            else:
                parts.append(f.scalar_str(c) + "*" + "*".join(names))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += "-" + p[1:] if p.startswith("-") else "+" + p
        return out


class FieldAut:
    """Automorphism of a field tower over its base, given by generator images."""

    __slots__ = ("field", "images", "_table")

    def __init__(self, field, images):
        self.field = field
        self.images = tuple(images)  # FieldElem image of each adjoined generator
        # image of each basis monomial, precomputed
        table = []
        for mask in range(field.dim):
            val = field.one
            for i in range(field.ngens):
                if mask >> i & 1:
                    val = val * images[i]
            table.append(val)
        self._table = tuple(table)

    def __call__(self, elem: FieldElem) -> FieldElem:
        f = self.field
        out = f.zero
        for mask, c in enumerate(elem.coords):
            if c != 0:
                out = out + f.from_base(c) * self._table[mask]
        return out

    def __eq__(self, other):
        return (
            isinstance(other, FieldAut)
            and self.field.descriptor == other.field.descriptor
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.field.descriptor, self.images))

    def compose(self, other: "FieldAut") -> "FieldAut":
        """self after other."""
        return FieldAut(self.field, tuple(self(img) for img in other.images))

    @property
    def is_identity(self) -> bool:
        return all(img == gen for img, gen in zip(self.images, self.field.gens()))

    def __repr__(self):
        maps = ", ".join(
            f"{adj.label}->{img}"
            for adj, img in zip(self.field.descriptor.adjoined, self.images)
        )
        return f"FieldAut({maps or 'id'})"

    def to_json(self):
        return {
            adj.label: str(img)
            for adj, img in zip(self.field.descriptor.adjoined, self.images)
        }


class Field:
    """A field tower built from a validated :class:`FieldDescriptor`.

    Immutable after construction; every operation is pure.
    """

    def __init__(self, descriptor: FieldDescriptor):
        base = descriptor.base
        if base == "Q":
            self.char = 0
        else:
            tag, p = base
            if tag != "Fp":
                raise ValueError(f"unknown base {base!r}")
            if not is_prime(p):
                raise NonPrimeModulus(f"{p} is not prime")
            self.char = p
        if len(descriptor.adjoined) > 2:
            raise BadAdjunction("towers with more than two adjunctions are unsupported")
        # normalize adjunction constants to canonical scalars
        adjs = []
        for adj in descriptor.adjoined:
            a = self.scalar(adj.a)
            if adj.kind == SQRT:
                if self.char == 2:
                    raise BadAdjunction("use artin_schreier adjunctions in characteristic 2")
            elif adj.kind == ARTIN_SCHREIER:
                if self.char != 2:
                    raise BadAdjunction("artin_schreier adjunctions require characteristic 2")
            else:
                raise BadAdjunction(f"unknown adjunction kind {adj.kind!r}")
            adjs.append(Adjunction(adj.kind, a, adj.label))
        self.descriptor = FieldDescriptor(descriptor.base, tuple(adjs))
        self.ngens = len(adjs)
        self.dim = 1 << self.ngens
        self.szero = self.scalar(0)
        self.sone = self.scalar(1)
        self.zero = FieldElem(self, (self.szero,) * self.dim)
        self.one = self.from_base(self.sone)
        self._mul_table = self._build_mul_table()
        self._check_adjunctions()
        self._auts = None

    # ----- base-scalar arithmetic -------------------------------------

    def scalar(self, x):
        """Coerce an int / Fraction / string into a base scalar."""
        if self.char == 0:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.char == 0:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return x.numerator * pow(x.denominator, -1, self.char) % self.char
        return int(x) % self.char

    def sadd(self, a, b):
        return (a + b) % self.char if self.char else a + b

    def sneg(self, a):
        return (-a) % self.char if self.char else -a

    def smul(self, a, b):
        return (a * b) % self.char if self.char else a * b

    def sinv(self, a):
        if a == 0:
            raise ZeroDivisionError("scalar inverse of zero")
        return pow(a, -1, self.char) if self.char else 1 / a

    def scalar_str(self, a) -> str:
        return str(a)

    # ----- construction helpers ---------------------------------------

    def from_base(self, a) -> FieldElem:
        coords = [self.szero] * self.dim
        coords[0] = self.scalar(a)
        return FieldElem(self, tuple(coords))

    def from_int(self, n: int) -> FieldElem:
        return self.from_base(self.scalar(n))

    def from_coords(self, coords) -> FieldElem:
        coords = [self.scalar(c) for c in coords]
        assert len(coords) == self.dim
        return FieldElem(self, tuple(coords))

    def gens(self):
        """The adjoined generators as field elements (alpha, then beta)."""
        out = []
        for i in range(self.ngens):
            coords = [self.szero] * self.dim
            coords[1 << i] = self.sone
            out.append(FieldElem(self, tuple(coords)))
        return out

    def gen(self, label: str) -> FieldElem:
        for i, adj in enumerate(self.descriptor.adjoined):
            if adj.label == label:
                return self.gens()[i]
        raise KeyError(label)

    # ----- multiplication ----------------------------------------------

    def _build_mul_table(self):
        # table[i][j] = list of (mask, scalar): basis_i * basis_j expanded
        table = [[None] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                work = [([(i >> g & 1) + (j >> g & 1) for g in range(self.ngens)], self.sone)]
                done = {}
                while work:
                    exps, c = work.pop()
                    for g in range(self.ngens):
                        if exps[g] == 2:
                            adj = self.descriptor.adjoined[g]
                            if adj.kind == SQRT:
                                exps = exps[:]
                                exps[g] = 0
                                work.append((exps, self.smul(c, adj.a)))
                            else:  # alpha^2 = alpha + a
                                e1 = exps[:]
                                e1[g] = 1
                                e0 = exps[:]
                                e0[g] = 0
                                work.append((e1, c))
                                work.append((e0, self.smul(c, adj.a)))
                            break
                    else:
                        mask = sum(1 << g for g in range(self.ngens) if exps[g])
                        done[mask] = self.sadd(done.get(mask, self.szero), c)
                table[i][j] = [(m, c) for m, c in done.items() if c != 0]
        return table

    def mul(self, x: FieldElem, y: FieldElem) -> FieldElem:
        coords = [self.szero] * self.dim
        for i, a in enumerate(x.coords):
            if a == 0:
                continue
            for j, b in enumerate(y.coords):
                if b == 0:
                    continue
                ab = self.smul(a, b)
                for mask, c in self._mul_table[i][j]:
                    coords[mask] = self.sadd(coords[mask], self.smul(ab, c))
        return FieldElem(self, tuple(coords))

    def inv(self, x: FieldElem) -> FieldElem:
        """Inverse via the linear system (multiplication matrix) over the base."""
        if not x:
            raise ZeroDivisionError("inverse of zero field element")
        n = self.dim
        if n == 1:
            return FieldElem(self, (self.sinv(x.coords[0]),))
        # column k of M = coords of x * basis_k
        cols = []
        for k in range(n):
            basis = [self.szero] * n
            basis[k] = self.sone
            cols.append(self.mul(x, FieldElem(self, tuple(basis))).coords)
        # solve M * v = e_0 by Gaussian elimination
        aug = [[cols[k][r] for k in range(n)] + [self.sone if r == 0 else self.szero]
               for r in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if aug[r][col] != 0)
            aug[col], aug[piv] = aug[piv], aug[col]
            pinv = self.sinv(aug[col][col])
            aug[col] = [self.smul(v, pinv) for v in aug[col]]
            for r in range(n):
                if r != col and aug[r][col] != 0:
                    f = aug[r][col]
                    aug[r] = [self.sadd(v, self.sneg(self.smul(f, w)))
                              for v, w in zip(aug[r], aug[col])]
        return FieldElem(self, tuple(aug[r][n] for r in range(n)))

    # ----- validation ---------------------------------------------------

    def _check_adjunctions(self):
        """Certify each adjoined element is non-redundant over the layer below."""
        for i, adj in enumerate(self.descriptor.adjoined):
            below = Field(FieldDescriptor(self.descriptor.base, self.descriptor.adjoined[:i]))
            c = below.from_base(adj.a)
            if adj.kind == SQRT:
                if below.sqrt(c) is not None:
                    raise RedundantAdjunction(
                        f"{adj.a} is already a square below {adj.label}")
            else:
                if below.artin_schreier_root(c) is not None:
                    raise RedundantAdjunction(
                        f"x^2+x={adj.a} already has a root below {adj.label}")

    # ----- roots ---------------------------------------------------------

    def sqrt(self, x: FieldElem):
        """A square root of x in this field, or None."""
        if not x:
            return self.zero
        if self.char == 2:
            # Frobenius is bijective on these finite fields
            size = self.order()
            r = x ** (size // 2)
            return r if r * r == x else None
        return self._sqrt_level(x, self.ngens)

    def _sqrt_level(self, x: FieldElem, level: int):
        """Square root within the subtower using only the first `level` gens."""
        if level == 0:
            return self._sqrt_base(x.coords[0])
        bit = 1 << (level - 1)
        s = self._project(x, level - 1, lambda m: not (m & bit))
        t = self._project(x, level - 1, lambda m: bool(m & bit))
        g = self.descriptor.adjoined[level - 1].a
        gelem = self.from_base(g)
        if not self._nonzero_at_level(t, level - 1):
            r = self._sqrt_level(s, level - 1)
            if r is not None:
                return r
            r = self._sqrt_level(s / gelem, level - 1)
            if r is not None:
                return r * self.gens()[level - 1]
            return None
        d = s * s - gelem * t * t
        delta = self._sqrt_level(d, level - 1)
        if delta is None:
            return None
        half = self.from_base(self.sinv(self.scalar(2)))
        for sign in (delta, -delta):
            usq = (s + sign) * half
            u = self._sqrt_level(usq, level - 1)
            if u is not None and u:
                v = t * half / u
                cand = u + v * self.gens()[level - 1]
                if cand * cand == x:
                    return cand
        return None

    def _project(self, x, level, keep):
        coords = list(x.coords)
        out = [self.szero] * self.dim
        for m in range(self.dim):
            if keep(m):
                out[m & ~(1 << level)] = coords[m]
        return FieldElem(self, tuple(out))

    def _nonzero_at_level(self, x, level):
        return any(c != 0 for c in x.coords)

    def _sqrt_base(self, a):
        if self.char == 0:
            if a < 0:
                return None
            rn, rd = isqrt(a.numerator), isqrt(a.denominator)
            if rn * rn == a.numerator and rd * rd == a.denominator:
                return self.from_base(Fraction(rn, rd))
            return None
        p = self.char
        a %= p
        if a == 0:
            return self.from_base(0)
        if pow(a, (p - 1) // 2, p) != 1:
            return None
        # Tonelli-Shanks
        if p % 4 == 3:
            return self.from_base(pow(a, (p + 1) // 4, p))
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = next(z for z in range(2, p) if pow(z, (p - 1) // 2, p) == p - 1)
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            t2, i = t, 0
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
        return self.from_base(r)

    def is_square(self, x: FieldElem) -> bool:
        return self.sqrt(x) is not None

    def artin_schreier_root(self, x: FieldElem):
        """A root of t^2 + t = x, or None (finite characteristic-2 fields only)."""
        assert self.char == 2
        for t in self.elements():
            if t * t + t == x:
                return t
        return None

    def order(self):
        """Number of elements; None for characteristic 0."""
        return None if self.char == 0 else self.char ** self.dim

    def elements(self):
        """Iterate all elements (finite fields only)."""
        assert self.char != 0, "cannot enumerate an infinite field"
        for coords in itertools.product(range(self.char), repeat=self.dim):
            yield FieldElem(self, coords)

    # ----- Galois structure ----------------------------------------------

    def automorphisms(self):
        """All automorphisms over the base; the identity comes first."""
        if self._auts is None:
            choices = []
            for i, adj in enumerate(self.descriptor.adjoined):
                g = self.gens()[i]
                if adj.kind == SQRT:
                    choices.append((g, -g))
                else:
                    choices.append((g, g + self.one))
            auts = [FieldAut(self, images) for images in itertools.product(*choices)]
            auts.sort(key=lambda a: not a.is_identity)
            self._auts = auts
        return list(self._auts)

    def identity_aut(self) -> FieldAut:
        return FieldAut(self, tuple(self.gens()))

    def aut_from_json(self, data) -> FieldAut:
        """Build an automorphism from {label: expression} images.

        Labels not mentioned map to themselves.  Expressions are parsed by
        the rational-function constant parser.
        """
        from .ratfunc import parse_constant

        images = []
        for i, adj in enumerate(self.descriptor.adjoined):
            if adj.label in data:
                images.append(parse_constant(self, data[adj.label]))
            else:
                images.append(self.gens()[i])
        aut = FieldAut(self, tuple(images))
        for img, adj in zip(aut.images, self.descriptor.adjoined):
            if adj.kind == SQRT:
                ok = img * img == self.from_base(adj.a)
            else:
                ok = img * img + img == self.from_base(adj.a)
            if not ok:
                raise ValueError(f"image of {adj.label} violates its defining polynomial")
        return aut

    # ----- subfields -------------------------------------------------------

    def fixed_subfield(self, auts):
        """The subfield fixed by `auts`, with conversion maps.

        Returns (subfield, to_parent, from_parent) where to_parent embeds
        subfield elements here and from_parent converts parent elements that
        already lie in the subfield (raising ValueError otherwise).
        """
        auts = list(auts)
        if all(a.is_identity for a in auts):
            ident = lambda x: x  # noqa: E731
            return self, ident, ident
        fixed_dim = self._fixed_dimension(auts)
        if fixed_dim == 1:
            sub = Field(FieldDescriptor(self.descriptor.base, ()))

            def to_parent(x, _f=self):
                return _f.from_base(x.coords[0])

            def from_parent(x, _s=sub):
                if any(c != 0 for c in x.coords[1:]):
                    raise ValueError("element is not in the base field")
                return _s.from_base(x.coords[0])

            return sub, to_parent, from_parent
        assert fixed_dim == 2 and self.ngens == 2
        for gamma, adj in self._quadratic_candidates():
            if all(phi(gamma) == gamma for phi in auts):
                sub = Field(FieldDescriptor(self.descriptor.base, (adj,)))
                gsub = sub.gens()[0]

                def to_parent(x, _g=gamma, _f=self):
                    return _f.from_base(x.coords[0]) + _f.from_base(x.coords[1]) * _g

                def from_parent(x, _g=gamma, _s=sub, _gs=gsub, _f=self):
                    # solve x = u + v*gamma with u, v in the base
                    for mask in range(1, _f.dim):
                        if _g.coords[mask] != 0:
                            v = _f.smul(x.coords[mask], _f.sinv(_g.coords[mask]))
                            break
                    rem = x - _f.from_base(v) * _g
                    if any(c != 0 for c in rem.coords[1:]):
                        raise ValueError("element is not in the fixed subfield")
                    return _s.from_base(rem.coords[0]) + _s.from_base(v) * _gs

                return sub, to_parent, from_parent
        raise AssertionError("no quadratic generator spans the fixed subfield")

    def _quadratic_candidates(self):
        """(gamma, adjunction) pairs for every quadratic subfield generator."""
        a0 = self.descriptor.adjoined[0].a
        a1 = self.descriptor.adjoined[1].a
        alpha, beta = self.gens()
        lbl = [adj.label for adj in self.descriptor.adjoined]
        if self.char != 2:
            return [
                (alpha, Adjunction(SQRT, a0, lbl[0])),
                (beta, Adjunction(SQRT, a1, lbl[1])),
                (alpha * beta, Adjunction(SQRT, self.smul(a0, a1), lbl[0] + "_" + lbl[1])),
            ]
        return [
            (alpha, Adjunction(ARTIN_SCHREIER, a0, lbl[0])),
            (beta, Adjunction(ARTIN_SCHREIER, a1, lbl[1])),
            (alpha + beta,
             Adjunction(ARTIN_SCHREIER, self.sadd(a0, a1), lbl[0] + "_" + lbl[1])),
        ]

    def _fixed_dimension(self, auts):
        """Dimension over the base of the subspace fixed by all auts."""
        rows = []
        for phi in auts:
            for k in range(self.dim):
                basis = [self.szero] * self.dim
                basis[k] = self.sone
                img = phi(FieldElem(self, tuple(basis)))
                row_block = [self.sadd(img.coords[r], self.sneg(basis[r]))
                             for r in range(self.dim)]
                rows.append((k, row_block))
        # assemble (phi - 1) matrices stacked; kernel dimension via rank
        mat = []
        nblocks = len(rows) // self.dim
        for b in range(nblocks):
            block = rows[b * self.dim:(b + 1) * self.dim]
            for r in range(self.dim):
                mat.append([block[k][1][r] for k in range(self.dim)])
        return self.dim - self._rank(mat)

    def _rank(self, rows):
        rows = [list(r) for r in rows]
        rank = 0
        ncols = len(rows[0]) if rows else 0
        for col in range(ncols):
            piv = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            pinv = self.sinv(rows[rank][col])
            rows[rank] = [self.smul(v, pinv) for v in rows[rank]]
            for r in range(len(rows)):
                if r != rank and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [self.sadd(v, self.sneg(self.smul(f, w)))
                               for v, w in zip(rows[r], rows[rank])]
            rank += 1
        return rank

    def __eq__(self, other):
        return isinstance(other, Field) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        if self.char == 0:
            base = "Q"
        else:
            base = f"F{self.char}"
        if not self.ngens:
            return f"Field({base})"
        labels = ",".join(adj.label for adj in self.descriptor.adjoined)
        return f"Field({base}({labels}))"


def field_build(descriptor: FieldDescriptor) -> Field:
    """Validate a descriptor and construct the field it describes."""
    return Field(descriptor)


def rationals() -> Field:
    return Field(FieldDescriptor("Q", ()))


def prime_field(p: int) -> Field:
    return Field(FieldDescriptor(("Fp", p), ()))


def quadratic(base_field: Field, a, label: str = "alpha", kind: str = None) -> Field:
    """Extend a base field by one quadratic generator."""
    if kind is None:
        kind = ARTIN_SCHREIER if base_field.char == 2 else SQRT
    adjs = base_field.descriptor.adjoined + (
        Adjunction(kind, base_field.scalar(a), label),
    )
    return Field(FieldDescriptor(base_field.descriptor.base, adjs))
