"""Quasi-monomial actions of finite groups on K(x_1,...,x_n).

An action element combines a field automorphism of K, an exponent matrix in
GL_n(Z), and a coefficient vector in (K^x)^n; it sends x_j to
c_j * prod_i x_i^(a_ij).  The group is always materialized as the closure
of the generating automorphisms, so the homomorphism law holds by
construction and any inconsistency shows up as an order mismatch against
the declared expectations.

`reduce_faithful` eliminates the kernel of the exponent representation:
scaling subgroups that fix K pointwise are absorbed into an invariant
monomial sublattice, and kernel elements that move K are straightened by
an explicit Hilbert-90 rescaling (cyclic kernel quotients only, which
covers every case this package decides).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    CapExceeded,
    InvalidAction,
    UnsupportedKernelQuotient,
    ZeroCoefficient,
)
from .fields import Field, FieldAut, FieldDescriptor, FieldElem
from .intmat import det, identity, invariant_monomial_lattice, is_unimodular, mat_mul
from .matgroup import MatGroup, group_closure
from .polys import MultiPoly
from .ratfunc import RatFunc, Substitution, parse_constant

ACTION_CAP = 256
MAX_ROOT_ORDER = 12


@dataclass(frozen=True)
class ActionElement:
    """One k-automorphism of K(x_1..x_n) in quasi-monomial form."""

    aut: FieldAut
    matrix: tuple
    coeffs: tuple

    @property
    def is_identity(self):
        n = len(self.coeffs)
        return (
            self.aut.is_identity
            and self.matrix == identity(n)
            and all(c == c.field.one for c in self.coeffs)
        )

    def is_purely(self):
        return all(c == c.field.one for c in self.coeffs)


def compose_actions(a: ActionElement, b: ActionElement) -> ActionElement:
    """a after b: (a o b)(x_j) = a(b(x_j))."""
    n = len(a.coeffs)
    matrix = mat_mul(a.matrix, b.matrix)
    coeffs = []
    for j in range(n):
        c = a.aut(b.coeffs[j])
        for i in range(n):
            e = b.matrix[i][j]
            if e:
                c = c * a.coeffs[i] ** e
        coeffs.append(c)
    return ActionElement(a.aut.compose(b.aut), matrix, tuple(coeffs))


class QuasiMonomialAction:
    """A finite group acting on K(x_1..x_n) by quasi-monomial automorphisms."""

    def __init__(self, field: Field, nvars: int, named_gens, expect=None, cap=ACTION_CAP):
        """named_gens: list of (name, ActionElement) pairs."""
        self.field = field
        self.nvars = nvars
        self.gen_names = tuple(name for name, _ in named_gens)
        self.gens = tuple(elem for _, elem in named_gens)
        self.expect = dict(expect or {})
        for name, g in named_gens:
            if not is_unimodular(g.matrix):
                raise InvalidAction(f"generator {name}: matrix not in GL_n(Z)")
            if any(not c for c in g.coeffs):
                raise ZeroCoefficient(f"generator {name}: zero coefficient")
        ident = ActionElement(
            field.identity_aut(), identity(nvars), (field.one,) * nvars
        )
        bfs = [ident]
        seen = {self._key(ident): 0}
        head = 0
        while head < len(bfs):
            cur = bfs[head]
            for g in self.gens:
                nxt = compose_actions(cur, g)
                key = self._key(nxt)
                if key not in seen:
                    if len(bfs) >= cap:
                        raise CapExceeded(f"action closure exceeded cap {cap}")
                    seen[key] = len(bfs)
                    bfs.append(nxt)
            head += 1
        self.elements = tuple(bfs)
        self._index = seen

    @staticmethod
    def _key(e: ActionElement):
        return (e.aut.images, e.matrix, e.coeffs)

    # ----- structure ------------------------------------------------------

    @property
    def order(self):
        return len(self.elements)

    def element_index(self, e: ActionElement):
        return self._index[self._key(e)]

    def generator(self, name: str) -> ActionElement:
        return self.gens[self.gen_names.index(name)]

    def inverse_element(self, a: ActionElement) -> ActionElement:
        if a.is_identity:
            return a
        prev, cur = a, compose_actions(a, a)
        while not cur.is_identity:
            prev, cur = cur, compose_actions(cur, a)
        return prev

    def is_purely(self):
        return all(e.is_purely() for e in self.elements)

    def rho_image(self) -> MatGroup:
        return group_closure({e.matrix for e in self.elements}, n=self.nvars)

    def element_word(self, name_word):
        """Compose named generators: word [a, b] acts as a o b."""
        if isinstance(name_word, str):
            name_word = [name_word] if name_word else []
        out = self.elements[0]
        for name in name_word:
            out = compose_actions(out, self.generator(name))
        return self.elements[self.element_index(out)]

    def substitution(self, e: ActionElement) -> Substitution:
        return Substitution.monomial(self.field, self.nvars, e.matrix, e.coeffs, e.aut)

    def apply(self, word_or_elem, f: RatFunc) -> RatFunc:
        e = (
            word_or_elem
            if isinstance(word_or_elem, ActionElement)
            else self.element_word(word_or_elem)
        )
        return self.substitution(e).apply(f)

    # ----- the fixed subfield of K ------------------------------------------

    def field_subgroup(self):
        return {e.aut for e in self.elements}

    def base_subfield(self):
        """(k, to_parent, from_parent) for k = K^G."""
        return self.field.fixed_subfield(list(self.field_subgroup()))

    # ----- kernels -------------------------------------------------------------

    def kernel_rho(self):
        """(N, N0): kernel of the exponent map and its K-trivial part."""
        ident_m = identity(self.nvars)
        n_elems = [e for e in self.elements if e.matrix == ident_m]
        n0_elems = [e for e in n_elems if e.aut.is_identity]
        return n_elems, n0_elems

    def subgroup_is_normal(self, sub):
        keys = {self._key(s) for s in sub}
        for g in self.elements:
            ginv = self.inverse_element(g)
            for s in sub:
                conj = compose_actions(compose_actions(g, s), ginv)
                if self._key(conj) not in keys:
                    return False
        return True

    # ----- validation --------------------------------------------------------------

    def validate(self):
        """List of violations; empty when the action is sound."""
        issues = []
        for e in self.elements:
            if det(e.matrix) not in (1, -1):
                issues.append("element with non-unimodular matrix")
        sub, _, _ = self.base_subfield()
        if "fixed_subfield_dim" in self.expect and sub.dim != self.expect["fixed_subfield_dim"]:
            issues.append(
                f"K^G has dimension {sub.dim} over the base, expected "
                f"{self.expect['fixed_subfield_dim']}")
        if "group_order" in self.expect and self.order != self.expect["group_order"]:
            issues.append(
                f"group closure has order {self.order}, expected "
                f"{self.expect['group_order']}")
        for name, expected in self.expect.get("generator_orders", {}).items():
            g = self.generator(name)
            k, cur = 1, g
            while not cur.is_identity and k <= 2 * self.order:
                cur = compose_actions(cur, g)
                k += 1
            if k != expected:
                issues.append(f"generator {name} has order {k}, expected {expected}")
        if self.expect.get("purely") and not self.is_purely():
            issues.append("declared purely quasi-monomial but some coefficient is not 1")
        n_elems, n0_elems = self.kernel_rho()
        if not self.subgroup_is_normal(n_elems):
            issues.append("Ker(rho) is not normal")  # defensive; cannot happen
        if not self.subgroup_is_normal(n0_elems):
            issues.append("K-trivial kernel part is not normal")
        return issues


# ----- reduction to a faithful exponent representation ---------------------------


@dataclass
class ReductionResult:
    """Outcome of eliminating Ker(rho)."""

    new_variables: list  # RatFunc in the original variables, scale * monomial
    action: QuasiMonomialAction  # on K^N(z_1..z_n), with rho injective
    kernel_chain: list = dc_field(default_factory=list)  # (|N|, |N0|) per round
    to_parent: object = None  # embeds the reduced field back into the original K


def multiplicative_order(c: FieldElem, cap=MAX_ROOT_ORDER):
    cur = c
    for k in range(1, cap + 1):
        if cur == c.field.one:
            return k
        cur = cur * c
    return None


def _root_of_unity_twists(field, kernel_scalings):
    """(order, residues) per scaling element, via a generator of its
    coefficient subgroup (finite subgroups of K^x are cyclic)."""
    twists = []
    for e in kernel_scalings:
        if all(c == field.one for c in e.coeffs):
            continue
        for c in e.coeffs:
            if multiplicative_order(c) is None:
                raise InvalidAction("kernel scaling coefficient is not a root of unity")
        group = {field.one}
        frontier = [field.one]
        while frontier:
            g = frontier.pop()
            for c in e.coeffs:
                h = g * c
                if h not in group:
                    group.add(h)
                    frontier.append(h)
        m = len(group)
        if m > MAX_ROOT_ORDER:
            raise InvalidAction(f"coefficient root-of-unity order {m} out of range")
        zeta = next(g for g in group if multiplicative_order(g) == m)
        powers = {}
        cur = field.one
        for k in range(m):
            powers[cur] = k
            cur = cur * zeta
        twists.append((m, tuple(powers[c] for c in e.coeffs)))
    return twists


def hilbert90_witness(field, aut, m, cocycle_value):
    """a with cocycle_value = a / aut(a), for aut of order m and a norm-1 value.

    Constructive resolvent: a = sum_t (prod_{s<t} aut^s(c)) * aut^t(b),
    with b running over the tower basis until the sum is nonzero.
    """
    c = cocycle_value
    for bmask in range(field.dim):
        coords = [field.szero] * field.dim
        coords[bmask] = field.sone
        b = field.from_coords(coords)
        a = field.zero
        prefix = field.one
        bt = b
        for _t in range(m):
            a = a + prefix * bt
            ct = c
            for _ in range(_t):
                ct = aut(ct)
            prefix = prefix * ct
            bt = aut(bt)
        if a:
            if a / aut(a) == c:
                return a
    raise UnsupportedKernelQuotient("no Hilbert-90 resolvent found on the basis")


def change_field(rf: RatFunc, new_field: Field, coeff_map) -> RatFunc:
    """Rebuild a rational function over another field through coeff_map."""

    def conv(poly):
        return MultiPoly(
            new_field, poly.nvars, {e: coeff_map(c) for e, c in poly.terms.items()}
        )

    return RatFunc(conv(rf.num), conv(rf.den))


def reduce_faithful(action: QuasiMonomialAction) -> ReductionResult:
    """Iteratively eliminate Ker(rho).

    Raises UnsupportedKernelQuotient when a round needs a non-cyclic kernel
    quotient on K (outside this package's constructive scope).
    """
    orig_field = action.field
    nvars = action.nvars
    current = action
    cumulative = [RatFunc.variable(orig_field, nvars, i) for i in range(nvars)]
    chain = []
    to_parent_total = lambda x: x  # noqa: E731
    rounds = 0
    while True:
        n_elems, n0_elems = current.kernel_rho()
        if len(n_elems) == 1:
            break
        rounds += 1
        if rounds > max(nvars, 1) + 4:
            raise UnsupportedKernelQuotient("kernel chain failed to terminate")
        chain.append((len(n_elems), len(n0_elems)))
        cur_field = current.field
        twists = _root_of_unity_twists(cur_field, n0_elems)
        basis, _ = invariant_monomial_lattice(nvars, twists)
        p_cols = tuple(tuple(basis[i][j] for i in range(nvars)) for j in range(nvars))
        p_inv_rows = _rational_inverse(p_cols)

        # Hilbert-90 rescaling for the kernel part acting on K
        scale = [cur_field.one] * nvars
        if any(not e.aut.is_identity for e in n_elems):
            cosets = {}
            for e in n_elems:
                cosets.setdefault(e.aut.images, e)
            m = len(cosets)
            gen = next(
                (e for e in cosets.values() if _aut_order(e.aut) == m), None
            )
            if gen is None or m > 4:
                raise UnsupportedKernelQuotient(
                    f"kernel quotient on K is not cyclic of order <= 4 (size {m})")
            for i in range(nvars):
                c = cur_field.one
                for j in range(nvars):
                    if basis[i][j]:
                        c = c * gen.coeffs[j] ** basis[i][j]
                if c != cur_field.one:
                    scale[i] = hilbert90_witness(cur_field, gen.aut, m, c)

        new_vars_cur = [
            RatFunc.laurent_monomial(cur_field, nvars, scale[i], basis[i])
            for i in range(nvars)
        ]

        # quotient field and transported generators
        sub_field, to_parent, from_parent = cur_field.fixed_subfield(
            [e.aut for e in n_elems]
        )
        kernel_keys = {current._key(e) for e in n_elems}
        new_named = []
        seen = set()
        for name, e in list(zip(current.gen_names, current.gens)) + [
            (f"g{i}", e) for i, e in enumerate(current.elements)
        ]:
            if current._key(e) in kernel_keys:
                continue
            elem = _transported_element(
                current, e, basis, p_inv_rows, scale, sub_field, to_parent, from_parent
            )
            key = (elem.aut.images, elem.matrix, elem.coeffs)
            if key in seen or elem.is_identity:
                continue
            seen.add(key)
            new_named.append((name, elem))
        quotient = QuasiMonomialAction(sub_field, nvars, new_named)
        assert quotient.order * len(n_elems) == current.order, "coset count mismatch"

        # express the new variables in the original coordinates
        embedded = [change_field(v, orig_field, to_parent_total) for v in new_vars_cur]
        comp = Substitution(orig_field.identity_aut(), tuple(cumulative))
        cumulative = [comp.apply(v) for v in embedded]
        prev_total = to_parent_total
        to_parent_total = lambda x, tp=to_parent, prev=prev_total: prev(tp(x))  # noqa: E731
        current = quotient

    mats = {e.matrix for e in current.elements}
    assert len(mats) == current.order, "exponent representation is not injective"
    return ReductionResult(cumulative, current, chain, to_parent_total)


def _aut_order(aut: FieldAut):
    cur = aut
    for k in range(1, 9):
        if cur.is_identity:
            return k
        cur = cur.compose(aut)
    return 0


def _rational_inverse(p_cols):
    n = len(p_cols)
    aug = [
        [Fraction(p_cols[i][j]) for j in range(n)]
        + [Fraction(1 if k == i else 0) for k in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [v - f * w for v, w in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def _transported_element(
    current, e, basis, p_inv_rows, scale, sub_field, to_parent, from_parent
):
    """The action of e on the rescaled variables z_i = scale_i * x^basis_i."""
    nvars = current.nvars
    new_cols = []
    new_coeffs = []
    for i in range(nvars):
        # e(z_i) = e(scale_i) * prod_j c_j^B_ij * x^(A . b_i)
        c = e.aut(scale[i])
        for j in range(nvars):
            if basis[i][j]:
                c = c * e.coeffs[j] ** basis[i][j]
        v = tuple(
            sum(e.matrix[r][j] * basis[i][j] for j in range(nvars))
            for r in range(nvars)
        )
        w = []
        for r in range(nvars):
            val = sum(p_inv_rows[r][t] * v[t] for t in range(nvars))
            if val.denominator != 1:
                raise InvalidAction("image monomial leaves the invariant lattice")
            w.append(int(val))
        for idx in range(nvars):
            if w[idx]:
                c = c * scale[idx] ** (-w[idx])
        new_cols.append(tuple(w))
        new_coeffs.append(from_parent(c))
    matrix = tuple(tuple(new_cols[j][i] for j in range(nvars)) for i in range(nvars))
    images = []
    for gen in sub_field.gens():
        img = e.aut(to_parent(gen))
        images.append(from_parent(img))
    aut = FieldAut(sub_field, tuple(images))
    return ActionElement(aut, matrix, tuple(new_coeffs))


# ----- invariance reporting ---------------------------------------------------------


def check_candidates_invariant(action, candidates, subgroup=None):
    """Violations of invariance of each candidate under the subgroup.

    Returns a list of (element index, candidate index) pairs; empty means
    every candidate is fixed by every element considered.
    """
    elems = subgroup if subgroup is not None else action.elements
    bad = []
    for ei, e in enumerate(elems):
        sub = action.substitution(e)
        for ci, cand in enumerate(candidates):
            if sub.apply(cand) != cand:
                bad.append((ei, ci))
    return bad


# ----- JSON ingestion -----------------------------------------------------------------


def action_from_json(data) -> QuasiMonomialAction:
    """Build an action from its JSON description.

    Schema: {"field": FieldDescriptor, "n": int, "generators":
    [{"name", "field_map", "matrix", "coeffs"}], "purely": bool,
    "expect": {...}}.
    """
    field = Field(FieldDescriptor.from_json(data["field"]))
    n = int(data["n"])
    named = []
    for g in data["generators"]:
        aut = field.aut_from_json(g.get("field_map", {}))
        matrix = tuple(tuple(int(v) for v in row) for row in g["matrix"])
        if len(matrix) != n or any(len(r) != n for r in matrix):
            raise InvalidAction("matrix arity mismatch")
        coeffs = tuple(parse_constant(field, c) for c in g.get("coeffs", ["1"] * n))
        named.append((g["name"], ActionElement(aut, matrix, coeffs)))
    expect = dict(data.get("expect", {}))
    if "purely" in data:
        expect["purely"] = bool(data["purely"])
    return QuasiMonomialAction(field, n, named, expect=expect)


def action_to_json(action: QuasiMonomialAction):
    gens = []
    for name in action.gen_names:
        g = action.generator(name)
        gens.append(
            {
                "name": name,
                "field_map": g.aut.to_json(),
                "matrix": [list(r) for r in g.matrix],
                "coeffs": [str(c) for c in g.coeffs],
            }
        )
    return {
        "field": action.field.descriptor.to_json(),
        "n": action.nvars,
        "generators": gens,
        "purely": action.is_purely(),
    }
