"""Finite subgroups of GL_n(Z): closure, the 13 conjugacy classes inside
GL_2(Z), conjugator search, and normal-subgroup enumeration.

Class identification runs an invariant-tuple prefilter and then searches
for an explicit conjugator through the lattice of intertwiners between the
input representation and the catalog representative; failure within the
search bound surfaces as ``Unidentified``, never as a wrong label.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import CapExceeded, NotUnimodular, Unidentified
from . import intmat
from .intmat import (
    det,
    identity,
    is_unimodular,
    kernel_basis,
    mat_inverse,
    mat_mul,
    mat_tuple,
)

DEFAULT_CAP = 512


@dataclass(frozen=True)
class MatGroup:
    """A finite matrix group given by generators plus its full closure."""

    n: int
    gens: tuple
    elements: tuple  # deterministically sorted closure
    bfs: tuple = field(compare=False, repr=False, default=())
    parents: tuple = field(compare=False, repr=False, default=())

    @property
    def order(self):
        return len(self.elements)

    def __contains__(self, m):
        return m in self.elements

    def index(self, m):
        return self.elements.index(m)


def group_closure(gens, n=None, cap=DEFAULT_CAP) -> MatGroup:
    """BFS closure of the generated group; CapExceeded if it looks infinite."""
    gens = tuple(mat_tuple(g) for g in gens)
    if n is None:
        if not gens:
            raise ValueError("need explicit n for the empty generating set")
        n = len(gens[0])
    for g in gens:
        if not is_unimodular(g):
            raise NotUnimodular(f"generator {g} has determinant {det(g)}")
    ident = identity(n)
    bfs = [ident]
    parents = [(-1, -1)]
    seen = {ident}
    head = 0
    while head < len(bfs):
        cur = bfs[head]
        for gi, g in enumerate(gens):
            nxt = mat_mul(cur, g)
            if nxt not in seen:
                if len(bfs) >= cap:
                    raise CapExceeded(f"closure exceeded cap {cap}")
                seen.add(nxt)
                bfs.append(nxt)
                parents.append((head, gi))
        head += 1
    elements = tuple(sorted(bfs))
    return MatGroup(n, gens, elements, tuple(bfs), tuple(parents))


def subgroup(parent_n, elems) -> MatGroup:
    """MatGroup from an explicit closed element set."""
    elems = tuple(sorted(mat_tuple(e) for e in elems))
    return group_closure(elems, n=parent_n)


def is_normal(group: MatGroup, sub_elems) -> bool:
    sub = set(sub_elems)
    for g in group.elements:
        gi = mat_inverse(g)
        for h in sub:
            if mat_mul(mat_mul(g, h), gi) not in sub:
                return False
    return True


def normal_subgroups(group: MatGroup):
    """All normal subgroups, including the trivial one and the whole group.

    Subgroups are enumerated as closures of element subsets of size <= 2,
    which exhausts the subgroup lattice for the group orders arising here.
    """
    seen = {}
    ident = identity(group.n)
    candidates = [()]
    candidates += [(a,) for a in group.elements]
    candidates += list(itertools.combinations(group.elements, 2))
    for gens in candidates:
        sub = group_closure(gens, n=group.n, cap=group.order + 1)
        seen.setdefault(sub.elements, sub)
    out = [sub for elems, sub in sorted(seen.items()) if is_normal(group, elems)]
    assert any(s.order == 1 for s in out) and any(s.order == group.order for s in out)
    return out


# ----- the GL_2(Z) catalog ----------------------------------------------------

_I = ((1, 0), (0, 1))
LAMBDA = ((1, 0), (0, -1))
TAU = ((0, 1), (1, 0))
SIGMA = ((0, -1), (1, 0))
RHO = ((1, -1), (1, 0))
MINUS = tuple(tuple(-x for x in row) for row in _I)
RHO2 = mat_mul(RHO, RHO)
MINUS_TAU = tuple(tuple(-x for x in row) for row in TAU)

GL2_CATALOG = (
    ("C1", ()),
    ("C2_1", (MINUS,)),
    ("C2_2", (LAMBDA,)),
    ("C2_3", (TAU,)),
    ("C3", (RHO2,)),
    ("C4", (SIGMA,)),
    ("C6", (RHO,)),
    ("V4_1", (LAMBDA, MINUS)),
    ("V4_2", (TAU, MINUS)),
    ("S3_1", (RHO2, TAU)),
    ("S3_2", (RHO2, MINUS_TAU)),
    ("D4", (SIGMA, TAU)),
    ("D6", (RHO, TAU)),
)

GL2_ORDERS = {
    "C1": 1, "C2_1": 2, "C2_2": 2, "C2_3": 2, "C3": 3, "C4": 4, "C6": 6,
    "V4_1": 4, "V4_2": 4, "S3_1": 6, "S3_2": 6, "D4": 8, "D6": 12,
}


def catalog_groups():
    return {label: group_closure(gens, n=2) for label, gens in GL2_CATALOG}


def _fixed_points_mod(group: MatGroup, m):
    count = 0
    for v in itertools.product(range(m), repeat=group.n):
        if all(
            tuple(x % m for x in intmat.mat_vec(g, v)) == v for g in group.elements
        ):
            count += 1
    return count


def invariant_tuple(group: MatGroup):
    """Conjugation-invariant fingerprint used to prefilter catalog lookup."""
    traces = tuple(sorted(sum(g[i][i] for i in range(group.n)) for g in group.elements))
    dets = tuple(sorted(det(g) for g in group.elements))
    return (
        group.order,
        traces,
        dets,
        _fixed_points_mod(group, 2),
        _fixed_points_mod(group, 3),
    )


# ----- conjugator search ---------------------------------------------------------


def _element_words(group: MatGroup):
    """Index pairs reconstructing each BFS element as parent*gen."""
    return group.bfs, group.parents


def _isomorphism_images(group: MatGroup, target: MatGroup):
    """Yield target-element images of group.gens extending to isomorphisms."""
    if group.order != target.order:
        return
    t_elems = target.elements

    def elem_profile(g, grp):
        o = _element_order(g, grp.n)
        return (o, sum(g[i][i] for i in range(grp.n)), det(g))

    profiles = {e: elem_profile(e, target) for e in t_elems}
    gen_profiles = [elem_profile(g, group) for g in group.gens]
    choices = [
        [e for e in t_elems if profiles[e] == gp] for gp in gen_profiles
    ]
    bfs, parents = _element_words(group)
    for images in itertools.product(*choices):
        mapped = {}
        ok = True
        for idx, mat in enumerate(bfs):
            if idx == 0:
                mapped[idx] = identity(target.n)
            else:
                pidx, gidx = parents[idx]
                mapped[idx] = mat_mul(mapped[pidx], images[gidx])
        image_set = set(mapped.values())
        if len(image_set) != group.order or image_set != set(t_elems):
            continue
        # verify multiplicativity on all pairs
        pos = {mat: i for i, mat in enumerate(bfs)}
        for i, a in enumerate(bfs):
            for j, b in enumerate(bfs):
                k = pos[mat_mul(a, b)]
                if mat_mul(mapped[i], mapped[j]) != mapped[k]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield images, mapped, bfs


def _element_order(g, n):
    ident = identity(n)
    cur = g
    for k in range(1, 25):
        if cur == ident:
            return k
        cur = mat_mul(cur, g)
    return 0


def intertwiner_basis(pairs, n):
    """Basis of {P : A P = P B  for each (A, B) in pairs} inside Z^(n x n)."""
    rows = []
    for a, b in pairs:
        # (A P - P B)[i][j] = sum_k A[i][k] P[k][j] - P[i][k] B[k][j]
        for i in range(n):
            for j in range(n):
                row = [0] * (n * n)
                for k in range(n):
                    row[k * n + j] += a[i][k]
                    row[i * n + k] -= b[k][j]
                rows.append(tuple(row))
    if not rows:
        return [identity(n)]
    kern = kernel_basis(mat_tuple(rows))
    return [
        tuple(tuple(vec[i * n + j] for j in range(n)) for i in range(n))
        for vec in kern
    ]


def unimodular_in_lattice(basis_mats, coeff_bound=4):
    """Search small integer combinations of matrices for one in GL_n(Z)."""
    if not basis_mats:
        return None
    n = len(basis_mats[0])
    dim = len(basis_mats)
    if dim > 6:
        return None
    rng = range(-coeff_bound, coeff_bound + 1)
    for coeffs in itertools.product(rng, repeat=dim):
        if not any(coeffs):
            continue
        p = tuple(
            tuple(
                sum(c * bm[i][j] for c, bm in zip(coeffs, basis_mats))
                for j in range(n)
            )
            for i in range(n)
        )
        if det(p) in (1, -1):
            return p
    return None


def conjugator_onto(group: MatGroup, target: MatGroup, coeff_bound=4):
    """P with P^-1 * group * P = target (as sets), or None.

    Tries every abstract isomorphism consistent with element profiles and
    solves the intertwiner lattice A P = P phi(A) for each.
    """
    for images, _mapped, _bfs in _isomorphism_images(group, target):
        pairs = list(zip(group.gens, images))
        basis = intertwiner_basis(pairs, group.n)
        p = unimodular_in_lattice(basis, coeff_bound)
        if p is not None:
            return p
    return None


def identify_gl2_class(group: MatGroup, coeff_bound=4):
    """(label, conjugator P) with P^-1 * group * P = catalog representative.

    Raises Unidentified if the prefilter or the bounded conjugator search
    fails; by construction it never returns a wrong label.
    """
    if group.n != 2:
        raise ValueError("catalog lookup requires 2x2 matrices")
    fingerprint = invariant_tuple(group)
    reps = catalog_groups()
    candidates = [
        label for label, rep in reps.items() if invariant_tuple(rep) == fingerprint
    ]
    if not candidates:
        raise Unidentified(f"no catalog class matches fingerprint {fingerprint}")
    for label in candidates:
        rep = reps[label]
        if group.elements == rep.elements:
            return label, identity(2)
        p = conjugator_onto(group, rep, coeff_bound)
        if p is not None:
            return label, p
    raise Unidentified(
        f"fingerprint matches {candidates} but no conjugator found within bound")


def conjugate_elements(elems, p):
    p_inv = mat_inverse(p)
    return tuple(mat_mul(mat_mul(p_inv, e), p) for e in elems)
