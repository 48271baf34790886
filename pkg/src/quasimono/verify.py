"""Machine verification of the identity corpus.

Fixtures are JSON files shipped with the package.  Each one fixes a field
tower and variable names, introduces a chain of named definitions (rational
functions in the variables and previously defined names), a set of named
substitutions (field automorphism plus variable images), and a list of
claims:

* ``invariance``: every listed definition is fixed by every listed
  substitution;
* ``image``: a substitution sends a definition to a stated expression;
* ``identity``: an expression normalizes to zero (exact, no tolerance);
* ``fiber``: a probabilistic degree certificate -- over a small finite
  field, fibers of the candidate map stay within the stated bound for at
  least 95% of non-degenerate sampled trials.

Identity-type checks are exact symbolic normalizations; fiber checks are
certificates, reproducible from the recorded seed, and are labelled as
such in reports.
"""

from __future__ import annotations

import fnmatch
import itertools
import json
import random
import zlib
from dataclasses import dataclass, field as dc_field
from importlib import resources

from .errors import DegenerateSampling
from .fields import Field, FieldDescriptor
from .polys import MultiPoly
from .ratfunc import ExprParser, RatFunc, RawRat, Substitution

NONDEGENERATE_FRACTION = 0.95


@dataclass
class Fixture:
    id: str
    field: Field
    vars: tuple
    defs: dict  # name -> RatFunc (fully expanded in the variables)
    subs: dict  # name -> Substitution
    claims: list
    tags: tuple = ()

    @staticmethod
    def from_json(data) -> "Fixture":
        fld = Field(FieldDescriptor.from_json(data["field"]))
        names = tuple(data["vars"])
        symbols = {}
        parser = ExprParser(fld, names, symbols)
        for dname, expr in data.get("defs", []):
            symbols[dname] = parser.parse(expr)
        subs = {}
        for sname, spec in data.get("subs", {}).items():
            aut = fld.aut_from_json(spec.get("field_map", {}))
            images = tuple(
                parser.parse(spec["images"][v]) if v in spec["images"]
                else RatFunc.variable(fld, len(names), i)
                for i, v in enumerate(names)
            )
            subs[sname] = Substitution(aut, images)
        return Fixture(
            id=data["id"],
            field=fld,
            vars=names,
            defs=dict(symbols),
            subs=subs,
            claims=list(data.get("claims", [])),
            tags=tuple(data.get("tags", [])),
        )

    def value(self, name: str) -> RatFunc:
        if name in self.defs:
            return self.defs[name]
        return RatFunc.variable(self.field, len(self.vars), self.vars.index(name))

    def parse(self, expr: str) -> RatFunc:
        return ExprParser(self.field, self.vars, self.defs).parse(expr)

    def parse_raw(self, expr: str) -> RawRat:
        raw_defs = {k: RawRat.of(v) for k, v in self.defs.items()}
        return ExprParser(self.field, self.vars, raw_defs, raw=True).parse(expr)


@dataclass
class ClaimReport:
    fixture: str
    index: int
    kind: str
    ok: bool
    detail: str = ""
    certificate: bool = False

    def line(self):
        status = "pass" if self.ok else "FAIL"
        kind = self.kind + (" [certificate]" if self.certificate else "")
        msg = f"{status}  {self.fixture} #{self.index} {kind}"
        if self.detail and not self.ok:
            msg += f": {self.detail}"
        return msg


def check_invariance(fx: Fixture, claim) -> list:
    out = []
    for sname in claim["under"]:
        sub = fx.subs[sname]
        for dname in claim["of"]:
            val = fx.value(dname)
            if not sub.apply_raw(val).equals(val):
                out.append(f"{dname} moved by {sname}")
    return out


def check_image(fx: Fixture, claim) -> list:
    sub = fx.subs[claim["under"]]
    val = fx.value(claim["of"])
    expected = fx.parse_raw(claim["equals"])
    got = sub.apply_raw(val)
    if not got.equals(expected):
        return [f"{claim['of']} under {claim['under']} differs from the stated image"]
    return []


def check_identity(fx: Fixture, claim) -> list:
    if "expr" in claim:
        value = fx.parse_raw(claim["expr"])
    else:
        value = fx.parse_raw(claim["lhs"]) - fx.parse_raw(claim["rhs"])
    if not value.is_zero():
        return ["expression does not normalize to zero"]
    return []


def _specialize_to(field: Field, rf: RatFunc) -> RatFunc:
    """Map a rational function into another field by sending each adjoined
    generator to a root of its defining polynomial there.

    Raises DegenerateSampling when the tower does not specialize (e.g. the
    adjoined square is a non-residue at the chosen prime).
    """
    src = rf.field
    images = []
    for adj in src.descriptor.adjoined:
        try:
            target_a = field.from_base(field.scalar(adj.a))
        except ZeroDivisionError as exc:
            raise DegenerateSampling(str(exc))
        if adj.kind == "sqrt":
            img = field.sqrt(target_a)
        else:
            img = field.artin_schreier_root(target_a)
        if img is None:
            raise DegenerateSampling(
                f"generator {adj.label} has no image in {field!r}")
        images.append(img)

    def conv_coeff(c):
        out = field.zero
        for mask, coord in enumerate(c.coords):
            if coord == 0:
                continue
            val = field.from_base(field.scalar(coord))
            for i in range(src.ngens):
                if mask >> i & 1:
                    val = val * images[i]
            out = out + val
        return out

    def conv(poly):
        terms = {}
        for e, c in poly.terms.items():
            v = conv_coeff(c)
            if v:
                terms[e] = v
        return MultiPoly(field, poly.nvars, terms)

    num, den = conv(rf.num), conv(rf.den)
    if den.is_zero():
        raise DegenerateSampling("denominator specializes to zero")
    return RatFunc(num, den)


def fiber_degree_check(candidates, bound, field=None, trials=40, rng=None):
    """Certificate that the candidate map has generic fiber size <= bound.

    Evaluates every point of field^n once, then samples trial base points
    and counts their full fibers (pole points excluded).  Returns a dict
    with the max fiber seen and the in-bound fraction over valid trials.
    """
    rng = rng or random.Random(0)
    assert candidates, "need at least one candidate"
    nvars = candidates[0].nvars
    if field is None:
        field = candidates[0].field
    assert field.char != 0, "fiber counting needs a finite field"
    cands = [
        c if c.field.descriptor == field.descriptor else _specialize_to(field, c)
        for c in candidates
    ]
    points = list(itertools.product(field.elements(), repeat=nvars))
    jac_rows = [
        [(c.num.derivative(v), c.den.derivative(v)) for v in range(nvars)]
        for c in cands
    ]
    values = []
    smooth = []
    for pt in points:
        nums = [c.num.evaluate(pt) for c in cands]
        dens = [c.den.evaluate(pt) for c in cands]
        if any(not d for d in dens):
            values.append(None)
            smooth.append(False)
            continue
        values.append(tuple(n / d for n, d in zip(nums, dens)))
        # the trial point is degenerate where the candidate map ramifies:
        # rows of the (denominator-scaled) Jacobian
        mat = []
        for ci in range(len(cands)):
            row = []
            for v in range(nvars):
                dn, dd = jac_rows[ci][v]
                row.append(dn.evaluate(pt) * dens[ci] - nums[ci] * dd.evaluate(pt))
            mat.append(row)
        smooth.append(_nonsingular(field, mat))
    valid_idx = [i for i, ok in enumerate(smooth) if ok]
    if len(valid_idx) < 3:
        raise DegenerateSampling(
            "almost every point lies on the pole or ramification locus")
    counts = {}
    for v in values:
        if v is not None:
            counts[v] = counts.get(v, 0) + 1
    max_fiber = 0
    within = 0
    degenerate = 0
    for _ in range(trials):
        i = rng.choice(valid_idx)
        size = counts[values[i]]
        max_fiber = max(max_fiber, size)
        if size <= bound:
            within += 1
    return {
        "max_fiber": max_fiber,
        "fraction_within": within / trials,
        "trials": trials,
        "degenerate": len(points) - len(valid_idx),
        "bound": bound,
    }


def _nonsingular(field, mat) -> bool:
    n = len(mat)
    if any(len(r) != n for r in mat):
        return False
    m = [row[:] for row in mat]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return False
        m[col], m[piv] = m[piv], m[col]
        inv = field.inv(m[col][col])
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return True


def check_fiber(fx: Fixture, claim, seed) -> tuple:
    cands = [fx.value(name) for name in claim["of"]]
    if "field" in claim:
        fld = Field(FieldDescriptor.from_json(claim["field"]))
    elif fx.field.char != 0:
        fld = fx.field
    else:
        fld = Field(FieldDescriptor(("Fp", claim.get("p", 7)), ()))
    rng = random.Random(seed)
    report = fiber_degree_check(
        cands, claim["bound"], field=fld, trials=claim.get("trials", 40), rng=rng
    )
    ok = report["fraction_within"] >= NONDEGENERATE_FRACTION
    detail = (f"max fiber {report['max_fiber']}, bound {claim['bound']}, "
              f"within {report['fraction_within']:.2f} on {report['trials']} trials")
    return ([] if ok else [detail]), detail


def run_fixture(fx: Fixture, seed=0) -> list:
    reports = []
    for i, claim in enumerate(fx.claims):
        kind = claim["kind"]
        certificate = False
        detail = ""
        if kind == "invariance":
            problems = check_invariance(fx, claim)
        elif kind == "image":
            problems = check_image(fx, claim)
        elif kind == "identity":
            problems = check_identity(fx, claim)
        elif kind == "fiber":
            certificate = True
            claim_seed = (zlib.crc32(fx.id.encode()) ^ seed) & 0x7FFFFFFF
            problems, detail = check_fiber(fx, claim, claim_seed)
        else:
            problems = [f"unknown claim kind {kind!r}"]
        reports.append(
            ClaimReport(fx.id, i, kind, not problems,
                        "; ".join(problems) if problems else detail, certificate)
        )
    return reports


# ----- the shipped corpus ----------------------------------------------------


def _fixture_dir():
    return resources.files("quasimono") / "fixtures"


def load_fixtures(pattern=None):
    out = []
    root = _fixture_dir()
    for entry in sorted(root.iterdir(), key=lambda e: e.name):
        if not entry.name.endswith(".json") or entry.name == "inventory.json":
            continue
        data = json.loads(entry.read_text())
        if pattern and not fnmatch.fnmatch(data["id"], pattern):
            continue
        out.append(Fixture.from_json(data))
    return out


def load_inventory():
    return json.loads((_fixture_dir() / "inventory.json").read_text())


def check_manifest(fixtures=None) -> list:
    """Coverage bookkeeping: every inventory key maps to at least one
    existing fixture tag or is explicitly tagged out of scope."""
    inventory = load_inventory()
    fixtures = fixtures if fixtures is not None else load_fixtures()
    tag_owners = {}
    for fx in fixtures:
        for tag in fx.tags:
            tag_owners.setdefault(tag, []).append(fx.id)
    problems = []
    for key, spec in inventory["coverage"].items():
        if "out_of_scope" in spec:
            continue
        if key not in tag_owners:
            problems.append(f"coverage key {key!r} has no fixture")
    for tag in tag_owners:
        if tag not in inventory["coverage"]:
            problems.append(f"fixture tag {tag!r} missing from the inventory")
    return problems


@dataclass
class SuiteResult:
    reports: list
    manifest_problems: list
    seed: int

    @property
    def ok(self):
        return not self.manifest_problems and all(r.ok for r in self.reports)

    def summary(self):
        total = len(self.reports)
        failed = [r for r in self.reports if not r.ok]
        lines = [r.line() for r in self.reports]
        lines.append(
            f"{total - len(failed)}/{total} claims pass (seed {self.seed})"
        )
        for p in self.manifest_problems:
            lines.append(f"MANIFEST {p}")
        return "\n".join(lines)

    def to_json(self):
        return {
            "seed": self.seed,
            "ok": self.ok,
            "claims": [
                {
                    "fixture": r.fixture,
                    "index": r.index,
                    "kind": r.kind,
                    "ok": r.ok,
                    "certificate": r.certificate,
                    "detail": r.detail,
                }
                for r in self.reports
            ],
            "manifest_problems": list(self.manifest_problems),
        }


def run_suite(pattern=None, seed=0) -> SuiteResult:
    fixtures = load_fixtures(pattern)
    reports = []
    for fx in fixtures:
        reports.extend(run_fixture(fx, seed))
    manifest = check_manifest() if pattern is None else []
    return SuiteResult(reports, manifest, seed)


# ----- candidate certification used by the decision engine's tests -------------


def fixed_subfield_check(action, candidates, subgroup=None, bound=None,
                         fiber_fields=(), trials=40, seed=0):
    """Invariance (symbolic) plus fiber-degree certificates for candidates.

    Returns a dict report; raises nothing.  `subgroup` defaults to the full
    group; `bound` defaults to its size.
    """
    elems = list(subgroup) if subgroup is not None else list(action.elements)
    problems = []
    for e in elems:
        sub = action.substitution(e)
        for i, cand in enumerate(candidates):
            if sub.apply(cand) != cand:
                problems.append(f"candidate {i} moved by element {e.matrix}")
    bound = bound if bound is not None else len(elems)
    fibers = []
    for fld in fiber_fields:
        rng = random.Random(seed)
        try:
            rep = fiber_degree_check(candidates, bound, field=fld,
                                     trials=trials, rng=rng)
        except DegenerateSampling as exc:
            fibers.append({"field": repr(fld), "skipped": str(exc)})
            continue
        rep["field"] = repr(fld)
        fibers.append(rep)
    return {"invariant": not problems, "problems": problems, "fibers": fibers}
