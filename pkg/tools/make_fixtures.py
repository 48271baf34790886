#!/usr/bin/env python3
"""Regenerate the shipped fixture corpus under src/quasimono/fixtures/.

Each fixture records a field tower, named definitions, named substitutions,
and mechanically checkable claims (invariance, induced images, exact
identities, fiber-degree certificates).  Run from the repository root:

    python tools/make_fixtures.py
"""

import json
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "src" / "quasimono" / "fixtures"

Q = {"base": "Q", "adjoined": []}
F2 = {"base": {"Fp": 2}, "adjoined": []}
F3 = {"base": {"Fp": 3}, "adjoined": []}
F4 = {"base": {"Fp": 2}, "adjoined": [{"artin_schreier": "1", "label": "w"}]}
F9 = {"base": {"Fp": 3}, "adjoined": [{"sqrt": "2", "label": "w"}]}


def qa(a, label="alpha"):
    return {"base": "Q", "adjoined": [{"sqrt": str(a), "label": label}]}


def qab(a, b):
    return {"base": "Q", "adjoined": [
        {"sqrt": str(a), "label": "alpha"}, {"sqrt": str(b), "label": "beta"}]}


def f2a(a=1, label="alpha"):
    return {"base": {"Fp": 2}, "adjoined": [{"artin_schreier": str(a), "label": label}]}


def f3a(a=2, label="alpha"):
    return {"base": {"Fp": 3}, "adjoined": [{"sqrt": str(a), "label": label}]}


def inv(of, under):
    return {"kind": "invariance", "of": of, "under": under}


def img(of, under, equals):
    return {"kind": "image", "of": of, "under": under, "equals": equals}


def ident(expr):
    return {"kind": "identity", "expr": expr}


def fib(of, bound, p=None, field=None, trials=40):
    c = {"kind": "fiber", "of": of, "bound": bound, "trials": trials}
    if p:
        c["p"] = p
    if field:
        c["field"] = field
    return c


SUBS_XY = {
    "mI": {"images": {"x": "1/x", "y": "1/y"}},
    "sigma": {"images": {"x": "y", "y": "1/x"}},
    "lam": {"images": {"x": "x", "y": "1/y"}},
    "mlam": {"images": {"x": "1/x", "y": "y"}},
    "tau": {"images": {"x": "y", "y": "x"}},
    "mtau": {"images": {"x": "1/y", "y": "1/x"}},
    "rho": {"images": {"x": "x*y", "y": "1/x"}},
    "rho2": {"images": {"x": "y", "y": "1/(x*y)"}},
}


def subs_xy(*names, field_maps=None):
    field_maps = field_maps or {}
    out = {}
    for n in names:
        spec = {"images": dict(SUBS_XY[n]["images"])}
        if n in field_maps:
            spec["field_map"] = field_maps[n]
        out[n] = spec
    return out


S_EXPR = "(x^2*y+x*y^2-3*x*y+1)/(x^2*y^2-3*x*y+x+y)"
T_EXPR = ("((x*y+y+1)*(x^2*y^2-x^2*y+x^2-x*y-x+1))"
          "/((x*y+x+1)*(x^2*y^2-3*x*y+x+y))")
T3_EXPR = "x*(x^3*y^3+y^3+1)/(y*(x^3*y^3+x^3+1))"

FIXTURES = []


def add(fx):
    FIXTURES.append(fx)


# ---------------------------------------------------------------- inversion pair

add({
    "id": "inv-pair/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": [["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"]],
    "subs": subs_xy("mI", "sigma", "lam", "tau", "mtau"),
    "claims": [
        inv(["s", "t"], ["mI"]),
        img("s", "sigma", "1/s"), img("t", "sigma", "-1/t"),
        img("s", "lam", "1/s"), img("t", "lam", "1/t"),
        img("s", "tau", "s"), img("t", "tau", "-t"),
        fib(["s", "t"], 2, p=7),
    ],
    "tags": ["inv-pair/defs", "inv-pair/induced-rot4", "inv-pair/induced-reflections",
             "inv-pair/fiber", "dim2-case/C4--I/char0/induced",
             "dim2-case/V4_1--I/char0/induced"],
})

add({
    "id": "inv-pair/char2",
    "field": F2, "vars": ["x", "y"],
    "defs": [["s", "(x*y+1)/(x+y)"], ["t", "x*(y^2+1)/(y*(x^2+1))"]],
    "subs": subs_xy("mI", "sigma", "lam", "tau"),
    "claims": [
        inv(["s", "t"], ["mI"]),
        ident("y^2 + ((s^2+1)*(t+1)/s)*y + 1"),
        ident("x*(s+y) - (s*y+1)"),
        img("s", "sigma", "1/s"), img("t", "sigma", "1/t"),
        img("s", "lam", "1/s"), img("t", "lam", "t"),
        img("s", "tau", "s"), img("t", "tau", "1/t"),
    ],
    "tags": ["inv-pair/char2-relations", "dim2-case/C4--I/char2/induced",
             "dim2-case/V4_1--I/char2/induced"],
})

# ------------------------------------------------------- scaled inversion pair

add({
    "id": "scaled-pair/symbolic",
    "field": Q, "vars": ["x", "y", "a", "b"],
    "defs": [["u", "(x-a/x)/(x*y-a*b/(x*y))"], ["v", "(y-b/y)/(x*y-a*b/(x*y))"]],
    "subs": {"mI": {"images": {"x": "a/x", "y": "b/y"}}},
    "claims": [
        inv(["u", "v"], ["mI"]),
        fib(["u", "v", "a", "b"], 2, p=5, trials=40),
    ],
    "tags": ["scaled-pair/symbolic"],
})

add({
    "id": "scaled-pair/instance",
    "field": Q, "vars": ["x", "y"],
    "defs": [["u", "(x-2/x)/(x*y-6/(x*y))"], ["v", "(y-3/y)/(x*y-6/(x*y))"]],
    "subs": {"mI": {"images": {"x": "2/x", "y": "3/y"}}},
    "claims": [inv(["u", "v"], ["mI"]), fib(["u", "v"], 2, p=11)],
    "tags": ["scaled-pair/instance"],
})

# ------------------------------------------------------- rotation-of-order-3 pair

add({
    "id": "rot3-pair/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": [["S", S_EXPR], ["T", T_EXPR]],
    "subs": subs_xy("rho", "rho2", "tau", "mtau"),
    "claims": [
        inv(["S", "T"], ["rho2"]),
        img("S", "rho", "1/S"), img("T", "rho", "(S+1/S-1)/T"),
        img("S", "tau", "S"), img("T", "tau", "S*(S+1/S-1)/T"),
        img("S", "mtau", "1/S"), img("T", "mtau", "T/S"),
        fib(["S", "T"], 3, p=7),
    ],
    "tags": ["rot3-pair/defs", "rot3-pair/induced", "rot3-pair/fiber",
             "dim2-case/S3_1-rot3/char0/induced", "dim2-case/S3_2-rot3/char0/induced",
             "dim2-case/C6-rot3/char0/induced", "dim2-case/D6-rot3/char0/induced"],
})

add({
    "id": "rot3-pair/char2",
    "field": F2, "vars": ["x", "y"],
    "defs": [["S", S_EXPR], ["T", T_EXPR]],
    "subs": subs_xy("rho", "rho2", "tau", "mtau"),
    "claims": [
        inv(["S", "T"], ["rho2"]),
        ident("y^3 + ((S^2*T+S^2+S+T^2+1)/(S^3+S*T^2+S*T+T^2+1))*y^2"
              " + ((S^3+S^2+S*T^2+S+T)/(S^3+S*T^2+S*T+T^2+1))*y + 1"),
        ident("x*((S+T+1)*y^2+(S+1)*y+S+T+1) - ((T+1)*y+S+T)"),
        img("S", "rho", "1/S"), img("T", "rho", "(S+1/S+1)/T"),
        img("S", "tau", "S"), img("T", "tau", "S*(S+1/S+1)/T"),
        fib(["S", "T"], 3, field=F4),
    ],
    "tags": ["rot3-pair/char2-relations", "dim2-case/C6-rot3/char2/induced"],
})

add({
    "id": "rot3-pair/char3",
    "field": F3, "vars": ["x", "y"],
    "defs": [["S", S_EXPR], ["T", T3_EXPR]],
    "subs": subs_xy("rho", "rho2", "tau", "mtau"),
    "claims": [
        inv(["S", "T"], ["rho2"]),
        img("S", "rho", "1/S"), img("T", "rho", "1/T"),
        img("S", "tau", "S"), img("T", "tau", "1/T"),
        img("S", "mtau", "1/S"), img("T", "mtau", "T"),
        fib(["S", "T"], 3, field=F9),
    ],
    "tags": ["rot3-pair/char3-forms", "dim2-case/C6-rot3/char3/induced",
             "dim2-case/D6-rot3/char3/induced"],
})

# ----------------------------------------------------------- cubic surface chain

CHAIN_DEFS = [
    ["z", "1/(x*y)"],
    ["A", "(x^2*y+x*y^2+1)/(x*y)"],
    ["B", "(x^2*y^2+x+y)/(x*y)"],
    ["D", "(x-y)*(x*y^2-1)*(x^2*y-1)/(x^2*y^2)"],
    ["A0", "A/3"], ["B0", "B/3"], ["D0", "D/9"],
    ["A1", "A0-1"], ["B1", "B0-1"],
    ["A2", "A1/B1"], ["D1", "D0/B1"],
    ["A3", "(A2-B1-2)/(B1^2+3*B1+3)"], ["D2", "D1/(B1^2+3*B1+3)"],
    ["B2", "B1*A3"],
    ["A4", "A3/(B2+1)"], ["B3", "B2+1"], ["D3", "D2/(B2+1)"],
    ["A5", "A4+1/3"],
    ["A6", "3*(A5+D3)"], ["D4", "3*(A5-D3)"],
    ["Sc", "(A6*D4-4)/(2*(A6+D4-2))"],
    ["Tc", "-(D4^2-2*D4+4)/(2*(A6+D4-2))"],
    ["Scl", S_EXPR], ["Tcl", T_EXPR],
]

add({
    "id": "cubic-chain/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": CHAIN_DEFS,
    "subs": subs_xy("rho", "rho2", "tau"),
    "claims": [
        ident("A - (x+y+z)"),
        ident("B - (x*y+y*z+z*x)"),
        ident("x*y*z - 1"),
        ident("D - (x-y)*(y-z)*(x-z)"),
        inv(["A", "B", "D"], ["rho2"]),
        ident("3*D0^2 - (-4*A0^3+3*A0^2*B0^2+6*A0*B0-4*B0^3-1)"),
        ident("3*D1^2 - (-4*A2^3*B1+3*A2^2*B1^2+6*A2^2*B1-9*A2^2"
              "+6*A2*B1+18*A2-4*B1-9)"),
        ident("3*D2^2 - (-4*A3^3*B1^3-12*A3^3*B1^2-12*A3^3*B1-9*A3^2*B1^2"
              "-18*A3^2*B1-9*A3^2-6*A3*B1-6*A3-1)"),
        ident("3*D2^2 - (-12*A3^2*B2-9*A3^2-12*A3*B2^2-18*A3*B2-6*A3"
              "-4*B2^3-9*B2^2-6*B2-1)"),
        ident("3*D3^2 - (-12*A4^2*B3+3*A4^2-12*A4*B3+6*A4-4*B3+3)"),
        img("A4", "rho", "(A4^2+2*A4+3*D3^2+1)/(3*A4^2+2*A4-3*D3^2-1)"),
        img("D3", "rho", "-4*A4*D3/(3*A4^2+2*A4-3*D3^2-1)"),
        img("A4", "tau", "A4"), img("D3", "tau", "-D3"),
        img("A5", "rho", "2*(3*A5^2+2*A5+3*D3^2)/(9*(A5^2-D3^2)-4)"),
        img("A6", "rho", "2*(2*A6+D4^2)/(A6*D4-4)"),
        img("D4", "rho", "2*(A6^2+2*D4)/(A6*D4-4)"),
        img("A6", "tau", "D4"), img("D4", "tau", "A6"),
        img("Sc", "rho", "1/Sc"), img("Tc", "rho", "(Sc+1/Sc-1)/Tc"),
        img("Sc", "tau", "Sc"), img("Tc", "tau", "Sc*(Sc+1/Sc-1)/Tc"),
        ident("Sc - Scl"),
        ident("Tc - Scl*(Scl+1/Scl-1)/Tcl"),
    ],
    "tags": ["cubic-chain/truncated-cone", "cubic-chain/relations",
             "cubic-chain/induced", "cubic-chain/closed-forms-match"],
})

add({
    "id": "cubic-chain/char3",
    "field": F3, "vars": ["x", "y"],
    "defs": [
        ["z", "1/(x*y)"],
        ["A", "(x^2*y+x*y^2+1)/(x*y)"],
        ["B", "(x^2*y^2+x+y)/(x*y)"],
        ["D", "(x-y)*(x*y^2-1)*(x^2*y-1)/(x^2*y^2)"],
        ["A2c", "(A-B)/(A+B)"], ["D2c", "D/(A*B)"],
        ["S3c", "(1+A2c)/(1-A2c)"], ["T3c", "(1+D2c)/(1-D2c)"],
        ["Scl", S_EXPR], ["Tcl", T3_EXPR],
    ],
    "subs": subs_xy("rho", "rho2", "tau"),
    "claims": [
        ident("D^2 - (-A^3+A^2*B^2-B^3)"),
        ident("B*(A2c+1)*(A2c^2*D2c^2-A2c^2-D2c^2+1)+1"),
        inv(["A2c", "D2c"], ["rho2"]),
        img("A2c", "rho", "-A2c"), img("D2c", "rho", "-D2c"),
        img("A2c", "tau", "A2c"), img("D2c", "tau", "-D2c"),
        img("S3c", "rho", "1/S3c"), img("T3c", "rho", "1/T3c"),
        img("S3c", "tau", "S3c"), img("T3c", "tau", "1/T3c"),
        ident("S3c - Scl"),
        ident("T3c - Tcl"),
    ],
    "tags": ["cubic-chain/char3-relations", "cubic-chain/char3-closed-match"],
})

# ---------------------------------------------------- order-6 rotation reductions

add({
    "id": "rot6-pair/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["A6a", "-2*t/(s-t+2*s*t)"], ["B6a", "(s+t-2*s*t)/(2*t)"],
    ],
    "subs": subs_xy("rho", "mI", "tau", "mtau"),
    "claims": [
        img("s", "rho", "(s-t)/(s+t-2*s*t)"),
        img("t", "rho", "(-s+t)/(s+t+2*s*t)"),
        img("A6a", "rho", "B6a"),
        img("B6a", "rho", "1/(A6a*B6a)"),
        img("A6a", "tau", "1/B6a"),
        img("B6a", "tau", "1/A6a"),
        fib(["A6a", "B6a"], 2, p=7),
    ],
    "tags": ["rot6-pair/char0", "dim2-case/C6--I/char0/induced",
             "dim2-case/D6--I/char0/induced", "dim2-case/D6-rot6/char0/induced"],
})

add({
    "id": "rot6-pair/char2",
    "field": F2, "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "x*(y^2+1)/(y*(x^2+1))"],
        ["A6a", "s*(t+1)"], ["B6a", "t/(s*(t+1))"],
    ],
    "subs": subs_xy("rho", "mI", "tau"),
    "claims": [
        img("s", "rho", "t/(s*(t+1)+1)"),
        img("t", "rho", "1/(s*(t+1))"),
        img("A6a", "rho", "B6a"),
        img("B6a", "rho", "1/(A6a*B6a)"),
        fib(["A6a", "B6a"], 2, field=F4),
    ],
    "tags": ["rot6-pair/char2", "dim2-case/C6--I/char2/induced"],
})

add({
    "id": "rot6-quad/char2",
    "field": f2a(1), "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T_EXPR],
        ["U", "S/(S+1)+alpha"], ["V", "T/(S+1)"],
    ],
    "subs": {
        "rho": {"images": SUBS_XY["rho"]["images"],
                "field_map": {"alpha": "alpha+1"}},
        "rho2": {"images": SUBS_XY["rho2"]["images"]},
    },
    "claims": [
        inv(["U", "V"], ["rho2"]),
        img("U", "rho", "U"),
        img("V", "rho", "(U^2+U+(alpha^2+alpha)+1)/V"),
    ],
    "tags": ["dim2-case/C6-rot3/char2/quad-line", "dim2-case/D6-rot3/char2/quad-line"],
})

add({
    "id": "rot6-quad/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T_EXPR],
        ["U", "(S+1)/(S-1)"], ["V", "(U-1)*T"],
        ["W", "U/alpha"],
    ],
    "subs": {
        "rho": {"images": SUBS_XY["rho"]["images"],
                "field_map": {"alpha": "-alpha"}},
        "rho2": {"images": SUBS_XY["rho2"]["images"]},
    },
    "claims": [
        inv(["U", "V"], ["rho2"]),
        img("U", "rho", "-U"),
        img("V", "rho", "-(U^2+3)/V"),
        img("W", "rho", "W"),
        img("V", "rho", "-(2*W^2+3)/V"),
    ],
    "tags": ["dim2-case/C6-rot3/char0/quad-line"],
})

# ------------------------------------------------------------- dihedral-8 cases

add({
    "id": "dih8/biquad/char0",
    "field": qab(2, 3), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["Sq", "alpha*(s+1)/(s-1)"], ["Tq", "beta*t"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "sigma": {"images": SUBS_XY["sigma"]["images"],
                  "field_map": {"alpha": "-alpha"}},
        "tau": {"images": SUBS_XY["tau"]["images"],
                "field_map": {"beta": "-beta"}},
    },
    "claims": [
        inv(["Sq", "Tq"], ["mI", "tau"]),
        img("Sq", "sigma", "Sq"),
        img("Tq", "sigma", "-beta^2/Tq"),
        fib(["Sq", "Tq"], 8, p=23),
    ],
    "tags": ["dim2-case/D4--I/char0/quad-line"],
})

add({
    "id": "dih8/reflect-kernel/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["u", "(s*t+1)/(s+t)"], ["v", "(s*t-1)/(s-t)"],
        ["g1", "alpha*(u+v)"], ["g2", "u-v"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "lam": {"images": SUBS_XY["lam"]["images"]},
        "tau": {"images": SUBS_XY["tau"]["images"],
                "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        img("s", "lam", "1/s"), img("t", "lam", "1/t"),
        inv(["u", "v"], ["mI", "lam"]),
        img("u", "tau", "-v"), img("v", "tau", "-u"),
        inv(["g1", "g2"], ["mI", "lam", "tau"]),
        fib(["g1", "g2"], 8, p=23),
    ],
    "tags": ["dim2-case/D4--I-lambda/char0"],
})

add({
    "id": "dih8/swap-kernel/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["t2", "t^2"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "tau": {"images": SUBS_XY["tau"]["images"]},
        "sigma": {"images": SUBS_XY["sigma"]["images"],
                  "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        inv(["s", "t2"], ["mI", "tau"]),
        img("s", "sigma", "1/s"),
        img("t2", "sigma", "1/t2"),
    ],
    "tags": ["dim2-case/D4--I-tau/char0"],
})

add({
    "id": "dih8/rot-kernel/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["u", "(s-1/s)/(s*t+1/(s*t))"], ["v", "(t+1/t)/(s*t+1/(s*t))"],
        ["g1", "alpha*u"], ["g2", "v"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "sigma": {"images": SUBS_XY["sigma"]["images"]},
        "tau": {"images": SUBS_XY["tau"]["images"],
                "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        inv(["u", "v"], ["mI", "sigma"]),
        img("u", "tau", "-u"), img("v", "tau", "v"),
        inv(["g1", "g2"], ["mI", "sigma", "tau"]),
        fib(["g1", "g2"], 8, p=23),
    ],
    "tags": ["dim2-case/D4-rot4/char0"],
})

# ------------------------------------------------------------ dihedral-12 cases

add({
    "id": "dih12/sym-pair/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T_EXPR],
        ["U", "S"], ["V", "T+S*(S+1/S-1)/T"],
    ],
    "subs": subs_xy("rho", "rho2", "tau"),
    "claims": [
        inv(["U", "V"], ["tau", "rho2"]),
        img("U", "rho", "1/U"), img("V", "rho", "V/U"),
    ],
    "tags": ["dim2-case/D6-rot3-tau/char0"],
})

add({
    "id": "dih12/antisym-pair/char0",
    "field": Q, "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T_EXPR],
        ["U", "T*(S+1)/S"], ["V", "T^2/S"],
        ["W", "(U^2-3*V)/V"],
    ],
    "subs": subs_xy("rho", "rho2", "mtau"),
    "claims": [
        inv(["U", "V"], ["mtau", "rho2"]),
        img("U", "rho", "U*(U^2-3*V)/V^2"),
        img("V", "rho", "(U^2-3*V)^2/V^3"),
        img("W", "rho", "W"),
        img("U", "rho", "(W^2+3*W)/U"),
    ],
    "tags": ["dim2-case/D6-rot3--tau/char0"],
})

add({
    "id": "dih12/quad-gens/char3",
    "field": f3a(2), "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T3_EXPR],
        ["g1", "alpha*(S+1)/(S-1)"], ["g2", "T+1/T"],
        ["h1", "S+1/S"], ["h2", "alpha*(T+1)/(T-1)"],
    ],
    "subs": {
        "rho2": {"images": SUBS_XY["rho2"]["images"]},
        "tau": {"images": SUBS_XY["tau"]["images"]},
        "mtau": {"images": SUBS_XY["mtau"]["images"]},
        "rho": {"images": SUBS_XY["rho"]["images"],
                "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        inv(["g1", "g2"], ["rho2", "tau", "rho"]),
        inv(["h1", "h2"], ["rho2", "mtau", "rho"]),
    ],
    "tags": ["dim2-case/D6-rot3-tau/char3", "dim2-case/D6-rot3--tau/char3"],
})

add({
    "id": "dih12/quad-pq/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["S", S_EXPR], ["T", T_EXPR],
        ["U", "(S+1)/(S-1)"], ["V", "(U-1)*T"],
        ["P", "V/alpha"], ["Qv", "U/alpha"],
    ],
    "subs": {
        "rho2": {"images": SUBS_XY["rho2"]["images"]},
        "mtau": {"images": SUBS_XY["mtau"]["images"],
                 "field_map": {"alpha": "-alpha"}},
        "tau": {"images": SUBS_XY["tau"]["images"]},
    },
    "claims": [
        img("U", "mtau", "-U"), img("V", "mtau", "-V"),
        inv(["P", "Qv"], ["mtau", "rho2"]),
        img("Qv", "tau", "Qv"),
        img("P", "tau", "(Qv^2+3/2)/P"),
    ],
    "tags": ["dim2-case/D6-rot3/char0/quad-line"],
})

# ---------------------------------------------------- subcase generator fixtures

add({
    "id": "klein-gens/axes/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "(x*y-1)/(x-y)"],
        ["a1", "alpha*(s+1)/(s-1)"], ["a2", "alpha*(t+1)/(t-1)"],
        ["b1", "alpha*(x+1)/(x-1)"], ["b2", "y+1/y"],
        ["c1", "alpha*(y+1)/(y-1)"], ["c2", "x+1/x"],
    ],
    "subs": {
        "mI_f": {"images": SUBS_XY["mI"]["images"], "field_map": {"alpha": "-alpha"}},
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "lam_f": {"images": SUBS_XY["lam"]["images"], "field_map": {"alpha": "-alpha"}},
        "lam": {"images": SUBS_XY["lam"]["images"]},
        "mlam": {"images": SUBS_XY["mlam"]["images"]},
    },
    "claims": [
        inv(["a1", "a2"], ["mI", "lam_f"]),
        inv(["b1", "b2"], ["lam", "mI_f"]),
        inv(["c1", "c2"], ["mlam", "mI_f"]),
        fib(["a1", "a2"], 4, p=7),
        fib(["b1", "b2"], 4, p=7),
        fib(["c1", "c2"], 4, p=7),
    ],
    "tags": ["dim2-case/V4_1--I/char0", "dim2-case/V4_1-lambda/char0",
             "dim2-case/V4_1--lambda/char0"],
})

add({
    "id": "klein-gens/axes/char2",
    "field": f2a(1), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "x*(y^2+1)/(y*(x^2+1))"],
        ["a1", "alpha+1/(s+1)"], ["a2", "t"],
        ["b1", "alpha+1/(x+1)"], ["b2", "y+1/y"],
        ["c1", "alpha+1/(y+1)"], ["c2", "x+1/x"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "mI_f": {"images": SUBS_XY["mI"]["images"], "field_map": {"alpha": "alpha+1"}},
        "lam": {"images": SUBS_XY["lam"]["images"]},
        "lam_f": {"images": SUBS_XY["lam"]["images"], "field_map": {"alpha": "alpha+1"}},
        "mlam": {"images": SUBS_XY["mlam"]["images"]},
    },
    "claims": [
        inv(["a1", "a2"], ["mI", "lam_f"]),
        inv(["b1", "b2"], ["lam", "mI_f"]),
        inv(["c1", "c2"], ["mlam", "mI_f"]),
    ],
    "tags": ["dim2-case/V4_1--I/char2", "dim2-case/V4_1-lambda/char2",
             "dim2-case/V4_1--lambda/char2"],
})

add({
    "id": "klein-gens/swap/char0",
    "field": qa(2), "vars": ["x", "y"],
    "defs": [
        ["u", "x+y"], ["v", "(x+y)/(x*y)"],
        ["g1", "u+v"], ["g2", "alpha*(u-v)"],
        ["u2", "(x-1/x)/(x*y-1/(x*y))"], ["v2", "(y-1/y)/(x*y-1/(x*y))"],
        ["h1", "u2+v2"], ["h2", "alpha*(u2-v2)"],
        ["u3", "(x*y+1)/y"], ["v3", "(x*y+1)/x"],
        ["k1", "u3+v3"], ["k2", "alpha*(u3-v3)"],
    ],
    "subs": {
        "tau": {"images": SUBS_XY["tau"]["images"]},
        "mtau": {"images": SUBS_XY["mtau"]["images"]},
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "mI_f": {"images": SUBS_XY["mI"]["images"], "field_map": {"alpha": "-alpha"}},
        "tau_f": {"images": SUBS_XY["tau"]["images"], "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        img("u", "mI_f", "v"),
        inv(["g1", "g2"], ["tau", "mI_f"]),
        img("u2", "tau_f", "v2"),
        inv(["h1", "h2"], ["mI", "tau_f"]),
        inv(["u2", "v2"], ["mI"]),
        img("u3", "mI_f", "v3"),
        inv(["k1", "k2"], ["mtau", "mI_f"]),
        fib(["g1", "g2"], 4, p=7),
        fib(["h1", "h2"], 4, p=7),
        fib(["k1", "k2"], 4, p=7),
    ],
    "tags": ["dim2-case/V4_2-tau/char0", "dim2-case/V4_2--I/char0",
             "dim2-case/V4_2--tau/char0"],
})

add({
    "id": "klein-gens/swap/char2",
    "field": f2a(1), "vars": ["x", "y"],
    "defs": [
        ["u", "x+y"], ["v", "(x+y)/(x*y)"],
        ["g1", "u+v"], ["g2", "alpha+u/(u+v)"],
    ],
    "subs": {
        "tau": {"images": SUBS_XY["tau"]["images"]},
        "mI_f": {"images": SUBS_XY["mI"]["images"], "field_map": {"alpha": "alpha+1"}},
    },
    "claims": [
        inv(["g1", "g2"], ["tau", "mI_f"]),
        fib(["g1", "g2"], 4),
    ],
    "tags": ["dim2-case/V4_2-tau/char2", "dim2-case/V4_2--I/char2",
             "dim2-case/V4_2--tau/char2"],
})

add({
    "id": "dih8-gens/char2",
    "field": f2a(1), "vars": ["x", "y"],
    "defs": [
        ["s", "(x*y+1)/(x+y)"], ["t", "x*(y^2+1)/(y*(x^2+1))"],
        ["a1", "s+1/s"], ["a2", "alpha+1/(t+1)"],
        ["b1", "alpha+1/(s+1)"], ["b2", "t+1/t"],
        ["s2", "(s*t+1)/(s+t)"], ["t2", "s*(t^2+1)/(t*(s^2+1))"],
        ["c1", "alpha+1/(s2+1)"], ["c2", "t2"],
    ],
    "subs": {
        "mI": {"images": SUBS_XY["mI"]["images"]},
        "lam": {"images": SUBS_XY["lam"]["images"]},
        "sigma": {"images": SUBS_XY["sigma"]["images"]},
        "tau_f": {"images": SUBS_XY["tau"]["images"], "field_map": {"alpha": "alpha+1"}},
        "sigma_f": {"images": SUBS_XY["sigma"]["images"],
                    "field_map": {"alpha": "alpha+1"}},
        "tau": {"images": SUBS_XY["tau"]["images"]},
    },
    "claims": [
        inv(["a1", "a2"], ["mI", "lam", "tau_f"]),
        inv(["b1", "b2"], ["mI", "tau", "sigma_f"]),
        inv(["c1", "c2"], ["mI", "sigma", "tau_f"]),
    ],
    "tags": ["dim2-case/D4--I-lambda/char2", "dim2-case/D4--I-tau/char2",
             "dim2-case/D4-rot4/char2"],
})

# --------------------------------------------------------- rank-4 doubly-C4 chain

add({
    "id": "rank4-chain/doubly-rot4",
    "field": Q, "vars": ["x1", "x2", "y1", "y2"],
    "defs": [
        ["s", "(x1*x2+1)/(x1+x2)"], ["t", "(x1*x2-1)/(x1-x2)"],
        ["u", "(s+1)/(s-1)"],
        ["z1", "(y1*y2+1)/(y1+y2)"], ["z2", "(y1*y2-1)/(y1-y2)"],
    ],
    "subs": {
        "tau2": {"images": {"x1": "1/x1", "x2": "1/x2"}},
        "sig": {"images": {"x1": "x2", "x2": "1/x1", "y1": "y2", "y2": "1/y1"}},
        "sig2": {"images": {"x1": "1/x1", "x2": "1/x2", "y1": "1/y1", "y2": "1/y2"}},
    },
    "claims": [
        inv(["s", "t"], ["tau2"]),
        img("s", "sig", "1/s"), img("t", "sig", "-1/t"),
        img("u", "sig", "-u"),
        inv(["z1", "z2", "t"], ["sig2"]),
        img("z1", "sig", "1/z1"), img("z2", "sig", "-1/z2"),
        fib(["z1", "z2", "t", "u"], 8, p=5, trials=30),
    ],
    "tags": ["rank4/doubly-rot4-chain"],
})

# ------------------------------------------------------ rank-4 order-2 reduction

add({
    "id": "rank4-c2/steps",
    "field": Q, "vars": ["v1", "v2", "v3", "v4"],
    "defs": [
        ["u1", "v1"], ["u2", "v2*v4"],
        ["u3", "(v3+1)/(v3-1)"], ["u4", "(v4+1)/(v4-1)"],
        ["w1", "(u1+u2)/2"], ["w2", "(u1-u2)/(2*u4)"],
        ["w3", "u3/u4"], ["w4", "u4^2"],
        ["X1", "(w1+w2*w4)/(w1+w2)"],
        ["X2", "w2*(w4-1)*(w1^2-w2^2*w4)/((w1+w2)*(2*w1+w2+w2*w4))"],
        ["X3", "w2*w3*w4*(2*w1+w2+w2*w4)/(w1+w2)^2"],
        ["X4", "(w1^2-w2^2*w4)/(w1+w2)^2"],
    ],
    "subs": {
        "sig": {"images": {"v1": "v2*v4", "v2": "v1*v4", "v3": "1/v3",
                           "v4": "1/v4"}},
        "lam": {"images": {"v1": "1/(v1*v4)", "v2": "1/(v2*v4)", "v3": "-v3",
                           "v4": "v4"}},
    },
    "claims": [
        img("u1", "sig", "u2"), img("u2", "sig", "u1"),
        img("u3", "sig", "-u3"), img("u4", "sig", "-u4"),
        img("u1", "lam", "(u4-1)/(u1*(u4+1))"),
        img("u2", "lam", "(u4+1)/(u2*(u4-1))"),
        img("u3", "lam", "1/u3"), img("u4", "lam", "u4"),
        inv(["w1", "w2", "w3", "w4"], ["sig"]),
        img("w1", "lam", "(w1+w1*w4+2*w2*w4)/((w4-1)*(w1^2-w2^2*w4))"),
        img("w2", "lam", "-(2*w1+w2+w2*w4)/((w4-1)*(w1^2-w2^2*w4))"),
        img("w3", "lam", "1/(w3*w4)"), img("w4", "lam", "w4"),
        ident("w1 - X2*(X1+X4)/(X4*(X1-1))"),
        ident("w2 - (-X2*(X4-1)/(X4*(X1-1)))"),
        ident("w3 - X3/(X1^2-X4)"),
        ident("w4 - (-(X1^2-X4)/(X4-1))"),
        img("X1", "lam", "-X1"),
        img("X2", "lam", "X4/X2"),
        img("X3", "lam", "(-(X4-1)*X1^2+X4*(X4-1))/X3"),
        img("X4", "lam", "X4"),
    ],
    "tags": ["rank4-c2/step2", "rank4-c2/step3"],
})

add({
    "id": "rank4-c2/trace-relation",
    "field": Q, "vars": ["x1", "x2", "x3", "x4"],
    "defs": [
        ["t1", "x1"],
        ["t2", "-x2*(x1^2-1)/(x4-1)"],
        ["t3", "(x3/(x4-1)-(x1^2-x4)/x3)/2"],
        ["t4", "(x3/(x4-1)+(x1^2-x4)/x3)/(2*x1)"],
        ["T2", "(t1^2*t4^2-t3^2+1)*(t1^2*(t4^2+1)-t3^2)/t2"],
    ],
    "subs": {
        "tau": {"images": {
            "x1": "-x1", "x2": "x4/x2",
            "x3": "(-(x4-1)*x1^2+x4*(x4-1))/x3", "x4": "x4"}},
    },
    "claims": [
        img("t1", "tau", "-t1"),
        img("t3", "tau", "t3"),
        img("t4", "tau", "t4"),
        img("t2", "tau", "T2"),
        ident("((t2+T2)/2)^2 - t1^2*((t2-T2)/(2*t1))^2"
              " - (t1^2*t4^2-t3^2+1)*(t1^2+t1^2*t4^2-t3^2)"),
    ],
    "tags": ["rank4-c2/trace-relation"],
})

# --------------------------------------------------------------- rank-5 dihedral

add({
    "id": "rank5-d4/step1",
    "field": Q, "vars": ["x1", "x2", "x3", "x4", "x5"],
    "defs": [
        ["X4", "(x4*x5+1)/(x4+x5)"], ["X5", "(x4*x5-1)/(x4-x5)"],
    ],
    "subs": {
        "rho": {"images": {"x1": "x2", "x2": "x1", "x3": "1/(x1*x2*x3)",
                           "x4": "x5", "x5": "1/x4"}},
        "tau": {"images": {"x1": "x3", "x2": "1/(x1*x2*x3)", "x3": "x1",
                           "x4": "x5", "x5": "x4"}},
        "rho2": {"images": {"x4": "1/x4", "x5": "1/x5"}},
    },
    "claims": [
        inv(["X4", "X5"], ["rho2"]),
        img("X4", "rho", "1/X4"), img("X5", "rho", "-1/X5"),
        img("X4", "tau", "X4"), img("X5", "tau", "-X5"),
    ],
    "tags": ["rank5-d4/step1"],
})

add({
    "id": "rank5-d4/step2-lemma",
    "field": Q, "vars": ["x", "y", "z", "c"],
    "defs": [
        ["t1", "x*y/(x+y)"],
        ["t2", "(x*y*z+c/z)/(x+y)"],
        ["t3", "(x*y*z-c/z)/(x-y)"],
    ],
    "subs": {
        "tau": {"images": {"x": "y", "y": "x", "z": "c/(x*y*z)"}},
    },
    "claims": [inv(["t1", "t2", "t3"], ["tau"]),
               fib(["t1", "t2", "t3", "c"], 2, p=5, trials=30)],
    "tags": ["rank5-d4/step2-lemma"],
})

add({
    "id": "rank5-d4/step3",
    "field": Q, "vars": ["x1", "x2", "x3", "x4", "x5"],
    "defs": [
        ["X4", "(x4*x5+1)/(x4+x5)"], ["X5", "(x4*x5-1)/(x4-x5)"],
        ["y1", "2*x1*x3/(x1+x3)"],
        ["y2", "(x1*x2*x3+1/x2)/(x1+x3)"],
        ["y3", "(x1*x2*x3-1/x2)/(x1-x3)"],
        ["y4", "X4"],
        ["y5", "2*X5/(x1-x3)"],
    ],
    "subs": {
        "rho": {"images": {"x1": "x2", "x2": "x1", "x3": "1/(x1*x2*x3)",
                           "x4": "x5", "x5": "1/x4"}},
        "tau": {"images": {"x1": "x3", "x2": "1/(x1*x2*x3)", "x3": "x1",
                           "x4": "x5", "x5": "x4"}},
    },
    "claims": [
        inv(["y1", "y2", "y3", "y4", "y5"], ["tau"]),
        img("y1", "rho", "-(y2+y3)*(y2-y3)/(y1*y2*(y3+1)*(y3-1))"),
        img("y2", "rho", "1/y2"),
        img("y3", "rho", "1/y3"),
        img("y4", "rho", "1/y4"),
        img("y5", "rho", "(y2+y3)*(y2-y3)/(y3*y5*(y2+1)*(y2-1))"),
    ],
    "tags": ["rank5-d4/step3"],
})

add({
    "id": "rank5-d4/step4",
    "field": qa(-1), "vars": ["x1", "x2", "x3", "x4", "x5"],
    "defs": [
        ["X4", "(x4*x5+1)/(x4+x5)"], ["X5", "(x4*x5-1)/(x4-x5)"],
        ["y1", "2*x1*x3/(x1+x3)"],
        ["y2", "(x1*x2*x3+1/x2)/(x1+x3)"],
        ["y3", "(x1*x2*x3-1/x2)/(x1-x3)"],
        ["y4", "X4"],
        ["y5", "2*X5/(x1-x3)"],
        ["z1", "(y3+1)/(y3-1)"],
        ["z2", "alpha*y5*(y2-1)/(y1*y2*(y3-1))"],
        ["z3", "2*alpha*y1*y2*(y3+1)/((y2+1)*(y3-1))"],
        ["z4", "(y2-1)*(y3+1)/((y2+1)*(y3-1))"],
        ["z5", "(y2-1)*(y4+1)/((y2+1)*(y4-1))"],
    ],
    "subs": {
        "rho": {"images": {"x1": "x2", "x2": "x1", "x3": "1/(x1*x2*x3)",
                           "x4": "x5", "x5": "1/x4"}},
    },
    "claims": [
        img("z1", "rho", "-z1"),
        img("z2", "rho", "z4/z2"),
        img("z3", "rho", "(-(z4-1)*z1^2+z4*(z4-1))/z3"),
        img("z4", "rho", "z4"),
        img("z5", "rho", "z5"),
    ],
    "tags": ["rank5-d4/step4"],
})

# --------------------------------------------------------------- conic embeddings

add({
    "id": "conic/no-rational-point",
    "field": qa(-1), "vars": ["x", "y"],
    "defs": [
        ["f", "-(x^2+1)"],
        ["u", "(y+f/y)/2"],
        ["v", "alpha*(y-f/y)/2"],
    ],
    "subs": {
        "sigma": {"images": {"x": "x", "y": "-(x^2+1)/y"},
                  "field_map": {"alpha": "-alpha"}},
    },
    "claims": [
        ident("u^2+v^2+x^2+1"),
        inv(["u", "v", "x"], ["sigma"]),
    ],
    "tags": ["conic/trace-coordinates"],
})

add({
    "id": "conic/real-surface-embedding",
    "field": qa(2), "vars": ["s", "t"],
    "defs": [
        ["pU", "(s*(3+s^2)*(1-t^2)-2*alpha*t)/(1+t^2)"],
        ["pV", "(2*s*t*(3+s^2)+alpha*(1-t^2))/(1+t^2)"],
        ["pX", "2+s^2"],
    ],
    "subs": {},
    "claims": [ident("pU^2+pV^2-pX^3+3*pX")],
    "tags": ["conic/unirational-embedding"],
})


INVENTORY = {
    "coverage": {},
}

for fx in FIXTURES:
    for tag in fx["tags"]:
        INVENTORY["coverage"].setdefault(tag, {"fixtures": []})
        INVENTORY["coverage"][tag]["fixtures"].append(fx["id"])

INVENTORY["coverage"].update({
    "out-of-scope/flabby-class-machinery": {
        "out_of_scope": "alternative proof device; no computational surface here"},
    "out-of-scope/rank3-torus-table": {
        "out_of_scope": "the 15-entry birational classification is cited as an "
                        "axiom, not recomputed"},
    "out-of-scope/dim3-twisted-monomial": {
        "out_of_scope": "twisted monomial actions in dimension 3 are outside "
                        "the decided families"},
    "out-of-scope/char2-symbols-infinite": {
        "out_of_scope": "additive-multiplicative symbols over infinite "
                        "characteristic-2 fields have no decision procedure here"},
    "out-of-scope/projective-cocycle-actions": {
        "out_of_scope": "general projective cocycle actions beyond dimension 1"},
    "out-of-scope/real-surface-irrationality": {
        "out_of_scope": "the irrationality half of the real-surface example "
                        "needs analytic input"},
})


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    for fx in FIXTURES:
        name = fx["id"].replace("/", "__") + ".json"
        (OUT / name).write_text(json.dumps(fx, indent=1))
    (OUT / "inventory.json").write_text(json.dumps(INVENTORY, indent=1))
    print(f"wrote {len(FIXTURES)} fixtures + inventory to {OUT}")


if __name__ == "__main__":
    main()
