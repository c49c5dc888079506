#!/usr/bin/env python3
"""Independent oracle for the commutator tables.

Runs the star-product series  f*g = sum_n (-i)^n/n! m(r^n (f (x) g))  with the
differential-operator images written out in sympy, using genuine cosh/sinh
(cos/sin) of t/tau, and writes the resulting tables to fixtures/oracle/ in the
commutator-table format.  The C++ engine is not used.
"""

import argparse
import json
import pathlib

import sympy as sp

from transcribe_goldens import DIM, IJ, MKL, beta, expr_text, table_document

tau, t, C, S = sp.symbols("tau t C S")
X = [t] + [sp.Symbol(f"x{a}") for a in range(1, DIM + 1)]
I = sp.I
MAX_ORDER = 32


def d(f, var):
    return sp.diff(f, var)


def images(geometry):
    """Generator name -> callable acting on sympy expressions."""
    u = t / tau
    if geometry == "hyperbolic":
        cc, ss, sign = sp.cosh(u), sp.sinh(u), 1
    elif geometry == "trigonometric":
        cc, ss, sign = sp.cos(u), sp.sin(u), -1
    else:
        cc = ss = sign = None
    ops = {"H": lambda f: I * d(f, t)}
    for a in range(1, DIM + 1):
        xa = X[a]
        if geometry == "flat":
            ops[f"P{a}"] = lambda f, xa=xa: I * d(f, xa)
            ops[f"K{a}"] = lambda f, xa=xa: I * t * d(f, xa)
            ops[f"F{a}"] = lambda f, xa=xa: I * t**2 * d(f, xa)
        else:
            ops[f"P{a}"] = lambda f, xa=xa: I * cc * d(f, xa)
            ops[f"K{a}"] = lambda f, xa=xa: I * tau * ss * d(f, xa)
            ops[f"F{a}"] = lambda f, xa=xa: sign * 2 * I * tau**2 * (cc - 1) * d(f, xa)
        for b in range(a + 1, DIM + 1):
            xb = X[b]
            ops[f"M{a}{b}"] = lambda f, xa=xa, xb=xb: I * (xa * d(f, xb) - xb * d(f, xa))
    return ops


def rotation(k, l):
    return (f"M{k}{l}", 1) if k < l else (f"M{l}{k}", -1)


def rmatrix(twist):
    """List of (coefficient, A, B) meaning coefficient * A (x) B."""
    terms = []

    def wedge(c, a, b):
        terms.append((c, a, b))
        terms.append((-c, b, a))

    def kl(a_kind, b_kind):
        for k in range(1, DIM + 1):
            for l in range(1, DIM + 1):
                if k != l:
                    wedge(sp.Rational(1, 2) * beta(twist, k, l), f"{a_kind}{k}", f"{b_kind}{l}")

    def m_kl(kind):
        m, k, l = MKL
        name, s = rotation(k, l)
        wedge(s * sp.Symbol(f"beta{twist}"), f"{kind}{m}", name)

    pairs = {1: ("F", "F"), 2: ("F", "P"), 3: ("K", "F"), 5: ("P", "P"), 6: ("K", "P"), 7: ("K", "K")}
    if twist in pairs:
        kl(*pairs[twist])
    elif twist == 4:
        m_kl("F")
    elif twist == 8:
        m_kl("K")
    elif twist == 9:
        m_kl("P")
    elif twist == 10:
        i, j = IJ
        name, s = rotation(i, j)
        wedge(s * sp.Symbol("beta10"), name, "H")
    return terms


def star(f, g, r, ops):
    total = f * g
    current = [(sp.Integer(1), f, g)]
    for n in range(1, MAX_ORDER + 1):
        nxt = []
        for coef, u, v in current:
            for c, a, b in r:
                ua = sp.expand(ops[a](u))
                if ua == 0:
                    continue
                vb = sp.expand(ops[b](v))
                if vb == 0:
                    continue
                nxt.append((coef * c, ua, vb))
        current = nxt
        term = sp.expand(sum((c * u * v for c, u, v in current), sp.Integer(0)))
        if term == 0:
            return total
        total += (-I) ** n / sp.factorial(n) * term
    raise RuntimeError("series did not terminate")


def canonical(expr, geometry):
    """cosh/sinh (cos/sin) -> C, S with S^2 eliminated."""
    if geometry == "flat":
        return sp.expand(expr)
    u = t / tau
    if geometry == "hyperbolic":
        expr = expr.subs({sp.cosh(u): C, sp.sinh(u): S})
        s2 = C**2 - 1
    else:
        expr = expr.subs({sp.cos(u): C, sp.sin(u): S})
        s2 = 1 - C**2
    expr = sp.expand(expr)
    poly = sp.Poly(expr, S)
    out = 0
    for (k,), coeff in poly.terms():
        out += coeff * S ** (k % 2) * s2 ** (k // 2)
    out = sp.expand(out)
    if out.has(sp.cosh, sp.sinh, sp.cos, sp.sin):
        raise RuntimeError(f"unreduced transcendental in {out}")
    return out


def derive(twist, geometry):
    ops = images(geometry)
    r = rmatrix(twist)
    cache = {}

    def bracket(mu, nu):
        key = (mu, nu)
        if key not in cache:
            raw = star(X[mu], X[nu], r, ops) - star(X[nu], X[mu], r, ops)
            cache[key] = canonical(raw, geometry)
        return cache[key]

    return (lambda a: bracket(0, a), lambda a, b: bracket(a, b))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "oracle",
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    jobs = [
        ("nh_plus", "hyperbolic", "plus"),
        ("nh_minus", "trigonometric", "minus"),
        ("galilei_hat", "flat", "none"),
    ]
    for algebra, geometry, sign in jobs:
        for twist in range(1, 11):
            doc = table_document(twist, algebra, geometry, sign, derive(twist, geometry), {})
            path = args.out / f"{algebra}_twist{twist}.json"
            path.write_text(json.dumps(doc, indent=2) + "\n")
            print(path)


if __name__ == "__main__":
    main()
