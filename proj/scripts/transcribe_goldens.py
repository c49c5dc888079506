#!/usr/bin/env python3
"""Write the golden commutator tables to fixtures/golden/.

Each table is typed in from the printed formulas (implicit k,l sums, Kronecker
deltas, fixed indices) and expanded here with sympy over independent beta
components beta<id>_<k>_<l>, k < l.  Nothing in this script calls the C++
engine.
"""

import argparse
import json
import pathlib

import sympy as sp

DIM = 3
MKL = (3, 1, 2)
IJ = (1, 2)

tau, t, C, S = sp.symbols("tau t C S")
X = {a: sp.Symbol(f"x{a}") for a in range(1, DIM + 1)}
I = sp.I


def delta(a, b):
    return 1 if a == b else 0


def beta(twist, k, l):
    """Antisymmetric beta^{kl} in terms of the independent k < l symbols."""
    if k == l:
        return 0
    if k < l:
        return sp.Symbol(f"beta{twist}_{k}_{l}")
    return -sp.Symbol(f"beta{twist}_{l}_{k}")


def kl_sum(twist, a, b):
    """beta^{kl} (delta_ak delta_bl - delta_al delta_bk) summed over k, l."""
    total = 0
    for k in range(1, DIM + 1):
        for l in range(1, DIM + 1):
            total += beta(twist, k, l) * (delta(a, k) * delta(b, l) - delta(a, l) * delta(b, k))
    return total


def rotation_bracket(a, b):
    """delta_ma (x_k delta_bl - x_l delta_bk) - delta_mb (x_k delta_al - x_l delta_ak)."""
    m, k, l = MKL
    return delta(m, a) * (X[k] * delta(b, l) - X[l] * delta(b, k)) - delta(m, b) * (
        X[k] * delta(a, l) - X[l] * delta(a, k)
    )


def time_bracket_10(a):
    i, j = IJ
    return 2 * I * sp.Symbol("beta10") * (delta(i, a) * X[j] - X[i] * delta(j, a))


# ---------------------------------------------------------------- tables
# Each entry maps a twist id to (rhs of [t, x_a], rhs of [x_a, x_b]).


def newton_hooke(s):
    """s = +1 for the hyperbolic algebra, -1 for the trigonometric one."""
    b4, b8, b9 = (sp.Symbol(n) for n in ("beta4", "beta8", "beta9"))
    return {
        1: (lambda a: 0, lambda a, b: 4 * I * kl_sum(1, a, b) * tau**4 * (C - 1) ** 2),
        2: (lambda a: 0, lambda a, b: s * I * kl_sum(2, a, b) * tau**2 * (C - 1) * C),
        3: (lambda a: 0, lambda a, b: s * I * kl_sum(3, a, b) * tau**3 * (C - 1) * S),
        4: (lambda a: 0, lambda a, b: s * 4 * I * b4 * tau**2 * (C - 1) * rotation_bracket(a, b)),
        5: (lambda a: 0, lambda a, b: I * kl_sum(5, a, b) * C**2),
        6: (lambda a: 0, lambda a, b: I * kl_sum(6, a, b) * tau * C * S),
        7: (lambda a: 0, lambda a, b: I * kl_sum(7, a, b) * tau**2 * S**2),
        8: (lambda a: 0, lambda a, b: 2 * I * b8 * tau * S * rotation_bracket(a, b)),
        9: (lambda a: 0, lambda a, b: 2 * I * b9 * C * rotation_bracket(a, b)),
        10: (time_bracket_10, lambda a, b: 0),
    }


def galilei():
    b4, b8, b9 = (sp.Symbol(n) for n in ("beta4", "beta8", "beta9"))
    half = sp.Rational(1, 2)
    return {
        1: (lambda a: 0, lambda a, b: I * kl_sum(1, a, b) * t**4),
        2: (lambda a: 0, lambda a, b: half * I * kl_sum(2, a, b) * t**2),
        3: (lambda a: 0, lambda a, b: half * I * kl_sum(3, a, b) * t**3),
        4: (lambda a: 0, lambda a, b: 2 * I * b4 * t**2 * rotation_bracket(a, b)),
        5: (lambda a: 0, lambda a, b: I * kl_sum(5, a, b)),
        6: (lambda a: 0, lambda a, b: I * kl_sum(6, a, b) * t),
        7: (lambda a: 0, lambda a, b: I * kl_sum(7, a, b) * t**2),
        8: (lambda a: 0, lambda a, b: 2 * I * b8 * t * rotation_bracket(a, b)),
        9: (lambda a: 0, lambda a, b: 2 * I * b9 * rotation_bracket(a, b)),
        10: (time_bracket_10, lambda a, b: 0),
    }


NOTES = {
    ("nh", 4): {
        "printed": r"\pm 4i\beta_4\tau^2(C_{\pm}-1)[\delta_{ma}(x_k\delta_{bl} - x_l\delta_{bk})"
        r" - \delta_{mb}(x_k\delta_{al} - x_l\delta_{ik})]",
        "expected_diff": "printed form ends with delta_ik (free index i); rhs uses delta_ak "
        "as in tables 8 and 9",
    },
    ("flat", 8): {
        "note": "printed with the label beta_4; the parameter of this twist is beta8",
    },
}


# --------------------------------------------------------------- printing


def scalar_text(c):
    re, im = sp.re(c), sp.im(c)
    re, im = sp.Rational(re), sp.Rational(im)

    def q(v):
        return str(v)

    if im == 0:
        return q(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{q(im)}*i"
    sign = "-" if im < 0 else "+"
    mag = abs(im)
    return f"({q(re)}{sign}{'' if mag == 1 else q(mag) + '*'}i)"


def expr_text(e):
    e = sp.expand(e)
    if e == 0:
        return "0"
    gens = sorted(e.free_symbols, key=lambda s: s.name)
    poly = sp.Poly(e, *gens)
    parts = []
    for monom, coeff in poly.terms():
        factors = []
        for g, p in zip(gens, monom):
            if p == 1:
                factors.append(g.name)
            elif p > 1:
                factors.append(f"{g.name}^{p}")
        head = scalar_text(coeff)
        if head in ("1", "-1") and factors:
            factors[0] = ("-" if head == "-1" else "") + factors[0]
        else:
            factors.insert(0, head)
        parts.append("*".join(factors))
    out = parts[0]
    for part in parts[1:]:
        out += " - " + part[1:] if part.startswith("-") else " + " + part
    return out


def coordinate(mu):
    return "t" if mu == 0 else f"x{mu}"


def table_document(twist, algebra, geometry, sign, formulas, extra):
    tx, xx = formulas
    entries = []
    for mu in range(0, DIM + 1):
        for nu in range(mu + 1, DIM + 1):
            rhs = tx(nu) if mu == 0 else xx(mu, nu)
            entries.append(
                {
                    "lhs": [coordinate(mu), coordinate(nu)],
                    "rhs": expr_text(rhs),
                    "geometry": geometry,
                    "twist": twist,
                    "sign": sign,
                }
            )
    doc = {
        "format_version": 1,
        "document": "commutator_table",
        "twist": twist,
        "algebra": algebra,
        "geometry": geometry,
        "sign": sign,
        "dimension": DIM,
        "indices": {"mkl": list(MKL), "ij": list(IJ)},
        "entries": entries,
    }
    doc.update(extra)
    return doc


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "golden",
    )
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    jobs = [
        ("nh_plus", "hyperbolic", "plus", newton_hooke(1), "nh"),
        ("nh_minus", "trigonometric", "minus", newton_hooke(-1), "nh"),
        ("galilei_hat", "flat", "none", galilei(), "flat"),
    ]
    for algebra, geometry, sign, tables, family in jobs:
        for twist, formulas in tables.items():
            extra = NOTES.get((family, twist), {})
            doc = table_document(twist, algebra, geometry, sign, formulas, extra)
            path = args.out / f"{algebra}_twist{twist}.json"
            path.write_text(json.dumps(doc, indent=2) + "\n")
            print(path)


if __name__ == "__main__":
    main()
