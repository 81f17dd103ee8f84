# Copyright (c) 2026 lsi-forge contributors
# SPDX-License-Identifier: Apache-2.0
"""Generator for core/src/cascade_generated.inc.

The two auxiliary-function chains studied by the cascade module start from a
log-ratio function h (one per case, 6-point and 4-point) and proceed through
h1..h8 defined by an alternating differentiate/multiply recurrence.  Every
h1..h8 is a polynomial in x and log x.  This script

  * builds h symbolically for both cases,
  * derives the closed forms of h1..h8 by applying the recurrences with exact
    rational arithmetic,
  * cross-checks the 6-point chain against an independently simplified set of
    reference polynomials and the known second-derivative formula of its h8,
  * computes the Taylor coefficients of h at x = 1 (used by the guarded
    evaluator near the removable singularity), and
  * emits C++ evaluators (value plus a cancellation-magnitude companion used
    for numerical noise floors) into cascade_generated.inc.

Run from the repository root:  python3 tools/codegen/derive_chain.py
The generated file is committed; rerun only when changing this script.
"""

import sys
from pathlib import Path

import sympy as sp

x, u = sp.symbols("x u", positive=True)
L = sp.log(x)
SERIES_ORDER = 14  # Taylor coefficients a_0 .. a_13 at x = 1


def build_h_z6():
    g = x**2 + 6 * x * L - 1
    num = -2 * x**2 + 4 * x * L + 2
    return sp.log(g) - sp.log(8 * (x - 1)) - x * L / (x - 1) + 1 - num / g, g


def build_h_z4():
    g = 4 * x * L - sp.Rational(2, 5) * (x**2 - 1)
    num = -4 * x**2 + 8 * x * L + 4
    den2 = x**2 - 10 * x * L - 1  # identically -(5/2) g
    h = sp.log(g) + num / den2 - sp.log(sp.Rational(16, 5) * (x - 1)) - x * L / (x - 1) + 1
    assert sp.simplify(den2 + sp.Rational(5, 2) * g) == 0
    return h, g


def derive_chain(h, g, second_diff_steps):
    """Apply the recurrence chain and return expanded polynomials h1..h8.

    second_diff_steps lists the 1-based chain indices i where h_i takes the
    second derivative of its predecessor; every other step takes the first
    derivative.  Step 7 of the 4-point case multiplies by x^2 instead of x.
    """
    chain = []
    h1 = sp.expand(sp.cancel(sp.together((x - 1) ** 2 * g**2 * sp.diff(h, x))))
    chain.append(h1)
    for i in range(2, 9):
        prev = chain[-1]
        order = 2 if i in second_diff_steps else 1
        factor = x**2 if (i == 7 and 7 in second_diff_steps) else x
        chain.append(sp.expand(factor * sp.diff(prev, x, order)))
    return chain


def reference_chain_z6():
    """Independently simplified closed forms of the 6-point chain."""
    p1 = (36 * x**2 * L**3 - 24 * x * (x**2 - 1) * L**2
          + (11 * x**2 + 14 * x + 11) * (x - 1) ** 2 * L
          - 12 * (x + 1) * (x - 1) ** 3)
    p2 = (-(x - 1) ** 2 * (37 * x**2 + 10 * x - 11) + 72 * x**2 * L**3
          - 12 * x * (6 * x**2 - 9 * x - 2) * L**2
          + 4 * x * (11 * x**3 - 18 * x**2 - 3 * x + 10) * L)
    p3 = 8 * (-17 * x**3 - 15 * x**2 + 6 * (11 * x**3 - 24 * x**2 + 22 * x + 1) * L
              + 21 * x + 18 * x * L**3 - 54 * (x - 2) * x * L**2 + 11)
    p4 = 24 * (5 * x**3 - 58 * x**2 + 2 * (33 * x**2 - 66 * x + 58) * x * L
               + 51 * x + 6 * x * L**3 + 18 * (3 - 2 * x) * x * L**2 + 2)
    p5 = 48 * (4 * (45 * x**2 - 73 * x + 28) + 6 * (33 * x**2 - 40 * x + 12) * L
               + (9 - 36 * x) * L**2)
    p6 = 96 * (279 * x**2 + 3 * (66 * x**2 - 52 * x + 3) * L - 266 * x
               - 18 * x * L**2 + 36)
    p7 = 96 * (756 * x**2 - 422 * x - 18 * x * L**2 + 12 * (33 * x - 16) * x * L + 9)
    p8 = 1152 * (225 * x + (66 * x - 3) * L - 19)
    return [sp.expand(p) for p in (p1, p2, p3, p4, p5, p6, p7, p8)]


def series_coefficients(h):
    e = h.subs(x, 1 + u)
    s = sp.series(e, u, 0, SERIES_ORDER).removeO()
    p = sp.Poly(sp.expand(s), u)
    coeffs = [sp.nsimplify(p.coeff_monomial(u**k)) for k in range(SERIES_ORDER)]
    for k in range(4):
        assert coeffs[k] == 0, f"expected a_{k} = 0, got {coeffs[k]}"
    return coeffs


def rat_literal(q):
    q = sp.Rational(q)
    if q.q == 1:
        return f"{q.p}.0L"
    return f"({q.p}.0L / {q.q}.0L)"


def horner_in_x(poly_x, take_abs):
    """Emit a Horner form for a univariate rational polynomial in x."""
    coeffs = sp.Poly(poly_x, x).all_coeffs()  # descending powers
    if take_abs:
        coeffs = [abs(c) for c in coeffs]
    expr = rat_literal(coeffs[0])
    for c in coeffs[1:]:
        if c == 0:
            expr = f"({expr}) * x"
        else:
            expr = f"({expr}) * x + {rat_literal(c)}"
    return expr


def emit_function(out, name, poly, log_var_for_mag="la"):
    """Emit value and magnitude evaluators for a polynomial in (x, log x).

    The magnitude companion replaces every coefficient by its absolute value
    and log x by |log x|; since x > 0 it bounds the sum of absolute values of
    all monomials, i.e. the cancellation scale of the straightforward
    evaluation.  Multiplying it by the machine epsilon of long double yields a
    rounding-noise floor for the computed value.
    """
    p = sp.Poly(poly, L)
    degree = p.degree()
    cof = {k: sp.S.Zero for k in range(degree + 1)}
    for (k,), c in zip(p.monoms(), p.coeffs()):
        cof[k] = c
    out.append(f"inline void {name}(long double x, long double l, long double la,")
    out.append("                long double* value, long double* mag) {")
    for k in range(degree + 1):
        out.append(f"  const long double c{k} = {horner_in_x(cof[k], False)};")
    for k in range(degree + 1):
        out.append(f"  const long double a{k} = {horner_in_x(cof[k], True)};")
    val = f"c{degree}"
    for k in range(degree - 1, -1, -1):
        val = f"({val}) * l + c{k}"
    mag = f"a{degree}"
    for k in range(degree - 1, -1, -1):
        mag = f"({mag}) * {log_var_for_mag} + a{k}"
    out.append(f"  *value = {val};")
    out.append(f"  *mag = {mag};")
    out.append("}")
    out.append("")


def emit_series(out, name, coeffs):
    out.append(f"inline constexpr long double {name}[{len(coeffs)}] = {{")
    for c in coeffs:
        out.append(f"    {rat_literal(c)},")
    out.append("};")
    out.append("")


def print_value_table(tag, chain):
    print(f"values at x = 1 ({tag}):")
    for i, f in enumerate(chain, start=1):
        v0 = sp.nsimplify(f.subs(x, 1))
        v1 = sp.simplify(sp.diff(f, x).subs(x, 1))
        v2 = sp.simplify(sp.diff(f, x, 2).subs(x, 1))
        print(f"  h{i}(1)={v0}  h{i}'(1)={v1}  h{i}''(1)={v2}")


def main():
    h6, g6 = build_h_z6()
    h4, g4 = build_h_z4()

    chain6 = derive_chain(h6, g6, second_diff_steps={3, 5, 8})
    chain4 = derive_chain(h4, g4, second_diff_steps={3, 5, 7, 8})

    ref6 = reference_chain_z6()
    for i, (a, b) in enumerate(zip(chain6, ref6), start=1):
        assert sp.expand(a - b) == 0, f"6-point h{i} mismatch vs reference form"

    h8dd6 = sp.expand(sp.diff(chain6[7], x, 2))
    assert sp.cancel(h8dd6 - 3456 * (22 * x + 1) / x**2) == 0
    # emit as a polynomial in 1/x (degree 0 in log x)
    h8dd6_poly = sp.expand(h8dd6 * x**2)  # 3456 (22 x + 1)

    series6 = series_coefficients(h6)
    series4 = series_coefficients(h4)

    out = []
    out.append("// Generated by tools/codegen/derive_chain.py -- do not edit.")
    out.append("// Closed-form evaluators for the two auxiliary-function chains")
    out.append("// (value plus cancellation-magnitude companion) and the Taylor")
    out.append("// coefficients of each h at x = 1.")
    out.append("")
    out.append("namespace z6gen {")
    out.append("")
    for i, f in enumerate(chain6, start=1):
        emit_function(out, f"h{i}", f)
    emit_function(out, "h8_dd_times_x2", h8dd6_poly)
    emit_series(out, "series", series6)
    out.append("}  // namespace z6gen")
    out.append("")
    out.append("namespace z4gen {")
    out.append("")
    for i, f in enumerate(chain4, start=1):
        emit_function(out, f"h{i}", f)
    emit_series(out, "series", series4)
    out.append("}  // namespace z4gen")
    out.append("")

    target = Path(__file__).resolve().parents[2] / "core" / "src" / "cascade_generated.inc"
    target.write_text("\n".join(out))
    print(f"wrote {target} ({len(out)} lines)")

    print_value_table("6-point", chain6)
    print_value_table("4-point", chain4)
    print("series a4..a13 (6-point):", [str(c) for c in series6[4:]])
    print("series a4..a13 (4-point):", [str(c) for c in series4[4:]])
    return 0


if __name__ == "__main__":
    sys.exit(main())
