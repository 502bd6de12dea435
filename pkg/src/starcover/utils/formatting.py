"""
Text rendering for polynomials and spectra.
"""

from typing import Mapping

from sympy import Symbol, factor_list

from ..spectra import IntPolynomial, SpectrumMultiset, integral_spectrum


def _linear_factor(root: int, var: str) -> str:
    if root == 0:
        return var
    sign = "-" if root > 0 else "+"
    return f"({var}{sign}{abs(root)})"


def _power(base: str, exponent: int) -> str:
    return base if exponent == 1 else f"{base}^{exponent}"


def format_expanded(p: IntPolynomial, var: str = "x") -> str:
    """Expanded form, highest degree first, e.g. x^2-1."""
    if not p.coefficients:
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coefficients[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += sign + body
    return out


def format_roots(roots: Mapping[int, int], var: str = "x") -> str:
    # ascending roots: (x+3) comes before (x-3)
    return "".join(_power(_linear_factor(r, var), m) for r, m in sorted(roots.items()))


def format_factored(p: IntPolynomial, var: str = "x") -> str:
    """Integer-root factors in ascending root order, residual last."""
    if p.is_monic():
        spectrum = integral_spectrum(p)
        out = format_roots(spectrum.entries, var)
        if spectrum.residual.degree > 0:
            out += f"({format_expanded(spectrum.residual, var)})"
        return out or "1"
    return format_expanded(p, var)


def format_spectrum(spectrum: SpectrumMultiset) -> str:
    body = ", ".join(f"{k}:{m}" for k, m in spectrum.entries.items())
    if spectrum.residual.degree > 0:
        body += f" + roots of {format_expanded(spectrum.residual)}"
    return "{" + body + "}"


def format_zeta(p: IntPolynomial, var: str = "u") -> str:
    """Factorization over the integers, written with constant term 1 where possible."""
    u = Symbol(var)
    content, factors = factor_list(p.to_poly(u).as_expr(), u)
    pieces = []
    for f, e in factors:
        # prefer 1-u over u-1
        if f.subs(u, 0) < 0:
            f = -f
            if e % 2:
                content = -content
        text = str(f.as_poly(u).as_expr()).replace("**", "^").replace("*", "").replace(" ", "")
        pieces.append(_power(f"({text})", e))
    prefix = "" if content == 1 else ("-" if content == -1 else str(content))
    return prefix + "".join(pieces) if pieces else str(content)
