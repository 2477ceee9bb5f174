"""Symbolic normalization of expressions into sums of radical monomials.

The normal form of an expression is a finite sum

    sum_j  c_j * prod_i  b_i ** e_i

with rational coefficients ``c_j`` and monomials whose bases are either
prime integers or opaque "atoms" (subexpressions that do not simplify, kept
whole).  Prime exponents are reduced into [0, 1) by folding integer parts
into the coefficient, which makes the form canonical on the prime part:
two expressions with identical normal forms have identical values.

This is what lets ``compare`` certify equalities such as
a**(1/2) * b**(1/4) * b**(1/12) / a**(1/6) == (a*b)**(1/3) exactly, which
no amount of interval refinement could do.  Inequality of normal forms
proves nothing; callers fall back to certified intervals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .expr import RealExpr

# A monomial is a sorted tuple of ((kind, key), exponent) pairs where kind
# "p" carries a prime int and kind "a" carries the canonical string of an
# opaque subexpression.  The empty monomial is the rational unit.
Monomial = tuple
NormalForm = dict  # Monomial -> Fraction coefficient

_UNIT: Monomial = ()

# Distribution caps: beyond these we atomize the subtree instead of
# producing enormous formal sums.  Atomizing is always sound.
_MAX_TERMS = 64
_MAX_INT_POW = 64

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]

_factor_cache: dict = {}


def _factor(n: int) -> dict:
    """Prime factorization of n >= 1 as {prime: multiplicity}."""
    if n in _factor_cache:
        return dict(_factor_cache[n])
    m = n
    out: dict = {}
    for p in _SMALL_PRIMES:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    d = 53
    while d * d <= m and d < 100000:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 2
    if m > 1:
        if m < 10**10:
            out[m] = out.get(m, 0) + 1
        else:
            from sympy import factorint  # heavy; only for large survivors

            for p, k in factorint(m).items():
                out[int(p)] = out.get(int(p), 0) + int(k)
    _factor_cache[n] = dict(out)
    return out


_atom_exprs: dict = {}


def _atom_key(e: RealExpr):
    from .grammar import format_expr

    key = ("a", format_expr(e))
    _atom_exprs[key[1]] = e
    return key


def provably_nonneg(e: RealExpr) -> bool:
    """Certified proof that e >= 0; False means unknown, not negative.

    Tries a syntactic argument first and falls back to one certified
    interval evaluation (sound: the interval always contains the value)."""
    if _syntactically_nonneg(e):
        return True
    from .interval import _Refine, _eval

    try:
        lo, hi = _eval(e, 64, {})
    except Exception:
        return False
    return lo >= 0


def _syntactically_nonneg(e: RealExpr) -> bool:
    if e.op == "rat":
        return e.data >= 0
    if e.op in ("add", "mul", "div"):
        return all(_syntactically_nonneg(a) for a in e.args)
    if e.op == "pow":
        if e.data.denominator > 1:
            # well-formedness forces a nonnegative base, hence result
            return True
        if e.data.numerator % 2 == 0:
            return True
        return _syntactically_nonneg(e.args[0])
    if e.op == "floor":
        return _syntactically_nonneg(e.args[0])
    return False


def _mono_from_pairs(pairs) -> Monomial:
    return tuple(sorted((k, v) for k, v in pairs if v != 0))


def _nf(terms) -> NormalForm:
    out: NormalForm = {}
    for mono, coeff in terms:
        if coeff == 0:
            continue
        acc = out.get(mono, Fraction(0)) + coeff
        if acc == 0:
            out.pop(mono, None)
        else:
            out[mono] = acc
    return out


def _reduce_prime_parts(mono_map: dict, coeff: Fraction):
    """Fold integer parts of prime exponents into the coefficient."""
    reduced = {}
    for key, e in mono_map.items():
        if e == 0:
            continue
        if key[0] == "p":
            k = e.numerator // e.denominator  # floor
            frac = e - k
            if k:
                coeff *= Fraction(key[1]) ** k
            if frac:
                reduced[key] = frac
        else:
            reduced[key] = e
    return _mono_from_pairs(reduced.items()), coeff


def _rat_term(x: Fraction):
    return (_UNIT, x)


def _mul_terms(t1, t2):
    """Product of two single terms (mono, coeff)."""
    m1, c1 = t1
    m2, c2 = t2
    merged = {}
    for key, e in m1:
        merged[key] = merged.get(key, Fraction(0)) + e
    for key, e in m2:
        merged[key] = merged.get(key, Fraction(0)) + e
    mono, coeff = _reduce_prime_parts(merged, c1 * c2)
    return (mono, coeff)


def _nf_add(a: NormalForm, b: NormalForm, negate=False) -> NormalForm:
    terms = list(a.items())
    for mono, coeff in b.items():
        terms.append((mono, -coeff if negate else coeff))
    return _nf(terms)


def _nf_mul(a: NormalForm, b: NormalForm) -> Optional[NormalForm]:
    if len(a) * len(b) > _MAX_TERMS:
        return None
    terms = []
    for ta in a.items():
        for tb in b.items():
            terms.append(_mul_terms(ta, tb))
    out = _nf(terms)
    if len(out) > _MAX_TERMS:
        return None
    return out


def _rational_pow(c: Fraction, e: Fraction):
    """c**e as (coeff, mono) for c > 0, factoring c into primes."""
    merged = {}
    for p, k in _factor(c.numerator).items():
        merged[("p", p)] = merged.get(("p", p), Fraction(0)) + k * e
    for p, k in _factor(c.denominator).items():
        merged[("p", p)] = merged.get(("p", p), Fraction(0)) - k * e
    return _reduce_prime_parts(merged, Fraction(1))


def _single_term_pow(term, e: Fraction):
    """(coeff * mono)**e for positive coefficient, any rational e."""
    mono, coeff = term
    merged = {key: exp * e for key, exp in mono}
    base_mono, base_coeff = _reduce_prime_parts(merged, Fraction(1))
    cm, cc = _rational_pow(coeff, e)
    return _mul_terms((base_mono, base_coeff), (cm, cc))


def _atomize(e: RealExpr, exponent: Fraction = Fraction(1)) -> NormalForm:
    return {_mono_from_pairs([(_atom_key(e), exponent)]): Fraction(1)}


def _safe_fractional_rescale(mono, e: Fraction) -> bool:
    """Scaling a monomial's exponents by a non-integer must not lose sign
    information, or (X**2)**(1/2) would wrongly simplify to X.

    An atom X carried at an integer exponent a is suspect when its sign is
    unknown.  For even a the factor equals |X|**a, so the rewrite X**(a*e)
    is faithful only when a*e is again an even integer.  At most one
    odd-exponent suspect is allowed: the whole base is nonnegative (the
    expression is a fractional power), every other factor is nonnegative,
    so that lone odd factor, hence X itself, is nonnegative too."""
    odd_suspects = 0
    for key, a in mono:
        if key[0] != "a" or a.denominator > 1:
            continue  # primes and fractional carriers presuppose X >= 0
        x = _atom_exprs.get(key[1])
        if x is not None and provably_nonneg(x):
            continue
        if a.numerator % 2 == 0:
            scaled = a * e
            if scaled.denominator > 1 or scaled.numerator % 2:
                return False
        else:
            odd_suspects += 1
            if odd_suspects > 1:
                return False
    return True


_normal_cache: dict = {}


def normalize(e: RealExpr) -> NormalForm:
    """Normal form of e.  Always succeeds; unsimplifiable subtrees become
    atoms, so the result is a faithful rewriting of e's value."""
    hit = _normal_cache.get(e)
    if hit is not None:
        return hit
    out = _normalize(e)
    _normal_cache[e] = out
    return out


def _normalize(e: RealExpr) -> NormalForm:
    if e.op == "rat":
        return _nf([_rat_term(e.data)])
    if e.op == "add":
        return _nf_add(normalize(e.args[0]), normalize(e.args[1]))
    if e.op == "sub":
        return _nf_add(normalize(e.args[0]), normalize(e.args[1]), negate=True)
    if e.op == "mul":
        prod = _nf_mul(normalize(e.args[0]), normalize(e.args[1]))
        return prod if prod is not None else _atomize(e)
    if e.op == "div":
        num, den = normalize(e.args[0]), normalize(e.args[1])
        if len(den) == 1:
            (mono, coeff), = den.items()
            if coeff > 0 or all(k[0] == "p" for k, _ in mono):
                inv_mono = _mono_from_pairs((k, -x) for k, x in mono)
                inv = _nf([ _mul_terms((inv_mono, 1 / coeff), (_UNIT, Fraction(1))) ])
                prod = _nf_mul(num, inv)
                if prod is not None:
                    return prod
        return _atomize(e)
    if e.op == "pow":
        exp = e.data
        if exp == 0:
            return _nf([_rat_term(Fraction(1))])
        if abs(exp.numerator) > 10**6 or exp.denominator > 10**6:
            # keep absurd exponents formal; folding them would materialize
            # astronomically large integers
            return _atomize(e.args[0], exp)
        base = normalize(e.args[0])
        if exp.denominator == 1:
            p = exp.numerator
            if len(base) == 1:
                (mono, coeff), = base.items()
                if coeff > 0:
                    mono2, coeff2 = _single_term_pow((mono, coeff), exp)
                    return _nf([(mono2, coeff2)])
                if coeff < 0 and all(k[0] == "p" for k, _ in mono) and all(
                    (x * p).denominator == 1 for _, x in mono
                ):
                    # integer power of a negative rational-radical monomial
                    mono2, coeff2 = _single_term_pow((mono, -coeff), exp)
                    sign = -1 if p % 2 else 1
                    return _nf([(mono2, sign * coeff2)])
            elif 0 < p <= _MAX_INT_POW:
                acc: Optional[NormalForm] = _nf([_rat_term(Fraction(1))])
                for _ in range(p):
                    acc = _nf_mul(acc, base)
                    if acc is None:
                        break
                if acc is not None:
                    return acc
            # negative or large integer power of a sum: atomize the base
            return _atomize(e.args[0], exp)
        # fractional exponent
        if len(base) == 1:
            (mono, coeff), = base.items()
            if coeff > 0 and _safe_fractional_rescale(mono, exp):
                mono2, coeff2 = _single_term_pow((mono, coeff), exp)
                return _nf([(mono2, coeff2)])
        return _atomize(e.args[0], exp)
    if e.op == "floor":
        arg = normalize(e.args[0])
        r = _nf_rational(arg)
        if r is not None:
            return _nf([_rat_term(Fraction(r.numerator // r.denominator))])
        return _atomize(e)
    raise AssertionError(e.op)


def _nf_rational(nf: NormalForm) -> Optional[Fraction]:
    if not nf:
        return Fraction(0)
    if len(nf) == 1 and _UNIT in nf:
        return nf[_UNIT]
    return None


def rational_value(e: RealExpr) -> Optional[Fraction]:
    """Exact rational value of e, or None if not provably rational."""
    return _nf_rational(normalize(e))


def difference_sign(a: RealExpr, b: RealExpr) -> Optional[int]:
    """Sign of a - b when symbolically decidable: -1, 0, or +1.

    0 is returned only on a proof of equality (identical normal forms).
    A nonzero sign is returned when the difference is a nonzero rational,
    or a single monomial over primes only (such monomials are positive).
    """
    diff = _nf_add(normalize(a), normalize(b), negate=True)
    if not diff:
        return 0
    r = _nf_rational(diff)
    if r is not None:
        return 1 if r > 0 else -1
    if len(diff) == 1:
        (mono, coeff), = diff.items()
        if all(k[0] == "p" for k, _ in mono):
            return 1 if coeff > 0 else -1
    return None
