"""Differential-operator realizations of the word polynomials.

A word in {sigma, D, lam, lam_inv} becomes a normal-ordered operator
sum_j c_j(v) d^j/dv^j by pushing each D right past the multiplication
letters with the product rule; sigma is multiplication by v/omega'(v) and
lam by a supplied unit series.  Normal ordering happens lazily here, at
application time; the word-level data stays free in ncwords.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .ncwords import (
    D,
    LAM,
    LAMINV,
    SIGMA,
    NCPoly,
    head_word_poly,
    head_word_poly_matrix,
)
from .polys import BiPoly, Poly, divided_difference
from .series import OrderError, PowerSeries, SeriesError
from .umbral import BinomialFamily, rename


class DiffOperator:
    """Normal-ordered sum of (series coefficient) * (d/dv)^j terms."""

    __slots__ = ("var", "terms")

    def __init__(self, var: str, terms):
        self.var = var
        self.terms = {j: c for j, c in terms.items() if not c.is_zero()}

    @staticmethod
    def identity(var: str, order: int) -> "DiffOperator":
        return DiffOperator(var, {0: PowerSeries.one(var, order)})

    def max_derivative(self) -> int:
        return max(self.terms, default=0)

    def apply(self, g: PowerSeries) -> PowerSeries:
        """sum_j c_j * g^{(j)}; the result order reflects derivative losses."""
        if g.var != self.var:
            raise SeriesError(f"operator in {self.var} applied to {g.var}")
        if not self.terms:
            return PowerSeries.zero(g.var, max(g.order - 2, 0), g.czero)
        out = None
        for j, c in self.terms.items():
            term = c * g.derive(j) if j else c * g
            out = term if out is None else out + term
        return out

    def __add__(self, other: "DiffOperator"):
        terms = dict(self.terms)
        for j, c in other.terms.items():
            terms[j] = terms[j] + c if j in terms else c
        return DiffOperator(self.var, terms)

    def scale(self, c) -> "DiffOperator":
        return DiffOperator(self.var, {j: x.scale(c) for j, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for j in keys:
            a, b = self.terms.get(j), other.terms.get(j)
            if a is None or b is None:
                return False
            if not a.prefix_equal(b):
                return False
        return True

    def __repr__(self):
        bits = [f"({c}) d^{j}" for j, c in sorted(self.terms.items())]
        return " + ".join(bits) if bits else "0"


def word_to_diffop(
    w: tuple, sigma: PowerSeries, lam: PowerSeries | None = None
) -> DiffOperator:
    """Realize one E-free word, rightmost letter acting first."""
    var = sigma.var
    subs = {SIGMA: sigma}
    if lam is not None:
        subs[LAM] = lam
        subs[LAMINV] = lam.inv()
    terms = {0: PowerSeries.one(var, sigma.order)}
    for letter in reversed(w):
        if letter == D:
            new: dict = {}
            for j, c in terms.items():
                if c.order < 1:
                    raise OrderError(
                        "operator coefficient truncated away; increase the "
                        "family order"
                    )
                dc = c.derive()
                new[j] = new[j] + dc if j in new else dc
                new[j + 1] = new[j + 1] + c if j + 1 in new else c
            terms = new
        else:
            if letter not in subs:
                raise SeriesError(f"no series substitution for letter {letter!r}")
            m = subs[letter]
            terms = {j: m * c for j, c in terms.items()}
    return DiffOperator(var, terms)


def ncpoly_to_diffop(
    p: NCPoly, sigma: PowerSeries, lam: PowerSeries | None = None
) -> DiffOperator:
    out = DiffOperator(sigma.var, {})
    for w, c in p.terms.items():
        out = out + word_to_diffop(w, sigma, lam).scale(c)
    return out


def build_Tn(
    fam: BinomialFamily,
    n: int,
    route: str = "nu",
    var: str = "s",
    order: int | None = None,
) -> DiffOperator:
    """The grade-n operator of the conjugation expansion, in (v, d/dv).

    Both routes build the same head word polynomial -- ``nu`` by iterating
    the rewrite on E, ``matrix`` by the successive row-times-matrix scheme --
    then substitute sigma -> v/omega'(v).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if route == "nu":
        words = head_word_poly(n)
    elif route == "matrix":
        words = head_word_poly_matrix(n)
    else:
        raise ValueError(f"unknown route {route!r}")
    sigma = fam.sigma(var)
    if order is not None:
        if order > sigma.order:
            raise OrderError(
                f"family truncation gives sigma only to order {sigma.order}"
            )
        sigma = sigma.truncate(order)
    return ncpoly_to_diffop(words, sigma)


def apply_Tn(T: DiffOperator, g: PowerSeries) -> PowerSeries:
    return T.apply(g)


# -- the divided-difference / shift commutator identity -------------------------


def divided_difference_shift_check(n: int, m: int):
    """Both sides of the commutator law for the resolvent of the 0-derivative,

        eval_0 shift_p d^n/dp^n (1 - p L)^{-1} L
            = eval_0 (1/(n+1)) [d^{n+1}/dp^{n+1} shift_p
                                - shift_p d^{n+1}/dp^{n+1}],

    applied to x^m with p symbolic, compared exactly as polynomials in p.
    The left side uses the explicit rational action
    (1 - p L)^{-1} f = (x f(x) - p f(p)) / (x - p).
    """
    g = Poly([Fraction(0)] * m + [Fraction(1)])  # x^m
    lg = Poly(g.coeffs[1:])  # L x^m
    lhs = divided_difference(lg).d_dp(n).shift_x_by_p().at_x0()

    shifted = BiPoly({(m, 0): Fraction(1)}).shift_x_by_p()
    rhs = (shifted.d_dp(n + 1).at_x0()) / Fraction(n + 1)
    # the reversed-order term shift_p d^{n+1}/dp^{n+1} x^m vanishes (x^m is
    # p-free), so it contributes nothing to either side
    ok = lhs == rhs
    return ok, {"n": n, "m": m, "lhs": repr(lhs), "rhs": repr(rhs)}


# -- iterated-integral representation (small n only) -----------------------------


class EpsPoly:
    """Polynomial in eps_1..eps_n (degree <= 2 each) and t_1..t_n, with
    truncated power-series coefficients."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = dict(terms or {})

    @staticmethod
    def const(n: int, series: PowerSeries) -> "EpsPoly":
        return EpsPoly(n, {((0,) * n, (0,) * n): series})

    def add(self, other: "EpsPoly") -> "EpsPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return EpsPoly(self.n, out)

    def mul(self, other: "EpsPoly") -> "EpsPoly":
        out: dict = {}
        for (e1, t1), v1 in self.terms.items():
            for (e2, t2), v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if any(d > 2 for d in e):
                    continue  # killed by the d^2/deps^2 |_0 extraction
                t = tuple(a + b for a, b in zip(t1, t2))
                key = (e, t)
                prod = v1 * v2
                out[key] = out[key] + prod if key in out else prod
        return EpsPoly(self.n, out)


def _taylor_shift(F: PowerSeries, delta: EpsPoly, max_j: int) -> EpsPoly:
    """F(v + delta) expanded through the eps-truncation of delta."""
    n = delta.n
    out = EpsPoly.const(n, F)
    power = None
    deriv = F
    for j in range(1, max_j + 1):
        deriv = deriv.derive()
        power = delta if j == 1 else power.mul(delta)
        if not power.terms:
            break
        c = Fraction(1, factorial(j))
        out = out.add(
            EpsPoly(n, {k: (v * deriv).scale(c) for k, v in power.terms.items()})
        )
    return out


def tn_via_integral(fam: BinomialFamily, n: int, g: PowerSeries) -> PowerSeries:
    """Iterated [0,1]^n integral representation of the grade-n operator.

    Expands to degree exactly 2 in each eps_k and integrates the t-monomials
    with the exact rule int_0^1 t^{a-1} dt = 1/a; a zero exponent would mean
    the expansion bookkeeping is broken, and raises.
    """
    if n not in (1, 2):
        raise ValueError("the integral form is only tractable for n in {1, 2}")
    var = g.var
    sigma = rename(fam.sigma("tmp"), var)
    work = min(g.order, sigma.order)
    sig = sigma.truncate(work)
    gg = g.truncate(work)

    def delta_upto(k: int) -> EpsPoly:
        # eps_k t_k + eps_{k-1} t_{k-1} t_k + ... + eps_1 t_1 ... t_k
        acc = EpsPoly(n, {})
        for i in range(1, k + 1):
            e = tuple(1 if j == i - 1 else 0 for j in range(n))
            t = tuple(1 if i - 1 <= j <= k - 1 else 0 for j in range(n))
            acc = acc.add(EpsPoly(n, {(e, t): PowerSeries.one(var, work)}))
        return acc

    acc = EpsPoly.const(n, PowerSeries.one(var, work))
    for k in range(1, n):
        acc = acc.mul(_taylor_shift(sig, delta_upto(k), 2 * n))
    acc = acc.mul(_taylor_shift(gg, delta_upto(n), 2 * n))

    top = (2,) * n
    total = None
    for (e, t), series in acc.terms.items():
        if e != top:
            continue
        weight = Fraction(2**n)  # (d^2/deps^2)|_0 contributes 2! per slot
        for a in t:
            if a == 0:
                raise SeriesError("divergent t-monomial in the integral form")
            weight /= a
        term = series.scale(weight)
        total = term if total is None else total + term
    if total is None:
        return PowerSeries.zero(var, max(work - 2 * n, 0), g.czero)
    return sig * total
