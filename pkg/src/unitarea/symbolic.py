"""Exact bivariate rational functions and the separability test.

Polynomials in ``x`` and ``y`` are stored as ``{(i, j): coeff}`` maps with
exact scalar coefficients (rationals or quadratic-extension elements).
Rational functions keep a numerator and a denominator that are reduced only
by common monomial factors and by making the denominator's leading
coefficient 1; equality is decided by cross-multiplication, so no
polynomial gcd is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .constructions import general_position_roots
from .errors import InvariantError
from .scalar import as_scalar, format_scalar

__all__ = [
    "BivarPoly",
    "BivarRatFunc",
    "Decomposition",
    "X",
    "Y",
    "ratfunc_arith",
    "partial_derivative",
    "compose_univariate",
    "separability_test",
    "vertex_function",
    "decompose_f",
]


def _order_key(mono: tuple[int, int]) -> tuple[int, int]:
    return (mono[0] + mono[1], mono[0])


class BivarPoly:
    """Immutable polynomial in ``x`` and ``y``; zero coefficients are never stored."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            if i < 0 or j < 0:
                raise ValueError(f"negative exponent in {(i, j)}")
            c = as_scalar(c)
            if c:
                clean[(int(i), int(j))] = c
        self._terms = clean

    @classmethod
    def constant(cls, c) -> "BivarPoly":
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._terms)

    def coefficient(self, i: int, j: int):
        return self._terms.get((i, j), Fraction(0))

    def leading(self) -> tuple[tuple[int, int], object]:
        if not self._terms:
            raise ValueError("the zero polynomial has no leading term")
        mono = max(self._terms, key=_order_key)
        return mono, self._terms[mono]

    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(i + j for i, j in self._terms)
        k = _var_index(var)
        return max(m[k] for m in self._terms)

    def __eq__(self, other):
        if not isinstance(other, BivarPoly):
            try:
                other = BivarPoly.constant(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _coerce(self, other) -> "BivarPoly":
        return other if isinstance(other, BivarPoly) else BivarPoly.constant(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return BivarPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BivarPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for (i, j), a in self._terms.items():
            for (k, l), b in other._terms.items():
                m = (i + k, j + l)
                out[m] = out.get(m, 0) + a * b
        return BivarPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = BivarPoly.constant(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "BivarPoly":
        return BivarPoly({m: v * c for m, v in self._terms.items()})

    def shift_down(self, i: int, j: int) -> "BivarPoly":
        """Divide by the monomial ``x^i y^j`` (which must divide every term)."""
        return BivarPoly({(a - i, b - j): c for (a, b), c in self._terms.items()})

    def min_exponents(self) -> tuple[int, int]:
        return (min(m[0] for m in self._terms), min(m[1] for m in self._terms))

    def diff(self, var: str) -> "BivarPoly":
        k = _var_index(var)
        out = {}
        for m, c in self._terms.items():
            if m[k]:
                e = list(m)
                e[k] -= 1
                out[tuple(e)] = c * m[k]
        return BivarPoly(out)

    def diff_x(self) -> "BivarPoly":
        return self.diff("x")

    def diff_y(self) -> "BivarPoly":
        return self.diff("y")

    def evaluate(self, x, y):
        x, y = as_scalar(x), as_scalar(y)
        total = Fraction(0)
        for (i, j), c in self._terms.items():
            total = total + c * x**i * y**j
        return total

    def format(self, names: tuple[str, str] = ("x", "y")) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for mono in sorted(self._terms, key=_order_key, reverse=True):
            c = self._terms[mono]
            vars_ = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, mono)
                if e
            )
            coef = format_scalar(c)
            if "+" in coef[1:] or "-" in coef[1:]:
                neg, coef = False, f"({coef})"
            else:
                neg = coef.startswith("-")
                coef = coef.lstrip("-")
            if vars_:
                body = vars_ if coef == "1" else f"{coef}*{vars_}"
            else:
                body = coef
            pieces.append(("-" if neg else "+", body))
        sign, body = pieces[0]
        text = f"-{body}" if sign == "-" else body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"BivarPoly({self.format()!r})"


def _var_index(var: str) -> int:
    if var not in ("x", "y"):
        raise ValueError(f"unknown variable {var!r}; expected 'x' or 'y'")
    return 0 if var == "x" else 1


X = BivarPoly({(1, 0): 1})
Y = BivarPoly({(0, 1): 1})


class BivarRatFunc:
    """``num/den`` with ``den != 0``; monomial factors removed, den monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = num if isinstance(num, BivarPoly) else BivarPoly.constant(num)
        den = den if isinstance(den, BivarPoly) else BivarPoly.constant(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = BivarPoly(), BivarPoly.constant(1)
            return
        mi, mj = num.min_exponents()
        di, dj = den.min_exponents()
        ci, cj = min(mi, di), min(mj, dj)
        if ci or cj:
            num, den = num.shift_down(ci, cj), den.shift_down(ci, cj)
        _, lead = den.leading()
        if lead != 1:
            inv = 1 / lead
            num, den = num.scale(inv), den.scale(inv)
        # a numerator proportional to the denominator collapses to a constant
        if num.degree() == den.degree():
            mono, lead_n = num.leading()
            if den.leading()[0] == mono and num == den.scale(lead_n):
                num, den = BivarPoly.constant(lead_n), BivarPoly.constant(1)
        self.num, self.den = num, den

    @classmethod
    def coerce(cls, value) -> "BivarRatFunc":
        return value if isinstance(value, BivarRatFunc) else cls(value)

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other):
        try:
            other = BivarRatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __add__(self, other):
        return ratfunc_arith(self, other, "add")

    def __radd__(self, other):
        return ratfunc_arith(other, self, "add")

    def __sub__(self, other):
        return ratfunc_arith(self, other, "sub")

    def __rsub__(self, other):
        return ratfunc_arith(other, self, "sub")

    def __mul__(self, other):
        return ratfunc_arith(self, other, "mul")

    def __rmul__(self, other):
        return ratfunc_arith(other, self, "mul")

    def __truediv__(self, other):
        return ratfunc_arith(self, other, "div")

    def __rtruediv__(self, other):
        return ratfunc_arith(other, self, "div")

    def __neg__(self):
        return BivarRatFunc(-self.num, self.den)

    def evaluate(self, x, y):
        d = self.den.evaluate(x, y)
        if not d:
            raise ZeroDivisionError(f"pole at ({x}, {y})")
        return self.num.evaluate(x, y) / d

    def format(self, names: tuple[str, str] = ("x", "y")) -> str:
        top = self.num.format(names)
        if self.den == 1:
            return top
        return f"({top})/({self.den.format(names)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"BivarRatFunc({self.format()!r})"


def ratfunc_arith(f, g, op: str) -> BivarRatFunc:
    """``f op g`` for op in add, sub, mul, div."""
    f, g = BivarRatFunc.coerce(f), BivarRatFunc.coerce(g)
    if op in ("add", "sub"):
        gn = g.num if op == "add" else -g.num
        if f.den == g.den:
            return BivarRatFunc(f.num + gn, f.den)
        return BivarRatFunc(f.num * g.den + gn * f.den, f.den * g.den)
    if op == "mul":
        return BivarRatFunc(f.num * g.num, f.den * g.den)
    if op == "div":
        if not g.num:
            raise ZeroDivisionError("division by the zero function")
        if f.den == g.den:
            return BivarRatFunc(f.num, g.num)
        return BivarRatFunc(f.num * g.den, f.den * g.num)
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(f, var: str) -> BivarRatFunc:
    f = BivarRatFunc.coerce(f)
    dn, dd = f.num.diff(var), f.den.diff(var)
    if not dd:
        return BivarRatFunc(dn, f.den)
    return BivarRatFunc(dn * f.den - f.num * dd, f.den * f.den)


def compose_univariate(h: BivarRatFunc, u: BivarRatFunc) -> BivarRatFunc:
    """``h(u)`` where ``h`` is a rational function of ``x`` alone."""
    if h.num.degree("y") > 0 or h.den.degree("y") > 0:
        raise ValueError("outer function must depend on x only")
    m = max(h.num.degree("x"), h.den.degree("x"), 0)
    n_pows = [BivarPoly.constant(1)]
    d_pows = [BivarPoly.constant(1)]
    for _ in range(m):
        n_pows.append(n_pows[-1] * u.num)
        d_pows.append(d_pows[-1] * u.den)

    def homogenize(p: BivarPoly) -> BivarPoly:
        out = BivarPoly()
        for (i, _), c in p.terms.items():
            out = out + (n_pows[i] * d_pows[m - i]).scale(c)
        return out

    return BivarRatFunc(homogenize(h.num), homogenize(h.den))


def separability_test(q) -> bool:
    """Whether ``q*q_xy - q_x*q_y`` vanishes identically.

    Away from zeros and poles of ``q`` this is the statement that the mixed
    second partial of ``log|q|`` is zero, i.e. ``q`` splits as a function of
    ``x`` times a function of ``y``.
    """
    q = BivarRatFunc.coerce(q)
    if not q:
        raise ValueError("separability is undefined for the zero function")
    qx = partial_derivative(q, "x")
    qy = partial_derivative(q, "y")
    qxy = partial_derivative(qx, "y")
    return (q * qxy - qx * qy).is_zero()


def vertex_function(alpha) -> BivarRatFunc:
    """``(xy - alpha*x - 2)/(y - x)``: the abscissa ``z`` completing ``(x,0), (0,y)``
    to a unit triangle with a third vertex on ``x + y = alpha``."""
    alpha = as_scalar(alpha)
    return BivarRatFunc(X * Y - X.scale(alpha) - 2, Y - X)


@dataclass(frozen=True)
class Decomposition:
    alpha: object
    s1: object
    s2: object
    phi: BivarRatFunc
    psi: BivarRatFunc
    h: BivarRatFunc
    f: BivarRatFunc

    def report(self) -> dict:
        return {
            "alpha": format_scalar(self.alpha),
            "s1": format_scalar(self.s1),
            "s2": format_scalar(self.s2),
            "phi": self.phi.format(("x", "y")),
            "psi": self.psi.format(("x", "y")),
            "h": self.h.format(("u", "v")),
            "f": self.f.format(("x", "y")),
        }


def _linear_fraction(top: Iterable, bottom: Iterable, var: BivarPoly) -> BivarRatFunc:
    (a, b), (c, d) = top, bottom
    return BivarRatFunc(var.scale(a) + b, var.scale(c) + d)


def decompose_f(alpha) -> Decomposition:
    """Write ``vertex_function(alpha)`` as ``h(phi(x) * psi(y))``.

    With ``s1 > s2`` the roots of ``s^2 - alpha*s - 2``:
    ``phi = (x - s2)/(x - s1)``, ``psi = (y - s1)/(y - s2)`` and
    ``h(u) = (s2 - s1*u)/(1 - u)``.  The identity is checked exactly by
    clearing denominators; a failure raises :class:`InvariantError`.
    """
    alpha = as_scalar(alpha)
    s1, s2 = general_position_roots(alpha)
    phi = _linear_fraction((1, -s2), (1, -s1), X)
    psi = _linear_fraction((1, -s1), (1, -s2), Y)
    h = _linear_fraction((-s1, s2), (-1, 1), X)
    f = vertex_function(alpha)
    composed = compose_univariate(h, phi * psi)
    residue = f.num * composed.den - f.den * composed.num
    if residue:
        raise InvariantError(f"f - h(phi*psi) leaves the nonzero numerator {residue}")
    return Decomposition(alpha, s1, s2, phi, psi, h, f)
