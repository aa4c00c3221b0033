"""Exact ordered-field arithmetic.

Rationals are :class:`fractions.Fraction`.  Quadratic extensions are
:class:`QuadExt` values ``a + b*sqrt(d)`` living in a *tower*: a tuple of
radicands ``(d1,)`` or ``(d1, d2)``, each radicand a non-square element of the
field below it.  Every arithmetic result is collapsed to the lowest level that
holds it, so a value that happens to be rational is always a ``Fraction``;
together with fixed radicands this makes structural equality and hashing
agree with value equality.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

__all__ = [
    "QuadExt",
    "Scalar",
    "TowerError",
    "TowerDepthError",
    "MAX_DEPTH",
    "as_scalar",
    "tower_of",
    "join_towers",
    "sign",
    "sqrt",
    "is_rational",
    "format_scalar",
    "parse_scalar",
]

MAX_DEPTH = 2
_TRIAL_DIVISION_LIMIT = 10**6


class TowerError(ValueError):
    """Operands come from incompatible extension towers."""


class TowerDepthError(TowerError):
    """An operation would need more than ``MAX_DEPTH`` nested square roots."""


def as_scalar(x) -> "Scalar":
    if isinstance(x, (Fraction, QuadExt)):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse_scalar(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def tower_of(x) -> tuple:
    return x.tower if isinstance(x, QuadExt) else ()


def is_rational(x) -> bool:
    return not isinstance(x, QuadExt)


def join_towers(*towers: tuple) -> tuple:
    """Smallest tower containing all of ``towers``; they must be prefix-related."""
    best = ()
    for t in towers:
        if len(t) > len(best):
            t, best = best, t
        if best[: len(t)] != t:
            raise TowerError(f"mismatched towers {_fmt_tower(best)} and {_fmt_tower(t)}")
    return best


def _fmt_tower(t: tuple) -> str:
    return "Q" + "".join(f"(sqrt({format_scalar(d)}))" for d in t)


def _parts(x, tower: tuple):
    """(a, b) with x = a + b*sqrt(tower[-1]); x lives in a prefix of ``tower``."""
    if isinstance(x, QuadExt) and len(x.tower) == len(tower):
        return x.a, x.b
    return x, Fraction(0)


def _mk(a, b, tower: tuple):
    if not b:
        return a
    return QuadExt._raw(a, b, tower)


def _is_zero(x) -> bool:
    return not x


class QuadExt:
    """An element ``a + b*sqrt(d)`` of a quadratic extension, ``d = tower[-1]``.

    Immutable.  Construct through arithmetic on :func:`sqrt` results, or directly
    with ``QuadExt(a, b, d)``; the direct form reduces integer square factors of
    a rational ``d`` and rejects ``d`` that is not a positive non-square.
    """

    __slots__ = ("a", "b", "tower")

    def __init__(self, a, b, d):
        a, b, d = as_scalar(a), as_scalar(b), as_scalar(d)
        if sign(d) <= 0:
            raise ValueError(f"radicand must be positive, got {format_scalar(d)}")
        if isinstance(d, Fraction):
            f, core = _split_square(d)
            if core == 1:
                raise ValueError(f"radicand {d} is a perfect square")
            b = b * f
            d = Fraction(core)
        base = join_towers(tower_of(a), tower_of(b), tower_of(d))
        if tower_of(d) != base[: len(tower_of(d))]:
            raise TowerError("radicand outside the base field")
        if _sqrt_in(d, base) is not None:
            raise ValueError(f"radicand {format_scalar(d)} is a square in the base field")
        tower = base + (d,)
        if len(tower) > MAX_DEPTH:
            raise TowerDepthError(f"tower depth {len(tower)} exceeds {MAX_DEPTH}")
        self.a = a
        self.b = b
        self.tower = tower

    @classmethod
    def _raw(cls, a, b, tower):
        obj = object.__new__(cls)
        obj.a = a
        obj.b = b
        obj.tower = tower
        return obj

    @property
    def d(self):
        return self.tower[-1]

    @property
    def depth(self) -> int:
        return len(self.tower)

    def conjugate(self) -> "Scalar":
        return _mk(self.a, -self.b, self.tower)

    # arithmetic -------------------------------------------------------------

    def __add__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        t = join_towers(self.tower, tower_of(other))
        xa, xb = _parts(self, t)
        ya, yb = _parts(other, t)
        return _mk(xa + ya, xb + yb, t)

    __radd__ = __add__

    def __neg__(self):
        return QuadExt._raw(-self.a, -self.b, self.tower)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        t = join_towers(self.tower, tower_of(other))
        xa, xb = _parts(self, t)
        ya, yb = _parts(other, t)
        if _is_zero(yb):
            return _mk(xa * ya, xb * ya, t)
        if _is_zero(xb):
            return _mk(xa * ya, xa * yb, t)
        return _mk(xa * ya + xb * yb * t[-1], xa * yb + xb * ya, t)

    __rmul__ = __mul__

    def inverse(self):
        norm = self.a * self.a - self.b * self.b * self.d
        if _is_zero(norm):
            raise ZeroDivisionError("division by zero in quadratic extension")
        return _mk(self.a / norm, -self.b / norm, self.tower)

    def __truediv__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        if isinstance(other, QuadExt):
            return self * other.inverse()
        if not other:
            raise ZeroDivisionError("division by zero")
        return _mk(self.a / other, self.b / other, self.tower)

    def __rtruediv__(self, other):
        return as_scalar(other) * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = Fraction(1), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QuadExt)) and not isinstance(other, bool):
            try:
                return sign(self - other) == 0
            except TowerError:
                return False
        return NotImplemented

    def __hash__(self):
        if _is_zero(self.b):
            return hash(self.a)
        return hash((self.a, self.b, self.tower))

    def _cmp(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return None
        return sign(self - other)

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __bool__(self):
        return sign(self) != 0

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(float(self.d))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"QuadExt({format_scalar(self)})"


Scalar = Union[Fraction, QuadExt]


def sign(x) -> int:
    """Exact sign (-1, 0, 1) of an exact scalar.

    For ``a + b*sqrt(d)`` with ``a`` and ``b`` of opposite signs the winner is
    decided by comparing ``a**2`` against ``b**2 * d`` in the base field.
    """
    if not isinstance(x, QuadExt):
        return (x > 0) - (x < 0)
    sa, sb = sign(x.a), sign(x.b)
    if sb == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb if sa == 0 else sa
    t = sign(x.a * x.a - x.b * x.b * x.d)
    if t > 0:
        return sa
    if t < 0:
        return sb
    return 0


# square roots ----------------------------------------------------------------


def _strip_square_factors(m: int) -> tuple[int, int]:
    """m = f*f*core; square factors are removed for primes up to 10**6."""
    f = 1
    r = math.isqrt(m)
    if r * r == m:
        return r, 1
    p = 2
    while p <= _TRIAL_DIVISION_LIMIT and p * p <= m:
        pp = p * p
        while m % pp == 0:
            m //= pp
            f *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        return f * r, 1
    return f, m


def _split_square(x: Fraction) -> tuple[Fraction, int]:
    """x = s**2 * core with rational s and integer core >= 1."""
    p, q = x.numerator, x.denominator
    f, core = _strip_square_factors(p * q)
    return Fraction(f, q), core


def _sqrt_in(x, tower: tuple):
    """Exact square root of ``x`` inside field(tower), or None."""
    if sign(x) < 0:
        return None
    if not tower:
        if isinstance(x, QuadExt):
            return None
        s, core = _split_square(x)
        return s if core == 1 else None
    d = tower[-1]
    base = tower[:-1]
    a, b = _parts(x, tower)
    if _is_zero(b):
        r = _sqrt_in(a, base)
        if r is not None:
            return r
        r = _sqrt_in(a * d, base)
        if r is not None:
            return _mk(Fraction(0), r / d, tower)
        return None
    r = _sqrt_in(a * a - b * b * d, base)
    if r is None:
        return None
    for half in ((a + r) / 2, (a - r) / 2):
        p = _sqrt_in(half, base)
        if p is not None and not _is_zero(p):
            cand = _mk(p, b / (2 * p), tower)
            if cand * cand == x:
                return cand
    return None


def sqrt(x, tower: tuple = ()) -> Scalar:
    """Exact square root of ``x >= 0``.

    The root is sought in the field generated by ``tower`` and the tower of
    ``x``; if it is not there a new level is adjoined on top (rational
    radicands are reduced to integers first).  Raises :class:`TowerDepthError`
    when that would exceed ``MAX_DEPTH``.
    """
    x = as_scalar(x)
    if sign(x) < 0:
        raise ValueError(f"square root of negative value {format_scalar(x)}")
    base = join_towers(tower, tower_of(x))
    r = _sqrt_in(x, base)
    if r is not None:
        return r
    if len(base) >= MAX_DEPTH:
        raise TowerDepthError(
            f"sqrt({format_scalar(x)}) needs a level above {_fmt_tower(base)}"
        )
    if isinstance(x, Fraction):
        s, core = _split_square(x)
        return QuadExt._raw(Fraction(0), s, base + (Fraction(core),))
    return QuadExt._raw(Fraction(0), Fraction(1), base + (x,))


# text syntax -----------------------------------------------------------------


def _fmt_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(x) -> str:
    """Canonical text: ``p``, ``p/q``, ``a+b*sqrt(d)`` (nested in parentheses)."""
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return _fmt_rational(x)
    a, b, d = x.a, x.b, x.d
    root = f"sqrt({format_scalar(d)})"
    if isinstance(b, Fraction):
        mag = abs(b)
        term = root if mag == 1 else f"{_fmt_rational(mag)}*{root}"
        neg = b < 0
    else:
        term = f"({format_scalar(b)})*{root}"
        neg = False
    if _is_zero(a):
        return f"-{term}" if neg else term
    head = format_scalar(a) if isinstance(a, Fraction) else f"({format_scalar(a)})"
    return f"{head}{'-' if neg else '+'}{term}"


_TOKEN = re.compile(r"\s*(?:(\d+)|(sqrt)|([-+*/()]))")


def _tokenize(text: str) -> list:
    tokens, pos = [], 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad scalar syntax at {text[pos:]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text, tower):
        self.tokens = _tokenize(text)
        self.i = 0
        self.tower = tower
        self.text = text

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"bad scalar syntax: {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        val = self.term()
        if neg:
            val = -val
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def factor(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            val = self.expr()
            self.take(")")
            return val
        if tok == "sqrt":
            self.take()
            self.take("(")
            val = self.expr()
            self.take(")")
            root = sqrt(val, self.tower)
            # later roots stack on top of the levels seen so far
            self.tower = join_towers(self.tower, tower_of(root))
            return root
        if tok == "-":
            self.take()
            return -self.factor()
        if tok is not None and tok.isdigit():
            self.take()
            return Fraction(int(tok))
        raise ValueError(f"bad scalar syntax: {self.text!r}")


def parse_scalar(text: str, tower: tuple = ()) -> Scalar:
    """Parse the text syntax produced by :func:`format_scalar`.

    ``tower`` pins square roots to existing levels.  Without it, each new
    radicand is adjoined above the levels already seen in the text, so
    ``sqrt(2)+sqrt(3)`` lands in the tower ``(2, 3)``.
    """
    p = _Parser(text, tower)
    val = p.expr()
    if p.peek() is not None:
        raise ValueError(f"trailing input in scalar {text!r}")
    return val
