"""Exact real numbers.

Three kinds of value are supported, all immutable and canonical:

* rationals, represented directly by :class:`fractions.Fraction`;
* quadratic surds ``a + b*sqrt(d)`` (:class:`QuadSurd`);
* rational combinations ``q0 + sum(q_p * log2(p))`` over odd primes ``p``
  (:class:`LogLin`).

A surd with ``b == 0`` or a log combination without terms is never built:
the constructors hand back the equivalent :class:`~fractions.Fraction`
instead, so structural equality coincides with numeric equality.

Surds and log combinations can be mixed freely with rationals, but not with
each other (except for equality, which is always ``False`` between an
irrational surd and an irrational log combination).
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Mapping, Union

import mpmath
from sympy import factorint, isprime

from .errors import IncomparableKinds

__all__ = [
    "ExactReal",
    "QuadSurd",
    "LogLin",
    "PHI",
    "exact",
    "log2",
    "sqrt",
    "sign",
    "compare",
    "add",
    "sub",
    "mul",
    "div",
    "scalar_mul",
    "floor",
    "frac",
    "to_decimal",
    "to_json",
    "from_json",
    "parse",
]

# Above this many bits the integer-power sign test for log combinations
# switches to rigorous interval evaluation.
POWER_BITS_LIMIT = 1 << 20


def exact(x) -> "ExactReal":
    """Coerce ``int`` / ``Fraction`` / exact values to a canonical exact real."""
    if isinstance(x, (QuadSurd, LogLin)):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return parse(x)
    raise TypeError(f"cannot interpret {x!r} as an exact real")


def _rat(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected a rational, got {x!r}")


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, d)`` with ``n == k*k*d`` and ``d`` square-free."""
    k, d = 1, 1
    for p, e in factorint(n).items():
        k *= p ** (e // 2)
        if e % 2:
            d *= p
    return k, d


class _Irrational:
    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __add__(self, other):
        try:
            return add(self, other)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        try:
            return sub(self, other)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    def __rsub__(self, other):
        try:
            return sub(other, self)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    def __mul__(self, other):
        try:
            return mul(self, other)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            return div(self, other)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    def __rtruediv__(self, other):
        try:
            return div(other, self)
        except TypeError as e:
            if isinstance(e, IncomparableKinds):
                raise
            return NotImplemented

    def __neg__(self):
        return scalar_mul(-1, self)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if sign(self) < 0 else self

    def _cmp(self, other):
        if not isinstance(other, (int, Fraction, QuadSurd, LogLin)):
            return NotImplemented
        return compare(self, other)

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __float__(self):
        # display only; never used to decide anything
        return float(_approx(self, 64))

    def __floor__(self):
        return floor(self)

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"


class QuadSurd(_Irrational):
    """``a + b*sqrt(d)`` with rational ``a``, ``b`` and square-free ``d > 1``."""

    __slots__ = ("a", "b", "d", "_hash")

    def __new__(cls, a, b, d: int):
        a, b = _rat(a), _rat(b)
        if not isinstance(d, int) or d <= 0:
            raise ValueError(f"radicand must be a positive integer, got {d!r}")
        k, d = _squarefree_split(d)
        b *= k
        if b == 0 or d == 1:
            return a + b
        return cls._raw(a, b, d)

    @classmethod
    def _raw(cls, a: Fraction, b: Fraction, d: int):
        self = object.__new__(cls)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "_hash", hash(("quad", a, b, d)))
        return self

    def __reduce__(self):
        return (QuadSurd, (self.a, self.b, self.d))

    def __eq__(self, other):
        if isinstance(other, QuadSurd):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction, LogLin)):
            return False
        return NotImplemented

    def __hash__(self):
        return self._hash

    def conjugate(self):
        return QuadSurd._raw(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def __str__(self):
        rad = f"sqrt({self.d})"
        if self.b == 1:
            tail = rad
        elif self.b == -1:
            tail = "-" + rad
        else:
            tail = f"{self.b}*{rad}"
        if self.a == 0:
            return tail
        return f"{self.a}{tail}" if tail.startswith("-") else f"{self.a}+{tail}"


class LogLin(_Irrational):
    """``q0 + sum(q_p * log2(p))`` with rational coefficients over odd primes.

    ``terms`` maps primes to coefficients. A coefficient on 2 is folded into
    ``q0`` since ``log2(2) == 1``.
    """

    __slots__ = ("q0", "terms", "_hash")

    def __new__(cls, q0=0, terms: Mapping[int, object] = ()):
        q0 = _rat(q0)
        clean: dict[int, Fraction] = {}
        for p, c in dict(terms).items():
            if not isinstance(p, int) or not isprime(p):
                raise ValueError(f"log2 coordinates must be primes, got {p!r}")
            c = _rat(c)
            if p == 2:
                q0 += c
            elif c:
                clean[p] = clean.get(p, 0) + c
        clean = {p: c for p, c in clean.items() if c}
        if not clean:
            return q0
        return cls._raw(q0, tuple(sorted(clean.items())))

    @classmethod
    def _raw(cls, q0: Fraction, terms: tuple):
        """Build from an already canonical sorted ``((p, q_p), ...)`` tuple."""
        if not terms:
            return q0
        self = object.__new__(cls)
        object.__setattr__(self, "q0", q0)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", hash(("loglin", q0, terms)))
        return self

    def __reduce__(self):
        return (LogLin._raw, (self.q0, self.terms))

    def coefficient(self, p: int) -> Fraction:
        if p == 2:
            return self.q0
        return dict(self.terms).get(p, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, LogLin):
            return self.q0 == other.q0 and self.terms == other.terms
        if isinstance(other, (int, Fraction, QuadSurd)):
            return False
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __str__(self):
        parts = [] if self.q0 == 0 else [str(self.q0)]
        for p, c in self.terms:
            atom = f"log2({p})"
            if c == 1:
                s = atom
            elif c == -1:
                s = "-" + atom
            else:
                s = f"{c}*{atom}"
            if parts and not s.startswith("-"):
                s = "+" + s
            parts.append(s)
        return "".join(parts)


ExactReal = Union[Fraction, QuadSurd, LogLin]

PHI = QuadSurd(Fraction(1, 2), Fraction(1, 2), 5)


def sqrt(n) -> ExactReal:
    """Exact square root of a nonnegative rational."""
    n = _rat(n)
    if n < 0:
        raise ValueError("square root of a negative number")
    # sqrt(u/v) = sqrt(u*v)/v
    return QuadSurd(0, Fraction(1, n.denominator), n.numerator * n.denominator) if n else Fraction(0)


def log2(n) -> ExactReal:
    """Exact ``log2(n)`` for a positive rational ``n``, in prime coordinates."""
    n = _rat(n)
    if n <= 0:
        raise ValueError("log2 of a nonpositive number")
    terms: dict[int, Fraction] = {}
    for p, e in factorint(n.numerator).items():
        terms[p] = terms.get(p, 0) + e
    for p, e in factorint(n.denominator).items():
        terms[p] = terms.get(p, 0) - e
    q0 = Fraction(terms.pop(2, 0))
    return LogLin._raw(q0, tuple(sorted((p, Fraction(c)) for p, c in terms.items() if c)))


# ---------------------------------------------------------------- arithmetic


def _kind(x) -> str:
    if isinstance(x, Fraction):
        return "rat"
    if isinstance(x, QuadSurd):
        return "quad"
    return "loglin"


def _incomparable(x, y, op: str):
    return IncomparableKinds(f"cannot {op} {x} ({_kind(x)}) and {y} ({_kind(y)})")


def add(x, y) -> ExactReal:
    x, y = exact(x), exact(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + y
    if isinstance(y, Fraction):
        x, y = y, x
    if isinstance(x, Fraction):
        if isinstance(y, QuadSurd):
            return QuadSurd._raw(y.a + x, y.b, y.d)
        return LogLin._raw(y.q0 + x, y.terms)
    if isinstance(x, QuadSurd) and isinstance(y, QuadSurd):
        if x.d != y.d:
            raise _incomparable(x, y, "add")
        b = x.b + y.b
        return x.a + y.a if b == 0 else QuadSurd._raw(x.a + y.a, b, x.d)
    if isinstance(x, LogLin) and isinstance(y, LogLin):
        merged = dict(x.terms)
        for p, c in y.terms:
            merged[p] = merged.get(p, 0) + c
        terms = tuple(sorted((p, c) for p, c in merged.items() if c))
        return LogLin._raw(x.q0 + y.q0, terms)
    raise _incomparable(x, y, "add")


def scalar_mul(q, x) -> ExactReal:
    q, x = _rat(q), exact(x)
    if isinstance(x, Fraction) or q == 0:
        return q * x if isinstance(x, Fraction) else Fraction(0)
    if isinstance(x, QuadSurd):
        return QuadSurd._raw(q * x.a, q * x.b, x.d)
    return LogLin._raw(q * x.q0, tuple((p, q * c) for p, c in x.terms))


def sub(x, y) -> ExactReal:
    return add(x, scalar_mul(-1, y))


def mul(x, y) -> ExactReal:
    """Product; defined when one side is rational or both are surds on one radicand."""
    x, y = exact(x), exact(y)
    if isinstance(x, Fraction):
        return scalar_mul(x, y)
    if isinstance(y, Fraction):
        return scalar_mul(y, x)
    if isinstance(x, QuadSurd) and isinstance(y, QuadSurd) and x.d == y.d:
        a = x.a * y.a + x.b * y.b * x.d
        b = x.a * y.b + x.b * y.a
        return a if b == 0 else QuadSurd._raw(a, b, x.d)
    raise _incomparable(x, y, "multiply")


def div(x, y) -> ExactReal:
    """Quotient ``x / y``; raises :class:`IncomparableKinds` when it is not representable."""
    x, y = exact(x), exact(y)
    if isinstance(y, Fraction):
        if y == 0:
            raise ZeroDivisionError("division by zero")
        return scalar_mul(1 / y, x)
    if isinstance(y, QuadSurd):
        if isinstance(x, Fraction) or (isinstance(x, QuadSurd) and x.d == y.d):
            return scalar_mul(1 / y.norm(), mul(x, y.conjugate()))
        raise _incomparable(x, y, "divide")
    # y is a log combination: only a proportional numerator gives a representable quotient
    if isinstance(x, LogLin):
        ratio = proportion(x, y)
        if ratio is not None:
            return ratio
    if isinstance(x, Fraction) and x == 0:
        return Fraction(0)
    raise _incomparable(x, y, "divide")


def proportion(x: LogLin, y: LogLin):
    """Return rational ``r`` with ``x == r*y`` or ``None``."""
    if [p for p, _ in x.terms] != [p for p, _ in y.terms]:
        return None
    r = x.terms[0][1] / y.terms[0][1]
    if x.q0 != r * y.q0:
        return None
    if any(cx != r * cy for (_, cx), (_, cy) in zip(x.terms, y.terms)):
        return None
    return r


# ------------------------------------------------------------------ ordering


def _cleared(x: LogLin) -> tuple[int, list[tuple[int, int]]]:
    den = x.q0.denominator
    for _, c in x.terms:
        den = den * c.denominator // math.gcd(den, c.denominator)
    c0 = int(x.q0 * den)
    return c0, [(p, int(c * den)) for p, c in x.terms]


def _loglin_sign(x: LogLin) -> int:
    c0, cs = _cleared(x)
    bits = abs(c0) + sum(abs(c) * p.bit_length() for p, c in cs)
    if bits > POWER_BITS_LIMIT:
        return _interval_sign(c0, cs)
    # 2^c0 * prod p^c_p compared with 1, all in integers
    num = 1 << max(c0, 0)
    den = 1 << max(-c0, 0)
    for p, c in cs:
        if c > 0:
            num *= p**c
        else:
            den *= p ** (-c)
    # unique factorisation: a nonempty odd-prime part never balances
    return 1 if num > den else -1


def _interval_sign(c0: int, cs: list[tuple[int, int]]) -> int:
    """Sign of ``c0*ln2 + sum(c*ln p)`` via outward-rounded interval arithmetic."""
    prec = 128 + max([abs(c0).bit_length()] + [abs(c).bit_length() for _, c in cs])
    iv = mpmath.iv
    saved = iv.prec
    try:
        while True:
            iv.prec = prec
            total = iv.mpf(c0) * iv.log(2)
            for p, c in cs:
                total += iv.mpf(c) * iv.log(p)
            if total.a > 0:
                return 1
            if total.b < 0:
                return -1
            prec *= 2
    finally:
        iv.prec = saved


def sign(x) -> int:
    x = exact(x)
    if isinstance(x, Fraction):
        return (x > 0) - (x < 0)
    if isinstance(x, QuadSurd):
        sa = (x.a > 0) - (x.a < 0)
        sb = 1 if x.b > 0 else -1
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger square wins, and they never tie for square-free d
        return sa if x.a * x.a > x.b * x.b * x.d else sb
    return _loglin_sign(x)


def compare(x, y) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    x, y = exact(x), exact(y)
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return (x > y) - (x < y)
    if x == y:
        return 0
    return sign(sub(x, y))


def _approx(x, prec: int) -> mpmath.mpf:
    x = exact(x)
    with mpmath.workprec(prec):
        if isinstance(x, Fraction):
            return mpmath.mpf(x.numerator) / x.denominator
        if isinstance(x, QuadSurd):
            a = mpmath.mpf(x.a.numerator) / x.a.denominator
            b = mpmath.mpf(x.b.numerator) / x.b.denominator
            return a + b * mpmath.sqrt(x.d)
        total = mpmath.mpf(x.q0.numerator) / x.q0.denominator
        for p, c in x.terms:
            total += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(p, 2)
        return total


def _size_bits(x) -> int:
    if isinstance(x, Fraction):
        parts = [x]
    elif isinstance(x, QuadSurd):
        parts = [x.a, x.b, Fraction(x.d)]
    else:
        parts = [x.q0] + [c for _, c in x.terms]
    return sum(q.numerator.bit_length() + q.denominator.bit_length() for q in parts)


def floor(x) -> int:
    """Exact floor. A numeric estimate seeds the search; exact comparisons decide."""
    x = exact(x)
    if isinstance(x, Fraction):
        return math.floor(x)
    prec = 64 + _size_bits(x)
    with mpmath.workprec(prec):
        k = int(mpmath.floor(_approx(x, prec)))
    step = 1
    while compare(x, k) < 0:
        k -= step
        step *= 2
    lo, step = k, 1
    while compare(x, lo + step) >= 0:
        lo += step
        step *= 2
    # now lo <= x < lo + step; bisect
    hi = lo + step
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if compare(x, mid) >= 0:
            lo = mid
        else:
            hi = mid
    return lo


def frac(x) -> ExactReal:
    """Fractional part ``x - floor(x)`` in ``[0, 1)``."""
    return sub(x, floor(x))


def to_decimal(x, digits: int) -> str:
    """Correctly rounded (half-up) decimal string with ``digits`` fractional digits."""
    if digits < 1:
        raise ValueError("digits must be positive")
    scaled = floor(add(scalar_mul(10**digits, x), Fraction(1, 2)))
    neg = scaled < 0
    s = str(abs(scaled)).rjust(digits + 1, "0")
    return f"{'-' if neg else ''}{s[:-digits]}.{s[-digits:]}"


# ------------------------------------------------------------- serialization


def _rat_json(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def _rat_from(obj) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def to_json(x) -> dict:
    x = exact(x)
    if isinstance(x, Fraction):
        return {"kind": "rat", **_rat_json(x)}
    if isinstance(x, QuadSurd):
        return {"kind": "quad", "a": _rat_json(x.a), "b": _rat_json(x.b), "d": str(x.d)}
    return {
        "kind": "loglin",
        "q0": _rat_json(x.q0),
        "terms": {str(p): _rat_json(c) for p, c in x.terms},
    }


def from_json(obj: dict) -> ExactReal:
    kind = obj["kind"]
    if kind == "rat":
        return _rat_from(obj)
    if kind == "quad":
        return QuadSurd(_rat_from(obj["a"]), _rat_from(obj["b"]), int(obj["d"]))
    if kind == "loglin":
        return LogLin(_rat_from(obj["q0"]), {int(p): _rat_from(c) for p, c in obj["terms"].items()})
    raise ValueError(f"unknown exact-real kind {kind!r}")


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(phi|sqrt|log2)|([-+*/()]))")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r} at position {pos}")
        out.append(m.group(m.lastindex))
        pos = m.end()
    return out


class _Parser:
    # expr   := ['-'|'+'] term (('+'|'-') term)*
    # term   := factor (('*'|'/') factor)*
    # factor := INT | phi | sqrt(ratio) | log2(ratio) | '(' expr ')'
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"cannot parse {self.text!r}: expected {expected or 'more input'}")
        self.i += 1
        return tok

    def expr(self):
        neg = False
        if self.peek() in ("+", "-"):
            neg = self.take() == "-"
        value = self.term()
        if neg:
            value = scalar_mul(-1, value)
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = add(value, rhs) if op == "+" else sub(value, rhs)
        return value

    def term(self):
        value = self.factor()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.factor()
            value = mul(value, rhs) if op == "*" else div(value, rhs)
        return value

    def _ratio_arg(self) -> Fraction:
        self.take("(")
        arg = self.expr()
        self.take(")")
        if not isinstance(arg, Fraction):
            raise ValueError(f"cannot parse {self.text!r}: argument must be rational")
        return arg

    def factor(self):
        tok = self.take()
        if tok.isdigit():
            return Fraction(int(tok))
        if tok == "phi":
            return PHI
        if tok == "sqrt":
            return sqrt(self._ratio_arg())
        if tok == "log2":
            return log2(self._ratio_arg())
        if tok == "(":
            value = self.expr()
            self.take(")")
            return value
        if tok == "-":
            return scalar_mul(-1, self.factor())
        raise ValueError(f"cannot parse {self.text!r}: unexpected {tok!r}")


def parse(text: str) -> ExactReal:
    """Parse the textual form produced by ``str()`` (and a little more).

    Accepts integers, ``a/b``, ``phi``, ``sqrt(n)``, ``log2(n)``, parentheses
    and ``+ - * /``, e.g. ``"1/2+1/2*sqrt(5)"`` or ``"12*log2(3)+3/5"``.
    """
    p = _Parser(text)
    value = p.expr()
    if p.peek() is not None:
        raise ValueError(f"cannot parse {text!r}: trailing {p.peek()!r}")
    return value
