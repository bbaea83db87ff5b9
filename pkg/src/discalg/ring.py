"""Exact commutative coefficient rings.

Elements are plain Python values wherever possible: ``int`` for the
integers, ``fractions.Fraction`` for the rationals, :class:`Mod` for
residues and :class:`Poly` for sparse multivariate polynomials.  All of
them support the arithmetic operators, so generic code can write
``a * b + c`` and only needs the descriptor for ``zero``/``one``/coercion.
The descriptor methods ``add``/``mul``/... are the checked entry points:
they refuse elements that belong to a different ring.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class RingError(Exception):
    pass


class RingMismatchError(RingError, TypeError):
    pass


class NoExactQuotient(RingError, ArithmeticError):
    """Raised when ``a / b`` has no solution, or more than one."""


class UnsupportedRingError(RingError, TypeError):
    pass


class ParseError(RingError, ValueError):
    pass


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Ring:
    """Base class of ring descriptors."""

    def from_int(self, n: int):
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def zero(self):
        return self.from_int(0)

    def one(self):
        return self.from_int(1)

    def coerce(self, x):
        """Interpret ``x`` (int, string, or element) as an element of this ring."""
        if self.contains(x):
            return x
        if type(x) is int:
            return self.from_int(x)
        if isinstance(x, str):
            return self.parse(x)
        raise RingMismatchError(f"{x!r} is not an element of {self}")

    def _check(self, *xs):
        for x in xs:
            if not self.contains(x):
                raise RingMismatchError(f"{x!r} is not an element of {self}")

    def add(self, a, b):
        self._check(a, b)
        return a + b

    def sub(self, a, b):
        self._check(a, b)
        return a - b

    def neg(self, a):
        self._check(a)
        return -a

    def mul(self, a, b):
        self._check(a, b)
        return a * b

    def pow(self, a, k: int):
        self._check(a)
        if k < 0:
            raise ValueError("negative exponent")
        return a ** k if k else self.one()

    def exact_div(self, a, b):
        raise NotImplementedError

    def is_square(self, a):
        raise UnsupportedRingError(f"square detection is not available over {self}")

    def is_domain(self) -> bool:
        return True

    # -- text form -------------------------------------------------------

    def format(self, a) -> str:
        raise NotImplementedError

    def _format_coeff(self, a) -> tuple[bool, str]:
        """(negative, text of |a|) for use as a polynomial coefficient."""
        return False, self.format(a)

    def parse(self, text: str):
        return _Parser(self, text).parse()

    def gen(self, name: str):
        raise ParseError(f"unknown variable {name!r} in {self}")

    def variable_names(self) -> tuple[str, ...]:
        return ()

    def modulus_in_tower(self) -> int | None:
        return None

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Integers(Ring):
    def from_int(self, n):
        return int(n)

    def contains(self, x):
        return type(x) is int

    def exact_div(self, a, b):
        self._check(a, b)
        if b == 0:
            raise ZeroDivisionError("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NoExactQuotient(f"{b} does not divide {a}")
        return q

    def is_square(self, a):
        self._check(a)
        if a < 0:
            return None
        r = math.isqrt(a)
        return r if r * r == a else None

    def format(self, a):
        return str(a)

    def _format_coeff(self, a):
        return a < 0, str(abs(a))

    def to_json(self):
        return {"kind": "Integers"}

    def __str__(self):
        return "ZZ"


@dataclass(frozen=True)
class Rationals(Ring):
    def from_int(self, n):
        return Fraction(n)

    def contains(self, x):
        return type(x) is Fraction

    def coerce(self, x):
        if type(x) is int:
            return Fraction(x)
        return super().coerce(x)

    def exact_div(self, a, b):
        self._check(a, b)
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b

    def is_square(self, a):
        self._check(a)
        if a < 0:
            return None
        p, q = math.isqrt(a.numerator), math.isqrt(a.denominator)
        if p * p == a.numerator and q * q == a.denominator:
            return Fraction(p, q)
        return None

    def format(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def _format_coeff(self, a):
        return a < 0, self.format(abs(a))

    def to_json(self):
        return {"kind": "Rationals"}

    def __str__(self):
        return "QQ"


class Mod:
    """A residue class ``v mod m`` with ``0 <= v < m``."""

    __slots__ = ("v", "m")

    def __init__(self, v: int, m: int):
        self.v = v % m
        self.m = m

    def _val(self, other):
        if type(other) is Mod:
            if other.m != self.m:
                raise RingMismatchError(f"moduli differ: {self.m} and {other.m}")
            return other.v
        if type(other) is int:
            return other
        return None

    def __add__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Mod(self.v + o, self.m)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Mod(self.v - o, self.m)

    def __rsub__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Mod(o - self.v, self.m)

    def __mul__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        return Mod(self.v * o, self.m)

    __rmul__ = __mul__

    def __neg__(self):
        return Mod(-self.v, self.m)

    def __pow__(self, k: int):
        return Mod(pow(self.v, k, self.m), self.m)

    def __eq__(self, other):
        if type(other) is Mod:
            return self.m == other.m and self.v == other.v
        if type(other) is int:
            return (self.v - other) % self.m == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.m))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"Mod({self.v}, {self.m})"

    def __str__(self):
        return f"{self.v} mod {self.m}"


@dataclass(frozen=True)
class IntegersMod(Ring):
    modulus: int

    def __post_init__(self):
        if type(self.modulus) is not int or self.modulus < 2:
            raise ValueError(f"modulus must be an integer >= 2, got {self.modulus!r}")

    def from_int(self, n):
        return Mod(int(n), self.modulus)

    def contains(self, x):
        return type(x) is Mod and x.m == self.modulus

    def exact_div(self, a, b):
        self._check(a, b)
        if not b:
            raise ZeroDivisionError("division by zero")
        m = self.modulus
        g = math.gcd(b.v, m)
        if a.v % g:
            raise NoExactQuotient(f"{b} does not divide {a}")
        if g != 1:
            raise NoExactQuotient(f"quotient {a} / {b} is not unique ({g} solutions)")
        return Mod(a.v * pow(b.v, -1, m), m)

    def is_square(self, a):
        self._check(a)
        for r in range(self.modulus):
            if (r * r - a.v) % self.modulus == 0:
                return Mod(r, self.modulus)
        return None

    def is_domain(self):
        m = self.modulus
        return m > 1 and all(m % p for p in range(2, math.isqrt(m) + 1))

    def format(self, a):
        return f"{a.v} mod {self.modulus}"

    def _format_coeff(self, a):
        return False, str(a.v)

    def modulus_in_tower(self):
        return self.modulus

    def to_json(self):
        return {"kind": "IntegersMod", "modulus": self.modulus}

    def __str__(self):
        return f"ZZ/{self.modulus}"


def grlex_key(exp: tuple[int, ...]):
    return (sum(exp), exp)


class Poly:
    """Sparse polynomial: a map from exponent tuples to nonzero base coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: "PolynomialRing", terms: dict):
        self.ring = ring
        self.terms = terms

    # scalar or polynomial view of ``other``; None if foreign
    def _split(self, other):
        if type(other) is Poly:
            if other.ring is self.ring or other.ring == self.ring:
                return other, None
        if type(other) is int:
            return None, self.ring.base.from_int(other)
        if self.ring.base.contains(other):
            return None, other
        if type(other) is Mod or type(other) is Fraction:
            raise RingMismatchError(f"cannot combine {other!r} with an element of {self.ring}")
        return None, None

    def __add__(self, other):
        p, c = self._split(other)
        if p is not None:
            t = dict(self.terms)
            for e, v in p.terms.items():
                s = t.get(e)
                if s is None:
                    t[e] = v
                else:
                    s = s + v
                    if s:
                        t[e] = s
                    else:
                        del t[e]
            return Poly(self.ring, t)
        if c is None:
            return NotImplemented
        if not c:
            return self
        z = self.ring.zero_exp
        t = dict(self.terms)
        s = t.get(z)
        s = c if s is None else s + c
        if s:
            t[z] = s
        else:
            t.pop(z, None)
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -v for e, v in self.terms.items()})

    def __sub__(self, other):
        p, c = self._split(other)
        if p is None and c is None:
            return NotImplemented
        return self + (-(p if p is not None else c))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        p, c = self._split(other)
        if p is not None:
            if len(p.terms) < len(self.terms):
                a, b = p.terms, self.terms
            else:
                a, b = self.terms, p.terms
            out: dict = {}
            for e1, v1 in a.items():
                for e2, v2 in b.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    s = out.get(e)
                    out[e] = v1 * v2 if s is None else s + v1 * v2
            return Poly(self.ring, {e: v for e, v in out.items() if v})
        if c is None:
            return NotImplemented
        if not c:
            return Poly(self.ring, {})
        out = {}
        for e, v in self.terms.items():
            w = v * c
            if w:
                out[e] = w
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if type(other) is Poly:
            return self.ring == other.ring and self.terms == other.terms
        if type(other) is int or self.ring.base.contains(other):
            if not other:
                return not self.terms
            return len(self.terms) == 1 and self.terms.get(self.ring.zero_exp) == other
        return NotImplemented

    def __hash__(self):
        if not self.terms:
            return hash(0)
        if len(self.terms) == 1 and self.ring.zero_exp in self.terms:
            return hash(self.terms[self.ring.zero_exp])
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"Poly({self.ring.format(self)!r})"

    __str__ = __repr__

    def coefficient(self, exp: Sequence[int]):
        return self.terms.get(tuple(exp), self.ring.base.zero())

    def constant_term(self):
        return self.coefficient(self.ring.zero_exp)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def leading(self):
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def evaluate(self, values: Sequence):
        """Substitute base-ring values for every variable."""
        base = self.ring.base
        total = base.zero()
        for e, v in self.terms.items():
            term = v
            for x, k in zip(values, e):
                if k:
                    term = term * x ** k
            total = total + term
        return total


@dataclass(frozen=True)
class PolynomialRing(Ring):
    base: Ring
    variables: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if not self.variables:
            raise ValueError("a polynomial ring needs at least one variable")
        for v in self.variables:
            if not isinstance(v, str) or not _IDENT.match(v) or v == "mod":
                raise ValueError(f"invalid variable name {v!r}")
        names = list(self.variables) + list(self.base.variable_names())
        if len(set(names)) != len(names):
            raise ValueError(f"variable names must be distinct across the tower: {names}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @property
    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.variables)

    def variable_names(self):
        return self.variables + self.base.variable_names()

    def modulus_in_tower(self):
        return self.base.modulus_in_tower()

    def from_int(self, n):
        c = self.base.from_int(n)
        return Poly(self, {self.zero_exp: c} if c else {})

    def constant(self, c):
        c = self.base.coerce(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def monomial(self, exp: Sequence[int], c=1):
        exp = tuple(exp)
        if len(exp) != self.nvars or any(k < 0 for k in exp):
            raise ValueError(f"bad exponent vector {exp}")
        c = self.base.coerce(c)
        return Poly(self, {exp: c} if c else {})

    def from_terms(self, terms: dict):
        out = {}
        for e, c in terms.items():
            e = tuple(e)
            if len(e) != self.nvars:
                raise ValueError(f"bad exponent vector {e}")
            c = self.base.coerce(c)
            if c:
                out[e] = out[e] + c if e in out else c
        return Poly(self, {e: c for e, c in out.items() if c})

    def gen(self, name: str):
        if name in self.variables:
            i = self.variables.index(name)
            return self.monomial(tuple(int(j == i) for j in range(self.nvars)))
        return self.constant(self.base.gen(name))

    def gens(self):
        return tuple(self.gen(v) for v in self.variables)

    def contains(self, x):
        return type(x) is Poly and (x.ring is self or x.ring == self)

    def coerce(self, x):
        if self.contains(x):
            return x
        if type(x) is int or isinstance(x, str):
            return super().coerce(x)
        if self.base.contains(x) or (type(x) is Fraction or type(x) is Poly):
            return self.constant(x)
        raise RingMismatchError(f"{x!r} is not an element of {self}")

    def is_domain(self):
        return self.base.is_domain()

    def exact_div(self, a, b):
        self._check(a, b)
        if not b:
            raise ZeroDivisionError("division by zero")
        base = self.base
        lb_exp, lb_c = b.leading()
        q = self.zero()
        r = a
        while r:
            le, lc = r.leading()
            if any(x < y for x, y in zip(le, lb_exp)):
                raise NoExactQuotient(f"{self.format(b)} does not divide {self.format(a)}")
            c = base.exact_div(lc, lb_c)
            t = Poly(self, {tuple(x - y for x, y in zip(le, lb_exp)): c})
            q = q + t
            r = r - t * b
        return q

    def format(self, a):
        self._check(a)
        if not a.terms:
            return "0"
        parts = []
        for e in sorted(a.terms, key=grlex_key, reverse=True):
            neg, ctext = self.base._format_coeff(a.terms[e])
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mono:
                body = ctext
            elif ctext == "1":
                body = mono
            else:
                body = f"{ctext}*{mono}"
            if not parts:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def _format_coeff(self, a):
        if a.is_constant():
            return self.base._format_coeff(a.constant_term())
        return False, f"({self.format(a)})"

    def to_json(self):
        return {"kind": "PolynomialRing", "base": self.base.to_json(), "variables": list(self.variables)}

    def __str__(self):
        inner = self.base
        names = list(self.variables)
        return f"{inner}[{','.join(names)}]"


def fresh_names(ring: Ring, prefix: str, count: int) -> tuple[str, ...]:
    """``count`` variable names starting with ``prefix`` that are unused in ``ring``."""
    taken = set(ring.variable_names())
    tag = prefix
    while any(f"{tag}{i}" in taken for i in range(1, count + 1)):
        tag += "_"
    return tuple(f"{tag}{i}" for i in range(1, count + 1))


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


class _Parser:
    def __init__(self, ring: Ring, text: str):
        self.ring = ring
        self.text = text
        self.tokens = self._tokenize(text.replace("−", "-"))
        self.pos = 0

    def _tokenize(self, text):
        toks = []
        i = 0
        text = text.rstrip()
        while i < len(text):
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                raise ParseError(f"unexpected character at {i} in {self.text!r}")
            if m.group(1):
                toks.append(("int", int(m.group(1))))
            elif m.group(2):
                toks.append(("kw" if m.group(2) == "mod" else "id", m.group(2)))
            else:
                op = m.group(3)
                toks.append(("op", "^" if op == "**" else op))
            i = m.end()
        return toks

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        value = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def _mod_suffix(self):
        if self.peek() == ("kw", "mod"):
            self.take()
            kind, m = self.take()
            if kind != "int":
                raise ParseError("expected modulus after 'mod'")
            if self.ring.modulus_in_tower() != m:
                raise ParseError(f"modulus {m} does not match ring {self.ring}")

    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                break
        self._mod_suffix()
        return acc

    def term(self):
        acc = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.power()
                if val == "*":
                    acc = acc * rhs
                else:
                    try:
                        acc = self.ring.exact_div(acc, rhs)
                    except (NoExactQuotient, ZeroDivisionError) as exc:
                        raise ParseError(str(exc)) from exc
            else:
                return acc

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, k = self.take()
            if kind != "int":
                raise ParseError("exponent must be a nonnegative integer")
            return base ** k if k else self.ring.one()
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return self.ring.from_int(val)
        if kind == "id":
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            if self.take() != ("op", ")"):
                raise ParseError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if kind == "op" and val == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


# -- descriptor construction -------------------------------------------------

def ring_from_json(obj) -> Ring:
    if isinstance(obj, str):
        return parse_ring(obj)
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"bad ring description {obj!r}")
    kind = obj["kind"]
    if kind == "Integers":
        return Integers()
    if kind == "Rationals":
        return Rationals()
    if kind == "IntegersMod":
        try:
            return IntegersMod(obj["modulus"])
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad IntegersMod description {obj!r}") from exc
    if kind == "PolynomialRing":
        try:
            return PolynomialRing(ring_from_json(obj["base"]), tuple(obj["variables"]))
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad PolynomialRing description {obj!r}") from exc
    raise ParseError(f"unknown ring kind {kind!r}")


_RING_TEXT = re.compile(r"\s*(ZZ|QQ)(?:\s*/\s*(\d+))?((?:\s*\[[^\]]*\])*)\s*\Z")


def parse_ring(text: str) -> Ring:
    """Parse shorthand like ``ZZ``, ``QQ``, ``ZZ/4``, ``ZZ[s,t,u]``, ``QQ[x][y]``."""
    m = _RING_TEXT.match(text)
    if not m:
        raise ParseError(f"bad ring {text!r}")
    head, mod, tail = m.groups()
    if head == "QQ" and mod:
        raise ParseError(f"bad ring {text!r}")
    try:
        ring: Ring = IntegersMod(int(mod)) if mod else (Integers() if head == "ZZ" else Rationals())
        for group in re.findall(r"\[([^\]]*)\]", tail):
            names = tuple(v.strip() for v in group.split(",") if v.strip())
            ring = PolynomialRing(ring, names)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    return ring


def element_to_json(ring: Ring, x):
    """Integers become JSON numbers; everything else its text form."""
    if isinstance(ring, Integers):
        return x
    return ring.format(x)


def coerce_all(ring: Ring, xs: Iterable) -> tuple:
    return tuple(ring.coerce(x) for x in xs)
