"""Exact sparse multivariate polynomial arithmetic over F_p.

A monomial is an exponent tuple (one non-negative integer per ring
variable). A Polynomial stores its terms as a tuple of (exponents, coeff)
pairs with coefficients in [1, p-1], sorted strictly descending in the
ring's monomial order, so two polynomials are equal iff their term tuples
are identical. The zero polynomial is the empty term tuple.

All values are immutable; every operation is a pure function. Exponents and
coefficients are arbitrary-precision ints throughout: Frobenius powers
multiply exponents by p^e, which overflows any fixed width during scans.
"""

from __future__ import annotations

import re

from .errors import (
    BadVariableName,
    DuplicateVariable,
    EmptyVariableList,
    NotPrime,
    PolySyntaxError,
    RingMismatch,
    UnknownVariable,
)

_VAR_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Witnesses proving Miller-Rabin deterministic for n < 3.3 * 10^24, far
# beyond the p^e <= 2^40 resource guard.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RingContext:
    """The ambient ring F_p[x1..xn] with a fixed monomial order."""

    __slots__ = ("p", "vars", "order", "_index")

    def __init__(self, p, vars, order="grevlex"):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        vars = tuple(vars)
        if not vars:
            raise EmptyVariableList("need at least one variable")
        if len(set(vars)) != len(vars):
            raise DuplicateVariable(f"duplicate variable in {vars}")
        for name in vars:
            if not _VAR_RE.match(name):
                raise BadVariableName(f"bad variable name {name!r}")
        if order not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {order!r}")
        self.p = p
        self.vars = vars
        self.order = order
        self._index = {name: i for i, name in enumerate(vars)}

    @property
    def nvars(self):
        return len(self.vars)

    def sort_key(self, exponents):
        """Key under which larger monomials compare larger."""
        if self.order == "lex":
            return exponents
        # grevlex: first by total degree, ties broken by the reversed
        # exponent vector compared with reversed sign.
        return (sum(exponents), tuple(-e for e in reversed(exponents)))

    def zero(self):
        return Polynomial(self, ())

    def one(self):
        return self.const(1)

    def const(self, c):
        c %= self.p
        if c == 0:
            return Polynomial(self, ())
        return Polynomial(self, (((0,) * self.nvars, c),))

    def var(self, name):
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return Polynomial(self, ((tuple(e), 1),))

    def monomial(self, exponents, coeff=1):
        coeff %= self.p
        if coeff == 0:
            return Polynomial(self, ())
        return Polynomial(self, ((tuple(exponents), coeff),))

    def from_dict(self, d):
        terms = [(e, c % self.p) for e, c in d.items() if c % self.p]
        terms.sort(key=lambda t: self.sort_key(t[0]), reverse=True)
        return Polynomial(self, tuple(terms))

    def __eq__(self, other):
        return (
            isinstance(other, RingContext)
            and self.p == other.p
            and self.vars == other.vars
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.p, self.vars, self.order))

    def __repr__(self):
        return f"RingContext(p={self.p}, vars={list(self.vars)}, order={self.order!r})"


def make_ring(p, vars, order="grevlex"):
    return RingContext(p, vars, order)


def _check_same_ring(a, b):
    if a.ring != b.ring:
        raise RingMismatch(f"{a.ring!r} vs {b.ring!r}")


class Polynomial:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, self.terms))

    def is_constant(self):
        return not self.terms or not any(self.terms[0][0])

    def is_unit(self):
        # nonzero constant
        return bool(self.terms) and not any(self.terms[0][0])

    def total_degree(self):
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def lead_term(self):
        return self.terms[0]

    def lead_monomial(self):
        return self.terms[0][0]

    def lead_coeff(self):
        return self.terms[0][1]

    def monic(self):
        c = self.terms[0][1]
        if c == 1:
            return self
        inv = pow(c, -1, self.ring.p)
        return self.ring.from_dict({e: d * inv for e, d in self.terms})

    def coeff_dict(self):
        return dict(self.terms)

    def __add__(self, other):
        _check_same_ring(self, other)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) + c
        return self.ring.from_dict(out)

    def __neg__(self):
        return self.ring.from_dict({e: -c for e, c in self.terms})

    def __sub__(self, other):
        _check_same_ring(self, other)
        out = dict(self.terms)
        for e, c in other.terms:
            out[e] = out.get(e, 0) - c
        return self.ring.from_dict(out)

    def __mul__(self, other):
        _check_same_ring(self, other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        p = self.ring.p
        out = {}
        for u, c in self.terms:
            for v, d in other.terms:
                w = tuple(x + y for x, y in zip(u, v))
                out[w] = (out.get(w, 0) + c * d) % p
        return self.ring.from_dict(out)

    def mul_term(self, exponents, coeff):
        """Multiply by the single term coeff * x^exponents."""
        p = self.ring.p
        coeff %= p
        if coeff == 0 or not self.terms:
            return self.ring.zero()
        terms = tuple(
            (tuple(a + b for a, b in zip(e, exponents)), c * coeff % p)
            for e, c in self.terms
        )
        # a single-term scale preserves the descending order
        return Polynomial(self.ring, tuple(t for t in terms if t[1]))

    def __pow__(self, m):
        if m < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while m:
            if m & 1:
                result = result * base
            m >>= 1
            if m:
                base = base * base
        return result

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            factors = []
            if c != 1 or not any(e):
                factors.append(str(c))
            for name, k in zip(self.ring.vars, e):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    def __repr__(self):
        return f"<{self} over F_{self.ring.p}>"


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    return a * b


def poly_pow(a: Polynomial, m: int) -> Polynomial:
    return a**m


def frob_power(f: Polynomial, e: int) -> Polynomial:
    """f^(p^e), computed by scaling exponents: coefficients in F_p are
    fixed by Frobenius, so (sum c_i x^v_i)^(p^e) = sum c_i x^(p^e v_i)."""
    q = f.ring.p**e
    terms = tuple((tuple(x * q for x in v), c) for v, c in f.terms)
    # scaling by q preserves both orders
    return Polynomial(f.ring, terms)


def pow_base_p(f: Polynomial, m: int) -> Polynomial:
    """f^m via the base-p digits of m: f^m = prod_j (f^(d_j))^(p^j)."""
    if m < 0:
        raise ValueError("negative power")
    p = f.ring.p
    result = f.ring.one()
    j = 0
    while m:
        m, d = divmod(m, p)
        if d:
            result = result * frob_power(f**d, j)
        j += 1
    return result


class _Parser:
    """Recursive descent for:
    expr   := ['-'] term (('+'|'-') term)*
    term   := factor ('*'? factor)*
    factor := (integer | var | '(' expr ')') ('^' nonneg-integer)*
    """

    def __init__(self, ring, text):
        self.ring = ring
        self.text = text
        self.pos = 0

    def error(self, message):
        raise PolySyntaxError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self):
        f = self.expr()
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return f

    def expr(self):
        negate = False
        if self.peek() == "-":
            self.pos += 1
            negate = True
        f = self.term()
        if negate:
            f = -f
        while True:
            op = self.peek()
            if op == "+":
                self.pos += 1
                f = f + self.term()
            elif op == "-":
                self.pos += 1
                f = f - self.term()
            else:
                return f

    def term(self):
        f = self.factor()
        while True:
            ch = self.peek()
            if ch == "*":
                self.pos += 1
                f = f * self.factor()
            elif ch == "(" or ch.isdigit() or ch.isalpha() or ch == "_":
                f = f * self.factor()
            else:
                return f

    def factor(self):
        f = self.primary()
        while self.peek() == "^":
            self.pos += 1
            f = f ** self.integer()
        return f

    def primary(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            f = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return f
        if ch.isdigit():
            return self.ring.const(self.integer())
        if ch.isalpha() or ch == "_":
            start = self.pos
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
            name = self.text[start : self.pos]
            if name not in self.ring._index:
                self.pos = start
                raise UnknownVariable(f"unknown variable {name!r}", start)
            return self.ring.var(name)
        self.error("expected integer, variable, or '('")

    def integer(self):
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected integer")
        return int(self.text[start : self.pos])


def parse_poly(ctx: RingContext, text: str) -> Polynomial:
    return _Parser(ctx, text).parse()
