"""Base-p digit combinatorics and a diagonal-polynomial membership oracle.

Binomial coefficients mod p factor digitwise over base-p expansions, and
C(m, n) is nonzero mod p exactly when every digit of n is dominated by the
matching digit of m. Multinomials are handled through the equivalent
carries-free criterion: the base-p addition of the parts must produce no
carry.

diagonal_root_membership decides monomial membership in ((x1^a+...+xn^a)^N)
^[1/p^e] purely from digit combinatorics plus small linear algebra, sharing
no code with the Groebner pipeline; it exists to cross-check that pipeline.
"""

from __future__ import annotations

from math import comb

from .errors import PartsMismatch, ResourceLimit
from .ring import RingContext


def digits_base_p(m: int, p: int):
    """Base-p digits of m, least significant first; [] for m = 0."""
    if m < 0:
        raise ValueError("negative value")
    digits = []
    while m:
        m, d = divmod(m, p)
        digits.append(d)
    return digits


def _padded_digits(values, p):
    cols = [digits_base_p(v, p) for v in values]
    width = max((len(c) for c in cols), default=0)
    return [c + [0] * (width - len(c)) for c in cols]


def binom_mod_p(m: int, n: int, p: int) -> int:
    """C(m, n) mod p as the digitwise product of small binomials."""
    if n < 0 or n > m:
        return 0
    dm, dn = _padded_digits([m, n], p)
    result = 1
    for a, b in zip(dm, dn):
        result = result * comb(a, b) % p
        if result == 0:
            return 0
    return result


def binom_nonzero(m: int, n: int, p: int) -> bool:
    """True iff C(m, n) is nonzero mod p: digit domination."""
    if n < 0 or n > m:
        return False
    dm, dn = _padded_digits([m, n], p)
    return all(b <= a for a, b in zip(dm, dn))


def multinomial_nonzero(m: int, parts, p: int) -> bool:
    """True iff m!/(k1!...kr!) is nonzero mod p.

    Equivalent to the base-p addition of the parts being carries-free: at
    every digit position the parts' digits sum to m's digit exactly.
    """
    parts = list(parts)
    if any(k < 0 for k in parts) or sum(parts) != m:
        raise PartsMismatch(f"parts {parts} do not sum to {m}")
    cols = _padded_digits([m] + parts, p)
    dm, rest = cols[0], cols[1:]
    return all(sum(col) == dm[i] for i, col in enumerate(zip(*rest)))


def multinomial_mod_p(m: int, parts, p: int) -> int:
    """m!/(k1!...kr!) mod p via telescoping binomials."""
    parts = list(parts)
    if any(k < 0 for k in parts) or sum(parts) != m:
        raise PartsMismatch(f"parts {parts} do not sum to {m}")
    result, rem = 1, m
    for k in parts:
        result = result * binom_mod_p(rem, k, p) % p
        rem -= k
        if result == 0:
            return 0
    return result


def _compositions(total, nparts):
    if nparts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, nparts - 1):
            yield (first,) + rest


_SEARCH_LIMIT = 2_000_000


def diagonal_root_membership(
    a: int, target, N: int, e: int, ctx: RingContext
) -> bool:
    """Is x^target in ((x1^a + ... + xn^a)^N)^[1/p^e]?

    Expands f^N term by term: the tuple k (sum N) contributes the exact
    multinomial coefficient mod p on x^(a*k), which splits into residue
    class a*k mod p^e with coefficient monomial x^(a*k div p^e). Several
    tuples can land in one class, and their coefficients can cancel mod p,
    so classes are aggregated exactly before any membership conclusion.

    Membership in the resulting ideal: a single-term class dividing the
    target settles it; otherwise every class polynomial is homogeneous, so
    x^target lies in the ideal iff it lies in the span of the degree-matched
    monomial multiples of the class polynomials, decided by Gaussian
    elimination over F_p.
    """
    p, n = ctx.p, ctx.nvars
    target = tuple(target)
    if len(target) != n:
        raise ValueError("target length does not match variable count")
    q = p**e
    if comb(N + n - 1, n - 1) > _SEARCH_LIMIT:
        raise ResourceLimit(f"expansion of size C({N + n - 1},{n - 1}) too large")

    classes = {}
    for k in _compositions(N, n):
        c = multinomial_mod_p(N, k, p)
        if c == 0:
            continue
        v = tuple(a * ki for ki in k)
        res = tuple(x % q for x in v)
        quo = tuple(x // q for x in v)
        cls = classes.setdefault(res, {})
        cls[quo] = (cls.get(quo, 0) + c) % p

    gens = []
    for cls in classes.values():
        poly = {u: c for u, c in cls.items() if c}
        if poly:
            gens.append(poly)

    # single-term generators act like monomials: divisibility decides
    for poly in gens:
        if len(poly) == 1:
            (u,) = poly
            if all(ui <= ti for ui, ti in zip(u, target)):
                return True

    # each generator is homogeneous (constant total degree), so membership
    # of the degree-d target only involves multiples of matching degree
    d = sum(target)
    columns = []
    for poly in gens:
        gdeg = sum(next(iter(poly)))
        shift_deg = d - gdeg
        if shift_deg < 0:
            continue
        for u in _compositions(shift_deg, n):
            columns.append(
                {tuple(x + y for x, y in zip(w, u)): c for w, c in poly.items()}
            )
    return _in_span(columns, target, p)


def _in_span(columns, target, p):
    """Gaussian elimination: is the target monomial's indicator vector in
    the F_p-span of the column vectors (keyed by monomial)?"""
    monomials = sorted({m for col in columns for m in col} | {target})
    index = {m: i for i, m in enumerate(monomials)}
    rows = [[col.get(m, 0) for col in columns] for m in monomials]
    rhs = [1 if m == target else 0 for m in monomials]
    ncols = len(columns)
    pivot_row = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(pivot_row, len(rows)) if rows[r][col] % p), None
        )
        if pivot is None:
            continue
        rows[pivot_row], rows[pivot] = rows[pivot], rows[pivot_row]
        rhs[pivot_row], rhs[pivot] = rhs[pivot], rhs[pivot_row]
        inv = pow(rows[pivot_row][col], -1, p)
        rows[pivot_row] = [x * inv % p for x in rows[pivot_row]]
        rhs[pivot_row] = rhs[pivot_row] * inv % p
        for r in range(len(rows)):
            if r != pivot_row and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [
                    (x - factor * y) % p for x, y in zip(rows[r], rows[pivot_row])
                ]
                rhs[r] = (rhs[r] - factor * rhs[pivot_row]) % p
        pivot_row += 1
        if pivot_row == len(rows):
            break
    # consistent iff no zero row has nonzero right-hand side
    for r in range(len(rows)):
        if rhs[r] % p and not any(x % p for x in rows[r]):
            return False
    return True
