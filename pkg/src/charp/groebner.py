"""Ideals over F_p[x1..xn] with canonical reduced Groebner bases.

The reduced Groebner basis under the ring's monomial order is unique, so it
serves as the ideal's identity: equality, membership, and containment all
reduce to it, and its term tuples give a hashable fingerprint for caches.

Conventions: the zero ideal has canonical basis []; the unit ideal has
canonical basis [1]. Monomial ideals (every generator a single term) skip
Buchberger entirely: divisibility minimalization of the generators already
IS the reduced basis.
"""

from __future__ import annotations

from .errors import RingMismatch
from .ring import Polynomial, RingContext


def normal_form(f: Polynomial, basis) -> Polynomial:
    """Remainder of multivariate division of f by the listed divisors.

    No monomial of the result is divisible by any divisor's lead monomial.
    Divisors are tried in listed order, which makes the result deterministic
    for an arbitrary list; for a Groebner basis the remainder is canonical
    regardless of order.
    """
    ring = f.ring
    p = ring.p
    for g in basis:
        if g.ring != ring:
            raise RingMismatch("divisor from a different ring")
    leads = [(g.lead_monomial(), pow(g.lead_coeff(), -1, p), g) for g in basis]
    remainder = {}
    work = f
    while work.terms:
        e, c = work.terms[0]
        for lm, inv, g in leads:
            if all(a >= b for a, b in zip(e, lm)):
                shift = tuple(a - b for a, b in zip(e, lm))
                work = work - g.mul_term(shift, c * inv)
                break
        else:
            remainder[e] = c
            work = Polynomial(ring, work.terms[1:])
    return ring.from_dict(remainder)


def _monomial_minimalize(ring, exponents):
    """Minimal generators of the monomial ideal spanned by the exponents."""
    uniq = sorted(set(exponents), key=sum)
    kept = []
    for e in uniq:
        if not any(all(a >= b for a, b in zip(e, k)) for k in kept):
            kept.append(e)
    kept.sort(key=ring.sort_key, reverse=True)
    return kept


def _spoly(f, g):
    lmf, lmg = f.lead_monomial(), g.lead_monomial()
    lcm = tuple(max(a, b) for a, b in zip(lmf, lmg))
    p = f.ring.p
    sf = f.mul_term(
        tuple(a - b for a, b in zip(lcm, lmf)), pow(f.lead_coeff(), -1, p)
    )
    sg = g.mul_term(
        tuple(a - b for a, b in zip(lcm, lmg)), pow(g.lead_coeff(), -1, p)
    )
    return sf - sg


def _buchberger_raw(ring, gens):
    basis = [g.monic() for g in gens]
    pairs = {(i, j) for i in range(len(basis)) for j in range(i)}

    def lcm_key(pair):
        i, j = pair
        lcm = tuple(
            max(a, b)
            for a, b in zip(basis[i].lead_monomial(), basis[j].lead_monomial())
        )
        return (ring.sort_key(lcm), i, j)

    while pairs:
        # normal selection strategy: smallest lcm first, deterministic ties
        i, j = min(pairs, key=lcm_key)
        pairs.discard((i, j))
        lmi, lmj = basis[i].lead_monomial(), basis[j].lead_monomial()
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue  # coprime leads: S-polynomial reduces to zero
        h = normal_form(_spoly(basis[i], basis[j]), basis)
        if h.terms:
            basis.append(h.monic())
            k = len(basis) - 1
            pairs.update((k, m) for m in range(k))
    return basis


def _reduce_basis(ring, basis):
    # drop redundant leads, then fully inter-reduce the survivors
    basis = sorted(basis, key=lambda g: ring.sort_key(g.lead_monomial()))
    kept = []
    for idx, g in enumerate(basis):
        lm = g.lead_monomial()
        others = kept + basis[idx + 1 :]
        if not any(
            all(a >= b for a, b in zip(lm, h.lead_monomial())) for h in others
        ):
            kept.append(g)
    reduced = []
    for idx, g in enumerate(kept):
        others = kept[:idx] + kept[idx + 1 :]
        reduced.append(normal_form(g, others).monic())
    reduced.sort(key=lambda g: ring.sort_key(g.lead_monomial()), reverse=True)
    return reduced


def reduced_groebner_basis(ring, gens):
    gens = [g for g in gens if g.terms]
    if not gens:
        return []
    if any(g.is_unit() for g in gens):
        return [ring.one()]
    if all(len(g.terms) == 1 for g in gens):
        mins = _monomial_minimalize(ring, [g.lead_monomial() for g in gens])
        return [ring.monomial(e) for e in mins]
    basis = _buchberger_raw(ring, gens)
    out = _reduce_basis(ring, basis)
    if len(out) == 1 and out[0].is_unit():
        return [ring.one()]
    return out


class Ideal:
    """Finitely generated ideal; the reduced basis is computed on demand
    and cached (compute-then-publish, safe to race)."""

    __slots__ = ("ring", "gens", "_canon")

    def __init__(self, ring: RingContext, gens):
        gens = tuple(g for g in gens if g.terms)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch("generator from a different ring")
        self.ring = ring
        self.gens = gens
        self._canon = None

    def canon(self):
        if self._canon is None:
            self._canon = tuple(reduced_groebner_basis(self.ring, self.gens))
        return self._canon

    def is_unit(self):
        if self._canon is None and any(g.is_unit() for g in self.gens):
            return True
        return self.canon() == (self.ring.one(),)

    def is_zero(self):
        return not self.gens

    def is_monomial(self):
        return all(len(g.terms) == 1 for g in self.canon())

    def fingerprint(self):
        return tuple(g.terms for g in self.canon())

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return ideal_equal(self, other)

    def __hash__(self):
        return hash((self.ring, self.fingerprint()))

    def __str__(self):
        polys = self._canon if self._canon is not None else self.gens
        if not polys:
            return "(0)"
        return "(" + ", ".join(str(g) for g in polys) + ")"

    def __repr__(self):
        return f"Ideal{self}"


def canonical_ideal(I: Ideal) -> Ideal:
    """Same ideal, regenerated by its reduced basis (and caching it)."""
    out = Ideal(I.ring, I.canon())
    out._canon = I._canon
    return out


def unit_ideal(ring):
    return Ideal(ring, [ring.one()])


def zero_ideal(ring):
    return Ideal(ring, [])


def buchberger(I: Ideal):
    """The unique reduced Groebner basis of I, as a list."""
    return list(I.canon())


def ideal_contains(I: Ideal, f: Polynomial) -> bool:
    if f.ring != I.ring:
        raise RingMismatch("polynomial from a different ring")
    if not f.terms:
        return True
    canon = I.canon()
    if not canon:
        return False
    return not normal_form(f, canon).terms


def _all_single_term(I):
    return bool(I.gens) and all(len(g.terms) == 1 for g in I.gens)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    if I.ring != J.ring:
        raise RingMismatch("ideals from different rings")
    if I._canon is None and J._canon is None:
        if _all_single_term(I) and _all_single_term(J):
            # monomial fast path: minimalized generators are canonical
            a = _monomial_minimalize(I.ring, [g.lead_monomial() for g in I.gens])
            b = _monomial_minimalize(J.ring, [g.lead_monomial() for g in J.gens])
            return a == b
    return I.canon() == J.canon()


def ideal_subset(I: Ideal, J: Ideal) -> bool:
    """True iff I is contained in J."""
    return all(ideal_contains(J, g) for g in I.gens)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch("ideals from different rings")
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    if I.ring != J.ring:
        raise RingMismatch("ideals from different rings")
    return Ideal(I.ring, [g * h for g in I.gens for h in J.gens])


def scale_ideal(f: Polynomial, I: Ideal) -> Ideal:
    if f.ring != I.ring:
        raise RingMismatch("polynomial from a different ring")
    return Ideal(I.ring, [f * g for g in I.gens])
