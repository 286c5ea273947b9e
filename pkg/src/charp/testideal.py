"""Test ideals tau(f^lambda), F-jumping numbers, and the F-pure threshold.

Everything reduces to Frobenius roots through two exact identities:

  * pure p-power exponents: tau(f^(m/p^e)) = (f^m)^[1/p^e], no limit
    process involved;
  * for lambda = r/(p^s - 1) in (0,1), the ascending chain seeded at
    (f^(r+1))^[1/p^s] with step J -> (f^r * J)^[1/p^s] stabilizes to
    tau(f^lambda), while the descending chain seeded at (f^r)^[1/p^s] with
    the same step stabilizes to the left limit of tau at lambda (its e-th
    entry equals tau at the pure p-power exponent r*(1 + p^s + ... +
    p^(s(e-1)))/p^(se), which increases to lambda from below).

The step operator is monotone, so one-step equality is a rigorous stopping
rule for both chains. A general rational exponent is reduced to those two
shapes by Skoda's identity (tau(f^lambda) = f * tau(f^(lambda-1)) for
lambda >= 1) and by folding p-power denominator parts through a single
degree-bounded mixed root.

Jumping-number enumeration exploits monotonicity twice: equal ideals at two
grid exponents certify the absence of jumps over the whole span (enabling
divide-and-conquer instead of a full p^e grid walk), and each localized
drop is then pinned to an exact rational with denominator p^a(p^s - 1) and
certified by comparing tau against its left limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import (
    ChainNotMonotone,
    OutOfInterval,
    ResourceLimit,
    UnitPolynomial,
    ZeroPolynomial,
)
from .ring import Polynomial, pow_base_p
from .groebner import Ideal, ideal_equal, ideal_subset, scale_ideal, unit_ideal
from .frobenius import frob_root, mixed_root

CHAIN_STEP_LIMIT = 64


def multiplicative_order(x: int, modulus: int) -> int:
    if modulus == 1:
        return 1
    x %= modulus
    value, order = x, 1
    while value != 1:
        value = value * x % modulus
        order += 1
        if order > modulus:
            raise ValueError(f"{x} is not invertible mod {modulus}")
    return order


@dataclass(frozen=True)
class PFracForm:
    """lambda = r / (p^a * (p^s - 1)) with s minimal."""

    r: int
    a: int
    s: int

    def as_fraction(self, p: int) -> Fraction:
        return Fraction(self.r, p**self.a * (p**self.s - 1))


def pfrac_form(lam: Fraction, p: int) -> PFracForm:
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("exponent must be positive")
    den = lam.denominator
    a = 0
    while den % p == 0:
        den //= p
        a += 1
    s = multiplicative_order(p, den) if den > 1 else 1
    scaled = lam * p**a * (p**s - 1)
    assert scaled.denominator == 1
    return PFracForm(r=int(scaled), a=a, s=s)


@dataclass(frozen=True)
class JumpCertificate:
    value: Fraction
    tau_at: Ideal
    tau_left: Ideal
    status: str  # certified-jump | certified-not-jump | candidate

    def is_jump(self):
        return self.status == "certified-jump"


@dataclass(frozen=True)
class NuValue:
    e: int
    nu: int


@dataclass(frozen=True)
class FptInterval:
    """Uncertified fallback: the threshold lies in (lo, hi]."""

    lo: Fraction
    hi: Fraction


@dataclass(frozen=True)
class GapClaim:
    """Certified-empty open interval (lo, hi): no jumping numbers inside."""

    lo: Fraction
    hi: Fraction


def _require_nonzero(f: Polynomial):
    if not f.terms:
        raise ZeroPolynomial("zero polynomial has no test ideals")


def _require_nonunit(f: Polynomial):
    if f.is_unit():
        raise UnitPolynomial("constant polynomial is F-regular everywhere")


def cartier_chain(f: Polynomial, r: int, s: int, seed: Ideal) -> Ideal:
    """Iterate J -> (f^r * J)^[1/p^s] from seed until it stops moving.

    The step operator is inclusion-monotone, so once two consecutive values
    agree the chain is constant forever; the direction (ascending or
    descending) is asserted on the first step.
    """
    current = seed
    nxt = mixed_root(f, r, current, s)
    if ideal_equal(nxt, current):
        return current
    if not (ideal_subset(current, nxt) or ideal_subset(nxt, current)):
        raise ChainNotMonotone(
            f"chain step is not monotone from seed {seed} (r={r}, s={s})"
        )
    for _ in range(CHAIN_STEP_LIMIT):
        current, nxt = nxt, mixed_root(f, r, nxt, s)
        if ideal_equal(nxt, current):
            return current
    raise ResourceLimit(f"chain did not stabilize within {CHAIN_STEP_LIMIT} steps")


def tau_ppower(f: Polynomial, m: int, e: int) -> Ideal:
    """tau(f^(m/p^e)) = (f^m)^[1/p^e], exactly."""
    _require_nonzero(f)
    return mixed_root(f, m, unit_ideal(f.ring), e)


def _tau_fractional(f: Polynomial, r: int, s: int) -> Ideal:
    # tau(f^(r/(p^s-1))) for 0 < r < p^s - 1
    seed = mixed_root(f, r + 1, unit_ideal(f.ring), s)
    return cartier_chain(f, r, s, seed)


def _tau_left_fractional(f: Polynomial, r: int, s: int) -> Ideal:
    # left limit of tau at r/(p^s-1) for 0 < r <= p^s - 1
    seed = mixed_root(f, r, unit_ideal(f.ring), s)
    return cartier_chain(f, r, s, seed)


def _split_integer_part(lam: Fraction, half_open_high: bool):
    """lam = k + theta with theta in (0,1) (or (0,1] if half_open_high)."""
    k = int(lam)
    theta = lam - k
    if theta == 0 and half_open_high:
        k -= 1
        theta = Fraction(1)
    return k, theta


def tau(f: Polynomial, lam) -> Ideal:
    """The test ideal of f at exponent lam >= 0."""
    lam = Fraction(lam)
    _require_nonzero(f)
    if lam < 0:
        raise ValueError("exponent must be >= 0")
    ring = f.ring
    if f.is_unit() or lam == 0:
        return unit_ideal(ring)
    if lam.denominator == 1:
        return Ideal(ring, [pow_base_p(f, int(lam))])
    k, theta = _split_integer_part(lam, half_open_high=False)
    result = _tau_unit_interval(f, theta)
    if k:
        # Skoda, applied k times at once
        result = scale_ideal(pow_base_p(f, k), result)
    return result


def _tau_unit_interval(f: Polynomial, lam: Fraction) -> Ideal:
    # 0 < lam < 1
    p = f.ring.p
    form = pfrac_form(lam, p)
    scaled = lam * p**form.a  # = r / (p^s - 1), possibly >= 1
    if scaled.denominator == 1:
        return tau_ppower(f, int(scaled), form.a)
    k, theta = _split_integer_part(scaled, half_open_high=False)
    r_theta = int(theta * (p**form.s - 1))
    inner = _tau_fractional(f, r_theta, form.s)
    if form.a == 0:
        return inner
    # tau(f^(mu/p^a)) = tau(f^mu)^[1/p^a]; fold Skoda's f^k through the
    # root as one degree-bounded mixed root
    return mixed_root(f, k, inner, form.a)


def tau_left(f: Polynomial, lam) -> Ideal:
    """The common value of tau(f^mu) for mu < lam sufficiently close."""
    lam = Fraction(lam)
    _require_nonzero(f)
    if lam <= 0:
        raise ValueError("exponent must be positive")
    if f.is_unit():
        return unit_ideal(f.ring)
    k, theta = _split_integer_part(lam, half_open_high=True)
    result = _tau_left_unit_interval(f, theta)
    if k:
        result = scale_ideal(pow_base_p(f, k), result)
    return result


def _tau_left_unit_interval(f: Polynomial, lam: Fraction) -> Ideal:
    # 0 < lam <= 1
    p = f.ring.p
    form = pfrac_form(lam, p)
    scaled = lam * p**form.a
    k, theta = _split_integer_part(scaled, half_open_high=True)
    r_theta = int(theta * (p**form.s - 1))
    inner = _tau_left_fractional(f, r_theta, form.s)
    if k:
        inner = mixed_root(f, k, inner, form.a) if form.a else scale_ideal(
            pow_base_p(f, k), inner
        )
        return inner
    return frob_root(inner, form.a) if form.a else inner


def is_fjumping(f: Polynomial, lam) -> JumpCertificate:
    lam = Fraction(lam)
    _require_nonzero(f)
    if lam <= 0:
        raise ValueError("exponent must be positive")
    if f.is_unit():
        one = unit_ideal(f.ring)
        return JumpCertificate(
            value=lam, tau_at=one, tau_left=one, status="certified-not-jump"
        )
    # f^k*A == f^k*B iff A == B (the ring is a domain), so decide equality
    # on the fractional parts and scale only the reported ideals
    k, theta = _split_integer_part(lam, half_open_high=True)
    at = tau(f, theta)
    left = tau_left(f, theta)
    status = "certified-not-jump" if ideal_equal(at, left) else "certified-jump"
    if k:
        g = pow_base_p(f, k)
        at = scale_ideal(g, at)
        left = scale_ideal(g, left)
    return JumpCertificate(value=lam, tau_at=at, tau_left=left, status=status)


def nu(f: Polynomial, e: int) -> NuValue:
    """Largest m with (f^m)^[1/p^e] = (1).

    Monotone binary search; m = p^e is always a safe upper bound because
    tau(f^1) = (f) is proper for a nonunit f.
    """
    _require_nonzero(f)
    _require_nonunit(f)
    p = f.ring.p
    lo, hi = 0, p**e  # root(lo) unit, root(hi) proper
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tau_ppower(f, mid, e).is_unit():
            lo = mid
        else:
            hi = mid
    return NuValue(e=e, nu=lo)


def _candidates_in_interval(p, lo: Fraction, hi: Fraction, a_max, s_max):
    """All rationals r/(p^a(p^s-1)) in (lo, hi], ascending."""
    values = set()
    for a in range(a_max + 1):
        for s in range(1, s_max + 1):
            den = p**a * (p**s - 1)
            r_lo = int(lo * den)  # r > lo*den
            r_hi = int(hi * den)  # r <= hi*den
            if Fraction(r_hi, den) > hi:
                r_hi -= 1
            for r in range(r_lo + 1, r_hi + 1):
                values.add(Fraction(r, den))
    return sorted(values)


def fpt(f: Polynomial, e_max: int = 4, s_max: int = 4):
    """The F-pure threshold: smallest exponent with a proper test ideal.

    Localizes the threshold to a width p^(-e_ref) interval with e_ref =
    e_max + s_max (so each candidate family contributes O(1) candidates),
    then certifies the unique candidate lambda with tau_left = (1) and
    tau != (1). Returns a JumpCertificate on success, else an FptInterval
    (honest uncertified localization).
    """
    _require_nonzero(f)
    _require_nonunit(f)
    p = f.ring.p
    e_ref = e_max + s_max
    located = nu(f, e_ref)
    lo = Fraction(located.nu, p**e_ref)
    hi = Fraction(located.nu + 1, p**e_ref)
    for lam in _candidates_in_interval(p, lo, hi, e_max, s_max):
        at = tau(f, lam)
        if at.is_unit():
            continue
        left = tau_left(f, lam)
        if left.is_unit():
            return JumpCertificate(
                value=lam, tau_at=at, tau_left=left, status="certified-jump"
            )
    return FptInterval(lo=lo, hi=hi)


GRID_LIMIT = 2**40


def jumps_in_unit_interval(f: Polynomial, e_res: int, s_max: int = 4):
    """Certified F-jumping numbers of f in the open interval (0, 1).

    Walks the monotone grid m -> (f^m)^[1/p^e_res] by divide-and-conquer
    (equal endpoint ideals certify a jump-free span), refines each dropping
    cell to depth e_res + 2 + s_max, and certifies candidates inside. Any
    drop not explained by a certified candidate is emitted with status
    "candidate" rather than suppressed.
    """
    _require_nonzero(f)
    _require_nonunit(f)
    ring = f.ring
    p = ring.p
    if p**e_res > GRID_LIMIT:
        raise ResourceLimit(f"grid p^{e_res} exceeds {GRID_LIMIT}")
    a_max = e_res + 2
    deep = a_max + s_max  # refinement depth for candidate localization

    cache = {}

    def grid(m, depth):
        key = (m, depth)
        if key not in cache:
            cache[key] = tau_ppower(f, m, depth)
        return cache[key]

    def drop_cells(m_lo, m_hi, depth):
        # cells (m-1, m] where the grid ideal strictly drops
        if ideal_equal(grid(m_lo, depth), grid(m_hi, depth)):
            return []
        if m_hi - m_lo == 1:
            return [m_hi]
        mid = (m_lo + m_hi) // 2
        return drop_cells(m_lo, mid, depth) + drop_cells(mid, m_hi, depth)

    results = []
    top = p**e_res
    for m in drop_cells(0, top, e_res):
        scale = p ** (deep - e_res)
        sub_lo, sub_hi = (m - 1) * scale, m * scale
        for m2 in drop_cells(sub_lo, sub_hi, deep):
            left_val = grid(m2 - 1, deep)
            right_val = grid(m2, deep)
            cell_lo = Fraction(m2 - 1, p**deep)
            cell_hi = Fraction(m2, p**deep)
            if cell_lo >= 1:
                continue
            # the jump at exactly 1 is excluded from the open interval;
            # compare against the left limit at 1 instead
            if cell_hi >= 1:
                cell_hi = Fraction(1)
                right_val = tau_left(f, 1)
                if ideal_equal(left_val, right_val):
                    continue
            candidates = _candidates_in_interval(p, cell_lo, cell_hi, a_max, s_max)
            if cell_hi < 1 and cell_hi not in candidates:
                candidates.append(cell_hi)  # deep pure p-power endpoint
            current = left_val
            marker = cell_lo
            for lam in candidates:
                if lam >= 1:
                    continue
                if ideal_equal(current, right_val):
                    break  # cell fully explained
                at = tau(f, lam)
                if ideal_equal(at, current):
                    continue  # constant through lam: no jump here
                left = tau_left(f, lam)
                if ideal_equal(left, current):
                    results.append(
                        JumpCertificate(
                            value=lam,
                            tau_at=at,
                            tau_left=left,
                            status="certified-jump",
                        )
                    )
                else:
                    # a jump hides in (marker, lam) outside the family
                    results.append(
                        JumpCertificate(
                            value=lam,
                            tau_at=at,
                            tau_left=left,
                            status="candidate",
                        )
                    )
                current = at
                marker = lam
            if not ideal_equal(current, right_val):
                results.append(
                    JumpCertificate(
                        value=cell_hi,
                        tau_at=right_val,
                        tau_left=current,
                        status="candidate",
                    )
                )
    return results


def transport_jump(mu, r: int, e: int, p: int) -> Fraction:
    """Map a jumping number in ((1-p^(-me))*lam, (1-p^(-(m+1)e))*lam] down
    one level: mu -> p^e * mu - r, with lam = r/(p^e - 1)."""
    mu = Fraction(mu)
    lam = Fraction(r, p**e - 1)
    if not 0 < mu <= lam:
        raise OutOfInterval(f"{mu} not in (0, {lam}]")
    # mu in (lam_m, lam_{m+1}] with lam_m = (1 - p^(-me)) * lam and m >= 1
    lam_1 = (1 - Fraction(1, p**e)) * lam
    if mu <= lam_1:
        raise OutOfInterval(f"{mu} not above (1 - p^-{e}) * {lam} = {lam_1}")
    return p**e * mu - r


def gap_certificate(f: Polynomial, r: int, e: int, d: int) -> GapClaim:
    """Certified-empty interval ((1 - p^(-de)) * lam, lam), lam = r/(p^e-1),
    valid when d bounds the number of jumping numbers of f below lam."""
    p = f.ring.p
    lam = Fraction(r, p**e - 1)
    lam_d = (1 - Fraction(1, p ** (d * e))) * lam
    return GapClaim(lo=lam_d, hi=lam)


def jump_count_bound(n: int, M: int, lam) -> int:
    """Dimension count bounding the number of jumping numbers below lam for
    a degree-M polynomial in n variables: C(n + floor(M*lam), n)."""
    if n < 1 or M < 1:
        raise ValueError("need n, M >= 1")
    return comb(n + int(Fraction(M) * Fraction(lam)), n)
