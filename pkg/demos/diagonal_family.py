"""A family with arbitrarily deep F-jumping numbers.

For f = x^a + y^a + z^a with a = 2^(n+1) + 1, the interval
[1 - 1/p^n, 1 - 1/p^(n+1)] traps a certified jump, so the denominators
of jumping numbers (and the stabilization index) grow without bound as
n does. The monomial x^(a-3) witnesses the drop: it sits inside
tau(f^(1 - 1/p^n)) but falls out of tau(f^(1 - 1/p^(n+1))).
"""

from fractions import Fraction

from charp import (
    hsl_number,
    ideal_contains,
    jumps_in_unit_interval,
    make_ring,
    parse_poly,
    tau,
)

CASES = ((1, 7), (1, 17), (2, 2), (3, 2))


def main():
    for n, p in CASES:
        a = 2 ** (n + 1) + 1
        ring = make_ring(p, ["x", "y", "z"])
        f = parse_poly(ring, f"x^{a} + y^{a} + z^{a}")
        lo = 1 - Fraction(1, p**n)
        hi = 1 - Fraction(1, p ** (n + 1))
        probe = parse_poly(ring, f"x^{a - 3}")
        inside = ideal_contains(tau(f, lo), probe)
        outside = not ideal_contains(tau(f, hi), probe)
        certs = [
            c for c in jumps_in_unit_interval(f, n + 1)
            if c.status == "certified-jump" and lo <= c.value <= hi
        ]
        print(f"f = x^{a} + y^{a} + z^{a} over F_{p} (n = {n})")
        print(f"  hsl = {hsl_number(f).hsl} (>= {n + 1})")
        print(f"  x^{a - 3} in tau(f^({lo})): {inside};"
              f" in tau(f^({hi})): {not outside}")
        print(f"  certified jumps in [{lo}, {hi}]:"
              f" {', '.join(str(c.value) for c in certs)}")
        print()


if __name__ == "__main__":
    main()
