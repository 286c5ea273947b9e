"""Invariants of the quintic x^5 + y^5 + z^5 across small primes.

For each prime this prints the F-pure threshold, the stabilization index
of the Frobenius chain, and every certified F-jumping number in (0, 1).
The jump at a given prime depends on p mod 5: primes with p = 1 (mod 5)
keep denominator p, the others pick up deeper p-power denominators.
"""

from charp import fpt, hsl_number, jumps_in_unit_interval, make_ring, parse_poly

PRIMES = (2, 3, 5, 7, 11, 13, 19)


def main():
    print(f"{'p':>3}  {'fpt':>7}  {'hsl':>3}  jumping numbers in (0, 1)")
    for p in PRIMES:
        ring = make_ring(p, ["x", "y", "z"])
        f = parse_poly(ring, "x^5 + y^5 + z^5")
        threshold = fpt(f)
        depth = hsl_number(f).hsl
        # e-resolution 4 is needed below p = 5 to separate the deep jumps
        certs = jumps_in_unit_interval(f, 4 if p <= 3 else 3)
        jumps = ", ".join(str(c.value) for c in certs)
        assert all(c.status == "certified-jump" for c in certs)
        assert threshold.value == certs[0].value == min(c.value for c in certs)
        print(f"{p:>3}  {str(threshold.value):>7}  {depth:>3}  {jumps}")
    print()
    print("fpt always equals the smallest jump; hsl is 2 exactly when")
    print("p = 2, 3 (mod 5), where a jump with denominator p^2 appears.")


if __name__ == "__main__":
    main()
