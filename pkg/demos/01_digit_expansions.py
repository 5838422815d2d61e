"""Exact digit expansions and their round trips.

Walks a few rationals through the four deterministic codecs, shows the
growth invariants each expansion obeys, and confirms that partial series
plus exact tail reproduces the input bit for bit.
"""

from fractions import Fraction

from oppenheimlab import extract_digits

EXAMPLES = [Fraction(3, 7), Fraction(1, 3), Fraction(355, 113) % 1,
            Fraction(610, 987)]


def main():
    for kind in ("luroth", "engel", "sylvester", "continued_fraction"):
        print(f"\n=== {kind} ===")
        for x in EXAMPLES:
            seq = extract_digits(kind, x, 8)
            back = seq.resum()
            mark = "terminated" if seq.terminated else "truncated"
            print(f"  x = {str(x):>9}  digits = {seq.digits}  ({mark})")
            assert back == x, (kind, x)
        print("  round trips exact: OK")

    # the Sylvester digits of 1 generate Sylvester's sequence 2, 3, 7, 43, ...
    seq = extract_digits("sylvester", Fraction(1), 5)
    print("\nSylvester digits of 1:", seq.digits)


if __name__ == "__main__":
    main()
