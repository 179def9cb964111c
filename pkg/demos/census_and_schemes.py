"""Index multisets and exact weight schemes.

Every positive integer m = b^j (b n - r) is reached once by C_b, and the
pair multisets D_b and E_b coincide.  Any weight scheme whose cumulative
weight phi(nu) + sum_{k<nu} chi(k) matches the target passes the exact
structural check; shifting chi(0) breaks it first at m = b.

Run with ``python3 demos/census_and_schemes.py``.
"""

from multisection import catalog
from multisection import index_algebra as ia


def main():
    for b in (2, 3):
        c, d, e = ia.census_C(b, 10_000), ia.census_D(b, 10_000), ia.census_E(b, 10_000)
        print(f"base {b}: |C| = {c.total}, D == E: {d == e}")

    print("\nD_2 up to 16:", dict(ia.census_D(2, 16).counts))

    print("\nexact schemes, base 3, N = 3000")
    for name, scheme in catalog.exact_schemes(3).items():
        r = ia.structural_check(scheme, 3000)
        print(f"  {name:<14s} {'PASS' if r.passed else 'FAIL'}")

    for b in (2, 5):
        bad = ia.corrupt_scheme(catalog.exact_schemes(b)["general-2j"])
        print(f"corrupted chi, base {b}: first mismatch at m = "
              f"{ia.structural_check(bad, 500).first_mismatch}")


if __name__ == "__main__":
    main()
