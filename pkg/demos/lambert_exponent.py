"""Which level exponent makes the Lambert-series multisection hold.

f(q) = sum n^mu q^n/(1 - q^n) is rebuilt from the signed series
g(q) = sum n^mu q^n/(1 + q^n) at q^(2^s), with weight 2^(a j + k).
Only a = mu + 1 reproduces f.  For mu = 1 this is a = 2, so a fixed
exponent of 2 looks right until mu = 2 is tried.

Run with ``python3 demos/lambert_exponent.py``.
"""

from multisection.engine import lambert_relation_check


def main():
    for mu, q in ((1, 0.25), (1, 0.5), (2, 0.5), (3, 0.5)):
        good = lambert_relation_check(mu, q)
        fixed = lambert_relation_check(mu, q, j_exponent=2)
        print(f"mu={mu} q={q}: f = {good.direct:.12g}; exponent mu+1 rel "
              f"{good.rel_discrepancy:.1e}; exponent 2 rel {fixed.rel_discrepancy:.1e}")


if __name__ == "__main__":
    main()
