"""Smoke test for the ffperiod Python module.

Run after `maturin develop` / `pip install` of crates/py, or after
`cargo build -p ffperiod-py`, in which case the shared library under
target/ is loaded directly.
"""

import glob
import importlib.machinery
import importlib.util
import os
import sys
from fractions import Fraction

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    try:
        import ffperiod

        return ffperiod
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for path in glob.glob(os.path.join(ROOT, "target", profile, "libffperiod.so")):
            loader = importlib.machinery.ExtensionFileLoader("ffperiod", path)
            spec = importlib.util.spec_from_loader("ffperiod", loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            sys.modules["ffperiod"] = module
            return module
    sys.exit("ffperiod is not installed and no built library was found under target/")


def oracle_power(p, n, t):
    qs = [q for q in range(2, t + 1) if t % q == 0 and all(q % r for r in range(2, q))]
    d = p**n - 1
    for q in qs:
        while d % q == 0:
            d //= q
    return d + 1


def main():
    ff = load()

    m = ff.MapSpec("power:3")
    assert (m.kind, m.t, str(m)) == ("power", 3, "power:3")
    assert ff.MapSpec.chebyshev(15) == ff.MapSpec("cheb:15")

    assert ff.analytic_count(5, 4, "power:3") == 209
    assert ff.analytic_count(7, 5, m) == oracle_power(7, 5, 3)
    big = ff.analytic_count(11, 300, "cheb:105")
    assert isinstance(big, int) and big.bit_length() > 800

    census = ff.brute_census(5, 4, "power:3")
    assert (census.periodic_count, census.preperiodic_count) == (209, 416)
    assert ff.brute_census(3, 5, "power:11").periodic_count == 3
    assert ff.brute_census(7, 2, "cheb:5").periodic_count == ff.analytic_count(7, 2, "cheb:5")

    f = ff.Field(3, 2)
    assert f.modulus == [1, 0, 1] and f.size == 9 and str(f) == "F_{3^2}"
    for i in range(9):
        z = f.element(i)
        assert f.index_of(z) == i
    assert f.census("power:2").periodic_count == ff.analytic_count(3, 2, "power:2")
    assert apply_matches_prime_field(ff)

    assert ff.ratio_at(5, 4, "power:3") == (209, 625)
    assert ff.render_decimal(2, 3) == "0.666666667"
    assert ff.render_decimal(14, 27) == "0.518518519"
    assert ff.render_binary32_display(14, 27) == "0.518518518"

    q = ff.TowerQuery(2, "cheb:15", delta=4, nu=[0, 0])
    assert q.members(2) == [4, 28]
    lim = q.limit()
    assert lim.as_fraction() == Fraction(8, 15)
    assert (lim.i_primes, lim.j_primes) == ([], [3, 5])
    assert ff.TowerQuery(19, "power:3", nu=[1]).limit().as_fraction() == Fraction(1, 27)
    assert ff.TowerQuery(17, "cheb:2", nu=[1]).limit().render() == "0.265625000"

    assert ff.predicted_valuation(7, 2, 4) == 5  # 7^4 - 1 = 2^5 * 75
    assert ff.mult_order(7, 2) == 3

    try:
        ff.analytic_count(4, 1, "power:3")
    except ValueError:
        pass
    else:
        raise AssertionError("composite characteristic accepted")
    try:
        ff.brute_census(2, 20, "power:3", max_enum=1000)
    except ff.BudgetExceededError:
        pass
    else:
        raise AssertionError("budget not enforced")

    print("ffperiod smoke test: ok")


def apply_matches_prime_field(ff):
    f = ff.Field(101, 1)
    return all(f.apply("power:3", i) == pow(i, 3, 101) for i in range(101))


if __name__ == "__main__":
    main()
