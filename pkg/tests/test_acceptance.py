"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with output visible:

    pytest tests/test_acceptance.py -v -s
"""
from __future__ import annotations

import random
import time
from fractions import Fraction
from math import comb

from binres.coeff_matrix import build_c
from binres.det_factor import FactoredPoly, factor_determinant
from binres.frames import cyclic_orders
from binres.inverse_system import (
    ann_generator_counts,
    builtin_dual,
    catalecticant_hilbert,
    hess2_vanishing_order,
    hess_det_eval,
)
from binres.oracle import ModularContext, det_mod, membership_batch, quotient_dim
from binres.polynomials import RATIONAL, XPoly, is_squarefree, monomials
from binres.resultant import delta_chain, divides, radical, resultant, resultant_eval
from binres.rewrite import hilbert_function, rewrite_table
from binres.systems import BinomialSystem, cyclic_system, make_system

from conftest import random_specialization, random_system

SEED = 20260811


def _report(num: int, message: str) -> None:
    print(f"\n[ACCEPTANCE {num}] PASS — {message}")


# -------------------------------------------------------------- criterion 1

QUINTIC_CYCLIC_TABLE = {
    (1, 2): (15, 1),
    (1, 3): (15, 1),
    (1, 4): (15, 1),
    (1, 5): (15, 1),
    (2, 3): (5, 11),
    (2, 4): (5, 11),
    (2, 5): (11, 5),
    (3, 4): (11, 5),
    (3, 5): (5, 11),
    (4, 5): (5, 11),
}


def test_acceptance_1_quintic_cyclic_table():
    worst = 0.0
    for cofactor, (alpha, beta) in sorted(QUINTIC_CYCLIC_TABLE.items()):
        start = time.monotonic()
        res = resultant(cyclic_system(5, cofactor))
        elapsed = time.monotonic() - start
        worst = max(worst, elapsed)
        assert elapsed < 60.0
        assert res.sign == 1
        assert res.monomial == (alpha,) * 5 + (0,) * 5, cofactor
        (factor, mult), = res.factors
        assert mult == beta, cofactor
        assert factor.a_part == (1,) * 5 + (0,) * 5
        assert factor.b_part == (0,) * 5 + (1,) * 5
        assert factor.sign == 1
    print("\n[NOTE] the x1*x2 row is sometimes quoted with monomial exponent 14; "
          "only 15 is consistent with total degree 80, and the engine computes 15.")
    _report(1, f"all 10 table rows exact; slowest row {worst:.2f}s (< 60s)")


# -------------------------------------------------------------- criterion 2

def test_acceptance_2_mixed_cofactor_quintic():
    start = time.monotonic()
    system = make_system(5, [(2, 3), (3, 5), (4, 5), (1, 3), (1, 2)], alias="p")
    res = resultant(system)
    elapsed = time.monotonic() - start
    assert elapsed < 60.0
    assert res.sign == 1
    assert res.monomial == (9, 8, 6, 11, 7) + (0,) * 5
    (factor, mult), = res.factors
    assert mult == 1 and factor.sign == 1
    assert factor.a_part == (7, 8, 10, 5, 9) + (0,) * 5
    assert factor.b_part == (0,) * 5 + (7, 8, 10, 5, 9)
    _report(2, f"a1^9*a2^8*a3^6*a4^11*a5^7 * (...)^1 exact in {elapsed:.2f}s (< 60s)")


# -------------------------------------------------------------- criterion 3

def test_acceptance_3_degree_law():
    rng = random.Random(SEED)
    checked = 0
    for n in (2, 3, 4, 5):
        seen = set()
        count = 0
        trials = 0
        while count < 10 and trials < 200:
            trials += 1
            system = random_system(n, rng)
            if system.pattern() in seen and n > 2:  # n=2 has a single pattern
                continue
            seen.add(system.pattern())
            assert resultant(system).total_degree() == n * 2 ** (n - 1)
            count += 1
        checked += count
    assert checked >= 40
    _report(3, f"deg Res = n*2^(n-1) on {checked} random cofactor patterns, n=2..5")


# -------------------------------------------------------------- criterion 4

def test_acceptance_4_delta_chain_suite():
    start = time.monotonic()
    rng = random.Random(SEED + 4)
    systems = []
    for n in (2, 3, 4, 5):
        systems.append(random_system(n, rng))
        systems.append(cyclic_system(n, (1, 2) if n == 2 else (2, 3)))
    for system in systems:
        n = system.n
        res = resultant(system)
        a_mono = FactoredPoly(n, 1, (1,) * n + (0,) * n, {})
        assert divides(a_mono, res)
        for order in cyclic_orders(n):
            chain = delta_chain(system, order)
            # Delta_2 = a_1 ... a_n
            assert chain.delta(2) == FactoredPoly(n, 1, (1,) * n + (0,) * n, {})
            for lam in range(2, n + 1):
                assert divides(radical(chain.delta(lam)), radical(chain.delta(lam + 1)))
            assert divides(res, chain.delta(n + 1))
            assert radical(res) == radical(chain.delta(n + 1))
    elapsed = time.monotonic() - start
    assert elapsed < 300.0
    _report(4, f"Delta_2 / divisibility / radical chain / sqrt equality over all "
               f"cyclic orders, n<=5, in {elapsed:.1f}s (< 5 min)")


# -------------------------------------------------------------- criterion 5

def test_acceptance_5_engine_soundness():
    rng = random.Random(SEED + 5)
    matrices = 0
    evaluations = 0
    mismatches = 0
    for n in (2, 3, 4, 5):
        for _ in range(10):
            system = random_system(n, rng)
            for order in cyclic_orders(n):
                for lam in range(2, n + 2):
                    matrix = build_c(system, lam, order)
                    fp = factor_determinant(matrix)
                    matrices += 1
                    for k in range(20):
                        ctx = ModularContext.random(
                            n, rng.randrange(1 << 30), allow_zero=(k % 5 == 4))
                        av, bv = ctx.residue_vectors(n)
                        evaluations += 1
                        if fp.eval_mod(av, bv, ctx.prime) != det_mod(matrix, ctx):
                            mismatches += 1
    assert matrices >= 500
    assert mismatches == 0
    _report(5, f"{matrices} matrices, {evaluations} modular evaluations, 0 mismatches")


# -------------------------------------------------------------- criterion 6

def _rational_point_on_factor(factor, n: int, rng: random.Random):
    """Rational specialization killing one binomial factor (needs an
    exponent-1 parameter); None if the factor has none."""
    slot = None
    for part in (factor.a_part, factor.b_part):
        for pos, e in enumerate(part):
            if e == 1:
                slot = (pos, part)
                break
        if slot:
            break
    if slot is None:
        return None
    pos, part = slot
    other = factor.b_part if part is factor.a_part else factor.a_part
    for _ in range(50):
        vals = [Fraction(rng.randint(1, 6)) for _ in range(2 * n)]
        rest = Fraction(1)
        for q, e in enumerate(part):
            if q != pos and e:
                rest *= vals[q] ** e
        if rest == 0:
            continue
        oval = Fraction(1)
        for q, e in enumerate(other):
            if e:
                oval *= vals[q] ** e
        vals[pos] = -factor.sign * oval / rest
        if vals[pos] == 0:
            continue
        return ({f"a{i + 1}": vals[i] for i in range(n)}
                | {f"b{i + 1}": vals[n + i] for i in range(n)})
    return None


def _verify_ci_specialization(spec: BinomialSystem) -> None:
    n = spec.n
    assignment = spec.assignment()
    chain = delta_chain(spec.symbolic_twin())
    for lam in range(2, n + 2):
        assert chain.delta(lam).specialize(assignment) != 0
    for lam in range(2, n + 2):
        table = rewrite_table(spec, lam)  # reduce defined on every monomial
        non_squarefree = [m for m in monomials(n, lam) if not is_squarefree(m)]
        assert set(table.tails) == set(non_squarefree)
        diffs = [XPoly(n, RATIONAL, {w: Fraction(1)}) - table.tail(w)
                 for w in non_squarefree]
        assert all(membership_batch(spec, lam, diffs))
    assert quotient_dim(spec) == 2 ** n
    assert hilbert_function(spec) == tuple(comb(n, k) for k in range(n + 1))


def _verify_degenerate_specialization(spec: BinomialSystem) -> None:
    n = spec.n
    assignment = spec.assignment()
    chain = delta_chain(spec.symbolic_twin())
    singular = any(chain.delta(lam).specialize(assignment) == 0
                   for lam in range(2, n + 2))
    assert singular or quotient_dim(spec) != 2 ** n


def test_acceptance_6_squarefree_basis_property():
    rng = random.Random(SEED + 6)
    nonzero_checked = 0
    zero_checked = 0
    for n in (2, 3, 4):
        patterns = [random_system(n, rng) for _ in range(5)]
        count = 0
        while count < 17:
            system = patterns[count % len(patterns)]
            spec = random_specialization(system, rng)
            if resultant_eval(spec) != 0:
                _verify_ci_specialization(spec)
                count += 1
                nonzero_checked += 1
        # degenerate side: kill one factor rationally, or set some a_i = 0
        for system in patterns[:3]:
            res = resultant(system)
            made = None
            for factor, _ in res.factors:
                made = _rational_point_on_factor(factor, n, rng)
                if made:
                    break
            if made is None:
                made = {f"a{i}": Fraction(1) for i in range(1, n + 1)} \
                    | {f"b{i}": Fraction(1) for i in range(1, n + 1)}
                made[f"a{rng.randint(1, n)}"] = Fraction(0)
            spec = system.specialize(made)
            assert resultant_eval(spec) == 0
            _verify_degenerate_specialization(spec)
            zero_checked += 1
        # plus the always-available a_i = 0 degeneration
        system = patterns[3]
        assignment = {f"a{i}": Fraction(rng.randint(1, 5)) for i in range(1, n + 1)} \
            | {f"b{i}": Fraction(rng.randint(1, 5)) for i in range(1, n + 1)}
        assignment["a1"] = Fraction(0)
        spec = system.specialize(assignment)
        assert resultant_eval(spec) == 0
        _verify_degenerate_specialization(spec)
        zero_checked += 1
    assert nonzero_checked >= 50

    # five runs at n = 5
    runs = 0
    while runs < 5:
        system = random_system(5, rng)
        spec = random_specialization(system, rng)
        if resultant_eval(spec) == 0:
            continue
        _verify_ci_specialization(spec)
        runs += 1
    _report(6, f"{nonzero_checked} CI specializations (n<=4) + 5 runs at n=5 fully "
               f"verified; {zero_checked} degenerate specializations confirmed")


# -------------------------------------------------------------- criterion 7

def _sample_p(rng: random.Random, on_locus: bool):
    p = [Fraction(rng.randint(1, 6), rng.randint(1, 3)) for _ in range(4)]
    prod = p[0] * p[1] * p[2] * p[3]
    if on_locus:
        p.append(Fraction(-1) / prod)
        return p
    while True:
        last = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
        if last != 0 and prod * last != -1:
            p.append(last)
            return p


def test_acceptance_7_inverse_system():
    start = time.monotonic()
    rng = random.Random(SEED + 7)
    for on_locus in (False, True):
        for _ in range(10):
            p = _sample_p(rng, on_locus)
            assert catalecticant_hilbert(builtin_dual("F", p)) == (1, 5, 10, 10, 5, 1)
        for _ in range(10):
            p = _sample_p(rng, on_locus)
            expected = (1, 5, 5, 5, 5, 1) if on_locus else (1, 5, 10, 10, 5, 1)
            assert catalecticant_hilbert(builtin_dual("G", p)) == expected
    for _ in range(3):
        assert sum(ann_generator_counts(builtin_dual("F", _sample_p(rng, False)))) == 5
        assert sum(ann_generator_counts(builtin_dual("F", _sample_p(rng, True)))) == 7
    elapsed = time.monotonic() - start
    assert elapsed < 120.0
    _report(7, f"F/G Hilbert functions (10 samples per side) and 5/7 generator "
               f"counts exact in {elapsed:.1f}s (< 2 min)")


# -------------------------------------------------------------- criterion 8

def test_acceptance_8_hessians():
    rng = random.Random(SEED + 8)

    def point():
        return [Fraction(rng.randint(1, 12), rng.randint(1, 5)) for _ in range(5)]

    # vanishing on the locus: 10 random points across locus samples
    for _ in range(10):
        form = builtin_dual("G", _sample_p(rng, True))
        assert hess_det_eval(form, 2, point()) == 0
    # nonzero off the locus: 10 samples
    for _ in range(10):
        form = builtin_dual("G", _sample_p(rng, False))
        assert hess_det_eval(form, 2, point()) != 0
    # vanishing order >= 5 along the t-line, 5 independent samples
    orders = []
    for _ in range(5):
        p14 = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(4)]
        orders.append(hess2_vanishing_order("G", p14, point()))
    assert all(o >= 5 for o in orders)
    # the F analogue has order 0
    for _ in range(3):
        p14 = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(4)]
        assert hess2_vanishing_order("F", p14, point()) == 0
    _report(8, f"hess^2(G) locus behaviour and t-orders {orders} (all >= 5); "
               f"hess^2(F) order 0")
