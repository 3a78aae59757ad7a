"""Independent brute-force checks: modular determinants, graded ideal
dimensions, membership, quotient dimension, and the classical n=2 Sylvester
resultant.  Everything here deliberately avoids the circuit-factorization
machinery it is used to verify.

Determinants run over a fixed 62-bit prime with sparse elimination in pure
Python.  Rank computations clear denominators and run vectorized Gaussian
elimination mod two 30-bit primes (escalating to more primes, then to exact
rational elimination, if they ever disagree).
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, lcm

import numpy as np

from .coeff_matrix import build_c
from .errors import ValidationError
from .linalg import frac_rank
from .polynomials import RATIONAL, XPoly, mono_mul, monomials
from .systems import BinomialSystem

logger = logging.getLogger(__name__)

DEFAULT_PRIME = (1 << 62) - 57  # 62-bit prime for determinant evaluation
RANK_PRIMES = (1073741789, 1073741783, 998244353, 469762049, 167772161)


@dataclass(frozen=True)
class ModularContext:
    prime: int
    seed: int
    assignment: dict[str, int] = field(hash=False)

    @classmethod
    def random(cls, n: int, seed: int, prime: int = DEFAULT_PRIME,
               allow_zero: bool = False) -> "ModularContext":
        rng = random.Random(seed)
        low = 0 if allow_zero else 1
        assignment = {}
        for i in range(1, n + 1):
            assignment[f"a{i}"] = rng.randrange(low, prime)
            assignment[f"b{i}"] = rng.randrange(low, prime)
        return cls(prime, seed, assignment)

    def residue_vectors(self, n: int) -> tuple[list[int], list[int]]:
        return ([self.assignment[f"a{i}"] for i in range(1, n + 1)],
                [self.assignment[f"b{i}"] for i in range(1, n + 1)])


def _entry_residue(entry, assignment: dict[str, int], p: int) -> int:
    if entry.value is not None:
        num, den = entry.value.numerator, entry.value.denominator
        return num % p * pow(den % p, -1, p) % p
    return entry.sign % p * (assignment[f"{entry.kind}{entry.index}"] % p) % p


def _matching_parity(match: dict[int, int]) -> int:
    rows = sorted(match)
    cols = [match[r] for r in rows]
    rank = {c: i for i, c in enumerate(sorted(cols))}
    perm = [rank[c] for c in cols]
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def det_mod(matrix, ctx: ModularContext) -> int:
    """Determinant of the specialized matrix by sparse elimination mod p."""
    if matrix.nrows != matrix.ncols:
        raise ValidationError("det_mod needs a square matrix")
    p = ctx.prime
    size = matrix.nrows
    if size == 0:
        return 1 % p
    rows: list[dict[int, int]] = [dict() for _ in range(size)]
    for e in matrix.entries:
        v = _entry_residue(e, ctx.assignment, p)
        if v:
            rows[e.row][e.col] = (rows[e.row].get(e.col, 0) + v) % p
    col_rows: list[set[int]] = [set() for _ in range(size)]
    for r, row in enumerate(rows):
        for c in row:
            col_rows[c].add(r)

    det = 1
    pivots: dict[int, int] = {}
    active = [True] * size
    for col in range(size):
        candidates = [r for r in col_rows[col] if active[r] and rows[r].get(col)]
        if not candidates:
            return 0
        piv = min(candidates, key=lambda r: (len(rows[r]), r))
        active[piv] = False
        pivots[piv] = col
        pval = rows[piv][col]
        det = det * pval % p
        inv = pow(pval, -1, p)
        for r in list(col_rows[col]):
            if not active[r]:
                continue
            f = rows[r].get(col)
            if not f:
                col_rows[col].discard(r)
                continue
            f = f * inv % p
            for c, v in rows[piv].items():
                nv = (rows[r].get(c, 0) - f * v) % p
                if nv:
                    if c not in rows[r]:
                        col_rows[c].add(r)
                    rows[r][c] = nv
                elif c in rows[r]:
                    del rows[r][c]
                    col_rows[c].discard(r)
    return det * _matching_parity(pivots) % p


# --------------------------------------------------------------------------
# graded spans and ranks
# --------------------------------------------------------------------------

def span_rows(system: BinomialSystem, lam: int) -> tuple[list[list[int]], list]:
    """Integer coefficient rows of {m * f_i : deg m = lam - 2} over R_lam."""
    if system.mode != RATIONAL:
        raise ValidationError("oracle spans need a specialized system")
    n = system.n
    basis = monomials(n, lam)
    index = {m: k for k, m in enumerate(basis)}
    out = []
    if lam < 2:
        return out, basis
    for i in range(1, n + 1):
        gen = system.generator(i)
        scale = lcm(gen.a.denominator, gen.b.denominator)
        a_int = int(gen.a * scale)
        b_int = int(gen.b * scale)
        sq = tuple(2 if t == i - 1 else 0 for t in range(n))
        cof = gen.cofactor_mono(n)
        for m in monomials(n, lam - 2):
            row = [0] * len(basis)
            if a_int:
                row[index[mono_mul(m, sq)]] += a_int
            if b_int:
                row[index[mono_mul(m, cof)]] += b_int
            out.append(row)
    return out, basis


def _rank_mod(mat: np.ndarray, p: int) -> int:
    a = np.mod(mat, p).astype(np.int64)
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        col = a[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r] = a[r] * inv % p
        rest = np.nonzero(a[r + 1:, c])[0]
        if rest.size:
            rows = rest + r + 1
            a[rows] = (a[rows] - a[rows, c][:, None] * a[r][None, :]) % p
        r += 1
    return r


def int_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix via multi-prime modular elimination."""
    if not rows:
        return 0
    reduced = np.array([[v % RANK_PRIMES[0] for v in row] for row in rows], dtype=np.int64)
    r0 = _rank_mod(reduced, RANK_PRIMES[0])
    for p in RANK_PRIMES[1:]:
        reduced = np.array([[v % p for v in row] for row in rows], dtype=np.int64)
        r1 = _rank_mod(reduced, p)
        if r1 == r0:
            return r0
        logger.warning("modular rank disagreement (%d vs %d), escalating", r0, r1)
        r0 = max(r0, r1)
    return frac_rank([[Fraction(v) for v in row] for row in rows])


def ideal_dim(system: BinomialSystem, lam: int) -> int:
    """dim of the degree-lam piece of the ideal, by row rank of its span."""
    rows, _ = span_rows(system, lam)
    return int_rank(rows)


def quotient_dim(system: BinomialSystem) -> "int | None":
    """Total dimension of R/I summed over degrees 0..2n; None if not Artinian
    by degree 2n (the quotient is then infinite-dimensional for these ideals).
    """
    n = system.n
    dims = []
    for lam in range(0, 2 * n + 1):
        dims.append(comb(n + lam - 1, lam) - ideal_dim(system, lam))
    if dims[-1] != 0:
        return None
    return sum(dims)


def _poly_vector(f: XPoly, basis_index: dict, scale_to_int: bool = True) -> list[int]:
    coeffs = [Fraction(0)] * len(basis_index)
    for m, c in f.terms.items():
        coeffs[basis_index[m]] += Fraction(c)
    denom = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [int(c * denom) for c in coeffs]


def membership_batch(system: BinomialSystem, lam: int, polys: list[XPoly]) -> list[bool]:
    """Whether each homogeneous degree-lam polynomial lies in I_lam."""
    rows, basis = span_rows(system, lam)
    index = {m: k for k, m in enumerate(basis)}
    vectors = []
    for f in polys:
        if f.mode != RATIONAL or (not f.is_zero() and (not f.is_homogeneous() or f.degree() != lam)):
            raise ValidationError(f"membership needs homogeneous degree-{lam} rational input")
        vectors.append(_poly_vector(f, index))

    def reduce_all(p: int) -> list[bool]:
        mat = np.array([[v % p for v in row] for row in rows], dtype=np.int64) \
            if rows else np.zeros((0, len(basis)), dtype=np.int64)
        a = mat.copy()
        pivots = []  # (row, col)
        r = 0
        for c in range(a.shape[1]):
            if r == a.shape[0]:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                a[[r, piv]] = a[[piv, r]]
            a[r] = a[r] * pow(int(a[r, c]), -1, p) % p
            rest = np.nonzero(a[r + 1:, c])[0]
            if rest.size:
                idx = rest + r + 1
                a[idx] = (a[idx] - a[idx, c][:, None] * a[r][None, :]) % p
            pivots.append((r, c))
            r += 1
        out = []
        for vec in vectors:
            v = np.array([x % p for x in vec], dtype=np.int64)
            for (pr, pc) in pivots:
                if v[pc]:
                    v = (v - v[pc] * a[pr]) % p
            out.append(not v.any())
        return out

    first = reduce_all(RANK_PRIMES[0])
    second = reduce_all(RANK_PRIMES[1])
    if first == second:
        return first
    logger.warning("membership disagreement between primes; exact fallback")
    frows = [[Fraction(v) for v in row] for row in rows]
    base_rank = frac_rank(frows)
    out = []
    for vec, f1, s1 in zip(vectors, first, second):
        if f1 == s1:
            out.append(f1)
        else:
            out.append(frac_rank(frows + [[Fraction(v) for v in vec]]) == base_rank)
    return out


def membership(f: XPoly, system: BinomialSystem, lam: "int | None" = None) -> bool:
    """True iff homogeneous f lies in the degree-deg(f) piece of the ideal."""
    if lam is None:
        lam = f.degree()
    return membership_batch(system, lam, [f])[0]


def sylvester_resultant_2(f: XPoly, g: XPoly):
    """Classical resultant of two binary quadratic forms (4x4 Sylvester det)."""
    if f.n != 2 or g.n != 2:
        raise ValidationError("sylvester_resultant_2 is for binary forms")
    f._check(g)

    def coeffs(h: XPoly):
        return [h.coefficient((2, 0)), h.coefficient((1, 1)), h.coefficient((0, 2))]

    a = coeffs(f)
    b = coeffs(g)
    zero = a[0] - a[0]
    m = [
        [a[0], a[1], a[2], zero],
        [zero, a[0], a[1], a[2]],
        [b[0], b[1], b[2], zero],
        [zero, b[0], b[1], b[2]],
    ]
    # Leibniz over S_4: fine for a 4x4 with ring entries
    total = None
    for perm, sign in _S4:
        term = m[0][perm[0]]
        for i in (1, 2, 3):
            term = term * m[i][perm[i]]
        term = term if sign > 0 else -term
        total = term if total is None else total + term
    return total


def _s4():
    import itertools

    out = []
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        out.append((perm, -1 if inversions % 2 else 1))
    return out


_S4 = _s4()


# --------------------------------------------------------------------------
# self test
# --------------------------------------------------------------------------

@dataclass
class SelfTestRow:
    name: str
    passed: bool
    detail: str = ""


def _random_system(n: int, rng: random.Random) -> BinomialSystem:
    import itertools

    from .systems import make_system

    pairs = list(itertools.combinations(range(1, n + 1), 2))
    return make_system(n, [rng.choice(pairs) for _ in range(n)])


def run_selftest(seed: int = 0, n_max: int = 5) -> list[SelfTestRow]:
    """Cross-check the factorization engine against the oracles."""
    from .det_factor import factor_determinant
    from .frames import cyclic_orders
    from .resultant import delta_chain, divides, radical, resultant

    rng = random.Random(seed)
    rows: list[SelfTestRow] = []

    for n in range(2, n_max + 1):
        system = _random_system(n, rng)
        mismatches = 0
        checked = 0
        for order in cyclic_orders(n):
            for lam in range(2, n + 2):
                matrix = build_c(system, lam, order)
                fp = factor_determinant(matrix)
                for trial in range(4):
                    ctx = ModularContext.random(n, rng.randrange(1 << 30),
                                                allow_zero=(trial == 3))
                    av, bv = ctx.residue_vectors(n)
                    checked += 1
                    if fp.eval_mod(av, bv, ctx.prime) != det_mod(matrix, ctx):
                        mismatches += 1
        rows.append(SelfTestRow(f"n={n} factor_determinant vs det_mod",
                                mismatches == 0, f"{checked} evaluations"))

        chain = delta_chain(system)
        ok = all(divides(radical(chain.delta(lam)), radical(chain.delta(lam + 1)))
                 for lam in range(2, n + 1))
        rows.append(SelfTestRow(f"n={n} radical chain divisibility", ok))

        res = resultant(system)
        rows.append(SelfTestRow(
            f"n={n} resultant degree law",
            res.total_degree() == n * 2 ** (n - 1),
            f"degree {res.total_degree()} vs {n * 2 ** (n - 1)}"))

    # n=2 closed form against the Sylvester oracle
    from .systems import make_system

    sys2 = make_system(2, [(1, 2), (1, 2)])
    res2 = resultant(sys2)
    syl = sylvester_resultant_2(sys2.form(1), sys2.form(2))
    rows.append(SelfTestRow("n=2 resultant equals Sylvester oracle",
                            res2.expand() == syl or (-1 * syl) == res2.expand()))

    # CI equivalence on random specializations, small n
    from .resultant import resultant_eval

    agree = True
    for _ in range(6):
        n = rng.randint(2, 3)
        system = _random_system(n, rng)
        values = [(Fraction(rng.randint(1, 5)), Fraction(rng.randint(-4, 4)))
                  for _ in range(n)]
        spec = system.specialize({f"a{i + 1}": values[i][0] for i in range(n)}
                                 | {f"b{i + 1}": values[i][1] for i in range(n)})
        nonzero = resultant_eval(spec) != 0
        if nonzero != (quotient_dim(spec) == 2 ** n):
            agree = False
    rows.append(SelfTestRow("CI equivalence (resultant vs quotient dimension)", agree))
    return rows
