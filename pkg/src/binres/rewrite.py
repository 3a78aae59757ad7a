"""Square-free basis rewriting for specialized complete intersections.

Every generator row reads a_j*(m*x_j^2) + b_j*(m*m_j), so modulo the ideal a
non-square-free monomial w = m*x_j^2 rewrites to -(b_j/a_j) * (m*m_j): the
rewrite graph is functional (one successor per monomial).  Following it,
every monomial of degree 2..n+1 collapses to a rational multiple of a single
square-free monomial, or to 0 when it feeds a cycle whose loop product is not
1.  A loop product of exactly 1 (or a vanishing a_j) is precisely a singular
C(lambda); that raises SingularCoeffMatrixError.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .errors import DegreeRangeError, SingularCoeffMatrixError, ValidationError
from .polynomials import RATIONAL, Mono, XPoly, is_squarefree, mono_mul, monomials
from .resultant import delta_chain
from .systems import BinomialSystem


@dataclass
class RewriteTable:
    """Square-free tails: w - tails[w] lies in the ideal's degree-lam piece."""

    system: BinomialSystem
    lam: int
    tails: dict[Mono, XPoly]

    def tail(self, w: Mono) -> XPoly:
        return self.tails[w]


def _pairing_index(w: Mono, order: tuple[int, ...]) -> int:
    """Smallest order-index j with exponent(w, x_j) >= 2 (the frame pairing)."""
    for j in order:
        if w[j - 1] >= 2:
            return j
    raise ValueError(f"{w} is square-free")


def _resolve_all(system: BinomialSystem, lam: int) -> dict[Mono, tuple[Fraction, "Mono | None"]]:
    """Map every degree-lam monomial to (coefficient, square-free target).

    target None means the monomial is congruent to 0.
    """
    n = system.n
    order = system.order
    memo: dict[Mono, tuple[Fraction, Mono | None]] = {}

    def step(w: Mono) -> tuple[Fraction, Mono]:
        j = _pairing_index(w, order)
        gen = system.generator(j)
        if gen.a == 0:
            raise SingularCoeffMatrixError(lam)
        m = tuple(e - (2 if t == j - 1 else 0) for t, e in enumerate(w))
        return -gen.b / gen.a, mono_mul(m, gen.cofactor_mono(n))

    for start in monomials(n, lam):
        if start in memo:
            continue
        path: list[tuple[Mono, Fraction]] = []
        on_path: dict[Mono, int] = {}
        cur = start
        while True:
            if cur in memo:
                base = memo[cur]
                break
            if is_squarefree(cur):
                base = (Fraction(1), cur)
                memo[cur] = base
                break
            if cur in on_path:
                loop = path[on_path[cur]:]
                gamma = Fraction(1)
                for _, c in loop:
                    gamma *= c
                if gamma == 1:
                    raise SingularCoeffMatrixError(lam)
                for node, _ in loop:
                    memo[node] = (Fraction(0), None)
                path = path[: on_path[cur]]
                base = (Fraction(0), None)
                break
            coeff, nxt = step(cur)
            if coeff == 0:
                base = (Fraction(0), None)
                memo[cur] = base
                break
            on_path[cur] = len(path)
            path.append((cur, coeff))
            cur = nxt
        acc, target = base
        if target is None or acc == 0:
            for node, _ in reversed(path):
                memo[node] = (Fraction(0), None)
        else:
            for node, c in reversed(path):
                acc = c * acc
                memo[node] = (acc, target)
    return memo


def rewrite_table(system: BinomialSystem, lam: int) -> RewriteTable:
    """Tails for every non-square-free monomial of degree lam (2..n+1)."""
    if system.mode != RATIONAL:
        raise ValidationError("rewrite tables need a specialized system")
    if not 2 <= lam <= system.n + 1:
        raise DegreeRangeError(f"rewriting covers degrees 2..{system.n + 1}, got {lam}")
    resolved = _resolve_all(system, lam)
    tails = {}
    for w, (coeff, target) in resolved.items():
        if is_squarefree(w):
            continue
        terms = {target: coeff} if target is not None and coeff != 0 else {}
        tails[w] = XPoly(system.n, RATIONAL, terms)
    return RewriteTable(system, lam, tails)


@lru_cache(maxsize=128)
def _cached_table(system: BinomialSystem, lam: int) -> RewriteTable:
    return rewrite_table(system, lam)


def reduce(system: BinomialSystem, f: XPoly) -> XPoly:
    """Rewrite homogeneous f (degree <= n+1) as a square-free combination.

    The result r satisfies f - r in I; square-free inputs are fixed points.
    """
    if f.mode != RATIONAL:
        raise ValidationError("reduce needs rational-mode input")
    if f.is_zero():
        return f
    if not f.is_homogeneous():
        raise DegreeRangeError("reduce needs homogeneous input")
    lam = f.degree()
    if lam > system.n + 1:
        raise DegreeRangeError(f"degree {lam} beyond the rewriting range 2..{system.n + 1}")
    if lam < 2:
        return f
    table = _cached_table(system, lam)
    out = XPoly(system.n, RATIONAL)
    for m, c in f.terms.items():
        if is_squarefree(m):
            out = out + XPoly(system.n, RATIONAL, {m: c})
        else:
            out = out + table.tail(m).scale(c)
    return out


@lru_cache(maxsize=128)
def _symbolic_chain(symbolic_twin: BinomialSystem):
    return delta_chain(symbolic_twin)


def hilbert_function(system: BinomialSystem) -> tuple[int, ...]:
    """Hilbert function of R/I for a specialized system.

    When every C(lambda), lambda = 2..n+1, stays invertible the square-free
    monomials are a basis and the function is the binomial row (degrees 0..n).
    Otherwise falls back to oracle rank computations over degrees 0..2n.
    """
    if system.mode != RATIONAL:
        raise ValidationError("hilbert_function needs a specialized system")
    n = system.n
    chain = _symbolic_chain(system.symbolic_twin())
    assignment = system.assignment()
    if all(chain.delta(lam).specialize(assignment) != 0 for lam in range(2, n + 2)):
        return tuple(comb(n, k) for k in range(n + 1))
    from .oracle import ideal_dim

    return tuple(comb(n + lam - 1, lam) - ideal_dim(system, lam)
                 for lam in range(0, 2 * n + 1))
