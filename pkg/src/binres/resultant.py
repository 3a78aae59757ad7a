"""Delta chains and the resultant of a binomial system.

Delta_lambda is the factored determinant of C(lambda).  The resultant is the
GCD of the n determinants Delta_{n+1}^sigma taken over the n cyclic index
orders; on canonical factorizations the GCD is the atom-wise multiset
intersection together with the entry-wise minimum on the monomial part.  The
result is normalized so the pure-a term has coefficient +1.
"""
from __future__ import annotations

import os
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache

from .coeff_matrix import build_c
from .det_factor import BinomialFactor, FactoredPoly, factor_determinant
from .errors import DegenerateSystemError, InternalCheckError, ValidationError
from .frames import cyclic_orders
from .polynomials import SYMBOLIC, normalize_assignment
from .systems import BinomialSystem

from dataclasses import dataclass

_ORACLE_PRIME = (1 << 62) - 57  # shared with the verification oracle


@dataclass(frozen=True)
class DeltaChain:
    order: tuple[int, ...]
    deltas: tuple[FactoredPoly, ...]  # Delta_2 .. Delta_{n+1}

    def delta(self, lam: int) -> FactoredPoly:
        return self.deltas[lam - 2]


def _require_symbolic(system: BinomialSystem) -> None:
    if system.mode != SYMBOLIC:
        raise ValidationError("this operation needs a symbolic system; "
                              "use resultant_eval for specialized ones")


def delta(system: BinomialSystem, lam: int, order=None) -> FactoredPoly:
    """Factored Delta_lambda = det C(lambda) for one index order."""
    _require_symbolic(system)
    return factor_determinant(build_c(system, lam, order))


def delta_chain(system: BinomialSystem, order=None) -> DeltaChain:
    """The chain Delta_2, ..., Delta_{n+1}; its invariants are re-checked."""
    _require_symbolic(system)
    order = tuple(order) if order is not None else system.order
    n = system.n
    deltas = tuple(delta(system, lam, order) for lam in range(2, n + 2))
    if deltas[0] != FactoredPoly(n, 1, (1,) * n + (0,) * n, {}):
        raise InternalCheckError("Delta_2 is not a_1 * ... * a_n")
    for lam in range(2, n + 1):
        if not divides(radical(deltas[lam - 2]), radical(deltas[lam - 1])):
            raise InternalCheckError(f"sqrt(Delta_{lam}) does not divide sqrt(Delta_{lam + 1})")
    return DeltaChain(order, deltas)


def radical(f: FactoredPoly) -> FactoredPoly:
    """Clamp all exponents and multiplicities to 1; sign normalized to +1."""
    if f.is_zero():
        return f
    mono = tuple(min(e, 1) for e in f.monomial)
    factors = {fac: 1 for fac, _ in f.factors}
    return FactoredPoly(f.n, 1, mono, factors)


def _solvable_parameter(factor: BinomialFactor):
    """A position with exponent 1 in either part, for variety sampling."""
    for part in (factor.a_part, factor.b_part):
        for pos, e in enumerate(part):
            if e == 1:
                return pos, part
    return None


def sample_on_factor_variety(f: FactoredPoly, factor: BinomialFactor, rng: random.Random,
                             p: int = _ORACLE_PRIME) -> tuple[list[int], list[int]]:
    """Random mod-p point where the given factor (hence f) vanishes.

    Solves for a parameter occurring with exponent 1; all other parameters
    are sampled nonzero.
    """
    n = f.n
    slot = _solvable_parameter(factor)
    if slot is None:
        raise ValidationError("no exponent-1 parameter to solve for in factor")
    pos, part = slot
    other = factor.b_part if part is factor.a_part else factor.a_part
    for _ in range(64):
        avals = [rng.randrange(1, p) for _ in range(n)]
        bvals = [rng.randrange(1, p) for _ in range(n)]
        vals = avals + bvals

        def eval_part(mono, skip=None):
            v = 1
            for q, e in enumerate(mono):
                if q == skip or not e:
                    continue
                v = v * pow(vals[q], e, p) % p
            return v

        # rest*x + s*other == 0 (or other + s*rest*x == 0); 1/s == s for s = +-1,
        # so both solve to x = -s * other / rest.
        rest = eval_part(part, skip=pos)
        if rest % p == 0:
            continue
        x = (-factor.sign * eval_part(other)) * pow(rest, -1, p) % p
        if x == 0:
            continue
        vals[pos] = x
        return vals[:n], vals[n:]
    raise DegenerateSystemError("could not sample a point on the factor variety")


def divides(f: FactoredPoly, g: FactoredPoly, trials: int = 40, seed: int = 0) -> bool:
    """Whether f divides g, by atom-wise multiplicity comparison.

    On an atom mismatch, falls back to modular evaluation on the missing
    atom's variety; only failures are certain there.
    """
    if g.is_zero():
        return True
    if f.is_zero():
        return False
    if any(ef > eg for ef, eg in zip(f.monomial, g.monomial)):
        return False
    gfac = g.factor_multiplicities()
    missing = [(fac, mult) for fac, mult in f.factors if gfac.get(fac, 0) < mult]
    if not missing:
        return True
    rng = random.Random(seed)
    p = _ORACLE_PRIME
    for fac, _ in missing:
        for _ in range(trials):
            avals, bvals = sample_on_factor_variety(f, fac, rng, p)
            if g.eval_mod(avals, bvals, p) != 0:
                return False
    return True


def factored_gcd(polys: list[FactoredPoly]) -> FactoredPoly:
    """Atom-wise GCD of canonical factorizations, sign normalized to +1."""
    if not polys:
        raise ValidationError("gcd of nothing")
    nonzero = [f for f in polys if not f.is_zero()]  # gcd(0, g) = g
    if not nonzero:
        return FactoredPoly.zero_poly(polys[0].n)
    mono = list(nonzero[0].monomial)
    factors = nonzero[0].factor_multiplicities()
    for f in nonzero[1:]:
        mono = [min(a, b) for a, b in zip(mono, f.monomial)]
        other = f.factor_multiplicities()
        factors = {fac: min(m, other[fac]) for fac, m in factors.items() if fac in other}
    return FactoredPoly(nonzero[0].n, 1, tuple(mono), factors)


def _thread_count() -> int:
    raw = os.environ.get("BINRES_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def resultant(system: BinomialSystem) -> FactoredPoly:
    """GCD of Delta_{n+1} over the n cyclic index orders, pure-a term +1."""
    _require_symbolic(system)
    n = system.n
    lam = n + 1
    orders = cyclic_orders(n)
    threads = _thread_count()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            deltas = list(pool.map(lambda o: delta(system, lam, o), orders))
    else:
        deltas = [delta(system, lam, o) for o in orders]
    for o, d in zip(orders, deltas):
        if d.is_zero():
            raise DegenerateSystemError(f"Delta_{lam} vanishes for order {o}")
    return factored_gcd(deltas)


@lru_cache(maxsize=256)
def _cached_resultant(symbolic_system: BinomialSystem) -> FactoredPoly:
    return resultant(symbolic_system)


def resultant_eval(system: BinomialSystem) -> Fraction:
    """Resultant of the symbolic twin, evaluated at this specialization."""
    if system.mode == SYMBOLIC:
        raise ValidationError("resultant_eval needs a specialized system")
    res = _cached_resultant(system.symbolic_twin())
    return res.specialize(normalize_assignment(system.assignment()))
