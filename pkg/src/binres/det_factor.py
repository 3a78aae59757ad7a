"""Determinant factorization for matrices with at most two entries per row.

The determinant of such a matrix splits combinatorially:

  1. every column or row with a single nonzero entry forces that entry into
     each perfect matching — peel it into the monomial part (tracking the
     permutation sign at the end);
  2. after peeling to closure, every residual row AND column carries exactly
     two entries, so the residual decomposes into disjoint alternating cycles;
  3. each cycle admits exactly two matchings, contributing one binomial
     factor whose relative sign is the parity of the cyclic column rotation;
  4. a row or column running out of entries first means the determinant is 0.

Signs are never taken from a formula: both matchings of every cycle are built
explicitly and their parities computed against the frame order.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .coeff_matrix import CoeffMatrix, MatrixEntry
from .errors import (
    ModeMismatchError,
    NonSquareMatrixError,
    RowOccupancyError,
    ValidationError,
)
from .polynomials import Mono, ParamPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SparseMatrix:
    """Free-standing sparse matrix over the parameters a_1..a_n, b_1..b_n.

    Same entry conventions as CoeffMatrix; lets the engine factor matrices
    that are not coefficient matrices of a system (e.g. the binomial-type
    matrices P with two entries per row and column).
    """

    n: int
    nrows: int
    ncols: int
    entries: tuple[MatrixEntry, ...]
    mode: str = "symbolic"

    @classmethod
    def from_triples(cls, n: int, size: int, triples) -> "SparseMatrix":
        """triples: (row, col, kind, index) or (row, col, kind, index, sign)."""
        entries = tuple(MatrixEntry(*t) for t in triples)
        return cls(n, size, size, entries)


# --------------------------------------------------------------------------
# factored polynomials
# --------------------------------------------------------------------------

def _pm_str(m: Mono, n: int, alias: str = "b") -> str:
    parts = []
    for i, e in enumerate(m):
        if not e:
            continue
        name = f"a{i + 1}" if i < n else f"{alias}{i - n + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _pm_to_parampoly(m: Mono, n: int) -> ParamPoly:
    return ParamPoly(n, {m: 1})


def _pm_specialize(m: Mono, n: int, assignment) -> Fraction:
    return ParamPoly(n, {m: 1}).specialize(assignment)


def _pm_eval_mod(m: Mono, n: int, avals, bvals, p: int) -> int:
    v = 1
    for pos, e in enumerate(m):
        if e:
            base = avals[pos] if pos < n else bvals[pos - n]
            v = v * pow(base, e, p) % p
    return v


@dataclass(frozen=True)
class BinomialFactor:
    """Circuit factor a_part + sign * b_part over parameter monomials.

    Canonical form keeps the lexicographically larger monomial first (for
    circuits of a binomial system that is the pure-a side).
    """

    n: int
    a_part: Mono  # 2n exponents
    b_part: Mono
    sign: int

    def degree(self) -> int:
        return max(sum(self.a_part), sum(self.b_part))

    def as_parampoly(self) -> ParamPoly:
        return ParamPoly(self.n, {self.a_part: 1, self.b_part: self.sign})

    def __str__(self) -> str:
        op = "+" if self.sign > 0 else "-"
        return f"({_pm_str(self.a_part, self.n)} {op} {_pm_str(self.b_part, self.n)})"


def _canonical_factor(n: int, m1: Mono, m2: Mono, rel: int) -> tuple[BinomialFactor, int]:
    """Order the two matching monomials; returns (factor, extracted sign)."""
    if m1 >= m2:
        return BinomialFactor(n, m1, m2, rel), 1
    # m1 + rel*m2 == rel * (m2 + rel*m1)
    return BinomialFactor(n, m2, m1, rel), rel


class FactoredPoly:
    """sign * parameter monomial * product of binomial factors (or zero).

    The expansion equals the source determinant exactly; `factors` is a
    canonically sorted tuple of (BinomialFactor, multiplicity).
    """

    __slots__ = ("n", "sign", "monomial", "factors", "zero")

    def __init__(self, n: int, sign: int = 1, monomial: Mono | None = None,
                 factors: "Iterable[tuple[BinomialFactor, int]] | Mapping[BinomialFactor, int]" = (),
                 zero: bool = False):
        self.n = n
        self.zero = zero
        if isinstance(factors, Mapping):
            factors = factors.items()
        if zero:
            sign, monomial, factors = 1, (0,) * (2 * n), ()
        self.sign = sign
        self.monomial: Mono = tuple(monomial) if monomial is not None else (0,) * (2 * n)
        self.factors: tuple[tuple[BinomialFactor, int], ...] = tuple(
            sorted(((f, m) for f, m in factors if m),
                   key=lambda fm: (fm[0].a_part, fm[0].b_part, fm[0].sign),
                   reverse=True)
        )

    @classmethod
    def zero_poly(cls, n: int) -> "FactoredPoly":
        return cls(n, zero=True)

    @classmethod
    def one(cls, n: int) -> "FactoredPoly":
        return cls(n)

    def is_zero(self) -> bool:
        return self.zero

    def factor_multiplicities(self) -> dict[BinomialFactor, int]:
        return dict(self.factors)

    def total_degree(self) -> int:
        if self.zero:
            return 0
        return sum(self.monomial) + sum(m * f.degree() for f, m in self.factors)

    def expand(self) -> ParamPoly:
        """Multiply everything out (use on small factorizations only)."""
        if self.zero:
            return ParamPoly(self.n)
        out = ParamPoly.const(self.n, self.sign) * _pm_to_parampoly(self.monomial, self.n)
        for f, mult in self.factors:
            base = f.as_parampoly()
            for _ in range(mult):
                out = out * base
        return out

    def specialize(self, assignment) -> Fraction:
        if self.zero:
            return Fraction(0)
        v = Fraction(self.sign) * _pm_specialize(self.monomial, self.n, assignment)
        for f, mult in self.factors:
            fv = (_pm_specialize(f.a_part, self.n, assignment)
                  + f.sign * _pm_specialize(f.b_part, self.n, assignment))
            v *= fv ** mult
        return v

    def eval_mod(self, avals: list[int], bvals: list[int], p: int) -> int:
        if self.zero:
            return 0
        v = self.sign % p
        v = v * _pm_eval_mod(self.monomial, self.n, avals, bvals, p) % p
        for f, mult in self.factors:
            fv = (_pm_eval_mod(f.a_part, self.n, avals, bvals, p)
                  + f.sign * _pm_eval_mod(f.b_part, self.n, avals, bvals, p)) % p
            v = v * pow(fv, mult, p) % p
        return v

    def __eq__(self, other) -> bool:
        return (isinstance(other, FactoredPoly)
                and (self.n, self.sign, self.monomial, self.factors, self.zero)
                == (other.n, other.sign, other.monomial, other.factors, other.zero))

    def __hash__(self):
        return hash((self.n, self.sign, self.monomial, self.factors, self.zero))

    def __str__(self) -> str:
        return self.to_text()

    __repr__ = __str__

    def to_text(self, alias: str = "b") -> str:
        if self.zero:
            return "0"
        parts = []
        if any(self.monomial):
            parts.append(_pm_str(self.monomial, self.n, alias))
        for f, mult in self.factors:
            op = "+" if f.sign > 0 else "-"
            s = f"({_pm_str(f.a_part, self.n, alias)} {op} {_pm_str(f.b_part, self.n, alias)})"
            parts.append(s if mult == 1 else f"{s}^{mult}")
        if not parts:
            parts = ["1"]
        return ("-" if self.sign < 0 else "") + " * ".join(parts)

    def to_json_dict(self) -> dict:
        def split(mono: Mono) -> dict:
            return {"a": list(mono[: self.n]), "b": list(mono[self.n:])}

        return {
            "zero": self.zero,
            "sign": self.sign,
            "monomial": split(self.monomial),
            "factors": [
                {
                    "first": split(f.a_part),
                    "second": split(f.b_part),
                    "sign": f.sign,
                    "multiplicity": m,
                }
                for f, m in self.factors
            ],
        }


# --------------------------------------------------------------------------
# digraph decomposition
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Circuit:
    """An alternating cycle: rows/cols in traversal order with both matchings."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    match_a: tuple[MatrixEntry, ...]  # entry of row i in cols[i]
    match_b: tuple[MatrixEntry, ...]  # entry of row i in cols[i+1 mod r]

    @property
    def row_set(self) -> frozenset:
        return frozenset(self.rows)

    @property
    def col_set(self) -> frozenset:
        return frozenset(self.cols)

    @property
    def hops(self) -> tuple[MatrixEntry, ...]:
        """Entries in cyclic order: consecutive hops share a row, then a
        column, closing back to the first entry."""
        out = []
        for ea, eb in zip(self.match_a, self.match_b):
            out.extend((ea, eb))
        return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    zero: bool
    forced: tuple[MatrixEntry, ...]       # peeled entries, peel order
    circuits: tuple[Circuit, ...]
    chains: tuple[tuple[MatrixEntry, ...], ...]  # forced entries grouped


def _check_matrix(m: "CoeffMatrix | SparseMatrix") -> None:
    if m.mode != "symbolic":
        raise ModeMismatchError("factor_determinant works on symbolic matrices; "
                                "specialize the factored result instead")
    if m.nrows != m.ncols:
        raise NonSquareMatrixError(f"matrix is {m.nrows}x{m.ncols}")


def decompose(m: "CoeffMatrix | SparseMatrix") -> Decomposition:
    """Peel forced entries and extract the residual alternating cycles."""
    _check_matrix(m)
    size = m.nrows
    row_entries: list[list[MatrixEntry]] = [[] for _ in range(size)]
    col_entries: list[list[MatrixEntry]] = [[] for _ in range(size)]
    for e in m.entries:
        row_entries[e.row].append(e)
        col_entries[e.col].append(e)
    for r in range(size):
        if len(row_entries[r]) > 2:
            raise RowOccupancyError(f"row {r} has {len(row_entries[r])} entries")
        if len({e.col for e in row_entries[r]}) != len(row_entries[r]):
            raise ValidationError("duplicate cell entries")

    alive_row = [True] * size
    alive_col = [True] * size
    rcount = [len(row_entries[r]) for r in range(size)]
    ccount = [len(col_entries[c]) for c in range(size)]
    dead: set[MatrixEntry] = set()
    forced: list[MatrixEntry] = []
    stack = [("row", r) for r in range(size) if rcount[r] == 1]
    stack += [("col", c) for c in range(size) if ccount[c] == 1]
    zero = any(v == 0 for v in rcount) or any(v == 0 for v in ccount)

    def retire(e: MatrixEntry) -> None:
        nonlocal zero
        if e in dead:
            return
        dead.add(e)
        rcount[e.row] -= 1
        ccount[e.col] -= 1
        if alive_row[e.row]:
            if rcount[e.row] == 0:
                zero = True
            elif rcount[e.row] == 1:
                stack.append(("row", e.row))
        if alive_col[e.col]:
            if ccount[e.col] == 0:
                zero = True
            elif ccount[e.col] == 1:
                stack.append(("col", e.col))

    while stack and not zero:
        axis, i = stack.pop()
        if axis == "row":
            if not alive_row[i] or rcount[i] != 1:
                continue
            e = next(x for x in row_entries[i] if x not in dead)
        else:
            if not alive_col[i] or ccount[i] != 1:
                continue
            e = next(x for x in col_entries[i] if x not in dead)
        forced.append(e)
        alive_row[e.row] = False
        alive_col[e.col] = False
        retire(e)
        for other in row_entries[e.row]:
            retire(other)
        for other in col_entries[e.col]:
            retire(other)

    if zero:
        return Decomposition(True, tuple(forced), (), ())

    live_rows = [r for r in range(size) if alive_row[r]]
    # peeling closure: a surviving row and column each hold exactly two entries
    live_row_entries = {r: [e for e in row_entries[r] if e not in dead] for r in live_rows}
    live_col_entries = {c: [e for e in col_entries[c] if e not in dead]
                        for c in range(size) if alive_col[c]}

    circuits = []
    seen_rows: set[int] = set()
    for r0 in live_rows:
        if r0 in seen_rows:
            continue
        rows, cols, match_a, match_b = [], [], [], []
        r, entry_in = r0, live_row_entries[r0][0]
        while r not in seen_rows:
            seen_rows.add(r)
            rows.append(r)
            ea = entry_in
            eb = next(x for x in live_row_entries[r] if x is not ea)
            cols.append(ea.col)
            match_a.append(ea)
            match_b.append(eb)
            entry_in = next(x for x in live_col_entries[eb.col] if x is not eb)
            r = entry_in.row
        circuits.append(Circuit(tuple(rows), tuple(cols), tuple(match_a), tuple(match_b)))

    # group forced entries into maximal chains: follow row -> dropped b-column
    by_col = {e.col: e for e in forced}
    succ = {}
    for e in forced:
        other = next((x for x in row_entries[e.row] if x is not e), None)
        if other is not None and other.col in by_col and by_col[other.col] is not e:
            succ[e] = by_col[other.col]
    has_pred = set(succ.values())
    chains = []
    for e in forced:
        if e in has_pred:
            continue
        chain = [e]
        while chain[-1] in succ:
            chain.append(succ[chain[-1]])
        chains.append(tuple(chain))
    return Decomposition(False, tuple(forced), tuple(circuits), tuple(chains))


def _parity(perm: list[int]) -> int:
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


def _matching_parity(match: dict[int, int]) -> int:
    """Parity of a full row->column matching relative to sorted positions."""
    rows = sorted(match)
    cols = [match[r] for r in rows]
    rank = {c: i for i, c in enumerate(sorted(cols))}
    return _parity([rank[c] for c in cols])


def factor_determinant(m: "CoeffMatrix | SparseMatrix") -> FactoredPoly:
    """Exact factored determinant of a symbolic coefficient matrix."""
    n = m.n
    if m.nrows == 0:
        return FactoredPoly.one(n)
    dec = decompose(m)
    if dec.zero:
        return FactoredPoly.zero_poly(n)

    sign = 1
    monomial = [0] * (2 * n)
    for e in dec.forced:
        sign *= e.sign
        pos = (0 if e.kind == "a" else n) + e.index - 1
        monomial[pos] += 1

    reference = {e.row: e.col for e in dec.forced}
    for c in dec.circuits:
        for e in c.match_a:
            reference[e.row] = e.col
    ref_parity = _matching_parity(reference)
    sign *= ref_parity

    factors: dict[BinomialFactor, int] = {}
    for circuit in dec.circuits:
        mono_a = [0] * (2 * n)
        sign_a = 1
        for e in circuit.match_a:
            sign_a *= e.sign
            mono_a[(0 if e.kind == "a" else n) + e.index - 1] += 1
        mono_b = [0] * (2 * n)
        sign_b = 1
        for e in circuit.match_b:
            sign_b *= e.sign
            mono_b[(0 if e.kind == "a" else n) + e.index - 1] += 1
        flipped = dict(reference)
        for e in circuit.match_b:
            flipped[e.row] = e.col
        rel = ref_parity * _matching_parity(flipped)
        # det contribution: sign_a*mono_a + rel*sign_b*mono_b
        #                 = sign_a * (mono_a + rel*sign_a*sign_b*mono_b)
        sign *= sign_a
        factor, extracted = _canonical_factor(
            n, tuple(mono_a), tuple(mono_b), rel * sign_a * sign_b
        )
        sign *= extracted
        if any(e > 1 for e in factor.a_part) or any(e > 1 for e in factor.b_part):
            logger.debug("circuit with repeated generator indices: %s", factor)
        factors[factor] = factors.get(factor, 0) + 1

    return FactoredPoly(n, sign, tuple(monomial), factors)


def circuits_of(m: "CoeffMatrix | SparseMatrix") -> list[Circuit]:
    """The residual cycles of the matrix digraph, one per binomial factor."""
    return list(decompose(m).circuits)
