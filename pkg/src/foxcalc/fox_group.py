"""Fox partial derivatives on the group ring of a free product, and the
membership criteria built on them.

Conventions: derivatives are right-sided, D(uv) = D(u) v + eps(u) D(v), with
D_j(g_j) = 1 for a free letter and D_i(a) = a - 1 for every nontrivial
element a of the i-th cyclic factor.  The fundamental identity reads
u - eps(u) = sum_i D_i(u) + sum_j (g_j - 1) D_j(u).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

from .group_ring import QuotientOracle, RingElt, reduce_mod
from .magnus import embed_ring, gamma_weight, ideal_weight
from .words import (
    Alphabet,
    FactorLetter,
    FreeLetter,
    Letter,
    Word,
    commutator,
    identity,
    invert,
    multiply,
    reduce,
    shortlex_words,
    word_length,
)

# A differentiation index: ("free", j) or ("factor", i).
FoxIndex = tuple[str, int]


def free_index(j: int) -> FoxIndex:
    return ("free", j)


def factor_index(i: int) -> FoxIndex:
    return ("factor", i)


def all_indices(alphabet: Alphabet) -> list[FoxIndex]:
    return [("factor", i) for i in range(1, alphabet.n_factors + 1)] + [
        ("free", j) for j in range(1, alphabet.free_rank + 1)
    ]


def _letter_derivative(letter: Letter, k: FoxIndex, alphabet: Alphabet) -> RingElt:
    kind, idx = k
    if isinstance(letter, FactorLetter):
        if kind != "factor" or idx != letter.index:
            return RingElt.zero(alphabet)
        # every nontrivial factor element a has D_i(a) = a - 1
        w = Word(alphabet, (letter,))
        return RingElt(alphabet, {w: 1, identity(alphabet): -1})
    if kind != "free" or idx != letter.index:
        return RingElt.zero(alphabet)
    g = FreeLetter(letter.index, 1)
    e = letter.exp
    if e > 0:
        # D(g^e) = 1 + g + ... + g^(e-1)
        terms = {reduce((g,) * t, alphabet): 1 for t in range(e)}
    else:
        # D(g^e) = -(g^-1 + ... + g^e)
        terms = {
            reduce((FreeLetter(letter.index, -1),) * t, alphabet): -1
            for t in range(1, -e + 1)
        }
    return RingElt(alphabet, terms)


def fox_derivative(u: Union[Word, RingElt], k: FoxIndex) -> RingElt:
    """D_k of a word (or, linearly extended, of a ring element)."""
    if isinstance(u, RingElt):
        out = RingElt.zero(u.alphabet)
        for w, c in u.terms.items():
            out = out + fox_derivative(w, k).scale(c)
        return out
    alphabet = u.alphabet
    out = RingElt.zero(alphabet)
    # D(l_1 ... l_r) = sum_t D(l_t) * (l_{t+1} ... l_r)
    letters = u.letters
    for t, letter in enumerate(letters):
        tail = reduce(letters[t + 1 :], alphabet)
        out = out + _letter_derivative(letter, k, alphabet) * tail
    return out


@dataclass
class FundamentalDecomposition:
    constant: int
    parts: dict[FoxIndex, RingElt]

    def reassemble(self, alphabet: Alphabet) -> RingElt:
        out = RingElt.one(alphabet).scale(self.constant)
        for k, part in self.parts.items():
            kind, idx = k
            if kind == "factor":
                out = out + part
            else:
                g = Word(alphabet, (FreeLetter(idx, 1),))
                out = out + (RingElt.from_word(g) - RingElt.one(alphabet)) * part
        return out


def fundamental_decomposition(a: RingElt) -> FundamentalDecomposition:
    """Split a - eps(a) along the fundamental identity."""
    parts = {k: fox_derivative(a, k) for k in all_indices(a.alphabet)}
    return FundamentalDecomposition(a.augmentation(), parts)


def subgroup_fox(base: Sequence[Word], expr: Word) -> dict:
    """Derivatives with respect to a base of subgroup generators.

    ``expr`` is a word in a free alphabet with one letter per base element;
    returns the substituted word f, the formal partials of expr, and whether
    the chain rule D_j(f) = sum_k partial_k(expr)|_base * D_j(h_k) holds.
    """
    if not base:
        raise ValueError("empty base")
    alphabet = base[0].alphabet
    if any(h.alphabet != alphabet for h in base):
        raise ValueError("alphabet mismatch in base")
    symbols = expr.alphabet
    if symbols.n_factors or symbols.free_rank != len(base):
        raise ValueError("expr must live in a free alphabet of rank len(base)")
    f = identity(alphabet)
    for letter in expr.letters:
        f = multiply(f, base[letter.index - 1] ** letter.exp)
    partials = {k: fox_derivative(expr, free_index(k)) for k in range(1, len(base) + 1)}
    checks = {}
    # with the right-sided derivation law the base derivative multiplies
    # from the left: D_j(f) = sum_k D_j(h_k) * partial_k(expr)|_base
    for k_idx in all_indices(alphabet):
        lhs = fox_derivative(f, k_idx)
        rhs = RingElt.zero(alphabet)
        for k in range(1, len(base) + 1):
            rhs = rhs + fox_derivative(base[k - 1], k_idx) * substitute_ring(
                partials[k], base
            )
        checks[k_idx] = lhs == rhs
    return {"f": f, "partials": partials, "chain_check": all(checks.values())}


def substitute_ring(a: RingElt, base: Sequence[Word]) -> RingElt:
    """Substitute base words for the free symbols of a ring element."""
    alphabet = base[0].alphabet
    out = RingElt.zero(alphabet)
    for w, c in a.terms.items():
        img = identity(alphabet)
        for letter in w.letters:
            img = multiply(img, base[letter.index - 1] ** letter.exp)
        out = out + RingElt.from_word(img, c)
    return out


@dataclass
class CriterionReport:
    holds: bool
    residues: dict = field(default_factory=dict)
    witness: Optional[Word] = None
    witness_member: Optional[bool] = None
    status: str = "decided"


def schumann_check(v: Word, q: QuotientOracle) -> CriterionReport:
    """All Fox derivatives of v vanish modulo N; for N meeting the cyclic
    factors trivially this characterises v in [N, N]."""
    if not q.contains(v):
        raise ValueError("v must lie in N")
    residues = {}
    holds = True
    for k in all_indices(v.alphabet):
        r = reduce_mod(fox_derivative(v, k), q)
        residues[k] = r
        if r:
            holds = False
    return CriterionReport(holds, residues)


def retraction(u: Word, keep: frozenset[FoxIndex]) -> Word:
    """Kill every letter whose index is not kept."""
    letters = [
        l
        for l in u.letters
        if (("free", l.index) if isinstance(l, FreeLetter) else ("factor", l.index))
        in keep
    ]
    return reduce(letters, u.alphabet)


def _in_sub(u: Word, keep: frozenset[FoxIndex]) -> bool:
    return retraction(u, keep) == u


def theorem1_check(
    v: Word,
    K: frozenset[FoxIndex],
    q: QuotientOracle,
    bound: int = 8,
) -> CriterionReport:
    """Two-sided test of: D_k(v) = 0 mod N for all k not in K  iff  there is
    vhat in F_K with v vhat^-1 in (F_K cap N)^F [N, N].

    Needs a finite-index oracle; the membership side is certified through
    the integer lattice of N made abelian (free alphabets only).
    """
    if not q.finite_index:
        raise ValueError("theorem1_check needs a finite-index oracle")
    alphabet = v.alphabet
    K = frozenset(K)
    residues = {}
    holds = True
    for k in all_indices(alphabet):
        if k in K:
            continue
        r = reduce_mod(fox_derivative(v, k), q)
        residues[k] = r
        if r:
            holds = False
    report = CriterionReport(holds, residues)
    # witness: try the retraction first, then bounded shortlex search
    vhat = retraction(v, K)
    if not q.contains(multiply(v, invert(vhat))):
        vhat = None
        for cand in shortlex_words(alphabet, bound):
            if _in_sub(cand, K) and q.contains(multiply(v, invert(cand))):
                vhat = cand
                break
    if vhat is None:
        report.status = "inconclusive-witness"
        return report
    report.witness = vhat
    from .transversal import Transversal, lattice_membership

    t = Transversal(q)
    report.witness_member = lattice_membership(t, multiply(v, invert(vhat)), K)
    return report


@dataclass
class GammaCriterionReport:
    holds: bool
    vbar: Word
    derivative_ok: dict
    witness_weight_ok: Optional[bool] = None


def subgroup_gamma_criterion(
    v: Word, K: frozenset[FoxIndex], n: int, cutoff: int
) -> GammaCriterionReport:
    """For free F: v lies in the span of F_K and gamma_{n+1}-deep elements
    iff D_k(v) has ideal weight >= n for k outside K and D_k(v) is congruent
    to an element of Z(F_K) mod the n-th power of the augmentation ideal for
    k in K.  When it holds, vbar = retraction of v satisfies
    v vbar^-1 in gamma_{n+1}."""
    alphabet = v.alphabet
    if alphabet.n_factors:
        raise ValueError("gamma criterion requires a free alphabet")
    if cutoff < n + 1:
        raise ValueError("cutoff must be at least n+1")
    K = frozenset(K)
    keep = {j for kind, j in K if kind == "free"}
    derivative_ok = {}
    holds = True
    for k in all_indices(alphabet):
        d = fox_derivative(v, k)
        series = embed_ring(d, cutoff)
        if k in K:
            # congruent to Z(F_K) mod X^n: low-degree monomials must avoid
            # the killed letters
            ok = all(
                len(m) >= n or all(j in keep for j in m) for m in series.terms
            )
        else:
            ok = all(len(m) >= n for m in series.terms)
        derivative_ok[k] = ok
        holds = holds and ok
    vbar = retraction(v, K)
    report = GammaCriterionReport(holds, vbar, derivative_ok)
    if holds:
        w = gamma_weight(multiply(v, invert(vbar)), cutoff)
        report.witness_weight_ok = w is None or w >= n + 1
    return report


def escalate_witness(v: Word, x: Word) -> Word:
    """[v, x]: commutation with a fresh generator raises both the gamma
    weight of the witness and the ideal weight of its derivatives by one."""
    return commutator(v, x)
