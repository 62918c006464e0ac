"""Free Lie algebra over Q on y_1..y_rank, in the Lyndon word basis.

A Lyndon word is strictly smaller than all of its proper cyclic rotations;
the standard bracketing of w = uv (v the longest proper Lyndon suffix) is
[b(u), b(v)].  Expansions of these bracketings into the free associative
algebra are triangular: the lexicographically least monomial of b(w) is w,
with coefficient 1, which drives the projection back to the Lyndon basis.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence, Union

from .linalg import (
    Row,
    in_span,
    intersect_rowspaces,
    reduce_vector,
    rref,
)


@lru_cache(maxsize=None)
def lyndon_words(rank: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """All Lyndon words of the given length over letters 1..rank, lex order
    (Duval's generation)."""
    if rank < 1 or degree < 1:
        return ()
    out = []
    w = [1]
    while w:
        if len(w) == degree:
            out.append(tuple(w))
        # extend periodically to the target length, then increment
        w = (w * (degree // len(w) + 1))[:degree]
        while w and w[-1] == rank:
            w.pop()
        if w:
            w[-1] += 1
    return tuple(sorted(out))


def witt_dimension(rank: int, degree: int) -> int:
    """Dimension of the degree-d component: (1/d) sum_{e|d} mu(e) r^{d/e}."""
    total = 0
    for e in range(1, degree + 1):
        if degree % e == 0:
            total += _mobius(e) * rank ** (degree // e)
    return total // degree


def _mobius(n: int) -> int:
    if n == 1:
        return 1
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    if n > 1:
        out = -out
    return out


@lru_cache(maxsize=None)
def standard_bracketing(word: tuple[int, ...]):
    """Nested-pair form of the standard bracketing of a Lyndon word."""
    if len(word) == 1:
        return word[0]
    # longest proper suffix that is Lyndon
    for k in range(1, len(word)):
        if _is_lyndon(word[k:]):
            return (standard_bracketing(word[:k]), standard_bracketing(word[k:]))
    raise ValueError(f"not a Lyndon word: {word}")


def _is_lyndon(word: tuple[int, ...]) -> bool:
    n = len(word)
    if n == 0:
        return False
    for k in range(1, n):
        if word >= word[k:] + word[:k]:
            return False
    return True


class LieElt:
    """Q-linear combination of Lyndon basis elements, graded by word length."""

    __slots__ = ("rank", "coords")

    def __init__(self, rank: int, coords: Mapping[tuple[int, ...], Fraction] = ()):
        self.rank = rank
        self.coords: dict[tuple[int, ...], Fraction] = {}
        for w, c in dict(coords).items():
            c = Fraction(c)
            if not c:
                continue
            if not _is_lyndon(w) or any(not 1 <= x <= rank for x in w):
                raise ValueError(f"not a Lyndon word over 1..{rank}: {w}")
            self.coords[w] = self.coords.get(w, Fraction(0)) + c
            if not self.coords[w]:
                del self.coords[w]

    @classmethod
    def zero(cls, rank: int) -> "LieElt":
        return cls(rank)

    @classmethod
    def gen(cls, rank: int, j: int) -> "LieElt":
        return cls(rank, {(j,): Fraction(1)})

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieElt)
            and self.rank == other.rank
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((self.rank, frozenset(self.coords.items())))

    def __add__(self, other: "LieElt") -> "LieElt":
        if self.rank != other.rank:
            raise ValueError("rank mismatch")
        out = dict(self.coords)
        for w, c in other.coords.items():
            out[w] = out.get(w, Fraction(0)) + c
        return LieElt(self.rank, out)

    def __neg__(self) -> "LieElt":
        return LieElt(self.rank, {w: -c for w, c in self.coords.items()})

    def __sub__(self, other: "LieElt") -> "LieElt":
        return self + (-other)

    def scale(self, k) -> "LieElt":
        k = Fraction(k)
        return LieElt(self.rank, {w: k * c for w, c in self.coords.items()})

    def degrees(self) -> list[int]:
        return sorted({len(w) for w in self.coords})

    def homogeneous(self, d: int) -> "LieElt":
        return LieElt(self.rank, {w: c for w, c in self.coords.items() if len(w) == d})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def max_degree(self) -> int:
        return max((len(w) for w in self.coords), default=0)

    def __str__(self) -> str:
        return format_lie(self)

    def __repr__(self) -> str:
        return f"LieElt({format_lie(self)!r})"


class LieProjectionError(ValueError):
    """Raised when an associative polynomial is not a Lie element; carries
    the non-Lie residual."""

    def __init__(self, residual):
        super().__init__(f"not a Lie element; residual {residual}")
        self.residual = residual


def expand_to_assoc(a: LieElt):
    """Expansion in the free associative algebra (an AssocPoly)."""
    from .assoc_env import AssocPoly

    terms: dict[tuple[int, ...], Fraction] = {}
    for w, c in a.coords.items():
        for m, k in _expand_word(w).items():
            terms[m] = terms.get(m, Fraction(0)) + c * k
    return AssocPoly(a.rank, terms)


@lru_cache(maxsize=None)
def _expand_word(w: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    return _expand_tree(standard_bracketing(w))


def _expand_tree(tree) -> dict[tuple[int, ...], int]:
    if isinstance(tree, int):
        return {(tree,): 1}
    left = _expand_tree(tree[0])
    right = _expand_tree(tree[1])
    out: dict[tuple[int, ...], int] = {}
    for m1, c1 in left.items():
        for m2, c2 in right.items():
            for m, s in ((m1 + m2, 1), (m2 + m1, -1)):
                out[m] = out.get(m, 0) + s * c1 * c2
                if not out[m]:
                    del out[m]
    return out


def project_to_lyndon(p) -> LieElt:
    """Inverse of expand_to_assoc on Lie elements; raises
    :class:`LieProjectionError` otherwise."""
    coords: dict[tuple[int, ...], Fraction] = {}
    residual = dict(p.terms)
    if residual.pop((), None):
        raise LieProjectionError(p)
    while residual:
        w = min(residual)
        if not _is_lyndon(w):
            from .assoc_env import AssocPoly

            raise LieProjectionError(AssocPoly(p.rank, residual))
        c = residual[w]
        coords[w] = c
        for m, k in _expand_word(w).items():
            residual[m] = residual.get(m, Fraction(0)) - c * k
            if not residual[m]:
                del residual[m]
    return LieElt(p.rank, coords)


def bracket(a: LieElt, b: LieElt) -> LieElt:
    if a.rank != b.rank:
        raise ValueError("rank mismatch")
    pa, pb = expand_to_assoc(a), expand_to_assoc(b)
    return project_to_lyndon(pa * pb - pb * pa)


def leftnorm(head: LieElt, tail: Iterable[LieElt]) -> LieElt:
    """Left-normed bracket [[..[head, t1], t2], ..]."""
    out = head
    for t in tail:
        out = bracket(out, t)
    return out


@lru_cache(maxsize=None)
def _word_index(rank: int, degree: int) -> dict[tuple[int, ...], int]:
    return {w: k for k, w in enumerate(lyndon_words(rank, degree))}


def lie_vector(a: LieElt, degree: int) -> Row:
    """Coordinate row of the degree-d component over lyndon_words."""
    idx = _word_index(a.rank, degree)
    vec = [Fraction(0)] * len(idx)
    for w, c in a.coords.items():
        if len(w) == degree:
            vec[idx[w]] = c
    return tuple(vec)


def lie_from_vector(rank: int, degree: int, vec: Sequence[Fraction]) -> LieElt:
    words = lyndon_words(rank, degree)
    return LieElt(rank, {w: c for w, c in zip(words, vec) if c})


class GradedSubspace:
    """Graded subspace of the free Lie algebra up to a degree cutoff; each
    component is kept as an RREF row basis over the Lyndon coordinates."""

    __slots__ = ("rank", "cutoff", "comp")

    def __init__(self, rank: int, cutoff: int, comp: Mapping[int, Sequence[Row]] = ()):
        self.rank = rank
        self.cutoff = cutoff
        self.comp: dict[int, tuple[Row, ...]] = {}
        for d, rows in dict(comp).items():
            rows = tuple(rows)
            if rows:
                self.comp[d] = rows

    @classmethod
    def zero(cls, rank: int, cutoff: int) -> "GradedSubspace":
        return cls(rank, cutoff)

    @classmethod
    def full(cls, rank: int, cutoff: int) -> "GradedSubspace":
        comp = {}
        for d in range(1, cutoff + 1):
            n = len(lyndon_words(rank, d))
            comp[d] = tuple(
                tuple(Fraction(int(i == k)) for i in range(n)) for k in range(n)
            )
        return cls(rank, cutoff, comp)

    @classmethod
    def span(cls, elements: Iterable[LieElt], rank: int, cutoff: int) -> "GradedSubspace":
        by_degree: dict[int, list[Row]] = {}
        for e in elements:
            if e.rank != rank:
                raise ValueError("rank mismatch")
            for d in e.degrees():
                if d > cutoff:
                    raise ValueError("element degree exceeds cutoff")
                by_degree.setdefault(d, []).append(lie_vector(e, d))
        return cls(rank, cutoff, {d: rref(rows) for d, rows in by_degree.items()})

    def _check(self, other: "GradedSubspace") -> None:
        if self.rank != other.rank or self.cutoff != other.cutoff:
            raise ValueError("subspace shape mismatch")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedSubspace)
            and self.rank == other.rank
            and self.cutoff == other.cutoff
            and self.comp == other.comp
        )

    def __hash__(self):
        return hash((self.rank, self.cutoff, tuple(sorted(self.comp.items()))))

    def dim(self, d: int) -> int:
        return len(self.comp.get(d, ()))

    def dims(self) -> dict[int, int]:
        return {d: self.dim(d) for d in range(1, self.cutoff + 1)}

    def rows(self, d: int) -> tuple[Row, ...]:
        return self.comp.get(d, ())

    def basis_elements(self, d: int) -> list[LieElt]:
        return [lie_from_vector(self.rank, d, r) for r in self.rows(d)]

    def all_basis_elements(self) -> list[LieElt]:
        out = []
        for d in range(1, self.cutoff + 1):
            out.extend(self.basis_elements(d))
        return out

    def member(self, a: LieElt) -> bool:
        if a.rank != self.rank:
            raise ValueError("rank mismatch")
        for d in a.degrees():
            if d > self.cutoff:
                raise ValueError("element degree exceeds cutoff")
            if not in_span(lie_vector(a, d), self.rows(d)):
                return False
        return True

    def sum(self, other: "GradedSubspace") -> "GradedSubspace":
        self._check(other)
        comp = {}
        for d in set(self.comp) | set(other.comp):
            comp[d] = rref(list(self.rows(d)) + list(other.rows(d)))
        return GradedSubspace(self.rank, self.cutoff, comp)

    def intersect(self, other: "GradedSubspace") -> "GradedSubspace":
        self._check(other)
        comp = {}
        for d in set(self.comp) & set(other.comp):
            comp[d] = intersect_rowspaces(self.rows(d), other.rows(d))
        return GradedSubspace(self.rank, self.cutoff, comp)

    def contains(self, other: "GradedSubspace") -> bool:
        self._check(other)
        for d, rows in other.comp.items():
            mine = self.rows(d)
            if any(not in_span(r, mine) for r in rows):
                return False
        return True

    def bracket_span(self, other: "GradedSubspace") -> "GradedSubspace":
        """Graded span of [self, other] up to the cutoff."""
        self._check(other)
        by_degree: dict[int, list[Row]] = {}
        for d1, rows1 in self.comp.items():
            for d2, rows2 in other.comp.items():
                d = d1 + d2
                if d > self.cutoff:
                    continue
                for r1 in rows1:
                    e1 = lie_from_vector(self.rank, d1, r1)
                    for r2 in rows2:
                        e2 = lie_from_vector(self.rank, d2, r2)
                        b = bracket(e1, e2)
                        if not b.is_zero:
                            by_degree.setdefault(d, []).append(lie_vector(b, d))
        return GradedSubspace(
            self.rank, self.cutoff, {d: rref(rows) for d, rows in by_degree.items()}
        )


def subalgebra_closure(generators: Sequence[LieElt], rank: int, cutoff: int) -> GradedSubspace:
    """Graded span of the subalgebra generated by homogeneous elements."""
    for g in generators:
        if not g.is_homogeneous():
            raise ValueError("generators must be homogeneous")
    if all(
        g.coords == {(j,): Fraction(1)}
        for g, j in zip(generators, range(1, rank + 1))
    ) and len(generators) == rank:
        return GradedSubspace.full(rank, cutoff)
    comp: dict[int, list[Row]] = {}
    elems: list[LieElt] = []
    work: list[LieElt] = []

    def add(e: LieElt) -> None:
        if e.is_zero or e.max_degree() > cutoff:
            return
        d = e.max_degree()
        vec = lie_vector(e, d)
        rows = comp.get(d, [])
        if in_span(vec, rows):
            return
        comp[d] = rref(rows + [vec])
        work.append(e)

    for g in generators:
        add(g)
    # worklist closure: bracket each new element against everything seen
    while work:
        e = work.pop()
        elems.append(e)
        for other in list(elems):
            if e.max_degree() + other.max_degree() <= cutoff:
                add(bracket(e, other))
    return GradedSubspace(rank, cutoff, {d: tuple(r) for d, r in comp.items()})


def ideal_closure(elements: Sequence[LieElt], rank: int, cutoff: int) -> GradedSubspace:
    """Graded span of the ideal generated by the homogeneous components of
    the given elements (saturation with ad by the generators)."""
    comp: dict[int, list[Row]] = {}
    queue: list[LieElt] = []

    def add(e: LieElt) -> None:
        for d in e.degrees():
            if d > cutoff:
                continue
            h = e.homogeneous(d)
            vec = lie_vector(h, d)
            rows = comp.get(d, [])
            if not in_span(vec, rows):
                comp[d] = rref(rows + [vec])
                queue.append(h)

    for e in elements:
        add(e)
    gens = [LieElt.gen(rank, j) for j in range(1, rank + 1)]
    while queue:
        h = queue.pop()
        if h.max_degree() + 1 > cutoff:
            continue
        for g in gens:
            add(bracket(h, g))
    return GradedSubspace(rank, cutoff, {d: tuple(r) for d, r in comp.items()})


def power_subspace(base: GradedSubspace, power: int) -> GradedSubspace:
    """power-th term of the lower central series of the subspace: iterated
    bracket spans [[base, base], base], ..."""
    if power < 1:
        raise ValueError("power must be positive")
    out = base
    for _ in range(power - 1):
        out = out.bracket_span(base)
    return out


def render_bracketing(tree) -> str:
    if isinstance(tree, int):
        return f"y{tree}"
    return f"[{render_bracketing(tree[0])},{render_bracketing(tree[1])}]"


def format_lie(a: LieElt) -> str:
    if a.is_zero:
        return "0"
    parts = []
    for w in sorted(a.coords, key=lambda w: (len(w), w)):
        c = a.coords[w]
        body = render_bracketing(standard_bracketing(w))
        mag = abs(c)
        if mag != 1:
            body = f"{mag}*{body}"
        if not parts:
            parts.append(body if c > 0 else f"- {body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class _LieParser:
    """Recursive descent for  expr := term ((+|-) term)*;
    term := [rational *] atom;  atom := yK | '[' expr ',' expr ']'."""

    def __init__(self, text: str, rank: int):
        self.text = text
        self.pos = 0
        self.rank = rank

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> LieElt:
        out = self.expr()
        self._skip()
        if self.pos != len(self.text):
            raise ValueError(f"trailing input at {self.pos}: {self.text[self.pos:]!r}")
        return out

    def expr(self) -> LieElt:
        sign = 1
        if self._peek() in ("+", "-"):
            sign = 1 if self._peek() == "+" else -1
            self.pos += 1
        out = self.term().scale(sign)
        while self._peek() in ("+", "-"):
            sign = 1 if self._peek() == "+" else -1
            self.pos += 1
            out = out + self.term().scale(sign)
        return out

    def term(self) -> LieElt:
        coeff = Fraction(1)
        ch = self._peek()
        if ch.isdigit():
            start = self.pos
            while self._peek().isdigit() or self._peek() == "/":
                self.pos += 1
            coeff = Fraction(self.text[start : self.pos])
            if self._peek() != "*":
                raise ValueError("expected '*' after coefficient")
            self.pos += 1
        return self.atom().scale(coeff)

    def atom(self) -> LieElt:
        ch = self._peek()
        if ch == "y":
            self.pos += 1
            start = self.pos
            while self._peek().isdigit():
                self.pos += 1
            if start == self.pos:
                raise ValueError("expected generator index after 'y'")
            j = int(self.text[start : self.pos])
            if not 1 <= j <= self.rank:
                raise ValueError(f"generator index {j} out of range")
            return LieElt.gen(self.rank, j)
        if ch == "[":
            self.pos += 1
            left = self.expr()
            if self._peek() != ",":
                raise ValueError("expected ',' in bracket")
            self.pos += 1
            right = self.expr()
            if self._peek() != "]":
                raise ValueError("expected ']'")
            self.pos += 1
            return bracket(left, right)
        raise ValueError(f"unexpected character {ch!r} at {self.pos}")


def parse_lie(text: str, rank: int) -> LieElt:
    if text.strip() == "0":
        return LieElt.zero(rank)
    return _LieParser(text, rank).parse()
