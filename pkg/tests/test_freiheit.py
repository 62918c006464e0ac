import itertools
from fractions import Fraction

import pytest

from foxcalc.freiheit import (
    SeriesSpec,
    free_generating_set,
    group_criterion_bruteforce,
    ideal_generated,
    lie_criterion,
    lie_freiheitssatz_verify,
    series_components,
    series_intersection_check,
)
from foxcalc.lie_core import (
    GradedSubspace,
    LieElt,
    expand_to_assoc,
    lyndon_words,
    parse_lie,
    power_subspace,
    subalgebra_closure,
)
from foxcalc.words import Alphabet, conjugate, parse_word


def test_series_nesting():
    for spec in (SeriesSpec((3,)), SeriesSpec((1, 2)), SeriesSpec((2,), 2)):
        comps = series_components(spec, 2, 5)
        prev = None
        for k, l, term in comps:
            if prev is not None:
                assert prev.contains(term)
            prev = term


def test_series_block_joints():
    comps = dict(((k, l), t) for k, l, t in series_components(SeriesSpec((1, 2)), 2, 5))
    assert comps[(1, 2)] == comps[(2, 1)]
    assert comps[(1, 1)] == GradedSubspace.full(2, 5)
    assert comps[(2, 1)] == power_subspace(GradedSubspace.full(2, 5), 2)


def test_series_intersection_property():
    assert series_intersection_check(SeriesSpec((4,)), 3, 6)
    assert series_intersection_check(SeriesSpec((1, 2)), 3, 6)


def test_ideal_generated_stability():
    r = parse_lie("[y1, y3]", 3)
    small = ideal_generated(r, 4)
    big = ideal_generated(r, 5)
    for d in range(1, 5):
        assert small.dim(d) == big.dim(d)
    assert small.dim(2) == 1 and small.dim(3) == 3


def test_lie_criterion_examples():
    spec = SeriesSpec((6,))
    assert lie_criterion(parse_lie("[y1, y3]", 3), spec, 6) .satisfied
    assert lie_criterion(parse_lie("[y1, y3]", 3), spec, 6).level == 2
    res = lie_criterion(parse_lie("[y1, y2]", 3), spec, 6)
    assert res.level == 2 and not res.satisfied
    res = lie_criterion(parse_lie("y3", 3), spec, 6)
    assert res.level == 1 and res.satisfied


def test_lie_criterion_multi_block():
    # level counts along the flattened chain; [y1, y3] sits at the joint
    res = lie_criterion(parse_lie("[y1, y3]", 3), SeriesSpec((1, 2)), 5)
    assert res.level == 2 and res.satisfied


def test_freiheit_verify_positive():
    rep = lie_freiheitssatz_verify(parse_lie("[y1, y3]", 3), SeriesSpec((4,)), 5)
    assert rep.criterion.satisfied and rep.all_equal and rep.consistent


def test_freiheit_verify_negative_witness_degree():
    rep = lie_freiheitssatz_verify(parse_lie("[y1, y2]", 3), SeriesSpec((4,)), 5)
    assert not rep.criterion.satisfied
    assert not rep.all_equal and rep.consistent
    bad = [e for e in rep.entries if not e.equal]
    assert any(e.l == 3 and e.degree == 2 for e in bad)


def test_freiheit_cutoff_too_small():
    with pytest.raises(ValueError):
        lie_freiheitssatz_verify(parse_lie("[y1, [y1, y3]]", 3), SeriesSpec((2,)), 2)


def test_freiheit_soundness_sweep_degree2():
    """Verifier verdict matches criterion verdict for homogeneous degree-2
    relators over a small coefficient set."""
    spec = SeriesSpec((3,))
    words2 = lyndon_words(3, 2)
    for coeff_vec in itertools.product((-1, 0, 1), repeat=len(words2)):
        r = LieElt(3, {w: Fraction(c) for w, c in zip(words2, coeff_vec) if c})
        if r.is_zero:
            continue
        rep = lie_freiheitssatz_verify(r, spec, 4)
        assert rep.consistent
        assert rep.all_equal == rep.criterion.satisfied


def test_free_generating_set_f2_rank2():
    b = power_subspace(GradedSubspace.full(2, 4), 2)
    gens = free_generating_set(b, 4)
    by_degree = {}
    for g in gens:
        by_degree.setdefault(g.value.max_degree(), []).append(g)
    assert len(by_degree[2]) == 1
    assert len(by_degree[3]) == 2
    # tags separate: each (monomial, j) pair is used once
    tags = [(g.monomial, g.j) for g in gens]
    assert len(tags) == len(set(tags))


def test_free_generating_set_leading_monomial():
    """The tag monomial of each generator appears in D_j of that generator
    with coefficient 1 and in no other generator's D_j residue."""
    from foxcalc.fox_lie import lie_fox
    from foxcalc.assoc_env import PBWContext, adapted_basis

    b = power_subspace(GradedSubspace.full(2, 4), 2)
    gens = free_generating_set(b, 4)
    h = subalgebra_closure([LieElt.gen(2, 1)], 2, 4)
    ctx = PBWContext(
        adapted_basis((b.intersect(h), b, b.sum(h)), "dcba", c_carrier=h)
    )

    def residue(p):
        rw = ctx.rewrite(p)
        return {
            m: c
            for m, c in rw.items()
            if not (set(ctx.monomial_blocks(m)) & {"a", "b"})
        }

    for g in gens:
        fox = lie_fox(expand_to_assoc(g.value))
        res = residue(fox.partials[g.j])
        assert res.get(g.monomial) == 1
        for other in gens:
            if other is g or other.value.max_degree() != g.value.max_degree():
                continue
            ofox = lie_fox(expand_to_assoc(other.value))
            assert residue(ofox.partials[g.j]).get(g.monomial) is None


def test_group_criterion_negative():
    al = Alphabet(3)
    rep = group_criterion_bruteforce(parse_word("g1 g3 g1^-1 g3^-1", al), level=2)
    assert not rep.conjugate_found


def test_group_criterion_positive_with_witness():
    al = Alphabet(3)
    r = parse_word("g1 g2 g1^-1 g2^-1", al)
    rep = group_criterion_bruteforce(r, level=2, search_bound=4)
    assert rep.conjugate_found and rep.mode == "graded+search"
    rep2 = group_criterion_bruteforce(conjugate(r, parse_word("g3", al)), level=2)
    assert rep2.conjugate_found and rep2.witness is not None


def test_group_criterion_level_validation():
    al = Alphabet(3)
    with pytest.raises(ValueError):
        group_criterion_bruteforce(parse_word("g1", al), level=2)
