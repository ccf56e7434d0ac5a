import random

from conftest import name_sets
from lpodc import crp as crp_semantics
from lpodc import lpod
from lpodc.engine import optimal_answer_sets
from lpodc.evaluate import (
    dump_ground,
    eval_crp,
    eval_lpod,
    ground_document,
    shrink,
    tuple_ground_program,
)
from lpodc.lpod import Criterion
from lpodc.model import Dialect, Term, canonicalize
from lpodc.parser import parse
from lpodc.randgen import random_crp, random_lpod
from lpodc.translate import crp2asp, lpod2asp_base, lpod2asp_pref


def test_eval_pi1_penalty_sum(pi1):
    doc = lpod2asp_pref(pi1, Criterion.PENALTY_SUM)
    ev = eval_lpod(doc, pi1, Criterion.PENALTY_SUM)
    assert ev.pas_tuples() == ((1, 1),)
    assert name_sets(ev.preferred_projections()) == {frozenset({"a", "b"})}


def test_eval_pi2_inclusion(pi2):
    ev = eval_lpod(lpod2asp_pref(pi2, Criterion.INCLUSION), pi2, Criterion.INCLUSION)
    assert ev.pas_tuples() == ((1, 3), (4, 1))


def test_eval_pi2_pareto(pi2):
    ev = eval_lpod(lpod2asp_pref(pi2, Criterion.PARETO), pi2, Criterion.PARETO)
    assert ev.pas_tuples() == ((1, 3), (2, 2), (4, 1))


def test_eval_pi2_candidates_and_degrees(pi2):
    ev = eval_lpod(lpod2asp_pref(pi2, Criterion.CARDINALITY), pi2, Criterion.CARDINALITY)
    assert ev.ap_tuples == ((1, 3), (2, 2), (4, 1))
    assert ev.degrees == {(1, 3): (1, 3), (2, 2): (2, 2), (4, 1): (4, 1)}


def test_eval_crp_pi3(pi3):
    ev = eval_crp(crp2asp(pi3), pi3)
    assert ev.candidate_tuples() == ((0, 1), (1, 0), (1, 1))
    assert ev.pas_tuples() == ((0, 1), (1, 0))
    assert name_sets(ev.preferred_projections()) == {
        frozenset({"t", "q", "s"}),
        frozenset({"q", "r"}),
    }


def test_eval_crp_pi3p(pi3p):
    ev = eval_crp(crp2asp(pi3p), pi3p)
    assert ev.pas_tuples() == ((0, 1),)
    assert name_sets(ev.preferred_projections()) == {frozenset({"q", "r"})}


def test_eval_crp_regular_only():
    p = canonicalize(parse("a :- not b.\nb :- not a.", Dialect.CRP2))
    ev = eval_crp(crp2asp(p), p)
    assert ev.ap_tuples == ((),)
    assert ev.pas_tuples() == ((),)
    assert name_sets(ev.preferred_projections()) == {
        frozenset({"a"}),
        frozenset({"b"}),
    }


def test_shrink_on_base_optimal_answer_set(pi1):
    doc = lpod2asp_base(pi1)
    ground = ground_document(doc)
    best = optimal_answer_sets(ground, cap=len(ground.atoms))
    assert len(best) == 1
    s = best[0].atoms
    assert {str(a) for a in shrink(s, (1, 1), doc.sigma).atoms} == {"a", "b"}
    assert {str(a) for a in shrink(s, (0, 2), doc.sigma).atoms} == {"c"}
    assert shrink(frozenset(), (1, 1), doc.sigma).atoms == frozenset()


def test_monolithic_base_matches_splitting(pi1):
    # the fully ground base document solved directly yields the same
    # consistent tuples and projections as per-tuple splitting
    doc = lpod2asp_pref(pi1, Criterion.PENALTY_SUM)
    ev = eval_lpod(doc, pi1, Criterion.PENALTY_SUM)
    base = lpod2asp_base(pi1)
    ground = ground_document(base)
    best = optimal_answer_sets(ground, cap=len(ground.atoms))
    assert len(best) == 1
    s = best[0].atoms
    mono_tuples = tuple(sorted(a.args for a in s if a.predicate == "ap"))
    assert mono_tuples == ev.ap_tuples
    for xs in mono_tuples:
        assert {shrink(s, xs, base.sigma).atoms} == set(ev.projections[xs])


def test_monolithic_full_document_matches_splitting(pi1):
    doc = lpod2asp_pref(pi1, Criterion.PENALTY_SUM)
    ground = ground_document(doc)
    best = optimal_answer_sets(ground, cap=len(ground.atoms))
    assert len(best) == 1
    s = best[0].atoms
    ev = eval_lpod(doc, pi1, Criterion.PENALTY_SUM)
    assert {a.args for a in s if a.predicate == "pAS"} == set(ev.pas_tuples())
    mono_prf = {a.args for a in s if a.predicate == "prf"}
    assert mono_prf == set(ev.relations["prf"])


def test_tuple_programs_are_disjoint(pi1):
    doc = lpod2asp_base(pi1)
    seen = {}
    for xs in doc.tuple_space():
        atoms = tuple_ground_program(doc, xs).atoms
        for other, other_atoms in seen.items():
            assert not (atoms & other_atoms), (xs, other)
        seen[xs] = atoms


def test_inclusion_layer_matches_direct_reading(pi2):
    # the emitted aggregate encoding against the direct subset reading
    doc = lpod2asp_pref(pi2, Criterion.INCLUSION)
    ev = eval_lpod(doc, pi2, Criterion.INCLUSION)
    degrees = ev.degrees
    maxdeg = max(r.head_size() for r in pi2.nonregular_rules)

    def deg_sets(xs, d):
        return frozenset(i for i, v in enumerate(degrees[xs], 1) if v == d)

    direct_prf = set()
    for p1 in ev.ap_tuples:
        for p2 in ev.ap_tuples:
            if p1 == p2:
                continue
            for d in range(1, maxdeg + 1):
                s1, s2 = deg_sets(p1, d), deg_sets(p2, d)
                if s1 == s2:
                    continue
                if s2 < s1:
                    direct_prf.add((Term("ap", p1), Term("ap", p2)))
                break
    assert direct_prf == set(ev.relations["prf"])


def test_oracle_translation_agreement_randomized_lpod():
    rng = random.Random(307)
    for _ in range(25):
        p = random_lpod(rng)
        if not p.nonregular_rules:
            continue
        oracle_cands = lpod.assumption_candidates(p)
        for criterion in Criterion:
            doc = lpod2asp_pref(p, criterion)
            ev = eval_lpod(doc, p, criterion)
            assert set(ev.ap_tuples) == {c.assumption for c in oracle_cands}
            oracle_pref = frozenset(c.atoms for c in lpod.preferred(p, criterion))
            assert frozenset(ev.preferred_projections()) == oracle_pref


def test_oracle_translation_agreement_randomized_crp():
    rng = random.Random(311)
    for _ in range(15):
        p = random_crp(rng)
        sigma = p.signature
        ev = eval_crp(crp2asp(p), p)
        oracle_gen = frozenset(
            g.project(sigma) for g in crp_semantics.generalized_answer_sets(p)
        )
        assert frozenset(ev.generalized_projections()) == oracle_gen
        oracle_pref = frozenset(crp_semantics.preferred_answer_sets(p))
        assert frozenset(ev.preferred_projections()) == oracle_pref


def test_parallel_evaluation_is_deterministic(pi2):
    doc = lpod2asp_pref(pi2, Criterion.PENALTY_SUM)
    serial = eval_lpod(doc, pi2, Criterion.PENALTY_SUM)
    threaded = eval_lpod(doc, pi2, Criterion.PENALTY_SUM, parallel=4)
    assert serial.ap_tuples == threaded.ap_tuples
    assert serial.pas_tuples() == threaded.pas_tuples()
    assert serial.projections == threaded.projections


def test_dump_ground_contains_tuple_sections(pi1):
    text = dump_ground(lpod2asp_base(pi1))
    assert "% tuple (0, 0)" in text
    assert "ap(1,1)" in text
