import random

import pytest

from subseq.alternation import (
    ENGINE_CHAIN_NFA,
    ENGINE_ITERATE,
    AlternationMeasure,
    ChainLevel,
    build_chain_nfa,
    chain_core_iterate,
    in_boolean_level,
    l_minus,
    l_plus,
    m_minus,
    m_plus,
    minimal_boolean_level,
    mk_witness,
    normal_form_decomposition,
    reassemble_normal_form,
)
from subseq.automata import (
    complement,
    determinize,
    difference,
    equivalent,
    intersection,
    is_empty,
    minimize,
    union,
    universal_language,
)
from subseq.errors import InfiniteMeasureError, InputError
from subseq.subword import shuffle_ideal, upward_closure

from helpers import AB, ab_star, mk_predicate, random_dfa, words_up_to


def empty_dfa():
    return complement(universal_language(AB))


def test_measure_ordering_and_edges():
    inf = AlternationMeasure.infinite()
    assert not inf.is_finite
    assert AlternationMeasure.finite(3) < inf
    assert not inf < inf
    assert inf == AlternationMeasure.infinite()
    assert AlternationMeasure.finite(-1) < AlternationMeasure.finite(0)
    assert str(inf) == "inf"
    assert str(AlternationMeasure.finite(2)) == "2"
    with pytest.raises(InputError):
        AlternationMeasure.finite(-2)


def test_chain_nfa_level_zero_is_upward_closure():
    rng = random.Random(300)
    for _ in range(10):
        d = random_dfa(rng, rng.randint(1, 4))
        assert minimize(determinize(build_chain_nfa(d, 0))) == upward_closure(d)


def test_chain_nfa_of_empty_language_is_empty():
    for m in range(4):
        assert is_empty(build_chain_nfa(empty_dfa(), m))


def test_chain_nfa_of_witness_dies_at_its_depth():
    m2 = mk_witness(2)
    assert not is_empty(build_chain_nfa(m2, 1))
    assert is_empty(build_chain_nfa(m2, 2))


def test_chain_nfa_states_are_reachable_tuples_only():
    # the one-state universal machine keeps a single tuple alive per level
    nfa = build_chain_nfa(universal_language(AB), 3)
    assert nfa.n_states == 1


def test_iterate_level_zero_is_upward_closure():
    rng = random.Random(301)
    for _ in range(10):
        d = random_dfa(rng, rng.randint(1, 4))
        assert chain_core_iterate(d, 0) == upward_closure(d)


def test_iterate_matches_chain_nfa_on_random_machines():
    rng = random.Random(302)
    for _ in range(25):
        d = random_dfa(rng, 3)
        for m in range(4):
            assert equivalent(
                minimize(determinize(build_chain_nfa(d, m))),
                chain_core_iterate(d, m),
            )


def test_iterate_empties_at_witness_depth():
    assert is_empty(chain_core_iterate(mk_witness(2), 2))


def test_level_automata_agree_between_engines_via_l_plus():
    rng = random.Random(303)
    for _ in range(10):
        d = random_dfa(rng, rng.randint(1, 3))
        for m in range(3):
            assert l_plus(d, m, ENGINE_ITERATE) == l_plus(d, m, ENGINE_CHAIN_NFA)


def test_l_plus_level_zero_and_l_minus_identity():
    rng = random.Random(304)
    for _ in range(10):
        d = random_dfa(rng, rng.randint(1, 4))
        assert l_plus(d, 0) == upward_closure(d)
        for m in range(3):
            assert l_minus(d, m) == l_plus(complement(d), m)


def test_l_plus_of_witness_levels():
    m2 = mk_witness(2)
    assert not is_empty(l_plus(m2, 1))
    assert is_empty(l_plus(m2, 2))


@pytest.mark.parametrize("k", range(1, 7))
def test_measures_of_witness_family(k):
    mk = mk_witness(k)
    assert m_plus(mk) == AlternationMeasure.finite(k - 1)
    assert m_minus(mk) == AlternationMeasure.finite(k)


def test_measures_of_universal_and_empty():
    assert m_plus(universal_language(AB)) == AlternationMeasure.finite(0)
    assert m_minus(universal_language(AB)) == AlternationMeasure.finite(-1)
    assert m_plus(empty_dfa()) == AlternationMeasure.finite(-1)
    assert m_minus(empty_dfa()) == AlternationMeasure.finite(0)


def test_measures_of_strictly_alternating_language_are_infinite():
    # (ab)(ab)... embeds in a(ab)... embeds in (ab)(ab)(ab)..., flipping
    # membership at every step, so no finite depth can hold
    d = ab_star()
    assert m_plus(d) == AlternationMeasure.infinite()
    assert m_minus(d) == AlternationMeasure.infinite()


def test_measures_agree_between_engines():
    rng = random.Random(305)
    for _ in range(15):
        d = random_dfa(rng, rng.randint(1, 3))
        assert m_plus(d, ENGINE_ITERATE) == m_plus(d, ENGINE_CHAIN_NFA)


def test_in_boolean_level_for_witness_family():
    for k in range(1, 6):
        mk = mk_witness(k)
        assert in_boolean_level(mk, k, "plus")
        assert not in_boolean_level(mk, k, "co")
        assert in_boolean_level(mk, k + 1, "co")


def test_in_boolean_level_edges():
    assert in_boolean_level(empty_dfa(), 1, "plus")
    for k in (1, 2, 3):
        assert not in_boolean_level(ab_star(), k, "plus")
        assert not in_boolean_level(ab_star(), k, "co")
    with pytest.raises(InputError):
        in_boolean_level(empty_dfa(), 0, "plus")
    with pytest.raises(InputError):
        in_boolean_level(empty_dfa(), 1, "sideways")


def test_minimal_boolean_level_of_witness():
    report = minimal_boolean_level(mk_witness(3))
    assert report.minimal_k_plus == 3
    assert report.minimal_k_co == 4
    assert report.strict_side == "plus"
    assert report.in_boolean_closure


def test_minimal_boolean_level_of_single_letter_ideal():
    # every extension of a member stays inside, so the plus depth is zero;
    # the empty word extends into a member, giving minus depth one
    report = minimal_boolean_level(shuffle_ideal("a", AB))
    assert report.m_plus == AlternationMeasure.finite(0)
    assert report.m_minus == AlternationMeasure.finite(1)
    assert report.minimal_k_plus == 1
    assert report.minimal_k_co == 2


def test_minimal_boolean_level_outside_the_hierarchy():
    report = minimal_boolean_level(ab_star())
    assert not report.in_boolean_closure
    assert report.minimal_k_plus is None
    assert report.minimal_k_co is None
    assert report.strict_side is None


def test_mk_witness_languages_match_their_arithmetic():
    for k in range(1, 7):
        mk = mk_witness(k)
        member = mk_predicate(k)
        assert mk.n_states == k + 2
        for w in words_up_to("ab", max(4, k + 2)):
            assert mk.accepts(w) == member(w)


def test_mk_witness_small_cases():
    for w in words_up_to("ab", 4):
        assert mk_witness(1).accepts(w) == (w.count("a") >= 1)
        assert mk_witness(2).accepts(w) == (w.count("a") == 1)


def test_mk_witness_validation():
    with pytest.raises(InputError):
        mk_witness(0)
    with pytest.raises(InputError):
        mk_witness(2, AB, "z")


def test_normal_form_of_witness():
    m2 = mk_witness(2)
    chain = normal_form_decomposition(m2)
    assert len(chain) == 3
    assert equivalent(chain[0], universal_language(AB))
    assert equivalent(chain[1], shuffle_ideal("a", AB))
    assert equivalent(chain[2], shuffle_ideal("aa", AB))
    assert equivalent(reassemble_normal_form(chain, AB), m2)


def test_normal_form_chain_is_nested():
    for k in (1, 2, 3):
        chain = normal_form_decomposition(mk_witness(k))
        for bigger, smaller in zip(chain, chain[1:]):
            assert is_empty(difference(smaller, bigger))


def test_normal_form_of_empty_language():
    chain = normal_form_decomposition(empty_dfa())
    assert len(chain) == 1
    assert equivalent(chain[0], universal_language(AB))
    assert is_empty(reassemble_normal_form(chain, AB))


def test_normal_form_of_universal_language():
    chain = normal_form_decomposition(universal_language(AB))
    assert chain == []
    assert equivalent(reassemble_normal_form(chain, AB), universal_language(AB))


def test_normal_form_of_single_letter_ideal():
    ideal = shuffle_ideal("a", AB)
    chain = normal_form_decomposition(ideal)
    assert equivalent(reassemble_normal_form(chain, AB), ideal)


def test_normal_form_rejects_infinite_measures():
    with pytest.raises(InfiniteMeasureError):
        normal_form_decomposition(ab_star())


def test_normal_form_rebuilds_random_finite_languages():
    rng = random.Random(306)
    rebuilt = 0
    trials = 0
    while rebuilt < 12 and trials < 200:
        trials += 1
        d = random_dfa(rng, rng.randint(1, 4))
        if not m_plus(d).is_finite:
            continue
        chain = normal_form_decomposition(d)
        assert equivalent(reassemble_normal_form(chain, AB), d)
        rebuilt += 1
    assert rebuilt == 12


def test_level_inclusions_and_strict_shrinking():
    rng = random.Random(307)
    for _ in range(12):
        d = random_dfa(rng, rng.randint(1, 3))
        for m in range(3):
            plus_m = l_plus(d, m)
            plus_next = l_plus(d, m + 1)
            minus_m = l_minus(d, m)
            minus_next = l_minus(d, m + 1)
            upper = intersection(plus_m, minus_m)
            lower = union(plus_next, minus_next)
            assert is_empty(difference(lower, upper))
            if not is_empty(plus_m):
                assert is_empty(difference(plus_next, plus_m))
                assert not equivalent(plus_next, plus_m)
            if not is_empty(minus_m):
                assert is_empty(difference(minus_next, minus_m))
                assert not equivalent(minus_next, minus_m)


def test_levels_are_upward_closed():
    rng = random.Random(308)
    for _ in range(12):
        d = random_dfa(rng, rng.randint(1, 3))
        for m in range(3):
            for sign in ("plus", "minus"):
                level = ChainLevel.compute(d, m, sign)
                assert level.check()
                assert level.automaton == (l_plus if sign == "plus" else l_minus)(d, m)


def test_chain_level_validation():
    d = mk_witness(1)
    with pytest.raises(InputError):
        ChainLevel.compute(d, -1)
    with pytest.raises(InputError):
        ChainLevel.compute(d, 0, sign="sideways")


def test_finite_measures_differ_by_one_off_the_edges():
    rng = random.Random(309)
    corpus = [mk_witness(k) for k in range(1, 6)]
    corpus += [shuffle_ideal(w, AB) for w in ("a", "ab", "bba")]
    corpus += [complement(shuffle_ideal("ab", AB))]
    corpus += [
        union(shuffle_ideal("aa", AB), complement(shuffle_ideal("b", AB))),
        intersection(mk_witness(2), shuffle_ideal("b", AB)),
    ]
    corpus += [random_dfa(rng, rng.randint(1, 4)) for _ in range(60)]
    checked = 0
    for d in corpus:
        if is_empty(d) or is_empty(complement(d)):
            continue
        plus = m_plus(d)
        if not plus.is_finite:
            continue
        minus = m_minus(d)
        assert abs(plus.value - minus.value) == 1
        checked += 1
    assert checked > 10


def test_infinite_measures_come_in_pairs():
    rng = random.Random(310)
    for _ in range(30):
        d = random_dfa(rng, rng.randint(1, 4))
        assert m_plus(d).is_finite == m_minus(d).is_finite


def test_engines_agree_over_three_letters():
    from subseq.automata import Alphabet

    abc = Alphabet("abc")
    rng = random.Random(311)
    for _ in range(15):
        d = random_dfa(rng, rng.randint(1, 3), alphabet=abc)
        for m in range(3):
            assert l_plus(d, m, ENGINE_ITERATE) == l_plus(d, m, ENGINE_CHAIN_NFA)
        assert m_plus(d, ENGINE_ITERATE) == m_plus(d, ENGINE_CHAIN_NFA)


def test_unary_alphabet_is_supported():
    # single-letter alphabets are accepted even though the interesting
    # hierarchy lives over two or more letters
    from subseq.automata import Alphabet, Dfa

    a_only = Alphabet("a")
    evens = Dfa(a_only, 2, ((1,), (0,)), 0, frozenset({0}))
    assert m_plus(evens) == AlternationMeasure.infinite()
    threshold = Dfa(a_only, 2, ((1,), (1,)), 0, frozenset({1}))  # at least one a
    assert m_plus(threshold) == AlternationMeasure.finite(0)
    assert m_minus(threshold) == AlternationMeasure.finite(1)
    for m in range(3):
        assert l_plus(threshold, m, ENGINE_ITERATE) == l_plus(
            threshold, m, ENGINE_CHAIN_NFA
        )
