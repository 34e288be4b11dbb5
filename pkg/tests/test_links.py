import random

import pytest

import oracle
from fcell.links import (
    AdmissibilityReport,
    LinkError,
    LinkPresentation,
    MuResidue,
    SolidTorusLink,
    bing_double,
    compose,
    core_link,
    delta,
    is_admissible,
    is_almost_trivial,
    is_homotopically_trivial,
    iterated_bing,
    mu,
    mu_bar,
    nilpotent_presentation,
    reduced_magnus,
    wedge_alphabet,
    wedge_mu,
)
from fcell.series import magnus_expand
from fcell.words import commutator, conjugate, meridian_alphabet, reduce, substitute

HOPF = ["m2", "m1"]
BORROMEAN = ["m2^-1 m3^-1 m2 m3", "m3^-1 m1^-1 m3 m1", "m1^-1 m2^-1 m1 m2"]


def link(texts):
    return LinkPresentation.from_texts(texts)


def unlink(n):
    return link(["1"] * n)


def random_longitudes(rng, n, max_len=6):
    """Random untwisted longitude words over m1..mn."""
    ab = meridian_alphabet(n)
    out = []
    for j in range(1, n + 1):
        letters = [
            (rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))
        ]
        w = reduce(ab, letters)
        e = w.exponent_sum("m%d" % j)
        w = w * ab.gen("m%d" % j, -1 if e > 0 else 1) ** abs(e)
        out.append(w)
    return out


# -- presentation validation -----------------------------------------------------


def test_rejects_twisted_longitude():
    with pytest.raises(LinkError):
        link(["m1", "m1"])


def test_rejects_wrong_alphabet():
    ab = meridian_alphabet(3)
    with pytest.raises(LinkError):
        LinkPresentation([ab.word("m2"), ab.word("m1")])


# -- mu ----------------------------------------------------------------------------


def test_mu_hopf():
    assert mu(link(HOPF), (2,), 1) == 1
    assert mu(link(HOPF), (2,), 1) == oracle.mu(HOPF, (2,), 1)


def test_mu_borromean():
    assert mu(link(BORROMEAN), (1, 2), 3) == 1
    assert mu(link(BORROMEAN), (1, 2), 3) == oracle.mu(BORROMEAN, (1, 2), 3)


def test_mu_unlink_vanishes():
    u = unlink(3)
    for index, j in [((1,), 2), ((2, 3), 1), ((1, 2), 3)]:
        assert mu(u, index, j) == 0


def test_mu_degree_exceeds_q():
    with pytest.raises(LinkError):
        mu(link(BORROMEAN), (1, 2, 3), 3, q=2)


# -- delta and mu_bar --------------------------------------------------------------


def test_delta_length_two_vacuous():
    assert delta(link(HOPF), (2, 1)) == 0


def test_delta_borromean_vanishes():
    assert delta(link(BORROMEAN), (1, 2, 3)) == 0
    assert delta(link(BORROMEAN), (1, 2, 3)) == oracle.delta(BORROMEAN, (1, 2, 3))


def test_delta_includes_gcd_of_linking_numbers():
    # mu(1;2)=2 and mu(1;3)=4 force the indeterminacy of (1,2,3) down to 2
    texts = ["1", "m1 m1", "m1 m1 m1 m1"]
    lk = link(texts)
    assert mu(lk, (1,), 2) == 2
    assert mu(lk, (1,), 3) == 4
    assert delta(lk, (1, 2, 3)) == 2
    assert delta(lk, (1, 2, 3)) == oracle.delta(texts, (1, 2, 3))


def test_mu_bar_borromean():
    assert mu_bar(link(BORROMEAN), (1, 2), 3) == MuResidue(1, 0)
    assert oracle.mu_bar(BORROMEAN, (1, 2, 3)) == (1, 0)


def test_mu_bar_hopf():
    assert mu_bar(link(HOPF), (2,), 1) == MuResidue(1, 0)
    assert oracle.mu_bar(HOPF, (2, 1)) == (1, 0)


def test_mu_bar_unlink():
    assert mu_bar(unlink(2), (2,), 1) == MuResidue(0, 0)


def test_mu_bar_normalizes_into_modulus():
    # mu(1;2)=2 gives Delta(1,3,2)=2; mu(1,3;2)=raw residue normalized mod 2
    lk = link(["1", "m1 m1", "m1^-1 m2^-1 m1 m2"])
    residue = mu_bar(lk, (1, 3), 2)
    assert residue.modulus == 2
    assert 0 <= residue.value < 2


# -- triviality tests --------------------------------------------------------------


def test_unlinks_trivial():
    for n in (1, 2, 3, 4):
        assert is_homotopically_trivial(unlink(n))


def test_hopf_essential_with_witness():
    report = is_homotopically_trivial(link(HOPF))
    assert not report
    index = report.witness
    assert oracle.mu_bar(HOPF, index) != (0, 0)


def test_borromean_essential_with_witness():
    report = is_homotopically_trivial(link(BORROMEAN))
    assert not report
    assert report.witness == (1, 2, 3)
    assert oracle.mu_bar(BORROMEAN, report.witness) != (0, 0)


def test_whitehead_style_link_is_trivial():
    # longitudes are commutators of a meridian with its own conjugate
    ab = meridian_alphabet(2)
    w1 = commutator(ab.word("m2"), conjugate(ab.word("m2"), ab.word("m1")))
    w2 = commutator(ab.word("m1"), conjugate(ab.word("m1"), ab.word("m2")))
    assert is_homotopically_trivial(LinkPresentation([w1, w2]))


def test_q_too_small_rejected():
    with pytest.raises(LinkError):
        is_homotopically_trivial(link(BORROMEAN), 3)


def test_almost_trivial():
    assert is_almost_trivial(link(BORROMEAN))
    # proper sublinks of a 2-component link are knots, hence trivial
    assert is_almost_trivial(link(HOPF))
    assert is_almost_trivial(unlink(3))


def test_not_almost_trivial_with_essential_sublink():
    # Borromean plus a split component: dropping the extra component leaves
    # the essential Borromean rings
    lk = link(BORROMEAN + ["1"])
    assert not is_almost_trivial(lk)


# -- reduced expansion --------------------------------------------------------------


def test_reduced_magnus_kills_milnor_relators():
    ab = meridian_alphabet(3)
    rng = random.Random(5)
    for _ in range(12):
        f = reduce(ab, [(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))])
        g = reduce(ab, [(rng.randrange(3), rng.choice((1, -1))) for _ in range(rng.randint(0, 6))])
        m = ab.gen("m1")
        relator = commutator(conjugate(m, f), conjugate(m, g))
        assert reduced_magnus(relator, 4).is_one()


def test_reduced_magnus_commutator():
    ab = meridian_alphabet(2)
    s = reduced_magnus(commutator(ab.gen("m1"), ab.gen("m2")), 3)
    assert s.items() == [((), 1), (("m1", "m2"), 1), (("m2", "m1"), -1)]


def test_reduced_magnus_identity():
    assert reduced_magnus(meridian_alphabet(2).identity(), 3).is_one()


# -- solid torus links ---------------------------------------------------------------


def test_core_is_admissible():
    assert is_admissible(core_link())
    assert wedge_mu(core_link()) == 1


def test_core_lhat_is_hopf():
    assert core_link().lhat == link(HOPF)


def test_bing_double_of_core():
    doubled = bing_double(core_link())
    assert doubled.n == 2
    assert is_admissible(doubled)
    assert wedge_mu(doubled) in (1, -1)
    # the wedge coefficient agrees with the oracle expansion
    poly = oracle.magnus(doubled.wedge_word.to_text(), 2)
    assert poly.get(("z1", "z2")) in (1, -1)


def test_bing_double_lhat_is_borromean_pattern():
    doubled = bing_double(core_link())
    report = is_homotopically_trivial(doubled.lhat)
    assert not report
    assert is_almost_trivial(doubled.lhat)


def test_iterated_bing():
    assert iterated_bing(0) == core_link()
    deep = iterated_bing(2)
    assert deep.n == 4
    assert is_admissible(deep)
    assert wedge_mu(deep) in (1, -1)


def test_unlinked_pair_in_solid_torus_inadmissible():
    pair = SolidTorusLink(
        2,
        wedge_alphabet(2).identity(),
        unlink(3),
        unlink(4),
        (1, 2),
    )
    report = is_admissible(pair)
    assert not report
    assert report.failed_clause == "essential"


def test_wedge_mu_rejects_zero_coefficient():
    pair = SolidTorusLink(2, wedge_alphabet(2).identity(), unlink(3), unlink(4))
    with pytest.raises(LinkError):
        wedge_mu(pair)


def test_admissible_wedge_words_have_no_partial_y_terms():
    for torus_link in (core_link(), bing_double(core_link()), iterated_bing(2)):
        n = torus_link.n
        s = magnus_expand(torus_link.wedge_word, n + 1)
        zs = {"z%d" % i for i in range(1, n + 1)}
        for mono in s.monomials():
            if len(set(mono)) != len(mono) or "y" not in mono:
                continue
            assert zs.issubset(set(mono))


def test_conjugated_wedge_still_admissible():
    base = bing_double(core_link())
    ab = wedge_alphabet(2)
    torus_link = SolidTorusLink(
        2,
        conjugate(base.wedge_word, ab.gen("y")),
        base.lhat,
        base.lplus,
        base.preferred_order,
    )
    assert is_admissible(torus_link)
    assert wedge_mu(torus_link) == wedge_mu(base)


# -- nilpotent presentation export ----------------------------------------------------


def test_presentation_hopf():
    pres = nilpotent_presentation(link(HOPF), 3)
    assert pres.generators == ("m1", "m2")
    assert pres.q == 3
    ab = meridian_alphabet(2)
    assert pres.relators == (commutator(ab.gen("m1"), ab.gen("m2")),)


def test_presentation_unlink():
    pres = nilpotent_presentation(unlink(3), 4)
    assert all(r.is_identity() for r in pres.relators)
    assert len(pres.relators) == 2


def test_presentation_borromean():
    pres = nilpotent_presentation(link(BORROMEAN), 4)
    ab = meridian_alphabet(3)
    expected = commutator(ab.gen("m1"), ab.word(BORROMEAN[0]))
    assert pres.relators[0] == expected


# -- composition ------------------------------------------------------------------------


def test_compose_with_core_is_identity():
    lk = link(BORROMEAN)
    assert compose(lk, core_link()) == lk


def test_compose_hopf_with_bing_gives_borromean():
    composed = compose(link(HOPF), bing_double(core_link()))
    assert composed.n == 3
    assert not is_homotopically_trivial(composed)
    assert composed == link(BORROMEAN)


def test_compose_unlink_stays_trivial():
    composed = compose(unlink(3), bing_double(core_link()))
    assert composed.n == 4
    assert is_homotopically_trivial(composed)


# -- invariance properties ----------------------------------------------------------


def test_mu_bar_invariant_under_relator_multiplication():
    rng = random.Random(31)
    trials = 0
    while trials < 15:
        n = rng.randint(2, 4)
        lk = LinkPresentation(random_longitudes(rng, n))
        j = rng.randint(1, n)
        i = rng.choice([c for c in range(1, n + 1) if c != j])
        relator = commutator(lk.alphabet.gen("m%d" % i), lk.longitude(i))
        h = reduce(
            lk.alphabet,
            [(rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))],
        )
        modified_longitudes = list(lk.longitudes)
        modified_longitudes[j - 1] = lk.longitude(j) * conjugate(relator, h)
        modified = LinkPresentation(modified_longitudes)
        q = n + 1
        for seq in _nonrepeating(n):
            assert mu_bar(lk, seq[:-1], seq[-1], q) == mu_bar(
                modified, seq[:-1], seq[-1], q
            ), (lk, seq)
        trials += 1


def _nonrepeating(n):
    from itertools import permutations

    for length in range(2, n + 1):
        yield from permutations(range(1, n + 1), length)


def test_first_nonvanishing_coefficients_conjugation_invariant():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(2, 4)
        lk = LinkPresentation(random_longitudes(rng, n))
        j = rng.randint(1, n)
        h = reduce(
            lk.alphabet,
            [(rng.randrange(n), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))],
        )
        q = n + 1
        before = lk.expansion(j, q)
        degrees = sorted(len(m) for m in before.terms if m)
        if not degrees:
            continue
        d = degrees[0]
        conjugated = magnus_expand(conjugate(lk.longitude(j), h), q)
        assert before.degree_part(d) == conjugated.degree_part(d)
