from affweyl.admissible import (
    adm,
    adm_K,
    adm_by_exhaustion,
    enumerate_ball,
    is_admissible,
    kr_poset,
    tau,
)
from affweyl.affine_weyl import (
    ParahoricLevel,
    bruhat_leq,
    finite_reflection,
    kottwitz,
    length,
    make_level,
    mul,
    omega_part,
    sigma_apply,
    sigma_apply_cochar,
    sigma_from_name,
    translation_element,
)
from affweyl.notation import format_element
from affweyl.root_datum import build_root_datum, dominant_rep, weyl_orbit


GL2 = build_root_datum({"preset": "GL", "n": 2})
GL3 = build_root_datum({"preset": "GL", "n": 3})
GL4 = build_root_datum({"preset": "GL", "n": 4})
GSP4 = build_root_datum({"preset": "GSp", "n": 4})


def test_gl2_pinned_set():
    aset = adm((1, 0), GL2)
    names = {format_element(GL2, w) for w in aset.elements}
    assert names == {"t[1,0]*s1", "t[0,1]", "t[1,0]"}
    assert aset.cover_edges == ((0, 1), (0, 2))
    assert format_element(GL2, tau((1, 0), GL2)) == "t[1,0]*s1"


def test_tau_properties():
    for rd, mu in [(GL2, (1, 0)), (GL3, (1, 1, 0)), (GSP4, (1, 1, 1))]:
        t = tau(mu, rd)
        assert length(rd, t) == 0
        assert kottwitz(rd, t) == kottwitz(rd, translation_element(dominant_rep(mu, rd)[0], rd))
        aset = adm(mu, rd)
        assert t in set(aset.elements)
        assert all(bruhat_leq(rd, t, w) for w in aset.elements)


def test_tau_of_central_mu_is_translation():
    assert tau((1, 1), GL2) == translation_element((1, 1), GL2)
    assert adm((1, 1), GL2).elements == (translation_element((1, 1), GL2),)


def test_drinfeld_cardinalities_match_exhaustion():
    for n in (2, 3, 4):
        rd = build_root_datum({"preset": "GL", "n": n})
        mu = tuple([1] + [0] * (n - 1))
        fast = set(adm(mu, rd).elements)
        assert fast == adm_by_exhaustion(mu, rd)
        assert len(fast) == 2**n - 1


def test_pinned_sizes():
    assert len(adm((1, 1, 0), GL3)) == 7
    assert len(adm((1, 1, 0, 0), GL4)) == 33
    assert len(adm((1, 1, 1), GSP4)) == 13


def test_closure_matches_exhaustion_beyond_drinfeld():
    assert set(adm((1, 1, 0, 0), GL4).elements) == adm_by_exhaustion((1, 1, 0, 0), GL4)
    assert set(adm((1, 1, 1), GSP4).elements) == adm_by_exhaustion((1, 1, 1), GSP4)


def test_unique_length_zero_element():
    for rd, mu in [(GL2, (1, 0)), (GL3, (1, 0, 0)), (GL4, (1, 1, 0, 0)), (GSP4, (1, 1, 1))]:
        zero = [w for w in adm(mu, rd).elements if length(rd, w) == 0]
        assert zero == [tau(mu, rd)]


def test_maximal_elements_are_the_orbit_translations():
    for rd, mu in [(GL3, (1, 1, 0)), (GSP4, (1, 1, 1)), (GL2, (2, 0))]:
        aset = adm(mu, rd)
        elements = set(aset.elements)
        tops = {
            w
            for w in elements
            if not any(v != w and bruhat_leq(rd, w, v) for v in elements)
        }
        mu_dom = dominant_rep(mu, rd)[0]
        orbit = {translation_element(lam, rd) for lam in weyl_orbit(mu_dom, rd)}
        assert tops == orbit
        top_len = length(rd, translation_element(mu_dom, rd))
        assert all(length(rd, w) == top_len for w in tops)


def test_is_admissible_examples():
    assert is_admissible(translation_element((0, 1), GL2), (1, 0), GL2)
    assert not is_admissible(finite_reflection(GL2, 0), (1, 0), GL2)
    assert not is_admissible(translation_element((2, -1), GL2), (1, 0), GL2)


def test_kappa_constant_on_adm():
    for rd, mu in [(GL3, (1, 0, 0)), (GSP4, (1, 1, 1))]:
        aset = adm(mu, rd)
        kappas = {kottwitz(rd, w) for w in aset.elements}
        assert kappas == {kottwitz(rd, translation_element(dominant_rep(mu, rd)[0], rd))}


def test_downward_closure_in_kappa_fiber():
    for rd, mu, radius in [(GL2, (1, 0), 3), (GL3, (1, 0, 0), 3)]:
        aset = set(adm(mu, rd).elements)
        om = omega_part(rd, translation_element(dominant_rep(mu, rd)[0], rd))
        for w_a in enumerate_ball(rd, radius):
            v = mul(w_a, om)
            if any(bruhat_leq(rd, v, w) for w in aset):
                assert v in aset


def test_non_minuscule_mu():
    aset = adm((2, 0), GL2)
    assert set(aset.elements) == adm_by_exhaustion((2, 0), GL2)
    assert len(aset) == 5
    assert length(GL2, translation_element((2, 0), GL2)) == 2
    zero = [w for w in aset.elements if length(GL2, w) == 0]
    assert zero == [translation_element((1, 1), GL2)]


def test_adm_K_iwahori_is_identity():
    mu = (1, 0, 0)
    assert set(adm_K(mu, GL3, ParahoricLevel.iwahori())) == set(adm(mu, GL3).elements)


def test_adm_K_hyperspecial_gl2():
    level = make_level(GL2, [1])
    reps = adm_K((1, 0), GL2, level)
    assert len(reps) == 1
    assert reps[0] == tau((1, 0), GL2)


def test_adm_K_size_bound_and_surjectivity():
    from affweyl.affine_weyl import double_coset_rep

    for rd, mu, gens in [(GL3, (1, 0, 0), [1]), (GL3, (1, 1, 0), [1, 2]), (GSP4, (1, 1, 1), [2])]:
        level = make_level(rd, gens)
        reps = set(adm_K(mu, rd, level))
        full = adm(mu, rd).elements
        assert len(reps) <= len(full)
        assert {double_coset_rep(rd, w, level) for w in full} == reps


def test_kr_poset_gl2():
    poset = kr_poset((1, 0), GL2, ParahoricLevel.iwahori())
    assert len(poset.nodes) == 3
    assert poset.ranks[poset.bottom] == 0
    assert poset.edges == ((0, 1), (0, 2))
    tops = {i for i in range(3) if not any(a == i for a, _ in poset.edges)}
    assert tops == {1, 2}


def test_kr_poset_central_single_node():
    poset = kr_poset((1, 1), GL2, ParahoricLevel.iwahori())
    assert len(poset.nodes) == 1
    assert poset.edges == ()


def test_kr_poset_node_count_matches_adm_K():
    level = make_level(GL3, [1])
    poset = kr_poset((1, 0, 0), GL3, level)
    assert len(poset.nodes) == len(adm_K((1, 0, 0), GL3, level))


def test_sigma_stability_under_flip():
    flip = sigma_from_name(GL4, "flip")
    mu = (1, 1, 0, 0)
    image = {sigma_apply(flip, w) for w in adm(mu, GL4).elements}
    mu_image = dominant_rep(sigma_apply_cochar(flip, mu), GL4)[0]
    assert mu_image == (0, 0, -1, -1)
    assert image == set(adm(mu_image, GL4).elements)


def test_sigma_fixed_mu_fixes_adm():
    flip = sigma_from_name(GL4, "flip")
    mu = (1, 0, 0, -1)
    assert dominant_rep(sigma_apply_cochar(flip, mu), GL4)[0] == mu
    aset = set(adm(mu, GL4).elements)
    assert {sigma_apply(flip, w) for w in aset} == aset
