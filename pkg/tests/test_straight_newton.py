import itertools
import random
from fractions import Fraction as F

import pytest

from affweyl.affine_weyl import (
    AffineWeylError,
    ParahoricLevel,
    finite_reflection,
    identity_element,
    iwahori_generators,
    length,
    make_level,
    mul,
    omega_part,
    sigma_apply_cochar,
    sigma_from_name,
    sigma_identity,
    translation_element,
)
from affweyl.notation import format_element
from affweyl.root_datum import (
    build_root_datum,
    dominance_leq,
    pairing,
)
from affweyl.straight_newton import (
    DISCRETE_MARKER,
    NewtonPoint,
    adlv_nonempty,
    b_set,
    basic_point,
    components_bound_report,
    is_straight,
    is_straight_bruteforce,
    levi_datum,
    mu_bar,
    newton_point,
    pi1_sigma_invariants,
    straight_classes,
)

GL2 = build_root_datum({"preset": "GL", "n": 2})
GL3 = build_root_datum({"preset": "GL", "n": 3})
GL4 = build_root_datum({"preset": "GL", "n": 4})
GSP4 = build_root_datum({"preset": "GSp", "n": 4})
SID2 = sigma_identity(GL2)
SID3 = sigma_identity(GL3)


def test_straightness_examples():
    assert is_straight(GL2, SID2, translation_element((1, 0), GL2))
    assert is_straight(GL2, SID2, translation_element((-2, 5), GL2))
    assert not is_straight(GL2, SID2, finite_reflection(GL2, 0))
    tau = omega_part(GL2, translation_element((1, 0), GL2))
    assert is_straight(GL2, SID2, tau)


def test_straightness_matches_bruteforce():
    rng = random.Random(0)
    gens = iwahori_generators(GL3)
    for _ in range(60):
        w = identity_element(GL3)
        for _ in range(rng.randrange(0, 5)):
            w = mul(w, gens[rng.randrange(len(gens))])
        assert is_straight(GL3, SID3, w) == is_straight_bruteforce(GL3, SID3, w)
    flip = sigma_from_name(GL4, "flip")
    gens4 = iwahori_generators(GL4)
    for _ in range(40):
        w = identity_element(GL4)
        for _ in range(rng.randrange(0, 4)):
            w = mul(w, gens4[rng.randrange(len(gens4))])
        assert is_straight(GL4, flip, w) == is_straight_bruteforce(GL4, flip, w)


def test_newton_point_examples():
    raw, point = newton_point(GL2, SID2, translation_element((1, 0), GL2))
    assert raw == (F(1), F(0))
    assert point.nu == (F(1), F(0)) and point.denominator == 1 and point.kappa == (1,)
    tau = omega_part(GL2, translation_element((1, 0), GL2))
    raw, point = newton_point(GL2, SID2, tau)
    assert point.nu == (F(1, 2), F(1, 2)) and point.denominator == 2
    raw, point = newton_point(GL2, SID2, translation_element((0, 1), GL2))
    assert raw == (F(0), F(1)) and point.nu == (F(1), F(0))


def test_newton_of_translation_is_the_cocharacter():
    for lam in itertools.product(range(-2, 3), repeat=2):
        raw, _ = newton_point(GL2, SID2, translation_element(lam, GL2))
        assert raw == tuple(F(x) for x in lam)


def test_newton_of_translation_under_flip_is_orbit_average():
    flip = sigma_from_name(GL4, "flip")
    lam = (1, 0, 0, 0)
    raw, _ = newton_point(GL4, flip, translation_element(lam, GL4))
    avg = tuple(
        F(a + b, 2) for a, b in zip(lam, sigma_apply_cochar(flip, lam))
    )
    assert raw == avg == (F(1, 2), F(0), F(0), F(-1, 2))


def test_levi_datum_examples():
    assert len(levi_datum((F(1, 2), F(1, 2)), GL2).positive_roots) == 1
    assert len(levi_datum((F(1), F(0)), GL2).positive_roots) == 0
    assert len(levi_datum((F(1), F(1)), GL2).positive_roots) == 1
    assert len(levi_datum((F(1, 2), F(1, 2), F(0)), GL3).positive_roots) == 1


def test_levi_centrality_respects_the_similitude_direction():
    # (0,0,1) pairs nontrivially with the long root, so it is not central
    assert len(levi_datum((0, 0, 1), GSP4).positive_roots) == 1
    # the central direction of the similitude torus keeps the whole group
    assert len(levi_datum((1, 1, 2), GSP4).positive_roots) == 4


def test_straight_classes_gl2():
    classes = straight_classes((1, 0), GL2, SID2)
    assert len(classes) == 2
    basic, ordinary = classes
    assert basic.newton.nu == (F(1, 2), F(1, 2))
    assert [format_element(GL2, m) for m in basic.members] == ["t[1,0]*s1"]
    assert len(basic.levi.positive_roots) == 1
    assert ordinary.newton.nu == (F(1), F(0))
    assert {format_element(GL2, m) for m in ordinary.members} == {"t[0,1]", "t[1,0]"}
    assert len(ordinary.levi.positive_roots) == 0
    assert ordinary.representative == min(
        ordinary.members, key=lambda w: (length(GL2, w), w.translation, w.finite)
    )


def test_straight_classes_gl3():
    classes = straight_classes((1, 0, 0), GL3, SID3)
    assert [c.newton.nu for c in classes] == [
        (F(1, 3), F(1, 3), F(1, 3)),
        (F(1, 2), F(1, 2), F(0)),
        (F(1), F(0), F(0)),
    ]
    assert [len(c.members) for c in classes] == [1, 3, 3]
    for c in classes:
        assert all(is_straight(GL3, SID3, m) for m in c.members)
        assert all(newton_point(GL3, SID3, m)[1] == c.newton for m in c.members)


def test_class_count_equals_b_set():
    for rd, mu, sigma in [
        (GL2, (1, 0), SID2),
        (GL3, (1, 1, 0), SID3),
        (GSP4, (1, 1, 1), sigma_identity(GSP4)),
    ]:
        assert len(straight_classes(mu, rd, sigma)) == len(b_set(mu, rd, sigma))


def test_b_set_gl2_pinned():
    points = b_set((1, 0), GL2, SID2)
    assert {(p.nu, p.kappa) for p in points} == {
        ((F(1, 2), F(1, 2)), (1,)),
        ((F(1), F(0)), (1,)),
    }
    assert basic_point((1, 0), GL2, SID2).nu == (F(1, 2), F(1, 2))


def test_b_set_central_is_single_basic():
    points = b_set((1, 1), GL2, SID2)
    assert len(points) == 1
    assert points[0].nu == (F(1), F(1))


def test_b_set_gsp4():
    points = b_set((1, 1, 1), GSP4, sigma_identity(GSP4))
    assert sorted(p.nu for p in points) == [
        (F(1, 2), F(1, 2), F(1)),
        (F(1), F(1, 2), F(1)),
        (F(1), F(1), F(1)),
    ]


def test_b_set_gl5_is_the_slope_chain():
    gl5 = build_root_datum({"preset": "GL", "n": 5})
    points = b_set((1, 0, 0, 0, 0), gl5, sigma_identity(gl5))
    slopes = sorted(p.nu for p in points)
    assert slopes == [
        tuple([F(1, 5)] * 5),
        tuple([F(1, 4)] * 4 + [F(0)]),
        tuple([F(1, 3)] * 3 + [F(0)] * 2),
        tuple([F(1, 2)] * 2 + [F(0)] * 3),
        (F(1), F(0), F(0), F(0), F(0)),
    ]
    # a totally ordered Newton poset
    for p in points:
        for q in points:
            assert dominance_leq(p.nu, q.nu, gl5, integral=False) or dominance_leq(
                q.nu, p.nu, gl5, integral=False
            )


def test_b_set_non_minuscule_gl3():
    points = b_set((2, 1, 0), GL3, SID3)
    assert sorted(p.nu for p in points) == [
        (F(1), F(1), F(1)),
        (F(3, 2), F(3, 2), F(0)),
        (F(2), F(1, 2), F(1, 2)),
        (F(2), F(1), F(0)),
    ]


def test_b_set_bounded_by_mu_bar_with_max_for_identity():
    for rd, mu, sigma in [(GL3, (1, 0, 0), SID3), (GSP4, (1, 1, 1), sigma_identity(GSP4))]:
        bar = mu_bar(mu, rd, sigma)
        points = b_set(mu, rd, sigma)
        for p in points:
            assert dominance_leq(p.nu, bar, rd, integral=False)
        assert tuple(bar) in {p.nu for p in points}
        pairs = {(p.nu, p.kappa) for p in points}
        assert len(pairs) == len(points)


def test_adlv_nonempty_examples():
    points = b_set((1, 0), GL2, SID2)
    basic = basic_point((1, 0), GL2, SID2)
    for level in (None, ParahoricLevel.iwahori(), make_level(GL2, [1])):
        assert adlv_nonempty((1, 0), basic, GL2, SID2, level)
    fake = NewtonPoint((F(2), F(-1)), 1, (1,))
    assert not adlv_nonempty((1, 0), fake, GL2, SID2)
    wrong_kappa = NewtonPoint(points[0].nu, points[0].denominator, (0,))
    assert not adlv_nonempty((1, 0), wrong_kappa, GL2, SID2)


def test_adlv_level_independent():
    mu = (1, 0, 0)
    points = b_set(mu, GL3, SID3)
    levels = [ParahoricLevel.iwahori()]
    n_gens = len(iwahori_generators(GL3))
    for k in range(1, n_gens):
        for subset in itertools.combinations(range(n_gens), k):
            try:
                levels.append(make_level(GL3, subset, SID3))
            except AffineWeylError:
                continue
    for p in points:
        answers = {adlv_nonempty(mu, p, GL3, SID3, lvl) for lvl in levels}
        assert answers == {True}


def test_pi1_sigma_invariants():
    assert pi1_sigma_invariants(GL3, SID3).describe() == "Z"
    pgl3 = build_root_datum({"preset": "PGL", "n": 3})
    assert pi1_sigma_invariants(pgl3, sigma_identity(pgl3)).describe() == "Z/3"
    assert pi1_sigma_invariants(pgl3, sigma_from_name(pgl3, "flip")).describe() == "1"
    sl3 = build_root_datum({"preset": "SL", "n": 3})
    assert pi1_sigma_invariants(sl3, sigma_from_name(sl3, "flip")).describe() == "1"
    # the flip inverts the determinant class, so nothing nontrivial is fixed
    assert pi1_sigma_invariants(GL4, sigma_from_name(GL4, "flip")).describe() == "1"


def _finite_weyl_subgroup(levi):
    mats = {identity_element(levi).finite}
    gens = [finite_reflection(levi, i).finite for i in range(levi.semisimple_rank)]
    frontier = list(mats)
    from affweyl.linalg import mat_mul

    while frontier:
        nxt = []
        for m in frontier:
            for g in gens:
                c = mat_mul(m, g)
                if c not in mats:
                    mats.add(c)
                    nxt.append(c)
        frontier = nxt
    return mats


def test_straight_elements_live_in_their_levi_with_length_zero():
    cases = [
        (GL2, (1, 0), SID2),
        (GL3, (1, 0, 0), SID3),
        (GL3, (1, 1, 0), SID3),
        (GSP4, (1, 1, 1), sigma_identity(GSP4)),
    ]
    for rd, mu, sigma in cases:
        for cls in straight_classes(mu, rd, sigma):
            for w in cls.members:
                nu_raw, _ = newton_point(rd, sigma, w)
                levi = levi_datum(nu_raw, rd)
                assert w.finite in _finite_weyl_subgroup(levi)
                assert length(levi, w) == 0


def test_components_bound_basic_gl2():
    basic = basic_point((1, 0), GL2, SID2)
    report = components_bound_report((1, 0), basic, GL2, SID2)
    assert len(report.witnesses) == 1
    wit = report.witnesses[0]
    assert format_element(GL2, wit.element) == "t[1,0]*s1"
    assert len(wit.levi.positive_roots) == 1
    assert wit.lambda_w == (0, 1)
    assert not wit.central_in_levi
    assert wit.pi1_sigma is not None and wit.pi1_sigma.describe() == "Z"
    assert wit.marker is None


def test_components_bound_ordinary_gl2():
    points = b_set((1, 0), GL2, SID2)
    ordinary = next(p for p in points if p.nu == (F(1), F(0)))
    report = components_bound_report((1, 0), ordinary, GL2, SID2)
    assert {format_element(GL2, w.element) for w in report.witnesses} == {"t[0,1]", "t[1,0]"}
    for wit in report.witnesses:
        assert len(wit.levi.positive_roots) == 0
        assert wit.central_in_levi
        assert wit.marker == DISCRETE_MARKER
        assert wit.pi1_sigma is None


def test_components_bound_central_mu():
    point = b_set((1, 1), GL2, SID2)[0]
    report = components_bound_report((1, 1), point, GL2, SID2)
    assert len(report.witnesses) == 1
    assert report.witnesses[0].element == translation_element((1, 1), GL2)
    assert report.witnesses[0].marker == DISCRETE_MARKER


def test_components_bound_rejects_foreign_point():
    fake = NewtonPoint((F(2), F(0)), 1, (1,))
    with pytest.raises(AffineWeylError):
        components_bound_report((1, 0), fake, GL2, SID2)


def test_lift_chain_pairings_are_one():
    mu = (1, 1, 0, 0)
    sid4 = sigma_identity(GL4)
    basic = basic_point(mu, GL4, sid4)
    report = components_bound_report(mu, basic, GL4, sid4)
    for wit in report.witnesses:
        # re-walk the recorded chain and confirm each subtraction is a
        # reflection with pairing one
        cur = tuple(report.mu)
        for coroot in wit.lift_chain:
            idx = GL4.simple_coroots.index(tuple(coroot))
            assert pairing(cur, GL4.simple_roots[idx]) == 1
            cur = tuple(a - b for a, b in zip(cur, coroot))
        assert cur == wit.lambda_w


def test_newton_denominator_divides_twist_order():
    for rd, mu, sigma in [(GL3, (1, 0, 0), SID3), (GSP4, (1, 1, 1), sigma_identity(GSP4))]:
        for cls in straight_classes(mu, rd, sigma):
            from affweyl.straight_newton import twisted_power

            m, _ = twisted_power(rd, sigma, cls.representative)
            assert m % cls.newton.denominator == 0
