import pytest

from hopfqt.exactfield import CycloNumber, zeta
from hopfqt.grouptool import (
    ParameterError,
    abelian_decomposition,
    abelian_group,
    build_group,
    cyclic_group,
    enumerate_bicharacters,
    semidirect_pq,
)
from hopfqt.hopfcore import group_algebra
from hopfqt.bismash import build_bismash, make_A, make_B
from hopfqt.qtlab import (
    BraidingForm,
    TensorSquareElement,
    braiding_A0_construct,
    braiding_A_search,
    braiding_json,
    eta,
    hopf_images,
    no_qt_B_dual,
    qt_B_enumerate,
    qt_group_algebra_enumerate,
    r_from_bicharacter,
    r_matrix_json,
    t2_mul,
    unit_tensor,
    verify_coqt,
    verify_qt,
)


# ---------------------------------------------------------------------------
# verify_qt basics


def test_trivial_r_on_group_algebra_passes():
    H = group_algebra(cyclic_group(5), conductor=5)
    R = TensorSquareElement(H, unit_tensor(H))
    rep = verify_qt(H, R)
    assert rep.passed


def test_bicharacters_on_abelian_pass():
    G = cyclic_group(3)
    H = group_algebra(G, conductor=3)
    K = abelian_decomposition(G, range(3))
    for w in enumerate_bicharacters(K):
        R = r_from_bicharacter(H, K, w)
        assert verify_qt(H, R).passed
        if not w.is_trivial():
            assert len(R.entries) == 9


def test_nontrivial_bicharacter_fails_intertwiner_on_nonabelian():
    # t^2 is not 1 mod p, so only the trivial bicharacter is invariant
    G = semidirect_pq(7, 3, 2)
    H = group_algebra(G, conductor=7)
    K = abelian_decomposition(G, G.subgroup_closure([G.generators["a"]]))
    for w in enumerate_bicharacters(K):
        R = r_from_bicharacter(H, K, w)
        rep = verify_qt(H, R, mode="fast")
        if w.is_trivial():
            assert rep.passed
        else:
            assert not rep.passed and "intertwiner" in rep.failures


def test_r_from_bicharacter_inverse_is_inverted_values():
    G = cyclic_group(3)
    H = group_algebra(G, conductor=3)
    K = abelian_decomposition(G, range(3))
    w = next(x for x in enumerate_bicharacters(K) if not x.is_trivial())
    R = r_from_bicharacter(H, K, w)
    Rinv = r_from_bicharacter(H, K, w.inverse())
    assert t2_mul(H, R.entries, Rinv.entries) == unit_tensor(H)
    assert t2_mul(H, Rinv.entries, R.entries) == unit_tensor(H)


def test_zero_divisor_detected():
    # an idempotent tensor is its own square, never invertible
    G = cyclic_group(3)
    H = group_algebra(G, conductor=3)
    K = abelian_decomposition(G, range(3))
    from hopfqt.grouptool import idempotents
    e0 = idempotents(K)[0]
    entries = {}
    for i, ci in e0.items():
        for j, cj in e0.items():
            entries[(i, j)] = ci * cj
    rep = verify_qt(H, TensorSquareElement(H, entries), mode="fast")
    assert "invertible" in rep.failures


# ---------------------------------------------------------------------------
# group-algebra classification


GROUP_CASES = [
    ("gamma3", dict(p=7, q=3, m=2), 3),
    ("gamma4", dict(p=19, q=3, m=4), 1),
    ("gamma5", dict(p=7, q=3, m=2), 3),
    ("gamma6", dict(p=7, q=3, m=2, n=4), 3),
    ("beta3", dict(p=3, q=7, m=18), 1),
    ("beta4", dict(p=3, q=7, m=2), 7),
    ("beta5", dict(p=3, q=7, m=2), 1),
    ("beta6", dict(p=3, q=7, m=2, n=4), 49),
    ("beta7", dict(p=3, q=5), 25),
]


@pytest.mark.parametrize("fam,params,count", GROUP_CASES)
def test_group_algebra_classification(fam, params, count):
    G = build_group(fam, **params)
    res = qt_group_algebra_enumerate(G)
    assert len(res) == count
    assert res.oracle_equivalent
    assert any(w.is_trivial() for w, _ in res)


def test_group_algebra_survivor_passes_generic_verifier():
    # cross-check the certified fast path against the generic engine
    G = build_group("gamma5", p=7, q=3, m=2)
    res = qt_group_algebra_enumerate(G)
    from hopfqt.grouptool import largest_abelian_normal
    K = largest_abelian_normal(G).decomposition
    H = group_algebra(G, conductor=21)
    for w, _ in res:
        R = r_from_bicharacter(H, K, w)
        assert verify_qt(H, R).passed


def test_abelian_group_algebra_unconstrained():
    G = abelian_group([3, 3])
    res = qt_group_algebra_enumerate(G)
    assert len(res) == 81
    assert res.oracle_equivalent


# ---------------------------------------------------------------------------
# eta and the tau-twisted enumeration


def test_eta_values():
    mp = make_B(3, 7, 2, 1)
    a, b = mp.G.generators["a"], mp.G.generators["b"]
    assert eta(mp, a, b, 1) == zeta(7, -1)
    for h in range(0, 49, 5):
        for f in range(3):
            assert eta(mp, h, h, f).is_one()


def test_eta_is_bicharacter_on_G():
    mp = make_B(3, 7, 2, 1)
    G = mp.G
    for f in range(mp.F.order):
        for x in (1, 7, 8):
            for y in (1, 7, 9):
                for z in (2, 10):
                    assert eta(mp, G.mul(x, y), z, f) == \
                        eta(mp, x, z, f) * eta(mp, y, z, f)
                    assert eta(mp, x, G.mul(y, z), f) == \
                        eta(mp, x, y, f) * eta(mp, x, z, f)


def test_qt_B_counts_and_oracle():
    res0 = qt_B_enumerate(3, 7, 2, 0)
    assert len(res0) == 7 and res0.oracle_equivalent
    res1 = qt_B_enumerate(3, 7, 2, 1)
    assert len(res1) == 1 and res1.oracle_equivalent
    # the twisted coproduct is never cocommutative, so even the trivial
    # bicharacter fails: R = 1x1 is not among the survivors
    assert not any(w.is_trivial() for w, _ in res0)
    assert not any(w.is_trivial() for w, _ in res1)


def test_qt_B_members_have_small_left_image():
    res = qt_B_enumerate(3, 7, 2, 1)
    H = res[0][1].host
    for w, R in res:
        dim_l, dim_r, dim_alg = hopf_images(H, R)
        assert dim_l <= 49 and dim_r <= 49
        # support lies in the function-algebra idempotent span
        for (i, j) in R.entries:
            assert H.basis_gf(i)[1] == 0 and H.basis_gf(j)[1] == 0


# ---------------------------------------------------------------------------
# braidings on the sigma-twisted family


def test_braiding_A0_constructions_pass():
    for k in range(3):
        form = braiding_A0_construct(7, 3, 2, k)
        assert verify_coqt(form.host, form).passed


def test_braiding_A0_rejects_non_cube_root():
    with pytest.raises(ParameterError):
        braiding_A0_construct(7, 3, 2, zeta(9, 1))


def test_braiding_A0_j_zero_column():
    form = braiding_A0_construct(7, 3, 2, 1)
    H = form.host
    mp = H.mp
    G = mp.G
    b = G.generators["b"]
    # <e_h g^i, e_k # 1> = [h = 1][k = b^-i]
    for h in (0, 1, b):
        for i in range(3):
            for k in (0, b, G.power(b, -1)):
                v = form.value(H.gf_index(h, i), H.gf_index(k, 0))
                expect = h == 0 and k == G.power(b, -i)
                assert bool(v) == expect
                if expect:
                    assert v.is_one()


def test_braiding_search_counts():
    forms = braiding_A_search(7, 3, 2, 0)
    assert len(forms) == 3
    lams = sorted(repr(f.params[2]) for f in forms)
    # exactly the cube roots of unity
    for f in forms:
        assert (f.params[2] ** 3).is_one()
    assert braiding_A_search(7, 3, 2, 1) == []
    assert braiding_A_search(7, 3, 2, 2) == []


def test_braiding_search_matches_construction():
    forms = braiding_A_search(7, 3, 2, 0)
    built = [braiding_A0_construct(7, 3, 2, k) for k in range(3)]
    for f in forms:
        assert any(f.values == g.values for g in built)
    for g in built:
        assert any(f.values == g.values for f in forms)


def test_braiding_search_g0_g1_character_identity():
    # every found braiding satisfies phi^l(g0) = phi^l(g1); the searches at
    # l > 0 are empty so the identity holds vacuously there
    for l in (0, 1, 2):
        for f in braiding_A_search(7, 3, 2, l):
            g0, g1, _ = f.params
            mp = f.host.mp
            _, j0 = mp.G.states[g0]
            _, j1 = mp.G.states[g1]
            assert zeta(3, l * j0) == zeta(3, l * j1)


def test_coqt_trivial_form_on_function_algebra():
    # <x, y> = eps(x) eps(y) on the dual of a group algebra
    from hopfqt.hopfcore import dual_hopf
    H = dual_hopf(group_algebra(semidirect_pq(7, 3, 2), conductor=7))
    values = {}
    for i in range(H.dim):
        for j in range(H.dim):
            v = H.counit[i] * H.counit[j]
            if v:
                values[(i, j)] = v
    form = BraidingForm(H, values)
    assert verify_coqt(H, form).passed


def test_coqt_mutated_form_fails():
    form = braiding_A0_construct(7, 3, 2, 1)
    (i, j), v = next(iter(form.values.items()))
    bad_values = dict(form.values)
    bad_values[(i, j)] = v * zeta(3, 1)
    bad = BraidingForm(form.host, bad_values)
    assert not verify_coqt(form.host, bad, mode="fast").passed


# ---------------------------------------------------------------------------
# the no-go branches


def test_no_qt_on_B_duals():
    rep1 = no_qt_B_dual(3, 7, 2, 1)
    assert rep1.branch == "nonzero"
    assert rep1.candidates_checked == 3
    assert rep1.no_qt_on_support
    rep0 = no_qt_B_dual(3, 7, 2, 0)
    assert rep0.branch == "zero"
    assert rep0.nullspace_dim == 49
    assert rep0.support_condition_holds and rep0.annihilator_holds
    assert rep0.no_qt_on_support


# ---------------------------------------------------------------------------
# images and export


def test_hopf_images_cases():
    H = group_algebra(cyclic_group(3), conductor=3)
    R = TensorSquareElement(H, unit_tensor(H))
    assert hopf_images(H, R) == (1, 1, 1)
    G = cyclic_group(7)
    K = abelian_decomposition(G, range(7))
    H7 = group_algebra(G, conductor=7)
    w = next(x for x in enumerate_bicharacters(K) if x.exps[0][0] == 1)
    assert hopf_images(H7, r_from_bicharacter(H7, K, w)) == (7, 7, 7)


def test_json_exports():
    import json

    G = cyclic_group(3)
    H = group_algebra(G, conductor=3)
    K = abelian_decomposition(G, range(3))
    w = enumerate_bicharacters(K)[1]
    R = r_from_bicharacter(H, K, w)
    doc = json.loads(r_matrix_json(H, R, "k[Z3]"))
    assert doc["host"] == "k[Z3]" and doc["conductor"] == 3
    assert all(set(e) == {"i", "j", "num", "den"} for e in doc["entries"])
    form = braiding_A0_construct(7, 3, 2, 1)
    doc2 = json.loads(braiding_json(form, "A0(7,3)"))
    assert doc2["conductor"] == form.host.conductor
