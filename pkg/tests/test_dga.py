import pytest

from qfuzzy import dga
from qfuzzy.freealg import substitute
from qfuzzy.scalars import ONE, Q, QH, Scalar, mu

B = dga.omega_bqsu2()
C = dga.omega_cqsu2()
U = dga.omega_uqsu2()


def gens(gp, names):
    return [gp.gen(x) for x in names]


def test_d_of_braided_determinant():
    al, be, ga, de = gens(B, dga.FUNCS_B)
    assert B.d(al * de - Q * Q * ga * be).is_zero()


def test_ec_squared_delta():
    ec = B.gen("e_c")
    de = B.gen("δ")
    assert (ec * ec * de).is_zero()
    assert (ec * (ec * de)).is_zero()


@pytest.mark.parametrize("top,bottom", [("α", "β"), ("γ", "δ")])
def test_d_matches_matrix_formula(top, bottom):
    ea, eb, ed = gens(B, ["e_a", "e_b", "e_d"])
    x, y = B.gen(top), B.gen(bottom)
    m = mu()
    want = m.inverse() * ((Q - 1) * (x * ea - Q.inverse() * (x * ed)) + m * (y * eb))
    assert B.d(x) == want


@pytest.mark.parametrize("gp", [B, C, U], ids=["bqsu2", "cqsu2", "uqsu2"])
def test_d_of_one_and_d_squared(gp):
    assert gp.d(ONE).is_zero()
    assert gp.d_squared_check() == []


@pytest.mark.parametrize("gp", [B, C, U], ids=["bqsu2", "cqsu2", "uqsu2"])
def test_leibniz_samples(gp):
    assert gp.leibniz_check(samples=50, seed=1) == []


@pytest.mark.parametrize("gp", [B, C, U], ids=["bqsu2", "cqsu2", "uqsu2"])
def test_confluent_to_degree_four(gp):
    assert gp.check_local_confluence(4) == []


def test_cqsu2_determinant_constant():
    a, b, c, d = gens(C, dga.FUNCS_C)
    assert C.d(a * d - Q.inverse() * b * c).is_zero()


def test_cqsu2_dt_formula_row():
    for name, want in dga.dt_formula(C, "row").items():
        assert C.d(C.gen(name)) == C.normalize(want)


def test_cqsu2_dt_formula_column_fails():
    bad = [n for n, w in dga.dt_formula(C, "column").items() if C.d(C.gen(n)) != C.normalize(w)]
    assert bad


def test_maurer_cartan_and_rank():
    assert dga.maurer_cartan_check(C) == []
    assert dga.mc_rank(C) == [4, 4, 4]


def test_lambda_hat():
    assert dga.lambda_hat() == QH * (1 - QH.inverse()) ** 2


def test_dK_K():
    K = U.gen("K")
    lh = dga.lambda_hat()
    res = U.d(K) * K - (1 + lh) * (K * U.d(K)) - lh * (K * K * U.theta)
    assert res.is_zero()


def test_ea_K_Kinv():
    ea, K, Ki = gens(U, ["e_a", "K", "K⁻¹"])
    assert ea * K * Ki == ea


def test_localization_coefficient():
    assert dga.localization_c() == Q.inverse() * (Q - Q.inverse()) ** 2


def test_localization_images_kill_hand_relations():
    imgs = dga.localization_images(U.p)
    for rel in dga.hand_bimodule_relations(B.gens()):
        assert U.normalize(substitute(rel, imgs, U.p)).is_zero()


def test_eq9_crosscheck():
    assert dga.eq9_crosscheck("quantum-group") == []
    assert dga.eq9_crosscheck("hecke") != []


def test_trace_constraint_ratio():
    rep = dga.trace_constraint_check(B)
    assert rep.ok and rep.constraint_nonzero
    assert rep.ratio == Q * Q / (Q + 1)


def test_qfuzzy_calculus_not_confluent():
    # the two-sided quotient is not confluent; recorded as a known defect
    assert dga.omega_qfuzzy().check_local_confluence(3) != []


def test_theta_is_trace_of_forms():
    ea, ed = gens(B, ["e_a", "e_d"])
    assert B.theta == ea + ed
    assert B.sigma == mu().inverse()
    assert U.sigma == Scalar.coerce(1)
