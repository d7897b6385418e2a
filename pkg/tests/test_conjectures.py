import json

import pytest

from golden import (ALTERNANT_6_HIGH, NABLA_6_AT_411, SIGMA_41, T_41, T_RHO)
from hookharm import conjectures as C
from hookharm.partitions import Hook, hooks_of
from hookharm.symfunc import (SymFunc, TensorSF, length_restrict, parse_schur_sum, parse_tensor,
                              tensor_coeff)


def _statuses(vs):
    return {v.status for v in vs}


def _key_hook(key):
    return Hook.from_partition(tuple(int(c) for c in key))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_modules_core(n):
    assert _statuses(C.check_conj_modules(n)) == {C.VERIFIED}


def test_modules_full_data_exceeds_nabla_at_column():
    # at n = 4 the column hook carries one term outside the length <= 2 part
    S = C.module_S(4, 0, 3)
    extra = S - C.nabla_S(0, 3)
    assert extra == parse_tensor("s_{111} ⊗ s_{1111}")


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_t_zero(n):
    assert _statuses(C.check_t0(n)) == {C.VERIFIED}


# the one-set identity fails for the column hook; these differences were
# computed by the module engine and are recorded in the decision log
K1_COLUMN_EXCESS = {
    2: "1 ⊗ s_{2}",
    3: "1 ⊗ s_{3} + s_{1} ⊗ s_{21}",
    4: "1 ⊗ s_{4} + (s_{1} + s_{2}) ⊗ s_{31} + s_{2} ⊗ s_{22} + s_{3} ⊗ s_{211}",
}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k1_identity(n):
    for h in hooks_of(n):
        v = C.check_k1_identity(n, h.a)
        if h.a >= 1:
            assert v.ok, v.line()
        else:
            assert v.status == C.REFUTED
            assert v.witness == parse_tensor(K1_COLUMN_EXCESS[n])


@pytest.mark.parametrize("n", [2, 3, 4])
def test_skew(n):
    assert _statuses(C.check_skew(n)) == {C.VERIFIED}


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_skew_symbolic(n):
    assert _statuses(C.check_skew_symbolic(n)) == {C.VERIFIED}


def test_delta_e1_small_example():
    from hookharm.macdonald import delta, shat, shat_hook
    lhs = delta(SymFunc.term("s", (1,)), shat((3,)))
    assert lhs == shat_hook(0, 2) + shat_hook(1, 1) + shat_hook(2, 0)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_hook_components(n):
    for h in hooks_of(n):
        assert C.check_hook_components(n, h.a).ok


@pytest.mark.parametrize("n", [2, 3, 4])
def test_length(n):
    for h in hooks_of(n):
        v = C.check_length(n, h.a)
        assert v.ok, v.line()


def test_length_example():
    # rho = 211 = (1|2): <S, s_31> = s_b = s_2
    S = C.module_S(4, 1, 2)
    assert tensor_coeff(S, (3, 1)) == SymFunc.term("s", (2,))
    assert tensor_coeff(C.module_S(4, 2, 1), (3, 1)) == SymFunc.term("s", (1,))


def test_reconstruct_core():
    for a in (1, 2, 3):
        A, v = C.reconstruct_alternant(4, a)
        assert v.ok
        assert A == C.alternant(C.module_S(4, a, 3 - a), 4)
    with pytest.raises(ValueError):
        C.reconstruct_alternant(4, 0)


@pytest.mark.parametrize("key", ["6", "51", "411", "3111", "21111"])
def test_reconstruct_size_six(key):
    h = _key_hook(key)
    if h.a < 1:
        pytest.skip("column hook is outside the reconstruction range")
    N = C.nabla_S(h.a, h.b)
    assert tensor_coeff(N, (4, 1, 1)) == parse_schur_sum(NABLA_6_AT_411[key])
    A, v = C.reconstruct_alternant(6, h.a, compare=False)
    assert v.status == C.SKIPPED
    low = C.length_restrict_sf(C.alternant(N, 6), 2)
    assert A == parse_schur_sum(ALTERNANT_6_HIGH[key]) + low


@pytest.mark.parametrize("key", sorted(T_RHO, key=lambda k: (sum(map(int, k)), k)))
def test_t_rho_tables(key):
    h = _key_hook(key)
    v, T = C.e_positivity(h.n, h.a)
    assert v.ok, v.line()
    assert T == parse_tensor(T_RHO[key], inner="e")


def test_t_41_display():
    # GL-lengths in S_41 stay below 4, so three sets of variables suffice
    S = C.module_S(5, 3, 1, 3)
    T = C.at_one_plus(S).to_inner_basis("e")
    assert T == parse_tensor(T_41, inner="e")


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivariate(n):
    vs = [C.check_trivariate(n, a) for a in sorted({0, 1, n - 1})]
    assert _statuses(vs) == {C.VERIFIED}


def test_observed_shift():
    for n in (1, 2, 3):
        shift, _ = C.check_observed(n)
        assert shift.ok, shift.line()


def test_observed_alternant_is_refuted():
    # the second observed identity fails from n = 2 on; the witness is
    # recorded in the decision log
    _, alt = C.check_observed(3)
    assert alt.status == C.REFUTED
    assert alt.witness


@pytest.mark.parametrize("n", [2, 3, 4])
def test_sigma(n):
    for h in hooks_of(n):
        for d in range(n):
            sg, v = C.sigma_components(n, h.a, d)
            assert v.ok, v.line()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sigma_41(d):
    sg, v = C.sigma_components(5, 3, d)
    assert v.ok
    assert sg == parse_tensor(SIGMA_41[d])


def test_sigma_formula_instance():
    sg, _ = C.sigma_components(4, 1, 2)
    assert sg == C.sigma_formula(4, 2)


# mutation: one perturbed multiplicity must flip each check ----------------------------

def _faulted(kind, key, delta, fn):
    with C.inject_fault(kind, *key, delta=delta):
        return fn()


def test_mutation_modules():
    delta = C.default_fault(3, 1)
    vs = _faulted("S", (3, 1, 1), delta, lambda: C.check_conj_modules(3))
    bad = [v for v in vs if not v.ok]
    assert len(bad) == 1 and bad[0].params["a"] == 1
    assert bad[0].witness == delta


def test_mutation_t0_and_skew_symbolic():
    delta = C.default_fault(3, 0)
    vs = _faulted("N", (0, 2), delta, lambda: C.check_t0(3) + C.check_skew_symbolic(4))
    assert C.REFUTED in _statuses(vs[:3])
    assert vs[3].status == C.REFUTED


@pytest.mark.parametrize("name,n,a", [
    ("k1", 3, 1), ("skew", 3, 0), ("hook-components", 3, 1), ("length", 3, 1),
    ("e-positivity", 3, 1), ("trivariate", 3, 2), ("observed", 3, 0),
])
def test_mutation_module_side(name, n, a):
    b = n - 1 - a
    # a GL-side of length one survives the e_1-skewing in the skew check
    delta = C.default_fault(n, a, outer_len=1 if name == "skew" else None)
    vs = _faulted("S", (n, a, b), delta, lambda: C.run(name, n, a if name not in ("skew", "observed") else None))
    assert C.REFUTED in _statuses(vs)
    assert all(v.witness for v in vs if v.status == C.REFUTED)


def test_mutation_reconstruct_and_sigma():
    delta = C.default_fault(4, 1, inner=(1,) * 4)
    vs = _faulted("S", (4, 1, 2), delta, lambda: C.run("reconstruct", 4, 1))
    assert vs[0].status == C.REFUTED
    delta = C.default_fault(4, 1, outer_len=2)
    vs = _faulted("S", (4, 1, 2), delta, lambda: C.run("sigma", 4, 1, 2))
    assert vs[0].status == C.REFUTED


def test_faults_are_scoped():
    with C.inject_fault("S", 3, 1, 1, delta=C.default_fault(3, 1)):
        pass
    assert _statuses(C.check_conj_modules(3)) == {C.VERIFIED}


# verdict plumbing ------------------------------------------------------------------

def test_verdict_json_and_log(tmp_path):
    vs = C.run("skew", 3)
    obj = vs[0].to_json()
    assert set(obj) <= {"name", "params", "status", "witness", "seconds"}
    assert obj["status"] == "verified" and "witness" not in obj
    path = C.write_log(vs, tmp_path / "log.json")
    again = C.write_log(C.run("skew", 3), tmp_path / "log2.json")
    assert path.read_bytes() == again.read_bytes()
    assert json.loads(path.read_text())[0]["name"] == obj["name"]


def test_refuted_verdict_has_witness():
    v = C.check_k1_identity(2, 0)
    assert v.status == C.REFUTED
    assert "witness" in v.to_json()
    with pytest.raises(ValueError):
        C.run("nonsense", 3)


# larger instances --------------------------------------------------------------------

@pytest.mark.extended
@pytest.mark.parametrize("name", ["skew", "hook-components", "length", "e-positivity", "sigma"])
def test_size_five_module_checks(name):
    assert _statuses(C.run(name, 5)) == {C.VERIFIED}


@pytest.mark.extended
def test_reconstruct_size_five():
    for a in (1, 2, 3, 4):
        _, v = C.reconstruct_alternant(5, a, compare=True)
        assert v.ok, v.line()


def test_length_restrict_of_full_matches_k2():
    S = C.module_S(4, 1, 2)
    assert length_restrict(S, 2) == C.module_S(4, 1, 2, 2)
    assert isinstance(S, TensorSF)
