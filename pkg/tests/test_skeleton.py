import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anncat import (AnnStructure, DomainError, SkeletalMorphism, Skeleton, apply_structure_coboundary,
                    apply_structure_coboundary_printed, check_ann_functor, check_structure, constraint_of,
                    enumerate_structures, interchange_v, make_cyclic_ring, mor_compose, mor_inverse, mor_prod,
                    mor_sum, random_cochain, random_pair, random_structure, regular_bimodule, verify_axioms)
from anncat.skeleton import AXIOMS, DERIVED, append_discrepancies, axiom_residuals, interchange_mismatches


def _m(k, r, u):
    return SkeletalMorphism(r, u, k)


def test_compose_identity(z3):
    k = Skeleton(AnnStructure.zero(*z3))
    assert mor_compose(_m(k, 2, 0), _m(k, 2, 1)) == _m(k, 2, 1)
    assert mor_compose(_m(k, 2, 1), _m(k, 2, 2)) == _m(k, 2, 0)


def test_compose_domain_error(z3):
    k = Skeleton(AnnStructure.zero(*z3))
    with pytest.raises(DomainError):
        mor_compose(_m(k, 1, 0), _m(k, 2, 0))


def test_prod_and_sum_examples(z2):
    k = Skeleton(AnnStructure.zero(*z2))
    assert mor_prod(_m(k, 1, 1), _m(k, 1, 1)) == _m(k, 1, 0)
    k3 = Skeleton(AnnStructure.zero(*regular_z3()))
    assert mor_sum(_m(k3, 1, 2), _m(k3, 2, 0)) == _m(k3, 0, 2)
    assert mor_inverse(_m(k3, 1, 2)) == _m(k3, 1, 1)


def regular_z3():
    R = make_cyclic_ring(3)
    return R, regular_bimodule(R)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_prod_functorial(n):
    R = make_cyclic_ring(n)
    M = regular_bimodule(R)
    k = Skeleton(AnnStructure.zero(R, M))
    g = np.array(list(itertools.product(range(n), repeat=6)))
    s, t, u, u2, v, v2 = (g[:, i] for i in range(6))
    lhs = mor_prod(mor_compose(_m(k, s, u), _m(k, s, u2)), mor_compose(_m(k, t, v), _m(k, t, v2)))
    rhs = mor_compose(mor_prod(_m(k, s, u), _m(k, t, v)), mor_prod(_m(k, s, u2), _m(k, t, v2)))
    assert lhs == rhs


def test_constraint_of_examples(z3, rng):
    R, M = z3
    zero = AnnStructure.zero(R, M)
    a = constraint_of("a_plus", zero, 1, 2, 2)
    assert (int(a.obj), int(a.val)) == (2, 0)
    f = AnnStructure(*(random_cochain(kd, R, M, rng) for kd in AnnStructure.KINDS))
    for x, y in itertools.product(range(3), repeat=2):
        both = mor_compose(constraint_of("c", f, x, y), constraint_of("c", f, y, x))
        assert int(both.obj) == (x + y) % 3
        assert int(both.val) == (f.eta(x, y) + f.eta(y, x)) % 3
    L = constraint_of("L", zero, 2, 1, 2)
    assert int(L.obj) == 0
    with pytest.raises(TypeError):
        constraint_of("c", zero, 1)


@given(st.integers(0, 2 ** 31))
def test_c_involution_is_rel4(seed):
    R, M = regular_z3()
    rng = np.random.default_rng(seed)
    f = AnnStructure(*(random_cochain(kd, R, M, rng) for kd in AnnStructure.KINDS))
    _, res = axiom_residuals(f, "c-involution")
    assert (not res.any()) == ("rel4" not in check_structure(f).failed_ids())


@pytest.mark.parametrize("name", ["z2", "z3", "z4", "v4"])
def test_zero_structure_commutes(name, request):
    R, M = request.getfixturevalue(name)
    assert verify_axioms(AnnStructure.zero(R, M), derived=True).ok


def test_eta_only_fails_a_diagram(z2):
    f = AnnStructure.from_arrays(*z2, eta={(1, 1): 1})
    rep = verify_axioms(f)
    assert not rep.ok
    assert rep.failures[0].witnesses
    assert check_structure(f).ok == rep.ok


def test_oracle_agrees_on_all_z2_candidates(z2):
    R, M = z2
    verdicts = []
    for xi, eta in itertools.product(range(2), repeat=2):
        f = AnnStructure.from_arrays(R, M, xi={(1, 1, 1): xi}, eta={(1, 1): eta})
        a, b = verify_axioms(f).ok, check_structure(f).ok
        assert a == b
        verdicts.append(a)
    assert verdicts == [True, False, False, False]


def test_interchange_zero_and_objects(z3):
    R, _ = z3
    zero = AnnStructure.zero(*z3)
    for x, y, z, t in itertools.product(range(3), repeat=4):
        v = interchange_v(zero, x, y, z, t)
        assert int(v.val) == 0
        assert int(v.obj) == R.add[R.add[x, y], R.add[z, t]] == R.add[R.add[x, z], R.add[y, t]]


def test_valid_structures_z3_pass_oracle_and_factorizations(z3):
    structs = list(enumerate_structures(*z3))
    assert len(structs) == 27
    for f in structs:
        assert verify_axioms(f, derived=True, cap=1).ok
        assert interchange_mismatches(f) == []


@settings(max_examples=10)
@given(st.integers(0, 2 ** 31))
def test_oracle_residuals_are_additive(seed):
    R = make_cyclic_ring(4)
    M = regular_bimodule(R)
    rng = np.random.default_rng(seed)
    f, g = (AnnStructure(*(random_cochain(kd, R, M, rng) for kd in AnnStructure.KINDS)) for _ in range(2))
    for name in list(AXIOMS) + list(DERIVED):
        a = axiom_residuals(f, name)[1]
        b = axiom_residuals(g, name)[1]
        assert np.array_equal(axiom_residuals(f + g, name)[1], M.add[a, b]), name


@given(st.integers(0, 2 ** 31), st.sampled_from([3, 4]))
def test_transport_is_an_ann_functor(seed, n):
    R = make_cyclic_ring(n)
    M = regular_bimodule(R)
    rng = np.random.default_rng(seed)
    f = random_structure(R, M, rng)
    p = random_pair(R, M, rng)
    g = apply_structure_coboundary(f, p)
    assert check_ann_functor(g, f, -p["mu"], -p["nu"]).ok


def test_printed_eta_transport_is_not_a_functor(z4):
    # a structure with eta(x,y) != eta(y,x) exposes the argument order
    R, M = z4
    rng = np.random.default_rng(3)
    seen = set()
    for _ in range(20):
        f = random_structure(R, M, rng)
        p = random_pair(R, M, rng)
        g = apply_structure_coboundary_printed(f, p)
        seen.update(check_ann_functor(g, f, -p["mu"], -p["nu"]).failed())
    assert "functor-c" in seen


def test_invalid_structure_fails_somewhere(z3, rng):
    R, M = z3
    f = AnnStructure(*(random_cochain(kd, R, M, rng) for kd in AnnStructure.KINDS))
    assert not verify_axioms(f).ok


def test_discrepancy_log_is_append_only(tmp_path):
    log = tmp_path / "d.jsonl"
    append_discrepancies(log, [{"b": 1, "a": 2}])
    append_discrepancies(log, [{"c": 3}])
    lines = log.read_text().splitlines()
    assert lines == ['{"a": 2, "b": 1}', '{"c": 3}']
    assert [json.loads(x) for x in lines][1] == {"c": 3}
