import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from anncat import (Bimodule, FiniteRing, FormatError, InvalidOrderError, InvalidStructureError,
                    cyclic_quotient_bimodule, make_bimodule, make_cyclic_ring, make_product_ring, regular_bimodule,
                    validate_bimodule, validate_ring)
from anncat.algebra import group_coordinates


def test_cyclic_ring_tables():
    R = make_cyclic_ring(2)
    assert R.add.tolist() == [[0, 1], [1, 0]]
    assert R.mul.tolist() == [[0, 0], [0, 1]]
    R3 = make_cyclic_ring(3)
    assert R3.add[2, 2] == 1 and R3.mul[2, 2] == 1


def test_cyclic_ring_order_one_rejected():
    with pytest.raises(InvalidOrderError):
        make_cyclic_ring(1)


def test_product_ring():
    Z2 = make_cyclic_ring(2)
    P = make_product_ring(Z2, Z2)
    assert P.n == 4
    assert P.mul[1 * 2 + 0, 0 * 2 + 1] == 0
    assert P.one == 3
    Z6 = make_product_ring(Z2, make_cyclic_ring(3))
    assert Z6.n == 6 and validate_ring(Z6).ok
    # (1,1) generates additively, so the product is cyclic
    orbit = {0}
    x = 0
    for _ in range(6):
        x = int(Z6.add[x, Z6.one])
        orbit.add(x)
    assert len(orbit) == 6


@pytest.mark.parametrize("n", range(2, 9))
def test_cyclic_rings_validate(n):
    R = make_cyclic_ring(n)
    assert validate_ring(R).ok
    assert validate_bimodule(R, regular_bimodule(R)).ok


def test_products_validate():
    Z2, Z3, Z4 = (make_cyclic_ring(n) for n in (2, 3, 4))
    for a, b in [(Z2, Z2), (Z2, Z3), (Z2, Z4)]:
        P = make_product_ring(a, b)
        assert validate_ring(P).ok
        assert validate_bimodule(P, regular_bimodule(P)).ok


def test_ring_missing_inverse():
    rep = validate_ring({"order": 2, "add": [[0, 1], [1, 1]], "mul": [[0, 0], [0, 1]]})
    assert "add-inverse" in rep.laws()
    v = rep.violations[rep.laws().index("add-inverse")]
    assert v.witness == (1,) and "no additive inverse for 1" in v.message


def test_ring_unit_violated():
    rep = validate_ring({"order": 2, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 0]]})
    assert rep.laws() == ["mul-identity"]
    assert "unit axiom violated" in rep.violations[0].message and rep.violations[0].witness == (1,)


def test_ring_format_errors():
    with pytest.raises(FormatError) as e:
        validate_ring({"order": 2, "add": [[0, 1]], "mul": [[0, 0], [0, 1]]})
    assert e.value.location == "add"
    with pytest.raises(FormatError) as e:
        validate_ring({"order": 2, "add": [[0, 1], [1, 0]], "mul": [[0, 0], [0, 2]]})
    assert e.value.location == "mul"
    with pytest.raises(FormatError):
        validate_ring({"add": [[0]]})


def test_ring_constructor_rejects_invalid():
    with pytest.raises(InvalidStructureError):
        FiniteRing([[0, 1], [1, 1]], [[0, 0], [0, 1]])


def test_ring_json_roundtrip():
    R = make_product_ring(make_cyclic_ring(2), make_cyclic_ring(3))
    assert FiniteRing.from_json(R.to_json()) == R


def test_noncommutative_ring_accepted():
    # upper triangular 2x2 matrices over Z/2: entries (a, b, d) -> index 4a + 2b + d
    def enc(a, b, d):
        return 4 * a + 2 * b + d

    els = [(a, b, d) for a in range(2) for b in range(2) for d in range(2)]
    add = [[enc((x[0] + y[0]) % 2, (x[1] + y[1]) % 2, (x[2] + y[2]) % 2) for y in els] for x in els]
    mul = [[enc(x[0] * y[0] % 2, (x[0] * y[1] + x[1] * y[2]) % 2, x[2] * y[2] % 2) for y in els] for x in els]
    R = FiniteRing(add, mul)
    assert R.one == enc(1, 0, 1)
    assert not np.array_equal(R.mul, R.mul.T)
    assert validate_bimodule(R, regular_bimodule(R)).ok


def test_regular_bimodule_examples():
    Z2 = make_cyclic_ring(2)
    M = regular_bimodule(Z2)
    assert M.left[1, 1] == 1 and M.right[1, 1] == 1
    Z3 = make_cyclic_ring(3)
    assert regular_bimodule(Z3).left[2, 2] == 1
    P = make_product_ring(Z2, Z2)
    assert regular_bimodule(P).left[2, 1] == 0


def test_bimodule_law_d_violation():
    Z2 = make_cyclic_ring(2)
    rep = validate_bimodule(Z2, {"invariant_factors": [2], "left_action": [[0, 0], [0, 0]],
                                 "right_action": [[0, 0], [0, 1]]})
    assert "d" in rep.laws()
    v = rep.violations[rep.laws().index("d")]
    assert "1u=u" in v.message and v.witness == (1,)


def test_quotient_bimodule_over_z4():
    Z4 = make_cyclic_ring(4)
    M = cyclic_quotient_bimodule(Z4, 2)
    assert validate_bimodule(Z4, M).ok
    assert M.left[3, 1] == 1 and M.left[2, 1] == 0


def test_noncyclic_module():
    Z2 = make_cyclic_ring(2)
    act = [[0, 0, 0, 0], [0, 1, 2, 3]]
    M = make_bimodule(Z2, invariant_factors=[2, 2], left_action=act, right_action=np.array(act).T.tolist())
    assert M.m == 4 and M.factors == [2, 2]


def test_bimodule_json_roundtrip():
    Z4 = make_cyclic_ring(4)
    M = cyclic_quotient_bimodule(Z4, 2)
    assert Bimodule.from_json(Z4, M.to_json()) == M
    assert Bimodule.from_json(Z4, {"regular": True}) == regular_bimodule(Z4)


def test_bimodule_format_error():
    Z2 = make_cyclic_ring(2)
    with pytest.raises(FormatError):
        validate_bimodule(Z2, {"invariant_factors": [2], "left_action": [[0, 0]], "right_action": [[0, 0], [0, 1]]})


@given(st.lists(st.sampled_from([2, 3, 4, 6]), min_size=1, max_size=3))
def test_group_coordinates_recover_order(factors):
    from anncat.algebra import _group_from_factors
    add, _ = _group_from_factors(factors)
    inv, coords = group_coordinates(add)
    assert int(np.prod(inv)) == int(np.prod(factors))
    assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
    # coords is an isomorphism: additive and injective
    m = add.shape[0]
    keys = {tuple(c) for c in coords}
    assert len(keys) == m
    for a in range(m):
        for b in range(m):
            assert np.array_equal((coords[a] + coords[b]) % inv, coords[add[a, b]])
