import json

import numpy as np
import pytest
from hypothesis import given

from hyperxor import (
    QUATERNION_TABLES,
    AlgebraSignature,
    MulTables,
    basis_product_oracle,
    count_squares,
    index,
    multiplier,
    preset,
    resolve,
    tables,
)
from hyperxor.errors import CapacityError, DomainError, UnknownPresetError
from oracles import unit_by_unit_product
from strategies import signatures

XOR4 = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]

# multiplier tables transcribed from the classical multiplication tables
GOLDEN_S = {
    "complex": [[1, 1], [1, -1]],
    "split_complex": [[1, 1], [1, 1]],
    "dual": [[1, 1], [1, 0]],
    "bicomplex": [[1, 1, 1, 1], [1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]],
    "cl(1,1)": [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, 1, -1], [1, 1, 1, 1]],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_S))
def test_golden_tables(name):
    t = tables(preset(name))
    assert t.s.tolist() == GOLDEN_S[name]
    dim = len(GOLDEN_S[name])
    assert t.r.tolist() == (XOR4 if dim == 4 else [[0, 1], [1, 0]])


def test_quaternion_golden_and_generated():
    assert QUATERNION_TABLES.r.tolist() == XOR4
    assert QUATERNION_TABLES.s.tolist() == [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]]
    assert tables(preset("quaternion")) == QUATERNION_TABLES


def test_quaternion_products_by_hand():
    q = preset("quaternion")
    # i j = k, j i = -k, k i = j, j k = i
    assert basis_product_oracle(q, 1, 2) == (1, 3)
    assert basis_product_oracle(q, 2, 1) == (-1, 3)
    assert basis_product_oracle(q, 3, 1) == (1, 2)
    assert basis_product_oracle(q, 2, 3) == (1, 1)


def test_multiplier_examples():
    q = preset("quaternion")
    assert multiplier(q, 1, 2) == 1 and multiplier(q, 2, 1) == -1
    assert multiplier(preset("dual"), 1, 1) == 0
    assert multiplier(preset("bicomplex"), 3, 3) == 1
    assert index(1, 2) == 3
    assert all(index(p, p) == 0 and index(p, 0) == p for p in range(64))


def test_oracle_examples():
    assert basis_product_oracle(preset("cl(1,1)"), 3, 3) == (1, 0)
    for name in ("complex", "dual", "quaternion", "d(3)"):
        assert basis_product_oracle(preset(name), 0, 0) == (1, 0)


@given(signatures(max_n=5))
def test_oracle_matches_formula_and_independent_oracle(sig):
    for p in range(sig.dim):
        assert multiplier(sig, p, 0) == 1
        for q in range(sig.dim):
            sign, idx = basis_product_oracle(sig, p, q)
            assert idx == p ^ q
            assert sign == multiplier(sig, p, q)
            assert (sign, idx) == unit_by_unit_product(sig.squares, sig.lam, p, q)


@given(signatures(max_n=5))
def test_table_properties(sig):
    t = tables(sig)
    s = t.s.astype(int)
    dim = sig.dim
    i = np.arange(dim)
    assert (s[:, 0] == 1).all() and (s[0, :] == 1).all()
    # associativity of the basis product, zeros included
    lhs = np.einsum("pq,pqt->pqt", s, s[(i[:, None] ^ i[None, :])])
    rhs = s[None, :, :] * s[i[:, None, None], i[None, :, None] ^ i[None, None, :]]
    assert np.array_equal(lhs, rhs)
    if sig.lam == 1:
        assert np.array_equal(s, s.T)
    if 0 not in sig.squares:
        assert (s != 0).all()
    if sig.lam == 1 and all(v == 1 for v in sig.squares):
        assert (s == 1).all()


def test_tables_both_backends_agree(backend):
    sig = AlgebraSignature((-1, 0, 1, -1, 1), -1)
    ref = np.array([[multiplier(sig, p, q) for q in range(32)] for p in range(32)])
    from hyperxor import kernels
    assert np.array_equal(kernels.sign_table(sig.n, sig.neg_mask, sig.zero_mask, True), ref)


def test_tables_capacity():
    with pytest.raises(CapacityError):
        tables(preset("d(13)"))


def test_multables_json_roundtrip():
    t = tables(preset("m(1,2)"))
    assert MulTables.from_json(json.loads(json.dumps(t.to_json()))) == t


@pytest.mark.parametrize("name,squares,lam,field", [
    ("bicomplex", (-1, -1), 1, "real"),
    ("d(3)", (1, 1, 1), 1, "real"),
    ("cl(1,1)", (-1, 1), -1, "real"),
    ("cl(2,0)", (1, 1), -1, "real"),
    ("cl(0,1)", (-1,), -1, "real"),
    ("m(2)", (1, 1), 1, "complex"),
    ("m(0)", (), 1, "complex"),
    ("m(1,2)[complex]", (1, -1, -1), 1, "complex"),
    ("M(0, 3)", (-1, -1, -1), 1, "real"),
    ("split-complex", (1,), 1, "real"),
])
def test_presets(name, squares, lam, field):
    sig = preset(name)
    assert (sig.squares, sig.lam, sig.field) == (squares, lam, field)


def test_unknown_preset():
    with pytest.raises(UnknownPresetError):
        preset("octonion")


def test_signature_validation():
    with pytest.raises(DomainError):
        AlgebraSignature((2,))
    with pytest.raises(DomainError):
        AlgebraSignature((1,), lam=0)
    with pytest.raises(DomainError):
        AlgebraSignature((1,), field="quaternionic")
    with pytest.raises(CapacityError):
        AlgebraSignature((1,) * 25)


def test_signature_json_file(tmp_path):
    sig = AlgebraSignature((1, -1, 0), -1, "complex")
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(sig.to_json()))
    assert resolve(str(path)) == sig
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "squares": [1]}))
    with pytest.raises(DomainError):
        resolve(str(bad))
    with pytest.raises(DomainError):
        resolve(str(tmp_path / "missing.json"))


def test_count_squares():
    assert count_squares(preset("m(0,3)")) == (4, 4, 0)
    assert count_squares(preset("d(4)")) == (16, 0, 0)
    assert count_squares(preset("m(2,1)")) == count_squares(preset("m(0,3)"))
    assert count_squares(preset("dual")) == (1, 0, 1)


def test_truncated():
    sig = preset("m(1,2)[complex]")
    assert sig.truncated(2) == AlgebraSignature((1, -1), 1, "complex")
