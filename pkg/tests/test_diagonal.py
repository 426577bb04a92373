import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hyperxor import (
    AlgebraSignature,
    DiagonalCoords,
    MultiVector,
    build_T,
    check_diagonal_conditions,
    equals_within,
    fwht_in_place,
    from_diagonal,
    hadamard_entry,
    hadamard_matrix,
    idempotents,
    invert,
    mul_diagonal,
    mul_naive,
    preset,
    tables,
    to_diagonal,
)
from hyperxor.diagonal import random_element, require_diagonal
from hyperxor.errors import CapacityError, DomainError, NonInvertibleError, UnsupportedSignatureError
from oracles import sylvester
from strategies import diagonalizable


@pytest.mark.parametrize("name,failed,witness", [
    ("dual", "nonzero_squares", "s(1,1)=0"),
    ("cl(0,1)", "square_root", "s(1,1)=-1 has no real square root"),
    ("cl(2,0)", "commutative", "s(1,2)=+1 != s(2,1)=-1"),
    ("cl(1,1)", "commutative", "s(1,2)=+1 != s(2,1)=-1"),
    ("quaternion", "commutative", "s(1,2)=+1 != s(2,1)=-1"),
    ("complex", "square_root", "s(1,1)=-1 has no real square root"),
    ("bicomplex", "square_root", "s(1,1)=-1 has no real square root"),
])
def test_negative_verdicts(name, failed, witness):
    r = check_diagonal_conditions(preset(name))
    assert not r.verdict
    assert r.failed == failed
    assert r.witness_text == witness
    assert r.to_json()["verdict"] is False


def test_anticommuting_large_uses_structural_witness():
    r = check_diagonal_conditions(preset("cl(6,6)"))
    assert not r.verdict and r.witness == (1, 2)


@pytest.mark.parametrize("n", range(0, 11))
def test_positive_verdicts(n):
    r = check_diagonal_conditions(preset(f"d({n})"))
    assert r.verdict and np.array_equal(r.nu, np.ones(1 << n))
    assert check_diagonal_conditions(preset(f"m({n})")).verdict
    assert check_diagonal_conditions(preset(f"m(0,{n})[complex]")).verdict


def test_single_unit_anticommuting_is_diagonal():
    # with one unit the commutation constant never applies
    assert check_diagonal_conditions(AlgebraSignature((1,), -1)).verdict


def test_check_capacity():
    with pytest.raises(CapacityError):
        check_diagonal_conditions(preset("d(21)"))


def test_hadamard():
    assert hadamard_matrix(1).tolist() == [[1, 1], [1, -1]]
    assert all(hadamard_entry(0, q) == 1 for q in range(64))
    for n in range(9):
        H = hadamard_matrix(n)
        assert np.array_equal(H, sylvester(n))
        assert np.array_equal(H @ H.T, (1 << n) * np.eye(1 << n, dtype=int))
    assert all(hadamard_entry(p, q) == sylvester(5)[p, q] for p, q in itertools.product(range(32), repeat=2))


def test_build_T_examples():
    assert np.array_equal(build_T(preset("d(1)")), [[1, 1], [1, -1]])
    assert np.allclose(build_T(preset("m(0,1)[complex]")), [[1, 1j], [1, -1j]])
    assert np.array_equal(build_T(preset("d(2)")), hadamard_matrix(2))
    with pytest.raises(UnsupportedSignatureError):
        build_T(preset("dual"))
    with pytest.raises(CapacityError):
        build_T(preset("d(11)"))


@given(diagonalizable(max_n=6))
def test_change_of_coords_identity_exact(sig):
    T = build_T(sig)
    s = tables(sig).s
    i = np.arange(sig.dim)
    assert np.all(T != 0)
    assert np.all(T[:, 0] == 1)
    assert np.array_equal(T * T, np.broadcast_to(np.diag(s), T.shape))
    lhs = s[None, :, :] * T[:, i[:, None] ^ i[None, :]]
    rhs = T[:, :, None] * T[:, None, :]
    assert np.array_equal(lhs, rhs)


@given(diagonalizable(max_n=8))
def test_T_unitary(sig):
    T = build_T(sig)
    assert np.max(np.abs(T.conj().T @ T - sig.dim * np.eye(sig.dim))) <= 1e-12


def test_fwht_in_place_examples(rng):
    v = np.zeros(16)
    v[0] = 1
    assert np.array_equal(fwht_in_place(v), np.ones(16))
    for n in range(13):
        w = rng.uniform(-1, 1, 1 << n)
        twice = fwht_in_place(fwht_in_place(w.copy()))
        assert np.max(np.abs(twice - (1 << n) * w)) <= 1e-9


@pytest.mark.parametrize("bad", [np.zeros(3), np.zeros((2, 2)), np.zeros(0), [1.0, 2.0]])
def test_fwht_rejects(bad):
    with pytest.raises(DomainError):
        fwht_in_place(bad)


def test_fwht_rejects_readonly():
    v = np.zeros(4)
    v.setflags(write=False)
    with pytest.raises(DomainError):
        fwht_in_place(v)


@given(diagonalizable(max_n=8), st.integers(0, 2**32))
def test_roundtrip_and_norm(sig, seed):
    x = MultiVector.random(sig, np.random.default_rng(seed))
    d = to_diagonal(x)
    assert equals_within(from_diagonal(d), x, 1e-9)
    ratio = np.sum(np.abs(d.coords) ** 2) / (sig.dim * np.sum(np.abs(x.coeffs) ** 2))
    assert abs(ratio - 1) <= 1e-9


def test_to_diagonal_of_one():
    for name in ("d(3)", "m(2)", "m(1,2)[complex]"):
        assert np.allclose(to_diagonal(MultiVector.one(preset(name))).coords, 1)


def test_from_diagonal_shape_and_reality():
    sig = preset("d(1)")
    with pytest.raises(DomainError):
        from_diagonal(DiagonalCoords(sig, np.ones(3)))
    with pytest.raises(DomainError):
        from_diagonal(DiagonalCoords(sig, np.array([1j, 0])))


def test_idempotents_of_hyperbolic_numbers():
    eps = idempotents(preset("d(1)"))
    assert [e.coeffs.tolist() for e in eps] == [[0.5, 0.5], [0.5, -0.5]]


@pytest.mark.parametrize("name", [f"d({n})" for n in range(9)] + [f"m({n})" for n in range(7)]
                         + ["m(1,2)[complex]"])
def test_idempotent_partition(name):
    sig = preset(name)
    eps = idempotents(sig)
    total = MultiVector.zero(sig)
    for p, e in enumerate(eps):
        total = total + e
        assert np.allclose(to_diagonal(e).coords, np.eye(sig.dim)[p], atol=1e-12)
        assert equals_within(mul_naive(e, e), e, 1e-10)
        q = (p * 7 + 3) % sig.dim
        if q != p:
            assert equals_within(mul_diagonal(e, eps[q]), MultiVector.zero(sig), 1e-12)
    assert equals_within(total, MultiVector.one(sig), 1e-10)


def test_idempotents_capacity():
    with pytest.raises(CapacityError):
        idempotents(preset("d(13)"))


@pytest.mark.parametrize("name", [f"d({n})" for n in range(11)] + [f"m({n})" for n in range(0, 11, 2)]
                         + ["m(0,10)[complex]", "m(3,4)[complex]", "split_complex"])
def test_engine_equivalence(name):
    sig = preset(name)
    rng = np.random.default_rng(sig.n)
    for _ in range(100 if sig.n <= 8 else 10):
        x, y = MultiVector.random(sig, rng), MultiVector.random(sig, rng)
        assert equals_within(mul_diagonal(x, y), mul_naive(x, y), 1e-8)
    assert equals_within(mul_diagonal(x, MultiVector.one(sig)), x, 1e-12)


def test_engine_backends_agree(backend, rng):
    sig = preset("m(1,3)[complex]")
    x, y = MultiVector.random(sig, rng), MultiVector.random(sig, rng)
    assert equals_within(mul_diagonal(x, y), mul_naive(x, y), 1e-12)


def test_mul_diagonal_requires_diagonal():
    sig = preset("dual")
    with pytest.raises(UnsupportedSignatureError):
        mul_diagonal(MultiVector.one(sig), MultiVector.one(sig))


def test_invert():
    sig = preset("d(3)")
    one = MultiVector.one(sig)
    assert equals_within(invert(one), one, 0)
    with pytest.raises(NonInvertibleError):
        invert(idempotents(sig)[0])
    rng = np.random.default_rng(3)
    for name in ("d(3)", "m(4)", "d(8)"):
        s = preset(name)
        for _ in range(10):
            x = MultiVector.random(s, rng)
            assert equals_within(mul_naive(x, invert(x)), MultiVector.one(s), 1e-8)


def test_random_element_positive(rng):
    sig = preset("d(3)")
    d = to_diagonal(random_element(sig, rng, positive=True)).coords
    assert np.all((d >= 0.5 - 1e-12) & (d <= 1.5 + 1e-12))


def test_report_caching_is_transparent():
    sig = preset("d(2)")
    assert require_diagonal(sig) is require_diagonal(sig)
    assert sig == preset("d(2)")
