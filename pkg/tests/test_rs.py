import itertools
import random

import pytest

from rackrepair.gf import GF
from rackrepair.rs import (
    CodeSpec,
    dual_codeword,
    dual_weights,
    encode,
    erasure_decode,
    poly_eval,
    weights_for_points,
)


def small_code(q=3, l=4, n=6, k=2, nbar=3, u=2, spread=1):
    field = GF(q, l)
    points = tuple(field.zeta ** (spread * i) for i in range(1, n + 1))
    return CodeSpec(field=field, n=n, k=k, eval_points=points, nbar=nbar, u=u)


def random_message(code, rng):
    return [code.field.random_element(rng) for _ in range(code.k)]


def test_codespec_validation():
    field = GF(3, 2)
    pts = tuple(field.zeta**i for i in range(1, 5))
    with pytest.raises(ValueError):
        CodeSpec(field, 4, 2, pts, nbar=3, u=2)  # n != nbar * u
    with pytest.raises(ValueError):
        CodeSpec(field, 4, 1, pts, nbar=2, u=2)  # k < u
    with pytest.raises(ValueError):
        CodeSpec(field, 4, 4, pts, nbar=2, u=2)  # k = n
    with pytest.raises(ValueError):
        CodeSpec(field, 4, 2, (pts[0],) * 4, nbar=2, u=2)  # repeated points


def test_node_indexing():
    code = small_code()
    assert code.node_index(1, 1) == 1
    assert code.node_index(2, 1) == 3
    assert code.node_index(3, 2) == 6
    assert code.rack_of(3) == (2, 1)
    assert code.rack_of(6) == (3, 2)
    with pytest.raises(ValueError):
        code.node_index(4, 1)
    with pytest.raises(ValueError):
        code.rack_of(7)


def test_encode_constants_and_identity():
    code = small_code()
    c = code.field.scalar(2)
    assert encode([c], code) == (c,) * code.n
    word = encode([code.field.zero, code.field.one], code)  # f(x) = x
    assert word == code.eval_points


def test_encode_degree_overflow():
    code = small_code()
    with pytest.raises(ValueError):
        encode([code.field.one] * (code.k + 1), code)


def test_dual_weights_hand_example():
    # A = {1, 2} over GF(3): lambda_1 = (1-2)^-1 = 2, lambda_2 = (2-1)^-1 = 1
    field = GF(3, 1)
    lam = weights_for_points((field.scalar(1), field.scalar(2)))
    assert [w.coeffs for w in lam] == [(2,), (1,)]


def test_dual_weights_single_point():
    field = GF(3, 2)
    lam = weights_for_points((field.zeta,))
    assert lam == (field.one,)  # empty product


def test_dual_weights_nonzero_and_product_formula():
    code = small_code()
    lam = dual_weights(code)
    for i, w in enumerate(lam):
        assert not w.is_zero()
        acc = code.field.one
        for j, b in enumerate(code.eval_points):
            if j != i:
                acc = acc * (code.eval_points[i] - b)
        assert w * acc == code.field.one


def test_duality_randomized_oracle():
    code = small_code()
    rng = random.Random(31)
    for _ in range(100):
        f = random_message(code, rng)
        g = [code.field.random_element(rng) for _ in range(code.r)]
        word = encode(f, code)
        dual = dual_codeword(g, code)
        ip = code.field.zero
        for a, b in zip(word, dual):
            ip = ip + a * b
        assert ip.is_zero()


def test_dual_codeword_trivials():
    code = small_code()
    zero_word = dual_codeword([], code)
    assert all(s.is_zero() for s in zero_word)
    lam_word = dual_codeword([code.field.one], code)
    assert lam_word == dual_weights(code)


def test_dual_codeword_degree_overflow():
    code = small_code()
    with pytest.raises(ValueError):
        dual_codeword([code.field.one] * (code.r + 1), code)


def test_erasure_decode_trivials():
    code = small_code()
    zeros = [(i + 1, code.field.zero) for i in range(code.k)]
    assert all(c.is_zero() for c in erasure_decode(zeros, code))

    field = GF(3, 2)
    pts = tuple(field.zeta**i for i in range(1, 5))
    code1 = CodeSpec(field, 4, 1, pts, nbar=4, u=1)
    c = field.scalar(2)
    assert erasure_decode([(3, c)], code1) == (c,)


def test_erasure_decode_errors():
    code = small_code()
    sym = code.field.one
    with pytest.raises(ValueError):
        erasure_decode([(1, sym)], code)  # too few
    with pytest.raises(ValueError):
        erasure_decode([(1, sym), (1, sym)], code)  # duplicates


def test_mds_roundtrip_random_subsets():
    code = small_code()
    rng = random.Random(41)
    for _ in range(100):
        f = random_message(code, rng)
        word = encode(f, code)
        subset = rng.sample(range(1, code.n + 1), code.k)
        decoded = erasure_decode([(p, word[p - 1]) for p in subset], code)
        assert list(decoded) == list(f)
        assert encode(decoded, code) == word


def test_mds_exhaustive_subsets():
    code = small_code()
    rng = random.Random(43)
    f = random_message(code, rng)
    word = encode(f, code)
    count = 0
    for subset in itertools.combinations(range(1, code.n + 1), code.k):
        decoded = erasure_decode([(p, word[p - 1]) for p in subset], code)
        assert encode(decoded, code) == word
        count += 1
    assert count == 15  # C(6, 2)


def test_poly_eval_horner():
    field = GF(3, 2)
    x = field.monomial(1)
    # f(t) = 1 + 2t + t^2 at t = x: 1 + 2x + x^2 = 1 + 2x + 2 = 2x
    val = poly_eval([field.one, field.scalar(2), field.one], x)
    assert val == 2 * x
