import itertools
import random

import pytest

from rackrepair.gf import (
    GF,
    FieldElement,
    PrimeField,
    expand_in_dual_basis,
    factor_field_order,
    find_irreducible,
    find_primitive_element,
    rank_over_base,
)


def all_elements(field):
    ranges = [range(field.q)] * field.l
    return [field.element(c) for c in itertools.product(*ranges)]


def brute_force_span_size(elems):
    """Oracle: enumerate every B-linear combination and count distinct values."""
    field = elems[0].field
    span = set()
    for coeffs in itertools.product(range(field.q), repeat=len(elems)):
        acc = field.zero
        for c, e in zip(coeffs, elems):
            acc = acc + c * e
        span.add(acc)
    return len(span)


def trace_by_frobenius_sum(a):
    """Oracle: tr(a) = a + a^q + ... + a^(q^(l-1)) by explicit powering."""
    field = a.field
    acc = field.zero
    term = a
    for _ in range(field.l):
        acc = acc + term
        term = term**field.q
    assert all(c == 0 for c in acc.coeffs[1:])
    return acc.coeffs[0]


# ---------------------------------------------------------------------------
# construction-time searches
# ---------------------------------------------------------------------------

def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(4)
    assert PrimeField(3).q == 3
    assert PrimeField(2).primitive_root == 1
    assert PrimeField(3).primitive_root == 2
    assert PrimeField(7).primitive_root == 3


def test_find_irreducible_known_values():
    assert find_irreducible(3, 1) == (0, 1)  # any monic linear works; x is first
    assert find_irreducible(3, 2) == (1, 0, 1)  # x^2 + 1
    assert find_irreducible(2, 3) == (1, 1, 0, 1)  # x^3 + x + 1


def test_find_irreducible_has_no_root():
    for q, l in ((3, 2), (3, 4), (2, 3), (5, 3)):
        coeffs = find_irreducible(q, l)
        assert coeffs[-1] == 1 and len(coeffs) == l + 1
        for c in range(q):
            acc = 0
            for cc in reversed(coeffs):
                acc = (acc * c + cc) % q
            assert acc != 0


def test_find_irreducible_matches_exhaustive_factor_check():
    # degree 2 and 3: irreducible iff no root, so cross-check the full search
    q, l = 3, 3
    coeffs = find_irreducible(q, l)
    field = GF(q, l)
    # no element of GF(q) is a root, and f is the minimal polynomial of x
    x = field.monomial(1)
    acc = field.zero
    for cc in reversed(coeffs):
        acc = acc * x + field.scalar(cc)
    assert acc.is_zero()


def test_factor_field_order_examples():
    assert factor_field_order(3, 1) == (2,)
    assert factor_field_order(3, 8) == (2, 2, 2, 2, 2, 5, 41)
    assert factor_field_order(2, 4) == (3, 5)


def test_factor_field_order_product():
    for q, l in ((3, 8), (3, 16), (2, 12), (5, 4)):
        fac = factor_field_order(q, l)
        prod = 1
        for p in fac:
            prod *= p
        assert prod == q**l - 1


def test_primitive_element_certified():
    for q, l in ((3, 1), (3, 2), (2, 3), (3, 8)):
        field = GF(q, l)
        zeta = field.zeta
        assert zeta ** (q**l - 1) == field.one
        for p in set(field.order_factorization):
            assert zeta ** ((q**l - 1) // p) != field.one
        assert find_primitive_element(field) == zeta  # deterministic


def test_primitive_element_small_cases():
    assert GF(3, 1).zeta == GF(3, 1).scalar(2)  # 2 generates GF(3)*
    f23 = GF(2, 3)
    assert f23.element_order(f23.monomial(1)) == 7  # order 7 is prime


# ---------------------------------------------------------------------------
# field arithmetic
# ---------------------------------------------------------------------------

def test_hand_reduction_gf9():
    field = GF(3, 2)  # modulus x^2 + 1
    x = field.monomial(1)
    assert (x * x).coeffs == (2, 0)  # x^2 = -1 = 2
    assert (x**2).coeffs == (2, 0)


def test_field_laws_exhaustive_gf9():
    field = GF(3, 2)
    elems = all_elements(field)
    for a, b, c in itertools.product(elems, repeat=3):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
    for a in elems:
        assert a + field.zero == a
        assert a * field.one == a
        assert (a - a).is_zero()
        if not a.is_zero():
            assert a * a.inverse() == field.one
            assert a / a == field.one


def test_field_laws_randomized_gf3_8():
    field = GF(3, 8)
    rng = random.Random(3)
    for _ in range(50):
        a, b, c = (field.random_element(rng) for _ in range(3))
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a - b == -(b - a)
        if not b.is_zero():
            assert (a / b) * b == a


def test_division_by_zero():
    field = GF(3, 2)
    with pytest.raises(ZeroDivisionError):
        field.one / field.zero
    with pytest.raises(ZeroDivisionError):
        field.zero.inverse()


def test_mismatched_fields_rejected():
    a = GF(3, 2).one
    b = GF(3, 4).one
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b


def test_pow_basics():
    field = GF(3, 2)
    x = field.monomial(1)
    assert x**0 == field.one
    assert field.zero**0 == field.one
    assert field.zeta**field.order == field.one
    with pytest.raises(ValueError):
        x ** (-1)


def test_pow_unbounded_exponent():
    field = GF(3, 8)
    e = field.order  # 6560
    big = e * (3**64)  # far beyond machine words; must reduce to identity
    assert field.zeta**big == field.one


def test_element_order():
    field = GF(3, 2)
    assert field.element_order(field.one) == 1
    assert field.element_order(field.scalar(2)) == 2  # -1 has order 2 for odd q
    assert field.element_order(field.zeta) == field.order
    with pytest.raises(ValueError):
        field.element_order(field.zero)
    for a in all_elements(field):
        if a.is_zero():
            continue
        e = field.element_order(a)
        assert a**e == field.one
        for p in set(field.order_factorization):
            if e % p == 0:
                assert a ** (e // p) != field.one


# ---------------------------------------------------------------------------
# trace machinery
# ---------------------------------------------------------------------------

def test_trace_hand_values():
    f9 = GF(3, 2)
    assert f9.trace(f9.zero) == 0
    assert f9.trace(f9.monomial(1)) == 0  # x + x^3 = x - x = 0
    assert f9.trace(f9.one) == 2  # l * 1 = 2 mod 3
    assert GF(3, 8).trace(GF(3, 8).one) == 8 % 3


def test_trace_matches_frobenius_sum_oracle():
    for q, l in ((3, 2), (3, 4), (2, 3)):
        field = GF(q, l)
        rng = random.Random(l)
        for _ in range(20):
            a = field.random_element(rng)
            assert field.trace(a) == trace_by_frobenius_sum(a)


def test_trace_linear_and_surjective():
    for q, l in ((3, 2), (2, 3)):
        field = GF(q, l)
        elems = all_elements(field)
        values = {field.trace(a) for a in elems}
        assert values == set(range(q))  # surjective onto B
        rng = random.Random(q * l)
        for _ in range(30):
            a, b = field.random_element(rng), field.random_element(rng)
            c = rng.randrange(q)
            assert field.trace(c * a + b) == (c * field.trace(a) + field.trace(b)) % q


def test_trace_product_matches_product_trace():
    field = GF(3, 8)
    rng = random.Random(11)
    for _ in range(25):
        a, b = field.random_element(rng), field.random_element(rng)
        assert field.trace_product(a, b) == field.trace(a * b)


def test_dual_basis_hand_example():
    field = GF(3, 2)
    x = field.monomial(1)
    pair = field.dual_basis([field.one, x])
    assert [m.coeffs for m in pair.mu_basis] == [(2, 0), (0, 1)]  # dual = {2, x}


def test_dual_basis_kronecker_and_reconstruction():
    for q, l in ((3, 2), (3, 4), (2, 3), (3, 8)):
        field = GF(q, l)
        basis = [field.zeta**i for i in range(l)]
        pair = field.dual_basis(basis)
        for i, zi in enumerate(pair.zeta_basis):
            for j, mj in enumerate(pair.mu_basis):
                assert field.trace(zi * mj) == (1 if i == j else 0)
        rng = random.Random(l)
        for _ in range(10):
            a = field.random_element(rng)
            rebuilt = field.zero
            for zi, mi in zip(pair.zeta_basis, pair.mu_basis):
                rebuilt = rebuilt + field.trace(zi * a) * mi
            assert rebuilt == a


def test_dual_basis_rejects_rank_deficient():
    field = GF(3, 2)
    with pytest.raises(ValueError):
        field.dual_basis([field.one, field.scalar(2)])
    with pytest.raises(ValueError):
        field.dual_basis([field.one])


def test_expand_in_dual_basis():
    field = GF(3, 2)
    x = field.monomial(1)
    pair = field.dual_basis([field.one, x])
    assert expand_in_dual_basis([0, 0], pair).is_zero()
    assert expand_in_dual_basis([2, 0], pair) == field.one  # traces of a = 1
    rng = random.Random(5)
    for _ in range(20):
        a = field.random_element(rng)
        traces = [field.trace(z * a) for z in pair.zeta_basis]
        assert expand_in_dual_basis(traces, pair) == a


# ---------------------------------------------------------------------------
# rank over the base field
# ---------------------------------------------------------------------------

def test_rank_trivial_cases():
    field = GF(3, 2)
    assert rank_over_base([]).rank == 0
    assert rank_over_base([field.zero]).rank == 0
    assert rank_over_base([field.one, field.monomial(1)]).rank == 2


def test_rank_powers_of_zeta():
    for q, l in ((3, 2), (3, 4), (3, 8)):
        field = GF(q, l)
        assert rank_over_base([field.zeta**i for i in range(l)]).rank == l


def test_rank_spread_powers():
    # {1, zeta^u, ..., zeta^((l-1)u)} has full rank whenever u | q - 1
    field = GF(3, 8)
    for u in (1, 2):
        elems = [field.zeta ** (u * i) for i in range(field.l)]
        assert rank_over_base(elems).rank == field.l


def test_rank_against_brute_force_oracle():
    rng = random.Random(17)
    for q, l in ((3, 2), (3, 4), (2, 3)):
        field = GF(q, l)
        for trial in range(8):
            elems = [field.random_element(rng) for _ in range(rng.randrange(1, 6))]
            profile = rank_over_base(elems)
            assert field.q**profile.rank == brute_force_span_size(elems)


def test_rank_profile_pivots_and_coords():
    field = GF(3, 4)
    rng = random.Random(23)
    for _ in range(10):
        elems = [field.random_element(rng) for _ in range(6)]
        profile = rank_over_base(elems)
        chosen = [elems[p] for p in profile.pivots]
        # pivots are greedy-first: each pivot is independent of the earlier ones
        for j in range(len(chosen)):
            assert rank_over_base(chosen[: j + 1]).rank == j + 1
        # every element reconstructs from its coordinates in the pivot subset
        for i, e in enumerate(elems):
            acc = field.zero
            for c, b in zip(profile.coords[i], chosen):
                acc = acc + int(c) * b
            assert acc == e


def test_field_describe_roundtrip():
    field = GF(3, 2)
    d = field.describe()
    assert d == {"q": 3, "l": 2, "modulus": [1, 0, 1], "zeta": [1, 1]}


def test_elements_hashable_and_immutable():
    field = GF(3, 2)
    a = field.element([1, 2])
    assert a == field.element([1, 2])
    assert len({a, field.element([1, 2]), field.one}) == 2
    with pytest.raises(ValueError):
        a.vec[0] = 0  # read-only storage


def test_element_validation():
    field = GF(3, 2)
    with pytest.raises(ValueError):
        field.element([1])
    assert field.element([4, -1]).coeffs == (1, 2)  # residues reduce mod q


def test_elements_of_gf_l1():
    field = GF(3, 1)
    two = field.scalar(2)
    assert (two * two).coeffs == (1,)
    assert field.trace(two) == 2
    assert field.element_order(two) == 2
