import pytest

from matverify import (
    FieldCtx,
    ResourceLimitError,
    UsageError,
    build_crt_basis,
    find_generator,
    multiplicative_order,
    power_sequence,
    sieve_primes_in_range,
)

from helpers import oracle_order, oracle_primes


def test_sieve_small_ranges():
    assert sieve_primes_in_range(2, 10) == [2, 3, 5, 7]
    assert sieve_primes_in_range(17, 25) == [17, 19, 23]
    assert sieve_primes_in_range(8, 10) == []


def test_sieve_matches_trial_division():
    for lo, hi in [(2, 200), (100, 400), (991, 1100), (5000, 5200)]:
        assert sieve_primes_in_range(lo, hi) == oracle_primes(lo, hi)


def test_sieve_rejects_bad_ranges():
    with pytest.raises(UsageError):
        sieve_primes_in_range(1, 10)
    with pytest.raises(UsageError):
        sieve_primes_in_range(2, 1 << 63)


def test_sieve_span_budget():
    with pytest.raises(ResourceLimitError):
        sieve_primes_in_range(2, (1 << 27) + 100)


def test_find_generator_golden():
    assert find_generator(5) == 2
    assert find_generator(17) == 3
    assert find_generator(3) == 2


def test_find_generator_is_full_order():
    for p in [3, 5, 7, 11, 13, 17, 101, 257, 1009]:
        g = find_generator(p)
        assert oracle_order(g, p) == p - 1


def test_multiplicative_order_matches_oracle():
    for p in [7, 17, 101]:
        for x in range(1, p):
            assert multiplicative_order(x, p) == oracle_order(x, p)


def test_power_sequence():
    p = 101
    seq = power_sequence(5, 20, p)
    assert list(seq) == [pow(5, k, p) for k in range(20)]
    assert list(power_sequence(0, 3, p)) == [1, 0, 0]


def test_crt_basis_goldens():
    assert [f.p for f in build_crt_basis(4, 64).fields] == [17, 19]
    assert [f.p for f in build_crt_basis(2, 2).fields] == [5]
    # n below 2 clamps to the n=2 construction
    assert [f.p for f in build_crt_basis(1, 2).fields] == [5]


def test_crt_basis_covers_bound():
    for n, bound in [(2, 10), (4, 10**6), (8, 10**12), (64, 10**30)]:
        basis = build_crt_basis(n, bound)
        assert basis.modulus_product > 2 * bound
        side = max(n, 2)
        for ctx in basis.fields:
            assert ctx.p >= side * side + 1
            assert ctx.order_lb >= side * side


def test_crt_roots_have_promised_order():
    for n in (2, 3, 8, 16):
        basis = build_crt_basis(n, 10**6)
        for ctx in basis.fields:
            assert oracle_order(ctx.omega, ctx.p) >= max(n, 2) ** 2


def test_field_ctx_validation():
    with pytest.raises(UsageError):
        FieldCtx(17, 0)
    with pytest.raises(UsageError):
        FieldCtx(17, 17)
    ctx = FieldCtx(17, 3, order_lb=16)
    assert list(ctx.powers(5)) == [1, 3, 9, 10, 13]
