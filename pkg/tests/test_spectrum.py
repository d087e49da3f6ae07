import pytest

from cotilt import (
    ZERO,
    IntegerPrime,
    IntegerQuotient,
    Integers,
    IrreduciblePoly,
    PolyOverPrimeField,
    SpectrumPoset,
    SyntheticNode,
    chain,
    hat,
    is_lower_set,
    leq,
    localize_prime,
    primes_under,
    synthetic,
)
from cotilt.errors import InputError
from cotilt.spectrum import DimOneSet

Z = Integers()
P = IntegerPrime
N = SyntheticNode


def branched():
    # 0 < q < m1, 0 < q < m2
    return synthetic(["0", "q", "m1", "m2"], [("0", "q"), ("q", "m1"), ("q", "m2")],
                     gorenstein_heights=True)


def test_leq_examples():
    assert leq(Z, ZERO, P(7))
    assert not leq(Z, P(2), P(3))
    R = synthetic(["0", "p", "m"], [("0", "p"), ("p", "m")], gorenstein_heights=True)
    assert leq(R, N("p"), N("m"))
    assert not leq(R, N("m"), N("p"))


def test_leq_rejects_foreign_prime():
    with pytest.raises(InputError):
        leq(Z, P(4), P(2))
    with pytest.raises(InputError):
        leq(Z, N("p"), ZERO)


def test_primes_under_examples():
    assert primes_under(Z, P(5)) == Z.prime_set([ZERO, P(5)])
    R12 = IntegerQuotient(12)
    assert primes_under(R12, P(3)) == R12.prime_set([P(3)])
    R = branched()
    assert set(primes_under(R, N("m1")).elements()) == {N("0"), N("q"), N("m1")}


def test_primes_under_matches_bruteforce_downset():
    R = branched()
    for m in R.iter_maximal():
        brute = {p for p in R.all_primes if R.leq(p, m)}
        assert set(primes_under(R, m).elements()) == brute


def test_primes_under_needs_maximal():
    with pytest.raises(InputError):
        primes_under(Z, ZERO)
    with pytest.raises(InputError):
        primes_under(branched(), N("q"))


def test_hat_examples():
    assert hat(Z, P(2), ZERO) == ZERO
    assert hat(Z, P(2), P(2)) == P(2)
    assert hat(branched(), N("m1"), N("q")) == N("q")
    with pytest.raises(InputError):
        hat(Z, P(2), P(3))


def test_hat_inverts_localize_on_every_downset():
    R = branched()
    for m in R.iter_maximal():
        for p in primes_under(R, m).elements():
            assert hat(R, m, localize_prime(R, m, p)) == p


def test_is_lower_set_examples():
    assert is_lower_set(Z, Z.prime_set([ZERO, P(2), P(3)]))
    assert not is_lower_set(Z, Z.prime_set([P(2)]))
    R = synthetic(["0", "q", "m"], [("0", "q"), ("q", "m")], gorenstein_heights=True)
    assert not is_lower_set(R, R.prime_set([N("0"), N("m")]))
    assert is_lower_set(Z, Z.empty_set())
    assert is_lower_set(Z, Z.prime_set([ZERO]))


def test_union_cofinite_and_finite_gives_all_maximals():
    a = Z.dim_one_set(True, True, [P(2)])
    b = Z.prime_set([P(2)])
    assert a | b == Z.full_set()
    assert str(a | b) == "{(0), all maximal}"


def test_subset_and_de_morgan():
    assert Z.prime_set([ZERO]) <= Z.prime_set([ZERO, P(3)])
    a = Z.dim_one_set(False, True, [P(2)])
    b = Z.dim_one_set(False, True, [P(3)])
    assert a & b == Z.dim_one_set(False, True, [P(2), P(3)])


def test_mixed_rings_are_rejected():
    with pytest.raises(InputError):
        Z.full_set() | PolyOverPrimeField(2).full_set()


def test_cofinite_with_empty_complement_is_canonical():
    assert Z.dim_one_set(True, True, []) == ~Z.empty_set()
    assert Z.maximal_set() | Z.prime_set([ZERO]) == Z.full_set()


def test_canonical_primes():
    assert IntegerPrime(-7) == IntegerPrime(7)
    assert IrreduciblePoly(3, (2, 2)) == IrreduciblePoly(3, (1, 1))
    F2 = PolyOverPrimeField(2)
    assert F2.parse_prime("(x^2+x+1)") == IrreduciblePoly(2, (1, 1, 1))
    with pytest.raises(InputError):
        F2.parse_prime("x^2+1")  # (x+1)^2 over F_2
    with pytest.raises(InputError):
        PolyOverPrimeField(4)
    with pytest.raises(InputError):
        IntegerQuotient(1)


def test_poly_ring_first_maximals():
    F2 = PolyOverPrimeField(2)
    it = F2.iter_maximal()
    labels = [next(it).label for _ in range(5)]
    assert labels == ["(x)", "(x+1)", "(x^2+x+1)", "(x^3+x+1)", "(x^3+x^2+1)"]


def test_integer_quotient_spectrum():
    R = IntegerQuotient(36)
    assert sorted(p.p for p in R.all_primes) == [2, 3]
    assert all(R.is_maximal(p) for p in R.all_primes)
    with pytest.raises(InputError):
        R.parse_prime("5")


def test_spectrum_poset_validation():
    with pytest.raises(InputError):
        SpectrumPoset.build(["a", "b"], [("a", "b"), ("b", "a")])
    with pytest.raises(InputError):
        SpectrumPoset.build(["a", "b"], [("a", "c")])
    with pytest.raises(InputError):
        SpectrumPoset.build(["a", "b"], [("a", "b")], height={"a": 1, "b": 1})
    with pytest.raises(InputError):
        SpectrumPoset.build(["a", "b"], [("a", "b")], maximal=["a"])


def test_chain_heights_and_closure():
    R = chain(4)
    assert R.spectrum.height == (0, 1, 2, 3)
    assert R.leq(N("c0"), N("c3"))


def test_dim_one_set_is_only_for_dimension_one_rings():
    with pytest.raises(InputError):
        DimOneSet(IntegerQuotient(6), True, False, frozenset())
