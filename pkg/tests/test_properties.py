"""Property-based checks of the algebraic invariants."""
import json
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cotilt import (
    ZERO,
    IntegerPrime,
    Integers,
    SyntheticNode,
    families_equivalent,
    glue_family,
    hat,
    is_lower_set,
    localization_family,
    localize_prime,
    primes_under,
    sequences_equal,
    synthetic,
)
from cotilt import serialize
from cotilt.sampling import random_family, random_sequence
from cotilt.zhomology.functors import homology_functor, homology_via_resolution
from cotilt.zhomology.modules import FgZModule, finite_abelian_groups
from cotilt.zhomology.oracle import matlis_dual
from cotilt.zhomology.snf import IntMatrix, determinant, smith_normal_form

SETTINGS = settings(max_examples=150, deadline=None, derandomize=True)

Z = Integers()
SMALL = [2, 3, 5, 7, 11]
PROBES = [ZERO] + [IntegerPrime(p) for p in SMALL + [13, 101]]


# --- prime sets -------------------------------------------------------------------

dim_one_sets = st.builds(
    lambda zero, cof, ms: Z.dim_one_set(zero, cof, [IntegerPrime(p) for p in ms]),
    st.booleans(), st.booleans(), st.sets(st.sampled_from(SMALL), max_size=4))


@SETTINGS
@given(dim_one_sets, dim_one_sets)
def test_dim_one_boolean_laws(a, b):
    for p in PROBES:
        assert (p in a | b) == (p in a or p in b)
        assert (p in a & b) == (p in a and p in b)
        assert (p in a - b) == (p in a and p not in b)
        assert (p in ~a) == (p not in a)
    assert ~(a | b) == ~a & ~b
    assert ~~a == a
    assert (a <= b) == all(p in b for p in PROBES if p in a)


@st.composite
def posets(draw, max_nodes=10):
    k = draw(st.integers(1, max_nodes))
    pairs = [(i, j) for i in range(k) for j in range(i + 1, k)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=2 * k) if pairs else st.just([]))
    nodes = [f"v{i}" for i in range(k)]
    return nodes, [(nodes[i], nodes[j]) for i, j in chosen]


@SETTINGS
@given(posets(), st.data())
def test_bitset_boolean_laws_and_lower_sets(poset, data):
    nodes, pairs = poset
    R = synthetic(nodes, pairs, gorenstein_heights=True)
    a = R.prime_set(SyntheticNode(v) for v in data.draw(st.sets(st.sampled_from(nodes))))
    b = R.prime_set(SyntheticNode(v) for v in data.draw(st.sets(st.sampled_from(nodes))))
    names = lambda s: {p.label for p in s.elements()}
    assert names(a | b) == names(a) | names(b)
    assert names(a & b) == names(a) & names(b)
    assert names(~a) == set(nodes) - names(a)
    # generating pairs are enough to decide lower-closure
    brute = all(x in names(a) for x, y in pairs if y in names(a))
    assert is_lower_set(R, a) == brute


@SETTINGS
@given(posets())
def test_hat_and_localize_are_inverse(poset):
    R = synthetic(*poset, gorenstein_heights=True)
    for m in R.iter_maximal():
        for p in primes_under(R, m).elements():
            assert hat(R, m, localize_prime(R, m, p)) == p


# --- Smith normal form ------------------------------------------------------------

matrices = st.integers(1, 6).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-50, 50), min_size=c, max_size=c), min_size=r, max_size=r)))


@SETTINGS
@given(matrices)
def test_snf_certificate(rows):
    A = IntMatrix(rows)
    U, D, V = smith_normal_form(A)
    assert U @ A @ V == D
    assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1
    assert all(D[i, j] == 0 for i in range(D.rows) for j in range(D.cols) if i != j)
    diag = D.diagonal_entries()
    assert all(d >= 0 for d in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y % x == 0) if x else y == 0


# --- homology ---------------------------------------------------------------------

FINITE = finite_abelian_groups(64)
finite_modules = st.sampled_from(FINITE)
modules = st.builds(lambda T, r: T + FgZModule(r), finite_modules, st.integers(0, 2))


@SETTINGS
@given(modules, modules, st.sampled_from([("hom", 0), ("tensor", 0), ("ext", 1), ("tor", 1)]))
def test_closed_form_matches_resolution(A, B, kind_i):
    kind, i = kind_i
    assert homology_functor(kind, i, A, B) == homology_via_resolution(kind, i, A, B)


@SETTINGS
@given(finite_modules, finite_modules)
def test_tor_and_ext_agree_on_finite_modules(A, B):
    assert homology_functor("tor", 1, A, B) == homology_functor("ext", 1, A, B)
    assert homology_functor("tensor", 0, A, B) == homology_functor("hom", 0, A, B)


@SETTINGS
@given(finite_modules)
def test_matlis_dual_is_an_involution(M):
    assert matlis_dual(matlis_dual(M).finite_part).finite_part == M


# --- round trips and serialization over Z -----------------------------------------


@SETTINGS
@given(st.integers(0, 2 ** 32), st.integers(1, 3))
def test_random_round_trips_over_z(seed, n):
    rng = random.Random(seed)
    seq = random_sequence(rng, n)
    assert sequences_equal(glue_family(localization_family(seq)), seq)
    fam = random_family(rng, n)
    assert families_equivalent(localization_family(glue_family(fam)), fam)


@SETTINGS
@given(st.integers(0, 2 ** 32), st.integers(0, 3))
def test_serialization_round_trips(seed, n):
    rng = random.Random(seed)
    seq = random_sequence(rng, n)
    again = serialize.load_sequence(json.loads(json.dumps(serialize.dump_sequence(seq))))
    assert again.levels == seq.levels
    fam = random_family(rng, n)
    assert serialize.load_family(json.loads(json.dumps(serialize.dump_family(fam)))) == fam
