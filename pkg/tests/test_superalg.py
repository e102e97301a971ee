from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from support import colors_upto

from hochpir.errors import BasisExpressionError, InvariantViolation
from hochpir.exactla import add_to, axpy
from hochpir.superalg.lie import FreeLieAlgebra, LieBasisElement, StructureLieAlgebra, is_lyndon
from hochpir.superalg.pbw import hodge_parts, pbw_decompose, pbw_map, sym_monomials
from hochpir.superalg.signs import koszul_sign, reversal_sign

ONE = Fraction(1)


def free(*gens):
    return FreeLieAlgebra([(n, d, c) for n, d, c in gens])


MIXED = free(("a", 1, (1, 0)), ("b", 2, (0, 1)))
ODD = free(("x", 1, (1,)))
EVEN2 = free(("p", 0, (1, 0)), ("q", 0, (0, 1)))
# x odd, y = [x, x]/... : a small nilpotent Lie superalgebra with [x, x] = y
NIL = StructureLieAlgebra(["x", "y"], [1, 2], [(1,), (2,)], {("x", "x"): {"y": 1}})


def test_koszul_sign_examples():
    assert koszul_sign([1, 1], [1, 0]) == -1
    assert koszul_sign([1, 2], [1, 0]) == 1
    assert koszul_sign([1, 1, 1], [2, 0, 1]) == 1
    assert reversal_sign([1, 1, 1]) == -1


@given(st.lists(st.integers(0, 3), min_size=1, max_size=6), st.data())
def test_koszul_sign_is_a_homomorphism(degs, data):
    n = len(degs)
    p = data.draw(st.permutations(range(n)))
    q = data.draw(st.permutations(range(n)))
    # rearranging by p and then by q equals rearranging by p o q
    pq = [p[i] for i in q]
    assert koszul_sign(degs, pq) == koszul_sign(degs, p) * koszul_sign([degs[i] for i in p], q)


def test_lyndon():
    assert is_lyndon((0, 1)) and is_lyndon((0, 0, 1)) and not is_lyndon((1, 0)) and not is_lyndon((0, 0))


def _witt(k, n):
    return sum(sympy.mobius(d) * k ** (n // d) for d in sympy.divisors(n)) // n


def test_even_free_lie_matches_witt():
    g = free(("p", 0, (1,)), ("q", 0, (1,)), ("r", 0, (1,)))
    for n in range(1, 6):
        assert len(g.basis_of_grade("color", (n,))) == _witt(3, n)


@pytest.mark.parametrize("g", [MIXED, ODD, EVEN2], ids=["mixed", "odd", "even2"])
def test_pbw_counts_words(g):
    # PBW: symmetric monomials on the Lie basis are equinumerous with tensor words
    for c in colors_upto(g.color_rank, 5 if g.color_rank == 1 else 4):
        assert len(sym_monomials(g, "color", c)) == len(g.uea.keys_of_grade("color", c)), c


def _basis(g, total):
    out = []
    for c in colors_upto(g.color_rank, total):
        out.extend(g.basis_of_grade("color", c))
    return out


@pytest.mark.parametrize("g", [MIXED, ODD, EVEN2], ids=["mixed", "odd", "even2"])
def test_bracket_axioms(g):
    B = _basis(g, 3)
    for a in B:
        for b in B:
            ab = g.bracket({a: ONE}, {b: ONE})
            ba = g.bracket({b: ONE}, {a: ONE})
            s = -1 if (g.degree(a) * g.degree(b)) & 1 else 1
            assert ab == {k: -s * v for k, v in ba.items()}
    small = [z for z in B if sum(g.color(z)) <= 1] + [z for z in B if sum(g.color(z)) == 2]
    for a in small:
        for b in small:
            for c in small:
                A, Bv, C = {a: ONE}, {b: ONE}, {c: ONE}
                lhs = g.bracket(A, g.bracket(Bv, C))
                rhs = dict(g.bracket(g.bracket(A, Bv), C))
                s = -1 if (g.degree(a) * g.degree(b)) & 1 else 1
                axpy(rhs, s, g.bracket(Bv, g.bracket(A, C)))
                assert lhs == {k: v for k, v in rhs.items() if v}


def test_odd_square_is_twice_the_square():
    x = ODD.generator("x")
    sq = LieBasisElement.of(x.word, square=True)
    assert ODD.to_uea({sq: ONE}) == {(0, 0): Fraction(2)}
    assert ODD.bracket({x: ONE}, {x: ONE}) == {sq: ONE}


def test_from_uea_rejects_non_lie():
    with pytest.raises(BasisExpressionError):
        MIXED.from_uea({(0, 1): ONE})


@pytest.mark.parametrize("g", [MIXED, ODD], ids=["mixed", "odd"])
def test_uea_roundtrip(g):
    for z in _basis(g, 4):
        assert g.from_uea(g.to_uea({z: ONE})) == {z: ONE}


# -- Hopf structure ----------------------------------------------------------

def _keys(H, total, rank):
    out = []
    for c in colors_upto(rank, total):
        out.extend(H.keys_of_grade("color", c))
    return out


def _tensor_mul(H, x, y):
    """(a1 (x) a2)(b1 (x) b2) = (-1)^{|a2||b1|} a1 b1 (x) a2 b2 on dict tensors."""
    out: dict = {}
    for (a1, a2), c in x.items():
        for (b1, b2), d in y.items():
            s = -1 if (H.degree(a2) * H.degree(b1)) & 1 else 1
            for k1, u in H.mul_keys(a1, b1).items():
                for k2, v in H.mul_keys(a2, b2).items():
                    add_to(out, (k1, k2), s * c * d * u * v)
    return out


def _cop(H, key):
    out: dict = {}
    for c, (a, b) in H.coproduct(key, 2):
        add_to(out, (a, b), c)
    return out


HOPFS = [(MIXED.uea, 2, 3), (ODD.uea, 1, 4), (NIL.uea, 1, 5)]


@pytest.mark.parametrize("H,rank,total", HOPFS, ids=["tensor-mixed", "tensor-odd", "pbw-nil"])
def test_coassociative_counit_antipode(H, rank, total):
    for key in _keys(H, total, rank):
        three: dict = {}
        for c, parts in H.coproduct(key, 3):
            add_to(three, parts, c)
        left: dict = {}
        for c, (a, b) in H.coproduct(key, 2):
            for d, (a1, a2) in H.coproduct(a, 2):
                add_to(left, (a1, a2, b), c * d)
        assert left == {k: v for k, v in three.items() if v}
        # counit
        lc: dict = {}
        for c, (a, b) in H.coproduct(key, 2):
            if not a:
                add_to(lc, b, c)
        assert lc == {key: ONE}
        # antipode: sum S(a1) a2 = eps(a)
        tot: dict = {}
        for c, (a, b) in H.coproduct(key, 2):
            axpy(tot, c, H.mul(H.antipode(a), {b: ONE}))
        assert tot == ({(): ONE} if not key else {})


@pytest.mark.parametrize("H,rank,total", HOPFS, ids=["tensor-mixed", "tensor-odd", "pbw-nil"])
def test_coproduct_multiplicative(H, rank, total):
    ks = _keys(H, 2, rank)
    for a in ks:
        for b in ks:
            lhs: dict = {}
            for k, c in H.mul_keys(a, b).items():
                axpy(lhs, c, _cop(H, k))
            assert {k: v for k, v in lhs.items() if v} == _tensor_mul(H, _cop(H, a), _cop(H, b))


def test_pbw_monomials_normal_form():
    H = NIL.uea
    # x x = 1/2 [x, x] = 1/2 y
    assert H.normalize((0, 0)) == {(1,): Fraction(1, 2)}
    assert H.normalize((1, 0)) == {(0, 1): ONE}


def test_structure_lie_validation():
    NIL.validate()
    bad = StructureLieAlgebra(["u", "v", "w"], [0, 0, 0], [(1,), (1,), (1,)],
                              {("u", "v"): {"w": 1}, ("v", "w"): {"u": 1}, ("w", "u"): {"v": 5}})
    with pytest.raises(InvariantViolation):
        bad.validate()


# -- symmetrisation ----------------------------------------------------------

@pytest.mark.parametrize("g", [MIXED, ODD], ids=["mixed", "odd"])
def test_pbw_roundtrip_and_hodge(g):
    for c in colors_upto(g.color_rank, 4):
        for mono in sym_monomials(g, "color", c):
            u = pbw_map(g, mono)
            assert pbw_decompose(g, u) == {mono: ONE}
            parts = hodge_parts(g, u)
            assert set(parts) == {len(mono)}


def test_pbw_map_brute_force():
    g = MIXED
    a, b = g.generator("a"), g.generator("b")
    ab = g.basis_of_grade("color", (1, 1))[0]
    for mono in [(a, b), (a, ab), (b, ab)]:
        mono = tuple(sorted(mono))
        degs = [g.degree(z) for z in mono]
        want: dict = {}
        for p in permutations(range(len(mono))):
            prod = {(): ONE}
            for i in p:
                prod = g.uea.mul(prod, g.to_uea({mono[i]: ONE}))
            axpy(want, Fraction(koszul_sign(degs, p), 2), prod)
        assert pbw_map(g, mono) == {k: v for k, v in want.items() if v}
