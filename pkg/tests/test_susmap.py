from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from support import dynkin_bch, system

from hochpir.coeffs import dual_numbers
from hochpir.errors import ConfigurationError, DegreeError, ParseError
from hochpir.hochschild.complexes import SliceSelector, SuspensionSignature
from hochpir.susmap import (FreeLieSeries, InducedMap, bch, builtin_map, class_lie, compose_maps,
                            parse_map, set_partitions, target_selector, verify_chain_map)

BELL = [1, 1, 2, 5, 15, 52, 203]


def test_set_partitions_are_bell_numbers():
    for n, b in enumerate(BELL):
        ps = list(set_partitions(n))
        assert len(ps) == b
        canon = {tuple(map(tuple, p)) for p in ps}
        assert len(canon) == b
        for p in ps:
            assert sorted(i for blk in p for i in blk) == list(range(n))
            assert [blk[0] for blk in p] == sorted(blk[0] for blk in p)


def test_bch_low_weights():
    explicit = parse_map("Z = a:0, b:0; z -> a + b + 1/2*[a,b] + 1/12*[a,[a,b]] - 1/12*[b,[a,b]]")
    series = parse_map("Z = a:0, b:0; z -> bch(a, b, W=3)")
    assert series.rho[0] == explicit.rho[0]
    assert bch("a", "b", 3) == series.rho[0]


@pytest.mark.parametrize("W", [1, 2, 3, 5])
def test_bch_matches_dynkin_formula(W):
    s = bch("a", "b", W)
    names = s.lie.names_
    got = {"".join(names[i] for i in w): c for w, c in s.lie.to_uea(s.terms).items() if c}
    assert got == dynkin_bch(W)


def test_parse_map_degrees_and_json():
    rho = parse_map("Z = x:1; Y = y:2; y -> 1/2*[x,x]")
    assert rho.rho[0] == builtin_map("hopf").rho[0]
    assert rho.Y.classes == (("y", 2),)
    inferred = parse_map("Z = x:1; y -> [x,x]")
    assert inferred.Y.classes == (("y", 2),)
    j = builtin_map("pinch(3)").to_json()
    assert j["W"] == 3 and j["rho"]["x"]["W"] == 3
    assert j["rho"]["x"]["terms"]["y1"] == "1"
    assert str(FreeLieSeries(class_lie(SuspensionSignature((("u", 0),))), {})) == "0"


@pytest.mark.parametrize("text", [
    "y -> 2",
    "y -> [x,",
    "Z = a:0, b:0; z -> bch(a, b)",
    "Z = x:q; y -> x",
    "Z = x:1",
    "y -> x; y -> x",
    "y -> x $",
    "1y -> x",
])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_map(text)


def test_degree_mismatch():
    rho = parse_map("Z = x:1; Y = y:3; y -> [x,x]")
    assert not rho.degree_compatible
    with pytest.raises(DegreeError):
        InducedMap(rho, dual_numbers())
    with pytest.raises(DegreeError):
        parse_map("Z = x:1, u:0; y -> [x,x] + u")


def test_builtin_names():
    assert builtin_map("pinch").W == 4 and builtin_map("slide(W=2)").W == 2
    for bad in ("twist", "hopf(3)", "pinch()"):
        with pytest.raises(NameError):
            builtin_map(bad)
    with pytest.raises(ConfigurationError):
        bch("a", "b", 0)


def _slices(cx, colors):
    for c in colors:
        for q in sorted({cx.degree(k) for k in cx.keys_of_color(c)}):
            yield SliceSelector(q, c)


@pytest.mark.parametrize("name,W,colors", [
    ("hopf", None, [(c,) for c in range(1, 6)]),
    ("pinch", 3, [(c,) for c in range(1, 4)]),
])
def test_builtins_are_chain_maps_on_dual_numbers(name, W, colors):
    rho = builtin_map(name if W is None else f"{name}({W})")
    cs = dual_numbers()
    F = InducedMap(rho, cs)
    n = 0
    for sel in _slices(F.src, colors):
        rep = verify_chain_map(rho, cs, sel)
        assert rep.commutes, (sel, rep.failure)
        n += rep.checked
    assert n > 0


def test_hopf_kills_odd_length_words():
    F = InducedMap(builtin_map("hopf"), system("dual"))
    for key in F.src.keys_of_color((3,)):
        if len(F.src.N.flatten(key[1])) % 2:
            assert F.apply_key(key) == {}


COMPOSABLE = [
    ("Z = x:1; Y = y:2; y -> 1/2*[x,x]", "Z = u:1, v:1; Y = x:1; x -> u + v", [(c,) for c in range(1, 5)]),
    ("pinch(3)", "Z = a:0, b:0, c:0; Y = y1:0, y2:0; y1 -> bch(a, b, W=3); y2 -> c", [(1,), (2,), (3,)]),
    ("Z = x:1; Y = y:1; y -> x", "Z = u:1, v:0; Y = x:1; x -> u + [u,v]", [(1,), (2,), (3,)]),
]


@pytest.mark.parametrize("outer,inner,colors", COMPOSABLE)
def test_composite_induces_product_of_matrices(outer, inner, colors):
    cs = dual_numbers()
    o, i = parse_map(outer), parse_map(inner)
    comp = compose_maps(o, i)
    Fo, Fi, Fc = InducedMap(o, cs), InducedMap(i, cs), InducedMap(comp, cs)
    for sel in _slices(Fi.src, colors):
        t = target_selector(sel)
        src, mid, tgt = Fi.src.basis(sel), Fi.tgt.basis(t), Fo.tgt.basis(t)
        assert Fc.matrix(src, tgt) == Fo.matrix(mid, tgt) @ Fi.matrix(src, mid), sel


def test_compose_rejects_mismatched_degrees():
    with pytest.raises(ConfigurationError):
        compose_maps(builtin_map("hopf"), builtin_map("pinch(2)"))


@settings(max_examples=30)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(1, 4)), min_size=1, max_size=4))
def test_series_linear_ops(pairs):
    lie = class_lie(SuspensionSignature((("a", 0), ("b", 0))))
    a, b = FreeLieSeries(lie, lie.gen("a")), FreeLieSeries(lie, lie.gen("b"))
    acc = FreeLieSeries(lie, {})
    for num, den in pairs:
        acc = acc + a.bracket(b).scale(Fraction(num, den))
    total = sum(Fraction(n, d) for n, d in pairs)
    assert acc == a.bracket(b).scale(total)
    assert a.bracket(b) == b.bracket(a).scale(-1)
