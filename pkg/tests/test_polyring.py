import pytest
from hypothesis import given, settings, strategies as st

from modgal import Ring, VarMap, apply_map, compose_maps, field_create, poly_arith
from modgal.errors import ParseError, RingMismatchError

K2 = field_create(2)
K4 = field_create(2, 2)
K9 = field_create(3, 2)


def polys(ring, max_terms=4, max_exp=3):
    term = st.tuples(st.tuples(*[st.integers(0, max_exp)] * ring.nvars), st.integers(1, ring.ctx.q - 1))
    return st.lists(term, max_size=max_terms).map(lambda ts: ring.from_codes(dict(ts)))


R9 = Ring(K9, ("Y1", "Y2"))
R4 = Ring(K4, ("x", "y", "z"), "lex")


def test_arith_examples():
    R = Ring(K2, ("Y", "Z"))
    Y, Z = R.gens()
    assert poly_arith(Y + 1, Y + 1, "add").is_zero()
    assert poly_arith(Y + 1, Y + 1, "mul") == Y**2 + 1
    assert poly_arith(Y, Z, "mul") == Y * Z
    with pytest.raises(RingMismatchError):
        Y + Ring(K2, ("Y",)).var("Y")


@settings(max_examples=60, deadline=None)
@given(polys(R9), polys(R9), polys(R9))
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f * g == g * f
    assert f - f == R9.zero()


@settings(max_examples=60, deadline=None)
@given(polys(R9), polys(R4))
def test_print_parse_round_trip(f, g):
    assert R9.parse(str(f)) == f
    assert R4.parse(str(g)) == g


def test_printing_format():
    R = Ring(K4, ("Y1", "Y2"))
    f = R.parse("Y1^2 + t*Y1*Y2 + 1")
    assert str(f) == "Y1^2 + t*Y1*Y2 + 1"
    assert str(R.parse("(t+1)*Y1")) == "(t+1)*Y1"
    assert str(R.zero()) == "0"


def test_parse_errors_have_columns():
    R = Ring(K2, ("Y",))
    with pytest.raises(ParseError) as e:
        R.parse("Y + * 1")
    assert e.value.col == 5
    with pytest.raises(ParseError):
        R.parse("Q + 1")
    with pytest.raises(ValueError):
        Ring(K2, ("t",))


def test_monomial_orders():
    lex = Ring(K2, ("x", "y"), "lex")
    grl = Ring(K2, ("x", "y"))
    assert lex.parse("x + y^5").leading_monomial() == (1, 0)
    assert grl.parse("x + y^5").leading_monomial() == (0, 5)
    assert grl.parse("x*y^2 + x^2*y").leading_monomial() == (2, 1)
    assert [str(grl.monomial(e)) for e in grl.monomials(1)] == ["1", "y", "x"]


@settings(max_examples=40, deadline=None)
@given(polys(R9), polys(R9), polys(R9, 3, 2), polys(R9, 3, 2))
def test_apply_map_is_homomorphism(f, g, a, b):
    m = VarMap(R9, R9, [a, b])
    assert apply_map(m, f + g) == apply_map(m, f) + apply_map(m, g)
    assert apply_map(m, f * g) == apply_map(m, f) * apply_map(m, g)


@settings(max_examples=30, deadline=None)
@given(polys(R9, 3, 2), polys(R9, 3, 2), polys(R9, 2, 2), polys(R9, 2, 2), polys(R9))
def test_compose_maps(a, b, c, d, f):
    m1 = VarMap(R9, R9, [a, b])
    m2 = VarMap(R9, R9, [c, d])
    assert apply_map(compose_maps(m1, m2), f) == apply_map(m2, apply_map(m1, f))


def test_map_examples():
    RY = Ring(K2, ("Y",))
    RZ = Ring(K2, ("Z",))
    m = VarMap(RY, RZ, ["Z^2"])
    assert m(RY.parse("Y + 1")) == RZ.parse("Z^2 + 1")
    ident = VarMap.identity(RY)
    f = RY.parse("Y^3 + Y")
    assert ident(f) == f
    assert compose_maps(ident, m) == m
    tr = VarMap(RY, RY, ["Y + 1"])
    assert compose_maps(tr, tr).is_identity()
    with pytest.raises(RingMismatchError):
        VarMap(RY, RY, {"Q": "Y"})


def test_dict_varmap_fixes_unlisted():
    R = Ring(K2, ("a", "b"))
    m = VarMap(R, R, {"a": "a + b"})
    assert m.image("b") == R.var("b")


def test_exponent_overflow_guarded():
    R = Ring(K2, ("Y",))
    with pytest.raises(OverflowError):
        R.var("Y") ** (1 << 16)


def test_subs_and_queries():
    R = Ring(K4, ("x", "y"))
    f = R.parse("x^2*y + t*x + 1")
    assert f.degree() == 3 and f.degree_in("x") == 2
    assert f.variables() == {"x", "y"}
    assert f.subs(x=K4.one) == R.parse("y + t + 1")
    assert f.leading_coeff() == K4.one
    assert (f * K4.gen).monic() == f
