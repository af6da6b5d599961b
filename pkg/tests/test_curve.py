import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anoncert.curve import (
    BRAINPOOL_P256R1,
    CURVES,
    Point,
    Scalar,
    TOY,
    expand_private,
    expand_public,
    generate_keypair,
    get_curve,
    is_on_curve,
    point_add,
    point_neg,
    scalar_add_mod_n,
    scalar_mul,
)
from anoncert.errors import (
    BlindingOutOfRange,
    CurveMismatch,
    DegenerateResult,
    NotOnCurve,
)
from anoncert.oracle import INF, enumerate_group, oracle_mul
from anoncert.rng import DeterministicRng, FixedRng

# Chain constants shared with the published-vector fixtures; reproduced
# here so the unit tests do not depend on the verifier module.
I_PRIV = int("5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874", 16)
I_PUB = (int("719CE2A5F8D8174418C3B3AA2E9C4F0EE8AF17F3A9E02A0656E03C32EC05383A", 16),
         int("2E98CA241C58A4933AEE7D4A22394D27EFC1C64618686A00519CC5CB4DE1A93D", 16))
R_RA = int("F407A78C2CFC8586AC1BA3199F7CBEF34F138894586B5992B61BB8B5A99C5EE7", 16)
J_SCALAR = int("A7A50CD00493D820783EFC5F7293DE0CC3DB8AF39E1E63C8151436C9745970B4", 16)
J_PUB = (int("6814044C70048578E6B120480CBA0B81186054403CAE4C67F688F4074AEDF39B", 16),
         int("4969EBCD7400997FBEAF31481DBA738253052A2FF119FE178CF596EFA7AAE156", 16))
R_CA = int("474B007D2533DF88376824D4F784129F7BD7B01F1B3C7E69826912D4121A12DF", 16)
K_SCALAR = int("44F4B57187D90DEC714116A3CC94633AB379C06F03F93B3A075F3B1AEF2B2CEC", 16)
K_PUB = (int("80C6DE97A41127BAAFBC4F36E4E514514086A3E4B0F86F9729C52A8767616BF3", 16),
         int("5E333A1B7AC00E2C126C48C343A1A314D2853D4FBD559B9453C434C8C1CDE396", 16))


class TestPointAdd:
    def test_identity(self, brainpool):
        g = brainpool.g
        inf = Point.infinity(brainpool.curve_id)
        assert point_add(g, inf, brainpool) == g
        assert point_add(inf, g, brainpool) == g

    def test_inverse_pair(self, brainpool):
        g = brainpool.g
        assert point_add(g, point_neg(g, brainpool), brainpool).is_infinity

    def test_toy_doubling(self, toy):
        # oracle: on y^2 = x^3 + 2x + 2 mod 17, G + G = (6, 3)
        assert point_add(toy.g, toy.g, toy) == Point(TOY, 6, 3)

    def test_curve_mismatch(self, brainpool, secp):
        with pytest.raises(CurveMismatch):
            point_add(brainpool.g, secp.g, brainpool)

    def test_off_curve_rejected(self, brainpool):
        bogus = Point(brainpool.curve_id, 1, 2)
        with pytest.raises(NotOnCurve):
            point_add(bogus, brainpool.g, brainpool)


class TestScalarMul:
    def test_published_keypair(self, brainpool):
        pub = scalar_mul(Scalar(brainpool.curve_id, I_PRIV), brainpool.g,
                         brainpool)
        assert (pub.x, pub.y) == I_PUB

    def test_identity_scalar(self, named_curve):
        assert scalar_mul(Scalar(named_curve.curve_id, 1), named_curve.g,
                          named_curve) == named_curve.g

    def test_zero_scalar(self, named_curve):
        assert scalar_mul(Scalar(named_curve.curve_id, 0), named_curve.g,
                          named_curve).is_infinity

    def test_order_annihilates(self):
        for params in CURVES.values():
            result = scalar_mul(Scalar(params.curve_id, params.n), params.g,
                                params)
            assert result.is_infinity

    def test_toy_matches_repeated_addition(self, toy):
        acc = Point.infinity(TOY)
        for k in range(toy.n):
            got = scalar_mul(Scalar(TOY, k), toy.g, toy)
            assert got == acc
            acc = point_add(acc, toy.g, toy)

    def test_outputs_on_curve(self, named_curve, drng):
        for _ in range(20):
            k = Scalar(named_curve.curve_id,
                       int.from_bytes(drng.read(32), "big") % named_curve.n)
            assert is_on_curve(scalar_mul(k, named_curve.g, named_curve),
                               named_curve)


class TestScalarAdd:
    def test_published_j(self, brainpool):
        i = Scalar(brainpool.curve_id, I_PRIV)
        r = Scalar(brainpool.curve_id, R_RA % brainpool.n)
        assert scalar_add_mod_n(i, r, brainpool).value == J_SCALAR

    def test_additive_identity(self, brainpool):
        x = Scalar(brainpool.curve_id, 12345)
        zero = Scalar(brainpool.curve_id, 0)
        assert scalar_add_mod_n(x, zero, brainpool) == x

    def test_wraparound(self, named_curve):
        a = Scalar(named_curve.curve_id, named_curve.n - 1)
        b = Scalar(named_curve.curve_id, 1)
        assert scalar_add_mod_n(a, b, named_curve).value == 0


class TestGenerateKeypair:
    def test_seeded_reproduces_published_pair(self, brainpool):
        rng = FixedRng(I_PRIV.to_bytes(32, "big"))
        pair = generate_keypair(brainpool, rng)
        assert pair.private.value == I_PRIV
        assert (pair.public.x, pair.public.y) == I_PUB

    def test_range_postcondition(self, named_curve, drng):
        for _ in range(10):
            pair = generate_keypair(named_curve, drng)
            assert 1 <= pair.private.value <= named_curve.n - 1
            assert is_on_curve(pair.public, named_curve)

    def test_toy_exhaustive_publics_match_oracle(self, toy):
        seen = set()
        rng = DeterministicRng(7)
        for _ in range(300):
            pair = generate_keypair(toy, rng)
            assert 1 <= pair.private.value <= 18
            want = oracle_mul(pair.private.value, (toy.gx, toy.gy))
            assert (pair.public.x, pair.public.y) == want
            seen.add(pair.private.value)
        assert seen == set(range(1, 19))


class TestExpansion:
    def test_published_temporary_key(self, brainpool):
        I = Point(brainpool.curve_id, *I_PUB)
        r = Scalar(brainpool.curve_id, R_RA % brainpool.n)
        J = expand_public(I, r, brainpool)
        assert (J.x, J.y) == J_PUB

    def test_published_formal_key(self, brainpool):
        J = Point(brainpool.curve_id, *J_PUB)
        r = Scalar(brainpool.curve_id, R_CA)
        K = expand_public(J, r, brainpool)
        assert (K.x, K.y) == K_PUB

    def test_published_formal_private(self, brainpool):
        j = Scalar(brainpool.curve_id, J_SCALAR)
        r = Scalar(brainpool.curve_id, R_CA)
        assert expand_private(j, r, brainpool).value == K_SCALAR

    def test_published_secp_chain(self, secp):
        j = Scalar(secp.curve_id, int(
            "53E27B26EA5318D83048B2B6D9FE730C266BC2C581B9CD5238B674E0D2960A4A", 16))
        r_ca = Scalar(secp.curve_id, int(
            "A1754E3C913F9C98B1147DD142E66A3CBE59DD5B53B721C39B0A73BCE4EB1B32", 16))
        assert expand_private(j, r_ca, secp).to_hex() == (
            "F557C9637B92B570E15D30881CE4DD48E4C5A020D570EF15D3C0E89DB781257C")

    def test_blinding_range_enforced(self, brainpool):
        I = Point(brainpool.curve_id, *I_PUB)
        with pytest.raises(BlindingOutOfRange):
            expand_public(I, Scalar(brainpool.curve_id, 0), brainpool)
        with pytest.raises(BlindingOutOfRange):
            expand_public(I, Scalar(brainpool.curve_id, brainpool.n), brainpool)

    def test_zero_private_rejected(self, named_curve):
        x = Scalar(named_curve.curve_id, 5)
        r = Scalar(named_curve.curve_id, named_curve.n - 5)
        with pytest.raises(DegenerateResult):
            expand_private(x, r, named_curve)

    def test_degenerate_public(self, toy):
        # x*G expanded by r = n - x lands on the identity
        P = scalar_mul(Scalar(TOY, 4), toy.g, toy)
        with pytest.raises(DegenerateResult):
            expand_public(P, Scalar(TOY, toy.n - 4), toy)

    def test_homomorphism_random(self, named_curve, drng):
        params = named_curve
        for _ in range(100):
            x = Scalar(params.curve_id,
                       1 + int.from_bytes(drng.read(32), "big") % (params.n - 1))
            r = Scalar(params.curve_id,
                       1 + int.from_bytes(drng.read(32), "big") % (params.n - 1))
            if (x.value + r.value) % params.n == 0:
                continue
            left = scalar_mul(expand_private(x, r, params), params.g, params)
            right = expand_public(scalar_mul(x, params.g, params), r, params)
            assert left == right

    def test_homomorphism_exhaustive_toy(self, toy):
        for x in range(1, toy.n):
            X = scalar_mul(Scalar(TOY, x), toy.g, toy)
            for r in range(1, toy.n):
                if (x + r) % toy.n == 0:
                    continue
                left = scalar_mul(
                    expand_private(Scalar(TOY, x), Scalar(TOY, r), toy),
                    toy.g, toy)
                assert left == expand_public(X, Scalar(TOY, r), toy)


class TestEncoding:
    def test_point_hex(self, brainpool):
        assert Point.infinity(brainpool.curve_id).to_hex() == "INF"
        assert brainpool.g.to_hex() == f"{brainpool.gx:064X}{brainpool.gy:064X}"

    def test_point_bytes_round_trip(self, named_curve):
        g = named_curve.g
        assert Point.from_bytes(g.to_bytes(), named_curve.curve_id) == g
        inf = Point.infinity(named_curve.curve_id)
        assert Point.from_bytes(inf.to_bytes(), named_curve.curve_id) == inf

    @given(st.integers(min_value=0, max_value=2 ** 256 - 1))
    @settings(max_examples=50)
    def test_scalar_bytes_round_trip(self, value):
        s = Scalar(BRAINPOOL_P256R1, value)
        assert Scalar.from_bytes(s.to_bytes(), BRAINPOOL_P256R1) == s
        assert Scalar.from_hex(s.to_hex(), BRAINPOOL_P256R1) == s


class TestCurveParams:
    def test_generators_on_curve(self):
        for params in CURVES.values():
            assert is_on_curve(params.g, params)

    def test_cofactor_one(self):
        for params in CURVES.values():
            assert params.h == 1

    def test_toy_group_order(self, toy):
        assert len(enumerate_group(toy.p, toy.a, toy.b)) == toy.n
        assert enumerate_group()[0] == INF
