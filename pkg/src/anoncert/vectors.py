"""Published key-expansion test vectors and a per-relation verifier.

Each named curve carries one full chain i -> I -> (r_RA) -> j, J ->
(r_CA) -> k, K. Every algebraic relation in the chain is checked
separately, so a single inconsistent constant is reported on its own
line instead of silently poisoning the rest of the suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import (
    BRAINPOOL_P256R1,
    Point,
    SECP256R1,
    Scalar,
    expand_private,
    expand_public,
    get_curve,
    scalar_mul,
)


@dataclass(frozen=True)
class VectorChain:
    curve_id: str
    i: str
    I: tuple[str, str]
    r_ra: str
    j: str
    J: tuple[str, str]
    r_ca: str
    k: str
    K: tuple[str, str]


PUBLISHED_VECTORS = {
    BRAINPOOL_P256R1: VectorChain(
        curve_id=BRAINPOOL_P256R1,
        i="5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874",
        I=("719CE2A5F8D8174418C3B3AA2E9C4F0EE8AF17F3A9E02A0656E03C32EC05383A",
           "2E98CA241C58A4933AEE7D4A22394D27EFC1C64618686A00519CC5CB4DE1A93D"),
        r_ra="F407A78C2CFC8586AC1BA3199F7CBEF34F138894586B5992B61BB8B5A99C5EE7",
        j="A7A50CD00493D820783EFC5F7293DE0CC3DB8AF39E1E63C8151436C9745970B4",
        J=("6814044C70048578E6B120480CBA0B81186054403CAE4C67F688F4074AEDF39B",
           "4969EBCD7400997FBEAF31481DBA738253052A2FF119FE178CF596EFA7AAE156"),
        r_ca="474B007D2533DF88376824D4F784129F7BD7B01F1B3C7E69826912D4121A12DF",
        k="44F4B57187D90DEC714116A3CC94633AB379C06F03F93B3A075F3B1AEF2B2CEC",
        K=("80C6DE97A41127BAAFBC4F36E4E514514086A3E4B0F86F9729C52A8767616BF3",
           "5E333A1B7AC00E2C126C48C343A1A314D2853D4FBD559B9453C434C8C1CDE396"),
    ),
    SECP256R1: VectorChain(
        curve_id=SECP256R1,
        i="5D98BD1F7985FC560A8963D6709AAC8B01017D02FB14B12CEF168C9662056874",
        I=("490D13266EB3E12C28E44C345B345C431D9BFAB5B101D5E0144AB6ECF194D852",
           "ABC2D769EF6DE7373AD78082BEC46E455A84BAD6CDCDA8FC557438E9AB56ECDD"),
        r_ra="F649BE0670CD1C8325BF4EE06963C680E25140702DBCBAAA3D59B30D6CF3C727",
        j="53E27B26EA5318D83048B2B6D9FE730C266BC2C581B9CD5238B674E0D2960A4A",
        J=("78BF0F472CD984F8EA7A756A514118652B88224DD344D5D593E03F2AFBCC6FC6",
           "A4C43CFFC945A1576B290EC63DB8FB31C74EF44F02963C67EB884E025B1A442E"),
        r_ca="A1754E3C913F9C98B1147DD142E66A3CBE59DD5B53B721C39B0A73BCE4EB1B32",
        k="F557C9637B92B570E15D30881CE4DD48E4C5A020D570EF15D3C0E89DB781257C",
        K=("6FDFDCE25F876BD4B23FBFBFC9E49872944F01926989B5A72A1FD84125FEB428",
           "8A108A7CBA97CF26FB9768A7599473F5F9AA27CD462280F41FCAC13FF1BA42E3"),
    ),
}


@dataclass(frozen=True)
class RelationResult:
    curve_id: str
    relation: str
    passed: bool
    expected: str
    computed: str


def _point(coords: tuple[str, str], curve_id: str) -> Point:
    return Point(curve_id, int(coords[0], 16), int(coords[1], 16))


def check_chain(chain: VectorChain) -> list[RelationResult]:
    params = get_curve(chain.curve_id)
    cid = chain.curve_id
    i = Scalar.from_hex(chain.i, cid)
    # The published brainpool r_RA exceeds n; its chain values are consistent
    # with the residue mod n, so blinding scalars are reduced before use.
    r_ra = Scalar(cid, int(chain.r_ra, 16) % params.n)
    r_ca = Scalar(cid, int(chain.r_ca, 16) % params.n)
    I_pub = _point(chain.I, cid)
    J_pub = _point(chain.J, cid)
    K_pub = _point(chain.K, cid)
    j_exp = Scalar.from_hex(chain.j, cid)
    k_exp = Scalar.from_hex(chain.k, cid)

    results = []

    def note(relation: str, expected: str, computed: str):
        results.append(RelationResult(cid, relation, expected == computed,
                                      expected, computed))

    note("I = i*G", I_pub.to_hex(), scalar_mul(i, params.g, params).to_hex())
    note("J = I + r_RA*G", J_pub.to_hex(),
         expand_public(I_pub, r_ra, params).to_hex())
    note("K = J + r_CA*G", K_pub.to_hex(),
         expand_public(J_pub, r_ca, params).to_hex())
    note("j = (i + r_RA) mod n", j_exp.to_hex(),
         expand_private(i, r_ra, params).to_hex())
    note("k = (j + r_CA) mod n", k_exp.to_hex(),
         expand_private(j_exp, r_ca, params).to_hex())
    note("k*G = K", K_pub.to_hex(),
         scalar_mul(k_exp, params.g, params).to_hex())
    return results


def verify_published_vectors(vectors=None) -> list[RelationResult]:
    """Check every relation for every curve; mismatches are reported, not raised."""
    vectors = PUBLISHED_VECTORS if vectors is None else vectors
    results = []
    for chain in vectors.values():
        results.extend(check_chain(chain))
    return results
