"""Hybrid encryption, authenticated symmetric encryption, and signatures.

ECIES here is curve-native ECDH on the protocol curve + HKDF-SHA256 +
AES-256-GCM with a zero nonce (every derived key is single-use).
Symmetric envelopes are AES-256-GCM with a random 12-byte nonce.
Signatures are ECDSA over SHA-256 with deterministic nonces
(RFC 6979 HMAC-DRBG construction) so repeated signing is reproducible.
"""

from __future__ import annotations

import hashlib
import hmac
from dataclasses import dataclass

from cryptography.exceptions import InvalidTag
from cryptography.hazmat.primitives.ciphers.aead import AESGCM

from .curve import CurveParams, Point, Scalar, generate_keypair, is_on_curve, point_add, scalar_mul
from .errors import (
    AuthenticationFailure,
    InvalidEphemeralKey,
    InvalidRecipientKey,
)
from .rng import RandomSource

ECIES_CONTEXT = b"anoncert-ecies-v1"
TAG_LEN = 16
NONCE_LEN = 12
KEY_LEN = 32
_ZERO_NONCE = b"\x00" * NONCE_LEN


@dataclass(frozen=True)
class EciesCiphertext:
    ephemeral_public: Point
    body: bytes
    tag: bytes

    def to_bytes(self) -> bytes:
        return self.ephemeral_public.to_bytes() + self.body + self.tag

    @classmethod
    def from_bytes(cls, data: bytes, curve_id: str) -> "EciesCiphertext":
        if len(data) < 64 + TAG_LEN:
            raise ValueError("ECIES ciphertext too short")
        return cls(Point.from_bytes(data[:64], curve_id),
                   data[64:-TAG_LEN], data[-TAG_LEN:])


@dataclass(frozen=True)
class SymmetricKey:
    key: bytes

    def __post_init__(self):
        if len(self.key) != KEY_LEN:
            raise ValueError("symmetric key must be 32 bytes")


@dataclass(frozen=True)
class SymmetricCiphertext:
    nonce: bytes
    body: bytes
    tag: bytes

    def to_bytes(self) -> bytes:
        return self.nonce + self.body + self.tag

    @classmethod
    def from_bytes(cls, data: bytes) -> "SymmetricCiphertext":
        if len(data) < NONCE_LEN + TAG_LEN:
            raise ValueError("symmetric ciphertext too short")
        return cls(data[:NONCE_LEN], data[NONCE_LEN:-TAG_LEN], data[-TAG_LEN:])


@dataclass(frozen=True)
class Signature:
    r: Scalar
    s: Scalar

    def to_bytes(self) -> bytes:
        return self.r.to_bytes() + self.s.to_bytes()

    @classmethod
    def from_bytes(cls, data: bytes, curve_id: str) -> "Signature":
        if len(data) != 64:
            raise ValueError("signature must be 64 bytes")
        return cls(Scalar.from_bytes(data[:32], curve_id),
                   Scalar.from_bytes(data[32:], curve_id))


def digest(message: bytes) -> bytes:
    return hashlib.sha256(message).digest()


def _hkdf_sha256(ikm: bytes, info: bytes, length: int) -> bytes:
    prk = hmac.new(b"\x00" * 32, ikm, hashlib.sha256).digest()
    out = b""
    block = b""
    counter = 1
    while len(out) < length:
        block = hmac.new(prk, block + info + bytes([counter]), hashlib.sha256).digest()
        out += block
        counter += 1
    return out[:length]


def _ecdh_key(private: Scalar, public: Point, params: CurveParams) -> bytes:
    shared = scalar_mul(private, public, params)
    if shared.is_infinity:
        raise InvalidEphemeralKey("ECDH produced the identity")
    return _hkdf_sha256(shared.x.to_bytes(32, "big"), ECIES_CONTEXT, KEY_LEN)


def ecies_encrypt(recipient_public: Point, plaintext: bytes,
                  params: CurveParams, rng: RandomSource) -> EciesCiphertext:
    if recipient_public.is_infinity or not is_on_curve(recipient_public, params):
        raise InvalidRecipientKey("recipient key off-curve or identity")
    eph = generate_keypair(params, rng)
    key = _ecdh_key(eph.private, recipient_public, params)
    sealed = AESGCM(key).encrypt(_ZERO_NONCE, plaintext, None)
    return EciesCiphertext(eph.public, sealed[:-TAG_LEN], sealed[-TAG_LEN:])


def ecies_decrypt(recipient_private: Scalar, ct: EciesCiphertext,
                  params: CurveParams) -> bytes:
    if ct.ephemeral_public.is_infinity or not is_on_curve(ct.ephemeral_public, params):
        raise InvalidEphemeralKey("ephemeral key off-curve or identity")
    key = _ecdh_key(recipient_private, ct.ephemeral_public, params)
    try:
        return AESGCM(key).decrypt(_ZERO_NONCE, ct.body + ct.tag, None)
    except InvalidTag:
        raise AuthenticationFailure("ECIES tag check failed") from None


def sym_encrypt(key: SymmetricKey, plaintext: bytes, aad: bytes,
                rng: RandomSource) -> SymmetricCiphertext:
    nonce = rng.read(NONCE_LEN)
    sealed = AESGCM(key.key).encrypt(nonce, plaintext, aad)
    return SymmetricCiphertext(nonce, sealed[:-TAG_LEN], sealed[-TAG_LEN:])


def sym_decrypt(key: SymmetricKey, ct: SymmetricCiphertext, aad: bytes) -> bytes:
    try:
        return AESGCM(key.key).decrypt(ct.nonce, ct.body + ct.tag, aad)
    except InvalidTag:
        raise AuthenticationFailure("AEAD tag check failed") from None


def _bits2int(data: bytes, n: int) -> int:
    x = int.from_bytes(data, "big")
    excess = len(data) * 8 - n.bit_length()
    if excess > 0:
        x >>= excess
    return x


def _deterministic_nonce(private: Scalar, h1: bytes, params: CurveParams) -> int:
    """RFC 6979 HMAC-SHA256 DRBG yielding a nonce in [1, n-1]."""
    n = params.n
    qlen_bytes = (n.bit_length() + 7) // 8
    x = private.value.to_bytes(qlen_bytes, "big")
    z = (_bits2int(h1, n) % n).to_bytes(qlen_bytes, "big")
    v = b"\x01" * 32
    k = b"\x00" * 32
    k = hmac.new(k, v + b"\x00" + x + z, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    k = hmac.new(k, v + b"\x01" + x + z, hashlib.sha256).digest()
    v = hmac.new(k, v, hashlib.sha256).digest()
    while True:
        t = b""
        while len(t) < qlen_bytes:
            v = hmac.new(k, v, hashlib.sha256).digest()
            t += v
        candidate = _bits2int(t[:qlen_bytes], n)
        if 1 <= candidate <= n - 1:
            return candidate
        k = hmac.new(k, v + b"\x00", hashlib.sha256).digest()
        v = hmac.new(k, v, hashlib.sha256).digest()


def sign(signer_private: Scalar, message: bytes, params: CurveParams) -> Signature:
    n = params.n
    h1 = digest(message)
    e = _bits2int(h1, n) % n
    nonce = _deterministic_nonce(signer_private, h1, params)
    while True:
        kG = scalar_mul(Scalar(params.curve_id, nonce), params.g, params)
        r = kG.x % n
        if r != 0:
            s = pow(nonce, -1, n) * (e + r * signer_private.value) % n
            if s != 0:
                return Signature(Scalar(params.curve_id, r),
                                 Scalar(params.curve_id, s))
        # vanishing r or s has negligible probability; perturb and retry
        nonce = (nonce + 1) % n or 1


def verify(signer_public: Point, message: bytes, sig: Signature,
           params: CurveParams) -> bool:
    n = params.n
    if signer_public.is_infinity or not is_on_curve(signer_public, params):
        return False
    if not (1 <= sig.r.value <= n - 1 and 1 <= sig.s.value <= n - 1):
        return False
    e = _bits2int(digest(message), n) % n
    w = pow(sig.s.value, -1, n)
    u1 = Scalar(params.curve_id, e * w % n)
    u2 = Scalar(params.curve_id, sig.r.value * w % n)
    R = point_add(scalar_mul(u1, params.g, params),
                  scalar_mul(u2, signer_public, params), params)
    if R.is_infinity:
        return False
    return R.x % n == sig.r.value
