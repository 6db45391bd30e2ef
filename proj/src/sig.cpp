// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/sig.hpp>

#include <acevm/crypto.hpp>

#include <openssl/bn.h>
#include <openssl/ec.h>
#include <openssl/obj_mac.h>

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace acevm::sig {

namespace {

struct Curve {
    EC_GROUP* group;
    BIGNUM* order;
    BIGNUM* half_order;
    BIGNUM* field_p;
};

const Curve& curve() {
    static Curve c = [] {
        Curve v{};
        v.group = EC_GROUP_new_by_curve_name(NID_secp256k1);
        if (!v.group)
            throw std::runtime_error("secp256k1 group unavailable");
        BN_CTX* ctx = BN_CTX_new();
        v.order = BN_new();
        EC_GROUP_get_order(v.group, v.order, ctx);
        v.half_order = BN_new();
        BN_rshift1(v.half_order, v.order);
        v.field_p = BN_new();
        EC_GROUP_get_curve(v.group, v.field_p, nullptr, nullptr, ctx);
        BN_CTX_free(ctx);
        return v;
    }();
    return c;
}

struct BnPtr {
    BIGNUM* n;
    explicit BnPtr(BIGNUM* p = BN_new()) : n(p) {}
    ~BnPtr() { BN_free(n); }
    BnPtr(const BnPtr&) = delete;
    BnPtr& operator=(const BnPtr&) = delete;
    operator BIGNUM*() const { return n; }
};

struct PointPtr {
    EC_POINT* p;
    explicit PointPtr(EC_POINT* q) : p(q) {}
    ~PointPtr() { EC_POINT_free(p); }
    PointPtr(const PointPtr&) = delete;
    PointPtr& operator=(const PointPtr&) = delete;
    operator EC_POINT*() const { return p; }
};

struct CtxPtr {
    BN_CTX* ctx;
    CtxPtr() : ctx(BN_CTX_new()) {}
    ~CtxPtr() { BN_CTX_free(ctx); }
    operator BN_CTX*() const { return ctx; }
};

void bn_from_bytes(BIGNUM* out, BytesView v) {
    BN_bin2bn(v.data(), static_cast<int>(v.size()), out);
}

std::array<uint8_t, 32> bn_to_32(const BIGNUM* n) {
    std::array<uint8_t, 32> out{};
    BN_bn2binpad(n, out.data(), 32);
    return out;
}

Bytes point_encode(const EC_POINT* p, point_conversion_form_t form) {
    CtxPtr ctx;
    size_t len = EC_POINT_point2oct(curve().group, p, form, nullptr, 0, ctx);
    Bytes out(len);
    EC_POINT_point2oct(curve().group, p, form, out.data(), len, ctx);
    return out;
}

// Deterministic nonce: HMAC(priv, digest || counter) reduced mod n.
void derive_nonce(BIGNUM* k, const Hash32& priv, const Hash32& digest, uint8_t counter) {
    Bytes msg(digest.begin(), digest.end());
    msg.push_back(counter);
    Hash32 h = hmac_sha256(as_view(priv), as_view(msg));
    bn_from_bytes(k, as_view(h));
    CtxPtr ctx;
    BN_mod(k, k, curve().order, ctx);
}

void ensure_sodium() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0)
            throw std::runtime_error("sodium_init failed");
    });
}

}  // namespace

SecpKeypair secp_keypair_from_seed(const Hash32& seed) {
    const Curve& c = curve();
    CtxPtr ctx;
    BnPtr d, range;
    bn_from_bytes(d, as_view(seed));
    // Clamp into [1, n-1].
    BN_copy(range, c.order);
    BN_sub_word(range, 1);
    BN_mod(d, d, range, ctx);
    BN_add_word(d, 1);

    PointPtr pub(EC_POINT_new(c.group));
    EC_POINT_mul(c.group, pub, d, nullptr, nullptr, ctx);

    SecpKeypair kp;
    kp.priv = bn_to_32(d);
    kp.pub_uncompressed = point_encode(pub, POINT_CONVERSION_UNCOMPRESSED);
    kp.pub_compressed = point_encode(pub, POINT_CONVERSION_COMPRESSED);
    return kp;
}

Bytes secp_sign_recoverable(const Hash32& priv, const Hash32& digest) {
    const Curve& c = curve();
    CtxPtr ctx;
    BnPtr d, z, k, r, s, x, kinv, tmp;
    bn_from_bytes(d, as_view(priv));
    bn_from_bytes(z, as_view(digest));
    BN_mod(z, z, c.order, ctx);

    for (uint8_t counter = 0;; counter++) {
        derive_nonce(k, priv, digest, counter);
        if (BN_is_zero(k))
            continue;
        PointPtr R(EC_POINT_new(c.group));
        EC_POINT_mul(c.group, R, k, nullptr, nullptr, ctx);
        BnPtr ry;
        EC_POINT_get_affine_coordinates(c.group, R, x, ry, ctx);
        BN_mod(r, x, c.order, ctx);
        if (BN_is_zero(r))
            continue;
        int recid = BN_is_odd(ry) ? 1 : 0;
        if (BN_cmp(x, c.order) >= 0)
            recid |= 2;

        // s = k^-1 (z + r d) mod n
        BN_mod_inverse(kinv, k, c.order, ctx);
        BN_mod_mul(tmp, r, d, c.order, ctx);
        BN_mod_add(tmp, tmp, z, c.order, ctx);
        BN_mod_mul(s, kinv, tmp, c.order, ctx);
        if (BN_is_zero(s))
            continue;
        if (BN_cmp(s, c.half_order) > 0) {
            BN_sub(s, c.order, s);
            recid ^= 1;
        }

        Bytes out;
        auto rb = bn_to_32(r);
        auto sb = bn_to_32(s);
        append(out, as_view(rb));
        append(out, as_view(sb));
        out.push_back(static_cast<uint8_t>(recid));
        return out;
    }
}

Bytes secp_sign(const Hash32& priv, const Hash32& digest) {
    Bytes sig = secp_sign_recoverable(priv, digest);
    sig.resize(64);
    return sig;
}

std::optional<Bytes> secp_recover(const Hash32& digest, BytesView sig65) {
    if (sig65.size() != 65)
        return std::nullopt;
    const Curve& c = curve();
    CtxPtr ctx;
    uint8_t recid = sig65[64];
    if (recid > 3)
        return std::nullopt;

    BnPtr r, s, x, z, rinv, u1, u2;
    bn_from_bytes(r, sig65.subspan(0, 32));
    bn_from_bytes(s, sig65.subspan(32, 32));
    if (BN_is_zero(r) || BN_is_zero(s) || BN_cmp(r, c.order) >= 0 || BN_cmp(s, c.order) >= 0)
        return std::nullopt;

    BN_copy(x, r);
    if (recid & 2)
        BN_add(x, x, c.order);
    if (BN_cmp(x, c.field_p) >= 0)
        return std::nullopt;

    PointPtr R(EC_POINT_new(c.group));
    if (EC_POINT_set_compressed_coordinates(c.group, R, x, recid & 1, ctx) != 1)
        return std::nullopt;

    bn_from_bytes(z, as_view(digest));
    BN_mod(z, z, c.order, ctx);

    // Q = r^-1 (s R - z G)
    BN_mod_inverse(rinv, r, c.order, ctx);
    BN_mod_mul(u2, s, rinv, c.order, ctx);    // u2 = s/r
    BN_mod_mul(u1, z, rinv, c.order, ctx);    // u1 = z/r
    BN_mod_sub(u1, c.order, u1, c.order, ctx);  // u1 = -z/r mod n

    PointPtr Q(EC_POINT_new(c.group));
    if (EC_POINT_mul(c.group, Q, u1, R, u2, ctx) != 1)
        return std::nullopt;
    if (EC_POINT_is_at_infinity(c.group, Q))
        return std::nullopt;
    return point_encode(Q, POINT_CONVERSION_UNCOMPRESSED);
}

bool secp_verify(BytesView pub, const Hash32& digest, BytesView sig64) {
    if (sig64.size() != 64 || (pub.size() != 33 && pub.size() != 65))
        return false;
    const Curve& c = curve();
    CtxPtr ctx;

    PointPtr Q(EC_POINT_new(c.group));
    if (EC_POINT_oct2point(c.group, Q, pub.data(), pub.size(), ctx) != 1)
        return false;

    BnPtr r, s, z, sinv, u1, u2, x;
    bn_from_bytes(r, sig64.subspan(0, 32));
    bn_from_bytes(s, sig64.subspan(32, 32));
    if (BN_is_zero(r) || BN_is_zero(s) || BN_cmp(r, c.order) >= 0 || BN_cmp(s, c.order) >= 0)
        return false;
    bn_from_bytes(z, as_view(digest));
    BN_mod(z, z, c.order, ctx);

    BN_mod_inverse(sinv, s, c.order, ctx);
    BN_mod_mul(u1, z, sinv, c.order, ctx);
    BN_mod_mul(u2, r, sinv, c.order, ctx);

    PointPtr R(EC_POINT_new(c.group));
    if (EC_POINT_mul(c.group, R, u1, Q, u2, ctx) != 1)
        return false;
    if (EC_POINT_is_at_infinity(c.group, R))
        return false;
    BnPtr ry;
    EC_POINT_get_affine_coordinates(c.group, R, x, ry, ctx);
    BN_mod(x, x, c.order, ctx);
    return BN_cmp(x, r) == 0;
}

EdKeypair ed25519_keypair_from_seed(const Hash32& seed) {
    ensure_sodium();
    EdKeypair kp;
    crypto_sign_seed_keypair(kp.pub.data(), kp.priv.data(), seed.data());
    return kp;
}

std::array<uint8_t, 64> ed25519_sign(const EdKeypair& kp, BytesView msg) {
    ensure_sodium();
    std::array<uint8_t, 64> out{};
    crypto_sign_detached(out.data(), nullptr, msg.data(), msg.size(), kp.priv.data());
    return out;
}

bool ed25519_verify(BytesView pub32, BytesView msg, BytesView sig64) {
    ensure_sodium();
    if (pub32.size() != 32 || sig64.size() != 64)
        return false;
    return crypto_sign_verify_detached(sig64.data(), msg.data(), msg.size(), pub32.data()) == 0;
}

}  // namespace acevm::sig
