// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/crypto.hpp>

#include <openssl/evp.h>

#include <cstdio>
#include <stdexcept>

namespace acevm {

Hash32 sha256(BytesView data) {
    Hash32 out{};
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr);
    return out;
}

Hash32 sha256_concat(std::initializer_list<BytesView> parts) {
    Sha256Stream s;
    for (auto p : parts)
        s.update(p);
    return s.finalize();
}

Sha256Stream::Sha256Stream() : ctx_(EVP_MD_CTX_new()) {
    EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(ctx_), EVP_sha256(), nullptr);
}

Sha256Stream::~Sha256Stream() {
    EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_));
}

void Sha256Stream::update(BytesView data) {
    EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), data.data(), data.size());
}

Hash32 Sha256Stream::finalize() {
    Hash32 out{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), out.data(), &len);
    return out;
}

Hash32 hmac_sha256(BytesView key, BytesView msg) {
    // HMAC over SHA-256 with 64-byte block size.
    uint8_t k[64] = {0};
    if (key.size() <= 64) {
        std::memcpy(k, key.data(), key.size());
    } else {
        auto h = sha256(key);
        std::memcpy(k, h.data(), h.size());
    }
    uint8_t ipad[64], opad[64];
    for (int i = 0; i < 64; i++) {
        ipad[i] = k[i] ^ 0x36;
        opad[i] = k[i] ^ 0x5c;
    }
    Sha256Stream inner;
    inner.update({ipad, 64});
    inner.update(msg);
    auto ih = inner.finalize();
    Sha256Stream outer;
    outer.update({opad, 64});
    outer.update(as_view(ih));
    return outer.finalize();
}

Bytes hkdf_sha256(BytesView ikm, BytesView salt, BytesView info, size_t out_len) {
    if (out_len > 255 * 32)
        throw std::invalid_argument("hkdf_sha256: output too long");
    Hash32 prk = hmac_sha256(salt, ikm);
    Bytes okm;
    okm.reserve(out_len);
    Bytes t;
    uint8_t counter = 1;
    while (okm.size() < out_len) {
        Bytes block = t;
        append(block, info);
        block.push_back(counter++);
        auto h = hmac_sha256(as_view(prk), as_view(block));
        t.assign(h.begin(), h.end());
        size_t take = std::min(t.size(), out_len - okm.size());
        okm.insert(okm.end(), t.begin(), t.begin() + static_cast<long>(take));
    }
    return okm;
}

Hash32 tagged_hash(std::string_view tag, std::initializer_list<BytesView> parts) {
    Sha256Stream s;
    s.update(as_view(tag));
    for (auto p : parts)
        s.update(p);
    return s.finalize();
}

std::string to_hex(BytesView v) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(v.size() * 2);
    for (uint8_t b : v) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0f]);
    }
    return out;
}

static int hex_nibble(char c) {
    if (c >= '0' && c <= '9')
        return c - '0';
    if (c >= 'a' && c <= 'f')
        return c - 'a' + 10;
    if (c >= 'A' && c <= 'F')
        return c - 'A' + 10;
    return -1;
}

std::optional<Bytes> from_hex(std::string_view s) {
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X'))
        s.remove_prefix(2);
    if (s.size() % 2 != 0)
        return std::nullopt;
    Bytes out;
    out.reserve(s.size() / 2);
    for (size_t i = 0; i < s.size(); i += 2) {
        int hi = hex_nibble(s[i]);
        int lo = hex_nibble(s[i + 1]);
        if (hi < 0 || lo < 0)
            return std::nullopt;
        out.push_back(static_cast<uint8_t>((hi << 4) | lo));
    }
    return out;
}

}  // namespace acevm
