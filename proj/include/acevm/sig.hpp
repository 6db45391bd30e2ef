// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/bytes.hpp>

namespace acevm::sig {

// --- secp256k1 ECDSA (OpenSSL EC/BN backed) ---

struct SecpKeypair {
    Hash32 priv{};
    Bytes pub_uncompressed;  // 65 bytes, 0x04 || X || Y
    Bytes pub_compressed;    // 33 bytes
};

SecpKeypair secp_keypair_from_seed(const Hash32& seed);

// Deterministic signature (HMAC-derived nonce, low-s): r || s || recid.
Bytes secp_sign_recoverable(const Hash32& priv, const Hash32& digest);

// r || s, for verify-only chains.
Bytes secp_sign(const Hash32& priv, const Hash32& digest);

// Recovers the uncompressed public key, or nullopt if the signature is bad.
std::optional<Bytes> secp_recover(const Hash32& digest, BytesView sig65);

// pub may be compressed (33) or uncompressed (65); sig is r || s.
bool secp_verify(BytesView pub, const Hash32& digest, BytesView sig64);

// --- Ed25519 (libsodium) ---

struct EdKeypair {
    std::array<uint8_t, 32> pub{};
    std::array<uint8_t, 64> priv{};
};

EdKeypair ed25519_keypair_from_seed(const Hash32& seed);
std::array<uint8_t, 64> ed25519_sign(const EdKeypair& kp, BytesView msg);
bool ed25519_verify(BytesView pub32, BytesView msg, BytesView sig64);

}  // namespace acevm::sig
