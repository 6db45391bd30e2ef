// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/tx.hpp>

#include <set>
#include <unordered_map>

namespace acevm {

/// Replay protection for raw-chain envelopes. Value type: the scheduler
/// snapshots it before a parallel attempt and restores it on fallback.
struct ReplayGuard {
    // Expected next nonce per legacy identity (evm and tron ingress).
    std::unordered_map<Hash32, uint64_t, Hash32Hasher> nonces;
    // Solana signatures seen in the current slot (= one executed block).
    std::set<Bytes> slot_signatures;
    // Outpoints already spent through raw btc envelopes.
    std::set<std::pair<Hash32, uint32_t>> btc_spent;

    void begin_block() { slot_signatures.clear(); }
};

struct RawVerifyResult {
    bool ok = false;
    ErrCode err = ErrCode::None;
    std::string msg;
    IdCom sender{};
    Bytes payload;  // the synthesized, routed transaction payload
};

// Deterministic signing preimage: chain tag byte || length-prefixed fields in
// fixed order. Returns nullopt when a field violates its chain's length rule.
std::optional<Bytes> canonical_bytes(const RawTxEnvelope& env);

// Runs the four-step raw ingress check: signature verification over the
// canonical bytes, legacy identity mapping, payload synthesis (compared with
// expected_payload when given), and the replay-guard rule. The guard is only
// mutated on acceptance.
RawVerifyResult verify_raw(const RawTxEnvelope& env, ReplayGuard& guard,
                           BytesView expected_domain, const Bytes* expected_payload = nullptr);

// 20-byte address form of an uncompressed secp256k1 key:
// SHA-256(pubkey[1:65])[12:32]. (SHA-256 stands in for Keccak here.)
Addr20 evm_address_of_pubkey(BytesView uncompressed65);

}  // namespace acevm
