// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/ingress.hpp>

#include <acevm/crypto.hpp>
#include <acevm/payload.hpp>
#include <acevm/sig.hpp>

#include <algorithm>

namespace acevm {

namespace {

uint8_t chain_tag(LegacyChain c) {
    switch (c) {
    case LegacyChain::Evm: return 0x01;
    case LegacyChain::Sol: return 0x02;
    case LegacyChain::Btc: return 0x03;
    case LegacyChain::Tron: return 0x04;
    }
    return 0xFF;
}

bool fields_well_formed(const RawTxEnvelope& env) {
    size_t rlen = env.fields.recipient.size();
    switch (env.chain) {
    case LegacyChain::Evm:
    case LegacyChain::Tron:
        return rlen == 20 && env.fields.inputs.empty();
    case LegacyChain::Sol:
        return rlen == 32 && env.fields.inputs.empty();
    case LegacyChain::Btc:
        return rlen == 32 && !env.fields.inputs.empty();
    }
    return false;
}

RawVerifyResult reject(ErrCode err, std::string msg = {}) {
    RawVerifyResult r;
    r.ok = false;
    r.err = err;
    r.msg = std::move(msg);
    return r;
}

}  // namespace

std::optional<Bytes> canonical_bytes(const RawTxEnvelope& env) {
    if (!fields_well_formed(env))
        return std::nullopt;
    Bytes out;
    out.push_back(chain_tag(env.chain));
    append_u32be(out, static_cast<uint32_t>(env.fields.recipient.size()));
    append(out, as_view(env.fields.recipient));
    append_u64be(out, env.fields.amount);
    append_u64be(out, env.fields.nonce_or_slot);
    append_u32be(out, static_cast<uint32_t>(env.fields.chain_domain.size()));
    append(out, as_view(env.fields.chain_domain));
    append_u32be(out, static_cast<uint32_t>(env.fields.inputs.size()));
    for (const auto& in : env.fields.inputs) {
        append(out, as_view(in.txid));
        append_u32be(out, in.vout);
    }
    return out;
}

Addr20 evm_address_of_pubkey(BytesView uncompressed65) {
    Hash32 h = sha256(uncompressed65.subspan(1));
    return to_array<20>(BytesView(h).subspan(12));
}

RawVerifyResult verify_raw(const RawTxEnvelope& env, ReplayGuard& guard,
                           BytesView expected_domain, const Bytes* expected_payload) {
    auto canonical = canonical_bytes(env);
    if (!canonical)
        return reject(ErrCode::MalformedEnvelope, "bad field lengths");
    if (!std::ranges::equal(as_view(env.fields.chain_domain), expected_domain))
        return reject(ErrCode::DomainMismatch);
    Hash32 digest = sha256(as_view(*canonical));

    RawVerifyResult out;
    switch (env.chain) {
    case LegacyChain::Evm:
    case LegacyChain::Tron: {
        if (env.signature.size() != 65)
            return reject(ErrCode::BadSignature, "want 65-byte recoverable signature");
        auto pub = sig::secp_recover(digest, as_view(env.signature));
        if (!pub)
            return reject(ErrCode::BadSignature);
        Addr20 addr = evm_address_of_pubkey(as_view(*pub));
        auto chain =
            env.chain == LegacyChain::Evm ? LegacyChain::Evm : LegacyChain::Tron;
        out.sender = legacy_id_com(chain, as_view(addr));
        EvmTransfer t{to_array<20>(as_view(env.fields.recipient)), env.fields.amount};
        out.payload = encode_evm_transfer(
            t, env.chain == LegacyChain::Evm ? kOpEvmTransfer : kOpTvmTransfer);
        break;
    }
    case LegacyChain::Sol: {
        if (env.signer_material.size() != 32 || env.signature.size() != 64)
            return reject(ErrCode::BadSignature, "want 32-byte pubkey, 64-byte signature");
        if (!sig::ed25519_verify(as_view(env.signer_material), as_view(*canonical),
                                 as_view(env.signature)))
            return reject(ErrCode::BadSignature);
        out.sender = legacy_id_com(LegacyChain::Sol, as_view(env.signer_material));
        out.payload = encode_svm_system_transfer(
            {to_array<32>(as_view(env.fields.recipient)), env.fields.amount});
        break;
    }
    case LegacyChain::Btc: {
        // ECDSA over the canonical digest. A 32-byte x-only key marks a
        // Taproot/Schnorr spend, which is recognized but not implemented.
        if (env.signer_material.size() == 32)
            return reject(ErrCode::Unsupported, "schnorr/taproot not implemented");
        if (env.signer_material.size() != 33 && env.signer_material.size() != 65)
            return reject(ErrCode::BadSignature, "want compressed or uncompressed pubkey");
        if (env.signature.size() != 64)
            return reject(ErrCode::BadSignature, "want 64-byte compact signature");
        if (!sig::secp_verify(as_view(env.signer_material), digest, as_view(env.signature)))
            return reject(ErrCode::BadSignature);
        out.sender = legacy_id_com(LegacyChain::Btc, as_view(env.signer_material));
        BvmUtxoTransfer t;
        t.inputs = env.fields.inputs;
        t.outputs.push_back({to_array<32>(as_view(env.fields.recipient)), env.fields.amount});
        out.payload = encode_bvm_utxo_transfer(t);
        break;
    }
    }

    if (expected_payload && *expected_payload != out.payload)
        return reject(ErrCode::PayloadMismatch, "payload does not match canonical form");

    // Replay rules; the guard mutates only on acceptance.
    switch (env.chain) {
    case LegacyChain::Evm:
    case LegacyChain::Tron: {
        uint64_t expected = 0;
        if (auto it = guard.nonces.find(out.sender); it != guard.nonces.end())
            expected = it->second;
        if (env.fields.nonce_or_slot != expected)
            return reject(ErrCode::ReplayDetected, "nonce mismatch");
        guard.nonces[out.sender] = expected + 1;
        break;
    }
    case LegacyChain::Sol: {
        if (guard.slot_signatures.contains(env.signature))
            return reject(ErrCode::ReplayDetected, "signature already seen this slot");
        guard.slot_signatures.insert(env.signature);
        break;
    }
    case LegacyChain::Btc: {
        for (const auto& in : env.fields.inputs)
            if (guard.btc_spent.contains({in.txid, in.vout}))
                return reject(ErrCode::ReplayDetected, "outpoint already spent");
        for (const auto& in : env.fields.inputs)
            guard.btc_spent.insert({in.txid, in.vout});
        break;
    }
    }

    out.ok = true;
    return out;
}

}  // namespace acevm
