// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/identity.hpp>

#include <variant>

namespace acevm {

enum class ErrCode {
    None = 0,
    // dispatch
    UnknownOpcode,
    AuthFailed,
    InvalidTarget,
    CrossVmFailed,
    CrossVmDepthExceeded,
    // engines
    MalformedPayload,
    InsufficientBalance,
    AccountExists,
    UnknownAccount,
    UnknownContract,
    PrecompileUnimplemented,
    ProgramFailed,
    UnsupportedInstruction,
    AttestFailed,
    MissingUtxo,
    NotOwner,
    OutputsExceedInputs,
    UnmappedOpcode,
    UnresolvableAddress,
    // token
    MintExists,
    UnknownMint,
    NotAuthority,
    SupplyOverflow,
    AllowanceExceeded,
    // raw ingress
    BadSignature,
    ReplayDetected,
    MalformedEnvelope,
    DomainMismatch,
    PayloadMismatch,
    Unsupported,
};

std::string_view err_name(ErrCode code);

struct AttestedAuth {
    IdCom id_com{};
    Attestation attestation{};
};

struct Outpoint {
    Hash32 txid{};
    uint32_t vout = 0;

    bool operator==(const Outpoint&) const = default;
    auto operator<=>(const Outpoint&) const = default;
};

// The structured body a raw-chain signature commits to. `inputs` is only
// meaningful for btc envelopes and must be empty elsewhere.
struct CanonicalFields {
    Bytes recipient;
    uint64_t amount = 0;
    uint64_t nonce_or_slot = 0;
    Bytes chain_domain;
    std::vector<Outpoint> inputs;
};

struct RawTxEnvelope {
    LegacyChain chain = LegacyChain::Evm;
    CanonicalFields fields;
    Bytes signer_material;  // pubkey (sol/btc); unused for recovery chains
    Bytes signature;        // evm/tron: r||s||recid (65); sol: 64; btc: r||s (64)
};

struct RawAuth {
    RawTxEnvelope envelope;
};

struct Transaction {
    Bytes payload;  // payload[0] is the routing opcode
    std::variant<AttestedAuth, RawAuth> auth;
    std::optional<std::array<uint8_t, 16>> context_tag;
};

using Block = std::vector<Transaction>;

struct CrossVmRequest {
    VmId target_vm = VmId::Native;
    Hash32 program{};  // program or contract id, 32 bytes
    Bytes data;
    IdCom origin{};
};

struct Receipt {
    bool success = false;
    std::optional<VmId> vm;
    ErrCode error = ErrCode::None;
    std::string error_msg;
    std::vector<Bytes> logs;
    std::vector<CrossVmRequest> requests;
    uint64_t gas = 0;  // reserved
};

// SHA-256 of the payload bytes; the message attestations bind to.
Hash32 tx_digest(const Transaction& tx);

Transaction make_attested_tx(Bytes payload, const IdCom& sender, const AttestationKey& key,
                             std::optional<std::array<uint8_t, 16>> tag = std::nullopt);

// --- JSON wire formats (hex-encoded byte fields, u64 as decimal strings) ---

std::string block_to_json(const Block& block);
Block block_from_json(const std::string& text);

std::string envelope_to_json(const RawTxEnvelope& env);
RawTxEnvelope envelope_from_json(const std::string& text);

std::string receipt_to_json(const Receipt& r, size_t index);
std::string receipts_to_json(const std::vector<Receipt>& rs);

// SHA-256 over the newline-joined canonical receipt JSON lines.
Hash32 receipts_digest(const std::vector<Receipt>& rs);

class WireError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace acevm
