// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/bytes.hpp>
#include <acevm/state.hpp>

#include <string_view>

namespace acevm {

enum class VmId : uint8_t {
    Native = 0,
    Evm = 1,
    Svm = 2,
    Bvm = 3,
    Tvm = 4,
    Ext = 5,  // registered extensions; fixed ids are not assigned here
};

std::string_view vm_name(VmId vm);
std::optional<VmId> vm_from_name(std::string_view name);

// Native address bytes per VM: EVM/TVM 20, Native/SVM/BVM 32.
size_t vm_address_len(VmId vm);

class IdentityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct VmAddress {
    VmId vm;
    Bytes bytes;
};

// Last out_len bytes of SHA-256(tag || id_com); out_len must be 20 or 32.
Bytes derive_vm_address(BytesView tag, const IdCom& id_com, size_t out_len);

// Canonical per-VM address: tags "evm:", "svm:", "bvm:", "tron:";
// Native is the id_com verbatim.
VmAddress address_for(VmId vm, const IdCom& id_com);

// SHA-256("ace_from_evm:" || addr); one-way, for explorer-style queries.
IdCom ace_id_from_evm(BytesView evm_addr20);

enum class LegacyChain : uint8_t { Evm = 0, Sol = 1, Btc = 2, Tron = 3 };

std::string_view legacy_chain_name(LegacyChain c);
std::optional<LegacyChain> legacy_chain_from_name(std::string_view name);

// SHA-256("legacy_<chain>:" || addr_or_pubkey). Length rules: evm/tron 20,
// sol 32, btc 20..33 (key-hash or pubkey forms).
IdCom legacy_id_com(LegacyChain chain, BytesView addr_or_pubkey);

struct KeyStream {
    uint32_t index = 0;
    Hash32 key_material{};
};

// 32 bytes of HKDF-SHA256(rev, info, salt).
KeyStream derive_key_stream(const Hash32& rev, BytesView info, BytesView salt, uint32_t index = 0);

using AttestationKey = Hash32;
using Attestation = Hash32;

Attestation make_attestation(const AttestationKey& key, const Hash32& tx_digest);
bool verify_attestation(const AttestationKey& key, const Hash32& tx_digest, const Attestation& att);

// Reverse index, kept in the state tree so resolution is deterministic and
// replays with the block. Entries are written once (account creation,
// genesis, administrative CLI paths) and never modified afterwards.
namespace revidx {

StateKey evm_key(BytesView evm_addr20);
StateKey tron_key(BytesView tron_addr20);

std::optional<IdCom> lookup_evm(const KvStore& kv, BytesView evm_addr20);
std::optional<IdCom> lookup_tron(const KvStore& kv, BytesView tron_addr20);

// Records evm and tron address -> id_com mappings for an identity.
void register_identity(KvStore& kv, const IdCom& id_com);

}  // namespace revidx

}  // namespace acevm
