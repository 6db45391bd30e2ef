// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/identity.hpp>

#include <acevm/crypto.hpp>

namespace acevm {

std::string_view vm_name(VmId vm) {
    switch (vm) {
    case VmId::Native: return "native";
    case VmId::Evm: return "evm";
    case VmId::Svm: return "svm";
    case VmId::Bvm: return "bvm";
    case VmId::Tvm: return "tvm";
    case VmId::Ext: return "ext";
    }
    return "unknown";
}

std::optional<VmId> vm_from_name(std::string_view name) {
    for (VmId vm : {VmId::Native, VmId::Evm, VmId::Svm, VmId::Bvm, VmId::Tvm, VmId::Ext})
        if (vm_name(vm) == name)
            return vm;
    return std::nullopt;
}

size_t vm_address_len(VmId vm) {
    switch (vm) {
    case VmId::Evm:
    case VmId::Tvm:
        return 20;
    default:
        return 32;
    }
}

Bytes derive_vm_address(BytesView tag, const IdCom& id_com, size_t out_len) {
    if (tag.empty())
        throw IdentityError("derive_vm_address: empty tag");
    if (out_len != 20 && out_len != 32)
        throw IdentityError("derive_vm_address: unsupported address length");
    Hash32 h = sha256_concat({tag, as_view(id_com)});
    return Bytes(h.begin() + static_cast<long>(32 - out_len), h.end());
}

VmAddress address_for(VmId vm, const IdCom& id_com) {
    switch (vm) {
    case VmId::Native:
        return {vm, Bytes(id_com.begin(), id_com.end())};
    case VmId::Evm:
        return {vm, derive_vm_address(as_view("evm:"), id_com, 20)};
    case VmId::Svm:
        return {vm, derive_vm_address(as_view("svm:"), id_com, 32)};
    case VmId::Bvm:
        return {vm, derive_vm_address(as_view("bvm:"), id_com, 32)};
    case VmId::Tvm:
        return {vm, derive_vm_address(as_view("tron:"), id_com, 20)};
    case VmId::Ext:
        break;
    }
    throw IdentityError("address_for: unknown vm");
}

IdCom ace_id_from_evm(BytesView evm_addr20) {
    if (evm_addr20.size() != 20)
        throw IdentityError("ace_id_from_evm: address must be 20 bytes");
    return tagged_hash("ace_from_evm:", {evm_addr20});
}

std::string_view legacy_chain_name(LegacyChain c) {
    switch (c) {
    case LegacyChain::Evm: return "evm";
    case LegacyChain::Sol: return "sol";
    case LegacyChain::Btc: return "btc";
    case LegacyChain::Tron: return "tron";
    }
    return "unknown";
}

std::optional<LegacyChain> legacy_chain_from_name(std::string_view name) {
    for (LegacyChain c :
         {LegacyChain::Evm, LegacyChain::Sol, LegacyChain::Btc, LegacyChain::Tron})
        if (legacy_chain_name(c) == name)
            return c;
    return std::nullopt;
}

IdCom legacy_id_com(LegacyChain chain, BytesView addr_or_pubkey) {
    size_t n = addr_or_pubkey.size();
    switch (chain) {
    case LegacyChain::Evm:
        if (n != 20)
            throw IdentityError("legacy_id_com: evm address must be 20 bytes");
        return tagged_hash("legacy_evm:", {addr_or_pubkey});
    case LegacyChain::Sol:
        if (n != 32)
            throw IdentityError("legacy_id_com: sol pubkey must be 32 bytes");
        return tagged_hash("legacy_sol:", {addr_or_pubkey});
    case LegacyChain::Btc:
        if (n < 20 || n > 33)
            throw IdentityError("legacy_id_com: btc key material must be 20..33 bytes");
        return tagged_hash("legacy_btc:", {addr_or_pubkey});
    case LegacyChain::Tron:
        if (n != 20)
            throw IdentityError("legacy_id_com: tron address must be 20 bytes");
        return tagged_hash("legacy_tron:", {addr_or_pubkey});
    }
    throw IdentityError("legacy_id_com: unknown chain");
}

KeyStream derive_key_stream(const Hash32& rev, BytesView info, BytesView salt, uint32_t index) {
    Bytes okm = hkdf_sha256(as_view(rev), salt, info, 32);
    KeyStream ks;
    ks.index = index;
    ks.key_material = to_array<32>(as_view(okm));
    return ks;
}

Attestation make_attestation(const AttestationKey& key, const Hash32& tx_digest) {
    return hmac_sha256(as_view(key), as_view(tx_digest));
}

bool verify_attestation(const AttestationKey& key, const Hash32& tx_digest,
                        const Attestation& att) {
    return make_attestation(key, tx_digest) == att;
}

namespace revidx {

StateKey evm_key(BytesView evm_addr20) {
    return tagged_hash("rev-evm:", {evm_addr20});
}

StateKey tron_key(BytesView tron_addr20) {
    return tagged_hash("rev-tron:", {tron_addr20});
}

static std::optional<IdCom> lookup(const KvStore& kv, const StateKey& key) {
    auto v = kv.get(key);
    if (!v || v->size() != 32)
        return std::nullopt;
    return to_array<32>(as_view(*v));
}

std::optional<IdCom> lookup_evm(const KvStore& kv, BytesView evm_addr20) {
    return lookup(kv, evm_key(evm_addr20));
}

std::optional<IdCom> lookup_tron(const KvStore& kv, BytesView tron_addr20) {
    return lookup(kv, tron_key(tron_addr20));
}

void register_identity(KvStore& kv, const IdCom& id_com) {
    Bytes id(id_com.begin(), id_com.end());
    kv.put(evm_key(as_view(address_for(VmId::Evm, id_com).bytes)), id);
    kv.put(tron_key(as_view(address_for(VmId::Tvm, id_com).bytes)), id);
}

}  // namespace revidx

}  // namespace acevm
