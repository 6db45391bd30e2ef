// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/token.hpp>

#include <acevm/crypto.hpp>
#include <acevm/identity.hpp>

namespace acevm::token {

const Hash32 kSplProgramId = sha256(as_view("spl-token-program"));

std::string_view token_err_name(TokenErr e) {
    switch (e) {
    case TokenErr::Ok: return "Ok";
    case TokenErr::MintExists: return "MintExists";
    case TokenErr::UnknownMint: return "UnknownMint";
    case TokenErr::NotAuthority: return "NotAuthority";
    case TokenErr::SupplyOverflow: return "SupplyOverflow";
    case TokenErr::InsufficientBalance: return "InsufficientBalance";
    case TokenErr::AllowanceExceeded: return "AllowanceExceeded";
    }
    return "Unknown";
}

StateKey balance_slot(const MintId& mint, const IdCom& id_com) {
    return tagged_hash("balance:", {as_view(mint), as_view(id_com)});
}

StateKey allowance_slot(const MintId& mint, const IdCom& owner, const IdCom& spender) {
    return tagged_hash("allowance:", {as_view(mint), as_view(owner), as_view(spender)});
}

StateKey mint_meta_key(const MintId& mint) {
    return tagged_hash("mint-meta:", {as_view(mint)});
}

MintId derive_mint_id(const IdCom& authority, BytesView seed) {
    return tagged_hash("mint:", {as_view(authority), seed});
}

static uint64_t read_amount(const KvStore& kv, const StateKey& slot) {
    auto v = kv.get(slot);
    if (!v || v->size() != 8)
        return 0;
    return read_u64be(as_view(*v));
}

static void write_amount(KvStore& kv, const StateKey& slot, uint64_t amount) {
    kv.put(slot, u64be_bytes(amount));
}

// Meta value layout: supply u64 BE || decimals u8 || authority 32B.
static void write_meta(KvStore& kv, const MintId& mint, const MintMeta& meta) {
    Bytes v;
    append_u64be(v, meta.supply);
    v.push_back(meta.decimals);
    append(v, as_view(meta.authority));
    kv.put(mint_meta_key(mint), std::move(v));
}

std::optional<MintMeta> mint_meta(const KvStore& kv, const MintId& mint) {
    auto v = kv.get(mint_meta_key(mint));
    if (!v || v->size() != 41)
        return std::nullopt;
    MintMeta meta;
    meta.supply = read_u64be(as_view(*v));
    meta.decimals = (*v)[8];
    meta.authority = to_array<32>(BytesView(*v).subspan(9));
    return meta;
}

TokenErr create_mint(KvStore& kv, const IdCom& authority, uint8_t decimals, BytesView seed,
                     MintId* out_mint) {
    MintId mint = derive_mint_id(authority, seed);
    if (out_mint)
        *out_mint = mint;
    if (kv.get(mint_meta_key(mint)))
        return TokenErr::MintExists;
    write_meta(kv, mint, {0, decimals, authority});
    return TokenErr::Ok;
}

uint64_t balance(const KvStore& kv, const MintId& mint, const IdCom& id_com) {
    return read_amount(kv, balance_slot(mint, id_com));
}

uint64_t allowance(const KvStore& kv, const MintId& mint, const IdCom& owner,
                   const IdCom& spender) {
    return read_amount(kv, allowance_slot(mint, owner, spender));
}

TokenErr mint_to(KvStore& kv, const MintId& mint, const IdCom& caller, const IdCom& dest,
                 uint64_t amount) {
    auto meta = mint_meta(kv, mint);
    if (!meta)
        return TokenErr::UnknownMint;
    if (meta->authority != caller)
        return TokenErr::NotAuthority;
    if (meta->supply > UINT64_MAX - amount)
        return TokenErr::SupplyOverflow;
    meta->supply += amount;
    write_amount(kv, balance_slot(mint, dest), balance(kv, mint, dest) + amount);
    write_meta(kv, mint, *meta);
    return TokenErr::Ok;
}

TokenErr transfer(KvStore& kv, const MintId& mint, const IdCom& from, const IdCom& to,
                  uint64_t amount) {
    uint64_t from_bal = balance(kv, mint, from);
    if (from_bal < amount)
        return TokenErr::InsufficientBalance;
    if (from == to)
        return TokenErr::Ok;
    write_amount(kv, balance_slot(mint, from), from_bal - amount);
    write_amount(kv, balance_slot(mint, to), balance(kv, mint, to) + amount);
    return TokenErr::Ok;
}

TokenErr approve(KvStore& kv, const MintId& mint, const IdCom& owner, const IdCom& spender,
                 uint64_t amount) {
    write_amount(kv, allowance_slot(mint, owner, spender), amount);
    return TokenErr::Ok;
}

TokenErr transfer_from(KvStore& kv, const MintId& mint, const IdCom& spender, const IdCom& owner,
                       const IdCom& to, uint64_t amount) {
    uint64_t allowed = allowance(kv, mint, owner, spender);
    if (allowed < amount)
        return TokenErr::AllowanceExceeded;
    if (balance(kv, mint, owner) < amount)
        return TokenErr::InsufficientBalance;
    write_amount(kv, allowance_slot(mint, owner, spender), allowed - amount);
    return transfer(kv, mint, owner, to, amount);
}

Bytes erc20_address(const MintId& mint) {
    Hash32 h = tagged_hash("erc20-addr:", {as_view(mint)});
    return Bytes(h.begin() + 12, h.end());
}

uint64_t erc20_balance_of(const KvStore& kv, const MintId& mint, BytesView evm_addr20) {
    auto id = revidx::lookup_evm(kv, evm_addr20);
    if (!id)
        return 0;
    return balance(kv, mint, *id);
}

Hash32 spl_ata(const IdCom& owner, const MintId& mint) {
    return tagged_hash("ata:", {as_view(owner), as_view(kSplProgramId), as_view(mint)});
}

static StateKey ata_alias_key(const Hash32& ata) {
    return tagged_hash("rev-ata:", {as_view(ata)});
}

void record_ata_alias(KvStore& kv, const IdCom& owner, const MintId& mint) {
    Bytes v;
    append(v, as_view(owner));
    append(v, as_view(mint));
    kv.put(ata_alias_key(spl_ata(owner, mint)), std::move(v));
}

uint64_t spl_balance(const KvStore& kv, const Hash32& ata) {
    auto v = kv.get(ata_alias_key(ata));
    if (!v || v->size() != 64)
        return 0;
    IdCom owner = to_array<32>(as_view(*v));
    MintId mint = to_array<32>(BytesView(*v).subspan(32));
    return balance(kv, mint, owner);
}

}  // namespace acevm::token
