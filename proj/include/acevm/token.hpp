// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/bytes.hpp>
#include <acevm/state.hpp>

namespace acevm::token {

enum class TokenErr {
    Ok = 0,
    MintExists,
    UnknownMint,
    NotAuthority,
    SupplyOverflow,
    InsufficientBalance,
    AllowanceExceeded,
};

std::string_view token_err_name(TokenErr e);

struct MintMeta {
    uint64_t supply = 0;
    uint8_t decimals = 0;
    IdCom authority{};
};

// The simplified SPL program id used for ATA derivation and built-in
// invocation: SHA-256("spl-token-program").
extern const Hash32 kSplProgramId;

StateKey balance_slot(const MintId& mint, const IdCom& id_com);
StateKey allowance_slot(const MintId& mint, const IdCom& owner, const IdCom& spender);
StateKey mint_meta_key(const MintId& mint);

// MintId = SHA-256("mint:" || authority || seed).
MintId derive_mint_id(const IdCom& authority, BytesView seed);

TokenErr create_mint(KvStore& kv, const IdCom& authority, uint8_t decimals, BytesView seed,
                     MintId* out_mint = nullptr);

std::optional<MintMeta> mint_meta(const KvStore& kv, const MintId& mint);

uint64_t balance(const KvStore& kv, const MintId& mint, const IdCom& id_com);
uint64_t allowance(const KvStore& kv, const MintId& mint, const IdCom& owner,
                   const IdCom& spender);

TokenErr mint_to(KvStore& kv, const MintId& mint, const IdCom& caller, const IdCom& dest,
                 uint64_t amount);

// Moves exactly the two balance slots; self-transfer is a checked no-op.
TokenErr transfer(KvStore& kv, const MintId& mint, const IdCom& from, const IdCom& to,
                  uint64_t amount);

// Sets (does not add to) the allowance slot.
TokenErr approve(KvStore& kv, const MintId& mint, const IdCom& owner, const IdCom& spender,
                 uint64_t amount);

TokenErr transfer_from(KvStore& kv, const MintId& mint, const IdCom& spender, const IdCom& owner,
                       const IdCom& to, uint64_t amount);

// ERC-20 view: deterministic contract address and balance-by-EVM-address.
Bytes erc20_address(const MintId& mint);  // 20 bytes
uint64_t erc20_balance_of(const KvStore& kv, const MintId& mint, BytesView evm_addr20);

// SPL view: hash-alias associated token account resolving back to the owner.
Hash32 spl_ata(const IdCom& owner, const MintId& mint);
void record_ata_alias(KvStore& kv, const IdCom& owner, const MintId& mint);
uint64_t spl_balance(const KvStore& kv, const Hash32& ata);

}  // namespace acevm::token
