// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/engine.hpp>
#include <acevm/payload.hpp>

namespace acevm {

// Balance and code key derivations. Native, EVM and SVM balances live in
// prefix-separated hash domains and never collide.
StateKey native_balance_key(const IdCom& id_com);
StateKey evm_balance_key(BytesView evm_addr20);
StateKey svm_balance_key(BytesView svm_addr32);
StateKey utxo_key(const Hash32& txid, uint32_t vout);
StateKey evm_code_key(BytesView deployer_addr20, uint64_t nonce);
StateKey evm_code_alias_key(BytesView contract_addr20);
StateKey evm_nonce_key(BytesView deployer_addr20);
StateKey svm_code_key(const Hash32& program_id);

uint64_t read_balance(const KvStore& kv, const StateKey& key);
void write_balance(KvStore& kv, const StateKey& key, uint64_t amount);

// Installs a mini-program as SVM code for Invoke (genesis / test fixture path).
void install_svm_program(KvStore& kv, const Hash32& program_id, const MiniProgram& program);

class NativeEngine final : public VmEngine {
public:
    VmId vm_id() const override { return VmId::Native; }
    ExecResult execute(KvStore& state, const ExecContext& ctx, BytesView payload) const override;
};

class EvmEngine final : public VmEngine {
public:
    VmId vm_id() const override { return VmId::Evm; }
    ExecResult execute(KvStore& state, const ExecContext& ctx, BytesView payload) const override;
};

class SvmEngine final : public VmEngine {
public:
    VmId vm_id() const override { return VmId::Svm; }
    ExecResult execute(KvStore& state, const ExecContext& ctx, BytesView payload) const override;
};

class BvmEngine final : public VmEngine {
public:
    VmId vm_id() const override { return VmId::Bvm; }
    ExecResult execute(KvStore& state, const ExecContext& ctx, BytesView payload) const override;
};

/// Tron engine: rewrites the opcode (0x40->0x10, 0x41->0x11, 0x42->0x12),
/// translates identity address operands from the Tron namespace to the EVM
/// namespace via the reverse index, then delegates to the EVM engine.
class TvmEngine final : public VmEngine {
public:
    VmId vm_id() const override { return VmId::Tvm; }
    ExecResult execute(KvStore& state, const ExecContext& ctx, BytesView payload) const override;
};

// The remap half of the TVM delegation, exposed so the two execution routes
// can be compared directly. Returns the equivalent EVM payload, or an error
// code: UnmappedOpcode for 0x43..0x4F, UnresolvableAddress when an identity
// address operand has no reverse-index entry (fail-closed). Precompile call
// targets are VM-invariant and pass through untranslated.
std::optional<Bytes> remap_tvm_payload(const KvStore& state, BytesView payload, ErrCode* err,
                                       std::string* msg = nullptr);

}  // namespace acevm
