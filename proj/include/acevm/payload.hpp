// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/tx.hpp>

#include <variant>

namespace acevm {

// Routing opcodes. Ranges: Native 0x01-0x0F, EVM 0x10-0x1F, SVM 0x20-0x2F,
// BVM 0x30-0x3F, TVM 0x40-0x4F. 0x00 is reserved and never routes.
inline constexpr uint8_t kOpNativeTransfer = 0x01;
inline constexpr uint8_t kOpNativeCreateAccount = 0x02;
inline constexpr uint8_t kOpNativeSetAuthKey = 0x03;
inline constexpr uint8_t kOpEvmTransfer = 0x10;
inline constexpr uint8_t kOpEvmDeploy = 0x11;
inline constexpr uint8_t kOpEvmCall = 0x12;
inline constexpr uint8_t kOpSvmSystemTransfer = 0x20;
inline constexpr uint8_t kOpSvmSplTransfer = 0x21;
inline constexpr uint8_t kOpSvmInvoke = 0x22;
inline constexpr uint8_t kOpBvmUtxoTransfer = 0x30;
inline constexpr uint8_t kOpTvmTransfer = 0x40;
inline constexpr uint8_t kOpTvmDeploy = 0x41;
inline constexpr uint8_t kOpTvmCall = 0x42;

// --- mini-program: the declarative stand-in for contract bytecode ---

struct WriteInstr {
    StateKey key{};
    Bytes value;
};
struct TransferInstr {
    Addr20 to{};
    uint64_t amount = 0;
};
struct CallPreInstr {
    Addr20 precompile{};
    Bytes data;
};
struct EmitLogInstr {
    Bytes data;
};
struct FailInstr {};
struct SyscallInstr {
    std::string name;
    Bytes data;
};

using MiniInstr =
    std::variant<WriteInstr, TransferInstr, CallPreInstr, EmitLogInstr, FailInstr, SyscallInstr>;

inline constexpr size_t kMaxProgramLen = 256;

struct MiniProgram {
    std::vector<MiniInstr> instrs;
};

Bytes encode_program(const MiniProgram& p);
std::optional<MiniProgram> decode_program(BytesView data);

// --- typed payloads; encoders emit the opcode byte, decoders check it and
// --- reject trailing bytes ---

struct NativeTransfer {
    IdCom to{};
    uint64_t amount = 0;
};
struct NativeCreateAccount {
    IdCom id{};
};
struct NativeSetAuthKey {
    Hash32 key{};
};
struct EvmTransfer {
    Addr20 to{};
    uint64_t amount = 0;
};
struct EvmDeploy {
    MiniProgram program;
};
struct EvmCall {
    Addr20 target{};
    Bytes calldata;
};
struct SvmSystemTransfer {
    Hash32 to{};
    uint64_t amount = 0;
};
struct SvmSplTransfer {
    MintId mint{};
    IdCom to_owner{};
    uint64_t amount = 0;
};
struct SvmInvoke {
    Hash32 program_id{};
    Bytes data;
};
struct BvmOutput {
    IdCom owner{};
    uint64_t amount = 0;
};
struct BvmUtxoTransfer {
    std::vector<Outpoint> inputs;
    std::vector<BvmOutput> outputs;
};

Bytes encode_native_transfer(const NativeTransfer& p);
Bytes encode_native_create_account(const NativeCreateAccount& p);
Bytes encode_native_set_auth_key(const NativeSetAuthKey& p);
Bytes encode_evm_transfer(const EvmTransfer& p, uint8_t opcode = kOpEvmTransfer);
Bytes encode_evm_deploy(const EvmDeploy& p, uint8_t opcode = kOpEvmDeploy);
Bytes encode_evm_call(const EvmCall& p, uint8_t opcode = kOpEvmCall);
Bytes encode_svm_system_transfer(const SvmSystemTransfer& p);
Bytes encode_svm_spl_transfer(const SvmSplTransfer& p);
Bytes encode_svm_invoke(const SvmInvoke& p);
Bytes encode_bvm_utxo_transfer(const BvmUtxoTransfer& p);

std::optional<NativeTransfer> decode_native_transfer(BytesView payload);
std::optional<NativeCreateAccount> decode_native_create_account(BytesView payload);
std::optional<NativeSetAuthKey> decode_native_set_auth_key(BytesView payload);
std::optional<EvmTransfer> decode_evm_transfer(BytesView payload, uint8_t opcode = kOpEvmTransfer);
std::optional<EvmDeploy> decode_evm_deploy(BytesView payload, uint8_t opcode = kOpEvmDeploy);
std::optional<EvmCall> decode_evm_call(BytesView payload, uint8_t opcode = kOpEvmCall);
std::optional<SvmSystemTransfer> decode_svm_system_transfer(BytesView payload);
std::optional<SvmSplTransfer> decode_svm_spl_transfer(BytesView payload);
std::optional<SvmInvoke> decode_svm_invoke(BytesView payload);
std::optional<BvmUtxoTransfer> decode_bvm_utxo_transfer(BytesView payload);

// Canonical opcode-range assignment of the five-engine instantiation.
std::optional<VmId> canonical_vm_of(uint8_t opcode);

// Precompile addresses are the 20-byte zero-padded forms of 0x0100..0x0107.
std::optional<uint16_t> precompile_id(const Addr20& addr);
Addr20 precompile_address(uint16_t id);
std::string_view precompile_name(uint16_t id);

inline constexpr uint16_t kPreIdComVerify = 0x0100;
inline constexpr uint16_t kPreContextDerive = 0x0101;
inline constexpr uint16_t kPreAdminFactorCheck = 0x0102;
inline constexpr uint16_t kPreZkaceBatchVerify = 0x0103;
inline constexpr uint16_t kPreMultisigDerive = 0x0104;
inline constexpr uint16_t kPreMultisigVerify = 0x0105;
inline constexpr uint16_t kPreCrossVmCall = 0x0106;
inline constexpr uint16_t kPreResolveSvmAddr = 0x0107;

}  // namespace acevm
