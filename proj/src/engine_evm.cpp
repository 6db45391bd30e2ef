// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include "miniprog.hpp"

#include <acevm/crypto.hpp>

namespace acevm {

StateKey evm_balance_key(BytesView evm_addr20) {
    return tagged_hash("evm-bal:", {evm_addr20});
}

StateKey evm_code_key(BytesView deployer_addr20, uint64_t nonce) {
    return tagged_hash("evm-code:", {deployer_addr20, as_view(u64be_bytes(nonce))});
}

StateKey evm_code_alias_key(BytesView contract_addr20) {
    return tagged_hash("evm-code-at:", {contract_addr20});
}

StateKey evm_nonce_key(BytesView deployer_addr20) {
    return tagged_hash("evm-nonce:", {deployer_addr20});
}

namespace {

bool fail(ExecResult& res, ErrCode code, std::string msg = {}) {
    res.ok = false;
    res.err = code;
    res.msg = std::move(msg);
    return false;
}

bool evm_move_balance(KvStore& state, const ExecContext& ctx, const Addr20& to, uint64_t amount,
                      ExecResult& res) {
    Bytes sender_addr = address_for(VmId::Evm, ctx.sender).bytes;
    StateKey from_key = evm_balance_key(as_view(sender_addr));
    uint64_t from_bal = read_balance(state, from_key);
    if (from_bal < amount)
        return fail(res, ErrCode::InsufficientBalance);
    StateKey to_key = evm_balance_key(as_view(to));
    if (to_key == from_key)
        return true;
    write_balance(state, from_key, from_bal - amount);
    write_balance(state, to_key, read_balance(state, to_key) + amount);
    return true;
}

}  // namespace

bool exec_precompile(KvStore& state, const ExecContext& ctx, uint16_t id, BytesView data,
                     ExecResult& res) {
    switch (id) {
    case kPreCrossVmCall: {
        // target vm byte || 32-byte program/contract id || instruction data
        if (data.size() < 33)
            return fail(res, ErrCode::MalformedPayload, "cross_vm_call envelope too short");
        auto target = canonical_vm_of(data[0]);
        if (!target)
            return fail(res, ErrCode::MalformedPayload, "cross_vm_call bad target vm");
        CrossVmRequest req;
        req.target_vm = *target;
        req.program = to_array<32>(data.subspan(1, 32));
        req.data = to_bytes(data.subspan(33));
        req.origin = ctx.sender;
        res.requests.push_back(std::move(req));
        return true;
    }
    case kPreResolveSvmAddr: {
        res.logs.push_back(address_for(VmId::Svm, ctx.sender).bytes);
        return true;
    }
    default:
        return fail(res, ErrCode::PrecompileUnimplemented,
                    std::string(precompile_name(id)));
    }
}

bool exec_mini_program(KvStore& state, VmId vm, const ExecContext& ctx, const MiniProgram& prog,
                       ExecResult& res) {
    for (const auto& instr : prog.instrs) {
        bool ok = std::visit(
            [&](const auto& i) -> bool {
                using T = std::decay_t<decltype(i)>;
                if constexpr (std::is_same_v<T, WriteInstr>) {
                    state.put(i.key, i.value);
                    return true;
                } else if constexpr (std::is_same_v<T, TransferInstr>) {
                    if (vm != VmId::Evm)
                        return fail(res, ErrCode::UnsupportedInstruction, "TRANSFER outside evm");
                    return evm_move_balance(state, ctx, i.to, i.amount, res);
                } else if constexpr (std::is_same_v<T, CallPreInstr>) {
                    if (vm != VmId::Evm)
                        return fail(res, ErrCode::UnsupportedInstruction, "CALLPRE outside evm");
                    auto id = precompile_id(i.precompile);
                    if (!id)
                        return fail(res, ErrCode::UnknownContract, "CALLPRE target");
                    return exec_precompile(state, ctx, *id, as_view(i.data), res);
                } else if constexpr (std::is_same_v<T, EmitLogInstr>) {
                    res.logs.push_back(i.data);
                    return true;
                } else if constexpr (std::is_same_v<T, FailInstr>) {
                    return fail(res, ErrCode::ProgramFailed, "FAIL instruction");
                } else {
                    static_assert(std::is_same_v<T, SyscallInstr>);
                    if (vm != VmId::Svm)
                        return fail(res, ErrCode::UnsupportedInstruction, "SYSCALL outside svm");
                    return exec_svm_syscall(state, ctx, i, res);
                }
            },
            instr);
        if (!ok)
            return false;
    }
    return true;
}

ExecResult EvmEngine::execute(KvStore& state, const ExecContext& ctx, BytesView payload) const {
    if (payload.empty())
        return ExecResult::failure(ErrCode::MalformedPayload);
    switch (payload[0]) {
    case kOpEvmTransfer: {
        auto p = decode_evm_transfer(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "evm transfer");
        ExecResult res = ExecResult::success();
        if (!evm_move_balance(state, ctx, p->to, p->amount, res))
            return res;
        return res;
    }
    case kOpEvmDeploy: {
        auto p = decode_evm_deploy(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "evm deploy");
        Bytes deployer = address_for(VmId::Evm, ctx.sender).bytes;
        StateKey nkey = evm_nonce_key(as_view(deployer));
        uint64_t nonce = read_balance(state, nkey);
        StateKey code_key = evm_code_key(as_view(deployer), nonce);
        Bytes contract_addr(code_key.begin() + 12, code_key.end());
        state.put(code_key, encode_program(p->program));
        state.put(evm_code_alias_key(as_view(contract_addr)),
                  Bytes(code_key.begin(), code_key.end()));
        state.put(nkey, u64be_bytes(nonce + 1));
        ExecResult res = ExecResult::success();
        res.logs.push_back(contract_addr);
        return res;
    }
    case kOpEvmCall: {
        auto p = decode_evm_call(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "evm call");
        ExecResult res = ExecResult::success();
        if (auto pre = precompile_id(p->target)) {
            exec_precompile(state, ctx, *pre, as_view(p->calldata), res);
            return res;
        }
        auto alias = state.get(evm_code_alias_key(as_view(p->target)));
        if (!alias || alias->size() != 32)
            return ExecResult::failure(ErrCode::UnknownContract);
        auto code = state.get(to_array<32>(as_view(*alias)));
        if (!code)
            return ExecResult::failure(ErrCode::UnknownContract, "dangling code alias");
        auto program = decode_program(as_view(*code));
        if (!program)
            return ExecResult::failure(ErrCode::MalformedPayload, "stored code undecodable");
        exec_mini_program(state, VmId::Evm, ctx, *program, res);
        return res;
    }
    default:
        return ExecResult::failure(ErrCode::MalformedPayload, "unknown evm opcode");
    }
}

}  // namespace acevm
