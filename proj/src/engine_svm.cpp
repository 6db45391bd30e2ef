// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include "miniprog.hpp"

#include <acevm/crypto.hpp>
#include <acevm/token.hpp>

namespace acevm {

StateKey svm_balance_key(BytesView svm_addr32) {
    return tagged_hash("svm-bal:", {svm_addr32});
}

StateKey svm_code_key(const Hash32& program_id) {
    return tagged_hash("svm-code:", {as_view(program_id)});
}

void install_svm_program(KvStore& kv, const Hash32& program_id, const MiniProgram& program) {
    kv.put(svm_code_key(program_id), encode_program(program));
}

namespace {

ErrCode token_err_code(token::TokenErr e) {
    switch (e) {
    case token::TokenErr::MintExists: return ErrCode::MintExists;
    case token::TokenErr::UnknownMint: return ErrCode::UnknownMint;
    case token::TokenErr::NotAuthority: return ErrCode::NotAuthority;
    case token::TokenErr::SupplyOverflow: return ErrCode::SupplyOverflow;
    case token::TokenErr::InsufficientBalance: return ErrCode::InsufficientBalance;
    case token::TokenErr::AllowanceExceeded: return ErrCode::AllowanceExceeded;
    case token::TokenErr::Ok: break;
    }
    return ErrCode::None;
}

}  // namespace

bool exec_svm_syscall(KvStore& state, const ExecContext& ctx, const SyscallInstr& sc,
                      ExecResult& res) {
    auto fail = [&](ErrCode code, std::string msg = {}) {
        res.ok = false;
        res.err = code;
        res.msg = std::move(msg);
        return false;
    };
    if (sc.name == "ace_id_com") {
        res.logs.push_back(Bytes(ctx.sender.begin(), ctx.sender.end()));
        return true;
    }
    if (sc.name == "ace_attest") {
        // data = message digest (32) || HMAC credential (32)
        if (sc.data.size() != 64)
            return fail(ErrCode::MalformedPayload, "ace_attest wants digest||mac");
        auto key = acct::attestation_key(state, ctx.sender);
        if (!key || *key == AttestationKey{})
            return fail(ErrCode::AttestFailed, "no attestation key");
        Hash32 digest = to_array<32>(as_view(sc.data));
        Attestation mac = to_array<32>(BytesView(sc.data).subspan(32));
        if (!verify_attestation(*key, digest, mac))
            return fail(ErrCode::AttestFailed);
        return true;
    }
    if (sc.name == "ace_cross_vm_call") {
        // data = 32-byte contract id || calldata
        if (sc.data.size() < 32)
            return fail(ErrCode::MalformedPayload, "ace_cross_vm_call envelope too short");
        CrossVmRequest req;
        req.target_vm = VmId::Evm;
        req.program = to_array<32>(as_view(sc.data));
        req.data = to_bytes(BytesView(sc.data).subspan(32));
        req.origin = ctx.sender;
        res.requests.push_back(std::move(req));
        return true;
    }
    return fail(ErrCode::UnsupportedInstruction, "syscall " + sc.name);
}

ExecResult SvmEngine::execute(KvStore& state, const ExecContext& ctx, BytesView payload) const {
    if (payload.empty())
        return ExecResult::failure(ErrCode::MalformedPayload);
    switch (payload[0]) {
    case kOpSvmSystemTransfer: {
        auto p = decode_svm_system_transfer(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "system transfer");
        Bytes sender_addr = address_for(VmId::Svm, ctx.sender).bytes;
        StateKey from_key = svm_balance_key(as_view(sender_addr));
        uint64_t from_bal = read_balance(state, from_key);
        if (from_bal < p->amount)
            return ExecResult::failure(ErrCode::InsufficientBalance);
        StateKey to_key = svm_balance_key(as_view(p->to));
        if (to_key == from_key)
            return ExecResult::success();
        write_balance(state, from_key, from_bal - p->amount);
        write_balance(state, to_key, read_balance(state, to_key) + p->amount);
        return ExecResult::success();
    }
    case kOpSvmSplTransfer: {
        auto p = decode_svm_spl_transfer(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "spl transfer");
        auto e = token::transfer(state, p->mint, ctx.sender, p->to_owner, p->amount);
        if (e != token::TokenErr::Ok)
            return ExecResult::failure(token_err_code(e));
        return ExecResult::success();
    }
    case kOpSvmInvoke: {
        auto p = decode_svm_invoke(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "invoke");
        if (p->program_id == token::kSplProgramId) {
            // Built-in SPL program: instruction data = mint || to_owner || amount.
            if (p->data.size() != 72)
                return ExecResult::failure(ErrCode::MalformedPayload, "spl instruction");
            MintId mint = to_array<32>(as_view(p->data));
            IdCom to_owner = to_array<32>(BytesView(p->data).subspan(32));
            uint64_t amount = read_u64be(BytesView(p->data).subspan(64));
            auto e = token::transfer(state, mint, ctx.sender, to_owner, amount);
            if (e != token::TokenErr::Ok)
                return ExecResult::failure(token_err_code(e));
            return ExecResult::success();
        }
        auto code = state.get(svm_code_key(p->program_id));
        if (!code)
            return ExecResult::failure(ErrCode::UnknownContract, "unknown program");
        auto program = decode_program(as_view(*code));
        if (!program)
            return ExecResult::failure(ErrCode::MalformedPayload, "stored program undecodable");
        ExecResult res = ExecResult::success();
        exec_mini_program(state, VmId::Svm, ctx, *program, res);
        return res;
    }
    default:
        return ExecResult::failure(ErrCode::MalformedPayload, "unknown svm opcode");
    }
}

}  // namespace acevm
