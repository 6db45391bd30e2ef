// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/engines.hpp>

namespace acevm {

namespace {

// Tron identity address -> same identity's EVM address, via the reverse index.
std::optional<Addr20> translate_addr(const KvStore& state, const Addr20& tron_addr) {
    auto id = revidx::lookup_tron(state, as_view(tron_addr));
    if (!id)
        return std::nullopt;
    return to_array<20>(as_view(address_for(VmId::Evm, *id).bytes));
}

bool translate_program(const KvStore& state, MiniProgram& prog) {
    for (auto& instr : prog.instrs) {
        if (auto* t = std::get_if<TransferInstr>(&instr)) {
            auto evm = translate_addr(state, t->to);
            if (!evm)
                return false;
            t->to = *evm;
        }
    }
    return true;
}

}  // namespace

std::optional<Bytes> remap_tvm_payload(const KvStore& state, BytesView payload, ErrCode* err,
                                       std::string* msg) {
    auto set_err = [&](ErrCode code, std::string m) {
        if (err)
            *err = code;
        if (msg)
            *msg = std::move(m);
        return std::nullopt;
    };
    if (payload.empty())
        return set_err(ErrCode::MalformedPayload, "");
    switch (payload[0]) {
    case kOpTvmTransfer: {
        auto p = decode_evm_transfer(payload, kOpTvmTransfer);
        if (!p)
            return set_err(ErrCode::MalformedPayload, "tvm transfer");
        auto evm = translate_addr(state, p->to);
        if (!evm)
            return set_err(ErrCode::UnresolvableAddress, "tvm transfer recipient");
        return encode_evm_transfer({*evm, p->amount}, kOpEvmTransfer);
    }
    case kOpTvmDeploy: {
        auto p = decode_evm_deploy(payload, kOpTvmDeploy);
        if (!p)
            return set_err(ErrCode::MalformedPayload, "tvm deploy");
        if (!translate_program(state, p->program))
            return set_err(ErrCode::UnresolvableAddress, "tvm deploy code operand");
        return encode_evm_deploy(*p, kOpEvmDeploy);
    }
    case kOpTvmCall: {
        auto p = decode_evm_call(payload, kOpTvmCall);
        if (!p)
            return set_err(ErrCode::MalformedPayload, "tvm call");
        // Precompile addresses are system addresses, identical in every
        // namespace; anything else must resolve through the tron index.
        if (!precompile_id(p->target)) {
            auto evm = translate_addr(state, p->target);
            if (!evm)
                return set_err(ErrCode::UnresolvableAddress, "tvm call target");
            p->target = *evm;
        }
        return encode_evm_call(*p, kOpEvmCall);
    }
    default:
        return set_err(ErrCode::UnmappedOpcode, "");
    }
}

ExecResult TvmEngine::execute(KvStore& state, const ExecContext& ctx, BytesView payload) const {
    ErrCode err = ErrCode::None;
    std::string msg;
    auto remapped = remap_tvm_payload(state, payload, &err, &msg);
    if (!remapped)
        return ExecResult::failure(err, std::move(msg));
    EvmEngine evm;
    return evm.execute(state, ctx, as_view(*remapped));
}

}  // namespace acevm
