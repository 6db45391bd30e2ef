// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/dispatch.hpp>

#include <acevm/crypto.hpp>
#include <acevm/engines.hpp>

#include <deque>

namespace acevm {

void EngineRegistry::register_engine(OpcodeRange range, std::unique_ptr<VmEngine> engine) {
    if (range.lo > range.hi)
        throw RangeConflict("malformed opcode range");
    if (range.lo == 0x00)
        throw RangeConflict("opcode 0x00 is reserved");
    for (int op = range.lo; op <= range.hi; op++)
        if (table_[op])
            throw RangeConflict("opcode range overlaps a registered engine");
    const VmEngine* raw = engine.get();
    owned_.push_back(std::move(engine));
    for (int op = range.lo; op <= range.hi; op++)
        table_[op] = raw;
    ranges_.emplace_back(range, raw);
}

std::optional<VmId> EngineRegistry::vm_of(uint8_t opcode) const {
    const VmEngine* e = table_[opcode];
    if (!e)
        return std::nullopt;
    return e->vm_id();
}

EngineRegistry make_default_registry() {
    EngineRegistry reg;
    reg.register_engine({0x01, 0x0F}, std::make_unique<NativeEngine>());
    reg.register_engine({0x10, 0x1F}, std::make_unique<EvmEngine>());
    reg.register_engine({0x20, 0x2F}, std::make_unique<SvmEngine>());
    reg.register_engine({0x30, 0x3F}, std::make_unique<BvmEngine>());
    reg.register_engine({0x40, 0x4F}, std::make_unique<TvmEngine>());
    return reg;
}

namespace {

Receipt reject(ErrCode code, std::string msg, std::optional<VmId> vm = std::nullopt) {
    Receipt r;
    r.success = false;
    r.vm = vm;
    r.error = code;
    r.error_msg = std::move(msg);
    return r;
}

// Synthesized transaction for a cross-VM request: the target VM's canonical
// call opcode. Only EVM (0x12) and SVM (0x22) define one.
std::optional<Bytes> synthesize_request_payload(const CrossVmRequest& req) {
    switch (req.target_vm) {
    case VmId::Evm: {
        Bytes payload{kOpEvmCall};
        payload.insert(payload.end(), req.program.begin() + 12, req.program.end());
        append(payload, as_view(req.data));
        return payload;
    }
    case VmId::Svm: {
        Bytes payload{kOpSvmInvoke};
        append(payload, as_view(req.program));
        append(payload, as_view(req.data));
        return payload;
    }
    default:
        return std::nullopt;
    }
}

}  // namespace

bool Dispatcher::drain_cross_vm(ScopedKv& state, VmId origin_vm, Receipt& receipt) const {
    struct Pending {
        CrossVmRequest req;
        VmId from;
        int depth;
    };
    std::deque<Pending> queue;
    for (const auto& req : receipt.requests)
        queue.push_back({req, origin_vm, 1});

    while (!queue.empty()) {
        Pending p = std::move(queue.front());
        queue.pop_front();
        if (p.depth > cfg_.max_cross_vm_depth) {
            receipt.success = false;
            receipt.error = ErrCode::CrossVmDepthExceeded;
            return false;
        }
        if (p.req.target_vm == p.from) {
            receipt.success = false;
            receipt.error = ErrCode::InvalidTarget;
            receipt.error_msg = "cross-vm request targets its originating vm";
            return false;
        }
        auto payload = synthesize_request_payload(p.req);
        if (!payload) {
            receipt.success = false;
            receipt.error = ErrCode::InvalidTarget;
            receipt.error_msg = "target vm has no call opcode";
            return false;
        }
        const VmEngine* engine = registry_.route((*payload)[0]);
        if (!engine) {
            receipt.success = false;
            receipt.error = ErrCode::InvalidTarget;
            receipt.error_msg = "target vm not registered";
            return false;
        }

        ExecContext sub_ctx{p.req.origin, p.depth};
        ExecResult sub = engine->execute(state, sub_ctx, as_view(*payload));

        Receipt sub_receipt;
        sub_receipt.success = sub.ok;
        sub_receipt.vm = engine->vm_id();
        sub_receipt.error = sub.err;
        sub_receipt.error_msg = sub.msg;
        sub_receipt.logs = sub.logs;
        sub_receipt.requests = sub.requests;
        std::string serialized = receipt_to_json(sub_receipt, static_cast<size_t>(p.depth));
        receipt.logs.push_back(to_bytes(as_view(serialized)));

        if (!sub.ok) {
            receipt.success = false;
            receipt.error = ErrCode::CrossVmFailed;
            receipt.error_msg = std::string(err_name(sub.err));
            return false;
        }
        for (const auto& next : sub.requests)
            queue.push_back({next, engine->vm_id(), p.depth + 1});
    }
    return true;
}

DispatchOutcome Dispatcher::dispatch_tx(ScopedKv& state, const Transaction& tx,
                                        ReplayGuard& guard) const {
    DispatchOutcome out;
    if (tx.payload.empty()) {
        out.receipt = reject(ErrCode::MalformedPayload, "empty payload");
        return out;
    }
    const VmEngine* engine = registry_.route(tx.payload[0]);
    if (!engine) {
        out.receipt = reject(ErrCode::UnknownOpcode, "");
        return out;
    }
    VmId vm = engine->vm_id();

    // Authorization runs before any snapshot; a failure is a plain reject.
    IdCom sender{};
    bool raw_ingress = false;
    if (const auto* att = std::get_if<AttestedAuth>(&tx.auth)) {
        auto key = acct::attestation_key(state, att->id_com);
        if (!key)
            return {reject(ErrCode::AuthFailed, "unknown account", vm), {}};
        if (*key == AttestationKey{})
            return {reject(ErrCode::AuthFailed, "account has no attestation key", vm), {}};
        if (!verify_attestation(*key, tx_digest(tx), att->attestation))
            return {reject(ErrCode::AuthFailed, "bad attestation", vm), {}};
        sender = att->id_com;
    } else {
        const auto& raw = std::get<RawAuth>(tx.auth);
        auto v = verify_raw(raw.envelope, guard, as_view(cfg_.chain_domain), &tx.payload);
        if (!v.ok)
            return {reject(v.err, v.msg, vm), {}};
        sender = v.sender;
        raw_ingress = true;
    }

    SnapshotHandle h = state.snapshot();
    if (raw_ingress && !acct::exists(state, sender)) {
        acct::create(state, sender, AttestationKey{});
        revidx::register_identity(state, sender);
    }

    ExecResult er = engine->execute(state, ExecContext{sender, 0}, as_view(tx.payload));
    Receipt& r = out.receipt;
    r.success = er.ok;
    r.vm = vm;
    r.error = er.err;
    r.error_msg = std::move(er.msg);
    r.logs = std::move(er.logs);
    r.requests = std::move(er.requests);

    if (r.success && !r.requests.empty())
        drain_cross_vm(state, vm, r);

    if (r.success)
        out.delta = state.take_delta(h);
    else
        state.rollback(h);
    return out;
}

BlockResult Dispatcher::execute_block(StateTree& state, const Block& block,
                                      ReplayGuard& guard) const {
    guard.begin_block();
    BlockResult result;
    result.receipts.reserve(block.size());
    for (const auto& tx : block)
        result.receipts.push_back(dispatch_tx(state, tx, guard).receipt);
    result.root = state.state_root();
    return result;
}

}  // namespace acevm
