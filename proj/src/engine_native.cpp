// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/engines.hpp>

#include <acevm/crypto.hpp>

namespace acevm {

namespace acct {

StateKey record_key(const IdCom& id_com) {
    return tagged_hash("acct:", {as_view(id_com)});
}

bool exists(const KvStore& kv, const IdCom& id_com) {
    return kv.get(record_key(id_com)).has_value();
}

std::optional<AttestationKey> attestation_key(const KvStore& kv, const IdCom& id_com) {
    auto v = kv.get(record_key(id_com));
    if (!v || v->size() != 32)
        return std::nullopt;
    return to_array<32>(as_view(*v));
}

void create(KvStore& kv, const IdCom& id_com, const AttestationKey& key) {
    kv.put(record_key(id_com), Bytes(key.begin(), key.end()));
}

void set_key(KvStore& kv, const IdCom& id_com, const AttestationKey& key) {
    kv.put(record_key(id_com), Bytes(key.begin(), key.end()));
}

}  // namespace acct

StateKey native_balance_key(const IdCom& id_com) {
    return tagged_hash("native-bal:", {as_view(id_com)});
}

uint64_t read_balance(const KvStore& kv, const StateKey& key) {
    auto v = kv.get(key);
    if (!v || v->size() != 8)
        return 0;
    return read_u64be(as_view(*v));
}

void write_balance(KvStore& kv, const StateKey& key, uint64_t amount) {
    kv.put(key, u64be_bytes(amount));
}

ExecResult NativeEngine::execute(KvStore& state, const ExecContext& ctx,
                                 BytesView payload) const {
    if (payload.empty())
        return ExecResult::failure(ErrCode::MalformedPayload);
    switch (payload[0]) {
    case kOpNativeTransfer: {
        auto p = decode_native_transfer(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "native transfer");
        StateKey from_key = native_balance_key(ctx.sender);
        uint64_t from_bal = read_balance(state, from_key);
        if (from_bal < p->amount)
            return ExecResult::failure(ErrCode::InsufficientBalance);
        if (p->to == ctx.sender)
            return ExecResult::success();
        StateKey to_key = native_balance_key(p->to);
        write_balance(state, from_key, from_bal - p->amount);
        write_balance(state, to_key, read_balance(state, to_key) + p->amount);
        return ExecResult::success();
    }
    case kOpNativeCreateAccount: {
        auto p = decode_native_create_account(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "create account");
        if (acct::exists(state, p->id))
            return ExecResult::failure(ErrCode::AccountExists);
        acct::create(state, p->id, AttestationKey{});
        revidx::register_identity(state, p->id);
        return ExecResult::success();
    }
    case kOpNativeSetAuthKey: {
        auto p = decode_native_set_auth_key(payload);
        if (!p)
            return ExecResult::failure(ErrCode::MalformedPayload, "set auth key");
        if (!acct::exists(state, ctx.sender))
            return ExecResult::failure(ErrCode::UnknownAccount);
        acct::set_key(state, ctx.sender, p->key);
        return ExecResult::success();
    }
    default:
        return ExecResult::failure(ErrCode::MalformedPayload, "unknown native opcode");
    }
}

}  // namespace acevm
