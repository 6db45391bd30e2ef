// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/engines.hpp>

#include <acevm/crypto.hpp>

#include <set>

namespace acevm {

StateKey utxo_key(const Hash32& txid, uint32_t vout) {
    Bytes v;
    append_u32be(v, vout);
    return tagged_hash("utxo:", {as_view(txid), as_view(v)});
}

// UTXO value layout: owner id_com (32) || amount u64 BE.
ExecResult BvmEngine::execute(KvStore& state, const ExecContext& ctx, BytesView payload) const {
    auto p = decode_bvm_utxo_transfer(payload);
    if (!p)
        return ExecResult::failure(ErrCode::MalformedPayload, "utxo transfer");

    std::set<std::pair<Hash32, uint32_t>> seen;
    uint64_t total_in = 0;
    std::vector<StateKey> input_keys;
    input_keys.reserve(p->inputs.size());
    for (const auto& in : p->inputs) {
        if (!seen.insert({in.txid, in.vout}).second)
            return ExecResult::failure(ErrCode::MalformedPayload, "duplicate input");
        StateKey key = utxo_key(in.txid, in.vout);
        auto v = state.get(key);
        if (!v || v->size() != 40)
            return ExecResult::failure(ErrCode::MissingUtxo);
        IdCom owner = to_array<32>(as_view(*v));
        if (owner != ctx.sender)
            return ExecResult::failure(ErrCode::NotOwner);
        uint64_t amount = read_u64be(BytesView(*v).subspan(32));
        if (total_in > UINT64_MAX - amount)
            return ExecResult::failure(ErrCode::MalformedPayload, "input overflow");
        total_in += amount;
        input_keys.push_back(key);
    }

    uint64_t total_out = 0;
    for (const auto& o : p->outputs) {
        if (total_out > UINT64_MAX - o.amount)
            return ExecResult::failure(ErrCode::OutputsExceedInputs, "output overflow");
        total_out += o.amount;
    }
    if (total_out > total_in)
        return ExecResult::failure(ErrCode::OutputsExceedInputs);

    for (const auto& key : input_keys)
        state.put(key, std::nullopt);

    Hash32 new_txid = sha256(payload);
    for (size_t i = 0; i < p->outputs.size(); i++) {
        Bytes v;
        append(v, as_view(p->outputs[i].owner));
        append_u64be(v, p->outputs[i].amount);
        state.put(utxo_key(new_txid, static_cast<uint32_t>(i)), std::move(v));
    }

    // Implicit fee is burned; the receipt records it.
    ExecResult res = ExecResult::success();
    res.logs.push_back(u64be_bytes(total_in - total_out));
    return res;
}

}  // namespace acevm
