// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/scheduler.hpp>

#include <acevm/crypto.hpp>
#include <acevm/engines.hpp>
#include <acevm/token.hpp>

#include <omp.h>

#include <algorithm>

namespace acevm {

WriteSet WriteSet::make_static(std::vector<StateKey> keys) {
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    return {false, std::move(keys)};
}

WriteSet write_set(const KvStore& state, const Transaction& tx, const EngineRegistry& registry) {
    if (tx.payload.empty())
        return WriteSet::make_global();
    // Raw-ingress transactions stay global: replay-guard mutation and account
    // auto-creation are serialized through the dispatcher.
    const auto* att = std::get_if<AttestedAuth>(&tx.auth);
    if (!att)
        return WriteSet::make_global();
    auto vm = registry.vm_of(tx.payload[0]);
    if (!vm)
        return WriteSet::make_global();
    const IdCom& sender = att->id_com;
    BytesView payload = as_view(tx.payload);

    switch (tx.payload[0]) {
    case kOpNativeTransfer: {
        auto p = decode_native_transfer(payload);
        if (!p)
            return WriteSet::make_global();
        return WriteSet::make_static({native_balance_key(sender), native_balance_key(p->to)});
    }
    case kOpEvmTransfer: {
        auto p = decode_evm_transfer(payload);
        if (!p)
            return WriteSet::make_global();
        Bytes from = address_for(VmId::Evm, sender).bytes;
        return WriteSet::make_static(
            {evm_balance_key(as_view(from)), evm_balance_key(as_view(p->to))});
    }
    case kOpSvmSystemTransfer: {
        auto p = decode_svm_system_transfer(payload);
        if (!p)
            return WriteSet::make_global();
        Bytes from = address_for(VmId::Svm, sender).bytes;
        return WriteSet::make_static(
            {svm_balance_key(as_view(from)), svm_balance_key(as_view(p->to))});
    }
    case kOpSvmSplTransfer: {
        auto p = decode_svm_spl_transfer(payload);
        if (!p)
            return WriteSet::make_global();
        return WriteSet::make_static(
            {token::balance_slot(p->mint, sender), token::balance_slot(p->mint, p->to_owner)});
    }
    case kOpBvmUtxoTransfer: {
        auto p = decode_bvm_utxo_transfer(payload);
        if (!p)
            return WriteSet::make_global();
        std::vector<StateKey> keys;
        keys.reserve(p->inputs.size() + p->outputs.size());
        for (const auto& in : p->inputs)
            keys.push_back(utxo_key(in.txid, in.vout));
        Hash32 new_txid = sha256(payload);
        for (size_t i = 0; i < p->outputs.size(); i++)
            keys.push_back(utxo_key(new_txid, static_cast<uint32_t>(i)));
        return WriteSet::make_static(std::move(keys));
    }
    case kOpTvmTransfer: {
        ErrCode err = ErrCode::None;
        auto remapped = remap_tvm_payload(state, payload, &err);
        if (!remapped)
            return WriteSet::make_global();
        auto p = decode_evm_transfer(as_view(*remapped));
        if (!p)
            return WriteSet::make_global();
        Bytes from = address_for(VmId::Evm, sender).bytes;
        return WriteSet::make_static(
            {evm_balance_key(as_view(from)), evm_balance_key(as_view(p->to))});
    }
    default:
        // Deploys, calls, invokes, account management: unbounded side effects.
        return WriteSet::make_global();
    }
}

bool conflicts(const WriteSet& a, const WriteSet& b) {
    if (a.global || b.global)
        return true;
    // Both key lists are sorted.
    auto ia = a.keys.begin();
    auto ib = b.keys.begin();
    while (ia != a.keys.end() && ib != b.keys.end()) {
        if (*ia == *ib)
            return true;
        if (*ia < *ib)
            ++ia;
        else
            ++ib;
    }
    return false;
}

BatchPlan build_batches(const std::vector<WriteSet>& write_sets) {
    BatchPlan plan;
    std::vector<size_t> current;
    KeySet used;
    auto intersects_used = [&](const WriteSet& w) {
        for (const auto& k : w.keys)
            if (used.contains(k))
                return true;
        return false;
    };
    for (size_t j = 0; j < write_sets.size(); j++) {
        const WriteSet& w = write_sets[j];
        if (w.global || intersects_used(w)) {
            if (!current.empty())
                plan.batches.push_back(std::move(current));
            plan.batches.push_back({j});  // conflicting tx runs alone
            current = {};
            used.clear();
        } else {
            current.push_back(j);
            used.insert(w.keys.begin(), w.keys.end());
        }
    }
    if (!current.empty())
        plan.batches.push_back(std::move(current));
    return plan;
}

size_t shard_of(BytesView vm_prefix, const std::array<uint8_t, 16>& ctx, size_t k) {
    if (vm_prefix.size() > 255)
        throw BadPrefix("vm prefix longer than 255 bytes");
    if (k < 1)
        throw BadPrefix("shard count must be >= 1");
    Sha256Stream s;
    uint8_t len = static_cast<uint8_t>(vm_prefix.size());
    s.update({&len, 1});
    s.update(vm_prefix);
    s.update(as_view(ctx));
    Hash32 digest = s.finalize();
    // Big-endian 256-bit value mod k.
    uint64_t acc = 0;
    for (uint8_t byte : digest)
        acc = (acc * 256 + byte) % k;
    return acc;
}

ShardPlan plan_shards(const KvStore& state, const Block& block, size_t k,
                      const EngineRegistry& registry) {
    ShardPlan plan;
    plan.shard_count = k;
    plan.shards.resize(k);
    for (size_t i = 0; i < block.size(); i++) {
        const Transaction& tx = block[i];
        if (!tx.context_tag) {
            plan.shared.push_back(i);
            continue;
        }
        WriteSet w = write_set(state, tx, registry);
        if (w.global) {
            plan.shared.push_back(i);
            continue;
        }
        auto vm = registry.vm_of(tx.payload[0]);
        plan.shards[shard_of(as_view(vm_name(*vm)), *tx.context_tag, k)].push_back(i);
    }
    return plan;
}

std::string_view exec_mode_name(ExecMode m) {
    switch (m) {
    case ExecMode::Seq: return "seq";
    case ExecMode::Batched: return "batched";
    case ExecMode::Sharded: return "sharded";
    }
    return "unknown";
}

std::optional<ExecMode> exec_mode_from_name(std::string_view s) {
    if (s == "seq")
        return ExecMode::Seq;
    if (s == "batched")
        return ExecMode::Batched;
    if (s == "sharded")
        return ExecMode::Sharded;
    return std::nullopt;
}

namespace {

bool delta_within(const Delta& delta, const WriteSet& declared) {
    if (declared.global)
        return true;
    for (const auto& e : delta)
        if (!std::binary_search(declared.keys.begin(), declared.keys.end(), e.key))
            return false;
    return true;
}

struct BatchedRun {
    const Dispatcher& dispatcher;
    StateTree& state;
    const Block& block;
    ReplayGuard& guard;
    const std::vector<WriteSet>& write_sets;
    int workers;

    // Returns false when a declared-set violation forces the fallback.
    bool run(std::vector<Receipt>& receipts, size_t* batch_count) {
        BatchPlan plan = build_batches(write_sets);
        *batch_count = plan.batches.size();
        for (const auto& batch : plan.batches) {
            if (batch.size() == 1) {
                size_t idx = batch[0];
                receipts[idx] = dispatcher.dispatch_tx(state, block[idx], guard).receipt;
                continue;
            }
            // The tree is quiescent for the whole parallel section; workers
            // read it through private overlays and never write to it.
            std::vector<DispatchOutcome> outcomes(batch.size());
            bool violation = false;
#pragma omp parallel for num_threads(workers) schedule(dynamic)
            for (size_t m = 0; m < batch.size(); m++) {
                size_t idx = batch[m];
                OverlayState overlay(state);
                outcomes[m] = dispatcher.dispatch_tx(overlay, block[idx], guard);
            }
            for (size_t m = 0; m < batch.size(); m++) {
                if (!delta_within(outcomes[m].delta, write_sets[batch[m]]))
                    violation = true;
            }
            if (violation)
                return false;
            for (size_t m = 0; m < batch.size(); m++) {
                apply_delta(state, outcomes[m].delta);
                receipts[batch[m]] = std::move(outcomes[m].receipt);
            }
        }
        return true;
    }
};

struct ShardedRun {
    const Dispatcher& dispatcher;
    StateTree& state;
    const Block& block;
    ReplayGuard& guard;
    const EngineRegistry& registry;
    const WriteSetFn& ws_fn;
    size_t shard_count;
    int workers;

    bool run(std::vector<Receipt>& receipts, size_t* shared_count) {
        ShardPlan plan = plan_shards(state, block, shard_count, registry);
        *shared_count = plan.shared.size();

        std::vector<size_t> active;
        for (size_t s = 0; s < plan.shards.size(); s++)
            if (!plan.shards[s].empty())
                active.push_back(s);

        struct TxTrace {
            size_t index = 0;
            KeySet reads;
            std::vector<StateKey> writes;
        };
        std::vector<std::vector<TxTrace>> shard_traces(active.size());
        std::vector<Delta> shard_deltas(active.size());
        std::vector<std::vector<Receipt>> shard_receipts(active.size());
        bool violation = false;

#pragma omp parallel for num_threads(workers) schedule(dynamic)
        for (size_t a = 0; a < active.size(); a++) {
            const auto& queue = plan.shards[active[a]];
            OverlayState overlay(state);
            // Shard queues never touch the replay guard (raw-auth
            // transactions are global); a private copy keeps that honest.
            ReplayGuard local_guard = guard;
            auto& traces = shard_traces[a];
            traces.reserve(queue.size());
            for (size_t idx : queue) {
                TxTrace t;
                t.index = idx;
                overlay.set_read_trace(&t.reads);
                DispatchOutcome outcome = dispatcher.dispatch_tx(overlay, block[idx], local_guard);
                overlay.set_read_trace(nullptr);
                t.writes.reserve(outcome.delta.size());
                for (const auto& e : outcome.delta)
                    t.writes.push_back(e.key);
                WriteSet declared = ws_fn(state, block[idx]);
                if (!delta_within(outcome.delta, declared)) {
#pragma omp atomic write
                    violation = true;
                }
                shard_receipts[a].push_back(std::move(outcome.receipt));
                traces.push_back(std::move(t));
            }
            shard_deltas[a] = overlay.delta_vs_base();
        }
        if (violation)
            return false;

        // Cross-shard hazard: a key written by one shard and touched by
        // another would make the merge order observable.
        {
            std::unordered_map<StateKey, size_t, Hash32Hasher> writer;
            for (size_t a = 0; a < active.size(); a++)
                for (const auto& e : shard_deltas[a])
                    writer.emplace(e.key, a);
            for (size_t a = 0; a < active.size(); a++) {
                for (const auto& t : shard_traces[a]) {
                    for (const auto& k : t.reads) {
                        auto it = writer.find(k);
                        if (it != writer.end() && it->second != a)
                            return false;
                    }
                    for (const auto& k : t.writes) {
                        auto it = writer.find(k);
                        if (it != writer.end() && it->second != a)
                            return false;
                    }
                }
            }
        }

        // Position-indexed maxima over shard transactions, for ordering
        // hazards against the shared queue.
        std::unordered_map<StateKey, size_t, Hash32Hasher> touch_max_pos, write_max_pos;
        for (size_t a = 0; a < active.size(); a++) {
            for (const auto& t : shard_traces[a]) {
                for (const auto& k : t.reads) {
                    auto [it, inserted] = touch_max_pos.try_emplace(k, t.index);
                    if (!inserted)
                        it->second = std::max(it->second, t.index);
                }
                for (const auto& k : t.writes) {
                    auto [it, inserted] = touch_max_pos.try_emplace(k, t.index);
                    if (!inserted)
                        it->second = std::max(it->second, t.index);
                    auto [iw, winserted] = write_max_pos.try_emplace(k, t.index);
                    if (!winserted)
                        iw->second = std::max(iw->second, t.index);
                }
            }
        }

        for (size_t a = 0; a < active.size(); a++) {
            apply_delta(state, shard_deltas[a]);
            for (size_t q = 0; q < plan.shards[active[a]].size(); q++)
                receipts[plan.shards[active[a]][q]] = std::move(shard_receipts[a][q]);
        }

        // Shared queue runs serially after the merge. A shared transaction at
        // position p must not interact with any shard transaction ordered
        // after it, or the phase split becomes observable.
        for (size_t idx : plan.shared) {
            KeySet reads;
            state.set_read_trace(&reads);
            DispatchOutcome outcome = dispatcher.dispatch_tx(state, block[idx], guard);
            state.set_read_trace(nullptr);
            for (const auto& e : outcome.delta) {
                auto it = touch_max_pos.find(e.key);
                if (it != touch_max_pos.end() && it->second > idx)
                    return false;
            }
            for (const auto& k : reads) {
                auto it = write_max_pos.find(k);
                if (it != write_max_pos.end() && it->second > idx)
                    return false;
            }
            for (const auto& e : outcome.delta) {
                auto it = write_max_pos.find(e.key);
                if (it != write_max_pos.end() && it->second > idx)
                    return false;
            }
            receipts[idx] = std::move(outcome.receipt);
        }
        return true;
    }
};

}  // namespace

BlockResult execute_block_parallel(StateTree& state, const Block& block, ExecMode mode,
                                   int workers, size_t shard_count, const Dispatcher& dispatcher,
                                   ReplayGuard& guard, ParallelStats* stats,
                                   const WriteSetFn& ws_override) {
    ParallelStats local;
    ParallelStats& st = stats ? *stats : local;
    st = {};
    if (mode == ExecMode::Seq)
        return dispatcher.execute_block(state, block, guard);
    if (workers < 1)
        workers = 1;

    WriteSetFn ws_fn = ws_override;
    if (!ws_fn)
        ws_fn = [&dispatcher](const KvStore& kv, const Transaction& tx) {
            return write_set(kv, tx, dispatcher.registry());
        };

    guard.begin_block();
    ReplayGuard guard_backup = guard;
    std::vector<Receipt> receipts(block.size());

    SnapshotHandle h = state.snapshot();
    bool ok = false;
    if (mode == ExecMode::Batched) {
        std::vector<WriteSet> write_sets;
        write_sets.reserve(block.size());
        for (const auto& tx : block)
            write_sets.push_back(ws_fn(state, tx));
        ok = BatchedRun{dispatcher, state, block, guard, write_sets, workers}.run(receipts,
                                                                                  &st.batches);
    } else {
        ok = ShardedRun{dispatcher,           state, block,       guard,
                        dispatcher.registry(), ws_fn, shard_count, workers}
                 .run(receipts, &st.shared_count);
    }

    if (!ok) {
        // Deterministic fallback: discard everything and replay sequentially.
        state.rollback(h);
        guard = guard_backup;
        st.fell_back = true;
        return dispatcher.execute_block(state, block, guard);
    }

    state.commit(h);
    BlockResult result;
    result.receipts = std::move(receipts);
    result.root = state.state_root();
    return result;
}

}  // namespace acevm
