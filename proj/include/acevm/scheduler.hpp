// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/dispatch.hpp>

#include <functional>

namespace acevm {

/// Static key footprint of a transaction, or Global when the footprint cannot
/// be determined upfront (contract calls, raw ingress, cross-VM requests,
/// undecodable payloads). A Static set contains every key the transaction may
/// read or write.
struct WriteSet {
    bool global = true;
    std::vector<StateKey> keys;  // sorted, unique; meaningful when !global

    static WriteSet make_global() { return {true, {}}; }
    static WriteSet make_static(std::vector<StateKey> keys);
};

// Needs the state for TVM address translation; reverse-index entries are
// write-once, so a plan stays valid for the whole block.
WriteSet write_set(const KvStore& state, const Transaction& tx, const EngineRegistry& registry);

bool conflicts(const WriteSet& a, const WriteSet& b);

struct BatchPlan {
    std::vector<std::vector<size_t>> batches;  // transaction indices, block order
};

// Greedy single-pass batch construction: a transaction that is Global or
// conflicts with the keys used so far flushes the current batch and runs as a
// singleton; otherwise it joins the current batch.
BatchPlan build_batches(const std::vector<WriteSet>& write_sets);

class BadPrefix : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// SHA-256(len(vm) || vm || ctx) mod K; len encoded as one byte, the digest
// reduced as a big-endian 256-bit integer.
size_t shard_of(BytesView vm_prefix, const std::array<uint8_t, 16>& ctx, size_t k);

struct ShardPlan {
    size_t shard_count = 0;
    std::vector<std::vector<size_t>> shards;  // per-shard queues, block order
    std::vector<size_t> shared;               // serial queue, block order
};

// A transaction is shard-routable when it carries a context tag and has a
// Static write set; everything else lands in the shared queue.
ShardPlan plan_shards(const KvStore& state, const Block& block, size_t k,
                      const EngineRegistry& registry);

enum class ExecMode { Seq, Batched, Sharded };

std::string_view exec_mode_name(ExecMode m);
std::optional<ExecMode> exec_mode_from_name(std::string_view s);

struct ParallelStats {
    size_t batches = 0;       // batch count (batched mode)
    size_t shared_count = 0;  // shared-queue length (sharded mode)
    bool fell_back = false;   // a contract check forced sequential re-execution
};

using WriteSetFn = std::function<WriteSet(const KvStore&, const Transaction&)>;

/// Executes a block in the requested mode. The result (receipts and root) is
/// always equal to Dispatcher::execute_block on the same inputs: any contract
/// violation or cross-queue hazard discards the attempt and re-executes the
/// whole block sequentially. Worker count never affects the result.
BlockResult execute_block_parallel(StateTree& state, const Block& block, ExecMode mode,
                                   int workers, size_t shard_count, const Dispatcher& dispatcher,
                                   ReplayGuard& guard, ParallelStats* stats = nullptr,
                                   const WriteSetFn& ws_override = {});

}  // namespace acevm
