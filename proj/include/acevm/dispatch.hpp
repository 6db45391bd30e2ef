// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/engine.hpp>
#include <acevm/ingress.hpp>

#include <memory>

namespace acevm {

struct OpcodeRange {
    uint8_t lo = 0;
    uint8_t hi = 0;
};

class RangeConflict : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Opcode-range routing table. Ranges are disjoint; opcode 0x00 is reserved
/// and never routes.
class EngineRegistry {
public:
    void register_engine(OpcodeRange range, std::unique_ptr<VmEngine> engine);

    const VmEngine* route(uint8_t opcode) const { return table_[opcode]; }
    std::optional<VmId> vm_of(uint8_t opcode) const;
    const std::vector<std::pair<OpcodeRange, const VmEngine*>>& ranges() const { return ranges_; }

private:
    std::vector<std::unique_ptr<VmEngine>> owned_;
    std::array<const VmEngine*, 256> table_{};
    std::vector<std::pair<OpcodeRange, const VmEngine*>> ranges_;
};

// Native 0x01-0x0F, EVM 0x10-0x1F, SVM 0x20-0x2F, BVM 0x30-0x3F, TVM 0x40-0x4F.
EngineRegistry make_default_registry();

struct ChainConfig {
    std::string chain_domain = "acevm-dev";
    int max_cross_vm_depth = 4;
};

struct DispatchOutcome {
    Receipt receipt;
    Delta delta;  // empty unless the transaction succeeded
};

struct BlockResult {
    std::vector<Receipt> receipts;
    Hash32 root{};
};

class Dispatcher {
public:
    explicit Dispatcher(const EngineRegistry& registry, ChainConfig cfg = {})
        : registry_(registry), cfg_(std::move(cfg)) {}

    // Routes, authorizes, executes under a snapshot, drains cross-VM requests
    // within the same scope. All failures surface inside the receipt.
    DispatchOutcome dispatch_tx(ScopedKv& state, const Transaction& tx, ReplayGuard& guard) const;

    // Sequential reference execution: left fold of dispatch_tx.
    BlockResult execute_block(StateTree& state, const Block& block, ReplayGuard& guard) const;

    const EngineRegistry& registry() const { return registry_; }
    const ChainConfig& config() const { return cfg_; }

private:
    bool drain_cross_vm(ScopedKv& state, VmId origin_vm, Receipt& receipt) const;

    const EngineRegistry& registry_;
    ChainConfig cfg_;
};

}  // namespace acevm
