// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/bytes.hpp>

#include <map>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace acevm {

using StateValue = Bytes;
using KeySet = std::unordered_set<StateKey, Hash32Hasher>;

// Values are capped so a journal scope stays bounded in memory.
inline constexpr size_t kMaxValueSize = 64 * 1024;

class StateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};
class OversizeValue : public StateError {
public:
    OversizeValue() : StateError("value exceeds 64 KiB") {}
};
class SnapshotOrderViolation : public StateError {
public:
    SnapshotOrderViolation() : StateError("snapshot handles must be released in LIFO order") {}
};
class DirtyState : public StateError {
public:
    DirtyState() : StateError("operation requires no live snapshot scopes") {}
};

struct DeltaEntry {
    StateKey key;
    std::optional<StateValue> old_value;  // value at snapshot time; absent = key not present
    std::optional<StateValue> new_value;  // absent = deletion
};

// Net writes of one scope, one entry per key, sorted ascending by key.
using Delta = std::vector<DeltaEntry>;

struct SnapshotHandle {
    size_t mark = 0;   // journal position
    size_t depth = 0;  // 1-based scope depth, for LIFO validation
};

/// Key-value surface the engines and the token ledger run against.
/// Reads are optionally traced into a caller-provided sink; the parallel
/// scheduler uses the trace for conflict detection.
class KvStore {
public:
    virtual ~KvStore() = default;
    virtual std::optional<StateValue> get(const StateKey& key) const = 0;
    virtual void put(const StateKey& key, std::optional<StateValue> value) = 0;

    void set_read_trace(KeySet* sink) { read_trace_ = sink; }

protected:
    void trace_read(const StateKey& key) const {
        if (read_trace_)
            read_trace_->insert(key);
    }

private:
    KeySet* read_trace_ = nullptr;
};

/// KvStore with journaled snapshot scopes. Scopes nest LIFO; rollback undoes
/// everything after the mark, take_delta commits and reports the net writes.
class ScopedKv : public KvStore {
public:
    virtual SnapshotHandle snapshot() = 0;
    virtual void rollback(const SnapshotHandle& h) = 0;
    virtual void commit(const SnapshotHandle& h) = 0;
    virtual Delta take_delta(const SnapshotHandle& h) = 0;
};

/// The unified state tree shared by all engines. Single-writer: concurrent
/// readers are only permitted against a quiescent tree (no mutation in
/// flight), which the scheduler guarantees.
class StateTree : public ScopedKv {
public:
    std::optional<StateValue> get(const StateKey& key) const override;
    void put(const StateKey& key, std::optional<StateValue> value) override;

    SnapshotHandle snapshot() override;
    void rollback(const SnapshotHandle& h) override;
    void commit(const SnapshotHandle& h) override;
    Delta take_delta(const SnapshotHandle& h) override;

    // SHA-256 over the sorted (key || len(value) as u32 BE || value) sequence.
    // Requires no live scopes.
    Hash32 state_root() const;

    size_t size() const { return data_.size(); }
    size_t live_scopes() const { return marks_.size(); }
    const std::map<StateKey, StateValue>& entries() const { return data_; }

    // Sorted [hex key, hex value] pairs; the dump/genesis file body.
    std::string dump_json() const;
    static StateTree load_json(const std::string& text);

private:
    struct UndoEntry {
        StateKey key;
        std::optional<StateValue> prev;
    };

    void check_top(const SnapshotHandle& h) const;

    std::map<StateKey, StateValue> data_;
    std::vector<UndoEntry> journal_;
    std::vector<size_t> marks_;
};

/// Journaled write overlay over a read-only base. Workers execute against an
/// overlay and the scheduler merges the resulting deltas; the base tree is
/// never touched from a worker.
class OverlayState : public ScopedKv {
public:
    explicit OverlayState(const KvStore& base) : base_(base) {}

    std::optional<StateValue> get(const StateKey& key) const override;
    void put(const StateKey& key, std::optional<StateValue> value) override;

    SnapshotHandle snapshot() override;
    void rollback(const SnapshotHandle& h) override;
    void commit(const SnapshotHandle& h) override;
    Delta take_delta(const SnapshotHandle& h) override;

    // Net writes against the base, sorted by key, no-ops dropped.
    Delta delta_vs_base() const;

private:
    struct UndoEntry {
        StateKey key;
        bool existed;
        std::optional<StateValue> prev;
    };

    void check_top(const SnapshotHandle& h) const;

    const KvStore& base_;
    std::unordered_map<StateKey, std::optional<StateValue>, Hash32Hasher> entries_;
    std::vector<UndoEntry> journal_;
    std::vector<size_t> marks_;
};

// Applies a delta's new values. Used when merging worker results.
void apply_delta(KvStore& kv, const Delta& d);

}  // namespace acevm
