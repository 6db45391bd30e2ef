// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/state.hpp>

#include <acevm/crypto.hpp>

#include <nlohmann/json.hpp>

#include <algorithm>

namespace acevm {

std::optional<StateValue> StateTree::get(const StateKey& key) const {
    trace_read(key);
    auto it = data_.find(key);
    if (it == data_.end())
        return std::nullopt;
    return it->second;
}

void StateTree::put(const StateKey& key, std::optional<StateValue> value) {
    if (value && value->size() > kMaxValueSize)
        throw OversizeValue();
    if (!marks_.empty()) {
        std::optional<StateValue> prev;
        auto it = data_.find(key);
        if (it != data_.end())
            prev = it->second;
        journal_.push_back({key, std::move(prev)});
    }
    if (value)
        data_[key] = std::move(*value);
    else
        data_.erase(key);
}

SnapshotHandle StateTree::snapshot() {
    marks_.push_back(journal_.size());
    return {journal_.size(), marks_.size()};
}

void StateTree::check_top(const SnapshotHandle& h) const {
    if (marks_.empty() || h.depth != marks_.size() || marks_.back() != h.mark)
        throw SnapshotOrderViolation();
}

void StateTree::rollback(const SnapshotHandle& h) {
    check_top(h);
    while (journal_.size() > h.mark) {
        auto& e = journal_.back();
        if (e.prev)
            data_[e.key] = std::move(*e.prev);
        else
            data_.erase(e.key);
        journal_.pop_back();
    }
    marks_.pop_back();
    if (marks_.empty())
        journal_.clear();
}

void StateTree::commit(const SnapshotHandle& h) {
    check_top(h);
    marks_.pop_back();
    if (marks_.empty())
        journal_.clear();
}

Delta StateTree::take_delta(const SnapshotHandle& h) {
    check_top(h);
    // First journal entry per key holds the value at snapshot time.
    std::map<StateKey, std::optional<StateValue>> oldest;
    for (size_t i = h.mark; i < journal_.size(); i++)
        oldest.emplace(journal_[i].key, journal_[i].prev);
    Delta d;
    for (auto& [key, old] : oldest) {
        auto it = data_.find(key);
        std::optional<StateValue> now;
        if (it != data_.end())
            now = it->second;
        if (old != now)
            d.push_back({key, std::move(old), std::move(now)});
    }
    commit(h);
    return d;
}

Hash32 StateTree::state_root() const {
    if (!marks_.empty())
        throw DirtyState();
    Sha256Stream s;
    for (const auto& [key, value] : data_) {
        s.update(as_view(key));
        Bytes len;
        append_u32be(len, static_cast<uint32_t>(value.size()));
        s.update(as_view(len));
        s.update(as_view(value));
    }
    return s.finalize();
}

std::string StateTree::dump_json() const {
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& [key, value] : data_)
        entries.push_back({to_hex(as_view(key)), to_hex(as_view(value))});
    nlohmann::ordered_json doc;
    doc["entries"] = std::move(entries);
    return doc.dump(2);
}

StateTree StateTree::load_json(const std::string& text) {
    auto doc = nlohmann::json::parse(text);
    StateTree t;
    for (const auto& pair : doc.at("entries")) {
        auto key = array_from_hex<32>(pair.at(0).get<std::string>());
        auto value = from_hex(pair.at(1).get<std::string>());
        if (!key || !value)
            throw StateError("state dump: bad hex entry");
        t.data_[*key] = std::move(*value);
    }
    return t;
}

std::optional<StateValue> OverlayState::get(const StateKey& key) const {
    trace_read(key);
    auto it = entries_.find(key);
    if (it != entries_.end())
        return it->second;
    return base_.get(key);
}

void OverlayState::put(const StateKey& key, std::optional<StateValue> value) {
    if (value && value->size() > kMaxValueSize)
        throw OversizeValue();
    if (!marks_.empty()) {
        auto it = entries_.find(key);
        if (it != entries_.end())
            journal_.push_back({key, true, it->second});
        else
            journal_.push_back({key, false, std::nullopt});
    }
    entries_[key] = std::move(value);
}

SnapshotHandle OverlayState::snapshot() {
    marks_.push_back(journal_.size());
    return {journal_.size(), marks_.size()};
}

void OverlayState::check_top(const SnapshotHandle& h) const {
    if (marks_.empty() || h.depth != marks_.size() || marks_.back() != h.mark)
        throw SnapshotOrderViolation();
}

void OverlayState::rollback(const SnapshotHandle& h) {
    check_top(h);
    while (journal_.size() > h.mark) {
        auto& e = journal_.back();
        if (e.existed)
            entries_[e.key] = std::move(e.prev);
        else
            entries_.erase(e.key);
        journal_.pop_back();
    }
    marks_.pop_back();
    if (marks_.empty())
        journal_.clear();
}

void OverlayState::commit(const SnapshotHandle& h) {
    check_top(h);
    marks_.pop_back();
    if (marks_.empty())
        journal_.clear();
}

Delta OverlayState::take_delta(const SnapshotHandle& h) {
    check_top(h);
    struct Oldest {
        bool existed;
        std::optional<StateValue> prev;
    };
    std::map<StateKey, Oldest> oldest;
    for (size_t i = h.mark; i < journal_.size(); i++)
        oldest.emplace(journal_[i].key, Oldest{journal_[i].existed, journal_[i].prev});
    Delta d;
    for (auto& [key, o] : oldest) {
        std::optional<StateValue> old = o.existed ? o.prev : base_.get(key);
        auto it = entries_.find(key);
        std::optional<StateValue> now = it != entries_.end() ? it->second : base_.get(key);
        if (old != now)
            d.push_back({key, std::move(old), std::move(now)});
    }
    commit(h);
    return d;
}

Delta OverlayState::delta_vs_base() const {
    std::vector<const StateKey*> keys;
    keys.reserve(entries_.size());
    for (const auto& [key, value] : entries_)
        keys.push_back(&key);
    std::sort(keys.begin(), keys.end(), [](auto* a, auto* b) { return *a < *b; });
    Delta d;
    for (const StateKey* key : keys) {
        auto old = base_.get(*key);
        const auto& now = entries_.at(*key);
        if (old != now)
            d.push_back({*key, std::move(old), now});
    }
    return d;
}

void apply_delta(KvStore& kv, const Delta& d) {
    for (const auto& e : d)
        kv.put(e.key, e.new_value);
}

}  // namespace acevm
