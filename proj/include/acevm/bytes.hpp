// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace acevm {

using Bytes = std::vector<uint8_t>;
using BytesView = std::span<const uint8_t>;
using Hash32 = std::array<uint8_t, 32>;
using Addr20 = std::array<uint8_t, 20>;

// 32-byte identity commitment; opaque, anchors all per-VM addresses.
using IdCom = Hash32;
// 32-byte token mint identifier.
using MintId = Hash32;
// State tree key; byte-lexicographic order.
using StateKey = Hash32;

struct Hash32Hasher {
    size_t operator()(const Hash32& h) const noexcept {
        size_t v = 0;
        std::memcpy(&v, h.data(), sizeof(v));
        return v;
    }
};

inline BytesView as_view(const Bytes& b) { return {b.data(), b.size()}; }
inline BytesView as_view(const Hash32& h) { return {h.data(), h.size()}; }
inline BytesView as_view(const Addr20& a) { return {a.data(), a.size()}; }
inline BytesView as_view(std::string_view s) {
    return {reinterpret_cast<const uint8_t*>(s.data()), s.size()};
}

inline Bytes to_bytes(BytesView v) { return Bytes(v.begin(), v.end()); }
inline Bytes to_bytes(std::string_view s) { return to_bytes(as_view(s)); }

inline void append(Bytes& out, BytesView v) { out.insert(out.end(), v.begin(), v.end()); }
inline void append(Bytes& out, std::string_view s) { append(out, as_view(s)); }

inline void append_u32be(Bytes& out, uint32_t v) {
    out.push_back(static_cast<uint8_t>(v >> 24));
    out.push_back(static_cast<uint8_t>(v >> 16));
    out.push_back(static_cast<uint8_t>(v >> 8));
    out.push_back(static_cast<uint8_t>(v));
}

inline void append_u64be(Bytes& out, uint64_t v) {
    append_u32be(out, static_cast<uint32_t>(v >> 32));
    append_u32be(out, static_cast<uint32_t>(v));
}

inline uint32_t read_u32be(BytesView v) {
    return (uint32_t{v[0]} << 24) | (uint32_t{v[1]} << 16) | (uint32_t{v[2]} << 8) | uint32_t{v[3]};
}

inline uint64_t read_u64be(BytesView v) {
    return (uint64_t{read_u32be(v)} << 32) | read_u32be(v.subspan(4));
}

inline Bytes u64be_bytes(uint64_t v) {
    Bytes b;
    append_u64be(b, v);
    return b;
}

template <size_t N>
std::array<uint8_t, N> to_array(BytesView v) {
    std::array<uint8_t, N> out{};
    std::memcpy(out.data(), v.data(), N);
    return out;
}

std::string to_hex(BytesView v);
std::optional<Bytes> from_hex(std::string_view s);

template <size_t N>
std::optional<std::array<uint8_t, N>> array_from_hex(std::string_view s) {
    auto b = from_hex(s);
    if (!b || b->size() != N)
        return std::nullopt;
    return to_array<N>(*b);
}

}  // namespace acevm
