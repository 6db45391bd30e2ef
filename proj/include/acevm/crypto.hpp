// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/bytes.hpp>

namespace acevm {

Hash32 sha256(BytesView data);
Hash32 sha256_concat(std::initializer_list<BytesView> parts);

/// Incremental SHA-256, used for state roots and receipt digests.
class Sha256Stream {
public:
    Sha256Stream();
    ~Sha256Stream();
    Sha256Stream(const Sha256Stream&) = delete;
    Sha256Stream& operator=(const Sha256Stream&) = delete;

    void update(BytesView data);
    Hash32 finalize();

private:
    void* ctx_;
};

Hash32 hmac_sha256(BytesView key, BytesView msg);

// HKDF-SHA256 extract-then-expand (RFC 5869). out_len <= 255*32.
Bytes hkdf_sha256(BytesView ikm, BytesView salt, BytesView info, size_t out_len);

// SHA-256(tag || parts...), the domain-separation idiom used throughout.
Hash32 tagged_hash(std::string_view tag, std::initializer_list<BytesView> parts);

}  // namespace acevm
