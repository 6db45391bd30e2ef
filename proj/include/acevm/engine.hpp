// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/state.hpp>
#include <acevm/tx.hpp>

namespace acevm {

struct ExecContext {
    IdCom sender{};
    int depth = 0;  // cross-VM nesting depth; 0 for a block transaction
};

struct ExecResult {
    bool ok = false;
    ErrCode err = ErrCode::None;
    std::string msg;
    std::vector<Bytes> logs;
    std::vector<CrossVmRequest> requests;

    static ExecResult success() { return {true, ErrCode::None, {}, {}, {}}; }
    static ExecResult failure(ErrCode code, std::string m = {}) {
        return {false, code, std::move(m), {}, {}};
    }
};

/// Pluggable VM engine. Engines are stateless; every write goes through the
/// journal scope the dispatcher hands them, so a failed execution can be
/// rolled back without engine cooperation.
class VmEngine {
public:
    virtual ~VmEngine() = default;
    virtual VmId vm_id() const = 0;
    virtual ExecResult execute(KvStore& state, const ExecContext& ctx,
                               BytesView payload) const = 0;
};

// Account records: SHA-256("acct:" || id_com) -> 32-byte attestation key
// (all-zero = no attested authorization possible, e.g. raw-ingress accounts).
namespace acct {

StateKey record_key(const IdCom& id_com);
bool exists(const KvStore& kv, const IdCom& id_com);
std::optional<AttestationKey> attestation_key(const KvStore& kv, const IdCom& id_com);
void create(KvStore& kv, const IdCom& id_com, const AttestationKey& key);
void set_key(KvStore& kv, const IdCom& id_com, const AttestationKey& key);

}  // namespace acct

}  // namespace acevm
