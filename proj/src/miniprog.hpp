// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/engines.hpp>

namespace acevm {

// Shared mini-program interpreter. `vm` selects the host surface: TRANSFER
// and CALLPRE are EVM-side, SYSCALL is SVM-side. Logs and cross-VM requests
// accumulate into `res`; returns false with res filled on failure.
bool exec_mini_program(KvStore& state, VmId vm, const ExecContext& ctx, const MiniProgram& prog,
                       ExecResult& res);

// EVM precompile host functions (0x0100..0x0107).
bool exec_precompile(KvStore& state, const ExecContext& ctx, uint16_t id, BytesView data,
                     ExecResult& res);

// SVM syscall surface: ace_id_com, ace_attest, ace_cross_vm_call.
bool exec_svm_syscall(KvStore& state, const ExecContext& ctx, const SyscallInstr& sc,
                      ExecResult& res);

}  // namespace acevm
