// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <acevm/scheduler.hpp>

#include <map>

namespace acevm {

class BadSpec : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic workload description. All randomness flows from `seed`
/// through one std::mt19937_64 stream (raw engine output, modulo-reduced), so
/// identical specs produce byte-identical genesis and block files.
struct WorkloadSpec {
    uint64_t seed = 1;
    size_t tx_count = 1000;
    // Engine weights; normalized internally. Keys: native/evm/svm/bvm/tvm.
    std::map<std::string, double> mix = {
        {"native", 0.40}, {"evm", 0.15}, {"svm", 0.15}, {"bvm", 0.15}, {"tvm", 0.15}};
    double conflict = 0.0;  // fraction of transfers aimed at one hot recipient
    double tagged = 0.0;    // fraction carrying a 16-byte context tag
    double raw = 0.0;       // fraction arriving as raw-chain envelopes
    size_t accounts = 0;    // 0 = scaled from tx_count
    std::string chain_domain = "acevm-dev";
};

struct Workload {
    StateTree genesis;
    Block block;
    MintId mint{};  // the pre-funded genesis mint
};

// Throws BadSpec on invalid fractions.
Workload gen_workload(const WorkloadSpec& spec);

}  // namespace acevm
