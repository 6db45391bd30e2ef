// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Operator CLI: workload generation, block execution in the three modes,
// identity utilities, token commands, state inspection, benchmarking.

#include <acevm/crypto.hpp>
#include <acevm/engines.hpp>
#include <acevm/scheduler.hpp>
#include <acevm/token.hpp>
#include <acevm/workload.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace acevm;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitContractViolation = 3;

class CliError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw CliError("cannot write " + path);
    out << text;
}

Hash32 parse_hash32(const std::string& hex, const char* what) {
    auto h = array_from_hex<32>(hex);
    if (!h)
        throw CliError(std::string(what) + ": want 32 hex-encoded bytes");
    return *h;
}

struct RunConfig {
    ChainConfig chain;
    int workers = 4;
    size_t shards = 64;
    std::map<std::string, OpcodeRange> ranges;
};

RunConfig load_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty())
        return cfg;
    auto doc = nlohmann::json::parse(read_file(path));
    if (doc.contains("chain_domain"))
        cfg.chain.chain_domain = doc["chain_domain"].get<std::string>();
    if (doc.contains("workers"))
        cfg.workers = doc["workers"].get<int>();
    if (doc.contains("shards"))
        cfg.shards = doc["shards"].get<size_t>();
    if (doc.contains("opcode_ranges")) {
        for (const auto& [name, range] : doc["opcode_ranges"].items()) {
            if (!range.is_array() || range.size() != 2)
                throw CliError("opcode_ranges entries must be [lo, hi]");
            cfg.ranges[name] = {range[0].get<uint8_t>(), range[1].get<uint8_t>()};
        }
    }
    return cfg;
}

EngineRegistry build_registry(const RunConfig& cfg) {
    if (cfg.ranges.empty())
        return make_default_registry();
    EngineRegistry reg;
    auto range_of = [&](const char* name, OpcodeRange fallback) {
        auto it = cfg.ranges.find(name);
        return it != cfg.ranges.end() ? it->second : fallback;
    };
    reg.register_engine(range_of("native", {0x01, 0x0F}), std::make_unique<NativeEngine>());
    reg.register_engine(range_of("evm", {0x10, 0x1F}), std::make_unique<EvmEngine>());
    reg.register_engine(range_of("svm", {0x20, 0x2F}), std::make_unique<SvmEngine>());
    reg.register_engine(range_of("bvm", {0x30, 0x3F}), std::make_unique<BvmEngine>());
    reg.register_engine(range_of("tvm", {0x40, 0x4F}), std::make_unique<TvmEngine>());
    return reg;
}

std::map<std::string, double> parse_mix(const std::string& text) {
    std::map<std::string, double> mix;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos)
            throw CliError("mix entries look like name=weight");
        mix[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return mix;
}

ordered_json run_report(ExecMode mode, size_t txs, double wall_ms, const ParallelStats& stats,
                        const BlockResult& result, bool bench_style) {
    ordered_json rep;
    rep["mode"] = std::string(exec_mode_name(mode));
    rep["txs"] = txs;
    rep["wall_ms"] = wall_ms;
    rep["tps"] = wall_ms > 0.0 ? static_cast<double>(txs) / (wall_ms / 1000.0) : 0.0;
    rep["batches"] = stats.batches;
    rep["shared_count"] = stats.shared_count;
    if (bench_style) {
        rep["root"] = to_hex(as_view(result.root));
    } else {
        rep["receipts_digest"] = to_hex(as_view(receipts_digest(result.receipts)));
        rep["state_root"] = to_hex(as_view(result.root));
    }
    return rep;
}

int cmd_gen_workload(const WorkloadSpec& spec, const std::string& out_block,
                     const std::string& out_genesis) {
    Workload w = gen_workload(spec);
    write_file(out_block, block_to_json(w.block));
    write_file(out_genesis, w.genesis.dump_json());
    ordered_json rep;
    rep["txs"] = w.block.size();
    rep["mint"] = to_hex(as_view(w.mint));
    rep["genesis_root"] = to_hex(as_view(w.genesis.state_root()));
    std::cout << rep.dump() << "\n";
    return 0;
}

int cmd_run_block(const std::string& genesis_path, const std::string& block_path,
                  const std::string& mode_name, int workers, size_t shards,
                  const std::string& config_path, const std::string& out_state,
                  const std::string& out_receipts) {
    RunConfig cfg = load_config(config_path);
    if (workers > 0)
        cfg.workers = workers;
    if (shards > 0)
        cfg.shards = shards;
    auto mode = exec_mode_from_name(mode_name);
    if (!mode)
        throw CliError("mode must be seq, batched or sharded");

    StateTree state = StateTree::load_json(read_file(genesis_path));
    Block block = block_from_json(read_file(block_path));
    EngineRegistry registry = build_registry(cfg);
    Dispatcher dispatcher(registry, cfg.chain);
    ReplayGuard guard;
    ParallelStats stats;

    auto t0 = std::chrono::steady_clock::now();
    BlockResult result = execute_block_parallel(state, block, *mode, cfg.workers, cfg.shards,
                                                dispatcher, guard, &stats);
    auto t1 = std::chrono::steady_clock::now();
    double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (!out_state.empty())
        write_file(out_state, state.dump_json());
    if (!out_receipts.empty())
        write_file(out_receipts, receipts_to_json(result.receipts));
    std::cout << run_report(*mode, block.size(), wall_ms, stats, result, false).dump() << "\n";
    return 0;
}

int cmd_bench(uint64_t seed, size_t txs, const std::string& mode_name, double conflict,
              double tagged, int workers, size_t shards, const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    if (workers > 0)
        cfg.workers = workers;
    if (shards > 0)
        cfg.shards = shards;
    auto mode = exec_mode_from_name(mode_name);
    if (!mode)
        throw CliError("mode must be seq, batched or sharded");

    WorkloadSpec spec;
    spec.seed = seed;
    spec.tx_count = txs;
    spec.conflict = conflict;
    spec.tagged = tagged;
    spec.chain_domain = cfg.chain.chain_domain;
    Workload w = gen_workload(spec);

    EngineRegistry registry = build_registry(cfg);
    Dispatcher dispatcher(registry, cfg.chain);
    ReplayGuard guard;
    ParallelStats stats;

    auto t0 = std::chrono::steady_clock::now();
    BlockResult result = execute_block_parallel(w.genesis, w.block, *mode, cfg.workers, cfg.shards,
                                                dispatcher, guard, &stats);
    auto t1 = std::chrono::steady_clock::now();
    double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::cout << run_report(*mode, w.block.size(), wall_ms, stats, result, true).dump() << "\n";
    return 0;
}

int cmd_derive(const std::string& id_hex) {
    IdCom id = parse_hash32(id_hex, "id_com");
    ordered_json rep;
    for (VmId vm : {VmId::Native, VmId::Evm, VmId::Svm, VmId::Bvm, VmId::Tvm})
        rep[std::string(vm_name(vm))] = to_hex(as_view(address_for(vm, id).bytes));
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_legacy_id(const std::string& chain_name, const std::string& bytes_hex) {
    auto chain = legacy_chain_from_name(chain_name);
    if (!chain)
        throw CliError("chain must be evm, sol, btc or tron");
    auto bytes = from_hex(bytes_hex);
    if (!bytes)
        throw CliError("bytes: invalid hex");
    try {
        IdCom id = legacy_id_com(*chain, as_view(*bytes));
        std::cout << to_hex(as_view(id)) << "\n";
    } catch (const IdentityError& e) {
        throw CliError(e.what());
    }
    return 0;
}

int cmd_verify_raw(const std::string& path, const std::string& config_path) {
    RunConfig cfg = load_config(config_path);
    RawTxEnvelope env = envelope_from_json(read_file(path));
    ReplayGuard guard;
    auto v = verify_raw(env, guard, as_view(cfg.chain.chain_domain));
    if (!v.ok) {
        ordered_json rep;
        rep["accepted"] = false;
        rep["error"] = std::string(err_name(v.err));
        rep["message"] = v.msg;
        std::cout << rep.dump(2) << "\n";
        return kExitValidation;
    }
    ordered_json rep;
    rep["accepted"] = true;
    rep["id_com"] = to_hex(as_view(v.sender));
    rep["payload"] = to_hex(as_view(v.payload));
    std::cout << rep.dump(2) << "\n";
    return 0;
}

int cmd_state_root(const std::string& path) {
    StateTree state = StateTree::load_json(read_file(path));
    std::cout << to_hex(as_view(state.state_root())) << "\n";
    return 0;
}

struct TokenArgs {
    std::string state_path;
    std::string out_path;
    std::string mint_hex;
    std::string authority_hex;
    std::string from_hex_s;
    std::string to_hex_s;
    std::string owner_hex;
    std::string seed_hex;
    std::string amount_str;
    std::string view = "ledger";
    uint32_t decimals = 0;
};

uint64_t parse_amount(const std::string& s) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size())
            throw CliError("amount: trailing characters");
        return v;
    } catch (const std::exception&) {
        throw CliError("amount: want a decimal u64");
    }
}

void save_state(const TokenArgs& a, const StateTree& state) {
    write_file(a.out_path.empty() ? a.state_path : a.out_path, state.dump_json());
}

int cmd_token_create_mint(const TokenArgs& a) {
    StateTree state = StateTree::load_json(read_file(a.state_path));
    IdCom authority = parse_hash32(a.authority_hex, "authority");
    auto seed = from_hex(a.seed_hex);
    if (!seed)
        throw CliError("seed: invalid hex");
    MintId mint;
    auto e = token::create_mint(state, authority, static_cast<uint8_t>(a.decimals),
                                as_view(*seed), &mint);
    if (e != token::TokenErr::Ok)
        throw CliError(std::string(token::token_err_name(e)));
    revidx::register_identity(state, authority);
    token::record_ata_alias(state, authority, mint);
    save_state(a, state);
    ordered_json rep;
    rep["mint"] = to_hex(as_view(mint));
    std::cout << rep.dump() << "\n";
    return 0;
}

int cmd_token_mint(const TokenArgs& a) {
    StateTree state = StateTree::load_json(read_file(a.state_path));
    MintId mint = parse_hash32(a.mint_hex, "mint");
    IdCom authority = parse_hash32(a.authority_hex, "authority");
    IdCom to = parse_hash32(a.to_hex_s, "to");
    auto e = token::mint_to(state, mint, authority, to, parse_amount(a.amount_str));
    if (e != token::TokenErr::Ok)
        throw CliError(std::string(token::token_err_name(e)));
    revidx::register_identity(state, to);
    token::record_ata_alias(state, to, mint);
    save_state(a, state);
    ordered_json rep;
    rep["supply"] = std::to_string(token::mint_meta(state, mint)->supply);
    rep["balance"] = std::to_string(token::balance(state, mint, to));
    std::cout << rep.dump() << "\n";
    return 0;
}

int cmd_token_transfer(const TokenArgs& a) {
    StateTree state = StateTree::load_json(read_file(a.state_path));
    MintId mint = parse_hash32(a.mint_hex, "mint");
    IdCom from = parse_hash32(a.from_hex_s, "from");
    IdCom to = parse_hash32(a.to_hex_s, "to");
    auto e = token::transfer(state, mint, from, to, parse_amount(a.amount_str));
    if (e != token::TokenErr::Ok)
        throw CliError(std::string(token::token_err_name(e)));
    revidx::register_identity(state, to);
    token::record_ata_alias(state, to, mint);
    save_state(a, state);
    ordered_json rep;
    rep["from_balance"] = std::to_string(token::balance(state, mint, from));
    rep["to_balance"] = std::to_string(token::balance(state, mint, to));
    std::cout << rep.dump() << "\n";
    return 0;
}

int cmd_token_balance(const TokenArgs& a) {
    StateTree state = StateTree::load_json(read_file(a.state_path));
    MintId mint = parse_hash32(a.mint_hex, "mint");
    IdCom owner = parse_hash32(a.owner_hex, "owner");
    uint64_t value = 0;
    if (a.view == "ledger") {
        value = token::balance(state, mint, owner);
    } else if (a.view == "erc20") {
        Bytes addr = address_for(VmId::Evm, owner).bytes;
        value = token::erc20_balance_of(state, mint, as_view(addr));
    } else if (a.view == "spl") {
        value = token::spl_balance(state, token::spl_ata(owner, mint));
    } else {
        throw CliError("view must be ledger, erc20 or spl");
    }
    ordered_json rep;
    rep["view"] = a.view;
    rep["balance"] = std::to_string(value);
    std::cout << rep.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acevm: opcode-routed multi-VM execution core"};
    app.require_subcommand(1);

    // gen-workload
    WorkloadSpec spec;
    std::string mix_str, out_block = "block.json", out_genesis = "genesis.json";
    auto* gen = app.add_subcommand("gen-workload", "emit a deterministic block + genesis");
    gen->add_option("--seed", spec.seed, "workload seed");
    gen->add_option("--txs", spec.tx_count, "transaction count");
    gen->add_option("--mix", mix_str, "engine weights, e.g. native=0.5,evm=0.5");
    gen->add_option("--conflict", spec.conflict, "hot-recipient fraction [0,1]");
    gen->add_option("--tagged", spec.tagged, "context-tag fraction [0,1]");
    gen->add_option("--raw", spec.raw, "raw-envelope fraction [0,1]");
    gen->add_option("--accounts", spec.accounts, "account count (0 = auto)");
    gen->add_option("--out-block", out_block, "block file");
    gen->add_option("--out-genesis", out_genesis, "genesis state file");

    // run-block
    std::string genesis_path, block_path, mode_name = "seq", config_path, out_state, out_receipts;
    int workers = 0;
    size_t shards = 0;
    auto* run = app.add_subcommand("run-block", "execute a block file against a genesis state");
    run->add_option("--genesis", genesis_path, "genesis state file")->required();
    run->add_option("--block", block_path, "block file")->required();
    run->add_option("--mode", mode_name, "seq | batched | sharded");
    run->add_option("--workers", workers, "worker threads");
    run->add_option("--shards", shards, "shard count K");
    run->add_option("--config", config_path, "config JSON");
    run->add_option("--out-state", out_state, "write post-state here");
    run->add_option("--out-receipts", out_receipts, "write receipts JSON here");

    // bench
    uint64_t bench_seed = 42;
    size_t bench_txs = 10000;
    std::string bench_mode = "batched";
    double bench_conflict = 0.0, bench_tagged = 1.0;
    int bench_workers = 0;
    size_t bench_shards = 0;
    std::string bench_config;
    auto* bench = app.add_subcommand("bench", "generate a workload and time one execution mode");
    bench->add_option("--seed", bench_seed, "workload seed");
    bench->add_option("--txs", bench_txs, "transaction count");
    bench->add_option("--mode", bench_mode, "seq | batched | sharded");
    bench->add_option("--conflict", bench_conflict, "hot-recipient fraction");
    bench->add_option("--tagged", bench_tagged, "context-tag fraction");
    bench->add_option("--workers", bench_workers, "worker threads");
    bench->add_option("--shards", bench_shards, "shard count K");
    bench->add_option("--config", bench_config, "config JSON");

    // derive / legacy-id / verify-raw / state-root
    std::string id_hex;
    auto* derive = app.add_subcommand("derive", "per-VM addresses for an id_com");
    derive->add_option("--id-com", id_hex, "32-byte id_com, hex")->required();

    std::string chain_name, bytes_hex;
    auto* legacy = app.add_subcommand("legacy-id", "legacy id_com for raw chain bytes");
    legacy->add_option("--chain", chain_name, "evm | sol | btc | tron")->required();
    legacy->add_option("--bytes", bytes_hex, "address or pubkey, hex")->required();

    std::string envelope_path, vr_config;
    auto* vraw = app.add_subcommand("verify-raw", "check a raw-chain envelope file");
    vraw->add_option("file", envelope_path, "envelope JSON")->required();
    vraw->add_option("--config", vr_config, "config JSON");

    std::string root_path;
    auto* sroot = app.add_subcommand("state-root", "print the root of a state file");
    sroot->add_option("--state", root_path, "state JSON")->required();

    // token
    TokenArgs ta;
    auto* tok = app.add_subcommand("token", "unified token ledger commands");
    tok->require_subcommand(1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--state", ta.state_path, "state JSON")->required();
        sub->add_option("--out", ta.out_path, "write post-state here (default: in place)");
    };
    auto* tcreate = tok->add_subcommand("create-mint", "create a mint");
    add_common(tcreate);
    tcreate->add_option("--authority", ta.authority_hex, "authority id_com, hex")->required();
    tcreate->add_option("--decimals", ta.decimals, "decimal precision");
    tcreate->add_option("--seed", ta.seed_hex, "mint seed bytes, hex")->required();

    auto* tmint = tok->add_subcommand("mint", "mint to an identity");
    add_common(tmint);
    tmint->add_option("--mint", ta.mint_hex, "mint id, hex")->required();
    tmint->add_option("--authority", ta.authority_hex, "authority id_com, hex")->required();
    tmint->add_option("--to", ta.to_hex_s, "destination id_com, hex")->required();
    tmint->add_option("--amount", ta.amount_str, "decimal amount")->required();

    auto* ttransfer = tok->add_subcommand("transfer", "move between identities");
    add_common(ttransfer);
    ttransfer->add_option("--mint", ta.mint_hex, "mint id, hex")->required();
    ttransfer->add_option("--from", ta.from_hex_s, "sender id_com, hex")->required();
    ttransfer->add_option("--to", ta.to_hex_s, "recipient id_com, hex")->required();
    ttransfer->add_option("--amount", ta.amount_str, "decimal amount")->required();

    auto* tbalance = tok->add_subcommand("balance", "read a balance through a view");
    tbalance->add_option("--state", ta.state_path, "state JSON")->required();
    tbalance->add_option("--mint", ta.mint_hex, "mint id, hex")->required();
    tbalance->add_option("--owner", ta.owner_hex, "owner id_com, hex")->required();
    tbalance->add_option("--view", ta.view, "ledger | erc20 | spl");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            if (!mix_str.empty())
                spec.mix = parse_mix(mix_str);
            return cmd_gen_workload(spec, out_block, out_genesis);
        }
        if (run->parsed())
            return cmd_run_block(genesis_path, block_path, mode_name, workers, shards,
                                 config_path, out_state, out_receipts);
        if (bench->parsed())
            return cmd_bench(bench_seed, bench_txs, bench_mode, bench_conflict, bench_tagged,
                             bench_workers, bench_shards, bench_config);
        if (derive->parsed())
            return cmd_derive(id_hex);
        if (legacy->parsed())
            return cmd_legacy_id(chain_name, bytes_hex);
        if (vraw->parsed())
            return cmd_verify_raw(envelope_path, vr_config);
        if (sroot->parsed())
            return cmd_state_root(root_path);
        if (tok->parsed()) {
            if (tcreate->parsed())
                return cmd_token_create_mint(ta);
            if (tmint->parsed())
                return cmd_token_mint(ta);
            if (ttransfer->parsed())
                return cmd_token_transfer(ta);
            if (tbalance->parsed())
                return cmd_token_balance(ta);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const BadSpec& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const WireError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const StateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitContractViolation;
    }
    return 0;
}
