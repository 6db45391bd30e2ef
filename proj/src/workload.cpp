// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/workload.hpp>

#include <acevm/crypto.hpp>
#include <acevm/engines.hpp>
#include <acevm/sig.hpp>
#include <acevm/token.hpp>

#include <random>

namespace acevm {

namespace {

constexpr uint64_t kNativeFunding = 1'000'000'000;
constexpr uint64_t kTokenFunding = 1'000'000;
constexpr uint64_t kUtxoValue = 500'000;
constexpr int kUtxosPerAccount = 2;

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(uint64_t seed) : gen(seed) {}

    uint64_t next() { return gen(); }
    // Modulo reduction keeps the stream portable across standard libraries.
    size_t below(size_t n) { return static_cast<size_t>(next() % n); }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

Hash32 derived(std::string_view label, uint64_t seed, uint32_t i, uint32_t j = 0) {
    Bytes b;
    append_u64be(b, seed);
    append_u32be(b, i);
    append_u32be(b, j);
    return tagged_hash(label, {as_view(b)});
}

struct RawSender {
    LegacyChain chain;
    sig::SecpKeypair secp;  // evm/tron
    sig::EdKeypair ed;      // sol
    IdCom id{};
    uint64_t next_nonce = 0;
};

}  // namespace

Workload gen_workload(const WorkloadSpec& spec) {
    auto frac_ok = [](double f) { return f >= 0.0 && f <= 1.0; };
    if (!frac_ok(spec.conflict) || !frac_ok(spec.tagged) || !frac_ok(spec.raw))
        throw BadSpec("conflict/tagged/raw must be within [0,1]");
    double mix_total = 0.0;
    for (const auto& [name, weight] : spec.mix) {
        if (!vm_from_name(name) || name == "ext")
            throw BadSpec("unknown engine in mix: " + name);
        if (weight < 0.0)
            throw BadSpec("negative mix weight");
        mix_total += weight;
    }
    if (mix_total <= 0.0)
        throw BadSpec("mix weights sum to zero");

    Workload w;
    Rng rng(spec.seed);
    size_t n = spec.accounts ? spec.accounts
                             : std::clamp<size_t>(spec.tx_count / 4, 16, 4096);

    std::vector<IdCom> ids(n);
    std::vector<AttestationKey> keys(n);
    std::vector<std::vector<Outpoint>> utxos(n);
    for (uint32_t i = 0; i < n; i++) {
        ids[i] = derived("wl-acct:", spec.seed, i);
        keys[i] = derived("wl-akey:", spec.seed, i);
        acct::create(w.genesis, ids[i], keys[i]);
        revidx::register_identity(w.genesis, ids[i]);
        write_balance(w.genesis, native_balance_key(ids[i]), kNativeFunding);
        write_balance(w.genesis, evm_balance_key(as_view(address_for(VmId::Evm, ids[i]).bytes)),
                      kNativeFunding);
        write_balance(w.genesis, svm_balance_key(as_view(address_for(VmId::Svm, ids[i]).bytes)),
                      kNativeFunding);
        for (int j = 0; j < kUtxosPerAccount; j++) {
            Hash32 txid = derived("wl-utxo:", spec.seed, i, static_cast<uint32_t>(j));
            Outpoint op{txid, static_cast<uint32_t>(j)};
            Bytes v;
            append(v, as_view(ids[i]));
            append_u64be(v, kUtxoValue);
            w.genesis.put(utxo_key(op.txid, op.vout), std::move(v));
            utxos[i].push_back(op);
        }
    }
    token::create_mint(w.genesis, ids[0], 6, as_view("genesis"), &w.mint);
    for (uint32_t i = 0; i < n; i++) {
        token::mint_to(w.genesis, w.mint, ids[0], ids[i], kTokenFunding);
        token::record_ata_alias(w.genesis, ids[i], w.mint);
    }

    // Raw-ingress senders sign with legacy wallets; their namespace balances
    // are pre-funded so the synthesized transfers can succeed.
    std::vector<RawSender> raw_senders;
    if (spec.raw > 0.0) {
        size_t m = std::max<size_t>(4, n / 8);
        for (uint32_t i = 0; i < m; i++) {
            for (LegacyChain chain : {LegacyChain::Evm, LegacyChain::Sol, LegacyChain::Tron}) {
                RawSender s;
                s.chain = chain;
                if (chain == LegacyChain::Sol) {
                    s.ed = sig::ed25519_keypair_from_seed(derived("wl-sol-key:", spec.seed, i));
                    s.id = legacy_id_com(LegacyChain::Sol, as_view(s.ed.pub));
                    write_balance(w.genesis,
                                  svm_balance_key(as_view(address_for(VmId::Svm, s.id).bytes)),
                                  kNativeFunding);
                } else {
                    auto label = chain == LegacyChain::Evm ? "wl-evm-key:" : "wl-tron-key:";
                    s.secp = sig::secp_keypair_from_seed(derived(label, spec.seed, i));
                    Addr20 addr = evm_address_of_pubkey(as_view(s.secp.pub_uncompressed));
                    s.id = legacy_id_com(chain, as_view(addr));
                    write_balance(w.genesis,
                                  evm_balance_key(as_view(address_for(VmId::Evm, s.id).bytes)),
                                  kNativeFunding);
                }
                raw_senders.push_back(std::move(s));
            }
        }
    }

    std::vector<std::pair<VmId, double>> weights;
    for (const auto& [name, weight] : spec.mix)
        if (weight > 0.0)
            weights.emplace_back(*vm_from_name(name), weight / mix_total);
    auto pick_engine = [&](double u) {
        double acc = 0.0;
        for (const auto& [vm, p] : weights) {
            acc += p;
            if (u < acc)
                return vm;
        }
        return weights.back().first;
    };

    auto pick_recipient = [&]() -> size_t {
        if (spec.conflict > 0.0 && rng.unit() < spec.conflict)
            return 0;  // hot account
        return rng.below(n);
    };
    auto next_tag = [&]() -> std::optional<std::array<uint8_t, 16>> {
        if (spec.tagged <= 0.0 || rng.unit() >= spec.tagged)
            return std::nullopt;
        Hash32 h = derived("wl-ctx:", spec.seed, static_cast<uint32_t>(rng.below(256)));
        return to_array<16>(BytesView(h).subspan(0, 16));
    };

    w.block.reserve(spec.tx_count);
    for (size_t t = 0; t < spec.tx_count; t++) {
        VmId vm = pick_engine(rng.unit());
        uint64_t amount = 1 + rng.below(1000);
        size_t r = pick_recipient();

        bool want_raw = spec.raw > 0.0 && rng.unit() < spec.raw && !raw_senders.empty() &&
                        (vm == VmId::Evm || vm == VmId::Svm || vm == VmId::Tvm);
        if (want_raw) {
            LegacyChain chain = vm == VmId::Evm   ? LegacyChain::Evm
                                : vm == VmId::Svm ? LegacyChain::Sol
                                                  : LegacyChain::Tron;
            std::vector<size_t> candidates;
            for (size_t i = 0; i < raw_senders.size(); i++)
                if (raw_senders[i].chain == chain)
                    candidates.push_back(i);
            RawSender& s = raw_senders[candidates[rng.below(candidates.size())]];

            RawTxEnvelope env;
            env.chain = chain;
            env.fields.amount = amount;
            env.fields.chain_domain = to_bytes(spec.chain_domain);
            if (chain == LegacyChain::Sol) {
                env.fields.recipient = address_for(VmId::Svm, ids[r]).bytes;
                env.fields.nonce_or_slot = t;
                env.signer_material = Bytes(s.ed.pub.begin(), s.ed.pub.end());
            } else {
                env.fields.recipient =
                    address_for(chain == LegacyChain::Evm ? VmId::Evm : VmId::Tvm, ids[r]).bytes;
                env.fields.nonce_or_slot = s.next_nonce++;
            }
            Bytes canonical = *canonical_bytes(env);
            if (chain == LegacyChain::Sol) {
                auto sig64 = sig::ed25519_sign(s.ed, as_view(canonical));
                env.signature = Bytes(sig64.begin(), sig64.end());
            } else {
                env.signature =
                    sig::secp_sign_recoverable(s.secp.priv, sha256(as_view(canonical)));
            }

            Transaction tx;
            if (chain == LegacyChain::Sol)
                tx.payload = encode_svm_system_transfer(
                    {to_array<32>(as_view(env.fields.recipient)), amount});
            else
                tx.payload = encode_evm_transfer(
                    {to_array<20>(as_view(env.fields.recipient)), amount},
                    chain == LegacyChain::Evm ? kOpEvmTransfer : kOpTvmTransfer);
            tx.auth = RawAuth{std::move(env)};
            w.block.push_back(std::move(tx));
            continue;
        }

        size_t sidx = rng.below(n);
        const IdCom& sender = ids[sidx];
        const AttestationKey& key = keys[sidx];
        Bytes payload;
        switch (vm) {
        case VmId::Native:
            payload = encode_native_transfer({ids[r], amount});
            break;
        case VmId::Evm: {
            uint64_t flavor = rng.below(100);
            if (flavor < 90) {
                payload = encode_evm_transfer(
                    {to_array<20>(as_view(address_for(VmId::Evm, ids[r]).bytes)), amount});
            } else if (flavor < 95) {
                MiniProgram prog;
                prog.instrs.push_back(WriteInstr{derived("wl-key:", spec.seed,
                                                         static_cast<uint32_t>(rng.below(1 << 20))),
                                                 to_bytes(as_view("wl"))});
                prog.instrs.push_back(EmitLogInstr{to_bytes(as_view("deployed"))});
                payload = encode_evm_deploy({std::move(prog)});
            } else if (flavor < 98) {
                // Cross-VM hook: SPL transfer routed through precompile 0x0106.
                Bytes data;
                data.push_back(kOpSvmInvoke);
                append(data, as_view(token::kSplProgramId));
                append(data, as_view(w.mint));
                append(data, as_view(ids[r]));
                append_u64be(data, amount);
                payload = encode_evm_call({precompile_address(kPreCrossVmCall), std::move(data)});
            } else {
                payload = encode_evm_call({precompile_address(kPreResolveSvmAddr), {}});
            }
            break;
        }
        case VmId::Svm: {
            if (rng.below(100) < 80)
                payload = encode_svm_system_transfer(
                    {to_array<32>(as_view(address_for(VmId::Svm, ids[r]).bytes)), amount});
            else
                payload = encode_svm_spl_transfer({w.mint, ids[r], amount});
            break;
        }
        case VmId::Bvm: {
            if (utxos[sidx].empty()) {
                payload = encode_native_transfer({ids[r], amount});
                break;
            }
            Outpoint in = utxos[sidx].back();
            utxos[sidx].pop_back();
            BvmUtxoTransfer p;
            p.inputs.push_back(in);
            p.outputs.push_back({ids[r], amount});
            p.outputs.push_back({sender, kUtxoValue - amount});
            payload = encode_bvm_utxo_transfer(p);
            break;
        }
        case VmId::Tvm:
            payload = encode_evm_transfer(
                {to_array<20>(as_view(address_for(VmId::Tvm, ids[r]).bytes)), amount},
                kOpTvmTransfer);
            break;
        case VmId::Ext:
            throw BadSpec("ext engine not generatable");
        }
        w.block.push_back(make_attested_tx(std::move(payload), sender, key, next_tag()));
    }
    return w;
}

}  // namespace acevm
