// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/tx.hpp>

#include <acevm/crypto.hpp>

#include <nlohmann/json.hpp>

#include <charconv>

namespace acevm {

using ordered_json = nlohmann::ordered_json;

std::string_view err_name(ErrCode code) {
    switch (code) {
    case ErrCode::None: return "None";
    case ErrCode::UnknownOpcode: return "UnknownOpcode";
    case ErrCode::AuthFailed: return "AuthFailed";
    case ErrCode::InvalidTarget: return "InvalidTarget";
    case ErrCode::CrossVmFailed: return "CrossVmFailed";
    case ErrCode::CrossVmDepthExceeded: return "CrossVmDepthExceeded";
    case ErrCode::MalformedPayload: return "MalformedPayload";
    case ErrCode::InsufficientBalance: return "InsufficientBalance";
    case ErrCode::AccountExists: return "AccountExists";
    case ErrCode::UnknownAccount: return "UnknownAccount";
    case ErrCode::UnknownContract: return "UnknownContract";
    case ErrCode::PrecompileUnimplemented: return "PrecompileUnimplemented";
    case ErrCode::ProgramFailed: return "ProgramFailed";
    case ErrCode::UnsupportedInstruction: return "UnsupportedInstruction";
    case ErrCode::AttestFailed: return "AttestFailed";
    case ErrCode::MissingUtxo: return "MissingUtxo";
    case ErrCode::NotOwner: return "NotOwner";
    case ErrCode::OutputsExceedInputs: return "OutputsExceedInputs";
    case ErrCode::UnmappedOpcode: return "UnmappedOpcode";
    case ErrCode::UnresolvableAddress: return "UnresolvableAddress";
    case ErrCode::MintExists: return "MintExists";
    case ErrCode::UnknownMint: return "UnknownMint";
    case ErrCode::NotAuthority: return "NotAuthority";
    case ErrCode::SupplyOverflow: return "SupplyOverflow";
    case ErrCode::AllowanceExceeded: return "AllowanceExceeded";
    case ErrCode::BadSignature: return "BadSignature";
    case ErrCode::ReplayDetected: return "ReplayDetected";
    case ErrCode::MalformedEnvelope: return "MalformedEnvelope";
    case ErrCode::DomainMismatch: return "DomainMismatch";
    case ErrCode::PayloadMismatch: return "PayloadMismatch";
    case ErrCode::Unsupported: return "Unsupported";
    }
    return "Unknown";
}

Hash32 tx_digest(const Transaction& tx) {
    return sha256(as_view(tx.payload));
}

Transaction make_attested_tx(Bytes payload, const IdCom& sender, const AttestationKey& key,
                             std::optional<std::array<uint8_t, 16>> tag) {
    Transaction tx;
    tx.payload = std::move(payload);
    Hash32 digest = sha256(as_view(tx.payload));
    tx.auth = AttestedAuth{sender, make_attestation(key, digest)};
    tx.context_tag = tag;
    return tx;
}

namespace {

std::string u64_str(uint64_t v) {
    return std::to_string(v);
}

uint64_t parse_u64(const ordered_json& j, const char* what) {
    if (j.is_number_unsigned())
        return j.get<uint64_t>();
    if (j.is_string()) {
        const auto& s = j.get_ref<const std::string&>();
        uint64_t v = 0;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && p == s.data() + s.size())
            return v;
    }
    throw WireError(std::string("bad u64 field: ") + what);
}

Bytes parse_hex(const ordered_json& j, const char* what) {
    if (j.is_string()) {
        auto b = from_hex(j.get_ref<const std::string&>());
        if (b)
            return *b;
    }
    throw WireError(std::string("bad hex field: ") + what);
}

template <size_t N>
std::array<uint8_t, N> parse_hex_array(const ordered_json& j, const char* what) {
    Bytes b = parse_hex(j, what);
    if (b.size() != N)
        throw WireError(std::string("bad length for field: ") + what);
    return to_array<N>(as_view(b));
}

ordered_json envelope_json(const RawTxEnvelope& env) {
    ordered_json e;
    e["chain"] = std::string(legacy_chain_name(env.chain));
    e["recipient"] = to_hex(as_view(env.fields.recipient));
    e["amount"] = u64_str(env.fields.amount);
    e["nonce_or_slot"] = u64_str(env.fields.nonce_or_slot);
    e["chain_domain"] = std::string(env.fields.chain_domain.begin(), env.fields.chain_domain.end());
    ordered_json inputs = ordered_json::array();
    for (const auto& in : env.fields.inputs) {
        ordered_json o;
        o["txid"] = to_hex(as_view(in.txid));
        o["vout"] = in.vout;
        inputs.push_back(std::move(o));
    }
    e["inputs"] = std::move(inputs);
    e["signer"] = to_hex(as_view(env.signer_material));
    e["signature"] = to_hex(as_view(env.signature));
    return e;
}

RawTxEnvelope envelope_from(const ordered_json& e) {
    RawTxEnvelope env;
    auto chain = legacy_chain_from_name(e.at("chain").get<std::string>());
    if (!chain)
        throw WireError("unknown chain in envelope");
    env.chain = *chain;
    env.fields.recipient = parse_hex(e.at("recipient"), "recipient");
    env.fields.amount = parse_u64(e.at("amount"), "amount");
    env.fields.nonce_or_slot = parse_u64(e.at("nonce_or_slot"), "nonce_or_slot");
    env.fields.chain_domain = to_bytes(e.at("chain_domain").get<std::string>());
    if (e.contains("inputs")) {
        for (const auto& o : e.at("inputs")) {
            Outpoint in;
            in.txid = parse_hex_array<32>(o.at("txid"), "txid");
            in.vout = static_cast<uint32_t>(parse_u64(o.at("vout"), "vout"));
            env.fields.inputs.push_back(in);
        }
    }
    env.signer_material = parse_hex(e.at("signer"), "signer");
    env.signature = parse_hex(e.at("signature"), "signature");
    return env;
}

ordered_json tx_json(const Transaction& tx) {
    ordered_json t;
    t["payload"] = to_hex(as_view(tx.payload));
    if (const auto* att = std::get_if<AttestedAuth>(&tx.auth)) {
        ordered_json a;
        a["type"] = "attested";
        a["id_com"] = to_hex(as_view(att->id_com));
        a["attestation"] = to_hex(as_view(att->attestation));
        t["auth"] = std::move(a);
    } else {
        const auto& raw = std::get<RawAuth>(tx.auth);
        ordered_json a;
        a["type"] = "raw";
        a["envelope"] = envelope_json(raw.envelope);
        t["auth"] = std::move(a);
    }
    if (tx.context_tag)
        t["context_tag"] = to_hex(as_view(*tx.context_tag));
    else
        t["context_tag"] = nullptr;
    return t;
}

Transaction tx_from(const ordered_json& t) {
    Transaction tx;
    tx.payload = parse_hex(t.at("payload"), "payload");
    const auto& a = t.at("auth");
    auto type = a.at("type").get<std::string>();
    if (type == "attested") {
        AttestedAuth att;
        att.id_com = parse_hex_array<32>(a.at("id_com"), "id_com");
        att.attestation = parse_hex_array<32>(a.at("attestation"), "attestation");
        tx.auth = att;
    } else if (type == "raw") {
        tx.auth = RawAuth{envelope_from(a.at("envelope"))};
    } else {
        throw WireError("unknown auth type");
    }
    if (t.contains("context_tag") && !t.at("context_tag").is_null())
        tx.context_tag = parse_hex_array<16>(t.at("context_tag"), "context_tag");
    return tx;
}

}  // namespace

std::string block_to_json(const Block& block) {
    ordered_json doc;
    ordered_json txs = ordered_json::array();
    for (const auto& tx : block)
        txs.push_back(tx_json(tx));
    doc["transactions"] = std::move(txs);
    return doc.dump(2);
}

Block block_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw WireError(std::string("block parse: ") + e.what());
    }
    Block block;
    for (const auto& t : doc.at("transactions"))
        block.push_back(tx_from(t));
    return block;
}

std::string envelope_to_json(const RawTxEnvelope& env) {
    return envelope_json(env).dump(2);
}

RawTxEnvelope envelope_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw WireError(std::string("envelope parse: ") + e.what());
    }
    return envelope_from(doc);
}

std::string receipt_to_json(const Receipt& r, size_t index) {
    ordered_json j;
    j["index"] = index;
    j["vm"] = r.vm ? ordered_json(std::string(vm_name(*r.vm))) : ordered_json(nullptr);
    j["success"] = r.success;
    if (r.error == ErrCode::None) {
        j["error"] = nullptr;
    } else {
        ordered_json e;
        e["code"] = std::string(err_name(r.error));
        e["message"] = r.error_msg;
        j["error"] = std::move(e);
    }
    j["gas"] = r.gas;
    ordered_json logs = ordered_json::array();
    for (const auto& log : r.logs)
        logs.push_back(to_hex(as_view(log)));
    j["logs"] = std::move(logs);
    ordered_json reqs = ordered_json::array();
    for (const auto& req : r.requests) {
        ordered_json q;
        q["target_vm"] = std::string(vm_name(req.target_vm));
        q["program"] = to_hex(as_view(req.program));
        q["data"] = to_hex(as_view(req.data));
        q["origin"] = to_hex(as_view(req.origin));
        reqs.push_back(std::move(q));
    }
    j["cross_vm_requests"] = std::move(reqs);
    return j.dump();
}

std::string receipts_to_json(const std::vector<Receipt>& rs) {
    std::string out = "[";
    for (size_t i = 0; i < rs.size(); i++) {
        if (i)
            out += ",";
        out += receipt_to_json(rs[i], i);
    }
    out += "]";
    return out;
}

Hash32 receipts_digest(const std::vector<Receipt>& rs) {
    Sha256Stream s;
    for (size_t i = 0; i < rs.size(); i++) {
        std::string line = receipt_to_json(rs[i], i);
        s.update(as_view(line));
        s.update(as_view(std::string_view("\n")));
    }
    return s.finalize();
}

}  // namespace acevm
