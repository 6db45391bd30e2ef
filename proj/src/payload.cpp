// acevm: multi-VM chain execution core
// Copyright 2026 The acevm Authors.
// SPDX-License-Identifier: Apache-2.0
#include <acevm/payload.hpp>

namespace acevm {

namespace {

// Strict forward-only reader; every decode must consume the input exactly.
class Cursor {
public:
    explicit Cursor(BytesView data) : data_(data) {}

    bool take(size_t n, BytesView* out) {
        if (data_.size() - pos_ < n)
            return false;
        *out = data_.subspan(pos_, n);
        pos_ += n;
        return true;
    }

    bool take_u8(uint8_t* out) {
        BytesView v;
        if (!take(1, &v))
            return false;
        *out = v[0];
        return true;
    }

    bool take_u16(uint16_t* out) {
        BytesView v;
        if (!take(2, &v))
            return false;
        *out = static_cast<uint16_t>((uint16_t{v[0]} << 8) | v[1]);
        return true;
    }

    bool take_u32(uint32_t* out) {
        BytesView v;
        if (!take(4, &v))
            return false;
        *out = read_u32be(v);
        return true;
    }

    bool take_u64(uint64_t* out) {
        BytesView v;
        if (!take(8, &v))
            return false;
        *out = read_u64be(v);
        return true;
    }

    bool take_blob32(uint32_t max_len, Bytes* out) {
        uint32_t len = 0;
        BytesView v;
        if (!take_u32(&len) || len > max_len || !take(len, &v))
            return false;
        out->assign(v.begin(), v.end());
        return true;
    }

    bool done() const { return pos_ == data_.size(); }
    BytesView rest() { return data_.subspan(pos_); }

private:
    BytesView data_;
    size_t pos_ = 0;
};

constexpr uint32_t kMaxBlob = 1 << 20;

bool expect_opcode(Cursor& c, uint8_t opcode) {
    uint8_t b = 0;
    return c.take_u8(&b) && b == opcode;
}

}  // namespace

Bytes encode_program(const MiniProgram& p) {
    Bytes out;
    out.push_back(static_cast<uint8_t>(p.instrs.size() >> 8));
    out.push_back(static_cast<uint8_t>(p.instrs.size()));
    for (const auto& instr : p.instrs) {
        std::visit(
            [&](const auto& i) {
                using T = std::decay_t<decltype(i)>;
                if constexpr (std::is_same_v<T, WriteInstr>) {
                    out.push_back(0x01);
                    append(out, as_view(i.key));
                    append_u32be(out, static_cast<uint32_t>(i.value.size()));
                    append(out, as_view(i.value));
                } else if constexpr (std::is_same_v<T, TransferInstr>) {
                    out.push_back(0x02);
                    append(out, as_view(i.to));
                    append_u64be(out, i.amount);
                } else if constexpr (std::is_same_v<T, CallPreInstr>) {
                    out.push_back(0x03);
                    append(out, as_view(i.precompile));
                    append_u32be(out, static_cast<uint32_t>(i.data.size()));
                    append(out, as_view(i.data));
                } else if constexpr (std::is_same_v<T, EmitLogInstr>) {
                    out.push_back(0x04);
                    append_u32be(out, static_cast<uint32_t>(i.data.size()));
                    append(out, as_view(i.data));
                } else if constexpr (std::is_same_v<T, FailInstr>) {
                    out.push_back(0x05);
                } else if constexpr (std::is_same_v<T, SyscallInstr>) {
                    out.push_back(0x06);
                    out.push_back(static_cast<uint8_t>(i.name.size()));
                    append(out, i.name);
                    append_u32be(out, static_cast<uint32_t>(i.data.size()));
                    append(out, as_view(i.data));
                }
            },
            instr);
    }
    return out;
}

static std::optional<MiniProgram> decode_program_cursor(Cursor& c) {
    uint16_t count = 0;
    if (!c.take_u16(&count) || count > kMaxProgramLen)
        return std::nullopt;
    MiniProgram p;
    p.instrs.reserve(count);
    for (uint16_t n = 0; n < count; n++) {
        uint8_t op = 0;
        if (!c.take_u8(&op))
            return std::nullopt;
        switch (op) {
        case 0x01: {
            WriteInstr i;
            BytesView k;
            if (!c.take(32, &k) || !c.take_blob32(kMaxBlob, &i.value))
                return std::nullopt;
            i.key = to_array<32>(k);
            p.instrs.emplace_back(std::move(i));
            break;
        }
        case 0x02: {
            TransferInstr i;
            BytesView a;
            if (!c.take(20, &a) || !c.take_u64(&i.amount))
                return std::nullopt;
            i.to = to_array<20>(a);
            p.instrs.emplace_back(i);
            break;
        }
        case 0x03: {
            CallPreInstr i;
            BytesView a;
            if (!c.take(20, &a) || !c.take_blob32(kMaxBlob, &i.data))
                return std::nullopt;
            i.precompile = to_array<20>(a);
            p.instrs.emplace_back(std::move(i));
            break;
        }
        case 0x04: {
            EmitLogInstr i;
            if (!c.take_blob32(kMaxBlob, &i.data))
                return std::nullopt;
            p.instrs.emplace_back(std::move(i));
            break;
        }
        case 0x05:
            p.instrs.emplace_back(FailInstr{});
            break;
        case 0x06: {
            SyscallInstr i;
            uint8_t name_len = 0;
            BytesView name;
            if (!c.take_u8(&name_len) || !c.take(name_len, &name))
                return std::nullopt;
            i.name.assign(name.begin(), name.end());
            if (!c.take_blob32(kMaxBlob, &i.data))
                return std::nullopt;
            p.instrs.emplace_back(std::move(i));
            break;
        }
        default:
            return std::nullopt;
        }
    }
    return p;
}

std::optional<MiniProgram> decode_program(BytesView data) {
    Cursor c(data);
    auto p = decode_program_cursor(c);
    if (!p || !c.done())
        return std::nullopt;
    return p;
}

Bytes encode_native_transfer(const NativeTransfer& p) {
    Bytes out{kOpNativeTransfer};
    append(out, as_view(p.to));
    append_u64be(out, p.amount);
    return out;
}

Bytes encode_native_create_account(const NativeCreateAccount& p) {
    Bytes out{kOpNativeCreateAccount};
    append(out, as_view(p.id));
    return out;
}

Bytes encode_native_set_auth_key(const NativeSetAuthKey& p) {
    Bytes out{kOpNativeSetAuthKey};
    append(out, as_view(p.key));
    return out;
}

Bytes encode_evm_transfer(const EvmTransfer& p, uint8_t opcode) {
    Bytes out{opcode};
    append(out, as_view(p.to));
    append_u64be(out, p.amount);
    return out;
}

Bytes encode_evm_deploy(const EvmDeploy& p, uint8_t opcode) {
    Bytes out{opcode};
    append(out, as_view(encode_program(p.program)));
    return out;
}

Bytes encode_evm_call(const EvmCall& p, uint8_t opcode) {
    Bytes out{opcode};
    append(out, as_view(p.target));
    append(out, as_view(p.calldata));
    return out;
}

Bytes encode_svm_system_transfer(const SvmSystemTransfer& p) {
    Bytes out{kOpSvmSystemTransfer};
    append(out, as_view(p.to));
    append_u64be(out, p.amount);
    return out;
}

Bytes encode_svm_spl_transfer(const SvmSplTransfer& p) {
    Bytes out{kOpSvmSplTransfer};
    append(out, as_view(p.mint));
    append(out, as_view(p.to_owner));
    append_u64be(out, p.amount);
    return out;
}

Bytes encode_svm_invoke(const SvmInvoke& p) {
    Bytes out{kOpSvmInvoke};
    append(out, as_view(p.program_id));
    append(out, as_view(p.data));
    return out;
}

Bytes encode_bvm_utxo_transfer(const BvmUtxoTransfer& p) {
    Bytes out{kOpBvmUtxoTransfer};
    append_u32be(out, static_cast<uint32_t>(p.inputs.size()));
    for (const auto& in : p.inputs) {
        append(out, as_view(in.txid));
        append_u32be(out, in.vout);
    }
    append_u32be(out, static_cast<uint32_t>(p.outputs.size()));
    for (const auto& o : p.outputs) {
        append(out, as_view(o.owner));
        append_u64be(out, o.amount);
    }
    return out;
}

std::optional<NativeTransfer> decode_native_transfer(BytesView payload) {
    Cursor c(payload);
    NativeTransfer p;
    BytesView to;
    if (!expect_opcode(c, kOpNativeTransfer) || !c.take(32, &to) || !c.take_u64(&p.amount) ||
        !c.done())
        return std::nullopt;
    p.to = to_array<32>(to);
    return p;
}

std::optional<NativeCreateAccount> decode_native_create_account(BytesView payload) {
    Cursor c(payload);
    NativeCreateAccount p;
    BytesView id;
    if (!expect_opcode(c, kOpNativeCreateAccount) || !c.take(32, &id) || !c.done())
        return std::nullopt;
    p.id = to_array<32>(id);
    return p;
}

std::optional<NativeSetAuthKey> decode_native_set_auth_key(BytesView payload) {
    Cursor c(payload);
    NativeSetAuthKey p;
    BytesView key;
    if (!expect_opcode(c, kOpNativeSetAuthKey) || !c.take(32, &key) || !c.done())
        return std::nullopt;
    p.key = to_array<32>(key);
    return p;
}

std::optional<EvmTransfer> decode_evm_transfer(BytesView payload, uint8_t opcode) {
    Cursor c(payload);
    EvmTransfer p;
    BytesView to;
    if (!expect_opcode(c, opcode) || !c.take(20, &to) || !c.take_u64(&p.amount) || !c.done())
        return std::nullopt;
    p.to = to_array<20>(to);
    return p;
}

std::optional<EvmDeploy> decode_evm_deploy(BytesView payload, uint8_t opcode) {
    Cursor c(payload);
    if (!expect_opcode(c, opcode))
        return std::nullopt;
    auto program = decode_program(c.rest());
    if (!program)
        return std::nullopt;
    return EvmDeploy{std::move(*program)};
}

std::optional<EvmCall> decode_evm_call(BytesView payload, uint8_t opcode) {
    Cursor c(payload);
    EvmCall p;
    BytesView target;
    if (!expect_opcode(c, opcode) || !c.take(20, &target))
        return std::nullopt;
    p.target = to_array<20>(target);
    p.calldata = to_bytes(c.rest());
    return p;
}

std::optional<SvmSystemTransfer> decode_svm_system_transfer(BytesView payload) {
    Cursor c(payload);
    SvmSystemTransfer p;
    BytesView to;
    if (!expect_opcode(c, kOpSvmSystemTransfer) || !c.take(32, &to) || !c.take_u64(&p.amount) ||
        !c.done())
        return std::nullopt;
    p.to = to_array<32>(to);
    return p;
}

std::optional<SvmSplTransfer> decode_svm_spl_transfer(BytesView payload) {
    Cursor c(payload);
    SvmSplTransfer p;
    BytesView mint, owner;
    if (!expect_opcode(c, kOpSvmSplTransfer) || !c.take(32, &mint) || !c.take(32, &owner) ||
        !c.take_u64(&p.amount) || !c.done())
        return std::nullopt;
    p.mint = to_array<32>(mint);
    p.to_owner = to_array<32>(owner);
    return p;
}

std::optional<SvmInvoke> decode_svm_invoke(BytesView payload) {
    Cursor c(payload);
    SvmInvoke p;
    BytesView pid;
    if (!expect_opcode(c, kOpSvmInvoke) || !c.take(32, &pid))
        return std::nullopt;
    p.program_id = to_array<32>(pid);
    p.data = to_bytes(c.rest());
    return p;
}

std::optional<BvmUtxoTransfer> decode_bvm_utxo_transfer(BytesView payload) {
    Cursor c(payload);
    if (!expect_opcode(c, kOpBvmUtxoTransfer))
        return std::nullopt;
    uint32_t n_in = 0;
    if (!c.take_u32(&n_in) || n_in > 1024)
        return std::nullopt;
    BvmUtxoTransfer p;
    p.inputs.reserve(n_in);
    for (uint32_t i = 0; i < n_in; i++) {
        Outpoint in;
        BytesView txid;
        if (!c.take(32, &txid) || !c.take_u32(&in.vout))
            return std::nullopt;
        in.txid = to_array<32>(txid);
        p.inputs.push_back(in);
    }
    uint32_t n_out = 0;
    if (!c.take_u32(&n_out) || n_out > 1024)
        return std::nullopt;
    p.outputs.reserve(n_out);
    for (uint32_t i = 0; i < n_out; i++) {
        BvmOutput o;
        BytesView owner;
        if (!c.take(32, &owner) || !c.take_u64(&o.amount))
            return std::nullopt;
        o.owner = to_array<32>(owner);
        p.outputs.push_back(o);
    }
    if (!c.done())
        return std::nullopt;
    return p;
}

std::optional<VmId> canonical_vm_of(uint8_t opcode) {
    if (opcode >= 0x01 && opcode <= 0x0F)
        return VmId::Native;
    if (opcode >= 0x10 && opcode <= 0x1F)
        return VmId::Evm;
    if (opcode >= 0x20 && opcode <= 0x2F)
        return VmId::Svm;
    if (opcode >= 0x30 && opcode <= 0x3F)
        return VmId::Bvm;
    if (opcode >= 0x40 && opcode <= 0x4F)
        return VmId::Tvm;
    return std::nullopt;
}

std::optional<uint16_t> precompile_id(const Addr20& addr) {
    for (size_t i = 0; i < 18; i++)
        if (addr[i] != 0)
            return std::nullopt;
    uint16_t id = static_cast<uint16_t>((uint16_t{addr[18]} << 8) | addr[19]);
    if (id < kPreIdComVerify || id > kPreResolveSvmAddr)
        return std::nullopt;
    return id;
}

Addr20 precompile_address(uint16_t id) {
    Addr20 a{};
    a[18] = static_cast<uint8_t>(id >> 8);
    a[19] = static_cast<uint8_t>(id);
    return a;
}

std::string_view precompile_name(uint16_t id) {
    switch (id) {
    case kPreIdComVerify: return "id_com_verify";
    case kPreContextDerive: return "context_derive";
    case kPreAdminFactorCheck: return "admin_factor_check";
    case kPreZkaceBatchVerify: return "zkace_batch_verify";
    case kPreMultisigDerive: return "multisig_derive";
    case kPreMultisigVerify: return "multisig_verify";
    case kPreCrossVmCall: return "cross_vm_call";
    case kPreResolveSvmAddr: return "resolve_svm_addr";
    }
    return "unknown";
}

}  // namespace acevm
