#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "pdacc/combinatorics.hpp"
#include "pdacc/error.hpp"
#include "pdacc/pda.hpp"

namespace pdacc {

using Bytes = std::vector<std::uint8_t>;

/// A library of N equal-length files, K users given by the PDA, and one demand vector.
struct CachingInstance {
    int N = 0;
    std::size_t file_bytes = 0;
    std::vector<Bytes> files;
    Pda pda;
    std::vector<int> demand;

    int K() const { return pda.cols(); }
    std::size_t packet_bytes() const { return pda.rows() == 0 ? 0 : file_bytes / static_cast<std::size_t>(pda.rows()); }
};

inline void validate(const CachingInstance& inst) {
    if (inst.pda.rows() < 1) throw Error(ErrorCode::BadParams, "PDA has no rows");
    if (inst.K() > inst.N) throw Error(ErrorCode::BadParams, "need K <= N");
    if (inst.file_bytes % static_cast<std::size_t>(inst.pda.rows()) != 0)
        throw Error(ErrorCode::BadLength, "file length " + std::to_string(inst.file_bytes) +
                                              " not divisible by F = " + std::to_string(inst.pda.rows()));
    if (static_cast<int>(inst.files.size()) != inst.N) throw Error(ErrorCode::BadParams, "expected N files");
    for (const auto& f : inst.files)
        if (f.size() != inst.file_bytes) throw Error(ErrorCode::BadLength, "files differ in length");
    if (static_cast<int>(inst.demand.size()) != inst.K()) throw Error(ErrorCode::BadParams, "demand needs K entries");
    for (int d : inst.demand)
        if (d < 0 || d >= inst.N) throw Error(ErrorCode::BadParams, "demand entry outside [0,N)");
}

/// Seeded random files; N defaults to K and the demand to d_k = k.
inline CachingInstance make_instance(Pda pda, std::size_t file_bytes, std::uint64_t seed,
                                     std::optional<int> files = std::nullopt,
                                     std::optional<std::vector<int>> demand = std::nullopt) {
    CachingInstance inst;
    inst.N = files.value_or(pda.cols());
    inst.file_bytes = file_bytes;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> byte(0, 255);
    inst.files.resize(static_cast<std::size_t>(std::max(inst.N, 0)));
    for (auto& f : inst.files) {
        f.resize(file_bytes);
        for (auto& x : f) x = static_cast<std::uint8_t>(byte(rng));
    }
    if (demand) {
        inst.demand = std::move(*demand);
    } else {
        inst.demand.resize(static_cast<std::size_t>(pda.cols()));
        for (int k = 0; k < pda.cols(); ++k) inst.demand[k] = k;
    }
    inst.pda = std::move(pda);
    validate(inst);
    return inst;
}

/// Contents of one user's cache: packet j of every file, for each starred row j.
struct UserCache {
    std::vector<int> rows;                  // ascending
    std::vector<std::vector<Bytes>> packets; // packets[file][i] is packet rows[i]

    const Bytes* find(int file, int row) const {
        auto it = std::lower_bound(rows.begin(), rows.end(), row);
        if (it == rows.end() || *it != row) return nullptr;
        return &packets[file][static_cast<std::size_t>(it - rows.begin())];
    }

    std::size_t bytes() const {
        std::size_t total = 0;
        for (const auto& file : packets)
            for (const auto& p : file) total += p.size();
        return total;
    }
};

inline std::vector<UserCache> place(const CachingInstance& inst) {
    validate(inst);
    const std::size_t pb = inst.packet_bytes();
    std::vector<UserCache> caches(static_cast<std::size_t>(inst.K()));
    for (int k = 0; k < inst.K(); ++k) {
        auto& c = caches[k];
        for (int j = 0; j < inst.pda.rows(); ++j)
            if (inst.pda.is_star(j, k)) c.rows.push_back(j);
        c.packets.resize(static_cast<std::size_t>(inst.N));
        for (int n = 0; n < inst.N; ++n) {
            for (int j : c.rows) {
                const auto* src = inst.files[n].data() + static_cast<std::size_t>(j) * pb;
                c.packets[n].emplace_back(src, src + pb);
            }
        }
    }
    return caches;
}

struct DeliveryTranscript {
    std::vector<Bytes> signals; // signal s serves symbol s
    int F = 1;
};

inline Rational measure_load(const DeliveryTranscript& transcript) {
    return Rational(static_cast<std::int64_t>(transcript.signals.size()), transcript.F);
}

/// One signal per symbol, ascending: the XOR of W_{d_k, j} over every cell (j, k) holding it.
inline DeliveryTranscript deliver(const CachingInstance& inst) {
    validate(inst);
    const std::size_t pb = inst.packet_bytes();
    const auto occ = symbol_occurrences(inst.pda);
    DeliveryTranscript out;
    out.F = inst.pda.rows();
    out.signals.resize(static_cast<std::size_t>(inst.pda.symbol_count()));
    for (SymbolId s = 0; s < inst.pda.symbol_count(); ++s) {
        Bytes sig(pb, 0);
        for (const auto& c : occ.of(s)) {
            const auto* src = inst.files[inst.demand[c.col]].data() + static_cast<std::size_t>(c.row) * pb;
            for (std::size_t i = 0; i < pb; ++i) sig[i] ^= src[i];
        }
        out.signals[s] = std::move(sig);
    }
    return out;
}

/// Each user rebuilds its demanded file from its cache and the signals only.
/// Throws DecodeFailure when a needed side-information packet is not cached.
inline std::vector<Bytes> decode(const Pda& pda, const std::vector<int>& demand, const std::vector<UserCache>& caches,
                                 const DeliveryTranscript& transcript) {
    if (static_cast<int>(caches.size()) != pda.cols() || static_cast<int>(demand.size()) != pda.cols())
        throw Error(ErrorCode::BadParams, "need one cache and one demand per user");
    if (static_cast<int>(transcript.signals.size()) != pda.symbol_count())
        throw Error(ErrorCode::DecodeFailure, "transcript carries " + std::to_string(transcript.signals.size()) +
                                                  " signals for " + std::to_string(pda.symbol_count()) + " symbols");
    const auto occ = symbol_occurrences(pda);
    std::vector<Bytes> out(caches.size());
    for (int k = 0; k < pda.cols(); ++k) {
        const auto& cache = caches[k];
        Bytes file;
        for (int j = 0; j < pda.rows(); ++j) {
            const auto s = pda.cell(j, k);
            if (!s) {
                const Bytes* p = cache.find(demand[k], j);
                if (!p) throw Error(ErrorCode::DecodeFailure, "user " + std::to_string(k) + " lacks cached packet " +
                                                                  std::to_string(j));
                file.insert(file.end(), p->begin(), p->end());
                continue;
            }
            Bytes packet = transcript.signals[*s];
            for (const auto& c : occ.of(*s)) {
                if (c.row == j && c.col == k) continue;
                const Bytes* side = cache.find(demand[c.col], c.row);
                if (!side || side->size() != packet.size())
                    throw Error(ErrorCode::DecodeFailure, "user " + std::to_string(k) + " lacks W_{" +
                                                              std::to_string(demand[c.col]) + "," +
                                                              std::to_string(c.row) + "} for symbol " +
                                                              std::to_string(*s));
                for (std::size_t i = 0; i < packet.size(); ++i) packet[i] ^= (*side)[i];
            }
            file.insert(file.end(), packet.begin(), packet.end());
        }
        out[k] = std::move(file);
    }
    return out;
}

struct SimulationReport {
    bool all_recovered = false;
    std::vector<bool> recovered;
    Rational load{0};
    std::vector<Rational> cache_fraction; // cached bytes over library bytes, per user
};

inline SimulationReport simulate(const CachingInstance& inst) {
    const auto caches = place(inst);
    const auto transcript = deliver(inst);
    const auto files = decode(inst.pda, inst.demand, caches, transcript);
    SimulationReport r;
    r.load = measure_load(transcript);
    r.all_recovered = true;
    const auto library = static_cast<std::int64_t>(inst.file_bytes) * inst.N;
    for (int k = 0; k < inst.K(); ++k) {
        const bool ok = files[k] == inst.files[inst.demand[k]];
        r.recovered.push_back(ok);
        r.all_recovered = r.all_recovered && ok;
        r.cache_fraction.emplace_back(static_cast<std::int64_t>(caches[k].bytes()), library);
    }
    return r;
}

// --- transcript JSON ------------------------------------------------------------

namespace detail {

inline constexpr std::string_view kBase64 = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

inline std::string base64_encode(const Bytes& in) {
    std::string out;
    out.reserve((in.size() + 2) / 3 * 4);
    for (std::size_t i = 0; i < in.size(); i += 3) {
        std::uint32_t v = static_cast<std::uint32_t>(in[i]) << 16;
        if (i + 1 < in.size()) v |= static_cast<std::uint32_t>(in[i + 1]) << 8;
        if (i + 2 < in.size()) v |= in[i + 2];
        out += kBase64[(v >> 18) & 63];
        out += kBase64[(v >> 12) & 63];
        out += i + 1 < in.size() ? kBase64[(v >> 6) & 63] : '=';
        out += i + 2 < in.size() ? kBase64[v & 63] : '=';
    }
    return out;
}

inline Bytes base64_decode(std::string_view in) {
    if (in.size() % 4 != 0) throw Error(ErrorCode::ParseError, "base64 length not a multiple of 4");
    Bytes out;
    for (std::size_t i = 0; i < in.size(); i += 4) {
        std::uint32_t v = 0;
        int pad = 0;
        for (int c = 0; c < 4; ++c) {
            const char ch = in[i + c];
            v <<= 6;
            if (ch == '=') {
                ++pad;
                continue;
            }
            const auto pos = kBase64.find(ch);
            if (pos == std::string_view::npos || pad > 0) throw Error(ErrorCode::ParseError, "bad base64 character");
            v |= static_cast<std::uint32_t>(pos);
        }
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (pad < 2) out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
        if (pad < 1) out.push_back(static_cast<std::uint8_t>(v & 0xff));
    }
    return out;
}

} // namespace detail

/// {"S": int, "signals_b64": [...], "load": "<signals>/<F>"}; the load string is not reduced.
inline nlohmann::ordered_json transcript_to_json(const DeliveryTranscript& transcript) {
    nlohmann::ordered_json j;
    j["S"] = transcript.signals.size();
    auto sigs = nlohmann::ordered_json::array();
    for (const auto& s : transcript.signals) sigs.push_back(detail::base64_encode(s));
    j["signals_b64"] = std::move(sigs);
    j["load"] = std::to_string(transcript.signals.size()) + "/" + std::to_string(transcript.F);
    return j;
}

inline DeliveryTranscript transcript_from_json(const nlohmann::json& j) {
    try {
        DeliveryTranscript t;
        for (const auto& s : j.at("signals_b64")) t.signals.push_back(detail::base64_decode(s.get<std::string>()));
        const auto load = j.at("load").get<std::string>();
        const auto slash = load.find('/');
        if (slash == std::string::npos) throw Error(ErrorCode::ParseError, "load must be 'S/F'");
        t.F = std::stoi(load.substr(slash + 1));
        if (j.at("S").get<std::size_t>() != t.signals.size())
            throw Error(ErrorCode::ParseError, "S disagrees with the number of signals");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("transcript: ") + e.what());
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::ParseError, "transcript: malformed load");
    }
}

} // namespace pdacc
