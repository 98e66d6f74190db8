#pragma once

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pdacc/pdacc.hpp"

namespace pdacc::cli {

enum Exit : int { kOk = 0, kFailed = 1, kBadParams = 2, kIoError = 3 };

struct Options {
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 1;

    // construct
    std::string scheme;
    int m = 0, t = 0, q = 2, s = 0, omega = 0;

    // verify / simulate
    std::string path;
    std::optional<std::size_t> file_bytes;
    std::optional<int> files;
    std::string demand;

    // compare
    std::string table;
};

/// Flat key/value report printed as CSV (header + one row) or JSON.
class Report {
public:
    void set(const std::string& key, nlohmann::ordered_json value) { data_[key] = std::move(value); }

    void print(std::ostream& out, const std::string& format) const {
        if (format == "json") {
            out << data_.dump(2) << '\n';
            return;
        }
        Table t{"", {}, {{}}};
        for (const auto& [k, v] : data_.items()) {
            t.header.push_back(k);
            t.rows[0].push_back(v.is_string() ? v.get<std::string>() : v.dump());
        }
        out << to_csv(t);
    }

private:
    nlohmann::ordered_json data_ = nlohmann::ordered_json::object();
};

inline std::string rational_string(const Rational& r) {
    return r.denominator() == 1 ? std::to_string(r.numerator())
                                : std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline std::string rational_string(const BigRational& r) {
    const auto num = boost::multiprecision::numerator(r);
    const auto den = boost::multiprecision::denominator(r);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline std::string gain_summary(const PdaParams& p) {
    if (p.S == 0) return "no symbols";
    if (p.min_gain == p.max_gain) return "gains all " + std::to_string(p.min_gain);
    std::string out = "gains";
    for (const auto& [g, count] : p.gain_histogram) out += " " + std::to_string(g) + "x" + std::to_string(count);
    return out;
}

inline std::string shape_summary(const PdaParams& p) {
    std::string z = p.Z ? "," + std::to_string(*p.Z) : "";
    return "(" + std::to_string(p.K) + "," + std::to_string(p.F) + z + "," + std::to_string(p.S) + ") PDA";
}

/// Reads a JSON file; parse errors name the line and echo it.
inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
        const std::size_t line_no = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + at, '\n'));
        const std::size_t line_start = text.rfind('\n', at == 0 ? 0 : at - 1);
        const std::size_t begin = (line_start == std::string::npos || at == 0) ? 0 : line_start + 1;
        const std::size_t end = text.find('\n', begin);
        const std::string line = text.substr(begin, end == std::string::npos ? std::string::npos : end - begin);
        throw Error(ErrorCode::ParseError, path + ":" + std::to_string(line_no) + ": " + e.what() + "\n  " + line);
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    out << text;
    if (!out) throw Error(ErrorCode::ParseError, "failed writing " + path);
}

inline std::vector<int> parse_demand(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw Error(ErrorCode::BadParams, "demand entry '" + item + "' is not an integer");
        }
    }
    return out;
}

inline int cmd_construct(const Options& o, std::ostream& out, std::ostream& err) {
    SchemeSpec spec{parse_family(o.scheme), o.m, o.t, o.q, o.s, o.omega};
    if (spec.family == Family::Mn) spec.t = 1;
    const auto built = build(spec);
    const auto measured = pda_params(built.pda);
    const bool accepted = verify_pda(built.pda).accepted;
    const bool ok = accepted && matches(measured, built.predicted);

    const std::string json = pda_to_json(built.pda).dump();
    if (o.out.empty()) out << json << '\n';
    else write_text(o.out, json + "\n");

    Report r;
    r.set("scheme", std::string(to_string(spec.family)));
    r.set("predicted_K", built.predicted.K.str());
    r.set("predicted_F", built.predicted.F.str());
    r.set("predicted_Z", built.predicted.Z.str());
    r.set("predicted_S", built.predicted.S.str());
    r.set("predicted_R", rational_string(built.predicted.R));
    r.set("measured_K", measured.K);
    r.set("measured_F", measured.F);
    r.set("measured_Z", measured.Z ? nlohmann::ordered_json(*measured.Z) : nlohmann::ordered_json("irregular"));
    r.set("measured_S", measured.S);
    r.set("measured_R", rational_string(measured.R));
    r.set("gains", gain_summary(measured));
    r.set("verified", accepted);
    r.set("match", ok);
    r.print(o.out.empty() ? err : out, o.format);
    return ok ? kOk : kFailed;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    const Pda pda = pda_from_json(read_json_file(o.path));
    const auto verdict = verify_pda(pda);
    Report r;
    r.set("verdict", verdict.accepted ? "accept" : "reject");
    if (!verdict.accepted) {
        const auto& w = *verdict.witness;
        static const char* kinds[] = {"same row", "same column", "opposite corner not a star"};
        r.set("symbol", w.symbol);
        r.set("violation", kinds[static_cast<int>(w.kind)]);
        r.set("rows", nlohmann::ordered_json::array({w.first.row, w.second.row}));
        r.set("cols", nlohmann::ordered_json::array({w.first.col, w.second.col}));
        r.print(out, o.format);
        return kFailed;
    }
    const auto p = pda_params(pda);
    r.set("summary", shape_summary(p) + ", " + gain_summary(p));
    r.set("K", p.K);
    r.set("F", p.F);
    r.set("Z", p.Z ? nlohmann::ordered_json(*p.Z) : nlohmann::ordered_json(p.column_stars));
    r.set("S", p.S);
    r.set("R", rational_string(p.R));
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [g, count] : p.gain_histogram) hist[std::to_string(g)] = count;
    r.set("gain_histogram", hist);
    r.print(out, o.format);
    return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
    Pda pda = pda_from_json(read_json_file(o.path));
    if (!verify_pda(pda).accepted) throw Error(ErrorCode::DecodeFailure, "input is not a PDA");
    const std::size_t bytes = o.file_bytes.value_or(4 * static_cast<std::size_t>(pda.rows()));
    std::optional<std::vector<int>> demand;
    if (!o.demand.empty()) demand = parse_demand(o.demand);
    const auto inst = make_instance(std::move(pda), bytes, o.seed, o.files, demand);

    const auto caches = place(inst);
    const auto transcript = deliver(inst);
    const auto files = decode(inst.pda, inst.demand, caches, transcript);
    bool ok = true;
    for (int k = 0; k < inst.K(); ++k) ok = ok && files[k] == inst.files[inst.demand[k]];

    Rational lo(1), hi(0);
    const auto library = static_cast<std::int64_t>(inst.file_bytes) * inst.N;
    for (const auto& c : caches) {
        const Rational f(static_cast<std::int64_t>(c.bytes()), library);
        lo = std::min(lo, f);
        hi = std::max(hi, f);
    }
    if (!o.out.empty()) write_text(o.out, transcript_to_json(transcript).dump() + "\n");

    Report r;
    r.set("result", ok ? "PASS" : "FAIL");
    r.set("users", inst.K());
    r.set("files", inst.N);
    r.set("signals", transcript.signals.size());
    r.set("load", rational_string(measure_load(transcript)));
    r.set("cache_fraction", lo == hi ? rational_string(lo) : rational_string(lo) + ".." + rational_string(hi));
    r.print(out, o.format);
    return ok ? kOk : kFailed;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
    const auto table = comparison_table(o.table);
    const std::string text = o.format == "json" ? to_json(table).dump(2) + "\n" : to_csv(table);
    if (o.out.empty()) out << text;
    else write_text(o.out, text);
    return kOk;
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Placement delivery array toolkit for centralized coded caching"};
    Options o;
    app.require_subcommand(1);
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", o.out, "Output path");
    app.add_option("--seed", o.seed, "Seed for synthetic files");

    auto* construct = app.add_subcommand("construct", "Build a named scheme and write its PDA");
    construct->add_option("--scheme", o.scheme, "theorem3|theorem6|theorem7|mn|szg_first|szg_second")->required();
    construct->add_option("--m", o.m, "Degree m (users for mn)");
    construct->add_option("--t", o.t, "Strength t");
    construct->add_option("--q", o.q, "Alphabet size q");
    construct->add_option("--s", o.s, "Row weight s (cache level for mn)");
    construct->add_option("--omega", o.omega, "Omega");
    construct->add_option("--out", o.out, "Output path");
    construct->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

    auto* verify = app.add_subcommand("verify", "Check a PDA file");
    verify->add_option("path", o.path)->required();
    verify->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

    auto* simulate = app.add_subcommand("simulate", "Run placement, delivery and decoding on a PDA file");
    simulate->add_option("path", o.path)->required();
    simulate->add_option("--file-bytes", o.file_bytes, "Bytes per file (multiple of F, default 4F)");
    simulate->add_option("--files", o.files, "Number of files N (default K)");
    simulate->add_option("--demand", o.demand, "Comma-separated demand vector");
    simulate->add_option("--seed", o.seed);
    simulate->add_option("--out", o.out, "Write the delivery transcript here");
    simulate->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

    auto* compare = app.add_subcommand("compare", "Emit a comparison table from closed forms");
    compare->add_option("--table", o.table, "main|omega|thm6-vs-thm7")
        ->required()
        ->check(CLI::IsMember({"main", "omega", "thm6-vs-thm7"}));
    compare->add_option("--out", o.out);
    compare->add_option("--format", o.format)->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kBadParams;
    }

    try {
        if (*construct) return cmd_construct(o, out, err);
        if (*verify) return cmd_verify(o, out);
        if (*simulate) return cmd_simulate(o, out);
        if (*compare) return cmd_compare(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.code()) {
        case ErrorCode::ParseError:
        case ErrorCode::InvalidPda: return kIoError;
        case ErrorCode::DecodeFailure: return kFailed;
        default: return kBadParams;
        }
    }
    return kBadParams;
}

} // namespace pdacc::cli
