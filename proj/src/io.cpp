#include "simplets/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace simplets {

namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<int64_t> parse_int_lines(const std::string& path, bool one_per_line) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<int64_t> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tok;
        size_t on_line = 0;
        while (ls >> tok) {
            int64_t value = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || p != tok.data() + tok.size())
                throw IoError(path + ":" + std::to_string(lineno) + ": non-integer token '" + tok + "'");
            out.push_back(value);
            if (one_per_line && ++on_line > 1)
                throw IoError(path + ":" + std::to_string(lineno) + ": expected one integer per line");
        }
    }
    return out;
}

LoadedDataset assemble(std::string name, std::string format, std::vector<std::string> paths,
                       const std::vector<std::vector<int64_t>>& raw_simplices) {
    std::vector<int64_t> ids;
    for (const auto& s : raw_simplices) ids.insert(ids.end(), s.begin(), s.end());
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    SimplexFamily simplices;
    simplices.reserve(raw_simplices.size());
    for (const auto& raw : raw_simplices) {
        Simplex s;
        s.reserve(raw.size());
        for (int64_t orig : raw) {
            auto it = std::lower_bound(ids.begin(), ids.end(), orig);
            s.push_back(static_cast<Node>(it - ids.begin()));
        }
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw IoError(name + ": duplicate node in simplex");
        simplices.push_back(std::move(s));
    }

    LoadedDataset out;
    out.complex = SimplicialComplex::from_simplices(static_cast<Node>(ids.size()),
                                                    std::move(simplices));
    out.descriptor.name = std::move(name);
    out.descriptor.format = std::move(format);
    out.descriptor.paths = std::move(paths);
    out.descriptor.original_ids = std::move(ids);
    return out;
}

}  // namespace

LoadedDataset load_benson(const std::string& prefix) {
    std::string nverts_path = prefix + "-nverts.txt";
    std::string simplices_path = prefix + "-simplices.txt";
    std::vector<int64_t> nverts = parse_int_lines(nverts_path, /*one_per_line=*/true);
    std::vector<int64_t> stream = parse_int_lines(simplices_path, /*one_per_line=*/true);

    std::vector<std::vector<int64_t>> raw;
    raw.reserve(nverts.size());
    size_t cursor = 0;
    for (size_t i = 0; i < nverts.size(); ++i) {
        int64_t size = nverts[i];
        if (size < 1)
            throw IoError(nverts_path + ":" + std::to_string(i + 1) + ": simplex size must be >= 1");
        if (cursor + static_cast<size_t>(size) > stream.size())
            throw IoError(simplices_path + ": id stream truncated at simplex " +
                          std::to_string(i + 1) + " (line " + std::to_string(cursor + 1) + ")");
        raw.emplace_back(stream.begin() + cursor, stream.begin() + cursor + size);
        cursor += static_cast<size_t>(size);
    }
    if (cursor != stream.size())
        throw IoError(simplices_path + ": " + std::to_string(stream.size() - cursor) +
                      " trailing ids beyond the sizes declared in " + nverts_path);

    std::string name = std::filesystem::path(prefix).filename().string();
    return assemble(std::move(name), "benson", {nverts_path, simplices_path}, raw);
}

LoadedDataset load_plain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::vector<std::vector<int64_t>> raw;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<int64_t> simplex;
        std::string tok;
        while (ls >> tok) {
            int64_t value = 0;
            auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
            if (ec != std::errc() || p != tok.data() + tok.size())
                throw IoError(path + ":" + std::to_string(lineno) + ": non-integer token '" + tok + "'");
            if (value < 0)
                throw IoError(path + ":" + std::to_string(lineno) + ": negative node id");
            simplex.push_back(value);
        }
        if (simplex.empty()) continue;
        std::sort(simplex.begin(), simplex.end());
        if (std::adjacent_find(simplex.begin(), simplex.end()) != simplex.end())
            throw IoError(path + ":" + std::to_string(lineno) + ": duplicate node in simplex");
        raw.push_back(std::move(simplex));
    }
    std::string name = std::filesystem::path(path).stem().string();
    return assemble(std::move(name), "plain", {path}, raw);
}

LoadedDataset load_dataset(const std::string& path, const std::string& format) {
    if (format == "benson") return load_benson(path);
    if (format == "plain") return load_plain(path);
    throw UsageError("unknown dataset format '" + format + "' (expected benson|plain)");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

namespace {

constexpr const char* kReportSchema = "simplets/count-report/v1";
constexpr const char* kProfileSchema = "simplets/profile/v1";
constexpr const char* kCatalogHeader = "simplets-catalog v1";

ordered_json parse_json(const std::string& text, const char* what) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) throw IoError(std::string("malformed JSON in ") + what);
    return j;
}

}  // namespace

std::string report_to_json(const CountReport& report) {
    ordered_json j;
    j["schema"] = kReportSchema;
    j["dataset"] = report.dataset;
    j["k"] = report.k;
    j["method"] = report.method;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["total"] = report.total();
    j["counts"] = report.counts;
    j["codes"] = report.codes_hex;
    return j.dump(2) + "\n";
}

CountReport report_from_json(const std::string& text) {
    ordered_json j = parse_json(text, "count report");
    try {
        if (j.at("schema").get<std::string>() != kReportSchema)
            throw IoError("unsupported count-report schema");
        CountReport r;
        r.k = j.at("k").get<int>();
        r.dataset = j.at("dataset").get<std::string>();
        r.method = j.at("method").get<std::string>();
        r.samples = j.at("samples").get<uint64_t>();
        r.seed = j.at("seed").get<uint64_t>();
        r.counts = j.at("counts").get<std::vector<double>>();
        r.codes_hex = j.at("codes").get<std::vector<std::string>>();
        if (r.codes_hex.size() != r.counts.size())
            throw IoError("count report: codes/counts length mismatch");
        return r;
    } catch (const ordered_json::exception& e) {
        throw IoError(std::string("count report: ") + e.what());
    }
}

void save_report(const std::string& path, const CountReport& report) {
    write_text_file(path, report_to_json(report));
}

CountReport load_report(const std::string& path) {
    return report_from_json(read_text_file(path));
}

std::string profile_to_json(const CharacteristicProfile& profile) {
    ordered_json j;
    j["schema"] = kProfileSchema;
    j["dataset"] = profile.dataset;
    j["k"] = profile.k;
    j["method"] = profile.method;
    j["samples"] = profile.samples;
    j["epsilon"] = profile.epsilon;
    j["c_shuffle"] = profile.c_shuffle;
    j["null_replicas"] = profile.null_replicas;
    j["seed"] = profile.seed;
    j["values"] = profile.values;
    j["codes"] = profile.codes_hex;
    return j.dump(2) + "\n";
}

CharacteristicProfile profile_from_json(const std::string& text) {
    ordered_json j = parse_json(text, "profile");
    try {
        if (j.at("schema").get<std::string>() != kProfileSchema)
            throw IoError("unsupported profile schema");
        CharacteristicProfile p;
        p.dataset = j.at("dataset").get<std::string>();
        p.k = j.at("k").get<int>();
        p.method = j.at("method").get<std::string>();
        p.samples = j.at("samples").get<uint64_t>();
        p.epsilon = j.at("epsilon").get<double>();
        p.c_shuffle = j.at("c_shuffle").get<int64_t>();
        p.null_replicas = j.at("null_replicas").get<int>();
        p.seed = j.at("seed").get<uint64_t>();
        p.values = j.at("values").get<std::vector<double>>();
        p.codes_hex = j.at("codes").get<std::vector<std::string>>();
        return p;
    } catch (const ordered_json::exception& e) {
        throw IoError(std::string("profile: ") + e.what());
    }
}

void save_profile(const std::string& path, const CharacteristicProfile& profile) {
    write_text_file(path, profile_to_json(profile));
}

CharacteristicProfile load_profile(const std::string& path) {
    return profile_from_json(read_text_file(path));
}

void save_catalog(const std::string& path, const SimpletCatalog& catalog) {
    std::ostringstream out;
    out << kCatalogHeader << "\n";
    out << "k " << catalog.k << "\n";
    out << "count " << catalog.size() << "\n";
    for (size_t i = 0; i < catalog.size(); ++i) {
        const Simplet& s = catalog.simplets[i];
        out << i << " " << s.code_hex() << " " << catalog.spanning_tree_counts[i] << " "
            << s.maximal.size();
        for (Mask m : s.maximal) out << " " << m;
        out << "\n";
    }
    write_text_file(path, out.str());
}

SimpletCatalog load_catalog(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string header;
    if (!std::getline(in, header) || header != kCatalogHeader)
        throw IoError(path + ": not a simplets catalog (bad header)");
    std::string word;
    int k = 0;
    size_t count = 0;
    if (!(in >> word >> k) || word != "k") throw IoError(path + ": missing k line");
    if (!(in >> word >> count) || word != "count") throw IoError(path + ": missing count line");

    SimpletCatalog catalog;
    catalog.k = k;
    for (size_t i = 0; i < count; ++i) {
        size_t index = 0, nmask = 0;
        uint64_t nst = 0;
        std::string hex;
        if (!(in >> index >> hex >> nst >> nmask)) throw IoError(path + ": truncated record");
        if (index != i) throw IoError(path + ": records out of order");
        Simplet s;
        s.k = k;
        for (size_t m = 0; m < nmask; ++m) {
            Mask mask = 0;
            if (!(in >> mask)) throw IoError(path + ": truncated mask list");
            s.maximal.push_back(mask);
        }
        // revalidate: stored family must be canonical and match its code
        Simplet canon;
        try {
            canon = canonicalize(k, s.maximal);
        } catch (const UsageError& e) {
            throw IoError(path + ": record " + std::to_string(i) + ": " + e.what());
        }
        if (canon.maximal != s.maximal || canon.code() != code_from_hex(hex))
            throw IoError(path + ": record " + std::to_string(i) + " fails canonical revalidation");
        catalog.index_by_code.emplace(canon.code(), static_cast<int32_t>(i));
        catalog.simplets.push_back(std::move(canon));
        catalog.spanning_tree_counts.push_back(nst);
    }
    if (catalog.index_by_code.size() != count)
        throw IoError(path + ": duplicate canonical codes");
    return catalog;
}

}  // namespace simplets
