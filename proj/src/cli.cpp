#include "simplets/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "simplets/analysis.hpp"
#include "simplets/catalog.hpp"
#include "simplets/colorcoding.hpp"
#include "simplets/exact.hpp"
#include "simplets/io.hpp"
#include "simplets/util.hpp"

namespace simplets {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

void check_k(int k, bool allow_k6, int min_k) {
    if (k < min_k || k > (allow_k6 ? 6 : 5))
        throw UsageError("k must be in [" + std::to_string(min_k) +
                         (allow_k6 ? ", 6]" : ", 5] (pass --enable-k6 to unlock k = 6)"));
}

SimpletCatalog obtain_catalog(int k, const std::string& catalog_path, int threads) {
    if (catalog_path.empty()) return build_catalog(k, threads);
    SimpletCatalog catalog = load_catalog(catalog_path);
    if (catalog.k != k)
        throw UsageError("catalog file is for k=" + std::to_string(catalog.k) +
                         ", requested k=" + std::to_string(k));
    return catalog;
}

void emit_report(const CountReport& report, const std::string& out_path, std::ostream& out,
                 std::ostream& diag) {
    std::string text = report_to_json(report);
    out << text;
    if (!out_path.empty()) write_text_file(out_path, text);
    diag << "method=" << report.method << " total=" << report.total()
         << " elapsed_sec=" << report.elapsed_sec << "\n";
}

// minimal '*'/'?' matcher for the --profiles glob
bool wildcard_match(const std::string& pattern, const std::string& text) {
    size_t p = 0, t = 0, star = std::string::npos, mark = 0;
    while (t < text.size()) {
        if (p < pattern.size() && (pattern[p] == '?' || pattern[p] == text[t])) {
            ++p;
            ++t;
        } else if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = t;
        } else if (star != std::string::npos) {
            p = star + 1;
            t = ++mark;
        } else {
            return false;
        }
    }
    while (p < pattern.size() && pattern[p] == '*') ++p;
    return p == pattern.size();
}

std::vector<std::string> expand_glob(const std::string& pattern) {
    fs::path p(pattern);
    std::string leaf = p.filename().string();
    if (leaf.find('*') == std::string::npos && leaf.find('?') == std::string::npos) {
        if (!fs::exists(p)) throw IoError("no such file: " + pattern);
        return {pattern};
    }
    fs::path dir = p.parent_path();
    if (dir.empty()) dir = ".";
    if (!fs::is_directory(dir)) throw IoError("no such directory: " + dir.string());
    std::vector<std::string> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && wildcard_match(leaf, entry.path().filename().string()))
            out.push_back(entry.path().string());
    std::sort(out.begin(), out.end());
    if (out.empty()) throw IoError("glob matched no files: " + pattern);
    return out;
}

std::vector<uint64_t> parse_sample_list(const std::string& csv) {
    std::vector<uint64_t> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoull(tok));
        } catch (...) {
            throw UsageError("bad sample count '" + tok + "'");
        }
    }
    if (out.empty()) throw UsageError("--samples list is empty");
    for (uint64_t x : out)
        if (x < 1) throw UsageError("sample counts must be >= 1");
    return out;
}

/// Estimates counts for the complex and R null replicas, averages the null
/// ratio vectors, and forms the profile.
CharacteristicProfile profile_pipeline(const LoadedDataset& data, const SimpletCatalog& catalog,
                                       const MatchTable& table, uint64_t samples, uint64_t seed,
                                       int64_t c_shuffle, int replicas, double epsilon,
                                       int threads, std::ostream& diag) {
    EstimateOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    opt.threads = threads;
    CountReport counts = estimate_counts(data.complex, catalog, table, opt);
    diag << "counted " << data.descriptor.name << " elapsed_sec=" << counts.elapsed_sec << "\n";

    std::vector<double> avg_ratios(catalog.size(), 0.0);
    for (int r = 0; r < replicas; ++r) {
        NullModelConfig nm_config{c_shuffle, mix64(seed, 0xD000u + static_cast<uint64_t>(r))};
        NullModelResult nm = null_model(data.complex, nm_config);
        if (nm.degenerate)
            diag << "warning: null model degenerate (no size class with two simplices)\n";
        EstimateOptions null_opt = opt;
        null_opt.seed = mix64(seed, 0xE000u + static_cast<uint64_t>(r));
        CountReport null_counts = estimate_counts(nm.complex, catalog, table, null_opt);
        double total = null_counts.total();
        if (total <= 0) throw ComputeError("null replica produced an all-zero report");
        for (size_t i = 0; i < avg_ratios.size(); ++i)
            avg_ratios[i] += null_counts.counts[i] / total / replicas;
    }
    CountReport null_avg;
    null_avg.k = catalog.k;
    null_avg.method = "null-average";
    null_avg.counts = std::move(avg_ratios);
    null_avg.codes_hex = counts.codes_hex;

    CharacteristicProfile profile = characteristic_profile(counts, null_avg, epsilon);
    profile.dataset = data.descriptor.name;
    profile.method = "color-coding";
    profile.samples = samples;
    profile.c_shuffle = c_shuffle;
    profile.null_replicas = replicas;
    profile.seed = seed;
    return profile;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
    CLI::App app{"simplet counting and characterization of simplicial complexes"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "enumerate the size-k simplet catalog");
    int gen_k = 4;
    std::string gen_out;
    int gen_threads = 0;
    bool gen_k6 = false;
    gen->add_option("--k", gen_k, "simplet size")->required();
    gen->add_option("--out", gen_out, "catalog file to write");
    gen->add_option("--threads", gen_threads, "worker threads (0 = hardware)");
    gen->add_flag("--enable-k6", gen_k6, "allow the long-running k=6 catalog");

    // exact
    auto* exact_cmd = app.add_subcommand("exact", "exact counts by subgraph enumeration");
    std::string ex_input, ex_format = "plain", ex_catalog, ex_out;
    int ex_k = 4, ex_threads = 0;
    uint64_t ex_cap = 1000000000ULL;
    bool ex_k6 = false;
    exact_cmd->add_option("--input", ex_input)->required();
    exact_cmd->add_option("--format", ex_format, "benson|plain");
    exact_cmd->add_option("--k", ex_k)->required();
    exact_cmd->add_option("--catalog", ex_catalog, "catalog file (built on the fly if absent)");
    exact_cmd->add_option("--out", ex_out, "report file to write");
    exact_cmd->add_option("--threads", ex_threads);
    exact_cmd->add_option("--subset-cap", ex_cap, "abort beyond this many connected k-subsets");
    exact_cmd->add_flag("--enable-k6", ex_k6);

    // count
    auto* count_cmd = app.add_subcommand("count", "sampling estimate of simplet counts");
    std::string ct_input, ct_format = "plain", ct_catalog, ct_out;
    int ct_k = 4, ct_threads = 0;
    uint64_t ct_samples = 0, ct_seed = 0;
    bool ct_k6 = false;
    count_cmd->add_option("--input", ct_input)->required();
    count_cmd->add_option("--format", ct_format, "benson|plain");
    count_cmd->add_option("--k", ct_k)->required();
    count_cmd->add_option("--samples", ct_samples)->required();
    count_cmd->add_option("--seed", ct_seed);
    count_cmd->add_option("--threads", ct_threads);
    count_cmd->add_option("--catalog", ct_catalog);
    count_cmd->add_option("--out", ct_out);
    count_cmd->add_flag("--enable-k6", ct_k6);

    // error
    auto* err_cmd = app.add_subcommand("error", "normalized error between two reports");
    std::string er_exact, er_estimate;
    err_cmd->add_option("--exact", er_exact)->required();
    err_cmd->add_option("--estimate", er_estimate)->required();

    // profile
    auto* prof_cmd = app.add_subcommand("profile", "characteristic profile against the null model");
    std::string pf_input, pf_format = "plain", pf_catalog, pf_out;
    int pf_k = 4, pf_threads = 0, pf_replicas = 1;
    uint64_t pf_samples = 0, pf_seed = 0;
    int64_t pf_shuffles = 1000;
    double pf_epsilon = 1e-3;
    bool pf_k6 = false;
    prof_cmd->add_option("--input", pf_input)->required();
    prof_cmd->add_option("--format", pf_format, "benson|plain");
    prof_cmd->add_option("--k", pf_k)->required();
    prof_cmd->add_option("--samples", pf_samples)->required();
    prof_cmd->add_option("--seed", pf_seed);
    prof_cmd->add_option("--shuffles", pf_shuffles, "c_shuffle rounds multiplier");
    prof_cmd->add_option("--null-replicas", pf_replicas);
    prof_cmd->add_option("--epsilon", pf_epsilon);
    prof_cmd->add_option("--threads", pf_threads);
    prof_cmd->add_option("--catalog", pf_catalog);
    prof_cmd->add_option("--out", pf_out, "profile file to write");
    prof_cmd->add_flag("--enable-k6", pf_k6);

    // cluster
    auto* cl_cmd = app.add_subcommand("cluster", "k-means++ over saved profiles");
    std::string cl_glob;
    int cl_clusters = 2, cl_trials = 10;
    uint64_t cl_seed = 0;
    std::string cl_out;
    cl_cmd->add_option("--profiles", cl_glob, "glob of profile files")->required();
    cl_cmd->add_option("--clusters", cl_clusters)->required();
    cl_cmd->add_option("--trials", cl_trials);
    cl_cmd->add_option("--seed", cl_seed);
    cl_cmd->add_option("--out", cl_out, "write the CSV here as well");

    // convergence
    auto* cv_cmd = app.add_subcommand("convergence", "estimate spread across sample budgets");
    std::string cv_input, cv_format = "plain", cv_catalog, cv_out, cv_samples;
    int cv_k = 4, cv_threads = 0, cv_trials = 10;
    uint64_t cv_seed = 0;
    bool cv_k6 = false;
    cv_cmd->add_option("--input", cv_input)->required();
    cv_cmd->add_option("--format", cv_format, "benson|plain");
    cv_cmd->add_option("--k", cv_k)->required();
    cv_cmd->add_option("--samples", cv_samples, "comma-separated sample budgets")->required();
    cv_cmd->add_option("--trials", cv_trials);
    cv_cmd->add_option("--seed", cv_seed);
    cv_cmd->add_option("--threads", cv_threads);
    cv_cmd->add_option("--catalog", cv_catalog);
    cv_cmd->add_option("--out", cv_out);
    cv_cmd->add_flag("--enable-k6", cv_k6);

    std::vector<std::string> argv_store = args;
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>("simplets"));
    for (auto& a : argv_store) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, diag);
    }

    if (app.got_subcommand(gen)) {
        check_k(gen_k, gen_k6, 2);
        SimpletCatalog catalog = build_catalog(gen_k, gen_threads);
        out << catalog.size() << "\n";
        if (!gen_out.empty()) {
            save_catalog(gen_out, catalog);
            diag << "catalog written to " << gen_out << "\n";
        }
        return 0;
    }

    if (app.got_subcommand(exact_cmd)) {
        check_k(ex_k, ex_k6, 2);
        LoadedDataset data = load_dataset(ex_input, ex_format);
        SimpletCatalog catalog = obtain_catalog(ex_k, ex_catalog, ex_threads);
        MatchTable table = build_match_table(catalog);
        ExactOptions opt;
        opt.threads = ex_threads;
        opt.subset_cap = ex_cap;
        CountReport report = count_exact(data.complex, catalog, table, opt);
        report.dataset = data.descriptor.name;
        emit_report(report, ex_out, out, diag);
        return 0;
    }

    if (app.got_subcommand(count_cmd)) {
        check_k(ct_k, ct_k6, 3);
        if (ct_samples < 1) throw UsageError("--samples must be >= 1");
        LoadedDataset data = load_dataset(ct_input, ct_format);
        SimpletCatalog catalog = obtain_catalog(ct_k, ct_catalog, ct_threads);
        MatchTable table = build_match_table(catalog);
        EstimateOptions opt;
        opt.samples = ct_samples;
        opt.seed = ct_seed;
        opt.threads = ct_threads;
        CountReport report = estimate_counts(data.complex, catalog, table, opt);
        report.dataset = data.descriptor.name;
        emit_report(report, ct_out, out, diag);
        return 0;
    }

    if (app.got_subcommand(err_cmd)) {
        CountReport a = load_report(er_exact);
        CountReport b = load_report(er_estimate);
        out << ordered_json(normalized_error(a, b)).dump() << "\n";
        return 0;
    }

    if (app.got_subcommand(prof_cmd)) {
        check_k(pf_k, pf_k6, 3);
        if (pf_samples < 1) throw UsageError("--samples must be >= 1");
        if (pf_replicas < 1) throw UsageError("--null-replicas must be >= 1");
        LoadedDataset data = load_dataset(pf_input, pf_format);
        SimpletCatalog catalog = obtain_catalog(pf_k, pf_catalog, pf_threads);
        MatchTable table = build_match_table(catalog);
        CharacteristicProfile profile =
            profile_pipeline(data, catalog, table, pf_samples, pf_seed, pf_shuffles, pf_replicas,
                             pf_epsilon, pf_threads, diag);
        std::string text = profile_to_json(profile);
        out << text;
        if (!pf_out.empty()) write_text_file(pf_out, text);
        return 0;
    }

    if (app.got_subcommand(cl_cmd)) {
        std::vector<std::string> paths = expand_glob(cl_glob);
        std::vector<CharacteristicProfile> profiles;
        for (const auto& p : paths) profiles.push_back(load_profile(p));
        std::vector<std::vector<double>> vectors;
        for (const auto& p : profiles) vectors.push_back(p.values);
        KmeansResult km = kmeans_pp(vectors, cl_clusters, cl_trials, cl_seed);
        auto matrix = cosine_similarity_matrix(profiles);

        std::ostringstream csv;
        csv << "# assignments\n";
        csv << "dataset";
        for (int t = 0; t < cl_trials; ++t) csv << ",trial" << t;
        csv << "\n";
        for (size_t i = 0; i < profiles.size(); ++i) {
            csv << csv_escape(profiles[i].dataset);
            for (int t = 0; t < cl_trials; ++t) csv << "," << km.assignments[t][i];
            csv << "\n";
        }
        csv << "# cosine_similarity\n";
        csv << "dataset";
        for (const auto& p : profiles) csv << "," << csv_escape(p.dataset);
        csv << "\n";
        for (size_t i = 0; i < profiles.size(); ++i) {
            csv << csv_escape(profiles[i].dataset);
            for (size_t j = 0; j < profiles.size(); ++j)
                csv << "," << ordered_json(matrix[i][j]).dump();
            csv << "\n";
        }
        out << csv.str();
        if (!cl_out.empty()) write_text_file(cl_out, csv.str());
        return 0;
    }

    if (app.got_subcommand(cv_cmd)) {
        check_k(cv_k, cv_k6, 3);
        if (cv_trials < 1) throw UsageError("--trials must be >= 1");
        std::vector<uint64_t> budgets = parse_sample_list(cv_samples);
        LoadedDataset data = load_dataset(cv_input, cv_format);
        SimpletCatalog catalog = obtain_catalog(cv_k, cv_catalog, cv_threads);
        MatchTable table = build_match_table(catalog);

        ordered_json j;
        j["schema"] = "simplets/convergence/v1";
        j["dataset"] = data.descriptor.name;
        j["k"] = cv_k;
        j["samples"] = budgets;
        j["trials"] = cv_trials;
        j["seed"] = cv_seed;
        std::vector<std::vector<double>> means, stds;
        for (size_t xi = 0; xi < budgets.size(); ++xi) {
            std::vector<std::vector<double>> runs;
            for (int trial = 0; trial < cv_trials; ++trial) {
                EstimateOptions opt;
                opt.samples = budgets[xi];
                opt.seed = mix64(cv_seed, (static_cast<uint64_t>(xi) << 32) |
                                              static_cast<uint64_t>(trial));
                opt.threads = cv_threads;
                CountReport r = estimate_counts(data.complex, catalog, table, opt);
                runs.push_back(r.counts);
                diag << "x=" << budgets[xi] << " trial=" << trial
                     << " elapsed_sec=" << r.elapsed_sec << "\n";
            }
            std::vector<double> mean(catalog.size(), 0.0), sd(catalog.size(), 0.0);
            for (const auto& run : runs)
                for (size_t i = 0; i < mean.size(); ++i) mean[i] += run[i] / cv_trials;
            for (const auto& run : runs)
                for (size_t i = 0; i < sd.size(); ++i) {
                    double d = run[i] - mean[i];
                    sd[i] += d * d;
                }
            for (size_t i = 0; i < sd.size(); ++i)
                sd[i] = cv_trials > 1 ? std::sqrt(sd[i] / (cv_trials - 1)) : 0.0;
            means.push_back(std::move(mean));
            stds.push_back(std::move(sd));
        }
        j["codes"] = catalog.codes_hex();
        j["mean"] = means;
        j["std"] = stds;
        std::string text = j.dump(2) + "\n";
        out << text;
        if (!cv_out.empty()) write_text_file(cv_out, text);
        return 0;
    }

    throw UsageError("no subcommand given");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& diag) {
    try {
        return dispatch(args, out, diag);
    } catch (const UsageError& e) {
        diag << "error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        diag << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComputeError& e) {
        diag << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        diag << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace simplets
