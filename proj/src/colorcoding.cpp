#include "simplets/colorcoding.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <unordered_map>

#include "simplets/incidence.hpp"

namespace simplets {

namespace {

// rooted tree as a parent vector (node 0 = root, parent[i] < i)
using ParentVec = std::vector<int>;

std::string shape_code(const ParentVec& parents) {
    size_t n = parents.size();
    std::vector<std::vector<int>> children(n);
    for (size_t i = 1; i < n; ++i) children[parents[i]].push_back(static_cast<int>(i));
    std::vector<std::string> memo(n);
    for (size_t i = n; i-- > 0;) {  // children have larger indices
        std::vector<std::string> subs;
        for (int c : children[i]) subs.push_back(memo[c]);
        std::sort(subs.begin(), subs.end());
        std::string s = "(";
        for (auto& sub : subs) s += sub;
        s += ")";
        memo[i] = std::move(s);
    }
    return memo[0];
}

int expected_treelet_count(int size) {
    static const int counts[] = {0, 1, 1, 2, 4, 9, 20};
    return size <= 6 ? counts[size] : -1;
}

}  // namespace

TreeletSet enumerate_treelets(int k) {
    if (k < 1 || k > kMaxSimpletSize) throw UsageError("treelet enumeration supports 1 <= k <= 6");
    TreeletSet set;
    set.k = k;
    set.by_size.assign(static_cast<size_t>(k) + 1, {0, 0});

    // grow shapes one leaf at a time; every size-s shape arises from a
    // size-(s-1) shape by removing a deepest leaf
    std::vector<std::vector<ParentVec>> shapes(static_cast<size_t>(k) + 1);
    shapes[1] = {ParentVec{-1}};
    for (int s = 2; s <= k; ++s) {
        std::map<std::string, ParentVec> grown;
        for (const auto& base : shapes[s - 1]) {
            for (size_t attach = 0; attach < base.size(); ++attach) {
                ParentVec next = base;
                next.push_back(static_cast<int>(attach));
                grown.emplace(shape_code(next), next);
            }
        }
        for (auto& [code, tree] : grown) shapes[s].push_back(std::move(tree));
        if (static_cast<int>(shapes[s].size()) != expected_treelet_count(s))
            throw ComputeError("internal error: rooted-tree census mismatch at size " +
                               std::to_string(s));
    }

    std::unordered_map<std::string, int> id_by_code;
    for (int s = 1; s <= k; ++s) {
        std::vector<std::string> codes;
        for (const auto& tree : shapes[s]) codes.push_back(shape_code(tree));
        std::sort(codes.begin(), codes.end());
        int begin = static_cast<int>(set.treelets.size());
        for (const auto& code : codes) {
            Treelet t;
            t.size = s;
            t.shape = code;
            if (s >= 2) {
                // children of the root = top-level groups of the encoding
                std::vector<std::string> child_codes;
                int depth = 0;
                size_t start = 0;
                for (size_t i = 1; i + 1 < code.size(); ++i) {
                    if (code[i] == '(') {
                        if (depth == 0) start = i;
                        ++depth;
                    } else if (code[i] == ')') {
                        --depth;
                        if (depth == 0) child_codes.push_back(code.substr(start, i - start + 1));
                    }
                }
                std::sort(child_codes.begin(), child_codes.end());
                const std::string& branch_code = child_codes.back();
                t.mult = static_cast<int>(
                    std::count(child_codes.begin(), child_codes.end(), branch_code));
                std::string stem_code = "(";
                for (size_t i = 0; i + 1 < child_codes.size(); ++i) stem_code += child_codes[i];
                stem_code += ")";
                auto branch_it = id_by_code.find(branch_code);
                auto stem_it = id_by_code.find(stem_code);
                if (branch_it == id_by_code.end() || stem_it == id_by_code.end())
                    throw ComputeError("internal error: treelet decomposition not in registry");
                t.branch = branch_it->second;
                t.stem = stem_it->second;
            }
            id_by_code.emplace(t.shape, static_cast<int>(set.treelets.size()));
            set.treelets.push_back(std::move(t));
        }
        set.by_size[s] = {begin, static_cast<int>(set.treelets.size())};
    }
    return set;
}

namespace {

struct MaskLists {
    // masks of [k] by popcount, and submasks of each mask by popcount
    std::vector<std::vector<Mask>> by_size;
    std::vector<std::vector<std::vector<Mask>>> submasks;  // [mask][size]

    explicit MaskLists(int k) {
        Mask full = (Mask(1) << k) - 1;
        by_size.assign(static_cast<size_t>(k) + 1, {});
        submasks.assign(static_cast<size_t>(full) + 1, {});
        for (Mask m = 0; m <= full; ++m) {
            int pc = __builtin_popcount(m);
            if (pc >= 1 && pc <= k) by_size[pc].push_back(m);
            submasks[m].assign(static_cast<size_t>(k) + 1, {});
            Mask sub = m;
            for (;;) {
                int spc = __builtin_popcount(sub);
                if (spc >= 1 && spc <= k) submasks[m][spc].push_back(sub);
                if (sub == 0) break;
                sub = (sub - 1) & m;
            }
        }
    }
};

TreeletTable make_table_shell(const PrimalGraph& graph, const Coloring& coloring) {
    TreeletTable table;
    table.k = coloring.k;
    table.coloring = coloring;
    table.treelets = enumerate_treelets(coloring.k);
    size_t n = static_cast<size_t>(graph.num_nodes);
    table.slots.assign(table.treelets.treelets.size(), {});
    for (auto& arr : table.slots) arr.fill(-1);
    MaskLists lists(table.k);
    for (size_t tid = 0; tid < table.treelets.treelets.size(); ++tid) {
        int size = table.treelets.treelets[tid].size;
        for (Mask S : lists.by_size[size]) {
            table.slots[tid][S] = static_cast<int16_t>(table.data.size());
            table.data.emplace_back(n, u128(0));
        }
    }
    return table;
}

}  // namespace

TreeletTable build_table_with_coloring(const PrimalGraph& graph, const Coloring& coloring,
                                       int threads) {
    int k = coloring.k;
    if (k < 2 || k > kMaxSimpletSize) throw UsageError("treelet table supports 2 <= k <= 6");
    if (static_cast<Node>(coloring.colors.size()) != graph.num_nodes)
        throw UsageError("coloring size does not match graph");

    TreeletTable table = make_table_shell(graph, coloring);
    const auto& treelets = table.treelets.treelets;
    const auto& colors = table.coloring.colors;
    size_t n = static_cast<size_t>(graph.num_nodes);
    MaskLists lists(k);

    // base case: the single-node shape
    for (size_t v = 0; v < n; ++v)
        table.data[table.slots[0][Mask(1) << colors[v]]][v] = 1;

    for (int size = 2; size <= k; ++size) {
        auto [tbegin, tend] = table.treelets.by_size[size];
        parallel_chunks(n, threads, [&](size_t begin, size_t end) {
            for (size_t v = begin; v < end; ++v) {
                if (size == k && colors[v] != 0) continue;  // root restricted to color 0
                Mask cv = Mask(1) << colors[v];
                for (int tid = tbegin; tid < tend; ++tid) {
                    const Treelet& t = treelets[tid];
                    int branch_size = treelets[t.branch].size;
                    for (Mask S : lists.by_size[size]) {
                        if (!(S & cv)) continue;
                        u128 acc = 0;
                        for (Node u : graph.adj[v]) {
                            Mask cu = Mask(1) << colors[u];
                            if (!(S & cu) || cu == cv) continue;
                            for (Mask S2 : lists.submasks[S & ~cv][branch_size]) {
                                if (!(S2 & cu)) continue;
                                u128 a = table.value(static_cast<Node>(v), t.stem, S & ~S2);
                                if (a == 0) continue;
                                u128 b = table.value(u, t.branch, S2);
                                if (b == 0) continue;
                                acc = checked_add(acc, checked_mul(a, b));
                            }
                        }
                        if (acc == 0) continue;
                        if (acc % static_cast<unsigned>(t.mult) != 0)
                            throw ComputeError("internal error: inexact division in treelet DP");
                        table.data[table.slots[tid][S]][v] = acc / static_cast<unsigned>(t.mult);
                    }
                }
            }
        });
    }

    Mask full = (Mask(1) << k) - 1;
    auto [kbegin, kend] = table.treelets.by_size[k];
    u128 total = 0;
    for (size_t v = 0; v < n; ++v) {
        if (colors[v] != 0) continue;
        for (int tid = kbegin; tid < kend; ++tid)
            total = checked_add(total, table.value(static_cast<Node>(v), tid, full));
    }
    table.n_ct = total;
    return table;
}

TreeletTable build_table(const PrimalGraph& graph, int k, uint64_t seed, int threads) {
    return build_table_with_coloring(graph, Coloring::random(graph.num_nodes, k, seed), threads);
}

namespace {

struct RootEntry {
    Node v;
    int tid;
    u128 cum;  // inclusive prefix sum
};

void sample_tree(const PrimalGraph& graph, const TreeletTable& table, Node v, int tid, Mask S,
                 std::mt19937_64& rng, Node* out, int& out_count) {
    const Treelet& t = table.treelets.treelets[tid];
    if (t.size == 1) {
        out[out_count++] = v;
        return;
    }
    int branch_size = table.treelets.treelets[t.branch].size;
    Mask cv = Mask(1) << table.coloring.colors[v];
    // weight total must equal mult * C(v, T, S); drawn by a second pass
    u128 total = 0;
    Mask rem = S & ~cv;
    for (Node u : graph.adj[v]) {
        Mask cu = Mask(1) << table.coloring.colors[u];
        if (!(rem & cu)) continue;
        Mask sub = rem;
        for (;;) {
            if (__builtin_popcount(sub) == branch_size && (sub & cu)) {
                u128 a = table.value(v, t.stem, S & ~sub);
                if (a != 0) {
                    u128 b = table.value(u, t.branch, sub);
                    if (b != 0) total = checked_add(total, checked_mul(a, b));
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & rem;
        }
    }
    u128 expected = checked_mul(table.value(v, tid, S), static_cast<unsigned>(t.mult));
    if (total != expected)
        throw ComputeError("internal error: sampling weights disagree with DP table");
    u128 r = uniform_u128(rng, total);
    for (Node u : graph.adj[v]) {
        Mask cu = Mask(1) << table.coloring.colors[u];
        if (!(rem & cu)) continue;
        Mask sub = rem;
        for (;;) {
            if (__builtin_popcount(sub) == branch_size && (sub & cu)) {
                u128 a = table.value(v, t.stem, S & ~sub);
                u128 b = a == 0 ? u128(0) : table.value(u, t.branch, sub);
                if (a != 0 && b != 0) {
                    u128 w = checked_mul(a, b);
                    if (r < w) {
                        sample_tree(graph, table, v, t.stem, S & ~sub, rng, out, out_count);
                        sample_tree(graph, table, u, t.branch, sub, rng, out, out_count);
                        return;
                    }
                    r -= w;
                }
            }
            if (sub == 0) break;
            sub = (sub - 1) & rem;
        }
    }
    throw ComputeError("internal error: sampling walk exhausted its weights");
}

}  // namespace

SampleBatch sample_batch(const PrimalGraph& graph, const TreeletTable& table, uint64_t x,
                         uint64_t seed, int threads) {
    if (table.n_ct == 0) throw ComputeError("no colorful treelets under this coloring");
    const int k = table.k;
    Mask full = (Mask(1) << k) - 1;

    std::vector<RootEntry> roots;
    u128 cum = 0;
    auto [kbegin, kend] = table.treelets.by_size[k];
    for (Node v = 0; v < graph.num_nodes; ++v) {
        if (table.coloring.colors[v] != 0) continue;
        for (int tid = kbegin; tid < kend; ++tid) {
            u128 c = table.value(v, tid, full);
            if (c == 0) continue;
            cum = checked_add(cum, c);
            roots.push_back({v, tid, cum});
        }
    }
    if (cum != table.n_ct)
        throw ComputeError("internal error: root weights disagree with n_ct");

    SampleBatch batch;
    batch.k = k;
    batch.nodes.assign(static_cast<size_t>(x) * k, 0);
    parallel_chunks(static_cast<size_t>(x), threads, [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            std::mt19937_64 rng = make_rng(seed, /*stream=*/0x5A3Bu, i);
            u128 r = uniform_u128(rng, table.n_ct);
            size_t lo = 0, hi = roots.size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (roots[mid].cum > r)
                    hi = mid;
                else
                    lo = mid + 1;
            }
            Node* out = batch.nodes.data() + i * static_cast<size_t>(k);
            int count = 0;
            sample_tree(graph, table, roots[lo].v, roots[lo].tid, full, rng, out, count);
            if (count != k) throw ComputeError("internal error: sampled tree has wrong size");
            std::sort(out, out + k);
        }
    });
    return batch;
}

std::vector<MaskFamily> scan_batch(const SampleBatch& batch, const SimplicialComplex& complex,
                                   int threads) {
    IncidenceIndex index(complex);
    std::vector<MaskFamily> out(batch.size());
    parallel_chunks(batch.size(), threads, [&](size_t begin, size_t end) {
        std::vector<int32_t> id_buffer;
        Simplex nodes(static_cast<size_t>(batch.k));
        for (size_t i = begin; i < end; ++i) {
            const Node* s = batch.sample(i);
            nodes.assign(s, s + batch.k);
            index.induced_masks(nodes, out[i], id_buffer);
        }
    });
    return out;
}

std::vector<SimplexFamily> scan(const SampleBatch& batch, const SimplicialComplex& complex,
                                int threads) {
    std::vector<MaskFamily> masks = scan_batch(batch, complex, threads);
    std::vector<SimplexFamily> out(masks.size());
    for (size_t i = 0; i < masks.size(); ++i) {
        const Node* s = batch.sample(i);
        for (Mask m : masks[i]) {
            Simplex member;
            for (int b = 0; b < batch.k; ++b)
                if (m & (Mask(1) << b)) member.push_back(s[b]);
            out[i].push_back(std::move(member));
        }
        std::sort(out[i].begin(), out[i].end());
    }
    return out;
}

double colorful_inverse_probability(int k) {
    double v = 1.0;
    for (int i = 1; i <= k; ++i) v *= static_cast<double>(k) / static_cast<double>(i);
    return v;
}

CountReport match_batch(const SampleBatch& batch, const std::vector<MaskFamily>& scans,
                        u128 n_ct, const MatchTable& table, const SimpletCatalog& catalog) {
    if (scans.size() != batch.size()) throw UsageError("scan results not aligned with batch");
    if (batch.size() == 0) throw UsageError("match needs at least one sample");
    if (table.k != catalog.k || batch.k != catalog.k)
        throw UsageError("batch, match table and catalog disagree on k");

    CountReport report;
    report.k = catalog.k;
    report.method = "color-coding";
    report.samples = batch.size();
    report.counts.assign(catalog.size(), 0.0);
    report.codes_hex = catalog.codes_hex();

    double base = u128_to_double(n_ct) / static_cast<double>(batch.size()) *
                  colorful_inverse_probability(catalog.k);
    for (const auto& family : scans) {
        int32_t idx = table.lookup(family);
        report.counts[idx] += base / static_cast<double>(catalog.spanning_tree_counts[idx]);
    }
    return report;
}

CountReport estimate_counts(const SimplicialComplex& complex, const SimpletCatalog& catalog,
                            const MatchTable& table, const EstimateOptions& options) {
    if (catalog.k < 3) throw UsageError("sampling estimator needs k >= 3");
    if (options.samples < 1) throw UsageError("sample count must be >= 1");
    auto start = std::chrono::steady_clock::now();

    PrimalGraph graph = primal_graph(complex);
    TreeletTable dp;
    bool built = false;
    int attempts = std::max(1, options.max_recolor);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        dp = build_table(graph, catalog.k, mix64(options.seed, static_cast<uint64_t>(attempt)),
                         options.threads);
        if (dp.n_ct > 0) {
            built = true;
            break;
        }
    }
    if (!built)
        throw ComputeError("no colorful treelets after " + std::to_string(attempts) +
                           " colorings; the complex has no connected " +
                           std::to_string(catalog.k) + "-node subset");

    SampleBatch batch = sample_batch(graph, dp, options.samples, options.seed, options.threads);
    std::vector<MaskFamily> scans = scan_batch(batch, complex, options.threads);
    CountReport report = match_batch(batch, scans, dp.n_ct, table, catalog);
    report.seed = options.seed;
    report.elapsed_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace simplets
