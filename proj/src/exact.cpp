#include "simplets/exact.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>

#include "simplets/incidence.hpp"
#include "simplets/util.hpp"

namespace simplets {

namespace {

// ESU reverse search: enumerates every connected k-subset exactly once,
// rooted at its minimum node. `marked` tracks sub + neighborhood so each
// extension candidate enters at most once.
struct Enumerator {
    const PrimalGraph& graph;
    int k;
    std::vector<uint8_t> marked;
    std::vector<Node> undo;
    std::vector<std::vector<Node>> ext;
    std::array<Node, kMaxSimpletSize> sub{};
    Node root = 0;

    template <typename Fn>
    void run_root(Node v, Fn&& fn) {
        root = v;
        size_t undo_base = undo.size();
        mark(v);
        ext[1].clear();
        for (Node u : graph.adj[v]) {
            mark(u);
            if (u > v) ext[1].push_back(u);
        }
        sub[0] = v;
        extend(1, fn);
        rollback(undo_base);
    }

    template <typename Fn>
    void extend(int depth, Fn&& fn) {
        if (depth == k) {
            fn(sub);
            return;
        }
        auto& cur = ext[depth];
        while (!cur.empty()) {
            Node w = cur.back();
            cur.pop_back();
            auto& nxt = ext[depth + 1];
            nxt = cur;
            size_t undo_base = undo.size();
            for (Node u : graph.adj[w])
                if (!marked[u]) {
                    mark(u);
                    if (u > root) nxt.push_back(u);
                }
            sub[depth] = w;
            extend(depth + 1, fn);
            rollback(undo_base);
        }
    }

    void mark(Node u) {
        marked[u] = 1;
        undo.push_back(u);
    }

    void rollback(size_t base) {
        while (undo.size() > base) {
            marked[undo.back()] = 0;
            undo.pop_back();
        }
    }

    Enumerator(const PrimalGraph& g, int k_) : graph(g), k(k_) {
        marked.assign(static_cast<size_t>(g.num_nodes), 0);
        ext.resize(static_cast<size_t>(k) + 1);
    }
};

struct SubsetBudget {
    std::atomic<uint64_t> total{0};
    uint64_t cap;
    explicit SubsetBudget(uint64_t c) : cap(c) {}

    // flush a local tally; throws once the global budget is blown
    void charge(uint64_t amount) {
        if (total.fetch_add(amount, std::memory_order_relaxed) + amount > cap)
            throw ComputeError("connected k-subset budget exceeded (" + std::to_string(cap) +
                               "); raise --subset-cap to force exact counting");
    }
};

}  // namespace

CountReport count_exact(const SimplicialComplex& complex, const SimpletCatalog& catalog,
                        const MatchTable& table, const ExactOptions& options) {
    if (table.k != catalog.k) throw UsageError("match table and catalog disagree on k");
    const int k = catalog.k;
    auto start = std::chrono::steady_clock::now();

    PrimalGraph graph = primal_graph(complex);
    IncidenceIndex index(complex);

    std::vector<uint64_t> counts(catalog.size(), 0);
    std::mutex merge_mutex;
    SubsetBudget budget(options.subset_cap);

    size_t n = static_cast<size_t>(graph.num_nodes);
    parallel_chunks(n, options.threads, [&](size_t begin, size_t end) {
        Enumerator enumerator(graph, k);
        std::vector<uint64_t> local(catalog.size(), 0);
        std::vector<int32_t> id_buffer;
        MaskFamily masks;
        Simplex nodes(static_cast<size_t>(k));
        uint64_t pending = 0;
        for (size_t v = begin; v < end; ++v) {
            enumerator.run_root(static_cast<Node>(v), [&](const auto& sub) {
                nodes.assign(sub.begin(), sub.begin() + k);
                std::sort(nodes.begin(), nodes.end());
                index.induced_masks(nodes, masks, id_buffer);
                local[table.lookup(masks)] += 1;
                if (++pending == 4096) {
                    budget.charge(pending);
                    pending = 0;
                }
            });
        }
        budget.charge(pending);
        std::lock_guard<std::mutex> lock(merge_mutex);
        for (size_t i = 0; i < counts.size(); ++i) counts[i] += local[i];
    });

    CountReport report;
    report.k = k;
    report.method = "exact";
    report.samples = 0;
    report.seed = 0;
    report.counts.assign(counts.begin(), counts.end());
    report.codes_hex = catalog.codes_hex();
    report.elapsed_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

uint64_t connected_subset_count(const PrimalGraph& graph, int k, const ExactOptions& options) {
    if (k < 1 || k > kMaxSimpletSize) throw UsageError("connected_subset_count supports 1 <= k <= 6");
    if (k == 1) return static_cast<uint64_t>(graph.num_nodes);
    std::atomic<uint64_t> total{0};
    SubsetBudget budget(options.subset_cap);
    size_t n = static_cast<size_t>(graph.num_nodes);
    parallel_chunks(n, options.threads, [&](size_t begin, size_t end) {
        Enumerator enumerator(graph, k);
        uint64_t local = 0, pending = 0;
        for (size_t v = begin; v < end; ++v)
            enumerator.run_root(static_cast<Node>(v), [&](const auto&) {
                ++local;
                if (++pending == 4096) {
                    budget.charge(pending);
                    pending = 0;
                }
            });
        budget.charge(pending);
        total.fetch_add(local, std::memory_order_relaxed);
    });
    return total.load();
}

}  // namespace simplets
