#include "simplets/catalog.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>

#include "simplets/util.hpp"

namespace simplets {

namespace {

// connected-graph census used to validate inputs/outputs of the expansion
int expected_graphlets(int k) {
    switch (k) {
        case 2: return 1;
        case 3: return 2;
        case 4: return 6;
        case 5: return 21;
        case 6: return 112;
        default: return -1;
    }
}

int expected_simplets(int k) {
    switch (k) {
        case 1: return 1;
        case 2: return 1;
        case 3: return 3;
        case 4: return 14;
        case 5: return 157;
        case 6: return 15942;
        default: return -1;
    }
}

PrimalGraph primal_from_masks(int k, const MaskFamily& family) {
    PrimalGraph g;
    g.num_nodes = k;
    g.adj.assign(static_cast<size_t>(k), {});
    std::array<Mask, kMaxSimpletSize> nbr{};
    for (Mask m : family)
        for (int b = 0; b < k; ++b)
            if (m & (Mask(1) << b)) nbr[b] |= m & ~(Mask(1) << b);
    for (int v = 0; v < k; ++v) {
        for (int u = 0; u < k; ++u)
            if (nbr[v] & (Mask(1) << u)) g.adj[v].push_back(u);
        g.edge_count += static_cast<int64_t>(g.adj[v].size());
    }
    g.edge_count /= 2;
    return g;
}

// Recursive open/close expansion of one graphlet's cliques. Sibling choices
// are deduplicated by enumerating only one representative per orbit of the
// automorphism group of the current partial state; this is exactly
// isomorphism dedup because any isomorphism between two sibling states fixes
// the edge set and the already-closed family.
struct Expander {
    int k;
    const PermTables& tables;
    MaskFamily edges;                         // canonical, sorted
    std::vector<std::vector<Mask>> cliques;   // [size] -> masks
    std::vector<size_t> edge_auts;            // perm ids preserving the edge set
    MaskFamily closed;
    std::vector<MaskFamily>* out;

    Expander(int k_, const Graphlet& g, std::vector<MaskFamily>* out_)
        : k(k_), tables(perm_tables(k_)), edges(g.edges), out(out_) {
        std::array<Mask, kMaxSimpletSize> adj{};
        for (Mask e : edges) {
            int lo = __builtin_ctz(e);
            int hi = __builtin_ctz(e & (e - 1));
            adj[lo] |= Mask(1) << hi;
            adj[hi] |= Mask(1) << lo;
        }
        cliques.assign(static_cast<size_t>(k) + 1, {});
        for (Mask m = 0; m < (Mask(1) << k); ++m) {
            int pc = __builtin_popcount(m);
            if (pc < 3) continue;
            bool clique = true;
            for (int v = 0; v < k && clique; ++v)
                if (m & (Mask(1) << v))
                    if ((adj[v] & m) != (m & ~(Mask(1) << v))) clique = false;
            if (clique) cliques[pc].push_back(m);
        }
        MaskFamily mapped(edges.size());
        for (size_t pi = 0; pi < tables.mask_map.size(); ++pi) {
            const auto& map = tables.mask_map[pi];
            for (size_t i = 0; i < edges.size(); ++i) mapped[i] = map[edges[i]];
            std::sort(mapped.begin(), mapped.end());
            if (mapped == edges) edge_auts.push_back(pi);
        }
    }

    bool covered(Mask c) const {
        for (Mask d : closed)
            if ((c & d) == c) return true;
        return false;
    }

    void emit() {
        MaskFamily family = closed;
        for (Mask e : edges)
            if (!covered(e)) family.push_back(e);
        out->push_back(std::move(family));
    }

    void expand(int level) {
        if (level < 3) {
            emit();
            return;
        }
        std::vector<Mask> open;
        for (Mask c : cliques[level])
            if (!covered(c)) open.push_back(c);
        size_t tn = open.size();
        if (tn == 0) {
            expand(level - 1);
            return;
        }
        // automorphisms of (edges, closed), as index maps over `open`
        MaskFamily closed_sorted = closed;
        std::sort(closed_sorted.begin(), closed_sorted.end());
        std::vector<std::vector<int>> idx_maps;
        MaskFamily mapped(closed_sorted.size());
        for (size_t pi : edge_auts) {
            const auto& map = tables.mask_map[pi];
            mapped.resize(closed_sorted.size());
            for (size_t i = 0; i < closed_sorted.size(); ++i) mapped[i] = map[closed_sorted[i]];
            std::sort(mapped.begin(), mapped.end());
            if (mapped != closed_sorted) continue;
            std::vector<int> idx(tn);
            bool ok = true;
            for (size_t j = 0; j < tn; ++j) {
                Mask img = map[open[j]];
                auto it = std::find(open.begin(), open.end(), img);
                if (it == open.end()) {
                    ok = false;  // cannot happen: auts permute open cliques
                    break;
                }
                idx[j] = static_cast<int>(it - open.begin());
            }
            if (!ok) throw ComputeError("internal error: automorphism does not permute open cliques");
            bool identity = true;
            for (size_t j = 0; j < tn; ++j)
                if (idx[j] != static_cast<int>(j)) identity = false;
            if (!identity) idx_maps.push_back(std::move(idx));
        }
        // per-automorphism split lookup tables: subset mask -> mapped mask
        size_t lo_bits = std::min<size_t>(tn, 10), hi_bits = tn - lo_bits;
        std::vector<std::vector<uint32_t>> lo_tbl(idx_maps.size()), hi_tbl(idx_maps.size());
        for (size_t a = 0; a < idx_maps.size(); ++a) {
            const auto& idx = idx_maps[a];
            lo_tbl[a].assign(size_t(1) << lo_bits, 0);
            for (uint32_t m = 0; m < lo_tbl[a].size(); ++m) {
                uint32_t r = 0;
                for (size_t j = 0; j < lo_bits; ++j)
                    if (m & (1u << j)) r |= 1u << idx[j];
                lo_tbl[a][m] = r;
            }
            hi_tbl[a].assign(size_t(1) << hi_bits, 0);
            for (uint32_t m = 0; m < hi_tbl[a].size(); ++m) {
                uint32_t r = 0;
                for (size_t j = 0; j < hi_bits; ++j)
                    if (m & (1u << j)) r |= 1u << idx[lo_bits + j];
                hi_tbl[a][m] = r;
            }
        }
        uint32_t lo_mask = static_cast<uint32_t>((size_t(1) << lo_bits) - 1);
        for (uint32_t sig = 0; sig < (uint32_t(1) << tn); ++sig) {
            bool minimal = true;
            for (size_t a = 0; a < idx_maps.size() && minimal; ++a) {
                uint32_t img = lo_tbl[a][sig & lo_mask] | hi_tbl[a][sig >> lo_bits];
                if (img < sig) minimal = false;
            }
            if (!minimal) continue;
            size_t base = closed.size();
            for (size_t j = 0; j < tn; ++j)
                if (sig & (1u << j)) closed.push_back(open[j]);
            expand(level - 1);
            closed.resize(base);
        }
    }
};

}  // namespace

std::vector<Graphlet> generate_graphlets(int k) {
    if (k < 2 || k > kMaxSimpletSize) throw UsageError("graphlet generation supports 2 <= k <= 6");
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
    std::vector<Graphlet> out;
    std::unordered_set<std::string> seen;
    MaskFamily family;
    for (uint32_t bits = 1; bits < (1u << pairs.size()); ++bits) {
        family.clear();
        for (size_t p = 0; p < pairs.size(); ++p)
            if (bits & (1u << p))
                family.push_back((Mask(1) << pairs[p].first) | (Mask(1) << pairs[p].second));
        if (!family_connected(k, family)) continue;
        Simplet canon = canonicalize(k, family);
        std::string code = canon.code();
        if (seen.insert(code).second)
            out.push_back(Graphlet{k, std::move(canon.maximal), std::move(code)});
    }
    std::sort(out.begin(), out.end(), [](const Graphlet& a, const Graphlet& b) {
        if (a.edges.size() != b.edges.size()) return a.edges.size() < b.edges.size();
        return a.code < b.code;
    });
    if (static_cast<int>(out.size()) != expected_graphlets(k))
        throw ComputeError("internal error: connected-graph census mismatch for k=" + std::to_string(k));
    return out;
}

uint64_t spanning_tree_count(const PrimalGraph& graph) {
    int n = graph.num_nodes;
    if (n <= 1) return 1;
    // Laplacian minor determinant, fraction-free Bareiss elimination
    int m = n - 1;
    std::vector<std::vector<__int128>> a(m, std::vector<__int128>(m, 0));
    for (int v = 0; v < m; ++v) {
        a[v][v] = graph.degree(v);
        for (Node u : graph.adj[v])
            if (u < m) a[v][u] -= 1;
    }
    __int128 prev = 1;
    int sign = 1;
    for (int col = 0; col < m; ++col) {
        int pivot = -1;
        for (int r = col; r < m; ++r)
            if (a[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return 0;
        if (pivot != col) {
            std::swap(a[pivot], a[col]);
            sign = -sign;
        }
        for (int r = col + 1; r < m; ++r) {
            for (int c = col + 1; c < m; ++c)
                a[r][c] = (a[r][c] * a[col][col] - a[r][col] * a[col][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[col][col];
    }
    __int128 det = sign * a[m - 1][m - 1];
    if (det < 0) throw ComputeError("internal error: negative spanning-tree determinant");
    return static_cast<uint64_t>(det);
}

int32_t SimpletCatalog::index_of(const std::string& code) const {
    auto it = index_by_code.find(code);
    if (it == index_by_code.end()) throw ComputeError("canonical code not present in catalog");
    return it->second;
}

std::vector<std::string> SimpletCatalog::codes_hex() const {
    std::vector<std::string> out;
    out.reserve(simplets.size());
    for (const auto& s : simplets) out.push_back(s.code_hex());
    return out;
}

SimpletCatalog expand_simplets(int k, const std::vector<Graphlet>& graphlets, int threads) {
    if (k < 2 || k > kMaxSimpletSize) throw UsageError("simplet expansion supports 2 <= k <= 6");
    if (static_cast<int>(graphlets.size()) != expected_graphlets(k))
        throw UsageError("incomplete graphlet input for k=" + std::to_string(k));
    std::vector<std::vector<MaskFamily>> per_graphlet(graphlets.size());
    parallel_chunks(graphlets.size(), threads, [&](size_t begin, size_t end) {
        for (size_t gi = begin; gi < end; ++gi) {
            Expander ex(k, graphlets[gi], &per_graphlet[gi]);
            ex.expand(k);
        }
    });

    SimpletCatalog catalog;
    catalog.k = k;
    for (const auto& families : per_graphlet)
        for (const auto& family : families)
            catalog.simplets.push_back(canonicalize(k, family));
    std::sort(catalog.simplets.begin(), catalog.simplets.end(),
              [](const Simplet& a, const Simplet& b) {
                  if (a.maximal.size() != b.maximal.size())
                      return a.maximal.size() < b.maximal.size();
                  return a.code() < b.code();
              });
    for (size_t i = 0; i + 1 < catalog.simplets.size(); ++i)
        if (catalog.simplets[i].code() == catalog.simplets[i + 1].code())
            throw ComputeError("internal error: duplicate simplet across expansion branches");
    if (static_cast<int>(catalog.simplets.size()) != expected_simplets(k))
        throw ComputeError("internal error: simplet census mismatch for k=" + std::to_string(k));

    catalog.spanning_tree_counts.reserve(catalog.simplets.size());
    for (size_t i = 0; i < catalog.simplets.size(); ++i) {
        const Simplet& s = catalog.simplets[i];
        uint64_t nst = spanning_tree_count(primal_from_masks(k, s.maximal));
        if (nst < 1) throw ComputeError("internal error: disconnected simplet in catalog");
        catalog.spanning_tree_counts.push_back(nst);
        catalog.index_by_code.emplace(s.code(), static_cast<int32_t>(i));
    }
    return catalog;
}

SimpletCatalog build_catalog(int k, int threads) {
    return expand_simplets(k, generate_graphlets(k), threads);
}

std::string MatchTable::key(const MaskFamily& sorted_masks) {
    std::string s;
    s.reserve(sorted_masks.size());
    for (Mask m : sorted_masks) s.push_back(static_cast<char>(m));
    return s;
}

int32_t MatchTable::lookup(const MaskFamily& sorted_masks) const {
    auto it = entries.find(key(sorted_masks));
    if (it == entries.end())
        throw ComputeError("internal error: match-table miss (catalog incomplete?)");
    return it->second;
}

MatchTable build_match_table(const SimpletCatalog& catalog) {
    MatchTable table;
    table.k = catalog.k;
    const PermTables& tables = perm_tables(catalog.k);
    MaskFamily mapped;
    for (size_t i = 0; i < catalog.simplets.size(); ++i) {
        const MaskFamily& family = catalog.simplets[i].maximal;
        mapped.resize(family.size());
        for (const auto& map : tables.mask_map) {
            for (size_t j = 0; j < family.size(); ++j) mapped[j] = map[family[j]];
            std::sort(mapped.begin(), mapped.end());
            auto [it, fresh] = table.entries.emplace(MatchTable::key(mapped), static_cast<int32_t>(i));
            if (!fresh && it->second != static_cast<int32_t>(i))
                throw ComputeError("internal error: match-table collision between simplets");
        }
    }
    return table;
}

}  // namespace simplets
