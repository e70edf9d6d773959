#include "simplets/canonical.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>

namespace simplets {

namespace {

PermTables make_perm_tables(int k) {
    PermTables t;
    t.k = k;
    std::array<int8_t, kMaxSimpletSize> p{};
    std::iota(p.begin(), p.begin() + k, static_cast<int8_t>(0));
    do {
        t.perms.push_back(p);
        std::vector<Mask> map(static_cast<size_t>(1) << k, 0);
        for (Mask m = 0; m < map.size(); ++m) {
            Mask out = 0;
            for (int b = 0; b < k; ++b)
                if (m & (Mask(1) << b)) out |= Mask(1) << p[b];
            map[m] = out;
        }
        t.mask_map.push_back(std::move(map));
    } while (std::next_permutation(p.begin(), p.begin() + k));
    return t;
}

}  // namespace

const PermTables& perm_tables(int k) {
    if (k < 1 || k > kMaxSimpletSize) throw UsageError("permutation tables support 1 <= k <= 6");
    static std::array<PermTables, kMaxSimpletSize + 1> cache;
    static std::array<std::once_flag, kMaxSimpletSize + 1> once;
    std::call_once(once[k], [k] { cache[k] = make_perm_tables(k); });
    return cache[k];
}

std::string Simplet::code() const {
    std::string s;
    s.reserve(maximal.size() + 1);
    s.push_back(static_cast<char>(k));
    for (Mask m : maximal) s.push_back(static_cast<char>(m));
    return s;
}

std::string Simplet::code_hex() const { return hex_from_code(code()); }

bool family_connected(int k, const MaskFamily& family) {
    if (k <= 0) return false;
    std::array<Mask, kMaxSimpletSize> nbr{};
    Mask covered = 0;
    for (Mask m : family) {
        covered |= m;
        for (int b = 0; b < k; ++b)
            if (m & (Mask(1) << b)) nbr[b] |= m;
    }
    if (k == 1) return covered == 1 || family.empty();
    if (covered != (Mask(1) << k) - 1) return false;
    Mask seen = 1, frontier = 1;
    while (frontier) {
        Mask next = 0;
        for (int b = 0; b < k; ++b)
            if (frontier & (Mask(1) << b)) next |= nbr[b];
        frontier = next & ~seen;
        seen |= next;
    }
    return seen == (Mask(1) << k) - 1;
}

bool family_antichain(const MaskFamily& family) {
    for (size_t i = 0; i < family.size(); ++i)
        for (size_t j = 0; j < family.size(); ++j)
            if (i != j && (family[i] & family[j]) == family[i]) return false;
    return true;
}

Simplet canonicalize(int k, MaskFamily family) {
    if (k < 1 || k > kMaxSimpletSize) throw UsageError("canonicalize supports 1 <= k <= 6");
    for (Mask m : family)
        if (m >= (Mask(1) << k)) throw UsageError("mask outside [k]");
    if (!family_antichain(family)) throw UsageError("family is not an antichain");
    if (!family_connected(k, family)) throw UsageError("family's primal graph is not connected");
    std::sort(family.begin(), family.end());
    const PermTables& tables = perm_tables(k);
    MaskFamily best = family, cur(family.size());
    for (const auto& map : tables.mask_map) {
        for (size_t i = 0; i < family.size(); ++i) cur[i] = map[family[i]];
        std::sort(cur.begin(), cur.end());
        if (cur < best) best = cur;
    }
    return Simplet{k, std::move(best)};
}

MaskFamily relabel_to_masks(const Simplex& nodes, const SimplexFamily& family) {
    Simplex sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw UsageError("relabel: duplicate node id");
    MaskFamily out;
    out.reserve(family.size());
    for (const auto& s : family) {
        Mask m = 0;
        for (Node v : s) {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
            if (it == sorted.end() || *it != v) throw UsageError("relabel: node not in sample");
            m |= Mask(1) << (it - sorted.begin());
        }
        out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Simplet canonicalize_on(const Simplex& nodes, const SimplexFamily& family) {
    return canonicalize(static_cast<int>(nodes.size()), relabel_to_masks(nodes, family));
}

std::string hex_from_code(const std::string& code) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(code.size() * 2);
    for (unsigned char c : code) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xF]);
    }
    return out;
}

std::string code_from_hex(const std::string& hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw IoError("bad hex digit in canonical code");
    };
    if (hex.size() % 2 != 0) throw IoError("odd-length hex code");
    std::string out;
    out.reserve(hex.size() / 2);
    for (size_t i = 0; i < hex.size(); i += 2)
        out.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
    return out;
}

}  // namespace simplets
