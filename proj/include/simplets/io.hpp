#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplets/analysis.hpp"
#include "simplets/catalog.hpp"
#include "simplets/complex.hpp"
#include "simplets/report.hpp"

namespace simplets {

/// Ingestion record: where a complex came from and how its node ids were
/// remapped. Dense id i corresponds to original_ids[i]; the map is a
/// bijection with dense ids contiguous from 0.
struct DatasetDescriptor {
    std::string name;
    std::string format;  // "benson" | "plain"
    std::vector<std::string> paths;
    std::vector<int64_t> original_ids;
};

struct LoadedDataset {
    SimplicialComplex complex;
    DatasetDescriptor descriptor;
};

/// Loads the {prefix}-nverts.txt / {prefix}-simplices.txt pair: nverts holds
/// one simplex size per line, simplices one node id per line consumed in
/// order. Duplicate and contained simplices are dropped; node ids remapped
/// densely by ascending original id. {prefix}-times.txt is ignored.
LoadedDataset load_benson(const std::string& prefix);

/// One maximal simplex per line, whitespace-separated node ids; '#' starts a
/// comment. Same dedup/antichain/remap behavior as load_benson.
LoadedDataset load_plain(const std::string& path);

LoadedDataset load_dataset(const std::string& path, const std::string& format);

// --- canonical serialization ------------------------------------------------
// Reports and profiles are single canonical JSON encodings (schema-versioned,
// fixed key order, '\n'-terminated); wall times stay on the diagnostic stream
// so equal-seed runs are byte-identical regardless of thread count.

std::string report_to_json(const CountReport& report);
CountReport report_from_json(const std::string& text);
void save_report(const std::string& path, const CountReport& report);
CountReport load_report(const std::string& path);

std::string profile_to_json(const CharacteristicProfile& profile);
CharacteristicProfile profile_from_json(const std::string& text);
void save_profile(const std::string& path, const CharacteristicProfile& profile);
CharacteristicProfile load_profile(const std::string& path);

/// Line-oriented catalog format: a version header, then one record per
/// simplet (index, canonical code hex, n_st, maximal simplices as sorted bit
/// masks). Loading revalidates codes and census.
void save_catalog(const std::string& path, const SimpletCatalog& catalog);
SimpletCatalog load_catalog(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace simplets
