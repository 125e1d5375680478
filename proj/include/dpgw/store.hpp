#ifndef DPGW_STORE_HPP
#define DPGW_STORE_HPP

// Cache files and result tables.
//
// Cache format (LF line endings, no trailing whitespace):
//   GWCACHE 1 <surface-id>
//   <class-string>=<decimal count>
//   ...
// Records are sorted by class string in byte order, one per Weyl normal form.

#include <filesystem>
#include <span>
#include <string>

#include "dpgw/genus1.hpp"
#include "dpgw/gw0.hpp"
#include "dpgw/lattice.hpp"

namespace dpgw {

inline constexpr int cache_format_version = 1;

/// The exact bytes save_cache() writes.
std::string serialize_cache(const MemoTable& memo, const SurfaceModel& s);
MemoTable deserialize_cache(const std::string& text, const SurfaceModel& s);

/// Writes through a temporary file and renames it over path.
void save_cache(const MemoTable& memo, const SurfaceModel& s, const std::filesystem::path& path);
MemoTable load_cache(const std::filesystem::path& path, const SurfaceModel& s);

/// "<dir>/<surface-id>.gwcache"
std::filesystem::path cache_file_in(const std::filesystem::path& dir, const SurfaceModel& s);

enum class TableFormat { csv, json };

TableFormat parse_table_format(std::string_view text);

/// Columns: class, delta, genus, n0, CR, RT1, aut, n1j.
std::string render_table(const SurfaceModel& s, std::span<const GenusOneReport> reports, TableFormat format);
void export_table(const SurfaceModel& s, std::span<const GenusOneReport> reports, TableFormat format,
                  const std::filesystem::path& path);

}  // namespace dpgw

#endif  // DPGW_STORE_HPP
