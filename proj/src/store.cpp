#include "dpgw/store.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include "json.hpp"

namespace dpgw {

namespace {

void write_atomically(const std::filesystem::path& path, const std::string& bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    std::filesystem::remove(tmp, ignored);
    throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("failed reading " + path.string());
  return ss.str();
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string serialize_cache(const MemoTable& memo, const SurfaceModel& s) {
  if (memo.surface_id() != s.id())
    throw ValidationError("memo table belongs to " + memo.surface_id() + ", not " + s.id());
  if (memo.mode() != KeyMode::weyl) throw ValidationError("only Weyl-keyed memo tables can be cached");

  std::vector<std::pair<std::string, std::string>> records;
  for (const auto& [key, value] : memo.entries()) records.emplace_back(format_class(s, key), value.str());
  std::sort(records.begin(), records.end());

  std::string out = "GWCACHE " + std::to_string(cache_format_version) + " " + s.id() + "\n";
  for (const auto& [cls, value] : records) out += cls + "=" + value + "\n";
  return out;
}

MemoTable deserialize_cache(const std::string& text, const SurfaceModel& s) {
  if (text.empty()) throw ParseError(1, "empty cache file");
  if (text.back() != '\n') throw ParseError(static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1,
                                            "missing final newline");
  std::vector<std::string_view> lines;
  std::string_view rest(text);
  while (!rest.empty()) {
    const std::size_t nl = rest.find('\n');
    lines.push_back(rest.substr(0, nl));
    rest.remove_prefix(nl + 1);
  }

  // Header: "GWCACHE <version> <surface-id>"
  const std::string_view header = lines.front();
  const std::size_t sp1 = header.find(' ');
  const std::size_t sp2 = sp1 == std::string_view::npos ? sp1 : header.find(' ', sp1 + 1);
  if (sp2 == std::string_view::npos || header.substr(0, sp1) != "GWCACHE" ||
      header.find(' ', sp2 + 1) != std::string_view::npos)
    throw ParseError(1, "expected \"GWCACHE <version> <surface-id>\"");
  const std::string_view version = header.substr(sp1 + 1, sp2 - sp1 - 1);
  if (!all_digits(version)) throw ParseError(1, "malformed format version");
  if (version != std::to_string(cache_format_version))
    throw VersionError("cache format version " + std::string(version) + " is not supported (expected " +
                       std::to_string(cache_format_version) + ")");
  const std::string_view surface = header.substr(sp2 + 1);
  if (surface != s.id())
    throw ValidationError("cache file is for surface " + std::string(surface) + ", not " + s.id());

  MemoTable memo(s, KeyMode::weyl);
  std::string previous;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const std::string_view line = lines[i];
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos || line.find('=', eq + 1) != std::string_view::npos)
      throw ParseError(lineno, "expected \"<class>=<count>\"");
    const std::string cls(line.substr(0, eq));
    const std::string_view value = line.substr(eq + 1);
    if (!value.empty() && value.front() == '-' && all_digits(value.substr(1)))
      throw ParseError(lineno, "negative count " + std::string(value) + " (counts are >= 0)");
    if (!all_digits(value)) throw ParseError(lineno, "malformed count \"" + std::string(value) + "\"");
    if (i > 1 && cls <= previous) throw ParseError(lineno, "records out of order or duplicated at " + cls);
    previous = cls;

    CurveClass key;
    try {
      key = parse_class(s, cls);
    } catch (const ValidationError& e) {
      throw ParseError(lineno, e.what());
    }
    if (weyl_normalize(s, key) != key) throw ParseError(lineno, cls + " is not in Weyl normal form");
    memo.insert(key, Integer(std::string(value)));
  }
  return memo;
}

void save_cache(const MemoTable& memo, const SurfaceModel& s, const std::filesystem::path& path) {
  write_atomically(path, serialize_cache(memo, s));
}

MemoTable load_cache(const std::filesystem::path& path, const SurfaceModel& s) {
  return deserialize_cache(read_file(path), s);
}

std::filesystem::path cache_file_in(const std::filesystem::path& dir, const SurfaceModel& s) {
  return dir / (s.id() + ".gwcache");
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::csv;
  if (text == "json") return TableFormat::json;
  throw ValidationError("unknown table format \"" + std::string(text) + "\" (expected csv or json)");
}

std::string render_table(const SurfaceModel& s, std::span<const GenusOneReport> reports, TableFormat format) {
  if (format == TableFormat::csv) {
    std::string out = "class,delta,genus,n0,CR,RT1,aut,n1j\n";
    for (const GenusOneReport& r : reports) {
      out += csv_field(format_class(s, r.beta)) + "," + std::to_string(r.delta) + "," + r.genus.str() + "," +
             r.n0.str() + "," + r.correction.str() + "," + r.rt1.str() + "," + std::to_string(r.aut_order) + "," +
             to_string(r.n1j) + "\n";
    }
    return out;
  }

  // Counts can exceed 64 bits, so they are emitted as decimal strings.
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const GenusOneReport& r : reports) {
    nlohmann::ordered_json row;
    row["class"] = format_class(s, r.beta);
    row["delta"] = r.delta;
    row["genus"] = r.genus.convert_to<std::int64_t>();
    row["n0"] = r.n0.str();
    row["CR"] = r.correction.str();
    row["RT1"] = r.rt1.str();
    row["aut"] = r.aut_order;
    row["n1j"] = to_string(r.n1j);
    rows.push_back(std::move(row));
  }
  return rows.dump(2) + "\n";
}

void export_table(const SurfaceModel& s, std::span<const GenusOneReport> reports, TableFormat format,
                  const std::filesystem::path& path) {
  write_atomically(path, render_table(s, reports, format));
}

}  // namespace dpgw
