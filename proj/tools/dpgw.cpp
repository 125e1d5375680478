// dpgw: genus-0 and fixed-j genus-1 curve counts on del Pezzo surfaces.
//
// Exit codes: 0 success, 1 bad input or I/O failure, 2 an internal
// consistency check failed (a verify suite, or an identity inside the
// recursion).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "dpgw/errors.hpp"
#include "dpgw/genus1.hpp"
#include "dpgw/gw0.hpp"
#include "dpgw/lattice.hpp"
#include "dpgw/store.hpp"
#include "dpgw/verify.hpp"

namespace fs = std::filesystem;
using namespace dpgw;

namespace {

struct Common {
  std::string surface = "p2";
  std::string cache_dir;
  bool no_weyl = false;
  bool serial = false;
};

struct Options {
  int threads = 0;
  Common common;
  std::vector<std::string> classes;
  std::string aut = "generic";
  std::string format;
  std::string output;
  std::int64_t max_c1 = 0;
  std::vector<std::string> suites;
};

// Cache directory: --cache, else $GWCACHE_PATH, else none.
std::optional<fs::path> cache_dir(const Common& c) {
  if (!c.cache_dir.empty()) return fs::path(c.cache_dir);
  if (const char* env = std::getenv("GWCACHE_PATH"); env && *env) return fs::path(env);
  return std::nullopt;
}

// A memo table for one run, seeded from and written back to the cache.
class Session {
 public:
  explicit Session(const Common& c)
      : common_(c),
        surface_(parse_surface(c.surface)),
        memo_(surface_, c.no_weyl ? KeyMode::raw : KeyMode::weyl) {
    if (c.no_weyl) {
      if (!c.cache_dir.empty()) throw ValidationError("--cache stores normal-form keys and cannot be used with --no-weyl");
      return;
    }
    if (auto dir = cache_dir(c)) {
      file_ = cache_file_in(*dir, surface_);
      if (fs::exists(*file_)) memo_ = load_cache(*file_, surface_);
    }
  }

  const SurfaceModel& surface() const { return surface_; }
  MemoTable& memo() { return memo_; }

  std::vector<Integer> counts(const std::vector<CurveClass>& classes) {
    if (!common_.serial) return n0_parallel(surface_, classes, memo_);
    std::vector<Integer> out;
    out.reserve(classes.size());
    for (const CurveClass& c : classes) out.push_back(n0(surface_, c, memo_));
    return out;
  }

  void persist() {
    if (file_) {
      fs::create_directories(file_->parent_path());
      save_cache(memo_, surface_, *file_);
    }
  }

  const std::optional<fs::path>& file() const { return file_; }

 private:
  Common common_;
  SurfaceModel surface_;
  MemoTable memo_;
  std::optional<fs::path> file_;
};

std::vector<CurveClass> parse_classes(const SurfaceModel& s, const std::vector<std::string>& texts) {
  std::vector<CurveClass> out;
  out.reserve(texts.size());
  for (const std::string& t : texts) out.push_back(parse_class(s, t));
  return out;
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  if (!out.flush()) throw IoError("write to " + path + " failed");
}

std::string report_text(const SurfaceModel& s, const GenusOneReport& r) {
  std::string out;
  const auto line = [&](const std::string& key, const std::string& value) { out += key + " " + value + "\n"; };
  line("surface", s.id());
  line("class", format_class(s, r.beta));
  line("delta", std::to_string(r.delta));
  line("genus", to_string(r.genus));
  line("n0", to_string(r.n0));
  line("CR", to_string(r.correction));
  line("RT1", to_string(r.rt1));
  line("aut", std::to_string(r.aut_order));
  line("n1j", to_string(r.n1j));
  return out;
}

std::vector<GenusOneReport> reports_for(Session& session, const std::vector<CurveClass>& classes, std::int64_t aut) {
  const std::vector<Integer> counts = session.counts(classes);
  std::vector<GenusOneReport> out;
  out.reserve(classes.size());
  for (std::size_t i = 0; i < classes.size(); ++i)
    out.push_back(genus_one_report(session.surface(), classes[i], aut, counts[i]));
  return out;
}

int cmd_n0(const Options& o) {
  Session session(o.common);
  const std::vector<Integer> counts = session.counts(parse_classes(session.surface(), o.classes));
  for (const Integer& n : counts) std::cout << to_string(n) << "\n";
  session.persist();
  return 0;
}

int cmd_genus1(const Options& o) {
  Session session(o.common);
  const std::int64_t aut = parse_aut(o.aut);
  const std::vector<GenusOneReport> reports = reports_for(session, parse_classes(session.surface(), o.classes), aut);
  std::string text;
  if (o.format.empty() || o.format == "text") {
    for (std::size_t i = 0; i < reports.size(); ++i) {
      if (i > 0) text += "\n";
      text += report_text(session.surface(), reports[i]);
    }
  } else {
    text = render_table(session.surface(), reports, parse_table_format(o.format));
  }
  write_output(text, o.output);
  session.persist();
  return 0;
}

int cmd_table(const Options& o) {
  Session session(o.common);
  const SurfaceModel& s = session.surface();
  std::vector<CurveClass> classes = parse_classes(s, o.classes);
  if (o.max_c1 > 0)
    for (const CurveClass& c : candidate_classes(s, o.max_c1, Enumeration::sorted)) classes.push_back(c);
  if (classes.empty()) throw ValidationError("table needs --class or --max-c1");
  const std::vector<GenusOneReport> reports = reports_for(session, classes, parse_aut(o.aut));
  write_output(render_table(s, reports, parse_table_format(o.format.empty() ? "csv" : o.format)), o.output);
  session.persist();
  return 0;
}

int cmd_verify(const Options& o) {
  std::vector<std::string> names = o.suites.empty() ? suite_names() : o.suites;
  for (const std::string& n : names) {
    bool known = false;
    for (const std::string& k : suite_names()) known = known || k == n;
    if (!known) throw ValidationError("unknown verify suite \"" + n + "\"");
  }
  bool ok = true;
  for (const std::string& n : names) {
    const SuiteResult r = run_verify_suite(n);
    std::cout << r.name << ": " << (r.passed() ? "pass" : "FAIL") << ", " << r.checks << " checks, " << r.failures
              << " failures\n";
    for (const std::string& m : r.messages) std::cout << "  " << m << "\n";
    ok = ok && r.passed();
  }
  return ok ? 0 : 2;
}

int cmd_cache_build(const Options& o) {
  Session session(o.common);
  if (!session.file()) throw ValidationError("cache build needs --cache or GWCACHE_PATH");
  if (o.max_c1 <= 0) throw ValidationError("cache build needs --max-c1 >= 1");
  session.counts(candidate_classes(session.surface(), o.max_c1, Enumeration::sorted));
  session.persist();
  std::cout << session.file()->string() << ": " << session.memo().size() << " entries\n";
  return 0;
}

int cmd_cache_show(const Options& o) {
  const SurfaceModel s = parse_surface(o.common.surface);
  const auto dir = cache_dir(o.common);
  if (!dir) throw ValidationError("cache show needs --cache or GWCACHE_PATH");
  const fs::path file = cache_file_in(*dir, s);
  if (!fs::exists(file)) throw IoError("no cache file " + file.string());
  std::cout << serialize_cache(load_cache(file, s), s);
  return 0;
}

void add_common(CLI::App* sub, Common& c, bool recursion_flags) {
  sub->add_option("-s,--surface", c.surface, "p2, p2xK (0 <= K <= 8) or quadric")->capture_default_str();
  sub->add_option("--cache", c.cache_dir, "cache directory (default: $GWCACHE_PATH)");
  if (!recursion_flags) return;
  sub->add_flag("--no-weyl", c.no_weyl, "recurse on classes as given, without Weyl normal forms");
  sub->add_flag("--serial", c.serial, "use the serial evaluator");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counts rational and fixed-j elliptic curves on del Pezzo surfaces."};
  app.require_subcommand(1);
  Options o;
  app.add_option("-j,--threads", o.threads, "OpenMP threads (default: runtime default)")->check(CLI::NonNegativeNumber);

  CLI::App* n0_cmd = app.add_subcommand("n0", "genus-0 count through c1.beta - 1 points");
  add_common(n0_cmd, o.common, true);
  n0_cmd->add_option("-c,--class", o.classes, "class, \"d;m1,...,mk\" or \"a,b\"")->required();

  CLI::App* g1_cmd = app.add_subcommand("genus1", "fixed-j genus-1 report");
  add_common(g1_cmd, o.common, true);
  g1_cmd->add_option("-c,--class", o.classes, "class, \"d;m1,...,mk\" or \"a,b\"")->required();
  g1_cmd->add_option("-a,--aut", o.aut, "generic, j1728, j0, or a positive integer")->capture_default_str();
  g1_cmd->add_option("-f,--format", o.format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
  g1_cmd->add_option("-o,--output", o.output, "output file (default: stdout)");

  CLI::App* table_cmd = app.add_subcommand("table", "genus-1 reports for many classes");
  add_common(table_cmd, o.common, true);
  table_cmd->add_option("-c,--class", o.classes, "class to include (repeatable)");
  table_cmd->add_option("--max-c1", o.max_c1, "include sorted candidate classes with c1.beta <= N")
      ->check(CLI::NonNegativeNumber);
  table_cmd->add_option("-a,--aut", o.aut, "generic, j1728, j0, or a positive integer")->capture_default_str();
  table_cmd->add_option("-f,--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_option("-o,--output", o.output, "output file (default: stdout)");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run property suites");
  verify_cmd->add_option("suites", o.suites, "suite names (default: all)");

  CLI::App* cache_cmd = app.add_subcommand("cache", "build or print a cache file");
  cache_cmd->require_subcommand(1);
  CLI::App* build_cmd = cache_cmd->add_subcommand("build", "compute n0 up to --max-c1 and save");
  add_common(build_cmd, o.common, true);
  build_cmd->add_option("--max-c1", o.max_c1, "largest c1.beta")->required();
  CLI::App* show_cmd = cache_cmd->add_subcommand("show", "print the cache file of a surface");
  add_common(show_cmd, o.common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);

  try {
    if (app.got_subcommand(n0_cmd)) return cmd_n0(o);
    if (app.got_subcommand(g1_cmd)) return cmd_genus1(o);
    if (app.got_subcommand(table_cmd)) return cmd_table(o);
    if (app.got_subcommand(verify_cmd)) return cmd_verify(o);
    if (build_cmd->parsed()) return cmd_cache_build(o);
    if (show_cmd->parsed()) return cmd_cache_show(o);
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {  // validation, parse, version and I/O errors
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal failure: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
