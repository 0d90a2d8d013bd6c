#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "psiac/advection.hpp"
#include "psiac/errors.hpp"
#include "psiac/io.hpp"
#include "psiac/kernel.hpp"
#include "psiac/legacy.hpp"
#include "psiac/psiac.hpp"

namespace psiac::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<int> int_list(const json& j, const char* field, int min_value) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string("field '") + field + "': expected a non-empty array of integers");
  std::vector<int> out;
  for (const json& v : j) {
    if (!v.is_number_integer() || v.get<long>() < min_value) {
      throw ConfigError(std::string("field '") + field + "': entries must be integers >= " + std::to_string(min_value));
    }
    out.push_back(v.get<int>());
  }
  return out;
}

// Runs fn(0..n-1) on up to `threads` workers; rethrows the failure with the
// lowest index so errors do not depend on scheduling.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct Run {
  int d = 0;
  int n = 0;
  std::string filter;    // "none" for DG only
  std::string pipeline;  // "none" for DG only
  fs::path csv;
  ErrorMetrics dg;
  std::optional<ErrorMetrics> filtered;
  std::optional<ErrorMetrics> interior;
  std::optional<ErrorMetrics> boundary;
};

void write_csv(const fs::path& path, const Run& run, const ErrorMetrics& dg, const ErrorMetrics* filtered) {
  std::ofstream os(path);
  if (!os) throw Error("cannot write " + path.string());
  os << "x,dg_error,filtered_error,pipeline,filter,d,N\n";
  // The filtered metrics may cover a subset of x (interior only).
  std::size_t k = 0;
  for (std::size_t i = 0; i < dg.x.size(); ++i) {
    std::string fe;
    if (filtered) {
      if (k >= filtered->x.size() || filtered->x[k] != dg.x[i]) continue;
      fe = num(filtered->error[k++]);
    }
    os << num(dg.x[i]) << ',' << num(dg.error[i]) << ',' << fe << ',' << run.pipeline << ',' << run.filter
       << ',' << run.d << ',' << run.n << '\n';
  }
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    throw ConfigError("config line " + std::to_string(line) + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  static const std::set<std::string> known{"example", "degrees", "meshes", "filters", "pipeline",
                                           "points_per_cell", "output_dir", "cfl"};
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigError("config: unknown field '" + key + "'");
  }

  ExperimentConfig c;
  if (!j.contains("example") || !j["example"].is_number_integer()) {
    throw ConfigError("field 'example': required integer 1 or 2");
  }
  c.example = j["example"].get<int>();
  if (c.example != 1 && c.example != 2) throw ConfigError("field 'example': must be 1 or 2");
  if (!j.contains("degrees")) throw ConfigError("field 'degrees': required");
  c.degrees = int_list(j["degrees"], "degrees", 1);
  if (!j.contains("meshes")) throw ConfigError("field 'meshes': required");
  c.meshes = int_list(j["meshes"], "meshes", 1);

  if (j.contains("filters")) {
    if (!j["filters"].is_array()) throw ConfigError("field 'filters': expected an array of names");
    for (const json& f : j["filters"]) {
      if (!f.is_string()) throw ConfigError("field 'filters': names must be strings");
      try {
        const FilterFamily fam = parse_family(f.get<std::string>());
        if (fam == FilterFamily::Custom) throw std::invalid_argument("custom");
      } catch (const std::invalid_argument&) {
        throw ConfigError("field 'filters': unknown filter '" + f.get<std::string>() +
                          "' (expected RS, SRV, RLKV, MULTIKNOT or SYMMETRIC)");
      }
      c.filters.push_back(upper(f.get<std::string>()));
    }
  }
  if (j.contains("pipeline")) {
    const std::string p = j["pipeline"].is_string() ? j["pipeline"].get<std::string>() : "";
    if (p == "symbolic") c.pipeline = Pipeline::Symbolic;
    else if (p == "legacy") c.pipeline = Pipeline::Legacy;
    else if (p == "both") c.pipeline = Pipeline::Both;
    else throw ConfigError("field 'pipeline': expected \"symbolic\", \"legacy\" or \"both\"");
  }
  if (j.contains("points_per_cell")) {
    if (!j["points_per_cell"].is_number_integer() || j["points_per_cell"].get<long>() < 1) {
      throw ConfigError("field 'points_per_cell': expected a positive integer");
    }
    c.points_per_cell = j["points_per_cell"].get<int>();
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) throw ConfigError("field 'output_dir': expected a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  if (j.contains("cfl")) {
    if (!j["cfl"].is_number() || !(j["cfl"].get<double>() > 0.0)) {
      throw ConfigError("field 'cfl': expected a positive number");
    }
    c.cfl = j["cfl"].get<double>();
  }
  return c;
}

ExperimentConfig load_config(const fs::path& file) {
  std::ifstream is(file);
  if (!is) throw ConfigError("cannot read config file " + file.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::vector<fs::path> run(const ExperimentConfig& config, unsigned threads) {
  if (config.output_dir.empty()) throw ConfigError("no output directory (set 'output_dir' or pass --out)");
  const Example ex = make_example(config.example);
  const fs::path out = config.output_dir;
  fs::create_directories(out);
  const std::vector<Rational> offsets = sample_offsets(config.points_per_cell);
  std::vector<double> offsets_d;
  for (const Rational& q : offsets) offsets_d.push_back(q.to_double());
  auto exact = [&ex](double x) { return ex.exact(x, ex.t_end); };

  // DG solutions, one per (d, N).
  std::vector<std::pair<int, int>> grid;
  for (int d : config.degrees)
    for (int n : config.meshes) grid.emplace_back(d, n);
  std::vector<std::optional<DGField<double>>> solutions(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    const auto [d, n] = grid[i];
    const Mesh mesh(ex.a, ex.b, static_cast<std::size_t>(n));
    solutions[i] = integrate(l2_project(ex.u0, mesh, d), ex.boundary, ex.t_end, config.cfl);
  });

  std::vector<std::string> pipelines;
  if (config.pipeline != Pipeline::Legacy) pipelines.push_back("symbolic");
  if (config.pipeline != Pipeline::Symbolic) pipelines.push_back("legacy");

  std::vector<Run> runs;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    if (config.filters.empty()) {
      Run r;
      r.d = grid[g].first;
      r.n = grid[g].second;
      r.filter = "none";
      r.pipeline = "none";
      r.csv = out / ("d" + std::to_string(r.d) + "_N" + std::to_string(r.n) + "_dg.csv");
      runs.push_back(r);
    }
    for (const std::string& f : config.filters) {
      for (const std::string& p : pipelines) {
        Run r;
        r.d = grid[g].first;
        r.n = grid[g].second;
        r.filter = f;
        r.pipeline = p;
        r.csv = out / ("d" + std::to_string(r.d) + "_N" + std::to_string(r.n) + "_" + f + "_" + p + ".csv");
        runs.push_back(r);
      }
    }
  }
  auto grid_index = [&](const Run& r) {
    return static_cast<std::size_t>(std::find(grid.begin(), grid.end(), std::pair{r.d, r.n}) - grid.begin());
  };

  parallel_for(runs.size(), threads, [&](std::size_t i) {
    Run& r = runs[i];
    const DGField<double>& u = *solutions[grid_index(r)];
    r.dg = error_metrics(u, exact, config.points_per_cell);
    if (r.filter == "none") {
      write_csv(r.csv, r, r.dg, nullptr);
      return;
    }
    const FilterFamily fam = parse_family(r.filter);
    const double mu_h = (u.mesh.h() * symmetric_half_width(r.d)).to_double();
    const double lo = u.mesh.a_d() + mu_h;
    const double hi = u.mesh.b_d() - mu_h;
    std::vector<double> values;
    if (fam == FilterFamily::Symmetric) {
      // Interior only; boundary points carry no filtered value.
      const SymmetricFilter sym(r.d);
      const FilterSpec& spec = sym.spec();
      std::map<std::size_t, SymmetricStencil> stencils;
      ErrorMetrics m;
      m.weight = r.dg.weight;
      double sum = 0.0;
      for (std::size_t c = 0; c < u.mesh.cells(); ++c) {
        for (std::size_t j = 0; j < offsets.size(); ++j) {
          const Rational x = u.mesh.cell_lower(c) + u.mesh.h() * offsets[j];
          const double xd = x.to_double();
          if (xd < lo || xd > hi) continue;
          double v;
          if (r.pipeline == "symbolic") {
            if (!stencils.count(j)) stencils.emplace(j, sym.stencil(offsets[j]));
            const SymmetricStencil& s = stencils.at(j);
            v = 0.0;
            const std::size_t per = u.dofs_per_cell();
            const auto first = static_cast<std::size_t>(static_cast<long>(c) + s.first_offset);
            for (std::size_t k = 0; k < s.cells * per; ++k) v += u.coeffs[first * per + k] * s.weights_double[k];
          } else {
            v = numeric_filter_point(spec, u, xd);
          }
          const double e = std::abs(v - exact(xd));
          m.x.push_back(xd);
          m.error.push_back(e);
          sum += e * e;
          m.linf = std::max(m.linf, e);
        }
      }
      m.l2 = std::sqrt(sum * m.weight);
      r.filtered = m;
      r.interior = m;
      write_csv(r.csv, r, r.dg, &*r.filtered);
      return;
    }
    const FilterSpec left = filter_catalog(fam, r.d, Side::Left);
    const FilterSpec right = filter_catalog(fam, r.d, Side::Right);
    if (r.pipeline == "symbolic") {
      const FilteredField<double> ff(u, left, right);
      values = ff.sample(offsets);
      std::ofstream js(out / ("field_d" + std::to_string(r.d) + "_N" + std::to_string(r.n) + "_" + r.filter + ".json"));
      js << filtered_field_json(ff, offsets).dump(1) << '\n';
    } else {
      values = legacy_sample(u, left, right, offsets_d);
    }
    r.filtered = error_metrics(u.mesh, config.points_per_cell, values, exact);
    r.interior = restrict_to(*r.filtered, lo, hi);
    ErrorMetrics b = restrict_to(*r.filtered, u.mesh.a_d(), lo);
    const ErrorMetrics br = restrict_to(*r.filtered, hi, u.mesh.b_d());
    b.linf = std::max(b.linf, br.linf);
    b.l2 = std::hypot(b.l2, br.l2);
    r.boundary = b;
    write_csv(r.csv, r, r.dg, &*r.filtered);
  });

  // Filter coefficient dumps.
  std::vector<fs::path> written;
  for (const Run& r : runs) written.push_back(r.csv);
  if (!config.filters.empty()) {
    fs::create_directories(out / "filters");
    for (int d : config.degrees) {
      std::vector<std::pair<FilterFamily, Side>> wanted{{FilterFamily::Symmetric, Side::Symmetric}};
      for (const std::string& f : config.filters) {
        const FilterFamily fam = parse_family(f);
        if (fam != FilterFamily::Symmetric) {
          wanted.emplace_back(fam, Side::Left);
          wanted.emplace_back(fam, Side::Right);
        }
      }
      for (const auto& [fam, side] : wanted) {
        const fs::path p = out / "filters" /
                           (std::string(to_string(fam)) + "_d" + std::to_string(d) + "_" + std::string(to_string(side)) + ".json");
        if (std::find(written.begin(), written.end(), p) != written.end()) continue;
        std::ofstream os(p);
        os << dump_filter(filter_catalog(fam, d, side)).dump(1) << '\n';
        written.push_back(p);
      }
    }
  }

  // Convergence summary; orders fitted per (d, filter, pipeline).
  std::map<std::tuple<int, std::string, std::string>, std::vector<const Run*>> groups;
  for (const Run& r : runs) groups[{r.d, r.filter, r.pipeline}].push_back(&r);
  json summary;
  summary["example"] = config.example;
  summary["runs"] = json::array();
  summary["orders"] = json::array();
  std::ofstream csv(out / "summary.csv");
  csv << "example,d,filter,pipeline,N,h,dg_l2,dg_linf,filtered_l2,filtered_linf,interior_l2,interior_linf,"
         "boundary_linf,dg_order,filtered_order,interior_order\n";
  auto opt = [](const std::optional<ErrorMetrics>& m, bool l2) { return m ? num(l2 ? m->l2 : m->linf) : std::string(); };
  for (const auto& [key, members] : groups) {
    std::vector<double> hs, dg, fl, in;
    for (const Run* r : members) {
      hs.push_back(1.0 / r->n);
      dg.push_back(r->dg.l2);
      if (r->filtered) fl.push_back(r->filtered->l2);
      if (r->interior) in.push_back(r->interior->l2);
    }
    auto order = [&](const std::vector<double>& e) -> std::optional<double> {
      if (e.size() < 2 || e.size() != hs.size()) return std::nullopt;
      for (double v : e)
        if (!(v > 0.0)) return std::nullopt;
      return fitted_order(hs, e);
    };
    const auto o_dg = order(dg), o_fl = order(fl), o_in = order(in);
    auto onum = [](const std::optional<double>& o) { return o ? num(*o) : std::string(); };
    for (const Run* r : members) {
      const double h = (ex.b - ex.a).to_double() / r->n;
      csv << config.example << ',' << r->d << ',' << r->filter << ',' << r->pipeline << ',' << r->n << ','
          << num(h) << ',' << num(r->dg.l2) << ',' << num(r->dg.linf) << ',' << opt(r->filtered, true) << ','
          << opt(r->filtered, false) << ',' << opt(r->interior, true) << ',' << opt(r->interior, false) << ','
          << opt(r->boundary, false) << ',' << onum(o_dg) << ',' << onum(o_fl) << ',' << onum(o_in) << '\n';
      json row{{"d", r->d}, {"filter", r->filter}, {"pipeline", r->pipeline}, {"N", r->n},
               {"dg_l2", r->dg.l2}, {"dg_linf", r->dg.linf}, {"csv", r->csv.filename().string()}};
      if (r->filtered) row["filtered_l2"] = r->filtered->l2, row["filtered_linf"] = r->filtered->linf;
      if (r->interior) row["interior_l2"] = r->interior->l2, row["interior_linf"] = r->interior->linf;
      if (r->boundary) row["boundary_linf"] = r->boundary->linf;
      summary["runs"].push_back(std::move(row));
    }
    json o{{"d", std::get<0>(key)}, {"filter", std::get<1>(key)}, {"pipeline", std::get<2>(key)}};
    o["dg_l2"] = o_dg ? json(*o_dg) : json(nullptr);
    o["filtered_l2"] = o_fl ? json(*o_fl) : json(nullptr);
    o["interior_l2"] = o_in ? json(*o_in) : json(nullptr);
    summary["orders"].push_back(std::move(o));
  }
  std::ofstream(out / "summary.json") << summary.dump(1) << '\n';
  written.push_back(out / "summary.csv");
  written.push_back(out / "summary.json");
  return written;
}

}  // namespace psiac::cli
