// cheeger_lab: Cheeger constants of convex polygons and the
// Blaschke-Santalo diagram of (perimeter, Cheeger constant, area).
//
// Subcommands: cheeger, family, sample, diagram, verify, optimize.
// Exit codes: 0 ok, 1 verification found an outside point, 2 usage,
// 3 I/O failure, 4 degenerate or infeasible input.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cheegerlab/cheeger.hpp"
#include "cheegerlab/diagram.hpp"
#include "cheegerlab/errors.hpp"
#include "cheegerlab/families.hpp"
#include "cheegerlab/geometry.hpp"
#include "cheegerlab/json_io.hpp"
#include "cheegerlab/optimizer.hpp"
#include "cheegerlab/random_polygon.hpp"

namespace {

using namespace cheegerlab;

// Grammar-level errors, distinct from the library's domain exceptions so the
// two map to different exit codes.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("CHEEGER_LAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Index-sharded map; body(i) must write only into slot i, which keeps the
// output independent of the thread count.
template <typename Body>
void parallel_for(std::size_t count, int threads, const Body& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(threads, 1), count ? count : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

BandSpec parse_band(const std::string& s) {
  if (s == "convex") return band(ShapeClass::Convex);
  if (s == "simply-connected") return band(ShapeClass::SimplyConnected);
  if (s.rfind("ngon:", 0) == 0) {
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(s.substr(5), &used);
      if (used != s.size() - 5) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw UsageError("band: cannot parse side count in \"" + s + "\"");
    }
    if (n < 3) throw UsageError("band: ngon needs at least 3 sides");
    return band(ShapeClass::NGon, n);
  }
  throw UsageError("band: expected convex, simply-connected, or ngon:<n>, got \"" +
                   s + "\"");
}

// Descriptor grammar: kind:key=value,key=value
//   stadium:t=<v>  cup:d=<v>  regular:N=<n>  stretch:N=<n>,delta=<v>
//   vdelta:N=<n>,delta=<v>  wmerge:N=<n>,s=<v>  path:p=<v>,t=<v>
struct Descriptor {
  std::string kind;
  std::vector<std::pair<std::string, double>> args;

  double get(const std::string& key) const {
    for (const auto& [k, v] : args) {
      if (k == key) return v;
    }
    throw UsageError("family descriptor \"" + kind + "\" is missing key \"" +
                     key + "\"");
  }

  int get_int(const std::string& key) const {
    const double v = get(key);
    const int n = static_cast<int>(std::lround(v));
    if (std::abs(v - n) > 0.0) {
      throw UsageError("family descriptor key \"" + key +
                       "\" must be an integer");
    }
    return n;
  }
};

Descriptor parse_descriptor(const std::string& text) {
  Descriptor d;
  const std::size_t colon = text.find(':');
  d.kind = text.substr(0, colon);
  if (d.kind.empty()) throw UsageError("empty family descriptor");
  std::size_t pos = (colon == std::string::npos) ? text.size() : colon + 1;
  while (pos < text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw UsageError("bad descriptor item \"" + item + "\" in \"" + text +
                       "\" (want key=value)");
    }
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(item.substr(eq + 1), &used);
      if (used != item.size() - eq - 1) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      throw UsageError("cannot parse number in descriptor item \"" + item +
                       "\"");
    }
    d.args.emplace_back(item.substr(0, eq), value);
    pos = comma + 1;
  }
  return d;
}

struct FamilyEval {
  DiagramPoint point;
  std::optional<ConvexPolygon> polygon;  // discretized for smooth shapes
};

FamilyEval eval_family(const std::string& text, int resolution,
                       bool want_polygon) {
  const Descriptor d = parse_descriptor(text);
  FamilyEval out;
  if (d.kind == "stadium" || d.kind == "cup") {
    const SmoothFamilyPoint s =
        d.kind == "stadium" ? stadium(d.get("t")) : cup_body(d.get("d"));
    out.point = {s.x, s.y, text, std::nullopt};
    if (want_polygon) {
      out.polygon = d.kind == "stadium" ? stadium_polygon(s.x, resolution)
                                        : cup_polygon(s.x, resolution);
    }
    return out;
  }
  if (d.kind == "path") {
    const double p = d.get("p");
    const double t = d.get("t");
    out.point = minkowski_path(p, t, resolution);
    out.point.source = text;
    if (want_polygon) {
      out.polygon = minkowski_sum(scale(stadium_polygon(p, resolution), t),
                                  scale(cup_polygon(p, resolution), 1.0 - t));
    }
    return out;
  }

  ConvexPolygon poly = [&] {
    if (d.kind == "regular") return regular_polygon(d.get_int("N"));
    if (d.kind == "stretch") {
      return stretched_regular(d.get_int("N"), d.get("delta"));
    }
    if (d.kind == "vdelta") {
      return circumscribed_extension(d.get_int("N"), d.get("delta"));
    }
    if (d.kind == "wmerge") {
      return merge_sides_family(d.get_int("N"), d.get("s"));
    }
    throw UsageError("unknown family kind \"" + d.kind + "\"");
  }();
  out.point = diagram_point(poly, text);
  out.polygon = std::move(poly);
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  double a = 0.0, b = 0.0, step = 0.0;
  char trailing = '\0';
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &trailing) !=
      3) {
    throw UsageError("grid: expected a:b:step, got \"" + text + "\"");
  }
  if (!(step > 0.0) || b < a) {
    throw UsageError("grid: need a <= b and step > 0");
  }
  if ((b - a) / step > 1e6) throw UsageError("grid: too many points");
  std::vector<double> grid;
  const double slack = 1e-9 * std::max(1.0, std::abs(b));
  for (double v = a; v <= b + slack; v += step) grid.push_back(v);
  return grid;
}

std::vector<std::string> split_descriptors(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t semi = text.find(';', pos);
    if (semi == std::string::npos) semi = text.size();
    const std::string item = text.substr(pos, semi - pos);
    if (!item.empty()) parts.push_back(item);
    pos = semi + 1;
  }
  return parts;
}

std::vector<DiagramPoint> sampled_points(int sides, int count,
                                         std::uint64_t seed, int threads) {
  const SamplerConfig cfg{sides, seed, count};
  if (count <= 0) throw UsageError("sample: count must be positive");
  std::vector<DiagramPoint> points(static_cast<std::size_t>(count));
  parallel_for(points.size(), threads, [&](std::size_t i) {
    const ConvexPolygon p = sample_item(cfg, static_cast<int>(i));
    char tag[64];
    std::snprintf(tag, sizeof tag, "valtr:n=%d,item=%zu", sides, i);
    points[i] = diagram_point(p, tag);
  });
  return points;
}

void emit_csv(const std::vector<DiagramPoint>& points,
              const std::string& out_path) {
  if (out_path.empty()) {
    write_points_csv(points, std::cout);
  } else {
    export_csv(points, out_path);
  }
}

nlohmann::ordered_json points_json(const std::vector<DiagramPoint>& points) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const DiagramPoint& pt : points) {
    nlohmann::ordered_json row{
        {"source", pt.source}, {"x", pt.x}, {"y", pt.y}};
    if (pt.cheeger_regular) row["cheeger_regular"] = *pt.cheeger_regular;
    arr.push_back(std::move(row));
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Cheeger constants of convex polygons and the Blaschke-Santalo "
      "diagram of (perimeter, Cheeger constant, area)"};
  app.require_subcommand(1);

  // cheeger
  std::string cheeger_in;
  std::string cheeger_out;
  CLI::App* cmd_cheeger = app.add_subcommand(
      "cheeger",
      "Cheeger constant and Cheeger set of one convex polygon via the "
      "inner-parallel-set characterization |Omega_-t| = pi t^2");
  cmd_cheeger->add_option("--in", cheeger_in, "polygon JSON file")->required();
  cmd_cheeger->add_option("--out", cheeger_out,
                          "write the result JSON here instead of stdout");

  // family
  std::string family_desc;
  std::string family_out;
  int family_resolution = 256;
  CLI::App* cmd_family = app.add_subcommand(
      "family",
      "Extremal shape families: stadiums Q_t, cup bodies C_d, regular and "
      "stretched polygons, circumscribed extensions V_delta, side-merging "
      "W_s, and stadium/cup Minkowski paths");
  cmd_family
      ->add_option("descriptor", family_desc,
                   "stadium:t=<v> | cup:d=<v> | regular:N=<n> | "
                   "stretch:N=<n>,delta=<v> | vdelta:N=<n>,delta=<v> | "
                   "wmerge:N=<n>,s=<v> | path:p=<v>,t=<v>")
      ->required();
  cmd_family->add_option("--resolution", family_resolution,
                         "boundary points for smooth-shape discretizations");
  cmd_family->add_option("--out", family_out, "write the polygon JSON here");

  // sample
  int sample_sides = 0;
  int sample_count = 0;
  std::uint64_t sample_seed = 1;
  std::string sample_out;
  int sample_threads = 0;
  CLI::App* cmd_sample = app.add_subcommand(
      "sample",
      "Random convex polygons (Valtr construction), area-normalized, mapped "
      "to diagram points x = P/sqrt(A), y = sqrt(A) h");
  cmd_sample->add_option("--sides", sample_sides, "vertex count")
      ->required()
      ->check(CLI::Range(3, 1 << 20));
  cmd_sample->add_option("--count", sample_count, "number of polygons")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_sample->add_option("--seed", sample_seed, "base seed (default 1)");
  cmd_sample->add_option("--out", sample_out, "CSV path (default stdout)");
  cmd_sample->add_option(
      "--threads", sample_threads,
      "worker threads (default CHEEGER_LAB_THREADS, then all cores)");

  // diagram
  std::string diagram_families;
  int diagram_samples = 0;
  int diagram_sides = 5;
  std::uint64_t diagram_seed = 1;
  std::string diagram_band = "convex";
  std::string diagram_out;
  std::string diagram_svg;
  bool diagram_unit_axes = false;
  int diagram_threads = 0;
  int diagram_resolution = 256;
  CLI::App* cmd_diagram = app.add_subcommand(
      "diagram",
      "Assemble diagram points from families and random samples; export CSV "
      "and an SVG scatter with the band curves y = x/2 + sqrt(pi) and f_N");
  cmd_diagram->add_option("--families", diagram_families,
                          "semicolon-separated family descriptors");
  cmd_diagram->add_option("--samples", diagram_samples,
                          "random polygons to add");
  cmd_diagram->add_option("--sides", diagram_sides,
                          "vertex count for --samples (default 5)");
  cmd_diagram->add_option("--seed", diagram_seed, "seed for --samples");
  cmd_diagram->add_option("--band", diagram_band,
                          "convex | simply-connected | ngon:<n>");
  cmd_diagram->add_option("--out", diagram_out, "CSV path (default stdout)");
  cmd_diagram->add_option("--svg", diagram_svg, "SVG scatter path");
  cmd_diagram->add_flag("--unit-square-axes", diagram_unit_axes,
                        "plot (2 sqrt(pi)/x, 2 sqrt(pi)/y) instead of (x, y)");
  cmd_diagram->add_option("--threads", diagram_threads, "worker threads");
  cmd_diagram->add_option("--resolution", diagram_resolution,
                          "boundary points for smooth-family members");

  // verify
  std::string verify_in;
  std::string verify_band;
  double verify_tol = 1e-9;
  CLI::App* cmd_verify = app.add_subcommand(
      "verify",
      "Check that every CSV diagram point lies in its band: x/2 + sqrt(pi) "
      "<= y <= x for convex sets, upper curve f_N for N-gons");
  cmd_verify->add_option("--in", verify_in, "points CSV")->required();
  cmd_verify->add_option("--band", verify_band,
                         "convex | simply-connected | ngon:<n>")
      ->required();
  cmd_verify->add_option("--tol", verify_tol,
                         "membership tolerance (default 1e-9)");

  // optimize
  int opt_sides = 0;
  double opt_perimeter = std::numeric_limits<double>::quiet_NaN();
  std::string opt_grid;
  int opt_starts = 8;
  std::uint64_t opt_seed = 1;
  std::string opt_format = "json";
  CLI::App* cmd_optimize = app.add_subcommand(
      "optimize",
      "Maximize h over unit-area N-gons of fixed perimeter with projected "
      "gradients of the shape derivative; traces the empirical upper "
      "boundary g_N where no closed form is known (odd N)");
  cmd_optimize->add_option("--sides", opt_sides, "vertex count")
      ->required()
      ->check(CLI::Range(3, 1024));
  cmd_optimize->add_option("--perimeter", opt_perimeter,
                           "target perimeter at unit area");
  cmd_optimize->add_option("--grid", opt_grid,
                           "a:b:step perimeter grid (boundary trace)");
  cmd_optimize->add_option("--starts", opt_starts, "multistart count");
  cmd_optimize->add_option("--seed", opt_seed, "multistart seed");
  cmd_optimize->add_option("--out", opt_format, "output format: json | csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_cheeger->parsed()) {
      const ConvexPolygon p = read_polygon_json(cheeger_in);
      const nlohmann::ordered_json doc = cheeger_result_json(cheeger(p));
      if (cheeger_out.empty()) {
        std::cout << doc.dump(2) << "\n";
      } else {
        std::ofstream out(cheeger_out, std::ios::binary);
        if (!out) throw IoError("cannot write: " + cheeger_out);
        out << doc.dump(2) << "\n";
      }
    } else if (cmd_family->parsed()) {
      const FamilyEval fam =
          eval_family(family_desc, family_resolution, !family_out.empty());
      nlohmann::ordered_json doc{{"descriptor", family_desc},
                                 {"x", fam.point.x},
                                 {"y", fam.point.y}};
      if (fam.point.cheeger_regular) {
        doc["cheeger_regular"] = *fam.point.cheeger_regular;
      }
      if (!family_out.empty()) {
        write_polygon_json(*fam.polygon, family_out);
        doc["polygon_file"] = family_out;
      }
      std::cout << doc.dump(2) << "\n";
    } else if (cmd_sample->parsed()) {
      const std::vector<DiagramPoint> points =
          sampled_points(sample_sides, sample_count, sample_seed,
                         resolve_threads(sample_threads));
      emit_csv(points, sample_out);
    } else if (cmd_diagram->parsed()) {
      const BandSpec spec = parse_band(diagram_band);
      std::vector<DiagramPoint> points;
      for (const std::string& desc : split_descriptors(diagram_families)) {
        points.push_back(eval_family(desc, diagram_resolution, false).point);
      }
      if (diagram_samples > 0) {
        const std::vector<DiagramPoint> cloud =
            sampled_points(diagram_sides, diagram_samples, diagram_seed,
                           resolve_threads(diagram_threads));
        points.insert(points.end(), cloud.begin(), cloud.end());
      }
      if (!diagram_svg.empty()) {
        export_svg_scatter(points, spec, diagram_svg, diagram_unit_axes);
      }
      if (!diagram_out.empty() || diagram_svg.empty()) {
        emit_csv(points, diagram_out);
      }
    } else if (cmd_verify->parsed()) {
      const BandSpec spec = parse_band(verify_band);
      const std::vector<DiagramPoint> points = read_points_csv(verify_in);
      int outside = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        const Classification c = classify(points[i], spec, verify_tol);
        if (c.kind == Membership::Outside) {
          ++outside;
          std::cerr << "row " << (i + 1) << " (source=" << points[i].source
                    << ", x=" << points[i].x << ", y=" << points[i].y
                    << "): outside the " << verify_band << " band by "
                    << c.violation << "\n";
        }
      }
      std::cout << nlohmann::ordered_json(
                       {{"checked", points.size()}, {"outside", outside}})
                       .dump()
                << "\n";
      if (outside > 0) return 1;
    } else if (cmd_optimize->parsed()) {
      if (opt_format != "json" && opt_format != "csv") {
        throw UsageError("optimize: --out must be json or csv");
      }
      OptimizerOptions opts;
      opts.starts = opt_starts;
      opts.seed = opt_seed;
      if (!opt_grid.empty()) {
        const std::vector<double> grid = parse_grid(opt_grid);
        const std::vector<DiagramPoint> points =
            trace_upper_boundary(opt_sides, grid, opts);
        if (opt_format == "csv") {
          write_points_csv(points, std::cout);
        } else {
          std::cout << points_json(points).dump(2) << "\n";
        }
      } else if (std::isfinite(opt_perimeter)) {
        const OptimizeResult res = maximize_h(opt_sides, opt_perimeter, opts);
        if (opt_format == "csv") {
          char tag[64];
          std::snprintf(tag, sizeof tag, "optimize:n=%d,p0=%.10g", opt_sides,
                        opt_perimeter);
          write_points_csv({diagram_point(res.polygon, tag)}, std::cout);
        } else {
          std::cout << optimize_result_json(res, opt_sides, opt_perimeter)
                           .dump(2)
                    << "\n";
        }
      } else {
        throw UsageError("optimize: need --perimeter or --grid");
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::logic_error& e) {
    // DegenerateInput, OddN/EvenN, DeltaTooSmall, InfeasibleTarget, ...
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
