#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <thread>

#include "betamatch/builtin_fields.hpp"
#include "betamatch/io.hpp"
#include "betamatch/multinacci.hpp"
#include "betamatch/quadratic.hpp"
#include "betamatch/stats.hpp"
#include "betamatch/transitions.hpp"
#include "betamatch/verify.hpp"

using namespace betamatch;

namespace {

int depth_cap() {
  if (const char* env = std::getenv("BETAMATCH_DEPTH_CAP")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return kDefaultDepthCap;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("BadOutput", "cannot open output file " + path);
  out << text;
}

bool is_usage_error(const Error& e) {
  static const char* kUsage[] = {"BadRational", "AlphaOutOfRange", "BadFieldFile",
                                 "BadBound",    "BadDigits",       "BadOutput",
                                 "BadBase",     "DepthTooLarge"};
  for (const char* u : kUsage)
    if (e.code == u) return true;
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact matching analysis for beta x + alpha (mod 1) maps"};
  app.require_subcommand(1);

  std::string field_arg, alpha_arg, out_arg, json_out, plot_out, base_arg, fit_arg;
  std::string map_kind = "g";
  int depth = 8, bound = 30, steps = 10, digits = 12;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  bool as_json = false, with_trace = false, no_gateways = false;
  bool indexing_from_one = false;
  int only = 0;

  auto add_field = [&](CLI::App* cmd) {
    cmd->add_option("--field", field_arg, "field file or builtin name")->required();
  };
  auto add_alpha = [&](CLI::App* cmd) {
    cmd->add_option("--alpha", alpha_arg, "shift parameter as p/q")->required();
  };

  auto* orbit = app.add_subcommand("orbit", "critical orbits of 0+ and 0-");
  add_field(orbit);
  add_alpha(orbit);
  orbit->add_option("--steps", steps, "iterations");
  orbit->add_flag("--trace", with_trace, "include the difference trace");
  orbit->add_option("--out", out_arg, "output file (default stdout)");

  auto* match = app.add_subcommand("match", "matching index of the critical orbits");
  add_field(match);
  add_alpha(match);
  match->add_option("--bound", bound, "iteration bound");
  match->add_flag("--json", as_json, "emit JSON");
  match->add_option("--out", out_arg, "output file");

  auto* markov = app.add_subcommand("markov", "detect finite critical orbits");
  add_field(markov);
  add_alpha(markov);
  markov->add_option("--bound", bound, "iteration bound");

  auto* dens = app.add_subcommand("density", "truncated invariant density");
  add_field(dens);
  add_alpha(dens);
  dens->add_option("--depth", depth, "truncation depth");
  dens->add_flag("--from-one", indexing_from_one, "start the sums at n=1");
  dens->add_option("--out", out_arg, "output file");

  auto* sw = app.add_subcommand("sweep", "enumerate matching intervals exactly");
  add_field(sw);
  sw->add_option("--depth", depth, "subdivision depth");
  sw->add_flag("--json", as_json, "emit JSON instead of CSV");
  sw->add_option("--out", out_arg, "output file");
  sw->add_option("--jobs", jobs, "worker threads");
  sw->add_option("--digits", digits, "decimal digits in output");

  auto* st = app.add_subcommand("stats", "interval statistics and box dimension");
  add_field(st);
  st->add_option("--depth", depth, "sweep depth");
  st->add_option("--base", base_arg, "log-bin base as p/q (default beta)");
  st->add_option("--fit", fit_arg, "fit range lo:hi");
  st->add_option("--out", out_arg, "stats JSON output file");
  st->add_option("--plot-data", plot_out, "two-column TSV (n, log_b a_n)");
  st->add_option("--jobs", jobs, "worker threads");

  auto* gr = app.add_subcommand("graph", "difference transition graph");
  add_field(gr);
  gr->add_option("--depth", depth, "sweep depth feeding the graph");
  gr->add_option("--dot", out_arg, "DOT output file (default stdout)");
  gr->add_option("--json", json_out, "adjacency JSON output file");
  gr->add_flag("--no-gateways", no_gateways, "collapse pre-matching boxes");
  gr->add_option("--jobs", jobs, "worker threads");

  auto* quad = app.add_subcommand("quadratic", "plateau circle maps for quadratic slopes");
  add_field(quad);
  add_alpha(quad);
  quad->add_option("--map", map_kind, "which map: g, f1, or f2")
      ->check(CLI::IsMember({"g", "f1", "f2"}));
  quad->add_option("--out", out_arg, "output file");

  auto* pred = app.add_subcommand("predict", "multinacci matching predictions");
  add_field(pred);
  add_alpha(pred);
  pred->add_option("--trace-out", json_out, "fiber trace JSON (tribonacci)");
  pred->add_option("--bound", bound, "trace depth");

  auto* ver = app.add_subcommand("verify", "run the built-in reproduction suite");
  ver->add_option("--only", only, "run a single criterion");
  ver->add_option("--jobs", jobs, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (ver->parsed()) {
      VerifyOptions opt;
      opt.jobs = jobs;
      if (only > 0) opt.only = only;
      auto results = run_verification(opt);
      std::cout << format_results(results);
      return all_gated_passed(results) ? 0 : 1;
    }

    NumberField f = io::resolve_field(field_arg);
    FieldElement alpha;
    if (!alpha_arg.empty()) f.from_rational(parse_rational(alpha_arg));
    if (!alpha_arg.empty()) alpha = f.from_rational(parse_rational(alpha_arg));
    if (!alpha_arg.empty() &&
        (alpha.sign() < 0 || compare(alpha, f.one()) > 0))
      throw Error("AlphaOutOfRange", "alpha must lie in [0,1]");

    if (orbit->parsed()) {
      write_output(out_arg, io::orbit_json(f, alpha, steps, with_trace).dump(2) + "\n");
    } else if (match->parsed()) {
      auto mi = matching_index(f, alpha, bound);
      if (as_json) {
        io::json j;
        j["alpha"] = io::element_json(alpha);
        j["bound"] = bound;
        if (mi.matched_at) j["matched_at"] = *mi.matched_at;
        io::json tr = io::json::array();
        for (const auto& d : mi.difference_trace) tr.push_back(io::element_json(d));
        j["difference_trace"] = tr;
        write_output(out_arg, j.dump(2) + "\n");
      } else if (mi.matched_at) {
        write_output(out_arg, "matched at " + std::to_string(*mi.matched_at) + "\n");
      } else {
        write_output(out_arg, "no match within " + std::to_string(bound) + "\n");
      }
    } else if (markov->parsed()) {
      auto mk = markov_test(f, alpha, bound);
      if (mk.cycles) {
        std::cout << "finite orbits: plus preperiod " << mk.cycles->first.preperiod
                  << " period " << mk.cycles->first.period << ", minus preperiod "
                  << mk.cycles->second.preperiod << " period "
                  << mk.cycles->second.period << "\n";
      } else {
        std::cout << "not detected within " << bound << "\n";
      }
    } else if (dens->parsed()) {
      auto sf = density(f, alpha, depth,
                        indexing_from_one ? DensityIndexing::from_one
                                          : DensityIndexing::from_zero);
      io::json j;
      io::json bp = io::json::array();
      for (const auto& b : sf.breakpoints) bp.push_back(io::element_json(b));
      io::json vals = io::json::array();
      for (const auto& v : sf.values) vals.push_back(io::element_json(v));
      j["breakpoints"] = bp;
      j["values"] = vals;
      j["nonnegative"] = sf.nonnegative;
      j["raw_integral"] = io::element_json(sf.raw_integral);
      write_output(out_arg, j.dump(2) + "\n");
    } else if (sw->parsed()) {
      auto res = sweep(f, depth, jobs, depth_cap());
      write_output(out_arg, as_json ? io::sweep_json(res, digits).dump(2) + "\n"
                                    : io::sweep_csv(res, digits));
    } else if (st->parsed()) {
      auto res = sweep(f, depth, jobs, depth_cap());
      FieldElement base =
          base_arg.empty() ? f.beta() : f.from_rational(parse_rational(base_arg));
      std::optional<int> flo, fhi;
      if (!fit_arg.empty()) {
        auto colon = fit_arg.find(':');
        if (colon == std::string::npos)
          throw Error("BadBound", "--fit expects lo:hi");
        flo = std::stoi(fit_arg.substr(0, colon));
        fhi = std::stoi(fit_arg.substr(colon + 1));
      }
      auto hist = size_histogram(res, base);
      auto est = box_dimension_estimate(res, base, flo, fhi);
      write_output(out_arg, io::stats_json(hist, est).dump(2) + "\n");
      if (!plot_out.empty()) write_output(plot_out, io::plot_tsv(hist));
    } else if (gr->parsed()) {
      auto res = sweep(f, depth, jobs, depth_cap());
      auto g = build_graph(res);
      write_output(out_arg, export_dot(g, !no_gateways));
      if (!json_out.empty()) write_output(json_out, io::graph_json(g).dump(2) + "\n");
    } else if (quad->parsed()) {
      auto qc = quadratic_case(f);
      PlateauMap pm = map_kind == "f1"   ? plateau_map_f1(f, qc, alpha)
                      : map_kind == "f2" ? plateau_map_f2(f, qc, alpha)
                                         : plateau_map(f, qc, alpha);
      write_output(out_arg, io::plateau_json(f, pm).dump(2) + "\n");
    } else if (pred->parsed()) {
      auto p = predict_matching(f, alpha);
      if (p)
        std::cout << "predicted matching after " << *p << " steps\n";
      else
        std::cout << "no prediction\n";
      if (!json_out.empty())
        write_output(json_out, io::fiber_trace_json(f, alpha, bound).dump(2) + "\n");
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.code << ": " << e.what() << "\n";
    return is_usage_error(e) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
