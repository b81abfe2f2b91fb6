#pragma once

// Command-line surface: generate | analyze | nibble | pack | oracle |
// verify | bench. Graphs travel as ".og" text files; results as JSON.
// Exit codes: 0 = target met / consistent, 2 = target unmet, 1 = usage or
// invariant error.
//
// Every run takes one instance source: --in <file.og> or an inline
// generator (--family with --n/--k/--sizes/--gen-seed). The algorithm seed
// is --seed; all phase randomness derives from it by named substreams.

#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "oripack/generators.hpp"
#include "oripack/nibble.hpp"
#include "oripack/oracle.hpp"
#include "oripack/packing.hpp"
#include "oripack/report_json.hpp"
#include "oripack/sha256.hpp"
#include "oripack/triangle_analysis.hpp"

namespace oripack::cli {

using nlohmann::json;

namespace detail {

struct InstanceOptions {
  std::string in_path;
  std::string family;
  Vertex n{0};
  int k{0};
  std::vector<Vertex> sizes;
  std::uint64_t gen_seed{0};
};

inline void add_instance_options(CLI::App* app, InstanceOptions& opts) {
  app->add_option("--in", opts.in_path, "input graph (.og file)");
  app->add_option("--family", opts.family,
                  "generator family: rotational|near_regular|random_tournament|transitive|"
                  "extremal_thm1|layered_circulant|triangle_free_circulant");
  app->add_option("--n", opts.n, "vertex count for the generator");
  app->add_option("--gen-k", opts.k, "family parameter (extremal_thm1: n = 18k+3)");
  app->add_option("--sizes", opts.sizes, "class sizes s0,s1,s2 (layered_circulant)")
      ->delimiter(',');
  app->add_option("--gen-seed", opts.gen_seed, "generator seed (random_tournament)");
}

inline OrientedGraph load_instance(const InstanceOptions& opts) {
  const bool has_file = !opts.in_path.empty();
  const bool has_family = !opts.family.empty();
  if (has_file == has_family)
    throw CLI::ValidationError("instance", "give exactly one of --in or --family");
  if (has_file) {
    std::ifstream is(opts.in_path);
    if (!is) throw CLI::ValidationError("instance", "cannot open " + opts.in_path);
    return read_og(is);
  }
  auto family = parse_family(opts.family);
  if (!family) throw CLI::ValidationError("instance", "unknown family " + opts.family);
  InstanceSpec spec;
  spec.family = *family;
  spec.n = opts.n;
  spec.k = opts.k;
  spec.seed = opts.gen_seed;
  if (spec.family == Family::layered_circulant) {
    if (opts.sizes.size() != 3)
      throw CLI::ValidationError("instance", "layered_circulant needs --sizes s0,s1,s2");
    spec.sizes = {opts.sizes[0], opts.sizes[1], opts.sizes[2]};
  }
  return generate(spec);
}

inline void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw std::runtime_error("cannot write " + out_path);
  os << text;
}

inline Fraction parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash != std::string::npos) {
    const long long num = std::stoll(s.substr(0, slash));
    const long long den = std::stoll(s.substr(slash + 1));
    return Fraction(num, den);
  }
  const double x = std::stod(s);
  return Fraction(static_cast<long long>(x * 1000000.0 + 0.5), 1000000);
}

inline json config_to_json(const PackingConfig& c) {
  return json{{"c", c.c},
              {"c2", c.c2},
              {"nibble_gamma", c.nibble_gamma},
              {"nibble_max_bites", c.nibble_max_bites},
              {"nibble_eps", c.nibble_eps},
              {"slack_C", c.slack_C},
              {"long_M", c.long_M},
              {"delta_long", c.delta_long},
              {"one_factor_T", c.one_factor_T},
              {"goodness_a", std::to_string(c.goodness_a.num) + "/" +
                                 std::to_string(c.goodness_a.den)}};
}

}  // namespace detail

// Re-validates a packing report against a graph; returns the problems found.
inline std::vector<std::string> verify_report_against(const OrientedGraph& g, const json& report) {
  std::vector<std::string> problems;
  if (report.contains("instance_sha256")) {
    const std::string want = report["instance_sha256"].get<std::string>();
    if (!want.empty() && want != sha256_hex(to_og_string(g)))
      problems.push_back("instance_sha256 mismatch: report does not describe this graph");
  }
  CyclePacking packing;
  packing.host_n = g.n();
  if (report.contains("n") && report["n"].get<Vertex>() != g.n())
    problems.push_back("vertex count mismatch");
  for (const auto& cyc : report.value("cycles", json::array()))
    packing.cycles.push_back(cyc.get<std::vector<Vertex>>());
  for (auto& p : packing_violations(g, packing)) problems.push_back(p);
  if (problems.empty() && report.contains("uncovered")) {
    auto claimed = report["uncovered"].get<std::vector<Vertex>>();
    std::sort(claimed.begin(), claimed.end());
    auto actual = packing.uncovered();
    if (claimed != actual) problems.push_back("uncovered list does not match the cycle list");
  }
  return problems;
}

inline int run(const std::vector<std::string>& args) {
  CLI::App app{"cycle packings in oriented graphs with near-half semidegree"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  auto* gen_cmd = app.add_subcommand("generate", "emit an instance as .og text");
  detail::InstanceOptions gen_opts;
  std::string gen_out;
  {
    gen_cmd->add_option("--family", gen_opts.family, "instance family")->required();
    gen_cmd->add_option("--n", gen_opts.n, "vertex count");
    gen_cmd->add_option("--k", gen_opts.k, "k parameter (extremal_thm1)");
    gen_cmd->add_option("--sizes", gen_opts.sizes, "sizes s0,s1,s2")->delimiter(',');
    gen_cmd->add_option("--seed", gen_opts.gen_seed, "generator seed");
    gen_cmd->add_option("--out", gen_out, "output path (default stdout)");
  }

  // analyze -----------------------------------------------------------------
  auto* an_cmd = app.add_subcommand("analyze", "degree profile, triangle counts, goodness");
  detail::InstanceOptions an_opts;
  std::string an_a = "1/8", an_out;
  detail::add_instance_options(an_cmd, an_opts);
  an_cmd->add_option("--a", an_a, "goodness threshold (fraction p/q or decimal)");
  an_cmd->add_option("--out", an_out, "output path (default stdout)");

  // nibble ------------------------------------------------------------------
  auto* nib_cmd = app.add_subcommand("nibble", "run the semi-random nibble, dump the trace");
  detail::InstanceOptions nib_opts;
  double nib_eps = 0.05, nib_c2 = 0.5, nib_gamma = 0.9;
  int nib_max_bites = 200;
  std::uint64_t nib_seed = 0;
  std::string nib_out;
  bool nib_greedy = false;
  detail::add_instance_options(nib_cmd, nib_opts);
  nib_cmd->add_option("--eps", nib_eps, "target uncovered fraction");
  nib_cmd->add_option("--c2", nib_c2, "first-bite density");
  nib_cmd->add_option("--gamma", nib_gamma, "bite probability decay");
  nib_cmd->add_option("--max-bites", nib_max_bites, "bite cap");
  nib_cmd->add_option("--seed", nib_seed, "seed");
  nib_cmd->add_flag("--greedy", nib_greedy, "append greedy completion");
  nib_cmd->add_option("--out", nib_out, "output path (default stdout)");

  // pack --------------------------------------------------------------------
  auto* pack_cmd = app.add_subcommand("pack", "run a packing pipeline");
  detail::InstanceOptions pack_opts;
  std::string pack_mode = "triangles", pack_report_path, pack_lengths;
  int pack_k = 3;
  std::uint64_t pack_seed = 0;
  PackingConfig pack_config;
  detail::add_instance_options(pack_cmd, pack_opts);
  pack_cmd->add_option("--mode", pack_mode, "triangles|k-cycles|prescribed|one-factor|long");
  pack_cmd->add_option("--lengths", pack_lengths, "comma-separated cycle lengths");
  pack_cmd->add_option("--k", pack_k, "cycle length for k-cycles mode");
  pack_cmd->add_option("--seed", pack_seed, "pipeline seed");
  pack_cmd->add_option("--c2", pack_config.c2, "reserve-bite density");
  pack_cmd->add_option("--slack-c", pack_config.slack_C, "allowed uncovered count (prescribed)");
  pack_cmd->add_option("--gamma", pack_config.nibble_gamma, "nibble decay");
  pack_cmd->add_option("--eps", pack_config.nibble_eps, "nibble handoff fraction");
  pack_cmd->add_option("--long-m", pack_config.long_M, "long-length threshold M");
  pack_cmd->add_option("--report", pack_report_path, "write the JSON report here");

  // oracle ------------------------------------------------------------------
  auto* or_cmd = app.add_subcommand("oracle", "exact small-instance answers");
  detail::InstanceOptions or_opts;
  std::string or_mode = "max-triangles", or_lengths, or_out;
  detail::add_instance_options(or_cmd, or_opts);
  or_cmd->add_option("--mode", or_mode, "max-triangles|feasible|count");
  or_cmd->add_option("--lengths", or_lengths, "lengths for feasible mode");
  or_cmd->add_option("--out", or_out, "output path (default stdout)");

  // verify ------------------------------------------------------------------
  auto* ver_cmd = app.add_subcommand("verify", "re-validate a report against a graph");
  std::string ver_report, ver_graph;
  ver_cmd->add_option("--report", ver_report, "packing report (JSON)")->required();
  ver_cmd->add_option("--graph", ver_graph, "instance (.og)")->required();

  // bench -------------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "fan out seeded pipeline runs and aggregate");
  detail::InstanceOptions bench_opts;
  std::string bench_mode = "triangles", bench_format = "json", bench_out, bench_lengths;
  int bench_trials = 10, bench_jobs = 1, bench_k = 3;
  std::uint64_t bench_seed = 0;
  detail::add_instance_options(bench_cmd, bench_opts);
  bench_cmd->add_option("--mode", bench_mode, "pipeline mode, as in pack");
  bench_cmd->add_option("--lengths", bench_lengths, "lengths for prescribed/one-factor/long");
  bench_cmd->add_option("--k", bench_k, "k for k-cycles");
  bench_cmd->add_option("--trials", bench_trials, "number of seeded runs");
  bench_cmd->add_option("--jobs", bench_jobs, "worker threads");
  bench_cmd->add_option("--seed", bench_seed, "base seed (trial i uses seed+i)");
  bench_cmd->add_option("--format", bench_format, "json|tsv");
  bench_cmd->add_option("--out", bench_out, "output path (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto parse_lengths = [](const std::string& csv) {
    std::vector<int> lens;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) lens.push_back(std::stoi(item));
    return lens;
  };

  try {
    if (gen_cmd->parsed()) {
      detail::InstanceOptions opts = gen_opts;
      OrientedGraph g = detail::load_instance(opts);
      detail::write_output(gen_out, to_og_string(g));
      return 0;
    }

    if (an_cmd->parsed()) {
      OrientedGraph g = detail::load_instance(an_opts);
      const auto prof = semidegree_profile(g);
      const Fraction a = detail::parse_fraction(an_a);
      const auto goodness = classify_edges(g, a);
      const auto band = count_tri_band_check(g);
      long long good_edges = 0, bad_edges = 0;
      // histogram of per-edge triangle counts in units of the threshold a*n
      std::vector<long long> histogram(6, 0);  // [0, a/2, a, 2a, 4a, 8a+) * n
      const double an = a.value() * static_cast<double>(g.n());
      for (const auto& [key, count] : goodness.per_edge_count) {
        (void)key;
        if (count * a.den >= a.num * static_cast<long long>(g.n()))
          ++good_edges;
        else
          ++bad_edges;
        const double x = static_cast<double>(count);
        int bucket = 0;
        if (x >= 8 * an)
          bucket = 5;
        else if (x >= 4 * an)
          bucket = 4;
        else if (x >= 2 * an)
          bucket = 3;
        else if (x >= an)
          bucket = 2;
        else if (x >= an / 2)
          bucket = 1;
        ++histogram[bucket];
      }
      long long max_bad_for = 0;
      for (const auto& vec : goodness.bad_for)
        max_bad_for = std::max<long long>(max_bad_for, static_cast<long long>(vec.size()));
      json j{{"n", g.n()},
             {"m", g.m()},
             {"is_tournament", is_tournament(g)},
             {"min_out", prof.min_out},
             {"min_in", prof.min_in},
             {"min_semi", prof.min_semi},
             {"slack_c", std::to_string(prof.slack_c.num) + "/" +
                             std::to_string(prof.slack_c.den)},
             {"total_cyclic_triangles", total_cyclic_triangles(g)},
             {"per_vertex_band",
              {{"lo", band.lo},
               {"hi", band.hi},
               {"min_count", band.min_count},
               {"max_count", band.max_count},
               {"all_within", band.all_within}}},
             {"goodness",
              {{"a", an_a},
               {"good_edges", good_edges},
               {"bad_edges", bad_edges},
               {"histogram_buckets", "0, a/2, a, 2a, 4a, 8a (times n)"},
               {"histogram", histogram},
               {"max_bad_for_vertex", max_bad_for}}}};
      detail::write_output(an_out, j.dump(2));
      return 0;
    }

    if (nib_cmd->parsed()) {
      OrientedGraph g = detail::load_instance(nib_opts);
      const Hypergraph h = triangle_hypergraph(g);
      NibbleSchedule sched{nib_c2, nib_gamma, nib_max_bites};
      NibbleTrace trace = run_nibble(h, nib_eps, sched, nib_seed);
      if (nib_greedy) {
        trace.final_matching = greedy_complete(h, trace.final_matching, nib_seed);
        std::vector<char> covered(h.n(), 0);
        for (std::size_t e : trace.final_matching)
          for (Vertex v : h.edge(e)) covered[v] = 1;
        trace.uncovered.clear();
        for (Vertex v = 0; v < h.n(); ++v)
          if (!covered[v]) trace.uncovered.push_back(v);
      }
      detail::write_output(nib_out, trace_to_json(trace, g.n()).dump(2));
      return 0;
    }

    if (pack_cmd->parsed()) {
      OrientedGraph g = detail::load_instance(pack_opts);
      const std::vector<int> lens = parse_lengths(pack_lengths);
      PackingReport report;
      if (pack_mode == "triangles")
        report = pack_triangles(g, pack_seed, pack_config);
      else if (pack_mode == "k-cycles")
        report = pack_k_cycles(g, pack_k, pack_seed, pack_config);
      else if (pack_mode == "prescribed")
        report = pack_prescribed(g, lens, pack_seed, pack_config);
      else if (pack_mode == "one-factor")
        report = pack_one_factor(g, lens, pack_seed, pack_config);
      else if (pack_mode == "long")
        report = pack_long_cycles(g, lens, pack_seed, pack_config);
      else
        throw CLI::ValidationError("pack", "unknown mode " + pack_mode);
      report.instance_sha256 = sha256_hex(to_og_string(g));
      json j = report_to_json(report, "pack --mode " + pack_mode,
                              detail::config_to_json(pack_config));
      if (!pack_report_path.empty()) detail::write_output(pack_report_path, j.dump(2));
      std::cout << "mode=" << pack_mode << " n=" << g.n()
                << " cycles=" << report.packing.cycles.size()
                << " uncovered=" << report.uncovered.size()
                << " target_met=" << (report.target_met ? "yes" : "no")
                << " wall_ms=" << report.wall_ms << '\n';
      return report.target_met ? 0 : 2;
    }

    if (or_cmd->parsed()) {
      OrientedGraph g = detail::load_instance(or_opts);
      json j;
      if (or_mode == "max-triangles") {
        auto [size, packing] = oracle_max_triangle_packing(g);
        j["max_triangles"] = size;
        j["covered"] = 3 * size;
        json cycles = json::array();
        for (const auto& t : packing) cycles.push_back(t);
        j["packing"] = cycles;
        std::cout << size << '\n';
      } else if (or_mode == "feasible") {
        auto witness = oracle_prescribed_feasible(g, parse_lengths(or_lengths));
        j["feasible"] = witness.has_value();
        if (witness) {
          json cycles = json::array();
          for (const auto& cyc : *witness) cycles.push_back(cyc);
          j["witness"] = cycles;
        }
        std::cout << (witness ? "feasible" : "infeasible") << '\n';
      } else if (or_mode == "count") {
        const long long count = count_perfect_packings(g);
        j["max_packing_count"] = count;
        std::cout << count << '\n';
      } else {
        throw CLI::ValidationError("oracle", "unknown mode " + or_mode);
      }
      if (!or_out.empty()) detail::write_output(or_out, j.dump(2));
      return 0;
    }

    if (ver_cmd->parsed()) {
      std::ifstream gs(ver_graph);
      if (!gs) throw std::runtime_error("cannot open " + ver_graph);
      OrientedGraph g = read_og(gs);
      std::ifstream rs(ver_report);
      if (!rs) throw std::runtime_error("cannot open " + ver_report);
      json report = json::parse(rs);
      auto problems = verify_report_against(g, report);
      if (problems.empty()) {
        std::cout << "ok\n";
        return 0;
      }
      for (const auto& p : problems) std::cerr << p << '\n';
      return 1;
    }

    if (bench_cmd->parsed()) {
      OrientedGraph g = detail::load_instance(bench_opts);
      const std::vector<int> lens = parse_lengths(bench_lengths);
      struct Trial {
        std::uint64_t seed;
        bool met;
        std::size_t uncovered;
        long long wall_ms;
      };
      std::vector<Trial> trials(static_cast<std::size_t>(bench_trials));
      std::mutex next_mutex;
      int next = 0;
      auto worker = [&]() {
        for (;;) {
          int i;
          {
            std::lock_guard<std::mutex> lock(next_mutex);
            if (next >= bench_trials) return;
            i = next++;
          }
          const std::uint64_t seed = bench_seed + static_cast<std::uint64_t>(i);
          PackingReport rep;
          if (bench_mode == "triangles")
            rep = pack_triangles(g, seed);
          else if (bench_mode == "k-cycles")
            rep = pack_k_cycles(g, bench_k, seed);
          else if (bench_mode == "prescribed")
            rep = pack_prescribed(g, lens, seed);
          else if (bench_mode == "one-factor")
            rep = pack_one_factor(g, lens, seed);
          else if (bench_mode == "long")
            rep = pack_long_cycles(g, lens, seed);
          trials[static_cast<std::size_t>(i)] =
              Trial{seed, rep.target_met, rep.uncovered.size(), rep.wall_ms};
        }
      };
      std::vector<std::thread> pool;
      for (int j = 0; j < std::max(1, bench_jobs); ++j) pool.emplace_back(worker);
      for (auto& t : pool) t.join();

      int met = 0;
      std::vector<std::size_t> uncov;
      for (const auto& t : trials) {
        met += t.met;
        uncov.push_back(t.uncovered);
      }
      std::sort(uncov.begin(), uncov.end());
      if (bench_format == "tsv") {
        std::ostringstream os;
        os << "seed\tuncovered\ttarget_met\twall_ms\n";
        for (const auto& t : trials)
          os << t.seed << '\t' << t.uncovered << '\t' << t.met << '\t' << t.wall_ms << '\n';
        detail::write_output(bench_out, os.str());
      } else {
        json per = json::array();
        for (const auto& t : trials)
          per.push_back({{"seed", t.seed},
                         {"uncovered", t.uncovered},
                         {"target_met", t.met},
                         {"wall_ms", t.wall_ms}});
        json j{{"mode", bench_mode},
               {"trials", bench_trials},
               {"target_met", met},
               {"median_uncovered", uncov.empty() ? 0 : uncov[uncov.size() / 2]},
               {"runs", per}};
        detail::write_output(bench_out, j.dump(2));
      }
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace oripack::cli
