#pragma once

// Command-line front end. The verdict (or primary result) is always the first
// stdout line; detail follows unless --quiet. Exit codes: 0 computation
// completed, 2 input or validation error, 3 resource cap exceeded.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dnacc/channel.hpp"
#include "dnacc/codec.hpp"
#include "dnacc/error.hpp"
#include "dnacc/io.hpp"
#include "dnacc/metrics.hpp"
#include "dnacc/model.hpp"
#include "dnacc/search.hpp"

namespace dnacc::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_internal = 1;
inline constexpr int exit_input = 2;
inline constexpr int exit_cap = 3;

namespace detail {

struct Report {
  std::string first;
  std::ostringstream detail;

  void emit(std::ostream& out, bool quiet) const {
    out << first << '\n';
    if (!quiet) out << detail.str();
  }
};

inline void write_bijection(std::ostream& os, const Message& a, const Message& b, const Bijection& pi) {
  for (std::size_t i = 0; i < pi.size(); ++i) os << "  " << a[i] << " -> " << b[pi[i]] << '\n';
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Parse, path + ": cannot open for writing");
  return f;
}

/// Header values from the input files (which must agree), then --params on top,
/// then L and M inferred from the first block when still missing.
inline io::PartialParams resolve(const std::vector<const io::TextFile*>& files, const std::string& flag) {
  io::PartialParams p;
  for (const auto* f : files) p.merge_consistent(f->header, f->name);
  if (!flag.empty()) p.override_with(io::PartialParams::parse(flag));
  for (const auto* f : files) {
    if (!p.L) p.L = io::first_length(*f);
    if (!p.M && !f->blocks.empty()) p.M = static_cast<int>(f->blocks.front().size());
  }
  return p;
}

inline Shape shape_of(const io::PartialParams& p) {
  if (!p.L || !p.l) throw Error(ErrorCode::InvalidParams, "missing parameter L or l");
  const Shape s{*p.L, *p.l};
  if (!s.valid()) throw Error(ErrorCode::InvalidParams, "need 0 < l < L <= 64");
  return s;
}

inline int count_of(const io::PartialParams& p) {
  if (!p.M) throw Error(ErrorCode::InvalidParams, "missing parameter M");
  return *p.M;
}

inline Restriction parse_restriction(const std::string& text) {
  if (text.empty() || text == "none") return Restriction::none();
  if (text == "distinct-data") return Restriction::distinct_data();
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::Parse, "--restrict expects r1,r2 or distinct-data");
  return Restriction::within(io::detail::parse_count("r1", text.substr(0, comma)),
                             io::detail::parse_count("r2", text.substr(comma + 1)));
}

inline std::string csv_field(const std::string& s) {
  return s.find(',') == std::string::npos ? s : "\"" + s + "\"";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"DNA-correcting code toolkit", "dnacc"};
  app.require_subcommand(1);

  std::string params_flag;
  bool quiet = false;
  std::string a_path, b_path, code_path, message_path, pool_path, out_path, provenance_path, table_path;
  std::string strategy_name = "exact", restrict_text, method = "matching", noise_name = "uniform";
  std::uint64_t seed = 0;
  std::uint64_t cap = default_space_cap;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--params", params_flag, "M=..,L=..,l=..,K=..,tau=p/q,ei=..,ed=..");
    sub->add_flag("--quiet", quiet, "print only the first line");
  };

  auto* verify = app.add_subcommand("verify", "check whether a code is DNA-correcting");
  verify->add_option("--code", code_path)->required();
  verify->add_option("--method", method, "matching | distance (e_d = 0 only)")
      ->check(CLI::IsMember({"matching", "distance"}));
  common(verify);

  auto* distance = app.add_subcommand("distance", "DNA-distance between two messages");
  distance->add_option("--a", a_path)->required();
  distance->add_option("--b", b_path)->required();
  common(distance);

  auto* min_distance = app.add_subcommand("min-distance", "minimum DNA-distance of a code");
  min_distance->add_option("--code", code_path)->required();
  common(min_distance);

  auto* intersect = app.add_subcommand("intersect", "decide whether two error balls meet");
  intersect->add_option("--a", a_path)->required();
  intersect->add_option("--b", b_path)->required();
  common(intersect);

  auto* oracle = app.add_subcommand("oracle-intersect", "brute-force ball intersection");
  oracle->add_option("--a", a_path)->required();
  oracle->add_option("--b", b_path)->required();
  oracle->add_option("--cap", cap, "maximum number of candidate pools");
  common(oracle);

  auto* simulate = app.add_subcommand("simulate", "sample a read pool from the channel");
  simulate->add_option("--message", message_path)->required();
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--out", out_path);
  simulate->add_option("--provenance", provenance_path);
  simulate->add_option("--noise", noise_name, "uniform | max")->check(CLI::IsMember({"uniform", "max"}));
  common(simulate);

  auto* member = app.add_subcommand("member", "test a pool for membership in a message's error ball");
  member->add_option("--pool", pool_path)->required();
  member->add_option("--message", message_path)->required();
  common(member);

  auto* search = app.add_subcommand("search", "search for a large DNA-correcting code");
  search->add_option("--strategy", strategy_name)->check(CLI::IsMember({"greedy", "exact"}));
  search->add_option("--restrict", restrict_text, "r1,r2 | distinct-data");
  search->add_option("--table", table_path, "append a CSV summary row");
  search->add_option("--out", out_path, "write the code file here instead of stdout");
  search->add_option("--cap", cap, "maximum message-space size");
  common(search);

  std::vector<const char*> argv;
  argv.push_back("dnacc");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return exit_input;
  }

  detail::Report report;
  try {
    if (verify->parsed()) {
      const auto file = io::read_file(code_path);
      const auto params = detail::resolve({&file}, params_flag).complete();
      const auto code = io::to_code(file, params.M, params.shape());
      const auto verdict = method == "distance" ? is_dna_correcting_ed0(code, params) : is_dna_correcting(code, params);
      report.first = to_string(verdict.kind);
      report.detail << "regime: " << verdict.regime.to_string() << '\n';
      report.detail << "codewords: " << code.size() << '\n';
      if (verdict.witness) {
        const auto& [a, b] = *verdict.witness;
        report.detail << "codeword: " << a.to_string() << '\n' << "codeword: " << b.to_string() << '\n';
        report.detail << "bijection within " << verdict.witness_bound << ":\n";
        detail::write_bijection(report.detail, a, b, *verdict.bijection);
      }
      if (verdict.kind == Verdict::Kind::Indeterminate) report.detail << "reason: " << verdict.reason << '\n';
    } else if (distance->parsed()) {
      const auto fa = io::read_file(a_path);
      const auto fb = io::read_file(b_path);
      const auto p = detail::resolve({&fa, &fb}, params_flag);
      const auto a = io::to_message(fa, detail::count_of(p), detail::shape_of(p));
      const auto b = io::to_message(fb, detail::count_of(p), detail::shape_of(p));
      const auto w = dna_distance_witness(a, b);
      report.first = "D=" + w.distance.to_string();
      if (w.bijection) {
        report.detail << "bijection:\n";
        detail::write_bijection(report.detail, a, b, *w.bijection);
      } else {
        report.detail << "data-field multisets differ\n";
      }
    } else if (min_distance->parsed()) {
      const auto file = io::read_file(code_path);
      const auto p = detail::resolve({&file}, params_flag);
      const auto code = io::to_code(file, detail::count_of(p), detail::shape_of(p));
      const auto best = min_dna_distance(code);
      report.first = "D=" + best.distance.to_string();
      report.detail << "pair: " << best.first << ' ' << best.second << '\n';
      report.detail << "codeword: " << code[best.first].to_string() << '\n';
      report.detail << "codeword: " << code[best.second].to_string() << '\n';
    } else if (intersect->parsed()) {
      const auto fa = io::read_file(a_path);
      const auto fb = io::read_file(b_path);
      const auto params = detail::resolve({&fa, &fb}, params_flag).complete();
      const auto a = io::to_message(fa, params.M, params.shape());
      const auto b = io::to_message(fb, params.M, params.shape());
      const auto r = balls_intersect(a, b, params);
      report.first = to_string(r.kind);
      report.detail << "regime: " << r.regime.to_string() << '\n';
      if (r.kind == Intersection::Kind::Yes) {
        report.detail << "bijection within " << r.bound << ":\n";
        detail::write_bijection(report.detail, a, b, *r.bijection);
      } else if (r.kind == Intersection::Kind::Unknown) {
        report.detail << "reason: " << r.reason << '\n';
      }
    } else if (oracle->parsed()) {
      const auto fa = io::read_file(a_path);
      const auto fb = io::read_file(b_path);
      const auto params = detail::resolve({&fa, &fb}, params_flag).complete();
      const auto a = io::to_message(fa, params.M, params.shape());
      const auto b = io::to_message(fb, params.M, params.shape());
      report.first = oracle_balls_intersect(a, b, params, cap) ? "YES" : "NO";
    } else if (simulate->parsed()) {
      const auto file = io::read_file(message_path);
      const auto params = detail::resolve({&file}, params_flag).complete();
      const auto z = io::to_message(file, params.M, params.shape());
      const auto policy = make_noise_policy(noise_name);
      const auto sample = sample_ball(z, params, seed, *policy);

      std::ostringstream pool_text;
      io::write_header(pool_text, params);
      pool_text << "# seed=" << sample.seed << " rng=" << sample.rng << " noise=" << sample.noise << '\n';
      for (const auto& r : sample.reads) pool_text << r << '\n';

      report.first = "POOL reads=" + std::to_string(sample.reads.size());
      if (out_path.empty()) {
        report.detail << pool_text.str();
      } else {
        detail::open_out(out_path) << pool_text.str();
      }
      if (!provenance_path.empty()) {
        auto f = detail::open_out(provenance_path);
        f << "# read source flips\n";
        for (std::size_t i = 0; i < sample.provenance.size(); ++i) {
          const auto& pr = sample.provenance[i];
          f << i << ' ' << z[pr.source] << ' ';
          if (pr.flips.empty()) f << '-';
          for (std::size_t k = 0; k < pr.flips.size(); ++k) f << (k ? "," : "") << pr.flips[k];
          f << '\n';
        }
      }
    } else if (member->parsed()) {
      const auto fm = io::read_file(message_path);
      const auto fp = io::read_file(pool_path);
      auto p = detail::resolve({&fm}, params_flag);
      p.merge_consistent(fp.header, fp.name);
      if (!params_flag.empty()) p.override_with(io::PartialParams::parse(params_flag));
      const auto params = p.complete();
      const auto z = io::to_message(fm, params.M, params.shape());
      const auto pool = io::to_pool(fp, params.shape());
      report.first = in_ball(pool, z, params) ? "YES" : "NO";
    } else if (search->parsed()) {
      const auto params = io::PartialParams::parse(params_flag).complete();
      const auto restriction = detail::parse_restriction(restrict_text);
      const auto strategy = strategy_name == "greedy" ? Strategy::Greedy : Strategy::Exact;
      const auto start = std::chrono::steady_clock::now();
      const auto graph = build_graph(params, restriction, cap);
      const auto code = max_code(graph, strategy);
      const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

      std::ostringstream code_text;
      io::write_code(code_text, params, code);
      report.first = "SIZE=" + std::to_string(code.size());
      report.detail << "space: " << graph.space_size << '\n';
      report.detail << "vertices: " << graph.vertices.size() << '\n';
      report.detail << "edges: " << graph.graph.edge_count() << '\n';
      if (out_path.empty()) {
        report.detail << code_text.str();
      } else {
        detail::open_out(out_path) << code_text.str();
      }
      if (!table_path.empty()) {
        const bool fresh = !std::ifstream(table_path).good() || std::ifstream(table_path).peek() == EOF;
        std::ofstream table(table_path, std::ios::binary | std::ios::app);
        if (!table) throw Error(ErrorCode::Parse, table_path + ": cannot open for writing");
        if (fresh) table << "M,L,l,K,tau,ei,ed,restrict,space,code_size,strategy,seconds\n";
        table << params.M << ',' << params.L << ',' << params.l << ',' << params.K << ',' << params.tau.to_string()
              << ',' << params.ei << ',' << params.ed << ',' << detail::csv_field(restriction.to_string()) << ','
              << graph.vertices.size() << ',' << code.size() << ',' << to_string(strategy) << ','
              << std::fixed << std::setprecision(6) << seconds << '\n';
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.is_resource_limit() ? exit_cap : exit_input;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal;
  }
  report.emit(out, quiet);
  return exit_ok;
}

}  // namespace dnacc::cli
