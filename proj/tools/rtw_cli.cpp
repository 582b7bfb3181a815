// rtw: exact treewidth with certificates, on PACE 2017 .gr files.
//
//   rtw solve graph.gr [--td out.td] [--cert out.cert]
//   rtw verify graph.gr graph.cert
//   rtw bench dir/ --timeout-s 60
//   rtw oracle graph.gr
//
// Exit codes: 0 ok, 1 usage, 2 parse, 3 verification failure, 4 timeout.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rtw/io.hpp"
#include "rtw/oracle.hpp"
#include "rtw/solver.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kParse = 2, kVerify = 3, kTimeout = 4 };

struct Settings {
  rtw::SolverOptions solver;
  double timeout_s = 0;  // 0: none
  std::string log_level = "warn";
};

struct Failure {
  int code;
};

rtw::Graph read_graph(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    spdlog::error("cannot open {}", path.string());
    throw Failure{kUsage};
  }
  try {
    return rtw::parse_gr(in);
  } catch (const rtw::ParseError& e) {
    spdlog::error("{}: {}", path.string(), e.what());
    throw Failure{kParse};
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) {
    spdlog::error("cannot write {}", path.string());
    throw Failure{kUsage};
  }
}

std::optional<rtw::Certificate> solve_within(const rtw::Graph& g, const Settings& s, rtw::SolverStats* stats) {
  rtw::Deadline deadline = s.timeout_s > 0 ? rtw::Deadline(std::chrono::duration<double>(s.timeout_s)) : rtw::Deadline();
  rtw::ScopedDeadline scope(deadline);
  try {
    return rtw::compute_treewidth(g, s.solver, stats);
  } catch (const rtw::TimeoutError&) {
    return std::nullopt;
  }
}

void log_stats(const rtw::SolverStats& st) {
  spdlog::info("rtw calls {}, max depth {}, suppressed edges {}, safe reductions {}, safe pieces {}, finish calls {}",
               st.rtw_calls, st.max_depth, st.suppressed_edges, st.safe_reductions, st.safe_pieces, st.finish_calls);
}

int run_solve(const Settings& s, const fs::path& input, fs::path td_path, fs::path cert_path) {
  rtw::Graph g = read_graph(input);
  if (g.num_vertices() == 0) {
    spdlog::error("{}: graph has no vertices", input.string());
    return kParse;
  }
  if (td_path.empty()) td_path = fs::path(input).replace_extension(".td");
  if (cert_path.empty()) cert_path = fs::path(input).replace_extension(".cert");

  rtw::SolverStats stats;
  auto t0 = std::chrono::steady_clock::now();
  std::optional<rtw::Certificate> c = solve_within(g, s, &stats);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!c) {
    spdlog::error("{}: timed out after {:.2f}s", input.string(), secs);
    return kTimeout;
  }
  spdlog::info("{}: width {} in {:.3f}s", input.string(), c->width, secs);
  log_stats(stats);

  write_file(td_path, rtw::emit_td(g, c->decomposition));
  write_file(cert_path, rtw::emit_certificate(g, *c));
  std::cout << "tw = " << c->width << '\n';
  return kOk;
}

int run_verify(const fs::path& input, const fs::path& cert_path) {
  rtw::Graph g = read_graph(input);
  std::ifstream in(cert_path);
  if (!in) {
    spdlog::error("cannot open {}", cert_path.string());
    return kUsage;
  }
  rtw::Certificate c;
  try {
    c = rtw::parse_certificate(in, g);
  } catch (const rtw::ParseError& e) {
    spdlog::error("{}: {}", cert_path.string(), e.what());
    return kParse;
  } catch (const rtw::ContractorError& e) {
    std::cout << "FAIL witness: " << e.what() << '\n';
    return kVerify;
  }
  rtw::CertificateReport rep = rtw::verify_certificate(g, c);
  if (!rep.ok()) {
    for (const std::string& f : rep.failures) std::cout << "FAIL " << f << '\n';
    return kVerify;
  }
  std::cout << "ok width " << c.width << '\n';
  return kOk;
}

int run_bench(const Settings& s, const fs::path& dir) {
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".gr") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) spdlog::warn("no .gr files in {}", dir.string());

  bool any_timeout = false, any_parse = false;
  std::printf("%-32s %8s %8s %6s %10s %9s\n", "instance", "n", "m", "width", "time_s", "timed_out");
  std::fflush(stdout);
  for (const fs::path& f : files) {
    rtw::Graph g;
    try {
      g = read_graph(f);
    } catch (const Failure&) {
      any_parse = true;
      continue;
    }
    if (g.num_vertices() == 0) {
      spdlog::error("{}: graph has no vertices", f.string());
      any_parse = true;
      continue;
    }
    rtw::SolverStats stats;
    auto t0 = std::chrono::steady_clock::now();
    std::optional<rtw::Certificate> c = solve_within(g, s, &stats);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::string width = c ? std::to_string(c->width) : "-";
    any_timeout = any_timeout || !c;
    std::printf("%-32s %8zu %8zu %6s %10.3f %9s\n", f.filename().string().c_str(), g.num_vertices(), g.num_edges(),
                width.c_str(), secs, c ? "no" : "yes");
    std::fflush(stdout);
    log_stats(stats);
  }
  if (any_timeout) return kTimeout;
  return any_parse ? kParse : kOk;
}

int run_oracle(const fs::path& input) {
  rtw::Graph g = read_graph(input);
  try {
    std::cout << "tw = " << rtw::oracle_treewidth(g) << '\n';
  } catch (const rtw::CapExceededError& e) {
    spdlog::error("{}", e.what());
    return kUsage;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact treewidth with certificates"};
  app.require_subcommand(1);
  app.fallthrough();

  Settings s;
  app.add_option("--budget", s.solver.unit_budget, "improvement steps per unit of progress")->capture_default_str();
  app.add_option("--timeout-s", s.timeout_s, "per-instance time limit in seconds, 0 for none")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--seed", s.solver.seed, "shuffle edge-order ties with this seed (0: deterministic order)");
  app.add_flag("--no-safe-sep", [&](std::int64_t) { s.solver.safe_separators = false; },
               "skip safe-separator reductions");
  app.add_option("--max-solutions", s.solver.max_solutions, "PMC sets kept per contraction")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--log-level", s.log_level, "trace, debug, info, warn, error or off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "off"}))
      ->capture_default_str();

  fs::path input, second, td_path, cert_path;
  CLI::App* solve = app.add_subcommand("solve", "compute treewidth, write .td and certificate");
  solve->add_option("graph", input, ".gr file")->required()->check(CLI::ExistingFile);
  solve->add_option("--td", td_path, "decomposition output (default: <graph>.td)");
  solve->add_option("--cert", cert_path, "certificate output (default: <graph>.cert)");

  CLI::App* verify = app.add_subcommand("verify", "check a certificate against a graph");
  verify->add_option("graph", input, ".gr file")->required()->check(CLI::ExistingFile);
  verify->add_option("certificate", second, "certificate file")->required()->check(CLI::ExistingFile);

  CLI::App* bench = app.add_subcommand("bench", "solve every .gr in a directory");
  bench->add_option("dir", input, "instance directory")->required()->check(CLI::ExistingDirectory);

  CLI::App* oracle = app.add_subcommand("oracle", "brute-force treewidth, at most 22 vertices");
  oracle->add_option("graph", input, ".gr file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  auto logger = spdlog::stderr_color_st("rtw");
  logger->set_pattern("%^[%l]%$ %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::from_str(s.log_level));

  try {
    if (*solve) return run_solve(s, input, td_path, cert_path);
    if (*verify) return run_verify(input, second);
    if (*bench) return run_bench(s, input);
    if (*oracle) return run_oracle(input);
  } catch (const Failure& f) {
    return f.code;
  }
  return kUsage;
}
