// simdiag: experiment runner for the Newton diagonalization solvers.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>

#include "simdiag/bench.hpp"
#include "simdiag/errors.hpp"
#include "simdiag/matrix_io.hpp"
#include "simdiag/newton_diag.hpp"

namespace {

using namespace simdiag;

struct Output {
  std::string path;
  std::unique_ptr<std::ofstream> file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file) {
      file = std::make_unique<std::ofstream>(path);
      if (!*file) throw InvalidArgument("cannot open output file " + path);
    }
    return *file;
  }
};

struct TestArgs {
  long long n = 10;
  int perturb_exp = 6;
  std::string field = "real";
  std::uint64_t seed = 0;
  long long prec = 1024;
  int iters = 7;
  std::string format = "csv";
  std::string out;
};

void add_test_flags(CLI::App* cmd, TestArgs& a) {
  cmd->add_option("--n", a.n, "matrix dimension")->check(CLI::PositiveNumber);
  cmd->add_option("--perturb-exp", a.perturb_exp, "perturbation size 10^-e");
  cmd->add_option("--field", a.field, "real or complex")->check(CLI::IsMember({"real", "complex"}));
  cmd->add_option("--seed", a.seed, "random seed");
  cmd->add_option("--prec", a.prec, "working precision in bits");
  cmd->add_option("--iters", a.iters, "Newton steps");
  cmd->add_option("--format", a.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", a.out, "write to this file instead of stdout");
}

RunConfig to_config(const TestArgs& a) {
  RunConfig cfg;
  cfg.n = static_cast<std::size_t>(a.n);
  cfg.perturb_exp = a.perturb_exp;
  cfg.field = parse_field(a.field);
  cfg.seed = a.seed;
  cfg.precision_bits = static_cast<Precision>(a.prec);
  cfg.iters = a.iters;
  cfg.format = parse_format(a.format);
  validate(cfg);
  return cfg;
}

void report_status(const TestRun& run) {
  std::cerr << "status=" << to_string(run.status) << " certified=" << (run.certified ? "yes" : "no");
  if (run.resample_offset != 0) std::cerr << " resample_offset=" << run.resample_offset;
  std::cerr << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiprecision Newton refinement of (simultaneous) eigendecompositions"};
  app.require_subcommand(1);

  TestArgs t1, t2;
  auto* test1 = app.add_subcommand("test1", "perturbed single-matrix diagonalization");
  add_test_flags(test1, t1);
  auto* test2 = app.add_subcommand("test2", "two-matrix simultaneous diagonalization from a perturbed start");
  add_test_flags(test2, t2);

  long long w_n = 20, w_prec = 1024;
  int w_iters = 4;
  std::string w_route = "arrowhead", w_format = "csv", w_out;
  auto* wilk = app.add_subcommand("wilkinson", "refine the roots of the Wilkinson polynomial");
  wilk->add_option("--n", w_n, "degree")->check(CLI::PositiveNumber);
  wilk->add_option("--prec", w_prec, "working precision in bits");
  wilk->add_option("--iters", w_iters, "Newton steps");
  wilk->add_option("--route", w_route, "companion or arrowhead")->check(CLI::IsMember({"companion", "arrowhead"}));
  wilk->add_option("--format", w_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  wilk->add_option("--out", w_out, "write to this file instead of stdout");

  QRCompareConfig qc;
  long long q_min = 3, q_max = 20;
  std::string q_format = "csv", q_out;
  auto* qr = app.add_subcommand("qr-compare", "QR iteration counts with and without the Newton test");
  qr->add_option("--min-n", q_min, "smallest dimension")->check(CLI::PositiveNumber);
  qr->add_option("--max-n", q_max, "largest dimension")->check(CLI::PositiveNumber);
  qr->add_option("--trials", qc.trials, "instances per dimension");
  qr->add_option("--seed", qc.seed, "random seed");
  qr->add_option("--threshold", qc.threshold, "plain QR stopping threshold");
  qr->add_option("--max-iter", qc.max_iter, "iteration cap; capped runs print -1");
  qr->add_option("--format", q_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  qr->add_option("--out", q_out, "write to this file instead of stdout");

  std::string r_matrix, r_init, r_format = "csv", r_out;
  long long r_prec = 256;
  int r_iters = 8;
  auto* refine = app.add_subcommand("refine", "refine a supplied eigendecomposition of a matrix");
  refine->add_option("--matrix", r_matrix, "matrix JSON file")->required();
  refine->add_option("--init", r_init, "JSON object with E, F and Sigma")->required();
  refine->add_option("--prec", r_prec, "working precision in bits");
  refine->add_option("--iters", r_iters, "Newton steps");
  refine->add_option("--format", r_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  refine->add_option("--out", r_out, "write to this file instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (test1->parsed() || test2->parsed()) {
      const bool first = test1->parsed();
      const TestArgs& a = first ? t1 : t2;
      const RunConfig cfg = to_config(a);
      const TestRun run = first ? run_test1(cfg) : run_test2(cfg);
      Output out{a.out, nullptr};
      write_trace(out.stream(), run.trace, cfg.format);
      report_status(run);
    } else if (wilk->parsed()) {
      if (w_prec < kMinPrecision) throw InvalidArgument("precision must be at least 24 bits");
      if (w_iters < 0) throw InvalidArgument("iters must be nonnegative");
      WilkinsonConfig cfg{static_cast<std::size_t>(w_n), static_cast<Precision>(w_prec), w_iters,
                          parse_route(w_route)};
      const RefineRootsResult result = run_wilkinson(cfg);
      Output out{w_out, nullptr};
      write_roots(out.stream(), result, parse_format(w_format));
    } else if (qr->parsed()) {
      qc.min_n = static_cast<std::size_t>(q_min);
      qc.max_n = static_cast<std::size_t>(q_max);
      const auto rows = run_qr_compare(qc);
      Output out{q_out, nullptr};
      write_qr_compare(out.stream(), rows, parse_format(q_format));
    } else if (refine->parsed()) {
      if (r_prec < kMinPrecision) throw InvalidArgument("precision must be at least 24 bits");
      if (r_iters < 0) throw InvalidArgument("iters must be nonnegative");
      const Precision prec = static_cast<Precision>(r_prec);
      const Matrix M = read_matrix_file(r_matrix).with_precision(prec);
      const nlohmann::json init = read_json_file(r_init);
      for (const char* key : {"E", "F", "Sigma"}) {
        if (!init.is_object() || !init.contains(key)) {
          throw ParseError(std::string("init file: missing \"") + key + "\"");
        }
      }
      DiagSolveOptions options;
      options.max_iter = r_iters;
      const DiagSolveResult solved =
          diag_solve(M, matrix_from_json(init.at("E")).with_precision(prec),
                     matrix_from_json(init.at("F")).with_precision(prec),
                     spectrum_from_json(init.at("Sigma")).with_precision(prec), options);
      Output out{r_out, nullptr};
      if (parse_format(r_format) == OutputFormat::csv) {
        write_csv(out.stream(), solved.trace);
      } else {
        nlohmann::json j = to_json(solved.trace);
        j["Sigma"] = to_json(solved.state.sigma);
        j["E"] = to_json(solved.state.E);
        j["F"] = to_json(solved.state.F);
        j["status"] = std::string(to_string(solved.status));
        j["certified"] = solved.certified;
        out.stream() << j.dump(2) << '\n';
      }
      std::cerr << "status=" << to_string(solved.status) << " certified=" << (solved.certified ? "yes" : "no")
                << '\n';
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
