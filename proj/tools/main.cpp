// toeplitz-lab: command line driver for the Toeplitz operator laboratory on
// the rank-two Lie ball.  Exit codes: 0 success, 2 parse or configuration
// error, 3 numeric failure, 4 point outside the domain.

#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <string>

#include "tlab/bergman.hpp"
#include "tlab/errors.hpp"
#include "tlab/spectral.hpp"
#include "tlab/symbols.hpp"
#include "tlab/verify.hpp"

#ifndef TLAB_VERSION
#define TLAB_VERSION "unknown"
#endif

namespace {

using tlab::Error;
using tlab::ErrorCode;
using cplx = std::complex<double>;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ParseError:
    case ErrorCode::VariableError:
    case ErrorCode::PhaseWeightError:
    case ErrorCode::ConfigError:
    case ErrorCode::KindError:
    case ErrorCode::ExponentRange:
      return 2;
    case ErrorCode::PointNotInDomain:
      return 4;
    default:
      return 3;
  }
}

// complex literal: "a", "bi", "a+bi", "a-bi"
cplx parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex literal");
  // find the split between real and imaginary parts: a sign not in the
  // first position and not after an exponent marker
  size_t split = std::string::npos;
  for (size_t i = 1; i < s.size(); ++i)
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      split = i;
  auto to_double = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    size_t used = 0;
    const double v = std::stod(part, &used);
    if (used != part.size())
      throw Error(ErrorCode::ParseError, "bad numeric literal '" + part + "'");
    return v;
  };
  try {
    if (s.back() == 'i' || s.back() == 'I') {
      const std::string body = s.substr(0, s.size() - 1);
      if (split == std::string::npos) return {0.0, to_double(body)};
      return {to_double(body.substr(0, split)), to_double(body.substr(split))};
    }
    if (split != std::string::npos)
      throw Error(ErrorCode::ParseError,
                  "complex literal '" + text + "' missing trailing i");
    return {to_double(s), 0.0};
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::ParseError, "bad complex literal '" + text + "'");
  }
}

Eigen::VectorXcd parse_point(const std::string& text, int n) {
  std::vector<cplx> vals;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) vals.push_back(parse_complex(cur));
  if (static_cast<int>(vals.size()) != n)
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(n) + " coordinates, got " +
                    std::to_string(vals.size()));
  Eigen::VectorXcd z(n);
  for (int j = 0; j < n; ++j) z[j] = vals[static_cast<size_t>(j)];
  return z;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::ConfigError, "cannot open output file " + path);
  f << content;
}

void warn_if_unbounded(const tlab::symbols::SymbolSpec& spec) {
  if (spec.kind == tlab::symbols::SymbolKind::Phase) return;
  // sample f along the reachable range and warn on blow-up; the engine does
  // not reject unbounded symbols
  try {
    for (double s = 0.0; s > -64.0; s -= 0.5) {
      double v;
      if (spec.kind == tlab::symbols::SymbolKind::Moment)
        v = tlab::symbols::eval_expr(spec.expr, s, 0.0, 0.0);
      else
        continue;
      if (std::abs(v) > 1e6) {
        std::cerr << "warning: |f| exceeds 1e6 at s = " << s
                  << "; the symbol may not be essentially bounded\n";
        return;
      }
    }
  } catch (const Error&) {
    // domain errors at probe points are the caller's concern, not a warning
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Toeplitz operators on the Lie ball"};
  app.require_subcommand(1);

  int n = 3;
  double lambda = 4.0;
  int degree = 4;
  int kmax = 4;
  long long samples = 1000000;
  std::uint64_t seed = 1;
  std::string method = "quad";
  std::string cache_dir;
  std::string out_path;
  std::string format = "csv";
  bool force = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "complex dimension (>= 3)");
    cmd->add_option("--lambda", lambda, "weight parameter (> n-1)");
    cmd->add_option("--samples", samples, "Monte Carlo sample count");
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--cache-dir", cache_dir,
                    "cache directory (or TOEPLITZ_LAB_CACHE)");
    cmd->add_option("--out", out_path, "output file, '-' for stdout");
    cmd->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--force", force, "override the variance and dimension guards");
  };

  std::string symbol_text = "moment: 1";
  std::string symbol_b_text;
  std::string point_text;
  std::string suite = "all";

  auto* c_eig = app.add_subcommand("eigenvalues", "eigenvalue table c_{k1,k2}");
  add_common(c_eig);
  c_eig->add_option("--symbol", symbol_text, "symbol text")->required();
  c_eig->add_option("--kmax", kmax, "include all blocks with k1+2k2 <= kmax");
  c_eig->add_option("--method", method, "quad, mc_cone, or bergman_mc")
      ->check(CLI::IsMember({"quad", "mc_cone", "bergman_mc"}));

  auto* c_comm = app.add_subcommand("commutator", "commutator norm of two symbols");
  add_common(c_comm);
  c_comm->add_option("--symbol-a", symbol_text, "first symbol")->required();
  c_comm->add_option("--symbol-b", symbol_b_text, "second symbol")->required();
  c_comm->add_option("--degree", degree, "truncation degree");

  auto* c_mom = app.add_subcommand("moment-map", "moment map values at a point");
  c_mom->add_option("--n", n, "complex dimension");
  c_mom->add_option("point", point_text, "comma-separated complex coordinates")
      ->required();

  auto* c_toe = app.add_subcommand("toeplitz", "truncated Toeplitz matrix");
  add_common(c_toe);
  c_toe->add_option("--symbol", symbol_text, "symbol text")->required();
  c_toe->add_option("--degree", degree, "truncation degree");

  auto* c_gram = app.add_subcommand("gram", "Gram matrices by weight class");
  add_common(c_gram);
  c_gram->add_option("--degree", degree, "maximum degree");

  auto* c_ver = app.add_subcommand("verify", "run the self-check suites");
  add_common(c_ver);
  c_ver->add_option("--suite", suite,
                    "jordan, geometry, moment, harmonic, branching, gram, "
                    "spectral, or all");
  double tolerance_scale = 1.0;
  c_ver->add_option("--tolerance-scale", tolerance_scale,
                    "scale all pass thresholds (harness self-test hook)");

  auto* c_info = app.add_subcommand("info", "version and defaults");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_info->parsed()) {
      std::cout << "toeplitz-lab " << TLAB_VERSION << "\n"
                << "domain: rank-two Lie ball in C^n, n in [3, 10]\n"
                << "defaults: n=3 lambda=4 degree=4 kmax=4 samples=1000000 seed=1\n"
                << "cache: --cache-dir or TOEPLITZ_LAB_CACHE\n";
      return 0;
    }

    if (c_mom->parsed()) {
      const Eigen::VectorXcd z = parse_point(point_text, n);
      if (!tlab::geometry::in_domain(z)) {
        const double zn2 = z.squaredNorm();
        const double w = std::norm(tlab::geometry::z_top_z(z));
        std::string which = zn2 >= 1.0
                                ? "|z|^2 >= 1"
                                : "2|z|^2 >= 1 + |z^T z|^2";
        throw Error(ErrorCode::PointNotInDomain,
                    "point violates " + which + " (|z|^2 = " + std::to_string(zn2) +
                        ", |z^T z|^2 = " + std::to_string(w) + ")");
      }
      const Eigen::VectorXd mu = tlab::actions::moment_map_torus(z);
      std::cout.precision(17);
      std::cout << "mu_torus_so2 = (";
      for (int j = 0; j < mu.size(); ++j)
        std::cout << (j ? ", " : "") << mu[j];
      std::cout << ")\nmu_so2 = " << tlab::actions::moment_map_so2(z) << "\n";
      return 0;
    }

    if (c_ver->parsed()) {
      tlab::verify::SuiteScale scale;
      scale.mc_samples = samples;
      scale.light_samples = std::min<long long>(samples, 200000);
      scale.tolerance_scale = tolerance_scale;
      const auto checks = tlab::verify::run_suite(suite, scale);
      bool all_pass = true;
      for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": "
                  << c.detail << "\n";
        all_pass = all_pass && c.pass;
      }
      return all_pass ? 0 : 1;
    }

    if (c_eig->parsed()) {
      const auto spec = tlab::symbols::parse_symbol(symbol_text);
      if (spec.kind == tlab::symbols::SymbolKind::Phase)
        throw Error(ErrorCode::KindError,
                    "eigenvalue tables need a moment or invariant symbol");
      warn_if_unbounded(spec);
      const auto m = method == "quad"        ? tlab::spectral::Method::quad
                     : method == "mc_cone"   ? tlab::spectral::Method::mc_cone
                                             : tlab::spectral::Method::bergman_mc;
      const auto rows =
          tlab::spectral::eigenvalue_table(spec, n, lambda, kmax, m, samples, seed);
      if (format == "json") {
        auto j = tlab::spectral::table_to_json(rows, n, lambda, samples, seed);
        nlohmann::json wrapped = {{"version", TLAB_VERSION},
                                  {"symbol", symbol_text},
                                  {"rows", j}};
        write_out(out_path, wrapped.dump(2) + "\n");
      } else {
        write_out(out_path,
                  tlab::spectral::table_to_csv(rows, n, lambda, samples, seed));
      }
      return 0;
    }

    if (c_comm->parsed()) {
      const auto a = tlab::symbols::parse_symbol(symbol_text);
      const auto b = tlab::symbols::parse_symbol(symbol_b_text);
      const tlab::bergman::MCParams params(n, lambda, samples, seed, 1 << 16, force);
      const auto r = tlab::bergman::commutator_norm(a, b, degree, params);
      const char* verdict = r.value < 5.0 * r.noise    ? "CONSISTENT_WITH_ZERO"
                            : r.value > 10.0 * r.noise ? "NONZERO"
                                                       : "INCONCLUSIVE";
      std::cout.precision(17);
      std::cout << "value = " << r.value << "\nnoise = " << r.noise
                << "\nverdict = " << verdict << "\n";
      return 0;
    }

    if (c_toe->parsed()) {
      const auto spec = tlab::symbols::parse_symbol(symbol_text);
      warn_if_unbounded(spec);
      const tlab::bergman::MCParams params(n, lambda, samples, seed, 1 << 16, force);
      const auto op = tlab::bergman::toeplitz_truncation(spec, degree, params);
      for (const auto& w : op.warnings) std::cerr << "warning: " << w << "\n";
      auto j = tlab::bergman::operator_to_json(op);
      j["version"] = TLAB_VERSION;
      // diagonality report: worst off-block entry relative to its stderr
      double worst_off = 0.0;
      Eigen::Index ri = 0;
      for (const auto& bi : op.blocks) {
        const auto szi = static_cast<Eigen::Index>(bi.polynomials.size());
        Eigen::Index cj = 0;
        for (const auto& bj : op.blocks) {
          const auto szj = static_cast<Eigen::Index>(bj.polynomials.size());
          if (!(bi.label == bj.label))
            for (Eigen::Index x = 0; x < szi; ++x)
              for (Eigen::Index y = 0; y < szj; ++y)
                if (op.err(ri + x, cj + y) > 0.0)
                  worst_off = std::max(worst_off, std::abs(op.entries(ri + x, cj + y)) /
                                                      op.err(ri + x, cj + y));
          cj += szj;
        }
        ri += szi;
      }
      j["max_off_block_over_stderr"] = worst_off;
      write_out(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (c_gram->parsed()) {
      const tlab::bergman::MCParams params(n, lambda, samples, seed, 1 << 16, force);
      const auto table = tlab::bergman::gram_blocks(degree, params, cache_dir);
      for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
      nlohmann::json classes = nlohmann::json::array();
      for (const auto& [wl, m] : table.matrices) {
        Eigen::MatrixXcd errc = table.errors.at(wl).cast<cplx>();
        classes.push_back(
            {{"torus_weight", wl.torus_weight},
             {"so2_weight", wl.so2_weight},
             {"gram", tlab::bergman::detail::cmat_to_json(m)},
             {"err", tlab::bergman::detail::cmat_to_json(errc)}});
      }
      nlohmann::json j = {{"version", TLAB_VERSION}, {"n", n},      {"lambda", lambda},
                          {"degree_max", degree},    {"samples", samples},
                          {"seed", seed},            {"classes", classes}};
      write_out(out_path, j.dump(2) + "\n");
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error [" << tlab::error_code_name(e.code()) << "]: " << e.what()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
