#pragma once

// Monte Carlo engine on the domain: uniform rejection sampling, the
// self-normalizing ratio estimator for the weighted measures, Gram matrices
// over torus-weight classes, truncated Toeplitz matrices, commutators, and
// Rayleigh-quotient eigenvalues.  Deterministic for a fixed seed: chunked
// counter-based streams and a fixed reduction order.

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tlab/errors.hpp"
#include "tlab/geometry.hpp"
#include "tlab/polyspaces.hpp"
#include "tlab/rng.hpp"
#include "tlab/symbols.hpp"

namespace tlab::bergman {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;
using polyspaces::BlockLabel;
using polyspaces::WeightLabel;

struct MCParams {
  int n;
  double lambda;
  long long samples;
  std::uint64_t seed;
  long long chunk = 1 << 16;
  bool force = false;

  MCParams(int n_, double lambda_, long long samples_, std::uint64_t seed_,
           long long chunk_ = 1 << 16, bool force_ = false)
      : n(n_), lambda(lambda_), samples(samples_), seed(seed_), chunk(chunk_),
        force(force_) {
    if (n < 3) throw Error(ErrorCode::ConfigError, "dimension must be at least 3");
    if (n > 10 && !force)
      throw Error(ErrorCode::ConfigError,
                  "rejection sampling degrades beyond n = 10; pass force to override");
    geometry::WeightParam check(lambda, n);  // lambda > n-1
    if (!(lambda > n - 0.5) && !force)
      throw Error(ErrorCode::ConfigError,
                  "lambda <= n - 1/2 gives the ratio estimator infinite variance; "
                  "pass force to override");
    if (samples < 1)
      throw Error(ErrorCode::ConfigError, "sample count must be positive");
    if (chunk < 1) throw Error(ErrorCode::ConfigError, "chunk size must be positive");
  }
};

struct SampleSet {
  CMat pts;  // n x samples
  RVec w;    // Delta^(lambda - n) per sample
};

namespace detail {

constexpr int kMaxRejects = 1 << 20;

inline void fill_chunk(const MCParams& p, std::uint64_t chunk_index,
                       Eigen::Index count, CMat& out, Eigen::Index col0) {
  rng::CounterRng gen(p.seed, chunk_index);
  const int n = p.n;
  std::vector<double> g(2 * static_cast<size_t>(n));
  for (Eigen::Index s = 0; s < count; ++s) {
    int tries = 0;
    for (;;) {
      if (++tries > kMaxRejects)
        throw Error(ErrorCode::SamplingStall, "rejection sampling made no progress");
      double norm2 = 0.0;
      for (auto& v : g) {
        v = gen.normal();
        norm2 += v * v;
      }
      const double u = gen.uniform();
      const double scale =
          std::pow(u, 1.0 / (2.0 * n)) / std::sqrt(std::max(norm2, 1e-300));
      double zn2 = 0.0;
      cplx ztz = 0.0;
      for (int j = 0; j < n; ++j) {
        const cplx zj(scale * g[2 * static_cast<size_t>(j)],
                      scale * g[2 * static_cast<size_t>(j) + 1]);
        out(j, col0 + s) = zj;
        zn2 += std::norm(zj);
        ztz += zj * zj;
      }
      if (2.0 * zn2 < 1.0 + std::norm(ztz)) break;
    }
  }
}

}  // namespace detail

inline SampleSet make_samples(const MCParams& p) {
  SampleSet set;
  set.pts.resize(p.n, p.samples);
  set.w.resize(p.samples);
  const long long chunks = (p.samples + p.chunk - 1) / p.chunk;
  for (long long c = 0; c < chunks; ++c) {
    const Eigen::Index col0 = c * p.chunk;
    const Eigen::Index count = std::min<long long>(p.chunk, p.samples - col0);
    detail::fill_chunk(p, static_cast<std::uint64_t>(c), count, set.pts, col0);
  }
  const double expo = p.lambda - p.n;
  for (Eigen::Index s = 0; s < p.samples; ++s)
    set.w[s] = std::pow(geometry::delta(set.pts.col(s)), expo);
  return set;
}

inline std::vector<CVec> sample_domain(const MCParams& p) {
  const SampleSet set = make_samples(p);
  std::vector<CVec> out;
  out.reserve(static_cast<size_t>(p.samples));
  for (Eigen::Index s = 0; s < p.samples; ++s) out.push_back(set.pts.col(s));
  return out;
}

struct MeanResult {
  cplx value;
  double stderr_;
};

// Ratio estimator sum(w h) / sum(w) with a delta-method standard error.
inline MeanResult weighted_mean_on(const SampleSet& set,
                                   const std::function<cplx(const CVec&)>& h) {
  cplx swh = 0.0, sw2h = 0.0;
  double sw = 0.0, sw2 = 0.0, sw2h2 = 0.0;
  for (Eigen::Index s = 0; s < set.pts.cols(); ++s) {
    const double w = set.w[s];
    const cplx v = h(set.pts.col(s));
    sw += w;
    sw2 += w * w;
    swh += w * v;
    sw2h += w * w * v;
    sw2h2 += w * w * std::norm(v);
  }
  const cplx r = swh / sw;
  const double var =
      (sw2h2 - 2.0 * (std::conj(r) * sw2h).real() + std::norm(r) * sw2) / (sw * sw);
  return {r, std::sqrt(std::max(var, 0.0))};
}

inline MeanResult weighted_mean(const std::function<cplx(const CVec&)>& h,
                                const MCParams& p) {
  return weighted_mean_on(make_samples(p), h);
}

inline MeanResult inner_product(const poly::NumPoly& a, const poly::NumPoly& b,
                                const MCParams& p) {
  return weighted_mean(
      [&](const CVec& z) {
        std::vector<cplx> pt(z.data(), z.data() + z.size());
        return poly::evaluate(a, pt) * std::conj(poly::evaluate(b, pt));
      },
      p);
}

namespace detail {

// Basis values for a list of polynomials at the columns of a sample block.
inline CMat basis_values(const std::vector<poly::NumPoly>& polys, const CMat& pts) {
  CMat e(static_cast<Eigen::Index>(polys.size()), pts.cols());
  std::vector<cplx> z(static_cast<size_t>(pts.rows()));
  for (Eigen::Index s = 0; s < pts.cols(); ++s) {
    for (Eigen::Index j = 0; j < pts.rows(); ++j) z[static_cast<size_t>(j)] = pts(j, s);
    for (size_t k = 0; k < polys.size(); ++k)
      e(static_cast<Eigen::Index>(k), s) = poly::evaluate(polys[k], z);
  }
  return e;
}

struct MatrixMean {
  CMat value;
  RMat err;
};

// Entrywise ratio estimator for M_ij = E[a e_i conj(e_j)] over the weighted
// measure, all entries sharing one sample set.
inline MatrixMean matrix_mean(const std::vector<poly::NumPoly>& polys,
                              const SampleSet& set,
                              const std::function<cplx(const CVec&)>& a,
                              long long chunk) {
  const Eigen::Index k = static_cast<Eigen::Index>(polys.size());
  CMat p = CMat::Zero(k, k), q = CMat::Zero(k, k);
  RMat r = RMat::Zero(k, k);
  double sw = 0.0, sw2 = 0.0;
  const Eigen::Index total = set.pts.cols();
  for (Eigen::Index c0 = 0; c0 < total; c0 += chunk) {
    const Eigen::Index count = std::min<Eigen::Index>(chunk, total - c0);
    const CMat e = basis_values(polys, set.pts.middleCols(c0, count));
    CVec av(count);
    for (Eigen::Index s = 0; s < count; ++s) av[s] = a(set.pts.col(c0 + s));
    const RVec w = set.w.segment(c0, count);
    CVec wa(count), w2a(count);
    RVec w2a2(count);
    for (Eigen::Index s = 0; s < count; ++s) {
      wa[s] = w[s] * av[s];
      w2a[s] = w[s] * w[s] * av[s];
      w2a2[s] = w[s] * w[s] * std::norm(av[s]);
      sw += w[s];
      sw2 += w[s] * w[s];
    }
    p.noalias() += e * wa.asDiagonal() * e.adjoint();
    q.noalias() += e * w2a.asDiagonal() * e.adjoint();
    const RMat u = e.cwiseAbs2();
    r.noalias() += u * w2a2.asDiagonal() * u.transpose();
  }
  MatrixMean out;
  out.value = p / sw;
  out.err.resize(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) {
      const cplx m = out.value(i, j);
      const double var =
          (r(i, j) - 2.0 * (std::conj(m) * q(i, j)).real() + std::norm(m) * sw2) /
          (sw * sw);
      out.err(i, j) = std::sqrt(std::max(var, 0.0));
    }
  return out;
}

}  // namespace detail

struct BasisBlock {
  BlockLabel label;
  std::vector<poly::NumPoly> polynomials;
  int degree = 0;  // k1 + 2 k2
};

// All blocks H^{k1} (z^T z)^{k2} with k1 + 2 k2 <= degree_max, ordered by
// (degree, k1).
inline std::vector<BasisBlock> basis_blocks(int n, int degree_max) {
  std::vector<BasisBlock> blocks;
  for (int deg = 0; deg <= degree_max; ++deg)
    for (int k2 = 0; 2 * k2 <= deg; ++k2) {
      const int k1 = deg - 2 * k2;
      BasisBlock b;
      b.label = {k1, k2};
      b.degree = deg;
      const auto harm = polyspaces::harmonic_basis(n, k1);
      const auto ztzk = poly::z_top_z_poly(n).pow(k2);
      for (const auto& h : harm)
        b.polynomials.push_back(poly::to_numeric(h * ztzk));
      blocks.push_back(std::move(b));
    }
  std::sort(blocks.begin(), blocks.end(), [](const BasisBlock& a, const BasisBlock& b) {
    return a.degree != b.degree ? a.degree < b.degree : a.label.k1 < b.label.k1;
  });
  return blocks;
}

struct TruncatedOperator {
  std::vector<BasisBlock> blocks;
  CMat entries;
  RMat err;       // per-entry Monte Carlo standard error
  CMat linv;      // block-diagonal inverse Cholesky factor used to orthonormalize
  MCParams params;
  std::string symbol_text;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::function<cplx(const CVec&)> symbol_fn(const symbols::SymbolSpec& spec) {
  return [spec](const CVec& z) { return symbols::eval_symbol(spec, z); };
}

inline TruncatedOperator truncation_impl(
    const std::function<cplx(const CVec&)>& a, const std::string& symbol_text,
    const std::vector<BasisBlock>& blocks, const SampleSet& set,
    const MCParams& params) {
  std::vector<poly::NumPoly> all;
  std::vector<Eigen::Index> offsets;
  for (const auto& b : blocks) {
    offsets.push_back(static_cast<Eigen::Index>(all.size()));
    all.insert(all.end(), b.polynomials.begin(), b.polynomials.end());
  }
  const Eigen::Index k = static_cast<Eigen::Index>(all.size());

  const auto gram = matrix_mean(all, set, [](const CVec&) { return cplx(1.0); },
                                params.chunk);
  const auto ma = matrix_mean(all, set, a, params.chunk);

  TruncatedOperator op{blocks, CMat(), RMat(), CMat::Zero(k, k), params,
                       symbol_text, {}};
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    const Eigen::Index off = offsets[bi];
    const Eigen::Index sz = static_cast<Eigen::Index>(blocks[bi].polynomials.size());
    const CMat g = gram.value.block(off, off, sz, sz);
    Eigen::LLT<CMat> llt(g);
    if (llt.info() != Eigen::Success)
      throw Error(ErrorCode::IllConditioned,
                  "Gram block is numerically indefinite; raise the sample count");
    const CMat l = llt.matrixL();
    double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < sz; ++i) {
      const double piv = std::norm(l(i, i));
      pmax = std::max(pmax, piv);
      pmin = std::min(pmin, piv);
    }
    if (pmin < 1e-8 * pmax)
      op.warnings.push_back("ILL_CONDITIONED: Gram pivot ratio " +
                            std::to_string(pmin / pmax) + " in block (" +
                            std::to_string(blocks[bi].label.k1) + "," +
                            std::to_string(blocks[bi].label.k2) + ")");
    op.linv.block(off, off, sz, sz) =
        l.triangularView<Eigen::Lower>().solve(CMat::Identity(sz, sz));
  }
  op.entries = op.linv * ma.value * op.linv.adjoint();
  const RMat labs = op.linv.cwiseAbs();
  op.err = labs * ma.err * labs.transpose();
  return op;
}

}  // namespace detail

inline TruncatedOperator toeplitz_truncation(const symbols::SymbolSpec& spec,
                                             int degree_max, const MCParams& params) {
  return detail::truncation_impl(detail::symbol_fn(spec), symbols::print_symbol(spec),
                                 basis_blocks(params.n, degree_max),
                                 make_samples(params), params);
}

// Gram matrices of the q basis within each (degree, torus weight) class.
struct GramTable {
  std::map<WeightLabel, CMat> matrices;
  std::map<WeightLabel, RMat> errors;
  std::vector<std::string> warnings;
};

namespace detail {

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string weight_key(const WeightLabel& wl) {
  std::string k = std::to_string(wl.so2_weight);
  for (int v : wl.torus_weight) k += "," + std::to_string(v);
  return k;
}

inline nlohmann::json cmat_to_json(const CMat& m) {
  nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array(), ri = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return {{"re", re}, {"im", im}};
}

inline CMat cmat_from_json(const nlohmann::json& j) {
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  CMat m(static_cast<Eigen::Index>(re.size()),
         re.empty() ? 0 : static_cast<Eigen::Index>(re[0].size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index jx = 0; jx < m.cols(); ++jx)
      m(i, jx) = cplx(re[static_cast<size_t>(i)][static_cast<size_t>(jx)],
                      im[static_cast<size_t>(i)][static_cast<size_t>(jx)]);
  return m;
}

inline std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("TOEPLITZ_LAB_CACHE")) return env;
  return {};
}

constexpr int kBasisVersion = 1;

}  // namespace detail

inline GramTable gram_blocks(int degree_max, const MCParams& params,
                             const std::string& cache_dir_flag = {}) {
  const std::string cache_dir = detail::resolve_cache_dir(cache_dir_flag);
  std::string cache_file;
  if (!cache_dir.empty()) {
    std::string key = std::to_string(params.n) + "|" + std::to_string(params.lambda) +
                      "|" + std::to_string(degree_max) + "|" +
                      std::to_string(params.samples) + "|" +
                      std::to_string(params.seed) + "|v" +
                      std::to_string(detail::kBasisVersion);
    char hex[17];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a(key)));
    cache_file = (std::filesystem::path(cache_dir) /
                  ("gram-" + std::string(hex) + ".json")).string();
    std::ifstream in(cache_file);
    if (in) {
      nlohmann::json j;
      in >> j;
      const std::string payload = j.at("classes").dump();
      if (detail::fnv1a(payload) ==
          j.at("digest").get<std::uint64_t>()) {
        GramTable t;
        for (const auto& c : j.at("classes")) {
          WeightLabel wl{c.at("torus_weight").get<std::vector<int>>(),
                         c.at("so2_weight").get<int>()};
          t.matrices[wl] = detail::cmat_from_json(c.at("gram"));
          t.errors[wl] = detail::cmat_from_json(c.at("err")).real();
        }
        return t;
      }
    }
  }

  const SampleSet set = make_samples(params);
  std::map<WeightLabel, std::vector<poly::NumPoly>> classes;
  for (int m = 0; m <= degree_max; ++m)
    for (auto& [q, wl] : polyspaces::q_basis(params.n, m))
      classes[wl].push_back(poly::to_numeric(q));

  GramTable t;
  for (const auto& [wl, polys] : classes) {
    const auto g = detail::matrix_mean(
        polys, set, [](const CVec&) { return cplx(1.0); }, params.chunk);
    Eigen::LLT<CMat> llt(g.value);
    if (llt.info() == Eigen::Success) {
      const CMat l = llt.matrixL();
      double pmax = 0.0, pmin = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < l.rows(); ++i) {
        pmax = std::max(pmax, std::norm(l(i, i)));
        pmin = std::min(pmin, std::norm(l(i, i)));
      }
      if (pmin < 1e-8 * pmax)
        t.warnings.push_back("ILL_CONDITIONED: class " + detail::weight_key(wl));
    } else {
      t.warnings.push_back("ILL_CONDITIONED: class " + detail::weight_key(wl) +
                           " indefinite");
    }
    t.matrices[wl] = g.value;
    t.errors[wl] = g.err;
  }

  if (!cache_file.empty()) {
    nlohmann::json classes_json = nlohmann::json::array();
    for (const auto& [wl, m] : t.matrices) {
      CMat errc = t.errors.at(wl).cast<cplx>();
      classes_json.push_back({{"torus_weight", wl.torus_weight},
                              {"so2_weight", wl.so2_weight},
                              {"gram", detail::cmat_to_json(m)},
                              {"err", detail::cmat_to_json(errc)}});
    }
    nlohmann::json j = {{"n", params.n},
                        {"lambda", params.lambda},
                        {"degree_max", degree_max},
                        {"samples", params.samples},
                        {"seed", params.seed},
                        {"basis_version", detail::kBasisVersion},
                        {"classes", classes_json}};
    j["digest"] = detail::fnv1a(j.at("classes").dump());
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    std::ofstream out(cache_file);
    out << j.dump(2) << "\n";
  }
  return t;
}

struct RayleighResult {
  double value;
  double stderr_;
};

// <a h, h> / <h, h> on the highest weight vector of the (k1,k2) block; both
// means share one sample set, so the f = 1 case is exactly 1.
inline RayleighResult rayleigh_eigenvalue_on(const symbols::SymbolSpec& spec, int k1,
                                             int k2, const MCParams& params,
                                             const SampleSet& set) {
  if (spec.kind == symbols::SymbolKind::Phase)
    throw Error(ErrorCode::KindError,
                "Rayleigh eigenvalues need a moment or invariant symbol");
  const poly::NumPoly h =
      poly::to_numeric(polyspaces::highest_weight_vector(params.n, k1, k2));
  double sa = 0.0, sb = 0.0, saa = 0.0, sab = 0.0, sbb = 0.0;
  std::vector<cplx> z(static_cast<size_t>(params.n));
  for (Eigen::Index s = 0; s < set.pts.cols(); ++s) {
    for (int j = 0; j < params.n; ++j) z[static_cast<size_t>(j)] = set.pts(j, s);
    const double h2 = std::norm(poly::evaluate(h, z));
    const double a = symbols::eval_symbol(spec, set.pts.col(s)).real();
    const double num = set.w[s] * a * h2;
    const double den = set.w[s] * h2;
    sa += num;
    sb += den;
    saa += num * num;
    sab += num * den;
    sbb += den * den;
  }
  const double r = sa / sb;
  const double var = (saa - 2.0 * r * sab + r * r * sbb) / (sb * sb);
  return {r, std::sqrt(std::max(var, 0.0))};
}

inline RayleighResult rayleigh_eigenvalue(const symbols::SymbolSpec& spec, int k1,
                                          int k2, const MCParams& params) {
  return rayleigh_eigenvalue_on(spec, k1, k2, params, make_samples(params));
}

struct CommutatorResult {
  double value;
  double noise;
};

// Frobenius norm of [T_A, T_B] with a first-order noise scale from the
// entrywise standard errors.
inline CommutatorResult commutator_of(const TruncatedOperator& ta,
                                      const TruncatedOperator& tb) {
  const CMat c = ta.entries * tb.entries - tb.entries * ta.entries;
  const RMat a2 = ta.entries.cwiseAbs2(), b2 = tb.entries.cwiseAbs2();
  const RMat sa2 = ta.err.cwiseAbs2(), sb2 = tb.err.cwiseAbs2();
  const RMat var = sa2 * b2.transpose() + a2 * sb2.transpose() +
                   sb2 * a2.transpose() + b2 * sa2.transpose();
  return {c.norm(), std::sqrt(var.sum())};
}

inline CommutatorResult commutator_norm(const symbols::SymbolSpec& a,
                                        const symbols::SymbolSpec& b, int degree_max,
                                        const MCParams& params) {
  const auto blocks = basis_blocks(params.n, degree_max);
  const SampleSet set = make_samples(params);
  const auto ta = detail::truncation_impl(detail::symbol_fn(a),
                                          symbols::print_symbol(a), blocks, set,
                                          params);
  const auto tb = detail::truncation_impl(detail::symbol_fn(b),
                                          symbols::print_symbol(b), blocks, set,
                                          params);
  return commutator_of(ta, tb);
}

// Max-entry discrepancy between the truncation of a o g^{-1} and the
// conjugation of the truncation of a by the representation matrix of g.
inline double equivariance_check(const symbols::SymbolSpec& spec,
                                 const actions::GroupElement& g, int degree_max,
                                 const MCParams& params) {
  const auto blocks = basis_blocks(params.n, degree_max);
  const SampleSet set = make_samples(params);
  const auto ta = detail::truncation_impl(detail::symbol_fn(spec),
                                          symbols::print_symbol(spec), blocks, set,
                                          params);
  auto moved = [&](const CVec& z) {
    const CVec zi = std::conj(g.t) * (g.A.transpose() * z);
    return symbols::eval_symbol(spec, zi);
  };
  const auto tga = detail::truncation_impl(moved, symbols::print_symbol(spec), blocks,
                                           set, params);

  // representation matrix on each block in the monomial coordinates, then
  // pushed through the orthonormalization
  const Eigen::Index k = ta.entries.rows();
  CMat x = CMat::Zero(k, k);
  Eigen::Index off = 0;
  for (const auto& b : blocks) {
    const Eigen::Index sz = static_cast<Eigen::Index>(b.polynomials.size());
    const auto monos = poly::monomials(params.n, b.degree);
    std::map<poly::MultiIndex, Eigen::Index, poly::GradedLex> row;
    for (size_t i = 0; i < monos.size(); ++i)
      row[monos[i]] = static_cast<Eigen::Index>(i);
    CMat orig = CMat::Zero(static_cast<Eigen::Index>(monos.size()), sz);
    CMat moved_m = orig;
    for (Eigen::Index j = 0; j < sz; ++j) {
      for (const auto& [a, c] : b.polynomials[static_cast<size_t>(j)].terms)
        orig(row.at(a), j) = c;
      const auto img = polyspaces::act_on_poly(g, b.polynomials[static_cast<size_t>(j)]);
      for (const auto& [a, c] : img.terms) moved_m(row.at(a), j) = c;
    }
    x.block(off, off, sz, sz) =
        orig.colPivHouseholderQr().solve(moved_m);
    off += sz;
  }
  const CMat lh = ta.linv.adjoint().inverse();  // L^H, block diagonal
  const CMat u = lh * x * ta.linv.adjoint();
  const CMat lhs = tga.entries;
  const CMat rhs = u * ta.entries * u.inverse();
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

// JSON serialization of a truncated operator; re-reading reproduces the
// in-memory matrices bit-exactly.
inline nlohmann::json operator_to_json(const TruncatedOperator& op) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto& b : op.blocks)
    blocks.push_back({{"k1", b.label.k1},
                      {"k2", b.label.k2},
                      {"size", b.polynomials.size()}});
  CMat errc = op.err.cast<cplx>();
  return {{"n", op.params.n},
          {"lambda", op.params.lambda},
          {"samples", op.params.samples},
          {"seed", op.params.seed},
          {"symbol", op.symbol_text},
          {"blocks", blocks},
          {"entries", detail::cmat_to_json(op.entries)},
          {"stderr", detail::cmat_to_json(errc)},
          {"warnings", op.warnings}};
}

}  // namespace tlab::bergman
