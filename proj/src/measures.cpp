#include "entlock/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "entlock/parallel.hpp"
#include "index_table.hpp"

namespace entlock {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Eigenvalues below this are treated as this value inside the log of the
// entropy gradient; their eigenvectors carry no amplitude, so the choice only
// bounds roundoff amplification.
constexpr double kLogFloor = 1e-20;
const double kInvLn2 = 1.0 / std::numbers::ln2;

std::vector<int> concat(std::span<const int> a, std::span<const int> b) {
  std::vector<int> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

Povm::Povm(std::vector<CMatrix> effects) : effects_(std::move(effects)) {
  if (effects_.empty()) throw Error(ErrorKind::BadShape, "POVM has no effects");
  const Eigen::Index d = effects_.front().rows();
  CMatrix sum = CMatrix::Zero(d, d);
  for (const CMatrix& e : effects_) {
    if (e.rows() != d || e.cols() != d) throw Error(ErrorKind::BadShape, "POVM effects differ in shape");
    if (!is_hermitian(e, 1e-8)) throw Error(ErrorKind::NotHermitian, "POVM effect is not Hermitian");
    if (hermitian_eigenvalues((e + e.adjoint()) * 0.5).minCoeff() < -1e-8) {
      throw Error(ErrorKind::NotAState, "POVM effect is not positive");
    }
    sum += e;
  }
  if (max_abs(sum - CMatrix::Identity(d, d)) > 1e-8) throw Error(ErrorKind::NotCptp, "POVM effects do not sum to I");
}

// ---------------------------------------------------------------------------
// Extension model and objective

ExtensionModel::ExtensionModel(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b) {
  init(psi, cut_a, cut_b);
}

ExtensionModel::ExtensionModel(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b) {
  init(purify(rho), cut_a, cut_b);
}

void ExtensionModel::init(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b) {
  const DimList& dims = psi.dims();
  const std::vector<int> ab = concat(cut_a, cut_b);
  detail::check_factor_set(dims, ab, false);
  if (cut_a.empty() || cut_b.empty()) throw Error(ErrorKind::DimMismatch, "both sides of the cut must be nonempty");
  const std::vector<int> rest = dims.complement(ab);
  const std::vector<int> order = concat(ab, rest);
  const CVector permuted = permute_systems(psi.vec(), dims, order);
  dim_a_ = static_cast<int>(dims.total(cut_a));
  dim_b_ = static_cast<int>(dims.total(cut_b));
  dim_c_ = static_cast<int>(dims.total(rest));
  amps_ = Eigen::Map<const RowMatrix>(permuted.data(), static_cast<Eigen::Index>(dim_a_) * dim_b_, dim_c_);
}

ExtensionObjective::ExtensionObjective(const ExtensionModel& model, ParamKind kind, int d_e, int d_env,
                                       std::vector<EntropyTerm> terms)
    : model_(&model), kind_(kind), d_e_(d_e), d_env_param_(d_env), terms_(std::move(terms)) {
  if (d_e < 1 || d_env < 1) throw Error(ErrorKind::BadShape, "extension dimensions must be >= 1");
  if (kind == ParamKind::Channel) {
    d_env_total_ = d_env;
  } else if (kind == ParamKind::Measurement) {
    d_env_total_ = d_e * d_env;
  } else {
    throw Error(ErrorKind::BadShape, "extension objective needs a channel or measurement parameter");
  }
  ext_dims_ = DimList{model.dim_a(), model.dim_b(), d_e_, d_env_total_};
  for (const EntropyTerm& t : terms_) {
    std::vector<int> keep = t.keep;
    std::sort(keep.begin(), keep.end());
    detail::check_factor_set(ext_dims_, keep, false);
    const std::vector<int> order = concat(keep, ext_dims_.complement(keep));
    TermLayout lay;
    lay.coeff = t.coeff;
    lay.table = detail::index_table(ext_dims_, order);
    lay.dk = ext_dims_.total(keep);
    lay.dr = ext_dims_.total() / lay.dk;
    layouts_.push_back(std::move(lay));
  }
}

Eigen::Index ExtensionObjective::param_rows() const noexcept {
  return static_cast<Eigen::Index>(d_e_) * d_env_param_;
}

CMatrix ExtensionObjective::stinespring(const CMatrix& v) const {
  if (kind_ == ParamKind::Channel) return v;
  // E = outcome y, env = (y', kappa); W[(y, y, kappa), c] = V[(y, kappa), c]
  const Eigen::Index n = d_e_, k = d_env_param_;
  CMatrix w = CMatrix::Zero(n * n * k, v.cols());
  for (Eigen::Index y = 0; y < n; ++y) w.middleRows((y * n + y) * k, k) = v.middleRows(y * k, k);
  return w;
}

double ExtensionObjective::operator()(const CMatrix& v, CMatrix* egrad) const {
  if (v.rows() != param_rows() || v.cols() != model_->dim_c()) {
    throw Error(ErrorKind::DimMismatch, "parameter has the wrong shape");
  }
  const CMatrix w = stinespring(v);
  const RowMatrix phi = model_->amplitudes() * w.transpose();  // rows (A,B), cols (E, env)
  const Complex* flat = phi.data();
  RowMatrix gphi;
  if (egrad) gphi = RowMatrix::Zero(phi.rows(), phi.cols());
  Complex* gflat = egrad ? gphi.data() : nullptr;

  double value = 0.0;
  for (const TermLayout& lay : layouts_) {
    CMatrix m(lay.dk, lay.dr);
    for (Eigen::Index a = 0; a < lay.dk; ++a) {
      for (Eigen::Index r = 0; r < lay.dr; ++r) m(a, r) = flat[lay.table[a * lay.dr + r]];
    }
    const bool keep_side = lay.dk <= lay.dr;
    const CMatrix gram = keep_side ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, egrad ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    value += lay.coeff * spectrum_entropy(eig.eigenvalues());
    if (!egrad) continue;
    const RVector f = eig.eigenvalues().unaryExpr([](double x) { return -(std::log2(std::max(x, kLogFloor)) + kInvLn2); });
    const CMatrix g = eig.eigenvectors() * f.asDiagonal() * eig.eigenvectors().adjoint();
    const CMatrix gm = (2.0 * lay.coeff) * (keep_side ? CMatrix(g * m) : CMatrix(m * g));
    for (Eigen::Index a = 0; a < lay.dk; ++a) {
      for (Eigen::Index r = 0; r < lay.dr; ++r) gflat[lay.table[a * lay.dr + r]] += gm(a, r);
    }
  }
  if (egrad) {
    const CMatrix gw = gphi.transpose() * model_->amplitudes().conjugate();
    if (kind_ == ParamKind::Channel) {
      *egrad = gw;
    } else {
      const Eigen::Index n = d_e_, k = d_env_param_;
      egrad->resize(v.rows(), v.cols());
      for (Eigen::Index y = 0; y < n; ++y) egrad->middleRows(y * k, k) = gw.middleRows((y * n + y) * k, k);
    }
  }
  return value;
}

std::vector<EntropyTerm> half_cmi_terms() {
  return {{0.5, {0, 2}}, {0.5, {1, 2}}, {-0.5, {2}}, {-0.5, {0, 1, 2}}};
}

std::vector<EntropyTerm> ep_terms() { return {{1.0, {0, 2}}}; }

// ---------------------------------------------------------------------------
// Multi-restart driver

namespace {

StiefelOptions stiefel_options(const OptConfig& cfg) {
  return {cfg.max_iters, cfg.step_tol, cfg.value_tol};
}

void check_config(const OptConfig& cfg) {
  if (cfg.restarts < 1 || cfg.max_iters < 1 || !(cfg.step_tol > 0) || !(cfg.value_tol > 0) || cfg.d_env < 0) {
    throw Error(ErrorKind::BadShape, "optimizer configuration values must be positive");
  }
}

// Minimizes `f` over isometries (rows x cols) from the given starts followed by
// Haar-random ones; restart r uses stream r of cfg.seed.
OptReport run_restarts(const StiefelObjective& f, Eigen::Index rows, Eigen::Index cols, std::vector<CMatrix> starts,
                       const OptConfig& cfg, std::string quantity, ParamKind kind) {
  check_config(cfg);
  if (rows < cols) throw Error(ErrorKind::BadShape, "extension too small to hold an isometry from the purifier");
  const auto n = static_cast<std::size_t>(cfg.restarts);
  std::vector<StiefelResult> results(n);
  parallel_for(n, [&](std::size_t r) {
    CMatrix start;
    if (r < starts.size()) {
      start = starts[r];
    } else {
      Rng rng = derive_rng(cfg.seed, r);
      start = haar_isometry(static_cast<int>(cols), static_cast<int>(rows), rng);
    }
    results[r] = minimize_on_stiefel(f, std::move(start), stiefel_options(cfg));
  });

  OptReport rep;
  rep.quantity = std::move(quantity);
  rep.kind = kind;
  rep.config = cfg;
  bool any_ok = false;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < n; ++r) {
    const StiefelResult& res = results[r];
    rep.history.push_back(res.value);
    rep.iterations.push_back(res.iterations);
    rep.failed.push_back(res.failed);
    any_ok = any_ok || !res.failed;
    if (std::isfinite(res.value) && res.value < best) {
      best = res.value;
      rep.best_restart = static_cast<int>(r);
    }
  }
  if (!any_ok || rep.best_restart < 0) throw Error(ErrorKind::OptimizerDiverged, "every restart failed");
  const StiefelResult& win = results[static_cast<std::size_t>(rep.best_restart)];
  rep.value = win.value;
  rep.best_params = win.point;
  rep.converged = win.converged;
  return rep;
}

// V|c> = |0>_E |c>_env: E is decoupled.
CMatrix trivial_start(int d_e, int d_env, int d_c) {
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d_e) * d_env, d_c);
  for (int c = 0; c < d_c; ++c) v(c, c) = 1.0;
  return v;
}

// V|c> = |c>_E |0>_env: E is a copy of the purifier.
CMatrix copy_start(int d_e, int d_env, int d_c) {
  CMatrix v = CMatrix::Zero(static_cast<Eigen::Index>(d_e) * d_env, d_c);
  for (int c = 0; c < d_c; ++c) v(static_cast<Eigen::Index>(c) * d_env, c) = 1.0;
  return v;
}

struct Reduced {
  DensityOperator rho;
  std::vector<int> cut_a, cut_b;
};

// Restricts rho to cut_a + cut_b and renumbers the cuts accordingly.
Reduced restrict_to_cut(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b) {
  std::vector<int> ab = concat(cut_a, cut_b);
  detail::check_factor_set(rho.dims(), ab, false);
  if (cut_a.empty() || cut_b.empty()) throw Error(ErrorKind::DimMismatch, "both sides of the cut must be nonempty");
  std::sort(ab.begin(), ab.end());
  if (ab.size() == rho.dims().size()) return {rho, {cut_a.begin(), cut_a.end()}, {cut_b.begin(), cut_b.end()}};
  auto renumber = [&](std::span<const int> cut) {
    std::vector<int> out;
    for (int f : cut) out.push_back(static_cast<int>(std::lower_bound(ab.begin(), ab.end(), f) - ab.begin()));
    return out;
  };
  return {rho.reduce(ab), renumber(cut_a), renumber(cut_b)};
}

int default_env(const OptConfig& cfg, int d_c) { return cfg.d_env > 0 ? cfg.d_env : d_c; }

OptReport esq_search(const ExtensionModel& model, int env_dim, const OptConfig& cfg) {
  const int d_env = default_env(cfg, model.dim_c());
  const ExtensionObjective obj(model, ParamKind::Channel, env_dim, d_env, half_cmi_terms());
  std::vector<CMatrix> starts;
  if (d_env >= model.dim_c()) starts.push_back(trivial_start(env_dim, d_env, model.dim_c()));
  OptReport rep = run_restarts(std::cref(obj), obj.param_rows(), model.dim_c(), std::move(starts), cfg,
                               "esq_upper_bound", ParamKind::Channel);
  rep.d_out = env_dim;
  rep.d_env = d_env;
  return rep;
}

OptReport ep_search(const ExtensionModel& model, int ext_dim, const OptConfig& cfg, std::vector<CMatrix> starts) {
  const int d_env = default_env(cfg, model.dim_c());
  const ExtensionObjective obj(model, ParamKind::Channel, ext_dim, d_env, ep_terms());
  if (d_env >= model.dim_c()) starts.push_back(trivial_start(ext_dim, d_env, model.dim_c()));
  if (ext_dim >= model.dim_c()) starts.push_back(copy_start(ext_dim, d_env, model.dim_c()));
  OptReport rep = run_restarts(std::cref(obj), obj.param_rows(), model.dim_c(), std::move(starts), cfg,
                               "ep_upper_bound", ParamKind::Channel);
  rep.d_out = ext_dim;
  rep.d_env = d_env;
  return rep;
}

bool is_rank_one(const DensityOperator& rho) {
  const RVector ev = hermitian_eigenvalues(rho.mat());
  int rank = 0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) rank += ev(k) > 1e-12 ? 1 : 0;
  return rank <= 1;
}

}  // namespace

OptReport squashed_upper_bound(const PureState& psi, std::span<const int> cut_a, std::span<const int> cut_b,
                               int env_dim, const OptConfig& cfg) {
  if (env_dim < 1) throw Error(ErrorKind::BadShape, "env_dim must be >= 1");
  const ExtensionModel model(psi, cut_a, cut_b);
  return esq_search(model, env_dim, cfg);
}

OptReport squashed_upper_bound(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b,
                               int env_dim, const OptConfig& cfg) {
  if (env_dim < 1) throw Error(ErrorKind::BadShape, "env_dim must be >= 1");
  const Reduced red = restrict_to_cut(rho, cut_a, cut_b);
  const ExtensionModel model(red.rho, red.cut_a, red.cut_b);
  return esq_search(model, env_dim, cfg);
}

OptReport squashed_upper_bound_measurement(const PureState& psi, std::span<const int> cut_a,
                                           std::span<const int> cut_b, int outcomes, const OptConfig& cfg) {
  if (outcomes < 1) throw Error(ErrorKind::BadShape, "outcomes must be >= 1");
  const ExtensionModel model(psi, cut_a, cut_b);
  const int k = model.dim_c();
  const ExtensionObjective obj(model, ParamKind::Measurement, outcomes, k, half_cmi_terms());
  // trivial POVM {I, 0, ...}
  std::vector<CMatrix> starts{trivial_start(outcomes, k, k)};
  OptReport rep = run_restarts(std::cref(obj), obj.param_rows(), k, std::move(starts), cfg,
                               "esq_upper_bound_measurement", ParamKind::Measurement);
  rep.d_out = outcomes;
  rep.d_env = k;
  return rep;
}

OptReport entanglement_of_purification(const DensityOperator& rho, std::span<const int> cut_a,
                                       std::span<const int> cut_b, int ext_dim, const OptConfig& cfg) {
  if (ext_dim < 0) throw Error(ErrorKind::BadShape, "ext_dim must be >= 0");
  check_config(cfg);
  const Reduced red = restrict_to_cut(rho, cut_a, cut_b);
  if (is_rank_one(red.rho)) {
    OptReport rep;
    rep.quantity = "ep_upper_bound";
    rep.kind = ParamKind::Analytic;
    rep.config = cfg;
    rep.converged = true;
    rep.value = entanglement_entropy(purify(red.rho), red.cut_a);
    return rep;
  }
  const ExtensionModel model(red.rho, red.cut_a, red.cut_b);
  return ep_search(model, ext_dim == 0 ? model.dim_c() : ext_dim, cfg, {});
}

std::vector<OptReport> ep_series(const DensityOperator& rho, std::span<const int> cut_a, std::span<const int> cut_b,
                                 int cap, const OptConfig& cfg) {
  if (cap < 1) throw Error(ErrorKind::BadShape, "cap must be >= 1");
  check_config(cfg);
  const Reduced red = restrict_to_cut(rho, cut_a, cut_b);
  std::vector<OptReport> series;
  if (is_rank_one(red.rho)) {
    for (int e = 1; e <= cap; ++e) series.push_back(entanglement_of_purification(red.rho, red.cut_a, red.cut_b, e, cfg));
    return series;
  }
  const ExtensionModel model(red.rho, red.cut_a, red.cut_b);
  for (int e = 1; e <= cap; ++e) {
    std::vector<CMatrix> starts;
    if (!series.empty()) {
      // E is the major row index, so padding rows embeds E_{e-1} into E_e.
      const CMatrix& prev = series.back().best_params;
      CMatrix grown = CMatrix::Zero(static_cast<Eigen::Index>(e) * series.back().d_env, prev.cols());
      grown.topRows(prev.rows()) = prev;
      starts.push_back(grown);
    }
    series.push_back(ep_search(model, e, cfg, std::move(starts)));
  }
  return series;
}

// ---------------------------------------------------------------------------
// Accessible information

double povm_mutual_information(const Ensemble& ens, const Povm& povm) {
  const std::size_t nx = ens.size(), ny = povm.size();
  std::vector<double> joint(nx * ny);
  std::vector<double> py(ny, 0.0);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      const double p = ens.items()[x].prob * std::max(0.0, (povm.effects()[y] * ens.items()[x].state.mat()).trace().real());
      joint[x * ny + y] = p;
      py[y] += p;
    }
  }
  double info = 0.0;
  for (std::size_t x = 0; x < nx; ++x) {
    const double px = ens.items()[x].prob;
    for (std::size_t y = 0; y < ny; ++y) {
      const double p = joint[x * ny + y];
      if (p > 0.0) info += p * std::log2(p / (px * py[y]));
    }
  }
  return info;
}

Povm povm_from_isometry(const CMatrix& v, int outcomes) {
  if (outcomes < 1 || v.rows() % outcomes != 0) throw Error(ErrorKind::BadShape, "rows must split into outcome blocks");
  const Eigen::Index k = v.rows() / outcomes;
  std::vector<CMatrix> effects;
  for (int y = 0; y < outcomes; ++y) {
    const CMatrix block = v.middleRows(y * k, k);
    CMatrix e = block.adjoint() * block;
    effects.push_back((e + e.adjoint()) * 0.5);
  }
  return Povm(std::move(effects));
}

StiefelObjective accessible_information_objective(const Ensemble& ens, int outcomes) {
  if (outcomes < 1) throw Error(ErrorKind::BadShape, "outcomes must be >= 1");
  std::vector<double> probs;
  std::vector<CMatrix> states;
  for (const auto& it : ens.items()) {
    probs.push_back(it.prob);
    states.push_back(it.state.mat());
  }
  const Eigen::Index d = ens.dim();
  return [probs, states, outcomes, d](const CMatrix& v, CMatrix* egrad) -> double {
    const Eigen::Index k = v.rows() / outcomes;
    const std::size_t nx = probs.size();
    const auto ny = static_cast<std::size_t>(outcomes);
    std::vector<double> cond(nx * ny);  // P(y|x)
    std::vector<double> q(ny, 0.0);
    std::vector<CMatrix> blocks(ny);
    for (std::size_t y = 0; y < ny; ++y) {
      blocks[y] = v.middleRows(static_cast<Eigen::Index>(y) * k, k);
      for (std::size_t x = 0; x < nx; ++x) {
        const double p = std::max(0.0, (blocks[y] * states[x] * blocks[y].adjoint()).trace().real());
        cond[x * ny + y] = p;
        q[y] += probs[x] * p;
      }
    }
    double info = 0.0;
    for (std::size_t x = 0; x < nx; ++x) {
      for (std::size_t y = 0; y < ny; ++y) {
        const double p = cond[x * ny + y];
        if (p > 0.0 && q[y] > 0.0) info += probs[x] * p * std::log2(p / q[y]);
      }
    }
    if (egrad) {
      egrad->resize(v.rows(), d);
      for (std::size_t y = 0; y < ny; ++y) {
        CMatrix g = CMatrix::Zero(d, d);
        for (std::size_t x = 0; x < nx; ++x) {
          const double ratio = std::max(cond[x * ny + y], kLogFloor) / std::max(q[y], kLogFloor);
          g += (probs[x] * std::log2(ratio)) * states[x];
        }
        // gradient of -I
        egrad->middleRows(static_cast<Eigen::Index>(y) * k, k) = -2.0 * blocks[y] * g;
      }
    }
    return -info;
  };
}

OptReport accessible_information(const Ensemble& ens, int outcomes, const OptConfig& cfg) {
  const StiefelObjective f = accessible_information_objective(ens, outcomes);
  const Eigen::Index d = ens.dim();
  OptReport rep = run_restarts(f, outcomes * d, d, {}, cfg, "iacc_lower_bound", ParamKind::Povm);
  rep.value = -rep.value;
  for (double& h : rep.history) h = -h;
  rep.d_out = outcomes;
  rep.d_env = static_cast<int>(d);
  return rep;
}

// ---------------------------------------------------------------------------
// Flower-state entanglement of formation

Ensemble flower_ensemble(int d, std::span<const CMatrix> unitaries) {
  const CMatrix u1 = fourier_unitary(d);
  const int m = static_cast<int>(unitaries.size());
  if (m < 1) throw Error(ErrorKind::BadShape, "need at least one unitary");
  std::vector<EnsembleItem> items;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < m; ++k) {
      const CMatrix vu = j == 0 ? unitaries[k] : CMatrix(unitaries[k] * u1);
      for (int i = 0; i < d; ++i) {
        items.push_back({1.0 / (2.0 * d * m), DensityOperator::trusted(vu.col(i) * vu.col(i).adjoint(), DimList{d})});
      }
    }
  }
  return Ensemble(std::move(items));
}

EfFlowerResult ef_flower(int d, std::span<const CMatrix> unitaries, int outcomes, const OptConfig& cfg) {
  const PureState psi = flower_purification_general(d, unitaries);
  EfFlowerResult out;
  const std::vector<int> aside{0, 1};
  out.marginal_entropy = entanglement_entropy(psi, aside);
  out.accessible = accessible_information(flower_ensemble(d, unitaries), outcomes == 0 ? d * d : outcomes, cfg);
  out.value = out.marginal_entropy - out.accessible.value;
  return out;
}

// ---------------------------------------------------------------------------
// Fixed extensions

double cmi_for_extension(const PureState& psi, const KrausChannel& channel, std::span<const int> cut_a,
                         std::span<const int> cut_b) {
  const ExtensionModel model(psi, cut_a, cut_b);
  if (channel.d_in() != model.dim_c()) throw Error(ErrorKind::DimMismatch, "channel input differs from purifier");
  const ExtensionObjective obj(model, ParamKind::Channel, channel.d_out(), static_cast<int>(channel.kraus().size()),
                               half_cmi_terms());
  return obj(stinespring_isometry(channel), nullptr);
}

double cmi_for_extension(const DensityOperator& rho, const KrausChannel& channel, std::span<const int> cut_a,
                         std::span<const int> cut_b) {
  const Reduced red = restrict_to_cut(rho, cut_a, cut_b);
  return cmi_for_extension(purify(red.rho), channel, red.cut_a, red.cut_b);
}

double ep_for_extension(const PureState& psi, const KrausChannel& channel, std::span<const int> cut_a,
                        std::span<const int> cut_b) {
  const ExtensionModel model(psi, cut_a, cut_b);
  if (channel.d_in() != model.dim_c()) throw Error(ErrorKind::DimMismatch, "channel input differs from purifier");
  const ExtensionObjective obj(model, ParamKind::Channel, channel.d_out(), static_cast<int>(channel.kraus().size()),
                               ep_terms());
  return obj(stinespring_isometry(channel), nullptr);
}

AdditivityReport ep_additivity_check(const DensityOperator& rho1, const DensityOperator& rho2, const OptConfig& cfg,
                                     int ext_dim) {
  if (rho1.dims().size() != 2 || rho2.dims().size() != 2) {
    throw Error(ErrorKind::DimMismatch, "additivity check expects bipartite (A, B) states");
  }
  const std::vector<int> a{0}, b{1};
  const std::vector<int> ja{0, 2}, jb{1, 3};
  AdditivityReport rep{entanglement_of_purification(rho1, a, b, ext_dim, cfg),
                       entanglement_of_purification(rho2, a, b, ext_dim, cfg),
                       entanglement_of_purification(tensor(rho1, rho2), ja, jb, ext_dim, cfg)};
  return rep;
}

double reevaluate(const OptReport& report, const ExtensionModel& model, std::span<const EntropyTerm> terms) {
  if (report.kind != ParamKind::Channel && report.kind != ParamKind::Measurement) {
    throw Error(ErrorKind::BadShape, "report does not hold an extension");
  }
  const ExtensionObjective obj(model, report.kind, report.d_out, report.d_env, {terms.begin(), terms.end()});
  return obj(report.best_params, nullptr);
}

}  // namespace entlock
