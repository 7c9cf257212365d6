#include "entlock/harness.hpp"

#include <chrono>
#include <cmath>
#include <random>

#include "entlock/parallel.hpp"

namespace entlock {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

struct SampleResult {
  std::vector<double> slacks;  // one per check; NaN = not applicable
  Json witness;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Runs `sample` for i = 0..samples-1 with rng stream i of `seed` and reduces
// in index order. checks[0] is the headline property.
SweepReport run_sweep(std::string property, Json params, int samples, std::uint64_t seed,
                      const std::vector<std::pair<std::string, double>>& checks,
                      const std::function<SampleResult(int, Rng&)>& sample) {
  if (samples < 0) throw Error(ErrorKind::BadShape, "samples must be >= 0");
  const auto t0 = Clock::now();
  std::vector<SampleResult> results(static_cast<std::size_t>(samples));
  parallel_for(results.size(), [&](std::size_t i) {
    Rng rng = derive_rng(seed, i);
    results[i] = sample(static_cast<int>(i), rng);
    if (results[i].slacks.size() != checks.size()) throw Error(ErrorKind::BadShape, "check count mismatch");
  });

  SweepReport rep;
  rep.property = std::move(property);
  rep.params = std::move(params);
  rep.samples = samples;
  rep.seed = seed;
  for (const auto& [name, tol] : checks) rep.checks.push_back({name, tol, 0, std::numeric_limits<double>::infinity()});
  int worst = -1;
  for (int i = 0; i < samples; ++i) {
    const SampleResult& r = results[static_cast<std::size_t>(i)];
    bool bad = false;
    for (std::size_t c = 0; c < checks.size(); ++c) {
      const double s = r.slacks[c];
      if (std::isnan(s)) continue;
      CheckResult& cr = rep.checks[c];
      if (s < -cr.tolerance) {
        ++cr.violations;
        bad = true;
      }
      cr.min_slack = std::min(cr.min_slack, s);
    }
    if (bad) ++rep.violations;
    if (!std::isnan(r.slacks[0]) && (worst < 0 || r.slacks[0] < rep.min_slack)) {
      worst = i;
      rep.min_slack = r.slacks[0];
    }
  }
  if (worst >= 0) rep.worst_case = results[static_cast<std::size_t>(worst)].witness;
  rep.wallclock_ms = elapsed_ms(t0);
  return rep;
}

void add_fixed_check(SweepReport& rep, std::string name, double tol, double slack) {
  CheckResult cr{std::move(name), tol, slack < -tol ? 1 : 0, slack};
  rep.violations += cr.violations;
  rep.checks.push_back(std::move(cr));
}

double deviation(double a, double b) { return -std::abs(a - b); }

double log2d(int d) { return std::log2(static_cast<double>(d)); }

int int_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_number_integer()) {
    throw Error(ErrorKind::Parse, std::string("field 'worst_case.") + key + "': missing or not an integer");
  }
  return j[key].get<int>();
}

const Json& obj_field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::Parse, std::string("field 'worst_case.") + key + "': missing");
  }
  return j[key];
}

double shannon_of_diagonal(const CMatrix& m) {
  std::vector<double> p(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index k = 0; k < m.rows(); ++k) p[static_cast<std::size_t>(k)] = std::max(0.0, m(k, k).real());
  return shannon_entropy(p);
}

AbelianGroup group_for(const std::string& name, int d) {
  if (name == "zd") return AbelianGroup::zd(d);
  if (name == "z2l") {
    int l = 0;
    while ((1 << l) < d) ++l;
    if ((1 << l) != d) throw Error(ErrorKind::BadShape, "group z2l needs d = 2^l, got " + std::to_string(d));
    return AbelianGroup::z2l(l);
  }
  throw Error(ErrorKind::Parse, "unknown group '" + name + "' (expected zd or z2l)");
}

std::string group_name(const AbelianGroup& g) { return g.kind() == AbelianGroup::Kind::Zd ? "zd" : "z2l"; }

// Entropies of (id (x) Lambda) psi for the flower-type extension problems.
struct ExtensionEntropies {
  double s_ae, s_be, s_e, s_abe;
  double half_cmi() const noexcept { return 0.5 * (s_ae + s_be - s_e - s_abe); }
};

ExtensionEntropies extension_entropies(const ExtensionModel& model, const KrausChannel& ch) {
  const CMatrix w = stinespring_isometry(ch);
  const int de = ch.d_out(), denv = static_cast<int>(ch.kraus().size());
  auto s = [&](std::vector<int> keep) {
    return ExtensionObjective(model, ParamKind::Channel, de, denv, {{1.0, std::move(keep)}})(w, nullptr);
  };
  return {s({0, 2}), s({1, 2}), s({2}), s({0, 1, 2})};
}

// ---------------------------------------------------------------------------
// Per-property evaluations; shared by the sweeps and by replay.

std::vector<double> eval_lemma1(const KrausChannel& ch, const AbelianGroup& g) {
  return {lemma1_terms(ch, g.fourier()).slack()};
}

std::vector<double> eval_relent(int d, const KrausChannel& ch) {
  const DensityOperator rho = choi_state(ch);
  const DensityOperator tau = maximally_mixed(d);
  const DensityOperator sigma = tensor(tau, apply(ch, tau));
  const CMatrix f = fourier_unitary(d);
  const DensityOperator rho0 = apply_to_factor(dephasing_channel(CMatrix::Identity(d, d)), rho, 0);
  const DensityOperator rho1 = apply_to_factor(dephasing_channel(f), rho, 0);
  const double dr = relative_entropy(rho, sigma).bits();
  const double d0 = relative_entropy(rho0, sigma).bits();
  const double d1 = relative_entropy(rho1, sigma).bits();
  const Lemma1Terms t = lemma1_terms(ch, f);
  const double slack = dr - d0 - d1;
  return {slack, deviation(dr, t.mutual), deviation(d0, t.chi0), deviation(d1, t.chi1), deviation(slack, t.slack())};
}

DensityOperator omega_extension(int d, const KrausChannel& ch) {
  const DensityOperator rho = choi_state(ch);
  const AbelianGroup g = AbelianGroup::zd(d);
  const Eigen::Index dc = rho.dim();
  CMatrix big = CMatrix::Zero(static_cast<Eigen::Index>(d) * d * dc, static_cast<Eigen::Index>(d) * d * dc);
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      const Eigen::Index off = (static_cast<Eigen::Index>(a) * d + b) * dc;
      big.block(off, off, dc, dc) = weyl_twist(rho, a, b, g).mat() / static_cast<double>(d * d);
    }
  }
  return DensityOperator::trusted(std::move(big), DimList{d, d, d, ch.d_out()});
}

std::vector<double> eval_omega(int d, const KrausChannel& ch) {
  const DensityOperator om = omega_extension(d, ch);
  const std::vector<int> a{0}, b{1}, ab{0, 1}, c{2, 3}, ac{0, 2, 3};
  const double i_ab_c = mutual_information(om, ab, c);
  const double i_a_c = mutual_information(om, a, c);
  const double i_b_c = mutual_information(om, b, c);
  const double i_b_c_given_a = conditional_mutual_information(om, b, c, a);
  const double i_b_ac = mutual_information(om, b, ac);

  const DensityOperator rho = choi_state(ch);
  const DensityOperator tau = maximally_mixed(d);
  const DensityOperator sigma = tensor(tau, apply(ch, tau));
  const double dr = relative_entropy(rho, sigma).bits();
  const double d0 = relative_entropy(apply_to_factor(dephasing_channel(CMatrix::Identity(d, d)), rho, 0), sigma).bits();
  const double d1 = relative_entropy(apply_to_factor(dephasing_channel(fourier_unitary(d)), rho, 0), sigma).bits();
  return {i_ab_c - i_a_c - i_b_c,
          deviation(dr, i_ab_c),
          deviation(d0, i_a_c),
          deviation(d1, i_b_c),
          deviation(i_ab_c, i_a_c + i_b_c_given_a),
          deviation(i_b_ac, i_b_c_given_a)};
}

std::vector<double> eval_prop1(int d, const KrausChannel& ch) {
  const PureState psi = flower_purification(d);
  const std::vector<int> cut_a{0, 1}, cut_b{2, 3};
  const ExtensionModel model(psi, cut_a, cut_b);
  const ExtensionEntropies s = extension_entropies(model, ch);
  const Lemma1Terms t = lemma1_terms(ch, fourier_unitary(d));
  const DensityOperator tau = maximally_mixed(d);
  const double s_lt = entropy(apply(ch, tau));
  const double s_choi = entropy(choi_state(ch));
  const double s_ae_formula = 1.0 + log2d(d) + s_lt - 0.5 * t.chi0 - 0.5 * t.chi1;
  const double cmi = 2.0 * s.half_cmi();
  return {s.half_cmi() - flower_esq_value(d, 1),
          deviation(s.s_e, s_lt),
          deviation(s.s_abe, s_choi),
          deviation(s.s_ae, s_ae_formula),
          deviation(s.s_be, s_ae_formula),
          deviation(cmi, 2.0 + log2d(d) + t.mutual - t.chi0 - t.chi1)};
}

double eval_prop2(int d, std::span<const CMatrix> unitaries, const KrausChannel& ch) {
  const PureState psi = flower_purification_general(d, unitaries);
  const std::vector<int> cut_a{0, 1}, cut_b{2, 3};
  return cmi_for_extension(psi, ch, cut_a, cut_b) - flower_esq_value(d, static_cast<int>(unitaries.size()));
}

std::vector<double> eval_prop3(const DensityOperator& rho, const KrausChannel& ch) {
  const int d = rho.dims()[0];
  const PureState psi = purify(rho);
  const DensityOperator ext = apply_to_factor(ch, psi, 2);
  const std::vector<int> a{0}, b{1}, ae{0, 2}, be{1, 2};
  const double s_a = entropy(ext.reduce(a)), s_b = entropy(ext.reduce(b));
  const double s_ae = entropy(ext.reduce(ae)), s_be = entropy(ext.reduce(be));
  const CMatrix f = kron(swap_operator(d), CMatrix::Identity(ch.d_out(), ch.d_out()));
  const double asym = max_abs(f * ext.mat() * f - ext.mat());
  return {s_ae - s_a, -asym, deviation(s_ae - s_a, s_be - s_b)};
}

std::vector<double> eval_coherent(int d, const KrausChannel& ch) {
  const Lemma1Terms t = lemma1_terms(ch, fourier_unitary(d));
  const double icoh = coherent_information(ch, d);
  const double ld = log2d(d);
  const double eps_sum = (ld - t.chi0) + (ld - t.chi1);
  const double eps = ld - std::min(t.chi0, t.chi1);
  return {icoh - (ld - 2.0 * eps_sum), icoh - (ld - 2.0 * eps)};
}

double eval_maassen_uffink(const DensityOperator& rho) {
  const int d = static_cast<int>(rho.dim());
  const CMatrix f = fourier_unitary(d);
  return shannon_of_diagonal(rho.mat()) + shannon_of_diagonal(f.adjoint() * rho.mat() * f) - log2d(d);
}

double omega_corollary_tolerance(int d) { return d <= 2 ? 5e-3 : 1e-2; }

double eval_omega_corollary_headline(int d, const CMatrix& v, int ext_dim, int d_env) {
  const std::vector<int> a{0, 1}, b{2};
  const ExtensionModel model(omega_state(d), a, b);
  const ExtensionObjective obj(model, ParamKind::Channel, ext_dim, d_env, ep_terms());
  return omega_corollary_tolerance(d) - std::abs(obj(v, nullptr) - log2d(d));
}

Json channel_witness(int d, const KrausChannel& ch) { return Json{{"d", d}, {"channel", channel_to_json(ch)}}; }

KrausChannel near_identity_channel(int d, Rng& rng) {
  CMatrix v = CMatrix::Zero(2 * d, d);
  for (int c = 0; c < d; ++c) v(2 * c, c) = 1.0;
  v += 0.1 * complex_gaussian(2 * d, d, rng);
  return channel_from_isometry(polar_isometry(v), d, 2);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::BadShape, what);
}

}  // namespace

// ---------------------------------------------------------------------------

Json sweep_report_to_json(const SweepReport& rep, bool timing) {
  Json j;
  j["property"] = rep.property;
  j["params"] = rep.params;
  j["samples"] = rep.samples;
  j["violations"] = rep.violations;
  j["min_slack"] = number_or_null(rep.min_slack);
  j["worst_case"] = rep.worst_case;
  j["seed"] = rep.seed;
  j["wallclock_ms"] = timing ? Json(rep.wallclock_ms) : Json(nullptr);
  Json checks = Json::array();
  for (const CheckResult& c : rep.checks) {
    checks.push_back(Json{{"name", c.name},
                          {"tolerance", c.tolerance},
                          {"violations", c.violations},
                          {"min_slack", number_or_null(c.min_slack)}});
  }
  j["checks"] = std::move(checks);
  return j;
}

Lemma1Terms lemma1_terms(const KrausChannel& ch, const CMatrix& conj_basis) {
  const int d = ch.d_in();
  const auto [e0, e1] = basis_ensembles(conj_basis);
  return {holevo_chi(push_forward(ch, e0)), holevo_chi(push_forward(ch, e1)), channel_mutual_information(ch, d)};
}

double flower_esq_value(int d, int m) { return 0.5 * log2d(d) + std::log2(static_cast<double>(m)) + 1.0; }

KrausChannel flower_flag_channel(int d, std::span<const CMatrix> unitaries) {
  const int m = static_cast<int>(unitaries.size());
  const CMatrix u1 = fourier_unitary(d);
  std::vector<CMatrix> ks;
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < m; ++k) {
      const CMatrix vu = j == 0 ? unitaries[k] : CMatrix(unitaries[k] * u1);
      const int jk = j * m + k;
      for (int i = 0; i < d; ++i) {
        CMatrix op = CMatrix::Zero(d, 2 * m * d);
        op.block(i, static_cast<Eigen::Index>(jk) * d, 1, d) = vu.col(i).adjoint();
        ks.push_back(std::move(op));
      }
    }
  }
  return KrausChannel(std::move(ks));
}

SweepReport verify_lemma1(int d, const AbelianGroup& group, int samples, int d_out, int d_env, std::uint64_t seed) {
  require(d >= 2 && group.order() == d, "group order must equal d >= 2");
  require(d_out >= 1 && d_env >= 1 && d_out * d_env >= d, "need d_out * d_env >= d");
  const std::string gname = group_name(group);
  Json params{{"d", d}, {"group", gname}, {"d_out", d_out}, {"d_env", d_env}};
  return run_sweep("lemma1", std::move(params), samples, seed, {{"chi0+chi1<=I", kInequalityTol}},
                   [&](int, Rng& rng) {
                     const KrausChannel ch = random_channel(d, d_out, d_env, rng);
                     Json w = channel_witness(d, ch);
                     w["group"] = gname;
                     return SampleResult{eval_lemma1(ch, group), std::move(w)};
                   });
}

SweepReport verify_lemma1_relent_form(int d, int samples, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  return run_sweep("lemma1-relent", Json{{"d", d}, {"d_out", d}, {"d_env", d}}, samples, seed,
                   {{"D0+D1<=D", kInequalityTol},
                    {"D(rho)=I(tau;L)", kIdentityTol},
                    {"D(rho0)=chi0", kIdentityTol},
                    {"D(rho1)=chi1", kIdentityTol},
                    {"slack=lemma1_slack", kIdentityTol}},
                   [&](int, Rng& rng) {
                     const KrausChannel ch = random_channel(d, d, d, rng);
                     return SampleResult{eval_relent(d, ch), channel_witness(d, ch)};
                   });
}

SweepReport verify_omega_identities(int d, int samples, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  return run_sweep("omega", Json{{"d", d}, {"d_out", d}, {"d_env", d}}, samples, seed,
                   {{"I(A;C)+I(B;C)<=I(AB;C)", kInequalityTol},
                    {"D(rho)=I(AB;C)", kIdentityTol},
                    {"D(rho0)=I(A;C)", kIdentityTol},
                    {"D(rho1)=I(B;C)", kIdentityTol},
                    {"I(AB;C)=I(A;C)+I(B;C|A)", kIdentityTol},
                    {"I(B;AC)=I(B;C|A)", kIdentityTol}},
                   [&](int, Rng& rng) {
                     const KrausChannel ch = random_channel(d, d, d, rng);
                     return SampleResult{eval_omega(d, ch), channel_witness(d, ch)};
                   });
}

SweepReport verify_prop1(int d, int samples, std::span<const int> env_dims, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  require(!env_dims.empty(), "need at least one env_dim");
  for (int e : env_dims) require(e >= 1, "env_dims must be >= 1");
  std::vector<std::pair<std::string, double>> checks{{"half_cmi>=1+log(d)/2", kInequalityTol},
                                                     {"S(E)=S(L(tau))", kIdentityTol},
                                                     {"S(AA'BB'E)=S(choi)", kIdentityTol},
                                                     {"S(AA'E)=formula", kIdentityTol},
                                                     {"S(BB'E)=formula", kIdentityTol},
                                                     {"cmi_chain", kIdentityTol}};
  const std::size_t base = checks.size();
  for (int e : env_dims) checks.emplace_back("half_cmi>=1+log(d)/2[env_dim=" + std::to_string(e) + "]", kInequalityTol);
  const int n_env = static_cast<int>(env_dims.size());
  Json params{{"d", d}, {"env_dims", std::vector<int>(env_dims.begin(), env_dims.end())}, {"d_env", d},
              {"samples_per_env_dim", samples}};
  SweepReport rep = run_sweep("prop1", std::move(params), samples * n_env, seed, checks, [&](int i, Rng& rng) {
    const int slot = i / std::max(samples, 1);
    const KrausChannel ch = random_channel(d, env_dims[static_cast<std::size_t>(slot)], d, rng);
    std::vector<double> s = eval_prop1(d, ch);
    s.resize(checks.size(), kNaN);
    s[base + static_cast<std::size_t>(slot)] = s[0];
    return SampleResult{std::move(s), channel_witness(d, ch)};
  });

  const double target = flower_esq_value(d, 1);
  const PureState psi = flower_purification(d);
  const std::vector<int> cut_a{0, 1}, cut_b{2, 3};
  add_fixed_check(rep, "trivial_extension=1+log(d)/2", 1e-10,
                  deviation(cmi_for_extension(psi, replacement_channel(d, 1), cut_a, cut_b), target));
  add_fixed_check(rep, "conjugate_measurement_attains", kIdentityTol,
                  deviation(cmi_for_extension(psi, dephasing_channel(CMatrix::Identity(d, d)), cut_a, cut_b), target));
  // rho^{ABB'}: purifier is A'C; the flag channel records the label i
  const std::vector<CMatrix> id{CMatrix::Identity(d, d)};
  const std::vector<int> fa{0}, fb{2, 3};
  add_fixed_check(rep, "classical_flag_cmi=0", kIdentityTol,
                  -std::abs(cmi_for_extension(psi, flower_flag_channel(d, id), fa, fb)));
  return rep;
}

SweepReport verify_prop2_formula(int d, int m, int samples, std::uint64_t seed) {
  require(d >= 2 && m >= 1, "need d >= 2, m >= 1");
  // V_k from a stream that the per-sample streams never use
  Rng urng = derive_rng(seed, std::uint64_t{1} << 40);
  std::vector<CMatrix> us;
  for (int k = 0; k < m; ++k) us.push_back(haar_unitary(d, urng));
  Json ujson = Json::array();
  for (const CMatrix& u : us) ujson.push_back(matrix_to_json(u));
  Json params{{"d", d}, {"m", m}, {"d_out", d}, {"d_env", d}, {"value_bits", flower_esq_value(d, m)}};
  SweepReport rep = run_sweep("prop2", std::move(params), samples, seed, {{"half_cmi>=formula", kInequalityTol}},
                              [&](int, Rng& rng) {
                                const KrausChannel ch = random_channel(d, d, d, rng);
                                Json w = channel_witness(d, ch);
                                w["unitaries"] = ujson;
                                return SampleResult{{eval_prop2(d, us, ch)}, std::move(w)};
                              });
  add_fixed_check(rep, "trivial_extension=formula", 1e-10, -std::abs(eval_prop2(d, us, replacement_channel(d, 1))));
  const std::vector<int> fa{0}, fb{2, 3};
  add_fixed_check(rep, "classical_flag_cmi=0", kIdentityTol,
                  -std::abs(cmi_for_extension(flower_purification_general(d, us), flower_flag_channel(d, us), fa, fb)));
  return rep;
}

SweepReport verify_prop3(int d, int samples, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  const auto [psym, panti] = sym_antisym_projectors(d);
  const int rsym = d * (d + 1) / 2, ranti = d * (d - 1) / 2;
  return run_sweep("prop3", Json{{"d", d}, {"d_env", 2}}, samples, seed,
                   {{"S(AE)>=S(A)", kInequalityTol}, {"swap_symmetry", kIdentityTol}, {"S(E|A)=S(E|B)", kIdentityTol}},
                   [&](int i, Rng& rng) {
                     const bool sym = i % 2 == 0;
                     std::uniform_int_distribution<int> rank_dist(1, sym ? rsym : ranti);
                     std::uniform_int_distribution<int> out_dist(1, d + 1);
                     const DensityOperator rho = random_supported_state(sym ? psym : panti, rank_dist(rng), rng);
                     const int r = static_cast<int>(purify(rho).dims()[2]);
                     int d_out = out_dist(rng);
                     const int d_env = std::max(2, (r + d_out - 1) / d_out);
                     const KrausChannel ch = random_channel(r, d_out, d_env, rng);
                     Json w{{"d", d}, {"support", sym ? "symmetric" : "antisymmetric"}, {"state", state_to_json(rho)},
                            {"channel", channel_to_json(ch)}};
                     return SampleResult{eval_prop3(rho, ch), std::move(w)};
                   });
}

SweepReport verify_omega_corollary(int d, const OptConfig& cfg) {
  require(d == 2 || d == 3, "omega corollary is checked at d = 2 or 3");
  const auto t0 = Clock::now();
  const double tol = omega_corollary_tolerance(d);
  const double ld = log2d(d);
  const DensityOperator om = omega_state(d);
  const std::vector<int> a_full{0, 1}, a_only{1}, b{2};
  const int ext = d * d;
  const OptReport full = entanglement_of_purification(om, a_full, b, ext, cfg);
  const OptReport reduced = entanglement_of_purification(om, a_only, b, ext, cfg);

  SweepReport rep;
  rep.property = "omega-corollary";
  rep.params = Json{{"d", d}, {"ext_dim", ext}, {"tolerance", tol}, {"optimizer", opt_config_to_json(cfg)},
                    {"ep_omega_AprimeAB_bits", full.value}, {"ep_omega_AB_bits", reduced.value}};
  rep.samples = 2;
  rep.seed = cfg.seed;
  rep.worst_case = Json{{"d", d}, {"ext_dim", full.d_out}, {"d_env", full.d_env},
                        {"best_params", matrix_to_json(full.best_params)}};
  rep.min_slack = eval_omega_corollary_headline(d, full.best_params, full.d_out, full.d_env);
  add_fixed_check(rep, "E_P(omega^{A'AB})=log d", 0.0, rep.min_slack);
  add_fixed_check(rep, "E_P(omega^{AB})=0", 0.0, tol - reduced.value);

  const auto [psym, panti] = sym_antisym_projectors(d);
  const std::vector<int> a{0};
  const double s_sigma = entropy(DensityOperator(psym / psym.trace().real(), DimList{d, d}).reduce(a));
  const double s_alpha = entropy(DensityOperator(panti / panti.trace().real(), DimList{d, d}).reduce(a));
  const double p = (d + 1.0) / (2.0 * d);
  add_fixed_check(rep, "branch_entropies=log d", kIdentityTol, -std::max(std::abs(s_sigma - ld), std::abs(s_alpha - ld)));
  add_fixed_check(rep, "branch_average=log d", kIdentityTol, deviation(p * s_sigma + (1 - p) * s_alpha, ld));
  rep.violations = 0;
  for (const CheckResult& c : rep.checks) rep.violations += c.violations;
  rep.wallclock_ms = elapsed_ms(t0);
  return rep;
}

SweepReport verify_coherent_info_bound(int d, int samples, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  return run_sweep("coherent", Json{{"d", d}, {"d_out", d}, {"d_env", d}, {"near_identity_d_env", 2}}, samples, seed,
                   {{"I_coh>=log d-2eps_sum", kInequalityTol}, {"I_coh>=log d-2eps", kInequalityTol}},
                   [&](int i, Rng& rng) {
                     const KrausChannel ch = i % 2 == 0 ? random_channel(d, d, d, rng) : near_identity_channel(d, rng);
                     return SampleResult{eval_coherent(d, ch), channel_witness(d, ch)};
                   });
}

SweepReport verify_maassen_uffink(int d, int samples, std::uint64_t seed) {
  require(d >= 2, "d must be >= 2");
  return run_sweep("maassen-uffink", Json{{"d", d}}, samples, seed, {{"S(M0)+S(M1)>=log d", kInequalityTol}},
                   [&](int i, Rng& rng) {
                     const DensityOperator rho =
                         i % 2 == 0 ? random_pure_state(DimList{d}, rng).density() : random_density(DimList{d}, rng);
                     return SampleResult{{eval_maassen_uffink(rho)}, Json{{"d", d}, {"state", state_to_json(rho)}}};
                   });
}

std::vector<double> lemma1_slack_samples(int d, int samples, std::uint64_t seed, bool haar_basis) {
  require(d >= 2 && samples >= 0, "need d >= 2 and samples >= 0");
  std::vector<double> out(static_cast<std::size_t>(samples));
  const CMatrix f = fourier_unitary(d);
  parallel_for(out.size(), [&](std::size_t i) {
    Rng rng = derive_rng(seed, i);
    const KrausChannel ch = random_channel(d, d, d, rng);
    out[i] = lemma1_terms(ch, haar_basis ? haar_unitary(d, rng) : f).slack();
  });
  return out;
}

double replay(const std::string& property, const Json& w) {
  if (w.is_null()) throw Error(ErrorKind::Parse, "field 'worst_case': empty (no samples)");
  if (property == "omega-corollary") {
    return eval_omega_corollary_headline(int_field(w, "d"), matrix_from_json(obj_field(w, "best_params")),
                                         int_field(w, "ext_dim"), int_field(w, "d_env"));
  }
  if (property == "maassen-uffink") return eval_maassen_uffink(state_from_json(obj_field(w, "state")));
  const int d = int_field(w, "d");
  const KrausChannel ch = channel_from_json(obj_field(w, "channel"), "worst_case.channel");
  if (property == "lemma1") {
    const Json& g = obj_field(w, "group");
    if (!g.is_string()) throw Error(ErrorKind::Parse, "field 'worst_case.group': not a string");
    return eval_lemma1(ch, group_for(g.get<std::string>(), d))[0];
  }
  if (property == "lemma1-relent") return eval_relent(d, ch)[0];
  if (property == "omega") return eval_omega(d, ch)[0];
  if (property == "prop1") return eval_prop1(d, ch)[0];
  if (property == "coherent") return eval_coherent(d, ch)[0];
  if (property == "prop2") {
    const Json& arr = obj_field(w, "unitaries");
    if (!arr.is_array()) throw Error(ErrorKind::Parse, "field 'worst_case.unitaries': not an array");
    std::vector<CMatrix> us;
    for (const Json& u : arr) us.push_back(matrix_from_json(u, "worst_case.unitaries"));
    return eval_prop2(d, us, ch);
  }
  if (property == "prop3") return eval_prop3(state_from_json(obj_field(w, "state")), ch)[0];
  throw Error(ErrorKind::Parse, "unknown property '" + property + "'");
}

}  // namespace entlock
