#include "entlock/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "entlock/parallel.hpp"

namespace entlock {

namespace {

const std::vector<std::string> kVerifyNames{"lemma1", "lemma1-relent", "omega",    "prop1",          "prop2",
                                            "prop3",  "omega-corollary", "coherent", "maassen-uffink", "all"};
const std::vector<std::string> kComputeNames{"esq-flower", "ep", "iacc", "ef-flower", "entropy", "cmi"};
const std::vector<std::string> kTableNames{"locking-gap", "slack-histogram"};

bool one_of(const std::string& s, const std::vector<std::string>& names) {
  return std::find(names.begin(), names.end(), s) != names.end();
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorKind::Parse, what); }

std::string fmt(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int samples_or(const RunConfig& c, int fallback) {
  const int s = c.samples >= 0 ? c.samples : fallback;
  return c.quick ? std::min(s, 100) : s;
}

OptConfig opt_of(const RunConfig& c) {
  OptConfig o = c.opt;
  o.seed = c.seed;
  return o;
}

AbelianGroup group_of(const RunConfig& c) {
  if (c.group == "zd") return AbelianGroup::zd(c.d);
  int l = 0;
  while ((1 << l) < c.d) ++l;
  if ((1 << l) != c.d) usage("--group z2l needs --d to be a power of two");
  return AbelianGroup::z2l(l);
}

// ---------------------------------------------------------------------------
// verify

SweepReport verify_one(const std::string& name, const RunConfig& c) {
  const int d = c.d;
  if (name == "lemma1") {
    const int d_env = c.env_dims.empty() ? d : c.env_dims.front();
    return verify_lemma1(d, group_of(c), samples_or(c, 1000), c.d_out > 0 ? c.d_out : d, d_env, c.seed);
  }
  if (name == "lemma1-relent") return verify_lemma1_relent_form(d, samples_or(c, 200), c.seed);
  if (name == "omega") return verify_omega_identities(d, samples_or(c, 200), c.seed);
  if (name == "prop1") {
    const std::vector<int> env = c.env_dims.empty() ? std::vector<int>{1, 2, 4} : c.env_dims;
    return verify_prop1(d, samples_or(c, d <= 3 ? 1000 : 100), env, c.seed);
  }
  if (name == "prop2") return verify_prop2_formula(d, c.m > 0 ? c.m : 2, samples_or(c, 200), c.seed);
  if (name == "prop3") return verify_prop3(d, samples_or(c, 500), c.seed);
  if (name == "omega-corollary") return verify_omega_corollary(d, opt_of(c));
  if (name == "coherent") return verify_coherent_info_bound(d, samples_or(c, 1000), c.seed);
  if (name == "maassen-uffink") return verify_maassen_uffink(d, samples_or(c, 1000), c.seed);
  usage("unknown verify target '" + name + "'");
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  std::vector<SweepReport> reports;
  if (c.subcommand == "all") {
    for (const std::string& name : kVerifyNames) {
      if (name == "all") continue;
      RunConfig sub = c;
      if (name == "omega-corollary") sub.d = std::clamp(c.d, 2, 3);
      reports.push_back(verify_one(name, sub));
    }
  } else {
    reports.push_back(verify_one(c.subcommand, c));
  }
  int violations = 0;
  for (const SweepReport& r : reports) violations += r.violations;

  if (c.format == "csv") {
    out << "property,samples,violations,min_slack_bits,seed\n";
    for (const SweepReport& r : reports) {
      out << r.property << ',' << r.samples << ',' << r.violations << ',' << fmt(r.min_slack) << ',' << r.seed << '\n';
    }
  } else if (reports.size() == 1 && c.subcommand != "all") {
    out << sweep_report_to_json(reports.front(), c.timing).dump(2) << '\n';
  } else {
    Json arr = Json::array();
    for (const SweepReport& r : reports) arr.push_back(sweep_report_to_json(r, c.timing));
    out << Json{{"property", "all"}, {"seed", c.seed}, {"violations", violations}, {"reports", std::move(arr)}}.dump(2)
        << '\n';
  }
  return violations == 0 ? kExitPass : kExitViolation;
}

// ---------------------------------------------------------------------------
// compute

DensityOperator state_of(const RunConfig& c) {
  if (c.state.empty()) usage("--state FILE is required");
  return load_state_file(c.state);
}

std::vector<int> complement_of(const DensityOperator& rho, const std::vector<int>& part) {
  return rho.dims().complement(part);
}

std::vector<CMatrix> flower_unitaries(const RunConfig& c, int m) {
  if (m == 1) return {CMatrix::Identity(c.d, c.d)};
  Rng rng = derive_rng(c.seed, std::uint64_t{1} << 40);
  std::vector<CMatrix> us;
  for (int k = 0; k < m; ++k) us.push_back(haar_unitary(c.d, rng));
  return us;
}

void emit_value(const RunConfig& c, std::ostream& out, const std::string& quantity, double value, Json j) {
  if (c.format == "csv") {
    out << "quantity,value_bits\n" << quantity << ',' << fmt(value) << '\n';
    return;
  }
  Json head{{"quantity", quantity}, {"value_bits", number_or_null(value)}};
  for (auto& [k, v] : j.items()) head[k] = v;
  out << head.dump(2) << '\n';
}

int cmd_compute(const RunConfig& c, std::ostream& out) {
  const std::string& name = c.subcommand;
  const OptConfig opt = opt_of(c);
  if (name == "esq-flower") {
    const int m = c.m > 0 ? c.m : 1;
    const PureState psi = flower_purification_general(c.d, flower_unitaries(c, m));
    const std::vector<int> a{0, 1}, b{2, 3};
    const std::vector<int> env = c.env_dims.empty() ? std::vector<int>{c.d} : c.env_dims;
    double best = std::numeric_limits<double>::infinity();
    Json searches = Json::array();
    for (int e : env) {
      const OptReport r = squashed_upper_bound(psi, a, b, e, opt);
      best = std::min(best, r.value);
      searches.push_back(opt_report_to_json(r));
    }
    const OptReport meas = squashed_upper_bound_measurement(psi, a, b, c.outcomes > 0 ? c.outcomes : c.d, opt);
    best = std::min(best, meas.value);
    emit_value(c, out, "esq_flower_upper_bound", best,
               Json{{"d", c.d}, {"m", m}, {"channel_searches", std::move(searches)},
                    {"measurement_search", opt_report_to_json(meas)}});
    return kExitPass;
  }
  if (name == "ep") {
    const DensityOperator rho = state_of(c);
    const std::vector<int> a = c.aside.empty() ? std::vector<int>{0} : c.aside;
    const std::vector<int> b = c.bside.empty() ? complement_of(rho, a) : c.bside;
    if (c.series > 0) {
      const std::vector<OptReport> s = ep_series(rho, a, b, c.series, opt);
      Json arr = Json::array();
      for (const OptReport& r : s) arr.push_back(opt_report_to_json(r));
      emit_value(c, out, "ep_upper_bound", s.back().value, Json{{"series", std::move(arr)}});
      return kExitPass;
    }
    const OptReport r = entanglement_of_purification(rho, a, b, c.ext_dim, opt);
    emit_value(c, out, "ep_upper_bound", r.value, Json{{"report", opt_report_to_json(r)}});
    return kExitPass;
  }
  if (name == "iacc") {
    const AbelianGroup g = group_of(c);
    const auto [e0, e1] = basis_ensembles(g.fourier());
    const Ensemble ens = Ensemble::mix(0.5, e0, e1);
    const OptReport r = accessible_information(ens, c.outcomes > 0 ? c.outcomes : c.d * c.d, opt);
    emit_value(c, out, "iacc_lower_bound", r.value,
               Json{{"d", c.d}, {"group", c.group}, {"holevo_chi_bits", holevo_chi(ens)}, {"report", opt_report_to_json(r)}});
    return kExitPass;
  }
  if (name == "ef-flower") {
    const int m = c.m > 0 ? c.m : 1;
    const std::vector<CMatrix> us = flower_unitaries(c, m);
    const EfFlowerResult r = ef_flower(c.d, us, c.outcomes, opt);
    emit_value(c, out, "ef_flower_upper_bound", r.value,
               Json{{"d", c.d}, {"m", m}, {"marginal_entropy_bits", r.marginal_entropy},
                    {"accessible", opt_report_to_json(r.accessible)}});
    return kExitPass;
  }
  if (name == "entropy") {
    const DensityOperator rho = state_of(c);
    const double s = c.aside.empty() ? entropy(rho) : entropy(rho.reduce(c.aside));
    emit_value(c, out, "entropy", s, Json::object());
    return kExitPass;
  }
  if (name == "cmi") {
    const DensityOperator rho = state_of(c);
    if (c.aside.empty() || c.bside.empty()) usage("cmi needs --aside and --bside");
    emit_value(c, out, "conditional_mutual_information",
               conditional_mutual_information(rho, c.aside, c.bside, c.eside), Json::object());
    return kExitPass;
  }
  usage("unknown compute target '" + name + "'");
}

// ---------------------------------------------------------------------------
// table

int cmd_table(const RunConfig& c, std::ostream& out) {
  if (c.subcommand == "locking-gap") {
    std::vector<int> dims = c.dims.empty() ? std::vector<int>{2, 4, 8} : c.dims;
    if (c.quick) std::erase_if(dims, [](int d) { return d > 3; });
    const std::vector<int> a{0, 1}, b{2, 3}, fa{0}, fb{2, 3};
    Json rows = Json::array();
    std::ostringstream csv;
    csv << "d,esq_full_bits,esq_after_qubit_loss_bits,gap_bits\n";
    for (int d : dims) {
      if (d < 2) usage("--dims entries must be >= 2");
      const PureState psi = flower_purification(d);
      const std::vector<CMatrix> id{CMatrix::Identity(d, d)};
      const double full = cmi_for_extension(psi, replacement_channel(d, 1), a, b);
      const double lost = std::max(0.0, cmi_for_extension(psi, flower_flag_channel(d, id), fa, fb));
      rows.push_back(Json{{"d", d}, {"esq_full_bits", full}, {"esq_after_qubit_loss_bits", lost}, {"gap_bits", full - lost}});
      csv << d << ',' << fmt(full) << ',' << fmt(lost) << ',' << fmt(full - lost) << '\n';
    }
    if (c.format == "csv") {
      out << csv.str();
    } else {
      out << Json{{"table", "locking-gap"}, {"rows", std::move(rows)}}.dump(2) << '\n';
    }
    return kExitPass;
  }
  if (c.subcommand == "slack-histogram") {
    if (c.bins < 1) usage("--bins must be >= 1");
    const std::vector<double> slack = lemma1_slack_samples(c.d, samples_or(c, 1000), c.seed, c.haar_basis);
    std::vector<int> counts(static_cast<std::size_t>(c.bins), 0);
    double lo = 0.0, hi = 0.0;
    if (!slack.empty()) {
      lo = *std::min_element(slack.begin(), slack.end());
      hi = *std::max_element(slack.begin(), slack.end());
      if (hi <= lo) hi = lo + 1.0;
      for (double s : slack) {
        auto k = static_cast<std::size_t>((s - lo) / (hi - lo) * c.bins);
        counts[std::min(k, counts.size() - 1)] += 1;
      }
    }
    const double width = (hi - lo) / c.bins;
    if (c.format == "csv") {
      out << "bin_lo_bits,bin_hi_bits,count\n";
      if (!slack.empty()) {
        for (int k = 0; k < c.bins; ++k) out << fmt(lo + k * width) << ',' << fmt(lo + (k + 1) * width) << ',' << counts[k] << '\n';
      }
    } else {
      Json rows = Json::array();
      if (!slack.empty()) {
        for (int k = 0; k < c.bins; ++k) {
          rows.push_back(Json{{"bin_lo_bits", lo + k * width}, {"bin_hi_bits", lo + (k + 1) * width}, {"count", counts[k]}});
        }
      }
      out << Json{{"table", "slack-histogram"},
                  {"d", c.d},
                  {"basis", c.haar_basis ? "haar (conjecture exploration, nothing asserted)" : "fourier"},
                  {"samples", slack.size()},
                  {"seed", c.seed},
                  {"rows", std::move(rows)}}
                 .dump(2)
          << '\n';
    }
    return kExitPass;
  }
  usage("unknown table '" + c.subcommand + "'");
}

// ---------------------------------------------------------------------------
// RunConfig JSON

template <class T>
void read_key(const Json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    dst = j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::Parse, std::string("field '") + key + "': wrong type");
  }
}

const std::vector<std::string> kConfigKeys{
    "command", "subcommand", "d",      "m",       "samples", "seed",  "env_dims",       "d_out",      "ext_dim",
    "series",  "outcomes",   "optimizer", "state", "aside",   "bside", "eside",          "format",     "out",
    "threads", "quick",      "group",  "timing",  "conjugate_pair", "haar_basis", "bins", "dims"};

}  // namespace

Json run_config_to_json(const RunConfig& c) {
  Json opt = opt_config_to_json(c.opt);
  opt.erase("seed");
  return Json{{"command", c.command},   {"subcommand", c.subcommand},     {"d", c.d},
              {"m", c.m},               {"samples", c.samples},           {"seed", c.seed},
              {"env_dims", c.env_dims}, {"d_out", c.d_out},               {"ext_dim", c.ext_dim},
              {"series", c.series},     {"outcomes", c.outcomes},         {"optimizer", std::move(opt)},
              {"state", c.state},       {"aside", c.aside},               {"bside", c.bside},
              {"eside", c.eside},       {"format", c.format},             {"out", c.out},
              {"threads", c.threads},   {"quick", c.quick},               {"group", c.group},
              {"timing", c.timing},     {"conjugate_pair", c.conjugate_pair}, {"haar_basis", c.haar_basis},
              {"bins", c.bins},         {"dims", c.dims}};
}

RunConfig run_config_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "field 'config': expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!one_of(k, kConfigKeys)) throw Error(ErrorKind::Parse, "field '" + k + "': unknown key");
  }
  RunConfig c;
  read_key(j, "command", c.command);
  read_key(j, "subcommand", c.subcommand);
  read_key(j, "d", c.d);
  read_key(j, "m", c.m);
  read_key(j, "samples", c.samples);
  read_key(j, "seed", c.seed);
  read_key(j, "env_dims", c.env_dims);
  read_key(j, "d_out", c.d_out);
  read_key(j, "ext_dim", c.ext_dim);
  read_key(j, "series", c.series);
  read_key(j, "outcomes", c.outcomes);
  if (j.contains("optimizer")) c.opt = opt_config_from_json(j["optimizer"]);
  read_key(j, "state", c.state);
  read_key(j, "aside", c.aside);
  read_key(j, "bside", c.bside);
  read_key(j, "eside", c.eside);
  read_key(j, "format", c.format);
  read_key(j, "out", c.out);
  read_key(j, "threads", c.threads);
  read_key(j, "quick", c.quick);
  read_key(j, "group", c.group);
  read_key(j, "timing", c.timing);
  read_key(j, "conjugate_pair", c.conjugate_pair);
  read_key(j, "haar_basis", c.haar_basis);
  read_key(j, "bins", c.bins);
  read_key(j, "dims", c.dims);
  return normalize(std::move(c));
}

RunConfig normalize(RunConfig c) {
  if (c.format != "json" && c.format != "csv") usage("--format must be json or csv");
  if (c.group != "zd" && c.group != "z2l") usage("--group must be zd or z2l");
  if (c.samples < -1) c.samples = -1;
  if (c.quick) {
    if (c.samples > 100) c.samples = 100;
    c.d = std::min(c.d, 3);
    std::erase_if(c.dims, [](int d) { return d > 3; });
  }
  c.opt.seed = c.seed;
  return c;
}

int run(const RunConfig& c, std::ostream& out) {
  if (c.threads > 0) set_thread_cap(static_cast<unsigned>(c.threads));
  if (c.d < 1) usage("--d must be >= 1");
  if (c.command == "verify") {
    if (!one_of(c.subcommand, kVerifyNames)) usage("verify expects one of: " + join(kVerifyNames));
    return cmd_verify(c, out);
  }
  if (c.command == "compute") {
    if (!one_of(c.subcommand, kComputeNames)) usage("compute expects one of: " + join(kComputeNames));
    return cmd_compute(c, out);
  }
  if (c.command == "table") {
    if (!one_of(c.subcommand, kTableNames)) usage("table expects one of: " + join(kTableNames));
    return cmd_table(c, out);
  }
  usage("command must be verify, compute or table");
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entropic locking toolkit: property sweeps, optimizer bounds and tables"};
  app.set_help_all_flag("--help-all");
  RunConfig f;
  std::string config_path;
  bool print_config = false;
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> overrides;
  auto bind = [&](CLI::Option* o, std::function<void(RunConfig&)> copy) { overrides.emplace_back(o, std::move(copy)); };

  bind(app.add_option("command", f.command, "verify | compute | table"),
       [&](RunConfig& c) { c.command = f.command; });
  bind(app.add_option("name", f.subcommand, "what to verify / compute / tabulate"),
       [&](RunConfig& c) { c.subcommand = f.subcommand; });
  bind(app.add_option("--d", f.d, "dimension d"), [&](RunConfig& c) { c.d = f.d; });
  bind(app.add_option("--m", f.m, "number of unitaries V_k"), [&](RunConfig& c) { c.m = f.m; });
  bind(app.add_option("--samples", f.samples, "samples per sweep"), [&](RunConfig& c) { c.samples = f.samples; });
  bind(app.add_option("--seed", f.seed, "rng seed (fallback: ENTLOCK_SEED)"), [&](RunConfig& c) { c.seed = f.seed; });
  std::vector<int> env_list;
  int env_single = 0;
  bind(app.add_option("--env-dims", env_list, "comma-separated E dimensions")->delimiter(','),
       [&](RunConfig& c) { c.env_dims = env_list; });
  bind(app.add_option("--env-dim", env_single, "E dimension (lemma1: Stinespring environment)"),
       [&](RunConfig& c) { c.env_dims = {env_single}; });
  bind(app.add_option("--d-out", f.d_out, "channel output dimension"), [&](RunConfig& c) { c.d_out = f.d_out; });
  bind(app.add_option("--ext-dim", f.ext_dim, "E dimension for E_P (0 = purifier)"),
       [&](RunConfig& c) { c.ext_dim = f.ext_dim; });
  bind(app.add_option("--series", f.series, "E_P over ext_dim = 1..N"), [&](RunConfig& c) { c.series = f.series; });
  bind(app.add_option("--outcomes", f.outcomes, "POVM outcomes"), [&](RunConfig& c) { c.outcomes = f.outcomes; });
  bind(app.add_option("--restarts", f.opt.restarts, "optimizer restarts"),
       [&](RunConfig& c) { c.opt.restarts = f.opt.restarts; });
  bind(app.add_option("--max-iters", f.opt.max_iters, "optimizer iterations per restart"),
       [&](RunConfig& c) { c.opt.max_iters = f.opt.max_iters; });
  bind(app.add_option("--opt-env-dim", f.opt.d_env, "internal Stinespring environment (0 = purifier)"),
       [&](RunConfig& c) { c.opt.d_env = f.opt.d_env; });
  bind(app.add_option("--state", f.state, "state JSON file"), [&](RunConfig& c) { c.state = f.state; });
  bind(app.add_option("--aside", f.aside, "A-side factors")->delimiter(','), [&](RunConfig& c) { c.aside = f.aside; });
  bind(app.add_option("--bside", f.bside, "B-side factors")->delimiter(','), [&](RunConfig& c) { c.bside = f.bside; });
  bind(app.add_option("--eside", f.eside, "conditioning factors")->delimiter(','),
       [&](RunConfig& c) { c.eside = f.eside; });
  bind(app.add_option("--format", f.format, "json | csv"), [&](RunConfig& c) { c.format = f.format; });
  bind(app.add_option("--out", f.out, "output file (default stdout)"), [&](RunConfig& c) { c.out = f.out; });
  bind(app.add_option("--threads", f.threads, "worker cap"), [&](RunConfig& c) { c.threads = f.threads; });
  bind(app.add_flag("--quick", f.quick, "cap samples at 100 and dims at 3"), [&](RunConfig& c) { c.quick = f.quick; });
  bind(app.add_option("--group", f.group, "zd | z2l"), [&](RunConfig& c) { c.group = f.group; });
  bind(app.add_flag("--timing", f.timing, "record wallclock_ms"), [&](RunConfig& c) { c.timing = f.timing; });
  bind(app.add_flag("--conjugate-pair", f.conjugate_pair, "iacc: basis + Fourier-basis ensemble"),
       [&](RunConfig& c) { c.conjugate_pair = f.conjugate_pair; });
  bind(app.add_flag("--haar-basis", f.haar_basis, "slack-histogram: Haar-random conjugate basis"),
       [&](RunConfig& c) { c.haar_basis = f.haar_basis; });
  bind(app.add_option("--bins", f.bins, "histogram bins"), [&](RunConfig& c) { c.bins = f.bins; });
  bind(app.add_option("--dims", f.dims, "locking-gap dimensions")->delimiter(','), [&](RunConfig& c) { c.dims = f.dims; });
  app.add_option("--config", config_path, "RunConfig JSON; flags override it");
  app.add_flag("--print-config", print_config, "print the normalized RunConfig and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    RunConfig c;
    bool seed_given = false;
    if (!config_path.empty()) {
      const Json j = read_json_file(config_path);
      c = run_config_from_json(j);
      seed_given = j.contains("seed");
    }
    for (auto& [opt, copy] : overrides) {
      if (opt->count() > 0) copy(c);
    }
    if (app.get_option("--seed")->count() > 0) {
      seed_given = true;
    }
    if (!seed_given) {
      if (const char* env = std::getenv("ENTLOCK_SEED"); env && *env) {
        char* end = nullptr;
        const unsigned long long s = std::strtoull(env, &end, 10);
        if (*end != '\0') usage("ENTLOCK_SEED is not an unsigned integer");
        c.seed = s;
      }
    }
    c = normalize(std::move(c));
    if (print_config) {
      out << run_config_to_json(c).dump(2) << '\n';
      return kExitPass;
    }
    if (c.out.empty()) return run(c, out);
    std::ofstream file(c.out);
    if (!file) usage("cannot write '" + c.out + "'");
    return run(c, file);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::OptimizerDiverged ? kExitViolation : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace entlock
