// Acceptance criteria 1-11: one PASS/FAIL line each, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "entlock/cli.hpp"
#include "entlock/harness.hpp"

using namespace entlock;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

int check_violations(const SweepReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks)
    if (c.name == name) return c.violations;
  return -1;  // missing check counts as failure
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  bool pass = true;
  std::string detail;
  for (int d : {2, 3, 4}) {
    const SweepReport r = verify_lemma1(d, AbelianGroup::zd(d), 1000, d, d, kSeed);
    pass = pass && r.passed() && r.samples == 1000;
    detail += "Z" + std::to_string(d) + " min_slack=" + num(r.min_slack) + " ";
  }
  const SweepReport z = verify_lemma1(4, AbelianGroup::z2l(2), 1000, 4, 4, kSeed);
  pass = pass && z.passed();
  detail += "Z2^2 min_slack=" + num(z.min_slack);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  pass = pass && secs < 120.0;
  return {pass, detail + " time=" + fixed(secs) + "s"};
}

Outcome criterion2() {
  const SweepReport r = verify_lemma1_relent_form(3, 200, kSeed);
  const SweepReport o = verify_omega_identities(3, 200, kSeed);
  bool pass = r.samples == 200 && o.samples == 200;
  for (const char* n : {"D(rho)=I(tau;L)", "D(rho0)=chi0", "D(rho1)=chi1"}) pass = pass && check_violations(r, n) == 0;
  for (const char* n : {"D(rho)=I(AB;C)", "D(rho0)=I(A;C)", "D(rho1)=I(B;C)"}) pass = pass && check_violations(o, n) == 0;
  double worst = 0.0;
  for (const auto* rep : {&r, &o})
    for (std::size_t k = 1; k < rep->checks.size(); ++k) worst = std::min(worst, rep->checks[k].min_slack);
  return {pass, "max |deviation|=" + num(-worst)};
}

Outcome criterion3() {
  std::ostringstream out, err;
  const char* argv[] = {"entlock", "compute", "esq-flower", "--d", "2", "--env-dims", "1,2,4", "--seed", "42"};
  const int code = run_cli(9, argv, out, err);
  double value = NAN;
  if (code == kExitPass) value = Json::parse(out.str())["value_bits"].get<double>();
  bool pass = code == kExitPass && std::abs(value - 1.5) <= 1e-3;

  double trivial_dev = 0.0;
  for (int d : {2, 4}) {
    const std::vector<int> a{0, 1}, b{2, 3};
    const double v = cmi_for_extension(flower_purification(d), replacement_channel(d, 1), a, b);
    trivial_dev = std::max(trivial_dev, std::abs(v - (1.0 + 0.5 * std::log2(d))));
  }
  pass = pass && trivial_dev <= 1e-10;

  const std::vector<int> env{1, 2, 4};
  const SweepReport r = verify_prop1(2, 1000, env, kSeed);
  pass = pass && check_violations(r, "half_cmi>=1+log(d)/2") == 0 && check_violations(r, "classical_flag_cmi=0") == 0;
  return {pass, "esq-flower=" + fixed(value) + " trivial_dev=" + num(trivial_dev) + " random min_slack=" +
                    num(r.min_slack) + " (" + std::to_string(r.samples) + " extensions)"};
}

Outcome criterion4() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3}) {
    const std::vector<int> env{d};
    const SweepReport r = verify_prop1(d, 200, env, kSeed);
    pass = pass && check_violations(r, "cmi_chain") == 0;
    for (const CheckResult& c : r.checks)
      if (c.name == "cmi_chain") detail += "d=" + std::to_string(d) + " max|dev|=" + num(-c.min_slack) + " ";
  }
  return {pass, detail};
}

Outcome criterion5() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 4}) {
    const auto [e0, e1] = basis_ensembles(fourier_unitary(d));
    OptConfig cfg;
    cfg.restarts = 16;
    cfg.seed = kSeed;
    const OptReport r = accessible_information(Ensemble::mix(0.5, e0, e1), d * d, cfg);
    const double bound = 0.5 * std::log2(d);
    double top = -INFINITY;
    for (double h : r.history) top = std::max(top, h);
    pass = pass && std::abs(r.value - bound) <= 2e-3 && top <= bound + 1e-6 && r.d_out == d * d;
    detail += "d=" + std::to_string(d) + " I_acc=" + fixed(r.value) + " max_restart=" + fixed(top) + " ";
  }
  return {pass, detail};
}

Outcome criterion6() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3}) {
    const SweepReport r = verify_prop3(d, 500, kSeed);
    pass = pass && r.samples == 500 && check_violations(r, "S(AE)>=S(A)") == 0 &&
           check_violations(r, "S(E|A)=S(E|B)") == 0;
    detail += "d=" + std::to_string(d) + " min_slack=" + num(r.min_slack) + " ";
  }
  return {pass, detail};
}

Outcome criterion7() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3}) {
    OptConfig cfg;
    cfg.seed = kSeed;
    const SweepReport r = verify_omega_corollary(d, cfg);
    const double full = r.params["ep_omega_AprimeAB_bits"].get<double>();
    const double reduced = r.params["ep_omega_AB_bits"].get<double>();
    const double tol = d == 2 ? 5e-3 : 1e-2;
    pass = pass && std::abs(full - std::log2(d)) <= tol;
    if (d == 2) pass = pass && reduced <= 5e-3;
    detail += "d=" + std::to_string(d) + " E_P(A'A:B)=" + fixed(full) + " E_P(A:B)=" + fixed(reduced) + " ";
  }
  return {pass, detail};
}

Outcome criterion8() {
  const SweepReport r = verify_prop2_formula(2, 2, 200, kSeed);
  const bool pass = r.passed() && r.samples == 200 && check_violations(r, "trivial_extension=formula") == 0;
  return {pass, "min_slack=" + num(r.min_slack) + " violations=" + std::to_string(r.violations)};
}

Outcome criterion9() {
  bool pass = true;
  std::string detail;
  for (int d : {2, 3, 4, 5}) {
    const SweepReport r = verify_maassen_uffink(d, 1000, kSeed);
    pass = pass && r.passed() && r.samples == 1000;
    detail += "d=" + std::to_string(d) + " min_slack=" + num(r.min_slack) + " ";
  }
  return {pass, detail};
}

Outcome criterion10() {
  const auto [ps, pa] = sym_antisym_projectors(2);
  const DensityOperator singlet(pa, DimList{2, 2});
  OptConfig cfg;
  cfg.seed = kSeed;
  const AdditivityReport r = ep_additivity_check(singlet, singlet, cfg);
  const bool pass = std::abs(r.joint.value - 2.0) <= 5e-3;
  return {pass, "E_P=" + fixed(r.joint.value) + " (" + to_string(r.joint.kind) + ")"};
}

Outcome criterion11() {
  auto once = [] {
    std::ostringstream out, err;
    const char* argv[] = {"entlock", "verify", "all", "--seed", "42"};
    const int code = run_cli(5, argv, out, err);
    return std::make_pair(code, out.str());
  };
  const auto a = once();
  const auto b = once();
  const bool pass = a.first == kExitPass && a.second == b.second && !a.second.empty();
  return {pass, "exit=" + std::to_string(a.first) + " bytes=" + std::to_string(a.second.size()) +
                    (a.second == b.second ? " identical" : " differ")};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                       criterion5, criterion6, criterion7, criterion8,
                                                       criterion9, criterion10, criterion11};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("criterion %zu: %s  %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
