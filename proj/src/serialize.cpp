#include "entlock/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace entlock {

namespace {

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Parse, "field '" + where + "': " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) parse_fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) parse_fail(where + "." + key, "missing");
  return *it;
}

std::vector<double> number_array(const Json& j, const std::string& where) {
  if (!j.is_array()) parse_fail(where, "expected an array of numbers");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number()) parse_fail(where + "[" + std::to_string(k) + "]", "not a number");
    out.push_back(j[k].get<double>());
  }
  return out;
}

int positive_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) parse_fail(where, "expected a positive integer");
  return j.get<int>();
}

DimList dims_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) parse_fail(where, "expected a nonempty array of dimensions");
  std::vector<int> dims;
  for (std::size_t k = 0; k < j.size(); ++k) dims.push_back(positive_int(j[k], where + "[" + std::to_string(k) + "]"));
  return DimList(std::move(dims));
}

Json flat_parts(const Complex* data, Eigen::Index n, Json& im) {
  Json re = Json::array();
  im = Json::array();
  for (Eigen::Index k = 0; k < n; ++k) {
    re.push_back(data[k].real());
    im.push_back(data[k].imag());
  }
  return re;
}

std::vector<Complex> complex_array(const Json& j, const std::string& where, std::size_t expected) {
  const std::vector<double> re = number_array(field(j, "re", where), where + ".re");
  std::vector<double> im(re.size(), 0.0);
  if (j.contains("im")) im = number_array(j["im"], where + ".im");
  if (re.size() != expected) {
    parse_fail(where + ".re", "expected " + std::to_string(expected) + " entries, got " + std::to_string(re.size()));
  }
  if (im.size() != expected) {
    parse_fail(where + ".im", "expected " + std::to_string(expected) + " entries, got " + std::to_string(im.size()));
  }
  std::vector<Complex> out(expected);
  for (std::size_t k = 0; k < expected; ++k) out[k] = {re[k], im[k]};
  return out;
}

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Json number_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json matrix_to_json(const CMatrix& m) {
  const RowMatrix r = m;
  Json im;
  Json re = flat_parts(r.data(), r.size(), im);
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
  const int rows = positive_int(field(j, "rows", where), where + ".rows");
  const int cols = positive_int(field(j, "cols", where), where + ".cols");
  const std::vector<Complex> data = complex_array(j, where, static_cast<std::size_t>(rows) * cols);
  return Eigen::Map<const RowMatrix>(data.data(), rows, cols);
}

Json state_to_json(const DensityOperator& rho) {
  const RowMatrix r = rho.mat();
  Json im;
  Json re = flat_parts(r.data(), r.size(), im);
  return Json{{"kind", "density"}, {"dims", rho.dims().dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Json state_to_json(const PureState& psi) {
  Json im;
  Json re = flat_parts(psi.vec().data(), psi.vec().size(), im);
  Json j{{"kind", "pure"}, {"dims", psi.dims().dims()}, {"re", std::move(re)}, {"im", std::move(im)}};
  if (psi.purifying_factor()) j["purifying_factor"] = *psi.purifying_factor();
  return j;
}

PureState pure_state_from_json(const Json& j) {
  const DimList dims = dims_from_json(field(j, "dims", "state"), "state.dims");
  const auto n = static_cast<std::size_t>(dims.total());
  const std::vector<Complex> data = complex_array(j, "state", n);
  std::optional<int> pf;
  if (j.contains("purifying_factor")) {
    const Json& p = j["purifying_factor"];
    if (!p.is_number_integer() || p.get<long long>() < 0 || p.get<std::size_t>() >= dims.size()) {
      parse_fail("state.purifying_factor", "expected a factor index");
    }
    pf = p.get<int>();
  }
  return PureState(Eigen::Map<const CVector>(data.data(), static_cast<Eigen::Index>(n)), dims, pf);
}

DensityOperator state_from_json(const Json& j) {
  const DimList dims = dims_from_json(field(j, "dims", "state"), "state.dims");
  const auto n = static_cast<std::size_t>(dims.total());
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) parse_fail("state.kind", "expected \"pure\" or \"density\"");
    kind = j["kind"].get<std::string>();
    if (kind != "pure" && kind != "density") parse_fail("state.kind", "expected \"pure\" or \"density\"");
  } else {
    const Json& re = field(j, "re", "state");
    kind = re.is_array() && re.size() == n ? "pure" : "density";
  }
  if (kind == "pure") return pure_state_from_json(j).density();
  const std::vector<Complex> data = complex_array(j, "state", n * n);
  const auto ni = static_cast<Eigen::Index>(n);
  return DensityOperator(Eigen::Map<const RowMatrix>(data.data(), ni, ni), dims);
}

Json channel_to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const CMatrix& k : ch.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"d_in", ch.d_in()}, {"d_out", ch.d_out()}, {"kraus", std::move(kraus)}};
}

KrausChannel channel_from_json(const Json& j, const std::string& where) {
  const int d_in = positive_int(field(j, "d_in", where), where + ".d_in");
  const int d_out = positive_int(field(j, "d_out", where), where + ".d_out");
  const Json& arr = field(j, "kraus", where);
  if (!arr.is_array() || arr.empty()) parse_fail(where + ".kraus", "expected a nonempty array");
  std::vector<CMatrix> ks;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string w = where + ".kraus[" + std::to_string(k) + "]";
    CMatrix m = matrix_from_json(arr[k], w);
    if (m.rows() != d_out || m.cols() != d_in) parse_fail(w, "shape differs from d_out x d_in");
    ks.push_back(std::move(m));
  }
  return KrausChannel(std::move(ks));
}

Json opt_config_to_json(const OptConfig& cfg) {
  return Json{{"restarts", cfg.restarts},   {"max_iters", cfg.max_iters}, {"step_tol", cfg.step_tol},
              {"value_tol", cfg.value_tol}, {"seed", cfg.seed},           {"d_env", cfg.d_env}};
}

OptConfig opt_config_from_json(const Json& j) {
  OptConfig cfg;
  if (!j.is_object()) parse_fail("optimizer", "expected an object");
  auto num = [&](const char* key, auto& dst) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) parse_fail(std::string("optimizer.") + key, "not a number");
    dst = j[key].get<std::remove_reference_t<decltype(dst)>>();
  };
  num("restarts", cfg.restarts);
  num("max_iters", cfg.max_iters);
  num("step_tol", cfg.step_tol);
  num("value_tol", cfg.value_tol);
  num("seed", cfg.seed);
  num("d_env", cfg.d_env);
  return cfg;
}

std::string to_string(ParamKind kind) {
  switch (kind) {
    case ParamKind::Channel: return "channel_isometry";
    case ParamKind::Measurement: return "measurement_isometry";
    case ParamKind::Povm: return "povm_isometry";
    case ParamKind::Analytic: return "analytic";
  }
  return "unknown";
}

Json opt_report_to_json(const OptReport& rep) {
  Json j;
  j["quantity"] = rep.quantity;
  j["value_bits"] = number_or_null(rep.value);
  j["param_kind"] = to_string(rep.kind);
  j["d_out"] = rep.d_out;
  j["d_env"] = rep.d_env;
  j["best_params"] = rep.best_params.size() > 0 ? matrix_to_json(rep.best_params) : Json(nullptr);
  j["restarts"] = rep.history.size();
  j["best_restart"] = rep.best_restart;
  j["converged"] = rep.converged;
  Json hist = Json::array();
  for (double h : rep.history) hist.push_back(number_or_null(h));
  j["history"] = std::move(hist);
  j["iterations"] = rep.iterations;
  Json failed = Json::array();
  for (bool f : rep.failed) failed.push_back(f);
  j["failed"] = std::move(failed);
  j["seed"] = rep.config.seed;
  j["config"] = opt_config_to_json(rep.config);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
}

DensityOperator load_state_file(const std::string& path) {
  return state_from_json(read_json_file(path));
}

}  // namespace entlock
