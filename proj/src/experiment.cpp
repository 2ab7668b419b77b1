// Copyright 2026 The renewalkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "renewal/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "renewal/limits.hpp"
#include "renewal/simulate.hpp"
#include "renewal/solver.hpp"
#include "renewal/stats.hpp"

namespace renewal {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

std::string where(const ExperimentConfig& c, const char* key) {
  return std::string(job_name(c.job)) + ": \"" + key + "\"";
}

// --- JSON field extraction -------------------------------------------------

void check_keys(const json& doc, const char* job,
                std::initializer_list<const char*> allowed) {
  if (!doc.is_object()) fail(std::string(job) + ": config must be a JSON object");
  for (const auto& item : doc.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end()) {
      fail(std::string(job) + ": unknown config key \"" + item.key() + "\"");
    }
  }
}

const json* find(const json& doc, const char* key) {
  auto it = doc.find(key);
  return it == doc.end() ? nullptr : &*it;
}

double as_double(const json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(what + " must be finite");
  return d;
}

double req_double(const json& doc, const char* job, const char* key) {
  const json* v = find(doc, key);
  if (!v) fail(std::string(job) + ": missing required key \"" + key + "\"");
  return as_double(*v, std::string(job) + ": \"" + key + "\"");
}

void opt_double(const json& doc, const char* job, const char* key, double* out) {
  if (const json* v = find(doc, key))
    *out = as_double(*v, std::string(job) + ": \"" + key + "\"");
}

void opt_gate(const json& doc, const char* job, const char* key,
              std::optional<double>* out) {
  if (const json* v = find(doc, key))
    *out = as_double(*v, std::string(job) + ": \"" + key + "\"");
}

std::uint64_t as_u64(const json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail(what + " must be a non-negative integer");
}

std::size_t req_count(const json& doc, const char* job, const char* key) {
  const json* v = find(doc, key);
  if (!v) fail(std::string(job) + ": missing required key \"" + key + "\"");
  return static_cast<std::size_t>(
      as_u64(*v, std::string(job) + ": \"" + key + "\""));
}

void opt_u64(const json& doc, const char* job, const char* key,
             std::uint64_t* out) {
  if (const json* v = find(doc, key))
    *out = as_u64(*v, std::string(job) + ": \"" + key + "\"");
}

void opt_string(const json& doc, const char* job, const char* key,
                std::string* out) {
  if (const json* v = find(doc, key)) {
    if (!v->is_string()) fail(std::string(job) + ": \"" + key + "\" must be a string");
    *out = v->get<std::string>();
  }
}

void opt_bool(const json& doc, const char* job, const char* key, bool* out) {
  if (const json* v = find(doc, key)) {
    if (!v->is_boolean())
      fail(std::string(job) + ": \"" + key + "\" must be a boolean");
    *out = v->get<bool>();
  }
}

std::vector<double> req_grid(const json& doc, const char* job, const char* key) {
  const json* v = find(doc, key);
  if (!v) fail(std::string(job) + ": missing required key \"" + key + "\"");
  if (!v->is_array() || v->empty())
    fail(std::string(job) + ": \"" + key + "\" must be a non-empty array");
  std::vector<double> out;
  out.reserve(v->size());
  for (const json& e : *v)
    out.push_back(as_double(e, std::string(job) + ": entry of \"" + key + "\""));
  return out;
}

InterArrivalLaw req_law(const json& doc, const char* job) {
  const json* v = find(doc, "law");
  if (!v) fail(std::string(job) + ": missing required key \"law\"");
  if (!v->is_string()) fail(std::string(job) + ": \"law\" must be a string");
  return InterArrivalLaw::parse(v->get<std::string>());
}

// --- Validation helpers ----------------------------------------------------

void require(bool ok, const std::string& message) {
  if (!ok) fail(message);
}

// The tail index, checked to lie in (0,1) — required by every gate that
// compares against an infinite-mean limit law.
double checked_alpha(const ExperimentConfig& c, const char* context) {
  const std::optional<double> a = c.law ? c.law->tail_index() : std::nullopt;
  if (!a || !(*a > 0.0 && *a < 1.0))
    fail(std::string(job_name(c.job)) + ": alpha outside (0,1) for " + context);
  return *a;
}

void check_gate_positive(const ExperimentConfig& c,
                         const std::optional<double>& g, const char* key) {
  if (g) require(*g > 0.0, where(c, key) + " must be positive");
}

// --- CSV / artifact helpers ------------------------------------------------

constexpr const char* kCsvVersionLine = "# renewalkit 0.1.0\n";

void append_double(std::string& out, double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void append_u64(std::string& out, std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  os.flush();
  if (!os) throw std::runtime_error("failed writing " + path.string());
}

Gate make_gate(const ExperimentConfig& c, const char* name, double threshold,
               double observed) {
  Gate g;
  g.name = name;
  g.criterion = c.criterion;
  g.threshold = threshold;
  g.observed = observed;
  g.pass = std::isfinite(observed) && observed <= threshold;
  return g;
}

ordered_json gates_to_json(const std::vector<Gate>& gates) {
  ordered_json arr = ordered_json::array();
  for (const Gate& g : gates) {
    ordered_json e;
    e["name"] = g.name;
    e["threshold"] = g.threshold;
    e["observed"] = g.observed;
    e["pass"] = g.pass;
    e["criterion"] = g.criterion;
    arr.push_back(std::move(e));
  }
  return arr;
}

// The reference ratio limit for a ratio-sim job; "auto" picks by mean
// finiteness.  Infinite-mean references need a tail index in (0,1).
LimitLaw resolve_reference(const ExperimentConfig& c) {
  if (c.reference == "uniform") return LimitLaw::uniform01();
  if (c.reference == "power")
    return LimitLaw::ratio_power(checked_alpha(c, "the power-law ratio limit"));
  if (c.law->has_finite_mean()) return LimitLaw::uniform01();
  return LimitLaw::ratio_power(checked_alpha(c, "the power-law ratio limit"));
}

// --- Job runners -----------------------------------------------------------

void run_ratio_sim(const ExperimentConfig& c, unsigned threads,
                   std::vector<Gate>& gates, std::string& csv,
                   ordered_json& s) {
  const ReplicationPlan plan{*c.law, c.t, c.n, c.seed};
  const std::vector<Snapshot> snaps = run_snapshots(plan, threads);

  csv.reserve(80 * snaps.size() + 64);
  csv += kCsvVersionLine;
  csv += "rep_index,t,age,residual,cycle,count,ratio\n";
  std::vector<double> ratios(snaps.size());
  std::vector<double> cycles(snaps.size());
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    const Snapshot& p = snaps[i];
    ratios[i] = ratio(p);
    cycles[i] = p.cycle;
    append_u64(csv, i);
    csv += ',';
    append_double(csv, p.t);
    csv += ',';
    append_double(csv, p.age);
    csv += ',';
    append_double(csv, p.residual);
    csv += ',';
    append_double(csv, p.cycle);
    csv += ',';
    append_u64(csv, p.count);
    csv += ',';
    append_double(csv, ratios[i]);
    csv += '\n';
  }

  const LimitLaw ref = resolve_reference(c);
  const Ecdf ratio_ecdf(std::move(ratios));
  const double ks =
      ks_distance(ratio_ecdf, [&](double v) { return ref.cdf(v); });

  s["law"] = c.law->to_string();
  s["t"] = c.t;
  s["n"] = c.n;
  s["seed"] = c.seed;
  s["reference"] = ref.name();
  s["ks"] = ks;
  s["dkw_epsilon"] = dkw_epsilon(c.n, c.delta);
  if (c.tail_x) {
    std::size_t exceed = 0;
    for (const Snapshot& p : snaps)
      if (ratio(p) > *c.tail_x) ++exceed;
    const double p_hat =
        static_cast<double>(exceed) / static_cast<double>(c.n);
    s["tail_x"] = *c.tail_x;
    s["tail_prob"] = p_hat;
    s["tail_prob_se"] =
        std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(c.n));
  }
  if (c.ks_gate) gates.push_back(make_gate(c, "ratio_ks", *c.ks_gate, ks));

  if (c.cycle_ks_gate) {
    const LimitLaw cycle_ref = LimitLaw::size_biased_cycle(*c.law);
    const Ecdf cycle_ecdf(std::move(cycles));
    const double cycle_ks =
        ks_distance(cycle_ecdf, [&](double v) { return cycle_ref.cdf(v); });
    s["cycle_reference"] = cycle_ref.name();
    s["cycle_ks"] = cycle_ks;
    gates.push_back(make_gate(c, "cycle_ks", *c.cycle_ks_gate, cycle_ks));
  }
}

void run_renewal_fn(const ExperimentConfig& c, unsigned threads,
                    std::vector<Gate>& gates, std::string& csv,
                    ordered_json& s) {
  const RenewalFnEstimate est =
      renewal_function_mc(*c.law, c.t_grid, c.n, c.seed, threads);

  csv += kCsvVersionLine;
  csv += "t,u_hat,se\n";
  for (std::size_t i = 0; i < est.t.size(); ++i) {
    append_double(csv, est.t[i]);
    csv += ',';
    append_double(csv, est.u_hat[i]);
    csv += ',';
    append_double(csv, est.se[i]);
    csv += '\n';
  }

  s["law"] = c.law->to_string();
  s["n"] = c.n;
  s["seed"] = c.seed;
  s["t_grid"] = c.t_grid;
  s["u_hat"] = est.u_hat;
  s["se"] = est.se;

  if (c.erickson_gate) {
    const double alpha = *c.law->tail_index();
    const double c_star = erickson_constant(alpha);
    const double product = est.u_hat.back() * c.law->survival(c.t_grid.back());
    const double rel_err = std::abs(product / c_star - 1.0);
    s["c_star"] = c_star;
    s["u_tail_product"] = product;
    s["erickson_rel_err"] = rel_err;
    gates.push_back(make_gate(c, "erickson_rel_err", *c.erickson_gate, rel_err));
  }
}

void run_solve(const ExperimentConfig& c, unsigned /*threads*/,
               std::vector<Gate>& gates, std::string& csv, ordered_json& s) {
  const InterArrivalLaw& law = *c.law;
  const bool tail_forcing = c.forcing == "b";
  std::function<double(double)> f;
  if (tail_forcing) {
    f = [&law, x = c.x](double time) { return b_function(law, x, time); };
  } else {
    f = [](double) { return 1.0; };
  }

  const GridFunction z = solve_renewal(law, f, c.solve_T, c.solve_h);
  std::ostringstream os;
  z.write_csv(os);
  csv = os.str();

  s["law"] = law.to_string();
  s["forcing"] = c.forcing;
  if (tail_forcing) s["x"] = c.x;
  s["T"] = c.solve_T;
  s["h"] = c.solve_h;
  s["z_horizon"] = z.values.back();
  if (!c.report_t.empty()) {
    std::vector<double> z_report;
    z_report.reserve(c.report_t.size());
    for (const double rt : c.report_t) z_report.push_back(z.at_time(rt));
    s["report_t"] = c.report_t;
    s["z_report"] = z_report;
  }

  if (c.residual_gate) {
    const double defect = residual(law, f, z);
    s["residual"] = defect;
    gates.push_back(make_gate(c, "residual", *c.residual_gate, defect));
  }
  if (c.limit_gate) {
    const double limit = 1.0 - std::pow(c.x, *law.tail_index());
    const double err = std::abs(z.values.back() - limit);
    s["limit_value"] = limit;
    s["limit_abs_err"] = err;
    gates.push_back(make_gate(c, "limit_abs_err", *c.limit_gate, err));
  }
  if (c.erickson_gate) {
    const double c_star = erickson_constant(*law.tail_index());
    const double product = z.values.back() * law.survival(z.horizon());
    const double rel_err = std::abs(product / c_star - 1.0);
    s["c_star"] = c_star;
    s["u_tail_product"] = product;
    s["erickson_rel_err"] = rel_err;
    gates.push_back(make_gate(c, "erickson_rel_err", *c.erickson_gate, rel_err));
  }
  if (c.compose_check) {
    const GridFunction u =
        tail_forcing
            ? solve_renewal(law, [](double) { return 1.0; }, c.solve_T, c.solve_h)
            : z;
    const GridFunction composed = key_renewal_compose(u, f);
    double sup = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
      sup = std::max(sup, std::abs(composed.values[i] - z.values[i]));
    s["compose_sup_diff"] = sup;
    if (c.compose_gate)
      gates.push_back(make_gate(c, "compose_sup_diff", *c.compose_gate, sup));
  }
}

void run_dl_check(const ExperimentConfig& c, unsigned threads,
                  std::vector<Gate>& gates, std::string& csv,
                  ordered_json& s) {
  csv += kCsvVersionLine;
  csv += "alpha,x,dl_value,power_value,abs_err\n";
  double worst = 0.0;
  for (const double alpha : c.alphas) {
    for (const double x : c.xs) {
      const double dl = ratio_cdf_from_dl(alpha, x);
      const double power = ratio_limit_cdf(alpha, x);
      const double err = std::abs(dl - power);
      worst = std::max(worst, err);
      append_double(csv, alpha);
      csv += ',';
      append_double(csv, x);
      csv += ',';
      append_double(csv, dl);
      csv += ',';
      append_double(csv, power);
      csv += ',';
      append_double(csv, err);
      csv += '\n';
    }
  }
  s["alphas"] = c.alphas;
  s["xs"] = c.xs;
  s["quad_max_abs_err"] = worst;
  if (c.quad_gate)
    gates.push_back(make_gate(c, "quad_max_abs_err", *c.quad_gate, worst));

  if (c.law) {
    const double alpha = *c.law->tail_index();
    const ReplicationPlan plan{*c.law, c.t, c.n, c.seed};
    const std::vector<Snapshot> snaps = run_snapshots(plan, threads);
    std::vector<double> scaled_ages(snaps.size());
    for (std::size_t i = 0; i < snaps.size(); ++i)
      scaled_ages[i] = snaps[i].age / c.t;
    const LimitLaw age_ref = LimitLaw::dl_age(alpha);
    const Ecdf age_ecdf(std::move(scaled_ages));
    const double age_ks =
        ks_distance(age_ecdf, [&](double v) { return age_ref.cdf(v); });
    s["law"] = c.law->to_string();
    s["t"] = c.t;
    s["n"] = c.n;
    s["seed"] = c.seed;
    s["age_reference"] = age_ref.name();
    s["age_ks"] = age_ks;
    s["dkw_epsilon"] = dkw_epsilon(c.n, c.delta);
    if (c.ks_gate) gates.push_back(make_gate(c, "age_ks", *c.ks_gate, age_ks));
  }
}

void run_identities(const ExperimentConfig& c, unsigned /*threads*/,
                    std::vector<Gate>& gates, std::string& csv,
                    ordered_json& s) {
  csv += kCsvVersionLine;
  csv += "alpha,c_star,beta_integral,product\n";
  double worst_product = 0.0;
  double worst_beta = 0.0;
  for (const double alpha : c.alphas) {
    const double c_star = erickson_constant(alpha);
    const double beta = beta_integral(alpha);
    const double product = c_star * alpha * beta;
    const double closed_form = M_PI / std::sin(M_PI * alpha);
    worst_product = std::max(worst_product, std::abs(product - 1.0));
    worst_beta = std::max(worst_beta, std::abs(beta / closed_form - 1.0));
    append_double(csv, alpha);
    csv += ',';
    append_double(csv, c_star);
    csv += ',';
    append_double(csv, beta);
    csv += ',';
    append_double(csv, product);
    csv += '\n';
  }
  s["alphas"] = c.alphas;
  s["max_product_abs_err"] = worst_product;
  s["max_beta_rel_err"] = worst_beta;
  if (c.product_gate)
    gates.push_back(
        make_gate(c, "product_identity", *c.product_gate, worst_product));
  if (c.beta_gate)
    gates.push_back(make_gate(c, "beta_closed_form", *c.beta_gate, worst_beta));
}

}  // namespace

const char* job_name(JobKind kind) {
  switch (kind) {
    case JobKind::kRatioSim: return "ratio-sim";
    case JobKind::kRenewalFn: return "renewal-fn";
    case JobKind::kSolve: return "solve";
    case JobKind::kDlCheck: return "dl-check";
    case JobKind::kIdentities: return "identities";
  }
  return "unknown";
}

ExperimentConfig ExperimentConfig::from_json(JobKind job, const json& doc) {
  ExperimentConfig c;
  c.job = job;
  const char* name = job_name(job);

  switch (job) {
    case JobKind::kRatioSim:
      check_keys(doc, name,
                 {"job", "criterion", "law", "t", "n", "master_seed", "delta",
                  "reference", "tail_x", "ks_gate", "cycle_ks_gate", "out"});
      c.law = req_law(doc, name);
      c.t = req_double(doc, name, "t");
      c.n = req_count(doc, name, "n");
      opt_double(doc, name, "delta", &c.delta);
      opt_string(doc, name, "reference", &c.reference);
      opt_gate(doc, name, "tail_x", &c.tail_x);
      opt_gate(doc, name, "ks_gate", &c.ks_gate);
      opt_gate(doc, name, "cycle_ks_gate", &c.cycle_ks_gate);
      break;
    case JobKind::kRenewalFn:
      check_keys(doc, name,
                 {"job", "criterion", "law", "t_grid", "n", "master_seed",
                  "erickson_gate", "out"});
      c.law = req_law(doc, name);
      c.t_grid = req_grid(doc, name, "t_grid");
      c.n = req_count(doc, name, "n");
      opt_gate(doc, name, "erickson_gate", &c.erickson_gate);
      break;
    case JobKind::kSolve:
      check_keys(doc, name,
                 {"job", "criterion", "law", "forcing", "x", "T", "h",
                  "report_t", "limit_gate", "erickson_gate", "residual_gate",
                  "compose_check", "compose_gate", "out"});
      c.law = req_law(doc, name);
      opt_string(doc, name, "forcing", &c.forcing);
      opt_double(doc, name, "x", &c.x);
      c.solve_T = req_double(doc, name, "T");
      c.solve_h = req_double(doc, name, "h");
      if (find(doc, "report_t")) c.report_t = req_grid(doc, name, "report_t");
      opt_gate(doc, name, "limit_gate", &c.limit_gate);
      opt_gate(doc, name, "erickson_gate", &c.erickson_gate);
      opt_gate(doc, name, "residual_gate", &c.residual_gate);
      opt_bool(doc, name, "compose_check", &c.compose_check);
      opt_gate(doc, name, "compose_gate", &c.compose_gate);
      break;
    case JobKind::kDlCheck:
      check_keys(doc, name,
                 {"job", "criterion", "alphas", "xs", "quad_gate", "law", "t",
                  "n", "master_seed", "delta", "ks_gate", "out"});
      c.alphas = req_grid(doc, name, "alphas");
      c.xs = req_grid(doc, name, "xs");
      opt_gate(doc, name, "quad_gate", &c.quad_gate);
      opt_gate(doc, name, "ks_gate", &c.ks_gate);
      if (find(doc, "law") || find(doc, "t") || find(doc, "n")) {
        c.law = req_law(doc, name);
        c.t = req_double(doc, name, "t");
        c.n = req_count(doc, name, "n");
        opt_double(doc, name, "delta", &c.delta);
      }
      break;
    case JobKind::kIdentities:
      check_keys(doc, name,
                 {"job", "criterion", "alphas", "product_gate", "beta_gate",
                  "out"});
      c.alphas = req_grid(doc, name, "alphas");
      opt_gate(doc, name, "product_gate", &c.product_gate);
      opt_gate(doc, name, "beta_gate", &c.beta_gate);
      break;
  }

  if (const json* v = find(doc, "job")) {
    if (!v->is_string() || v->get<std::string>() != name)
      fail(std::string(name) + ": \"job\" key does not match the subcommand");
  }
  opt_string(doc, name, "criterion", &c.criterion);
  opt_u64(doc, name, "master_seed", &c.seed);
  opt_string(doc, name, "out", &c.out);

  c.validate();
  return c;
}

void ExperimentConfig::validate() const {
  check_gate_positive(*this, ks_gate, "ks_gate");
  check_gate_positive(*this, cycle_ks_gate, "cycle_ks_gate");
  check_gate_positive(*this, erickson_gate, "erickson_gate");
  check_gate_positive(*this, limit_gate, "limit_gate");
  check_gate_positive(*this, compose_gate, "compose_gate");
  check_gate_positive(*this, residual_gate, "residual_gate");
  check_gate_positive(*this, quad_gate, "quad_gate");
  check_gate_positive(*this, product_gate, "product_gate");
  check_gate_positive(*this, beta_gate, "beta_gate");
  require(!out.empty(), where(*this, "out") + " must be non-empty");

  switch (job) {
    case JobKind::kRatioSim:
      require(law.has_value(), "ratio-sim: law is required");
      require(std::isfinite(t) && t > 0.0,
              where(*this, "t") + " must be positive and finite");
      require(n >= 1, where(*this, "n") + " must be at least 1");
      require(delta > 0.0 && delta < 1.0, where(*this, "delta") + " must lie in (0,1)");
      require(reference == "auto" || reference == "power" || reference == "uniform",
              where(*this, "reference") + " must be auto, power, or uniform");
      resolve_reference(*this);  // rejects alpha outside (0,1) where required
      if (tail_x)
        require(*tail_x > 0.0 && *tail_x < 1.0,
                where(*this, "tail_x") + " must lie in (0,1)");
      if (cycle_ks_gate)
        require(law->has_finite_mean(),
                "ratio-sim: cycle_ks_gate needs a finite-mean law");
      break;
    case JobKind::kRenewalFn: {
      require(law.has_value(), "renewal-fn: law is required");
      require(n >= 2, where(*this, "n") + " must be at least 2");
      require(!t_grid.empty(), where(*this, "t_grid") + " must be non-empty");
      require(t_grid.front() > 0.0,
              where(*this, "t_grid") + " must start above 0");
      for (std::size_t i = 0; i < t_grid.size(); ++i) {
        require(std::isfinite(t_grid[i]),
                where(*this, "t_grid") + " entries must be finite");
        if (i > 0)
          require(t_grid[i] > t_grid[i - 1],
                  where(*this, "t_grid") + " must be strictly increasing");
      }
      if (erickson_gate) checked_alpha(*this, "the Erickson asymptotic");
      break;
    }
    case JobKind::kSolve:
      require(law.has_value(), "solve: law is required");
      require(forcing == "one" || forcing == "b",
              where(*this, "forcing") + " must be \"one\" or \"b\"");
      if (forcing == "b")
        require(x > 0.0 && x < 1.0, where(*this, "x") + " must lie in (0,1)");
      require(solve_h > 0.0, where(*this, "h") + " must be positive");
      require(solve_T >= solve_h, where(*this, "T") + " must be at least h");
      for (const double rt : report_t)
        require(std::isfinite(rt) && rt >= 0.0 && rt <= solve_T,
                where(*this, "report_t") + " entries must lie in [0, T]");
      if (limit_gate) {
        require(forcing == "b", "solve: limit_gate needs forcing \"b\"");
        checked_alpha(*this, "the ratio tail limit");
      }
      if (erickson_gate) {
        require(forcing == "one", "solve: erickson_gate needs forcing \"one\"");
        checked_alpha(*this, "the Erickson asymptotic");
      }
      if (compose_gate)
        require(compose_check, "solve: compose_gate needs compose_check");
      break;
    case JobKind::kDlCheck:
      require(!alphas.empty() && !xs.empty(),
              "dl-check: alphas and xs must be non-empty");
      for (const double a : alphas)
        require(a > 0.0 && a < 1.0, "dl-check: alpha outside (0,1)");
      for (const double v : xs)
        require(v > 0.0 && v < 1.0, where(*this, "xs") + " entries must lie in (0,1)");
      if (law) {
        require(std::isfinite(t) && t > 0.0,
                where(*this, "t") + " must be positive and finite");
        require(n >= 1, where(*this, "n") + " must be at least 1");
        require(delta > 0.0 && delta < 1.0,
                where(*this, "delta") + " must lie in (0,1)");
        checked_alpha(*this, "the Dynkin-Lamperti age limit");
      } else {
        require(!ks_gate, "dl-check: ks_gate needs a law to simulate");
      }
      break;
    case JobKind::kIdentities:
      require(!alphas.empty(), "identities: alphas must be non-empty");
      for (const double a : alphas)
        require(a > 0.0 && a < 1.0, "identities: alpha outside (0,1)");
      break;
  }
}

void ExperimentConfig::apply_quick() {
  t /= 10.0;
  solve_T /= 10.0;
  for (double& g : t_grid) g /= 10.0;
  for (double& rt : report_t) rt /= 10.0;
  n = std::max<std::size_t>(n / 10, job == JobKind::kRenewalFn ? 2 : 1);
  for (std::optional<double>* g :
       {&ks_gate, &cycle_ks_gate, &erickson_gate, &limit_gate, &compose_gate,
        &residual_gate, &quad_gate, &product_gate, &beta_gate}) {
    if (*g) **g *= 3.0;
  }
}

ordered_json ExperimentConfig::canonical() const {
  ordered_json j;
  j["job"] = job_name(job);
  if (!criterion.empty()) j["criterion"] = criterion;
  const auto put_gate = [&](const char* key, const std::optional<double>& g) {
    if (g) j[key] = *g;
  };
  switch (job) {
    case JobKind::kRatioSim:
      j["law"] = law->to_string();
      j["t"] = t;
      j["n"] = n;
      j["master_seed"] = seed;
      j["delta"] = delta;
      j["reference"] = reference;
      put_gate("tail_x", tail_x);
      put_gate("ks_gate", ks_gate);
      put_gate("cycle_ks_gate", cycle_ks_gate);
      break;
    case JobKind::kRenewalFn:
      j["law"] = law->to_string();
      j["t_grid"] = t_grid;
      j["n"] = n;
      j["master_seed"] = seed;
      put_gate("erickson_gate", erickson_gate);
      break;
    case JobKind::kSolve:
      j["law"] = law->to_string();
      j["forcing"] = forcing;
      if (forcing == "b") j["x"] = x;
      j["T"] = solve_T;
      j["h"] = solve_h;
      if (!report_t.empty()) j["report_t"] = report_t;
      put_gate("limit_gate", limit_gate);
      put_gate("erickson_gate", erickson_gate);
      put_gate("residual_gate", residual_gate);
      if (compose_check) j["compose_check"] = true;
      put_gate("compose_gate", compose_gate);
      break;
    case JobKind::kDlCheck:
      j["alphas"] = alphas;
      j["xs"] = xs;
      put_gate("quad_gate", quad_gate);
      if (law) {
        j["law"] = law->to_string();
        j["t"] = t;
        j["n"] = n;
        j["master_seed"] = seed;
        j["delta"] = delta;
        put_gate("ks_gate", ks_gate);
      }
      break;
    case JobKind::kIdentities:
      j["alphas"] = alphas;
      put_gate("product_gate", product_gate);
      put_gate("beta_gate", beta_gate);
      break;
  }
  return j;
}

std::string ExperimentConfig::hash() const {
  const std::string bytes = canonical().dump();
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit offset basis
  for (const unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  std::string hex(16, '0');
  for (int i = 15; i >= 0; --i) {
    hex[static_cast<std::size_t>(i)] = "0123456789abcdef"[h & 0xf];
    h >>= 4;
  }
  return hex;
}

JobResult run_job(const ExperimentConfig& config, unsigned threads) {
  config.validate();

  JobResult result;
  std::string csv;
  ordered_json summary;
  summary["version"] = kVersion;
  summary["job"] = job_name(config.job);
  summary["config"] = config.canonical();

  switch (config.job) {
    case JobKind::kRatioSim:
      run_ratio_sim(config, threads, result.gates, csv, summary);
      break;
    case JobKind::kRenewalFn:
      run_renewal_fn(config, threads, result.gates, csv, summary);
      break;
    case JobKind::kSolve:
      run_solve(config, threads, result.gates, csv, summary);
      break;
    case JobKind::kDlCheck:
      run_dl_check(config, threads, result.gates, csv, summary);
      break;
    case JobKind::kIdentities:
      run_identities(config, threads, result.gates, csv, summary);
      break;
  }

  result.pass = std::all_of(result.gates.begin(), result.gates.end(),
                            [](const Gate& g) { return g.pass; });
  summary["gates"] = gates_to_json(result.gates);
  summary["pass"] = result.pass;
  result.summary = summary;

  result.dir = std::filesystem::path(config.out) /
               (std::string(job_name(config.job)) + "-" + config.hash());
  std::filesystem::create_directories(result.dir);
  write_file(result.dir / "data.csv", csv);
  write_file(result.dir / "summary.json", summary.dump(2) + "\n");
  return result;
}

}  // namespace renewal
