// Batch experiment runner: one subcommand per suite, CSV/JSON outputs plus a
// run manifest in the output directory.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dpplab/conditioning.hpp"
#include "dpplab/deformations.hpp"
#include "dpplab/dpp.hpp"
#include "dpplab/errors.hpp"
#include "dpplab/measure.hpp"
#include "dpplab/operator_core.hpp"
#include "dpplab/rng.hpp"
#include "dpplab/scaling_limits.hpp"
#include "dpplab/scenarios.hpp"
#include "dpplab/serialization.hpp"
#include "dpplab/special_functions.hpp"
#include "dpplab/version.hpp"

namespace fs = std::filesystem;
using namespace dpplab;

namespace {

enum class JType { kNumber, kInteger, kBool, kString, kArray, kObject, kNumberOrArray };

struct Field {
  const char* name;
  JType type;
};

const char* type_name(JType t) {
  switch (t) {
    case JType::kNumber: return "number";
    case JType::kInteger: return "integer";
    case JType::kBool: return "boolean";
    case JType::kString: return "string";
    case JType::kArray: return "array";
    case JType::kObject: return "object";
    case JType::kNumberOrArray: return "number or array";
  }
  return "?";
}

bool has_type(const Json& v, JType t) {
  switch (t) {
    case JType::kNumber: return v.is_number();
    case JType::kInteger: return v.is_number_integer();
    case JType::kBool: return v.is_boolean();
    case JType::kString: return v.is_string();
    case JType::kArray: return v.is_array();
    case JType::kObject: return v.is_object();
    case JType::kNumberOrArray: return v.is_number() || v.is_array();
  }
  return false;
}

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::kConfig, msg); }

void validate(const Json& j, const std::vector<Field>& fields, const std::string& path) {
  if (!j.is_object()) config_error(path + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    const Field* f = nullptr;
    for (const Field& c : fields) {
      if (key == c.name) f = &c;
    }
    if (!f) config_error(path + "." + key + ": unknown field");
    if (!has_type(value, f->type)) config_error(path + "." + key + ": expected " + type_name(f->type));
  }
}

const std::vector<Field> kGridFields{{"family", JType::kString}, {"a", JType::kNumber}, {"b", JType::kNumber},
                                     {"n", JType::kInteger},     {"power", JType::kNumber}};

const std::map<std::string, std::vector<Field>> kSchemas{
    {"oracle",
     {{"trials", JType::kInteger}, {"max_points", JType::kInteger}, {"max_rank", JType::kInteger},
      {"g_floor", JType::kNumber}}},
    {"induce", {{"grid", JType::kObject}, {"basis", JType::kArray}, {"g", JType::kString}}},
    {"perturb",
     {{"grid_points", JType::kInteger}, {"schedule", JType::kArray}, {"amplitude", JType::kNumber},
      {"min_angle", JType::kNumber}}},
    {"exhaust",
     {{"levels", JType::kArray}, {"grid_power", JType::kNumber}, {"l_basis", JType::kArray},
      {"v_basis", JType::kArray}, {"core", JType::kArray}, {"b_lower", JType::kArray},
      {"probe_windows", JType::kArray}, {"probe", JType::kString}, {"min_angle", JType::kNumber}}},
    {"scaling", {{"s", JType::kNumberOrArray}, {"n", JType::kArray}, {"grid", JType::kObject}}},
    {"tightness",
     {{"family", JType::kString}, {"tail_tolerance", JType::kNumber}, {"g_constant", JType::kNumber},
      {"chebyshev_samples", JType::kInteger}}},
    {"weakconv",
     {{"schedule", JType::kArray}, {"batch_size", JType::kInteger}, {"permutations", JType::kInteger},
      {"calibrate", JType::kBool}, {"calibration_batch", JType::kInteger},
      {"calibration_repetitions", JType::kInteger}}},
    {"sample",
     {{"grid", JType::kObject}, {"basis", JType::kArray}, {"scale", JType::kNumber}, {"count", JType::kInteger},
      {"kernel_file", JType::kString}}},
};

std::size_t line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

Json load_config(const std::string& path, const std::string& suite) {
  if (path.empty()) return Json::object();
  std::ifstream in(path);
  if (!in) config_error("cannot read config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) config_error(path + ": empty config file");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    config_error(path + ":" + std::to_string(line_of(text, e.byte)) + ": " + e.what());
  }
  std::vector<Field> fields = kSchemas.at(suite);
  fields.push_back({"suite", JType::kString});
  fields.push_back({"seed", JType::kInteger});
  validate(j, fields, "config");
  if (j.contains("suite") && j["suite"].get<std::string>() != suite) {
    config_error("config.suite: '" + j["suite"].get<std::string>() + "' does not match subcommand '" + suite + "'");
  }
  if (j.contains("grid")) validate(j["grid"], kGridFields, "config.grid");
  return j;
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

template <typename T>
std::vector<T> list_or(const Json& j, const char* key, std::vector<T> fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<std::vector<T>>();
  } catch (const Json::exception&) {
    config_error(std::string("config.") + key + ": wrong element type");
  }
}

std::size_t positive_size(const Json& j, const char* key, std::size_t fallback) {
  const long long v = get_or<long long>(j, key, static_cast<long long>(fallback));
  if (v <= 0) config_error(std::string("config.") + key + ": must be positive");
  return static_cast<std::size_t>(v);
}

// Grid spec from the config, falling back to `fallback` field by field.
Json grid_spec(const Json& config, Json fallback) {
  if (config.contains("grid")) {
    for (const auto& [k, v] : config["grid"].items()) fallback[k] = v;
  }
  return fallback;
}

GroundSpacePtr grid_from(const Json& g) {
  const std::string family = get_or<std::string>(g, "family", "uniform");
  const double a = get_or<double>(g, "a", 0.0);
  const double b = get_or<double>(g, "b", 1.0);
  const long long n = get_or<long long>(g, "n", 40);
  if (n <= 0) config_error("config.grid.n: must be positive");
  const auto count = static_cast<Index>(n);
  if (family == "uniform") return GroundSpace::uniform(a, b, count);
  if (family == "graded") return GroundSpace::graded(b, count, get_or<double>(g, "power", 2.0));
  if (family == "gauss_legendre") return GroundSpace::gauss_legendre(a, b, count);
  if (family == "counting") return GroundSpace::counting(count);
  config_error("config.grid.family: unknown family '" + family + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

class Run {
 public:
  Run(std::string suite, Json config, std::uint64_t seed, fs::path out, std::vector<std::string> argv)
      : suite_(std::move(suite)), config_(std::move(config)), seed_(seed), out_(std::move(out)), argv_(std::move(argv)) {
    fs::create_directories(out_);
  }

  const Json& config() const { return config_; }
  std::uint64_t seed() const { return seed_; }
  /// Records the value actually used so the manifest can reproduce the run.
  void effective(const std::string& key, Json value) { effective_[key] = std::move(value); }

  void write(const std::string& name, const std::string& content) {
    std::ofstream f(out_ / name, std::ios::binary);
    if (!f) throw Error(ErrorKind::kIo, "cannot write " + (out_ / name).string());
    f << content;
    files_.push_back({{"file", name}, {"fnv1a64", hex64(fnv1a64(content))}});
  }

  void finish() {
    Json effective = effective_;
    effective["suite"] = suite_;
    effective["seed"] = seed_;
    const std::string canonical = effective.dump();
    Json manifest{{"tool", "dpplab"},
                  {"version", kVersion},
                  {"suite", suite_},
                  {"seed", seed_},
                  {"rng", CounterRng::kAlgorithm},
                  {"config_hash", hex64(fnv1a64(canonical))},
                  {"config", effective},
                  {"files", files_},
                  {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                std::to_string(EIGEN_MINOR_VERSION)},
                  {"argv", argv_}};
    std::ofstream f(out_ / "manifest.json");
    f << manifest.dump(2) << '\n';
    std::cout << "wrote " << files_.size() << " file(s) and manifest.json to " << out_.string() << '\n';
  }

 private:
  std::string suite_;
  Json config_;
  std::uint64_t seed_;
  fs::path out_;
  std::vector<std::string> argv_;
  Json effective_ = Json::object();
  Json files_ = Json::array();
};

struct Common {
  std::string config;
  std::uint64_t seed = 7;
  bool seed_given = false;
  std::string out;
  unsigned jobs = 1;
};

int cmd_oracle(Run& run, unsigned jobs) {
  const Json& c = run.config();
  OracleBatteryOptions o;
  o.seed = run.seed();
  o.trials = positive_size(c, "trials", o.trials);
  o.max_points = positive_size(c, "max_points", o.max_points);
  o.max_rank = positive_size(c, "max_rank", o.max_rank);
  o.g_floor = get_or<double>(c, "g_floor", o.g_floor);
  if (!(o.g_floor >= 0.0 && o.g_floor < 1.0)) config_error("config.g_floor: must lie in [0, 1)");
  if (o.max_points > 20) config_error("config.max_points: brute force is limited to 20 points");
  run.effective("trials", o.trials);
  run.effective("max_points", o.max_points);
  run.effective("max_rank", o.max_rank);
  run.effective("g_floor", o.g_floor);
  const OracleBatteryResult r = run_oracle_battery(o, jobs);
  run.write("oracle.json", Json{{"trials", r.trials},
                                {"tv_pass", r.tv_pass},
                                {"normalization_pass", r.normalization_pass},
                                {"projection_pass", r.projection_pass},
                                {"max_tv", r.max_tv},
                                {"max_normalization_error", r.max_normalization_error},
                                {"max_projection_error", r.max_projection_error}}
                                   .dump(2) +
                               "\n");
  std::cout << r.tv_pass << "/" << r.trials << " trials TV < 1e-9\n"
            << r.normalization_pass << "/" << r.trials << " trials |det - E[Psi_g]| < 1e-10\n"
            << r.projection_pass << "/" << r.trials << " trials projection identity < 1e-9\n"
            << "max TV " << r.max_tv << ", " << std::fixed << std::setprecision(2) << r.seconds << " s\n";
  return 0;
}

int cmd_induce(Run& run) {
  const Json& c = run.config();
  const Json spec = grid_spec(c, {{"family", "uniform"}, {"a", 0.0}, {"b", 1.0}, {"n", 40}});
  const GroundSpacePtr grid = grid_from(spec);
  const auto basis_tags = list_or<std::string>(c, "basis", {"constant:1", "power:1", "power:2"});
  const std::string g_tag = get_or<std::string>(c, "g", "power:0.5");
  run.effective("grid", spec);
  run.effective("basis", basis_tags);
  run.effective("g", g_tag);
  std::vector<Vector> basis;
  for (const auto& t : basis_tags) basis.push_back(evaluate_function_tag(t, *grid));
  const KernelOperator p = project_span(basis, grid);
  const WeightFunction g(grid, evaluate_function_tag(g_tag, *grid), WeightRole::kConditioning);
  const Inducibility ind = check_inducibility(g, p);
  const KernelOperator b = induced_kernel(g, p);
  std::vector<Vector> weighted;
  for (const Vector& v : basis) weighted.push_back(v.cwiseProduct(g.values().cwiseSqrt()));
  const double err = (b.entries() - project_span(weighted, grid).entries()).cwiseAbs().maxCoeff();
  run.write("induced_kernel.json", to_json(b).dump() + "\n");
  const Json report{{"rank", projection_rank(p)},
                    {"margin", ind.margin},
                    {"norm_1mg_p", ind.norm_1mg_p},
                    {"normalization_constant", normalization_constant(g, p)},
                    {"resolvent_norm", resolvent_norm(g, p)},
                    {"induced_trace", b.trace()},
                    {"projection_identity_error", err}};
  run.write("induce.json", report.dump(2) + "\n");
  std::cout << report.dump(2) << '\n';
  return 0;
}

int cmd_perturb(Run& run) {
  const Json& c = run.config();
  PerturbationScenario s;
  s.grid_points = positive_size(c, "grid_points", s.grid_points);
  s.schedule = list_or<long>(c, "schedule", s.schedule);
  s.amplitude = get_or<double>(c, "amplitude", s.amplitude);
  s.min_angle = get_or<double>(c, "min_angle", s.min_angle);
  if (s.schedule.empty()) config_error("config.schedule: must not be empty");
  run.effective("grid_points", s.grid_points);
  run.effective("schedule", s.schedule);
  run.effective("amplitude", s.amplitude);
  run.effective("min_angle", s.min_angle);
  const PerturbationFamily fam = build_perturbation_family(s);
  const ConvergenceReport rep =
      perturbation_convergence_suite(fam.pn, fam.vn, fam.p, fam.v, fam.windows, s.min_angle, fam.labels);
  run.write("perturb.csv", rep.to_csv());
  for (const WindowVerdict& v : rep.verdicts()) {
    std::cout << v.window_id << ": strictly decreasing " << (v.strictly_decreasing ? "yes" : "no") << ", last "
              << v.last << '\n';
  }
  return 0;
}

int cmd_exhaust(Run& run, unsigned jobs) {
  const Json& c = run.config();
  ExhaustionScript s;
  s.levels = list_or<std::size_t>(c, "levels", s.levels);
  s.grid_power = get_or<double>(c, "grid_power", s.grid_power);
  s.l_basis = list_or<std::string>(c, "l_basis", s.l_basis);
  s.v_basis = list_or<std::string>(c, "v_basis", s.v_basis);
  const auto core = list_or<double>(c, "core", {s.core_lo, s.core_hi});
  if (core.size() != 2) config_error("config.core: expected [lo, hi]");
  s.core_lo = core[0];
  s.core_hi = core[1];
  s.b_lower = list_or<double>(c, "b_lower", s.b_lower);
  if (c.contains("probe_windows")) {
    s.probe_windows.clear();
    for (const auto& w : list_or<std::vector<double>>(c, "probe_windows", {})) {
      if (w.size() != 2) config_error("config.probe_windows: each entry must be [a, b]");
      s.probe_windows.emplace_back(w[0], w[1]);
    }
  }
  s.probe = get_or<std::string>(c, "probe", s.probe);
  s.min_angle = get_or<double>(c, "min_angle", s.min_angle);
  for (std::size_t k : s.levels) {
    if (k == 0 || k > 14) config_error("config.levels: levels must lie in 1..14");
  }
  run.effective("levels", s.levels);
  run.effective("grid_power", s.grid_power);
  run.effective("l_basis", s.l_basis);
  run.effective("v_basis", s.v_basis);
  run.effective("core", core);
  run.effective("b_lower", s.b_lower);
  run.effective("probe_windows", s.probe_windows);
  run.effective("probe", s.probe);
  run.effective("min_angle", s.min_angle);
  const ExhaustionReport rep = run_exhaustion_script(s, jobs);
  run.write("exhaust.csv", rep.to_csv());
  const ExhaustionRow& last = rep.rows.back();
  std::cout << "decreasing once angles hold: " << (rep.decreasing_once_angles_hold() ? "yes" : "no")
            << "\nprobe norm at finest grid: " << last.probe_norm << '\n';
  return 0;
}

int cmd_scaling(Run& run, const std::vector<double>& s_flag, const std::vector<std::size_t>& n_flag, unsigned jobs) {
  const Json& c = run.config();
  std::vector<double> s_list = s_flag;
  if (s_list.empty()) {
    if (c.contains("s") && c["s"].is_number()) {
      s_list = {c["s"].get<double>()};
    } else {
      s_list = list_or<double>(c, "s", {0.0, 0.5, 2.0});
    }
  }
  std::vector<std::size_t> n_list = n_flag.empty() ? list_or<std::size_t>(c, "n", {8, 16, 32, 64}) : n_flag;
  const Json spec = grid_spec(c, {{"family", "gauss_legendre"}, {"a", 0.0}, {"b", 10.0}, {"n", 160}});
  const GroundSpacePtr grid = grid_from(spec);
  run.effective("s", s_list);
  run.effective("n", n_list);
  run.effective("grid", spec);
  const Window window = Window::full(*grid, "(" + fmt(spec["a"].get<double>()) + ";" + fmt(spec["b"].get<double>()) + "]");
  std::string csv;
  Json checks = Json::array();
  for (double s : s_list) {
    const HeineMehlerReport rep = heine_mehler_suite(s, n_list, {window}, grid, jobs);
    std::string part = rep.to_csv();
    csv += csv.empty() ? part : part.substr(part.find('\n') + 1);
    checks.push_back({{"s", s},
                      {"strictly_decreasing", rep.strictly_decreasing()},
                      {"orthonormality_residual_deg20", jacobi_orthonormality_residual(s, 20)},
                      {"bessel_crossover_discrepancy", bessel_crossover_discrepancy(s, kBesselCrossover - 2.0,
                                                                                    kBesselCrossover + 2.0, 401)}});
    std::cout << "s = " << s << ": strictly decreasing " << (rep.strictly_decreasing() ? "yes" : "no") << '\n';
  }
  run.write("scaling.csv", csv);
  run.write("scaling_checks.json", checks.dump(2) + "\n");
  return 0;
}

int cmd_tightness(Run& run) {
  const Json& c = run.config();
  const std::string family = get_or<std::string>(c, "family", "both");
  if (family != "both" && family != "fixed" && family != "drifting") {
    config_error("config.family: expected fixed, drifting or both");
  }
  TightnessOptions opt;
  opt.tail_tolerance = get_or<double>(c, "tail_tolerance", opt.tail_tolerance);
  const double g_constant = get_or<double>(c, "g_constant", 0.4);
  const std::size_t cheb_samples = positive_size(c, "chebyshev_samples", 20000);
  run.effective("family", family);
  run.effective("tail_tolerance", opt.tail_tolerance);
  run.effective("g_constant", g_constant);
  run.effective("chebyshev_samples", cheb_samples);
  auto one_report = [&](const TightnessFamily& fam, const std::string& name, bool with_g) {
    const WeightFunction f = WeightFunction::constant(fam.space, 1.0, WeightRole::kEmbedding);
    std::optional<WeightFunction> g;
    if (with_g) g = WeightFunction::constant(fam.space, g_constant, WeightRole::kConditioning);
    const TightnessReport rep = tightness_report(fam.kernels, f, fam.tails, g, {}, opt, fam.labels);
    run.write("tightness_" + name + ".csv", rep.to_csv());
    std::cout << name << ": tight " << (rep.verdict.tight ? "yes" : "no") << ", sup trace " << rep.sup_trace;
    if (rep.inf_margin) std::cout << ", inf margin " << *rep.inf_margin;
    std::cout << '\n';
  };
  if (family != "drifting") one_report(fixed_tightness_family(), "fixed", true);
  if (family != "fixed") one_report(drifting_tightness_family(), "drifting", false);
  std::ostringstream cheb;
  cheb << std::setprecision(17) << "case,level,bound,empirical,slack,pass\n";
  std::uint64_t stream = 0;
  for (const ChebyshevCase& cc : chebyshev_cases()) {
    const DppDistribution d(cc.kernel);
    const ChebyshevCheck r =
        chebyshev_mass_bound_check(d, cc.f, cc.level, sample(d, CounterRng(run.seed(), stream++)(), cheb_samples));
    cheb << csv_field(cc.name) << ',' << cc.level << ',' << r.bound << ',' << r.empirical << ',' << r.slack << ','
         << (r.pass ? 1 : 0) << '\n';
    std::cout << "chebyshev " << cc.name << ": " << (r.pass ? "pass" : "FAIL") << '\n';
  }
  run.write("chebyshev.csv", cheb.str());
  return 0;
}

int cmd_weakconv(Run& run, unsigned jobs) {
  const Json& c = run.config();
  WeakConvergenceScenario s;
  s.seed = run.seed();
  s.schedule = list_or<long>(c, "schedule", s.schedule);
  for (long n : s.schedule) {
    if (n <= 0) config_error("config.schedule: entries must be positive");
  }
  if (s.schedule.empty()) config_error("config.schedule: must not be empty");
  s.batch_size = positive_size(c, "batch_size", s.batch_size);
  s.permutations = positive_size(c, "permutations", s.permutations);
  s.calibration_batch = positive_size(c, "calibration_batch", s.calibration_batch);
  s.calibration_repetitions = positive_size(c, "calibration_repetitions", s.calibration_repetitions);
  const bool calibrate = get_or<bool>(c, "calibrate", true);
  run.effective("schedule", s.schedule);
  run.effective("batch_size", s.batch_size);
  run.effective("permutations", s.permutations);
  run.effective("calibrate", calibrate);
  run.effective("calibration_batch", s.calibration_batch);
  run.effective("calibration_repetitions", s.calibration_repetitions);
  const WeakConvergenceRun result = run_weak_convergence_scenario(s, calibrate, jobs);
  const WeakConvergenceReport& rep = result.sequence;
  run.write("weakconv.csv", rep.to_csv());
  std::cout << "statistic strictly decreasing: " << (rep.statistic_decreasing ? "yes" : "no")
            << "\nfinal p-value above 0.01: " << (rep.final_p_above ? "yes" : "no") << '\n';
  if (result.calibration) {
    const CalibrationResult& cal = *result.calibration;
    std::ostringstream os;
    os << std::setprecision(17) << "repetition,p_value\n";
    for (std::size_t r = 0; r < cal.p_values.size(); ++r) os << r << ',' << cal.p_values[r] << '\n';
    run.write("calibration.csv", os.str());
    std::cout << "calibration KS distance: " << cal.ks_distance << '\n';
  }
  return 0;
}

int cmd_sample(Run& run, unsigned jobs) {
  const Json& c = run.config();
  const std::size_t count = positive_size(c, "count", 1000);
  run.effective("count", count);
  std::optional<KernelOperator> kernel;
  if (c.contains("kernel_file")) {
    const std::string path = c["kernel_file"].get<std::string>();
    std::ifstream in(path);
    if (!in) config_error("config.kernel_file: cannot read " + path);
    try {
      kernel = kernel_from_json(Json::parse(in));
    } catch (const Json::exception& e) {
      config_error("config.kernel_file: " + std::string(e.what()));
    }
    run.effective("kernel_file", path);
  } else {
    const Json spec = grid_spec(c, {{"family", "uniform"}, {"a", 0.0}, {"b", 1.0}, {"n", 40}});
    const GroundSpacePtr grid = grid_from(spec);
    const auto tags = list_or<std::string>(c, "basis", {"constant:1", "power:1"});
    const double scale = get_or<double>(c, "scale", 1.0);
    if (!(scale >= 0.0 && scale <= 1.0)) config_error("config.scale: must lie in [0, 1]");
    std::vector<Vector> basis;
    for (const auto& t : tags) basis.push_back(evaluate_function_tag(t, *grid));
    kernel = project_span(basis, grid) * scale;
    run.effective("grid", spec);
    run.effective("basis", tags);
    run.effective("scale", scale);
  }
  const DppDistribution d(*kernel);
  const auto batch = sample(d, run.seed(), count, jobs);
  run.write("kernel.json", to_json(*kernel).dump() + "\n");
  run.write("samples.csv", samples_to_csv(batch));
  const FiniteMeasure xi = intensity(d);
  Vector empirical = Vector::Zero(static_cast<Eigen::Index>(d.space()->size()));
  for (const Configuration& x : batch) {
    for (Index i : x.occupied()) empirical(static_cast<Eigen::Index>(i)) += 1.0 / static_cast<double>(count);
  }
  std::ostringstream os;
  os << std::setprecision(17) << "index,x,intensity,empirical\n";
  for (Index i = 0; i < d.space()->size(); ++i) {
    os << i << ',' << d.space()->point(i) << ',' << xi.mass(i) << ',' << empirical(static_cast<Eigen::Index>(i)) << '\n';
  }
  run.write("intensity.csv", os.str());
  std::cout << count << " samples, expected size " << xi.total() << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpplab: determinantal point process diagnostics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Common common;
  std::vector<double> s_flag;
  std::vector<std::size_t> n_flag;
  std::map<std::string, CLI::App*> subs;
  const std::vector<std::pair<std::string, std::string>> suites{
      {"oracle", "conditioning oracle-equivalence battery"},
      {"induce", "induced kernel for a projection and a weight g"},
      {"perturb", "finite-rank perturbation convergence suite"},
      {"exhaust", "exhaustion suite on refining grids"},
      {"scaling", "Jacobi to Bessel hard-edge scaling suite"},
      {"tightness", "tightness reports and Chebyshev mass checks"},
      {"weakconv", "two-sample weak-convergence tests and calibration"},
      {"sample", "raw exact sampling"}};
  for (const auto& [name, help] : suites) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", common.config, "JSON config file");
    sub->add_option("--seed", common.seed, "random seed")->each([&](const std::string&) { common.seed_given = true; });
    sub->add_option("--out", common.out, "output directory (default ./out/<suite>, or $DPPLAB_OUT)");
    sub->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
    subs[name] = sub;
  }
  subs["scaling"]->add_option("--s", s_flag, "Bessel order(s)")->delimiter(',');
  subs["scaling"]->add_option("--n", n_flag, "degrees, increasing")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  std::string suite;
  for (const auto& [name, sub] : subs) {
    if (sub->parsed()) suite = name;
  }
  try {
    Json config = load_config(common.config, suite);
    const std::uint64_t seed = common.seed_given ? common.seed : get_or<std::uint64_t>(config, "seed", common.seed);
    fs::path out = common.out;
    if (out.empty()) {
      const char* env = std::getenv("DPPLAB_OUT");
      out = env && *env ? fs::path(env) : fs::path("out") / suite;
    }
    Run run(suite, std::move(config), seed, out, std::vector<std::string>(argv, argv + argc));
    const unsigned jobs = common.jobs;
    int rc = 0;
    if (suite == "oracle") rc = cmd_oracle(run, jobs);
    else if (suite == "induce") rc = cmd_induce(run);
    else if (suite == "perturb") rc = cmd_perturb(run);
    else if (suite == "exhaust") rc = cmd_exhaust(run, jobs);
    else if (suite == "scaling") rc = cmd_scaling(run, s_flag, n_flag, jobs);
    else if (suite == "tightness") rc = cmd_tightness(run);
    else if (suite == "weakconv") rc = cmd_weakconv(run, jobs);
    else if (suite == "sample") rc = cmd_sample(run, jobs);
    run.finish();
    return rc;
  } catch (const Error& e) {
    const Json payload{{"error", to_string(e.kind())}, {"message", e.what()}};
    std::cerr << payload.dump() << '\n';
    return e.kind() == ErrorKind::kConfig ? 2 : 3;
  } catch (const Json::exception& e) {
    std::cerr << Json{{"error", "config"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << Json{{"error", "internal"}, {"message", e.what()}}.dump() << '\n';
    return 3;
  }
}
