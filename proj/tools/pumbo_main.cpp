#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "pumbo/dataio.hpp"
#include "pumbo/errors.hpp"
#include "pumbo/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pumbo;

namespace {

// exit codes: 0 ok, 1 usage/config, 2 data, 3 numerical
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNumerical = 3;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

json trace_to_json(const BoTrace& trace) {
  json t;
  t["best"] = trace.best;
  json entries = json::array();
  for (Eigen::Index i = 0; i < trace.size(); ++i) {
    const char* st = "ok";
    if (trace.status[i] == TrialStatus::IllConditioned) st = "ill-conditioned";
    else if (trace.status[i] == TrialStatus::DegenerateSplit)
      st = "degenerate-split";
    entries.push_back({{"epsilon", trace.thetas(i, 0)},
                       {"delta", trace.thetas(i, 1)},
                       {"objective", std::isfinite(trace.objectives[i])
                                         ? json(trace.objectives[i])
                                         : json(nullptr)},
                       {"status", st}});
  }
  t["trials"] = entries;
  return t;
}

json result_to_json(const FitResult& r, bool with_traces) {
  json out;
  out["predictions"] = std::vector<double>(
      r.predictions.data(), r.predictions.data() + r.predictions.size());
  json layout;
  layout["count"] = r.layout.count();
  layout["epsilon"] = std::vector<double>(
      r.layout.shapes.data(), r.layout.shapes.data() + r.layout.shapes.size());
  layout["delta"] = std::vector<double>(
      r.layout.radii.data(), r.layout.radii.data() + r.layout.radii.size());
  out["layout"] = layout;
  if (r.metrics) {
    json m;
    m["mae"] = r.metrics->mae;
    if (r.metrics->rmae) m["rmae"] = *r.metrics->rmae;
    if (r.metrics->rrmse) m["rrmse"] = *r.metrics->rrmse;
    m["excluded"] = r.metrics->excluded;
    out["metrics"] = m;
  }
  out["timings"] = {{"radius_search_s", r.timings.radius_search_s},
                    {"bo_total_s", r.timings.bo_total_s},
                    {"blend_s", r.timings.blend_s}};
  out["uncovered"] = r.uncovered;
  if (with_traces) {
    json traces = json::array();
    for (const auto& t : r.traces) traces.push_back(trace_to_json(t));
    out["traces"] = traces;
  }
  return out;
}

struct BenchFlags {
  std::string fn = "f1";
  std::string kernels = "gaussian";
  std::string sizes = "2000,4000,8000,16000";
  std::string taus = "1e-4";
  std::uint64_t seed = 0;
  std::string out_path;
  std::string plot_dir;
  int n_test = 1000;
  BoConfig cfg;
};

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

int run_gen(const std::string& fn, Eigen::Index n, std::uint64_t seed,
            const std::string& out_path) {
  PointSet ps = gen_testdata(fn, n, seed);
  save_csv(ps, out_path);
  return 0;
}

int run_fit(const std::string& train_path, const std::string& eval_path,
            const std::string& kernel, const BoConfig& cfg_in,
            const std::string& out_path) {
  BoConfig cfg = cfg_in;
  cfg.family = parse_kernel_family(kernel);

  PointSet train_raw = load_csv(train_path);
  if (!train_raw.has_values())
    throw DataError(train_path + ": training file needs an f column");
  PointSet eval_raw = load_csv(eval_path);
  if (train_raw.dim() != eval_raw.dim())
    throw DataError("train and eval dimensions differ");

  auto norm = normalize(train_raw);
  for (const auto& w : norm.warnings) std::cerr << "warning: " << w << "\n";

  Eigen::MatrixXd eval_pts(eval_raw.size(), eval_raw.dim());
  for (Eigen::Index i = 0; i < eval_raw.size(); ++i)
    eval_pts.row(i) = norm.map.apply(eval_raw.point(i)).transpose();

  std::optional<Eigen::VectorXd> truth;
  if (eval_raw.has_values()) truth = eval_raw.values;

  FitResult r = bo_pum(norm.ps, eval_pts, cfg, truth, resolve_thread_count());

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw DataError("cannot write " + out_path);
  out << result_to_json(r, true).dump(2) << "\n";

  if (r.metrics) {
    std::cout << "MAE " << fmt_short(r.metrics->mae);
    if (r.metrics->rmae) std::cout << "  RMAE " << fmt_short(*r.metrics->rmae);
    if (r.metrics->rrmse)
      std::cout << "  RRMSE " << fmt_short(*r.metrics->rrmse);
    std::cout << "\n";
  }
  return 0;
}

int run_bench(const BenchFlags& flags) {
  const auto kernels = split_csv_list(flags.kernels);
  const auto sizes = split_csv_list(flags.sizes);
  const auto taus = split_csv_list(flags.taus);
  if (kernels.empty() || sizes.empty() || taus.empty())
    throw ConfigError("bench: empty kernel/size/tau list");
  for (const auto& k : kernels) parse_kernel_family(k);  // validate early

  const unsigned n_threads = resolve_thread_count();

  // test set fixed across N, as in the experimental protocol
  PointSet test = gen_testdata(flags.fn, flags.n_test,
                               flags.seed ^ 0x7e57da7aULL);

  std::ostringstream table;
  // wall-clock time lives in the JSON report only: the CSV table must be
  // byte-identical for identical flags and seed
  table << "N,tau,kernel,MAE,RMAE,RRMSE,status\n";
  json jrows = json::array();
  // plot series: one (kernel, tau) file of N vs MAE
  std::map<std::string, std::ostringstream> plots;

  for (const auto& kernel : kernels) {
    for (const auto& tau_s : taus) {
      for (const auto& n_s : sizes) {
        const auto n = static_cast<Eigen::Index>(std::stoll(n_s));
        const double tau = std::stod(tau_s);
        BoConfig cfg = flags.cfg;
        cfg.family = parse_kernel_family(kernel);
        cfg.tau = tau;
        cfg.seed = flags.seed;

        PointSet train = gen_testdata(flags.fn, n, flags.seed + 1);

        std::string status = "ok";
        json row = {{"N", n}, {"tau", tau}, {"kernel", kernel}};
        try {
          const auto t0 = std::chrono::steady_clock::now();
          FitResult r = bo_pum(train, test.points, cfg, test.values, n_threads);
          const double elapsed =
              std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
          table << n << "," << tau_s << "," << kernel << ","
                << fmt_short(r.metrics->mae) << ","
                << (r.metrics->rmae ? fmt_short(*r.metrics->rmae) : "")
                << ","
                << (r.metrics->rrmse ? fmt_short(*r.metrics->rrmse) : "")
                << ",ok\n";
          row["time_s"] = elapsed;
          row["mae"] = r.metrics->mae;
          if (r.metrics->rmae) row["rmae"] = *r.metrics->rmae;
          if (r.metrics->rrmse) row["rrmse"] = *r.metrics->rrmse;
          row["status"] = "ok";
          if (!flags.plot_dir.empty()) {
            auto& s = plots[kernel + "_tau" + tau_s];
            if (s.tellp() == 0) s << "N,MAE\n";
            s << n << "," << fmt(r.metrics->mae) << "\n";
          }
        } catch (const std::exception& e) {
          status = e.what();
          table << n << "," << tau_s << "," << kernel << ",,,,failed\n";
          row["status"] = std::string("failed: ") + e.what();
        }
        jrows.push_back(row);
        std::cerr << "bench " << flags.fn << " " << kernel << " N=" << n
                  << " tau=" << tau_s << " -> " << status << "\n";
      }
    }
  }

  {
    std::ofstream out(flags.out_path, std::ios::binary);
    if (!out) throw DataError("cannot write " + flags.out_path);
    out << table.str();
  }
  {
    fs::path jpath = fs::path(flags.out_path).replace_extension(".json");
    std::ofstream out(jpath, std::ios::binary);
    out << jrows.dump(2) << "\n";
  }
  if (!flags.plot_dir.empty()) {
    fs::create_directories(flags.plot_dir);
    for (auto& [name, s] : plots) {
      std::ofstream out(fs::path(flags.plot_dir) / (name + ".csv"),
                        std::ios::binary);
      out << s.str();
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RBF partition-of-unity interpolation with per-subdomain "
               "Bayesian parameter tuning"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a test dataset CSV");
  std::string gen_fn = "f1", gen_out;
  std::int64_t gen_n = 2000;
  std::uint64_t gen_seed = 0;
  gen->add_option("--fn", gen_fn, "test function (f1 | f2)");
  gen->add_option("--n", gen_n, "number of points")->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--out", gen_out, "output CSV path")->required();

  // fit
  auto* fit = app.add_subcommand("fit", "fit and evaluate on CSV data");
  std::string fit_train, fit_eval, fit_kernel = "gaussian", fit_out;
  BoConfig fit_cfg;
  fit->add_option("--train", fit_train, "training CSV (x1..xd,f)")->required();
  fit->add_option("--eval", fit_eval, "evaluation CSV (x1..xd[,f])")->required();
  fit->add_option("--kernel", fit_kernel, "gaussian | matern | wendland");
  fit->add_option("--tau", fit_cfg.tau, "BO error tolerance");
  fit->add_option("--seed", fit_cfg.seed, "RNG seed");
  fit->add_option("--xi", fit_cfg.xi, "EI exploration parameter");
  fit->add_option("--nstart", fit_cfg.nstart, "random warm-up trials");
  fit->add_option("--niter", fit_cfg.niter, "max Bayesian trials");
  fit->add_option("--min-pts", fit_cfg.min_pts, "min points per subdomain");
  fit->add_option("--eps-max", fit_cfg.eps_max, "shape parameter upper bound");
  fit->add_option("--out", fit_out, "output JSON path")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "run the benchmark protocol");
  BenchFlags bf;
  bench->add_option("--fn", bf.fn, "test function (f1 | f2)");
  bench->add_option("--kernels", bf.kernels, "comma-separated kernel list");
  bench->add_option("--sizes", bf.sizes, "comma-separated training sizes");
  bench->add_option("--taus", bf.taus, "comma-separated tolerances");
  bench->add_option("--seed", bf.seed, "RNG seed");
  bench->add_option("--n-test", bf.n_test, "test set size");
  bench->add_option("--nstart", bf.cfg.nstart, "random warm-up trials");
  bench->add_option("--niter", bf.cfg.niter, "max Bayesian trials");
  bench->add_option("--xi", bf.cfg.xi, "EI exploration parameter");
  bench->add_option("--min-pts", bf.cfg.min_pts, "min points per subdomain");
  bench->add_option("--out", bf.out_path, "output CSV path")->required();
  bench->add_option("--plot-data", bf.plot_dir, "directory for plot series");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed())
      return run_gen(gen_fn, static_cast<Eigen::Index>(gen_n), gen_seed,
                     gen_out);
    if (fit->parsed())
      return run_fit(fit_train, fit_eval, fit_kernel, fit_cfg, fit_out);
    if (bench->parsed()) return run_bench(bf);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
