#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <thread>

#include "curvjet/ck.hpp"
#include "curvjet/io.hpp"

namespace fs = std::filesystem;
using namespace curvjet;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerificationFailure = 1;
constexpr int kExitUsage = 2;

std::string matrix_brief(const RatMatrix& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += to_string(m(r, c));
    }
    out += ']';
  }
  return out + "]";
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (const auto& r : v) {
    if (!out.empty()) out += ';';
    out += to_string(r);
  }
  return out;
}

struct FileOutcome {
  int code = kExitPass;
  std::string summary;       // one line for batch output
  std::string report_bytes;  // empty when no report was produced
  std::string out_bytes;     // empty when no artifact was produced
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                 start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

ReportDocument base_report(const std::string& operation, const std::string& input_bytes) {
  ReportDocument rep;
  rep.operation = operation;
  rep.input_digest = digest_of(input_bytes);
  return rep;
}

// --- check -------------------------------------------------------------------

FileOutcome run_check(const std::string& path) {
  FileOutcome out;
  std::string text;
  try {
    text = read_file(path);
  } catch (const std::exception& e) {
    return {kExitUsage, std::string("error: ") + e.what(), "", ""};
  }
  ReportDocument rep = base_report("check", text);
  Timer timer;

  ModelBundle bundle;
  try {
    bundle = load_model_document(text);
  } catch (const DocumentError& e) {
    if (e.kind() == DocumentError::Kind::consistency) {
      rep.verdicts.emplace_back("document-consistent", false);
      rep.diagnostics.emplace_back("document-error", e.what());
      rep.pass = false;
      out.code = kExitVerificationFailure;
      out.summary = path + ": FAIL (" + e.what() + ")";
      out.report_bytes = save_report_document(rep);
      return out;
    }
    return {kExitUsage, path + ": parse error: " + e.what(), "", ""};
  }
  rep.verdicts.emplace_back("document-consistent", true);

  auto violations = validate_curvature_tensor(bundle.model.tensor);
  rep.verdicts.emplace_back("tensor-symmetries", violations.empty());
  if (!violations.empty()) {
    const auto& v = violations.front();
    std::ostringstream ss;
    ss << v.identity << "@(" << v.index[0] + 1 << ',' << v.index[1] + 1 << ',' << v.index[2] + 1
       << ',' << v.index[3] + 1 << ")";
    rep.diagnostics.emplace_back("tensor-violation", ss.str());
  }
  if (bundle.structure) {
    auto bad = validate_structure(bundle.model.form, *bundle.structure);
    rep.verdicts.emplace_back("structure-valid", bad.empty());
    if (!bad.empty()) rep.diagnostics.emplace_back("structure-violation", bad.front());
  }
  if (bundle.hyper) {
    auto bad = validate_hyper(bundle.model.form, *bundle.hyper);
    rep.verdicts.emplace_back("structure-valid", bad.empty());
    if (!bad.empty()) rep.diagnostics.emplace_back("structure-violation", bad.front());
  }
  rep.diagnostics.emplace_back("time-ms", std::to_string(timer.ms()));
  rep.pass = all_verdicts_pass(rep);
  out.code = rep.pass ? kExitPass : kExitVerificationFailure;
  out.summary = path + (rep.pass ? ": pass" : ": FAIL");
  out.report_bytes = save_report_document(rep);
  return out;
}

// --- realize -----------------------------------------------------------------

FileOutcome run_realize(const std::string& path, int order, const std::string& mode) {
  FileOutcome out;
  std::string text;
  ModelBundle bundle;
  try {
    text = read_file(path);
    bundle = load_model_document(text);
  } catch (const std::exception& e) {
    return {kExitUsage, path + ": " + e.what(), "", ""};
  }
  ReportDocument rep =
      base_report(mode == "plain" ? "realize" : "realize-conformally-flat", text);
  rep.orders.emplace_back("requested", order);
  Timer timer;

  MetricJet jet;
  try {
    if (mode == "plain") {
      jet = realize(bundle.model, order).g;
    } else {
      if (bundle.model.form.dim < 3 || !is_conformally_flat(bundle.model)) {
        rep.verdicts.emplace_back("conformally-flat-input", false);
        rep.pass = false;
        out.code = kExitVerificationFailure;
        out.summary = path + ": FAIL (input model is not conformally flat)";
        out.report_bytes = save_report_document(rep);
        return out;
      }
      rep.verdicts.emplace_back("conformally-flat-input", true);
      OrthoResult on = orthonormalize_model(bundle.model);
      RealizedGeometry real = realize_conformally_flat(on.model, order);
      jet = on.basis.is_identity() ? real.g : transform_jet(real.g, on.basis.inverse());
    }
  } catch (const std::exception& e) {
    return {kExitVerificationFailure, path + ": " + e.what(), "", ""};
  }

  CurvatureModel point = point_model(jet);
  rep.verdicts.emplace_back("point-model-reproduced", point == bundle.model);
  rep.verdicts.emplace_back("curvature-valid", validate_curvature_tensor(point.tensor).empty());
  if (mode != "plain") rep.verdicts.emplace_back("weyl-series-zero", weyl_series(jet).is_zero());
  rep.diagnostics.emplace_back("time-ms", std::to_string(timer.ms()));
  rep.pass = all_verdicts_pass(rep);

  MetaMap meta{{"provenance", rep.operation}, {"model-digest", rep.input_digest}};
  out.out_bytes = save_jet_document(jet, meta);
  out.report_bytes = save_report_document(rep);
  out.code = rep.pass ? kExitPass : kExitVerificationFailure;
  out.summary = path + (rep.pass ? ": pass" : ": FAIL");
  return out;
}

// --- solve -------------------------------------------------------------------

FileOutcome run_solve(const std::string& path, int order, const std::string& target) {
  FileOutcome out;
  std::string text;
  ModelBundle bundle;
  try {
    text = read_file(path);
    bundle = load_model_document(text);
  } catch (const std::exception& e) {
    return {kExitUsage, path + ": " + e.what(), "", ""};
  }
  const bool wants_star = target == "tau-taustar";
  if (wants_star && bundle.kind == ModelKind::plain)
    return {kExitUsage, path + ": target tau-taustar needs a hermitian, para, or hyper model", "",
            ""};

  ReportDocument rep = base_report("solve-" + target, text);
  rep.orders.emplace_back("requested", order);
  rep.orders.emplace_back("constancy", order - 2);
  Timer timer;

  SolveDocument doc;
  doc.target = target;
  try {
    if (!wants_star) {
      RealizedGeometry real = realize(bundle.model, order);
      ConformalDeformation d = constant_scalar_conformal(real.g, order);
      doc.h = d.h;
      doc.phi = d.phi;
      doc.frame = d.frame;
      rep.verdicts.emplace_back("tau-constant", d.report.tau_constant);
      rep.verdicts.emplace_back("two-jet-vanishes", d.report.two_jet_vanishes);
      rep.verdicts.emplace_back("point-model-preserved", d.report.point_model_preserved);
      rep.diagnostics.emplace_back("linearization", matrix_brief(d.report.linearization));
      rep.diagnostics.emplace_back("step-dets", join_rationals(d.report.step_dets));
      rep.diagnostics.emplace_back("tau", to_string(d.report.tau_value));
    } else {
      RealizedGeometry real = realize_with_structures(bundle, order);
      VariationDeformation d =
          bundle.hyper ? constant_tau_taustar_hyper(real.g, *real.triple, order)
                       : constant_tau_taustar(real.g, *real.structure, order);
      doc.h = d.h;
      doc.xi = d.xi;
      doc.eta = d.eta;
      doc.frame = d.frame;
      rep.verdicts.emplace_back("tau-constant", d.report.tau_constant);
      rep.verdicts.emplace_back("taustar-constant", d.report.taustar_constant);
      rep.verdicts.emplace_back("two-jet-vanishes", d.report.two_jet_vanishes);
      rep.verdicts.emplace_back("point-model-preserved", d.report.point_model_preserved);
      rep.verdicts.emplace_back("structure-compatible", d.report.structure_compatible);
      rep.diagnostics.emplace_back("linearization", matrix_brief(d.report.linearization));
      rep.diagnostics.emplace_back("step-dets", join_rationals(d.report.step_dets));
      rep.diagnostics.emplace_back("tau", to_string(d.report.tau_value));
      rep.diagnostics.emplace_back("taustar", to_string(d.report.taustar_value));
    }
  } catch (const SingularStepError& e) {
    return {kExitVerificationFailure,
            path + ": singular solver step " + std::to_string(e.step()) + ": " + e.what(), "", ""};
  } catch (const std::exception& e) {
    return {kExitVerificationFailure, path + ": " + e.what(), "", ""};
  }
  rep.diagnostics.emplace_back("time-ms", std::to_string(timer.ms()));
  rep.pass = all_verdicts_pass(rep);

  doc.meta = MetaMap{{"provenance", rep.operation}, {"model-digest", rep.input_digest}};
  out.out_bytes = save_solve_document(doc);
  out.report_bytes = save_report_document(rep);
  out.code = rep.pass ? kExitPass : kExitVerificationFailure;
  out.summary = path + (rep.pass ? ": pass" : ": FAIL");
  return out;
}

// --- batch driver --------------------------------------------------------------

std::string derived_name(const std::string& input, const char* suffix) {
  return fs::path(input).stem().string() + suffix;
}

int run_batch(const std::vector<std::string>& files, int jobs, bool quiet,
              const std::string& out_path, const char* out_suffix, const std::string& report_path,
              const std::function<FileOutcome(const std::string&)>& runner) {
  const bool multi = files.size() > 1;
  std::vector<FileOutcome> results(files.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1))
      results[i] = runner(files[i]);
  };
  int thread_count = std::max(1, std::min<int>(jobs, static_cast<int>(files.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  int code = kExitPass;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const FileOutcome& r = results[i];
    code = std::max(code, r.code);
    if (!r.out_bytes.empty() && !out_path.empty()) {
      fs::path target = out_path;
      if (multi) {
        fs::create_directories(target);
        target /= derived_name(files[i], out_suffix);
      }
      write_file(target.string(), r.out_bytes);
    }
    if (!r.report_bytes.empty() && !report_path.empty()) {
      fs::path target = report_path;
      if (multi) {
        fs::create_directories(target);
        target /= derived_name(files[i], ".report.json");
      }
      write_file(target.string(), r.report_bytes);
    }
    if (!quiet) {
      if (multi || r.report_bytes.empty())
        std::cout << r.summary << "\n";
      else
        std::cout << r.report_bytes;
    }
    if (r.code != kExitPass && r.report_bytes.empty()) std::cerr << r.summary << "\n";
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic realization of curvature models as metric jets"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random model document");
  int gen_dim = 3;
  std::string gen_signature = "0,3";
  std::string gen_kind = "plain";
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  bool gen_quiet = false;
  gen->add_option("--dim", gen_dim, "dimension")->required();
  gen->add_option("--signature", gen_signature, "signature p,q (negatives,positives)")->required();
  gen->add_option("--kind", gen_kind, "plain|hermitian|para|hyper-pseudo|hyper-para");
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path")->required();
  gen->add_flag("--quiet", gen_quiet, "suppress output");

  // check
  auto* check = app.add_subcommand("check", "validate model documents");
  std::vector<std::string> check_files;
  std::string check_report;
  bool check_quiet = false;
  int check_jobs = 1;
  check->add_option("files", check_files, "model documents")->required();
  check->add_option("--report", check_report, "report path (directory for multiple files)");
  check->add_flag("--quiet", check_quiet, "suppress stdout");
  check->add_option("--jobs", check_jobs, "parallel files");

  // realize
  auto* realize_cmd = app.add_subcommand("realize", "realize a model as a metric jet");
  std::vector<std::string> realize_files;
  int realize_order = 3;
  std::string realize_mode = "plain";
  std::string realize_out, realize_report;
  bool realize_quiet = false;
  int realize_jobs = 1;
  realize_cmd->add_option("files", realize_files, "model documents")->required();
  realize_cmd->add_option("--order", realize_order, "jet truncation order (>= 2)")->required();
  realize_cmd->add_option("--mode", realize_mode, "plain|conformally-flat");
  realize_cmd->add_option("--out", realize_out, "output path (directory for multiple files)")
      ->required();
  realize_cmd->add_option("--report", realize_report, "report path");
  realize_cmd->add_flag("--quiet", realize_quiet, "suppress stdout");
  realize_cmd->add_option("--jobs", realize_jobs, "parallel files");

  // solve
  auto* solve = app.add_subcommand("solve", "deform a realized model to constant curvature");
  std::vector<std::string> solve_files;
  int solve_order = 4;
  std::string solve_target = "tau";
  std::string solve_out, solve_report;
  bool solve_quiet = false;
  int solve_jobs = 1;
  solve->add_option("files", solve_files, "model documents")->required();
  solve->add_option("--order", solve_order, "jet truncation order (>= 2)")->required();
  solve->add_option("--target", solve_target, "tau|tau-taustar");
  solve->add_option("--out", solve_out, "output path (directory for multiple files)")->required();
  solve->add_option("--report", solve_report, "report path");
  solve->add_flag("--quiet", solve_quiet, "suppress stdout");
  solve->add_option("--jobs", solve_jobs, "parallel files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      int neg = 0, pos = 0;
      if (std::sscanf(gen_signature.c_str(), "%d,%d", &neg, &pos) != 2) {
        std::cerr << "error: --signature must be 'p,q'\n";
        return kExitUsage;
      }
      auto kind = model_kind_from_string(gen_kind);
      if (!kind) {
        std::cerr << "error: unknown kind '" << gen_kind << "'\n";
        return kExitUsage;
      }
      ModelBundle bundle;
      try {
        bundle = random_model(gen_dim, neg, pos, gen_seed, *kind);
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      MetaMap meta{{"provenance", "random_model"},
                   {"seed", std::to_string(gen_seed)},
                   {"signature", gen_signature}};
      write_file(gen_out, save_model_document(bundle, meta));
      if (!gen_quiet) std::cout << "wrote " << gen_out << "\n";
      return kExitPass;
    }
    if (check->parsed())
      return run_batch(check_files, check_jobs, check_quiet, "", "", check_report, run_check);
    if (realize_cmd->parsed()) {
      if (realize_order < 2) {
        std::cerr << "error: --order must be >= 2\n";
        return kExitUsage;
      }
      if (realize_mode != "plain" && realize_mode != "conformally-flat") {
        std::cerr << "error: --mode must be plain or conformally-flat\n";
        return kExitUsage;
      }
      return run_batch(realize_files, realize_jobs, realize_quiet, realize_out, ".jet.json",
                       realize_report, [&](const std::string& f) {
                         return run_realize(f, realize_order, realize_mode);
                       });
    }
    if (solve->parsed()) {
      if (solve_order < 2) {
        std::cerr << "error: --order must be >= 2\n";
        return kExitUsage;
      }
      if (solve_target != "tau" && solve_target != "tau-taustar") {
        std::cerr << "error: --target must be tau or tau-taustar\n";
        return kExitUsage;
      }
      return run_batch(solve_files, solve_jobs, solve_quiet, solve_out, ".solve.json", solve_report,
                       [&](const std::string& f) { return run_solve(f, solve_order, solve_target); });
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
