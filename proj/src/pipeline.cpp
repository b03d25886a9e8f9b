#include "accretive/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <set>

namespace accretive {

ModelOperators build_model(const AnalysisConfig& cfg, int n) {
  if (cfg.family == Family::Selftest2x2) {
    const Grid grid = make_grid(0.0, 3.0, 2);
    const Complex i(0.0, 1.0);
    Matrix t(2, 2);
    t << 1.0, i, i, 1.0;
    const Matrix id = Matrix::Identity(2, 2);
    OperatorMatrix T{t, grid, "T", "closed form"};
    OperatorMatrix A{id, grid, "A", "closed form"};
    const SobolevGram unit{0, RealMatrix::Identity(2, 2)};
    return ModelOperators{grid, T, A, assemble_W(T, A), GramPair{unit, unit, 1.0}};
  }

  const Grid grid = make_grid(cfg.a, cfg.b, n);
  if (cfg.family == Family::EllipticFrac) {
    const Vector a = cfg.diffusion.sample(grid);
    OperatorMatrix T = assemble_elliptic(grid, a.real());
    CoefficientSpec spec;
    spec.fractional.push_back({cfg.frac_coeff, cfg.alpha, Side::Left});
    spec.fractional.push_back({cfg.right_coeff, cfg.beta, Side::Right});
    OperatorMatrix A = assemble_D(grid, spec, cfg.scheme);
    A.entries += cfg.reaction * Matrix::Identity(n, n);
    A.label = "A";
    return ModelOperators{grid, T, A, assemble_W(T, A), GramPair{sobolev_gram(grid, 1), identity_gram(grid), grid.h}};
  }

  CoefficientSpec spec;
  for (const auto& c : cfg.c) spec.differential.push_back(c.sample(grid));
  for (const auto& t : cfg.left) spec.fractional.push_back({t.coeff, t.order, Side::Left});
  for (const auto& t : cfg.right) spec.fractional.push_back({t.coeff, t.order, Side::Right});
  OperatorMatrix T = assemble_L(grid, spec);
  OperatorMatrix A = assemble_D(grid, spec, cfg.scheme);
  return ModelOperators{grid, T, A, assemble_W(T, A),
                        GramPair{sobolev_gram(grid, cfg.k), identity_gram(grid), grid.h}};
}

std::vector<const CheckResult*> VerificationReport::all_checks() const {
  std::vector<const CheckResult*> out;
  for (const auto& s : sizes)
    for (const auto& c : s.checks) out.push_back(&c);
  for (const auto& c : cross_checks) out.push_back(&c);
  return out;
}

bool VerificationReport::pass() const {
  if (!errors.empty()) return false;
  for (const CheckResult* c : all_checks())
    if (c->status == CheckStatus::Fail) return false;
  return true;
}

namespace {

struct SizeOutcome {
  SizeReport report;
  std::vector<StageError> errors;
  std::optional<SizeSpectra> spectra;
};

class StageRunner {
 public:
  StageRunner(int n, std::vector<StageError>& errors) : n_(n), errors_(errors) {}

  bool run(const std::string& stage, const std::function<void()>& body) {
    try {
      body();
      return true;
    } catch (const Error& e) {
      errors_.push_back({n_, stage, std::string(to_string(e.code())), e.detail()});
    } catch (const std::exception& e) {
      errors_.push_back({n_, stage, "Internal", e.what()});
    }
    return false;
  }

 private:
  int n_;
  std::vector<StageError>& errors_;
};

SpectrumRecord spectrum_record(const std::string& op, const Matrix& M) {
  SpectrumRecord r;
  r.op = op;
  r.eigenvalues = general_eig(M).eigenvalues;
  r.s_numbers = singular_values(M);
  return r;
}

void tag(std::vector<CheckResult>& checks, std::size_t from, int n) {
  for (std::size_t i = from; i < checks.size(); ++i) checks[i].n = n;
}

SizeOutcome run_size(const AnalysisConfig& cfg, int n, bool need_spectra) {
  SizeOutcome out;
  out.report.n = n;
  StageRunner stage(n, out.errors);
  auto& checks = out.report.checks;
  const Tolerances& tol = cfg.tolerances;

  std::optional<ModelOperators> model;
  std::optional<NumericalRangeSample> range;
  std::set<std::string> failed;
  auto prerequisite = [&](const std::string& name, const std::function<void()>& body) {
    if (!stage.run(name, body)) failed.insert(name);
  };

  prerequisite("assemble", [&] { model = build_model(cfg, n); });
  if (model) {
    const Matrix& W = model->W.entries;
    prerequisite("constants", [&] {
      out.report.constants = estimate_constants(model->T.entries, model->A.entries, model->grams);
    });
    if (out.report.constants)
      prerequisite("sector", [&] { out.report.sector = sector_parameters(*out.report.constants); });
    prerequisite("range", [&] { range = numerical_range(W, cfg.range_angles, cfg.range_samples, cfg.seed); });
    prerequisite("factorization", [&] {
      const FactorizationBundle f = extract_factorization(W);
      out.report.norms = FactorizationNorms{f.normB, f.normS, f.normSinv, range ? range->aperture : 0.0};
    });
    prerequisite("spectra", [&] {
      out.report.spectra.push_back(spectrum_record("W", W));
      out.report.spectra.push_back(spectrum_record("R_W", resolvent(W, Complex(0.0, 0.0))));
    });
    if (need_spectra) prerequisite("spectra", [&] { out.spectra = size_spectra(n, W); });
  }

  const std::map<std::string, std::vector<std::string>> needs{
      {"conditions", {"assemble", "constants"}},
      {"sector", {"assemble", "constants", "sector", "range"}},
      {"resolvent", {"assemble", "constants"}},
      {"real_part", {"assemble", "constants"}},
      {"factorization", {"assemble", "constants", "range"}},
      {"two_sided", {"assemble"}},
      {"schatten", {"assemble", "constants"}},
      {"completeness", {"assemble", "constants", "sector"}},
      {"eigen_sums", {"assemble", "range"}},
  };
  double mu_hat = std::numeric_limits<double>::quiet_NaN();

  for (const auto& group : cfg.checks) {
    const auto it = needs.find(group);
    if (it == needs.end()) continue;  // cross-size groups
    std::string missing;
    for (const auto& req : it->second)
      if (failed.count(req) || (req != "assemble" && !model)) {
        missing = req;
        break;
      }
    const std::size_t before = checks.size();
    if (!missing.empty()) {
      checks.push_back(skipped_check(group, "", "requires stage '" + missing + "', which failed"));
      tag(checks, before, n);
      continue;
    }
    const Matrix& W = model->W.entries;
    const bool ok = stage.run("check:" + group, [&] {
      const AccretivityConstants* c = out.report.constants ? &*out.report.constants : nullptr;
      if (group == "conditions") {
        const ConditionReport r =
            verify_form_conditions(model->T.entries, model->A.entries, model->grams, *c, cfg.trials, cfg.seed);
        checks.push_back(check_form_conditions(r, tol));
      } else if (group == "sector") {
        checks.push_back(check_positive_sector(*out.report.sector, *range, tol));
      } else if (group == "resolvent") {
        auto r = check_resolvent_bounds(W, c->C0, default_zeta_probes(c->C0), tol);
        checks.insert(checks.end(), r.begin(), r.end());
      } else if (group == "real_part") {
        auto r = check_real_part(W, model->grams, c->C0, tol);
        checks.insert(checks.end(), r.begin(), r.end());
      } else if (group == "factorization") {
        auto r = check_factorization(W, c->C0, range->aperture, tol);
        checks.insert(checks.end(), r.begin(), r.end());
      } else if (group == "two_sided") {
        checks.push_back(check_two_sided_estimate(W, tol));
      } else if (group == "schatten") {
        SchattenOutcome s = check_schatten(W, c->C0, std::nullopt, tol);
        if (s.fit) {
          mu_hat = s.fit->mu_hat;
          out.report.fit = FitRecord{*s.fit, s.classification, s.converse};
        }
        checks.push_back(std::move(s.check));
      } else if (group == "completeness") {
        auto r = check_completeness_hypothesis(W, out.report.sector->theta, mu_hat, std::nullopt, tol);
        checks.insert(checks.end(), r.begin(), r.end());
      } else if (group == "eigen_sums") {
        auto r = check_eigenvalue_sums(W, range->aperture, cfg.p_list, tol);
        checks.insert(checks.end(), r.begin(), r.end());
      }
    });
    if (!ok) {
      checks.resize(before);
      checks.push_back(skipped_check(group, "", "check raised an error"));
    }
    tag(checks, before, n);
  }
  return out;
}

std::vector<int> effective_sizes(const AnalysisConfig& cfg) {
  return cfg.family == Family::Selftest2x2 ? std::vector<int>{2} : cfg.sizes;
}

}  // namespace

VerificationReport run_analysis(const AnalysisConfig& cfg) {
  VerificationReport report;
  report.config = cfg;
  const std::vector<int> sizes = effective_sizes(cfg);
  const bool need_spectra = cfg.enabled("compactness") || cfg.enabled("asymptotic");

  std::vector<std::future<SizeOutcome>> jobs;
  for (int n : sizes) jobs.push_back(std::async(std::launch::async, run_size, std::cref(cfg), n, need_spectra));

  std::vector<SizeSpectra> family;
  bool spectra_complete = true;
  for (auto& job : jobs) {
    SizeOutcome o = job.get();
    report.sizes.push_back(std::move(o.report));
    report.errors.insert(report.errors.end(), o.errors.begin(), o.errors.end());
    if (o.spectra)
      family.push_back(std::move(*o.spectra));
    else
      spectra_complete = false;
  }

  StageRunner stage(0, report.errors);
  auto& cross = report.cross_checks;
  if (cfg.enabled("compactness")) {
    const std::string claim = "lambda_min(R_H) decreases under grid refinement";
    if (!spectra_complete) {
      cross.push_back(skipped_check("compactness.refinement", claim, "requires spectra of every size"));
    } else if (family.size() < 2) {
      cross.push_back(skipped_check("compactness.refinement", claim, "needs at least 2 sizes"));
    } else {
      double margin = std::numeric_limits<double>::infinity(), lhs = 0.0, rhs = 0.0;
      for (std::size_t i = 1; i < family.size(); ++i) {
        const double next = family[i].real_resolvent.back();
        const double prev = family[i - 1].real_resolvent.back();
        if (prev - next < margin) {
          margin = prev - next;
          lhs = next;
          rhs = prev;
        }
      }
      cross.push_back(make_check("compactness.refinement", claim, lhs, rhs, 0.0));
    }
  }
  if (cfg.enabled("asymptotic")) {
    if (!spectra_complete) {
      cross.push_back(skipped_check("asymptotic", "", "requires spectra of every size"));
    } else if (family.size() < 3) {
      cross.push_back(skipped_check("asymptotic", "", "needs at least 3 sizes"));
    } else {
      std::vector<CheckResult> r;
      if (stage.run("check:asymptotic", [&] { r = check_asymptotic(family, cfg.eps, cfg.tolerances); }))
        cross.insert(cross.end(), r.begin(), r.end());
      else
        cross.push_back(skipped_check("asymptotic", "", "check raised an error"));
    }
  }
  return report;
}

std::vector<SizeReport> compute_spectra(const AnalysisConfig& cfg) {
  std::vector<SizeReport> out;
  for (int n : effective_sizes(cfg)) {
    const ModelOperators model = build_model(cfg, n);
    SizeReport r;
    r.n = n;
    r.spectra.push_back(spectrum_record("W", model.W.entries));
    r.spectra.push_back(spectrum_record("R_W", resolvent(model.W.entries, Complex(0.0, 0.0))));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace accretive
