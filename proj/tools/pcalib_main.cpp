// pcalib: p-value calibration toolkit.
//
// Subcommands: calibrate, adaptive-alpha, bf, fisher-p, scenario, validate.
// JSON goes to stdout (numbers at nine significant digits); tables switch
// to CSV with --format csv. Exit codes: 0 success, 1 domain or data error,
// 2 usage error. PCALIB_SEED provides the default seed.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcalib/adapters.hpp"
#include "pcalib/adaptive_alpha.hpp"
#include "pcalib/bayes_factors.hpp"
#include "pcalib/calibration.hpp"
#include "pcalib/csv.hpp"
#include "pcalib/harness.hpp"
#include "pcalib/numerics.hpp"
#include "pcalib/report.hpp"

using nlohmann::ordered_json;
using namespace pcalib;

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PCALIB_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

void emit_table(const CsvTable& t, const std::string& format,
                const std::vector<std::string>& warnings = {}) {
  if (format == "csv") {
    // CSV bodies must stay purely numeric, so warnings go to stderr
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    write_csv(std::cout, t);
    return;
  }
  ordered_json j;
  j["columns"] = t.columns;
  auto rows = ordered_json::array();
  for (const auto& r : t.rows) {
    auto row = ordered_json::array();
    for (double v : r) row.push_back(round_sig(v));
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["warnings"] = warnings;
  print_json(j);
}

GOption parse_g(const std::string& name) {
  if (name == "chi2") return GOption::chi2;
  if (name == "f_deviance") return GOption::f_deviance;
  throw std::domain_error("unknown g option: " + name);
}

struct TableFlags {
  std::string format = "json";
};

ordered_json tess_json(const TessQuantities& t) {
  ordered_json j;
  j["d"] = round_sig(t.d);
  j["n_e"] = round_sig(t.n_e);
  j["v"] = round_sig(t.v);
  j["C"] = round_sig(t.C);
  j["b"] = round_sig(t.b);
  return j;
}

// ---------------------------------------------------------------- calibrate

struct CalibrateArgs {
  double p = 0;
  double xi0 = 1.0;
  double pi0 = kDefaultPriorNull;
};

void run_calibrate(const CalibrateArgs& a) {
  if (!(a.p > 0.0 && a.p <= 1.0))
    throw std::domain_error("calibrate: p must lie in (0,1]");
  std::vector<std::string> warnings;
  if (degenerate_p(a.p)) warnings.push_back("p sits on the degenerate boundary");
  const double bf = rlb_xi(a.p, a.xi0);
  const EvidenceReport r =
      make_report(a.xi0 == 1.0 ? "rlb" : "rlb_xi",
                  {{"p", a.p}, {"xi0", a.xi0}}, bf, a.pi0, warnings);
  print_json(to_json(r));
}

// ------------------------------------------------------------ adaptive-alpha

struct TwoPropArgs {
  int n1 = 0, n2 = 0, s1 = -1, s2 = -1;
  double alpha = 0.05;
  double sigma1_sq = -1, sigma2_sq = -1, p_hat = std::nan("");
};

TessQuantities two_prop_tess(const TwoPropArgs& a) {
  TwoProportionData d;
  d.n1 = a.n1;
  d.n2 = a.n2;
  d.s1 = std::max(0, a.s1);
  d.s2 = std::max(0, a.s2);
  if (a.sigma1_sq > 0) d.sigma1_sq = a.sigma1_sq;
  if (a.sigma2_sq > 0) d.sigma2_sq = a.sigma2_sq;
  if (!std::isnan(a.p_hat)) d.p_hat_diff = a.p_hat;
  if (a.s1 < 0 && std::isnan(a.p_hat))
    throw std::domain_error("two-prop: give either --s1/--s2 or --p-hat");
  if (a.s1 < 0 && !(a.sigma1_sq > 0 && a.sigma2_sq > 0))
    throw std::domain_error(
        "two-prop: variances are required when counts are not given");
  return tess_two_proportions(d);
}

void run_aa_two_prop(const TwoPropArgs& a) {
  const TessQuantities t = two_prop_tess(a);
  AdaptiveAlphaInputs in;
  in.alpha = a.alpha;
  in.q = 1;
  in.n = a.n1 + a.n2;
  in.C = t.C;
  const double alpha_n = adaptive_alpha_pbic_adjusted(in);
  ordered_json j;
  j["command"] = "adaptive-alpha";
  j["variant"] = "two-prop";
  j["inputs"] = {{"n1", a.n1}, {"n2", a.n2}, {"alpha", a.alpha}};
  j["tess"] = tess_json(t);
  j["alpha_n"] = round_sig(alpha_n);
  print_json(j);
}

// --------------------------------------------------------------------- bf

void print_report(const std::string& formula, ordered_json inputs, double bf,
                  double pi0, std::vector<std::string> warnings = {}) {
  print_json(to_json(make_report(formula, std::move(inputs), bf, pi0,
                                 std::move(warnings))));
}

// ---------------------------------------------------------------- scenarios

struct Fig3Args {
  std::vector<double> xi0 = {1.0, 1.1, 1.2, 1.3};
  int points = 1000;
  double pi0 = kDefaultPriorNull;
  TableFlags table;
};

void run_fig3(const Fig3Args& a) {
  CsvTable t;
  t.columns = {"p"};
  for (double x : a.xi0) t.columns.push_back("post_xi0_" + format_sig(x, 6));
  for (int i = 1; i <= a.points; ++i) {
    const double p = kInvE * i / (a.points + 1);
    std::vector<double> row = {p};
    for (double x : a.xi0)
      row.push_back(posterior_from_bf(rlb_xi(p, x), a.pi0));
    t.rows.push_back(std::move(row));
  }
  emit_table(t, a.table.format);
}

struct TwoMeansArgs {
  int n1 = 0, n2 = 0;
  double sigma1_sq = 1.0, sigma2_sq = 1.0;
  double tau0 = 6.0;
  double pi0 = kDefaultPriorNull;
  bool equal_variance = false;
  std::string ne_form = "max";
  std::vector<double> p_grid;
  TableFlags table;
};

void run_two_means(const TwoMeansArgs& a) {
  std::vector<double> grid = a.p_grid;
  if (grid.empty())
    for (int i = 1; i <= 50; ++i) grid.push_back(0.35 * i / 50.0);
  const int n = a.n1 + a.n2;

  // the equal-variance case has two printed effective-size forms; surface
  // the conflict whenever they disagree instead of silently picking one
  std::vector<std::string> warnings;
  if (a.equal_variance && a.n1 != a.n2) {
    TwoMeansData probe;
    probe.n1 = a.n1;
    probe.n2 = a.n2;
    probe.sigma1_sq = a.sigma1_sq;
    probe.sigma2_sq = a.sigma2_sq;
    probe.equal_variance = true;
    probe.ne_form = NeForm::max_form;
    const double ne_max = tess_two_means(probe).n_e;
    probe.ne_form = NeForm::min_form;
    const double ne_min = tess_two_means(probe).n_e;
    if (ne_max != ne_min)
      warnings.push_back("equal-variance effective size is ambiguous: max "
                         "form gives " +
                         format_sig(ne_max) + ", min form gives " +
                         format_sig(ne_min) + "; using the " + a.ne_form +
                         " form");
  }

  CsvTable t;
  t.columns = {"p", "t_stat", "C", "post_rlb", "post_bic", "post_pbic_linear",
               "post_ttest"};
  for (double p : grid) {
    if (!(p > 0.0 && p < 1.0))
      throw std::domain_error("two-means: p grid must lie inside (0,1)");
    const double tstat = student_t_quantile(p / 2.0, n - 1.0);
    TwoMeansData d;
    d.n1 = a.n1;
    d.n2 = a.n2;
    d.sigma1_sq = a.sigma1_sq;
    d.sigma2_sq = a.sigma2_sq;
    d.equal_variance = a.equal_variance;
    d.ne_form = a.ne_form == "min" ? NeForm::min_form : NeForm::max_form;
    const double dvar = a.sigma1_sq / a.n1 + a.sigma2_sq / a.n2;
    d.beta_hat = tstat * std::sqrt(dvar) / 2.0;
    d.t_stat = tstat;
    const TessQuantities tq = tess_two_means(d);

    BfInputs bic;
    bic.alpha = p;
    bic.q = 1;
    bic.n = n;
    bic.C = tq.C;
    BfInputs lin = bic;
    lin.j = 2;
    lin.b = tq.b;
    TTestInputs tt;
    tt.t = tstat;
    tt.n = n;
    tt.tau0 = a.tau0;
    t.rows.push_back({p, tstat, tq.C, posterior_from_bf(rlb(p), a.pi0),
                      posterior_from_bf(bf_bic(bic), a.pi0),
                      posterior_from_bf(bf_pbic_linear(lin), a.pi0),
                      posterior_from_bf(bf_ttest(tt), a.pi0)});
  }
  emit_table(t, a.table.format, warnings);
}

struct FisherScenarioArgs {
  int n1 = 0, n2 = 0;
  double a = 1.0, b_prior = 1.0;
  std::vector<double> xi0 = {1.0};
  double pi0 = kDefaultPriorNull;
  int s1 = -1, s2 = -1;
  TableFlags table;
};

void run_fisher_scenario(const FisherScenarioArgs& a) {
  CsvTable t;
  t.columns = {"s1", "s2", "s", "pseudo_p", "C", "post_rlb"};
  for (double x : a.xi0) t.columns.push_back("post_bic_xi0_" + format_sig(x, 6));
  t.columns.push_back("post_bf_test");

  std::vector<std::pair<int, int>> outcomes;
  if (a.s1 >= 0 || a.s2 >= 0) {
    if (a.s1 < 0 || a.s2 < 0)
      throw std::domain_error("fisher: give both --s1 and --s2 or neither");
    outcomes.emplace_back(a.s1, a.s2);
  } else {
    for (int s1 = 0; s1 <= a.n1; ++s1)
      for (int s2 = 0; s2 <= a.n2; ++s2) outcomes.emplace_back(s1, s2);
  }

  const double p0 = a.a / (a.a + a.b_prior);
  for (const auto& [s1, s2] : outcomes) {
    const double pseudo = fisher_pseudo_p(s1, s2, a.n1, a.n2);
    TwoProportionData d;
    d.n1 = a.n1;
    d.n2 = a.n2;
    d.s1 = s1;
    d.s2 = s2;
    const TessQuantities tq = tess_two_proportions(d);
    std::vector<double> row = {static_cast<double>(s1),
                               static_cast<double>(s2),
                               static_cast<double>(s1 + s2), pseudo, tq.C,
                               posterior_from_bf(rlb(pseudo), a.pi0)};
    for (double x : a.xi0) {
      if (pseudo < 1.0) {
        BfInputs in;
        in.alpha = pseudo;
        in.q = 1;
        in.n = a.n1 + a.n2;
        in.C = tq.C;
        in.xi0 = x;
        row.push_back(posterior_from_bf(bf_bic(in), a.pi0));
      } else {
        row.push_back(std::nan(""));  // the calibration degenerates at p = 1
      }
    }
    FisherBfInputs fb;
    fb.s = s1 + s2;
    fb.n1 = a.n1;
    fb.n2 = a.n2;
    fb.a = a.a;
    fb.b_prior = a.b_prior;
    fb.p0 = p0;
    row.push_back(posterior_from_bf(bf_fisher_exact(fb), a.pi0));
    t.rows.push_back(std::move(row));
  }
  std::sort(t.rows.begin(), t.rows.end(),
            [](const auto& x, const auto& y) { return x[3] < y[3]; });
  emit_table(t, a.table.format);
}

struct RegressionArgs {
  std::string csv_path;
  std::string response;
  std::string null_pred;
  std::string alt_preds;
  double alpha = 0.05;
  double pi0 = kDefaultPriorNull;
  double sigma_sq = -1;
  std::string g = "chi2";
};

void run_regression(const RegressionArgs& a) {
  const CsvTable csv = read_csv_file(a.csv_path);
  std::vector<std::string> alt;
  {
    std::stringstream ss(a.alt_preds);
    std::string item;
    while (std::getline(ss, item, ',')) alt.push_back(item);
  }
  if (alt.size() != 2)
    throw std::domain_error(
        "regression: --alt must name the shared predictor plus exactly one "
        "added predictor");
  std::string added;
  if (alt[0] == a.null_pred)
    added = alt[1];
  else if (alt[1] == a.null_pred)
    added = alt[0];
  else
    throw std::domain_error(
        "regression: the alternative model must nest the null predictor");

  NestedRegressionData d;
  d.y = csv.column(a.response);
  d.x2 = csv.column(a.null_pred);
  d.x3 = csv.column(added);
  d.response_name = a.response;
  d.null_predictor = a.null_pred;
  d.added_predictor = added;
  std::optional<double> sigma;
  if (a.sigma_sq > 0) sigma = a.sigma_sq;
  const NestedRegressionQuantities q = regression_nested_quantities(d, sigma);

  BfInputs lin;
  lin.alpha = a.alpha;
  lin.q = 1;
  lin.n = q.n;
  lin.j = 3;
  lin.b = q.b;
  lin.C = q.C;
  lin.g_option = parse_g(a.g);
  const double bf_lin = bf_pbic_linear(lin);
  BfInputs bic = lin;
  bic.b = 1.0;
  bic.j = 0;
  bic.g_option = GOption::chi2;
  const double bf_b = bf_bic(bic);

  ordered_json j;
  j["scenario"] = "regression";
  j["inputs"] = {{"csv", a.csv_path},   {"response", a.response},
                 {"null", a.null_pred}, {"alt", a.alt_preds},
                 {"alpha", a.alpha},    {"g", a.g}};
  j["n"] = q.n;
  ordered_json qj;
  qj["b"] = round_sig(q.b);
  qj["s3_sq"] = round_sig(q.s3_sq);
  qj["rho23"] = round_sig(q.rho23);
  qj["beta2_hat"] = round_sig(q.beta2_hat);
  qj["beta3_hat"] = round_sig(q.beta3_hat);
  qj["sigma_sq"] = round_sig(q.sigma_sq);
  qj["d2"] = round_sig(q.d2);
  qj["n_e2"] = round_sig(q.n_e2);
  qj["v2"] = round_sig(q.v2);
  qj["d3"] = round_sig(q.d3);
  qj["n_e3"] = round_sig(q.n_e3);
  qj["v3"] = round_sig(q.v3);
  qj["C"] = round_sig(q.C);
  j["quantities"] = qj;
  j["f_stat"] = round_sig(q.f_stat);
  j["f_pvalue"] = round_sig(q.f_pvalue);
  j["p_pl"] = round_sig(posterior_from_bf(bf_lin, a.pi0));
  j["p_pg1"] = round_sig(posterior_from_bf(bf_b, a.pi0));
  j["p_rlb"] = round_sig(posterior_from_bf(rlb(a.alpha), a.pi0));
  auto reports = ordered_json::array();
  reports.push_back(to_json(make_report(
      "bf_pbic_linear",
      {{"alpha", a.alpha}, {"q", 1}, {"n", q.n}, {"j", 3}, {"b", q.b},
       {"C", q.C}, {"g", a.g}},
      bf_lin, a.pi0)));
  reports.push_back(to_json(make_report(
      "bf_bic", {{"alpha", a.alpha}, {"q", 1}, {"n", q.n}, {"C", q.C}},
      bf_b, a.pi0)));
  j["reports"] = reports;
  print_json(j);
}

struct FindleyArgs {
  std::vector<int> n = {100, 1000, 10000};
  std::vector<double> alpha = {0.05, 0.01};
  double theta_hat = 0.0;
  bool simulate = false;
  std::uint64_t seed = 0;
  TableFlags table;
};

void run_findley(const FindleyArgs& a) {
  const auto rows = findley_curves(
      a.n, a.alpha, a.simulate ? FindleyMode::simulate : FindleyMode::fixed_theta,
      a.theta_hat, a.seed);
  CsvTable t;
  t.columns = {"n",        "alpha",       "h_n",         "theta_hat",
               "v",        "C",           "bf_bic_raw_n", "bf_bic_tess",
               "bf_pbic",  "post_bic_raw_n", "post_bic_tess", "post_pbic"};
  for (const auto& r : rows)
    t.rows.push_back({static_cast<double>(r.n), r.alpha, r.h_n, r.theta_hat,
                      r.v, r.C, r.bf_bic_raw_n, r.bf_bic_tess, r.bf_pbic,
                      r.post_bic_raw_n, r.post_bic_tess, r.post_pbic});
  emit_table(t, a.table.format);
}

// ---------------------------------------------------------------- validate

int g_exit_status = 0;

// csv view of a validation run: one row per check, verdict via exit code
void emit_validation(const ValidationResult& r, const std::string& format) {
  if (format == "csv") {
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
    CsvTable t;
    const bool fisher = r.suite == "fisher";
    t.columns = {"alpha", "empirical", "se", "margin", "ok"};
    t.columns.insert(t.columns.begin() + 1, fisher ? "null_p" : "exact");
    for (const auto& c : r.checks)
      t.rows.push_back({c.alpha, fisher ? c.null_p : c.exact, c.empirical,
                        c.se, c.margin,
                        c.bound_ok && c.exact_ok ? 1.0 : 0.0});
    write_csv(std::cout, t);
  } else {
    print_json(to_json(r));
  }
  g_exit_status = r.pass ? 0 : 1;
}

struct ValidateRlbArgs {
  double xi = 1.0;
  long samples = 100000;
  std::uint64_t seed = default_seed();
  std::vector<double> alpha_grid;
  TableFlags table;
};

void run_validate_rlb(const ValidateRlbArgs& a) {
  SimulationPlan plan;
  plan.xi = a.xi;
  plan.samples = a.samples;
  plan.seed = a.seed;
  plan.alpha_grid = a.alpha_grid;
  if (plan.alpha_grid.empty())
    for (int i = 1; i <= 30; ++i) plan.alpha_grid.push_back(i / 100.0);
  emit_validation(verify_rlb_validity(plan), a.table.format);
}

struct ValidateFisherArgs {
  int n1 = 5, n2 = 5;
  std::vector<double> p_grid;
  TableFlags table;
};

void run_validate_fisher(const ValidateFisherArgs& a) {
  std::vector<double> grid = a.p_grid;
  if (grid.empty())
    for (int k = 1; k <= 9; ++k) grid.push_back(k / 10.0);
  emit_validation(verify_fisher_validity(a.n1, a.n2, grid), a.table.format);
}

struct ValidateXiArgs {
  double xi = 2.0;
  long samples = 100000;
  std::uint64_t seed = default_seed();
};

void run_validate_xi(const ValidateXiArgs& a) {
  if (!(a.xi > 0.0)) throw std::domain_error("validate xi0: xi > 0");
  if (a.samples < 2) throw std::domain_error("validate xi0: samples >= 2");
  SplitMix64 rng(a.seed, 0);
  std::vector<double> draws;
  draws.reserve(a.samples);
  for (long i = 0; i < a.samples; ++i)
    draws.push_back(std::exp(std::log(rng.uniform()) / a.xi));
  const XiEstimate est = estimate_xi0(draws);
  const bool pass = std::fabs(est.xi_hat - a.xi) <= 4.0 * est.se;
  ordered_json j;
  j["suite"] = "xi0";
  j["seed"] = a.seed;
  j["samples"] = a.samples;
  j["xi_true"] = round_sig(a.xi);
  j["xi_hat"] = round_sig(est.xi_hat);
  j["se"] = round_sig(est.se);
  j["pass"] = pass;
  print_json(j);
  g_exit_status = pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-value calibration: minimum Bayes factors, posterior "
               "probabilities, adaptive significance levels"};
  app.require_subcommand(1);

  // calibrate
  auto cal = std::make_shared<CalibrateArgs>();
  CLI::App* c = app.add_subcommand(
      "calibrate", "bound and posterior for one (pseudo) p-value");
  c->add_option("--p", cal->p, "observed p-value in (0,1]")->required();
  c->add_option("--xi0", cal->xi0, "pseudo-p-value shape, >= 1");
  c->add_option("--pi0", cal->pi0, "prior mass on the null");
  c->callback([cal] { run_calibrate(*cal); });

  // adaptive-alpha
  CLI::App* aa = app.add_subcommand("adaptive-alpha",
                                    "information-adaptive significance levels");
  aa->require_subcommand(1);

  auto tp = std::make_shared<TwoPropArgs>();
  CLI::App* aa_tp = aa->add_subcommand("two-prop", "two-proportion level");
  aa_tp->add_option("--n1", tp->n1)->required();
  aa_tp->add_option("--n2", tp->n2)->required();
  aa_tp->add_option("--s1", tp->s1, "successes in group 1");
  aa_tp->add_option("--s2", tp->s2, "successes in group 2");
  aa_tp->add_option("--alpha", tp->alpha);
  aa_tp->add_option("--sigma1-sq", tp->sigma1_sq);
  aa_tp->add_option("--sigma2-sq", tp->sigma2_sq);
  aa_tp->add_option("--p-hat", tp->p_hat, "difference of proportions");
  aa_tp->callback([tp] { run_aa_two_prop(*tp); });

  struct AnovaArgs {
    int k = 2, r = 2;
    double alpha = 0.05, C = 0.0;
    std::string g = "chi2";
    bool strict = false;
  };
  auto an = std::make_shared<AnovaArgs>();
  CLI::App* aa_an = aa->add_subcommand("anova", "balanced one-way level");
  aa_an->add_option("--k", an->k, "groups")->required();
  aa_an->add_option("--r", an->r, "replicas per group")->required();
  aa_an->add_option("--alpha", an->alpha);
  aa_an->add_option("--C", an->C);
  aa_an->add_option("--g", an->g, "chi2 or f_deviance")
      ->check(CLI::IsMember({"chi2", "f_deviance"}));
  aa_an->add_flag("--strict-linear", an->strict);
  aa_an->callback([an] {
    const double v = adaptive_alpha_anova(an->k, an->r, an->alpha, an->C,
                                          parse_g(an->g), an->strict);
    ordered_json j;
    j["command"] = "adaptive-alpha";
    j["variant"] = "anova";
    j["inputs"] = {{"k", an->k},     {"r", an->r}, {"alpha", an->alpha},
                   {"C", an->C},     {"g", an->g},
                   {"strict_linear", an->strict}};
    j["b"] = round_sig(anova_design_ratio(an->k, an->r));
    j["alpha_n"] = round_sig(v);
    print_json(j);
  });

  struct LinearArgs {
    double alpha = 0.05, n = 0, j = 0, b = 1.0, C = 0.0;
    int q = 1;
    std::string g = "chi2";
  };
  auto li = std::make_shared<LinearArgs>();
  CLI::App* aa_li = aa->add_subcommand("linear", "nested linear-model level");
  aa_li->add_option("--alpha", li->alpha);
  aa_li->add_option("--q", li->q)->required();
  aa_li->add_option("--n", li->n)->required();
  aa_li->add_option("--j", li->j)->required();
  aa_li->add_option("--b", li->b)->required();
  aa_li->add_option("--C", li->C);
  aa_li->add_option("--g", li->g)->check(CLI::IsMember({"chi2", "f_deviance"}));
  aa_li->callback([li] {
    AdaptiveAlphaInputs in;
    in.alpha = li->alpha;
    in.q = li->q;
    in.n = li->n;
    in.j = li->j;
    in.b = li->b;
    in.C = li->C;
    in.g_option = parse_g(li->g);
    ordered_json j;
    j["command"] = "adaptive-alpha";
    j["variant"] = "linear";
    j["inputs"] = {{"alpha", li->alpha}, {"q", li->q}, {"n", li->n},
                   {"j", li->j},         {"b", li->b}, {"C", li->C},
                   {"g", li->g}};
    j["alpha_n"] = round_sig(adaptive_alpha_pbic_linear(in));
    print_json(j);
  });

  struct GenericArgs {
    double alpha = 0.05, n = 0, C = 0.0;
    int q = 1;
    double c_alpha = -1;
  };
  auto ge = std::make_shared<GenericArgs>();
  CLI::App* aa_ge = aa->add_subcommand(
      "generic", "BIC-structured level (PBIC-adjusted unless --c-alpha)");
  aa_ge->add_option("--alpha", ge->alpha);
  aa_ge->add_option("--q", ge->q)->required();
  aa_ge->add_option("--n", ge->n)->required();
  aa_ge->add_option("--C", ge->C);
  aa_ge->add_option("--c-alpha", ge->c_alpha, "BIC-form constant");
  aa_ge->callback([ge] {
    AdaptiveAlphaInputs in;
    in.alpha = ge->alpha;
    in.q = ge->q;
    in.n = ge->n;
    in.C = ge->C;
    ordered_json j;
    j["command"] = "adaptive-alpha";
    j["inputs"] = {{"alpha", ge->alpha}, {"q", ge->q}, {"n", ge->n},
                   {"C", ge->C}};
    if (ge->c_alpha > 0) {
      in.C_alpha = ge->c_alpha;
      j["variant"] = "bic";
      j["inputs"]["c_alpha"] = ge->c_alpha;
      j["alpha_n"] = round_sig(adaptive_alpha_bic(in));
    } else {
      j["variant"] = "pbic-adjusted";
      j["alpha_n"] = round_sig(adaptive_alpha_pbic_adjusted(in));
    }
    print_json(j);
  });

  // bf
  CLI::App* bf = app.add_subcommand("bf", "calibrated and exact Bayes factors");
  bf->require_subcommand(1);

  struct BfBicArgs {
    double alpha = 0.05, n = 0, xi0 = 1.0, C = 0.0, pi0 = kDefaultPriorNull;
    int q = 1;
  };
  auto bb = std::make_shared<BfBicArgs>();
  CLI::App* bf_b = bf->add_subcommand("bic", "BIC-calibrated factor");
  bf_b->add_option("--alpha", bb->alpha)->required();
  bf_b->add_option("--q", bb->q);
  bf_b->add_option("--n", bb->n)->required();
  bf_b->add_option("--xi0", bb->xi0);
  bf_b->add_option("--C", bb->C);
  bf_b->add_option("--pi0", bb->pi0);
  bf_b->callback([bb] {
    BfInputs in;
    in.alpha = bb->alpha;
    in.q = bb->q;
    in.n = bb->n;
    in.xi0 = bb->xi0;
    in.C = bb->C;
    print_report("bf_bic",
                 {{"alpha", bb->alpha}, {"q", bb->q}, {"n", bb->n},
                  {"xi0", bb->xi0}, {"C", bb->C}},
                 bf_bic(in), bb->pi0);
  });

  struct BfPbicArgs {
    double alpha = 0.05, n = 0, j = 0, b = 1.0, C = 0.0,
           pi0 = kDefaultPriorNull;
    int q = 1;
    std::string g = "chi2";
  };
  auto bp = std::make_shared<BfPbicArgs>();
  CLI::App* bf_p = bf->add_subcommand("pbic", "nested-linear PBIC factor");
  bf_p->add_option("--alpha", bp->alpha)->required();
  bf_p->add_option("--q", bp->q);
  bf_p->add_option("--n", bp->n)->required();
  bf_p->add_option("--j", bp->j)->required();
  bf_p->add_option("--b", bp->b)->required();
  bf_p->add_option("--C", bp->C);
  bf_p->add_option("--g", bp->g)->check(CLI::IsMember({"chi2", "f_deviance"}));
  bf_p->add_option("--pi0", bp->pi0);
  bf_p->callback([bp] {
    BfInputs in;
    in.alpha = bp->alpha;
    in.q = bp->q;
    in.n = bp->n;
    in.j = bp->j;
    in.b = bp->b;
    in.C = bp->C;
    in.g_option = parse_g(bp->g);
    print_report("bf_pbic_linear",
                 {{"alpha", bp->alpha}, {"q", bp->q}, {"n", bp->n},
                  {"j", bp->j}, {"b", bp->b}, {"C", bp->C}, {"g", bp->g}},
                 bf_pbic_linear(in), bp->pi0);
  });

  struct BfAnovaArgs {
    int k = 2, r = 2;
    double alpha = 0.05, C = 0.0, pi0 = kDefaultPriorNull;
    std::string g = "chi2";
    bool strict = false;
  };
  auto ba = std::make_shared<BfAnovaArgs>();
  CLI::App* bf_a = bf->add_subcommand("anova", "balanced one-way factor");
  bf_a->add_option("--k", ba->k)->required();
  bf_a->add_option("--r", ba->r)->required();
  bf_a->add_option("--alpha", ba->alpha);
  bf_a->add_option("--C", ba->C);
  bf_a->add_option("--g", ba->g)->check(CLI::IsMember({"chi2", "f_deviance"}));
  bf_a->add_option("--pi0", ba->pi0);
  bf_a->add_flag("--strict-linear", ba->strict);
  bf_a->callback([ba] {
    print_report("bf_anova",
                 {{"k", ba->k}, {"r", ba->r}, {"alpha", ba->alpha},
                  {"C", ba->C}, {"g", ba->g}, {"strict_linear", ba->strict}},
                 bf_anova(ba->k, ba->r, ba->alpha, ba->C, parse_g(ba->g),
                          ba->strict),
                 ba->pi0);
  });

  struct BfTArgs {
    double t = 0, tau0 = 6.0, pi0 = kDefaultPriorNull;
    int n = 2;
  };
  auto bt = std::make_shared<BfTArgs>();
  CLI::App* bf_t = bf->add_subcommand("ttest", "two-sample t factor");
  bf_t->add_option("--t", bt->t)->required();
  bf_t->add_option("--n", bt->n)->required();
  bf_t->add_option("--tau0", bt->tau0);
  bf_t->add_option("--pi0", bt->pi0);
  bf_t->callback([bt] {
    TTestInputs in;
    in.t = bt->t;
    in.n = bt->n;
    in.tau0 = bt->tau0;
    print_report("bf_ttest",
                 {{"t", bt->t}, {"n", bt->n}, {"tau0", bt->tau0}},
                 bf_ttest(in), bt->pi0);
  });

  struct BfFisherArgs {
    int s1 = 0, s2 = 0, n1 = 1, n2 = 1;
    double a = 1.0, b_prior = 1.0, pi0 = kDefaultPriorNull;
  };
  auto bff = std::make_shared<BfFisherArgs>();
  CLI::App* bf_f = bf->add_subcommand("fisher", "beta-binomial test factor");
  bf_f->add_option("--s1", bff->s1)->required();
  bf_f->add_option("--s2", bff->s2)->required();
  bf_f->add_option("--n1", bff->n1)->required();
  bf_f->add_option("--n2", bff->n2)->required();
  bf_f->add_option("--a", bff->a);
  bf_f->add_option("--b-prior", bff->b_prior);
  bf_f->add_option("--pi0", bff->pi0);
  bf_f->callback([bff] {
    FisherBfInputs in;
    in.s = bff->s1 + bff->s2;
    in.n1 = bff->n1;
    in.n2 = bff->n2;
    in.a = bff->a;
    in.b_prior = bff->b_prior;
    in.p0 = bff->a / (bff->a + bff->b_prior);
    print_report("bf_fisher",
                 {{"s1", bff->s1}, {"s2", bff->s2}, {"n1", bff->n1},
                  {"n2", bff->n2}, {"a", bff->a}, {"b_prior", bff->b_prior},
                  {"p0", in.p0}},
                 bf_fisher_exact(in), bff->pi0);
  });

  // fisher-p
  struct FisherPArgs {
    int s1 = 0, s2 = 0, n1 = 1, n2 = 1;
  };
  auto fp = std::make_shared<FisherPArgs>();
  CLI::App* fpc = app.add_subcommand(
      "fisher-p", "conditional pseudo p-value of the two-binomial test");
  fpc->add_option("--s1", fp->s1)->required();
  fpc->add_option("--s2", fp->s2)->required();
  fpc->add_option("--n1", fp->n1)->required();
  fpc->add_option("--n2", fp->n2)->required();
  fpc->callback([fp] {
    ordered_json j;
    j["command"] = "fisher-p";
    j["inputs"] = {{"s1", fp->s1}, {"s2", fp->s2}, {"n1", fp->n1},
                   {"n2", fp->n2}};
    j["pseudo_p"] = round_sig(fisher_pseudo_p(fp->s1, fp->s2, fp->n1, fp->n2));
    print_json(j);
  });

  // scenario
  CLI::App* sc = app.add_subcommand("scenario", "worked-example tables");
  sc->require_subcommand(1);

  auto f3 = std::make_shared<Fig3Args>();
  CLI::App* sc_f3 = sc->add_subcommand("fig3", "posterior lower-bound curves");
  sc_f3->add_option("--xi0", f3->xi0, "shape values")->delimiter(',');
  sc_f3->add_option("--points", f3->points);
  sc_f3->add_option("--pi0", f3->pi0);
  sc_f3->add_option("--format", f3->table.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sc_f3->callback([f3] { run_fig3(*f3); });

  auto tm = std::make_shared<TwoMeansArgs>();
  CLI::App* sc_tm = sc->add_subcommand("two-means", "two-means comparators");
  sc_tm->add_option("--n1", tm->n1)->required();
  sc_tm->add_option("--n2", tm->n2)->required();
  sc_tm->add_option("--sigma1-sq", tm->sigma1_sq);
  sc_tm->add_option("--sigma2-sq", tm->sigma2_sq);
  sc_tm->add_option("--tau0", tm->tau0);
  sc_tm->add_option("--pi0", tm->pi0);
  sc_tm->add_option("--p", tm->p_grid, "p grid")->delimiter(',');
  sc_tm->add_flag("--equal-variance", tm->equal_variance);
  sc_tm->add_option("--ne-form", tm->ne_form, "max or min")
      ->check(CLI::IsMember({"max", "min"}));
  sc_tm->add_option("--format", tm->table.format)
      ->check(CLI::IsMember({"json", "csv"}));
  sc_tm->callback([tm] { run_two_means(*tm); });

  auto fs = std::make_shared<FisherScenarioArgs>();
  CLI::App* sc_fs = sc->add_subcommand("fisher", "conditional-test comparators");
  sc_fs->add_option("--n1", fs->n1)->required();
  sc_fs->add_option("--n2", fs->n2)->required();
  sc_fs->add_option("--a", fs->a);
  sc_fs->add_option("--b-prior", fs->b_prior);
  sc_fs->add_option("--xi0", fs->xi0)->delimiter(',');
  sc_fs->add_option("--pi0", fs->pi0);
  sc_fs->add_option("--s1", fs->s1);
  sc_fs->add_option("--s2", fs->s2);
  sc_fs->add_option("--format", fs->table.format)
      ->check(CLI::IsMember({"json", "csv"}));
  sc_fs->callback([fs] { run_fisher_scenario(*fs); });

  auto rg = std::make_shared<RegressionArgs>();
  CLI::App* sc_rg = sc->add_subcommand("regression", "nested linear models");
  sc_rg->add_option("--csv", rg->csv_path)->required();
  sc_rg->add_option("--response", rg->response)->required();
  sc_rg->add_option("--null", rg->null_pred, "null-model predictor")->required();
  sc_rg->add_option("--alt", rg->alt_preds, "alternative-model predictors")
      ->required();
  sc_rg->add_option("--alpha", rg->alpha);
  sc_rg->add_option("--pi0", rg->pi0);
  sc_rg->add_option("--sigma-sq", rg->sigma_sq);
  sc_rg->add_option("--g", rg->g)->check(CLI::IsMember({"chi2", "f_deviance"}));
  sc_rg->callback([rg] { run_regression(*rg); });

  auto fd = std::make_shared<FindleyArgs>();
  fd->seed = default_seed();
  CLI::App* sc_fd = sc->add_subcommand("findley", "harmonic-design curves");
  sc_fd->add_option("--n", fd->n)->delimiter(',');
  sc_fd->add_option("--alpha", fd->alpha)->delimiter(',');
  sc_fd->add_option("--theta-hat", fd->theta_hat);
  sc_fd->add_flag("--simulate", fd->simulate);
  sc_fd->add_option("--seed", fd->seed);
  sc_fd->add_option("--format", fd->table.format)
      ->check(CLI::IsMember({"json", "csv"}));
  sc_fd->callback([fd] { run_findley(*fd); });

  // validate
  CLI::App* va = app.add_subcommand("validate", "verification harness");
  va->require_subcommand(1);

  auto vr = std::make_shared<ValidateRlbArgs>();
  CLI::App* va_r = va->add_subcommand("rlb", "bound validity, Monte Carlo");
  va_r->add_option("--xi", vr->xi);
  va_r->add_option("--samples", vr->samples);
  va_r->add_option("--seed", vr->seed);
  va_r->add_option("--alpha", vr->alpha_grid)->delimiter(',');
  va_r->add_option("--format", vr->table.format)
      ->check(CLI::IsMember({"json", "csv"}));
  va_r->callback([vr] { run_validate_rlb(*vr); });

  auto vf = std::make_shared<ValidateFisherArgs>();
  CLI::App* va_f = va->add_subcommand("fisher", "pseudo p-value validity");
  va_f->add_option("--n1", vf->n1);
  va_f->add_option("--n2", vf->n2);
  va_f->add_option("--p", vf->p_grid)->delimiter(',');
  va_f->add_option("--format", vf->table.format)
      ->check(CLI::IsMember({"json", "csv"}));
  va_f->callback([vf] { run_validate_fisher(*vf); });

  auto vx = std::make_shared<ValidateXiArgs>();
  CLI::App* va_x = va->add_subcommand("xi0", "shape estimator recovery");
  va_x->add_option("--xi", vx->xi);
  va_x->add_option("--samples", vx->samples);
  va_x->add_option("--seed", vx->seed);
  va_x->callback([vx] { run_validate_xi(*vx); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_exit_status;
}
