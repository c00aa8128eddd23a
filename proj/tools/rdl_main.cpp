#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rdl/acceptance.hpp"
#include "rdl/digraph.hpp"
#include "rdl/ensembles.hpp"
#include "rdl/errors.hpp"
#include "rdl/factor.hpp"
#include "rdl/io.hpp"
#include "rdl/netgeom.hpp"
#include "rdl/regularity.hpp"
#include "rdl/rng.hpp"
#include "rdl/sampler.hpp"
#include "rdl/spectral.hpp"
#include "rdl/stats.hpp"

#ifndef RDL_VERSION_STRING
#define RDL_VERSION_STRING "0.1.0"
#endif

namespace {

using rdl::Json;
using Complex = std::complex<double>;

// Options shared by every subcommand. Paths are taken relative to --out.
struct CommonOpts {
  std::uint64_t seed = 12345;
  std::string out_dir = ".";
  std::string output;  // report file; empty = stdout
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--seed", c.seed, "RNG master seed")
      ->envname("RDL_SEED")
      ->capture_default_str();
  sub->add_option("--out", c.out_dir, "directory output paths are relative to")
      ->capture_default_str();
  sub->add_option("--output", c.output,
                  "write the JSON report here instead of stdout");
}

std::string resolved(const CommonOpts& c, const std::string& name) {
  if (name.empty() || name.front() == '/') return name;
  return c.out_dir + "/" + name;
}

void emit(const CommonOpts& c, const Json& report) {
  std::string text = report.dump(2);
  text.push_back('\n');
  if (c.output.empty())
    std::cout << text;
  else
    rdl::write_file(resolved(c, c.output), text);
}

Json envelope(const std::string& subcommand, Json config) {
  return Json{{"version", RDL_VERSION_STRING},
              {"subcommand", subcommand},
              {"config", std::move(config)}};
}

Json complex_json(Complex v) {
  return Json{{"re", v.real()}, {"im", v.imag()}};
}

Json atoms_json(const rdl::EmpiricalMeasure& mu) {
  Json out = Json::array();
  for (const auto& a : mu.atoms) out.push_back(complex_json(a));
  return out;
}

// ------------------------------------------------------------------- sample
struct SampleOpts {
  int n = 0, d = 0;
  long long samples = 1, steps = 0, max_tries = 1000000;
  std::string method = "chain";
};

int run_sample(const CommonOpts& c, const SampleOpts& o) {
  Json report = envelope("sample", Json{{"n", o.n},
                                        {"d", o.d},
                                        {"method", o.method},
                                        {"samples", o.samples},
                                        {"steps", o.steps},
                                        {"seed", c.seed}});
  Json list = Json::array();
  if (o.method == "enumerate") {
    for (const auto& A : rdl::enumerate_regular(o.n, o.d))
      list.push_back(rdl::digraph_to_json(A));
  } else {
    rdl::RngStream rng(c.seed, 0);
    long long steps =
        o.steps > 0 ? o.steps : rdl::default_chain_steps(o.n, o.d);
    for (long long s = 0; s < o.samples; ++s) {
      if (o.method == "chain") {
        list.push_back(
            rdl::digraph_to_json(rdl::chain_sample(o.n, o.d, steps, rng)));
      } else {
        auto A = rdl::rejection_sample(o.n, o.d, rng, o.max_tries);
        rdl::require(A.has_value(), "SamplingFailed",
                     "rejection sampler exhausted --max-tries");
        list.push_back(rdl::digraph_to_json(*A));
      }
    }
  }
  report["count"] = list.size();
  report["digraphs"] = std::move(list);
  emit(c, report);
  return 0;
}

// ----------------------------------------------------------------- spectrum
struct SpectrumOpts {
  int n = 0, d = 0;
  long long samples = 1;
  std::string matrix = "normalized";  // normalized | raw
  std::string what = "eigenvalues";   // eigenvalues | singular
  std::string format = "json";
  std::string table = "spectrum.csv";
  double zre = 0, zim = 0;
  bool exclude_perron = false;
};

int run_spectrum(const CommonOpts& c, const SpectrumOpts& o) {
  Json report = envelope(
      "spectrum", Json{{"n", o.n},
                       {"d", o.d},
                       {"samples", o.samples},
                       {"matrix", o.matrix},
                       {"what", o.what},
                       {"z", complex_json({o.zre, o.zim})},
                       {"exclude_perron", o.exclude_perron},
                       {"format", o.format},
                       {"seed", c.seed}});
  rdl::RngStream rng(c.seed, 0);
  const Complex z(o.zre, o.zim);
  std::string csv =
      o.what == "singular" ? "sample,index,value\n" : "sample,index,re,im\n";
  Json per_sample = Json::array();
  for (long long s = 0; s < o.samples; ++s) {
    rdl::RegularDigraph A = rdl::chain_sample(
        o.n, o.d, rdl::default_chain_steps(o.n, o.d), rng);
    Eigen::MatrixXd M = o.matrix == "raw" ? A.dense() : rdl::normalized(A);
    Json values = Json::array();
    if (o.what == "singular") {
      Eigen::MatrixXcd shifted =
          M.cast<Complex>() - z * Eigen::MatrixXcd::Identity(o.n, o.n);
      Eigen::VectorXd sv = rdl::singular_values(shifted).values;
      for (int i = 0; i < o.n; ++i) {
        values.push_back(sv[i]);
        csv += std::to_string(s) + "," + std::to_string(i) + "," +
               rdl::format_double(sv[i]) + "\n";
      }
    } else {
      rdl::EmpiricalMeasure mu = rdl::eigenvalues(M);
      if (o.exclude_perron) mu = rdl::exclude_largest_modulus(mu);
      values = atoms_json(mu);
      for (int i = 0; i < mu.size(); ++i)
        csv += std::to_string(s) + "," + std::to_string(i) + "," +
               rdl::format_double(mu.atoms[i].real()) + "," +
               rdl::format_double(mu.atoms[i].imag()) + "\n";
    }
    per_sample.push_back(Json{{"sample", s}, {"values", std::move(values)}});
  }
  if (o.format == "csv") {
    rdl::write_file(resolved(c, o.table), csv);
    report["artifacts"] = Json::array({resolved(c, o.table)});
  } else {
    report["samples_out"] = std::move(per_sample);
  }
  emit(c, report);
  return 0;
}

// --------------------------------------------------------------- regularity
struct RegularityOpts {
  int n = 0, d = 0;
  long long samples = 1, budget = 1000000;
  double kappa = 0.4;
};

int run_regularity(const CommonOpts& c, const RegularityOpts& o) {
  Json report = envelope("regularity", Json{{"n", o.n},
                                            {"d", o.d},
                                            {"samples", o.samples},
                                            {"kappa", o.kappa},
                                            {"budget", o.budget},
                                            {"seed", c.seed}});
  rdl::RngStream rng(c.seed, 0);
  Json per_sample = Json::array();
  bool all_pass = true;
  for (long long s = 0; s < o.samples; ++s) {
    rdl::RegularDigraph A = rdl::chain_sample(
        o.n, o.d, rdl::default_chain_steps(o.n, o.d), rng);
    rdl::RegularityReport expansion =
        rdl::check_expansion(A, o.kappa, o.budget, rng);
    Json entry{{"sample", s}, {"expansion", expansion.to_json()}};
    if (expansion.pass()) {
      rdl::RegularityReport consequences =
          rdl::verify_expansion_consequences(A, o.kappa, o.budget, rng);
      entry["consequences"] = consequences.to_json();
      all_pass = all_pass && consequences.pass();
    } else {
      all_pass = false;
    }
    per_sample.push_back(std::move(entry));
  }
  report["samples_out"] = std::move(per_sample);
  report["pass"] = all_pass;
  emit(c, report);
  return 0;
}

// ------------------------------------------------------------------ netgeom
struct NetgeomOpts {
  int n = 0, m = 0;
  long long samples = 1;
  double rho = 0.5, cap = 1e7;
  long long materialize_cap = 2000000;
  std::string mode = "net";  // net | flat | bimodal
};

int run_netgeom(const CommonOpts& c, const NetgeomOpts& o) {
  Json report = envelope("netgeom", Json{{"n", o.n},
                                         {"m", o.m},
                                         {"rho", o.rho},
                                         {"mode", o.mode},
                                         {"samples", o.samples},
                                         {"seed", c.seed}});
  rdl::RngStream rng(c.seed, 0);
  if (o.mode == "net") {
    rdl::FlatNet net =
        rdl::build_flat_net(o.n, o.m, o.rho, o.cap, o.materialize_cap);
    double bound = std::pow(700.0 * o.n / (o.m * o.rho * o.rho), o.m);
    report["net"] = Json{{"cardinality", net.cardinality},
                        {"spacing", net.spacing},
                        {"radius", net.radius},
                        {"lattice_budget", net.lattice_budget},
                        {"materialized", net.materialized},
                        {"cardinality_bound", bound},
                        {"within_bound",
                         static_cast<double>(net.cardinality) <= bound}};
  } else if (o.mode == "flat") {
    Json out = Json::array();
    for (long long s = 0; s < o.samples; ++s) {
      rdl::FlatSample fs = rdl::random_flat_sample(o.n, o.m, o.rho, rng);
      rdl::FlatnessCertificate cert = rdl::certificate_for_support(
          fs.u, fs.support, rdl::FlatnessMethod::Alternating);
      Json coords = Json::array();
      for (int i = 0; i < o.n; ++i) coords.push_back(complex_json(fs.u.v[i]));
      out.push_back(Json{{"sample", s},
                         {"coords", std::move(coords)},
                         {"support", rdl::index_set_to_json(fs.support)},
                         {"member", cert.member},
                         {"lambda", complex_json(cert.lambda)},
                         {"residual", cert.residual}});
    }
    report["samples_out"] = std::move(out);
  } else {
    Json out = Json::array();
    for (long long s = 0; s < o.samples; ++s) {
      rdl::UnitVector u = rdl::random_unit_mean_zero(o.n, rng);
      int attempts = 0;
      while (rdl::flatness_certificate(u, o.m, o.rho).member &&
             ++attempts < 1000)
        u = rdl::random_unit_mean_zero(o.n, rng);
      rdl::require(attempts < 1000, "SamplingFailed",
                   "could not draw a non-flat unit vector");
      rdl::BimodalSets b = rdl::bimodal_sets(u, o.m, o.rho);
      out.push_back(Json{{"sample", s},
                         {"J1", rdl::index_set_to_json(b.J1)},
                         {"J2", rdl::index_set_to_json(b.J2)},
                         {"J1_prime", rdl::index_set_to_json(b.J1_prime)},
                         {"k0", b.k0},
                         {"lambda0", complex_json(b.lambda0)},
                         {"weak_gap", b.weak_gap},
                         {"strong_gap", b.strong_gap}});
    }
    report["samples_out"] = std::move(out);
  }
  emit(c, report);
  return 0;
}

// ------------------------------------------------------------------ circlaw
struct CirclawOpts {
  int n = 0, d = 0;
  long long samples = 1;
  double radial_tol = 0.05, angular_tol = 0.05;
  std::string format = "json";
  std::string cloud = "circlaw_eigenvalues.csv";
};

int run_circlaw(const CommonOpts& c, const CirclawOpts& o) {
  Json report = envelope("circlaw", Json{{"n", o.n},
                                         {"d", o.d},
                                         {"samples", o.samples},
                                         {"radial_tol", o.radial_tol},
                                         {"angular_tol", o.angular_tol},
                                         {"format", o.format},
                                         {"seed", c.seed}});
  rdl::RngStream rng(c.seed, 0);
  std::string csv = "sample,index,re,im\n";
  Json per_sample = Json::array();
  Json clouds = Json::array();
  bool pass = true;
  const double pi = 3.14159265358979323846;
  for (long long s = 0; s < o.samples; ++s) {
    rdl::RegularDigraph A = rdl::chain_sample(
        o.n, o.d, rdl::default_chain_steps(o.n, o.d), rng);
    rdl::EmpiricalMeasure bulk =
        rdl::exclude_largest_modulus(rdl::eigenvalues(rdl::normalized(A)));
    std::vector<double> radii, angles;
    for (int i = 0; i < bulk.size(); ++i) {
      radii.push_back(std::abs(bulk.atoms[i]));
      angles.push_back(std::arg(bulk.atoms[i]));
      csv += std::to_string(s) + "," + std::to_string(i) + "," +
             rdl::format_double(bulk.atoms[i].real()) + "," +
             rdl::format_double(bulk.atoms[i].imag()) + "\n";
    }
    double radial_ks = rdl::ks_vs_cdf(radii, rdl::circular_radial_cdf);
    double angular_ks = rdl::ks_vs_cdf(
        angles, [pi](double t) { return (t + pi) / (2 * pi); });
    bool sample_pass =
        radial_ks <= o.radial_tol && angular_ks <= o.angular_tol;
    pass = pass && sample_pass;
    per_sample.push_back(Json{{"sample", s},
                              {"radial_ks", radial_ks},
                              {"angular_ks", angular_ks},
                              {"pass", sample_pass}});
    if (o.format != "csv") clouds.push_back(atoms_json(bulk));
  }
  if (o.format == "csv") {
    rdl::write_file(resolved(c, o.cloud), csv);
    report["artifacts"] = Json::array({resolved(c, o.cloud)});
  } else {
    report["clouds"] = std::move(clouds);
  }
  report["samples_out"] = std::move(per_sample);
  report["pass"] = pass;
  emit(c, report);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------- ssv
struct SsvOpts {
  int n = 0, d = 0;
  long long samples = 20;
  double zre = 1, zim = 1, gamma = 1.0;
  std::string mode = "scalar";  // scalar | custom
  std::string z_matrix;         // CSV file for custom mode
};

int run_ssv(const CommonOpts& c, const SsvOpts& o) {
  Json config{{"n", o.n},
              {"d", o.d},
              {"z", complex_json({o.zre, o.zim})},
              {"mode", o.mode},
              {"samples", o.samples},
              {"gamma", o.gamma},
              {"seed", c.seed}};
  if (!o.z_matrix.empty()) config["z_matrix"] = o.z_matrix;
  Json report = envelope("ssv", std::move(config));
  rdl::RngStream rng(c.seed, 0);
  rdl::ComparisonReport rep;
  if (o.mode == "custom") {
    rdl::require(!o.z_matrix.empty(), "BadParams",
                 "custom mode needs --z-matrix (CSV, real entries)");
    Eigen::MatrixXcd Z =
        rdl::matrix_from_csv(rdl::read_file(resolved(c, o.z_matrix)))
            .cast<Complex>();
    rep = rdl::ssv_tail(o.n, o.d, {o.zre, o.zim}, rdl::ShiftMode::CustomZ,
                        o.samples, rng, &Z, o.gamma);
  } else {
    rep = rdl::ssv_tail(o.n, o.d, {o.zre, o.zim}, rdl::ShiftMode::ScalarShift,
                        o.samples, rng);
  }
  report["report"] = rep.to_json();
  report["pass"] = rep.pass;
  emit(c, report);
  return rep.pass ? 0 : 1;
}

// ------------------------------------------------------------------- wegner
struct WegnerOpts {
  int n = 0, d = 0;
  long long samples = 20;
  int eta_count = 50;
  double zre = 1, zim = 1, eta_step = 0.02, ceiling = 10.0;
};

int run_wegner(const CommonOpts& c, const WegnerOpts& o) {
  Json report = envelope("wegner", Json{{"n", o.n},
                                        {"d", o.d},
                                        {"z", complex_json({o.zre, o.zim})},
                                        {"samples", o.samples},
                                        {"eta_step", o.eta_step},
                                        {"eta_count", o.eta_count},
                                        {"ceiling", o.ceiling},
                                        {"seed", c.seed}});
  std::vector<double> etas;
  for (int k = 1; k <= o.eta_count; ++k) etas.push_back(o.eta_step * k);
  rdl::RngStream rng(c.seed, 0);
  rdl::ComparisonReport rep = rdl::wegner_profile(
      o.n, o.d, {o.zre, o.zim}, etas, o.samples, rng, o.ceiling);
  report["report"] = rep.to_json();
  report["pass"] = rep.pass;
  emit(c, report);
  return rep.pass ? 0 : 1;
}

// ------------------------------------------------------------------ compare
struct CompareOpts {
  int n = 0, d = 0, k = 0;
  long long samples = 50;
  double zre = 1, zim = 0, wre = 0, wim = 1;
  double tol = 0.05, linear_tol = 0.02, T = 10.0;
  double center = 1.0, half_width = 0.5, height = 1.0;
  std::string what = "stieltjes";
  std::string shift = "zero";  // orderstats base matrix: zero | minus-identity
};

int run_compare(const CommonOpts& c, const CompareOpts& o) {
  Json report = envelope("compare", Json{{"what", o.what},
                                         {"n", o.n},
                                         {"d", o.d},
                                         {"z", complex_json({o.zre, o.zim})},
                                         {"w", complex_json({o.wre, o.wim})},
                                         {"samples", o.samples},
                                         {"seed", c.seed}});
  rdl::RngStream rng(c.seed, 0);
  const Complex z(o.zre, o.zim), w(o.wre, o.wim);
  rdl::ComparisonReport rep;
  if (o.what == "stieltjes") {
    rep = rdl::compare_stieltjes(o.n, o.d, z, w, o.samples, rng);
  } else if (o.what == "linear") {
    rep = rdl::compare_linear_stat(
        o.n, o.d, z, rdl::tent_function(o.center, o.half_width, o.height),
        o.samples, rng, o.linear_tol);
  } else if (o.what == "agreement") {
    rep = rdl::ensemble_agreement(o.n, o.d, z, o.samples, rng, o.tol);
  } else if (o.what == "integrability") {
    rep = rdl::uniform_integrability_probe(o.n, o.d, z, o.T, o.samples, rng);
  } else {
    int k = o.k > 0 ? o.k
                    : static_cast<int>(std::ceil(std::sqrt(
                          static_cast<double>(o.n))));
    Eigen::MatrixXcd M =
        o.shift == "minus-identity"
            ? Eigen::MatrixXcd(-Eigen::MatrixXcd::Identity(o.n, o.n))
            : Eigen::MatrixXcd(Eigen::MatrixXcd::Zero(o.n, o.n));
    rep = rdl::gaussian_order_stats(o.n, M, k, o.samples, rng);
  }
  report["report"] = rep.to_json();
  report["pass"] = rep.pass;
  emit(c, report);
  return rep.pass ? 0 : 1;
}

// ------------------------------------------------------------------- factor
struct FactorOpts {
  int n = 0, d = 0;
  long long samples = 100;
  double p = 0.3, delta = 0.3, pass_level = 0.99;
  std::string mode = "probability";  // probability | exact | find
  std::string input;                 // CSV 0-1 matrix for find
};

int run_factor(const CommonOpts& c, const FactorOpts& o) {
  Json config{{"mode", o.mode}, {"n", o.n}, {"seed", c.seed}};
  if (o.mode == "probability") {
    config["p"] = o.p;
    config["delta"] = o.delta;
    config["samples"] = o.samples;
    config["pass_level"] = o.pass_level;
  } else if (o.mode == "exact") {
    config["d"] = o.d;
    config["p"] = o.p;
  } else {
    config["d"] = o.d;
    config["input"] = o.input;
  }
  Json report = envelope("factor", std::move(config));
  int code = 0;
  if (o.mode == "probability") {
    rdl::RngStream rng(c.seed, 0);
    rdl::FactorProbabilityReport rep =
        rdl::factor_probability(o.n, o.p, o.delta, o.samples, rng, o.pass_level);
    report["report"] = rep.to_json();
    report["pass"] = rep.pass;
    code = rep.pass ? 0 : 1;
  } else if (o.mode == "exact") {
    report["probability"] = rdl::membership_probability_exact(o.n, o.d, o.p);
  } else {
    rdl::require(!o.input.empty(), "BadParams",
                 "find mode needs --input (CSV 0-1 matrix)");
    Eigen::MatrixXd B =
        rdl::matrix_from_csv(rdl::read_file(resolved(c, o.input)));
    rdl::FactorResult res = rdl::find_regular_factor(B, o.d);
    report["exists"] = res.exists;
    if (res.exists)
      report["factor"] = rdl::digraph_to_json(*res.factor);
    else
      report["certificate"] = rdl::index_set_to_json(*res.certificate);
  }
  emit(c, report);
  return code;
}

// ------------------------------------------------------------------- accept
struct AcceptOpts {
  std::string level = "fast";
};

int run_accept(const CommonOpts& c, const AcceptOpts& o) {
  rdl::AcceptanceLevel level = o.level == "full" ? rdl::AcceptanceLevel::Full
                                                 : rdl::AcceptanceLevel::Fast;
  rdl::AcceptanceSummary summary = rdl::run_acceptance(level, std::cout);
  Json report = envelope("accept", Json{{"level", o.level}, {"seed", c.seed}});
  report["summary"] = summary.to_json();
  if (!c.output.empty()) emit(c, report);
  return summary.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"laboratory for uniform random d-regular digraphs"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.set_version_flag("--version", RDL_VERSION_STRING);

  CommonOpts common;

  SampleOpts so;
  CLI::App* sample =
      app.add_subcommand("sample", "draw or enumerate regular digraphs");
  sample->add_option("--n", so.n, "matrix size")->required();
  sample->add_option("--d", so.d, "in/out degree")->required();
  sample->add_option("--method", so.method, "chain | rejection | enumerate")
      ->check(CLI::IsMember({"chain", "rejection", "enumerate"}))
      ->capture_default_str();
  sample->add_option("--samples", so.samples)->capture_default_str();
  sample->add_option("--steps", so.steps, "chain steps (0 = default schedule)");
  sample->add_option("--max-tries", so.max_tries)->capture_default_str();
  add_common(sample, common);

  SpectrumOpts po;
  CLI::App* spectrum =
      app.add_subcommand("spectrum", "eigenvalues or singular values of samples");
  spectrum->add_option("--n", po.n)->required();
  spectrum->add_option("--d", po.d)->required();
  spectrum->add_option("--samples", po.samples)->capture_default_str();
  spectrum->add_option("--matrix", po.matrix, "normalized | raw")
      ->check(CLI::IsMember({"normalized", "raw"}))
      ->capture_default_str();
  spectrum->add_option("--what", po.what, "eigenvalues | singular")
      ->check(CLI::IsMember({"eigenvalues", "singular"}))
      ->capture_default_str();
  spectrum->add_option("--zre", po.zre, "shift, real part (singular values)");
  spectrum->add_option("--zim", po.zim, "shift, imaginary part");
  spectrum->add_flag("--exclude-perron", po.exclude_perron,
                     "drop the largest-modulus eigenvalue");
  spectrum->add_option("--format", po.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  spectrum->add_option("--table", po.table, "CSV artifact name (csv format)")
      ->capture_default_str();
  add_common(spectrum, common);

  RegularityOpts ro;
  CLI::App* regularity =
      app.add_subcommand("regularity", "expansion checks on sampled digraphs");
  regularity->add_option("--n", ro.n)->required();
  regularity->add_option("--d", ro.d)->required();
  regularity->add_option("--samples", ro.samples)->capture_default_str();
  regularity->add_option("--kappa", ro.kappa)->capture_default_str();
  regularity->add_option("--budget", ro.budget, "subset enumeration budget")
      ->capture_default_str();
  add_common(regularity, common);

  NetgeomOpts no;
  CLI::App* netgeom =
      app.add_subcommand("netgeom", "flat nets, flatness certificates, bimodal sets");
  netgeom->add_option("--n", no.n)->required();
  netgeom->add_option("--m", no.m)->required();
  netgeom->add_option("--rho", no.rho)->capture_default_str();
  netgeom->add_option("--mode", no.mode, "net | flat | bimodal")
      ->check(CLI::IsMember({"net", "flat", "bimodal"}))
      ->capture_default_str();
  netgeom->add_option("--samples", no.samples)->capture_default_str();
  netgeom->add_option("--cap", no.cap, "feasibility cap on net size")
      ->capture_default_str();
  netgeom->add_option("--materialize-cap", no.materialize_cap)
      ->capture_default_str();
  add_common(netgeom, common);

  CirclawOpts co;
  CLI::App* circlaw =
      app.add_subcommand("circlaw", "bulk spectrum vs the circular law");
  circlaw->add_option("--n", co.n)->required();
  circlaw->add_option("--d", co.d)->required();
  circlaw->add_option("--samples", co.samples)->capture_default_str();
  circlaw->add_option("--radial-tol", co.radial_tol)->capture_default_str();
  circlaw->add_option("--angular-tol", co.angular_tol)->capture_default_str();
  circlaw->add_option("--format", co.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  circlaw->add_option("--cloud", co.cloud, "CSV artifact name (csv format)")
      ->capture_default_str();
  add_common(circlaw, common);

  SsvOpts vo;
  CLI::App* ssv =
      app.add_subcommand("ssv", "smallest singular value tails of shifted samples");
  ssv->add_option("--n", vo.n)->required();
  ssv->add_option("--d", vo.d)->required();
  ssv->add_option("--zre", vo.zre)->capture_default_str();
  ssv->add_option("--zim", vo.zim)->capture_default_str();
  ssv->add_option("--samples", vo.samples)->capture_default_str();
  ssv->add_option("--mode", vo.mode, "scalar | custom")
      ->check(CLI::IsMember({"scalar", "custom"}))
      ->capture_default_str();
  ssv->add_option("--gamma", vo.gamma, "norm exponent for custom shifts")
      ->capture_default_str();
  ssv->add_option("--z-matrix", vo.z_matrix, "CSV shift matrix (custom mode)");
  add_common(ssv, common);

  WegnerOpts wo;
  CLI::App* wegner =
      app.add_subcommand("wegner", "small singular value mass profile");
  wegner->add_option("--n", wo.n)->required();
  wegner->add_option("--d", wo.d)->required();
  wegner->add_option("--zre", wo.zre)->capture_default_str();
  wegner->add_option("--zim", wo.zim)->capture_default_str();
  wegner->add_option("--samples", wo.samples)->capture_default_str();
  wegner->add_option("--eta-step", wo.eta_step)->capture_default_str();
  wegner->add_option("--eta-count", wo.eta_count)->capture_default_str();
  wegner->add_option("--ceiling", wo.ceiling)->capture_default_str();
  add_common(wegner, common);

  CompareOpts mo;
  CLI::App* compare =
      app.add_subcommand("compare", "ensemble comparison statistics");
  compare->add_option("--what", mo.what,
                      "stieltjes | linear | agreement | integrability | orderstats")
      ->check(CLI::IsMember(
          {"stieltjes", "linear", "agreement", "integrability", "orderstats"}))
      ->capture_default_str();
  compare->add_option("--n", mo.n)->required();
  compare->add_option("--d", mo.d, "degree (unused by orderstats)");
  compare->add_option("--zre", mo.zre)->capture_default_str();
  compare->add_option("--zim", mo.zim)->capture_default_str();
  compare->add_option("--wre", mo.wre)->capture_default_str();
  compare->add_option("--wim", mo.wim)->capture_default_str();
  compare->add_option("--samples", mo.samples)->capture_default_str();
  compare->add_option("--tol", mo.tol, "KS tolerance (agreement)")
      ->capture_default_str();
  compare->add_option("--linear-tol", mo.linear_tol)->capture_default_str();
  compare->add_option("--T", mo.T, "tail threshold (integrability)")
      ->capture_default_str();
  compare->add_option("--center", mo.center, "tent center (linear)")
      ->capture_default_str();
  compare->add_option("--half-width", mo.half_width)->capture_default_str();
  compare->add_option("--height", mo.height)->capture_default_str();
  compare->add_option("--k", mo.k, "first order statistic (0 = ceil sqrt n)");
  compare->add_option("--shift", mo.shift, "zero | minus-identity (orderstats)")
      ->check(CLI::IsMember({"zero", "minus-identity"}))
      ->capture_default_str();
  add_common(compare, common);

  FactorOpts fo;
  CLI::App* factor =
      app.add_subcommand("factor", "regular factors of Bernoulli digraphs");
  factor->add_option("--mode", fo.mode, "probability | exact | find")
      ->check(CLI::IsMember({"probability", "exact", "find"}))
      ->capture_default_str();
  factor->add_option("--n", fo.n)->required();
  factor->add_option("--d", fo.d, "degree (exact and find modes)");
  factor->add_option("--p", fo.p)->capture_default_str();
  factor->add_option("--delta", fo.delta)->capture_default_str();
  factor->add_option("--samples", fo.samples)->capture_default_str();
  factor->add_option("--pass-level", fo.pass_level)->capture_default_str();
  factor->add_option("--input", fo.input, "CSV 0-1 matrix (find mode)");
  add_common(factor, common);

  AcceptOpts ao;
  CLI::App* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--level", ao.level, "fast | full")
      ->check(CLI::IsMember({"fast", "full"}))
      ->capture_default_str();
  add_common(accept, common);

  int code = 0;
  sample->callback([&] { code = run_sample(common, so); });
  spectrum->callback([&] { code = run_spectrum(common, po); });
  regularity->callback([&] { code = run_regularity(common, ro); });
  netgeom->callback([&] { code = run_netgeom(common, no); });
  circlaw->callback([&] { code = run_circlaw(common, co); });
  ssv->callback([&] { code = run_ssv(common, vo); });
  wegner->callback([&] { code = run_wegner(common, wo); });
  compare->callback([&] { code = run_compare(common, mo); });
  factor->callback([&] { code = run_factor(common, fo); });
  accept->callback([&] { code = run_accept(common, ao); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const rdl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return code;
}
