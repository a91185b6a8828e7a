// Copyright 2026 The meskit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// meskit: generate, classify and extend MES preservers; run the identity
// verification suite.
//
// Exit codes: 0 ok, 1 check-lemmas reported a failing check, 2 usage or
// parse error, 3 not a preserver, 4 not invertible on span(MES),
// 5 inconsistent Choi determinant, 6 not a Kronecker product.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <unistd.h>

#include <CLI11.hpp>

#include "meskit/json_io.hpp"
#include "meskit/meskit.hpp"

namespace {

using meskit::Json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int m = 2;
  int k = 2;
  std::uint64_t seed = 0;
  double tol = meskit::kDefaultTol;
  int samples = 0;
  std::string sigma;
  std::string form = "adjoint";
  std::string input;
  std::string out;
  std::string truth;
};

int exit_code_for(const meskit::Error& e) {
  const std::string& kind = e.kind();
  if (kind == "NotPreserverError" || kind == "NotMESError" || kind == "SubspaceViolationError" ||
      kind == "PhaseAlignmentError") {
    return 3;
  }
  if (kind == "NotInvertibleError") return 4;
  if (kind == "InconsistentChoiError") return 5;
  if (kind == "NotKroneckerError" || kind == "NoSolutionError" ||
      kind == "AmbiguousSolutionError") {
    return 6;
  }
  return 2;
}

int report_error(const std::string& kind, const std::string& stage, const std::string& message,
                 int code) {
  Json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  if (!stage.empty()) err["stage"] = stage;
  std::cerr << meskit::write_json(err);
  return code;
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw meskit::ParseError("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw meskit::ParseError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw meskit::ParseError("cannot rename onto " + path + ": " + ec.message());
  }
}

meskit::Dims dims_of(const RunConfig& cfg) {
  try {
    return meskit::Dims(cfg.m, cfg.k);
  } catch (const meskit::DimensionError& e) {
    throw UsageError(e.what());
  }
}

std::string default_truth_path(const std::string& out) {
  const std::filesystem::path p(out);
  return (p.parent_path() / "truth.json").string();
}

int cmd_gen(const RunConfig& cfg) {
  std::optional<meskit::Sigma> sigma;
  if (!cfg.sigma.empty()) sigma = meskit::parse_sigma(cfg.sigma);
  const meskit::Sigma s = sigma.value_or(meskit::Sigma::Identity);
  const meskit::Dims dims = dims_of(cfg);

  Json truth{{"form", cfg.form}, {"seed", cfg.seed}};
  std::optional<meskit::Superoperator> phi;
  if (cfg.form == "adjoint") {
    const meskit::PreserverSample p = meskit::random_adjoint_preserver(dims, s, cfg.seed);
    truth["sigma"] = meskit::to_string(s);
    truth["U"] = meskit::matrix_to_json(p.u);
    truth["V"] = meskit::matrix_to_json(p.v);
    phi = p.phi;
  } else if (cfg.form == "swap") {
    if (cfg.k != 1) throw UsageError("--form swap needs X = Y, i.e. --k 1 (m = n)");
    meskit::Rng rng(cfg.seed);
    const meskit::Matrix u = meskit::haar_unitary(dims.m(), rng);
    const meskit::Matrix v = meskit::haar_unitary(dims.n(), rng);
    truth["sigma"] = meskit::to_string(s);
    truth["U"] = meskit::matrix_to_json(u);
    truth["V"] = meskit::matrix_to_json(v);
    phi = meskit::make_swap_preserver(u, v, s);
  } else if (cfg.form == "trace") {
    if (sigma) throw UsageError("--sigma does not apply to --form trace");
    const meskit::Matrix rho = meskit::random_mes(dims, cfg.seed);
    truth["rho"] = meskit::matrix_to_json(rho);
    phi = meskit::make_trace_preserver(rho, dims);
  } else {
    throw UsageError("--form must be adjoint, swap or trace");
  }
  truth["dims"] = meskit::dims_to_json(dims);

  const std::string out = cfg.out.empty() ? "superop.json" : cfg.out;
  const std::string truth_path = cfg.truth.empty() ? default_truth_path(out) : cfg.truth;
  write_atomically(out, meskit::write_json(meskit::superop_to_json(*phi)));
  write_atomically(truth_path, meskit::write_json(truth));
  std::cout << meskit::write_json(Json{{"superoperator", out}, {"truth", truth_path}});
  return 0;
}

meskit::Superoperator load_superop(const std::string& path) {
  if (path.empty()) throw UsageError("missing input file");
  return meskit::superop_from_json(meskit::read_json_file(path));
}

int cmd_classify(const RunConfig& cfg) {
  const meskit::Superoperator phi = load_superop(cfg.input);
  meskit::ClassifyConfig config;
  config.tol = cfg.tol;
  config.samples = cfg.samples;
  config.seed = cfg.seed;
  const meskit::Decomposition dec = meskit::decompose(phi, config);
  const std::string text = meskit::write_json(meskit::decomposition_to_json(dec));
  if (!cfg.out.empty()) write_atomically(cfg.out, text);
  std::cout << text;
  return 0;
}

int cmd_check_lemmas(const RunConfig& cfg) {
  meskit::LemmaCheckConfig config;
  const meskit::Dims dims = dims_of(cfg);
  config.m = dims.m();
  config.k = dims.k();
  config.seed = cfg.seed;
  config.tol = cfg.tol;
  if (cfg.samples > 0) config.cases = cfg.samples;
  const auto results = meskit::run_lemma_checks(config);
  bool all = true;
  Json checks = Json::array();
  for (const meskit::LemmaCheck& c : results) {
    all = all && c.passed;
    Json entry{{"name", c.name},         {"passed", c.passed},
               {"skipped", c.skipped},   {"max_residual", c.max_residual},
               {"cases", c.cases},       {"disagreements", c.disagreements}};
    if (!c.note.empty()) entry["note"] = c.note;
    checks.push_back(std::move(entry));
  }
  const Json report{{"dims", meskit::dims_to_json(dims)},
                    {"tol", cfg.tol},
                    {"seed", cfg.seed},
                    {"all_passed", all},
                    {"checks", std::move(checks)}};
  const std::string text = meskit::write_json(report);
  if (!cfg.out.empty()) write_atomically(cfg.out, text);
  std::cout << text;
  return all ? 0 : 1;
}

int cmd_extend(const RunConfig& cfg) {
  const meskit::Superoperator phi = load_superop(cfg.input);
  const meskit::Dims& base = phi.dims;
  if (base.k() < 2) throw UsageError("extend needs an input with n = k m, k >= 2");
  if (!meskit::preserves_mes(phi, 16, cfg.tol, meskit::derive_seed(cfg.seed, 1))) {
    throw meskit::NotPreserverError("input maps a sampled MES outside MES", "preserves_mes");
  }
  meskit::Sigma sigma;
  if (!cfg.sigma.empty()) {
    sigma = meskit::parse_sigma(cfg.sigma);
  } else {
    try {
      sigma = meskit::detect_sigma(phi, meskit::derive_seed(cfg.seed, 2), cfg.tol);
    } catch (const meskit::InconsistentChoiError& e) {
      throw meskit::InconsistentChoiError(e.what(), "detect_sigma");
    }
  }
  const meskit::ExtendedSuperoperator ext = meskit::extend(phi, sigma);

  const int samples = cfg.samples > 0 ? cfg.samples : 10;
  const meskit::Matrix id_y = meskit::Matrix::Identity(base.n(), base.n());
  Json commutation = Json::array();
  double worst = 0.0;
  for (int j = 1; j <= base.k(); ++j) {
    const double r = meskit::commutation_residual(
        ext.op, meskit::kron(meskit::p_operator(j, base), id_y), samples,
        meskit::derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(j)));
    worst = std::max(worst, r);
    commutation.push_back(Json{{"operator", "P_" + std::to_string(j) + " (x) 1"}, {"residual", r}});
  }
  for (int p = 1; p <= base.k(); ++p) {
    for (int q = p + 1; q <= base.k(); ++q) {
      const double r = meskit::commutation_residual(
          ext.op, meskit::q_operator(p, q, base), samples,
          meskit::derive_seed(cfg.seed, 200 + static_cast<std::uint64_t>(p * base.k() + q)));
      worst = std::max(worst, r);
      commutation.push_back(Json{{"operator", "Q_" + std::to_string(p) + std::to_string(q)},
                                 {"residual", r}});
    }
  }
  const meskit::Dims big = ext.op.dims;
  double mes_worst = 0.0;
  int mes_failures = 0;
  const int mes_samples = 50;
  for (int i = 0; i < mes_samples; ++i) {
    const meskit::Matrix out = meskit::apply(
        ext.op, meskit::random_mes(big, meskit::derive_seed(cfg.seed, 1000 + static_cast<std::uint64_t>(i))));
    mes_worst = std::max(mes_worst, meskit::checks::mes_deviation(out, big));
    mes_failures += meskit::is_mes(out, big, std::max(cfg.tol, 1e-8)) ? 0 : 1;
  }

  const std::string out = cfg.out.empty() ? "extended.json" : cfg.out;
  write_atomically(out, meskit::write_json(meskit::extended_to_json(ext)));
  const Json report{{"extended", out},
                    {"sigma", meskit::to_string(sigma)},
                    {"base_dims", meskit::dims_to_json(base)},
                    {"commutation", std::move(commutation)},
                    {"max_commutation_residual", worst},
                    {"all_commute", worst < cfg.tol},
                    {"mes_samples", mes_samples},
                    {"mes_failures", mes_failures},
                    {"max_mes_deviation", mes_worst}};
  std::cout << meskit::write_json(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* env = std::getenv("MESKIT_TOL")) {
    try {
      std::size_t used = 0;
      cfg.tol = std::stod(env, &used);
      if (used != std::string(env).size() || !(cfg.tol > 0.0)) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      return report_error("UsageError", "", std::string("MESKIT_TOL is not a positive number: ") + env,
                          2);
    }
  }

  CLI::App app{"MES preserver toolkit"};
  app.require_subcommand(1);
  auto add_common = [&cfg](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--tol", cfg.tol, "Tolerance (default 1e-9, or MESKIT_TOL)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "Sample count (default depends on command)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "Output file");
  };
  auto add_dims = [&cfg](CLI::App* sub) {
    sub->add_option("--m", cfg.m, "dim X")->check(CLI::PositiveNumber);
    sub->add_option("--k", cfg.k, "blocks, dim Y = k m")->check(CLI::PositiveNumber);
  };

  CLI::App* gen = app.add_subcommand("gen", "Write a random preserver and its ground truth");
  add_dims(gen);
  add_common(gen);
  gen->add_option("--sigma", cfg.sigma, "identity or transpose")
      ->check(CLI::IsMember({"identity", "transpose"}));
  gen->add_option("--form", cfg.form, "adjoint, swap or trace")
      ->check(CLI::IsMember({"adjoint", "swap", "trace"}));
  gen->add_option("--truth", cfg.truth, "Ground-truth sidecar (default: truth.json next to --out)");

  CLI::App* classify = app.add_subcommand("classify", "Decompose a superoperator");
  classify->add_option("input", cfg.input, "Superoperator JSON")->required();
  add_common(classify);

  CLI::App* lemmas = app.add_subcommand("check-lemmas", "Run the identity verification suite");
  add_dims(lemmas);
  add_common(lemmas);

  CLI::App* ext = app.add_subcommand("extend", "Extend a preserver to L(Y (x) Y)");
  ext->add_option("input", cfg.input, "Superoperator JSON")->required();
  ext->add_option("--sigma", cfg.sigma, "identity or transpose (default: detect)")
      ->check(CLI::IsMember({"identity", "transpose"}));
  add_common(ext);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("UsageError", "", e.what(), 2);
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg);
    if (classify->parsed()) return cmd_classify(cfg);
    if (lemmas->parsed()) return cmd_check_lemmas(cfg);
    return cmd_extend(cfg);
  } catch (const UsageError& e) {
    return report_error("UsageError", "", e.what(), 2);
  } catch (const meskit::Error& e) {
    return report_error(e.kind(), e.stage(), e.what(), exit_code_for(e));
  }
}
