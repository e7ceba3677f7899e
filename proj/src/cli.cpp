#include "hahnchain/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hahnchain/dynamics.hpp"
#include "hahnchain/verify.hpp"

namespace hahnchain::cli {

namespace {

using Json = nlohmann::ordered_json;

class InvalidParameters : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json header(const CliConfig& c) {
  Json j;
  j["m"] = c.m;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["q"] = c.q ? Json(*c.q) : Json(nullptr);
  j["N"] = c.spec().N();
  return j;
}

Json complex_json(double t, std::complex<double> z) {
  return Json{{"t", t}, {"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}};
}

std::vector<double> time_grid(const CliConfig& c) {
  std::vector<double> grid(c.steps);
  for (int i = 0; i < c.steps; ++i)
    grid[i] = c.steps == 1 ? c.t_min : c.t_min + i * (c.t_max - c.t_min) / (c.steps - 1);
  return grid;
}

void check_config(const CliConfig& c) {
  c.spec().validate();
  if (c.steps < 1) throw InvalidParameters("--steps must be positive");
  if (!std::isfinite(c.t_min) || !std::isfinite(c.t_max))
    throw InvalidParameters("--t-min and --t-max must be finite");
  if (c.steps > 1 && !(c.t_max > c.t_min)) throw InvalidParameters("--t-max must exceed --t-min");
  if (!(c.rtol > 0.0)) throw InvalidParameters("--rtol must be positive");
  if (c.command == Command::correlate) {
    if (!c.r || !c.s) throw InvalidParameters("correlate requires --r and --s");
    const int N = c.spec().N();
    if (*c.r < 0 || *c.r > N || *c.s < 0 || *c.s > N)
      throw InvalidParameters("--r and --s must lie in [0, " + std::to_string(N) + "]");
  }
}

void write_couplings(const CliConfig& c, std::ostream& os) {
  const Eigen::VectorXd J = build_couplings(c.spec()).values;
  if (c.format == Format::json) {
    Json j = header(c);
    j["couplings"] = std::vector<double>(J.data(), J.data() + J.size());
    os << j.dump(2) << '\n';
    return;
  }
  os << "k,J\n";
  for (Eigen::Index k = 0; k < J.size(); ++k) os << k << ',' << number(J(k)) << '\n';
}

void write_spectrum(const CliConfig& c, std::ostream& os, bool with_vectors) {
  const EigenSystem<double> es = analytic_eigensystem(c.spec());
  const Eigen::Index n = es.eigenvalues.size();
  if (c.format == Format::json) {
    Json j = header(c);
    j["eigenvalues"] = std::vector<double>(es.eigenvalues.data(), es.eigenvalues.data() + n);
    if (with_vectors) {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < n; ++r) {
        const Eigen::VectorXd row = es.U.row(r).transpose();
        rows.push_back(std::vector<double>(row.data(), row.data() + n));
      }
      j["U"] = std::move(rows);
    }
    os << j.dump(2) << '\n';
    return;
  }
  if (!with_vectors) {
    os << "j,eigenvalue\n";
    for (Eigen::Index k = 0; k < n; ++k) os << k << ',' << number(es.eigenvalues(k)) << '\n';
    return;
  }
  os << "site";
  for (Eigen::Index k = 0; k < n; ++k) os << ",u" << k;
  os << '\n';
  for (Eigen::Index r = 0; r < n; ++r) {
    os << r;
    for (Eigen::Index k = 0; k < n; ++k) os << ',' << number(es.U(r, k));
    os << '\n';
  }
}

void write_correlate(const CliConfig& c, std::ostream& os) {
  const ChainSpec spec = c.spec();
  const EigenSystem<double> es = analytic_eigensystem(spec);
  const std::vector<double> grid = time_grid(c);
  std::vector<CorrelationSample> samples;
  samples.reserve(grid.size());
  for (double t : grid) samples.push_back(correlation(es, *c.r, *c.s, t));

  if (c.format == Format::csv) {
    os << "t,re,im,abs\n";
    for (const CorrelationSample& x : samples)
      os << number(x.t) << ',' << number(x.amplitude.real()) << ',' << number(x.amplitude.imag())
         << ',' << number(x.modulus()) << '\n';
    return;
  }
  Json j = header(c);
  j["r"] = *c.r;
  j["s"] = *c.s;
  Json rows = Json::array();
  for (const CorrelationSample& x : samples) rows.push_back(complex_json(x.t, x.amplitude));
  j["samples"] = std::move(rows);
  if (has_integer_spectrum(spec)) {
    j["end_to_end_halfpi"] = complex_json(M_PI / 2, amplitude_at_halfpi(spec));
    j["end_to_end_pi"] = complex_json(M_PI, amplitude_at_pi(spec));
    const auto cond = pst_condition(spec.alpha);
    j["pst_condition"] =
        cond ? Json{{"k", cond->k}, {"l", cond->l}, {"time", cond->time}} : Json(nullptr);
  }
  if (has_proportional_q_parameters(spec)) {
    Json closed = Json::array();
    for (double t : grid) closed.push_back(complex_json(t, q_end_to_end(spec, t)));
    j["end_to_end_closed_form"] = std::move(closed);
  }
  os << j.dump(2) << '\n';
}

void write_pst_scan(const CliConfig& c, std::ostream& os) {
  const std::vector<double> grid = time_grid(c);
  const std::vector<PSTResult> scan = pst_scan(c.spec(), grid);
  if (c.format == Format::csv) {
    os << "t,abs,perfect\n";
    for (const PSTResult& p : scan)
      os << number(p.time) << ',' << number(p.modulus) << ',' << (p.is_perfect ? 1 : 0) << '\n';
    return;
  }
  Json j = header(c);
  Json rows = Json::array();
  for (const PSTResult& p : scan)
    rows.push_back(Json{{"t", p.time}, {"abs", p.modulus}, {"perfect", p.is_perfect}});
  j["pst_scan"] = std::move(rows);
  os << j.dump(2) << '\n';
}

bool write_verify(const CliConfig& c, std::ostream& os) {
  const VerificationReport report = run_verification(c.spec(), c.rtol);
  if (c.format == Format::csv) {
    os << "suite,max_residual,tolerance,passed,applicable\n";
    for (const SuiteResult& s : report.suites)
      os << s.name << ',' << number(s.max_residual) << ',' << number(s.tolerance) << ','
         << (s.passed ? 1 : 0) << ',' << (s.applicable ? 1 : 0) << '\n';
  } else {
    Json j = header(c);
    Json suites = Json::array();
    for (const SuiteResult& s : report.suites)
      suites.push_back(Json{{"suite", s.name},
                            {"max_residual", s.max_residual},
                            {"tolerance", s.tolerance},
                            {"passed", s.passed},
                            {"applicable", s.applicable}});
    j["suites"] = std::move(suites);
    j["passed"] = report.all_passed();
    os << j.dump(2) << '\n';
  }
  return report.all_passed();
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::couplings: return "couplings";
    case Command::spectrum: return "spectrum";
    case Command::eigvecs: return "eigvecs";
    case Command::correlate: return "correlate";
    case Command::pst_scan: return "pst-scan";
    case Command::verify: return "verify";
  }
  return "?";
}

int run(const CliConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  bool verified = true;
  try {
    check_config(config);
    switch (config.command) {
      case Command::couplings: write_couplings(config, buffer); break;
      case Command::spectrum: write_spectrum(config, buffer, false); break;
      case Command::eigvecs: write_spectrum(config, buffer, true); break;
      case Command::correlate: write_correlate(config, buffer); break;
      case Command::pst_scan: write_pst_scan(config, buffer); break;
      case Command::verify: verified = write_verify(config, buffer); break;
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }

  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    file << buffer.str();
    file.close();
    if (!file) {
      err << "error: cannot write " << *config.output << '\n';
      return kExitIo;
    }
  } else {
    out << buffer.str();
    out.flush();
    if (!out) {
      err << "error: cannot write to standard output\n";
      return kExitIo;
    }
  }
  return verified ? kExitOk : kExitVerifyFailed;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hahn-polynomial spin chains: spectra, eigenvectors, transfer amplitudes"};
  app.require_subcommand(1);
  CliConfig config;
  std::optional<double> q;
  std::optional<int> r, s;
  std::optional<std::string> output;
  std::string format = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--m", config.m, "chain half-length (N = 2m+1)")->required();
    sub->add_option("--alpha", config.alpha)->required();
    sub->add_option("--beta", config.beta)->required();
    sub->add_option("--q", q, "switches to the q-deformed chain");
    sub->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "write to this file instead of standard output");
  };
  auto add_times = [&](CLI::App* sub) {
    sub->add_option("--t-min", config.t_min);
    sub->add_option("--t-max", config.t_max);
    sub->add_option("--steps", config.steps);
  };

  const std::pair<Command, const char*> commands[] = {
      {Command::couplings, "coupling strengths J_0..J_{N-1}"},
      {Command::spectrum, "analytic eigenvalues"},
      {Command::eigvecs, "analytic eigenvalues and eigenvector matrix U"},
      {Command::correlate, "transition amplitude f_{r,s}(t) on a time grid"},
      {Command::pst_scan, "|f_{N,0}(t)| on a time grid, flagging perfect transfer"},
      {Command::verify, "run the identity suites"},
  };
  std::vector<std::pair<Command, CLI::App*>> subs;
  for (const auto& [cmd, help] : commands) {
    CLI::App* sub = app.add_subcommand(command_name(cmd), help);
    add_common(sub);
    if (cmd == Command::correlate) {
      sub->add_option("--r", r, "target site");
      sub->add_option("--s", s, "source site");
    }
    if (cmd == Command::correlate || cmd == Command::pst_scan) add_times(sub);
    if (cmd == Command::verify) sub->add_option("--rtol", config.rtol);
    subs.emplace_back(cmd, sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  for (const auto& [cmd, sub] : subs)
    if (sub->parsed()) config.command = cmd;
  config.q = q;
  config.r = r;
  config.s = s;
  config.output = output;
  config.format = format == "json" ? Format::json : Format::csv;
  return run(config, out, err);
}

}  // namespace hahnchain::cli
