#include "pjac/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pjac/certify.hpp"
#include "pjac/critical.hpp"
#include "pjac/error.hpp"
#include "pjac/families.hpp"
#include "pjac/io.hpp"
#include "pjac/regression.hpp"

namespace pjac::cli {

using io::json;
using io::to_json;

namespace {

const std::vector<std::pair<std::string, Command>> kCommands = {
    {"phi", Command::Phi},           {"pn", Command::Pn},           {"critical", Command::Critical},
    {"certify", Command::Certify},   {"spectrum", Command::Spectrum}, {"support", Command::Support},
    {"family", Command::Family},     {"oracle", Command::Oracle},   {"verify", Command::Verify},
};

}  // namespace

Command parse_command(const std::string& s) {
  for (const auto& [name, c] : kCommands)
    if (name == s) return c;
  throw InputError("unknown command '" + s + "'");
}

std::string to_string(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name;
  return "unknown";
}

Format parse_format(const std::string& s) {
  if (s == "table") return Format::Table;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  throw InputError("unknown format '" + s + "'");
}

void validate(const RunConfig& cfg) {
  if (!(cfg.tol > 0.0 && cfg.tol < 1e-2)) throw InputError("--tol must lie in (0, 1e-2)");
  if (cfg.grid < 2) throw InputError("--grid must be at least 2");
  if (cfg.max_n < 1 || cfg.max_n > 64) throw InputError("--max-n must lie in [1, 64]");
  if (cfg.command == Command::Verify) return;
  const bool has_family = !cfg.family.empty();
  const bool has_file = !cfg.coeffs_path.empty();
  if (has_family == has_file) throw InputError("give exactly one of --family or --coeffs");
  if (cfg.command == Command::Family && !has_family) throw InputError("'family' needs --family");
  if (cfg.command == Command::Certify && !cfg.mu) throw InputError("'certify' needs --mu re,im");
  if (cfg.mu && !(std::isfinite(cfg.mu->real()) && std::isfinite(cfg.mu->imag())))
    throw InputError("--mu must be finite");
}

namespace {

struct Doc {
  json body;
  std::vector<std::string> notes;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Input {
  json label;
  std::optional<FamilySpec> fam;
  std::optional<CoefficientSet> coeffs;
};

Input resolve(const RunConfig& cfg) {
  Input in;
  if (!cfg.family.empty()) {
    in.fam = family(cfg.family, cfg.params);
    in.coeffs = in.fam->coeffs;
    in.label["family"] = {{"name", in.fam->name}, {"params", in.fam->params}};
  } else {
    in.coeffs = io::load_coefficients(cfg.coeffs_path);
  }
  in.label["coefficients"] = io::coefficients_to_json(*in.coeffs);
  return in;
}

std::string fd(double x) { return io::format_double(x); }
std::string fc(cplx z) { return io::format_complex(z); }

json header_json(const Input& in) {
  json j = in.label;
  j["version"] = io::kVersion;
  return j;
}

Doc cmd_phi(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  d.body = header_json(in);
  const int last = 2 * seq.period() - 1;
  std::vector<cplx> values;
  if (cfg.mu) {
    values = phi_eval_stream(seq, *cfg.mu, static_cast<std::size_t>(last + 1));
    d.body["mu"] = to_json(*cfg.mu);
  }
  json list = json::array();
  d.header = {"n", "degree", "coefficients"};
  if (cfg.mu) d.header.push_back("value");
  for (int n = 0; n <= last; ++n) {
    json e = {{"n", n}, {"coefficients", to_json(seq.phi(n))}};
    std::vector<std::string> row = {std::to_string(n), std::to_string(seq.phi(n).degree()),
                                    seq.phi(n).to_string(12)};
    if (cfg.mu) {
      e["value"] = to_json(values[static_cast<std::size_t>(n)]);
      row.push_back(fc(values[static_cast<std::size_t>(n)]));
    }
    list.push_back(e);
    d.rows.push_back(row);
  }
  d.body["phi"] = list;
  return d;
}

Doc cmd_pn(const Input& in, const PhiSequence& seq) {
  Doc d;
  const int n = seq.period();
  const auto [q, r] = div_rem(seq.phi(2 * n - 1), seq.phi(n - 1));
  const double scale = seq.phi(2 * n - 1).norm2();
  const double rel = scale > 0.0 ? r.norm2() / scale : 0.0;
  const CPoly& pn = seq.pn();
  d.body = header_json(in);
  d.body["pn"] = to_json(pn);
  d.body["phi_nm1"] = to_json(seq.phi(n - 1));
  d.body["relative_remainder"] = rel;
  d.body["period_determinant"] = to_json(seq.coeffs().period_determinant());
  d.notes = {"P_N = " + pn.to_string(12), "relative remainder " + fd(rel)};
  d.header = {"power", "re", "im"};
  for (int k = 0; k <= pn.degree(); ++k)
    d.rows.push_back({std::to_string(k), fd(pn[static_cast<std::size_t>(k)].real()),
                      fd(pn[static_cast<std::size_t>(k)].imag())});
  return d;
}

json report_json(const CriticalReport& rep) {
  json j = {{"pn", to_json(rep.pn)},
            {"phi_nm1", to_json(rep.phi_nm1)},
            {"delta0", to_json(rep.delta0)},
            {"qn", to_json(rep.qn)},
            {"factorized", rep.factorized},
            {"factor_remainder", to_json(rep.factor_remainder)},
            {"theorem_applies", rep.theorem_applies},
            {"residual", to_json(rep.residual)},
            {"warnings", rep.warnings}};
  return j;
}

Doc cmd_critical(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  const CriticalReport rep = critical_values(seq, cfg.tol);
  d.body = header_json(in);
  d.body.update(report_json(rep));
  json list = json::array();
  d.header = {"value", "source", "multiplicity"};
  for (const auto& cv : rep.critical_values) {
    list.push_back(io::critical_value_json(cv));
    d.rows.push_back({fc(cv.value), cv.source(), std::to_string(cv.multiplicity)});
  }
  d.body["critical_values"] = list;
  d.notes = {"Delta_0 = " + rep.delta0.to_string(8)};
  for (const auto& w : rep.warnings) d.notes.push_back("warning: " + w);
  return d;
}

Doc cmd_certify(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  const Certificate c = certify(seq, *cfg.mu, cfg.tol);
  d.body = header_json(in);
  d.body["certificate"] = io::certificate_json(c);
  d.header = {"field", "value"};
  d.rows = {{"mu", fc(c.mu)},
            {"verdict", to_string(c.verdict)},
            {"P_N(mu)", fc(c.pn_at_mu)},
            {"z_plus", fc(c.z_plus)},
            {"z_minus", fc(c.z_minus)},
            {"|z_minus|", fd(std::abs(c.z_minus))},
            {"max_growth", fd(c.max_growth())},
            {"norm_sq", fd(c.norm_sq)},
            {"diagnostics", c.diagnostics}};
  return d;
}

Doc cmd_spectrum(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  const CriticalReport rep = critical_values(seq, cfg.tol);
  const auto certs = discrete_spectrum(seq, rep, cfg.tol);
  d.body = header_json(in);
  d.body.update(report_json(rep));
  json list = json::array(), eig = json::array();
  d.header = {"value", "source", "verdict", "norm_sq", "z_minus"};
  const auto count = static_cast<std::size_t>(4 * seq.period());
  for (const auto& c : certs) {
    list.push_back(io::certificate_json(c));
    d.rows.push_back({fc(c.mu), c.source, to_string(c.verdict), fd(c.norm_sq), fc(c.z_minus)});
    if (c.verdict != Verdict::Eigenvalue) continue;
    const Eigenvector ev = eigenvector(seq, c, count, cfg.tol);
    eig.push_back({{"value", to_json(c.mu)},
                   {"norm_sq", to_json(ev.norm_sq)},
                   {"x", to_json(ev.x)},
                   {"y", to_json(ev.y)},
                   {"residual", to_json(ev.residual)}});
  }
  d.body["critical_values"] = list;
  d.body["eigenvectors"] = eig;
  const auto n_eig = eig.size();
  d.notes = {std::to_string(n_eig) + " eigenvalue(s) among " + std::to_string(certs.size()) +
             " critical value(s)"};
  for (const auto& w : rep.warnings) d.notes.push_back("warning: " + w);
  return d;
}

Doc cmd_support(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  const SupportCurve sc = support_sample(seq, cfg.grid, cfg.tol);
  d.body = header_json(in);
  d.body["pn"] = to_json(seq.pn());
  d.body["theta_grid"] = sc.theta_grid;
  json branches = json::array();
  for (const auto& b : sc.branches) branches.push_back(to_json(b));
  d.body["branches"] = branches;
  json ends = json::array();
  for (const auto& e : sc.endpoints()) ends.push_back({{"value", to_json(e)}, {"radius", std::abs(e)}});
  d.body["endpoints"] = ends;
  if (in.fam && in.fam->name == "parametric") {
    const double lam = lambda_of_alpha(in.fam->params.at(0));
    d.body["lambda"] = lam;
    d.notes.push_back("lambda(alpha) = " + fd(lam));
  }
  d.header = {"theta", "branch", "re", "im"};
  for (std::size_t j = 0; j < sc.theta_grid.size(); ++j)
    for (std::size_t b = 0; b < sc.branches.size(); ++b)
      d.rows.push_back({fd(sc.theta_grid[j]), std::to_string(b), fd(sc.branches[b][j].real()),
                        fd(sc.branches[b][j].imag())});
  return d;
}

json roots_json(const std::vector<Root>& rs) {
  json out = json::array();
  for (const auto& r : rs) out.push_back({{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}});
  return out;
}

Doc cmd_family(const RunConfig& cfg, const Input& in) {
  Doc d;
  const FamilySpec& f = *in.fam;
  const auto& e = f.expect;
  d.body = header_json(in);
  json ex;
  if (e.pn) ex["pn"] = to_json(*e.pn);
  if (e.qn) ex["qn"] = to_json(*e.qn);
  if (e.critical_poly) ex["critical_poly"] = to_json(*e.critical_poly);
  json table = json::array();
  for (const auto& [n, p] : e.phi_table) table.push_back({{"n", n}, {"coefficients", to_json(p)}});
  ex["phi_table"] = table;
  ex["critical_roots"] = roots_json(e.critical_roots);
  ex["eigenvalues"] = to_json(e.eigenvalues);
  json norms = json::array();
  for (double v : e.norms_sq) norms.push_back(to_json(v));
  ex["norms_sq"] = norms;
  d.body["expectations"] = ex;
  d.body["errata"] = e.errata;
  d.header = {"field", "value"};
  if (e.pn) d.rows.push_back({"P_N", e.pn->to_string(12)});
  for (const auto& r : e.critical_roots)
    d.rows.push_back({"critical root", fc(r.value) + " x" + std::to_string(r.multiplicity)});
  for (const auto& z : e.eigenvalues) d.rows.push_back({"eigenvalue", fc(z)});
  for (const auto& s : e.errata) d.rows.push_back({"erratum", s});

  if (f.name == "parametric") {
    const AlphaAnalysis an = parametric_analysis(f.params.at(0), cfg.tol);
    json verdicts = json::array();
    for (auto v : an.verdicts) verdicts.push_back(to_string(v));
    d.body["analysis"] = {
        {"alpha", an.alpha},
        {"mu12", {to_json(an.mu12.first), to_json(an.mu12.second)}},
        {"mu34", {to_json(an.mu34.first), to_json(an.mu34.second)}},
        {"lambda", an.lambda},
        {"lambda_max", lambda_max()},
        {"verdicts", verdicts},
        {"eigenvalue_flags", an.eigenvalue_flags},
        {"closed_form_deviation", to_json(an.closed_form_deviation)},
        {"thresholds",
         {{"alpha1", an.thresholds.alpha1},
          {"alpha2", an.thresholds.alpha2},
          {"alpha3", an.thresholds.alpha3},
          {"bisected", an.thresholds.bisected},
          {"verified", an.thresholds.verified}}}};
    const char* names[] = {"mu1", "mu2", "mu3", "mu4"};
    const cplx mus[] = {an.mu12.first, an.mu12.second, an.mu34.first, an.mu34.second};
    for (std::size_t k = 0; k < 4; ++k)
      d.rows.push_back({names[k], fc(mus[k]) + " " + to_string(an.verdicts[k])});
    d.rows.push_back({"lambda", fd(an.lambda)});
  }
  return d;
}

Doc cmd_oracle(const RunConfig& cfg, const Input& in, const PhiSequence& seq) {
  Doc d;
  const RootSet rs = truncation_oracle(seq, cfg.max_n, cfg.tol);
  const SupportCurve sc = support_sample(seq, cfg.grid, cfg.tol);
  const auto certs = discrete_spectrum(seq, cfg.tol);
  d.body = header_json(in);
  d.body["n"] = cfg.max_n;
  json list = json::array();
  d.header = {"value", "multiplicity", "support_distance"};
  for (const auto& r : rs.roots) {
    const double dist = sc.distance(r.value);
    list.push_back({{"value", to_json(r.value)}, {"multiplicity", r.multiplicity}, {"support_distance", dist}});
    d.rows.push_back({fc(r.value), std::to_string(r.multiplicity), fd(dist)});
  }
  d.body["roots"] = list;
  json near = json::array();
  for (const auto& c : certs) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& r : rs.roots) best = std::min(best, std::abs(r.value - c.mu));
    near.push_back({{"value", to_json(c.mu)}, {"verdict", to_string(c.verdict)}, {"nearest_root", best}});
    d.notes.push_back(to_string(c.verdict) + " " + fc(c.mu) + ": nearest truncation root at " + fd(best));
  }
  d.body["critical_values"] = near;
  return d;
}

Doc cmd_verify(const RunConfig& cfg, bool& all_passed) {
  Doc d;
  const auto checks = regression_suite(cfg.seed, cfg.tol);
  json list = json::array();
  std::size_t failed = 0;
  d.header = {"status", "check", "error", "tolerance"};
  for (const auto& c : checks) {
    failed += !c.passed;
    json e = {{"name", c.name}, {"passed", c.passed}, {"error", to_json(c.error)}, {"tolerance", c.tolerance}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    list.push_back(e);
    d.rows.push_back({c.passed ? "PASS" : "FAIL", c.name, fd(c.error), fd(c.tolerance)});
  }
  all_passed = failed == 0;
  d.body = {{"version", io::kVersion},
            {"seed", cfg.seed},
            {"tol", cfg.tol},
            {"checks", list},
            {"total", checks.size()},
            {"failed", failed}};
  d.notes = {std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed"};
  return d;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string render(const Doc& d, Format f) {
  std::ostringstream os;
  if (f == Format::Json) {
    os << d.body.dump(2) << "\n";
  } else if (f == Format::Csv) {
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_field(cells[k]);
      os << "\n";
    };
    line(d.header);
    for (const auto& r : d.rows) line(r);
  } else {
    for (const auto& n : d.notes) os << n << "\n";
    std::vector<std::size_t> width(d.header.size(), 0);
    for (std::size_t k = 0; k < d.header.size(); ++k) width[k] = d.header[k].size();
    for (const auto& r : d.rows)
      for (std::size_t k = 0; k < r.size() && k < width.size(); ++k) width[k] = std::max(width[k], r[k].size());
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) {
        os << cells[k];
        if (k + 1 < cells.size()) os << std::string(width[k] - cells[k].size() + 2, ' ');
      }
      os << "\n";
    };
    line(d.header);
    for (const auto& r : d.rows) line(r);
  }
  return os.str();
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  RunResult res;
  try {
    validate(cfg);
    Doc d;
    if (cfg.command == Command::Verify) {
      bool ok = false;
      d = cmd_verify(cfg, ok);
      if (!ok) {
        res.exit_code = kVerifyMismatch;
        res.diagnostic = "verify: regression mismatch";
      }
    } else {
      const Input in = resolve(cfg);
      const PhiSequence seq(*in.coeffs);
      switch (cfg.command) {
        case Command::Phi: d = cmd_phi(cfg, in, seq); break;
        case Command::Pn: d = cmd_pn(in, seq); break;
        case Command::Critical: d = cmd_critical(cfg, in, seq); break;
        case Command::Certify: d = cmd_certify(cfg, in, seq); break;
        case Command::Spectrum: d = cmd_spectrum(cfg, in, seq); break;
        case Command::Support: d = cmd_support(cfg, in, seq); break;
        case Command::Family: d = cmd_family(cfg, in); break;
        case Command::Oracle: d = cmd_oracle(cfg, in, seq); break;
        case Command::Verify: break;
      }
    }
    res.output = render(d, cfg.format);
  } catch (const InputError& e) {
    res.exit_code = kBadInput;
    res.diagnostic = std::string("input error: ") + e.what();
  } catch (const std::invalid_argument& e) {
    res.exit_code = kBadInput;
    res.diagnostic = std::string("input error: ") + e.what();
  } catch (const std::exception& e) {
    res.exit_code = kNumericalFailure;
    res.diagnostic = std::string("numerical failure: ") + e.what();
  }
  return res;
}

std::optional<RunConfig> parse_args(int argc, const char* const* argv, std::string& help) {
  CLI::App app{"Discrete spectrum of periodic complex Jacobi matrices", "pjac"};
  RunConfig cfg;
  std::string command, format = "table";
  std::vector<double> mu;
  std::vector<std::string> names;
  for (const auto& [name, c] : kCommands) names.push_back(name);

  app.add_option("command", command, "phi | pn | critical | certify | spectrum | support | family | oracle | verify")
      ->required()
      ->check(CLI::IsMember(names));
  app.add_option("--family", cfg.family, "built-in family name");
  app.add_option("--params", cfg.params, "comma-separated reals")->delimiter(',');
  app.add_option("--coeffs", cfg.coeffs_path, "JSON coefficient file");
  app.add_option("--mu", mu, "query point re,im")->delimiter(',')->expected(1, 2);
  app.add_option("--tol", cfg.tol, "root and certification tolerance");
  app.add_option("--format", format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
  app.add_option("--out", cfg.out_path, "output path (default stdout)");
  app.add_option("--grid", cfg.grid, "support sampling grid size");
  app.add_option("--max-n", cfg.max_n, "truncation size for the oracle");
  app.add_option("--seed", cfg.seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success&) {
    help = app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(e.what());
  }
  cfg.command = parse_command(command);
  cfg.format = parse_format(format);
  if (!mu.empty()) cfg.mu = cplx(mu[0], mu.size() > 1 ? mu[1] : 0.0);
  return cfg;
}

int main(int argc, const char* const* argv) {
  RunConfig cfg;
  try {
    std::string help;
    auto parsed = parse_args(argc, argv, help);
    if (!parsed) {
      std::cout << help;
      return kOk;
    }
    cfg = *parsed;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kBadInput;
  }
  const RunResult res = run(cfg);
  if (!res.diagnostic.empty()) std::cerr << res.diagnostic << "\n";
  if (res.exit_code == kBadInput || res.exit_code == kNumericalFailure) return res.exit_code;
  if (cfg.out_path.empty()) {
    std::cout << res.output;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) {
      std::cerr << "input error: cannot write '" << cfg.out_path << "'\n";
      return kBadInput;
    }
    out << res.output;
  }
  return res.exit_code;
}

}  // namespace pjac::cli
