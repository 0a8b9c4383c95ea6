// Copyright 2026 The nosig Authors
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

#include "nosig/commands.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "nosig/choi_file.hpp"
#include "nosig/counterexample.hpp"

namespace nosig::cli {

namespace {

using json = nlohmann::ordered_json;

struct Check {
  std::string name;
  bool passed;
};

json analysis_json(const AnalysisReport& r) {
  json j;
  j["nosignaling"] = {{"a_not_to_b", r.nosignaling.a_to_b},
                      {"b_not_to_a", r.nosignaling.b_to_a},
                      {"residual_a", r.nosignaling.residual_a},
                      {"residual_b", r.nosignaling.residual_b}};
  j["ppt"] = {{"min_eigenvalue", r.ppt_min_eigenvalue}, {"violated", r.ppt_violated}};
  if (r.chsh_value)
    j["chsh"] = {{"applicable", true},
                 {"value", *r.chsh_value},
                 {"tsirelson_bound", kTsirelsonBound},
                 {"exceeds_tsirelson", r.chsh_exceeds_tsirelson}};
  else
    j["chsh"] = {{"applicable", false}};
  j["extremality"] = {{"kraus_count", r.extremality.kraus_count},
                      {"gram_rank", r.extremality.rank},
                      {"full", r.extremality.full}};
  j["tolerances"] = {{"nosignal", r.tolerances.nosignal},
                     {"ppt", r.tolerances.ppt},
                     {"chsh_slack", r.tolerances.chsh_slack},
                     {"gram_rel", r.tolerances.gram_rel},
                     {"kraus_cutoff", r.tolerances.kraus_cutoff}};
  return j;
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

std::string fixed(double v, int digits = 9) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

void print_analysis(const AnalysisReport& r, std::ostream& out) {
  const auto yes = [](bool b) { return b ? "yes" : "no"; };
  out << "no-signaling (tol " << sci(r.tolerances.nosignal) << "):\n"
      << "  A -/-> B'  " << yes(r.nosignaling.a_to_b) << "  residual " << sci(r.nosignaling.residual_a) << "\n"
      << "  B -/-> A'  " << yes(r.nosignaling.b_to_a) << "  residual " << sci(r.nosignaling.residual_b) << "\n";
  out << "PPT (outputs | inputs): min eigenvalue " << fixed(r.ppt_min_eigenvalue, 12)
      << (r.ppt_violated ? "  -> entangled Choi, not entanglement-breaking\n" : "  -> no PPT violation\n");
  if (r.chsh_value)
    out << "CHSH value " << fixed(*r.chsh_value) << " (Tsirelson bound " << fixed(kTsirelsonBound) << ")"
        << (r.chsh_exceeds_tsirelson ? "  -> not localizable\n" : "  -> bound respected\n");
  else
    out << "CHSH: not applicable to this layout\n";
  out << "extremality: " << r.extremality.kraus_count << " Kraus operators, Gram rank " << r.extremality.rank << "/"
      << r.extremality.kraus_count * r.extremality.kraus_count << (r.extremality.full ? "  -> extremal\n" : "\n");
}

struct ReproduceResult {
  json report;
  AnalysisReport analysis;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<Check> checks;
};

ReproduceResult run_reproduce(const ReproduceOptions& opts) {
  const RAlphaParams p(opts.alpha);
  const auto kraus = build_r_alpha_kraus(p);
  const auto circuit_a = build_r_alpha_circuit(p, SigmaPlacement::OnA);
  const auto circuit_b = build_r_alpha_circuit(p, SigmaPlacement::OnB);
  const auto realized_a = build_realization_cc(r_alpha_realization(p, SigmaPlacement::OnA));
  const auto realized_b = build_realization_cc(r_alpha_realization(p, SigmaPlacement::OnB));

  ReproduceResult r;
  const auto frob = [](const ChannelOperator& x, const ChannelOperator& y) { return (x.choi() - y.choi()).norm(); };
  r.residuals = {{"kraus_vs_circuit_sigma_on_a", frob(kraus, circuit_a)},
                 {"kraus_vs_circuit_sigma_on_b", frob(kraus, circuit_b)},
                 {"circuit_sigma_on_a_vs_sigma_on_b", frob(circuit_a, circuit_b)},
                 {"kraus_vs_realization_b_to_a", frob(kraus, realized_a)},
                 {"kraus_vs_realization_a_to_b", frob(kraus, realized_b)}};
  const bool agree = std::all_of(r.residuals.begin(), r.residuals.end(),
                                 [&](const auto& kv) { return kv.second <= opts.tol; });

  AnalysisTolerances tol;
  tol.nosignal = opts.tol;
  r.analysis = analyze(kraus, r_alpha_party_a(), r_alpha_party_b(), tol);
  const auto& a = r.analysis;
  r.checks = {{"constructions_agree", agree},
              {"nosignaling_a_to_b", a.nosignaling.a_to_b},
              {"nosignaling_b_to_a", a.nosignaling.b_to_a},
              {"not_entanglement_breaking", a.ppt_violated},
              {"not_localizable", a.chsh_exceeds_tsirelson},
              {"extremal", a.extremality.full}};

  json& j = r.report;
  j["alpha"] = p.alpha;
  json cons;
  for (const auto& [name, value] : r.residuals) cons[name] = value;
  cons["tolerance"] = opts.tol;
  j["construction_residuals"] = cons;
  j["analysis"] = analysis_json(a);
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}});
  j["checks"] = checks;
  j["reproduced"] = std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.passed; });
  return r;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os << text;
  if (!os) throw Error("failed writing '" + path.string() + "'");
}

Party resolve_party(const CpMap& map, const std::vector<std::string>& labels) {
  Party p;
  for (const auto& l : labels) {
    const bool in = map.in.contains(l), out = map.out.contains(l);
    if (!in && !out) throw LabelError("unknown subsystem label '" + l + "'");
    if (in) p.in_labels.push_back(l);
    if (out) p.out_labels.push_back(l);
  }
  return p;
}

Party complement_party(const CpMap& map, const Party& other) {
  Party p;
  for (const auto& l : map.in.labels())
    if (std::find(other.in_labels.begin(), other.in_labels.end(), l) == other.in_labels.end()) p.in_labels.push_back(l);
  for (const auto& l : map.out.labels())
    if (std::find(other.out_labels.begin(), other.out_labels.end(), l) == other.out_labels.end())
      p.out_labels.push_back(l);
  return p;
}

}  // namespace

double parse_alpha(std::string_view text) {
  const std::string s(text);
  const auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw ParameterError("cannot parse number '" + s + "'");
    }
    if (used != part.size()) throw ParameterError("cannot parse number '" + s + "'");
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse(s);
  const double den = parse(s.substr(slash + 1));
  if (den == 0) throw ParameterError("zero denominator in '" + s + "'");
  return parse(s.substr(0, slash)) / den;
}

std::string reproduce_report(const ReproduceOptions& opts) { return run_reproduce(opts).report.dump(2) + "\n"; }

int cmd_reproduce(const ReproduceOptions& opts, std::ostream& out, std::ostream& err) {
  ReproduceResult r;
  try {
    r = run_reproduce(opts);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "R_alpha, alpha = " << std::setprecision(17) << opts.alpha << "\n";
  out << "construction residuals (Frobenius, tol " << sci(opts.tol) << "):\n";
  for (const auto& [name, value] : r.residuals) out << "  " << std::left << std::setw(34) << name << sci(value) << "\n";
  print_analysis(r.analysis, out);
  out << "checks:\n";
  for (const auto& c : r.checks) out << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << "\n";

  if (opts.report_path) {
    try {
      write_text(*opts.report_path, r.report.dump(2) + "\n");
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  for (const auto& c : r.checks)
    if (!c.passed) {
      err << "check failed: " << c.name << "\n";
      return kExitCheckFailed;
    }
  out << "all verdicts reproduced\n";
  return kExitOk;
}

int cmd_check(const CheckOptions& opts, std::ostream& out, std::ostream& err) {
  CpMap map;
  Party sender, receiver;
  try {
    map = read_choi_file(opts.file);
    sender = resolve_party(map, opts.sender);
    receiver = opts.receiver.empty() ? complement_party(map, sender) : resolve_party(map, opts.receiver);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto diag = diagnose(map);
  out << "inputs " << map.in << ", outputs " << map.out << "\n";
  if (!diag.completely_positive(opts.tol)) {
    out << "not completely positive: min eigenvalue " << sci(diag.min_eigenvalue) << ", hermiticity residual "
        << sci(diag.hermiticity) << "\n";
    return kExitCheckFailed;
  }
  if (!diag.trace_preserving(opts.tol)) {
    out << "not trace preserving: residual " << sci(diag.tp_residual) << "\n";
    return kExitCheckFailed;
  }
  out << "CPTP: ok (min eigenvalue " << sci(diag.min_eigenvalue) << ", TP residual " << sci(diag.tp_residual) << ")\n";

  AnalysisReport report;
  try {
    AnalysisTolerances tol;
    tol.nosignal = opts.tol;
    report = analyze(ChannelOperator(map, opts.tol), sender, receiver, tol);
  } catch (const LabelError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  print_analysis(report, out);
  if (opts.report_path) {
    json j;
    j["file"] = opts.file.string();
    j["analysis"] = analysis_json(report);
    try {
      write_text(*opts.report_path, j.dump(2) + "\n");
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  return kExitOk;
}

int cmd_export(double alpha, const std::filesystem::path& path, std::ostream& out, std::ostream& err) {
  try {
    const auto channel = build_r_alpha_kraus(RAlphaParams(alpha));
    write_choi_file(path, channel);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  out << "wrote R_alpha (alpha = " << std::setprecision(17) << alpha << ") to " << path.string() << "\n";
  return kExitOk;
}

}  // namespace nosig::cli
