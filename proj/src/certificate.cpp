#include <cstdio>
#include <map>
#include <sstream>

#include "hydra/errors.hpp"
#include "hydra/synth.hpp"
#include "hydra/text_io.hpp"

namespace hydra {

std::string format_certificate(const Certificate& c, bool with_timing) {
  std::ostringstream out;
  out << "certificate v1\n";
  out << "witnesses: " << c.witness_set << "\n";
  out << "measure: " << measure_name(c.measure) << "\n";
  out << "claimed_bound: " << c.claimed_bound << "\n";
  out << "var_bound: " << c.var_bound << "\n";
  out << "length_cap: " << c.length_cap << "\n";
  out << "language: " << language_name(c.language) << "\n";
  out << "verdict: " << verdict_name(c.verdict) << "\n";
  out << "scope: " << (c.full_proof ? "full" : "capped") << "\n";
  out << "counterexample: " << (c.counterexample ? print(*c.counterexample) : "-") << "\n";
  if (c.minimum) {
    out << "minimum_found: " << c.minimum->measures.get(c.measure) << "\n";
    out << "minimum_formula: " << print(c.minimum->formula) << "\n";
  } else {
    out << "minimum_found: -\n";
    out << "minimum_formula: -\n";
  }
  out << "formulas_enumerated: " << c.stats.formulas_enumerated << "\n";
  out << "distinct_denotations: " << c.stats.distinct_denotations << "\n";
  out << "completed_length: " << c.stats.completed_length << "\n";
  if (!c.note.empty()) out << "note: " << c.note << "\n";
  if (with_timing) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", c.stats.seconds);
    out << "wall_time_s: " << buf << "\n";
  }
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  std::map<std::string, std::string> fields;
  auto lines = split_lines(text);
  if (lines.empty() || lines[0] != "certificate v1") throw InputError("not a certificate");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::size_t colon = lines[i].find(": ");
    if (colon == std::string::npos) throw InputError("malformed certificate line: " + lines[i]);
    fields[lines[i].substr(0, colon)] = lines[i].substr(colon + 2);
  }
  auto need = [&](const std::string& k) -> const std::string& {
    auto it = fields.find(k);
    if (it == fields.end()) throw InputError("certificate lacks '" + k + "'");
    return it->second;
  };
  Certificate c;
  c.witness_set = need("witnesses");
  auto m = parse_measure(need("measure"));
  if (!m) throw InputError("unknown measure in certificate");
  c.measure = *m;
  c.claimed_bound = std::stoi(need("claimed_bound"));
  c.var_bound = std::stoi(need("var_bound"));
  c.length_cap = std::stoi(need("length_cap"));
  auto lang = parse_language(need("language"));
  if (!lang) throw InputError("unknown language in certificate");
  c.language = *lang;
  const std::string& v = need("verdict");
  if (v == "PROVED") c.verdict = Certificate::Verdict::Proved;
  else if (v == "REFUTED") c.verdict = Certificate::Verdict::Refuted;
  else if (v == "INCONCLUSIVE") c.verdict = Certificate::Verdict::Inconclusive;
  else throw InputError("unknown verdict '" + v + "'");
  c.full_proof = need("scope") == "full";
  if (const std::string& ce = need("counterexample"); ce != "-") c.counterexample = parse(ce);
  if (const std::string& mf = need("minimum_formula"); mf != "-") {
    Formula f = parse(mf);
    c.minimum = Separator{f, measure_all(f)};
  }
  c.stats.formulas_enumerated = std::stoull(need("formulas_enumerated"));
  c.stats.distinct_denotations = std::stoull(need("distinct_denotations"));
  c.stats.completed_length = std::stoi(need("completed_length"));
  if (auto it = fields.find("note"); it != fields.end()) c.note = it->second;
  if (auto it = fields.find("wall_time_s"); it != fields.end()) c.stats.seconds = std::stod(it->second);
  return c;
}

}  // namespace hydra
