// Command-line front end. Exit codes: 0 ok, 1 failing reproduce rows,
// 2 usage or input errors, 3 resource caps.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hydra/colouring.hpp"
#include "hydra/errors.hpp"
#include "hydra/formula.hpp"
#include "hydra/gallery.hpp"
#include "hydra/game.hpp"
#include "hydra/kripke.hpp"
#include "hydra/reproduce.hpp"
#include "hydra/synth.hpp"
#include "hydra/text_io.hpp"
#include "hydra/universe.hpp"

using namespace hydra;

namespace {

constexpr int kUsage = 2;
constexpr int kResource = 3;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Language language_arg(const std::string& s) {
  auto l = parse_language(s);
  if (!l) throw Usage("unknown language '" + s + "' (basic or universal)");
  return *l;
}

MeasureKind measure_arg(const std::string& s, Language lang) {
  auto m = parse_measure(s);
  if (!m) throw Usage("unknown measure '" + s + "'");
  if (!applicable(*m, lang)) throw Usage("measure '" + s + "' does not apply to the " + std::string(language_name(lang)) + " language");
  return *m;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    write_text_file(path, text);
}

std::string stats_text(const EnumStats& s) {
  std::ostringstream o;
  o << "formulas_enumerated: " << s.formulas_enumerated << "\n"
    << "distinct_denotations: " << s.distinct_denotations << "\n"
    << "completed_length: " << s.completed_length << "\n";
  return o.str();
}

std::string measures_text(const MeasureVector& m, Language lang) {
  std::string out;
  for (MeasureKind k : applicable_measures(lang)) out += measure_name(k) + "=" + std::to_string(m.get(k)) + " ";
  if (!out.empty()) out.pop_back();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hydra: modal formula complexity toolkit"};
  app.require_subcommand(1);
  std::function<int()> action;

  // eval
  std::string model_file, formula_text, lang_text = "universal";
  std::optional<unsigned> point;
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a formula at a point of a model");
  eval_cmd->add_option("--model", model_file, "pointed-model file")->required();
  eval_cmd->add_option("--point", point, "overrides the file's point");
  eval_cmd->add_option("--formula", formula_text, "formula text")->required();
  eval_cmd->callback([&] {
    action = [&] {
      PointedModel pm = parse_pointed_model(read_text_file(model_file));
      if (point) pm.point = *point;
      if (pm.point >= pm.model.size()) throw Usage("point out of range");
      std::cout << (eval(pm.model, pm.point, parse(formula_text)) ? "TRUE" : "FALSE") << "\n";
      return 0;
    };
  });

  // valid
  std::string frame_spec;
  int cap_bits = 24;
  auto* valid_cmd = app.add_subcommand("valid", "check frame validity");
  valid_cmd->add_option("--frame", frame_spec, "frame file or builtin:NAME")->required();
  valid_cmd->add_option("--formula", formula_text, "formula text")->required();
  valid_cmd->add_option("--cap-bits", cap_bits, "limit on states x variables");
  valid_cmd->callback([&] {
    action = [&] {
      std::cout << (frame_valid(load_frame(frame_spec), parse(formula_text), cap_bits) ? "VALID" : "NOT VALID") << "\n";
      return 0;
    };
  });

  // bisim
  std::string file_a, file_b;
  auto* bisim_cmd = app.add_subcommand("bisim", "decide bisimilarity of two pointed models");
  bisim_cmd->add_option("--a", file_a, "first pointed-model file")->required();
  bisim_cmd->add_option("--b", file_b, "second pointed-model file")->required();
  bisim_cmd->add_option("--language", lang_text, "basic or universal");
  bisim_cmd->callback([&] {
    action = [&] {
      const bool same = bisimilar(parse_pointed_model(read_text_file(file_a)),
                                  parse_pointed_model(read_text_file(file_b)), language_arg(lang_text));
      std::cout << (same ? "BISIMILAR" : "NOT BISIMILAR") << "\n";
      return 0;
    };
  });

  // colour
  int colours = 0;
  auto* colour_cmd = app.add_subcommand("colour", "find a proper n-colouring");
  colour_cmd->add_option("--frame", frame_spec, "frame file or builtin:NAME")->required();
  colour_cmd->add_option("--n", colours, "number of colours")->required()->check(CLI::PositiveNumber);
  colour_cmd->callback([&] {
    action = [&] {
      auto c = colour(load_frame(frame_spec), colours);
      if (!c) {
        std::cout << "UNCOLOURABLE\n";
        return 0;
      }
      std::cout << "COLOURABLE";
      for (int x : *c) std::cout << " " << x;
      std::cout << "\n";
      return 0;
    };
  });

  // noncol
  int emit_n = 0;
  auto* noncol_cmd = app.add_subcommand("noncol", "the non-colourability formula");
  noncol_cmd->add_option("--emit", emit_n, "print the formula for n")->check(CLI::PositiveNumber);
  noncol_cmd->add_option("--check", frame_spec, "frame to test the equivalence on");
  noncol_cmd->add_option("--n", colours, "number of colours for --check")->check(CLI::PositiveNumber);
  noncol_cmd->callback([&] {
    action = [&] {
      if (!emit_n && frame_spec.empty()) throw Usage("noncol needs --emit or --check");
      if (emit_n) std::cout << print(phi_n(emit_n)) << "\n";
      if (!frame_spec.empty()) {
        if (colours < 1) throw Usage("--check needs --n");
        const Frame f = load_frame(frame_spec);
        const bool v = frame_valid(f, phi_n(colours), cap_bits);
        const bool c = is_n_colourable(f, colours);
        std::cout << "valid=" << (v ? "yes" : "no") << " colourable=" << (c ? "yes" : "no") << " "
                  << (v == !c ? "EQUIVALENT" : "MISMATCH") << "\n";
        return v == !c ? 0 : 1;
      }
      return 0;
    };
  });

  // synth
  std::vector<std::string> left_files, right_files;
  std::string witness_spec, measure_text = "length";
  int vars = 1, length_cap = 6;
  auto* synth_cmd = app.add_subcommand("synth", "smallest separating formula by enumeration");
  synth_cmd->add_option("--left", left_files, "pointed-model files that must satisfy the formula");
  synth_cmd->add_option("--right", right_files, "pointed-model files that must refute it");
  synth_cmd->add_option("--witnesses", witness_spec, "separate frames instead: witness file or builtin:NAME");
  synth_cmd->add_option("--measure", measure_text, "measure to minimize");
  synth_cmd->add_option("--vars", vars, "variables p1..pk")->check(CLI::NonNegativeNumber);
  synth_cmd->add_option("--length-cap", length_cap, "largest Length enumerated")->check(CLI::PositiveNumber);
  synth_cmd->add_option("--language", lang_text, "basic or universal");
  synth_cmd->callback([&] {
    action = [&] {
      const Language lang = language_arg(lang_text);
      const MeasureKind m = measure_arg(measure_text, lang);
      std::optional<Separator> best;
      EnumStats stats;
      if (!witness_spec.empty()) {
        if (!left_files.empty() || !right_files.empty()) throw Usage("--witnesses excludes --left/--right");
        FrameSearch s = min_frame_separator(load_witnesses(witness_spec), m, vars, length_cap, lang);
        if (!s.exhausted) {
          std::cout << "INCOMPLETE: " << s.note << "\n" << stats_text(s.stats);
          return kResource;
        }
        best = s.best;
        stats = s.stats;
      } else {
        if (left_files.empty() && right_files.empty()) throw Usage("synth needs --left/--right or --witnesses");
        UniverseBuilder b;
        for (const auto& f : left_files) b.add_pointed(parse_pointed_model(read_text_file(f)));
        for (const auto& f : right_files) b.add_pointed(parse_pointed_model(read_text_file(f)));
        const Universe u = b.build();
        Bits l = u.empty_set(), r = u.empty_set();
        for (std::size_t k = 0; k < u.designated().size(); ++k)
          (k < left_files.size() ? l : r).set(u.designated()[k]);
        if (l.intersects(r)) {
          std::cout << "NONE\n";
          return 0;
        }
        best = min_separating(u, l, r, m, vars, length_cap, lang, &stats);
      }
      if (best)
        std::cout << print(best->formula) << "\n" << measures_text(best->measures, lang) << "\n";
      else
        std::cout << "NONE\n";
      std::cout << stats_text(stats);
      return 0;
    };
  });

  // game
  int budget = 0;
  std::string tree_file, engine_text = "auto";
  auto* game_cmd = app.add_subcommand("game", "play the frame game with a greedy Hydra");
  game_cmd->add_option("--witnesses", witness_spec, "witness file or builtin:NAME")->required();
  game_cmd->add_option("--measure", measure_text, "measure to minimize");
  game_cmd->add_option("--vars", vars, "variables p1..pk")->check(CLI::NonNegativeNumber);
  game_cmd->add_option("--budget", budget, "find trees of cost below this")->required()->check(CLI::PositiveNumber);
  game_cmd->add_option("--language", lang_text, "basic or universal");
  game_cmd->add_option("--engine", engine_text, "auto, exhaustive or retrograde");
  game_cmd->add_option("--emit-tree", tree_file, "write the tree rendering here");
  game_cmd->callback([&] {
    action = [&] {
      const Language lang = language_arg(lang_text);
      const MeasureKind m = measure_arg(measure_text, lang);
      GameOptions go;
      if (engine_text == "exhaustive")
        go.engine = GameEngine::Exhaustive;
      else if (engine_text == "retrograde")
        go.engine = GameEngine::Retrograde;
      else if (engine_text != "auto")
        throw Usage("unknown engine '" + engine_text + "'");
      auto r = fgf_min_cost(load_witnesses(witness_spec), m, vars, budget, lang, go);
      if (!r) {
        std::cout << "NO TREE below budget " << budget << "\n";
        return 0;
      }
      std::cout << "cost: " << r->cost << "\n"
                << "formula: " << print(psi_of_tree(r->tree)) << "\n"
                << "nodes: " << node_count(r->tree) << "\n"
                << "verified: " << (verify_closed_tree(r->tree, lang) ? "yes" : "no") << "\n";
      for (std::size_t k = 0; k < r->hercules_choice.size(); ++k)
        std::cout << "hercules_choice " << k << ":\n" << format_pointed_model(r->hercules_choice[k]);
      if (!tree_file.empty()) write_text_file(tree_file, render_tree(r->tree));
      return 0;
    };
  });

  // certify
  int bound = 0, cert_cap = 0;
  std::string out_file;
  bool no_timing = false;
  auto* cert_cmd = app.add_subcommand("certify", "certify a lower bound on witness frames");
  cert_cmd->add_option("--witnesses", witness_spec, "witness file or builtin:NAME")->required();
  cert_cmd->add_option("--measure", measure_text, "measure");
  cert_cmd->add_option("--bound", bound, "claimed lower bound")->required()->check(CLI::PositiveNumber);
  cert_cmd->add_option("--vars", vars, "variables p1..pk")->check(CLI::NonNegativeNumber);
  cert_cmd->add_option("--length-cap", cert_cap, "largest Length enumerated (default from the bound)");
  cert_cmd->add_option("--language", lang_text, "basic or universal");
  cert_cmd->add_option("--out", out_file, "certificate file");
  cert_cmd->add_flag("--no-timing", no_timing, "omit wall time");
  cert_cmd->callback([&] {
    action = [&] {
      const Language lang = language_arg(lang_text);
      Certificate c = certify_bound(load_witnesses(witness_spec), measure_arg(measure_text, lang), bound, vars,
                                    cert_cap, lang);
      const std::string text = format_certificate(c, !no_timing);
      emit(text, out_file);
      if (!out_file.empty()) std::cout << verdict_name(c.verdict) << "\n";
      return c.verdict == Certificate::Verdict::Inconclusive ? kResource : 0;
    };
  });

  // export
  auto* export_cmd = app.add_subcommand("export", "write a witness set in file form");
  export_cmd->add_option("--witnesses", witness_spec, "witness file or builtin:NAME")->required();
  export_cmd->add_option("--out", out_file, "output file");
  export_cmd->callback([&] {
    action = [&] {
      emit(format_witness_file(load_witnesses(witness_spec)), out_file);
      return 0;
    };
  });

  // reproduce
  std::uint64_t seed = ReproduceOptions{}.seed;
  std::vector<int> only;
  auto* repro_cmd = app.add_subcommand("reproduce", "run every acceptance check and print the report");
  repro_cmd->add_option("--seed", seed, "seed for the randomized rows");
  repro_cmd->add_option("--only", only, "row ids to run")->check(CLI::Range(1, 10));
  repro_cmd->add_option("--out", out_file, "also write the report here");
  repro_cmd->add_flag("--no-timing", no_timing, "omit wall times");
  repro_cmd->callback([&] {
    action = [&] {
      ReproduceReport r = reproduce({seed, only});
      const std::string text = format_report(r, !no_timing);
      std::cout << text;
      if (!out_file.empty()) write_text_file(out_file, text);
      return r.all_pass() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    return action();
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "formula error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}
