#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "deflog/dsl.hpp"
#include "deflog/engine.hpp"
#include "deflog/lexis.hpp"

namespace deflog::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  bool json = false;
  std::size_t max_atoms = 64;
  std::size_t max_defaults = 16;
  std::string file;
  std::string formula;
  std::string mode = "skeptical";
  std::string subset;
  std::string dir;
  std::string id;

  EngineConfig engine() const {
    EngineConfig cfg;
    cfg.solver.max_atoms = max_atoms;
    cfg.max_defaults = max_defaults;
    return cfg;
  }
};

// Input problems; always exit 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Parses the file and folds priorities into justifications.
struct LoadedTheory {
  DefaultTheory theory;
  std::vector<std::string> notes;
};

LoadedTheory load_theory(const std::string& path, const EngineConfig& cfg) {
  TheoryDocument doc;
  try {
    doc = parse_theory(read_file(path));
  } catch (const ParseError& e) {
    throw InputError(path + ":" + std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) + ": " +
                     e.reason());
  }
  LoadedTheory out;
  try {
    out.theory = compile_priorities(to_theory(doc), cfg);
  } catch (const TheoryError& e) {
    throw InputError(path + ": " + e.what());
  }
  for (const Default& d : out.theory.defaults()) {
    for (const std::string& hi : d.blocked_by_prerequisite) {
      out.notes.push_back("default " + d.name + " is blocked whenever the prerequisite of " + hi +
                          " holds, even if " + hi + " is itself blocked");
    }
  }
  return out;
}

std::vector<std::string> strings_of(const FormulaSet& base) {
  std::vector<std::string> out;
  for (const Formula& f : base) out.push_back(f.to_string());
  return out;
}

std::string join(const std::vector<std::string>& xs, std::string_view sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string braces(const std::vector<std::string>& xs) { return "{" + join(xs) + "}"; }

// Theory atoms settled by the base, as literals.
std::vector<std::string> settled_literals(const Reasoner& r, const FormulaSet& base) {
  const Reasoner::Base b = r.prepare(base);
  std::vector<std::string> out;
  for (const std::string& a : r.universe()) {
    const Formula v = Formula::Var(a);
    if (b.entails(v)) {
      out.push_back(a);
    } else if (b.entails(Formula::Not(v))) {
      out.push_back("!" + a);
    }
  }
  return out;
}

int cmd_extensions(const Options& o, std::ostream& out) {
  const EngineConfig cfg = o.engine();
  const LoadedTheory lt = load_theory(o.file, cfg);
  const std::vector<Extension> exts = extensions(lt.theory, cfg);
  const Reasoner r(lt.theory.atoms(), cfg.solver);

  if (o.json) {
    ordered_json j;
    j["count"] = exts.size();
    j["extensions"] = ordered_json::array();
    for (const Extension& e : exts) {
      ordered_json x;
      x["generating"] = e.generating;
      x["applied_order"] = e.applied_order;
      x["base"] = strings_of(e.base);
      x["entails"] = settled_literals(r, e.base);
      x["trivial"] = e.trivial;
      j["extensions"].push_back(std::move(x));
    }
    j["notes"] = lt.notes;
    out << j.dump(2) << '\n';
  } else {
    if (exts.empty()) out << "no extension\n";
    for (std::size_t k = 0; k < exts.size(); ++k) {
      const Extension& e = exts[k];
      out << "extension " << (k + 1) << '\n';
      out << "  generating: " << braces(e.generating) << '\n';
      out << "  applied order: " << join(e.applied_order) << '\n';
      out << "  entails: " << join(settled_literals(r, e.base)) << '\n';
      out << "  trivial: " << (e.trivial ? "yes" : "no") << '\n';
    }
    for (const std::string& n : lt.notes) out << "note: " << n << '\n';
  }
  return exts.empty() ? kNoExtension : kOk;
}

int cmd_query(const Options& o, std::ostream& out) {
  const EngineConfig cfg = o.engine();
  Formula f;
  try {
    f = parse_formula(o.formula);
  } catch (const ParseError& e) {
    throw InputError("--formula: column " + std::to_string(e.pos().column) + ": " + e.reason());
  }
  const LoadedTheory lt = load_theory(o.file, cfg);
  const QueryMode mode = o.mode == "credulous" ? QueryMode::kCredulous : QueryMode::kSkeptical;
  const std::vector<Extension> exts = extensions(lt.theory, cfg);
  const Verdict v = query(exts, f, mode, cfg.solver);

  if (o.json) {
    ordered_json j;
    j["formula"] = f.to_string();
    j["mode"] = o.mode;
    j["verdict"] = std::string(to_string(v));
    j["extensions"] = exts.size();
    out << j.dump(2) << '\n';
  } else {
    out << to_string(v) << '\n';
  }
  switch (v) {
    case Verdict::kYes: return kOk;
    case Verdict::kNo: return kNegative;
    case Verdict::kNoExtension: return kNoExtension;
  }
  return kNegative;
}

int cmd_semimono(const Options& o, std::ostream& out) {
  const EngineConfig cfg = o.engine();
  const LoadedTheory lt = load_theory(o.file, cfg);
  std::set<std::string> subset;
  std::stringstream ss(o.subset);
  for (std::string name; std::getline(ss, name, ',');) {
    const auto first = name.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    name = name.substr(first, name.find_last_not_of(" \t") - first + 1);
    if (!lt.theory.find(name)) throw InputError("--subset: unknown default '" + name + "'");
    subset.insert(name);
  }
  const SemiMonoReport rep = check_semi_monotonicity(lt.theory, subset, cfg);

  if (o.json) {
    ordered_json j;
    j["holds"] = rep.holds;
    j["subset"] = std::vector<std::string>(subset.begin(), subset.end());
    if (rep.witness) {
      ordered_json w;
      w["subtheory_extension"] = strings_of(rep.witness->subtheory_extension);
      w["full_extensions"] = ordered_json::array();
      for (const FormulaSet& b : rep.witness->full_extensions) w["full_extensions"].push_back(strings_of(b));
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    out << j.dump(2) << '\n';
  } else if (rep.holds) {
    out << "holds\n";
  } else {
    out << "violated\n";
    out << "  subtheory extension: " << braces(strings_of(rep.witness->subtheory_extension)) << '\n';
    if (rep.witness->full_extensions.empty()) out << "  full theory has no extension\n";
    for (const FormulaSet& b : rep.witness->full_extensions) out << "  full extension: " << braces(strings_of(b)) << '\n';
  }
  return rep.holds ? kOk : kSemiMonoViolated;
}

ordered_json entry_json(const lexis::EntryResult& e) {
  ordered_json j;
  j["id"] = e.id;
  j["gloss"] = e.gloss;
  j["pass"] = e.pass;
  j["extensions"] = ordered_json::array();
  j["generating"] = ordered_json::array();
  ordered_json flags;
  flags["ambiguous"] = false;
  flags["copresent"] = ordered_json::array();
  flags["no_extension"] = false;
  flags["trivial"] = false;
  if (e.report) {
    for (const lexis::Reading& rd : e.report->extensions) {
      j["extensions"].push_back(rd.sense_atoms);
      j["generating"].push_back(rd.generating);
      if (rd.trivial) flags["trivial"] = true;
    }
    flags["ambiguous"] = e.report->ambiguous;
    flags["copresent"] = e.report->copresent;
    flags["no_extension"] = e.report->no_extension;
  }
  j["flags"] = std::move(flags);
  j["diffs"] = e.diffs;
  return j;
}

int cmd_interpret(const Options& o, std::ostream& out) {
  const EngineConfig cfg = o.engine();
  std::vector<lexis::CorpusEntry> entries;
  try {
    entries = lexis::load_corpus(o.dir);
  } catch (const ParseError& e) {
    throw InputError(o.dir + "/manifest.txt:" + std::to_string(e.pos().line) + ":" + std::to_string(e.pos().column) +
                     ": " + e.reason());
  } catch (const std::runtime_error& e) {
    throw InputError(e.what());
  }

  if (!o.id.empty()) {
    const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.id == o.id; });
    if (it == entries.end()) throw InputError("--id: no corpus entry '" + o.id + "'");
    const lexis::EntryResult res = lexis::evaluate_entry(*it, cfg);
    if (o.json) {
      out << entry_json(res).dump(2) << '\n';
    } else {
      out << lexis::render_report(res);
    }
    return res.pass ? kOk : kCorpusFailure;
  }

  const lexis::CorpusResult res = lexis::run_corpus(entries, cfg);
  if (o.json) {
    ordered_json j;
    j["passed"] = res.passed();
    j["total"] = res.entries.size();
    j["entries"] = ordered_json::array();
    for (const auto& e : res.entries) j["entries"].push_back(entry_json(e));
    out << j.dump(2) << '\n';
  } else {
    out << lexis::render_table(res);
  }
  return res.all_passed() ? kOk : kCorpusFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Semi-normal default logic: extensions, queries and lexical interpretation", "deflog"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Machine-readable output");
  app.add_option("--max-atoms", o.max_atoms, "Atom limit for the decision procedure")->check(CLI::PositiveNumber);
  app.add_option("--max-defaults", o.max_defaults, "Default count limit for enumeration")->check(CLI::PositiveNumber);

  auto* ext = app.add_subcommand("extensions", "List the extensions of a theory file");
  ext->add_option("FILE", o.file)->required();

  auto* qry = app.add_subcommand("query", "Skeptical or credulous consequence");
  qry->add_option("FILE", o.file)->required();
  qry->add_option("--formula", o.formula)->required();
  qry->add_option("--mode", o.mode)->check(CLI::IsMember({"skeptical", "credulous"}));

  auto* sm = app.add_subcommand("semimono", "Check semi-monotonicity against a subset of defaults");
  sm->add_option("FILE", o.file)->required();
  sm->add_option("--subset", o.subset, "Comma-separated default names")->required();

  auto* itp = app.add_subcommand("interpret", "Run the corpus in DIR against its gold annotations");
  itp->add_option("DIR", o.dir)->required();
  itp->add_option("--id", o.id, "Single sentence id");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kInputError;
  }

  try {
    if (ext->parsed()) return cmd_extensions(o, out);
    if (qry->parsed()) return cmd_query(o, out);
    if (sm->parsed()) return cmd_semimono(o, out);
    return cmd_interpret(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const LimitError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const TheoryError& e) {
    err << "error: " << e.what() << '\n';
  }
  return kInputError;
}

}  // namespace deflog::cli
