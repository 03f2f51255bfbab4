#include "deflog/lexis.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace deflog::lexis {

namespace {

bool is_word(std::string_view w) {
  if (w.empty() || w.front() < 'a' || w.front() > 'z') return false;
  return std::all_of(w.begin(), w.end(), [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); });
}

bool is_sense_id(std::string_view s) {
  if (s.empty() || s.front() < 'a' || s.front() > 'z') return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_'; });
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join(const std::vector<std::string>& xs, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += xs[i];
  }
  return out;
}

std::string braces(const std::vector<std::string>& xs) { return "{" + join(xs, ", ") + "}"; }

}  // namespace

SenseEntry make_sense(std::string word, std::string sense_id, std::string gloss) {
  if (!is_word(word)) throw std::invalid_argument("bad word '" + word + "'");
  if (!is_sense_id(sense_id)) throw std::invalid_argument("bad sense id '" + sense_id + "'");
  Atom atom(sense_atom_name(word, sense_id));
  return SenseEntry{std::move(word), std::move(sense_id), std::move(gloss), std::move(atom)};
}

std::string sense_atom_name(std::string_view word, std::string_view sense_id) {
  return "sense_" + std::string(word) + "_" + std::string(sense_id);
}

std::string copresence_cue_name(std::string_view word) { return "copresence_cue_" + std::string(word); }

std::optional<SenseRef> parse_sense_atom(std::string_view atom) {
  constexpr std::string_view prefix = "sense_";
  if (!atom.starts_with(prefix)) return std::nullopt;
  atom.remove_prefix(prefix.size());
  const auto us = atom.find('_');
  if (us == std::string_view::npos) return std::nullopt;
  const std::string_view word = atom.substr(0, us);
  const std::string_view sense = atom.substr(us + 1);
  if (!is_word(word) || !is_sense_id(sense)) return std::nullopt;
  return SenseRef{std::string(word), std::string(sense)};
}

std::vector<Default> build_exclusivity_defaults(std::string_view word, const std::vector<SenseEntry>& senses) {
  if (senses.size() < 2) throw std::invalid_argument("exclusivity needs at least two senses of '" + std::string(word) + "'");
  for (const SenseEntry& s : senses)
    if (s.word != word) throw std::invalid_argument("sense '" + s.atom.name() + "' does not belong to '" + std::string(word) + "'");

  const Formula licensed = Formula::Var(copresence_cue_name(word));
  std::vector<Default> out;
  for (std::size_t i = 0; i < senses.size(); ++i) {
    for (std::size_t j = i + 1; j < senses.size(); ++j) {
      const Formula apart = Formula::Not(Formula::And(Formula::Var(senses[i].atom), Formula::Var(senses[j].atom)));
      Default d;
      d.name = "excl_" + std::string(word) + "_" + senses[i].sense_id + "_" + senses[j].sense_id;
      d.prerequisite = Formula::True();
      d.justification = Formula::And(apart, Formula::Not(licensed));
      d.consequent = apart;
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::vector<SenseEntry> examen_inventory() {
  return {
      make_sense("examen", "event", "the exam as a scheduled event"),
      make_sense("examen", "process", "the recurring evaluation process"),
      make_sense("examen", "subject_paper", "paper on which the subject is written"),
      make_sense("examen", "answer_paper", "paper on which students write their answers"),
      make_sense("examen", "info_object", "the exam as an information content"),
  };
}

CorpusEntry make_entry(const ManifestEntry& m, TheoryDocument theory) {
  CorpusEntry e;
  e.id = m.id;
  e.gloss = m.gloss;
  e.theory_path = m.theory_path;
  e.theory = std::move(theory);
  e.gold_present = m.gold;
  e.gold_absent = m.gold_absent;
  e.expected_extension_count = m.expect_extensions;
  return e;
}

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  const std::vector<ManifestEntry> manifest = parse_corpus_manifest(read_file(dir / "manifest.txt"));
  std::vector<CorpusEntry> out;
  for (const ManifestEntry& m : manifest) {
    CorpusEntry e = make_entry(m, {});
    e.theory.reset();
    try {
      e.theory = parse_theory(read_file(dir / m.theory_path));
    } catch (const ParseError& err) {
      e.load_error = m.theory_path + ": " + err.what();
    } catch (const std::exception& err) {
      e.load_error = err.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

InterpretationReport interpret(const CorpusEntry& entry, const EngineConfig& cfg) {
  if (!entry.theory) throw std::invalid_argument("entry '" + entry.id + "' has no theory: " + entry.load_error);
  const DefaultTheory theory = compile_priorities(to_theory(*entry.theory), cfg);
  const std::vector<Extension> exts = extensions(theory, cfg);

  std::vector<Formula> sense_vars;
  for (const Atom& a : theory.atoms())
    if (parse_sense_atom(a.name())) sense_vars.push_back(Formula::Var(a));

  const Reasoner r(theory.atoms(), cfg.solver);
  InterpretationReport rep;
  rep.sentence_id = entry.id;
  rep.no_extension = exts.empty();
  std::set<std::string> copresent;
  std::set<std::map<std::string, std::set<std::string>>> distinct;
  for (const Extension& e : exts) {
    Reading rd;
    rd.generating = e.generating;
    rd.base = e.base;
    rd.trivial = e.trivial;
    const Reasoner::Base b = r.prepare(e.base);
    for (const Formula& v : sense_vars) {
      if (!b.entails(v)) continue;
      const SenseRef ref = *parse_sense_atom(v.atom_name());
      rd.senses[ref.word].insert(ref.sense_id);
      rd.sense_atoms.push_back(v.atom_name());
    }
    for (const auto& [word, ids] : rd.senses)
      if (ids.size() > 1) copresent.insert(word);
    distinct.insert(rd.senses);
    rep.extensions.push_back(std::move(rd));
  }
  rep.ambiguous = distinct.size() > 1;
  rep.copresent.assign(copresent.begin(), copresent.end());
  return rep;
}

EntryResult evaluate_entry(const CorpusEntry& entry, const EngineConfig& cfg) {
  EntryResult res;
  res.id = entry.id;
  res.gloss = entry.gloss;
  if (!entry.theory) {
    res.diffs.push_back("theory not loaded: " + entry.load_error);
    return res;
  }
  try {
    const AtomSet theory_atoms = to_theory(*entry.theory).atoms();
    for (const auto* golds : {&entry.gold_present, &entry.gold_absent}) {
      for (const Formula& g : *golds) {
        for (const Atom& a : atoms_of(g)) {
          if (!theory_atoms.contains(a))
            res.diffs.push_back("gold formula `" + g.to_string() + "` mentions atom outside the theory: " + a.name());
        }
      }
    }
    if (!res.diffs.empty()) return res;

    InterpretationReport rep = interpret(entry, cfg);
    AtomSet u = theory_atoms;
    const Reasoner r(u, cfg.solver);
    if (rep.no_extension && !entry.gold_present.empty()) res.diffs.push_back("no extension");
    for (std::size_t k = 0; k < rep.extensions.size(); ++k) {
      const Reading& rd = rep.extensions[k];
      const Reasoner::Base b = r.prepare(rd.base);
      const std::string which = "extension " + std::to_string(k + 1) + " " + braces(rd.generating);
      for (const Formula& g : entry.gold_present)
        if (!b.entails(g)) res.diffs.push_back("gold `" + g.to_string() + "` not entailed by " + which);
      for (const Formula& g : entry.gold_absent)
        if (b.entails(g)) res.diffs.push_back("gold_absent `" + g.to_string() + "` entailed by " + which);
    }
    if (entry.expected_extension_count && *entry.expected_extension_count != rep.extensions.size()) {
      res.diffs.push_back("expected " + std::to_string(*entry.expected_extension_count) + " extension(s), found " +
                          std::to_string(rep.extensions.size()));
    }
    res.report = std::move(rep);
  } catch (const std::exception& err) {
    res.diffs.push_back(std::string("engine error: ") + err.what());
  }
  res.pass = res.diffs.empty();
  return res;
}

std::size_t CorpusResult::passed() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const EntryResult& e) { return e.pass; }));
}

CorpusResult run_corpus(const std::vector<CorpusEntry>& entries, const EngineConfig& cfg) {
  CorpusResult out;
  for (const CorpusEntry& e : entries) out.entries.push_back(evaluate_entry(e, cfg));
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const EntryResult& a, const EntryResult& b) { return a.id < b.id; });
  return out;
}

namespace {

std::string reading_summary(const Reading& rd) {
  if (rd.senses.empty()) return "-";
  std::vector<std::string> parts;
  for (const auto& [word, ids] : rd.senses) {
    std::vector<std::string> v(ids.begin(), ids.end());
    parts.push_back(word + "=" + (v.size() == 1 ? v.front() : braces(v)));
  }
  return join(parts, " ");
}

}  // namespace

std::string render_table(const CorpusResult& result) {
  std::ostringstream os;
  for (const EntryResult& e : result.entries) {
    os << e.id << "  " << (e.pass ? "PASS" : "FAIL");
    if (e.report) {
      os << "  " << e.report->extensions.size() << " ext";
      for (const Reading& rd : e.report->extensions) os << "  [" << reading_summary(rd) << "]";
      if (!e.report->copresent.empty()) os << "  copresent=" << join(e.report->copresent, ",");
    }
    os << '\n';
    for (const std::string& d : e.diffs) os << "    " << d << '\n';
  }
  os << result.passed() << "/" << result.entries.size() << " passed\n";
  return os.str();
}

std::string render_report(const EntryResult& e) {
  std::ostringstream os;
  os << "sentence " << e.id << ": " << e.gloss << '\n';
  if (e.report) {
    const InterpretationReport& rep = *e.report;
    if (rep.no_extension) os << "no extension\n";
    for (std::size_t k = 0; k < rep.extensions.size(); ++k) {
      const Reading& rd = rep.extensions[k];
      os << "extension " << (k + 1) << " " << braces(rd.generating) << (rd.trivial ? " (trivial)" : "") << '\n';
      os << "  readings: " << reading_summary(rd) << '\n';
    }
    os << "ambiguous: " << (rep.ambiguous ? "yes" : "no") << '\n';
    os << "copresent: " << (rep.copresent.empty() ? "-" : join(rep.copresent, ", ")) << '\n';
  }
  os << "result: " << (e.pass ? "PASS" : "FAIL") << '\n';
  for (const std::string& d : e.diffs) os << "  " << d << '\n';
  return os.str();
}

}  // namespace deflog::lexis
