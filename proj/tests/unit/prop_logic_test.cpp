#include <doctest.h>

#include <random>

#include "deflog/cnf.hpp"
#include "deflog/dsl.hpp"
#include "deflog/formula.hpp"
#include "deflog/kernels/bitops.hpp"
#include "deflog/solver.hpp"
#include "dpll.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace deflog;
using deflog::testing::Rng;

namespace {

Formula F(std::string_view s) { return parse_formula(s); }

std::set<std::string> names(const AtomSet& as) {
  std::set<std::string> out;
  for (const Atom& a : as) out.insert(a.name());
  return out;
}

// Clause set back to a formula; auxiliary variables become ordinary atoms.
Formula clauses_formula(const ClauseSet& cs) {
  std::vector<Formula> conj;
  for (const Clause& c : cs.clauses) {
    Formula d = Formula::False();
    bool first = true;
    for (const Literal& l : c) {
      // Aux names are not valid atoms; rename for evaluation.
      std::string name = is_aux_name(l.atom) ? "aux" + l.atom.substr(kAuxPrefix.size()) : l.atom;
      Formula lit = Formula::Var(name);
      if (!l.positive) lit = Formula::Not(lit);
      d = first ? lit : Formula::Or(d, lit);
      first = false;
    }
    conj.push_back(d);
  }
  return Formula::Conjunction(conj);
}

}  // namespace

TEST_CASE("atom names follow the identifier rule") {
  CHECK(is_valid_atom_name("p"));
  CHECK(is_valid_atom_name("sense_examen_event"));
  CHECK(is_valid_atom_name("aB9_"));
  CHECK_FALSE(is_valid_atom_name(""));
  CHECK_FALSE(is_valid_atom_name("P"));
  CHECK_FALSE(is_valid_atom_name("9a"));
  CHECK_FALSE(is_valid_atom_name("_ts1"));
  CHECK_FALSE(is_valid_atom_name("a-b"));
  CHECK_FALSE(is_valid_atom_name("true"));
  CHECK_THROWS(Atom("Bad"));
  CHECK(Atom("p") == Atom("p"));
  CHECK(Atom("p") != Atom("q"));
}

TEST_CASE("atoms_of") {
  CHECK(atoms_of(Formula::True()).empty());
  CHECK(names(atoms_of(F("p & !q"))) == std::set<std::string>{"p", "q"});
  CHECK(names(atoms_of(F("(p -> q) <-> p"))) == std::set<std::string>{"p", "q"});
}

TEST_CASE("printing uses minimal parentheses") {
  CHECK(F("p & q").to_string() == "p & q");
  CHECK(F("(p & q) | r").to_string() == "p & q | r");
  CHECK(F("p & (q | r)").to_string() == "p & (q | r)");
  CHECK(F("p -> q -> r").to_string() == "p -> q -> r");
  CHECK(F("(p -> q) -> r").to_string() == "(p -> q) -> r");
  CHECK(F("p <-> q <-> r").to_string() == "p <-> q <-> r");
  CHECK(F("p <-> (q <-> r)").to_string() == "p <-> (q <-> r)");
  CHECK(F("!(p & q)").to_string() == "!(p & q)");
  CHECK(F("!!p").to_string() == "!!p");
  CHECK(F("true & !false").to_string() == "true & !false");
}

TEST_CASE("print/parse is structural identity on random formulas") {
  Rng rng(11);
  const auto atoms = testing::atom_pool(5);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = testing::random_formula(rng, atoms, 5, true);
    REQUIRE(F(f.to_string()) == f);
  }
}

TEST_CASE("FormulaSet keeps insertion order and drops structural duplicates") {
  FormulaSet s;
  CHECK(s.insert(F("q")));
  CHECK(s.insert(F("p")));
  CHECK_FALSE(s.insert(F("q")));
  CHECK(s.insert(F("p & q")));
  CHECK_FALSE(s.insert(F("(p & q)")));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == F("q"));
  CHECK(s[1] == F("p"));
  CHECK(s.contains(F("p & q")));
  CHECK_FALSE(s.contains(F("q & p")));
}

TEST_CASE("conjuncts flatten nested conjunctions") {
  const auto cs = F("a & (b & c) & !d").conjuncts();
  REQUIRE(cs.size() == 4);
  CHECK(cs[3] == F("!d"));
}

TEST_CASE("to_cnf examples") {
  CHECK(to_string(to_cnf(F("p"))) == "{{p}}");
  CHECK(to_string(to_cnf(F("p <-> q"))) == "{{!p, q}, {p, !q}}");
  CHECK(to_cnf(F("true")).clauses.empty());
  const ClauseSet f = to_cnf(F("false"));
  REQUIRE(f.clauses.size() == 1);
  CHECK(f.clauses[0].empty());
}

TEST_CASE("structural CNF is equivalent to its input") {
  Rng rng(3);
  const auto atoms = testing::atom_pool(4);
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, atoms, 4, true);
    const ClauseSet cs = to_cnf(f);
    if (cs.definitional()) continue;
    const Formula g = clauses_formula(cs);
    INFO(f.to_string());
    CHECK(testing::tt_equal({f}, {g}));
  }
}

TEST_CASE("definitional CNF is equisatisfiable and projects to the input's models") {
  Rng rng(5);
  const auto atoms = testing::atom_pool(4);
  CnfOptions opts;
  opts.force_definitional = true;
  for (int i = 0; i < 300; ++i) {
    const Formula f = testing::random_formula(rng, atoms, 3, true);
    const ClauseSet cs = to_cnf(f, opts);
    for (const Clause& c : cs.clauses)
      for (const Literal& l : c) CHECK((is_aux_name(l.atom) || is_valid_atom_name(l.atom)));
    const Formula g = clauses_formula(cs);
    INFO(f.to_string());
    CHECK(testing::tt_satisfiable({f}) == testing::tt_satisfiable({g}));
    // Every model of the clauses, restricted to the original atoms, satisfies f.
    CHECK(testing::tt_entails({g}, f));
  }
}

TEST_CASE("large formulas fall back to definitional CNF") {
  // (a0 & b0) | ... | (a9 & b9) distributes to 2^10 clauses.
  std::vector<Formula> terms;
  for (int i = 0; i < 10; ++i) {
    terms.push_back(Formula::And(Formula::Var("a" + std::to_string(i)), Formula::Var("b" + std::to_string(i))));
  }
  Formula f = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) f = Formula::Or(f, terms[i]);
  const ClauseSet cs = to_cnf(f);
  CHECK(cs.definitional());
  CHECK(cs.clauses.size() < 256);
}

TEST_CASE("satisfiability and entailment examples") {
  CHECK_FALSE(is_satisfiable({F("p"), F("!p")}));
  CHECK(is_satisfiable({}));
  CHECK(entails({F("p"), F("p -> q")}, F("q")));
  CHECK_FALSE(entails({}, F("p")));
  CHECK(entails({}, F("p | !p")));
  CHECK(entails({F("false")}, F("anything")));
  CHECK(bases_equal({F("p & q")}, {F("p"), F("q")}));
  CHECK_FALSE(bases_equal({F("p")}, {F("q")}));
  CHECK(bases_equal({F("p"), F("p -> q")}, {F("p"), F("q")}));
}

TEST_CASE("atom limit") {
  FormulaSet big;
  for (int i = 0; i < 65; ++i) big.insert(Formula::Var("v" + std::to_string(i)));
  CHECK_THROWS_AS(is_satisfiable(big), LimitError);
  SolverConfig cfg;
  cfg.max_atoms = 4;
  CHECK_THROWS_AS(is_satisfiable({F("a & b & c & d & e")}, cfg), LimitError);
  CHECK(is_satisfiable({F("a & b & c & d")}, cfg));
}

TEST_CASE("entailment agrees with the truth-table oracle on random bases") {
  Rng rng(17);
  SolverConfig dpll;
  dpll.strategy = Strategy::kDpll;
  for (int i = 0; i < 400; ++i) {
    const auto atoms = testing::atom_pool(testing::pick(rng, 1, 12));
    std::vector<Formula> base;
    for (std::size_t k = testing::pick(rng, 0, 4); k > 0; --k) base.push_back(testing::random_formula(rng, atoms, 3));
    const Formula q = testing::random_formula(rng, atoms, 3);
    const bool expect = testing::tt_entails(base, q);
    INFO(q.to_string());
    CHECK(entails(FormulaSet(base), q) == expect);
    CHECK(entails(FormulaSet(base), q, dpll) == expect);
  }
}

TEST_CASE("random 3-CNF satisfiability agrees with the oracle") {
  Rng rng(23);
  SolverConfig dpll;
  dpll.strategy = Strategy::kDpll;
  for (int i = 0; i < 200; ++i) {
    const auto atoms = testing::atom_pool(testing::pick(rng, 3, 12));
    // Around the 4.26 clause/variable ratio so both answers occur.
    const Formula f = testing::random_3cnf(rng, atoms, atoms.size() * 4 + testing::pick(rng, 0, 4));
    const bool expect = testing::tt_satisfiable({f});
    CHECK(is_satisfiable({f}) == expect);
    CHECK(is_satisfiable({f}, dpll) == expect);
  }
}

TEST_CASE("entails(B, f) and entails(B, !f) never both hold on satisfiable B") {
  Rng rng(29);
  for (int i = 0; i < 200; ++i) {
    const auto atoms = testing::atom_pool(testing::pick(rng, 1, 8));
    FormulaSet base;
    for (std::size_t k = testing::pick(rng, 1, 3); k > 0; --k) base.insert(testing::random_formula(rng, atoms, 2));
    if (!is_satisfiable(base)) continue;
    const Formula q = testing::random_formula(rng, atoms, 2);
    CHECK_FALSE((entails(base, q) && entails(base, Formula::Not(q))));
  }
}

TEST_CASE("bases_equal is an equivalence on satisfiable bases") {
  Rng rng(31);
  const auto atoms = testing::atom_pool(3);
  std::vector<FormulaSet> bases;
  while (bases.size() < 25) {
    FormulaSet b;
    for (std::size_t k = testing::pick(rng, 1, 2); k > 0; --k) b.insert(testing::random_formula(rng, atoms, 2));
    if (is_satisfiable(b)) bases.push_back(b);
  }
  for (const auto& a : bases) {
    CHECK(bases_equal(a, a));
    for (const auto& b : bases) {
      CHECK(bases_equal(a, b) == bases_equal(b, a));
      if (!bases_equal(a, b)) continue;
      for (const auto& c : bases)
        if (bases_equal(b, c)) CHECK(bases_equal(a, c));
    }
  }
}

TEST_CASE("Reasoner answers consistently across strategies") {
  Rng rng(37);
  SolverConfig dpll;
  dpll.strategy = Strategy::kDpll;
  for (int i = 0; i < 100; ++i) {
    const auto atoms = testing::atom_pool(6);
    AtomSet universe;
    for (const auto& a : atoms) universe.insert(Atom(a));
    const Reasoner tt(universe);
    const Reasoner dp(universe, dpll);
    CHECK(tt.uses_truth_table());
    CHECK_FALSE(dp.uses_truth_table());
    FormulaSet base;
    for (std::size_t k = testing::pick(rng, 0, 3); k > 0; --k) base.insert(testing::random_formula(rng, atoms, 2));
    const auto a = tt.prepare(base);
    const auto b = dp.prepare(base);
    CHECK(a.consistent() == b.consistent());
    for (int j = 0; j < 5; ++j) {
      const Formula q = testing::random_formula(rng, atoms, 2);
      CHECK(a.entails(q) == b.entails(q));
      CHECK(a.consistent_with(q) == b.consistent_with(q));
    }
  }
}

TEST_CASE("Reasoner rejects formulas outside its universe") {
  const Reasoner r({Atom("p")});
  CHECK_THROWS_AS(r.prepare(FormulaSet{F("q")}), std::invalid_argument);
}

TEST_CASE("DPLL on hand-made clause sets") {
  SUBCASE("pigeonhole 3 into 2 is unsat") {
    // p(i,j): pigeon i in hole j -> var 2*i + j + 1
    detail::DpllSolver s(6);
    for (int i = 0; i < 3; ++i) {
      const int c[] = {2 * i + 1, 2 * i + 2};
      s.add_clause(c);
    }
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const int c[] = {-(2 * a + j + 1), -(2 * b + j + 1)};
          s.add_clause(c);
        }
    CHECK_FALSE(s.solve());
  }
  SUBCASE("model satisfies every clause") {
    detail::DpllSolver s(3);
    const std::vector<std::vector<int>> cs = {{1, 2}, {-1, 3}, {-2, -3}, {-3, 1}};
    for (const auto& c : cs) s.add_clause(c);
    REQUIRE(s.solve());
    for (const auto& c : cs) {
      bool sat = false;
      for (int l : c) sat = sat || (s.model_value(std::abs(l)) == (l > 0));
      CHECK(sat);
    }
  }
  SUBCASE("empty clause") {
    detail::DpllSolver s(1);
    s.add_clause(std::span<const int>{});
    CHECK_FALSE(s.solve());
  }
}

TEST_CASE("variable columns enumerate assignments") {
  std::vector<kernels::Word> col(4);
  for (unsigned var = 0; var < 8; ++var) {
    kernels::fill_variable_column(col, var);
    for (unsigned row = 0; row < 256; ++row) {
      const bool bit = (col[row / 64] >> (row % 64)) & 1u;
      CHECK(bit == static_cast<bool>((row >> var) & 1u));
    }
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const kernels::BitKernels& ref = kernels::scalar_kernels();
  const kernels::BitKernels* simd = kernels::avx2_kernels();
  if (simd == nullptr) {
    MESSAGE("AVX2 kernels unavailable on this machine; scalar only");
    return;
  }
  CHECK(simd->isa == "avx2");
  Rng rng(41);
  std::uniform_int_distribution<kernels::Word> word;
  for (std::size_t n : {1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 33, 64, 512}) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<kernels::Word> a(n), b(n);
      for (auto& w : a) w = word(rng);
      for (auto& w : b) w = word(rng);
      if (trial % 4 == 1) b = a;                       // equal inputs
      if (trial % 4 == 2) std::fill(b.begin(), b.end(), ~kernels::Word{0});
      if (trial % 4 == 3) {                            // a is a subset of b
        for (std::size_t i = 0; i < n; ++i) b[i] |= a[i];
      }
      std::vector<kernels::Word> x(n), y(n);
      ref.and_words(x, a, b), simd->and_words(y, a, b);
      CHECK(x == y);
      ref.or_words(x, a, b), simd->or_words(y, a, b);
      CHECK(x == y);
      ref.not_words(x, a), simd->not_words(y, a);
      CHECK(x == y);
      ref.implies_words(x, a, b), simd->implies_words(y, a, b);
      CHECK(x == y);
      ref.iff_words(x, a, b), simd->iff_words(y, a, b);
      CHECK(x == y);
      CHECK(ref.intersects(a, b) == simd->intersects(a, b));
      CHECK(ref.subset_of(a, b) == simd->subset_of(a, b));
      CHECK(ref.subset_of(b, a) == simd->subset_of(b, a));
      CHECK(ref.popcount(a) == simd->popcount(a));

      // In-place use: dst aliasing the first input.
      x = a, y = a;
      ref.and_words(x, x, b), simd->and_words(y, y, b);
      CHECK(x == y);
    }
  }
  CHECK(std::string_view(kernels::active_kernels().isa).size() > 0);
}

TEST_CASE("scalar kernels against plain loops") {
  const kernels::BitKernels& k = kernels::scalar_kernels();
  Rng rng(43);
  std::uniform_int_distribution<kernels::Word> word;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = testing::pick(rng, 1, 9);
    std::vector<kernels::Word> a(n), b(n), x(n);
    for (auto& w : a) w = word(rng);
    for (auto& w : b) w = trial % 2 ? word(rng) : w & a[0];
    std::size_t pop = 0;
    bool inter = false, sub = true;
    for (std::size_t i = 0; i < n; ++i) {
      pop += static_cast<std::size_t>(std::popcount(a[i]));
      inter = inter || (a[i] & b[i]);
      sub = sub && !(a[i] & ~b[i]);
    }
    CHECK(k.popcount(a) == pop);
    CHECK(k.intersects(a, b) == inter);
    CHECK(k.subset_of(a, b) == sub);
    k.iff_words(x, a, b);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == ~(a[i] ^ b[i]));
  }
}
