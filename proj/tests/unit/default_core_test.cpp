#include <doctest.h>

#include "deflog/dsl.hpp"
#include "deflog/engine.hpp"
#include "oracle.hpp"
#include "random.hpp"

using namespace deflog;
using deflog::testing::Rng;

namespace {

Formula F(std::string_view s) { return parse_formula(s); }

Default D(std::string name, std::string_view pre, std::string_view just, std::string_view cons) {
  return Default{std::move(name), F(pre), F(just), F(cons), {}};
}

DefaultTheory T(std::string_view text) { return to_theory(parse_theory(text)); }

const char* kNixon =
    "fact republican. fact quaker.\n"
    "default d1: republican : !pacifist / !pacifist.\n"
    "default d2: quaker : pacifist / pacifist.\n";

const char* kCounter =
    "default d1: true : a & !b / a.\n"
    "default d2: true : b / b.\n";

std::vector<std::vector<Formula>> bases_of(const std::vector<Extension>& exts) {
  std::vector<std::vector<Formula>> out;
  for (const Extension& e : exts) out.push_back(e.base.items());
  return out;
}

bool entails_all_of(const FormulaSet& a, const FormulaSet& b) {
  return std::all_of(b.begin(), b.end(), [&](const Formula& f) { return entails(a, f); });
}

}  // namespace

TEST_CASE("classify") {
  CHECK(classify(D("d", "bird", "fly", "fly")) == DefaultClass::kNormal);
  CHECK(classify(D("d", "bird", "fly & !penguin", "fly")) == DefaultClass::kSemiNormal);
  CHECK(classify(D("d", "true", "!p", "p")) == DefaultClass::kGeneral);
  CHECK(classify(D("d", "true", "!penguin & fly", "fly")) == DefaultClass::kSemiNormal);
  CHECK(classify(D("d", "true", "a & b & c", "a & c")) == DefaultClass::kSemiNormal);
  CHECK(classify(D("d", "true", "a | b", "a")) == DefaultClass::kGeneral);
  CHECK(to_string(DefaultClass::kSemiNormal) == "semi-normal");
}

TEST_CASE("theory validation") {
  CHECK_THROWS_AS(DefaultTheory({}, {D("d", "p", "q", "q"), D("d", "p", "r", "r")}), TheoryError);
  CHECK_THROWS_AS(DefaultTheory({}, {D("d", "p", "q", "q")}, {{"d", "e"}}), TheoryError);
  CHECK_THROWS_AS(DefaultTheory({}, {D("d", "p", "q", "q")}, {{"d", "d"}}), CyclicPriorityError);
  CHECK_THROWS_AS(DefaultTheory({}, {D("a", "p", "q", "q"), D("b", "p", "r", "r"), D("c", "p", "s", "s")},
                                {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                  CyclicPriorityError);
  const DefaultTheory t = T(kNixon);
  CHECK(t.default_names() == std::vector<std::string>{"d1", "d2"});
  CHECK(t.find("d2") != nullptr);
  CHECK(t.find("d3") == nullptr);
  CHECK(t.restricted_to({"d2"}).defaults().size() == 1);
  CHECK_THROWS_AS(t.restricted_to({"zz"}), TheoryError);
}

TEST_CASE("gamma uses the fixed argument for justifications") {
  const DefaultTheory t({}, {D("d1", "true", "!p", "p")});
  CHECK(entails(gamma(t, {}), F("p")));
  CHECK_FALSE(entails(gamma(t, {F("p")}), F("p")));

  const DefaultTheory w({F("q"), F("q -> r")}, {});
  CHECK(bases_equal(gamma(w, {F("anything")}), {F("q"), F("r")}));
}

TEST_CASE("gamma chains prerequisites through the growing base") {
  const DefaultTheory t({F("a")}, {D("d2", "b", "c", "c"), D("d1", "a", "b", "b")});
  const FormulaSet g = gamma(t, {F("a")});
  CHECK(entails(g, F("b & c")));
}

TEST_CASE("verify_extension examples") {
  CHECK_FALSE(verify_extension(DefaultTheory({}, {D("d1", "true", "!p", "p")}), {F("p")}));
  CHECK(verify_extension(DefaultTheory({F("q")}, {}), {F("q")}));
  const DefaultTheory nixon = T(kNixon);
  CHECK(verify_extension(nixon, {F("republican"), F("quaker"), F("pacifist")}));
  CHECK(verify_extension(nixon, {F("republican"), F("quaker"), F("!pacifist")}));
  CHECK_FALSE(verify_extension(nixon, {F("republican"), F("quaker")}));
}

TEST_CASE("Nixon diamond has two extensions") {
  const DefaultTheory t = T(kNixon);
  const auto exts = extensions(t);
  REQUIRE(exts.size() == 2);
  CHECK(exts[0].generating == std::vector<std::string>{"d1"});
  CHECK(entails(exts[0].base, F("!pacifist")));
  CHECK(exts[1].generating == std::vector<std::string>{"d2"});
  CHECK(entails(exts[1].base, F("pacifist")));
  CHECK(testing::same_bases(bases_of(exts), testing::reference_extensions(t)));
  CHECK(testing::same_bases(bases_of(extensions_bruteforce(t)), bases_of(exts)));

  CHECK(query(t, F("pacifist"), QueryMode::kSkeptical) == Verdict::kNo);
  CHECK(query(t, F("pacifist"), QueryMode::kCredulous) == Verdict::kYes);
  CHECK(query(t, F("quaker"), QueryMode::kSkeptical) == Verdict::kYes);
}

TEST_CASE("a self-defeating default has no extension") {
  const DefaultTheory t({}, {D("d1", "true", "!p", "p")});
  CHECK(extensions(t).empty());
  CHECK(extensions_bruteforce(t).empty());
  CHECK(testing::reference_extensions(t).empty());
  CHECK(query(t, F("p"), QueryMode::kSkeptical) == Verdict::kNoExtension);
  CHECK(query(t, F("p"), QueryMode::kCredulous) == Verdict::kNoExtension);
  CHECK(to_string(Verdict::kNoExtension) == "no-extension");
}

TEST_CASE("no defaults: exactly the hard facts") {
  const DefaultTheory t({F("q"), F("q -> r")}, {});
  const auto exts = extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].generating.empty());
  CHECK_FALSE(exts[0].trivial);
  CHECK(query(t, F("q"), QueryMode::kSkeptical) == Verdict::kYes);
  CHECK(extensions_bruteforce(t).size() == 1);
}

TEST_CASE("order-sensitive candidates are filtered on the final base") {
  const DefaultTheory t = T(kCounter);
  const auto exts = extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(entails(exts[0].base, F("b")));
  CHECK_FALSE(entails(exts[0].base, F("a")));
  CHECK(exts[0].generating == std::vector<std::string>{"d2"});
  CHECK(testing::same_bases(bases_of(exts), testing::reference_extensions(t)));
}

TEST_CASE("inconsistent hard facts give one trivial extension") {
  const DefaultTheory t({F("p"), F("!p")}, {D("d1", "true", "q", "q")});
  const auto exts = extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].trivial);
  CHECK(exts[0].generating.empty());
  CHECK(entails(exts[0].base, F("anything")));
  CHECK(testing::reference_extensions(t).size() == 1);
  CHECK(query(t, F("z"), QueryMode::kSkeptical) == Verdict::kYes);
}

TEST_CASE("groundedness witness") {
  const DefaultTheory t({F("a")}, {D("d3", "c", "e", "e"), D("d2", "b", "c", "c"), D("d1", "a", "b", "b")});
  const auto exts = extensions(t);
  REQUIRE(exts.size() == 1);
  CHECK(exts[0].applied_order == std::vector<std::string>{"d1", "d2", "d3"});
  CHECK(is_grounded(t, exts[0]));
  Extension bad = exts[0];
  std::reverse(bad.applied_order.begin(), bad.applied_order.end());
  CHECK_FALSE(is_grounded(t, bad));
}

TEST_CASE("limits") {
  std::vector<Default> ds;
  for (int i = 0; i < 17; ++i) ds.push_back(D("d" + std::to_string(i), "true", "p", "p"));
  const DefaultTheory t({}, ds);
  CHECK_THROWS_AS(extensions(t), LimitError);
  CHECK_THROWS_AS(extensions_bruteforce(t), LimitError);
  EngineConfig cfg;
  cfg.max_defaults = 17;
  CHECK(extensions(t, cfg).size() == 1);
}

TEST_CASE("semi-monotonicity") {
  SUBCASE("identity subset holds") {
    const DefaultTheory t = T(kCounter);
    const auto rep = check_semi_monotonicity(t, {"d1", "d2"});
    CHECK(rep.holds);
    CHECK_FALSE(rep.witness.has_value());
  }
  SUBCASE("the semi-normal counterexample is violated") {
    const DefaultTheory t = T(kCounter);
    const auto rep = check_semi_monotonicity(t, {"d1"});
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.witness.has_value());
    CHECK(entails(rep.witness->subtheory_extension, F("a")));
    REQUIRE(rep.witness->full_extensions.size() == 1);
    CHECK(entails(rep.witness->full_extensions[0], F("b")));
    CHECK_FALSE(entails(rep.witness->full_extensions[0], F("a")));
  }
  SUBCASE("Nixon, any subset") {
    const DefaultTheory t = T(kNixon);
    for (const auto& s : std::vector<std::set<std::string>>{{}, {"d1"}, {"d2"}, {"d1", "d2"}})
      CHECK(check_semi_monotonicity(t, s).holds);
  }
}

TEST_CASE("priority compilation") {
  SUBCASE("penguins") {
    const DefaultTheory t({F("bird"), F("penguin")},
                          {D("d_hi", "penguin", "!fly", "!fly"), D("d_lo", "bird", "fly", "fly")}, {{"d_hi", "d_lo"}});
    const DefaultTheory c = compile_priorities(t);
    CHECK(c.priorities().empty());
    CHECK(c.hard() == t.hard());
    REQUIRE(c.defaults().size() == 2);
    CHECK(c.defaults()[0] == t.defaults()[0]);
    CHECK(c.defaults()[1] == D("d_lo", "bird", "fly & !penguin", "fly"));
    CHECK(c.defaults()[1].blocked_by_prerequisite == std::vector<std::string>{"d_hi"});
    CHECK(classify(c.defaults()[1]) == DefaultClass::kSemiNormal);
    const auto exts = extensions(c);
    REQUIRE(exts.size() == 1);
    CHECK(entails(exts[0].base, F("!fly")));
    CHECK(testing::same_bases(bases_of(exts), testing::reference_extensions(c)));
    // Without the priority the theory is ambiguous.
    CHECK(extensions(DefaultTheory(t.hard(), t.defaults())).size() == 2);
  }
  SUBCASE("non-conflicting consequents negate the consequent") {
    const DefaultTheory t({}, {D("hi", "true", "q", "q"), D("lo", "true", "r", "r")}, {{"hi", "lo"}});
    const DefaultTheory c = compile_priorities(t);
    CHECK(c.defaults()[1] == D("lo", "true", "r & !q", "r"));
    CHECK(c.defaults()[1].blocked_by_prerequisite.empty());
  }
  SUBCASE("empty priorities are the identity") {
    const DefaultTheory t = T(kNixon);
    const DefaultTheory c = compile_priorities(t);
    CHECK(c.hard() == t.hard());
    CHECK(c.defaults() == t.defaults());
  }
  SUBCASE("cycles are rejected") {
    CHECK_THROWS_AS(check_priorities_acyclic({{"a", "b"}, {"b", "a"}}), CyclicPriorityError);
    CHECK_NOTHROW(check_priorities_acyclic({{"a", "b"}, {"b", "c"}, {"a", "c"}}));
  }
  SUBCASE("over-blocking of the prerequisite scheme") {
    // hi's prerequisite holds but hi itself is blocked by w; lo is blocked too.
    const DefaultTheory t({F("p"), F("blocker")},
                          {D("hi", "p", "q & !blocker", "q"), D("lo", "true", "!q", "!q")}, {{"hi", "lo"}});
    const DefaultTheory c = compile_priorities(t);
    const auto exts = extensions(c);
    REQUIRE(exts.size() == 1);
    CHECK(exts[0].generating.empty());
    CHECK(c.defaults()[1].blocked_by_prerequisite == std::vector<std::string>{"hi"});
  }
}

TEST_CASE("random theories: process search, brute force and the reference agree") {
  Rng rng(101);
  for (int i = 0; i < 150; ++i) {
    const DefaultTheory t = testing::random_theory(rng, {5, 5, 2, testing::Mix::kMixed});
    const auto exts = extensions(t);
    const auto ref = testing::reference_extensions(t);
    INFO(serialize_theory(to_document(t)));
    CHECK(testing::same_bases(bases_of(exts), ref));
    CHECK(testing::same_bases(bases_of(extensions_bruteforce(t)), ref));
    for (std::size_t a = 0; a < exts.size(); ++a) {
      CHECK(verify_extension(t, exts[a].base));
      CHECK(is_grounded(t, exts[a]));
      CHECK(std::is_sorted(exts[a].generating.begin(), exts[a].generating.end()));
      for (std::size_t b = 0; b < exts.size(); ++b) {
        if (a != b) CHECK_FALSE(entails_all_of(exts[a].base, exts[b].base));
      }
    }
    for (std::size_t a = 1; a < exts.size(); ++a) CHECK(exts[a - 1].generating < exts[a].generating);
  }
}

TEST_CASE("random normal theories: existence and semi-monotonicity") {
  Rng rng(103);
  int checked = 0;
  while (checked < 60) {
    const DefaultTheory t = testing::random_theory(rng, {6, 5, 2, testing::Mix::kNormal});
    if (!is_satisfiable(t.hard())) continue;
    ++checked;
    CHECK_FALSE(extensions(t).empty());
    const auto names = t.default_names();
    for (std::uint32_t mask = 0; mask < (1u << names.size()); ++mask) {
      std::set<std::string> subset;
      for (std::size_t k = 0; k < names.size(); ++k)
        if ((mask >> k) & 1u) subset.insert(names[k]);
      CHECK(check_semi_monotonicity(t, subset).holds);
    }
  }
}

TEST_CASE("extensions are deterministic") {
  Rng rng(107);
  for (int i = 0; i < 30; ++i) {
    const DefaultTheory t = testing::random_theory(rng, {5, 6, 1, testing::Mix::kMixed});
    const auto a = extensions(t);
    const auto b = extensions(t);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k].generating == b[k].generating);
      CHECK(a[k].base == b[k].base);
      CHECK(a[k].applied_order == b[k].applied_order);
    }
  }
}
