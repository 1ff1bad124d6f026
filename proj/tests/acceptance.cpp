// Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
// exact; the only tolerances are the wall-clock limits below.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "mhtc/mhtc.hpp"

using namespace mhtc;

namespace {

constexpr double kLimitSeconds[] = {1.0, 1.0, 1.0, 10.0, 10.0, 5.0, 1.0, 1.0};
constexpr std::uint64_t kSeed = 20240601;

const Field F7 = Field::prime(7);
const Field Q = Field::rationals();

// Collects the reasons a criterion fails.
struct Verdict {
  std::vector<std::string> problems;
  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
};

InstanceBundle z3_bicharacter() {
  InstanceBundle b = gen_bicharacter(3, F7, Scalar(F7, 2));
  b.modules.push_back(gen_character_module(b, "M", {Scalar(F7, 1), Scalar(F7, 2), Scalar(F7, 4)}));
  return b;
}

InstanceBundle with_unit_r(InstanceBundle b) {
  b.rmatrix = unit_rmatrix(b.algebra);
  return b;
}

InstanceBundle h4(std::int64_t lambda) { return gen_sweedler_h4(F7, Scalar(F7, lambda)); }

struct Named {
  std::string name;
  InstanceBundle bundle;
};

std::vector<Named> positive_instances() {
  return {{"Z3 bicharacter", z3_bicharacter()},
          {"k^Z3 with R=1", with_unit_r(gen_function_algebra(cyclic_group(3), F7))},
          {"k^S3 with R=1", with_unit_r(gen_function_algebra(symmetric_group_3(), Q))},
          {"H4 lambda=0", h4(0)},
          {"H4 lambda=1", h4(1)}};
}

std::vector<Named> mutated_instances() {
  struct M {
    InstanceBundle base;
    const char* op;
  };
  const InstanceBundle z3 = z3_bicharacter(), s3 = with_unit_r(gen_function_algebra(symmetric_group_3(), Q));
  const std::vector<M> ms = {{z3, "scale-delta:1,1=2"},  {z3, "zero-r:1,2"},
                             {z3, "perturb-beta:1,2=5"}, {z3, "break-character:M,1=3"},
                             {z3, "unit-r"},             {s3, "replace-pi-by-identity:1"},
                             {s3, "zero-r:1,2"},         {s3, "perturb-beta:1,2=5"},
                             {h4(0), "unit-r"},          {h4(1), "zero-r:0,0"},
                             {h4(0), "perturb-beta:0,0=2"}, {h4(0), "scale-delta:0,0=2"}};
  std::vector<Named> out;
  for (const auto& m : ms) out.push_back({std::string(m.op) + " on " + m.base.get_meta("family").value(), mutate(m.base, m.op)});
  return out;
}

std::vector<Named> all_instances() {
  auto out = positive_instances();
  for (auto& m : mutated_instances()) out.push_back(std::move(m));
  return out;
}

std::set<std::string> failing_tags(const CheckReport& r) {
  std::set<std::string> out;
  for (const auto& c : r.results)
    if (!c.passed) out.insert(c.tag);
  return out;
}

std::string join(const std::set<std::string>& s) {
  std::string out;
  for (const auto& x : s) out += (out.empty() ? "" : ",") + x;
  return out.empty() ? "none" : out;
}

bool structure_valid(const InstanceBundle& b) {
  InstanceBundle plain = b;
  plain.modules.clear();
  return structural_report(plain).passed();
}

CheckReport category_report(const InstanceBundle& b, std::uint64_t seed = kSeed, FamilyKind kind = FamilyKind::kExtended) {
  TCoalgebra h = b.structure();
  return check_braided_category(h, *b.rmatrix, make_test_family(h, seed, kind, b.modules));
}

// Structural suite with the counit and antipode solved from scratch and
// compared with the generator's values.
void ac1(Verdict& v) {
  const std::vector<Named> cases = {{"k^Z3/F7", gen_function_algebra(cyclic_group(3), F7)},
                                    {"k^S3/Q", gen_function_algebra(symmetric_group_3(), Q)},
                                    {"H4 lambda=0", h4(0)},
                                    {"H4 lambda=1", h4(1)}};
  for (const auto& [name, b] : cases) {
    InstanceBundle bare = b;
    bare.eps.reset();
    bare.antipode.reset();
    CheckReport rep = structural_report(bare);
    v.require(rep.passed(), name + " fails " + join(failing_tags(rep)));
    for (const char* t : {tag::kNondegenerate, tag::kCograded, tag::kCoassoc, tag::kBijective, tag::kCounit,
                          tag::kAntipode, tag::kRegular, tag::kCrossing})
      v.require(rep.find(t) != nullptr, name + " did not run " + t);
    try {
      Counit e = derive_counit(b.algebra, b.delta);
      v.require(e == *b.eps, name + " derived counit differs");
      v.require(derive_antipode(b.algebra, b.delta, e) == *b.antipode, name + " derived antipode differs");
    } catch (const DerivationError& e) {
      v.require(false, name + ": " + e.what());
    }
  }
}

void ac2(Verdict& v) {
  for (const auto& [name, b] : std::vector<Named>{{"Z3 bicharacter", z3_bicharacter()}, {"H4 lambda=0", h4(0)}, {"H4 lambda=1", h4(1)}}) {
    CheckReport rep = check_quasitriangular(b.algebra, b.delta, b.crossing, *b.rmatrix);
    v.require(rep.passed(), name + " fails " + join(failing_tags(rep)));
    for (const char* t : {tag::kQtInvariance, tag::kQtCommutation, tag::kQtHexagon1, tag::kQtHexagon2})
      v.require(rep.find(t) && rep.find(t)->passed, name + " " + t);
  }
}

// Each mutation must fail its own class. Classes forced along with it are
// part of the expected set: a single perturbed beta value breaks both
// multiplicativity identities, and a zero component breaks them as well.
void ac3(Verdict& v) {
  const InstanceBundle z3 = z3_bicharacter();
  struct Case {
    InstanceBundle b;
    std::set<std::string> expected;
  };
  const std::vector<Case> cases = {
      {mutate(z3, "perturb-beta:1,2=5"), {tag::kQtHexagon1, tag::kQtHexagon2}},
      {mutate(z3, "zero-r:1,2"), {tag::kQtInvertibility, tag::kQtHexagon1, tag::kQtHexagon2}},
      {mutate(h4(0), "unit-r"), {tag::kQtCommutation}},
  };
  for (const auto& c : cases) {
    CheckReport rep = qt_report(c.b);
    const std::string name = *c.b.get_meta("mutation");
    v.require(failing_tags(rep) == c.expected, name + " fails " + join(failing_tags(rep)) + ", expected " + join(c.expected));
  }
  CheckReport perturbed = qt_report(cases[0].b);
  const Witness* w = perturbed.find(tag::kQtHexagon1)->find({1, 1, 2});
  v.require(w && w->lhs == "(1)" && w->rhs == "(3)",
            "perturb-beta witness (1,1,2) " + (w ? w->lhs + " vs " + w->rhs : std::string("missing")));
  CheckReport zero = qt_report(cases[1].b);
  v.require(zero.find(tag::kQtInvertibility)->failing_grades() == std::vector<std::vector<std::size_t>>{{1, 2}},
            "zero-r invertibility witness is not (1,2)");
  CheckReport unit = qt_report(cases[2].b);
  const auto& ws = unit.find(tag::kQtCommutation)->witnesses;
  v.require(!ws.empty() && ws[0].basis == std::vector<std::size_t>{2}, "unit-r commutation witness is not a = x");
}

void ac4(Verdict& v) {
  for (const auto& [name, b] : all_instances()) {
    if (!structure_valid(b)) {
      v.require(!category_report(b).passed(), name + ": invalid structure not reported");
      continue;
    }
    CheckReport rep = category_report(b);
    TCoalgebra h = b.structure();
    TestFamily fam = make_test_family(h, kSeed, FamilyKind::kExtended, b.modules);
    v.require(fam.modules.size() >= 6 && fam.modules[0].name == "K" && fam.modules[1].name == "A", name + ": family too small");
    const char* cat_tags[] = {tag::kL41Invertibility, tag::kL41, tag::kL42, tag::kL431, tag::kL432, tag::kNaturality};
    bool cat_ok = true;
    for (const char* t : cat_tags) cat_ok = cat_ok && rep.find(t)->passed;
    bool r_ok = check_quasitriangular(h.algebra, h.delta, h.crossing, *b.rmatrix).passed();
    v.require(cat_ok == r_ok, name + ": categorical " + (cat_ok ? "pass" : "fail") + ", R-side " + (r_ok ? "pass" : "fail"));
    v.require(rep.find(tag::kTheorem)->passed, name + ": equivalence check failed");
  }
}

void ac5(Verdict& v) {
  const std::pair<const char*, const char*> pairs[] = {{tag::kL41Invertibility, tag::kQtInvertibility},
                                                       {tag::kL41, tag::kQtCommutation},
                                                       {tag::kL42, tag::kQtInvariance},
                                                       {tag::kL431, tag::kQtHexagon1},
                                                       {tag::kL432, tag::kQtHexagon2}};
  for (const auto& [name, b] : all_instances()) {
    if (!structure_valid(b)) continue;
    CheckReport rep = category_report(b);
    for (auto [c, r] : pairs) {
      const CheckResult *cr = rep.find(c), *rr = rep.find(r);
      v.require(cr->passed == rr->passed, name + ": " + c + " vs " + r + " verdicts differ");
      v.require(cr->failing_grades() == rr->failing_grades(), name + ": " + c + " vs " + r + " witness grades differ");
    }
  }
}

void ac6(Verdict& v) {
  for (const auto& [name, b] : std::vector<Named>{{"Z3 bicharacter", z3_bicharacter()},
                                                  {"k^S3", gen_function_algebra(symmetric_group_3(), Q)}}) {
    TCoalgebra h = b.structure();
    TestFamily fam = make_test_family(h, kSeed, FamilyKind::kExtended, b.modules);
    CheckResult r = check_monoidal_coherence(h, fam.modules);
    v.require(r.passed, name + ": " + (r.witnesses.empty() ? std::string() : r.witnesses[0].detail));
  }
}

void ac7(Verdict& v) {
  for (const auto& [name, b] : positive_instances()) {
    TCoalgebra h = b.structure();
    const auto& g = b.group();
    for (GroupElem p = 0; p < g.order(); ++p)
      v.require(canonical_map_bijective(b.algebra.component(p)), name + ": A -> M(A) not bijective at grade " + std::to_string(p));
    v.require(canonical_map_bijective(b.algebra.total()), name + ": A -> M(A) not bijective on the total algebra");
    for (const auto& m : make_test_family(h, kSeed, FamilyKind::kExtended, b.modules).modules)
      for (GroupElem p = 0; p < g.order(); ++p) {
        const Algebra& ap = b.algebra.component(p);
        const std::size_t d = m.dim(p);
        v.require(multiplier_act_matrix(ap, m.module.action[p], d, unit_multiplier(ap)) == Matrix::identity(b.field(), d),
                  name + ": unit multiplier moves " + m.name + " at grade " + std::to_string(p));
      }
    for (GroupElem s = 0; s < g.order(); ++s)
      for (GroupElem t = 0; t < g.order(); ++t)
        v.require(!compatibility_violation(pair_algebra(b.algebra, s, t), b.rmatrix->at(s, t).mult),
                  name + ": R component not a multiplier");
  }
}

void ac8(Verdict& v) {
  auto first = all_instances(), second = all_instances();
  for (std::size_t i = 0; i < first.size(); ++i) {
    const auto& [name, b] = first[i];
    const std::string text = serialize(b);
    v.require(parse_instance(text) == b, name + ": parse(serialize) differs");
    v.require(serialize(second[i].bundle) == text, name + ": regeneration differs");
  }
  // The extended family (random basis changes) on Z3, the CLI default family
  // everywhere else.
  for (const auto& [name, b] : positive_instances()) {
    const FamilyKind kind = b.group().order() == 3 ? FamilyKind::kExtended : FamilyKind::kDefault;
    const std::string a = to_json(category_report(b, 99, kind), false).dump();
    const std::string c = to_json(category_report(b, 99, kind), false).dump();
    v.require(a == c, name + ": seeded report differs");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
      {"structural suite", ac1},          {"quasitriangular instances", ac2},
      {"mutation failure classes", ac3},  {"categorical vs R-side verdict", ac4},
      {"lemma-level agreement", ac5},     {"monoidal coherence", ac6},
      {"multiplier formalism", ac7},      {"round trip and determinism", ac8}};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(v);
    } catch (const std::exception& e) {
      v.problems.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimitSeconds[i]) v.problems.push_back("took " + std::to_string(secs) + " s");
    const bool ok = v.problems.empty();
    failures += !ok;
    std::printf("%s AC%zu %s (%.3f s, limit %.0f s)%s%s\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first, secs,
                kLimitSeconds[i], ok ? "" : ": ", ok ? "" : v.problems[0].c_str());
    for (std::size_t k = 1; k < v.problems.size() && k < 5; ++k) std::printf("    %s\n", v.problems[k].c_str());
  }
  return failures == 0 ? 0 : 1;
}
