// Command-line front end: generate, mutate, validate and check instances.
//
// Exit codes: 0 every check passed, 1 a check failed, 2 bad input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhtc/mhtc.hpp"

namespace {

using namespace mhtc;

struct Options {
  std::string format = "text";
  bool timing = true;
  std::string file;
  std::string modules = "default";
  std::optional<std::uint64_t> seed;
  std::string family;
  std::string group = "Z3";
  std::string field = "F7";
  std::string omega = "2";
  std::string lambda = "0";
  std::vector<std::string> characters;
  std::vector<std::string> ops;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

InstanceBundle load(const Options& o) { return parse_instance(read_input(o.file)); }

int emit(const Options& o, CheckReport rep, std::chrono::steady_clock::time_point t0) {
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (o.format == "machine")
    std::cout << to_json(rep, o.timing).dump(2) << '\n';
  else
    std::cout << to_text(rep);
  return rep.passed() ? 0 : 1;
}

TestFamily family_for(const Options& o, const InstanceBundle& b, const TCoalgebra& h) {
  const std::uint64_t seed = resolve_seed(o.seed);
  if (o.modules == "default") return make_test_family(h, seed, FamilyKind::kDefault);
  if (o.modules == "extended") return make_test_family(h, seed, FamilyKind::kExtended);
  if (o.modules == "file") return make_test_family(h, seed, FamilyKind::kDefault, b.modules);
  if (o.modules == "all") return make_test_family(h, seed, FamilyKind::kExtended, b.modules);
  throw InputError("--modules must be default, extended, file or all");
}

CheckReport braiding_report(const Options& o, const InstanceBundle& b) {
  if (!b.rmatrix) throw InputError("instance has no [rmatrix] section");
  CheckReport rep;
  TCoalgebra h;
  try {
    h = b.structure();
  } catch (const DerivationError& e) {
    rep.add(failed_result(tag::kCounit, {{0}, {}, "", "", e.what()}));
    rep.seed = resolve_seed(o.seed);
    return rep;
  }
  return check_braided_category(h, *b.rmatrix, family_for(o, b, h));
}

int cmd_validate(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  return emit(o, structural_report(load(o)), t0);
}

int cmd_derive(const Options& o) {
  InstanceBundle b = load(o);
  try {
    if (!b.eps) b.eps = derive_counit(b.algebra, b.delta);
    if (!b.antipode) b.antipode = derive_antipode(b.algebra, b.delta, *b.eps);
  } catch (const DerivationError& e) {
    std::cerr << "derive: " << e.what() << '\n';
    return 1;
  }
  std::cout << serialize(b);
  return 0;
}

int cmd_check_qt(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  return emit(o, qt_report(load(o)), t0);
}

int cmd_check_braiding(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  return emit(o, braiding_report(o, load(o)), t0);
}

int cmd_report(const Options& o) {
  auto t0 = std::chrono::steady_clock::now();
  InstanceBundle b = load(o);
  CheckReport rep = structural_report(b);
  if (b.rmatrix) {
    CheckReport cat = braiding_report(o, b);
    rep.seed = cat.seed;
    append(rep, cat);
  }
  if (rep.passed()) {
    TCoalgebra h = b.structure();
    rep.add(check_monoidal_coherence(h, family_for(o, b, h).modules));
  }
  return emit(o, rep, t0);
}

int cmd_gen(const Options& o) {
  const Field f = Field::parse(o.field);
  InstanceBundle b;
  if (o.family == "function-algebra") {
    b = gen_function_algebra(group_by_name(o.group), f);
  } else if (o.family == "bicharacter") {
    FiniteGroup g = group_by_name(o.group);
    if (!g.is_abelian() || (o.group != "trivial" && o.group[0] != 'Z'))
      throw InputError("bicharacter: --group must be cyclic (Z<n>)");
    b = gen_bicharacter(g.order(), f, Scalar::parse(f, o.omega));
  } else if (o.family == "sweedler-h4") {
    b = gen_sweedler_h4(f, Scalar::parse(f, o.lambda));
  } else {
    throw InputError("unknown family '" + o.family + "'");
  }
  for (const auto& spec : o.characters) {
    auto eq = spec.find('=');
    if (eq == std::string::npos) throw InputError("--character expects NAME=c0,c1,...");
    std::vector<Scalar> chi;
    std::stringstream ss(spec.substr(eq + 1));
    for (std::string v; std::getline(ss, v, ',');) chi.push_back(Scalar::parse(f, v));
    b.modules.push_back(gen_character_module(b, spec.substr(0, eq), chi));
  }
  std::cout << serialize(b);
  return 0;
}

int cmd_mutate(const Options& o) {
  InstanceBundle b = load(o);
  for (const auto& op : o.ops) b = mutate(std::move(b), op);
  std::cout << serialize(b);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Checks for multiplier Hopf T-coalgebras, R-matrices and crossed modules"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("!--no-timing", o.timing, "Omit timing from machine reports");

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Instance file, '-' for stdin")->required(); };

  auto* validate = app.add_subcommand("validate", "Run the structural suite");
  auto* derive = app.add_subcommand("derive", "Solve for the counit and antipode and print the completed file");
  auto* check_qt = app.add_subcommand("check-qt", "Structural suite and the quasitriangularity checks");
  auto* check_braiding = app.add_subcommand("check-braiding", "Compare the braided category with the R-matrix checks");
  auto* report = app.add_subcommand("report", "Every check that applies to the instance");
  for (auto* sub : {validate, derive, check_qt, check_braiding, report}) file_arg(sub);
  for (auto* sub : {check_braiding, report}) {
    sub->add_option("--modules", o.modules, "Test modules: default, extended, file or all")
        ->check(CLI::IsMember({"default", "extended", "file", "all"}));
    sub->add_option("--seed", o.seed, "Seed for the randomized test modules (else MHTC_SEED)");
  }

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("--family", o.family, "function-algebra, bicharacter or sweedler-h4")
      ->required()
      ->check(CLI::IsMember({"function-algebra", "bicharacter", "sweedler-h4"}));
  gen->add_option("--group", o.group, "Z<n>, S3 or trivial");
  gen->add_option("--field", o.field, "Q or F<p>");
  gen->add_option("--omega", o.omega, "Bicharacter base");
  gen->add_option("--lambda", o.lambda, "Sweedler R-matrix parameter");
  gen->add_option("--character", o.characters, "Add a one-dimensional module NAME=c0,c1,...");

  auto* mut = app.add_subcommand("mutate", "Apply mutations and print the result");
  file_arg(mut);
  mut->add_option("--op", o.ops, "Mutation descriptor (repeatable)")->required();

  app.fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(o);
    if (*derive) return cmd_derive(o);
    if (*check_qt) return cmd_check_qt(o);
    if (*check_braiding) return cmd_check_braiding(o);
    if (*report) return cmd_report(o);
    if (*gen) return cmd_gen(o);
    if (*mut) return cmd_mutate(o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const DerivationError& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
