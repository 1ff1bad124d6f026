#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mhtc {

/// Tags naming which identity a check verifies. Each tag belongs to exactly
/// one check function (see kCheckForTag).
namespace tag {
inline constexpr const char* kNondegenerate = "2.1-nondegenerate";
inline constexpr const char* kCoassoc = "2.1-coassoc";
inline constexpr const char* kBijective = "2.1-bijective";
inline constexpr const char* kCounit = "2.1-counit";
inline constexpr const char* kAntipode = "2.1-antipode";
inline constexpr const char* kRegular = "2.1-regular";
inline constexpr const char* kCograded = "2.2-cograded";
inline constexpr const char* kComultiplicative = "2.2-comultiplicative";
inline constexpr const char* kCrossing = "2.2-crossing";
inline constexpr const char* kQtInvertibility = "QT-invertibility";
inline constexpr const char* kQtInvariance = "QT-invariance";
inline constexpr const char* kQtCommutation = "QT-commutation";
inline constexpr const char* kQtHexagon1 = "QT-hexagon-1";
inline constexpr const char* kQtHexagon2 = "QT-hexagon-2";
inline constexpr const char* kModule = "D3.1-module";
inline constexpr const char* kCrossed = "D3.3-crossed";
inline constexpr const char* kMonoidal = "T3.4-monoidal";
inline constexpr const char* kL41Invertibility = "L4.1-invertibility";
inline constexpr const char* kL41 = "L4.1";
inline constexpr const char* kL42 = "L4.2";
inline constexpr const char* kL431 = "L4.3-1";
inline constexpr const char* kL432 = "L4.3-2";
inline constexpr const char* kNaturality = "naturality";
inline constexpr const char* kTheorem = "T4.4-equivalence";
}  // namespace tag

struct TagInfo {
  const char* tag;
  const char* check;
};

inline constexpr TagInfo kCheckForTag[] = {
    {tag::kNondegenerate, "check_nondegenerate"},
    {tag::kCoassoc, "check_coassoc"},
    {tag::kBijective, "t_maps_bijective"},
    {tag::kCounit, "verify_counit"},
    {tag::kAntipode, "verify_antipode"},
    {tag::kRegular, "check_regular"},
    {tag::kCograded, "check_cograded"},
    {tag::kComultiplicative, "check_comultiplicative"},
    {tag::kCrossing, "check_crossing"},
    {tag::kQtInvertibility, "check_qt_invertibility"},
    {tag::kQtInvariance, "check_qt_invariance"},
    {tag::kQtCommutation, "check_qt_commutation"},
    {tag::kQtHexagon1, "check_qt_hexagon_1"},
    {tag::kQtHexagon2, "check_qt_hexagon_2"},
    {tag::kModule, "check_module"},
    {tag::kCrossed, "check_crossed"},
    {tag::kMonoidal, "check_monoidal_coherence"},
    {tag::kL41Invertibility, "check_braiding_invertible"},
    {tag::kL41, "check_braiding_module_morphism"},
    {tag::kL42, "check_braiding_crossing_compat"},
    {tag::kL431, "check_braiding_hexagon_1"},
    {tag::kL432, "check_braiding_hexagon_2"},
    {tag::kNaturality, "check_naturality"},
    {tag::kTheorem, "check_braided_category"},
};

/// A counterexample certificate: the grade tuple and basis indices where an
/// identity failed, with both evaluated sides.
struct Witness {
  std::vector<std::size_t> grades;
  std::vector<std::size_t> basis;
  std::string lhs;
  std::string rhs;
  std::string detail;

  friend bool operator==(const Witness&, const Witness&) = default;
};

struct CheckResult {
  std::string tag;
  bool passed = true;
  std::string note;
  std::vector<Witness> witnesses;

  void fail(Witness w) {
    passed = false;
    witnesses.push_back(std::move(w));
  }

  /// Distinct failing grade tuples, sorted.
  std::vector<std::vector<std::size_t>> failing_grades() const {
    std::vector<std::vector<std::size_t>> out;
    for (const auto& w : witnesses) out.push_back(w.grades);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  const Witness* find(const std::vector<std::size_t>& grades) const {
    for (const auto& w : witnesses)
      if (w.grades == grades) return &w;
    return nullptr;
  }
};

inline CheckResult make_result(const char* t) {
  CheckResult r;
  r.tag = t;
  return r;
}

/// Creates a failed result carrying a single witness.
inline CheckResult failed_result(const char* t, Witness w, std::string note = {}) {
  CheckResult r = make_result(t);
  r.note = std::move(note);
  r.fail(std::move(w));
  return r;
}

inline std::string join_indices(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

struct CheckReport {
  std::vector<CheckResult> results;
  std::uint64_t seed = 0;
  double seconds = 0.0;

  bool passed() const {
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
  }

  void add(CheckResult r) { results.push_back(std::move(r)); }

  const CheckResult* find(const std::string& t) const {
    for (const auto& r : results)
      if (r.tag == t) return &r;
    return nullptr;
  }

  std::vector<std::string> failing_tags() const {
    std::vector<std::string> out;
    for (const auto& r : results)
      if (!r.passed && std::find(out.begin(), out.end(), r.tag) == out.end()) out.push_back(r.tag);
    return out;
  }
};

inline void append(CheckReport& into, const CheckReport& from) {
  for (const auto& r : from.results) into.add(r);
}

/// Human-readable report. Witness lists are truncated per check.
inline std::string to_text(const CheckReport& report, std::size_t max_witnesses = 5) {
  std::ostringstream os;
  for (const auto& r : report.results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.tag;
    if (!r.note.empty()) os << "  [" << r.note << "]";
    os << '\n';
    std::size_t shown = 0;
    for (const auto& w : r.witnesses) {
      if (shown++ == max_witnesses) {
        os << "    ... " << (r.witnesses.size() - max_witnesses) << " more\n";
        break;
      }
      os << "    at grades " << join_indices(w.grades) << " basis " << join_indices(w.basis);
      if (!w.lhs.empty() || !w.rhs.empty()) os << ": " << w.lhs << " != " << w.rhs;
      if (!w.detail.empty()) os << "  (" << w.detail << ")";
      os << '\n';
    }
  }
  os << "seed " << report.seed << '\n';
  os << (report.passed() ? "RESULT PASS" : "RESULT FAIL") << '\n';
  return os.str();
}

/// Machine-readable report (JSON, keyed fields). Timing is omitted when
/// `with_timing` is false so reports can be compared byte for byte.
inline nlohmann::json to_json(const CheckReport& report, bool with_timing = true) {
  nlohmann::json j;
  j["verdict"] = report.passed() ? "pass" : "fail";
  j["seed"] = report.seed;
  if (with_timing) j["seconds"] = report.seconds;
  j["checks"] = nlohmann::json::array();
  for (const auto& r : report.results) {
    nlohmann::json c;
    c["tag"] = r.tag;
    c["verdict"] = r.passed ? "pass" : "fail";
    if (!r.note.empty()) c["note"] = r.note;
    c["witnesses"] = nlohmann::json::array();
    for (const auto& w : r.witnesses) {
      c["witnesses"].push_back({{"grades", w.grades}, {"basis", w.basis}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"detail", w.detail}});
    }
    j["checks"].push_back(std::move(c));
  }
  return j;
}

}  // namespace mhtc
