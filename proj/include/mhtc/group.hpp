#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "mhtc/error.hpp"

namespace mhtc {

using GroupElem = std::size_t;

/// A finite group given by its Cayley table; element 0 is the identity.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<GroupElem>>{{0}}, "trivial") {}

  /// Validates the table and builds the group. Throws InputError naming the
  /// first violated axiom.
  explicit FiniteGroup(std::vector<std::vector<GroupElem>> cayley, std::string name = {})
      : cayley_(std::move(cayley)), name_(std::move(name)) {
    const std::size_t n = cayley_.size();
    if (n == 0) throw InputError("group: empty Cayley table");
    for (std::size_t i = 0; i < n; ++i) {
      if (cayley_[i].size() != n) throw InputError("group: Cayley table is not square (row " + std::to_string(i) + ")");
      for (auto x : cayley_[i]) {
        if (x >= n) throw InputError("group: entry " + std::to_string(x) + " out of range in row " + std::to_string(i));
      }
    }
    std::size_t identity = n;
    for (std::size_t e = 0; e < n && identity == n; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = cayley_[e][x] == x && cayley_[x][e] == x;
      if (ok) identity = e;
    }
    if (identity == n) throw InputError("group: no identity element");
    if (identity != 0) throw InputError("group: identity must be element 0, found " + std::to_string(identity));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          if (cayley_[cayley_[a][b]][c] != cayley_[a][cayley_[b][c]]) {
            throw InputError("group: non-associative triple (" + std::to_string(a) + "," + std::to_string(b) + "," +
                             std::to_string(c) + ")");
          }
        }
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        if (cayley_[a][b] == 0 && cayley_[b][a] == 0) {
          inverse_[a] = b;
          break;
        }
      }
      if (inverse_[a] == n) throw InputError("group: element " + std::to_string(a) + " has no inverse");
    }
  }

  std::size_t order() const { return cayley_.size(); }
  static constexpr GroupElem identity() { return 0; }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<GroupElem>>& cayley() const { return cayley_; }

  GroupElem mul(GroupElem a, GroupElem b) const { return cayley_[a][b]; }
  GroupElem mul(GroupElem a, GroupElem b, GroupElem c) const { return mul(mul(a, b), c); }
  GroupElem inv(GroupElem a) const { return inverse_[a]; }
  /// q p q^{-1}
  GroupElem conj(GroupElem q, GroupElem p) const { return mul(mul(q, p), inv(q)); }

  bool is_abelian() const {
    for (std::size_t a = 0; a < order(); ++a)
      for (std::size_t b = 0; b < a; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Adjoint action as a table: rho[q][p] = q p q^{-1}.
  std::vector<std::vector<GroupElem>> adjoint_table() const {
    std::vector<std::vector<GroupElem>> t(order(), std::vector<GroupElem>(order()));
    for (std::size_t q = 0; q < order(); ++q)
      for (std::size_t p = 0; p < order(); ++p) t[q][p] = conj(q, p);
    return t;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) { return a.cayley_ == b.cayley_; }

 private:
  std::vector<std::vector<GroupElem>> cayley_;
  std::vector<GroupElem> inverse_;
  std::string name_;
};

inline FiniteGroup validate_group(std::vector<std::vector<GroupElem>> cayley, std::string name = {}) {
  return FiniteGroup(std::move(cayley), std::move(name));
}

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  std::vector<std::vector<GroupElem>> t(n, std::vector<GroupElem>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), n == 1 ? "trivial" : "Z" + std::to_string(n));
}

inline FiniteGroup trivial_group() { return cyclic_group(1); }

/// S3 as permutations of {0,1,2} in lexicographic order; element 0 is the
/// identity and (a*b)(x) = a(b(x)).
inline FiniteGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  auto index_of = [&](const std::array<int, 3>& q) {
    return static_cast<GroupElem>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<std::vector<GroupElem>> t(6, std::vector<GroupElem>(6));
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      std::array<int, 3> c{};
      for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
      t[a][b] = index_of(c);
    }
  return FiniteGroup(std::move(t), "S3");
}

/// "trivial", "Z<n>", or "S3".
inline FiniteGroup group_by_name(const std::string& name) {
  if (name == "trivial" || name == "Z1") return trivial_group();
  if (name == "S3") return symmetric_group_3();
  if (name.size() > 1 && name[0] == 'Z') {
    std::size_t n = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9') throw InputError("unknown group: " + name);
      n = n * 10 + static_cast<std::size_t>(c - '0');
    }
    return cyclic_group(n);
  }
  throw InputError("unknown group: " + name);
}

}  // namespace mhtc
