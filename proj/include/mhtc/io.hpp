#pragma once

#include <cctype>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mhtc/error.hpp"
#include "mhtc/instances.hpp"

namespace mhtc {

// Instance file format (version 1). Lines are whitespace-separated tokens;
// '#' starts a comment. Grammar:
//
//   file      := "mhtc-instance v1" NL "field" FIELD NL ("meta" KEY VALUE... NL)* section*
//   section   := "[group]" NL ("name" NAME NL)? row{n}
//              | "[algebra]" NL "dims" d_0 .. d_{n-1} NL ("mu" p NL row{d_p * d_p})*
//              | "[comultiplication]" NL ("delta" p q NL row{d_p d_q})*
//              | "[counit]" NL "eps" v_1 .. v_{d_e} NL
//              | "[antipode]" NL ("S" p NL row{d_{p^-1}})*
//              | "[crossing]" NL ("pi" q NL row{N})* ("rho" q r_0 .. r_{n-1} NL)*
//              | "[rmatrix]" NL ("R" s t NL row{1})*
//              | "[module" NAME "]" NL "dims" ... NL ("act" p i NL row{m_p})* ("cross" q p NL row{m_qpq^-1})*
//
// "mu p" is followed by one row per basis pair (i, j) holding b_i b_j. Every
// matrix is written row by row. N is the total dimension of the algebra.
// Scalars are integers or fractions; in F_p files fractions are resolved by
// modular inverse.

namespace detail {

inline std::string row_string(const Matrix& m, std::size_t i) {
  std::string s;
  for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? " " : "") + m(i, j).to_string();
  return s;
}

inline void write_matrix(std::ostringstream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) os << row_string(m, i) << '\n';
}

inline std::string vec_string(const Vec& v) {
  std::string s;
  for (std::size_t j = 0; j < v.size(); ++j) s += (j ? " " : "") + v[j].to_string();
  return s;
}

}  // namespace detail

inline std::string serialize(const InstanceBundle& b) {
  const auto& g = b.group();
  const auto n = g.order();
  std::ostringstream os;
  os << "mhtc-instance v1\n";
  os << "field " << b.field().name() << '\n';
  for (const auto& [k, v] : b.meta) os << "meta " << k << ' ' << v << '\n';

  os << "[group]\n";
  if (!g.name().empty()) os << "name " << g.name() << '\n';
  for (const auto& row : g.cayley()) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }

  os << "[algebra]\ndims";
  for (auto d : b.algebra.dims()) os << ' ' << d;
  os << '\n';
  for (GroupElem p = 0; p < n; ++p) {
    os << "mu " << p << '\n';
    const Algebra& ap = b.algebra.component(p);
    for (std::size_t i = 0; i < ap.dim(); ++i)
      for (std::size_t j = 0; j < ap.dim(); ++j) os << detail::vec_string(ap.left(i).col(j)) << '\n';
  }

  os << "[comultiplication]\n";
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q) {
      os << "delta " << p << ' ' << q << '\n';
      detail::write_matrix(os, b.delta.at(p, q));
    }

  if (b.eps) os << "[counit]\neps " << detail::vec_string(b.eps->eps) << '\n';
  if (b.antipode) {
    os << "[antipode]\n";
    for (GroupElem p = 0; p < n; ++p) {
      os << "S " << p << '\n';
      detail::write_matrix(os, b.antipode->at(p));
    }
  }

  os << "[crossing]\n";
  for (GroupElem q = 0; q < n; ++q) {
    os << "pi " << q << '\n';
    detail::write_matrix(os, b.crossing.pi[q]);
  }
  if (b.crossing.rho != g.adjoint_table()) {
    for (GroupElem q = 0; q < n; ++q) {
      os << "rho " << q;
      for (auto x : b.crossing.rho[q]) os << ' ' << x;
      os << '\n';
    }
  }

  if (b.rmatrix) {
    os << "[rmatrix]\n";
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        const RComponent& c = b.rmatrix->at(s, t);
        if (!c.element) throw InputError("serialize: R component without an element form");
        os << "R " << s << ' ' << t << '\n' << detail::vec_string(*c.element) << '\n';
      }
  }

  for (const auto& m : b.modules) {
    os << "[module " << m.name << "]\ndims";
    for (auto d : m.dims()) os << ' ' << d;
    os << '\n';
    for (GroupElem p = 0; p < n; ++p)
      for (std::size_t i = 0; i < m.module.action[p].size(); ++i) {
        os << "act " << p << ' ' << i << '\n';
        detail::write_matrix(os, m.module.action[p][i]);
      }
    for (GroupElem q = 0; q < n; ++q)
      for (GroupElem p = 0; p < n; ++p) {
        os << "cross " << q << ' ' << p << '\n';
        detail::write_matrix(os, m.crossing.blocks[q][p]);
      }
  }
  return os.str();
}

namespace detail {

class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t no = 0;
    while (std::getline(is, line)) {
      ++no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::vector<std::string> toks;
      for (std::string t; ls >> t;) toks.push_back(t);
      if (!toks.empty()) lines_.push_back({no, std::move(toks)});
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  const std::vector<std::string>& peek() const { return lines_.at(pos_).tokens; }
  std::size_t line_no() const { return done() ? (lines_.empty() ? 0 : lines_.back().no) : lines_[pos_].no; }
  const std::vector<std::string>& next() {
    if (done()) throw InputError("line " + std::to_string(line_no()) + ": unexpected end of file");
    return lines_[pos_++].tokens;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("line " + std::to_string(pos_ == 0 ? line_no() : lines_[pos_ - 1].no) + ": " + msg);
  }

 private:
  struct Line {
    std::size_t no;
    std::vector<std::string> tokens;
  };
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

inline bool is_section(const std::vector<std::string>& toks) { return !toks.empty() && toks[0].front() == '['; }

inline std::size_t to_index(LineReader& r, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) r.fail("expected a non-negative integer, got '" + s + "'");
  return std::stoul(s);
}

inline Scalar to_scalar(LineReader& r, Field f, const std::string& s) {
  try {
    return Scalar::parse(f, s);
  } catch (const std::exception& e) {
    r.fail("bad scalar '" + s + "': " + e.what());
  }
}

inline Vec read_row(LineReader& r, Field f, std::size_t width, const std::string& what) {
  const auto& toks = r.next();
  if (is_section(toks)) r.fail(what + ": expected a row of " + std::to_string(width) + " scalars");
  if (toks.size() != width) {
    r.fail(what + ": row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(width) +
           " (dimension mismatch)");
  }
  Vec v;
  for (const auto& t : toks) v.push_back(to_scalar(r, f, t));
  return v;
}

inline Matrix read_matrix(LineReader& r, Field f, std::size_t rows, std::size_t cols, const std::string& what) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    Vec v = read_row(r, f, cols, what);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = v[j];
  }
  if (!r.done() && !is_section(r.peek())) {
    const auto& toks = r.peek();
    const bool keyword = std::isalpha(static_cast<unsigned char>(toks[0][0])) && toks[0].find('/') == std::string::npos;
    if (!keyword) {
      r.next();
      r.fail(what + ": more rows than the declared " + std::to_string(rows) + " (dimension mismatch)");
    }
  }
  return m;
}

inline void expect_arity(LineReader& r, const std::vector<std::string>& toks, std::size_t n) {
  if (toks.size() != n) r.fail("'" + toks[0] + "' expects " + std::to_string(n - 1) + " arguments");
}

}  // namespace detail

/// Parses and validates an instance file. Errors carry the line number.
inline InstanceBundle parse_instance(const std::string& text) {
  detail::LineReader r(text);
  using detail::expect_arity;
  using detail::to_index;
  {
    const auto& h = r.next();
    if (h.size() != 2 || h[0] != "mhtc-instance" || h[1] != "v1") r.fail("expected header 'mhtc-instance v1'");
  }
  std::optional<Field> field;
  std::vector<std::pair<std::string, std::string>> meta;
  while (!r.done() && !detail::is_section(r.peek())) {
    const auto& toks = r.next();
    if (toks[0] == "field") {
      expect_arity(r, toks, 2);
      try {
        field = Field::parse(toks[1]);
      } catch (const InputError& e) {
        r.fail(e.what());
      }
    } else if (toks[0] == "meta") {
      if (toks.size() < 3) r.fail("'meta' expects a key and a value");
      std::string v = toks[2];
      for (std::size_t i = 3; i < toks.size(); ++i) v += " " + toks[i];
      meta.emplace_back(toks[1], v);
    } else {
      r.fail("unexpected '" + toks[0] + "' in header");
    }
  }
  if (!field) r.fail("missing 'field' line");
  const Field f = *field;

  std::optional<FiniteGroup> group;
  std::vector<std::size_t> dims;
  std::vector<std::optional<Algebra>> comps;
  std::optional<GradedAlgebra> algebra;
  std::vector<std::vector<std::optional<Matrix>>> delta;
  std::optional<Counit> eps;
  std::vector<std::optional<Matrix>> antipode;
  bool has_antipode = false;
  std::vector<std::optional<Matrix>> pis;
  std::vector<std::optional<std::vector<GroupElem>>> rhos;
  bool has_crossing = false;
  std::vector<std::vector<std::optional<Vec>>> relems;
  bool has_r = false;
  std::vector<CrossedModule> modules;

  auto need_group = [&]() -> const FiniteGroup& {
    if (!group) r.fail("section requires [group] first");
    return *group;
  };
  auto need_algebra = [&]() -> const GradedAlgebra& {
    if (!algebra) r.fail("section requires [algebra] first");
    return *algebra;
  };
  auto grade = [&](const std::string& s) {
    std::size_t v = to_index(r, s);
    if (v >= need_group().order()) r.fail("grade " + s + " out of range");
    return v;
  };
  auto body = [&](auto&& fn) {
    while (!r.done() && !detail::is_section(r.peek())) fn(r.next());
  };

  std::vector<std::string> seen;
  while (!r.done()) {
    const auto toks = r.next();
    std::string head = toks[0];
    for (std::size_t i = 1; i < toks.size(); ++i) head += " " + toks[i];
    if (head.back() != ']') r.fail("malformed section header '" + head + "'");
    const std::string sec = head.substr(1, head.size() - 2);
    const bool is_module = sec.rfind("module ", 0) == 0;
    if (!is_module) {
      for (const auto& s : seen)
        if (s == sec) r.fail("duplicate section [" + sec + "]");
      seen.push_back(sec);
    }

    if (sec == "group") {
      std::string name;
      std::vector<std::vector<GroupElem>> rows;
      body([&](const std::vector<std::string>& t) {
        if (t[0] == "name") {
          expect_arity(r, t, 2);
          name = t[1];
          return;
        }
        std::vector<GroupElem> row;
        for (const auto& x : t) row.push_back(to_index(r, x));
        rows.push_back(std::move(row));
      });
      try {
        group = FiniteGroup(std::move(rows), name);
      } catch (const InputError& e) {
        r.fail(std::string("[group]: ") + e.what());
      }
    } else if (sec == "algebra") {
      const auto& g = need_group();
      comps.assign(g.order(), std::nullopt);
      body([&](const std::vector<std::string>& t) {
        if (t[0] == "dims") {
          expect_arity(r, t, g.order() + 1);
          dims.clear();
          for (std::size_t i = 1; i < t.size(); ++i) dims.push_back(to_index(r, t[i]));
        } else if (t[0] == "mu") {
          expect_arity(r, t, 2);
          if (dims.empty()) r.fail("'mu' before 'dims'");
          const std::size_t p = grade(t[1]);
          const std::size_t d = dims[p];
          std::vector<std::vector<Vec>> products(d);
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) products[i].push_back(detail::read_row(r, f, d, "mu " + t[1]));
          comps[p] = Algebra::from_products(f, products);
        } else {
          r.fail("unexpected '" + t[0] + "' in [algebra]");
        }
      });
      std::vector<Algebra> cs;
      for (GroupElem p = 0; p < g.order(); ++p) {
        if (!comps[p]) r.fail("[algebra]: missing 'mu " + std::to_string(p) + "'");
        cs.push_back(*comps[p]);
      }
      try {
        algebra = GradedAlgebra(g, f, cs);
      } catch (const InputError& e) {
        r.fail(std::string("[algebra]: ") + e.what());
      }
    } else if (sec == "comultiplication") {
      const auto& a = need_algebra();
      const auto n = a.grades();
      delta.assign(n, std::vector<std::optional<Matrix>>(n));
      body([&](const std::vector<std::string>& t) {
        if (t[0] != "delta") r.fail("unexpected '" + t[0] + "' in [comultiplication]");
        expect_arity(r, t, 3);
        const std::size_t p = grade(t[1]), q = grade(t[2]);
        const std::size_t pq = a.group().mul(p, q);
        delta[p][q] = detail::read_matrix(r, f, a.dim(p) * a.dim(q), a.dim(pq), "delta " + t[1] + " " + t[2]);
      });
    } else if (sec == "counit") {
      const auto& a = need_algebra();
      body([&](const std::vector<std::string>& t) {
        if (t[0] != "eps") r.fail("unexpected '" + t[0] + "' in [counit]");
        if (t.size() != a.dim(0) + 1) r.fail("eps has " + std::to_string(t.size() - 1) + " entries, expected " + std::to_string(a.dim(0)));
        Vec v;
        for (std::size_t i = 1; i < t.size(); ++i) v.push_back(detail::to_scalar(r, f, t[i]));
        eps = Counit{v};
      });
    } else if (sec == "antipode") {
      const auto& a = need_algebra();
      has_antipode = true;
      antipode.assign(a.grades(), std::nullopt);
      body([&](const std::vector<std::string>& t) {
        if (t[0] != "S") r.fail("unexpected '" + t[0] + "' in [antipode]");
        expect_arity(r, t, 2);
        const std::size_t p = grade(t[1]);
        antipode[p] = detail::read_matrix(r, f, a.dim(a.group().inv(p)), a.dim(p), "S " + t[1]);
      });
    } else if (sec == "crossing") {
      const auto& a = need_algebra();
      has_crossing = true;
      pis.assign(a.grades(), std::nullopt);
      rhos.assign(a.grades(), std::nullopt);
      body([&](const std::vector<std::string>& t) {
        if (t[0] == "pi") {
          expect_arity(r, t, 2);
          const std::size_t q = grade(t[1]);
          pis[q] = detail::read_matrix(r, f, a.total_dim(), a.total_dim(), "pi " + t[1]);
        } else if (t[0] == "rho") {
          expect_arity(r, t, a.grades() + 2);
          const std::size_t q = grade(t[1]);
          std::vector<GroupElem> row;
          for (std::size_t i = 2; i < t.size(); ++i) row.push_back(grade(t[i]));
          rhos[q] = row;
        } else {
          r.fail("unexpected '" + t[0] + "' in [crossing]");
        }
      });
    } else if (sec == "rmatrix") {
      const auto& a = need_algebra();
      has_r = true;
      relems.assign(a.grades(), std::vector<std::optional<Vec>>(a.grades()));
      body([&](const std::vector<std::string>& t) {
        if (t[0] != "R") r.fail("unexpected '" + t[0] + "' in [rmatrix]");
        expect_arity(r, t, 3);
        const std::size_t s = grade(t[1]), u = grade(t[2]);
        relems[s][u] = detail::read_row(r, f, a.dim(s) * a.dim(u), "R " + t[1] + " " + t[2]);
      });
    } else if (is_module) {
      const auto& a = need_algebra();
      const auto n = a.grades();
      CrossedModule m;
      m.name = sec.substr(7);
      if (m.name.empty() || m.name.find(' ') != std::string::npos) r.fail("bad module name '" + m.name + "'");
      for (const auto& other : modules)
        if (other.name == m.name) r.fail("duplicate module " + m.name);
      std::vector<std::vector<std::optional<Matrix>>> acts(n), cross(n, std::vector<std::optional<Matrix>>(n));
      for (GroupElem p = 0; p < n; ++p) acts[p].assign(a.dim(p), std::nullopt);
      body([&](const std::vector<std::string>& t) {
        if (t[0] == "dims") {
          expect_arity(r, t, n + 1);
          m.module.dims.clear();
          for (std::size_t i = 1; i < t.size(); ++i) m.module.dims.push_back(to_index(r, t[i]));
        } else if (t[0] == "act") {
          expect_arity(r, t, 3);
          if (m.module.dims.empty()) r.fail("'act' before 'dims'");
          const std::size_t p = grade(t[1]);
          const std::size_t i = to_index(r, t[2]);
          if (i >= a.dim(p)) r.fail("basis index " + t[2] + " out of range");
          acts[p][i] = detail::read_matrix(r, f, m.module.dims[p], m.module.dims[p], "act " + t[1] + " " + t[2]);
        } else if (t[0] == "cross") {
          expect_arity(r, t, 3);
          if (m.module.dims.empty()) r.fail("'cross' before 'dims'");
          const std::size_t q = grade(t[1]), p = grade(t[2]);
          cross[q][p] = detail::read_matrix(r, f, m.module.dims[a.group().conj(q, p)], m.module.dims[p],
                                            "cross " + t[1] + " " + t[2]);
        } else {
          r.fail("unexpected '" + t[0] + "' in [module " + m.name + "]");
        }
      });
      if (m.module.dims.empty()) r.fail("[module " + m.name + "]: missing 'dims'");
      m.module.action.resize(n);
      m.crossing.blocks.resize(n);
      for (GroupElem p = 0; p < n; ++p)
        for (std::size_t i = 0; i < a.dim(p); ++i) {
          if (!acts[p][i]) r.fail("[module " + m.name + "]: missing 'act " + std::to_string(p) + " " + std::to_string(i) + "'");
          m.module.action[p].push_back(*acts[p][i]);
        }
      for (GroupElem q = 0; q < n; ++q)
        for (GroupElem p = 0; p < n; ++p) {
          if (!cross[q][p]) r.fail("[module " + m.name + "]: missing 'cross " + std::to_string(q) + " " + std::to_string(p) + "'");
          m.crossing.blocks[q].push_back(*cross[q][p]);
        }
      modules.push_back(std::move(m));
    } else {
      r.fail("unknown section [" + sec + "]");
    }
  }

  if (!algebra) r.fail("missing [algebra] section");
  if (delta.empty()) r.fail("missing [comultiplication] section");
  const auto& a = *algebra;
  const auto n = a.grades();
  InstanceBundle b;
  b.meta = std::move(meta);
  b.algebra = a;
  b.delta.maps.resize(n);
  for (GroupElem p = 0; p < n; ++p)
    for (GroupElem q = 0; q < n; ++q) {
      if (!delta[p][q]) r.fail("[comultiplication]: missing 'delta " + std::to_string(p) + " " + std::to_string(q) + "'");
      b.delta.maps[p].push_back(*delta[p][q]);
    }
  b.eps = eps;
  if (has_antipode) {
    Antipode s;
    for (GroupElem p = 0; p < n; ++p) {
      if (!antipode[p]) r.fail("[antipode]: missing 'S " + std::to_string(p) + "'");
      s.maps.push_back(*antipode[p]);
    }
    b.antipode = s;
  }
  if (has_crossing) {
    b.crossing.rho = a.group().adjoint_table();
    for (GroupElem q = 0; q < n; ++q) {
      if (!pis[q]) r.fail("[crossing]: missing 'pi " + std::to_string(q) + "'");
      b.crossing.pi.push_back(*pis[q]);
      if (rhos[q]) b.crossing.rho[q] = *rhos[q];
    }
  } else {
    b.crossing = trivial_crossing(a);
  }
  if (has_r) {
    std::vector<std::vector<Vec>> elems(n);
    for (GroupElem s = 0; s < n; ++s)
      for (GroupElem t = 0; t < n; ++t) {
        if (!relems[s][t]) r.fail("[rmatrix]: missing 'R " + std::to_string(s) + " " + std::to_string(t) + "'");
        elems[s].push_back(*relems[s][t]);
      }
    b.rmatrix = rmatrix_from_elements(a, elems);
  }
  b.modules = std::move(modules);
  return b;
}

}  // namespace mhtc
