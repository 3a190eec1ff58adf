#ifndef LIFTPROJ_CERTIFICATE_HPP_
#define LIFTPROJ_CERTIFICATE_HPP_

// Text format and checker for lifted membership certificates: a tree of
// matrices, one per internal node, whose columns are certified by children.
//
//   liftproj-certificate
//   kind <n|n0|nplus> d <d> depth <r> field <rational|double> nodes <count>
//   node <parent> <one|zero|root> <column> <level>
//   v <d+1 values>
//   y <(d+1)^2 values, row-major>   or   y -
//
// Doubles are written with 17 significant digits so they read back exactly.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "liftproj/cone.hpp"
#include "liftproj/errors.hpp"
#include "liftproj/exact_linalg.hpp"
#include "liftproj/lifted.hpp"
#include "liftproj/rational.hpp"
#include "liftproj/sdp.hpp"

namespace liftproj {

namespace detail {

inline std::string cert_value(const Rational& q) { return render(q); }
inline std::string cert_value(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <typename T>
T parse_cert_value(const std::string& tok) {
  if constexpr (std::is_same_v<T, double>) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) throw ParseError("certificate: bad number '" + tok + "'");
    return x;
  } else {
    return parse_rational(tok);
  }
}

}  // namespace detail

template <typename T>
std::string write_certificate(const LiftedCertificate<T>& c) {
  std::ostringstream os;
  os << "liftproj-certificate\n";
  os << "kind " << to_string(c.kind) << " d " << c.d << " depth " << c.depth << " field "
     << (std::is_same_v<T, double> ? "double" : "rational") << " nodes " << c.nodes.size() << "\n";
  for (const auto& n : c.nodes) {
    os << "node " << n.parent << ' ' << (n.parent < 0 ? "root" : n.via_one ? "one" : "zero") << ' ' << n.column << ' '
       << n.level << "\nv";
    for (const auto& x : n.v) os << ' ' << detail::cert_value(x);
    os << "\ny";
    if (n.y.empty()) os << " -";
    for (const auto& x : n.y) os << ' ' << detail::cert_value(x);
    os << "\n";
  }
  return os.str();
}

struct CertificateHeader {
  OpKind kind = OpKind::N;
  std::size_t d = 0;
  std::size_t depth = 0;
  bool exact = true;
  std::size_t nodes = 0;
};

class CertificateReader {
 public:
  explicit CertificateReader(std::istream& in) {
    std::string line, tok;
    while (std::getline(in, line)) {
      if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
      std::istringstream ls(line);
      while (ls >> tok) toks_.push_back(tok);
    }
    expect("liftproj-certificate");
    expect("kind");
    header_.kind = parse_op(next());
    expect("d");
    header_.d = count();
    expect("depth");
    header_.depth = count();
    expect("field");
    const std::string f = next();
    if (f != "rational" && f != "double") throw ParseError("certificate: unknown field '" + f + "'");
    header_.exact = f == "rational";
    expect("nodes");
    header_.nodes = count();
    body_ = pos_;
  }

  const CertificateHeader& header() const { return header_; }

  template <typename T>
  LiftedCertificate<T> read() {
    pos_ = body_;
    LiftedCertificate<T> c;
    c.kind = header_.kind;
    c.d = header_.d;
    c.depth = header_.depth;
    const std::size_t n = header_.d + 1;
    for (std::size_t k = 0; k < header_.nodes; ++k) {
      CertNode<T> node;
      expect("node");
      const std::string p = next();
      try {
        node.parent = std::stol(p);
      } catch (const std::exception&) {
        throw ParseError("certificate: bad parent '" + p + "'");
      }
      const std::string via = next();
      if (via != "one" && via != "zero" && via != "root") throw ParseError("certificate: bad branch '" + via + "'");
      node.via_one = via == "one";
      node.column = count();
      node.level = count();
      expect("v");
      for (std::size_t i = 0; i < n; ++i) node.v.push_back(detail::parse_cert_value<T>(next()));
      expect("y");
      if (peek() == "-") {
        next();
      } else {
        for (std::size_t i = 0; i < n * n; ++i) node.y.push_back(detail::parse_cert_value<T>(next()));
      }
      c.nodes.push_back(std::move(node));
    }
    if (pos_ != toks_.size()) throw ParseError("certificate: trailing data");
    return c;
  }

 private:
  const std::string& peek() const {
    if (pos_ >= toks_.size()) throw ParseError("certificate: unexpected end of file");
    return toks_[pos_];
  }
  std::string next() {
    const std::string& t = peek();
    ++pos_;
    return t;
  }
  void expect(const char* word) {
    std::string t = next();
    if (t != word) throw ParseError(std::string("certificate: expected '") + word + "', got '" + t + "'");
  }
  std::size_t count() {
    std::string t = next();
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("certificate: expected a count, got '" + t + "'");
    return static_cast<std::size_t>(std::stoull(t));
  }

  std::vector<std::string> toks_;
  std::size_t pos_ = 0;
  std::size_t body_ = 0;
  CertificateHeader header_;
};

struct CertificateCheck {
  bool valid = false;
  std::string reason;  // first violated condition
  std::size_t node = 0;
  double worst = 0;  // float mode: largest violation seen
};

namespace detail {

template <typename T>
struct CertOps {
  double tol = 0;
  double worst = 0;
  static T from(const Rational& q) {
    if constexpr (std::is_same_v<T, double>) {
      return q.get_d();
    } else {
      return q;
    }
  }
  bool eq(const T& a, const T& b) {
    if constexpr (std::is_same_v<T, double>) {
      const double e = std::abs(a - b);
      worst = std::max(worst, e);
      return e <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
    } else {
      return a == b;
    }
  }
  bool nonneg(const T& a) {
    if constexpr (std::is_same_v<T, double>) {
      worst = std::max(worst, -a);
      return a >= -tol;
    } else {
      return sgn(a) >= 0;
    }
  }
};

}  // namespace detail

/// Checks that the certificate proves root v in N^r(K) (N0^r, N+^r). Exact
/// for rational certificates; doubles use the absolute/relative tolerance.
template <typename T>
CertificateCheck verify_certificate(const HCone& k, const LiftedCertificate<T>& c, double tol = 1e-7) {
  CertificateCheck out;
  detail::CertOps<T> ops{tol, 0};
  auto fail = [&](std::size_t id, const std::string& why) {
    out.valid = false;
    out.node = id;
    out.reason = why;
    out.worst = ops.worst;
    return out;
  };
  const std::size_t d = k.d(), n = d + 1;
  if (c.d != d) return fail(0, "dimension differs from the cone");
  if (c.nodes.empty()) return fail(0, "no nodes");
  const auto& root = c.nodes[0];
  if (root.parent != -1 || root.level != c.depth) return fail(0, "first node is not a root at full depth");

  // States from paths, children per (column, branch).
  std::vector<std::vector<Fix>> state(c.nodes.size());
  std::vector<std::vector<long>> child_one(c.nodes.size()), child_zero(c.nodes.size());
  state[0].assign(n, Fix::Free);
  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const auto& nd = c.nodes[id];
    if (nd.v.size() != n) return fail(id, "vector has the wrong length");
    if (!nd.y.empty() && nd.y.size() != n * n) return fail(id, "matrix has the wrong size");
    if (id == 0) continue;
    if (nd.parent < 0 || static_cast<std::size_t>(nd.parent) >= id) return fail(id, "parent must precede the node");
    const auto p = static_cast<std::size_t>(nd.parent);
    if (c.nodes[p].y.empty()) return fail(id, "parent is a leaf");
    if (nd.column < 1 || nd.column > d) return fail(id, "column out of range");
    if (state[p][nd.column] != Fix::Free) return fail(id, "column already fixed on this path");
    if (nd.level + 1 != c.nodes[p].level) return fail(id, "level must drop by one");
    auto& slot = nd.via_one ? child_one[p] : child_zero[p];
    if (slot.empty()) slot.assign(n, -1);
    if (slot[nd.column] >= 0) return fail(id, "duplicate child");
    slot[nd.column] = static_cast<long>(id);
    state[id] = state[p];
    state[id][nd.column] = nd.via_one ? Fix::One : Fix::Zero;
  }

  for (std::size_t id = 0; id < c.nodes.size(); ++id) {
    const auto& nd = c.nodes[id];
    const auto& st = state[id];
    bool any_free = false;
    for (std::size_t i = 1; i <= d; ++i) any_free = any_free || st[i] == Fix::Free;

    if (nd.y.empty()) {
      // Leaf: v in K; above level 0 also a scaled 0-1 point, which lies in
      // every relaxation.
      for (const auto& a : k.rows()) {
        T s = 0;
        for (std::size_t i = 0; i < n; ++i) s += detail::CertOps<T>::from(a[i]) * nd.v[i];
        if (!ops.nonneg(s)) return fail(id, "leaf vector violates a row of K");
      }
      if (nd.level > 0) {
        if (any_free) return fail(id, "leaf above level 0 with free coordinates");
        for (std::size_t i = 1; i <= d; ++i)
          if (!ops.eq(nd.v[i], st[i] == Fix::One ? nd.v[0] : T(0))) return fail(id, "leaf is not a scaled 0-1 point");
      }
      continue;
    }

    if (nd.level == 0) return fail(id, "matrix at level 0");
    auto y = [&](std::size_t a, std::size_t b) -> const T& { return nd.y[a * n + b]; };
    for (std::size_t i = 0; i < n; ++i) {
      if (!ops.eq(y(i, 0), nd.v[i])) return fail(id, "Y e0 differs from v");
      if (!ops.eq(y(i, i), y(i, 0))) return fail(id, "diag(Y) differs from Y e0");
      if (!ops.eq(y(0, i), y(i, 0))) return fail(id, "Y^T e0 differs from Y e0");
    }
    if (c.kind != OpKind::N0)
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          if (!ops.eq(y(a, b), y(b, a))) return fail(id, "matrix is not symmetric");
    for (std::size_t j = 1; j <= d; ++j) {
      const long c1 = child_one[id].empty() ? -1 : child_one[id][j];
      const long c0 = child_zero[id].empty() ? -1 : child_zero[id][j];
      if (st[j] == Fix::Free) {
        if (c1 < 0 || c0 < 0) return fail(id, "missing child for column " + std::to_string(j));
        for (std::size_t a = 0; a < n; ++a) {
          if (!ops.eq(c.nodes[static_cast<std::size_t>(c1)].v[a], y(a, j))) return fail(id, "child differs from Y e_j");
          if (!ops.eq(c.nodes[static_cast<std::size_t>(c0)].v[a], T(y(a, 0) - y(a, j))))
            return fail(id, "child differs from Y (e0 - e_j)");
        }
      } else {
        // Fixed coordinate: column j is 0 or equals column 0, so both
        // Y e_j and Y (e0 - e_j) are 0 or v, and v is the sum of the two
        // children of any free column.
        if (!any_free) return fail(id, "matrix without free coordinates");
        for (std::size_t a = 0; a < n; ++a)
          if (!ops.eq(y(a, j), st[j] == Fix::One ? y(a, 0) : T(0))) return fail(id, "fixed column has the wrong shape");
      }
    }
    if (c.kind == OpKind::NPlus) {
      if constexpr (std::is_same_v<T, double>) {
        Mat m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b)
            m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = 0.5 * (y(a, b) + y(b, a));
        const double lam = min_eigenvalue(m);
        ops.worst = std::max(ops.worst, -lam);
        if (lam < -tol) return fail(id, "matrix is not positive semidefinite");
      } else {
        RMat m(n, n);
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) m(a, b) = y(a, b);
        if (!ldlt_psd_check(m).psd) return fail(id, "matrix is not positive semidefinite");
      }
    }
  }
  out.valid = true;
  out.worst = ops.worst;
  return out;
}

/// Exact rational copy of a floating-point certificate.
inline LiftedCertificate<Rational> to_rational(const LiftedCertificate<double>& c) {
  LiftedCertificate<Rational> out;
  out.kind = c.kind;
  out.d = c.d;
  out.depth = c.depth;
  for (const auto& n : c.nodes) {
    CertNode<Rational> m;
    m.parent = n.parent;
    m.via_one = n.via_one;
    m.column = n.column;
    m.level = n.level;
    for (double x : n.v) m.v.emplace_back(x);
    for (double x : n.y) m.y.emplace_back(x);
    out.nodes.push_back(std::move(m));
  }
  return out;
}

}  // namespace liftproj

#endif  // LIFTPROJ_CERTIFICATE_HPP_
