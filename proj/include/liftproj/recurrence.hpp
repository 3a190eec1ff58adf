#ifndef LIFTPROJ_RECURRENCE_HPP_
#define LIFTPROJ_RECURRENCE_HPP_

// Values of the symmetric points of the Example 2 cone (x(S) <= d/2 x0 for
// |S| = d/2 + 1, plus the box): the largest common value of the free
// coordinates when n0 coordinates are 0 and n1 are 1, after r rounds of
// N or N+.

#include <algorithm>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "liftproj/errors.hpp"
#include "liftproj/rational.hpp"

namespace liftproj {

enum class RecKind { C, CPlus };

inline std::string to_string(RecKind k) { return k == RecKind::C ? "c" : "c_plus"; }

/// Values c(r, n0, n1) for one r, over n1 <= min(d/2, bound) and
/// n0 + n1 <= bound.
class RecurrenceLayer {
 public:
  RecurrenceLayer() = default;
  RecurrenceLayer(int d, int bound) : h_(d / 2), bound_(bound) {
    for (int n1 = 0; n1 <= std::min(h_, bound); ++n1) rows_.emplace_back(static_cast<std::size_t>(bound - n1 + 1));
  }
  int bound() const { return bound_; }
  bool contains(int n0, int n1) const {
    return n0 >= 0 && n1 >= 0 && n1 <= h_ && n0 + n1 <= bound_;
  }
  Rational& at(int n0, int n1) { return rows_[static_cast<std::size_t>(n1)][static_cast<std::size_t>(n0)]; }
  const Rational& at(int n0, int n1) const { return rows_[static_cast<std::size_t>(n1)][static_cast<std::size_t>(n0)]; }

 private:
  int h_ = 0;
  int bound_ = -1;
  std::vector<std::vector<Rational>> rows_;
};

namespace detail {

inline void check_even(int d, const char* who) {
  if (d < 2 || d % 2 != 0) throw DomainError(std::string(who) + ": d must be even and positive");
}

inline Rational rec_base(int d, int n0, int n1) {
  const int h = d / 2;
  if (n0 <= h - 1) return frac(h - n1, h + 1 - n1);
  return Rational(1);
}

// Scratch values reused across entries to avoid reallocation.
struct RecScratch {
  Rational t;
  mpz_class lhs, rhs;
  const Rational one{1};
};

// out = a / (1 - b + a)
inline void rec_first(Rational& out, const Rational& a, const Rational& b, RecScratch& s) {
  mpq_sub(s.t.get_mpq_t(), s.one.get_mpq_t(), b.get_mpq_t());
  mpq_add(s.t.get_mpq_t(), s.t.get_mpq_t(), a.get_mpq_t());
  mpq_div(out.get_mpq_t(), a.get_mpq_t(), s.t.get_mpq_t());
}

// out = min(out, ((p-1) b + 1) / p). The second branch is smaller iff
// (p-1) u y + v y < p x v for out = x/y, b = u/v.
inline void rec_second(Rational& out, const Rational& b, long p, RecScratch& s) {
  mpz_mul(s.lhs.get_mpz_t(), b.get_num_mpz_t(), out.get_den_mpz_t());
  mpz_mul_si(s.lhs.get_mpz_t(), s.lhs.get_mpz_t(), p - 1);
  mpz_addmul(s.lhs.get_mpz_t(), b.get_den_mpz_t(), out.get_den_mpz_t());
  mpz_mul(s.rhs.get_mpz_t(), out.get_num_mpz_t(), b.get_den_mpz_t());
  mpz_mul_si(s.rhs.get_mpz_t(), s.rhs.get_mpz_t(), p);
  if (s.lhs < s.rhs) out = ((p - 1) * b + 1) / p;
}

// Layer r from layer r-1 for one kind, or for both when `prev_c` and `next_c`
// are given (then `prev`/`next` hold c+). With no free coordinate the value
// is 1; with d/2 ones the free coordinates are forced to 0. Where the c+
// inputs coincide with the c inputs, the c value is reused for the first
// branch.
inline void rec_step(int d, RecKind kind, const RecurrenceLayer& prev, RecurrenceLayer& next,
                     const RecurrenceLayer* prev_c, RecurrenceLayer* next_c) {
  const int h = d / 2;
  const int bound = next.bound();
  RecScratch scratch;
  for (int n1 = 0; n1 <= std::min(h, bound); ++n1) {
    for (int n0 = 0; n0 + n1 <= bound; ++n0) {
      Rational& out = next.at(n0, n1);
      if (n0 + n1 == d || n1 == h) {
        out = n0 + n1 == d ? 1 : 0;
        if (next_c) next_c->at(n0, n1) = out;
        continue;
      }
      const Rational& a = prev.at(n0 + 1, n1);
      const Rational& b = prev.at(n0, n1 + 1);
      if (next_c) {
        const Rational& ac = prev_c->at(n0 + 1, n1);
        const Rational& bc = prev_c->at(n0, n1 + 1);
        Rational& oc = next_c->at(n0, n1);
        rec_first(oc, ac, bc, scratch);
        if (a == ac && b == bc) {
          out = oc;
        } else {
          rec_first(out, a, b, scratch);
        }
      } else {
        rec_first(out, a, b, scratch);
      }
      if (kind == RecKind::CPlus) rec_second(out, b, d - n0 - n1, scratch);
    }
  }
}

inline RecurrenceLayer rec_base_layer(int d, int bound) {
  RecurrenceLayer cur(d, bound);
  for (int n1 = 0; n1 <= std::min(d / 2, bound); ++n1)
    for (int n0 = 0; n0 + n1 <= bound; ++n0) cur.at(n0, n1) = rec_base(d, n0, n1);
  return cur;
}

}  // namespace detail

/// Runs layers r = 0..depth; layer r covers n0 + n1 <= min(d, depth - r).
/// The callback sees each layer once; only two layers are alive at a time.
inline void recurrence_sweep(int d, RecKind kind, int depth,
                             const std::function<bool(int, const RecurrenceLayer&)>& visit) {
  detail::check_even(d, "recurrence_sweep");
  if (depth < 0) throw DomainError("recurrence_sweep: negative depth");
  RecurrenceLayer cur = detail::rec_base_layer(d, std::min(d, depth));
  if (!visit(0, cur)) return;
  for (int r = 1; r <= depth; ++r) {
    RecurrenceLayer next(d, std::min(d, depth - r));
    detail::rec_step(d, kind, cur, next, nullptr, nullptr);
    cur = std::move(next);
    if (!visit(r, cur)) return;
  }
}

/// Both kinds in one sweep: visit(r, c layer, c+ layer).
inline void recurrence_sweep_both(
    int d, int depth, const std::function<bool(int, const RecurrenceLayer&, const RecurrenceLayer&)>& visit) {
  detail::check_even(d, "recurrence_sweep_both");
  if (depth < 0) throw DomainError("recurrence_sweep_both: negative depth");
  RecurrenceLayer cur_c = detail::rec_base_layer(d, std::min(d, depth));
  RecurrenceLayer cur_p = cur_c;
  if (!visit(0, cur_c, cur_p)) return;
  for (int r = 1; r <= depth; ++r) {
    RecurrenceLayer next_c(d, std::min(d, depth - r)), next_p(d, std::min(d, depth - r));
    detail::rec_step(d, RecKind::CPlus, cur_p, next_p, &cur_c, &next_c);
    cur_c = std::move(next_c);
    cur_p = std::move(next_p);
    if (!visit(r, cur_c, cur_p)) return;
  }
}

/// All layers up to `depth`, kept in memory.
class RecurrenceTable {
 public:
  RecurrenceTable(int d, RecKind kind, int depth) : d_(d), kind_(kind) {
    recurrence_sweep(d, kind, depth, [this](int, const RecurrenceLayer& l) {
      layers_.push_back(l);
      return true;
    });
  }
  int d() const { return d_; }
  RecKind kind() const { return kind_; }
  int depth() const { return static_cast<int>(layers_.size()) - 1; }
  bool contains(int r, int n0, int n1) const {
    return r >= 0 && r <= depth() && layers_[static_cast<std::size_t>(r)].contains(n0, n1);
  }
  const Rational& value(int r, int n0, int n1) const {
    if (!contains(r, n0, n1)) throw DomainError("RecurrenceTable: query outside the table");
    return layers_[static_cast<std::size_t>(r)].at(n0, n1);
  }

 private:
  int d_;
  RecKind kind_;
  std::vector<RecurrenceLayer> layers_;
};

namespace detail {
inline Rational rec_value(int d, RecKind kind, int r, int n0, int n1, const char* who) {
  check_even(d, who);
  if (r < 0 || n0 < 0 || n1 < 0) throw DomainError(std::string(who) + ": negative argument");
  if (n1 > d / 2) throw DomainError(std::string(who) + ": n1 exceeds d/2");
  if (n0 + n1 > d) throw DomainError(std::string(who) + ": n0 + n1 exceeds d");
  Rational out;
  recurrence_sweep(d, kind, r + n0 + n1, [&](int layer, const RecurrenceLayer& l) {
    if (layer == r) out = l.at(n0, n1);
    return layer < r;
  });
  return out;
}
}  // namespace detail

inline Rational c_value(int d, int r, int n0, int n1) { return detail::rec_value(d, RecKind::C, r, n0, n1, "c_value"); }

inline Rational cplus_value(int d, int r, int n0, int n1) {
  return detail::rec_value(d, RecKind::CPlus, r, n0, n1, "cplus_value");
}

/// Smallest r with value(r, 0, 0) = 1/2.
inline int example2_rank(int d, RecKind kind) {
  detail::check_even(d, "example2_rank");
  if (d < 4) throw DomainError("example2_rank: d must be at least 4");
  int rank = -1;
  const Rational half = frac(1, 2);
  recurrence_sweep(d, kind, d, [&](int r, const RecurrenceLayer& l) {
    if (l.at(0, 0) == half) {
      rank = r;
      return false;
    }
    return true;
  });
  if (rank < 0) throw NumericalFailure("example2_rank: value 1/2 not reached by level d");
  return rank;
}

struct ClosedFormReport {
  int d = 0;
  Rational value;     // c(d-3, 0, 0)
  Rational expected;  // 1/2 + 1/(5d-6)
  bool matches = false;
};

inline ClosedFormReport closed_form_check(int d) {
  detail::check_even(d, "closed_form_check");
  if (d < 4) throw DomainError("closed_form_check: d must be at least 4");
  ClosedFormReport rep;
  rep.d = d;
  rep.value = c_value(d, d - 3, 0, 0);
  rep.expected = frac(1, 2) + frac(1, 5 * d - 6);
  rep.matches = rep.value == rep.expected;
  return rep;
}

struct AppendixReport {
  int d = 0;
  int r_max = 0;
  std::size_t checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Exhaustive check of the interlacing, differential interlacing, lower
/// bound and branch-agreement properties for r <= r_max.
inline AppendixReport appendix_suite(int d, int r_max) {
  detail::check_even(d, "appendix_suite");
  if (r_max < 0) throw DomainError("appendix_suite: negative r_max");
  const int h = d / 2;
  const int depth = r_max + d + 2;
  RecurrenceTable tc(d, RecKind::C, depth), tp(d, RecKind::CPlus, depth);
  AppendixReport rep;
  rep.d = d;
  rep.r_max = r_max;
  auto fail = [&](const std::string& what, int r, int n0, int n1, const std::string& detail) {
    std::ostringstream os;
    os << what << " at (r,n0,n1)=(" << r << "," << n0 << "," << n1 << "): " << detail;
    rep.violations.push_back(os.str());
  };
  auto check = [&](bool ok, const std::string& what, int r, int n0, int n1, const std::string& detail) {
    ++rep.checks;
    if (!ok) fail(what, r, n0, n1, detail);
  };

  for (int r = 1; r <= r_max; ++r) {
    // Interlacing, both kinds.
    for (int n0 = 0; n0 <= h - r; ++n0) {
      for (int n1 = 0; n1 <= h - r; ++n1) {
        for (const RecurrenceTable* t : {&tc, &tp}) {
          if (!t->contains(r, n0, n1)) continue;
          const Rational& lo = t->value(r - 1, n0, n1 + 1);
          const Rational& mid = t->value(r, n0, n1);
          const Rational& hi = t->value(r - 1, n0 + 1, n1);
          check(lo < mid && mid < hi, "interlacing(" + to_string(t->kind()) + ")", r, n0, n1,
                render(lo) + " < " + render(mid) + " < " + render(hi));
        }
      }
    }
    // Differential interlacing.
    for (int n0 = 0; n0 <= h - r - 2; ++n0) {
      for (int n1 = 1; n1 <= h - r; ++n1) {
        if (!tc.contains(r, n0 + 1, n1 - 1) || !tc.contains(r - 1, n0 + 2, n1 - 1)) continue;
        Rational lo = tc.value(r - 1, n0 + 2, n1 - 1) - tc.value(r - 1, n0 + 1, n1);
        Rational mid = tc.value(r, n0 + 1, n1 - 1) - tc.value(r, n0, n1);
        Rational hi = tc.value(r - 1, n0 + 1, n1) - tc.value(r - 1, n0, n1 + 1);
        check(lo < mid && mid < hi, "differential interlacing", r, n0, n1,
              render(lo) + " < " + render(mid) + " < " + render(hi));
      }
    }
    // Gap bound 1/((d/2+1-s)(d/2+2-s)).
    for (int n0 = 0; r + n0 <= h; ++n0) {
      for (int n1 = 0; r + n0 + n1 <= h; ++n1) {
        const int s = r + n0 + n1;
        Rational gap = tc.value(r - 1, n0 + 1, n1) - tc.value(r - 1, n0, n1 + 1);
        Rational cap = frac(1, static_cast<long>(h + 1 - s) * (h + 2 - s));
        // At r = 1 both sides are base-layer differences and may coincide
        // (n0 = 0, or d = 4 at s = d/2).
        const bool strict = r >= 2;
        check(strict ? gap < cap : gap <= cap, "gap bound", r, n0, n1,
              render(gap) + (strict ? " < " : " <= ") + render(cap));
      }
    }
  }
  for (int r = 0; r <= r_max; ++r) {
    for (int n0 = 0; r + n0 <= h; ++n0) {
      for (int n1 = 0; r + n0 + n1 <= h; ++n1) {
        const int s = r + n0 + n1;
        const Rational& c = tc.value(r, n0, n1);
        const Rational& cp = tp.value(r, n0, n1);
        const Rational floor_value = frac(h - s, h + 1 - s);
        // Strict only off the base column: at r = n0 = 0 both sides coincide.
        const bool strict = r + n0 >= 1;
        const bool ok = c >= cp && (strict ? cp > floor_value : cp == floor_value);
        check(ok, "lower bound", r, n0, n1, render(c) + " >= " + render(cp) + (strict ? " > " : " = ") + render(floor_value));
        // s <= d/2 - sqrt(d) + 3/2, decided exactly.
        const long m = 2L * h + 3 - 2L * s;
        if (m >= 0 && m * m >= 4L * d) check(c == cp, "branch agreement", r, n0, n1, render(c) + " = " + render(cp));
      }
    }
  }
  return rep;
}

struct Figure3Row {
  int r = 0;
  Rational c_plus;
  Rational c;
  Rational bound;  // 1 - 1/(d/2 + 1 - r)
};

inline std::vector<Figure3Row> figure3_data(int d) {
  detail::check_even(d, "figure3_data");
  const int h = d / 2;
  std::vector<Figure3Row> rows(static_cast<std::size_t>(h + 1));
  for (int r = 0; r <= h; ++r) {
    rows[static_cast<std::size_t>(r)].r = r;
    rows[static_cast<std::size_t>(r)].bound = 1 - frac(1, h + 1 - r);
  }
  recurrence_sweep_both(d, h, [&](int r, const RecurrenceLayer& c, const RecurrenceLayer& cp) {
    rows[static_cast<std::size_t>(r)].c = c.at(0, 0);
    rows[static_cast<std::size_t>(r)].c_plus = cp.at(0, 0);
    return true;
  });
  return rows;
}

inline std::string decimal12(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(q));
  return buf;
}

/// CSV with header r,c_plus,c,bound; decimals with 12 significant digits or
/// exact rationals.
inline std::string figure3_csv(const std::vector<Figure3Row>& rows, bool exact) {
  std::ostringstream os;
  os << "r,c_plus,c,bound\n";
  auto cell = [exact](const Rational& q) { return exact ? render(q) : decimal12(q); };
  for (const auto& row : rows) os << row.r << ',' << cell(row.c_plus) << ',' << cell(row.c) << ',' << cell(row.bound) << '\n';
  return os.str();
}

}  // namespace liftproj

#endif  // LIFTPROJ_RECURRENCE_HPP_
