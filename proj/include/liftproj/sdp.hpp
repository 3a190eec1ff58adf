#ifndef LIFTPROJ_SDP_HPP_
#define LIFTPROJ_SDP_HPP_

// Dense primal-dual interior-point solver for small block SDPs in LMI form:
//
//   maximize  b^T y
//   s.t.      S_k(y) = F0_k + sum_i y_i F_ik  PSD   (dense blocks)
//             g_l^T y + h_l >= 0                    (linear rows)
//             e_q^T y + f_q  = 0                    (equalities)
//
// Equalities are eliminated up front. The remaining pair is solved by an
// infeasible-start HKM predictor-corrector method. Infeasibility is decided
// by a separate phase-1 problem (maximize the smallest slack t) whose dual
// matrix X is rechecked as a Farkas-type certificate.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftproj/errors.hpp"

namespace liftproj {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Eigenvalues of a symmetric matrix in ascending order.
inline std::vector<double> eigen_sym(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigen_sym: matrix is not square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw DomainError("eigen_sym: matrix is not symmetric");
  if (m.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigen_sym: eigensolver did not converge");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end());
  return out;
}

inline double min_eigenvalue(const Mat& m) {
  if (m.rows() == 0) return std::numeric_limits<double>::infinity();
  Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct SparseRow {
  std::vector<std::pair<std::size_t, double>> terms;
  double constant = 0;
};

struct LmiBlock {
  Mat f0;
  std::vector<std::pair<std::size_t, Mat>> coefs;  // (variable, F_i)

  explicit LmiBlock(std::size_t n = 0) : f0(Mat::Zero(n, n)) {}
  std::size_t dim() const { return static_cast<std::size_t>(f0.rows()); }

  Mat& coef(std::size_t var) {
    for (auto& [v, m] : coefs)
      if (v == var) return m;
    coefs.emplace_back(var, Mat::Zero(f0.rows(), f0.cols()));
    return coefs.back().second;
  }
};

struct SdpProblem {
  std::size_t variables = 0;
  Vec objective;  // maximize objective^T y
  std::vector<LmiBlock> blocks;
  std::vector<SparseRow> inequalities;
  std::vector<SparseRow> equalities;
  double eps = 1e-8;
  // A priori bound |y_i| <= variable_bound on the feasible set (0: unknown);
  // used to make infeasibility certificates robust to residuals.
  double variable_bound = 0;
  std::size_t max_iterations = 150;
};

enum class SdpStatus { Optimal, Infeasible, Inconclusive, NumericalFailure };

inline std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::Optimal: return "optimal";
    case SdpStatus::Infeasible: return "infeasible";
    case SdpStatus::Inconclusive: return "inconclusive";
    case SdpStatus::NumericalFailure: return "numerical_failure";
  }
  return "?";
}

struct SdpOutcome {
  SdpStatus status = SdpStatus::NumericalFailure;
  double value = 0;
  Vec y;
  std::vector<Mat> slacks;  // S_k(y)
  std::vector<Mat> primal;  // X_k (dual multipliers of the blocks)
  double primal_residual = 0;
  double dual_residual = 0;
  double gap = 0;
  double min_eigenvalue = 0;  // smallest eigenvalue of S(y) and linear slack
  double margin = 0;          // infeasibility margin (phase-1 optimum, negated)
  std::size_t iterations = 0;
  std::string message;
};

/// Residuals recomputed from y alone: worst violation of equalities and of
/// the PSD / linear constraints.
struct SdpResiduals {
  double equality = 0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
};

inline Mat evaluate_block(const LmiBlock& b, const Vec& y) {
  Mat s = b.f0;
  for (const auto& [v, f] : b.coefs) s += y[static_cast<Eigen::Index>(v)] * f;
  return s;
}

inline double evaluate_row(const SparseRow& r, const Vec& y) {
  double s = r.constant;
  for (const auto& [v, c] : r.terms) s += c * y[static_cast<Eigen::Index>(v)];
  return s;
}

inline SdpResiduals sdp_residuals(const SdpProblem& p, const Vec& y) {
  SdpResiduals r;
  for (const auto& e : p.equalities) r.equality = std::max(r.equality, std::abs(evaluate_row(e, y)));
  for (const auto& b : p.blocks) r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(evaluate_block(b, y)));
  for (const auto& g : p.inequalities) r.min_eigenvalue = std::min(r.min_eigenvalue, evaluate_row(g, y));
  return r;
}

namespace detail {

// Problem without equalities: y = y0 + T w.
struct Reduced {
  std::size_t n = 0;
  Vec b;
  std::vector<LmiBlock> blocks;
  std::vector<SparseRow> rows;
  Vec y0;
  std::vector<SparseRow> back;  // y_i = y0_i + back[i](w)
  double obj_const = 0;
  bool infeasible_equalities = false;
  double equality_violation = 0;
};

inline Reduced reduce(const SdpProblem& p) {
  const std::size_t m = p.variables;
  Reduced r;
  // Gauss-Jordan on the equalities with largest-entry pivots.
  std::vector<std::vector<double>> e;
  std::vector<double> f;
  for (const auto& row : p.equalities) {
    std::vector<double> dense(m, 0.0);
    for (const auto& [v, c] : row.terms) dense[v] += c;
    e.push_back(std::move(dense));
    f.push_back(-row.constant);  // e^T y = f
  }
  std::vector<long> pivot_of_row;
  std::vector<bool> is_pivot(m, false);
  std::vector<std::size_t> piv_var;
  std::size_t rank = 0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    // eliminate with previous pivots already applied (rows kept reduced)
    std::size_t best = m;
    double bv = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (!is_pivot[j] && std::abs(e[i][j]) > bv) bv = std::abs(e[i][j]), best = j;
    double scale = 1.0;
    for (double x : e[i]) scale = std::max(scale, std::abs(x));
    if (best == m || bv <= 1e-11 * scale) {
      r.equality_violation = std::max(r.equality_violation, std::abs(f[i]));
      if (std::abs(f[i]) > 1e-9 * std::max(1.0, scale)) r.infeasible_equalities = true;
      e[i].assign(m, 0.0);
      f[i] = 0;
      continue;
    }
    const double inv = 1.0 / e[i][best];
    for (auto& x : e[i]) x *= inv;
    f[i] *= inv;
    e[i][best] = 1.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k == i || e[k][best] == 0.0) continue;
      const double c = e[k][best];
      for (std::size_t j = 0; j < m; ++j)
        if (e[i][j] != 0.0) e[k][j] -= c * e[i][j];
      e[k][best] = 0.0;
      f[k] -= c * f[i];
    }
    is_pivot[best] = true;
    piv_var.push_back(best);
    pivot_of_row.push_back(static_cast<long>(i));
    ++rank;
  }
  // Free variables become the reduced variables w.
  std::vector<long> w_index(m, -1);
  std::size_t n = 0;
  for (std::size_t j = 0; j < m; ++j)
    if (!is_pivot[j]) w_index[j] = static_cast<long>(n++);
  r.y0 = Vec::Zero(static_cast<Eigen::Index>(m));
  r.back.assign(m, SparseRow{});
  for (std::size_t j = 0; j < m; ++j)
    if (!is_pivot[j]) r.back[j].terms.emplace_back(static_cast<std::size_t>(w_index[j]), 1.0);
  for (std::size_t t = 0; t < piv_var.size(); ++t) {
    const auto i = static_cast<std::size_t>(pivot_of_row[t]);
    const std::size_t pv = piv_var[t];
    r.y0[static_cast<Eigen::Index>(pv)] = f[i];
    for (std::size_t j = 0; j < m; ++j)
      if (!is_pivot[j] && e[i][j] != 0.0) r.back[pv].terms.emplace_back(static_cast<std::size_t>(w_index[j]), -e[i][j]);
  }

  // Objective and constraints in w.
  r.b = Vec::Zero(static_cast<Eigen::Index>(n));
  r.obj_const = p.objective.size() ? p.objective.dot(r.y0) : 0.0;
  for (std::size_t j = 0; j < m && p.objective.size(); ++j)
    for (const auto& [w, c] : r.back[j].terms) r.b[static_cast<Eigen::Index>(w)] += c * p.objective[static_cast<Eigen::Index>(j)];
  for (const auto& blk : p.blocks) {
    LmiBlock nb(blk.dim());
    nb.f0 = blk.f0;
    for (const auto& [v, fm] : blk.coefs) {
      nb.f0 += r.y0[static_cast<Eigen::Index>(v)] * fm;
      for (const auto& [w, c] : r.back[v].terms) nb.coef(w) += c * fm;
    }
    r.blocks.push_back(std::move(nb));
  }
  for (const auto& row : p.inequalities) {
    SparseRow nr;
    nr.constant = row.constant;
    std::map<std::size_t, double> acc;
    for (const auto& [v, c] : row.terms) {
      nr.constant += c * r.y0[static_cast<Eigen::Index>(v)];
      for (const auto& [w, c2] : r.back[v].terms) acc[w] += c * c2;
    }
    for (const auto& [w, c] : acc)
      if (c != 0.0) nr.terms.emplace_back(w, c);
    r.rows.push_back(std::move(nr));
  }
  r.n = n;
  return r;
}

struct IpmResult {
  bool converged = false;
  bool diverged = false;
  Vec w;
  std::vector<Mat> x;  // block multipliers
  Vec xl;              // linear-row multipliers
  double pobj = 0, dobj = 0, rp = 0, rd = 0, gap = 0;
  std::size_t iterations = 0;
  std::string message;
};

// Largest step in (0, 1] keeping M + a D positive definite (times tau).
inline double max_step(const Mat& m, const Mat& d, double tau) {
  if (m.rows() == 0) return 1.0;
  Eigen::LLT<Mat> llt(m);
  if (llt.info() != Eigen::Success) return 0.0;
  Mat l = llt.matrixL();
  Mat li = l.triangularView<Eigen::Lower>().solve(Mat::Identity(m.rows(), m.cols()));
  Mat s = li * d * li.transpose();
  s = 0.5 * (s + s.transpose());
  double lmin = min_eigenvalue(s);
  if (lmin >= 0) return 1.0;
  return std::min(1.0, -tau / lmin);
}

inline double max_step_vec(const Vec& x, const Vec& dx, double tau) {
  double a = 1.0;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (dx[i] < 0) a = std::min(a, -tau * x[i] / dx[i]);
  return a;
}

inline IpmResult ipm(const Reduced& p, double eps, std::size_t max_iter) {
  const std::size_t n = p.n;
  const std::size_t nb = p.blocks.size();
  const auto nl = static_cast<Eigen::Index>(p.rows.size());
  IpmResult res;

  // Linear rows as dense matrix G (nl x n) and constants h.
  Mat g = Mat::Zero(nl, static_cast<Eigen::Index>(n));
  Vec h(nl);
  for (Eigen::Index l = 0; l < nl; ++l) {
    h[l] = p.rows[static_cast<std::size_t>(l)].constant;
    for (const auto& [v, c] : p.rows[static_cast<std::size_t>(l)].terms) g(l, static_cast<Eigen::Index>(v)) += c;
  }

  double total_dim = static_cast<double>(nl);
  double normc = h.norm(), norma = g.norm();
  for (const auto& b : p.blocks) {
    total_dim += static_cast<double>(b.dim());
    normc = std::max(normc, b.f0.norm());
    for (const auto& [v, f] : b.coefs) norma = std::max(norma, f.norm());
  }
  const double normb = p.b.norm();
  if (total_dim == 0) {
    res.converged = p.b.norm() == 0;
    res.w = Vec::Zero(static_cast<Eigen::Index>(n));
    res.message = res.converged ? "" : "unbounded: no constraints";
    res.diverged = !res.converged;
    return res;
  }

  const double xi = std::max({10.0, std::sqrt(total_dim), (1 + normb) / (1 + norma)});
  const double eta = std::max({10.0, std::sqrt(total_dim), normc, norma});
  std::vector<Mat> x(nb), z(nb);
  for (std::size_t k = 0; k < nb; ++k) {
    const auto d = static_cast<Eigen::Index>(p.blocks[k].dim());
    x[k] = xi * Mat::Identity(d, d);
    z[k] = eta * Mat::Identity(d, d);
  }
  Vec xl = Vec::Constant(nl, xi), zl = Vec::Constant(nl, eta);
  Vec w = Vec::Zero(static_cast<Eigen::Index>(n));

  auto slack = [&](std::size_t k, const Vec& ww) { return evaluate_block(p.blocks[k], ww); };

  // Near the optimum the Schur solve loses accuracy. `best` keeps the iterate
  // with the smallest gap among those with both residuals within eps; the run
  // stops when the gap stops falling (5% over five iterations) or when the
  // residuals leave eps for three iterations after such an iterate was seen.
  std::optional<IpmResult> best;
  std::size_t stalled = 0, lost = 0;
  for (std::size_t it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    // Residuals.
    Vec rp = p.b;  // rp_i = b_i + <F_i, X>
    for (std::size_t k = 0; k < nb; ++k)
      for (const auto& [v, f] : p.blocks[k].coefs) rp[static_cast<Eigen::Index>(v)] += (f.array() * x[k].array()).sum();
    rp += g.transpose() * xl;
    std::vector<Mat> rdm(nb);
    double rdn = 0;
    for (std::size_t k = 0; k < nb; ++k) {
      rdm[k] = slack(k, w) - z[k];
      rdn += rdm[k].squaredNorm();
    }
    Vec rdl = g * w + h - zl;
    rdn = std::sqrt(rdn + rdl.squaredNorm());
    double pobj = h.dot(xl), dobj = p.b.dot(w), xz = xl.dot(zl);
    for (std::size_t k = 0; k < nb; ++k) {
      pobj += (p.blocks[k].f0.array() * x[k].array()).sum();
      xz += (x[k].array() * z[k].array()).sum();
    }
    const double mu = xz / total_dim;
    res.rp = rp.norm() / (1 + normb);
    res.rd = rdn / (1 + normc);
    res.gap = std::abs(pobj - dobj) / (1 + std::abs(pobj) + std::abs(dobj));
    res.pobj = pobj;
    res.dobj = dobj;
    if (std::getenv("LIFTPROJ_SDP_TRACE")) std::fprintf(stderr, "it %zu rp %.2e rd %.2e gap %.2e mu %.2e pobj %.8f dobj %.8f\n", it, res.rp, res.rd, res.gap, mu, pobj, dobj);
    if (res.rp <= eps && res.rd <= eps && res.gap <= eps) {
      res.converged = true;
      break;
    }
    const bool feasible = res.rp <= eps && res.rd <= eps;
    stalled = feasible && best && res.gap > 0.95 * best->gap ? stalled + 1 : 0;
    lost = best && !feasible ? lost + 1 : 0;
    if (feasible && (!best || res.gap < best->gap)) {
      best = res;
      best->w = w;
      best->x = x;
      best->xl = xl;
    }
    if (stalled >= 5 || lost >= 3) {
      res.message = stalled >= 5 ? "gap stalled" : "residuals lost";
      break;
    }
    double xmax = xl.size() ? xl.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& xk : x) xmax = std::max(xmax, xk.cwiseAbs().maxCoeff());
    if (xmax > 1e12 || std::abs(dobj) > 1e12 || !std::isfinite(mu)) {
      res.diverged = true;
      res.message = "iterates diverged";
      break;
    }

    // Schur complement.
    std::vector<Mat> zinv(nb);
    bool ok = true;
    for (std::size_t k = 0; k < nb; ++k) {
      Eigen::LLT<Mat> llt(z[k]);
      if (llt.info() != Eigen::Success) {
        ok = false;
        break;
      }
      zinv[k] = llt.solve(Mat::Identity(z[k].rows(), z[k].cols()));
      zinv[k] = 0.5 * (zinv[k] + zinv[k].transpose());
    }
    if (!ok) {
      res.message = "dual slack lost definiteness";
      break;
    }
    Mat schur = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < nb; ++k) {
      const auto& cs = p.blocks[k].coefs;
      std::vector<Mat> gj(cs.size());
      for (std::size_t a = 0; a < cs.size(); ++a) gj[a] = x[k] * cs[a].second * zinv[k];
      for (std::size_t a = 0; a < cs.size(); ++a)
        for (std::size_t b = 0; b < cs.size(); ++b)
          schur(static_cast<Eigen::Index>(cs[a].first), static_cast<Eigen::Index>(cs[b].first)) +=
              (cs[a].second.array() * gj[b].array()).sum();
    }
    Vec dl = xl.cwiseQuotient(zl);
    schur += g.transpose() * dl.asDiagonal() * g;
    schur = 0.5 * (schur + schur.transpose());
    const Mat schur_exact = schur;
    const double reg = 1e-13 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
    schur.diagonal().array() += reg;
    Eigen::LDLT<Mat> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      res.message = "Schur complement factorization failed";
      break;
    }

    // Direction for a right-hand side R (blocks) and rl (linear rows).
    auto direction = [&](const std::vector<Mat>& rm, const Vec& rl, Vec& dw, std::vector<Mat>& dx,
                         std::vector<Mat>& dz, Vec& dxl, Vec& dzl) {
      Vec rhs = rp;
      for (std::size_t k = 0; k < nb; ++k) {
        Mat t = (rm[k] - x[k] * rdm[k]) * zinv[k];
        for (const auto& [v, f] : p.blocks[k].coefs) rhs[static_cast<Eigen::Index>(v)] += (f.array() * t.array()).sum();
      }
      Vec tl = (rl - xl.cwiseProduct(rdl)).cwiseQuotient(zl);
      rhs += g.transpose() * tl;
      dw = ldlt.solve(rhs);
      for (int pass = 0; pass < 3; ++pass) dw += ldlt.solve(rhs - schur_exact * dw);
      Vec dwl = g * dw;
      dzl = rdl + dwl;
      dxl = (rl - xl.cwiseProduct(dzl)).cwiseQuotient(zl);
      dx.resize(nb);
      dz.resize(nb);
      for (std::size_t k = 0; k < nb; ++k) {
        dz[k] = rdm[k];
        for (const auto& [v, f] : p.blocks[k].coefs) dz[k] += dw[static_cast<Eigen::Index>(v)] * f;
        Mat t = (rm[k] - x[k] * dz[k]) * zinv[k];
        dx[k] = 0.5 * (t + t.transpose());
      }
    };
    auto steps = [&](const std::vector<Mat>& dx, const std::vector<Mat>& dz, const Vec& dxl, const Vec& dzl,
                     double tau, double& ap, double& ad) {
      ap = max_step_vec(xl, dxl, tau);
      ad = max_step_vec(zl, dzl, tau);
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(x[k], dx[k], tau));
        ad = std::min(ad, max_step(z[k], dz[k], tau));
      }
    };

    // Predictor.
    std::vector<Mat> rm(nb);
    for (std::size_t k = 0; k < nb; ++k) rm[k] = -x[k] * z[k];
    Vec rl = -xl.cwiseProduct(zl);
    Vec dw;
    std::vector<Mat> dx, dz;
    Vec dxl, dzl;
    direction(rm, rl, dw, dx, dz, dxl, dzl);
    double ap = 1, ad = 1;
    steps(dx, dz, dxl, dzl, 1.0, ap, ad);
    double xz_aff = (xl + ap * dxl).dot(zl + ad * dzl);
    for (std::size_t k = 0; k < nb; ++k)
      xz_aff += ((x[k] + ap * dx[k]).array() * (z[k] + ad * dz[k]).array()).sum();
    const double mu_aff = xz_aff / total_dim;
    const double sigma = std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0);

    // Corrector.
    for (std::size_t k = 0; k < nb; ++k) {
      const auto d = z[k].rows();
      rm[k] = sigma * mu * Mat::Identity(d, d) - x[k] * z[k] - dx[k] * dz[k];
    }
    rl = Vec::Constant(nl, sigma * mu) - xl.cwiseProduct(zl) - dxl.cwiseProduct(dzl);
    direction(rm, rl, dw, dx, dz, dxl, dzl);
    const double tau = 0.98;
    steps(dx, dz, dxl, dzl, tau, ap, ad);
    if (ap < 1e-12 && ad < 1e-12) {
      res.message = "step length collapsed";
      break;
    }
    for (std::size_t k = 0; k < nb; ++k) {
      x[k] += ap * dx[k];
      z[k] += ad * dz[k];
      x[k] = 0.5 * (x[k] + x[k].transpose());
      z[k] = 0.5 * (z[k] + z[k].transpose());
    }
    xl += ap * dxl;
    zl += ad * dzl;
    w += ad * dw;
  }
  res.w = w;
  res.x = x;
  res.xl = xl;
  if (!res.converged && res.message.empty()) res.message = "iteration limit reached";
  if (!res.converged && !res.diverged && best && best->gap <= 100 * eps) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s; kept best iterate, relative gap %.2e", res.message.c_str(), best->gap);
    const std::size_t iterations = res.iterations;
    res = *best;
    res.iterations = iterations;
    res.converged = true;
    res.message = buf;
  }
  return res;
}

inline Vec expand(const Reduced& r, const Vec& w) {
  Vec y = r.y0;
  for (std::size_t j = 0; j < r.back.size(); ++j)
    for (const auto& [v, c] : r.back[j].terms) y[static_cast<Eigen::Index>(j)] += c * w[static_cast<Eigen::Index>(v)];
  return y;
}

// Phase 1: maximize t s.t. S_k(w) - t I PSD, rows - t >= 0, 1 - t >= 0.
// Returns (t*, certificate verified) where the certificate is the block
// multiplier X of the phase-1 problem: X PSD, <F_i, X> ~ 0, <F0, X> < 0.
struct PhaseOne {
  bool solved = false;
  double t = 0;
  bool certified = false;
  double certificate_value = 0;
  std::size_t iterations = 0;
  Vec w;  // reduced variables of the phase-1 optimum
};

inline PhaseOne phase_one(const Reduced& r, double eps, std::size_t max_iter, double bound) {
  Reduced q;
  q.n = r.n + 1;
  const std::size_t t = r.n;
  q.b = Vec::Zero(static_cast<Eigen::Index>(q.n));
  q.b[static_cast<Eigen::Index>(t)] = 1;
  for (const auto& blk : r.blocks) {
    LmiBlock nb = blk;
    const auto d = static_cast<Eigen::Index>(blk.dim());
    nb.coef(t) = -Mat::Identity(d, d);
    q.blocks.push_back(std::move(nb));
  }
  for (const auto& row : r.rows) {
    SparseRow nr = row;
    nr.terms.emplace_back(t, -1.0);
    q.rows.push_back(std::move(nr));
  }
  SparseRow cap;
  cap.constant = 1;
  cap.terms.emplace_back(t, -1.0);
  q.rows.push_back(cap);

  PhaseOne out;
  IpmResult res = ipm(q, eps, max_iter);
  out.iterations = res.iterations;
  if (!res.converged) return out;
  out.solved = true;
  out.t = res.w[static_cast<Eigen::Index>(t)];
  out.w = res.w.head(static_cast<Eigen::Index>(r.n));

  // Certificate in the original (reduced) problem: clip X to PSD, then
  // <S(w), X> = <F0, X> + sum_i w_i <F_i, X> must be negative for every
  // admissible w, using |w_i| <= bound.
  double value = 0, resid = 0;
  std::vector<double> fi(r.n, 0.0);
  for (std::size_t k = 0; k < r.blocks.size(); ++k) {
    Eigen::SelfAdjointEigenSolver<Mat> es(res.x[k]);
    Vec lam = es.eigenvalues().cwiseMax(0.0);
    Mat xk = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    value += (r.blocks[k].f0.array() * xk.array()).sum();
    for (const auto& [v, f] : r.blocks[k].coefs) fi[v] += (f.array() * xk.array()).sum();
  }
  for (std::size_t l = 0; l < r.rows.size(); ++l) {
    const double xv = std::max(0.0, res.xl[static_cast<Eigen::Index>(l)]);
    value += r.rows[l].constant * xv;
    for (const auto& [v, c] : r.rows[l].terms) fi[v] += c * xv;
  }
  for (double f : fi) resid += std::abs(f);
  out.certificate_value = value;
  out.certified = bound > 0 && value + bound * resid < 0;
  return out;
}

// Adds the rows bound - y_i >= 0 and bound + y_i >= 0. They are redundant on
// the feasible set but give the multiplier side a strict interior.
inline SdpProblem with_bounds(const SdpProblem& p) {
  if (p.variable_bound <= 0) return p;
  SdpProblem q = p;
  for (std::size_t i = 0; i < p.variables; ++i) {
    for (double sgn : {-1.0, 1.0}) {
      SparseRow r;
      r.constant = p.variable_bound;
      r.terms.emplace_back(i, sgn);
      q.inequalities.push_back(std::move(r));
    }
  }
  return q;
}

// Equalities leave no freedom: the only candidate is y0.
inline bool determined(const SdpProblem& p, const Reduced& r, SdpOutcome& out) {
  if (r.n != 0) return false;
  out.y = expand(r, Vec());
  out.min_eigenvalue = sdp_residuals(p, out.y).min_eigenvalue;
  if (out.min_eigenvalue >= -p.eps) {
    out.status = SdpStatus::Optimal;
    out.value = p.objective.size() ? p.objective.dot(out.y) : 0.0;
  } else {
    out.status = SdpStatus::Infeasible;
    out.margin = -out.min_eigenvalue;
    out.message = "equalities fix every variable; slack not PSD";
  }
  return true;
}

}  // namespace detail

inline SdpOutcome sdp_solve(const SdpProblem& p) {
  if (p.eps <= 0) throw DomainError("sdp_solve: tolerance must be positive");
  if (p.objective.size() != 0 && static_cast<std::size_t>(p.objective.size()) != p.variables)
    throw DimensionError("sdp_solve: objective length mismatch");
  for (const auto& b : p.blocks)
    for (const auto& [v, f] : b.coefs)
      if (v >= p.variables || f.rows() != b.f0.rows() || f.cols() != b.f0.cols())
        throw DimensionError("sdp_solve: block coefficient out of range");
  SdpOutcome out;
  detail::Reduced r = detail::reduce(p);
  if (r.infeasible_equalities) {
    out.status = SdpStatus::Infeasible;
    out.margin = r.equality_violation;
    out.message = "linear equalities are inconsistent";
    return out;
  }
  if (detail::determined(p, r, out)) return out;
  detail::IpmResult res = detail::ipm(detail::reduce(detail::with_bounds(p)), p.eps, p.max_iterations);
  out.iterations = res.iterations;
  if (res.converged) {
    out.status = SdpStatus::Optimal;
    out.y = detail::expand(r, res.w);
    out.value = p.objective.size() ? p.objective.dot(out.y) : 0.0;
    out.primal_residual = res.rp;
    out.dual_residual = res.rd;
    out.gap = res.gap;
    out.message = res.message;
    out.primal = res.x;
    for (const auto& b : p.blocks) out.slacks.push_back(evaluate_block(b, out.y));
    out.min_eigenvalue = sdp_residuals(p, out.y).min_eigenvalue;
    return out;
  }
  // Not converged: decide feasibility separately.
  detail::PhaseOne ph = detail::phase_one(r, p.eps, p.max_iterations, p.variable_bound);
  out.iterations += ph.iterations;
  out.margin = -ph.t;
  if (!ph.solved) {
    out.status = SdpStatus::NumericalFailure;
    out.message = "main solve: " + res.message + "; phase 1 did not converge";
  } else if (ph.t <= -1e-6 && ph.certified) {
    out.status = SdpStatus::Infeasible;
    out.message = "phase-1 optimum " + std::to_string(ph.t);
  } else if (ph.t >= -1e-7) {
    out.status = SdpStatus::NumericalFailure;
    out.message = "feasible but main solve failed: " + res.message;
  } else {
    out.status = SdpStatus::Inconclusive;
    out.message = "phase-1 optimum " + std::to_string(ph.t) + " without a verified certificate";
  }
  return out;
}

/// Feasibility only: the phase-1 problem decides, with margin.
inline SdpOutcome sdp_feasibility(const SdpProblem& p) {
  SdpOutcome out;
  detail::Reduced r = detail::reduce(p);
  if (r.infeasible_equalities) {
    out.status = SdpStatus::Infeasible;
    out.margin = r.equality_violation;
    out.message = "linear equalities are inconsistent";
    return out;
  }
  if (detail::determined(p, r, out)) return out;
  detail::PhaseOne ph = detail::phase_one(r, p.eps, p.max_iterations, p.variable_bound);
  out.iterations = ph.iterations;
  out.margin = -ph.t;
  out.value = ph.t;
  if (ph.solved) {
    out.y = detail::expand(r, ph.w);
    out.min_eigenvalue = sdp_residuals(p, out.y).min_eigenvalue;
  }
  if (!ph.solved) {
    out.status = SdpStatus::NumericalFailure;
    out.message = "phase 1 did not converge";
  } else if (ph.t >= -1e-7) {
    out.status = SdpStatus::Optimal;
  } else if (ph.t <= -1e-6 && ph.certified) {
    out.status = SdpStatus::Infeasible;
  } else {
    out.status = SdpStatus::Inconclusive;
    out.message = "phase-1 optimum " + std::to_string(ph.t) + " without a verified certificate";
  }
  return out;
}

}  // namespace liftproj

#endif  // LIFTPROJ_SDP_HPP_
