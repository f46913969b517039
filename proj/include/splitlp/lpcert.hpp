#ifndef SPLITLP_LPCERT_HPP
#define SPLITLP_LPCERT_HPP

// Floating-point feasibility solving and exact Farkas certificates.
//
// The float simplex is only ever a source of hints. Infeasibility is
// established by verify_farkas, which works in exact integer arithmetic.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "splitlp/constraints.hpp"
#include "splitlp/error.hpp"
#include "splitlp/rational.hpp"

namespace splitlp {

enum class SolveStatus { Feasible, InfeasibleCandidate, Inconclusive };

inline const char* status_str(SolveStatus s) {
  switch (s) {
    case SolveStatus::Feasible:
      return "feasible";
    case SolveStatus::InfeasibleCandidate:
      return "infeasible-candidate";
    case SolveStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

struct SolveOptions {
  double tolerance = 1e-7;
  std::size_t max_iterations = 500000;
  std::size_t max_tableau_cells = 400'000'000;  // ~3.2 GB of doubles
  std::size_t degenerate_before_bland = 64;
  double perturbation = 1e-7;  // relative, on scaled rows; 0 disables
  double time_limit_seconds = 0;  // wall clock for the pivot loop; 0 means none
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Inconclusive;
  std::vector<double> point;        // Feasible: one value per variable
  std::vector<double> multipliers;  // InfeasibleCandidate: one per row, original orientation
  std::vector<double> scaled_multipliers;  // the same, before undoing row scaling
  std::vector<int> row_shift;       // row i was scaled by 2^-row_shift[i]
  std::size_t iterations = 0;
  double residual = 0;              // phase-1 objective at termination
  std::string message;
};

namespace detail {

/// Dense tableau phase-1 simplex over x >= 0.
class DenseSimplex {
 public:
  DenseSimplex(const ConstraintSystem& cs, const SolveOptions& opt) : cs_(cs), opt_(opt) {}

  SolveOutcome run() {
    SolveOutcome out;
    const std::size_t nv = cs_.variables.size();
    const std::size_t m_all = cs_.rows.size();
    out.multipliers.assign(m_all, 0.0);
    out.scaled_multipliers.assign(m_all, 0.0);
    out.row_shift.assign(m_all, 0);

    // Active rows: everything but plain bounds, which the variables carry.
    for (std::size_t i = 0; i < m_all; ++i) {
      if (!cs_.rows[i].is_nonnegativity()) active_.push_back(i);
    }
    m_ = active_.size();
    if (m_ == 0) {
      out.status = SolveStatus::Feasible;
      out.point.assign(nv, 0.0);
      return out;
    }

    // Orientation, scaling and column layout.
    sign_.assign(m_, 1.0);
    shift_.assign(m_, 0);
    slack_col_.assign(m_, -1);
    art_col_.assign(m_, -1);
    std::size_t ncols = nv;
    for (std::size_t ii = 0; ii < m_; ++ii) {
      const auto& row = cs_.rows[active_[ii]];
      std::int64_t mx = std::llabs(row.rhs);
      for (auto c : row.coeffs) mx = std::max<std::int64_t>(mx, std::llabs(c));
      int e = 0;
      if (mx > 0) std::frexp(static_cast<double>(mx), &e);
      shift_[ii] = e;  // power-of-two scaling keeps the scaled values exact
      if (row.relation == Relation::GreaterEq) {
        if (row.rhs <= 0) {
          sign_[ii] = -1.0;
          slack_col_[ii] = static_cast<long>(ncols++);
        } else {
          slack_col_[ii] = static_cast<long>(ncols++);
          art_col_[ii] = static_cast<long>(ncols++);
        }
      } else {
        if (row.rhs < 0) sign_[ii] = -1.0;
        art_col_[ii] = static_cast<long>(ncols++);
      }
    }
    ncols_ = ncols;
    width_ = ncols_ + 1;
    if (static_cast<double>(m_) * static_cast<double>(width_) > static_cast<double>(opt_.max_tableau_cells)) {
      out.status = SolveStatus::Inconclusive;
      out.message = "tableau of " + std::to_string(m_) + "x" + std::to_string(width_) + " exceeds the size cap";
      return out;
    }
    tab_.assign(m_ * width_, 0.0);
    cost_.assign(ncols_, 0.0);
    basis_.assign(m_, 0);
    is_art_.assign(ncols_, 0);
    for (std::size_t ii = 0; ii < m_; ++ii) {
      const auto& row = cs_.rows[active_[ii]];
      const double f = sign_[ii] * std::ldexp(1.0, -shift_[ii]);
      double* t = &tab_[ii * width_];
      for (std::size_t j = 0; j < nv; ++j) t[j] = static_cast<double>(row.coeffs[j]) * f;
      t[ncols_] = static_cast<double>(row.rhs) * f;
      if (slack_col_[ii] >= 0) t[slack_col_[ii]] = row.relation == Relation::GreaterEq ? -sign_[ii] : 0.0;
      if (art_col_[ii] >= 0) {
        t[art_col_[ii]] = 1.0;
        cost_[art_col_[ii]] = 1.0;
        is_art_[art_col_[ii]] = 1;
        basis_[ii] = static_cast<std::size_t>(art_col_[ii]);
      } else {
        basis_[ii] = static_cast<std::size_t>(slack_col_[ii]);
      }
    }
    is_basic_.assign(ncols_, 0);
    for (auto b : basis_) is_basic_[b] = 1;

    // Deterministic relaxing perturbation of the right-hand sides against
    // degeneracy. Harmless: the result is only a hint for exact checking.
    original_rhs_.resize(m_);
    for (std::size_t ii = 0; ii < m_; ++ii) {
      double& b = tab_[ii * width_ + ncols_];
      original_rhs_[ii] = b;
      if (opt_.perturbation <= 0) continue;
      const double frac = std::fmod(static_cast<double>(ii + 1) * 0.6180339887498949, 1.0);
      const double delta = opt_.perturbation * (1.0 + frac);
      const auto& row = cs_.rows[active_[ii]];
      if (row.relation == Relation::GreaterEq && sign_[ii] > 0) {
        b -= std::min(delta, 0.5 * b);
      } else {
        b += delta;
      }
    }
    rhs_scale_ = 1.0;
    for (std::size_t ii = 0; ii < m_; ++ii) rhs_scale_ = std::max(rhs_scale_, std::fabs(tab_[ii * width_ + ncols_]));

    // Reduced costs d_j = c_j - sum_i c_B(i) T[i][j], objective in d_[ncols].
    red_.assign(width_, 0.0);
    for (std::size_t j = 0; j < ncols_; ++j) red_[j] = cost_[j];
    for (std::size_t ii = 0; ii < m_; ++ii) {
      const double cb = cost_[basis_[ii]];
      if (cb == 0.0) continue;
      const double* t = &tab_[ii * width_];
      for (std::size_t j = 0; j <= ncols_; ++j) red_[j] -= cb * t[j];
    }

    devex_.assign(ncols_, 1.0);
    const double eps = 1e-11;
    std::size_t degenerate = 0;
    bool bland = false;
    std::size_t it = 0;
    const auto t0 = std::chrono::steady_clock::now();
    for (; it < opt_.max_iterations; ++it) {
      if (opt_.time_limit_seconds > 0 && (it & 63) == 0 &&
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > opt_.time_limit_seconds) {
        out.status = SolveStatus::Inconclusive;
        out.message = "time limit reached";
        out.iterations = it;
        return out;
      }
      // Entering column.
      // Devex pricing: largest d_j^2 / w_j, or the first candidate under Bland.
      long enter = -1;
      double best = 0;
      for (std::size_t j = 0; j < ncols_; ++j) {
        if (is_art_[j] && !in_basis(j)) continue;
        const double dj = red_[j];
        if (dj < -eps) {
          if (bland) {
            enter = static_cast<long>(j);
            break;
          }
          const double score = dj * dj / devex_[j];
          if (score > best) {
            best = score;
            enter = static_cast<long>(j);
          }
        }
      }
      if (enter < 0) break;
      const std::size_t c = static_cast<std::size_t>(enter);

      // Ratio test.
      long leave = -1;
      double best_ratio = std::numeric_limits<double>::infinity();
      double best_piv = 0;
      for (std::size_t ii = 0; ii < m_; ++ii) {
        const double a = tab_[ii * width_ + c];
        if (a <= 1e-9) continue;
        const double ratio = std::max(0.0, tab_[ii * width_ + ncols_]) / a;
        const bool better = ratio < best_ratio - 1e-12;
        const bool tie = !better && ratio <= best_ratio + 1e-12;
        if (better || (tie && leave >= 0 &&
                       (bland ? basis_[ii] < basis_[static_cast<std::size_t>(leave)] : a > best_piv))) {
          best_ratio = ratio;
          best_piv = a;
          leave = static_cast<long>(ii);
        }
      }
      if (leave < 0) {
        // Unbounded direction cannot occur in phase 1 (objective bounded below).
        out.status = SolveStatus::Inconclusive;
        out.message = "numerical failure: no leaving row";
        out.iterations = it;
        return out;
      }
      if (best_ratio <= 1e-12) {
        if (++degenerate >= opt_.degenerate_before_bland) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      pivot(static_cast<std::size_t>(leave), c);
    }
    out.iterations = it;
    if (it >= opt_.max_iterations) {
      out.status = SolveStatus::Inconclusive;
      out.message = "iteration limit reached";
      return out;
    }

    const double phase1 = -red_[ncols_];
    out.residual = phase1;
    const std::vector<double> v = unperturbed_basic_values();
    if (phase1 > opt_.tolerance * rhs_scale_ && !(opt_.perturbation > 0 && unperturbed_feasible(v))) {
      out.status = SolveStatus::InfeasibleCandidate;
      for (std::size_t ii = 0; ii < m_; ++ii) {
        const std::size_t col = static_cast<std::size_t>(art_col_[ii] >= 0 ? art_col_[ii] : slack_col_[ii]);
        const double unit = art_col_[ii] >= 0 ? 1.0 : -sign_[ii];
        // d_col = c_col - y_i * unit
        const double y = (cost_[col] - red_[col]) / unit;
        out.scaled_multipliers[active_[ii]] = sign_[ii] * y;
        out.multipliers[active_[ii]] = sign_[ii] * y * std::ldexp(1.0, -shift_[ii]);
        out.row_shift[active_[ii]] = shift_[ii];
      }
      return out;
    }

    out.status = SolveStatus::Feasible;
    out.point.assign(nv, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < nv) out.point[basis_[r]] = std::max(0.0, v[r]);
    }
    return out;
  }

 private:
  // Basic values for the unperturbed right-hand sides: the columns of the
  // starting basis hold B^-1.
  std::vector<double> unperturbed_basic_values() const {
    std::vector<double> v(m_, 0.0);
    for (std::size_t r = 0; r < m_; ++r) {
      for (std::size_t ii = 0; ii < m_; ++ii) {
        const std::size_t col = static_cast<std::size_t>(art_col_[ii] >= 0 ? art_col_[ii] : slack_col_[ii]);
        const double unit = art_col_[ii] >= 0 ? 1.0 : -sign_[ii];
        v[r] += tab_[r * width_ + col] / unit * original_rhs_[ii];
      }
    }
    return v;
  }

  // The perturbation can leave a degenerate but feasible system with a
  // residual of its own size; the final basis at the true data decides.
  bool unperturbed_feasible(const std::vector<double>& v) const {
    const double tol = opt_.tolerance * rhs_scale_;
    double art = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (v[r] < -tol) return false;
      if (is_art_[basis_[r]]) art += v[r];
    }
    return art <= tol;
  }

  bool in_basis(std::size_t j) const { return is_basic_[j] != 0; }

  void pivot(std::size_t r, std::size_t c) {
    double* pr = &tab_[r * width_];
    const double inv = 1.0 / pr[c];
    for (std::size_t j = 0; j <= ncols_; ++j) pr[j] *= inv;
    pr[c] = 1.0;
    nz_.clear();
    for (std::size_t j = 0; j <= ncols_; ++j) {
      if (pr[j] != 0.0) nz_.push_back(j);
    }
    // Devex reference weights; the leaving column gets pr[leaving] = 1/alpha.
    const double wc = devex_[c];
    bool reset = false;
    for (auto j : nz_) {
      if (j == ncols_ || j == c) continue;
      const double w = pr[j] * pr[j] * wc;
      if (w > devex_[j]) devex_[j] = w;
      if (devex_[j] > 1e8) reset = true;
    }
    devex_[basis_[r]] = std::max(devex_[basis_[r]], 1.0);
    if (reset) std::fill(devex_.begin(), devex_.end(), 1.0);
    for (std::size_t ii = 0; ii < m_; ++ii) {
      if (ii == r) continue;
      double* t = &tab_[ii * width_];
      const double f = t[c];
      if (f == 0.0) continue;
      for (auto j : nz_) t[j] -= f * pr[j];
      t[c] = 0.0;
    }
    const double f = red_[c];
    if (f != 0.0) {
      for (auto j : nz_) red_[j] -= f * pr[j];
      red_[c] = 0.0;
    }
    is_basic_[basis_[r]] = 0;
    is_basic_[c] = 1;
    basis_[r] = c;
  }

  const ConstraintSystem& cs_;
  SolveOptions opt_;
  std::vector<std::size_t> active_;
  std::vector<double> devex_;
  std::size_t m_ = 0, ncols_ = 0, width_ = 0;
  std::vector<double> sign_;
  std::vector<int> shift_;
  std::vector<long> slack_col_, art_col_;
  std::vector<double> tab_, cost_, red_, original_rhs_;
  std::vector<std::size_t> basis_;
  std::vector<char> is_art_, is_basic_;
  std::vector<std::size_t> nz_;
  double rhs_scale_ = 1.0;
};

}  // namespace detail

/// Phase-1 simplex on { rows, x >= 0 }. Deterministic: Dantzig pricing,
/// switching to Bland's rule during runs of degenerate pivots.
inline SolveOutcome solve_feasibility(const ConstraintSystem& cs, const SolveOptions& opt = {}) {
  if (cs.variables.empty() && cs.rows.empty()) throw DomainError("solve_feasibility: empty system");
  return detail::DenseSimplex(cs, opt).run();
}

/// Continued-fraction rounding. When `relations` is given, negative values
/// on >= rows are clamped to zero.
inline std::vector<Rational> rationalize(const std::vector<double>& values, std::int64_t max_denominator,
                                         const std::vector<Relation>* relations = nullptr) {
  if (max_denominator < 1) throw DomainError("rationalize: max_denominator must be >= 1");
  std::vector<Rational> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = values[i];
    if (relations && (*relations)[i] == Relation::GreaterEq && v < 0) v = 0;
    out.push_back(best_rational(v, max_denominator));
  }
  return out;
}

struct FarkasCertificate {
  std::vector<Rational> multipliers;
  Rational combined_rhs;
};

namespace detail {

/// Sum_i u_i a_i and sum_i u_i b_i, exactly, via a common denominator.
struct Combination {
  std::vector<BigInt> coeff_num;  // times 1/den
  BigInt rhs_num;
  BigInt den;
};

inline Combination combine(const ConstraintSystem& cs, const std::vector<Rational>& u) {
  Combination out;
  out.den = 1;
  for (const auto& q : u) {
    if (q != 0) mpz_lcm(out.den.get_mpz_t(), out.den.get_mpz_t(), q.get_den_mpz_t());
  }
  const std::size_t nv = cs.variables.size();
  out.coeff_num.assign(nv, 0);
  out.rhs_num = 0;
  BigInt scaled, tmp;
  for (std::size_t i = 0; i < cs.rows.size(); ++i) {
    if (u[i] == 0) continue;
    mpz_divexact(tmp.get_mpz_t(), out.den.get_mpz_t(), u[i].get_den_mpz_t());
    scaled = tmp * u[i].get_num();
    const auto& row = cs.rows[i];
    for (std::size_t j = 0; j < nv; ++j) {
      const std::int64_t a = row.coeffs[j];
      if (a == 0) continue;
      if (a > 0) {
        mpz_addmul_ui(out.coeff_num[j].get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(a));
      } else {
        mpz_submul_ui(out.coeff_num[j].get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(-a));
      }
    }
    if (row.rhs > 0) {
      mpz_addmul_ui(out.rhs_num.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(row.rhs));
    } else if (row.rhs < 0) {
      mpz_submul_ui(out.rhs_num.get_mpz_t(), scaled.get_mpz_t(), static_cast<unsigned long>(-row.rhs));
    }
  }
  return out;
}

}  // namespace detail

/// Exact check that `cert` combines the rows of `cs` into 0 >= positive.
inline bool verify_farkas(const ConstraintSystem& cs, const FarkasCertificate& cert) {
  if (cert.multipliers.size() != cs.rows.size()) throw DimensionError("verify_farkas: multiplier count does not match row count");
  for (std::size_t i = 0; i < cs.rows.size(); ++i) {
    if (cs.rows[i].relation == Relation::GreaterEq && cert.multipliers[i] < 0) return false;
  }
  const auto comb = detail::combine(cs, cert.multipliers);
  for (const auto& c : comb.coeff_num) {
    if (c != 0) return false;
  }
  if (comb.rhs_num <= 0) return false;
  Rational rhs(comb.rhs_num, comb.den);
  rhs.canonicalize();
  return rhs == cert.combined_rhs;
}

namespace detail {

/// Turns near-certificate multipliers into an exact certificate if the
/// slack allows: singleton equalities (x_j = v) cancel their column, an
/// equality row with positive coefficients everywhere shifts away positive
/// leftovers, and the x_j >= 0 rows absorb negative leftovers.
inline std::optional<FarkasCertificate> repair(const ConstraintSystem& cs, std::vector<Rational> u) {
  const std::size_t nv = cs.variables.size();
  const std::size_t m = cs.rows.size();
  std::vector<long> nonneg_row(nv, -1), singleton_eq(nv, -1);
  long shift_row = -1;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = cs.rows[i];
    if (row.is_nonnegativity()) {
      for (std::size_t j = 0; j < nv; ++j) {
        if (row.coeffs[j] != 0 && nonneg_row[j] < 0) nonneg_row[j] = static_cast<long>(i);
      }
      u[i] = 0;
      continue;
    }
    if (row.relation != Relation::Equal) continue;
    int nz = 0;
    std::size_t last = 0;
    bool all_pos = true;
    for (std::size_t j = 0; j < nv; ++j) {
      if (row.coeffs[j] != 0) {
        ++nz;
        last = j;
      }
      if (row.coeffs[j] <= 0) all_pos = false;
    }
    if (nz == 1 && singleton_eq[last] < 0) singleton_eq[last] = static_cast<long>(i);
    if (all_pos && shift_row < 0) shift_row = static_cast<long>(i);
  }
  for (std::size_t i = 0; i < m; ++i) {
    if (cs.rows[i].relation == Relation::GreaterEq && u[i] < 0) u[i] = 0;
  }

  auto column_values = [&](const std::vector<Rational>& mult) {
    const auto comb = combine(cs, mult);
    std::vector<Rational> c(nv);
    for (std::size_t j = 0; j < nv; ++j) {
      c[j] = Rational(comb.coeff_num[j], comb.den);
      c[j].canonicalize();
    }
    return c;
  };
  auto cancel_singletons = [&](std::vector<Rational>& c) {
    for (std::size_t j = 0; j < nv; ++j) {
      if (singleton_eq[j] < 0 || c[j] == 0) continue;
      if (c[j] < 0 && nonneg_row[j] >= 0) continue;  // the bound row absorbs it at no cost
      const auto i = static_cast<std::size_t>(singleton_eq[j]);
      const Rational delta = -c[j] / make_rational(cs.rows[i].coeffs[j]);
      u[i] += delta;
      c[j] = 0;
    }
  };

  std::vector<Rational> c = column_values(u);
  cancel_singletons(c);
  Rational worst = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    if (c[j] > 0) {
      if (shift_row < 0) return std::nullopt;
      const Rational need = c[j] / make_rational(cs.rows[static_cast<std::size_t>(shift_row)].coeffs[j]);
      if (need > worst) worst = need;
    }
  }
  if (worst > 0) {
    const auto sr = static_cast<std::size_t>(shift_row);
    u[sr] -= worst;
    for (std::size_t j = 0; j < nv; ++j) c[j] -= worst * make_rational(cs.rows[sr].coeffs[j]);
    cancel_singletons(c);
  }
  for (std::size_t j = 0; j < nv; ++j) {
    if (c[j] == 0) continue;
    if (c[j] > 0 || nonneg_row[j] < 0) return std::nullopt;
    const auto nr = static_cast<std::size_t>(nonneg_row[j]);
    u[nr] += -c[j] / make_rational(cs.rows[nr].coeffs[j]);
  }
  const auto comb = combine(cs, u);
  FarkasCertificate cert{std::move(u), Rational(comb.rhs_num, comb.den)};
  cert.combined_rhs.canonicalize();
  if (cert.combined_rhs <= 0) return std::nullopt;
  return cert;
}

/// Gaussian elimination over the rationals: one solution of A y = b, or none.
/// Free unknowns take the values in `guess`.
inline std::optional<std::vector<Rational>> solve_exact(std::vector<std::vector<Rational>> a, std::vector<Rational> b,
                                                        const std::vector<Rational>& guess) {
  const std::size_t rows = a.size();
  const std::size_t cols = guess.size();
  std::vector<long> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(b[p], b[r]);
    const Rational inv = 1 / a[r][c];
    for (std::size_t j = c; j < cols; ++j) a[r][j] *= inv;
    b[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (a[r][j] != 0) a[i][j] -= f * a[r][j];
      }
      b[i] -= f * b[r];
    }
    pivot_col.push_back(static_cast<long>(c));
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (b[i] != 0) return std::nullopt;
  }
  std::vector<Rational> y = guess;
  std::vector<char> is_pivot(cols, 0);
  for (auto pc : pivot_col) is_pivot[static_cast<std::size_t>(pc)] = 1;
  for (std::size_t i = 0; i < r; ++i) {
    const auto pc = static_cast<std::size_t>(pivot_col[i]);
    Rational v = b[i];
    for (std::size_t j = 0; j < cols; ++j) {
      if (!is_pivot[j] && a[i][j] != 0) v -= a[i][j] * y[j];
    }
    y[pc] = v;
  }
  return y;
}

}  // namespace detail

/// Denominator ladder for rounding float multipliers, then an exact
/// re-solve on the multiplier support.
struct RetryPolicy {
  std::vector<std::int64_t> denominators{1, 1'000, 1'000'000, 1'000'000'000};
  bool exact_resolve = true;
  std::size_t exact_resolve_max_unknowns = 400;
  SolveOptions solve;
};

enum class ProofVerdict { Certified, ProvablyFeasible, CertificationFailed };

inline const char* verdict_str(ProofVerdict v) {
  switch (v) {
    case ProofVerdict::Certified:
      return "certified";
    case ProofVerdict::ProvablyFeasible:
      return "feasible";
    case ProofVerdict::CertificationFailed:
      return "certification-failed";
  }
  return "?";
}

struct ProofResult {
  ProofVerdict verdict = ProofVerdict::CertificationFailed;
  std::optional<FarkasCertificate> certificate;
  std::optional<std::vector<Rational>> feasible_point;
  SolveOutcome outcome;
  std::string method;  // which rung produced the certificate
  double seconds = 0;

  bool certified() const noexcept { return verdict == ProofVerdict::Certified; }
};

/// Exact check that `x` satisfies every row.
inline bool verify_point(const ConstraintSystem& cs, const std::vector<Rational>& x) {
  if (x.size() != cs.variables.size()) throw DimensionError("verify_point: size mismatch");
  for (const auto& v : x) {
    if (v < 0) return false;
  }
  for (const auto& row : cs.rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (row.coeffs[j] != 0 && x[j] != 0) lhs += make_rational(row.coeffs[j]) * x[j];
    }
    const Rational rhs = make_rational(row.rhs);
    if (row.relation == Relation::Equal ? lhs != rhs : lhs < rhs) return false;
  }
  return true;
}

/// solve_feasibility, then round, repair and verify until some certificate
/// checks out exactly.
inline ProofResult prove_infeasible(const ConstraintSystem& cs, const RetryPolicy& policy = {}) {
  const auto start = std::chrono::steady_clock::now();
  ProofResult res;
  auto finish = [&]() -> ProofResult {
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(res);
  };
  res.outcome = solve_feasibility(cs, policy.solve);
  const auto& out = res.outcome;

  if (out.status == SolveStatus::Feasible) {
    for (auto den : policy.denominators) {
      auto x = rationalize(out.point, den);
      for (auto& v : x) {
        if (v < 0) v = 0;
      }
      if (verify_point(cs, x)) {
        res.verdict = ProofVerdict::ProvablyFeasible;
        res.feasible_point = std::move(x);
        res.method = "point/" + std::to_string(den);
        return finish();
      }
    }
  }
  if (out.status == SolveStatus::Inconclusive) {
    res.verdict = ProofVerdict::CertificationFailed;
    res.method = "inconclusive: " + out.message;
    return finish();
  }

  if (out.status == SolveStatus::InfeasibleCandidate) {
    std::vector<Relation> rels;
    rels.reserve(cs.rows.size());
    for (const auto& r : cs.rows) rels.push_back(r.relation);

    for (auto den : policy.denominators) {
      // Round in the scaled frame, then undo the power-of-two row scaling exactly.
      auto u = rationalize(out.scaled_multipliers, den, &rels);
      for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] != 0 && out.row_shift[i] != 0) {
          if (out.row_shift[i] > 0) {
            mpz_mul_2exp(u[i].get_den_mpz_t(), u[i].get_den_mpz_t(), static_cast<mp_bitcnt_t>(out.row_shift[i]));
          } else {
            mpz_mul_2exp(u[i].get_num_mpz_t(), u[i].get_num_mpz_t(), static_cast<mp_bitcnt_t>(-out.row_shift[i]));
          }
          u[i].canonicalize();
        }
      }
      if (auto cert = detail::repair(cs, std::move(u)); cert && verify_farkas(cs, *cert)) {
        res.verdict = ProofVerdict::Certified;
        res.certificate = std::move(cert);
        res.method = "rounded/" + std::to_string(den);
        return finish();
      }
    }

    if (policy.exact_resolve) {
      // Unknowns: rows carrying a multiplier. Equations: columns on which the
      // float combination vanishes, plus the normalisation rhs = 1.
      const std::size_t nv = cs.variables.size();
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < cs.rows.size(); ++i) {
        if (std::fabs(out.scaled_multipliers[i]) > 1e-9) support.push_back(i);
      }
      if (!support.empty() && support.size() <= policy.exact_resolve_max_unknowns) {
        std::vector<double> colsum(nv, 0.0);
        double colmax = 0;
        for (auto i : support) {
          for (std::size_t j = 0; j < nv; ++j) colsum[j] += out.multipliers[i] * static_cast<double>(cs.rows[i].coeffs[j]);
        }
        for (auto v : colsum) colmax = std::max(colmax, std::fabs(v));
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> b;
        for (std::size_t j = 0; j < nv; ++j) {
          if (std::fabs(colsum[j]) > 1e-7 * std::max(1.0, colmax)) continue;
          std::vector<Rational> eq(support.size());
          for (std::size_t s = 0; s < support.size(); ++s) eq[s] = make_rational(cs.rows[support[s]].coeffs[j]);
          a.push_back(std::move(eq));
          b.push_back(0);
        }
        double rhs_float = 0;
        for (auto i : support) rhs_float += out.multipliers[i] * static_cast<double>(cs.rows[i].rhs);
        if (rhs_float > 0) {
          std::vector<Rational> norm(support.size());
          for (std::size_t s = 0; s < support.size(); ++s) norm[s] = make_rational(cs.rows[support[s]].rhs);
          a.push_back(std::move(norm));
          b.push_back(1);
          std::vector<Rational> guess(support.size());
          for (std::size_t s = 0; s < support.size(); ++s) {
            guess[s] = best_rational(out.multipliers[support[s]] / rhs_float, 1'000'000'000);
          }
          if (auto y = detail::solve_exact(std::move(a), std::move(b), guess)) {
            std::vector<Rational> u(cs.rows.size());
            for (std::size_t s = 0; s < support.size(); ++s) u[support[s]] = (*y)[s];
            if (auto cert = detail::repair(cs, std::move(u)); cert && verify_farkas(cs, *cert)) {
              res.verdict = ProofVerdict::Certified;
              res.certificate = std::move(cert);
              res.method = "exact-resolve";
              return finish();
            }
          }
        }
      }
    }
  }

  if (policy.solve.perturbation > 0) {
    // Last resort: the unperturbed solve sometimes lands on a cleaner basis.
    RetryPolicy plain = policy;
    plain.solve.perturbation = 0;
    auto again = prove_infeasible(cs, plain);
    if (again.verdict != ProofVerdict::CertificationFailed) {
      again.method += "/unperturbed";
      again.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return again;
    }
  }
  res.verdict = ProofVerdict::CertificationFailed;
  res.method = "no rung verified";
  return finish();
}

/// Certificate file:
///   CERT <node-id> rows=<m>
///   <row-index> <p>/<q>          (nonzero multipliers only)
///   CONTRADICTION 0 >= <p>/<q>
inline void write_certificate(std::ostream& out, const std::string& node_id, const FarkasCertificate& cert) {
  out << "CERT " << node_id << " rows=" << cert.multipliers.size() << "\n";
  for (std::size_t i = 0; i < cert.multipliers.size(); ++i) {
    if (cert.multipliers[i] != 0) out << i << ' ' << to_fraction_string(cert.multipliers[i]) << "\n";
  }
  out << "CONTRADICTION 0 >= " << to_fraction_string(cert.combined_rhs) << "\n";
}

struct CertificateFile {
  std::string node_id;
  FarkasCertificate certificate;
};

inline CertificateFile read_certificate(std::istream& in) {
  CertificateFile f;
  std::string line;
  std::size_t rows = 0;
  if (!std::getline(in, line)) throw ParseError("certificate: empty file");
  {
    std::istringstream hs(line);
    std::string tag, rows_field;
    hs >> tag >> f.node_id >> rows_field;
    if (tag != "CERT" || rows_field.rfind("rows=", 0) != 0) throw ParseError("certificate: bad header '" + line + "'");
    rows = std::stoul(rows_field.substr(5));
  }
  f.certificate.multipliers.assign(rows, 0);
  bool closed = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("CONTRADICTION", 0) == 0) {
      const auto pos = line.find(">=");
      if (pos == std::string::npos) throw ParseError("certificate: bad CONTRADICTION line");
      std::string value = line.substr(pos + 2);
      value.erase(0, value.find_first_not_of(' '));
      f.certificate.combined_rhs = parse_rational(value);
      closed = true;
      break;
    }
    std::istringstream ls(line);
    std::size_t idx = 0;
    std::string value;
    if (!(ls >> idx >> value) || idx >= rows) throw ParseError("certificate: bad multiplier line '" + line + "'");
    f.certificate.multipliers[idx] = parse_rational(value);
  }
  if (!closed) throw ParseError("certificate: missing CONTRADICTION line");
  return f;
}

}  // namespace splitlp

#endif  // SPLITLP_LPCERT_HPP
