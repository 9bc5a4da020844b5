#include "unialign/simplex.hpp"

#include <cstddef>
#include <optional>

#include "unialign/error.hpp"

namespace unialign {

namespace {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, std::vector<Rational>(cols + 1)) {}

  std::vector<Rational>& row(std::size_t i) { return rows_[i]; }
  std::size_t num_rows() const { return rows_.size(); }
  std::size_t rhs() const { return cols_; }

  void erase_row(std::size_t i) {
    rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(i));
  }

  /// Pivots on (r, c), updating the rows and the objective row `obj`.
  void pivot(std::size_t r, std::size_t c, std::vector<Rational>& obj) {
    std::vector<Rational>& pr = rows_[r];
    const Rational inv = 1 / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(pr[j]) != 0) {
        pr[j] *= inv;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[c]) == 0) return;
      const Rational f = target[c];
      for (std::size_t j : nz) target[j] -= f * pr[j];
    };
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i != r) eliminate(rows_[i]);
    }
    eliminate(obj);
    basis[r] = c;
  }

  /// Bland's rule iteration on objective row `obj` (reduced costs, with
  /// obj[rhs] holding minus the objective). Columns >= `allowed` never enter.
  /// Returns false if the problem is unbounded.
  bool optimize(std::vector<Rational>& obj, std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j) {
        if (sgn(obj[j]) < 0) {
          enter = j;
          break;
        }
      }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*enter];
        if (sgn(a) <= 0) continue;
        Rational ratio = rows_[i][cols_] / a;
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter, obj);
    }
  }

  std::vector<std::size_t> basis;

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> rows_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                  const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  if (b.size() != m) throw InvalidInput("LP right-hand side has the wrong length");
  for (const auto& r : a) {
    if (r.size() != n) throw InvalidInput("LP constraint row has the wrong length");
  }

  Tableau t(m, n + m);
  t.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    auto& row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) row[j] = flip ? Rational(-a[i][j]) : a[i][j];
    row[n + i] = 1;
    row[t.rhs()] = flip ? Rational(-b[i]) : b[i];
    t.basis[i] = n + i;
  }

  std::vector<Rational> phase1(n + m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& row = t.row(i);
    for (std::size_t j = 0; j < n; ++j) phase1[j] -= row[j];
    phase1[t.rhs()] -= row[t.rhs()];
  }
  t.optimize(phase1, n);

  LpResult result;
  if (sgn(phase1[t.rhs()]) != 0) {
    result.status = LpStatus::Infeasible;
    return result;
  }

  for (std::size_t i = 0; i < t.num_rows();) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(t.row(i)[j]) != 0) {
        col = j;
        break;
      }
    }
    if (col) {
      t.pivot(i, *col, phase1);
      ++i;
    } else {
      t.erase_row(i);
    }
  }

  std::vector<Rational> obj(n + m + 1);
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  for (std::size_t i = 0; i < t.num_rows(); ++i) {
    const Rational cb = c[t.basis[i]];
    if (sgn(cb) == 0) continue;
    const auto& row = t.row(i);
    for (std::size_t j = 0; j <= t.rhs(); ++j) {
      if (sgn(row[j]) != 0) obj[j] -= cb * row[j];
    }
  }
  if (!t.optimize(obj, n)) {
    result.status = LpStatus::Unbounded;
    return result;
  }

  result.status = LpStatus::Optimal;
  result.objective = -obj[t.rhs()];
  result.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.num_rows(); ++i) result.x[t.basis[i]] = t.row(i)[t.rhs()];
  return result;
}

}  // namespace unialign
