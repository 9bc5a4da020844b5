#include <algorithm>
#include <gmpxx.h>

#include "unialign/error.hpp"
#include "unialign/flow_align.hpp"
#include "unialign/noise.hpp"

namespace unialign {

namespace {

/// Bipartite graph of the nonzero pattern: vertices [0, rows) are rows,
/// [rows, rows + cols) are columns.
struct Pattern {
  std::size_t rows;
  std::vector<std::vector<std::size_t>> adj;

  explicit Pattern(const IntMatrix& m) : rows(m.rows()), adj(m.rows() + m.cols()) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (m(r, c) != 0) {
          adj[r].push_back(rows + c);
          adj[rows + c].push_back(r);
        }
      }
    }
  }
  bool is_row(std::size_t v) const { return v < rows; }
};

std::int64_t small_det(const IntMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  const std::size_t k = rows.size();
  auto a = [&](std::size_t i, std::size_t j) { return m(rows[i], cols[j]); };
  if (k == 1) return a(0, 0);
  if (k == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
  if (k == 3) {
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  }
  IntMatrix sub(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(i, j);
  }
  return determinant(sub);
}

/// Exhaustive enumeration of connected vertex sets with k rows and k
/// columns (ESU algorithm with a per-side size bound).
class ConnectedSearch {
 public:
  ConnectedSearch(const IntMatrix& m, const Pattern& g, std::size_t k, Clock::time_point deadline)
      : m_(m), g_(g), k_(k), deadline_(deadline) {}

  std::optional<NonTuWitness> run() {
    for (std::size_t v = 0; v < g_.adj.size() && !found_ && !timed_out_; ++v) {
      if (g_.adj[v].empty()) continue;
      std::vector<std::size_t> sub{v};
      std::vector<std::size_t> ext;
      for (std::size_t u : g_.adj[v]) {
        if (u > v) ext.push_back(u);
      }
      extend(sub, ext, v, g_.is_row(v) ? 1 : 0, g_.is_row(v) ? 0 : 1);
    }
    return found_;
  }

  bool timed_out() const { return timed_out_; }

 private:
  bool in_sub_or_adjacent(std::size_t u, const std::vector<std::size_t>& sub) const {
    for (std::size_t s : sub) {
      if (s == u) return true;
      for (std::size_t w : g_.adj[s]) {
        if (w == u) return true;
      }
    }
    return false;
  }

  void extend(std::vector<std::size_t>& sub, std::vector<std::size_t> ext, std::size_t root, std::size_t nrows,
              std::size_t ncols) {
    if (found_ || timed_out_) return;
    if (++visits_ % 4096 == 0 && Clock::now() >= deadline_) {
      timed_out_ = true;
      return;
    }
    if (nrows == k_ && ncols == k_) {
      check(sub);
      return;
    }
    while (!ext.empty()) {
      const std::size_t w = ext.back();
      ext.pop_back();
      const bool row = g_.is_row(w);
      if ((row && nrows == k_) || (!row && ncols == k_)) continue;
      std::vector<std::size_t> next_ext = ext;
      for (std::size_t u : g_.adj[w]) {
        if (u > root && !in_sub_or_adjacent(u, sub) &&
            std::find(next_ext.begin(), next_ext.end(), u) == next_ext.end()) {
          next_ext.push_back(u);
        }
      }
      sub.push_back(w);
      extend(sub, std::move(next_ext), root, nrows + (row ? 1 : 0), ncols + (row ? 0 : 1));
      sub.pop_back();
      if (found_ || timed_out_) return;
    }
  }

  void check(const std::vector<std::size_t>& sub) {
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t v : sub) {
      if (g_.is_row(v)) {
        rows.push_back(v);
      } else {
        cols.push_back(v - g_.rows);
      }
    }
    std::sort(rows.begin(), rows.end());
    std::sort(cols.begin(), cols.end());
    const std::int64_t det = small_det(m_, rows, cols);
    if (det >= 2 || det <= -2) found_ = NonTuWitness{rows, cols, det};
  }

  const IntMatrix& m_;
  const Pattern& g_;
  std::size_t k_;
  Clock::time_point deadline_;
  std::optional<NonTuWitness> found_;
  bool timed_out_ = false;
  std::size_t visits_ = 0;
};

}  // namespace

std::int64_t determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<std::vector<mpz_class>> a(n, std::vector<mpz_class>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m(i, j));
  }
  int sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  mpz_class det = a[n - 1][n - 1] * sign;
  if (!det.fits_slong_p()) throw InternalInvariantError("determinant exceeds 64 bits");
  return det.get_si();
}

std::optional<NonTuWitness> find_non_tu_witness(const IntMatrix& m, std::size_t order_limit,
                                                std::chrono::milliseconds budget, std::uint64_t seed) {
  if (order_limit < 2) throw InvalidInput("order limit must be at least 2");
  const auto deadline = Clock::now() + budget;
  const Pattern g(m);

  for (std::size_t k = 1; k <= std::min<std::size_t>(order_limit, 3); ++k) {
    ConnectedSearch search(m, g, k, deadline);
    if (auto w = search.run()) return w;
    if (search.timed_out()) return std::nullopt;
  }
  if (order_limit <= 3) return std::nullopt;

  std::vector<std::size_t> starts;
  for (std::size_t r = 0; r < g.rows; ++r) {
    if (!g.adj[r].empty()) starts.push_back(r);
  }
  if (starts.empty()) return std::nullopt;
  SeededRng rng(seed);
  while (Clock::now() < deadline) {
    for (int batch = 0; batch < 256; ++batch) {
      const std::size_t k = 4 + rng.index(order_limit - 3);
      std::vector<std::size_t> sub{starts[rng.index(starts.size())]};
      std::size_t nrows = 1;
      std::size_t ncols = 0;
      for (int attempts = 0; (nrows < k || ncols < k) && attempts < 64; ++attempts) {
        const std::size_t from = sub[rng.index(sub.size())];
        const auto& nbrs = g.adj[from];
        if (nbrs.empty()) continue;
        const std::size_t u = nbrs[rng.index(nbrs.size())];
        const bool row = g.is_row(u);
        if ((row && nrows == k) || (!row && ncols == k)) continue;
        if (std::find(sub.begin(), sub.end(), u) != sub.end()) continue;
        sub.push_back(u);
        (row ? nrows : ncols)++;
      }
      if (nrows != k || ncols != k) continue;
      std::vector<std::size_t> rows;
      std::vector<std::size_t> cols;
      for (std::size_t v : sub) {
        if (g.is_row(v)) {
          rows.push_back(v);
        } else {
          cols.push_back(v - g.rows);
        }
      }
      std::sort(rows.begin(), rows.end());
      std::sort(cols.begin(), cols.end());
      const std::int64_t det = small_det(m, rows, cols);
      if (det >= 2 || det <= -2) return NonTuWitness{rows, cols, det};
    }
  }
  return std::nullopt;
}

}  // namespace unialign
