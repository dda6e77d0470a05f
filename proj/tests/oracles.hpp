#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the futaki or stability sources.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

namespace oracle {

inline double fact(int n) {
  double out = 1.0;
  for (int k = 2; k <= n; ++k) out *= k;
  return out;
}

struct Point {
  int gamma = 2;
  double e = 0.0;
  double xi_m = 0.0;
  double rho_xi = 0.0;
  double a = 0.0;
  std::vector<double> mu;
  std::vector<double> lap_mu;
};

// Straight from the two sums of the expansion theorem, entry by entry.
inline void futaki(const std::vector<Point>& pts, double s_bar, int d, std::vector<double>& lead,
                   std::vector<double>& next) {
  lead.assign(static_cast<std::size_t>(d), 0.0);
  next.assign(static_cast<std::size_t>(d), 0.0);
  for (int i = 0; i < d; ++i) {
    for (const Point& p : pts) {
      const double u = p.mu[static_cast<std::size_t>(i)];
      const double lap = p.lap_mu[static_cast<std::size_t>(i)];
      lead[static_cast<std::size_t>(i)] += u * p.rho_xi;
      next[static_cast<std::size_t>(i)] += -(s_bar * u + lap) * p.xi_m;
    }
  }
}

// Exact decision procedure for integer data with |Gamma| = 2 and s_bar = 1.
// Sums are doubled so that e/2 stays integral; ranks come from integer minors.
enum class Label { NonExistence, SomeNonzero, AllZero, Mixed, Inconclusive };

struct IntPoint {
  int e = 0;
  int a = 0;
  std::array<int, 2> mu{};
  std::array<int, 2> lap{};
};

inline int int_rank(const std::vector<std::array<int, 2>>& vs, int d) {
  if (d == 0) return 0;
  bool nonzero = false;
  for (const auto& v : vs) {
    for (int i = 0; i < d; ++i) nonzero = nonzero || v[static_cast<std::size_t>(i)] != 0;
  }
  if (!nonzero) return 0;
  if (d == 1) return 1;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      if (vs[i][0] * vs[j][1] - vs[i][1] * vs[j][0] != 0) return 2;
    }
  }
  return 1;
}

inline Label classify(const std::vector<IntPoint>& pts, int d) {
  std::vector<const IntPoint*> Q, P;
  for (const auto& p : pts) (p.e != 0 ? Q : P).push_back(&p);
  const auto w = [](const IntPoint& p, int i) { return p.mu[static_cast<std::size_t>(i)] + p.lap[static_cast<std::size_t>(i)]; };

  // 2 * sum_Q (e/2) mu  and  2 * sum_P a w
  std::array<int, 2> sq{}, sp{};
  for (int i = 0; i < d; ++i) {
    for (const IntPoint* q : Q) sq[static_cast<std::size_t>(i)] += q->e * q->mu[static_cast<std::size_t>(i)];
    for (const IntPoint* p : P) sp[static_cast<std::size_t>(i)] += 2 * p->a * w(*p, i);
  }
  const auto zero = [d](const std::array<int, 2>& v) {
    for (int i = 0; i < d; ++i) {
      if (v[static_cast<std::size_t>(i)] != 0) return false;
    }
    return true;
  };
  std::vector<std::array<int, 2>> muQ, wP;
  for (const IntPoint* q : Q) muQ.push_back(q->mu);
  for (const IntPoint* p : P) wP.push_back({w(*p, 0), d > 1 ? w(*p, 1) : 0});
  std::array<int, 2> both{sq[0] + sp[0], sq[1] + sp[1]};

  if (!Q.empty() && !zero(sq)) return Label::NonExistence;
  if (Q.empty() && !zero(sp)) return Label::NonExistence;
  if (!Q.empty() && zero(sq) && int_rank(muQ, d) == d) return Label::SomeNonzero;
  if (Q.empty() && zero(sp) && int_rank(wP, d) == d) return Label::AllZero;
  if (!Q.empty() && !P.empty() && zero(both)) {
    std::vector<std::array<int, 2>> span = muQ;
    span.insert(span.end(), wP.begin(), wP.end());
    if (int_rank(span, d) == d) return Label::Mixed;
  }
  return Label::Inconclusive;
}

}  // namespace oracle
