#pragma once

// Maps the integer grid of oracles.hpp onto library configurations.

#include <string>
#include <vector>

#include "ale/futaki.hpp"
#include "ale/stability.hpp"
#include "ale/models.hpp"
#include "oracles.hpp"

namespace grid {

// Scalar-flat package with |Gamma| = 2, m = 2 and the given e and a.
inline ale::ALEModelInvariants package(int e, int a) {
  ale::ALEModelInvariants inv;
  inv.m = 2;
  inv.gamma = 2;
  inv.e = e;
  inv.a = a;
  inv.xi_m = a / ale::mass_normalization(2);
  inv.rho_xi = -e / (ale::mass_normalization(2) * 2.0);
  inv.scalar_flat = true;
  return inv;
}

// All 3^(2 + 2d) states of a single point, values in {-1, 0, 1}.
inline std::vector<oracle::IntPoint> states(int d) {
  std::vector<oracle::IntPoint> out;
  const int fields = 2 + 2 * d;
  int total = 1;
  for (int k = 0; k < fields; ++k) total *= 3;
  for (int code = 0; code < total; ++code) {
    int c = code;
    std::vector<int> v(static_cast<std::size_t>(fields));
    for (auto& x : v) {
      x = c % 3 - 1;
      c /= 3;
    }
    oracle::IntPoint p;
    p.e = v[0];
    p.a = v[1];
    for (int i = 0; i < d; ++i) {
      p.mu[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(2 + i)];
      p.lap[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(2 + d + i)];
    }
    out.push_back(p);
  }
  return out;
}

inline ale::SingularPointDatum datum(const oracle::IntPoint& p, int d, std::string id) {
  ale::SingularPointDatum out;
  out.id = std::move(id);
  out.gamma = 2;
  out.inv = package(p.e, p.a);
  out.mu.resize(d);
  out.lap_mu.resize(d);
  for (int i = 0; i < d; ++i) {
    out.mu(i) = p.mu[static_cast<std::size_t>(i)];
    out.lap_mu(i) = p.lap[static_cast<std::size_t>(i)];
  }
  return out;
}

inline ale::OrbifoldConfig config(const std::vector<oracle::IntPoint>& pts, int d) {
  ale::OrbifoldConfig c;
  c.m = 2;
  c.d = d;
  c.s_bar = 1.0;
  for (std::size_t i = 0; i < pts.size(); ++i) c.points.push_back(datum(pts[i], d, "p" + std::to_string(i)));
  return c;
}

inline oracle::Label label(ale::Regime r) {
  switch (r) {
    case ale::Regime::NonExistenceEqualScale: return oracle::Label::NonExistence;
    case ale::Regime::ExistenceSomeNonzeroMass: return oracle::Label::SomeNonzero;
    case ale::Regime::ExistenceAllZeroMass: return oracle::Label::AllZero;
    case ale::Regime::ExistenceMixedScales: return oracle::Label::Mixed;
    case ale::Regime::Inconclusive: return oracle::Label::Inconclusive;
  }
  return oracle::Label::Inconclusive;
}

}  // namespace grid
