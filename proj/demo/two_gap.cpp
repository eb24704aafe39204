// Two gaps (sc,sb) u (sa,inf) with (a,b,c) = (-1,-2,-3): determinant,
// expansion, and the individual terms of the expansion.

#include <cstdio>

#include "airygap/asymptotics.hpp"
#include "airygap/fredholm.hpp"
#include "airygap/geometry.hpp"

int main() {
  airygap::GapConfig cfg;
  const auto ed = airygap::geometry::elliptic_data(cfg);
  std::printf("alpha2 = %.15f  Omega = %.15f  tau = %.15fi  d = %.15f\n", ed.alpha2, ed.omega, ed.tau.imag(), ed.d);
  std::printf("%5s %18s %18s %12s %12s\n", "s", "log det", "expansion", "theta term", "difference");
  for (double s = 0.5; s <= 4.01; s += 0.25) {
    cfg.s = s;
    const auto b = airygap::asymptotics::two_gap_asym(cfg, ed, airygap::AsymForm::theorem1);
    const auto r = airygap::fredholm::det_two_gap(cfg);
    std::printf("%5.2f %18.12f %18.12f %12.6f %12.3e\n", s, r.log_det, b.total, b.theta_term, r.log_det - b.total);
  }
}
