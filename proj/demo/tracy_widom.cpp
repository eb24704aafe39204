// Tracy-Widom left tail: log F2(-s) by quadrature against
// -s^3/12 - (1/8) log s + chi_Airy.

#include <cstdio>

#include "airygap/asymptotics.hpp"
#include "airygap/fredholm.hpp"

int main() {
  std::printf("%6s %22s %22s %12s\n", "s", "log det", "expansion", "difference");
  for (double s : {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}) {
    const auto r = airygap::fredholm::det_one_gap_airy(s);
    const double e = airygap::asymptotics::tw_asym(s);
    std::printf("%6.1f %22.15f %22.15f %12.3e\n", s, r.log_det, e, r.log_det - e);
  }
}
