#ifndef AIRYGAP_SPECFUN_HPP
#define AIRYGAP_SPECFUN_HPP

#include "airygap/specfun/airy.hpp"
#include "airygap/specfun/elliptic.hpp"
#include "airygap/specfun/theta.hpp"
#include "airygap/specfun/zeta.hpp"

#endif
