#ifndef AIRYGAP_AIRYGAP_HPP
#define AIRYGAP_AIRYGAP_HPP

#include "airygap/errors.hpp"
#include "airygap/quadrature.hpp"
#include "airygap/specfun.hpp"
#include "airygap/geometry.hpp"
#include "airygap/fredholm.hpp"
#include "airygap/asymptotics.hpp"
#include "airygap/verify.hpp"

#endif
