#pragma once

#include "gravent/analytics.hpp"
#include "gravent/boundcheck.hpp"
#include "gravent/dataset.hpp"
#include "gravent/dynamics.hpp"
#include "gravent/errors.hpp"
#include "gravent/gaussian.hpp"
#include "gravent/linalg.hpp"
#include "gravent/params.hpp"
#include "gravent/real.hpp"
#include "gravent/states.hpp"
#include "gravent/sweeps.hpp"
#include "gravent/util.hpp"

namespace gravent {

inline constexpr const char* version = "0.1.0";

}  // namespace gravent
