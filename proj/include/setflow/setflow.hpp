#pragma once

#include "setflow/direction_grid.hpp"
#include "setflow/duality.hpp"
#include "setflow/dynamics.hpp"
#include "setflow/errors.hpp"
#include "setflow/hukuhara.hpp"
#include "setflow/polygon.hpp"
#include "setflow/sampling.hpp"
#include "setflow/support_core.hpp"
#include "setflow/support_sample.hpp"
