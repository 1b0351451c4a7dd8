#pragma once

#include "quatgabor/error.hpp"
#include "quatgabor/quaternion.hpp"
#include "quatgabor/grid.hpp"
#include "quatgabor/qft.hpp"
#include "quatgabor/gqft.hpp"
#include "quatgabor/oracles.hpp"
#include "quatgabor/uncertainty.hpp"
#include "quatgabor/io.hpp"
